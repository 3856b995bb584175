"""Characteristic classes of bundles given by explicit root multisets.

Roots are integer vectors over the model generators, i.e. first Chern
classes of line bundles. All q-dependent classes are built from exact
exponentials of nilpotent classes; denominators go through ``qs_invert``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cohomology import CohomClass, ManifoldModel, ModelMismatchError, Z2Class, mod2
from .qseries import QSeries, a_hat_coefficients, evaluate_series, exp_nilpotent, qs_invert

Root = tuple[int, ...]


@dataclass(frozen=True)
class RootBundle:
    """Stable bundle ``sum L(root) - C^rank_offset``.

    Used for real bundles such as ``TM``: only the stable class matters for
    ``a_hat`` and ``q1``; ``q3`` divides by 2 for every trivial summand removed.
    """

    roots: tuple[Root, ...] = ()
    rank_offset: int = 0

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(tuple(int(c) for c in r) for r in self.roots))
        if self.rank_offset < 0 or self.rank_offset > len(self.roots):
            raise ValueError(f"rank offset {self.rank_offset} out of range for {len(self.roots)} roots")

    @property
    def rank(self) -> int:
        """Complex rank."""
        return len(self.roots) - self.rank_offset

    def __add__(self, other: RootBundle) -> RootBundle:
        cls = LineBundleSum if isinstance(self, LineBundleSum) and isinstance(other, LineBundleSum) else RootBundle
        if cls is LineBundleSum:
            return LineBundleSum(self.roots + other.roots)
        return RootBundle(self.roots + other.roots, self.rank_offset + other.rank_offset)


@dataclass(frozen=True)
class LineBundleSum(RootBundle):
    """``V = L_1 + ... + L_k``; the empty tuple is the zero bundle."""

    def __post_init__(self):
        super().__post_init__()
        if self.rank_offset:
            raise ValueError("a sum of line bundles has no trivial offset")

    @classmethod
    def of(cls, roots: Iterable[Sequence[int]]) -> LineBundleSum:
        return cls(tuple(tuple(r) for r in roots))


def tangent_bundle(M: ManifoldModel) -> RootBundle:
    return RootBundle(M.tangent_roots, M.rank_offset)


def _check_roots(E: RootBundle, M: ManifoldModel):
    for r in E.roots:
        if len(r) != M.ngens:
            raise ModelMismatchError(f"root {r} has length {len(r)}, model has {M.ngens} generators")


def _distinct(E: RootBundle, M: ManifoldModel) -> list[tuple[CohomClass, int]]:
    _check_roots(E, M)
    return [(M.linear(r), k) for r, k in sorted(Counter(E.roots).items()) if any(r)]


def a_hat(E: RootBundle, M: ManifoldModel) -> CohomClass:
    """``prod x / (e^{x/2} - e^{-x/2})`` over the roots."""
    coeffs = a_hat_coefficients(M.complex_dimension)
    result = M.one()
    for x, k in _distinct(E, M):
        result = result * evaluate_series(coeffs, x) ** k
    return result


def _linear_factor(M: ManifoldModel, e: CohomClass, sign: int, k: int, Q: int) -> QSeries:
    """``1 + sign * e * q^k`` truncated at ``q^Q``."""
    coeffs = [M.one()] + [M.zero()] * Q
    if k <= Q:
        coeffs[k] = e if sign > 0 else -e
    return QSeries(M, coeffs)


def _root_product(M: ManifoldModel, x: CohomClass, sign: int, Q: int) -> QSeries:
    """``prod_k (1 + sign e^x q^k)(1 + sign e^{-x} q^k)`` for ``k = 1..Q``."""
    ep = exp_nilpotent(x)
    em = exp_nilpotent(-x)
    result = QSeries.one(M, Q)
    for k in range(1, Q + 1):
        result = result * _linear_factor(M, ep, sign, k, Q) * _linear_factor(M, em, sign, k, Q)
    return result


def _scalar_product(M: ManifoldModel, sign: int, Q: int) -> QSeries:
    """``prod_k (1 + sign q^k)^2`` for ``k = 1..Q``."""
    one = M.one()
    result = QSeries.one(M, Q)
    for k in range(1, Q + 1):
        f = _linear_factor(M, one, sign, k, Q)
        result = result * f * f
    return result


def q1(E: RootBundle, M: ManifoldModel, Q: int) -> QSeries:
    """``prod_i prod_k (1-q^k)^2 / ((1 - e^{x_i} q^k)(1 - e^{-x_i} q^k))``."""
    roots = _distinct(E, M)
    result = QSeries.one(M, Q)
    if not roots or Q == 0:
        return result
    count = sum(k for _, k in roots)
    for x, k in roots:
        result = result * qs_invert(_root_product(M, x, -1, Q)) ** k
    return result * _scalar_product(M, -1, Q) ** count


def q2(V: LineBundleSum, M: ManifoldModel, Q: int) -> QSeries:
    """``prod_i (1 - e^{-v_i}) prod_k (1 - e^{v_i} q^k)(1 - e^{-v_i} q^k) / (1-q^k)^2``."""
    _check_roots(V, M)
    if any(not any(r) for r in V.roots):
        return QSeries.constant(M.zero(), Q)
    roots = _distinct(V, M)
    result = QSeries.one(M, Q)
    if not roots:
        return result
    count = sum(k for _, k in roots)
    for v, k in roots:
        lead = M.one() - exp_nilpotent(-v)
        result = result * (_root_product(M, v, -1, Q) * lead) ** k
    if Q:
        result = result * qs_invert(_scalar_product(M, -1, Q)) ** count
    return result


def q3(W: RootBundle, M: ManifoldModel, Q: int) -> QSeries:
    """``prod_i (e^{w_i/2} + e^{-w_i/2}) prod_k (1 + e^{w_i} q^k)(1 + e^{-w_i} q^k) / (1+q^k)^2``.

    A zero root is a trivial rank-2 summand and contributes the factor 2; the
    rank offset divides those back out, so the stable class is what counts.
    """
    _check_roots(W, M)
    result = QSeries.one(M, Q)
    zeros = sum(1 for r in W.roots if not any(r))
    roots = _distinct(W, M)
    count = sum(k for _, k in roots)
    for w, k in roots:
        half = w / 2
        lead = exp_nilpotent(half) + exp_nilpotent(-half)
        result = result * (_root_product(M, w, +1, Q) * lead) ** k
    if count and Q:
        result = result * qs_invert(_scalar_product(M, +1, Q)) ** count
    return result * Fraction(2) ** (zeros - W.rank_offset)


def euler(V: RootBundle, M: ManifoldModel) -> CohomClass:
    """Top Chern class ``c_rank``; the product of the roots when there is no offset."""
    _check_roots(V, M)
    if not V.rank_offset:
        result = M.one()
        for r in V.roots:
            result = result * M.linear(r)
        return result
    total = M.one()
    for r in V.roots:
        total = total * (M.linear(r) + 1)
    return total.degree_part(V.rank)


def pontryagin_p1(E: RootBundle, M: ManifoldModel) -> CohomClass:
    """Sum of squared roots (degree-4 part of ``prod (1 + x_i^2)``)."""
    _check_roots(E, M)
    result = M.zero()
    for x, k in _distinct(E, M):
        result = result + (x * x).scale(k)
    return result


def c1_vector(E: RootBundle, M: ManifoldModel) -> tuple[int, ...]:
    _check_roots(E, M)
    if not E.roots:
        return (0,) * M.ngens
    return tuple(sum(col) for col in zip(*E.roots))


def c1(E: RootBundle, M: ManifoldModel) -> CohomClass:
    return M.linear(c1_vector(E, M))


def w2(E: RootBundle, M: ManifoldModel) -> Z2Class:
    return mod2(c1(E, M))


def is_spin(E: RootBundle, M: ManifoldModel) -> bool:
    return not w2(E, M)
