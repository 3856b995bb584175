"""Truncated power series in ``q`` with cohomology-class coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cohomology import CohomClass, ManifoldModel, ModelMismatchError

DEFAULT_Q_ORDER = 5


class InversionError(ArithmeticError):
    """The series (or class) to invert has no invertible constant term."""


class QSeries:
    """``c_0 + c_1 q + ... + c_Q q^Q``, everything beyond ``q^Q`` dropped."""

    __slots__ = ("model", "coeffs")

    def __init__(self, model: ManifoldModel, coeffs: Sequence[CohomClass]):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a q-series needs at least the q^0 coefficient")
        for c in coeffs:
            if c.model != model:
                raise ModelMismatchError("coefficient over a different model")
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    @classmethod
    def constant(cls, x: CohomClass, q_order: int) -> QSeries:
        M = x.model
        return cls(M, (x,) + (M.zero(),) * q_order)

    @classmethod
    def scalar(cls, M: ManifoldModel, values: Sequence, q_order: int) -> QSeries:
        """Series with rational coefficients, padded or cut to ``q_order``."""
        vals = list(values)[: q_order + 1]
        vals += [0] * (q_order + 1 - len(vals))
        return cls(M, [M.constant(v) for v in vals])

    @classmethod
    def one(cls, M: ManifoldModel, q_order: int) -> QSeries:
        return cls.scalar(M, [1], q_order)

    @property
    def q_order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> CohomClass:
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def _check(self, other: QSeries):
        if other.q_order != self.q_order:
            raise ValueError(f"q-order mismatch: {self.q_order} vs {other.q_order}")
        if other.model != self.model:
            raise ModelMismatchError(f"{self.model.name!r} vs {other.model.name!r}")

    def __add__(self, other):
        if isinstance(other, QSeries):
            self._check(other)
            return QSeries(self.model, [a + b for a, b in zip(self.coeffs, other.coeffs)])
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, QSeries):
            self._check(other)
            return QSeries(self.model, [a - b for a, b in zip(self.coeffs, other.coeffs)])
        return NotImplemented

    def __neg__(self):
        return QSeries(self.model, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return qs_mul(self, other)
        if isinstance(other, CohomClass):
            return QSeries(self.model, [a * other for a in self.coeffs])
        try:
            c = Fraction(other)
        except TypeError:
            return NotImplemented
        return QSeries(self.model, [a.scale(c) for a in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = QSeries.one(self.model, self.q_order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.model == other.model and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def truncate(self, q_order: int) -> QSeries:
        if q_order > self.q_order:
            raise ValueError(f"cannot extend a series of order {self.q_order} to {q_order}")
        return QSeries(self.model, self.coeffs[: q_order + 1])

    def map(self, f) -> list:
        return [f(c) for c in self.coeffs]

    def __repr__(self):
        body = " + ".join(f"({c})q^{k}" for k, c in enumerate(self.coeffs) if c)
        return f"QSeries({body or '0'}; Q={self.q_order})"


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product truncated at ``q^Q``."""
    a._check(b)
    Q = a.q_order
    out = []
    nz_b = [j for j, c in enumerate(b.coeffs) if c]
    for k in range(Q + 1):
        acc = a.model.zero()
        for j in nz_b:
            if j > k:
                break
            ai = a.coeffs[k - j]
            if ai:
                acc = acc + ai * b.coeffs[j]
        out.append(acc)
    return QSeries(a.model, out)


def invert_class(x: CohomClass) -> CohomClass:
    """Inverse of ``c + N`` with ``c`` a nonzero rational and ``N`` nilpotent."""
    c = x.constant_term
    if not c:
        raise InversionError(f"class {x} has zero constant term")
    # (c + N)^-1 = c^-1 * sum (-N/c)^k, N^(n+1) = 0
    t = -(x - c) / c
    result = x.model.one()
    power = x.model.one()
    for _ in range(x.model.complex_dimension):
        power = power * t
        if not power:
            break
        result = result + power
    return result / c


def qs_invert(a: QSeries) -> QSeries:
    """Multiplicative inverse; ``a[0]`` must have an invertible constant term."""
    b0 = invert_class(a.coeffs[0])
    out = [b0]
    for k in range(1, a.q_order + 1):
        acc = a.model.zero()
        for i in range(1, k + 1):
            if a.coeffs[i]:
                acc = acc + a.coeffs[i] * out[k - i]
        out.append(-(b0 * acc))
    return QSeries(a.model, out)


def exp_nilpotent(x: CohomClass, M: ManifoldModel | None = None) -> CohomClass:
    """``sum x^k / k!``; ``x`` must have no constant term."""
    if M is not None and x.model != M:
        raise ModelMismatchError("class is not over the given model")
    if x.constant_term:
        raise ValueError(f"exp of a class with constant term {x.constant_term} is not rational")
    result = x.model.one()
    power = x.model.one()
    for k in range(1, x.model.complex_dimension + 1):
        power = power * x
        if not power:
            break
        result = result + power / math.factorial(k)
    return result


def evaluate_series(coeffs: Sequence[Fraction], x: CohomClass) -> CohomClass:
    """``sum coeffs[j] * x^j`` for a nilpotent ``x`` (Horner)."""
    n = min(len(coeffs) - 1, x.model.complex_dimension)
    result = x.model.constant(coeffs[n]) if n >= 0 else x.model.zero()
    for j in range(n - 1, -1, -1):
        result = result * x + coeffs[j]
    return result


# -- scalar rational series ---------------------------------------------------


def scalar_mul(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


def scalar_invert(a: Sequence[Fraction], order: int) -> list[Fraction]:
    if not a or not a[0]:
        raise InversionError("scalar series with zero constant term")
    inv0 = 1 / Fraction(a[0])
    out = [inv0]
    for k in range(1, order + 1):
        s = sum((Fraction(a[i]) * out[k - i] for i in range(1, min(k, len(a) - 1) + 1)), Fraction(0))
        out.append(-inv0 * s)
    return out


@lru_cache(maxsize=64)
def a_hat_coefficients(order: int) -> tuple[Fraction, ...]:
    """Taylor coefficients of ``t / (e^{t/2} - e^{-t/2})`` up to ``t^order``."""
    # (e^{t/2} - e^{-t/2}) / t = sum_j t^{2j} / (4^j (2j+1)!)
    sinhc = [Fraction(0)] * (order + 1)
    for j in range(order // 2 + 1):
        sinhc[2 * j] = Fraction(1, 4 ** j * math.factorial(2 * j + 1))
    return tuple(scalar_invert(sinhc, order))
