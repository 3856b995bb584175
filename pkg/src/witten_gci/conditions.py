"""Hypothesis checks for the vanishing theorems, Fano arithmetic, string search.

Group-action facts come from the model metadata and are trusted as given;
only the cohomological conditions are computed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

from .charclass import LineBundleSum, c1, euler, pontryagin_p1, tangent_bundle, w2
from .cohomology import (
    CohomClass, ManifoldModel, Z2Class, class_to_json, format_class, format_z2, mod2,
)

THEOREM_LABELS = ("thm-homogeneous", "thm-fixed-point", "thm-torus", "corollary-bott", "none")

SEARCH_LIMIT = 2_000_000


class SearchSpaceError(ValueError):
    def __init__(self, size: int, limit: int):
        super().__init__(f"search space of {size} candidate bundles exceeds the limit {limit}")
        self.size = size
        self.limit = limit


@dataclass(frozen=True)
class ConditionReport:
    w2_match: bool
    p1_match: bool
    x_spin: bool
    theorem_applicable: str
    w2_M: Z2Class
    w2_V: Z2Class
    p1_M: CohomClass
    p1_V: CohomClass
    notes: tuple[str, ...] = field(default=())

    @property
    def string_conditions(self) -> bool:
        return self.w2_match and self.p1_match

    @property
    def predicts_vanishing(self) -> bool:
        return self.string_conditions and self.theorem_applicable != "none"

    def to_dict(self) -> dict:
        names = self.p1_M.model.generators
        return {
            "w2_match": self.w2_match,
            "p1_match": self.p1_match,
            "x_spin": self.x_spin,
            "theorem_applicable": self.theorem_applicable,
            "predicts_vanishing": self.predicts_vanishing,
            "witnesses": {
                "w2_M": format_z2(self.w2_M, names),
                "w2_V": format_z2(self.w2_V, names),
                "p1_M": format_class(self.p1_M),
                "p1_V": format_class(self.p1_V),
                "p1_M_terms": class_to_json(self.p1_M),
                "p1_V_terms": class_to_json(self.p1_V),
            },
            "notes": list(self.notes),
        }


def classify_theorem(M: ManifoldModel) -> str:
    """First vanishing theorem whose group-action hypothesis the metadata meets."""
    meta = M.metadata
    if meta.homogeneous and not meta.maximal_torus_isotropy:
        return "thm-homogeneous"
    if meta.has_fixed_point:
        return "thm-fixed-point"
    if meta.b1 == 0 and meta.torus_dim > meta.b2:
        return "thm-torus"
    return "none"


def check_string_gci(M: ManifoldModel, V: LineBundleSum) -> ConditionReport:
    TM = tangent_bundle(M)
    w2M, w2V = w2(TM, M), w2(V, M)
    p1M, p1V = pontryagin_p1(TM, M), pontryagin_p1(V, M)
    w2_match = w2M == w2V
    p1_match = p1M == p1V
    label = classify_theorem(M)
    notes = []
    if M.metadata.maximal_torus_isotropy:
        notes.append("homogeneous with maximal-torus isotropy: the homogeneous theorem is excluded")
    if label == "thm-torus" and not all(e == 2 for e in M.exponent_bounds):
        notes.append("b2 < dim_C/2 torus manifold (generalized Bott type)")
    if w2_match and not p1_match:
        notes.append("X is spin; p1 condition fails")
    return ConditionReport(w2_match, p1_match, w2_match, label, w2M, w2V, p1M, p1V, tuple(notes))


@dataclass(frozen=True)
class FanoCheck:
    c1_coefficient: int
    fano: bool
    exceptional: bool

    def to_dict(self) -> dict:
        return {"c1_coefficient": self.c1_coefficient, "fano": self.fano,
                "exceptional": self.exceptional}


def fano_c1_check(n: int, degrees) -> FanoCheck:
    """First Chern class of a complete intersection in ``CP^n`` as a multiple of ``u``."""
    degrees = [int(d) for d in degrees]
    if n < 1:
        raise ValueError(f"ambient dimension must be >= 1, got {n}")
    if any(d < 1 for d in degrees):
        raise ValueError(f"degrees must be positive, got {degrees}")
    m = n + 1
    c = m - sum(degrees)
    k = len(degrees)
    exceptional = all(d == 1 for d in degrees) and k == m and m >= n - 1
    return FanoCheck(c, c > 0, exceptional)


def search_space_size(ngens: int, max_degree: int, max_bundles: int) -> int:
    candidates = (max_degree + 1) ** ngens - 1
    return sum(math.comb(candidates + k - 1, k) for k in range(1, max_bundles + 1))


def iter_string_configurations(M: ManifoldModel, max_degree: int, max_bundles: int,
                               limit: int = SEARCH_LIMIT) -> Iterator[LineBundleSum]:
    """Yield bundles passing both string conditions, by size then lexicographically."""
    if max_degree < 0 or max_bundles < 0:
        raise ValueError("bounds must be nonnegative")
    size = search_space_size(M.ngens, max_degree, max_bundles)
    if size > limit:
        raise SearchSpaceError(size, limit)
    candidates = [v for v in itertools.product(range(max_degree + 1), repeat=M.ngens) if any(v)]
    TM = tangent_bundle(M)
    w2M = mod2(c1(TM, M))
    p1M = pontryagin_p1(TM, M)
    squares = {v: M.linear(v) ** 2 for v in candidates}
    for k in range(1, max_bundles + 1):
        for combo in itertools.combinations_with_replacement(candidates, k):
            cV = [sum(col) for col in zip(*combo)]
            if mod2(M.linear(cV)) != w2M:
                continue
            p1V = M.zero()
            for v in combo:
                p1V = p1V + squares[v]
            if p1V == p1M:
                yield LineBundleSum(combo)


def search_string(M: ManifoldModel, max_degree: int, max_bundles: int,
                  limit: int = SEARCH_LIMIT) -> list[LineBundleSum]:
    return list(iter_string_configurations(M, max_degree, max_bundles, limit))


def vanishing_reason(M: ManifoldModel, V: LineBundleSum, series) -> str | None:
    """Why a computed Witten genus of ``X`` is zero, or ``None`` if it is not.

    ``empty``: the Euler class of ``V`` is zero; ``dimension-parity``: real
    dimension of ``X`` is 2 mod 4; ``theorem``: the string conditions hold and a
    vanishing theorem applies; ``computed``: none of these.
    """
    if any(series):
        return None
    if not euler(V, M):
        return "empty"
    d = M.complex_dimension - len(V.roots)
    if d % 2:
        return "dimension-parity"
    if check_string_gci(M, V).predicts_vanishing:
        return "theorem"
    return "computed"
