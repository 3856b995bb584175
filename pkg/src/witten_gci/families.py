"""Builders for the supported manifold families.

Products of projective spaces and generalized Bott towers. A stage of a
tower is ``(n, twists)``: the projectivization of ``O + L_1 + ... + L_n``
over the previous stages, where ``twists[i]`` is the integer vector of
``c_1(L_i)`` in the earlier generators. With ``x`` the hyperplane class of
the new fibre the ring gains ``x * prod(x + c_1(L_i)) = 0``, and the stable
tangent bundle gains the line bundles with first Chern classes ``x`` and
``x + c_1(L_i)``.
"""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction
from typing import Sequence

from .cohomology import ManifoldModel, Metadata, ModelError, Relation


def point() -> ManifoldModel:
    return ManifoldModel("point", [], [], [], 0, Metadata(b2=0))


def projective_product(dims: Sequence[int], names: Sequence[str] | None = None,
                       name: str | None = None, **meta) -> ManifoldModel:
    """``CP^{n_1} x ... x CP^{n_k}`` with hyperplane classes as generators."""
    dims = [int(n) for n in dims]
    if any(n < 1 for n in dims):
        raise ModelError(f"projective dimensions must be >= 1, got {dims}")
    k = len(dims)
    if names is None:
        names = ["u"] if k == 1 else [f"u{i + 1}" for i in range(k)]
    rels = [Relation(j, n + 1, ()) for j, n in enumerate(dims)]
    roots = []
    for j, n in enumerate(dims):
        vec = [0] * k
        vec[j] = 1
        roots.extend([list(vec)] * (n + 1))
    metadata = Metadata(
        b1=0, b2=k, torus_dim=sum(dims), homogeneous=True, simply_connected=True,
        has_fixed_point=all(n >= 2 for n in dims),
        maximal_torus_isotropy=all(n == 1 for n in dims),
    )
    metadata = replace(metadata, **meta)
    if name is None:
        name = "x".join(f"CP{n}" for n in dims)
    return ManifoldModel(name, names, rels, roots, k, metadata)


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for a, c in p.items():
        for b, d in q.items():
            e = tuple(x + y for x, y in zip(a, b))
            out[e] = out.get(e, 0) + c * d
    return {e: c for e, c in out.items() if c}


def bott_tower(stages: Sequence[tuple[int, Sequence[Sequence[int]]]],
               names: Sequence[str] | None = None, name: str = "bott", **meta) -> ManifoldModel:
    """Generalized Bott manifold from its stage data.

    >>> M = bott_tower([(1, []), (1, [[1]])], names=["u", "v"])
    >>> M.relations[1].rhs
    (((1, 1), Fraction(-1, 1)),)
    """
    k = len(stages)
    if names is None:
        names = [f"x{j + 1}" for j in range(k)]
    rels = []
    roots = []
    for j, (n, twists) in enumerate(stages):
        n = int(n)
        if n < 1:
            raise ModelError(f"stage {j + 1}: fibre dimension must be >= 1")
        if len(twists) not in (0, n):
            raise ModelError(f"stage {j + 1}: expected {n} twist vectors, got {len(twists)}")
        twists = [list(t) for t in twists] or [[0] * j for _ in range(n)]
        x = [0] * k
        x[j] = 1
        # prod over the n+1 summands of (x + c_1), as polynomials in g_0..g_j
        poly = {tuple(x): Fraction(1)}
        for t in twists:
            if len(t) != j:
                raise ModelError(f"stage {j + 1}: twist {t} must have length {j}")
            lin = {tuple(x): Fraction(1)}
            for i, c in enumerate(t):
                if c:
                    e = [0] * k
                    e[i] = 1
                    lin[tuple(e)] = lin.get(tuple(e), 0) + Fraction(c)
            poly = _poly_mul(poly, lin)
            root = list(t) + [1] + [0] * (k - j - 1)
            roots.append(root)
        roots.append(list(x))
        lead = tuple(n + 1 if i == j else 0 for i in range(k))
        rhs = tuple((e, -c) for e, c in poly.items() if e != lead)
        rels.append(Relation(j, n + 1, rhs))
    dims = [int(n) for n, _ in stages]
    metadata = Metadata(b1=0, b2=k, torus_dim=sum(dims), homogeneous=False,
                        simply_connected=True, has_fixed_point=False)
    metadata = replace(metadata, **meta)
    return ManifoldModel(name, names, rels, roots, k, metadata)


def is_bott(M: ManifoldModel) -> bool:
    """All fibres are CP^1 (``b_2 = dim_C``)."""
    return all(e == 2 for e in M.exponent_bounds)
