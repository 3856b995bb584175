"""Truncated cohomology rings with triangular relations.

A model has even-degree generators ``g_1..g_m`` and one relation per
generator, ``g_j**e_j = P_j``, where ``P_j`` only involves ``g_i`` with
``i < j`` and powers of ``g_j`` below ``e_j``. The quotient is then a free
module on the monomials with ``a_j < e_j``; classes are stored densely on
that basis as an integer numerator vector over a common denominator.

The fundamental class pairs to 1 with ``prod g_j**(e_j - 1)``.
"""

from __future__ import annotations

import json
import math
import random
import re
from array import array
from dataclasses import asdict, dataclass
from fractions import Fraction
from numbers import Rational
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from . import kernel

Exponents = tuple[int, ...]

_INT64_MAX = (1 << 62) - 1


class ModelError(ValueError):
    """Malformed manifold model or model file."""


class ModelMismatchError(ModelError):
    """Classes from different models were combined."""


_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ModelError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        if not _RATIONAL.fullmatch(text.strip()):
            raise ModelError(f"not an exact rational 'p' or 'p/q': {text!r}")
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ModelError(f"not a rational: {text!r}") from exc
    raise ModelError(f"rationals are serialized as strings, got {text!r}")


def format_rational(x: Fraction | int) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class Relation:
    """``g_gen ** power = sum(coeff * monomial)`` over ``rhs``."""

    gen: int
    power: int
    rhs: tuple[tuple[Exponents, Fraction], ...] = ()

    def __post_init__(self):
        rhs = tuple(sorted((tuple(int(a) for a in e), Fraction(c)) for e, c in self.rhs))
        object.__setattr__(self, "rhs", rhs)


@dataclass(frozen=True)
class Metadata:
    """Trusted facts about the manifold that a ring presentation cannot decide.

    ``has_fixed_point`` means some simply connected compact Lie group acts
    almost effectively with a fixed point; ``maximal_torus_isotropy`` marks
    homogeneous spaces ``G/T`` with ``T`` a maximal torus.
    """

    b1: int = 0
    b2: int = 0
    torus_dim: int = 0
    homogeneous: bool = False
    simply_connected: bool = True
    has_fixed_point: bool = False
    maximal_torus_isotropy: bool = False


class ManifoldModel:
    """Immutable presentation of ``H^*(M; Q)`` plus a stable tangent splitting.

    ``tangent_roots`` are integer coefficient vectors of degree-2 classes;
    ``TM + C^rank_offset`` splits as the sum of the corresponding line bundles.
    """

    __slots__ = (
        "name", "generators", "relations", "tangent_roots", "rank_offset", "metadata",
        "exponent_bounds", "complex_dimension", "basis", "_index", "_degrees",
        "_start", "_idx", "_coef", "_table_den", "_key", "_hash",
    )

    def __init__(
        self,
        name: str,
        generators: Sequence[str],
        relations: Iterable[Relation],
        tangent_roots: Iterable[Sequence[int]] = (),
        rank_offset: int = 0,
        metadata: Metadata | None = None,
    ):
        gens = tuple(str(g) for g in generators)
        if len(set(gens)) != len(gens):
            raise ModelError(f"duplicate generator names in {gens}")
        m = len(gens)
        rels = sorted(relations, key=lambda r: r.gen)
        if [r.gen for r in rels] != list(range(m)):
            raise ModelError("need exactly one relation per generator")
        for r in rels:
            _check_relation(r, m)
        bounds = tuple(r.power for r in rels)
        n = sum(e - 1 for e in bounds)
        roots = tuple(tuple(int(c) for c in v) for v in tangent_roots)
        for v in roots:
            if len(v) != m:
                raise ModelError(f"tangent root {v} has length {len(v)}, expected {m}")
        if len(roots) - rank_offset != n:
            raise ModelError(
                f"{len(roots)} tangent roots minus offset {rank_offset} != dimension {n}"
            )
        meta = metadata if metadata is not None else Metadata(b2=m)
        if meta.b2 != m:
            raise ModelError(f"b2 = {meta.b2} but the model has {m} generators")

        set_ = object.__setattr__
        set_(self, "name", str(name))
        set_(self, "generators", gens)
        set_(self, "relations", tuple(rels))
        set_(self, "tangent_roots", roots)
        set_(self, "rank_offset", int(rank_offset))
        set_(self, "metadata", meta)
        set_(self, "exponent_bounds", bounds)
        set_(self, "complex_dimension", n)

        basis = _enumerate_basis(bounds)
        set_(self, "basis", basis)
        set_(self, "_index", {a: i for i, a in enumerate(basis)})
        set_(self, "_degrees", tuple(sum(a) for a in basis))
        set_(self, "_key", (gens, tuple(rels)))
        set_(self, "_hash", hash((gens, tuple(rels))))
        self._build_table()

    def __setattr__(self, name, value):
        raise AttributeError("ManifoldModel is immutable")

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ManifoldModel):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"ManifoldModel({self.name!r}, dim_C={self.complex_dimension})"

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def fundamental_monomial(self) -> Exponents:
        return tuple(e - 1 for e in self.exponent_bounds)

    @property
    def rank(self) -> int:
        return len(self.basis)

    # -- normal forms -------------------------------------------------

    def normal_form(self, exps: Sequence[int], rng: random.Random | None = None,
                    _memo: dict | None = None) -> dict[int, Fraction]:
        """Normal form of a single monomial as ``{basis index: coefficient}``.

        With ``rng`` the reducible generator to rewrite is picked at random,
        which exercises confluence; results must not depend on it.
        """
        exps = tuple(exps)
        if len(exps) != self.ngens:
            raise ModelMismatchError(f"exponent vector {exps} for {self.ngens} generators")
        if any(a < 0 for a in exps):
            raise ModelError(f"negative exponent in {exps}")
        if sum(exps) > self.complex_dimension:
            return {}
        if _memo is not None and exps in _memo:
            return _memo[exps]
        reducible = [j for j, (a, e) in enumerate(zip(exps, self.exponent_bounds)) if a >= e]
        if not reducible:
            out = {self._index[exps]: Fraction(1)}
        else:
            j = rng.choice(reducible) if rng is not None else reducible[-1]
            rel = self.relations[j]
            base = list(exps)
            base[j] -= rel.power
            out: dict[int, Fraction] = {}
            for mono, c in rel.rhs:
                shifted = [x + y for x, y in zip(base, mono)]
                for k, v in self.normal_form(shifted, rng, _memo).items():
                    s = out.get(k, 0) + c * v
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        if _memo is not None:
            _memo[exps] = out
        return out

    def _build_table(self):
        size = self.rank
        memo: dict = {}
        entries: list[list[tuple[int, Fraction]]] = [[] for _ in range(size * size)]
        n = self.complex_dimension
        den = 1
        for i, a in enumerate(self.basis):
            for j in range(i, size):
                if self._degrees[i] + self._degrees[j] > n:
                    continue
                b = self.basis[j]
                nf = sorted(self.normal_form([x + y for x, y in zip(a, b)], _memo=memo).items())
                entries[i * size + j] = nf
                entries[j * size + i] = nf
                for _, c in nf:
                    den = den * c.denominator // math.gcd(den, c.denominator)
        start = array("q", [0])
        idx = array("i")
        coef = array("q")
        for nf in entries:
            for k, c in nf:
                v = c * den
                if abs(v) > _INT64_MAX:
                    raise ModelError("structure constant exceeds the 62-bit kernel range")
                idx.append(k)
                coef.append(int(v))
            start.append(len(idx))
        object.__setattr__(self, "_start", start)
        object.__setattr__(self, "_idx", idx)
        object.__setattr__(self, "_coef", coef)
        object.__setattr__(self, "_table_den", den)

    # -- constructors -------------------------------------------------

    def zero(self) -> CohomClass:
        return CohomClass._raw(self, [0] * self.rank, 1)

    def one(self) -> CohomClass:
        return self.constant(1)

    def constant(self, value) -> CohomClass:
        v = Fraction(value)
        num = [0] * self.rank
        num[0] = v.numerator
        return CohomClass._raw(self, num, v.denominator)

    def gen(self, which: int | str) -> CohomClass:
        j = self.generators.index(which) if isinstance(which, str) else int(which)
        vec = [0] * self.ngens
        vec[j] = 1
        return self.linear(vec)

    def linear(self, vec: Sequence) -> CohomClass:
        """Degree-2 class ``sum(vec[j] * g_j)`` (rational entries allowed)."""
        if len(vec) != self.ngens:
            raise ModelMismatchError(f"vector {list(vec)} has length {len(vec)}, expected {self.ngens}")
        terms = {}
        for j, c in enumerate(vec):
            if c:
                e = [0] * self.ngens
                e[j] = 1
                terms[tuple(e)] = Fraction(c)
        return self.from_terms(terms)

    def from_terms(self, terms: Mapping[Sequence[int], object],
                   rng: random.Random | None = None) -> CohomClass:
        items = list(terms.items())
        if rng is not None:
            rng.shuffle(items)
        acc: dict[int, Fraction] = {}
        memo = None if rng is not None else {}
        for exps, c in items:
            c = Fraction(c)
            if not c:
                continue
            for k, v in self.normal_form(exps, rng, memo).items():
                acc[k] = acc.get(k, 0) + c * v
        return CohomClass.from_fractions(self, acc)

    def tangent_classes(self) -> list[CohomClass]:
        return [self.linear(v) for v in self.tangent_roots]

    def c1(self) -> CohomClass:
        """First Chern class of the stable complex structure."""
        total = [sum(col) for col in zip(*self.tangent_roots)] if self.tangent_roots else [0] * self.ngens
        return self.linear(total)

    def c1_vector(self) -> tuple[int, ...]:
        if not self.tangent_roots:
            return (0,) * self.ngens
        return tuple(sum(col) for col in zip(*self.tangent_roots))

    def euler_characteristic(self) -> Fraction:
        top = self.one()
        for x in self.tangent_classes():
            top = top * (1 + x)
        return integrate(top.degree_part(self.complex_dimension), self)


def _check_relation(rel: Relation, m: int):
    j, e = rel.gen, rel.power
    if e < 1:
        raise ModelError(f"relation for generator {j}: power must be >= 1")
    for exps, c in rel.rhs:
        if len(exps) != m:
            raise ModelError(f"relation for generator {j}: exponent vector {exps} has wrong length")
        if any(a < 0 for a in exps):
            raise ModelError(f"relation for generator {j}: negative exponent in {exps}")
        if any(exps[i] for i in range(j + 1, m)):
            raise ModelError(f"relation for generator {j} involves a later generator: {exps}")
        if exps[j] >= e:
            raise ModelError(f"relation for generator {j} is not triangular: {exps}")
        if sum(exps) != e:
            raise ModelError(f"relation for generator {j} is not homogeneous: {exps}")


def _enumerate_basis(bounds: Sequence[int]) -> tuple[Exponents, ...]:
    out: list[Exponents] = [()]
    for e in bounds:
        out = [a + (k,) for a in out for k in range(e)]
    # constant first, fundamental monomial last
    out.sort(key=lambda a: (sum(a), a))
    return tuple(out)


class CohomClass:
    """A reduced element of ``H^*(M; Q)``: ``num / den`` on the model basis.

    ``IntClass`` values are the same objects with integral coefficients.
    """

    __slots__ = ("model", "num", "den")

    def __init__(self, model: ManifoldModel, num: Sequence[int], den: int = 1):
        if len(num) != model.rank:
            raise ModelMismatchError(f"numerator of length {len(num)} for basis of size {model.rank}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        self._set(model, [int(x) for x in num], int(den))

    @classmethod
    def _raw(cls, model, num: list[int], den: int) -> CohomClass:
        obj = cls.__new__(cls)
        obj._set(model, num, den)
        return obj

    def _set(self, model, num, den):
        if den < 0:
            num = [-x for x in num]
            den = -den
        if den != 1:
            g = math.gcd(den, *num)
            if g != 1:
                num = [x // g for x in num]
                den //= g
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("CohomClass is immutable")

    @classmethod
    def from_fractions(cls, model: ManifoldModel, coeffs: Mapping[int, Fraction]) -> CohomClass:
        den = 1
        for c in coeffs.values():
            c = Fraction(c)
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [0] * model.rank
        for k, c in coeffs.items():
            c = Fraction(c)
            num[k] = c.numerator * (den // c.denominator)
        return cls._raw(model, num, den)

    # -- views ----------------------------------------------------------

    @property
    def terms(self) -> dict[Exponents, Fraction]:
        """Sparse view: exponent vector -> coefficient, zeros omitted."""
        basis = self.model.basis
        return {basis[k]: Fraction(x, self.den) for k, x in enumerate(self.num) if x}

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        k = self.model._index.get(tuple(exps))
        if k is None:
            return Fraction(0)
        return Fraction(self.num[k], self.den)

    @property
    def constant_term(self) -> Fraction:
        return Fraction(self.num[0], self.den)

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    def degree_part(self, d: int) -> CohomClass:
        degs = self.model._degrees
        return CohomClass._raw(self.model, [x if degs[k] == d else 0 for k, x in enumerate(self.num)], self.den)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> CohomClass | None:
        if isinstance(other, CohomClass):
            if other.model is not self.model and other.model != self.model:
                raise ModelMismatchError(f"{self.model.name!r} vs {other.model.name!r}")
            return other
        if isinstance(other, (int, Rational)):
            return self.model.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.den == self.den:
            return CohomClass._raw(self.model, [x + y for x, y in zip(self.num, o.num)], self.den)
        g = math.gcd(self.den, o.den)
        ka, kb = o.den // g, self.den // g
        num = kernel.active().scale_add(list(self.num), ka, list(o.num), kb)
        return CohomClass._raw(self.model, num, self.den * ka)

    __radd__ = __add__

    def __neg__(self):
        return CohomClass._raw(self.model, [-x for x in self.num], self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> CohomClass:
        c = Fraction(c)
        p = c.numerator
        return CohomClass._raw(self.model, [x * p for x in self.num], self.den * c.denominator)

    def _scalar_value(self) -> Fraction | None:
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CohomClass):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        s = o._scalar_value()
        if s is not None:
            return self.scale(s)
        s = self._scalar_value()
        if s is not None:
            return o.scale(s)
        M = self.model
        num = kernel.active().mul_dense(list(self.num), list(o.num), M._start, M._idx, M._coef, M.rank)
        return CohomClass._raw(M, num, self.den * o.den * M._table_den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CohomClass):
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = self.model.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, CohomClass):
            return self.model == other.model and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)):
            return self == self.model.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.model, self.num, self.den))

    def __repr__(self):
        return f"CohomClass({format_class(self)})"

    def __str__(self):
        return format_class(self)


IntClass = CohomClass


class Z2Class(frozenset):
    """Mod-2 class: the set of basis monomials with odd coefficient."""

    def __repr__(self):
        return f"Z2Class({sorted(self)})"


# -- module-level operations--------------------------------------------------


def reduce(x, M: ManifoldModel, rng: random.Random | None = None) -> CohomClass:
    """Normal form of ``x`` (a class or a mapping exponents -> coefficient)."""
    if isinstance(x, CohomClass):
        if x.model != M:
            raise ModelMismatchError(f"class over {x.model.name!r}, model {M.name!r}")
        return x
    return M.from_terms(x, rng)


def multiply(a: CohomClass, b: CohomClass, M: ManifoldModel | None = None) -> CohomClass:
    if M is not None and (a.model != M or b.model != M):
        raise ModelMismatchError("operands are not over the given model")
    return a * b


def integrate(x: CohomClass, M: ManifoldModel | None = None) -> Fraction:
    """Pairing with the fundamental class: coefficient of the top monomial."""
    if M is not None and x.model != M:
        raise ModelMismatchError(f"class over {x.model.name!r}, model {M.name!r}")
    return Fraction(x.num[-1], x.den)


def mod2(x: CohomClass) -> Z2Class:
    if not x.is_integral:
        raise ValueError(f"mod 2 reduction of a non-integral class {x}")
    basis = x.model.basis
    return Z2Class(basis[k] for k, c in enumerate(x.num) if c % 2)


# -- formatting and serialization ---------------------------------------------


def format_monomial(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = [n if a == 1 else f"{n}^{a}" for n, a in zip(names, exps) if a]
    return "*".join(parts)


def format_class(x: CohomClass) -> str:
    items = sorted(x.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-a for a in kv[0])))
    if not items:
        return "0"
    out = []
    for exps, c in items:
        mono = format_monomial(exps, x.model.generators)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def format_z2(z: Z2Class, names: Sequence[str]) -> str:
    if not z:
        return "0"
    return " + ".join(format_monomial(e, names) or "1" for e in sorted(z, key=lambda a: (sum(a), a)))


def polynomial_to_json(terms: Mapping[Exponents, Fraction]) -> list[dict]:
    return [{"coeff": format_rational(c), "exponents": list(e)} for e, c in sorted(terms.items())]


def polynomial_from_json(data, m: int) -> dict[Exponents, Fraction]:
    if not isinstance(data, list):
        raise ModelError("polynomial must be a list of {coeff, exponents}")
    out: dict[Exponents, Fraction] = {}
    for term in data:
        try:
            exps = tuple(int(a) for a in term["exponents"])
            c = parse_rational(term["coeff"])
        except (KeyError, TypeError) as exc:
            raise ModelError(f"bad polynomial term {term!r}") from exc
        if len(exps) != m:
            raise ModelError(f"exponent vector {list(exps)} has length {len(exps)}, expected {m}")
        out[exps] = out.get(exps, 0) + c
    return {e: c for e, c in out.items() if c}


def class_to_json(x: CohomClass) -> list[dict]:
    return polynomial_to_json(x.terms)


_META_FIELDS = {f for f in Metadata.__dataclass_fields__}


def model_from_dict(data: Mapping) -> ManifoldModel:
    try:
        name = data["name"]
        gens = list(data["generators"])
        m = len(gens)
        rels = []
        for r in data["relations"]:
            gname, power = r["lead"]
            if gname not in gens:
                raise ModelError(f"relation lead {gname!r} is not a generator")
            rhs = polynomial_from_json(r.get("rhs", []), m)
            rels.append(Relation(gens.index(gname), int(power), tuple(sorted(rhs.items()))))
        roots = [list(v) for v in data.get("tangent_roots", [])]
        offset = int(data.get("rank_offset", 0))
        raw_meta = dict(data.get("metadata", {}))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ModelError):
            raise
        raise ModelError(f"malformed manifold description: {exc}") from exc
    unknown = set(raw_meta) - _META_FIELDS
    if unknown:
        raise ModelError(f"unknown metadata fields {sorted(unknown)}")
    raw_meta.setdefault("b2", m)
    return ManifoldModel(name, gens, rels, roots, offset, Metadata(**raw_meta))


def model_to_dict(M: ManifoldModel) -> dict:
    return {
        "name": M.name,
        "generators": list(M.generators),
        "relations": [
            {"lead": [M.generators[r.gen], r.power], "rhs": polynomial_to_json(dict(r.rhs))}
            for r in M.relations
        ],
        "tangent_roots": [list(v) for v in M.tangent_roots],
        "rank_offset": M.rank_offset,
        "metadata": asdict(M.metadata),
    }


def load_model(path: str | Path) -> ManifoldModel:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelError(f"cannot read manifold file {path}: {exc}") from exc
    return model_from_dict(data)


def dump_model(M: ManifoldModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(M), indent=2, sort_keys=True) + "\n")
