import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cases import random_class, random_model
from witten_gci import (
    ManifoldModel, Metadata, ModelError, ModelMismatchError, Relation, bott_tower, integrate,
    load_model, mod2, multiply, point, projective_product, reduce,
)
from witten_gci.cohomology import (
    dump_model, format_class, model_from_dict, model_to_dict, parse_rational,
)

MODELS = [
    projective_product([3]),
    projective_product([2, 2]),
    projective_product([1, 1, 1]),
    bott_tower([(1, []), (1, [[1]])], names=["u", "v"]),
    bott_tower([(1, []), (2, [[1], [-1]])]),
    bott_tower([(2, []), (1, [[2]]), (1, [[1, -1]])]),
]


def test_projective_relations():
    M = projective_product([3])
    u = M.gen("u")
    assert integrate(u ** 3) == 1
    assert not u ** 4
    assert M.euler_characteristic() == 4
    assert format_class(16 * u ** 2) == "16*u^2"


def test_hirzebruch_surface():
    M = bott_tower([(1, []), (1, [[1]])], names=["u", "v"])
    u, v = M.gen("u"), M.gen("v")
    assert v * v == -(u * v)
    assert integrate(v * v) == -1
    assert integrate(u * v) == 1
    assert not u * u
    assert M.euler_characteristic() == 4


def test_point_model():
    P = point()
    assert P.rank == 1
    assert integrate(P.constant(Fraction(3, 2))) == Fraction(3, 2)


def test_degree_truncation():
    M = projective_product([2, 2])
    assert not M.from_terms({(3, 2): 1})
    assert integrate(M.from_terms({(2, 2): 5})) == 5


def test_reduce_accepts_mappings_and_classes():
    M = MODELS[3]
    x = reduce({(0, 2): 3, (1, 0): 1}, M)
    assert x == 3 * M.gen(1) ** 2 + M.gen(0)
    assert reduce(x, M) is x
    with pytest.raises(ModelMismatchError):
        reduce(x, MODELS[0])


def test_multiply_checks_model():
    a, b = MODELS[0].gen(0), MODELS[1].gen(0)
    with pytest.raises((ModelMismatchError, ValueError)):
        multiply(a, b)
    with pytest.raises(ModelMismatchError):
        multiply(a, a, MODELS[1])


@pytest.mark.parametrize("M", MODELS, ids=lambda M: M.name)
@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_confluence(M, seed):
    rng = random.Random(seed)
    terms = {}
    for _ in range(rng.randint(1, 5)):
        exps = tuple(rng.randint(0, M.complex_dimension) for _ in range(M.ngens))
        terms[exps] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    canonical = M.from_terms(terms)
    for k in range(3):
        assert M.from_terms(terms, rng=random.Random(seed + k + 1)) == canonical


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_ring_laws(seed):
    rng = random.Random(seed)
    M = random_model(rng)
    x, y, z = (random_class(rng, M) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x * M.one() == x
    assert x - x == M.zero()


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1),
       a=st.fractions(max_denominator=20), b=st.fractions(max_denominator=20))
def test_integrate_is_linear(seed, a, b):
    rng = random.Random(seed)
    M = random_model(rng)
    x, y = random_class(rng, M), random_class(rng, M)
    assert integrate(x * a + y * b) == a * integrate(x) + b * integrate(y)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_products_beyond_top_degree_vanish(seed):
    rng = random.Random(seed)
    M = random_model(rng)
    gens = [M.gen(rng.randrange(M.ngens)) for _ in range(M.complex_dimension + 1)]
    prod = M.one()
    for g in gens:
        prod = prod * g
    assert not prod
    top = M.one()
    for g in gens[:-1]:
        top = top * g
    assert top == top.degree_part(M.complex_dimension)


def test_mod2():
    M = projective_product([2, 1])
    assert mod2(M.linear([3, 2])) == mod2(M.linear([1, 0]))
    assert not mod2(M.linear([2, 4]))
    with pytest.raises(ValueError):
        mod2(M.linear([Fraction(1, 2), 0]))


@pytest.mark.parametrize("M", MODELS, ids=lambda M: M.name)
def test_json_round_trip(M, tmp_path):
    data = model_to_dict(M)
    assert model_from_dict(json.loads(json.dumps(data))) == M
    path = tmp_path / "m.json"
    dump_model(M, path)
    assert load_model(path) == M


def test_parse_rational():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational(5) == 5
    with pytest.raises(ModelError):
        parse_rational("1.5")


@pytest.mark.parametrize("mutate, message", [
    (lambda d: d["relations"].pop(), "relation"),
    (lambda d: d["tangent_roots"].pop(), "root"),
    (lambda d: d.__setitem__("generators", ["u", "u"]), "generator"),
    (lambda d: d["relations"][0]["rhs"].append({"coeff": "1", "exponents": [1]}), "homogeneous"),
])
def test_invalid_models_rejected(mutate, message):
    data = model_to_dict(projective_product([3]))
    mutate(data)
    with pytest.raises(ModelError, match=message):
        model_from_dict(data)


def test_non_triangular_relation_rejected():
    rels = [Relation(0, 2, (((0, 1), 1),)), Relation(1, 2, (((1, 1), 1),))]
    with pytest.raises(ModelError):
        ManifoldModel("bad", ["a", "b"], rels, [[1, 0], [1, 0], [0, 1], [0, 1]], 2,
                      Metadata(b2=2))


def test_models_are_immutable():
    M = MODELS[0]
    with pytest.raises(AttributeError):
        M.name = "other"
    x = M.gen(0)
    with pytest.raises(AttributeError):
        x.den = 2
