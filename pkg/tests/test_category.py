import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f1geom.category import (
    Diagram,
    FiniteBObject,
    check_colimit,
    check_limit,
    coequalizer,
    coproduct,
    cyclic_object,
    equalizer,
    hom_count,
    hom_set,
    identity,
    internal_hom_B,
    is_isomorphic,
    product,
    small_objects,
    tensor_B,
    tensor_morphism,
    unit_for,
    unit_object,
    zero_object,
)
from f1geom.errors import ValidationError
from f1geom.finite import (
    FiniteMonoid,
    commutative_monoids,
    cyclic_monoid,
    pointed_monoids,
    quotient_monoid,
    semirings,
)

OBJECTS = small_objects(3, 4)
SMALL = [o for o in OBJECTS if o.size <= 2]
objects = st.sampled_from(OBJECTS)


def test_enumeration_counts():
    assert [len(commutative_monoids(k)) for k in range(1, 5)] == [1, 2, 5, 19]
    assert len(semirings(4)) == 44
    assert len(pointed_monoids(5)) == 68
    assert len(OBJECTS) == 37


def test_monoid_axioms_checked():
    with pytest.raises(ValidationError):
        FiniteMonoid(((0, 1), (1, 1), (0, 0)))
    with pytest.raises(ValidationError):
        FiniteMonoid(((0, 1, 2), (1, 2, 0), (2, 1, 1)))


def test_cyclic_monoid_data():
    m = cyclic_monoid(2, 3)
    assert m.size == 5
    assert m.cyclic_data(1) == (2, 3)


def test_quotient_identifies_generators():
    m = cyclic_monoid(0, 4)
    q, proj = quotient_monoid(m, [(0, 2)])
    assert q.size == 2 and proj[1] == proj[3]


def test_carrier_must_generate():
    with pytest.raises(ValidationError):
        FiniteBObject(("*",), cyclic_monoid(0, 2), (0,))


def test_zero_object_is_initial_and_terminal():
    z = zero_object()
    for o in SMALL:
        assert hom_count(z, o) == 1
        assert hom_count(o, z) == 1


def test_tensor_is_not_the_pointwise_product():
    z3 = FiniteBObject(("*", "x", "y"), cyclic_monoid(0, 3), (0, 1, 2))
    t = tensor_B(z3, z3)
    # y = x^2, so x (x) y and y (x) x coincide and the raw pairs do not inject
    assert t.obj.monoid.size == 3
    assert t.pair_point[1, 2] == t.pair_point[2, 1]
    assert t.pair_point[1, 1] == t.pair_point[2, 2]
    assert t.raw_size == 5 and t.obj.size == 3


def test_sign_tensor_sign():
    z2 = cyclic_object(0, 2)
    t = tensor_B(z2, z2).obj
    assert t.size == 2 and t.monoid.size == 2 and is_isomorphic(t, z2)


@settings(max_examples=60, deadline=None)
@given(objects, objects)
def test_tensor_symmetry(a, b):
    assert is_isomorphic(tensor_B(a, b).obj, tensor_B(b, a).obj)


@settings(max_examples=40, deadline=None)
@given(objects)
def test_unit_laws(a):
    u = unit_for(a)
    assert is_isomorphic(tensor_B(u, a).obj, a)
    assert is_isomorphic(tensor_B(a, u).obj, a)


@settings(max_examples=30, deadline=None)
@given(objects, objects, objects)
def test_associativity(a, b, c):
    left = tensor_B(tensor_B(a, b).obj, c).obj
    right = tensor_B(a, tensor_B(b, c).obj).obj
    assert is_isomorphic(left, right)


def test_unit_object_is_its_own_square():
    u = unit_object()
    assert is_isomorphic(tensor_B(u, u).obj, u)


def test_tensor_of_identities():
    a, b = SMALL[3], SMALL[5]
    f = tensor_morphism(identity(a), identity(b))
    assert f.point_map == tuple(range(tensor_B(a, b).obj.size))


def test_internal_hom_carrier():
    a, b = SMALL[2], SMALL[4]
    ih = internal_hom_B(a, b)
    assert ih.obj.size == hom_count(a, b)


def test_compose_associative():
    for a, b, c in itertools.product(SMALL[:5], repeat=3):
        for f in hom_set(a, b)[:2]:
            for g in hom_set(b, c)[:2]:
                h = f.compose(g)
                assert h.source == a and h.target == c
                h.check()


@pytest.mark.parametrize("build, check", [(coproduct, check_colimit), (product, check_limit)])
def test_binary_universal_property(build, check):
    for a, b in itertools.product(SMALL[:6], repeat=2):
        cone = build(a, b)
        d = Diagram((a, b))
        for t in SMALL:
            assert check(d, cone, t).ok


def test_parallel_pairs():
    for a, b in itertools.product(SMALL[:5], repeat=2):
        homs = hom_set(a, b)
        for f, g in itertools.combinations(homs, 2):
            d = Diagram((a, b), ((0, 1, f), (0, 1, g)))
            for t in SMALL:
                assert check_colimit(d, coequalizer(f, g), t).ok
                assert check_limit(d, equalizer(f, g), t).ok
