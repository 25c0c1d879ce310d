import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f1geom.errors import BoundTooSmall, ValidationError
from f1geom.monoid import (
    ZERO,
    AbelianGroupStructure,
    MonoidPresentation,
    PrimeIdeal,
    enumerate_primes,
    free_monoid,
    hom_monoid,
    hom_monoid_by_prime,
    localize,
    mono_mul,
    saturate,
    unit_group,
)
from f1geom.syntax import parse_monomial_relation


def pres(gens, *rels, bound=16):
    return MonoidPresentation(tuple(gens), tuple(parse_monomial_relation(r, gens) for r in rels), bound)


def labels(p):
    return [q.label() for q in enumerate_primes(p)]


def test_affine_line_primes():
    assert labels(free_monoid(["T"])) == ["{}", "{T}"]


def test_free_monoid_primes_are_all_subsets():
    assert len(enumerate_primes(free_monoid(["A", "B", "C"]))) == 8


def test_axes_has_no_empty_prime():
    # S*T = 0 forces every prime to contain S or T
    assert labels(pres(["S", "T"], "S*T = 0")) == ["{S}", "{T}", "{S,T}"]


def test_units_are_never_in_a_prime():
    p = pres(["U", "V", "W"], "U*V = 1")
    assert labels(p) == ["{}", "{W}"]


def test_zero_monoid_rejected():
    with pytest.raises(ValidationError):
        pres(["T"], "T = 0", "T = 1")


def test_degree_bound_enforced():
    with pytest.raises(BoundTooSmall):
        pres(["T"], "T^5 = T", bound=4)


def test_saturation_normal_forms():
    p = pres(["T"], "T^3 = T")
    table = saturate(p)
    assert table.normal_form((5,)) == (1,)
    assert table.normal_form((4,)) == (2,)
    assert table.equal((7,), (1,))


def test_saturation_absorbing():
    table = saturate(pres(["S", "T"], "S*T = 0"))
    assert table.normal_form((3, 2)) is ZERO
    assert table.normal_form((3, 0)) == (3, 0)


def test_unit_groups():
    g = pres(["T", "T_inv"], "T*T_inv = 1")
    assert unit_group(g, PrimeIdeal(())) == AbelianGroupStructure(1, ())
    c = pres(["U"], "U^3 = 1")
    assert unit_group(c, PrimeIdeal(())) == AbelianGroupStructure(0, (3,))
    f = free_monoid(["A", "B"])
    assert unit_group(f, PrimeIdeal(("A",))).rank == 1


def test_localization_adds_inverses():
    loc = localize(free_monoid(["T", "S"]), PrimeIdeal(("S",)))
    assert loc.generators == ("T", "S", "T_inv")
    assert len(enumerate_primes(loc)) == 2


def test_hom_monoid_counts():
    assert len(hom_monoid(free_monoid(["T"]), 4)) == 5
    assert len(hom_monoid(pres(["U"], "U^3 = 1"), 6)) == 3
    buckets = hom_monoid_by_prime(free_monoid(["A", "B"]), 3)
    assert {p.label(): len(v) for p, v in buckets.items()} == {"{}": 9, "{A}": 3, "{B}": 3, "{A,B}": 1}


cyclic_presentations = st.tuples(st.integers(1, 4), st.integers(1, 4)).map(
    lambda ip: MonoidPresentation(("T",), (((ip[0] + ip[1],), (ip[0],)),), 24)
)


@settings(max_examples=40, deadline=None)
@given(cyclic_presentations, st.integers(0, 10), st.integers(0, 10))
def test_normal_form_is_a_congruence(p, a, b):
    table = saturate(p)
    lhs = table.normal_form(mono_mul((a,), (b,)))
    rhs = table.normal_form(mono_mul(table.normal_form((a,)), table.normal_form((b,))))
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(st.permutations(["A", "B", "C"]))
def test_prime_count_invariant_under_renaming(gens):
    p = pres(gens, "A*B = C^2")
    assert len(enumerate_primes(p)) == len(enumerate_primes(pres(["A", "B", "C"], "A*B = C^2")))
