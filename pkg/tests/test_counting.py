from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f1geom.blueprint import Blueprint
from f1geom.counting import (
    CountPolynomial,
    NotPolynomial,
    TruncatedPowerSeries,
    fit_and_verify,
    format_polynomial,
    hom_count_abelian,
    interpolate,
    pade_guess,
    zeta_from_counts,
    zeta_report,
)
from f1geom.errors import NotTorsionFree
from f1geom.monoid import AbelianGroupStructure, MonoidPresentation
from f1geom.schemes import GluedScheme


def test_hom_count_formula():
    assert hom_count_abelian(AbelianGroupStructure(2, (2, 4)), 6) == 36 * 2 * 2
    with pytest.raises(ValueError):
        hom_count_abelian(AbelianGroupStructure(), 0)


def test_fit_recovers_polynomial():
    fit = fit_and_verify([(n, 2 * n * n - n) for n in (1, 2, 3)], [(n, 2 * n * n - n) for n in (4, 5)])
    assert isinstance(fit, CountPolynomial)
    assert fit.coefficients == (0, -1, 2)
    assert str(fit) == "2n^2 - n"
    assert fit(10) == 190


def test_fit_rejects_with_witness():
    fit = fit_and_verify([(1, 1), (2, 1), (3, 3)], [(4, 1)])
    assert isinstance(fit, NotPolynomial) and not fit and fit.witness == 4


def test_fit_rejects_fractional():
    fit = fit_and_verify([(1, 0), (2, 1), (3, 3)], [])
    assert isinstance(fit, NotPolynomial) and "non-integer" in fit.reason


def test_interpolate_exact():
    assert interpolate([(0, 1), (1, 2), (2, 5)]) == [1, 0, 1]


def test_format_polynomial():
    assert format_polynomial([1, 0, -3]) == "-3n^2 + 1"
    assert format_polynomial([0]) == "0"


series = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=1, max_size=7).map(
    lambda xs: TruncatedPowerSeries((0, *xs))
)


@settings(max_examples=80, deadline=None)
@given(series)
def test_exp_log_round_trip(f):
    assert f.exp().log() == f


@settings(max_examples=80, deadline=None)
@given(series)
def test_inverse(f):
    g = f.exp()
    assert g * g.inverse() == TruncatedPowerSeries.one(g.order)


def test_exp_adds():
    f = TruncatedPowerSeries((0, 1, Fraction(1, 2)))
    g = TruncatedPowerSeries((0, 2, 0))
    assert (f + g).exp() == f.exp() * g.exp()


def test_zeta_from_counts_geometric():
    assert zeta_from_counts([3**n for n in range(1, 6)]).as_ints() == [1, 3, 9, 27, 81, 243]
    # constant counts give 1 / (1 - T)^3
    assert zeta_from_counts([3] * 5).as_ints() == [1, 3, 6, 10, 15, 21]


def test_pade_guess_is_conjectural():
    guess = pade_guess(zeta_from_counts([2**n + 1 for n in range(1, 9)]))
    assert guess.label == "conjectural"
    assert [int(c) for c in guess.denominator] == [1, -3, 2]


def test_zeta_rejects_torsion():
    s = GluedScheme.affine(Blueprint(MonoidPresentation(("U",), (((3,), (0,)),))))
    with pytest.raises(NotTorsionFree):
        zeta_report(s, 2, 4)


def test_zeta_q_mode_is_experimental():
    s = GluedScheme.affine(Blueprint.parse(["T1", "T2", "T3", "T4"], ["T1 + T2 = T3 + T4"]))
    rep = zeta_report(s, 2, 4, mode="Q")
    assert rep.experimental
    # Q(n) = 2n^2 + 3n + 1 evaluated at n = 2^k - 1
    assert rep.counts == [2 * m * m + 3 * m + 1 for m in (1, 3, 7, 15)]
