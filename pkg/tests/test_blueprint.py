import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f1geom.blueprint import (
    NATURALS,
    Blueprint,
    base_change_to_ring,
    hom_B,
    hom_B_counts,
    is_compatible,
    validate_blueprint,
)
from f1geom.errors import NotAMonoidMorphism, ParseError, ValidationError

SUM = Blueprint.parse(["T1", "T2", "T3", "T4"], ["T1 + T2 = T3 + T4"])
SL2 = Blueprint.parse(["T1", "T2", "T3", "T4"], ["T1*T4 = T2*T3 + 1"])


def by_label(counts):
    return {p.label(): c for p, c in counts.items() if c}


def test_sum_relation_buckets():
    for n in range(1, 5):
        c = by_label(hom_B_counts(SUM, n))
        assert c["{}"] == 2 * n * n - n
        assert c["{T1,T2,T3,T4}"] == 1
        assert sorted(v for k, v in c.items() if k.count(",") == 1) == [n] * 4


def test_sl2_totals():
    for n in range(1, 7):
        assert sum(hom_B_counts(SL2, n).values()) == n * (2 * n + 1)


def test_base_change_sl2():
    assert base_change_to_ring(SL2).format() == "Z[T1, T2, T3, T4]/(T1*T4 - T2*T3 - 1)"


def test_validation_reports_horizon():
    ok = validate_blueprint(Blueprint.parse(["T"], ["2*T = 1"]))
    assert ok.ok and ok.status == "ok-within-bounds" and ok.window >= 1
    bad = validate_blueprint(Blueprint.parse(["T"], ["T = 1"]))
    assert not bad.ok and bad.status == "violation" and bad.violations
    nbad = validate_blueprint(Blueprint.parse(["T"], ["T = 1"], coefficient_ring=NATURALS))
    assert not nbad.ok


def test_negative_coefficients_need_Z():
    with pytest.raises((ValidationError, ParseError)):
        Blueprint.parse(["T"], ["T = -1"], coefficient_ring=NATURALS)


def test_incompatible_assignment_raises():
    with pytest.raises(NotAMonoidMorphism):
        is_compatible(Blueprint.parse(["T", "S"], [], ["T*S = 1"]), (1, 1), 3)


def test_two_t_has_no_points():
    bp = Blueprint.parse(["T"], ["2*T = 1"])
    assert all(not v for v in hom_B(bp, 4).values())


@settings(max_examples=20, deadline=None)
@given(st.permutations(range(4)), st.integers(1, 4))
def test_counts_invariant_under_renaming(perm, n):
    before = sorted(hom_B_counts(SUM, n).values())
    after = sorted(hom_B_counts(SUM.rename(perm), n).values())
    assert before == after
