import pytest

from f1geom.blueprint import Blueprint, RingPresentation
from f1geom.errors import CapExceeded, GluingInconsistent, NotTorsionFree, ValidationError
from f1geom.monoid import PrimeIdeal, free_monoid
from f1geom.schemes import (
    AffinePiece,
    F1SchemeWithRelations,
    GluedScheme,
    Gluing,
    P_polynomial,
    P_values,
    Q_count,
    check_Q_le_P,
    is_torsion_free,
    points,
    primitive_root,
    psi1_injectivity,
    psi2_point_sets,
)


def projective_line():
    return GluedScheme(
        (AffinePiece.from_monoid(free_monoid(["T"])), AffinePiece.from_monoid(free_monoid(["S"]))),
        (
            Gluing(
                0, 1, PrimeIdeal(()), PrimeIdeal(()),
                (("T", (0, 1)), ("T_inv", (1, 0))),
                (("S", (0, 1)), ("S_inv", (1, 0))),
            ),
        ),
    )


SUM = GluedScheme.affine(Blueprint.parse(["T1", "T2", "T3", "T4"], ["T1 + T2 = T3 + T4"]))


def test_projective_line_points():
    pts = points(projective_line())
    assert [pt.label() for pt in pts] == ["0:{}", "0:{T}", "1:{S}"]
    assert [pt.unit_structure.rank for pt in pts] == [1, 0, 0]
    assert P_polynomial(projective_line()).polynomial.coefficients == (2, 1)


def test_open_point_seen_from_both_charts():
    generic = points(projective_line())[0]
    assert {c for c, _ in generic.identified_with} == {0, 1}


def test_bad_gluing_rejected():
    with pytest.raises(GluingInconsistent):
        GluedScheme(
            (AffinePiece.from_monoid(free_monoid(["T"])), AffinePiece.from_monoid(free_monoid(["S"]))),
            (
                Gluing(
                    0, 1, PrimeIdeal(()), PrimeIdeal(()),
                    (("T", (1, 0)), ("T_inv", (1, 0))),
                    (("S", (1, 0)), ("S_inv", (0, 1))),
                ),
            ),
        )


def test_P_values_multiplicative_group():
    s = GluedScheme.affine(Blueprint.parse(["T", "T_inv"], [], ["T*T_inv = 1"]))
    assert P_values(s, 7) == {"0:{}": 7}


def test_torsion_raises_with_witness():
    s = GluedScheme.affine(Blueprint.parse(["U"], [], ["U^3 = 1"]))
    with pytest.raises(NotTorsionFree) as info:
        P_polynomial(s)
    assert info.value.witness == 6
    assert not is_torsion_free(s).torsion_free


def test_Q_and_margins():
    q = Q_count(SUM, 2)
    assert q.total == 15
    table = check_Q_le_P(SUM, range(1, 5))
    assert table.ok and not table.failures()
    total = [r for r in table.rows if r.point == "total" and r.n == 3][0]
    assert (total.P, total.Q, total.margin) == (4**4, 28, 256 - 28)


def test_open_point_P_is_n_to_the_fourth():
    assert P_values(SUM, 3)["0:{}"] == 3**4


def test_b_level_polynomials():
    rep = is_torsion_free(SUM)
    assert rep.b_torsion_free and rep.status == "polynomial-on-window"
    assert str(rep.b_level["0:{}"]) == "2n^2 - n"


def test_primitive_root():
    assert primitive_root(5) in (2, 3)
    assert primitive_root(2) == 1


def test_psi_sl2():
    f = F1SchemeWithRelations(GluedScheme.affine(Blueprint.parse(["A", "B", "C", "D"], ["A*D = B*C + 1"])))
    r = psi1_injectivity(f, 2)
    assert (r.source, r.target, r.injective) == (6, 16, True)
    assert psi2_point_sets(f, 3).bijective


def test_psi_with_explicit_ring():
    s = GluedScheme.affine(Blueprint.parse(["T", "T_inv"], [], ["T*T_inv = 1"]))
    ring = RingPresentation(("X", "Y"), (((1, (1, 1)), (-1, (0, 0))),))
    phi = (((((1, (1, 0)),)), (((1, (0, 1)),))),)
    f = F1SchemeWithRelations(s, ring, phi)
    f.check_phi(0)
    assert psi1_injectivity(f, 5).injective
    assert psi2_point_sets(f, 5).bijective


def test_phi_must_respect_relations():
    s = GluedScheme.affine(Blueprint(free_monoid(["T", "S"])))
    ring = RingPresentation(("X", "Y"), (((1, (1, 1)), (-1, (0, 0))),))
    phi = ((((1, (1, 0)),), ((1, (0, 1)),)),)
    with pytest.raises(ValidationError):
        F1SchemeWithRelations(s, ring, phi).check_phi(0)


def test_caps():
    f = F1SchemeWithRelations(SUM)
    with pytest.raises(CapExceeded):
        psi1_injectivity(f, 17)
    with pytest.raises(ValidationError):
        psi1_injectivity(f, 4)
    with pytest.raises(CapExceeded):
        psi2_point_sets(f, 11, point_cap=1000)
