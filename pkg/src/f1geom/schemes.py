"""Schemes as explicit chart data, their points, and the P / Q counts.

A scheme is a list of affine charts (blueprints; sigma(M) for monoidal
charts) and gluings.  A gluing identifies the localization of chart i at a
prime with the localization of chart j at a prime, through mutually inverse
monomial maps on generators.  Points are pairs (chart, prime) modulo the
identifications the gluings induce.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .blueprint import INTEGERS, Blueprint, RingPresentation, base_change_to_ring, hom_B
from .counting import CountPolynomial, NotPolynomial, fit_and_verify, hom_count_abelian
from .errors import CapExceeded, GluingInconsistent, NotTorsionFree, ValidationError
from .monoid import (
    ZERO,
    AbelianGroupStructure,
    MonoidPresentation,
    PrimeIdeal,
    enumerate_primes,
    eval_monomial,
    iter_assignments,
    localize,
    mono_mul,
    saturate,
    unit_group,
)

DEFAULT_Q_CAP = 13
DEFAULT_POINT_CAP = 10**6


@dataclass(frozen=True)
class AffinePiece:
    blueprint: Blueprint
    name: str = ""

    @classmethod
    def from_monoid(cls, monoid: MonoidPresentation, name: str = "", coefficient_ring: str = INTEGERS):
        return cls(Blueprint(monoid, (), coefficient_ring), name)

    @property
    def monoid(self) -> MonoidPresentation:
        return self.blueprint.monoid


@dataclass(frozen=True)
class Gluing:
    """Identify (chart i localized at prime_i) with (chart j localized at prime_j).

    ``forward`` sends each generator of the first localization (including the
    ``*_inv`` generators) to a monomial of the second; ``backward`` goes back.
    """

    i: int
    j: int
    prime_i: PrimeIdeal
    prime_j: PrimeIdeal
    forward: tuple[tuple[str, object], ...]
    backward: tuple[tuple[str, object], ...]

    def forward_map(self) -> dict:
        return dict(self.forward)

    def backward_map(self) -> dict:
        return dict(self.backward)


def _image(m, images, src_gens, dst_rank):
    """The monomial ``m`` (over ``src_gens``) pushed through generator images."""
    if m is ZERO:
        return ZERO
    out = (0,) * dst_rank
    for e, g in zip(m, src_gens):
        if not e:
            continue
        img = images[g]
        if img is ZERO:
            return ZERO
        out = mono_mul(out, tuple(e * x for x in img))
    return out


@dataclass(frozen=True)
class GluedScheme:
    charts: tuple[AffinePiece, ...]
    gluings: tuple[Gluing, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "charts", tuple(self.charts))
        object.__setattr__(self, "gluings", tuple(self.gluings))
        for gl in self.gluings:
            self._check_gluing(gl)

    @classmethod
    def affine(cls, bp: Blueprint, name: str = ""):
        return cls((AffinePiece(bp, name),), (), name)

    def localized(self, chart: int, prime: PrimeIdeal) -> MonoidPresentation:
        return localize(self.charts[chart].monoid, prime)

    def _check_gluing(self, gl: Gluing):
        n = len(self.charts)
        if not (0 <= gl.i < n and 0 <= gl.j < n):
            raise GluingInconsistent("gluing refers to a missing chart")
        li = self.localized(gl.i, gl.prime_i)
        lj = self.localized(gl.j, gl.prime_j)
        fwd, bwd = gl.forward_map(), gl.backward_map()
        if set(fwd) != set(li.generators) or set(bwd) != set(lj.generators):
            raise GluingInconsistent("gluing maps must be defined on every localized generator")
        ti, tj = saturate(li), saturate(lj)
        for src, dst, images, tdst in ((li, lj, fwd, tj), (lj, li, bwd, ti)):
            for g, img in images.items():
                if img is not ZERO and len(img) != dst.rank:
                    raise GluingInconsistent(f"image of {g} has the wrong shape")
            for l, r in src.relations:
                if tdst.normal_form(_image(l, images, src.generators, dst.rank)) != tdst.normal_form(
                    _image(r, images, src.generators, dst.rank)
                ):
                    raise GluingInconsistent(f"gluing does not respect {src.format(l)} = {src.format(r)}")
        # mutually inverse on generators
        for src, images, back, tsrc in ((li, fwd, bwd, ti), (lj, bwd, fwd, tj)):
            dst = lj if src is li else li
            for g in src.generators:
                there = images[g]
                round_trip = _image(there, back, dst.generators, src.rank)
                if tsrc.normal_form(round_trip) != tsrc.normal_form(src.generator(g)):
                    raise GluingInconsistent(f"gluing maps are not inverse on {g}")

    def transport(self, gl: Gluing, prime: PrimeIdeal) -> PrimeIdeal:
        """Image in chart j of a prime of chart i inside the glued open (prime within prime_i)."""
        li = self.localized(gl.i, gl.prime_i)
        bwd = gl.backward_map()
        inside = prime.indices(li)
        out = []
        for g in self.charts[gl.j].monoid.generators:
            img = bwd[g]
            if img is ZERO or any(img[k] for k in inside):
                out.append(g)
        return PrimeIdeal(tuple(out))


@dataclass(frozen=True)
class SchemePoint:
    chart: int
    prime: PrimeIdeal
    unit_structure: AbelianGroupStructure
    identified_with: tuple[tuple[int, PrimeIdeal], ...] = ()

    def label(self) -> str:
        return f"{self.chart}:{self.prime.label()}"


def _within(p: PrimeIdeal, q: PrimeIdeal) -> bool:
    return set(p.generator_subset) <= set(q.generator_subset)


def points(s: GluedScheme) -> list[SchemePoint]:
    """Chart primes modulo gluing, one representative per class (least chart index)."""
    nodes = []
    for c, piece in enumerate(s.charts):
        for p in enumerate_primes(piece.monoid):
            nodes.append((c, p))
    index = {n: k for k, n in enumerate(nodes)}
    parent = list(range(len(nodes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gl in s.gluings:
        for c, p in nodes:
            if c != gl.i or not _within(p, gl.prime_i):
                continue
            q = s.transport(gl, p)
            if (gl.j, q) not in index or not _within(q, gl.prime_j):
                raise GluingInconsistent(f"point {p} of chart {gl.i} has no partner in chart {gl.j}")
            a, b = find(index[(c, p)]), find(index[(gl.j, q)])
            if a != b:
                parent[max(a, b)] = min(a, b)
    classes: dict[int, list] = {}
    for k, n in enumerate(nodes):
        classes.setdefault(find(k), []).append(n)
    out = []
    for root in sorted(classes):
        members = classes[root]
        c, p = members[0]
        u = unit_group(s.charts[c].monoid, p)
        for c2, p2 in members[1:]:
            u2 = unit_group(s.charts[c2].monoid, p2)
            if u2 != u:
                raise GluingInconsistent(f"identified points {c}:{p} and {c2}:{p2} have units {u} vs {u2}")
        out.append(SchemePoint(c, p, u, tuple(members)))
    return out


# -- P and Q ---------------------------------------------------------------------


@dataclass
class PCount:
    values: dict  # n -> total
    per_point: dict  # point label -> {n: count}
    polynomial: CountPolynomial | None = None


def P_values(s: GluedScheme, n: int) -> dict:
    return {pt.label(): hom_count_abelian(pt.unit_structure, n) for pt in points(s)}


def P_polynomial(s: GluedScheme, n_values: Sequence[int] = (1, 2, 3, 4, 5), extra: Sequence[int] = (6, 7, 8)) -> PCount:
    """P(n) = sum over points of #Hom(units at the point, Z/n), with an exact fit."""
    pts = points(s)
    allns = list(n_values) + list(extra)
    per_point = {pt.label(): {n: hom_count_abelian(pt.unit_structure, n) for n in allns} for pt in pts}
    values = {n: sum(v[n] for v in per_point.values()) for n in allns}
    fit = fit_and_verify([(n, values[n]) for n in n_values], [(n, values[n]) for n in extra])
    torsion = [pt.label() for pt in pts if not pt.unit_structure.is_torsion_free]
    if torsion:
        witness = fit.witness if isinstance(fit, NotPolynomial) else None
        raise NotTorsionFree(f"unit groups with torsion at {', '.join(torsion)}", values, witness)
    if isinstance(fit, NotPolynomial):  # cannot happen for torsion-free schemes
        raise NotTorsionFree("P is not polynomial", values, fit.witness)
    return PCount(values, per_point, fit)


@dataclass
class QCount:
    n: int
    per_point: dict  # point label -> count
    total: int


def _local_Q(s: GluedScheme, n: int):
    cache = {}
    for c, piece in enumerate(s.charts):
        buckets = hom_B(piece.blueprint, n)
        cache[c] = {p: len(v) for p, v in buckets.items()}
    return cache


def Q_count(s: GluedScheme, n: int) -> QCount:
    """Q(n) = sum over points of the relation-compatible morphisms with that support."""
    local = _local_Q(s, n)
    per = {}
    for pt in points(s):
        vals = {local[c].get(p, 0) for c, p in pt.identified_with}
        if len(vals) != 1:
            raise GluingInconsistent(f"charts disagree on the count at {pt.label()}: {sorted(vals)}")
        per[pt.label()] = vals.pop()
    return QCount(n, per, sum(per.values()))


@dataclass
class MarginRow:
    n: int
    point: str  # "total" for the sum row
    P: int
    Q: int

    @property
    def margin(self) -> int:
        return self.P - self.Q

    @property
    def ok(self) -> bool:
        return self.Q <= self.P


@dataclass
class MarginTable:
    rows: list[MarginRow]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def failures(self):
        return [r for r in self.rows if not r.ok]


def check_Q_le_P(s: GluedScheme, n_range: Iterable[int]) -> MarginTable:
    rows = []
    for n in n_range:
        p = P_values(s, n)
        q = Q_count(s, n)
        for label in p:
            rows.append(MarginRow(n, label, p[label], q.per_point[label]))
        rows.append(MarginRow(n, "total", sum(p.values()), q.total))
    return MarginTable(rows)


# -- torsion -----------------------------------------------------------------------


@dataclass
class TorsionReport:
    monoidal: dict  # point label -> bool
    b_level: dict  # point label -> CountPolynomial | NotPolynomial
    window: tuple[int, ...]
    extra: tuple[int, ...]

    @property
    def torsion_free(self) -> bool:
        return all(self.monoidal.values())

    @property
    def b_torsion_free(self) -> bool:
        return all(isinstance(v, CountPolynomial) for v in self.b_level.values())

    @property
    def status(self) -> str:
        return "polynomial-on-window" if self.b_torsion_free else "not-polynomial"


def is_torsion_free(s: GluedScheme, window: Sequence[int] = (1, 2, 3, 4), extra: Sequence[int] = (5, 6)) -> TorsionReport:
    pts = points(s)
    mono = {pt.label(): pt.unit_structure.is_torsion_free for pt in pts}
    counts = {n: Q_count(s, n).per_point for n in list(window) + list(extra)}
    blevel = {}
    for pt in pts:
        lab = pt.label()
        blevel[lab] = fit_and_verify([(n, counts[n][lab]) for n in window], [(n, counts[n][lab]) for n in extra])
    return TorsionReport(mono, blevel, tuple(window), tuple(extra))


# -- F1-schemes with relations and the transferring maps -------------------------


Poly = tuple  # ((coefficient, exponent tuple), ...)


def _poly_mul(a: dict, b: dict) -> dict:
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def _poly_pow(a: dict, e: int, k: int) -> dict:
    out = {(0,) * k: 1}
    for _ in range(e):
        out = _poly_mul(out, a)
    return out


def substitute(poly, images: Sequence[dict], k: int) -> dict:
    """Substitute polynomials (dicts exponent -> coefficient in k variables) for each variable."""
    total = {}
    for c, m in poly:
        term = {(0,) * k: c}
        for e, img in zip(m, images):
            if e:
                term = _poly_mul(term, _poly_pow(img, e, k))
        for mm, cc in term.items():
            total[mm] = total.get(mm, 0) + cc
    return {m: c for m, c in total.items() if c}


@dataclass(frozen=True)
class F1SchemeWithRelations:
    """Blueprint charts plus a ring R' and chart-wise ring maps phi: R' -> Z[M]."""

    scheme: GluedScheme
    cc_ring: RingPresentation | None = None
    phi: tuple | None = None  # per chart: tuple of polynomials (one per R' generator)

    def ring(self, chart: int) -> RingPresentation:
        if self.cc_ring is not None:
            return self.cc_ring
        return RingPresentation(self.scheme.charts[chart].monoid.generators, ())

    def phi_images(self, chart: int) -> list[dict]:
        gens = self.scheme.charts[chart].monoid.generators
        k = len(gens)
        if self.phi is None:
            return [{tuple(int(i == j) for i in range(k)): 1} for j in range(k)]
        return [dict((m, c) for c, m in p) for p in self.phi[chart]]

    def check_phi(self, chart: int = 0):
        """phi respects the relations of R' in Z[M] (monomials reduced modulo the chart congruence)."""
        mon = self.scheme.charts[chart].monoid
        table = saturate(mon)
        imgs = self.phi_images(chart)
        for rel in self.ring(chart).relations:
            val = substitute(rel, imgs, mon.rank)
            reduced = {}
            for m, c in val.items():
                nf = table.normal_form(m)
                if nf is ZERO:
                    continue
                reduced[nf] = reduced.get(nf, 0) + c
            if any(reduced.values()):
                raise ValidationError("phi does not respect the relations of R'")
        return True


def _eval_poly_mod(poly: dict, values, q: int) -> int:
    total = 0
    for m, c in poly.items():
        term = c
        for e, v in zip(m, values):
            if e:
                term = term * pow(v, e, q) % q
        total += term
    return total % q


def _require_q(q: int, k: int, cap: int, point_cap: int):
    if q < 2 or any(q % d == 0 for d in range(2, int(q**0.5) + 1)):
        raise ValidationError(f"q = {q} must be prime")
    if q > cap:
        raise CapExceeded(f"q = {q} exceeds the cap {cap}")
    if q**k > point_cap:
        raise CapExceeded(f"{q}^{k} candidate points exceed the cap {point_cap}")


@dataclass
class Psi1Report:
    q: int
    chart: int
    source: int  # #Hom(R, F_q)
    target: int  # #Hom(R', F_q)
    injective: bool
    image: int


def psi1_injectivity(f: F1SchemeWithRelations, q: int, chart: int = 0, cap: int = DEFAULT_Q_CAP, point_cap: int = DEFAULT_POINT_CAP) -> Psi1Report:
    """Ring points of the chart in F_q pushed along phi into the points of R'."""
    bp = f.scheme.charts[chart].blueprint
    k = bp.monoid.rank
    _require_q(q, k, cap, point_cap)
    ring = base_change_to_ring(bp)
    src = ring.points_mod(q)
    imgs = f.phi_images(chart)
    rp = f.ring(chart)
    _require_q(q, len(rp.generators), cap, point_cap)
    tgt = rp.points_mod(q)
    mapped = [tuple(_eval_poly_mod(img, pt, q) for img in imgs) for pt in src]
    tset = set(tgt)
    if not all(m in tset for m in mapped):
        raise ValidationError("phi does not map ring points into points of R'")
    return Psi1Report(q, chart, len(src), len(tgt), len(set(mapped)) == len(mapped), len(set(mapped)))


def assignment_key(a):
    return tuple(-1 if v is None else v for v in a)


def primitive_root(q: int) -> int:
    if q == 2:
        return 1
    order = q - 1
    factors = {d for d in range(2, order + 1) if order % d == 0 and all(d % e for e in range(2, d))}
    for g in range(2, q):
        if all(pow(g, order // f_, q) != 1 for f_ in factors):
            return g
    raise ValueError(f"no primitive root mod {q}")


def _group_ring_value(poly, assignment, n):
    """Evaluate an integer polynomial in Z[Z/n] at a monoid point (None = 0)."""
    acc = {}
    for c, m in poly:
        v = eval_monomial(m, assignment, n)
        if v is None:
            continue
        acc[v] = acc.get(v, 0) + c
    return {k: c for k, c in acc.items() if c}


@dataclass
class Psi2Report:
    q: int
    chart: int
    left: list  # assignments M -> Z/(q-1) u {0} compatible with the blueprint
    right: list  # F_q-points of R' in the image
    matching: dict  # left assignment -> right point
    bijective: bool
    field_points: int  # all F_q-points of the chart ring, for comparison


def psi2_point_sets(f: F1SchemeWithRelations, q: int, chart: int = 0, cap: int = DEFAULT_Q_CAP, point_cap: int = DEFAULT_POINT_CAP) -> Psi2Report:
    """sigma-side points versus image points, with an explicit matching.

    Left: hom_B into Z/(q-1) u {0}.  Right: ring maps R -> F_q that factor
    through a monoid map M -> F_q^x u {0} and a ring map R -> Z[Z/(q-1)]
    (checked on the base-changed relations), pushed to R' along phi.
    """
    bp = f.scheme.charts[chart].blueprint
    k = bp.monoid.rank
    _require_q(q, k, cap, point_cap)
    n = q - 1
    left = sorted((a for bucket in hom_B(bp, n).values() for a in bucket), key=assignment_key)
    w = primitive_root(q)
    ring = base_change_to_ring(bp)
    imgs = f.phi_images(chart)

    def to_field(a):
        return tuple(0 if v is None else pow(w, v, q) for v in a)

    def push(a):
        pt = to_field(a)
        return tuple(_eval_poly_mod(img, pt, q) for img in imgs)

    right = set()
    for a in iter_assignments(k, n):
        if all(not _group_ring_value(rel, a, n) for rel in ring.relations):
            right.add(push(a))
    matching = {a: push(a) for a in left}
    bij = len(set(matching.values())) == len(left) and set(matching.values()) == right
    return Psi2Report(q, chart, left, sorted(right), matching, bij, len(ring.points_mod(q)))
