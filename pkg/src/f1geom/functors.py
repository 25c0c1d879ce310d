"""The functors F, G, rho, sigma between monoids, blueprints and semirings.

Hom-sets into finite targets are enumerated two ways so that the adjunction
bijections can be checked by counting: once through the blueprint structure
and once directly in the other category.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass

from .blueprint import NATURALS, Blueprint, PolyRelation, validate_blueprint
from .errors import ValidationError
from .finite import FiniteMonoid, FiniteSemiring, all_maps_homomorphisms
from .monoid import ZERO, MonoidPresentation, degree, enumerate_primes, hom_monoid, mono_key
from .syntax import format_side


@dataclass(frozen=True)
class SemiringPresentation:
    """N[generators] modulo relations between formal sums."""

    generators: tuple[str, ...]
    relations: tuple[tuple, ...]  # (lhs terms, rhs terms)

    def format(self) -> str:
        body = f"N[{', '.join(self.generators)}]"
        if not self.relations:
            return body
        rels = ", ".join(f"{format_side(l, self.generators)} = {format_side(r, self.generators)}" for l, r in self.relations)
        return f"{body}/({rels})"


def functor_F(bp: Blueprint) -> SemiringPresentation:
    """The semiring R of a blueprint, presented over N[generators]."""
    rels = []
    for l, r in bp.monoid.relations:
        rels.append((((1, l),) if l is not ZERO else (), ((1, r),) if r is not ZERO else ()))
    for rel in bp.relations:
        rels.append((tuple((t.coefficient, t.monomial) for t in rel.lhs), tuple((t.coefficient, t.monomial) for t in rel.rhs)))
    return SemiringPresentation(bp.generators, tuple(rels))


def functor_rho(bp: Blueprint) -> MonoidPresentation:
    return bp.monoid


def functor_sigma(monoid: MonoidPresentation, coefficient_ring: str = NATURALS) -> Blueprint:
    return Blueprint(monoid, (), coefficient_ring)


# -- finite blueprints ---------------------------------------------------------


@dataclass(frozen=True)
class FiniteBlueprint:
    """A blueprint whose monoid is a finite table.

    ``semiring`` None means sigma(monoid) (the free semiring on the monoid);
    otherwise the blueprint is G(semiring) and monoid element ``i`` is the
    semiring element ``semiring.mult_order[i]``.
    """

    monoid: FiniteMonoid
    semiring: FiniteSemiring | None = None
    label: str = ""

    def sums_equal(self, lhs, rhs) -> bool:
        """Equality in R of two formal sums given as (coefficient, monoid element) pairs."""
        z = self.monoid.absorbing
        if self.semiring is None:
            a, b = Counter(), Counter()
            for c, m in lhs:
                if m != z:
                    a[m] += c
            for c, m in rhs:
                if m != z:
                    b[m] += c
            return +a == +b
        r = self.semiring
        order = r.mult_order
        return _eval_sum(r, [(c, order[m]) for c, m in lhs]) == _eval_sum(r, [(c, order[m]) for c, m in rhs])


def _eval_sum(r: FiniteSemiring, terms) -> int:
    acc = 0
    for c, x in terms:
        for _ in range(c):
            acc = r.plus(acc, x)
    return acc


def functor_G(r: FiniteSemiring, label: str = "") -> FiniteBlueprint:
    return FiniteBlueprint(r.multiplicative_monoid(), r, label)


def sigma_finite(monoid: FiniteMonoid, label: str = "") -> FiniteBlueprint:
    if monoid.absorbing in (None, 0):
        raise ValidationError("sigma needs a pointed monoid with 0 != 1")
    return FiniteBlueprint(monoid, None, label)


def G_presentation(r: FiniteSemiring) -> Blueprint:
    """G(R) written as a presented blueprint: multiplicative table as monoid relations, addition as relations."""
    order = r.mult_order  # order[0] is 1
    mon = r.multiplicative_monoid()
    pres = mon.presentation(names=[f"r{order[a]}" for a in range(1, mon.size) if a != mon.absorbing])
    gens = [a for a in range(1, mon.size) if a != mon.absorbing]
    slot = {a: i for i, a in enumerate(gens)}
    pos = {x: i for i, x in enumerate(order)}

    def mono(x):
        a = pos[x]
        if a == mon.absorbing:
            return ZERO
        v = [0] * len(gens)
        if a != 0:
            v[slot[a]] = 1
        return tuple(v)

    rels = []
    for x in range(r.size):
        for y in range(x, r.size):
            if x == 0 or y == 0:
                continue
            s = r.plus(x, y)
            lhs = [(1, mono(x)), (1, mono(y))]
            rhs = [(1, mono(s))] if s != 0 else []
            rels.append((lhs, rhs))
    return Blueprint(pres, tuple(rels), NATURALS)


def _eval_mono_in(table: FiniteMonoid, m, assignment):
    if m is ZERO:
        return table.absorbing
    acc = 0
    for e, v in zip(m, assignment):
        for _ in range(e):
            acc = table.table[acc][v]
    return acc


def hom_bluep(bp: Blueprint, target: FiniteBlueprint) -> list[tuple]:
    """Blueprint morphisms bp -> target as generator images in target.monoid."""
    mon = target.monoid
    out = []
    for a in itertools.product(range(mon.size), repeat=bp.monoid.rank):
        if any(_eval_mono_in(mon, l, a) != _eval_mono_in(mon, r, a) for l, r in bp.monoid.relations):
            continue
        ok = True
        for rel in bp.relations:
            lhs = [(t.coefficient, _eval_mono_in(mon, t.monomial, a)) for t in rel.lhs]
            rhs = [(t.coefficient, _eval_mono_in(mon, t.monomial, a)) for t in rel.rhs]
            if not target.sums_equal(lhs, rhs):
                ok = False
                break
        if ok:
            out.append(a)
    return out


def hom_semiring(sp: SemiringPresentation, r: FiniteSemiring) -> list[tuple]:
    """Semiring maps from a presented semiring into R, as generator images in R."""

    def ev_mono(m, a):
        if m is ZERO:
            return 0
        acc = r.one
        for e, v in zip(m, a):
            for _ in range(e):
                acc = r.times(acc, v)
        return acc

    def ev(side, a):
        acc = 0
        for c, m in side:
            if c < 0:
                raise ValidationError("semiring presentations need non-negative coefficients")
            x = ev_mono(m, a)
            for _ in range(c):
                acc = r.plus(acc, x)
        return acc

    return [
        a
        for a in itertools.product(range(r.size), repeat=len(sp.generators))
        if all(ev(l, a) == ev(rr, a) for l, rr in sp.relations)
    ]


@dataclass
class CountComparison:
    label: str
    left: int
    right: int
    bijective: bool = True

    @property
    def ok(self) -> bool:
        return self.left == self.right and self.bijective


def check_F_G(bp: Blueprint, r: FiniteSemiring, label: str = "") -> CountComparison:
    """|Hom_bluep(B, G(R))| against |Hom_SRing(F(B), R)|, matched through generator images."""
    if bp.coefficient_ring != NATURALS:
        raise ValidationError("F lands in semirings; use an N-blueprint")
    g = functor_G(r)
    left = hom_bluep(bp, g)
    right = hom_semiring(functor_F(bp), r)
    order = r.mult_order
    translated = {tuple(order[x] for x in a) for a in left}
    return CountComparison(label, len(left), len(right), translated == set(right))


def check_rho_sigma(a: FiniteMonoid, b: FiniteBlueprint, label: str = "") -> CountComparison:
    """|Hom_bluep(sigma(A), B)| against |Hom_Mon0(A, rho(B))| (brute force over all maps)."""
    pres = a.presentation()
    left = hom_bluep(functor_sigma(pres), b)
    right = all_maps_homomorphisms(a, b.monoid, pointed=True)
    gens = [x for x in range(1, a.size) if x != a.absorbing]
    restricted = {tuple(phi[x] for x in gens) for phi in right}
    return CountComparison(label, len(left), len(right), set(left) == restricted)


# -- suites --------------------------------------------------------------------


def small_N_blueprints() -> list[tuple[str, Blueprint]]:
    """A fixed family of small N-blueprints used as sources in the F -| G suite."""
    P = Blueprint.parse
    return [
        ("sigma<>", P([], [], coefficient_ring=NATURALS)),
        ("sigma<T>", P(["T"], [], coefficient_ring=NATURALS)),
        ("sigma<T|T^2=T>", P(["T"], [], ["T^2 = T"], coefficient_ring=NATURALS)),
        ("sigma<S,T|ST=0>", P(["S", "T"], [], ["S*T = 0"], coefficient_ring=NATURALS)),
        ("sigma<S,T>", P(["S", "T"], [], coefficient_ring=NATURALS)),
        ("<|1+1=1>", P([], ["1 + 1 = 1"], coefficient_ring=NATURALS)),
        ("<|1+1=0>", P([], ["1 + 1 = 0"], coefficient_ring=NATURALS)),
        ("<T|2T=1>", P(["T"], ["2T = 1"], coefficient_ring=NATURALS)),
        ("<T|T+T=T>", P(["T"], ["T + T = T"], coefficient_ring=NATURALS)),
        ("<T|T+1=1>", P(["T"], ["T + 1 = 1"], coefficient_ring=NATURALS)),
        ("<T|T+1=0>", P(["T"], ["T + 1 = 0"], coefficient_ring=NATURALS)),
        ("<S,T|S+T=1>", P(["S", "T"], ["S + T = 1"], coefficient_ring=NATURALS)),
        ("<U|U^2=1,U+1=0>", P(["U"], ["U + 1 = 0"], ["U^2 = 1"], coefficient_ring=NATURALS)),
        ("<T,T1,T2|T=T1+T2>", P(["T", "T1", "T2"], ["T = T1 + T2"], coefficient_ring=NATURALS)),
    ]


def adjunction_suite_F_G(max_order: int = 4) -> list[CountComparison]:
    from .finite import semirings

    out = []
    rings = semirings(max_order)
    for name, bp in small_N_blueprints():
        for i, r in enumerate(rings):
            out.append(check_F_G(bp, r, f"{name} vs R{i}(order {r.size})"))
    return out


def adjunction_suite_rho_sigma(max_source: int = 5, max_target: int = 4, semiring_order: int = 3) -> list[CountComparison]:
    from .finite import pointed_monoids, semirings

    sources = pointed_monoids(max_source)
    targets = [sigma_finite(m, f"sigma(N{i})") for i, m in enumerate(pointed_monoids(max_target))]
    targets += [functor_G(r, f"G(R{i})") for i, r in enumerate(semirings(semiring_order))]
    out = []
    for i, a in enumerate(sources):
        for b in targets:
            out.append(check_rho_sigma(a, b, f"A{i}(order {a.size}) vs {b.label}"))
    return out


def random_rho_sigma_pairs(count: int = 20, seed: int = 0, max_source: int = 5) -> list[CountComparison]:
    from .finite import pointed_monoids, semirings

    rng = random.Random(seed)
    sources = pointed_monoids(max_source)
    targets = [sigma_finite(m) for m in pointed_monoids(4)] + [functor_G(r) for r in semirings(3)]
    out = []
    for k in range(count):
        a = rng.choice(sources)
        b = rng.choice(targets)
        out.append(check_rho_sigma(a, b, f"random pair {k}"))
    return out


# -- presentations: substitution, simplification, coequalizers -----------------


def _substitute(m, var: int, value):
    if m is ZERO:
        return ZERO
    e = m[var]
    if e == 0:
        return m
    if value is ZERO:
        return ZERO
    return tuple(x + e * v for x, v in zip(m, value))


def _drop(m, var):
    return ZERO if m is ZERO else m[:var] + m[var + 1 :]


def eliminate_generators(monoid: MonoidPresentation, relations=(), coefficient_ring=NATURALS):
    """Use relations ``x = m`` (m free of x) to remove generators; returns (monoid, poly relations).

    When both sides are single generators the later one is removed.
    """
    gens = list(monoid.generators)
    mrels = [(l, r) for l, r in monoid.relations]
    prels = []
    for rel in relations:
        l, r = (rel.lhs, rel.rhs) if isinstance(rel, PolyRelation) else rel
        prels.append(([tuple(t) for t in l], [tuple(t) for t in r]))

    def single(m):
        if m is ZERO or sum(m) != 1:
            return None
        return m.index(1)

    while True:
        choice = None
        for k, (l, r) in enumerate(mrels):
            cands = []
            for side, other in ((l, r), (r, l)):
                v = single(side)
                if v is not None and (other is ZERO or other[v] == 0):
                    cands.append((v, other))
            if cands:
                choice = (k, max(cands, key=lambda c: c[0]))
                break
        if choice is None:
            break
        k, (var, value) = choice
        del mrels[k]
        mrels = [(_drop(_substitute(l, var, value), var), _drop(_substitute(r, var, value), var)) for l, r in mrels]
        prels = [
            ([(c, _drop(_substitute(m, var, value), var)) for c, m in l], [(c, _drop(_substitute(m, var, value), var)) for c, m in r])
            for l, r in prels
        ]
        del gens[var]
    # drop trivial and duplicate relations
    seen, clean_m = set(), []
    for l, r in mrels:
        if l == r:
            continue
        key = tuple(sorted((l, r), key=mono_key))
        if key not in seen:
            seen.add(key)
            clean_m.append((l, r))
    bound = max([monoid.degree_bound] + [degree(m) for p in clean_m for m in p])
    mon = MonoidPresentation(tuple(gens), tuple(clean_m), bound)
    bp = Blueprint(mon, tuple(prels), coefficient_ring)
    seen, clean_p = set(), []
    for rel in bp.relations:
        if rel.lhs == rel.rhs:
            continue
        key = tuple(sorted((rel.lhs, rel.rhs)))
        if key not in seen:
            seen.add(key)
            clean_p.append(rel)
    return mon, tuple(clean_p)


def coequalizer_mon0(source: MonoidPresentation, target: MonoidPresentation, f: dict, g: dict) -> MonoidPresentation:
    """Coequalizer in Mon0 of two maps given by generator images (monomials of the target)."""
    rels = list(target.relations)
    for x in source.generators:
        if f[x] != g[x]:
            rels.append((f[x], g[x]))
    mon = MonoidPresentation(target.generators, tuple(rels), target.degree_bound)
    return eliminate_generators(mon)[0]


def coequalizer_bluep(source: MonoidPresentation, target: Blueprint, f: dict, g: dict, max_rounds: int = 16) -> Blueprint:
    """Coequalizer of two blueprint maps sigma-style source -> target.

    Impose f(x) = g(x) in the monoid, then keep adding the monoid identities
    forced by the semiring congruence (distinct monomials identified in R)
    until the result is a blueprint again, simplifying as we go.
    """
    rels = list(target.monoid.relations)
    for x in source.generators:
        if f[x] != g[x]:
            rels.append((f[x], g[x]))
    mon = MonoidPresentation(target.generators, tuple(rels), target.monoid.degree_bound)
    mon, prels = eliminate_generators(mon, target.relations, target.coefficient_ring)
    for _ in range(max_rounds):
        bp = Blueprint(mon, prels, target.coefficient_ring)
        report = validate_blueprint(bp)
        if report.ok:
            return bp
        extra = tuple((a, b) for a, b in report.violations)
        mon = MonoidPresentation(mon.generators, mon.relations + extra, mon.degree_bound)
        mon, prels = eliminate_generators(mon, prels, target.coefficient_ring)
    raise ValidationError("coequalizer did not stabilise")


@dataclass
class RhoCounterexample:
    bluep_coequalizer: Blueprint
    mon0_coequalizer: MonoidPresentation
    rho_generators: int
    mon0_generators: int
    rho_primes: int
    mon0_primes: int
    rho_hom2: int
    mon0_hom2: int

    @property
    def distinct(self) -> bool:
        # both are free up to the distinguishing counts; any differing invariant certifies non-isomorphism
        return (self.rho_primes, self.rho_hom2) != (self.mon0_primes, self.mon0_hom2)


def rho_counterexample() -> RhoCounterexample:
    """rho does not preserve the coequalizer of <X,Y> => <T,T1,T2,S,S1,S2 | T=T1+T2, S=S1+S2>."""
    src = MonoidPresentation(("X", "Y"), ())
    tgt = Blueprint.parse(["T", "T1", "T2", "S", "S1", "S2"], ["T = T1 + T2", "S = S1 + S2"], coefficient_ring=NATURALS)
    idx = {n: i for i, n in enumerate(tgt.generators)}

    def gen(n):
        v = [0] * 6
        v[idx[n]] = 1
        return tuple(v)

    f = {"X": gen("T1"), "Y": gen("T2")}
    g = {"X": gen("S1"), "Y": gen("S2")}
    b = coequalizer_bluep(src, tgt, f, g)
    m = coequalizer_mon0(src, functor_rho(tgt), f, g)
    rho_b = functor_rho(b)
    return RhoCounterexample(
        b,
        m,
        rho_b.rank,
        m.rank,
        len(enumerate_primes(rho_b)),
        len(enumerate_primes(m)),
        len(hom_monoid(rho_b, 2)),
        len(hom_monoid(m, 2)),
    )
