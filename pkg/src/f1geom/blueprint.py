"""Blueprints: a pointed monoid together with a congruence on its free semiring.

A :class:`Blueprint` is stored as a monoid presentation plus a list of
:class:`PolyRelation` (formal sums asserted equal).  Coefficients live in N or,
for ring-type blueprints, in Z.  Counting always evaluates relations in the
group ring Z[Z/n], with the absorbing element sent to 0.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import NotAMonoidMorphism, ValidationError
from .monoid import (
    ZERO,
    MonoidPresentation,
    PrimeIdeal,
    bucket_by_support,
    degree,
    eval_monomial,
    format_monomial,
    is_monoid_morphism,
    iter_assignments,
    mono_key,
    mono_mul,
    monomials_up_to,
    saturate,
)
from .smith import smith_normal_form
from .syntax import format_side, parse_monomial_relation, parse_poly_relation

NATURALS = "N"
INTEGERS = "Z"


@dataclass(frozen=True, order=True)
class PolyTerm:
    coefficient: int
    monomial: tuple

    def __iter__(self):
        yield self.coefficient
        yield self.monomial


def normalize_side(terms, table=None) -> tuple[PolyTerm, ...]:
    """Combine like terms (after monoid normal form), drop zeros, sort degree-lex."""
    acc: dict = {}
    for c, m in terms:
        if table is not None:
            m = table.normal_form(m)
        if m is ZERO or c == 0:
            continue
        acc[m] = acc.get(m, 0) + c
    return tuple(PolyTerm(c, m) for m, c in sorted(acc.items(), key=lambda kv: mono_key(kv[0])) if c)


@dataclass(frozen=True)
class PolyRelation:
    lhs: tuple[PolyTerm, ...]
    rhs: tuple[PolyTerm, ...]

    def degree(self) -> int:
        return max((degree(t.monomial) for t in self.lhs + self.rhs), default=0)

    def difference(self) -> dict:
        out: dict = {}
        for c, m in self.lhs:
            out[m] = out.get(m, 0) + c
        for c, m in self.rhs:
            out[m] = out.get(m, 0) - c
        return {m: c for m, c in out.items() if c}

    def format(self, generators) -> str:
        return f"{format_side(self.lhs, generators)} = {format_side(self.rhs, generators)}"


@dataclass(frozen=True)
class Blueprint:
    monoid: MonoidPresentation
    relations: tuple[PolyRelation, ...] = ()
    coefficient_ring: str = INTEGERS

    def __post_init__(self):
        if self.coefficient_ring not in (NATURALS, INTEGERS):
            raise ValidationError(f"coefficient ring must be N or Z, got {self.coefficient_ring!r}")
        table = saturate(self.monoid) if self.monoid.relations else None
        rels = []
        for rel in self.relations:
            if isinstance(rel, PolyRelation):
                lhs, rhs = rel.lhs, rel.rhs
            else:
                lhs, rhs = rel
            for c, m in tuple(lhs) + tuple(rhs):
                if self.coefficient_ring == NATURALS and c < 0:
                    raise ValidationError("negative coefficient in an N-blueprint")
                if m is not ZERO and (len(m) != self.monoid.rank or any(e < 0 for e in m)):
                    raise ValidationError(f"malformed monomial {m!r}")
            rels.append(PolyRelation(normalize_side(lhs, table), normalize_side(rhs, table)))
        object.__setattr__(self, "relations", tuple(rels))

    @classmethod
    def parse(cls, generators, relations=(), monoid_relations=(), coefficient_ring=INTEGERS, degree_bound=16):
        gens = tuple(generators)
        mrels = tuple(parse_monomial_relation(r, gens) for r in monoid_relations)
        monoid = MonoidPresentation(gens, mrels, degree_bound)
        prels = tuple(
            parse_poly_relation(r, gens, allow_negative=coefficient_ring == INTEGERS) for r in relations
        )
        return cls(monoid, prels, coefficient_ring)

    @property
    def generators(self):
        return self.monoid.generators

    @cached_property
    def table(self):
        return saturate(self.monoid)

    def format_relations(self) -> list[str]:
        return [r.format(self.generators) for r in self.relations]

    def rename(self, permutation: Sequence[int]) -> "Blueprint":
        """Reorder generators: new generator i is old generator ``permutation[i]``."""
        gens = tuple(self.generators[j] for j in permutation)

        def move(m):
            return ZERO if m is ZERO else tuple(m[j] for j in permutation)

        mon = MonoidPresentation(
            gens, tuple((move(l), move(r)) for l, r in self.monoid.relations), self.monoid.degree_bound
        )
        rels = tuple(
            ([(c, move(m)) for c, m in r.lhs], [(c, move(m)) for c, m in r.rhs]) for r in self.relations
        )
        return Blueprint(mon, rels, self.coefficient_ring)


# -- validation of condition (b) ---------------------------------------------


@dataclass
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)  # pairs of distinct monomials identified in R
    window: int = 0
    height_cap: int = 0
    truncated: bool = False

    @property
    def status(self) -> str:
        if not self.ok:
            return "violation"
        return "ok-within-bounds"


def _default_window(bp: Blueprint) -> int:
    d = max([r.degree() for r in bp.relations] + [bp.monoid.max_relation_degree(), 1])
    return min(bp.monoid.degree_bound, d + 1)


def ring_identifications(bp: Blueprint, window: int | None = None) -> dict:
    """Group monomial normal forms of degree <= window by their image in R tensor Z.

    Uses the Smith form of the matrix of all translates ``u * (lhs - rhs)``
    that stay inside the window: two monomials map to the same element exactly
    when their difference lies in that lattice.  Returns key -> monomials,
    where the all-zero key means "identified with 0".
    """
    window = _default_window(bp) if window is None else window
    table = bp.table
    columns = []
    seen = set()
    for m in monomials_up_to(bp.monoid.rank, window):
        nf = table.normal_form(m)
        if nf is not ZERO and nf not in seen:
            seen.add(nf)
            columns.append(nf)
    col = {m: i for i, m in enumerate(columns)}
    rows = []
    for rel in bp.relations:
        diff = rel.difference()
        d = rel.degree()
        for u in monomials_up_to(bp.monoid.rank, window - d):
            row = [0] * len(columns)
            for m, c in diff.items():
                nf = table.normal_form(mono_mul(u, m))
                if nf is not ZERO:
                    row[col[nf]] += c
            if any(row):
                rows.append(row)
    groups: dict = {}
    if not rows:
        for m in columns:
            groups.setdefault(("free", m), []).append(m)
        return groups
    snf = smith_normal_form(rows)
    inv = snf.invariants
    right = snf.right
    r = len(inv)
    for m in columns:
        y = right[col[m]]
        key = tuple(y[i] % inv[i] for i in range(r)) + tuple(y[r:])
        groups.setdefault(key, []).append(m)
    zero_key = (0,) * len(columns)
    if zero_key in groups:
        groups[zero_key] = [ZERO] + groups[zero_key]
    return groups


def _semiring_reachable(bp, start, target, window, height_cap, limit=20000):
    """Bounded search in the N-congruence on formal sums: is ``target`` reachable from ``start``?

    Returns (reached, truncated).
    """
    table = bp.table
    moves = []
    for rel in bp.relations:
        for a, b in ((rel.lhs, rel.rhs), (rel.rhs, rel.lhs)):
            d = rel.degree()
            for u in monomials_up_to(bp.monoid.rank, window - d):
                src = Counter()
                for c, m in a:
                    nf = table.normal_form(mono_mul(u, m))
                    if nf is not ZERO:
                        src[nf] += c
                dst = Counter()
                for c, m in b:
                    nf = table.normal_form(mono_mul(u, m))
                    if nf is not ZERO:
                        dst[nf] += c
                if src != dst:
                    moves.append((src, dst))

    def freeze(cnt):
        return tuple(sorted(((m, c) for m, c in cnt.items() if c), key=lambda mc: mono_key(mc[0])))

    def thaw(state):
        return Counter(dict(state))

    start_s = freeze(Counter({start: 1}) if start is not ZERO else Counter())
    target_s = freeze(Counter({target: 1}) if target is not ZERO else Counter())
    seen = {start_s}
    frontier = [start_s]
    truncated = False
    while frontier:
        nxt = []
        for s in frontier:
            cur = thaw(s)
            for src, dst in moves:
                if all(cur[m] >= c for m, c in src.items()):
                    new = cur.copy()
                    new.subtract(src)
                    new.update(dst)
                    if sum(new.values()) > height_cap:
                        truncated = True
                        continue
                    f = freeze(new)
                    if f == target_s:
                        return True, truncated
                    if f not in seen:
                        if len(seen) >= limit:
                            truncated = True
                            continue
                        seen.add(f)
                        nxt.append(f)
        frontier = nxt
    return False, truncated


def validate_blueprint(bp: Blueprint, window: int | None = None, height_cap: int = 32) -> ValidationReport:
    """Bounded check that distinct monomials stay distinct in R (condition (b)).

    Condition (a) holds by construction.  Z-blueprints are decided exactly on
    the degree window by lattice membership; for N-blueprints a ring-level
    identification is confirmed by searching the semiring congruence.
    """
    window = _default_window(bp) if window is None else window
    report = ValidationReport(ok=True, window=window, height_cap=height_cap)
    if not bp.relations:
        return report
    groups = ring_identifications(bp, window)
    for members in groups.values():
        if len(members) < 2:
            continue
        anchor = members[0]
        for other in members[1:]:
            if bp.coefficient_ring == INTEGERS:
                report.violations.append((anchor, other))
                continue
            reached, truncated = _semiring_reachable(bp, anchor, other, window, height_cap)
            if reached:
                report.violations.append((anchor, other))
            elif truncated:
                report.truncated = True
    report.ok = not report.violations
    return report


# -- evaluation in Z[Z/n] ------------------------------------------------------


@dataclass(frozen=True)
class GroupRingElement:
    """Element of Z[Z/n]: exponent -> coefficient, zero coefficients dropped."""

    n: int
    coefficients: tuple = ()

    @classmethod
    def from_dict(cls, n, coeffs):
        return cls(n, tuple(sorted((k % n, v) for k, v in _merge(coeffs, n).items() if v)))

    def as_dict(self):
        return dict(self.coefficients)

    def __str__(self):
        if not self.coefficients:
            return "0"
        return " + ".join(f"{c}*g^{e}" for e, c in self.coefficients)


def _merge(coeffs, n):
    out: dict = {}
    for k, v in coeffs.items():
        out[k % n] = out.get(k % n, 0) + v
    return out


def evaluate_poly(assignment, side, n: int) -> GroupRingElement:
    acc: dict = {}
    for c, m in side:
        v = eval_monomial(m, assignment, n)
        if v is None:
            continue
        acc[v] = acc.get(v, 0) + c
    return GroupRingElement.from_dict(n, acc)


def _relations_hold(bp, assignment, n):
    for rel in bp.relations:
        if evaluate_poly(assignment, rel.lhs, n) != evaluate_poly(assignment, rel.rhs, n):
            return False
    return True


def is_compatible(bp: Blueprint, assignment, n: int) -> bool:
    if not is_monoid_morphism(bp.monoid, assignment, n):
        raise NotAMonoidMorphism(f"{assignment} does not respect the monoid relations")
    return _relations_hold(bp, assignment, n)


def hom_B(bp: Blueprint, n: int) -> dict[PrimeIdeal, list[tuple]]:
    """Relation-compatible morphisms into Z/n u {0}, bucketed by support prime."""
    good = []
    for a in iter_assignments(bp.monoid.rank, n):
        if is_monoid_morphism(bp.monoid, a, n) and _relations_hold(bp, a, n):
            good.append(a)
    return bucket_by_support(bp.monoid, good)


def hom_B_counts(bp: Blueprint, n: int) -> dict[PrimeIdeal, int]:
    return {p: len(v) for p, v in hom_B(bp, n).items()}


# -- base change to rings ------------------------------------------------------


@dataclass(frozen=True)
class RingPresentation:
    """Z[generators] / (relations); each relation is a polynomial ``((coef, monomial), ...)`` = 0."""

    generators: tuple[str, ...]
    relations: tuple[tuple, ...] = ()

    def format(self) -> str:
        body = f"Z[{', '.join(self.generators)}]"
        if not self.relations:
            return body
        return body + "/(" + ", ".join(format_side(p, self.generators) for p in self.relations) + ")"

    def evaluate(self, poly, values, modulus=None):
        total = 0
        for c, m in poly:
            term = c
            for e, v in zip(m, values):
                if e:
                    term *= v**e
            total += term
        return total % modulus if modulus else total

    def points_mod(self, q: int) -> list[tuple]:
        """All ring maps to Z/q, as generator values."""
        return [
            v
            for v in itertools.product(range(q), repeat=len(self.generators))
            if all(self.evaluate(p, v, q) == 0 for p in self.relations)
        ]


def _poly_key(poly):
    return tuple((mono_key(m), c) for c, m in poly)


def base_change_to_ring(bp: Blueprint) -> RingPresentation:
    """Z[generators] modulo monoid binomials and ``lhs - rhs`` for each relation."""
    rels = []
    for l, r in bp.monoid.relations:
        diff = {}
        if l is not ZERO:
            diff[l] = diff.get(l, 0) + 1
        if r is not ZERO:
            diff[r] = diff.get(r, 0) - 1
        poly = tuple((c, m) for m, c in sorted(diff.items(), key=lambda kv: mono_key(kv[0])) if c)
        if poly:
            rels.append(poly)
    for rel in bp.relations:
        diff = rel.difference()
        poly = tuple((c, m) for m, c in sorted(diff.items(), key=lambda kv: mono_key(kv[0])))
        if poly:
            rels.append(poly)
    # highest-degree term first, positive leading coefficient
    canon = []
    for p in rels:
        p = tuple(sorted(p, key=lambda cm: (degree(cm[1]), cm[1]), reverse=True))
        if p[0][0] < 0:
            p = tuple((-c, m) for c, m in p)
        canon.append(p)
    return RingPresentation(bp.generators, tuple(canon))


def sigma_blueprint(monoid: MonoidPresentation, coefficient_ring=INTEGERS) -> Blueprint:
    return Blueprint(monoid, (), coefficient_ring)


def format_assignment(pres, assignment) -> dict:
    return {g: ("0" if v is None else f"g^{v}") for g, v in zip(pres.generators, assignment)}


__all__ = [
    "Blueprint",
    "GroupRingElement",
    "PolyRelation",
    "PolyTerm",
    "RingPresentation",
    "ValidationReport",
    "base_change_to_ring",
    "evaluate_poly",
    "hom_B",
    "hom_B_counts",
    "is_compatible",
    "validate_blueprint",
    "format_monomial",
]
