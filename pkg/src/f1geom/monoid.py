"""Finitely presented commutative monoids with an absorbing zero.

Monomials are exponent tuples indexed by the presentation's generators; the
absorbing element is the singleton :data:`ZERO`.  Equality in the monoid is
decided by bounded saturation: a union-find closure over every monomial of
total degree at most ``degree_bound``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Union

from .errors import BoundExceeded, BoundTooSmall, ValidationError
from .smith import smith_normal_form

DEFAULT_DEGREE_BOUND = 16


class _Zero:
    __slots__ = ()

    def __repr__(self):
        return "ZERO"

    def __reduce__(self):
        return (_zero, ())

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("__f1geom_zero__")


def _zero():
    return ZERO


ZERO = _Zero()

Monomial = Union[tuple, _Zero]


def degree(m: Monomial) -> int:
    return 0 if m is ZERO else sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if a is ZERO or b is ZERO:
        return ZERO
    return tuple(x + y for x, y in zip(a, b))


def mono_key(m: Monomial):
    """Degree-lexicographic sort key; ZERO sorts first."""
    if m is ZERO:
        return (-1, ())
    return (sum(m), tuple(-e for e in m))


def unit_monomial(k: int) -> tuple:
    return (0,) * k


def format_monomial(m: Monomial, generators) -> str:
    if m is ZERO:
        return "0"
    parts = []
    for g, e in zip(generators, m):
        if e == 1:
            parts.append(g)
        elif e:
            parts.append(f"{g}^{e}")
    return "*".join(parts) if parts else "1"


def monomials_up_to(k: int, bound: int) -> Iterator[tuple]:
    """All exponent vectors in ``k`` variables of total degree <= bound, degree-lex order."""
    for d in range(bound + 1):
        yield from _monomials_of_degree(k, d)


def _monomials_of_degree(k, d):
    if k == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(k - 1, d - first):
            yield (first,) + rest


@dataclass(frozen=True)
class MonoidPresentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[Monomial, Monomial], ...] = ()
    degree_bound: int = DEFAULT_DEGREE_BOUND

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple((l, r) for l, r in self.relations))
        gens = self.generators
        if len(set(gens)) != len(gens):
            raise ValidationError(f"duplicate generator names in {gens}")
        if self.degree_bound < 1:
            raise ValidationError("degree_bound must be positive")
        k = len(gens)
        for pair in self.relations:
            for m in pair:
                if m is ZERO:
                    continue
                if not isinstance(m, tuple) or len(m) != k or any(e < 0 for e in m):
                    raise ValidationError(f"malformed monomial {m!r} for generators {gens}")
                if sum(m) > self.degree_bound:
                    raise BoundTooSmall(
                        f"relation side {format_monomial(m, gens)} exceeds degree bound {self.degree_bound}"
                    )
        if not any(self.is_prime_subset(s) for s in self._subsets()):
            raise ValidationError("presentation collapses 0 = 1 (the zero monoid is excluded)")

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def one(self) -> tuple:
        return unit_monomial(self.rank)

    def generator(self, name: str) -> tuple:
        i = self.generators.index(name)
        return tuple(int(j == i) for j in range(self.rank))

    def index(self, name: str) -> int:
        return self.generators.index(name)

    def format(self, m: Monomial) -> str:
        return format_monomial(m, self.generators)

    def max_relation_degree(self) -> int:
        return max((degree(m) for pair in self.relations for m in pair), default=0)

    def with_bound(self, bound: int) -> "MonoidPresentation":
        return MonoidPresentation(self.generators, self.relations, bound)

    def _subsets(self):
        idx = range(self.rank)
        for r in range(self.rank + 1):
            for combo in itertools.combinations(idx, r):
                yield frozenset(combo)

    def is_prime_subset(self, subset: frozenset) -> bool:
        """Does the ideal generated by ``subset`` form a prime with exactly these generators?

        The congruence is generated by the relations; a class meets both the
        face (monomials avoiding ``subset``) and the ideal only if some relation
        has one side in each, so checking the relations is exact.
        """
        for l, r in self.relations:
            if self._in_face(l, subset) != self._in_face(r, subset):
                return False
        return True

    @staticmethod
    def _in_face(m: Monomial, subset) -> bool:
        if m is ZERO:
            return False
        return all(m[i] == 0 for i in subset)


@dataclass(frozen=True, order=True)
class PrimeIdeal:
    """A prime of a finitely generated monoid, named by the generators it contains."""

    generator_subset: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generator_subset", tuple(sorted(self.generator_subset)))

    def __contains__(self, name):
        return name in self.generator_subset

    def face(self, pres: MonoidPresentation) -> tuple[str, ...]:
        return tuple(g for g in pres.generators if g not in self.generator_subset)

    def indices(self, pres: MonoidPresentation) -> frozenset:
        return frozenset(pres.index(g) for g in self.generator_subset)

    def label(self) -> str:
        return "{" + ",".join(self.generator_subset) + "}"

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class AbelianGroupStructure:
    """``Z^rank x Z/d_1 x ... x Z/d_m`` with ``d_1 | d_2 | ... | d_m``, every ``d_i >= 2``."""

    rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(self.invariant_factors))
        if self.rank < 0:
            raise ValidationError("negative rank")
        prev = 1
        for d in self.invariant_factors:
            if d < 2 or d % prev:
                raise ValidationError(f"invalid invariant factors {self.invariant_factors}")
            prev = d

    @property
    def is_torsion_free(self) -> bool:
        return not self.invariant_factors

    @property
    def order(self):
        """Group order, or None when infinite."""
        if self.rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " x ".join(parts) if parts else "1"


@dataclass
class SaturationTable:
    presentation: MonoidPresentation
    classes: list[list[Monomial]]
    class_rep: dict  # monomial -> representative
    complete_up_to: int
    _class_of: dict = field(default_factory=dict, repr=False)

    def normal_form(self, m: Monomial) -> Monomial:
        return normal_form(self, m)

    def class_of(self, m: Monomial) -> list[Monomial]:
        return self.classes[self._class_of[self.normal_form(m)]]

    def equal(self, a: Monomial, b: Monomial) -> bool:
        return self.normal_form(a) == self.normal_form(b)

    def multiply(self, a: Monomial, b: Monomial) -> Monomial:
        return self.normal_form(mono_mul(a, b))

    @cached_property
    def normal_forms(self) -> list[Monomial]:
        return [c[0] for c in self.classes]


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # smaller index wins: indices follow degree-lex order, so roots stay least
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@lru_cache(maxsize=256)
def saturate(pres: MonoidPresentation) -> SaturationTable:
    """Congruence classes of every monomial of degree <= ``pres.degree_bound``."""
    k, bound = pres.rank, pres.degree_bound
    for pair in pres.relations:
        for m in pair:
            if degree(m) > bound:
                raise BoundTooSmall(f"relation side {pres.format(m)} exceeds bound {bound}")
    universe: list[Monomial] = [ZERO]
    universe.extend(monomials_up_to(k, bound))
    index = {m: i for i, m in enumerate(universe)}
    uf = _UnionFind(len(universe))
    for l, r in pres.relations:
        uf.union(index[l], index[r])

    # successor table: succ[i][g] = index of g * universe[i], or -1 beyond the window
    units = [tuple(int(j == g) for j in range(k)) for g in range(k)]
    succ = []
    for m in universe:
        if m is ZERO:
            succ.append([0] * k)
        elif sum(m) < bound:
            succ.append([index[mono_mul(m, u)] for u in units])
        else:
            succ.append([-1] * k)

    changed = True
    while changed:
        changed = False
        seen: dict = {}
        for i in range(len(universe)):
            ri = uf.find(i)
            for g in range(k):
                j = succ[i][g]
                if j < 0:
                    continue
                key = (ri, g)
                rj = uf.find(j)
                prev = seen.get(key)
                if prev is None:
                    seen[key] = rj
                elif uf.find(prev) != rj:
                    uf.union(prev, rj)
                    seen[key] = uf.find(rj)
                    changed = True

    groups: dict[int, list[Monomial]] = {}
    for i, m in enumerate(universe):
        groups.setdefault(uf.find(i), []).append(m)
    classes = sorted((sorted(c, key=mono_key) for c in groups.values()), key=lambda c: mono_key(c[0]))
    class_rep = {}
    class_of = {}
    for ci, c in enumerate(classes):
        for m in c:
            class_rep[m] = c[0]
        class_of[c[0]] = ci
    return SaturationTable(pres, classes, class_rep, bound, class_of)


def normal_form(table: SaturationTable, m: Monomial) -> Monomial:
    if m is not ZERO and sum(m) > table.complete_up_to:
        raise BoundExceeded(
            f"degree {sum(m)} of {table.presentation.format(m)} exceeds saturation bound {table.complete_up_to}"
        )
    return table.class_rep[m]


def enumerate_primes(pres: MonoidPresentation) -> list[PrimeIdeal]:
    """All primes, as canonical generator subsets, ordered by size then name."""
    out = []
    for s in pres._subsets():
        if pres.is_prime_subset(s):
            out.append(PrimeIdeal(tuple(pres.generators[i] for i in s)))
    return sorted(out, key=lambda p: (len(p.generator_subset), p.generator_subset))


def inverse_name(g: str) -> str:
    return f"{g}_inv"


def localize(pres: MonoidPresentation, p: PrimeIdeal) -> MonoidPresentation:
    """Adjoin an inverse for every generator outside ``p``."""
    _require_prime(pres, p)
    face = p.face(pres)
    k = pres.rank
    new_gens = pres.generators + tuple(inverse_name(g) for g in face)
    pad = (0,) * len(face)

    def lift(m):
        return ZERO if m is ZERO else tuple(m) + pad

    rels = [(lift(l), lift(r)) for l, r in pres.relations]
    for j, g in enumerate(face):
        m = [0] * (k + len(face))
        m[pres.index(g)] = 1
        m[k + j] = 1
        rels.append((tuple(m), unit_monomial(k + len(face))))
    bound = max(pres.degree_bound, 2)
    return MonoidPresentation(new_gens, tuple(rels), bound)


def _require_prime(pres, p):
    if not pres.is_prime_subset(p.indices(pres)):
        raise ValidationError(f"{p} is not a prime of the presentation")


def unit_group(pres: MonoidPresentation, p: PrimeIdeal) -> AbelianGroupStructure:
    """Units of the localization at ``p``: the group completion of the face."""
    _require_prime(pres, p)
    face_idx = [pres.index(g) for g in p.face(pres)]
    if not face_idx:
        return AbelianGroupStructure(0, ())
    inside = set(face_idx)
    rows = []
    for l, r in pres.relations:
        if l is ZERO or r is ZERO:
            continue
        if all(l[i] == 0 and r[i] == 0 for i in range(pres.rank) if i not in inside):
            rows.append([l[i] - r[i] for i in face_idx])
    rows = [row for row in rows if any(row)]
    if not rows:
        return AbelianGroupStructure(len(face_idx), ())
    snf = smith_normal_form(rows)
    torsion = tuple(d for d in snf.invariants if d > 1)
    return AbelianGroupStructure(len(face_idx) - snf.rank, torsion)


# -- morphisms into the pointed cyclic group Z/n u {0} ------------------------
# An element of Z/n u {0} is an exponent 0..n-1 (of a fixed generator) or None.


def eval_monomial(m: Monomial, assignment, n: int):
    if m is ZERO:
        return None
    total = 0
    for e, v in zip(m, assignment):
        if e:
            if v is None:
                return None
            total += e * v
    return total % n


def is_monoid_morphism(pres: MonoidPresentation, assignment, n: int) -> bool:
    if len(assignment) != pres.rank:
        return False
    for l, r in pres.relations:
        if eval_monomial(l, assignment, n) != eval_monomial(r, assignment, n):
            return False
    return True


def support_prime(pres: MonoidPresentation, assignment) -> PrimeIdeal:
    return PrimeIdeal(tuple(g for g, v in zip(pres.generators, assignment) if v is None))


def iter_assignments(k: int, n: int) -> Iterable[tuple]:
    values = [None] + list(range(n))
    return itertools.product(values, repeat=k)


def hom_monoid(pres: MonoidPresentation, n: int) -> list[tuple]:
    """Every morphism from the monoid into Z/n u {0}, as generator images."""
    if n < 1:
        raise ValueError("n must be positive")
    return [a for a in iter_assignments(pres.rank, n) if is_monoid_morphism(pres, a, n)]


def bucket_by_support(pres: MonoidPresentation, assignments) -> dict[PrimeIdeal, list[tuple]]:
    buckets: dict[PrimeIdeal, list[tuple]] = {}
    for a in assignments:
        p = support_prime(pres, a)
        # the kernel of a morphism to a pointed group is always prime
        assert pres.is_prime_subset(p.indices(pres)), (a, p)
        buckets.setdefault(p, []).append(a)
    return dict(sorted(buckets.items(), key=lambda kv: (len(kv[0].generator_subset), kv[0].generator_subset)))


def hom_monoid_by_prime(pres: MonoidPresentation, n: int) -> dict[PrimeIdeal, list[tuple]]:
    return bucket_by_support(pres, hom_monoid(pres, n))


def free_monoid(names: Iterable[str], degree_bound: int = DEFAULT_DEGREE_BOUND) -> MonoidPresentation:
    return MonoidPresentation(tuple(names), (), degree_bound)
