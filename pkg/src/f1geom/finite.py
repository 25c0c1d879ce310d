"""Finite commutative monoids and semirings given by explicit tables.

Elements are the integers ``0 .. size-1``; element 0 is always the identity
of the operation the table describes.  The same class serves for additive
monoids (targets of objects of the category B) and for multiplicative pointed
monoids, where an absorbing element is also tracked.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import ValidationError
from .monoid import ZERO, MonoidPresentation


@dataclass(frozen=True)
class FiniteMonoid:
    """Commutative monoid on ``range(size)`` with identity 0."""

    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        t = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", t)
        n = len(t)
        if n == 0 or any(len(r) != n for r in t):
            raise ValidationError("monoid table must be square and non-empty")
        for a in range(n):
            if t[0][a] != a:
                raise ValidationError("element 0 must be the identity")
            for b in range(n):
                if not 0 <= t[a][b] < n:
                    raise ValidationError("table entry out of range")
                if t[a][b] != t[b][a]:
                    raise ValidationError("table is not commutative")
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValidationError("table is not associative")
        if self.names is not None and len(self.names) != n:
            raise ValidationError("names must match the table size")

    @classmethod
    def trusted(cls, table, names=None) -> "FiniteMonoid":
        """Build without re-checking the axioms (for tables produced by constructions)."""
        m = object.__new__(cls)
        object.__setattr__(m, "table", tuple(tuple(r) for r in table))
        object.__setattr__(m, "names", names)
        return m

    @property
    def size(self) -> int:
        return len(self.table)

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def total(self, elems) -> int:
        acc = 0
        for e in elems:
            acc = self.table[acc][e]
        return acc

    def power(self, a: int, k: int) -> int:
        acc = 0
        for _ in range(k):
            acc = self.table[acc][a]
        return acc

    def name(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    @cached_property
    def absorbing(self) -> int | None:
        for z in range(self.size):
            if all(self.table[z][a] == z for a in range(self.size)):
                return z
        return None

    def cyclic_data(self, a: int) -> tuple[int, int]:
        """(index, period) of the cyclic submonoid generated by ``a``."""
        seen = {}
        cur, k = 0, 0
        while cur not in seen:
            seen[cur] = k
            cur = self.table[cur][a]
            k += 1
        return seen[cur], k - seen[cur]

    def generated_by(self, gens) -> list[int]:
        """Elements reachable from 0 by adding generators, in BFS order."""
        return list(self.spanning_tree(tuple(gens))[0])

    @lru_cache(maxsize=None)
    def spanning_tree(self, gens: tuple[int, ...]):
        """BFS from the identity: (order, parent) with parent[m] = (previous element, generator slot)."""
        parent = {0: None}
        order = [0]
        queue = deque([0])
        while queue:
            m = queue.popleft()
            for s, g in enumerate(gens):
                nxt = self.table[m][g]
                if nxt not in parent:
                    parent[nxt] = (m, s)
                    order.append(nxt)
                    queue.append(nxt)
        return tuple(order), parent

    def is_generated_by(self, gens) -> bool:
        return len(self.spanning_tree(tuple(gens))[0]) == self.size

    def extend(self, gens: tuple[int, ...], images, target: "FiniteMonoid"):
        """The homomorphism sending ``gens[s]`` to ``images[s]``, or None if none exists.

        Requires ``gens`` to generate self.  Well-definedness is checked on the
        Cayley relations ``w(m) + g = w(m + g)``, which present the monoid.
        """
        order, parent = self.spanning_tree(gens)
        if len(order) != self.size:
            raise ValidationError("generators do not generate the monoid")
        phi = [None] * self.size
        phi[0] = 0
        for m in order[1:]:
            p, s = parent[m]
            phi[m] = target.table[phi[p]][images[s]]
        for m in order:
            for s, g in enumerate(gens):
                if phi[self.table[m][g]] != target.table[phi[m]][images[s]]:
                    return None
        return tuple(phi)

    def is_homomorphism(self, phi, target: "FiniteMonoid") -> bool:
        if phi[0] != 0:
            return False
        return all(
            phi[self.table[a][b]] == target.table[phi[a]][phi[b]] for a in range(self.size) for b in range(a, self.size)
        )

    def relabel(self, perm) -> "FiniteMonoid":
        """Monoid with element ``perm[a]`` playing the role of ``a`` (perm[0] must be 0)."""
        inv = {p: a for a, p in enumerate(perm)}
        n = self.size
        table = tuple(tuple(perm[self.table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        return FiniteMonoid.trusted(table)

    def canonical_key(self):
        """Isomorphism-invariant key: the least relabelled table."""
        n = self.size
        best = None
        for rest in itertools.permutations(range(1, n)):
            perm = (0,) + rest
            key = self.relabel(perm).table
            if best is None or key < best:
                best = key
        return best

    def presentation(self, names=None, degree_bound=None) -> MonoidPresentation:
        """Multiplicative presentation with the absorbing element sent to ZERO.

        Uses every element other than the identity and the absorbing element
        as a generator and the Cayley relations between them.
        """
        z = self.absorbing
        gens = [a for a in range(1, self.size) if a != z]
        if names is None:
            names = [f"a{a}" for a in gens]
        k = len(gens)
        slot = {a: i for i, a in enumerate(gens)}

        def mono(a):
            if a == z:
                return ZERO
            v = [0] * k
            if a != 0:
                v[slot[a]] = 1
            return tuple(v)

        rels = []
        for a in gens:
            for b in gens:
                if a <= b:
                    prod = tuple(x + y for x, y in zip(mono(a), mono(b)))
                    rels.append((prod, mono(self.table[a][b])))
        return MonoidPresentation(tuple(names), tuple(rels), degree_bound or max(2, self.size))


def cyclic_monoid(index: int, period: int) -> FiniteMonoid:
    """Additive monoid {0, 1, ..., index+period-1} in which index + period = index."""
    n = index + period

    def red(x):
        return x if x < n else index + (x - index) % period

    return FiniteMonoid(tuple(tuple(red(a + b) for b in range(n)) for a in range(n)))


def product_monoid(factors) -> tuple[FiniteMonoid, list[tuple]]:
    """Direct product; returns the monoid and the tuple labelling each element."""
    factors = list(factors)
    elems = list(itertools.product(*[range(f.size) for f in factors]))
    index = {e: i for i, e in enumerate(elems)}
    table = tuple(
        tuple(index[tuple(f.table[x][y] for f, x, y in zip(factors, a, b))] for b in elems) for a in elems
    )
    return FiniteMonoid.trusted(table), elems


def submonoid(parent: FiniteMonoid, gens) -> tuple[FiniteMonoid, list[int]]:
    """Submonoid generated by ``gens``; returns it with the list of parent elements."""
    order = list(parent.spanning_tree(tuple(gens))[0])
    pos = {m: i for i, m in enumerate(order)}
    table = tuple(tuple(pos[parent.table[a][b]] for b in order) for a in order)
    return FiniteMonoid.trusted(table), order


def quotient_monoid(parent: FiniteMonoid, pairs) -> tuple[FiniteMonoid, list[int]]:
    """Quotient by the congruence generated by ``pairs``.

    In a finite commutative monoid the generated congruence is the
    equivalence closure of all translates ``(t+a, t+b)``.  Returns the quotient
    and the class index of every parent element; classes are numbered by
    their least member, so the identity's class is 0.
    """
    n = parent.size
    uf = list(range(n))

    def find(x):
        while uf[x] != x:
            uf[x] = uf[uf[x]]
            x = uf[x]
        return x

    for a, b in pairs:
        for t in range(n):
            ra, rb = find(parent.table[t][a]), find(parent.table[t][b])
            if ra != rb:
                uf[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(x) for x in range(n)})
    cls = {r: i for i, r in enumerate(roots)}
    proj = [cls[find(x)] for x in range(n)]
    table = [[0] * len(roots) for _ in roots]
    for a in range(n):
        for b in range(n):
            table[proj[a]][proj[b]] = proj[parent.table[a][b]]
    return FiniteMonoid.trusted(table), proj


def _candidate_tables(n, absorbing=None):
    """Backtracking over commutative tables with identity 0, pruning on associativity.

    With ``absorbing`` set, that element is forced to absorb everything.
    """
    t = [[None] * n for _ in range(n)]
    for a in range(n):
        t[0][a] = t[a][0] = a
    if absorbing is not None:
        for a in range(n):
            t[absorbing][a] = t[a][absorbing] = absorbing
    cells = [(a, b) for a in range(1, n) for b in range(a, n) if t[a][b] is None]

    def consistent():
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                if ab is None:
                    continue
                for c in range(n):
                    bc = t[b][c]
                    if bc is None:
                        continue
                    x, y = t[ab][c], t[a][bc]
                    if x is not None and y is not None and x != y:
                        return False
        return True

    def rec(i):
        if i == len(cells):
            yield tuple(map(tuple, t))
            return
        a, b = cells[i]
        for v in range(n):
            t[a][b] = t[b][a] = v
            if consistent():
                yield from rec(i + 1)
        t[a][b] = t[b][a] = None

    yield from rec(0)


@lru_cache(maxsize=None)
def commutative_monoids(order: int) -> tuple[FiniteMonoid, ...]:
    """All commutative monoids of the given order, one per isomorphism class."""
    seen = {}
    for t in _candidate_tables(order):
        m = FiniteMonoid(t)
        key = m.canonical_key()
        if key not in seen:
            seen[key] = FiniteMonoid(key)
    return tuple(seen[k] for k in sorted(seen))


# -- semirings -----------------------------------------------------------------


@dataclass(frozen=True)
class FiniteSemiring:
    """Commutative semiring on ``range(size)``; 0 is the additive identity, ``one`` the unit."""

    add: FiniteMonoid
    mul: tuple[tuple[int, ...], ...]
    one: int = 1
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        mul = tuple(tuple(r) for r in self.mul)
        object.__setattr__(self, "mul", mul)
        n = self.add.size
        if self.one == 0 or not 0 <= self.one < n:
            raise ValidationError("need 0 != 1")
        for a in range(n):
            if mul[0][a] != 0 or mul[self.one][a] != a:
                raise ValidationError("0 must absorb and 1 must be the multiplicative unit")
            for b in range(n):
                if mul[a][b] != mul[b][a]:
                    raise ValidationError("multiplication is not commutative")
        s = self.add.table
        for a, b, c in itertools.product(range(n), repeat=3):
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                raise ValidationError("multiplication is not associative")
            if mul[a][s[b][c]] != s[mul[a][b]][mul[a][c]]:
                raise ValidationError("multiplication does not distribute")

    @property
    def size(self) -> int:
        return self.add.size

    def name(self, a: int) -> str:
        if self.names:
            return self.names[a]
        return {0: "0", self.one: "1"}.get(a, f"r{a}")

    def plus(self, a, b):
        return self.add.table[a][b]

    def times(self, a, b):
        return self.mul[a][b]

    def multiplicative_monoid(self) -> FiniteMonoid:
        """(R, *) relabelled so that 1 becomes element 0; returns a monoid whose element i is ``self.mult_order[i]``."""
        return self._mult[0]

    @property
    def mult_order(self) -> tuple[int, ...]:
        return self._mult[1]

    @cached_property
    def _mult(self):
        order = [self.one] + [a for a in range(self.size) if a != self.one]
        pos = {a: i for i, a in enumerate(order)}
        table = tuple(tuple(pos[self.mul[a][b]] for b in order) for a in order)
        return FiniteMonoid(table), tuple(order)

    def canonical_key(self):
        n = self.size
        best = None
        for rest in itertools.permutations(range(1, n)):
            perm = (0,) + rest
            inv = {p: a for a, p in enumerate(perm)}
            add = tuple(tuple(perm[self.add.table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
            mul = tuple(tuple(perm[self.mul[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
            key = (perm[self.one], add, mul)
            if best is None or key < best:
                best = key
        return best


@lru_cache(maxsize=None)
def semirings(max_order: int) -> tuple[FiniteSemiring, ...]:
    """All commutative semirings with 0 != 1 of order 2..max_order, up to isomorphism."""
    out = []
    for n in range(2, max_order + 1):
        seen = {}
        for add in commutative_monoids(n):
            for one in range(1, n):
                rest = [a for a in range(1, n) if a != one]
                pairs = [(a, b) for i, a in enumerate(rest) for b in rest[i:]]
                for values in itertools.product(range(n), repeat=len(pairs)):
                    mul = [[0] * n for _ in range(n)]
                    for a in range(n):
                        mul[one][a] = mul[a][one] = a
                    mul[0] = [0] * n
                    for a in range(n):
                        mul[a][0] = 0
                    for (a, b), v in zip(pairs, values):
                        mul[a][b] = mul[b][a] = v
                    try:
                        r = FiniteSemiring(add, tuple(map(tuple, mul)), one)
                    except ValidationError:
                        continue
                    key = r.canonical_key()
                    if key not in seen:
                        one_k, add_k, mul_k = key
                        seen[key] = FiniteSemiring(FiniteMonoid(add_k), mul_k, one_k)
        out.extend(seen[k] for k in sorted(seen))
    return tuple(out)


def boolean_semiring() -> FiniteSemiring:
    return FiniteSemiring(FiniteMonoid(((0, 1), (1, 1))), ((0, 0), (0, 1)), 1, ("0", "1"))


def prime_field(p: int) -> FiniteSemiring:
    add = FiniteMonoid(tuple(tuple((a + b) % p for b in range(p)) for a in range(p)))
    mul = tuple(tuple((a * b) % p for b in range(p)) for a in range(p))
    return FiniteSemiring(add, mul, 1, tuple(str(a) for a in range(p)))


def pointed_monoids(max_order: int) -> tuple[FiniteMonoid, ...]:
    """Multiplicative commutative monoids with an absorbing element distinct from 1, up to iso."""
    out = []
    for n in range(2, max_order + 1):
        seen = {}
        for t in _candidate_tables(n, absorbing=n - 1):
            key = FiniteMonoid(t).canonical_key()
            if key not in seen:
                seen[key] = FiniteMonoid(key)
        out.extend(seen[k] for k in sorted(seen))
    return tuple(out)


def all_maps_homomorphisms(src: FiniteMonoid, dst: FiniteMonoid, pointed=False) -> list[tuple]:
    """Brute force over every map of underlying sets (an oracle)."""
    out = []
    for phi in itertools.product(range(dst.size), repeat=src.size):
        if pointed and src.absorbing is not None and phi[src.absorbing] != dst.absorbing:
            continue
        if src.is_homomorphism(phi, dst):
            out.append(phi)
    return out
