"""The category B on finite objects.

An object is a pointed set X together with a surjection N[X] -> M onto a
finite commutative monoid that is injective on X.  Here N[X] is the free
commutative monoid on the non-base points and the base point goes to 0.
Because M is generated by the image of X, a morphism is determined by its
map of pointed sets; the monoid component exists iff the induced assignment on
generators extends additively.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import NotAMorphism, ValidationError
from .finite import FiniteMonoid, cyclic_monoid, commutative_monoids, product_monoid, quotient_monoid

BASE = "*"


@dataclass(frozen=True)
class FiniteBObject:
    carrier: tuple[str, ...]  # carrier[0] is the base point
    monoid: FiniteMonoid
    images: tuple[int, ...]  # image of each carrier point in the monoid; images[0] == 0

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.carrier) != len(self.images) or not self.carrier:
            raise ValidationError("carrier and images must have the same non-zero length")
        if len(set(self.carrier)) != len(self.carrier):
            raise ValidationError("carrier names must be distinct")
        if self.images[0] != 0:
            raise ValidationError("the base point must map to 0")
        if len(set(self.images)) != len(self.images):
            raise ValidationError("carrier does not inject into the monoid")
        if not self.monoid.is_generated_by(self.gens):
            raise ValidationError("carrier images do not generate the monoid")

    @property
    def gens(self) -> tuple[int, ...]:
        return self.images[1:]

    @property
    def size(self) -> int:
        return len(self.carrier)

    def point(self, name: str) -> int:
        return self.carrier.index(name)

    def canonical_key(self):
        """Complete isomorphism invariant: the table relabelled along BFS from the generators."""
        best = None
        for perm in itertools.permutations(self.gens):
            order, _ = self.monoid.spanning_tree(perm)
            pos = {m: i for i, m in enumerate(order)}
            table = tuple(tuple(pos[self.monoid.table[a][b]] for b in order) for a in order)
            key = (self.size, table, tuple(pos[g] for g in perm))
            if best is None or key < best:
                best = key
        return best

    def describe(self) -> str:
        return f"X={{{', '.join(self.carrier)}}}, |M|={self.monoid.size}"


@dataclass(frozen=True)
class BMorphism:
    source: FiniteBObject = field(repr=False)
    target: FiniteBObject = field(repr=False)
    point_map: tuple[int, ...]
    monoid_map: tuple[int, ...]

    def check(self):
        """Re-verify the morphism axioms from scratch."""
        s, t = self.source, self.target
        if self.point_map[0] != 0:
            raise NotAMorphism("base point not preserved")
        if not s.monoid.is_homomorphism(self.monoid_map, t.monoid):
            raise NotAMorphism("monoid component is not additive")
        for x, y in enumerate(self.point_map):
            if self.monoid_map[s.images[x]] != t.images[y]:
                raise NotAMorphism("square does not commute")
        return True

    def compose(self, other: "BMorphism") -> "BMorphism":
        """``other`` after ``self``."""
        return BMorphism(
            self.source,
            other.target,
            tuple(other.point_map[y] for y in self.point_map),
            tuple(other.monoid_map[m] for m in self.monoid_map),
        )


def zero_object() -> FiniteBObject:
    return FiniteBObject((BASE,), FiniteMonoid(((0,),)), (0,))


def identity(b: FiniteBObject) -> BMorphism:
    return BMorphism(b, b, tuple(range(b.size)), tuple(range(b.monoid.size)))


def morphism_from_point_map(src: FiniteBObject, dst: FiniteBObject, point_map) -> BMorphism | None:
    point_map = tuple(point_map)
    if point_map[0] != 0:
        return None
    imgs = tuple(dst.images[y] for y in point_map[1:])
    phi = src.monoid.extend(src.gens, imgs, dst.monoid)
    if phi is None:
        return None
    return BMorphism(src, dst, point_map, phi)


@lru_cache(maxsize=1 << 16)
def hom_set(src: FiniteBObject, dst: FiniteBObject) -> tuple[BMorphism, ...]:
    out = []
    for rest in itertools.product(range(dst.size), repeat=src.size - 1):
        f = morphism_from_point_map(src, dst, (0,) + rest)
        if f is not None:
            out.append(f)
    return tuple(out)


def hom_count(src: FiniteBObject, dst: FiniteBObject) -> int:
    return len(hom_set(src, dst))


def find_isomorphism(a: FiniteBObject, b: FiniteBObject) -> BMorphism | None:
    if a.size != b.size or a.monoid.size != b.monoid.size:
        return None
    for rest in itertools.permutations(range(1, b.size)):
        f = morphism_from_point_map(a, b, (0,) + rest)
        if f is not None and len(set(f.monoid_map)) == b.monoid.size:
            return f
    return None


def is_isomorphic(a: FiniteBObject, b: FiniteBObject) -> bool:
    return find_isomorphism(a, b) is not None


# -- small objects -------------------------------------------------------------


def cyclic_object(index: int, period: int, name: str = "x") -> FiniteBObject:
    """({*, x}, N -> C(index, period)); C(0, p) is Z/p and C(i, 1) truncates N at i."""
    return FiniteBObject((BASE, name), cyclic_monoid(index, period), (0, 1))


@lru_cache(maxsize=None)
def small_objects(max_carrier: int = 3, max_monoid: int = 4) -> tuple[FiniteBObject, ...]:
    """Every object with |X| <= max_carrier and |M| <= max_monoid, one per iso class."""
    seen = {}
    for order in range(1, max_monoid + 1):
        for m in commutative_monoids(order):
            for k in range(0, max_carrier):
                for gens in itertools.combinations(range(1, m.size), k):
                    if not m.is_generated_by(gens):
                        continue
                    carrier = (BASE,) + tuple(f"x{i + 1}" for i in range(k))
                    obj = FiniteBObject(carrier, m, (0,) + gens)
                    seen.setdefault(obj.canonical_key(), obj)
    return tuple(sorted(seen.values(), key=lambda o: (o.size, o.monoid.size, o.canonical_key())))


# -- monoidal structure --------------------------------------------------------


def _word_vectors(m: FiniteMonoid, gens):
    """For each element, the generator-count vector of its spanning-tree word."""
    order, parent = m.spanning_tree(tuple(gens))
    vec = {0: (0,) * len(gens)}
    for x in order[1:]:
        p, s = parent[x]
        v = list(vec[p])
        v[s] += 1
        vec[x] = tuple(v)
    return vec


def _tensor_monoid(m1: FiniteMonoid, gens1, m2: FiniteMonoid, gens2):
    """M1 (x) M2 as a quotient of M1^k2, with gen[i][j] the class of g_i (x) h_j."""
    k2 = len(gens2)
    prod, elems = product_monoid([m1] * k2)
    index = {e: i for i, e in enumerate(elems)}
    vec = _word_vectors(m2, gens2)
    pairs = []
    for x in range(m2.size):
        for s, h in enumerate(gens2):
            lhs = list(vec[x])
            lhs[s] += 1
            rhs = vec[m2.table[x][h]]
            for g in gens1:
                a = tuple(m1.power(g, c) for c in lhs)
                b = tuple(m1.power(g, c) for c in rhs)
                if a != b:
                    pairs.append((index[a], index[b]))
    quo, proj = quotient_monoid(prod, pairs)
    gen = []
    for g in gens1:
        row = []
        for j in range(k2):
            v = [0] * k2
            v[j] = g
            row.append(proj[index[tuple(v)]])
        gen.append(row)
    return quo, gen


@dataclass(frozen=True)
class TensorProduct:
    obj: FiniteBObject
    pair_point: dict  # (x1, x2) non-base indices -> carrier index of the product (0 if sent to 0)
    raw_size: int  # |X1 ^ X2| before taking the image


@lru_cache(maxsize=4096)
def tensor_B(b1: FiniteBObject, b2: FiniteBObject) -> TensorProduct:
    """The monoidal product; the carrier is the image of X1 ^ X2 in M1 (x) M2.

    The smash product need not inject into M1 (x) M2 (already in Z/3 (x) Z/3
    one has 1(x)2 = 2(x)1), so the pair is replaced by its image, which is
    the reflection of (X1 ^ X2, N[X1 ^ X2] -> M1 (x) M2) into B.
    """
    k1, k2 = len(b1.gens), len(b2.gens)
    if b1.monoid.size ** k2 <= b2.monoid.size ** k1:
        quo, gen = _tensor_monoid(b1.monoid, b1.gens, b2.monoid, b2.gens)
    else:
        quo, gt = _tensor_monoid(b2.monoid, b2.gens, b1.monoid, b1.gens)
        gen = [[gt[j][i] for j in range(k2)] for i in range(k1)]
    carrier = [BASE]
    images = [0]
    where = {0: 0}
    pair_point = {}
    for i in range(k1):
        for j in range(k2):
            e = gen[i][j]
            if e not in where:
                where[e] = len(carrier)
                carrier.append(f"{b1.carrier[i + 1]}⊗{b2.carrier[j + 1]}")
                images.append(e)
            pair_point[(i + 1, j + 1)] = where[e]
    obj = FiniteBObject(tuple(carrier), quo, tuple(images))
    return TensorProduct(obj, pair_point, 1 + k1 * k2)


def tensor_point_map(t: TensorProduct, p1: int, p2: int) -> int:
    if p1 == 0 or p2 == 0:
        return 0
    return t.pair_point[(p1, p2)]


def tensor_morphism(f: BMorphism, g: BMorphism) -> BMorphism:
    """f (x) g on point level; the monoid component is recovered by extension."""
    src = tensor_B(f.source, g.source)
    dst = tensor_B(f.target, g.target)
    pm = [0] * src.obj.size
    for (a, b), c in src.pair_point.items():
        pm[c] = tensor_point_map(dst, f.point_map[a], g.point_map[b])
    out = morphism_from_point_map(src.obj, dst.obj, pm)
    if out is None:
        raise NotAMorphism("tensor of morphisms failed to extend")
    return out


def _lcm(values):
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def unit_object(index: int = 1, period: int = 1) -> FiniteBObject:
    """(S^0, N[S^0] -> N) with N truncated to C(index, period)."""
    return cyclic_object(index, period, "1")


def unit_for(*objects: FiniteBObject) -> FiniteBObject:
    """A finite stand-in for (S^0, N) that acts as a unit on the given objects.

    For a finite M, M (x) C(i, p) = M / (i m = (i+p) m); taking i the largest
    index and p the lcm of the periods of all elements makes this M itself.
    """
    idx, pers = 1, []
    for b in objects:
        for a in range(b.monoid.size):
            i, p = b.monoid.cyclic_data(a)
            idx = max(idx, i)
            pers.append(p)
    return unit_object(idx, _lcm(pers))


# -- internal hom --------------------------------------------------------------


def _closure(gens, add, zero):
    """Submonoid generated by ``gens`` inside an ambient monoid given by ``add``."""
    elems = [zero]
    pos = {zero: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = add(x, g)
            if y not in pos:
                pos[y] = len(elems)
                elems.append(y)
        i += 1
    table = tuple(tuple(pos[add(a, b)] for b in elems) for a in elems)
    return FiniteMonoid.trusted(table), elems, pos


@dataclass(frozen=True)
class InternalHom:
    obj: FiniteBObject
    morphisms: tuple  # carrier point i is the morphism morphisms[i]
    index: dict  # point_map -> carrier index


@lru_cache(maxsize=4096)
def internal_hom_B(b1: FiniteBObject, b2: FiniteBObject) -> InternalHom:
    """Carrier Hom_B(b1, b2) (the pullback of Y^X and |N^M| over |N|^X), target the image in N^M."""
    homs = hom_set(b1, b2)
    n = b2.monoid
    zero_fn = tuple(0 for _ in range(b1.monoid.size))

    def add(f, g):
        return tuple(n.table[a][b] for a, b in zip(f, g))

    fns = [h.monoid_map for h in homs]
    mon, elems, pos = _closure(fns, add, zero_fn)
    names = []
    for h in homs:
        parts = [f"{b1.carrier[x]}>{b2.carrier[y]}" for x, y in enumerate(h.point_map) if x and y]
        names.append("[" + ",".join(parts) + "]" if parts else BASE)
    obj = FiniteBObject(tuple(names), mon, tuple(pos[f] for f in fns))
    return InternalHom(obj, tuple(homs), {h.point_map: i for i, h in enumerate(homs)})


def curry(b1: FiniteBObject, b2: FiniteBObject, b3: FiniteBObject, phi: BMorphism) -> BMorphism:
    """The adjoint transpose of ``phi: b1 (x) b2 -> b3`` as a morphism ``b1 -> [b2, b3]``."""
    t = tensor_B(b1, b2)
    ih = internal_hom_B(b2, b3)
    pm = [0]
    for x in range(1, b1.size):
        inner = tuple(phi.point_map[tensor_point_map(t, x, y)] for y in range(b2.size))
        if inner not in ih.index:
            raise NotAMorphism(f"partial map at {b1.carrier[x]} is not a morphism")
        pm.append(ih.index[inner])
    out = morphism_from_point_map(b1, ih.obj, pm)
    if out is None:
        raise NotAMorphism("curried map does not extend additively")
    return out


def uncurry(b1: FiniteBObject, b2: FiniteBObject, b3: FiniteBObject, psi: BMorphism) -> BMorphism:
    t = tensor_B(b1, b2)
    ih = internal_hom_B(b2, b3)
    pm = [0] * t.obj.size
    for (x, y), c in t.pair_point.items():
        pm[c] = ih.morphisms[psi.point_map[x]].point_map[y]
    out = morphism_from_point_map(t.obj, b3, pm)
    if out is None:
        raise NotAMorphism("uncurried map does not extend additively")
    return out


@dataclass
class AdjunctionCheck:
    left: int
    right: int
    bijective: bool

    @property
    def ok(self) -> bool:
        return self.left == self.right and self.bijective


def check_tensor_hom(b1, b2, b3) -> AdjunctionCheck:
    """Compare Hom(b1 (x) b2, b3) with Hom(b1, [b2, b3]) through currying."""
    t = tensor_B(b1, b2)
    ih = internal_hom_B(b2, b3)
    lhs = hom_set(t.obj, b3)
    right = hom_count(b1, ih.obj)
    seen = set()
    ok = True
    for phi in lhs:
        try:
            c = curry(b1, b2, b3, phi)
        except NotAMorphism:
            ok = False
            continue
        if uncurry(b1, b2, b3, c).point_map != phi.point_map:
            ok = False
        seen.add(c.point_map)
    return AdjunctionCheck(len(lhs), right, ok and len(seen) == len(lhs) == right)


# -- limits and colimits -------------------------------------------------------


@dataclass(frozen=True)
class Diagram:
    objects: tuple[FiniteBObject, ...]
    arrows: tuple[tuple[int, int, BMorphism], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        for i, j, f in self.arrows:
            if f.source != self.objects[i] or f.target != self.objects[j]:
                raise ValidationError("arrow endpoints do not match the diagram objects")


@dataclass(frozen=True)
class Cone:
    obj: FiniteBObject
    legs: tuple[BMorphism, ...]


def colimit_B(diagram: Diagram) -> Cone:
    """Colimit: image of the wedge of carriers inside the colimit of the monoids."""
    objs = diagram.objects
    prod, elems = product_monoid([o.monoid for o in objs])
    index = {e: i for i, e in enumerate(elems)}

    def embed(i, m):
        v = [0] * len(objs)
        v[i] = m
        return index[tuple(v)]

    pairs = []
    for i, j, f in diagram.arrows:
        for x in range(1, objs[i].size):
            pairs.append((embed(i, objs[i].images[x]), embed(j, objs[j].images[f.point_map[x]])))
    quo, proj = quotient_monoid(prod, pairs)
    carrier, images, where = [BASE], [0], {0: 0}
    for i, o in enumerate(objs):
        for x in range(1, o.size):
            e = proj[embed(i, o.images[x])]
            if e not in where:
                where[e] = len(carrier)
                carrier.append(o.carrier[x] if len(objs) == 1 else f"{o.carrier[x]}_{i}")
                images.append(e)
    # disambiguate names that clash after collapsing
    if len(set(carrier)) != len(carrier):
        carrier = [BASE] + [f"p{k}" for k in range(1, len(carrier))]
    obj = FiniteBObject(tuple(carrier), quo, tuple(images))
    legs = []
    for i, o in enumerate(objs):
        pm = tuple(where[proj[embed(i, o.images[x])]] for x in range(o.size))
        mm = tuple(proj[embed(i, m)] for m in range(o.monoid.size))
        legs.append(BMorphism(o, obj, pm, mm))
    return Cone(obj, tuple(legs))


def limit_B(diagram: Diagram) -> Cone:
    """Limit: compatible tuples of points, target the submonoid of lim M_i they generate."""
    objs = diagram.objects

    def compatible_points(t):
        return all(f.point_map[t[i]] == t[j] for i, j, f in diagram.arrows)

    tuples = [t for t in itertools.product(*[range(o.size) for o in objs]) if compatible_points(t)]
    base = tuple(0 for _ in objs)
    tuples.remove(base)
    tuples.insert(0, base)
    gens = [tuple(o.images[x] for o, x in zip(objs, t)) for t in tuples[1:]]

    def add(a, b):
        return tuple(o.monoid.table[x][y] for o, x, y in zip(objs, a, b))

    mon, elems, pos = _closure(gens, add, tuple(0 for _ in objs))
    carrier = [BASE] + ["(" + ",".join(o.carrier[x] for o, x in zip(objs, t)) + ")" for t in tuples[1:]]
    obj = FiniteBObject(tuple(carrier), mon, (0,) + tuple(pos[g] for g in gens))
    legs = []
    for i, o in enumerate(objs):
        pm = tuple(t[i] for t in tuples)
        mm = tuple(e[i] for e in elems)
        legs.append(BMorphism(obj, o, pm, mm))
    return Cone(obj, tuple(legs))


def coproduct(a: FiniteBObject, b: FiniteBObject) -> Cone:
    return colimit_B(Diagram((a, b)))


def coequalizer(f: BMorphism, g: BMorphism) -> Cone:
    return colimit_B(Diagram((f.source, f.target), ((0, 1, f), (0, 1, g))))


def product(a: FiniteBObject, b: FiniteBObject) -> Cone:
    return limit_B(Diagram((a, b)))


def equalizer(f: BMorphism, g: BMorphism) -> Cone:
    return limit_B(Diagram((f.source, f.target), ((0, 1, f), (0, 1, g))))


def _families(diagram: Diagram, homs, compatible):
    """All tuples of morphisms (one per object) satisfying ``compatible`` on every arrow."""
    out = []
    for fam in itertools.product(*homs):
        if all(compatible(fam, i, j, f) for i, j, f in diagram.arrows):
            out.append(fam)
    return out


@dataclass
class UniversalCheck:
    test_object: FiniteBObject
    cones: int
    factorizations: int
    bijective: bool

    @property
    def ok(self) -> bool:
        return self.bijective


def check_colimit(diagram: Diagram, colim: Cone, test: FiniteBObject) -> UniversalCheck:
    """Every cocone into ``test`` factors through the colimit exactly once."""
    homs = [hom_set(o, test) for o in diagram.objects]

    def compatible(fam, i, j, f):
        return all(fam[j].point_map[f.point_map[x]] == fam[i].point_map[x] for x in range(f.source.size))

    cocones = {tuple(h.point_map for h in fam) for fam in _families(diagram, homs, compatible)}
    images = []
    for u in hom_set(colim.obj, test):
        images.append(tuple(leg.compose(u).point_map for leg in colim.legs))
    bij = len(set(images)) == len(images) and set(images) == cocones
    return UniversalCheck(test, len(cocones), len(images), bij)


def check_limit(diagram: Diagram, lim: Cone, test: FiniteBObject) -> UniversalCheck:
    """Every cone from ``test`` factors through the limit exactly once."""
    homs = [hom_set(test, o) for o in diagram.objects]

    def compatible(fam, i, j, f):
        return all(f.point_map[fam[i].point_map[x]] == fam[j].point_map[x] for x in range(test.size))

    cones = {tuple(h.point_map for h in fam) for fam in _families(diagram, homs, compatible)}
    images = []
    for u in hom_set(test, lim.obj):
        images.append(tuple(u.compose(leg).point_map for leg in lim.legs))
    bij = len(set(images)) == len(images) and set(images) == cones
    return UniversalCheck(test, len(cones), len(images), bij)


def diagram_suite(sources: Sequence[FiniteBObject]) -> list[tuple[str, Diagram]]:
    """Binary coproducts/products and all (co)equalizers of parallel pairs among ``sources``."""
    out = []
    for i, a in enumerate(sources):
        for b in sources[i:]:
            out.append(("pair", Diagram((a, b))))
    for a in sources:
        for b in sources:
            homs = hom_set(a, b)
            for u, f in enumerate(homs):
                for g in homs[u:]:
                    out.append(("parallel", Diagram((a, b), ((0, 1, f), (0, 1, g)))))
    return out
