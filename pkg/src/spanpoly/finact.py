"""Finite G-sets, equivariant maps, and the limit/colimit machinery of the base category.

Points of a G-set are 0-based contiguous indices.  Every constructed G-set
(pullback, product, dependent product) is renumbered canonically: element
descriptors are sorted lexicographically, then points are grouped by orbit
(orbits ordered by their least descriptor).  Coproducts instead keep the
tagging order, all left-summand points first, so that injections are plain
shifts.  All values are immutable; every operation is pure.

The dependent-product construction `pi` enumerates sections fiber by fiber
and can explode exponentially, so it runs behind a configurable size guard
(DEFAULT_MAX_POINTS).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import (
    BoundaryMismatch,
    GroupMismatch,
    InvalidStructure,
    ResourceLimit,
)
from .groups import FiniteGroup

DEFAULT_MAX_POINTS = 10 ** 6


# ---------------------------------------------------------------------------
# core value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GSet:
    """A finite set with a group action; action[g][x] is g acting on point x."""

    group: FiniteGroup
    size: int
    action: tuple[tuple[int, ...], ...]

    def act(self, g: int, x: int) -> int:
        return self.action[g][x]

    def points(self) -> range:
        return range(self.size)

    def validate(self) -> None:
        n = self.group.order
        if len(self.action) != n or any(len(row) != self.size for row in self.action):
            raise InvalidStructure("action table has wrong shape")
        e = self.group.identity
        for x in range(self.size):
            if self.action[e][x] != x:
                raise InvalidStructure(f"identity does not fix point {x}")
        for g in range(n):
            if sorted(self.action[g]) != list(range(self.size)):
                raise InvalidStructure(f"element {g} does not act by a permutation")
            for h in range(n):
                gh = self.group.op(g, h)
                for x in range(self.size):
                    if self.action[g][self.action[h][x]] != self.action[gh][x]:
                        raise InvalidStructure(f"action not compatible at (g={g},h={h},x={x})")


@dataclass(frozen=True)
class GMap:
    """An equivariant map, stored as a point table."""

    dom: GSet
    cod: GSet
    table: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.table[x]

    @property
    def group(self) -> FiniteGroup:
        return self.dom.group

    def validate(self) -> None:
        if self.dom.group != self.cod.group:
            raise GroupMismatch("dom and cod live over different groups")
        if len(self.table) != self.dom.size:
            raise InvalidStructure("table length != domain size")
        if any(not (0 <= y < self.cod.size) for y in self.table):
            raise InvalidStructure("table value out of codomain range")
        for g in self.group.elements():
            for x in range(self.dom.size):
                if self.table[self.dom.act(g, x)] != self.cod.act(g, self.table[x]):
                    raise InvalidStructure(f"map not equivariant at (g={g},x={x})")

    def is_identity(self) -> bool:
        return self.dom == self.cod and self.table == tuple(range(self.dom.size))

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return set(self.table) == set(range(self.cod.size))

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()


@dataclass(frozen=True)
class SliceObject:
    """An object of the slice over arrow.cod: a G-set together with a map down."""

    arrow: GMap

    @property
    def base(self) -> GSet:
        return self.arrow.cod

    @property
    def total(self) -> GSet:
        return self.arrow.dom

    @property
    def size(self) -> int:
        return self.arrow.dom.size


def gset(group: FiniteGroup, size: int, action: Sequence[Sequence[int]]) -> GSet:
    x = GSet(group, size, tuple(tuple(int(v) for v in row) for row in action))
    x.validate()
    return x


def gmap(dom: GSet, cod: GSet, table: Sequence[int]) -> GMap:
    f = GMap(dom, cod, tuple(int(v) for v in table))
    f.validate()
    return f


def identity_gmap(x: GSet) -> GMap:
    return GMap(x, x, tuple(range(x.size)))


def compose_gmaps(g: GMap, f: GMap) -> GMap:
    """g after f."""
    if f.cod != g.dom:
        raise BoundaryMismatch("compose_gmaps: codomain of f is not domain of g")
    return GMap(f.dom, g.cod, tuple(g.table[y] for y in f.table))


def slice_obj(arrow: GMap) -> SliceObject:
    arrow.validate()
    return SliceObject(arrow)


def slice_identity(u: GSet) -> SliceObject:
    return SliceObject(identity_gmap(u))


# ---------------------------------------------------------------------------
# basic G-sets
# ---------------------------------------------------------------------------

def terminal_gset(group: FiniteGroup) -> GSet:
    return GSet(group, 1, tuple((0,) for _ in group.elements()))

def initial_gset(group: FiniteGroup) -> GSet:
    return GSet(group, 0, tuple(() for _ in group.elements()))

def regular_gset(group: FiniteGroup) -> GSet:
    return GSet(group, group.order,
                tuple(tuple(group.op(g, x) for x in group.elements())
                      for g in group.elements()))

def coset_gset(group: FiniteGroup, subgroup: Iterable[int]) -> GSet:
    """The transitive G-set of left cosets gH, cosets ordered by least element."""
    h = frozenset(subgroup)
    cosets = []
    seen: set[frozenset[int]] = set()
    for g in group.elements():
        c = frozenset(group.op(g, a) for a in h)
        if c not in seen:
            seen.add(c)
            cosets.append(c)
    cosets.sort(key=min)
    index = {c: i for i, c in enumerate(cosets)}
    action = tuple(tuple(index[frozenset(group.op(g, a) for a in c)] for c in cosets)
                   for g in group.elements())
    return GSet(group, len(cosets), action)

def unique_to_terminal(x: GSet) -> GMap:
    return GMap(x, terminal_gset(x.group), (0,) * x.size)

def unique_from_initial(x: GSet) -> GMap:
    return GMap(initial_gset(x.group), x, ())


# ---------------------------------------------------------------------------
# orbits, stabilizers, canonical forms
# ---------------------------------------------------------------------------

def orbits(x: GSet) -> tuple[tuple[int, ...], ...]:
    seen = [False] * x.size
    out = []
    for p in range(x.size):
        if seen[p]:
            continue
        orb = sorted({x.act(g, p) for g in x.group.elements()})
        for q in orb:
            seen[q] = True
        out.append(tuple(orb))
    return tuple(out)


def stabilizer(x: GSet, p: int) -> tuple[int, ...]:
    return tuple(g for g in x.group.elements() if x.act(g, p) == p)


def orbit_labels(x: GSet, legs: Sequence[GMap] = ()) -> tuple[tuple, ...]:
    """One label per orbit: min over its points of (stabilizer, leg values).

    Two G-sets carrying the same legs are isomorphic compatibly with the legs
    iff their label multisets agree, which makes this the canonical form used
    for iso pre-screening of G-sets, slices, and spans.
    """
    out = []
    for orb in orbits(x):
        out.append(min((stabilizer(x, p), tuple(leg.table[p] for leg in legs))
                       for p in orb))
    return tuple(sorted(out))


def canonical_form(x: GSet) -> str:
    labs = ";".join(f"stab{list(s)}" for s, _ in orbit_labels(x))
    return f"{x.group.name}[{x.size}]{{{labs}}}"


def slice_canonical_form(a: SliceObject) -> str:
    labs = ";".join(f"stab{list(s)}@{v[0]}" for s, v in orbit_labels(a.total, (a.arrow,)))
    return f"{a.base.group.name}[{a.size}/{a.base.size}]{{{labs}}}"


def transporters(x: GSet, orb: Sequence[int]) -> dict[int, int]:
    """For each point of the orbit, one group element moving the least point there."""
    rep = orb[0]
    out = {rep: x.group.identity}
    frontier = [rep]
    while frontier:
        nxt = []
        for p in frontier:
            for g in x.group.elements():
                q = x.act(g, p)
                if q not in out:
                    out[q] = x.group.op(g, out[p])
                    nxt.append(q)
        frontier = nxt
    return out


# ---------------------------------------------------------------------------
# equivariant map / iso search
# ---------------------------------------------------------------------------

def equivariant_maps(x: GSet, y: GSet,
                     constraint: Optional[Callable[[int, int], bool]] = None,
                     limit: Optional[int] = None) -> Iterator[GMap]:
    """All equivariant maps x -> y, optionally point-constrained.

    A map is fixed by choosing, for each orbit representative p, an image
    with stabilizer containing stab(p); the orbit choices are independent.
    The constraint must itself be equivariant-compatible; it is re-checked
    on whole orbits for safety.
    """
    if x.group != y.group:
        raise GroupMismatch("equivariant_maps over different groups")
    orbs = orbits(x)
    trans = [transporters(x, o) for o in orbs]
    percand = []
    for o in orbs:
        rep = o[0]
        st = set(stabilizer(x, rep))
        cands = [q for q in y.points()
                 if st <= set(stabilizer(y, q))
                 and (constraint is None or constraint(rep, q))]
        percand.append(cands)
    count = 1
    for c in percand:
        count *= len(c)
        if count == 0:
            return
    if limit is not None and count > limit:
        raise ResourceLimit(f"{count} equivariant maps exceed limit {limit}")
    for choice in itertools.product(*percand):
        table = [0] * x.size
        ok = True
        for o, t, q0 in zip(orbs, trans, choice):
            for p in o:
                q = y.act(t[p], q0)
                if constraint is not None and not constraint(p, q):
                    ok = False
                    break
                table[p] = q
            if not ok:
                break
        if ok:
            yield GMap(x, y, tuple(table))


def count_equivariant_maps(x: GSet, y: GSet,
                           constraint: Optional[Callable[[int, int], bool]] = None) -> int:
    total = 1
    for o in orbits(x):
        rep = o[0]
        st = set(stabilizer(x, rep))
        n = sum(1 for q in y.points()
                if st <= set(stabilizer(y, q))
                and (constraint is None or constraint(rep, q)))
        total *= n
    return total


def equivariant_isos(x: GSet, y: GSet,
                     constraint: Optional[Callable[[int, int], bool]] = None) -> Iterator[GMap]:
    """All equivariant bijections x -> y compatible with the constraint.

    Backtracks over orbit-to-orbit assignments; within an orbit the map is
    forced by the image of the representative (stabilizers must coincide).
    """
    if x.group != y.group:
        raise GroupMismatch("equivariant_isos over different groups")
    if x.size != y.size:
        return
    orbs = orbits(x)
    trans = [transporters(x, o) for o in orbs]

    def extend(i: int, used: set[int], table: list[int]) -> Iterator[GMap]:
        if i == len(orbs):
            yield GMap(x, y, tuple(table))
            return
        o, t = orbs[i], trans[i]
        rep = o[0]
        st = stabilizer(x, rep)
        for q0 in y.points():
            if q0 in used or stabilizer(y, q0) != st:
                continue
            if constraint is not None and not constraint(rep, q0):
                continue
            img = []
            ok = True
            for p in o:
                q = y.act(t[p], q0)
                if q in used or (constraint is not None and not constraint(p, q)):
                    ok = False
                    break
                img.append(q)
            if not ok or len(set(img)) != len(img):
                continue
            for p, q in zip(o, img):
                table[p] = q
            yield from extend(i + 1, used | set(img), table)
        return

    yield from extend(0, set(), [0] * x.size)


def iso_gsets(x: GSet, y: GSet) -> Optional[GMap]:
    """An equivariant bijection, or None.  Canonical forms pre-screen the search."""
    if orbit_labels(x) != orbit_labels(y):
        return None
    return next(equivariant_isos(x, y), None)


def slice_homs(a: SliceObject, b: SliceObject) -> Iterator[GMap]:
    """Maps between slice objects over the same base."""
    if a.base != b.base:
        raise BoundaryMismatch("slice_homs: different bases")
    fa, fb = a.arrow.table, b.arrow.table
    return equivariant_maps(a.total, b.total, lambda p, q: fb[q] == fa[p])


def slice_isos(a: SliceObject, b: SliceObject) -> Iterator[GMap]:
    if a.base != b.base:
        raise BoundaryMismatch("slice_isos: different bases")
    fa, fb = a.arrow.table, b.arrow.table
    return equivariant_isos(a.total, b.total, lambda p, q: fb[q] == fa[p])


def slice_iso(a: SliceObject, b: SliceObject) -> Optional[GMap]:
    if orbit_labels(a.total, (a.arrow,)) != orbit_labels(b.total, (b.arrow,)):
        return None
    return next(slice_isos(a, b), None)


def relabel_gset(x: GSet, perm: Sequence[int]) -> tuple[GSet, GMap]:
    """An isomorphic copy with point p renamed perm[p]; returns (copy, iso x->copy)."""
    if sorted(perm) != list(range(x.size)):
        raise InvalidStructure("relabel_gset: not a permutation")
    inv = [0] * x.size
    for p, q in enumerate(perm):
        inv[q] = p
    action = tuple(tuple(perm[x.act(g, inv[q])] for q in range(x.size))
                   for g in x.group.elements())
    y = GSet(x.group, x.size, action)
    return y, GMap(x, y, tuple(perm))


# ---------------------------------------------------------------------------
# canonical construction helper
# ---------------------------------------------------------------------------

class Construction:
    """A constructed G-set remembering the descriptor of each point."""

    __slots__ = ("gset", "elems", "_index")

    def __init__(self, gset_: GSet, elems: tuple):
        self.gset = gset_
        self.elems = elems
        self._index = {e: i for i, e in enumerate(elems)}

    def index_of(self, e) -> int:
        return self._index[e]


def build_gset(group: FiniteGroup, elems: Iterable, act_elem: Callable,
               orbit_sort: bool = True,
               max_points: Optional[int] = None) -> Construction:
    """Materialize a G-set from descriptors and an action on descriptors."""
    limit = DEFAULT_MAX_POINTS if max_points is None else max_points
    ordered = sorted(set(elems))
    if len(ordered) > limit:
        raise ResourceLimit(f"constructed G-set would have {len(ordered)} > {limit} points")
    pos = {e: i for i, e in enumerate(ordered)}
    n = len(ordered)
    raw = [[pos[act_elem(g, e)] for e in ordered] for g in group.elements()]
    if orbit_sort:
        seen = [False] * n
        order: list[int] = []
        for i in range(n):
            if seen[i]:
                continue
            orb = sorted({raw[g][i] for g in group.elements()})
            for j in orb:
                seen[j] = True
            order.extend(orb)
    else:
        order = list(range(n))
    newpos = [0] * n
    for new, old in enumerate(order):
        newpos[old] = new
    action = tuple(tuple(newpos[raw[g][old]] for old in order)
                   for g in group.elements())
    out = GSet(group, n, action)
    return Construction(out, tuple(ordered[old] for old in order))


# ---------------------------------------------------------------------------
# pullbacks
# ---------------------------------------------------------------------------

class Pullback(Construction):
    """Canonical pullback of a cospan; descriptors are pairs (a, b)."""

    __slots__ = ("f", "g", "proj1", "proj2")

    def __init__(self, f: GMap, g: GMap, max_points: Optional[int] = None):
        if f.group != g.group:
            raise GroupMismatch("pullback over different groups")
        if f.cod != g.cod:
            raise BoundaryMismatch("pullback needs a common codomain")
        xa, xb = f.dom, g.dom
        elems = [(a, b) for a in xa.points() for b in xb.points()
                 if f.table[a] == g.table[b]]
        built = build_gset(f.group, elems,
                           lambda h, e: (xa.act(h, e[0]), xb.act(h, e[1])),
                           max_points=max_points)
        self.gset = built.gset
        self.elems = built.elems
        self._index = built._index
        self.f = f
        self.g = g
        self.proj1 = GMap(self.gset, xa, tuple(e[0] for e in self.elems))
        self.proj2 = GMap(self.gset, xb, tuple(e[1] for e in self.elems))

    @property
    def apex(self) -> GSet:
        return self.gset

    def mediator(self, q1: GMap, q2: GMap) -> GMap:
        """The unique map into the apex from a commuting cone (q1, q2)."""
        if q1.dom != q2.dom:
            raise BoundaryMismatch("mediator cone legs have different domains")
        if compose_gmaps(self.f, q1).table != compose_gmaps(self.g, q2).table:
            raise BoundaryMismatch("mediator cone does not commute")
        return GMap(q1.dom, self.gset,
                    tuple(self.index_of((q1.table[t], q2.table[t]))
                          for t in range(q1.dom.size)))


def pullback(f: GMap, g: GMap, max_points: Optional[int] = None) -> Pullback:
    return Pullback(f, g, max_points=max_points)


def is_pullback_square(f: GMap, g: GMap, p1: GMap, p2: GMap) -> bool:
    """Whether (p1, p2) exhibit their domain as the pullback of f against g."""
    if p1.dom != p2.dom or p1.cod != f.dom or p2.cod != g.dom:
        return False
    if compose_gmaps(f, p1).table != compose_gmaps(g, p2).table:
        return False
    pairs = [(p1.table[x], p2.table[x]) for x in p1.dom.points()]
    if len(set(pairs)) != len(pairs):
        return False
    want = {(a, b) for a in f.dom.points() for b in g.dom.points()
            if f.table[a] == g.table[b]}
    return set(pairs) == want


# ---------------------------------------------------------------------------
# coproducts and products
# ---------------------------------------------------------------------------

class CoproductDiagram:
    """Binary coproduct with tagging order: all left points first."""

    __slots__ = ("left", "right", "sum", "inj1", "inj2")

    def __init__(self, x: GSet, y: GSet):
        if x.group != y.group:
            raise GroupMismatch("coproduct over different groups")
        nx = x.size
        action = tuple(tuple(list(x.action[g]) + [nx + q for q in y.action[g]])
                       for g in x.group.elements())
        self.left, self.right = x, y
        self.sum = GSet(x.group, nx + y.size, action)
        self.inj1 = GMap(x, self.sum, tuple(range(nx)))
        self.inj2 = GMap(y, self.sum, tuple(range(nx, nx + y.size)))

    def cotuple(self, f: GMap, g: GMap) -> GMap:
        if f.cod != g.cod:
            raise BoundaryMismatch("cotuple legs need a common codomain")
        if f.dom != self.left or g.dom != self.right:
            raise BoundaryMismatch("cotuple legs do not match the summands")
        return GMap(self.sum, f.cod, f.table + g.table)


def coproduct(x: GSet, y: GSet) -> CoproductDiagram:
    return CoproductDiagram(x, y)


def sum_gmap(cop_dom: CoproductDiagram, cop_cod: CoproductDiagram,
             f: GMap, g: GMap) -> GMap:
    """f + g between constructed coproducts."""
    if f.dom != cop_dom.left or g.dom != cop_dom.right:
        raise BoundaryMismatch("sum_gmap domains do not match")
    if f.cod != cop_cod.left or g.cod != cop_cod.right:
        raise BoundaryMismatch("sum_gmap codomains do not match")
    table = tuple(cop_cod.inj1.table[v] for v in f.table) + \
        tuple(cop_cod.inj2.table[v] for v in g.table)
    return GMap(cop_dom.sum, cop_cod.sum, table)


def codiagonal(x: GSet) -> tuple[CoproductDiagram, GMap]:
    cop = coproduct(x, x)
    return cop, cop.cotuple(identity_gmap(x), identity_gmap(x))


class ProductDiagram(Construction):
    """Binary product; descriptors are pairs, canonically renumbered."""

    __slots__ = ("left", "right", "proj1", "proj2")

    def __init__(self, x: GSet, y: GSet, max_points: Optional[int] = None):
        if x.group != y.group:
            raise GroupMismatch("product over different groups")
        built = build_gset(x.group,
                           ((a, b) for a in x.points() for b in y.points()),
                           lambda g, e: (x.act(g, e[0]), y.act(g, e[1])),
                           max_points=max_points)
        self.gset = built.gset
        self.elems = built.elems
        self._index = built._index
        self.left, self.right = x, y
        self.proj1 = GMap(self.gset, x, tuple(e[0] for e in self.elems))
        self.proj2 = GMap(self.gset, y, tuple(e[1] for e in self.elems))

    @property
    def prod(self) -> GSet:
        return self.gset

    def pairing(self, f: GMap, g: GMap) -> GMap:
        if f.dom != g.dom:
            raise BoundaryMismatch("pairing legs have different domains")
        if f.cod != self.left or g.cod != self.right:
            raise BoundaryMismatch("pairing legs do not match the factors")
        return GMap(f.dom, self.gset,
                    tuple(self.index_of((f.table[t], g.table[t]))
                          for t in range(f.dom.size)))


def product(x: GSet, y: GSet, max_points: Optional[int] = None) -> ProductDiagram:
    return ProductDiagram(x, y, max_points=max_points)


def product_gmap(prod_dom: ProductDiagram, prod_cod: ProductDiagram,
                 f: GMap, g: GMap) -> GMap:
    """f x g between constructed products."""
    table = tuple(prod_cod.index_of((f.table[e[0]], g.table[e[1]]))
                  for e in prod_dom.elems)
    return GMap(prod_dom.prod, prod_cod.prod, table)


# ---------------------------------------------------------------------------
# slice adjoints: Sigma -| Delta -| Pi
# ---------------------------------------------------------------------------

def sigma(u: GMap, a: SliceObject) -> SliceObject:
    """Left adjoint to pullback: postcompose with u."""
    if a.base != u.dom:
        raise BoundaryMismatch("sigma: slice is not over the domain of u")
    return SliceObject(compose_gmaps(u, a.arrow))


class DeltaData:
    """Pullback of a slice along u, keeping the top comparison map."""

    __slots__ = ("pb", "slice", "top")

    def __init__(self, u: GMap, b: SliceObject, max_points: Optional[int] = None):
        if b.base != u.cod:
            raise BoundaryMismatch("delta: slice is not over the codomain of u")
        self.pb = pullback(b.arrow, u, max_points=max_points)
        self.slice = SliceObject(self.pb.proj2)
        self.top = self.pb.proj1


def delta_data(u: GMap, b: SliceObject, max_points: Optional[int] = None) -> DeltaData:
    return DeltaData(u, b, max_points=max_points)


def delta(u: GMap, b: SliceObject, max_points: Optional[int] = None) -> SliceObject:
    return DeltaData(u, b, max_points=max_points).slice


class PiData:
    """Dependent product of a slice a over dom(u) along u: S -> U.

    The fiber over x in U is the set of sections s of a over the fiber
    u^-1(x); descriptors are (x, values), values listed against the
    ascending order of u^-1(x).  The action conjugates sections.
    """

    __slots__ = ("u", "a", "con", "slice", "fibers")

    def __init__(self, u: GMap, a: SliceObject, max_points: Optional[int] = None):
        if a.base != u.dom:
            raise BoundaryMismatch("pi: slice is not over the domain of u")
        s, uu = u.dom, u.cod
        limit = DEFAULT_MAX_POINTS if max_points is None else max_points
        fibers = [tuple(p for p in s.points() if u.table[p] == x) for x in uu.points()]
        pre = [tuple(q for q in a.total.points() if a.arrow.table[q] == p)
               for p in s.points()]
        total = 0
        for x in uu.points():
            cnt = 1
            for p in fibers[x]:
                cnt *= len(pre[p])
            total += cnt
            if total > limit:
                raise ResourceLimit(f"dependent product exceeds {limit} sections")
        elems = []
        for x in uu.points():
            for sec in itertools.product(*(pre[p] for p in fibers[x])):
                elems.append((x, sec))

        def act_sec(g: int, e):
            x, sec = e
            x2 = uu.act(g, x)
            ginv = s.group.inv(g)
            vals = []
            for q in fibers[x2]:
                p = s.act(ginv, q)
                vals.append(a.total.act(g, sec[fibers[x].index(p)]))
            return (x2, tuple(vals))

        self.con = build_gset(s.group, elems, act_sec, max_points=max_points)
        self.u, self.a, self.fibers = u, a, fibers
        self.slice = SliceObject(GMap(self.con.gset, uu,
                                      tuple(e[0] for e in self.con.elems)))

    def section_value(self, idx: int, p: int) -> int:
        """Value of the section numbered idx at fiber point p."""
        x, sec = self.con.elems[idx]
        return sec[self.fibers[x].index(p)]

    def index_of_section(self, x: int, values: tuple[int, ...]) -> int:
        return self.con.index_of((x, values))


def pi(u: GMap, a: SliceObject, max_points: Optional[int] = None) -> PiData:
    return PiData(u, a, max_points=max_points)


def pi_slice(u: GMap, a: SliceObject, max_points: Optional[int] = None) -> SliceObject:
    return PiData(u, a, max_points=max_points).slice


class SectionEvalData:
    """The evaluation data of the dependent product.

    pia     : the slice Pi_u(a) with total space B over U
    pull    : pullback P of pia along u, with ubar : P -> B
    e       : P -> A, evaluating a section at the underlying fiber point
    dslice  : Delta_u(Pi_u a) as a slice over S (the projection P -> S)
    """

    __slots__ = ("pidata", "pia", "pull", "ubar", "e", "dslice")

    def __init__(self, u: GMap, a: SliceObject, max_points: Optional[int] = None):
        pd = PiData(u, a, max_points=max_points)
        pull = pullback(pd.slice.arrow, u, max_points=max_points)
        table = []
        for (b_idx, s_pt) in pull.elems:
            table.append(pd.section_value(b_idx, s_pt))
        e = GMap(pull.gset, a.total, tuple(table))
        self.pidata = pd
        self.pia = pd.slice
        self.pull = pull
        self.ubar = pull.proj1
        self.e = e
        self.dslice = SliceObject(pull.proj2)
        # evaluation triangle: a after e equals the projection to S
        if compose_gmaps(a.arrow, e).table != pull.proj2.table:
            raise InvalidStructure("evaluation triangle failed to commute")


def counit_e(u: GMap, a: SliceObject, max_points: Optional[int] = None) -> tuple[GMap, GMap]:
    """The section-evaluation counit e : P -> A and projection ubar : P -> B."""
    d = SectionEvalData(u, a, max_points=max_points)
    return d.e, d.ubar


def section_eval(u: GMap, a: SliceObject, max_points: Optional[int] = None) -> SectionEvalData:
    return SectionEvalData(u, a, max_points=max_points)


# ---------------------------------------------------------------------------
# adjunction triangle checks
# ---------------------------------------------------------------------------

def _tables_equal_identity(table: Sequence[int]) -> bool:
    return list(table) == list(range(len(table)))


def check_adjunction_triangles(u: GMap, samples_dom: Sequence[SliceObject],
                               samples_cod: Sequence[SliceObject],
                               max_points: Optional[int] = None) -> "list[tuple[str, bool]]":
    """Verify the four unit/counit triangle identities on sample slices.

    samples_dom live over dom(u) (probing Sigma_u and Pi_u), samples_cod
    over cod(u) (probing Delta_u).  Each identity is checked as an exact
    point-table equation.  Returns (name, passed) pairs.
    """
    results: list[tuple[str, bool]] = []
    for k, a in enumerate(samples_dom):
        # counit of Sigma -| Delta on Sigma_u a, precomposed with Sigma of the unit
        sa = sigma(u, a)
        dd = delta_data(u, sa, max_points=max_points)
        eta = [dd.pb.index_of((x, a.arrow.table[x])) for x in a.total.points()]
        eps = [dd.pb.elems[i][0] for i in range(dd.pb.gset.size)]
        comp = [eps[eta[x]] for x in a.total.points()]
        results.append((f"sigma-delta/left[{k}]", _tables_equal_identity(comp)))

        # Pi(counit) after unit on Pi_u a
        pw = section_eval(u, a, max_points=max_points)
        pia = pw.pia
        dd2 = delta_data(u, pia, max_points=max_points)
        pw2 = pi(u, SliceObject(dd2.pb.proj2), max_points=max_points)
        ok = True
        for b_idx in range(pia.total.size):
            x = pia.arrow.table[b_idx]
            vals = tuple(dd2.pb.index_of((b_idx, p)) for p in pw.pidata.fibers[x])
            mid = pw2.index_of_section(x, vals)
            x2, sec2 = pw2.con.elems[mid]
            evald = tuple(pw.e.table[pw.pull.index_of((dd2.pb.elems[v][0], dd2.pb.elems[v][1]))]
                          for v in sec2)
            back = pw.pidata.index_of_section(x2, evald)
            if back != b_idx:
                ok = False
                break
        results.append((f"delta-pi/right[{k}]", ok))

    for k, b in enumerate(samples_cod):
        # Delta(counit) after unit on Delta_u b
        db = delta_data(u, b, max_points=max_points)
        sdb = sigma(u, db.slice)
        d2 = delta_data(u, sdb, max_points=max_points)
        comp = []
        for i in range(db.pb.gset.size):
            y, s = db.pb.elems[i]
            j = d2.pb.index_of((i, s))
            comp.append(db.pb.elems[d2.pb.elems[j][0]] == (y, s))
        results.append((f"sigma-delta/right[{k}]", all(comp)))

        # counit of Delta -| Pi on Delta_u b, precomposed with Delta of the unit
        pw = section_eval(u, db.slice, max_points=max_points)
        ok = True
        for i in range(db.pb.gset.size):
            y, s = db.pb.elems[i]
            x = u.table[s]
            vals = tuple(db.pb.index_of((y, p)) for p in pw.pidata.fibers[x])
            bidx = pw.pidata.index_of_section(x, vals)
            j = pw.pull.index_of((bidx, s))
            if pw.e.table[j] != i:
                ok = False
                break
        results.append((f"delta-pi/left[{k}]", ok))
    return results


# ---------------------------------------------------------------------------
# lextensivity
# ---------------------------------------------------------------------------

def lextensive_factor(f: GMap,
                      dom_cop: CoproductDiagram,
                      cod_cop: CoproductDiagram,
                      left_leg: GMap,
                      right_leg: GMap) -> tuple[GMap, GMap]:
    """Split a map of coproducts over a coproduct base into its two components.

    left_leg : dom_cop.sum -> base, right_leg : cod_cop.sum -> base must both
    be summand-respecting maps into a constructed coproduct base, with
    right_leg after f equal to left_leg.  Returns the unique (r, s) with
    f = r + s.
    """
    if f.dom != dom_cop.sum or f.cod != cod_cop.sum:
        raise BoundaryMismatch("lextensive_factor: f does not match the coproducts")
    if left_leg.dom != dom_cop.sum or right_leg.dom != cod_cop.sum:
        raise BoundaryMismatch("lextensive_factor: legs do not match the coproducts")
    if left_leg.cod != right_leg.cod:
        raise BoundaryMismatch("lextensive_factor: legs land in different bases")
    if compose_gmaps(right_leg, f).table != left_leg.table:
        raise InvalidStructure("lextensive_factor: triangle does not commute")
    na, na2 = dom_cop.left.size, cod_cop.left.size
    r_table, s_table = [], []
    for p in range(na):
        q = f.table[p]
        if q >= na2:
            raise InvalidStructure("lextensive_factor: f does not respect the summands")
        r_table.append(q)
    for p in range(dom_cop.right.size):
        q = f.table[na + p]
        if q < na2:
            raise InvalidStructure("lextensive_factor: f does not respect the summands")
        s_table.append(q - na2)
    r = GMap(dom_cop.left, cod_cop.left, tuple(r_table))
    s = GMap(dom_cop.right, cod_cop.right, tuple(s_table))
    return r, s


class CoproductPullbackData:
    """Decomposition of f : R -> U+V into its parts over the two summands."""

    __slots__ = ("part1", "part2", "incl1", "incl2", "over1", "over2")

    def __init__(self, f: GMap, cop: CoproductDiagram):
        if f.cod != cop.sum:
            raise BoundaryMismatch("decompose: codomain is not the given coproduct")
        split = cop.left.size
        r = f.dom
        lo = [p for p in r.points() if f.table[p] < split]
        hi = [p for p in r.points() if f.table[p] >= split]
        self.part1, self.incl1, self.over1 = self._part(r, lo, f, cop.left, 0)
        self.part2, self.incl2, self.over2 = self._part(r, hi, f, cop.right, split)

    @staticmethod
    def _part(r: GSet, pts: list[int], f: GMap, summand: GSet, shift: int):
        built = build_gset(r.group, pts, lambda g, p: r.act(g, p))
        incl = GMap(built.gset, r, built.elems)
        over = GMap(built.gset, summand,
                    tuple(f.table[p] - shift for p in built.elems))
        return built.gset, incl, over


def coproduct_pullback_decompose(f: GMap, cop: CoproductDiagram) -> CoproductPullbackData:
    data = CoproductPullbackData(f, cop)
    if not is_pullback_square(cop.inj1, f, data.over1, data.incl1):
        raise InvalidStructure("left square is not a pullback")
    if not is_pullback_square(cop.inj2, f, data.over2, data.incl2):
        raise InvalidStructure("right square is not a pullback")
    return data
