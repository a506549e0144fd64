"""Spans of finite G-sets, composed by pullback, at desk scale.

A span U <- S -> V carries a class flag on its left leg.  Over a plain
category the two-cell content degenerates: span morphisms are strictly
commuting apex maps, and isomorphism classes of spans are decided by an
orbit-label canonical form.  Hom-categories are never materialized; spans
are concrete values and morphisms between them are searched on demand.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .calib import ALL_MAPS, MorphismClass
from .errors import BoundaryMismatch, ClassViolation, GroupMismatch, InvalidStructure
from .finact import (
    CoproductDiagram,
    GMap,
    GSet,
    build_gset,
    compose_gmaps,
    coproduct,
    equivariant_isos,
    identity_gmap,
    initial_gset,
    orbit_labels,
    pullback,
    sum_gmap,
)
from .groups import FiniteGroup
from .report import Check, Report


@dataclass(frozen=True)
class Span:
    """left : S -> U (the flagged leg), right : S -> V."""

    left: GMap
    right: GMap

    @property
    def apex(self) -> GSet:
        return self.left.dom

    @property
    def src(self) -> GSet:
        return self.left.cod

    @property
    def tgt(self) -> GSet:
        return self.right.cod

    @property
    def group(self) -> FiniteGroup:
        return self.left.group


def span(left: GMap, right: GMap, rclass: MorphismClass = ALL_MAPS) -> Span:
    if left.dom != right.dom:
        raise BoundaryMismatch("span legs must share their domain")
    rclass.require(left, "left leg")
    return Span(left, right)


def identity_span(u: GSet) -> Span:
    i = identity_gmap(u)
    return Span(i, i)


def lower_star(f: GMap) -> Span:
    """The span presentation (U <-1- U -f-> V) of a plain map."""
    return Span(identity_gmap(f.dom), f)


def upper_star(r: GMap, rclass: MorphismClass = ALL_MAPS) -> Span:
    """The right-adjoint presentation (V <-r- U -1-> U); needs r in the class."""
    rclass.require(r, "upper_star leg")
    return Span(r, identity_gmap(r.dom))


def empty_span(u: GSet, v: GSet) -> Span:
    if u.group != v.group:
        raise GroupMismatch("empty_span over different groups")
    zero = initial_gset(u.group)
    return Span(GMap(zero, u, ()), GMap(zero, v, ()))


class SpanComposite:
    """A composed span remembering the pullback its apex came from."""

    __slots__ = ("span", "pb", "first", "second")

    def __init__(self, p: Span, q: Span, rclass: MorphismClass = ALL_MAPS,
                 max_points: Optional[int] = None):
        if p.tgt != q.src:
            raise BoundaryMismatch("span composition: boundaries do not match")
        pb = pullback(p.right, q.left, max_points=max_points)
        left = compose_gmaps(p.left, pb.proj1)
        right = compose_gmaps(q.right, pb.proj2)
        if not rclass(left):
            raise ClassViolation(
                f"composite left leg escapes class {rclass.name}: protocalibration inconsistency")
        self.span = Span(left, right)
        self.pb = pb
        self.first = p
        self.second = q

    def index_of(self, pair: tuple[int, int]) -> int:
        return self.pb.index_of(pair)

    @property
    def elems(self):
        return self.pb.elems


def compose_data(p: Span, q: Span, rclass: MorphismClass = ALL_MAPS,
                 max_points: Optional[int] = None) -> SpanComposite:
    return SpanComposite(p, q, rclass, max_points=max_points)


def compose_spans(p: Span, q: Span, rclass: MorphismClass = ALL_MAPS,
                  max_points: Optional[int] = None) -> Span:
    """p : U -/-> V followed by q : V -/-> W."""
    return SpanComposite(p, q, rclass, max_points=max_points).span


# ---------------------------------------------------------------------------
# span morphisms and isomorphism
# ---------------------------------------------------------------------------

def is_span_morphism(p: Span, q: Span, f: GMap) -> bool:
    """Whether f : apex(p) -> apex(q) commutes with all four legs."""
    if p.src != q.src or p.tgt != q.tgt:
        return False
    if f.dom != p.apex or f.cod != q.apex:
        return False
    return (compose_gmaps(q.left, f).table == p.left.table
            and compose_gmaps(q.right, f).table == p.right.table)


def span_morphisms(p: Span, q: Span) -> Iterator[GMap]:
    """All two-cells p => q: apex maps commuting with all four legs.

    The hom-category of parallel spans is presented by this search rather
    than materialized.
    """
    if p.src != q.src or p.tgt != q.tgt:
        raise BoundaryMismatch("span_morphisms needs parallel spans")
    from .finact import equivariant_maps
    lu, lv = p.left.table, p.right.table
    mu, mv = q.left.table, q.right.table
    return equivariant_maps(p.apex, q.apex,
                            lambda a, b: mu[b] == lu[a] and mv[b] == lv[a])


def span_isos(p: Span, q: Span) -> Iterator[GMap]:
    if p.src != q.src or p.tgt != q.tgt:
        raise BoundaryMismatch("span_isos needs parallel spans")
    lu, lv = p.left.table, p.right.table
    mu, mv = q.left.table, q.right.table
    return equivariant_isos(p.apex, q.apex,
                            lambda a, b: mu[b] == lu[a] and mv[b] == lv[a])


def span_labels(p: Span) -> tuple:
    return orbit_labels(p.apex, (p.left, p.right))


def span_iso(p: Span, q: Span) -> Optional[GMap]:
    """An apex iso commuting with both legs, or None; labels pre-screen."""
    if p.src != q.src or p.tgt != q.tgt:
        raise BoundaryMismatch("span_iso needs parallel spans")
    if span_labels(p) != span_labels(q):
        return None
    return next(span_isos(p, q), None)


def span_canonical_form(p: Span) -> str:
    labs = ";".join(f"stab{list(s)}@{v[0]},{v[1]}" for s, v in span_labels(p))
    return (f"{p.group.name}[{p.src.size}<-{p.apex.size}->{p.tgt.size}]{{{labs}}}")


def span_from_labels(group: FiniteGroup, src: GSet, tgt: GSet,
                     labels: Sequence[tuple]) -> Span:
    """The canonical representative span with the given orbit labels.

    Each label ((stabilizer...), (u0, v0)) contributes the coset orbit of its
    stabilizer, with legs sending a coset to its least element acting on
    (u0, v0).  Identical label multisets rebuild identical spans.
    """
    elems = []
    for i, (stab, _) in enumerate(labels):
        h = frozenset(stab)
        seen = set()
        for g in group.elements():
            c = tuple(sorted(group.op(g, a) for a in h))
            if c not in seen:
                seen.add(c)
                elems.append((i, c))

    def act(g: int, e):
        i, c = e
        return (i, tuple(sorted(group.op(g, a) for a in c)))

    built = build_gset(group, elems, act)
    ltab, rtab = [], []
    for i, c in built.elems:
        g = min(c)
        u0, v0 = labels[i][1]
        ltab.append(src.act(g, u0))
        rtab.append(tgt.act(g, v0))
    return Span(GMap(built.gset, src, tuple(ltab)),
                GMap(built.gset, tgt, tuple(rtab)))


@dataclass(frozen=True)
class SpanIsoClass:
    """An isomorphism class of spans, held by canonical representative."""

    rep: Span
    form: str

    @property
    def src(self) -> GSet:
        return self.rep.src

    @property
    def tgt(self) -> GSet:
        return self.rep.tgt


def span_class(p: Span) -> SpanIsoClass:
    rep = span_from_labels(p.group, p.src, p.tgt, span_labels(p))
    return SpanIsoClass(rep, span_canonical_form(rep))


def cl_compose(c1: SpanIsoClass, c2: SpanIsoClass,
               rclass: MorphismClass = ALL_MAPS) -> SpanIsoClass:
    """Compose representatives, then canonicalize."""
    return span_class(compose_spans(c1.rep, c2.rep, rclass))


def identity_class(u: GSet) -> SpanIsoClass:
    return span_class(identity_span(u))


# ---------------------------------------------------------------------------
# canonical coherence cells
# ---------------------------------------------------------------------------

def lunitor(p: Span, rclass: MorphismClass = ALL_MAPS) -> tuple[SpanComposite, GMap]:
    """The composite 1 ; p and its canonical iso onto p."""
    comp = compose_data(identity_span(p.src), p, rclass)
    table = tuple(e[1] for e in comp.elems)
    return comp, GMap(comp.span.apex, p.apex, table)


def runitor(p: Span, rclass: MorphismClass = ALL_MAPS) -> tuple[SpanComposite, GMap]:
    comp = compose_data(p, identity_span(p.tgt), rclass)
    table = tuple(e[0] for e in comp.elems)
    return comp, GMap(comp.span.apex, p.apex, table)


def associator(p: Span, q: Span, r: Span,
               rclass: MorphismClass = ALL_MAPS) -> tuple[SpanComposite, SpanComposite, GMap]:
    """Canonical iso apex((p;q);r) -> apex(p;(q;r)) by reassociating pairs."""
    pq = compose_data(p, q, rclass)
    left = compose_data(pq.span, r, rclass)
    qr = compose_data(q, r, rclass)
    right = compose_data(p, qr.span, rclass)
    table = []
    for (pq_idx, w) in left.elems:
        s, t = pq.elems[pq_idx]
        table.append(right.index_of((s, qr.index_of((t, w)))))
    return left, right, GMap(left.span.apex, right.span.apex, tuple(table))


# ---------------------------------------------------------------------------
# the adjunction r_* -| r^*
# ---------------------------------------------------------------------------

def adjunction_unit(r: GMap, rclass: MorphismClass = ALL_MAPS) -> tuple[SpanComposite, GMap]:
    """unit : identity span of U => r_* ; r^*  (the kernel-pair diagonal)."""
    comp = compose_data(lower_star(r), upper_star(r, rclass), rclass)
    table = tuple(comp.index_of((x, x)) for x in r.dom.points())
    return comp, GMap(r.dom, comp.span.apex, table)


def adjunction_counit(r: GMap, rclass: MorphismClass = ALL_MAPS) -> tuple[SpanComposite, GMap]:
    """counit : r^* ; r_* => identity span of V."""
    comp = compose_data(upper_star(r, rclass), lower_star(r), rclass)
    table = tuple(r.table[comp.elems[i][0]] for i in range(comp.span.apex.size))
    return comp, GMap(comp.span.apex, r.cod, table)


def check_adjunction(r: GMap, rclass: MorphismClass = ALL_MAPS) -> Report:
    """Exact triangle identities for the adjunction of the two presentations of r.

    Both composites are chased elementwise through the canonical unitors and
    associator and must come back to the identity on the nose.
    """
    f = lower_star(r)
    g = upper_star(r, rclass)
    k = compose_data(f, g, rclass)          # r_* ; r^*, kernel pair
    r2 = compose_data(g, f, rclass)         # r^* ; r_*
    _, eta = adjunction_unit(r, rclass)
    _, eps = adjunction_counit(r, rclass)

    checks = []
    ok_unit = is_span_morphism(identity_span(r.dom), k.span, eta)
    checks.append(Check("unit-is-2cell", ok_unit))
    ok_counit = is_span_morphism(r2.span, identity_span(r.cod), eps)
    checks.append(Check("counit-is-2cell", ok_counit))

    # triangle on r_*: whisker the unit, reassociate, whisker the counit
    c1 = compose_data(identity_span(r.dom), f, rclass)
    c2 = compose_data(k.span, f, rclass)
    c3 = compose_data(f, r2.span, rclass)
    c4 = compose_data(f, identity_span(r.cod), rclass)
    ok = True
    for s in r.dom.points():
        i1 = c1.index_of((s, s))
        x, s1 = c1.elems[i1]
        i2 = c2.index_of((eta.table[x], s1))
        k_idx, s2 = c2.elems[i2]
        a, b = k.elems[k_idx]
        i3 = c3.index_of((a, r2.index_of((b, s2))))
        a2, p_idx = c3.elems[i3]
        i4 = c4.index_of((a2, eps.table[p_idx]))
        if c4.elems[i4][0] != s:
            ok = False
            break
    checks.append(Check("triangle-lower", ok))

    # triangle on r^*
    d1 = compose_data(g, identity_span(r.dom), rclass)
    d2 = compose_data(g, k.span, rclass)
    d3 = compose_data(r2.span, g, rclass)
    d4 = compose_data(identity_span(r.cod), g, rclass)
    ok = True
    for t in r.dom.points():
        i1 = d1.index_of((t, t))
        t1, x = d1.elems[i1]
        i2 = d2.index_of((t1, eta.table[x]))
        t2, k_idx = d2.elems[i2]
        a, b = k.elems[k_idx]
        i3 = d3.index_of((r2.index_of((t2, a)), b))
        p_idx, b2 = d3.elems[i3]
        i4 = d4.index_of((eps.table[p_idx], b2))
        if d4.elems[i4][1] != t:
            ok = False
            break
    checks.append(Check("triangle-upper", ok))
    return Report(f"adjunction r_*-|r^* on {r.dom.size}->{r.cod.size}", tuple(checks))


# ---------------------------------------------------------------------------
# decomposition and coproducts
# ---------------------------------------------------------------------------

def decompose(p: Span, rclass: MorphismClass = ALL_MAPS) -> tuple[GMap, GMap, GMap]:
    """Write p as its legs (u, v) with a certificate iso  (v_* after u^*) ~ p."""
    u, v = p.left, p.right
    comp = compose_data(upper_star(u, rclass), lower_star(v), rclass)
    cert = GMap(comp.span.apex, p.apex, tuple(e[0] for e in comp.elems))
    if not is_span_morphism(comp.span, p, cert) or not cert.is_bijective():
        raise InvalidStructure("decomposition certificate failed")
    return u, v, cert


def bicoproduct_cotuple(p: Span, q: Span,
                        rclass: MorphismClass = ALL_MAPS) -> tuple[Span, CoproductDiagram, CoproductDiagram]:
    """Cotuple two spans with a shared target into one from the coproduct.

    Returns the span U+V <- S+T -> W together with the base and apex
    coproduct diagrams that exhibit it.
    """
    if p.tgt != q.tgt:
        raise BoundaryMismatch("bicoproduct_cotuple needs a shared target")
    if not rclass.closed_under_coproducts:
        raise ClassViolation(f"class {rclass.name} is not coproduct-closed")
    base = coproduct(p.src, q.src)
    apexes = coproduct(p.apex, q.apex)
    left = sum_gmap(apexes, base, p.left, q.left)
    right = apexes.cotuple(p.right, q.right)
    return span(left, right, rclass), base, apexes


def local_coproduct(p: Span, q: Span,
                    rclass: MorphismClass = ALL_MAPS) -> tuple[Span, GMap, GMap]:
    """Coproduct of parallel spans in the hom-category, with its injections."""
    if p.src != q.src or p.tgt != q.tgt:
        raise BoundaryMismatch("local_coproduct needs parallel spans")
    apexes = coproduct(p.apex, q.apex)
    left = apexes.cotuple(p.left, q.left)
    right = apexes.cotuple(p.right, q.right)
    out = span(left, right, rclass)
    return out, apexes.inj1, apexes.inj2
