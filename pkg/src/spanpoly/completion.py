"""Lazily presented indexed categories and their coproduct/product completions.

An indexed category assigns to every G-set U a category fragment whose
objects and finite hom-sets are produced on demand, and to every map a
reindexing functor.  Values are never materialized: every check below takes
explicit probe objects and reports exactly what it examined.

Shipped instances: the terminal one, the self-indexing by slices, and for
each G-set K the slices over (- x K), which present the hom into K in a
form that admits both adjoints to reindexing.

Objects of the coproduct completion over U are pairs (u : S -> U, x in
X(S)) with the leg in the chosen class; the product completion uses the
same objects with morphisms reversed, so one representation serves both and
only the adjoints differ (pushforward is a left adjoint to reindexing on
one side, a right adjoint on the other).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Sequence

from .calib import ALL_MAPS, MorphismClass
from .errors import BoundaryMismatch, ClassViolation, InvalidStructure, ResourceLimit
from .finact import (
    CoproductDiagram,
    GMap,
    GSet,
    SliceObject,
    compose_gmaps,
    coproduct,
    delta_data,
    equivariant_maps,
    count_equivariant_maps,
    identity_gmap,
    pi_slice,
    product,
    product_gmap,
    pullback,
    sigma,
    slice_canonical_form,
    slice_homs,
    slice_iso,
    slice_isos,
    sum_gmap,
)
from .report import Check, Report
from .spans import Span

HOM_LIMIT = 200_000


def invert_gmap(f: GMap) -> GMap:
    if not f.is_bijective():
        raise InvalidStructure("cannot invert a non-bijective map")
    inv = [0] * f.cod.size
    for p, q in enumerate(f.table):
        inv[q] = p
    return GMap(f.cod, f.dom, tuple(inv))


# ---------------------------------------------------------------------------
# indexed categories
# ---------------------------------------------------------------------------

class IndexedCategory:
    """Callback bundle presenting a pseudofunctor into categories.

    Fiber objects/morphisms are ordinary Python values; act_obj/act_mor give
    the reindexing along a map f : V -> U from the U-fiber to the V-fiber.
    push_obj is a left adjoint to reindexing (when available), norm_obj a
    right adjoint.  compose_witness returns the coherence iso
    X(g)(X(f)(a)) -> X(f.g)(a) per probe.
    """

    name: str = "abstract"

    def validate_obj(self, u: GSet, x) -> bool:
        raise NotImplementedError

    def obj_form(self, x) -> str:
        raise NotImplementedError

    def fiber_hom(self, a, b) -> list:
        raise NotImplementedError

    def fiber_id(self, a):
        raise NotImplementedError

    def fiber_comp(self, g, f):
        raise NotImplementedError

    def fiber_iso(self, a, b):
        raise NotImplementedError

    def fiber_isos(self, a, b) -> Iterator:
        raise NotImplementedError

    def act_obj(self, f: GMap, x):
        raise NotImplementedError

    def act_mor(self, f: GMap, a, b, m):
        raise NotImplementedError

    def push_obj(self, f: GMap, x):
        raise NotImplementedError("no left adjoint available")

    def norm_obj(self, f: GMap, x):
        raise NotImplementedError("no right adjoint available")

    def compose_witness(self, f: GMap, g: GMap, a):
        raise NotImplementedError

    def sum_obj(self, cop: CoproductDiagram, a, b):
        raise NotImplementedError


class TerminalIndexed(IndexedCategory):
    """One object, one morphism, everywhere."""

    name = "terminal"

    def validate_obj(self, u, x):
        return x == "*"

    def obj_form(self, x):
        return "*"

    def fiber_hom(self, a, b):
        return ["id"]

    def fiber_id(self, a):
        return "id"

    def fiber_comp(self, g, f):
        return "id"

    def fiber_iso(self, a, b):
        return "id"

    def fiber_isos(self, a, b):
        yield "id"

    def act_obj(self, f, x):
        return "*"

    def act_mor(self, f, a, b, m):
        return "id"

    def push_obj(self, f, x):
        return "*"

    def norm_obj(self, f, x):
        return "*"

    def compose_witness(self, f, g, a):
        return "id"

    def sum_obj(self, cop, a, b):
        return "*"


class SliceIndexed(IndexedCategory):
    """Slices over carrier(U); with at = K the carrier is the product U x K.

    Objects of the fiber over U are slice objects over the carrier;
    morphisms are maps over the carrier.  Reindexing pulls back along the
    lifted map, with dependent sum and product as the two adjoints.
    """

    def __init__(self, at: Optional[GSet] = None, name: Optional[str] = None,
                 hom_limit: int = HOM_LIMIT):
        self.at = at
        self.hom_limit = hom_limit
        if name is not None:
            self.name = name
        else:
            self.name = "slices" if at is None else f"hom-into-K[{at.size}]"

    def carrier(self, u: GSet) -> GSet:
        if self.at is None:
            return u
        return product(u, self.at).prod

    def lift(self, f: GMap) -> GMap:
        if self.at is None:
            return f
        return product_gmap(product(f.dom, self.at), product(f.cod, self.at),
                            f, identity_gmap(self.at))

    def validate_obj(self, u, x):
        return isinstance(x, SliceObject) and x.base == self.carrier(u)

    def obj_form(self, x):
        return slice_canonical_form(x)

    def fiber_hom(self, a, b):
        n = count_equivariant_maps(a.total, b.total,
                                   lambda p, q: b.arrow.table[q] == a.arrow.table[p])
        if n > self.hom_limit:
            raise ResourceLimit(f"fiber hom-set has {n} > {self.hom_limit} elements")
        return list(slice_homs(a, b))

    def fiber_id(self, a):
        return identity_gmap(a.total)

    def fiber_comp(self, g, f):
        return compose_gmaps(g, f)

    def fiber_iso(self, a, b):
        return slice_iso(a, b)

    def fiber_isos(self, a, b):
        return slice_isos(a, b)

    def act_obj(self, f, x):
        return delta_data(self.lift(f), x).slice

    def act_mor(self, f, a, b, m):
        lf = self.lift(f)
        da = delta_data(lf, a)
        db = delta_data(lf, b)
        table = tuple(db.pb.index_of((m.table[p], v)) for (p, v) in da.pb.elems)
        return GMap(da.pb.gset, db.pb.gset, table)

    def push_obj(self, f, x):
        return sigma(self.lift(f), x)

    def norm_obj(self, f, x):
        return pi_slice(self.lift(f), x)

    def compose_witness(self, f, g, a):
        """Iso  X(g)(X(f)(a)) -> X(fg)(a)  by flattening nested pullback pairs."""
        lf, lg = self.lift(f), self.lift(g)
        d1 = delta_data(lf, a)
        d2 = delta_data(lg, d1.slice)
        d12 = delta_data(compose_gmaps(lf, lg), a)
        table = []
        for (i, w) in d2.pb.elems:
            xa, _v = d1.pb.elems[i]
            table.append(d12.pb.index_of((xa, w)))
        return GMap(d2.pb.gset, d12.pb.gset, tuple(table))

    def sum_obj(self, cop, a, b):
        if self.at is None:
            cd = coproduct(a.total, b.total)
            return SliceObject(sum_gmap(cd, cop, a.arrow, b.arrow))
        pu = product(cop.left, self.at)
        pv = product(cop.right, self.at)
        psum = product(cop.sum, self.at)
        cd = coproduct(a.total, b.total)
        table = []
        for p in a.total.points():
            u_pt, k = pu.elems[a.arrow.table[p]]
            table.append(psum.index_of((cop.inj1.table[u_pt], k)))
        for p in b.total.points():
            v_pt, k = pv.elems[b.arrow.table[p]]
            table.append(psum.index_of((cop.inj2.table[v_pt], k)))
        return SliceObject(GMap(cd.sum, psum.prod, tuple(table)))


def terminal_indexed() -> TerminalIndexed:
    return TerminalIndexed()


def slice_indexed() -> SliceIndexed:
    return SliceIndexed()


def representable_indexed(k: GSet) -> SliceIndexed:
    return SliceIndexed(at=k)


def indexed_by_name(name: str, at: Optional[GSet] = None) -> IndexedCategory:
    """Builtin indexed categories by name: terminal | slice | representable."""
    if name == "terminal":
        return terminal_indexed()
    if name == "slice":
        return slice_indexed()
    if name == "representable":
        if at is None:
            raise InvalidStructure("representable indexed category needs a G-set")
        return representable_indexed(at)
    raise InvalidStructure(f"unknown indexed category {name!r}")


# ---------------------------------------------------------------------------
# completion objects
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompletionObject:
    """A leg u : S -> U in the flagged class together with x in X(S)."""

    u: GMap
    x: object

    @property
    def base(self) -> GSet:
        return self.u.cod

    @property
    def stage(self) -> GSet:
        return self.u.dom


class CompletionMorphism(NamedTuple):
    """A morphism (u, x) -> (u', x'): a leg map w with u'.w = u and a fiber
    part xi : x -> X(w)(x').  Plain tuples are accepted interchangeably."""

    w: GMap
    xi: object


def completion_obj(xcat: IndexedCategory, u: GMap, x,
                   klass: MorphismClass = ALL_MAPS) -> CompletionObject:
    klass.require(u, "completion leg")
    if not xcat.validate_obj(u.dom, x):
        raise InvalidStructure(f"object invalid in fiber over {u.dom.size}-point stage")
    return CompletionObject(u, x)


def reindex(xcat: IndexedCategory, r: GMap, o: CompletionObject) -> CompletionObject:
    """Pull a completion object over U back along r : V -> U."""
    if r.cod != o.base:
        raise BoundaryMismatch("reindex: map does not land in the object's base")
    pb = pullback(o.u, r)
    return CompletionObject(pb.proj2, xcat.act_obj(pb.proj1, o.x))


# reindexing in the product completion has the identical object formula
coreindex = reindex


def pushforward(xcat: IndexedCategory, r: GMap, o: CompletionObject,
                klass: MorphismClass = ALL_MAPS) -> CompletionObject:
    """Left adjoint to reindex along a class map: compose the leg."""
    klass.require(r, "pushforward leg")
    if r.dom != o.base:
        raise BoundaryMismatch("pushforward: object is not over dom(r)")
    return CompletionObject(compose_gmaps(r, o.u), o.x)


def unit_eta(u: GSet, x) -> CompletionObject:
    return CompletionObject(identity_gmap(u), x)


unit_rho = unit_eta  # the product-completion unit has the same object part


def mu_flatten(o: CompletionObject) -> CompletionObject:
    """Flatten an object of the double completion by composing its legs."""
    if not isinstance(o.x, CompletionObject):
        raise InvalidStructure("mu_flatten expects a completion object of completion objects")
    return CompletionObject(compose_gmaps(o.u, o.x.u), o.x.x)


def sum_from_family(xcat: IndexedCategory, o: CompletionObject,
                    klass: MorphismClass = ALL_MAPS):
    """The coproduct the completion freely added: push the object along its leg."""
    klass.require(o.u, "family leg")
    return xcat.push_obj(o.u, o.x)


def product_from_family(xcat: IndexedCategory, o: CompletionObject,
                        lclass: MorphismClass = ALL_MAPS):
    """Dual assignment for the product completion: the dependent product."""
    lclass.require(o.u, "family leg")
    return xcat.norm_obj(o.u, o.x)


# ---------------------------------------------------------------------------
# morphisms of the completion
# ---------------------------------------------------------------------------

def completion_homs(xcat: IndexedCategory, o: CompletionObject,
                    o2: CompletionObject,
                    limit: int = HOM_LIMIT) -> list[CompletionMorphism]:
    """All morphisms (w, xi) from o to o2 in the coproduct completion."""
    if o.base != o2.base:
        raise BoundaryMismatch("completion_homs: different bases")
    out = []
    u1, u2 = o.u.table, o2.u.table
    constraint = lambda p, q: u2[q] == u1[p]
    n_legs = count_equivariant_maps(o.stage, o2.stage, constraint)
    if n_legs > limit:
        raise ResourceLimit(f"{n_legs} candidate legs exceed limit {limit}")
    for w in equivariant_maps(o.stage, o2.stage, constraint):
        xw = xcat.act_obj(w, o2.x)
        for xi in xcat.fiber_hom(o.x, xw):
            out.append(CompletionMorphism(w, xi))
            if len(out) > limit:
                raise ResourceLimit(f"completion hom-set exceeds limit {limit}")
    return out


def completion_compose(xcat: IndexedCategory,
                       o1: CompletionObject, o2: CompletionObject, o3: CompletionObject,
                       m12: tuple[GMap, object],
                       m23: tuple[GMap, object]) -> tuple[GMap, object]:
    """Composite of completion morphisms o1 -> o2 -> o3 over a common base."""
    w1, xi1 = m12
    w2, xi2 = m23
    w = compose_gmaps(w2, w1)
    lifted = xcat.act_mor(w1, o2.x, xcat.act_obj(w2, o3.x), xi2)
    coh = xcat.compose_witness(w2, w1, o3.x)
    return (w, xcat.fiber_comp(coh, xcat.fiber_comp(lifted, xi1)))


def reindex_mor(xcat: IndexedCategory, r: GMap,
                o2: CompletionObject, o3: CompletionObject,
                m: tuple[GMap, object]) -> tuple[GMap, object]:
    """Action of reindexing along r on a completion morphism o2 -> o3."""
    w, xi = m
    pb2 = pullback(o2.u, r)
    pb3 = pullback(o3.u, r)
    wbar = pb3.mediator(compose_gmaps(w, pb2.proj1), pb2.proj2)
    step = xcat.act_mor(pb2.proj1, o2.x, xcat.act_obj(w, o3.x), xi)
    c1 = xcat.compose_witness(w, pb2.proj1, o3.x)
    c2 = xcat.compose_witness(pb3.proj1, wbar, o3.x)
    c2_inv = invert_gmap(c2) if isinstance(c2, GMap) else c2
    xibar = xcat.fiber_comp(c2_inv, xcat.fiber_comp(c1, step))
    return (wbar, xibar)


def completion_homs_dual(xcat: IndexedCategory, o: CompletionObject,
                         o2: CompletionObject,
                         limit: int = HOM_LIMIT) -> list[CompletionMorphism]:
    """Morphisms o -> o2 of the product completion: legs point backwards.

    A morphism is (w : S2 -> S1 with u1.w = u2, zeta : X(w)(x1) -> x2).
    """
    if o.base != o2.base:
        raise BoundaryMismatch("completion_homs_dual: different bases")
    out = []
    u1, u2 = o.u.table, o2.u.table
    constraint = lambda p, q: u1[q] == u2[p]
    n_legs = count_equivariant_maps(o2.stage, o.stage, constraint)
    if n_legs > limit:
        raise ResourceLimit(f"{n_legs} candidate legs exceed limit {limit}")
    for w in equivariant_maps(o2.stage, o.stage, constraint):
        xw = xcat.act_obj(w, o.x)
        for zeta in xcat.fiber_hom(xw, o2.x):
            out.append(CompletionMorphism(w, zeta))
            if len(out) > limit:
                raise ResourceLimit(f"dual hom-set exceeds limit {limit}")
    return out


def hom_bijection_dual(xcat: IndexedCategory, o: CompletionObject,
                       o2: CompletionObject, r: GMap,
                       lclass: MorphismClass = ALL_MAPS) -> Report:
    """Mirror adjunction: pushing the leg is right adjoint to reindexing.

    o lives over V = dom(r), o2 over U = cod(r).  Dual morphisms from the
    reindexed o2 to o downstairs correspond to dual morphisms from o2 to
    the pushed o upstairs.
    """
    pushed = pushforward(xcat, r, o, lclass)
    back = reindex(xcat, r, o2)
    lhs = completion_homs_dual(xcat, back, o)
    rhs = completion_homs_dual(xcat, o2, pushed)
    pb = pullback(o2.u, r)
    images = []
    for (wt, zeta) in lhs:
        w = compose_gmaps(pb.proj1, wt)
        coh = xcat.compose_witness(pb.proj1, wt, o2.x)
        coh_inv = invert_gmap(coh) if isinstance(coh, GMap) else coh
        zeta2 = xcat.fiber_comp(zeta, coh_inv)
        images.append(CompletionMorphism(w, zeta2))
    ok_len = len(lhs) == len(rhs)
    ok_into = all(any(im == rh for rh in rhs) for im in images)
    ok_inj = len(set((im[0].table, _mor_key(im[1])) for im in images)) == len(images)
    checks = (
        Check("counts", ok_len, f"{len(lhs)} vs {len(rhs)}"),
        Check("lands-in-target", ok_into),
        Check("injective", ok_inj),
    )
    return Report("hom-bijection-dual", checks)


def completion_iso(xcat: IndexedCategory, o: CompletionObject,
                   o2: CompletionObject) -> Optional[tuple[GMap, object]]:
    """An invertible (w, xi) between completion objects, or None."""
    if o.base != o2.base:
        return None
    for w in slice_isos(SliceObject(o.u), SliceObject(o2.u)):
        xw = xcat.act_obj(w, o2.x)
        xi = xcat.fiber_iso(o.x, xw)
        if xi is not None:
            return (w, xi)
    return None


def hom_bijection_map(xcat: IndexedCategory, o: CompletionObject,
                      o2: CompletionObject, r: GMap,
                      klass: MorphismClass = ALL_MAPS):
    """The adjunction correspondence on hom-sets, elementwise.

    o lives over V = dom(r), o2 over U = cod(r).  Returns (lhs, rhs, images)
    where lhs are the morphisms pushed-o -> o2 upstairs, rhs the morphisms
    o -> reindexed-o2 downstairs, and images the transport of each lhs
    element: the leg pairs into the pullback, the fiber part rides the
    coherence witness.
    """
    pushed = pushforward(xcat, r, o, klass)
    lhs = completion_homs(xcat, pushed, o2)
    back = reindex(xcat, r, o2)
    rhs = completion_homs(xcat, o, back)
    pb = pullback(o2.u, r)
    images = []
    for (w, xi) in lhs:
        wt = pb.mediator(w, o.u)
        coh = xcat.compose_witness(pb.proj1, wt, o2.x)
        xi2 = xcat.fiber_comp(invert_gmap(coh) if isinstance(coh, GMap) else coh, xi)
        images.append(CompletionMorphism(wt, xi2))
    return lhs, rhs, images


def hom_bijection(xcat: IndexedCategory, o: CompletionObject,
                  o2: CompletionObject, r: GMap,
                  klass: MorphismClass = ALL_MAPS) -> Report:
    """The adjunction bijection between hom-sets, exhibited and verified."""
    lhs, rhs, images = hom_bijection_map(xcat, o, o2, r, klass)
    ok_len = len(lhs) == len(rhs)
    ok_into = all(any(im == rh for rh in rhs) for im in images)
    ok_inj = len(set((im[0].table, _mor_key(im[1])) for im in images)) == len(images)
    checks = (
        Check("counts", ok_len, f"{len(lhs)} vs {len(rhs)}"),
        Check("lands-in-target", ok_into),
        Check("injective", ok_inj),
    )
    return Report("hom-bijection", checks,
                  (f"hom sizes {len(lhs)}={len(rhs)}" if ok_len else "size mismatch",))


def _mor_key(m) -> object:
    return m.table if isinstance(m, GMap) else m


# ---------------------------------------------------------------------------
# Chevalley-Beck checks
# ---------------------------------------------------------------------------

def check_CB(xcat: IndexedCategory, f: GMap, g: GMap,
             samples: Sequence[CompletionObject],
             klass: MorphismClass = ALL_MAPS) -> Report:
    """Exchange of pushforward and reindexing across a pullback square.

    For the square of f : U -> W against g : V -> W, both composite routes
    from the completion over U to the completion over V are computed on each
    sample and an explicit connecting iso is searched.
    """
    if f.cod != g.cod:
        raise BoundaryMismatch("check_CB needs a cospan")
    pb = pullback(f, g)
    g_f, f_g = pb.proj1, pb.proj2
    checks = []
    for k, o in enumerate(samples):
        side1 = reindex(xcat, g, pushforward(xcat, f, o, klass))
        side2 = pushforward(xcat, f_g, reindex(xcat, g_f, o), klass)
        w = completion_iso(xcat, side1, side2)
        checks.append(Check(f"mate[{k}]", w is not None,
                            "" if w else "no connecting iso found"))
    return Report(f"CB:{xcat.name}", tuple(checks),
                  (f"square {f.dom.size}->{f.cod.size}<-{g.dom.size}, apex {pb.apex.size}",))


def check_CB_fiber(xcat: IndexedCategory, f: GMap, g: GMap, samples: Sequence,
                   mode: str = "push") -> Report:
    """Fiber-level exchange isos across a pullback square.

    mode 'push': X(g) . push(f)  ~  push(f_g) . X(g_f)   on X(U)-samples;
    mode 'norm': X(g) . norm(f)  ~  norm(f_g) . X(g_f)   (the dual mates).
    """
    pb = pullback(f, g)
    g_f, f_g = pb.proj1, pb.proj2
    one = xcat.push_obj if mode == "push" else xcat.norm_obj
    checks = []
    for k, x in enumerate(samples):
        side1 = xcat.act_obj(g, one(f, x))
        side2 = one(f_g, xcat.act_obj(g_f, x))
        ok = xcat.fiber_iso(side1, side2) is not None
        checks.append(Check(f"{mode}-mate[{k}]", ok, "" if ok else "fiber iso missing"))
    return Report(f"CB-fiber-{mode}:{xcat.name}", tuple(checks))


# ---------------------------------------------------------------------------
# finite coproducts inside a fiber, via codiagonals
# ---------------------------------------------------------------------------

def fiber_coproduct(xcat: IndexedCategory, u: GSet, x, y):
    """Binary coproduct of two fiber objects, pushed along the codiagonal."""
    from .finact import codiagonal
    cop, nabla = codiagonal(u)
    return xcat.push_obj(nabla, xcat.sum_obj(cop, x, y))


def check_fiber_coproduct(xcat: IndexedCategory, u: GSet, x, y,
                          targets: Sequence) -> Report:
    """Probe the coproduct universality of fiber_coproduct against targets.

    Morphisms out of the glued object must correspond bijectively to pairs
    of morphisms out of the two pieces; injections must exist.
    """
    z = fiber_coproduct(xcat, u, x, y)
    checks = []
    for k, w in enumerate(targets):
        homs = xcat.fiber_hom(z, w)
        target = len(xcat.fiber_hom(x, w)) * len(xcat.fiber_hom(y, w))
        checks.append(Check(f"universality[{k}]", len(homs) == target,
                            "" if len(homs) == target
                            else f"{len(homs)} maps out vs {target} pairs"))
    inj = len(xcat.fiber_hom(x, z)) >= 1 and len(xcat.fiber_hom(y, z)) >= 1
    checks.append(Check("injections-exist", inj))
    return Report(f"fiber-coproduct:{xcat.name}", tuple(checks))


# ---------------------------------------------------------------------------
# extension to spans
# ---------------------------------------------------------------------------

class SpanExtension:
    """Action of a coproduct-complete indexed category on a span.

    The span U <- S -> V acts on the fiber over V by reindexing along the
    right leg and pushing along the left one.
    """

    def __init__(self, xcat: IndexedCategory, p: Span,
                 klass: MorphismClass = ALL_MAPS):
        klass.require(p.left, "span left leg")
        self.xcat = xcat
        self.p = p

    def __call__(self, x):
        return self.xcat.push_obj(self.p.left, self.xcat.act_obj(self.p.right, x))


def extend_to_spans(xcat: IndexedCategory, p: Span,
                    klass: MorphismClass = ALL_MAPS,
                    probe_squares: Sequence[tuple[GMap, GMap]] = (),
                    probe_objects: Sequence = ()) -> SpanExtension:
    """Span action of an indexed category, gated on sampled cocompleteness probes."""
    for (f, g) in probe_squares:
        rep = check_CB_fiber(xcat, f, g, probe_objects, mode="push")
        if not rep.passed:
            raise ClassViolation("cocompleteness probe failed; cannot extend to spans")
    return SpanExtension(xcat, p, klass)


def check_extension_composition(xcat: IndexedCategory, p: Span, q: Span,
                                probes: Sequence,
                                klass: MorphismClass = ALL_MAPS) -> Report:
    """Composition preservation of the span action on probe objects."""
    from .spans import compose_spans
    pq = compose_spans(p, q, klass)
    ext_pq = SpanExtension(xcat, pq, klass)
    ext_p = SpanExtension(xcat, p, klass)
    ext_q = SpanExtension(xcat, q, klass)
    checks = []
    for k, x in enumerate(probes):
        a = ext_pq(x)
        b = ext_p(ext_q(x))
        ok = xcat.fiber_iso(a, b) is not None
        checks.append(Check(f"probe[{k}]", ok, "" if ok else "composite action differs"))
    return Report(f"span-extension:{xcat.name}", tuple(checks))


# ---------------------------------------------------------------------------
# biproduct preservation
# ---------------------------------------------------------------------------

def check_biproduct_preservation(xcat: IndexedCategory, u: GSet, v: GSet,
                                 sample_pairs: Sequence[tuple]) -> Report:
    """Probe the comparison X(U+V) -> X(U) x X(V) on sample object pairs.

    Essential surjectivity: each pair is hit, up to fiber iso, by the glued
    object.  Fullness and faithfulness: homs out of glued objects biject
    with pairs of homs between the restrictions.
    """
    cop = coproduct(u, v)
    checks = []
    glued = []
    for k, (a, b) in enumerate(sample_pairs):
        z = xcat.sum_obj(cop, a, b)
        glued.append(z)
        za = xcat.act_obj(cop.inj1, z)
        zb = xcat.act_obj(cop.inj2, z)
        ok = (xcat.fiber_iso(za, a) is not None and xcat.fiber_iso(zb, b) is not None)
        checks.append(Check(f"ess-surj[{k}]", ok,
                            "" if ok else "restrictions do not recover the pair"))
    for i, z in enumerate(glued):
        for j, z2 in enumerate(glued):
            homs = xcat.fiber_hom(z, z2)
            za, zb = xcat.act_obj(cop.inj1, z), xcat.act_obj(cop.inj2, z)
            za2, zb2 = xcat.act_obj(cop.inj1, z2), xcat.act_obj(cop.inj2, z2)
            target = len(xcat.fiber_hom(za, za2)) * len(xcat.fiber_hom(zb, zb2))
            imgs = {( _mor_key(xcat.act_mor(cop.inj1, z, z2, h)),
                      _mor_key(xcat.act_mor(cop.inj2, z, z2, h))) for h in homs}
            ok = len(homs) == target and len(imgs) == len(homs)
            checks.append(Check(f"full-faithful[{i},{j}]", ok,
                                "" if ok else f"{len(homs)} homs vs {target} pairs"))
    return Report(f"biproducts:{xcat.name}", tuple(checks))
