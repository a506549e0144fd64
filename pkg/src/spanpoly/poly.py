"""Polynomials of finite G-sets and their composition by term rewriting.

A polynomial X <-r- A -n-> B -t-> Y acts on slices as restriction, then
dependent product, then dependent sum.  Composition of two polynomials is
carried out on formal words of those three generators, rewritten to the
normal shape (sum, product, restriction) by:

  * fusing adjacent generators of equal kind,
  * exchanging a restriction past a sum or a product across the canonical
    pullback square,
  * pushing a product past a sum with the evaluation data of the dependent
    product (the distributive-law step).

Every step replaces a sub-composite by a canonically isomorphic one, and
every step strictly decreases the measure (product/sum inversions,
restriction inversions, word length) lexicographically, so normalization
terminates regardless of strategy; the innermost reducible pair is taken
first.  Over the one-point group the result is validated against an
independent sum-of-products evaluator.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .calib import ALL_MAPS, MorphismClass
from .errors import BoundaryMismatch, ClassViolation, InvalidStructure
from .finact import (
    GMap,
    GSet,
    SliceObject,
    compose_gmaps,
    delta,
    equivariant_isos,
    equivariant_maps,
    identity_gmap,
    orbit_labels,
    section_eval,
    pi_slice,
    pullback,
    sigma,
    slice_iso,
)
from .groups import FiniteGroup, trivial_group
from .report import Check, Report
from .semirings import CommSemiring
from .spans import Span


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """r : A -> X (restriction), n : A -> B (product leg), t : B -> Y (sum leg)."""

    r: GMap
    n: GMap
    t: GMap

    @property
    def src(self) -> GSet:
        return self.r.cod

    @property
    def tgt(self) -> GSet:
        return self.t.cod

    @property
    def group(self) -> FiniteGroup:
        return self.r.group


def polynomial(r: GMap, n: GMap, t: GMap,
               lclass: MorphismClass = ALL_MAPS,
               rclass: MorphismClass = ALL_MAPS) -> Polynomial:
    if r.dom != n.dom:
        raise BoundaryMismatch("polynomial: r and n must share their domain")
    if n.cod != t.dom:
        raise BoundaryMismatch("polynomial: cod(n) must be dom(t)")
    lclass.require(n, "product leg")
    rclass.require(t, "sum leg")
    return Polynomial(r, n, t)


def identity_polynomial(x: GSet) -> Polynomial:
    i = identity_gmap(x)
    return Polynomial(i, i, i)


def apply_polynomial(p: Polynomial, s: SliceObject,
                     max_points: Optional[int] = None) -> SliceObject:
    """The slice action: restriction, dependent product, dependent sum."""
    return sigma(p.t, pi_slice(p.n, delta(p.r, s, max_points=max_points),
                               max_points=max_points))


# ---------------------------------------------------------------------------
# the span-of-spans presentation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpanOfSpans:
    """Outer span with inner-span legs: left = (n, A, r) : B -> X, right = (1, B, t) : B -> Y."""

    apex: GSet
    left: Span
    right: Span


def poly_to_spanspan(p: Polynomial) -> SpanOfSpans:
    b = p.n.cod
    return SpanOfSpans(b, Span(p.n, p.r), Span(identity_gmap(b), p.t))


def spanspan_to_poly(s: SpanOfSpans,
                     lclass: MorphismClass = ALL_MAPS,
                     rclass: MorphismClass = ALL_MAPS) -> Polynomial:
    if s.left.apex != s.left.left.dom or s.left.left.cod != s.apex:
        raise InvalidStructure("left inner span does not hang off the outer apex")
    if not s.right.left.is_identity() or s.right.left.cod != s.apex:
        raise InvalidStructure("right outer leg must be an identity-legged span")
    return polynomial(s.left.right, s.left.left, s.right.right, lclass, rclass)


@dataclass(frozen=True)
class PolyMorphism:
    """A morphism of parallel polynomials: g on sum legs, ell off the pullback.

    P is the canonical pullback of tgt.n against g, with projections
    P -> A' and P -> B; the data must satisfy t'.g = t, n.ell = (P -> B),
    r.ell = r'.(P -> A').
    """

    src: Polynomial
    tgt: Polynomial
    g: GMap
    ell: GMap


def poly_morphism(src: Polynomial, tgt: Polynomial, g: GMap, ell: GMap) -> PolyMorphism:
    if src.src != tgt.src or src.tgt != tgt.tgt:
        raise BoundaryMismatch("poly_morphism needs parallel polynomials")
    if g.dom != src.n.cod or g.cod != tgt.n.cod:
        raise BoundaryMismatch("g must map the sum legs' domains")
    pb = pullback(tgt.n, g)
    if ell.dom != pb.apex or ell.cod != src.n.dom:
        raise BoundaryMismatch("ell must map the canonical pullback into the source")
    if compose_gmaps(tgt.t, g).table != src.t.table:
        raise InvalidStructure("poly_morphism: sum-leg triangle does not commute")
    if compose_gmaps(src.n, ell).table != pb.proj2.table:
        raise InvalidStructure("poly_morphism: product-leg square does not commute")
    if compose_gmaps(src.r, ell).table != compose_gmaps(tgt.r, pb.proj1).table:
        raise InvalidStructure("poly_morphism: restriction triangle does not commute")
    return PolyMorphism(src, tgt, g, ell)


def identity_poly_morphism(p: Polynomial) -> PolyMorphism:
    pb = pullback(p.n, identity_gmap(p.n.cod))
    ell = GMap(pb.apex, p.n.dom, tuple(e[0] for e in pb.elems))
    return poly_morphism(p, p, identity_gmap(p.n.cod), ell)


def enumerate_poly_morphisms(src: Polynomial, tgt: Polynomial) -> Iterator[PolyMorphism]:
    """All morphisms between two parallel polynomials (small inputs only)."""
    t1, t2 = src.t.table, tgt.t.table
    for g in equivariant_maps(src.n.cod, tgt.n.cod, lambda b, b2: t2[b2] == t1[b]):
        pb = pullback(tgt.n, g)
        want_b = pb.proj2.table
        want_x = tuple(tgt.r.table[a2] for a2 in pb.proj1.table)
        n1, r1 = src.n.table, src.r.table
        for ell in equivariant_maps(
                pb.apex, src.n.dom,
                lambda pp, aa: n1[aa] == want_b[pp] and r1[aa] == want_x[pp]):
            yield PolyMorphism(src, tgt, g, ell)


@dataclass(frozen=True)
class SpanSpan2Cell:
    """Two-cell data in the span-of-spans picture.

    apex_map is the plain map between outer apexes (presented through an
    identity-legged span), composite is the composed inner span it induces,
    and lam is the reversed-direction comparison off the canonical pullback.
    """

    src: SpanOfSpans
    tgt: SpanOfSpans
    apex_map: GMap
    composite: Span
    lam: GMap


def translate_2cell(m: PolyMorphism) -> SpanSpan2Cell:
    """Repack a polynomial morphism as span-of-spans two-cell data."""
    pb = pullback(m.tgt.n, m.g)
    comp = Span(pb.proj2, compose_gmaps(m.tgt.r, pb.proj1))
    return SpanSpan2Cell(poly_to_spanspan(m.src), poly_to_spanspan(m.tgt),
                         m.g, comp, m.ell)


def translate_2cell_inverse(c: SpanSpan2Cell,
                            lclass: MorphismClass = ALL_MAPS,
                            rclass: MorphismClass = ALL_MAPS) -> PolyMorphism:
    src = spanspan_to_poly(c.src, lclass, rclass)
    tgt = spanspan_to_poly(c.tgt, lclass, rclass)
    return poly_morphism(src, tgt, c.apex_map, c.lam)


def enumerate_spanspan_2cells(s1: SpanOfSpans, s2: SpanOfSpans) -> Iterator[SpanSpan2Cell]:
    """All two-cells between span-of-spans presentations (small inputs only)."""
    t1 = s1.right.right.table
    t2 = s2.right.right.table
    n1, r1 = s1.left.left.table, s1.left.right.table
    for g in equivariant_maps(s1.apex, s2.apex, lambda b, b2: t2[b2] == t1[b]):
        pb = pullback(s2.left.left, g)
        comp = Span(pb.proj2, compose_gmaps(s2.left.right, pb.proj1))
        want_b = pb.proj2.table
        want_x = comp.right.table
        for lam in equivariant_maps(
                pb.apex, s1.left.apex,
                lambda pp, aa: n1[aa] == want_b[pp] and r1[aa] == want_x[pp]):
            yield SpanSpan2Cell(s1, s2, g, comp, lam)


# ---------------------------------------------------------------------------
# polynomial isomorphism
# ---------------------------------------------------------------------------

def poly_iso(p: Polynomial, q: Polynomial) -> Optional[tuple[GMap, GMap]]:
    """Legwise isos (phiA, phiB) commuting with r, n, t and fixing the ends."""
    if p.src != q.src or p.tgt != q.tgt:
        return None
    tp, tq = p.t.table, q.t.table
    if orbit_labels(p.n.cod, (p.t,)) != orbit_labels(q.n.cod, (q.t,)):
        return None
    for phi_b in equivariant_isos(p.n.cod, q.n.cod, lambda b, b2: tq[b2] == tp[b]):
        rp, rq = p.r.table, q.r.table
        np_, nq = p.n.table, q.n.table
        phi_a = next(equivariant_isos(
            p.n.dom, q.n.dom,
            lambda a, a2: rq[a2] == rp[a] and nq[a2] == phi_b.table[np_[a]]), None)
        if phi_a is not None:
            return phi_a, phi_b
    return None


# ---------------------------------------------------------------------------
# the distributive-law step
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistributeData:
    """Product-past-sum exchange data for u : S -> U and a : A -> S.

    pia : B -> U is the dependent product of a along u; P is its pullback
    back over S with ubar : P -> B, and e : P -> A evaluates sections.
    """

    pia: GMap
    ubar: GMap
    e: GMap


def distribute(u: GMap, a: GMap,
               lclass: MorphismClass = ALL_MAPS,
               rclass: MorphismClass = ALL_MAPS,
               probes: Sequence[SliceObject] = (),
               max_points: Optional[int] = None) -> tuple[DistributeData, Report]:
    """Exchange a dependent product past a dependent sum, with certificates.

    The returned report certifies that pia stays in the right class (the
    compatibility condition) and that on each probe slice m over A the two
    routes  product(u) . sum(a)  and  sum(pia) . product(ubar) . restrict(e)
    agree up to an explicit slice iso.
    """
    lclass.require(u, "exchange leg u")
    rclass.require(a, "exchange leg a")
    if a.cod != u.dom:
        raise BoundaryMismatch("distribute: a must land in dom(u)")
    pw = section_eval(u, SliceObject(a), max_points=max_points)
    data = DistributeData(pw.pia.arrow, pw.ubar, pw.e)
    checks = [Check("pia-in-class", rclass(data.pia),
                    "" if rclass(data.pia) else
                    f"dependent product leaves class {rclass.name}: compatibility violation")]
    if not rclass(data.pia):
        raise ClassViolation(f"dependent product leaves class {rclass.name}")
    for k, m in enumerate(probes):
        lhs = pi_slice(u, sigma(a, m), max_points=max_points)
        rhs = sigma(data.pia,
                    pi_slice(data.ubar, delta(data.e, m, max_points=max_points),
                             max_points=max_points))
        w = slice_iso(lhs, rhs)
        checks.append(Check(f"slice-iso[{k}]", w is not None,
                            "" if w else "exchange routes disagree on probe"))
    return data, Report("distribute", tuple(checks))


# ---------------------------------------------------------------------------
# generator words and normalization
# ---------------------------------------------------------------------------

DELTA, PI, SIGMA = "Delta", "Pi", "Sigma"
_RANK = {SIGMA: 0, PI: 1, DELTA: 2}


@dataclass(frozen=True)
class Gen:
    kind: str
    f: GMap

    @property
    def in_obj(self) -> GSet:
        return self.f.cod if self.kind == DELTA else self.f.dom

    @property
    def out_obj(self) -> GSet:
        return self.f.dom if self.kind == DELTA else self.f.cod

    def describe(self) -> str:
        return f"{self.kind}({self.f.dom.size}->{self.f.cod.size})"


Word = tuple[Gen, ...]


def validate_word(word: Word) -> None:
    for i in range(len(word) - 1):
        if word[i].in_obj != word[i + 1].out_obj:
            raise BoundaryMismatch(f"word boundaries break between {i} and {i + 1}")


def poly_word(p: Polynomial) -> Word:
    return (Gen(SIGMA, p.t), Gen(PI, p.n), Gen(DELTA, p.r))


def apply_word(word: Word, s: SliceObject,
               max_points: Optional[int] = None) -> SliceObject:
    """Evaluate a generator word on a slice (rightmost generator first)."""
    for gen in reversed(word):
        if gen.kind == DELTA:
            s = delta(gen.f, s, max_points=max_points)
        elif gen.kind == SIGMA:
            s = sigma(gen.f, s)
        else:
            s = pi_slice(gen.f, s, max_points=max_points)
    return s


def _rewrite_pair(a: Gen, b: Gen, lclass: MorphismClass, rclass: MorphismClass,
                  max_points: Optional[int]) -> Optional[tuple[str, tuple[Gen, ...]]]:
    """One step on the adjacent pair (a, b), b applied first; None if in order."""
    if b.f.is_identity():
        return ("drop-identity", (a,))
    if a.f.is_identity():
        return ("drop-identity", (b,))
    if a.kind == b.kind:
        if a.kind == DELTA:
            return ("fuse-restrictions", (Gen(DELTA, compose_gmaps(b.f, a.f)),))
        return (f"fuse-{'sums' if a.kind == SIGMA else 'products'}",
                (Gen(a.kind, compose_gmaps(a.f, b.f)),))
    if _RANK[a.kind] <= _RANK[b.kind]:
        return None
    if a.kind == DELTA:
        pb = pullback(b.f, a.f, max_points=max_points)
        moved = Gen(b.kind, pb.proj2)
        if b.kind == PI and not lclass(pb.proj2):
            raise ClassViolation("pullback leaves the product-leg class")
        if b.kind == SIGMA and not rclass(pb.proj2):
            raise ClassViolation("pullback leaves the sum-leg class")
        rule = "exchange-restriction-sum" if b.kind == SIGMA else "exchange-restriction-product"
        return (rule, (moved, Gen(DELTA, pb.proj1)))
    # a is a product, b a sum: the distributive-law step
    data, _ = distribute(a.f, b.f, lclass, rclass, max_points=max_points)
    return ("distribute-product-past-sum",
            (Gen(SIGMA, data.pia), Gen(PI, data.ubar), Gen(DELTA, data.e)))


def normalize_word(word: Word,
                   lclass: MorphismClass = ALL_MAPS,
                   rclass: MorphismClass = ALL_MAPS,
                   max_points: Optional[int] = None) -> tuple[Word, list[dict]]:
    """Rewrite to the sorted normal form, logging each applied rule."""
    validate_word(word)
    cur = list(word)
    transcript: list[dict] = []
    while True:
        hit = None
        for i in range(len(cur) - 2, -1, -1):  # innermost (rightmost) pair first
            step = _rewrite_pair(cur[i], cur[i + 1], lclass, rclass, max_points)
            if step is not None:
                hit = (i, step)
                break
        if hit is None:
            # lone identity generators can survive without an adjacent pair
            solo = next((i for i, g in enumerate(cur)
                         if g.f.is_identity() and len(cur) > 1), None)
            if solo is None:
                break
            rule, i, repl = "drop-identity", solo, ()
        else:
            i, (rule, repl) = hit
            repl = list(repl)
        before = [g.describe() for g in cur]
        if hit is None:
            cur = cur[:i] + cur[i + 1:]
        else:
            cur = cur[:i] + list(repl) + cur[i + 2:]
        transcript.append({"rule": rule, "pos": i,
                           "before": before,
                           "after": [g.describe() for g in cur]})
        validate_word(tuple(cur))
    return tuple(cur), transcript


def word_to_polynomial(word: Word, src: GSet, tgt: GSet,
                       lclass: MorphismClass = ALL_MAPS,
                       rclass: MorphismClass = ALL_MAPS) -> Polynomial:
    """Read a normalized word off as a polynomial, padding missing generators."""
    kinds = [g.kind for g in word]
    if kinds != sorted(kinds, key=_RANK.get):
        raise InvalidStructure("word is not in normal form")
    if len(set(kinds)) != len(kinds):
        raise InvalidStructure("word has unfused repeats")
    gens = {g.kind: g for g in word}
    r = gens[DELTA].f if DELTA in gens else None
    n = gens[PI].f if PI in gens else None
    t = gens[SIGMA].f if SIGMA in gens else None
    if r is None:
        a_obj = n.dom if n is not None else (t.dom if t is not None else src)
        r = identity_gmap(a_obj)
        if a_obj != src:
            raise InvalidStructure("cannot pad restriction: boundary mismatch")
    if n is None:
        n = identity_gmap(r.dom)
    if t is None:
        t = identity_gmap(n.cod)
    out = polynomial(r, n, t, lclass, rclass)
    if out.src != src or out.tgt != tgt:
        raise InvalidStructure("normalized polynomial has wrong boundary")
    return out


def compose_poly(p: Polynomial, q: Polynomial,
                 lclass: MorphismClass = ALL_MAPS,
                 rclass: MorphismClass = ALL_MAPS,
                 max_points: Optional[int] = None) -> tuple[Polynomial, list[dict]]:
    """p : X -/-> Y followed by q : Y -/-> Z, with the rewrite transcript."""
    if p.tgt != q.src:
        raise BoundaryMismatch("compose_poly: boundaries do not match")
    word = poly_word(q) + poly_word(p)
    normal, transcript = normalize_word(word, lclass, rclass, max_points)
    return word_to_polynomial(normal, p.src, q.tgt, lclass, rclass), transcript


# ---------------------------------------------------------------------------
# the independent evaluation oracle
# ---------------------------------------------------------------------------

def eval_semiring(p: Polynomial, q: Sequence, sr: CommSemiring) -> tuple:
    """Sum-of-products value of a polynomial over the one-point group.

    val(y) = sum over t-fiber of y of the product over n-fibers of q at r.
    Completely independent of the slice machinery; serves as ground truth
    for composition.
    """
    if p.group.order != 1:
        raise InvalidStructure("semiring evaluation needs the trivial group")
    if len(q) != p.src.size:
        raise InvalidStructure("input family has wrong length")
    a_of_b = [[] for _ in range(p.n.cod.size)]
    for a in range(p.n.dom.size):
        a_of_b[p.n.table[a]].append(a)
    out = []
    for y in range(p.tgt.size):
        terms = []
        for b in range(p.t.dom.size):
            if p.t.table[b] == y:
                terms.append(sr.prod(q[p.r.table[a]] for a in a_of_b[b]))
        out.append(sr.sum(terms))
    return tuple(out)


def _test_families(size: int, sr: CommSemiring, cap: int = 6) -> list[tuple]:
    families = [tuple(sr.zero for _ in range(size)),
                tuple(sr.one for _ in range(size))]
    for i in range(size):
        families.append(tuple(sr.one if j == i else sr.zero for j in range(size)))
    pool = sr.sample_elements
    if len(pool) ** size <= 64:
        families.extend(itertools.product(pool, repeat=size))
    else:
        for shift in range(cap):
            families.append(tuple(pool[(j + shift) % len(pool)] for j in range(size)))
    seen, out = set(), []
    for fam in families:
        if fam not in seen:
            seen.add(fam)
            out.append(fam)
    return out


def check_poly_oracle(p: Polynomial, q: Polynomial,
                      semirings: Sequence[CommSemiring],
                      lclass: MorphismClass = ALL_MAPS,
                      rclass: MorphismClass = ALL_MAPS,
                      max_points: Optional[int] = None) -> Report:
    """Composite evaluation must match composed evaluations, pointwise."""
    comp, _ = compose_poly(p, q, lclass, rclass, max_points)
    checks = []
    for sr in semirings:
        ok = True
        witness = ""
        for fam in _test_families(p.src.size, sr):
            via_comp = eval_semiring(comp, fam, sr)
            via_steps = eval_semiring(q, eval_semiring(p, fam, sr), sr)
            if via_comp != via_steps:
                ok = False
                witness = f"family {fam}: {via_comp} vs {via_steps}"
                break
        checks.append(Check(f"oracle[{sr.name}]", ok, witness))
    return Report("poly-oracle", tuple(checks))


# ---------------------------------------------------------------------------
# forgetting the action
# ---------------------------------------------------------------------------

def forget_gset(x: GSet) -> GSet:
    t = trivial_group()
    return GSet(t, x.size, (tuple(range(x.size)),))


def forget_gmap(f: GMap) -> GMap:
    return GMap(forget_gset(f.dom), forget_gset(f.cod), f.table)


def forget_polynomial(p: Polynomial) -> Polynomial:
    return Polynomial(forget_gmap(p.r), forget_gmap(p.n), forget_gmap(p.t))
