"""Commutative-monoid-valued functors on iso-classes of spans.

Values are free commutative monoids on canonically ordered generator sets,
so restriction and transfer become natural-number matrices and every law
check is an exact matrix equation.  A span X <-u- S -v-> Y acts covariantly
by restriction along the left leg followed by transfer along the right one
(the reversed-span convention gives the contravariant reading).

The Burnside instance takes a G-set to the free monoid on its atoms, the
iso classes of transitive G-sets over it.  The fixed-point instance is
parametrized by a G-set of coordinates: its value on X is the monoid of
equivariant natural-vector-valued functions, free on the orbits of the
product of X with the coordinate set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .calib import ALL_MAPS, MorphismClass
from .errors import BoundaryMismatch, InvalidStructure
from .finact import (
    GMap,
    GSet,
    SliceObject,
    build_gset,
    compose_gmaps,
    coproduct,
    delta,
    orbits,
    product,
    sigma,
    stabilizer,
    terminal_gset,
)
from .groups import FiniteGroup, double_cosets, subgroup_class_key, subgroups
from .report import Check, Report
from .spans import Span, compose_spans
from .util_linear import Matrix, lin_map, mat_add, mat_compose, mat_equal, mat_identity


# ---------------------------------------------------------------------------
# atoms: transitive slices up to iso
# ---------------------------------------------------------------------------

AtomLabel = tuple  # ((stabilizer elements...), point of the base)


def atom_label(group: FiniteGroup, h: Sequence[int], base: GSet, x: int) -> AtomLabel:
    """Canonical label of the transitive slice with stabilizer h over x."""
    hs = frozenset(h)
    best = None
    for g in group.elements():
        ginv = group.inv(g)
        conj = tuple(sorted(group.op(group.op(g, a), ginv) for a in hs))
        cand = (conj, base.act(g, x))
        if best is None or cand < best:
            best = cand
    return best


def atoms(base: GSet) -> tuple[AtomLabel, ...]:
    """Iso classes of transitive G-sets over the base, canonically sorted."""
    group = base.group
    out = set()
    for x in base.points():
        stab = frozenset(stabilizer(base, x))
        for h in subgroups(group):
            if h <= stab:
                out.add(atom_label(group, h, base, x))
    return tuple(sorted(out))


def atom_slice(base: GSet, label: AtomLabel) -> SliceObject:
    """The canonical representative slice of an atom: cosets of its stabilizer."""
    group = base.group
    h, x0 = frozenset(label[0]), label[1]
    seen = set()
    elems = []
    for g in group.elements():
        c = tuple(sorted(group.op(g, a) for a in h))
        if c not in seen:
            seen.add(c)
            elems.append(c)
    built = build_gset(group, elems,
                       lambda g, c: tuple(sorted(group.op(g, a) for a in c)))
    table = tuple(base.act(min(c), x0) for c in built.elems)
    return SliceObject(GMap(built.gset, base, table))


def vectorize_slice(a: SliceObject, gens: Optional[tuple[AtomLabel, ...]] = None) -> tuple[int, ...]:
    """Atom-count vector of a slice over the generator list of its base."""
    if gens is None:
        gens = atoms(a.base)
    counts = {g: 0 for g in gens}
    total, arrow = a.total, a.arrow
    for orb in orbits(total):
        p = orb[0]
        lab = atom_label(total.group, stabilizer(total, p), a.base, arrow.table[p])
        if lab not in counts:
            raise InvalidStructure("slice decomposes outside the generator list")
        counts[lab] += 1
    return tuple(counts[g] for g in gens)


def slice_from_labels(base: GSet, labels: Sequence[AtomLabel]) -> SliceObject:
    """Canonical multi-orbit slice with the given atom labels (with multiplicity)."""
    group = base.group
    elems = []
    for i, lab in enumerate(labels):
        h = frozenset(lab[0])
        seen = set()
        for g in group.elements():
            c = tuple(sorted(group.op(g, a) for a in h))
            if c not in seen:
                seen.add(c)
                elems.append((i, c))
    built = build_gset(group, elems,
                       lambda g, e: (e[0], tuple(sorted(group.op(g, a) for a in e[1]))))
    table = tuple(base.act(min(c), labels[i][1]) for (i, c) in built.elems)
    return SliceObject(GMap(built.gset, base, table))


def canonical_slice(a: SliceObject) -> SliceObject:
    """The canonical representative of the iso class of a slice."""
    labels = []
    for orb in orbits(a.total):
        p = orb[0]
        labels.append(atom_label(a.total.group, stabilizer(a.total, p),
                                 a.base, a.arrow.table[p]))
    return slice_from_labels(a.base, tuple(sorted(labels)))


# ---------------------------------------------------------------------------
# commutative monoid spec
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CommMonoid:
    name: str
    add: Callable = field(compare=False)
    zero: object = 0
    sample_elements: tuple = (0, 1, 2)


def vector_monoid(n: int) -> CommMonoid:
    zero = (0,) * n
    samples = (zero, tuple(1 for _ in range(n)), tuple(range(n)))
    return CommMonoid(f"N^{n}", lambda a, b: tuple(x + y for x, y in zip(a, b)),
                      zero, samples)


def check_comm_monoid(m: CommMonoid) -> Report:
    xs = m.sample_elements
    checks = [
        Check("commutativity", all(m.add(a, b) == m.add(b, a) for a in xs for b in xs)),
        Check("associativity", all(m.add(m.add(a, b), c) == m.add(a, m.add(b, c))
                                   for a in xs for b in xs for c in xs)),
        Check("unit", all(m.add(a, m.zero) == a for a in xs)),
    ]
    return Report(f"comm-monoid:{m.name}", tuple(checks))


# ---------------------------------------------------------------------------
# Mackey functors
# ---------------------------------------------------------------------------

class MackeyFunctor:
    """Interface: value generators, restriction and transfer matrices."""

    name: str = "abstract"

    def value_gens(self, x: GSet) -> tuple:
        raise NotImplementedError

    def res_matrix(self, f: GMap) -> Matrix:
        """Linear map value(cod f) -> value(dom f)."""
        raise NotImplementedError

    def tr_matrix(self, u: GMap) -> Matrix:
        """Linear map value(dom u) -> value(cod u)."""
        raise NotImplementedError

    def value_monoid(self, x: GSet) -> CommMonoid:
        return vector_monoid(len(self.value_gens(x)))


class BurnsideMackey(MackeyFunctor):
    """Free commutative monoid on the atoms of each G-set."""

    def __init__(self, group: FiniteGroup, rclass: MorphismClass = ALL_MAPS):
        self.group = group
        self.rclass = rclass
        self.name = f"burnside[{group.name}]"

    def value_gens(self, x: GSet) -> tuple:
        return atoms(x)

    def res_matrix(self, f: GMap) -> Matrix:
        src = self.value_gens(f.cod)
        tgt = self.value_gens(f.dom)
        rows = tuple(vectorize_slice(delta(f, atom_slice(f.cod, g)), tgt) for g in src)
        return lin_map(rows, len(src), len(tgt))

    def tr_matrix(self, u: GMap) -> Matrix:
        self.rclass.require(u, "transfer leg")
        src = self.value_gens(u.dom)
        tgt = self.value_gens(u.cod)
        rows = tuple(vectorize_slice(sigma(u, atom_slice(u.dom, g)), tgt) for g in src)
        return lin_map(rows, len(src), len(tgt))


class FixedPointMackey(MackeyFunctor):
    """Equivariant functions into natural vectors indexed by a coordinate G-set.

    value(X) is free on the orbits of X x coords; restriction precomposes,
    transfer sums a function over the fibers.
    """

    def __init__(self, group: FiniteGroup, coords: Optional[GSet] = None):
        self.group = group
        self.coords = coords if coords is not None else terminal_gset(group)
        self.name = f"fixed-point[{group.name},k={self.coords.size}]"

    def _gens(self, x: GSet):
        pr = product(x, self.coords)
        return pr, orbits(pr.prod)

    def value_gens(self, x: GSet) -> tuple:
        pr, orbs = self._gens(x)
        return tuple(pr.elems[o[0]] for o in orbs)

    def res_matrix(self, f: GMap) -> Matrix:
        prb, orbs_b = self._gens(f.cod)
        pra, orbs_a = self._gens(f.dom)
        orbit_of_b = {}
        for i, o in enumerate(orbs_b):
            for p in o:
                orbit_of_b[p] = i
        rows = []
        for i, _ in enumerate(orbs_b):
            row = [0] * len(orbs_a)
            for j, oa in enumerate(orbs_a):
                a_pt, k = pra.elems[oa[0]]
                if orbit_of_b[prb.index_of((f.table[a_pt], k))] == i:
                    row[j] = 1
            rows.append(tuple(row))
        return lin_map(rows, len(orbs_b), len(orbs_a))

    def tr_matrix(self, u: GMap) -> Matrix:
        pra, orbs_a = self._gens(u.dom)
        prb, orbs_b = self._gens(u.cod)
        orbit_of_a = {}
        for i, o in enumerate(orbs_a):
            for p in o:
                orbit_of_a[p] = i
        rows = []
        for i, _ in enumerate(orbs_a):
            row = [0] * len(orbs_b)
            for j, ob in enumerate(orbs_b):
                b_pt, k = prb.elems[ob[0]]
                row[j] = sum(1 for a in u.dom.points()
                             if u.table[a] == b_pt
                             and orbit_of_a[pra.index_of((a, k))] == i)
            rows.append(tuple(row))
        return lin_map(rows, len(orbs_a), len(orbs_b))


# ---------------------------------------------------------------------------
# evaluation and law checks
# ---------------------------------------------------------------------------

def eval_span(m: MackeyFunctor, p: Span,
              rclass: MorphismClass = ALL_MAPS) -> Matrix:
    """Matrix of the span action value(src) -> value(tgt): restrict, then transfer."""
    rclass.require(p.left, "span left leg")
    return mat_compose(m.tr_matrix(p.right), m.res_matrix(p.left))


def check_functoriality(m: MackeyFunctor, p: Span, q: Span,
                        rclass: MorphismClass = ALL_MAPS) -> Report:
    comp = compose_spans(p, q, rclass)
    lhs = eval_span(m, comp, rclass)
    rhs = mat_compose(eval_span(m, q, rclass), eval_span(m, p, rclass))
    ok = mat_equal(lhs, rhs)
    return Report(f"mackey-functoriality:{m.name}",
                  (Check("composite-matrix", ok,
                         "" if ok else f"{lhs.rows} != {rhs.rows}"),))


def check_double_coset(m: MackeyFunctor, f: GMap, g: GMap) -> Report:
    """Exact exchange of transfer and restriction across a pullback square."""
    from .finact import pullback
    pb = pullback(f, g)
    lhs = mat_compose(m.tr_matrix(pb.proj2), m.res_matrix(pb.proj1))
    rhs = mat_compose(m.res_matrix(g), m.tr_matrix(f))
    ok = mat_equal(lhs, rhs)
    return Report(f"double-coset:{m.name}", (Check("exchange", ok),))


def check_additivity(m: MackeyFunctor, x: GSet, y: GSet) -> Report:
    """value(X+Y) splits as the product of values, by restriction both ways."""
    cop = coproduct(x, y)
    r1, r2 = m.res_matrix(cop.inj1), m.res_matrix(cop.inj2)
    t1, t2 = m.tr_matrix(cop.inj1), m.tr_matrix(cop.inj2)
    n_sum = len(m.value_gens(cop.sum))
    n_x, n_y = len(m.value_gens(x)), len(m.value_gens(y))
    total = mat_add(mat_compose(t1, r1), mat_compose(t2, r2))
    checks = [Check("sum-recovers", mat_equal(total, mat_identity(n_sum)))]
    checks.append(Check("x-component", mat_equal(mat_compose(r1, t1), mat_identity(n_x))))
    checks.append(Check("y-component", mat_equal(mat_compose(r2, t2), mat_identity(n_y))))
    checks.append(Check("cross-vanishes",
                        all(v == 0 for row in mat_compose(r2, t1).rows for v in row)
                        and all(v == 0 for row in mat_compose(r1, t2).rows for v in row)))
    return Report(f"additivity:{m.name}", tuple(checks))


# ---------------------------------------------------------------------------
# the Burnside multiplication table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BurnsideTable:
    group_name: str
    atom_names: tuple[str, ...]
    atom_sizes: tuple[int, ...]
    entries: tuple[tuple[tuple[int, ...], ...], ...]  # entries[i][j] over atoms

    def render_text(self) -> str:
        def fmt(vec):
            parts = [f"{c}{n}" if c != 1 else n
                     for c, n in zip(vec, self.atom_names) if c]
            return "+".join(parts) if parts else "0"

        cells = [[fmt(self.entries[i][j]) for j in range(len(self.atom_names))]
                 for i in range(len(self.atom_names))]
        width = max(len(n) for n in self.atom_names)
        width = max(width, max(len(c) for row in cells for c in row))
        head = " " * (width + 2) + "  ".join(n.rjust(width) for n in self.atom_names)
        lines = [f"Burnside ring of {self.group_name} "
                 f"({len(self.atom_names)} transitive actions)", head]
        for i, name in enumerate(self.atom_names):
            lines.append(name.rjust(width) + " |" +
                         "  ".join(c.rjust(width) for c in cells[i]))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "group": self.group_name,
            "atoms": [{"name": n, "size": s}
                      for n, s in zip(self.atom_names, self.atom_sizes)],
            "table": [[list(v) for v in row] for row in self.entries],
        }


def _atom_names(group: FiniteGroup, labs: Sequence[AtomLabel]) -> tuple[str, ...]:
    sizes = [group.order // len(l[0]) for l in labs]
    names = []
    for i, s in enumerate(sizes):
        same = [j for j, s2 in enumerate(sizes) if s2 == s]
        if len(same) == 1:
            names.append(f"[{s}]")
        else:
            names.append(f"[{s}{chr(ord('a') + same.index(i))}]")
    return tuple(names)


def burnside_table(group: FiniteGroup) -> BurnsideTable:
    """Multiplication table of the Burnside ring via actual products of actions."""
    pt = terminal_gset(group)
    labs = atoms(pt)
    reps = [atom_slice(pt, l) for l in labs]
    entries = []
    for a in reps:
        row = []
        for b in reps:
            pr = product(a.total, b.total)
            row.append(vectorize_slice(
                SliceObject(GMap(pr.prod, pt, (0,) * pr.prod.size)), labs))
        entries.append(tuple(row))
    sizes = tuple(r.total.size for r in reps)
    return BurnsideTable(group.name, _atom_names(group, labs), sizes, tuple(entries))


def burnside_table_bruteforce(group: FiniteGroup) -> BurnsideTable:
    """Independent route: raw pair enumeration with a union-find orbit count.

    Builds each product of transitive actions as a plain set of coset pairs,
    partitions it into orbits by union-find, and classifies each orbit by
    the conjugacy class of a directly computed point stabilizer.  Shares no
    code with the slice machinery above.
    """
    pt = terminal_gset(group)
    labs = atoms(pt)
    reps = [atom_slice(pt, l) for l in labs]
    class_of = {tuple(sorted(l[0])): i for i, l in enumerate(labs)}

    def orbit_classes(x: GSet, y: GSet) -> list[int]:
        n = x.size * y.size
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i, j):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)

        for a in range(x.size):
            for b in range(y.size):
                i = a * y.size + b
                for g in group.elements():
                    union(i, x.act(g, a) * y.size + y.act(g, b))
        out = []
        for root in sorted({find(i) for i in range(n)}):
            a, b = divmod(root, y.size)
            stab = frozenset(g for g in group.elements()
                             if x.act(g, a) == a and y.act(g, b) == b)
            out.append(class_of[subgroup_class_key(group, stab)])
        return out

    entries = []
    for ra in reps:
        row = []
        for rb in reps:
            vec = [0] * len(labs)
            for c in orbit_classes(ra.total, rb.total):
                vec[c] += 1
            row.append(tuple(vec))
        entries.append(tuple(row))
    sizes = tuple(r.total.size for r in reps)
    return BurnsideTable(group.name, _atom_names(group, labs), sizes, tuple(entries))


def burnside_table_double_cosets(group: FiniteGroup) -> BurnsideTable:
    """Third route: the double-coset expansion of products of coset actions."""
    pt = terminal_gset(group)
    labs = atoms(pt)
    class_of = {tuple(sorted(l[0])): i for i, l in enumerate(labs)}
    entries = []
    for la in labs:
        h = frozenset(la[0])
        row = []
        for lb in labs:
            k = frozenset(lb[0])
            vec = [0] * len(labs)
            for coset in double_cosets(group, h, k):
                g = min(coset)
                ginv = group.inv(g)
                conj = frozenset(group.op(group.op(g, a), ginv) for a in k)
                vec[class_of[subgroup_class_key(group, h & conj)]] += 1
            row.append(tuple(vec))
        entries.append(tuple(row))
    sizes = tuple(group.order // len(l[0]) for l in labs)
    return BurnsideTable(group.name, _atom_names(group, labs), sizes, tuple(entries))


# ---------------------------------------------------------------------------
# external box pairing
# ---------------------------------------------------------------------------

@dataclass
class BoxPairing:
    """Kronecker pairing of two functors' restrictions along a slice over X x Y."""

    m: MackeyFunctor
    n: MackeyFunctor
    a: GMap  # S -> X
    b: GMap  # S -> Y
    res_m: Matrix
    res_n: Matrix
    row_gens: tuple
    col_gens: tuple

    def pair(self, mv: Sequence[int], nv: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        from .util_linear import mat_apply
        rm = mat_apply(self.res_m, tuple(mv))
        rn = mat_apply(self.res_n, tuple(nv))
        return tuple(tuple(x * y for y in rn) for x in rm)


def box_product(m: MackeyFunctor, n: MackeyFunctor, s: SliceObject, pr) -> BoxPairing:
    """Pair two free-valued functors along the two projections of a slice over X x Y.

    pr is the product diagram the slice lives over; its composites with the
    slice arrow restrict each functor to the slice's total space, and
    elements pair by the Kronecker product of the restricted vectors.
    """
    if s.base != pr.prod:
        raise BoundaryMismatch("slice is not over the given product")
    a = compose_gmaps(pr.proj1, s.arrow)
    b = compose_gmaps(pr.proj2, s.arrow)
    return BoxPairing(m, n, a, b, m.res_matrix(a), n.res_matrix(b),
                      m.value_gens(s.total), n.value_gens(s.total))
