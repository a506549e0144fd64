"""Deterministic random generators for sample families.

Every generator takes an explicit random.Random so that a fixed seed gives
an identical sample inventory; all underlying enumerations (subgroups,
atoms, orbit representatives) are sorted.
"""
from __future__ import annotations

import random
from typing import Optional

from .finact import (
    GMap,
    GSet,
    SliceObject,
    compose_gmaps,
    coproduct,
    coset_gset,
    initial_gset,
    product,
    relabel_gset,
    stabilizer,
    terminal_gset,
)
from .groups import FiniteGroup, subgroups
from .mackey import atom_label, slice_from_labels
from .poly import Polynomial, polynomial
from .spans import Span

Rng = random.Random


def random_subgroup(rng: Rng, group: FiniteGroup) -> frozenset[int]:
    return rng.choice(list(subgroups(group)))


def random_gset(rng: Rng, group: FiniteGroup, max_size: int,
                min_orbits: int = 1) -> GSet:
    """A sum of random coset orbits within the size budget."""
    if max_size <= 0:
        return initial_gset(group)
    out: Optional[GSet] = None
    target = rng.randint(min_orbits, max(min_orbits, 3))
    for _ in range(target):
        h = random_subgroup(rng, group)
        orb = coset_gset(group, h)
        if out is not None and out.size + orb.size > max_size:
            continue
        if out is None and orb.size > max_size:
            continue
        out = orb if out is None else coproduct(out, orb).sum
    if out is None:
        out = terminal_gset(group)
    return out


def random_gset_with_fixed_point(rng: Rng, group: FiniteGroup, max_size: int) -> GSet:
    base = random_gset(rng, group, max(0, max_size - 1), min_orbits=1)
    return coproduct(base, terminal_gset(group)).sum


def random_slice(rng: Rng, base: GSet, max_size: int,
                 allow_empty: bool = True) -> SliceObject:
    """A random slice over the base, assembled from random transitive pieces."""
    labels = []
    size = 0
    n_orbits = rng.randint(0 if allow_empty else 1, 3)
    for _ in range(n_orbits):
        if base.size == 0:
            break
        x = rng.randrange(base.size)
        stab = frozenset(stabilizer(base, x))
        options = [h for h in subgroups(base.group) if h <= stab]
        h = rng.choice(options)
        orb_size = base.group.order // len(h)
        if size + orb_size > max_size:
            continue
        size += orb_size
        labels.append(atom_label(base.group, h, base, x))
    return slice_from_labels(base, tuple(sorted(labels)))


def shuffle_slice(rng: Rng, a: SliceObject) -> SliceObject:
    """An isomorphic copy of a slice with randomly relabelled total space."""
    perm = list(range(a.total.size))
    rng.shuffle(perm)
    copy, iso = relabel_gset(a.total, perm)
    inv = [0] * len(perm)
    for p, q in enumerate(perm):
        inv[q] = p
    return SliceObject(GMap(copy, a.base, tuple(a.arrow.table[inv[q]]
                                                for q in range(copy.size))))


def random_gmap(rng: Rng, x: GSet, y: GSet, tries: int = 8) -> Optional[GMap]:
    """A random equivariant map, or None when none exists."""
    from .finact import orbits, transporters
    orbs = orbits(x)
    table = [0] * x.size
    for orb in orbs:
        rep = orb[0]
        st = set(stabilizer(x, rep))
        cands = [q for q in y.points() if st <= set(stabilizer(y, q))]
        if not cands:
            return None
        q0 = rng.choice(cands)
        tr = transporters(x, orb)
        for p in orb:
            table[p] = y.act(tr[p], q0)
    return GMap(x, y, tuple(table))


def random_map_into(rng: Rng, base: GSet, max_size: int,
                    allow_empty: bool = False) -> GMap:
    return random_slice(rng, base, max_size, allow_empty=allow_empty).arrow


def random_span(rng: Rng, u: GSet, v: GSet, max_apex: int) -> Span:
    """A random span, drawn as a slice over the product composed with projections."""
    pr = product(u, v)
    s = random_slice(rng, pr.prod, max_apex)
    return Span(compose_gmaps(pr.proj1, s.arrow), compose_gmaps(pr.proj2, s.arrow))


def shuffle_span(rng: Rng, p: Span) -> Span:
    perm = list(range(p.apex.size))
    rng.shuffle(perm)
    copy, _ = relabel_gset(p.apex, perm)
    inv = [0] * len(perm)
    for a, b in enumerate(perm):
        inv[b] = a
    return Span(GMap(copy, p.src, tuple(p.left.table[inv[q]] for q in range(copy.size))),
                GMap(copy, p.tgt, tuple(p.right.table[inv[q]] for q in range(copy.size))))


def random_cospan(rng: Rng, group: FiniteGroup, max_size: int) -> tuple[GMap, GMap]:
    w = random_gset(rng, group, max_size)
    f = random_map_into(rng, w, max_size, allow_empty=False)
    g = random_map_into(rng, w, max_size, allow_empty=False)
    return f, g


def random_polynomial(rng: Rng, x: GSet, y: GSet, max_size: int,
                      tries: int = 20) -> Polynomial:
    """A random polynomial from x to y; x should contain a fixed point."""
    for _ in range(tries):
        t = random_map_into(rng, y, max_size)
        n = random_map_into(rng, t.dom, max_size)
        r = random_gmap(rng, n.dom, x)
        if r is not None:
            return polynomial(r, n, t)
    raise RuntimeError("could not sample a polynomial; give x a fixed point")


def random_trivial_polynomial(rng: Rng, x_size: int, y_size: int,
                              max_size: int, group: FiniteGroup) -> Polynomial:
    """Random polynomial over the one-point group with plain-set boundaries."""
    assert group.order == 1
    def tset(n: int) -> GSet:
        return GSet(group, n, (tuple(range(n)),))
    x, y = tset(x_size), tset(y_size)
    b = tset(rng.randint(1, max_size))
    a = tset(rng.randint(0, max_size))
    t = GMap(b, y, tuple(rng.randrange(y_size) for _ in range(b.size)))
    n = GMap(a, b, tuple(rng.randrange(b.size) for _ in range(a.size)))
    r = GMap(a, x, tuple(rng.randrange(x_size) for _ in range(a.size)))
    return Polynomial(r, n, t)
