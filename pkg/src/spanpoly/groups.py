"""Finite groups given by full multiplication tables.

Elements are the indices 0..order-1 with 0 the identity whenever a group is
built through the constructors here.  A generators-as-permutations input
format is compiled down to a table, so everything downstream only ever sees
tables.  Scale target is desk-size groups (order <= ~24).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InvalidStructure


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group as a multiplication table.

    mult[a][b] is the product a*b.  identity and inverse are stored rather
    than recomputed; validate() rechecks every law.
    """

    name: str
    mult: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    generators: tuple[int, ...] = field(default=())

    @property
    def order(self) -> int:
        return len(self.mult)

    def op(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def elements(self) -> range:
        return range(self.order)

    def validate(self) -> None:
        n = self.order
        if n == 0:
            raise InvalidStructure("group must be nonempty")
        if len(self.inverse) != n or any(len(row) != n for row in self.mult):
            raise InvalidStructure("multiplication table is not square")
        e = self.identity
        for a in range(n):
            if self.mult[e][a] != a or self.mult[a][e] != a:
                raise InvalidStructure(f"identity law fails at element {a}")
            if self.mult[a][self.inverse[a]] != e or self.mult[self.inverse[a]][a] != e:
                raise InvalidStructure(f"inverse law fails at element {a}")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]]:
                        raise InvalidStructure(f"associativity fails at ({a},{b},{c})")


def _table_to_group(name: str, mult: Sequence[Sequence[int]],
                    generators: tuple[int, ...] = ()) -> FiniteGroup:
    n = len(mult)
    mult_t = tuple(tuple(int(x) for x in row) for row in mult)
    identity = None
    for e in range(n):
        if all(mult_t[e][a] == a and mult_t[a][e] == a for a in range(n)):
            identity = e
            break
    if identity is None:
        raise InvalidStructure("table has no identity element")
    inverse = []
    for a in range(n):
        inv = [b for b in range(n) if mult_t[a][b] == identity]
        if len(inv) != 1:
            raise InvalidStructure(f"element {a} has no unique inverse")
        inverse.append(inv[0])
    g = FiniteGroup(name, mult_t, identity, tuple(inverse), generators)
    g.validate()
    return g


def group_from_table(name: str, mult: Sequence[Sequence[int]]) -> FiniteGroup:
    return _table_to_group(name, mult)


def group_from_permutations(name: str, gens: Sequence[Sequence[int]]) -> FiniteGroup:
    """Compile permutation generators (images lists on 0..n-1) to a table.

    The generated permutation group is enumerated by closure; the identity
    gets index 0 and the given generators keep stable indices.
    """
    if not gens:
        raise InvalidStructure("need at least one generator (use trivial_group() instead)")
    deg = len(gens[0])
    perms = []
    for p in gens:
        if sorted(p) != list(range(deg)):
            raise InvalidStructure(f"{p!r} is not a permutation of 0..{deg - 1}")
        perms.append(tuple(p))
    ident = tuple(range(deg))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for p in perms:
                q = tuple(p[a[i]] for i in range(deg))  # p after a
                if q not in seen:
                    seen.add(q)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    elems = [ident] + sorted(e for e in elems if e != ident)
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    mult = [[index[tuple(elems[a][elems[b][i]] for i in range(deg))] for b in range(n)]
            for a in range(n)]
    gen_idx = tuple(index[p] for p in perms)
    return _table_to_group(name, mult, gen_idx)


def trivial_group() -> FiniteGroup:
    return _table_to_group("triv", [[0]])


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidStructure("cyclic group needs n >= 1")
    if n == 1:
        return trivial_group()
    mult = [[(a + b) % n for b in range(n)] for a in range(n)]
    return _table_to_group(f"C{n}", mult, generators=(1,))


def symmetric_group(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidStructure("symmetric group needs n >= 1")
    if n == 1:
        return trivial_group()
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return group_from_permutations(f"S{n}", gens)


BUILTIN_GROUPS = {
    "triv": trivial_group,
    "C2": lambda: cyclic_group(2),
    "C3": lambda: cyclic_group(3),
    "C4": lambda: cyclic_group(4),
    "S3": lambda: symmetric_group(3),
    "S4": lambda: symmetric_group(4),
}


def builtin_group(name: str) -> FiniteGroup:
    try:
        return BUILTIN_GROUPS[name]()
    except KeyError:
        raise InvalidStructure(f"unknown builtin group {name!r}") from None


# ---------------------------------------------------------------------------
# subgroup machinery
# ---------------------------------------------------------------------------

def _closure(g: FiniteGroup, seed: Iterable[int]) -> frozenset[int]:
    cur = set(seed) | {g.identity}
    while True:
        new = {g.op(a, b) for a in cur for b in cur} - cur
        if not new:
            return frozenset(cur)
        cur |= new


@lru_cache(maxsize=None)
def subgroups(g: FiniteGroup) -> tuple[frozenset[int], ...]:
    """All subgroups, found by closing each known subgroup with one extra element."""
    found = {_closure(g, ())}
    frontier = list(found)
    while frontier:
        h = frontier.pop()
        for x in g.elements():
            if x in h:
                continue
            k = _closure(g, h | {x})
            if k not in found:
                found.add(k)
                frontier.append(k)
    return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))


def conjugate_subgroup(g: FiniteGroup, h: frozenset[int], x: int) -> frozenset[int]:
    xinv = g.inv(x)
    return frozenset(g.op(g.op(x, a), xinv) for a in h)


def subgroup_class_key(g: FiniteGroup, h: Iterable[int]) -> tuple[int, ...]:
    """Canonical label for the conjugacy class of a subgroup."""
    hs = frozenset(h)
    return min(tuple(sorted(conjugate_subgroup(g, hs, x))) for x in g.elements())


@lru_cache(maxsize=None)
def subgroup_class_reps(g: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """One canonical representative per conjugacy class of subgroups, sorted."""
    return tuple(sorted({subgroup_class_key(g, h) for h in subgroups(g)},
                        key=lambda t: (len(t), t)))


def double_cosets(g: FiniteGroup, h: frozenset[int], k: frozenset[int]) -> list[frozenset[int]]:
    """Partition of the group into H\\-g-/K double cosets."""
    remaining = set(g.elements())
    out = []
    while remaining:
        x = min(remaining)
        coset = frozenset(g.op(g.op(a, x), b) for a in h for b in k)
        out.append(coset)
        remaining -= coset
    return out
