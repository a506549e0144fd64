"""Shared construction helpers for the tests."""
from spanpoly.finact import GMap, GSet


def tset(group, n: int) -> GSet:
    """Plain finite set as a trivial-group action."""
    assert group.order == 1
    return GSet(group, n, (tuple(range(n)),))


def tmap(group, dom_size: int, cod_size: int, table) -> GMap:
    return GMap(tset(group, dom_size), tset(group, cod_size), tuple(table))
