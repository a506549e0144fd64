"""Workspace files: named groups, G-sets, maps, spans, polynomials, classes.

A workspace is a directory of JSON documents.  Each document holds one
entry or a list of entries; an entry is an object with a "kind" field
(group | gset | gmap | span | poly | class), a "name", and kind-specific
fields.  References between entries are by name.  Groups may be given by a
full multiplication table or by permutation generators; G-set actions may
be given as a full table or per generator.

Builtin names (triv, C2, C3, C4, S3 and derived point/regular objects) are
preloaded so the command-line tools work without any files.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Optional

from .calib import MorphismClass, whitelist_class
from .errors import WorkspaceError
from .finact import (
    GMap,
    GSet,
    gmap,
    gset,
    identity_gmap,
    regular_gset,
    terminal_gset,
    unique_to_terminal,
)
from .groups import (
    BUILTIN_GROUPS,
    FiniteGroup,
    group_from_permutations,
    group_from_table,
)
from .poly import Polynomial, polynomial
from .spans import Span, span


@dataclass
class Workspace:
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    gsets: dict[str, GSet] = field(default_factory=dict)
    gmaps: dict[str, GMap] = field(default_factory=dict)
    spans: dict[str, Span] = field(default_factory=dict)
    polys: dict[str, Polynomial] = field(default_factory=dict)
    classes: dict[str, MorphismClass] = field(default_factory=dict)

    def group(self, name: str) -> FiniteGroup:
        return self._get(self.groups, name, "group")

    def gset(self, name: str) -> GSet:
        return self._get(self.gsets, name, "gset")

    def gmap(self, name: str) -> GMap:
        return self._get(self.gmaps, name, "gmap")

    def span(self, name: str) -> Span:
        return self._get(self.spans, name, "span")

    def poly(self, name: str) -> Polynomial:
        return self._get(self.polys, name, "poly")

    def morphism_class(self, name: str) -> MorphismClass:
        from .calib import BUILTIN_CLASSES
        if name in self.classes:
            return self.classes[name]
        if name in BUILTIN_CLASSES:
            return BUILTIN_CLASSES[name]
        raise WorkspaceError(f"unknown class {name!r}")

    @staticmethod
    def _get(table: dict, name: str, kind: str):
        try:
            return table[name]
        except KeyError:
            known = ", ".join(sorted(table)) or "(none)"
            raise WorkspaceError(f"unknown {kind} {name!r}; known: {known}") from None


def builtin_workspace() -> Workspace:
    ws = Workspace()
    for gname, ctor in BUILTIN_GROUPS.items():
        g = ctor()
        ws.groups[gname] = g
        pt = terminal_gset(g)
        reg = regular_gset(g)
        ws.gsets[f"{gname}.pt"] = pt
        ws.gsets[f"{gname}.regular"] = reg
        to_pt = unique_to_terminal(reg)
        ws.gmaps[f"{gname}.regular_to_pt"] = to_pt
        ws.gmaps[f"{gname}.id_pt"] = identity_gmap(pt)
        ws.spans[f"{gname}.free-span"] = Span(to_pt, to_pt)
        ws.spans[f"{gname}.id-span-pt"] = Span(identity_gmap(pt), identity_gmap(pt))
        ws.polys[f"{gname}.free-poly"] = Polynomial(to_pt, identity_gmap(reg), to_pt)
    return ws


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _need(obj: dict, key: str, where: str):
    if key not in obj:
        raise WorkspaceError(f"{where}: missing field {key!r}")
    return obj[key]


def _parse_group(obj: dict) -> FiniteGroup:
    name = _need(obj, "name", "group entry")
    if "mult" in obj:
        return group_from_table(name, obj["mult"])
    if "generators" in obj:
        return group_from_permutations(name, obj["generators"])
    raise WorkspaceError(f"group {name!r}: need 'mult' or 'generators'")


def _action_from_generators(group: FiniteGroup, size: int,
                            gen_perms: list[list[int]]) -> list[list[int]]:
    if len(gen_perms) != len(group.generators):
        raise WorkspaceError("action_by_generator length does not match the group's generators")
    known: dict[int, list[int]] = {group.identity: list(range(size))}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for gen_idx, perm in zip(group.generators, gen_perms):
                h = group.op(gen_idx, g)
                if h not in known:
                    known[h] = [perm[v] for v in known[g]]
                    nxt.append(h)
        frontier = nxt
    if len(known) != group.order:
        raise WorkspaceError("generators do not generate the whole group")
    return [known[g] for g in group.elements()]


def _parse_gset(obj: dict, ws: Workspace) -> GSet:
    name = _need(obj, "name", "gset entry")
    group = ws.group(_need(obj, "group", f"gset {name!r}"))
    size = int(_need(obj, "size", f"gset {name!r}"))
    if "action" in obj:
        action = obj["action"]
    elif "action_by_generator" in obj:
        if not group.generators:
            raise WorkspaceError(
                f"gset {name!r}: group {group.name!r} has no designated generators")
        action = _action_from_generators(group, size, obj["action_by_generator"])
    else:
        raise WorkspaceError(f"gset {name!r}: need 'action' or 'action_by_generator'")
    try:
        return gset(group, size, action)
    except Exception as exc:
        raise WorkspaceError(f"gset {name!r}: {exc}") from exc


def _parse_gmap(obj: dict, ws: Workspace) -> GMap:
    name = _need(obj, "name", "gmap entry")
    dom = ws.gset(_need(obj, "dom", f"gmap {name!r}"))
    cod = ws.gset(_need(obj, "cod", f"gmap {name!r}"))
    try:
        return gmap(dom, cod, _need(obj, "table", f"gmap {name!r}"))
    except Exception as exc:
        raise WorkspaceError(f"gmap {name!r}: {exc}") from exc


def load_entries(entries: list[dict], ws: Optional[Workspace] = None) -> Workspace:
    """Resolve a list of entries into a workspace, in dependency order."""
    ws = ws if ws is not None else builtin_workspace()
    by_kind: dict[str, list[dict]] = {}
    for e in entries:
        if not isinstance(e, dict) or "kind" not in e:
            raise WorkspaceError(f"entry without a 'kind': {e!r}")
        by_kind.setdefault(e["kind"], []).append(e)
    unknown = set(by_kind) - {"group", "gset", "gmap", "span", "poly", "class"}
    if unknown:
        raise WorkspaceError(f"unknown entry kinds: {sorted(unknown)}")
    for e in by_kind.get("group", ()):
        ws.groups[e["name"]] = _parse_group(e)
    for e in by_kind.get("gset", ()):
        ws.gsets[e["name"]] = _parse_gset(e, ws)
    for e in by_kind.get("gmap", ()):
        ws.gmaps[e["name"]] = _parse_gmap(e, ws)
    for e in by_kind.get("span", ()):
        name = _need(e, "name", "span entry")
        left = ws.gmap(_need(e, "left", f"span {name!r}"))
        right = ws.gmap(_need(e, "right", f"span {name!r}"))
        try:
            ws.spans[name] = span(left, right,
                                  ws.morphism_class(e.get("class", "all")))
        except Exception as exc:
            raise WorkspaceError(f"span {name!r}: {exc}") from exc
    for e in by_kind.get("poly", ()):
        name = _need(e, "name", "poly entry")
        try:
            ws.polys[name] = polynomial(
                ws.gmap(_need(e, "r", f"poly {name!r}")),
                ws.gmap(_need(e, "n", f"poly {name!r}")),
                ws.gmap(_need(e, "t", f"poly {name!r}")))
        except Exception as exc:
            raise WorkspaceError(f"poly {name!r}: {exc}") from exc
    for e in by_kind.get("class", ()):
        name = _need(e, "name", "class entry")
        maps = [ws.gmap(n) for n in _need(e, "maps", f"class {name!r}")]
        ws.classes[name] = whitelist_class(
            name, maps, bool(e.get("closed_under_coproducts", False)))
    return ws


def load_dir(path: str) -> Workspace:
    if not os.path.isdir(path):
        raise WorkspaceError(f"workspace directory {path!r} does not exist")
    entries: list[dict] = []
    for fname in sorted(os.listdir(path)):
        if not fname.endswith(".json"):
            continue
        full = os.path.join(path, fname)
        try:
            with open(full, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise WorkspaceError(f"{fname}: invalid JSON ({exc})") from exc
        if isinstance(doc, list):
            entries.extend(doc)
        elif isinstance(doc, dict):
            entries.append(doc)
        else:
            raise WorkspaceError(f"{fname}: top level must be an object or a list")
    return load_entries(entries)


# ---------------------------------------------------------------------------
# serialization (self-contained objects)
# ---------------------------------------------------------------------------

def group_to_obj(g: FiniteGroup) -> dict:
    return {"name": g.name, "order": g.order, "mult": [list(r) for r in g.mult]}


def gset_to_obj(x: GSet) -> dict:
    return {"group": x.group.name, "size": x.size,
            "action": [list(r) for r in x.action]}


def gmap_to_obj(f: GMap) -> dict:
    return {"dom": gset_to_obj(f.dom), "cod": gset_to_obj(f.cod),
            "table": list(f.table)}


def span_to_obj(p: Span) -> dict:
    return {"kind": "span", "group": group_to_obj(p.group),
            "left": gmap_to_obj(p.left), "right": gmap_to_obj(p.right)}


def poly_to_obj(p: Polynomial) -> dict:
    return {"kind": "poly", "group": group_to_obj(p.group),
            "r": gmap_to_obj(p.r), "n": gmap_to_obj(p.n), "t": gmap_to_obj(p.t)}


def dump_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
