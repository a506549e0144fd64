#!/usr/bin/env python3
"""Print the Burnside multiplication table of each builtin group, cross-checked
against the raw orbit-counting route and the double-coset expansion."""
import sys

from spanpoly.groups import BUILTIN_GROUPS, builtin_group
from spanpoly.mackey import (
    burnside_table,
    burnside_table_bruteforce,
    burnside_table_double_cosets,
)


def main() -> int:
    names = sys.argv[1:] or list(BUILTIN_GROUPS)
    ok = True
    for name in names:
        group = builtin_group(name)
        table = burnside_table(group)
        print(table.render_text())
        b = burnside_table_bruteforce(group)
        c = burnside_table_double_cosets(group)
        agree = table.entries == b.entries == c.entries
        ok = ok and agree
        print(f"  routes agree: {agree}\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
