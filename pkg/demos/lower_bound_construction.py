"""
The 2-piercing lower-bound system
=================================

Builds the 3d - 1 color classes whose colorful tuples should all be
2-pierceable while no class is, checks both claims exhaustively and draws
the planar case.

The literal coordinates fail for d >= 2: some colorful tuples contain three
boxes that are pairwise disjoint along one axis. Widening B[2i,3] to
[-5/2, -1] repairs the system, and the table-driven witnesses then hit
every tuple.
"""

import sys
from pathlib import Path

from boxhelly import colorful_violations, gen_lowerbound_2piercing, is_pierceable, witness_from_tables
from boxhelly.constructions import all_choices
from boxhelly.svg import render_svg

for variant in ("paper", "amended"):
    print(f"-- {variant} coordinates")
    for d in (1, 2, 3):
        lb = gen_lowerbound_2piercing(d, variant)
        classes_ok = not any(is_pierceable(c, 2) for c in lb.system.classes)
        bad = list(colorful_violations(lb.system, 2))
        print(f"d={d}: no class 2-pierceable: {classes_ok}; failing tuples {len(bad)}/{3 ** (3 * d - 1)}",
              f"first {bad[0]}" if bad else "")

# the offending trio on axis 1 in the literal system
lb = gen_lowerbound_2piercing(2)
for k, c in [(1, 2), (2, 3), (5, 3)]:
    print(f"B[{k},{c}] axis 1:", lb.box(k, c).sides[0])

# table witnesses on the amended system
lb = gen_lowerbound_2piercing(2, "amended")
hits = sum(1 for choice in all_choices(lb) if witness_from_tables(lb, choice))
print("table witnesses validated:", hits, "of", 3 ** 5)

choice = (1, 1, 0, 0, 1)
x, y = witness_from_tables(lb, choice)
print("tuple", choice, "-> X =", tuple(map(str, x)), "Y =", tuple(map(str, y)))

out = Path(sys.argv[1] if len(sys.argv) > 1 else "lower_bound_d2.svg")
out.write_text(render_svg(lb.system, witness=[x, y], title="2-piercing lower bound, d = 2"))
print("wrote", out)
