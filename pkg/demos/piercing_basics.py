"""
Piercing boxes with few points
==============================

Decide whether a family of axis-parallel boxes can be hit by n points,
with exact rational coordinates throughout.
"""

from fractions import Fraction

from boxhelly import AxisBox, Family, Interval, is_pierceable, min_stab_intervals, pierce_n


def box(*sides):
    return AxisBox(tuple(Interval(Fraction(a), Fraction(b)) for a, b in sides))


# three rectangles, the last one far to the right
fam = Family((box((0, 2), (0, 2)), box((1, 3), (1, 3)), box((10, 11), (0, 1))))

one = pierce_n(fam, 1)
print("1 point :", one.verdict, "- disjoint pair", one.violation)

two = pierce_n(fam, 2)
print("2 points:", two.verdict, "- witness", [tuple(map(str, p)) for p in two.witness])

# decimals given as strings stay exact
thin = box(("0.25", "0.75"), ("1.25", "1.5"))
print("exact sides:", " x ".join(map(str, thin.sides)))

# on the line the greedy sweep gives the piercing number directly
intervals = Family(tuple(box((a, b)) for a, b in [(0, 1), (Fraction(1, 2), 2), (Fraction(3, 2), 3), (5, 6)]))
count, witness = min_stab_intervals(intervals)
print("intervals need", count, "points:", [str(p[0]) for p in witness])
assert is_pierceable(intervals, count) and not is_pierceable(intervals, count - 1)
