"""
Colorful Helly on the line, constructively
==========================================

With n + 1 classes of intervals whose colorful (n+1)-tuples are all
n-pierceable, some class plus one interval from every other class can be
pierced by n points. The witness is built from the longest chain of
pairwise disjoint intervals taken from distinct classes.
"""

import random
from fractions import Fraction

from boxhelly import AxisBox, ColorSystem, Family, Interval, check_all_colorful, interval_colorful_witness


def iv(a, b):
    return AxisBox((Interval(Fraction(a), Fraction(b)),))


c = ColorSystem((Family((iv(0, 1),)), Family((iv(2, 3),)), Family((iv(0, 1), iv(2, 3)))))
w = interval_colorful_witness(c, 2)
print(w.case, "r =", w.r, "class", w.class_index, "reps", w.representatives, "points", [str(p[0]) for p in w.witness])

# random systems: keep those meeting the premise, then build the witness
rng = random.Random(1)
shown = 0
while shown < 5:
    n = rng.randint(2, 4)
    classes = []
    for _ in range(n + 1):
        size = rng.randint(1, 4)
        starts = [Fraction(rng.randint(0, 40), 2) for _ in range(size)]
        classes.append(Family(tuple(iv(a, a + Fraction(rng.randint(0, 16), 2)) for a in starts)))
    c = ColorSystem(tuple(classes))
    if check_all_colorful(c, n) is not None:
        continue
    w = interval_colorful_witness(c, n)
    print(f"n={n}: {w.case:12s} class {w.class_index}, {len(w.witness)} points {[str(p[0]) for p in w.witness]}")
    shown += 1
