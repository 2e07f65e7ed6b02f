"""
Fractions of pierceable tuples
==============================

Measures alpha (the fraction of t-subsets that are n-pierceable) exactly
and by sampling, and beta (the largest n-pierceable share of the family).
The bound linking them is not constructive, so only measured pairs are
shown.
"""

from fractions import Fraction

from boxhelly import (
    AxisBox,
    Family,
    Interval,
    find_complete_missing_tuple,
    fraction_pierceable,
    gen_lowerbound_2piercing,
    max_pierceable_subfamily,
)

flat = gen_lowerbound_2piercing(2).system.flatten()
alpha = fraction_pierceable(flat, 6, 2)
print("exact alpha over C(15, 6) subsets:", alpha, f"= {float(alpha):.4f}")

for seed in range(3):
    est = fraction_pierceable(flat, 6, 2, samples=10_000, seed=seed)
    print(f"  seed {seed}: {est.hits}/{est.samples} = {float(est.estimate):.4f}")

sub, witness = max_pierceable_subfamily(flat, 2)
print("beta =", Fraction(len(sub), len(flat)), "with labels", [flat.labels[i] for i in sub])


def box(*sides):
    return AxisBox(tuple(Interval(Fraction(a), Fraction(b)) for a, b in sides))


# two vertical bars and two horizontal bars: {A,B} and {C,D} are missing
# edges, and every cross pair meets
plus = Family((box((0, 1), (0, 3)), box((2, 3), (0, 3)), box((0, 3), (0, 1)), box((0, 3), (2, 3))))
print("plus sign:", find_complete_missing_tuple(plus, 2, 1, 2))
