"""
Testing clusterability by sampling
==================================

A point set is (n, B)-clusterable when n translates of the box B cover it.
The tester samples small subsets and checks each exactly; a failing subset
is a certificate that the whole set is not clusterable.
"""

from fractions import Fraction

from boxhelly import calibrate_gamma, cluster_test, distance_to_clusterable, gen_cluster_instance
from boxhelly.clustering import trial_count

far = gen_cluster_instance("far", d=1, n=2, m=250, seed=7, epsilon=Fraction(1, 5))
ok = gen_cluster_instance("coverable", d=1, n=2, m=250, seed=7)

small = gen_cluster_instance("far", d=1, n=2, m=20, seed=7, epsilon=Fraction(1, 5))
print("points to delete in a 20-point copy:", distance_to_clusterable(small.points, small.base, 2))

gamma = calibrate_gamma(far, 10_000, seed=0)
print(f"calibrated gamma {gamma} ~ {float(gamma):.4f}; trials at delta=1/10: {trial_count(gamma, far.delta)}")

rejected = sum(cluster_test(far, seed, gamma=gamma).verdict == "reject" for seed in range(200))
print("far instance rejected in", rejected, "of 200 runs")

rep = cluster_test(far, 0, gamma=gamma)
print("one rejection:", rep.verdict, "after", rep.trials_run, "trials, witness", [str(p[0]) for p in rep.witness])

accepted = sum(cluster_test(ok, seed, gamma=gamma).verdict == "accept" for seed in range(200))
print("coverable instance accepted in", accepted, "of 200 runs")
