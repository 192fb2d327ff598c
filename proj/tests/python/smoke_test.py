"""Smoke test for the _kdclique extension module."""
import math
import sys

try:
    import kdclique as kdc
except ImportError:
    import _kdclique as kdc

import numpy as np


def main():
    # Densities and lifts.
    plan = kdc.make_clique_plan([2, 3], 1)
    w = np.ones((6, 6))
    assert abs(kdc.clique_density(w, [0, 1, 2]) - 3.0) < 1e-12
    lift = kdc.lift_clique(plan)
    assert abs(np.trace(lift) - 2.0) < 1e-12
    assert abs(kdc.clique_sum_density(w, plan) - np.sum(w * lift)) < 1e-10

    # Planted sampling is deterministic and respects the block pattern.
    w1 = kdc.sample_planted_cluster(plan, alpha=1.0, beta=0.0, seed=3)
    w2 = kdc.sample_planted_cluster(plan, alpha=1.0, beta=0.0, seed=3)
    assert np.array_equal(w1, w2)
    assert w1[0, 1] == 1.0 and w1[0, 3] == 0.0

    # Solve the ideal instance, recover exactly, and certify optimality.
    res = kdc.solve_clique_sdp(w1, 2)
    assert res.converged
    assert abs(res.objective - 5.0) < 1e-3
    assert res.residuals.max() < 1e-5
    rounded = kdc.round_clique_solution(res.x, 2)
    assert rounded is not None
    assert kdc.partitions_equal(rounded, plan)
    cert = kdc.build_clique_certificate(w1, plan, epsilon=0.1)
    rep = kdc.verify_clique_kkt(w1, plan, cert)
    assert rep.passed
    assert kdc.clique_uniqueness_holds(w1, plan)

    # Biclique path.
    bplan = kdc.make_biclique_plan([2, 2], [2, 2])
    bw = kdc.sample_planted_bicluster(bplan, alpha=1.0, beta=0.0, seed=5)
    bres = kdc.solve_biclique_sdp(bw, 2)
    assert abs(bres.objective - 4.0) < 1e-3
    brounded = kdc.round_biclique_solution(bres.x, 4, 4, 2)
    assert brounded is not None and kdc.partitions_equal(brounded, bplan)

    # Exact scalar formulas.
    assert abs(kdc.gamma_clique(0.8, 0.2, 0) - 1.2) < 1e-15
    assert abs(kdc.gamma_biclique(0.8, 0.2, 0, 4) - 0.4) < 1e-15
    x = kdc.smw_solve(1.0, np.ones(2), np.ones(2))
    assert np.allclose(x, [1.0 / 3.0, 1.0 / 3.0])

    # Oracle agrees with the solver on a tiny instance.
    small = kdc.make_clique_plan([3, 3])
    ws = kdc.sample_planted_cluster(small, alpha=0.95, beta=0.05, seed=9)
    oplan, ovalue = kdc.brute_force_densest_kdc(ws, 2)
    sres = kdc.solve_clique_sdp(ws, 2)
    assert sres.objective >= ovalue - 1e-4

    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
