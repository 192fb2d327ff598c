#!/usr/bin/env python3
"""Independent cross-check of exported SDPA files on small instances.

Parses a sparse SDPA file, reconstructs the encoded semidefinite program
  max Tr(F0 Y)  s.t.  Tr(Fi Y) = c_i,  Y block-diagonal psd,
and solves it with scipy (SLSQP over Cholesky factors, multistart). The
optimum should match `kdclique solve` on the originating instance to ~1e-4
for desk-size problems. Intended for manual validation, not CI:

    kdclique gen --type clique --blocks 3,3 --alpha 0.9 --beta 0.1 \
        --seed 1 -o inst.json
    kdclique export-sdpa inst.json -o inst.dat-s
    kdclique solve inst.json | grep '"objective"'
    python3 docs/sdpa_crosscheck.py inst.dat-s
"""
import sys

import numpy as np
from scipy.optimize import minimize


def parse_sdpa(path):
    lines = [ln.strip() for ln in open(path) if ln.strip()]
    i = 0
    while lines[i].startswith('"') or lines[i].startswith("*"):
        i += 1
    m_dim = int(lines[i].split()[0]); i += 1
    nblocks = int(lines[i].split()[0]); i += 1
    sizes = [int(t) for t in lines[i].split() if t.lstrip("-").isdigit()][:nblocks]
    i += 1
    c = [float(t) for t in lines[i].split()][:m_dim]
    i += 1
    mats = [[np.zeros((abs(s), abs(s))) for s in sizes] for _ in range(m_dim + 1)]
    for ln in lines[i:]:
        k, b, r, cc, v = ln.split()
        k, b, r, cc, v = int(k), int(b) - 1, int(r) - 1, int(cc) - 1, float(v)
        mats[k][b][r, cc] = v
        mats[k][b][cc, r] = v
    return m_dim, sizes, np.array(c), mats


def solve_dual(m_dim, sizes, c, mats, restarts=12, seed=0):
    # Y_b = L_b L_b^T with lower-triangular L_b.
    tri = [np.tril_indices(abs(s)) for s in sizes]
    nv = [len(t[0]) for t in tri]
    offs = np.cumsum([0] + nv)

    def blocks_of(x):
        out = []
        for b, s in enumerate(sizes):
            L = np.zeros((abs(s), abs(s)))
            L[tri[b]] = x[offs[b]:offs[b + 1]]
            out.append(L @ L.T)
        return out

    def objective(x):
        return -sum(np.tensordot(F, Y) for F, Y in zip(mats[0], blocks_of(x)))

    cons = [{
        "type": "eq",
        "fun": (lambda x, k=k: sum(np.tensordot(F, Y)
                                   for F, Y in zip(mats[k], blocks_of(x))) - c[k - 1]),
    } for k in range(1, m_dim + 1)]

    rng = np.random.default_rng(seed)
    best = -np.inf
    for _ in range(restarts):
        x0 = rng.normal(scale=0.5, size=offs[-1])
        res = minimize(objective, x0, constraints=cons, method="SLSQP",
                       options={"maxiter": 600, "ftol": 1e-12})
        feas = max(abs(con["fun"](res.x)) for con in cons)
        if res.success and feas < 1e-6:
            best = max(best, -res.fun)
    return best


def main():
    if len(sys.argv) != 2:
        print(__doc__)
        return 2
    m_dim, sizes, c, mats = parse_sdpa(sys.argv[1])
    value = solve_dual(m_dim, sizes, c, mats)
    print(f"external optimum: {value:.6f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
