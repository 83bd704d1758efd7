#!/usr/bin/env python3
"""Variational solvers against the brute-force grid oracles.

Solves the robustness and weight diagonal programs on random low-dimensional
states, prints the optimizer's certificate (the diagonal witness vector) and
its PSD feasibility margin, and cross-checks the value against an exhaustive
grid scan whose error bound is known.
"""

import numpy as np

import coherekit as ck


def one_state(d, seed):
    rho = ck.random_density(d, None, seed=seed)
    print(f"\nrandom d={d} state, seed {seed}")
    for kind in ("robustness", "weight"):
        fn = ck.c_robustness if kind == "robustness" else ck.c_weight
        res = fn(rho)
        step = 1e-3 if d == 2 else 1e-2
        oracle = ck.oracle_grid(rho, kind, step=step)
        agree = abs(res.value - oracle.value) <= oracle.error_bound + 1e-4
        print(
            f"  {kind:<11} solver {res.value:.9f}   grid {oracle.value:.9f} "
            f"(+-{oracle.error_bound:.1e}, {oracle.points} points)   "
            f"{'agree' if agree else 'DISAGREE'}"
        )
        print(
            f"              certificate {np.round(res.certificate, 6).tolist()} "
            f"feasibility {res.feasibility:.2e}"
        )


def main():
    for d, seed in ((2, 1), (2, 5), (3, 11)):
        one_state(d, seed)

    plus = ck.DensityMatrix(np.full((2, 2), 0.5))
    print("\nmaximally coherent qubit: both programs saturate at 1")
    print(f"  robustness {ck.c_robustness(plus).value:.9f}")
    print(f"  weight     {ck.c_weight(plus).value:.9f}")


if __name__ == "__main__":
    main()
