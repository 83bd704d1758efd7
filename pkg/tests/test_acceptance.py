"""Acceptance gate: one test per shipped claim, one printed line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
PASS/FAIL lines.  These tests re-run the randomized harness at the stated
trial counts and tolerances, so this module dominates the suite's runtime
(expect several minutes).
"""

import math
import time

import numpy as np

import coherekit as ck
from coherekit import verify
from coherekit.figures import rows_to_csv

SEED = verify.DEFAULT_SEED
CLOSED_LABELS = ("l1", "relent", "tsallis:0.5", "tsallis:2")
OPT_LABELS = ("robustness", "weight", "tracenorm", "geometric")


def _report(num: int, ok: bool, name: str, detail: str = ""):
    line = f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} {name}"
    if detail:
        line += f" ({detail})"
    print(line, flush=True)
    assert ok, line


def _run_ids(ids, trials=None):
    reports = [ck.run_check(cid, seed=SEED, trials=trials) for cid in ids]
    failures = sum(r.failures for r in reports)
    worst = min(r.worst_slack for r in reports)
    return reports, failures, worst


def test_criterion_01_qubit_l1_gap_identity():
    t0 = time.perf_counter()
    rep = ck.run_check("qubit-l1-gap-identity", seed=SEED, trials=10000)
    elapsed = time.perf_counter() - t0
    ok = rep.failures == 0 and elapsed < 5.0
    _report(
        1,
        ok,
        "l1 gap equals sqrt(x^2+y^2)-|x| on 10000 random qubits within 1e-12",
        f"worst dev {-rep.worst_slack:.2e}, {elapsed:.2f} s",
    )


def test_criterion_02_real_gap_nonnegative():
    closed_ids = [f"real-gap-nonneg-{m}" for m in CLOSED_LABELS]
    opt_ids = [f"real-gap-nonneg-{m}" for m in OPT_LABELS]
    # round-robin dims (2,3,4,6) x 4000 trials = 1000 states per dimension
    _, closed_fail, closed_worst = _run_ids(closed_ids, trials=4000)
    # dims (2,3) x 2000 trials = 1000 states per dimension
    _, opt_fail, opt_worst = _run_ids(opt_ids, trials=2000)
    ok = closed_fail == 0 and opt_fail == 0
    _report(
        2,
        ok,
        "measure never rises when the state is replaced by its real part",
        f"closed worst slack {closed_worst:.2e} vs -1e-9, "
        f"opt worst slack {opt_worst:.2e} vs -1e-4",
    )


def test_criterion_03_conjugation_invariance():
    general = [f"conj-invariance-{m}" for m in CLOSED_LABELS + OPT_LABELS]
    dedicated = [
        cid
        for cid in ck.all_check_ids()
        if cid.startswith(("conj-invariance-pure-", "conj-invariance-qubit-"))
    ]
    _, gen_fail, gen_worst = _run_ids(general, trials=1000)
    _, ded_fail, ded_worst = _run_ids(dedicated)
    ok = gen_fail == 0 and ded_fail == 0
    _report(
        3,
        ok,
        "every measure agrees on a state and its entrywise conjugate",
        f"general worst slack {gen_worst:.2e}, "
        f"pure/qubit worst slack {ded_worst:.2e}",
    )


def test_criterion_04_axiom_suite():
    ids = [cid for cid in ck.all_check_ids() if cid.startswith("axiom-")]
    # channel-monotonicity ids default to 1000 random incoherent channels;
    # the remaining axiom checks run at their registered counts
    _, failures, worst = _run_ids(ids)
    ok = failures == 0
    _report(
        4,
        ok,
        "faithfulness, channel/selective monotonicity, convexity, "
        "direct-sum additivity, diagonal-unitary invariance",
        f"{len(ids)} checks, worst slack {worst:.2e}",
    )


def test_criterion_05_solver_vs_oracle():
    ids = [f"solver-oracle-{m}-d{d}" for m in OPT_LABELS for d in (2, 3)]
    _, failures, worst = _run_ids(ids, trials=100)
    plus = ck.DensityMatrix(np.full((2, 2), 0.5))
    rob = ck.c_robustness(plus).value
    wt = ck.c_weight(plus).value
    rob_oracle = ck.oracle_grid(plus, "robustness", step=1e-3).value
    wt_oracle = ck.oracle_grid(plus, "weight", step=1e-3).value
    extremes_ok = abs(rob - rob_oracle) <= 2e-3 and abs(wt - wt_oracle) <= 2e-3
    ok = failures == 0 and extremes_ok
    _report(
        5,
        ok,
        "variational values match brute-force grids on 100 states per "
        "measure and dimension; maximally coherent qubit hits both extremes",
        f"worst slack {worst:.2e}, plus-state robustness {rob:.6f}, "
        f"weight {wt:.6f}",
    )


def test_criterion_06_gaussian_suite():
    grid_ids = {"gauss-coherent-gap-grid", "gauss-squeezed-gap-forms"}
    ids = [cid for cid in ck.all_check_ids() if cid.startswith("gauss-")]
    heavy = [cid for cid in ids if cid not in grid_ids]
    _, failures, worst = _run_ids(heavy, trials=1000)
    _, grid_fail, _ = _run_ids(sorted(grid_ids))
    ok = failures == 0 and grid_fail == 0
    _report(
        6,
        ok,
        "Gaussian family: gap nonnegativity and bracket split, projection "
        "entropy growth, mixing concavity, spectrum superadditivity, "
        "multi-state mixtures, channel monotonicity and conjugation",
        f"{len(heavy)} checks x 1000 trials, worst slack {worst:.2e}",
    )


def test_criterion_07_coherent_gap_grid():
    header, rows = ck.fig2_rows(steps=41)
    worst = 0.0
    for re, im, pipeline, closed in rows:
        worst = max(worst, abs(pipeline - closed))
    unit_im = ck.gr_real_gap(ck.coherent_state(1j)).gap
    ok = worst <= 1e-9 and abs(unit_im - 2.0) <= 1e-9 and len(rows) == 41 * 41
    _report(
        7,
        ok,
        "coherent-state gap grid matches its closed form; unit imaginary "
        "displacement gives exactly two bits",
        f"41x41 grid, worst dev {worst:.2e}, gap(i) = {unit_im:.12f}",
    )


def test_criterion_08_squeezed_gap_forms():
    header, rows = ck.fig3_rows(steps=41)
    worst = 0.0
    max_disc = 0.0
    for re, im, pipeline, printed, disc in rows:
        r = math.hypot(re, im)
        theta = math.atan2(im, re)
        spectral = ck.g_function(
            math.sqrt(1.0 + (math.sin(theta) * math.sinh(2.0 * r)) ** 2)
        )
        literal = ck.g_function(1.0 + (math.sin(theta) * math.sinh(2.0 * r)) ** 2)
        worst = max(worst, abs(pipeline - spectral), abs(printed - literal))
        assert abs(disc - (pipeline - printed)) < 1e-15
        max_disc = max(max_disc, abs(disc))
    # the no-sqrt printed formula disagrees off the real axis; that column
    # is emitted as data and must stay nonzero, not be reconciled away
    ok = worst <= 1e-9 and max_disc > 0.1
    _report(
        8,
        ok,
        "squeezed-vacuum gap follows the spectral closed form; the printed "
        "no-sqrt variant is reproduced verbatim and its discrepancy reported",
        f"worst dev {worst:.2e}, max discrepancy {max_disc:.3f}",
    )


def test_criterion_09_figure_data_stability():
    builders = ((ck.fig1_rows, 101), (ck.fig2_rows, 41), (ck.fig3_rows, 41))
    stable = True
    for builder, steps in builders:
        h1, r1 = builder(steps=steps)
        h2, r2 = builder(steps=steps)
        stable = stable and rows_to_csv(h1, r1) == rows_to_csv(h2, r2)
    _, fig1 = ck.fig1_rows(steps=101)
    ridge = max(abs(g) for x, y, g in fig1 if y == 0.0 and g is not None)
    _, fig2 = ck.fig2_rows(steps=41)
    valley = max(abs(p) for re, im, p, c in fig2 if im == 0.0)
    ok = stable and ridge <= 1e-12 and valley <= 1e-12
    _report(
        9,
        ok,
        "default figure grids regenerate byte-identically; real-axis rows "
        "are exactly zero",
        f"ridge max {ridge:.1e}, valley max {valley:.1e}",
    )


def test_criterion_10_full_suite_runtime():
    t0 = time.perf_counter()
    summary = ck.run_all(seed=SEED, threads=1)
    elapsed = time.perf_counter() - t0
    ok = summary["pass"] is True and elapsed < 300.0
    _report(
        10,
        ok,
        "full default verification suite passes end to end",
        f"{len(summary['checks'])} checks in {elapsed:.1f} s (< 300 s)",
    )
