"""Seeded randomized verification harness.

Every library-level property gets a named check: a seeded trial loop whose
per-trial slack (signed margin, negative = violated) feeds a SlackTracker
and comes back as one CheckReport.  Check ids are stable strings; the
per-trial generator is derived from (master seed, sha-hash of the id,
trial index), so runs are reproducible check-by-check and independent of
registry order or thread scheduling.

Conventions used below:
  * closed-form properties assert at 1e-9, optimization-backed ones at
    1e-4, Gaussian pipeline properties at 1e-9 unless the quantity is
    exact by construction;
  * equalities are fed as slack = -(deviation), inequalities as the
    signed margin itself;
  * trials that do not meet a check's premise contribute slack 0 rather
    than being resampled, so trial counts stay exact.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import catalog, closedform, figures, variational
from . import gaussian as gs
from .catalog import (
    CLOSED_MEASURES,
    DEFAULT_MEASURES,
    OPT_MEASURES,
    OPT_TOL,
    ROOF_MEASURES,
    MeasureId,
)
from .closedform import concave_fn
from .report import CheckReport, SlackTracker, check_hash, summarize
from .states import (
    DensityMatrix,
    KrausChannel,
    PureState,
    apply_channel,
    channel_branches,
    clamp_spectrum,
    conjugate_channel,
    conjugate_state,
    dephase,
    direct_sum,
    fidelity,
    imag_part,
    is_incoherent,
    random_density,
    random_diag_unitary,
    random_incoherent_channel,
    random_pure,
    real_part,
    von_neumann_entropy,
)

DEFAULT_SEED = 20240
GAUSS_TOL = 1e-9
CLOSED_DIMS = (2, 3, 4, 6)
OPT_DIMS = (2, 3)
# diagonal-unitary conjugation leaves every solver trajectory invariant up
# to eigensolver round-off, so the bound can sit far below the solver tol
DIAG_UNITARY_TOL = 1e-9
# upper-estimate headroom allowed over the known qubit roof value; the
# stochastic search lands within ~3e-4 of it in the worst observed case
ROOF_QUBIT_GAP = 2e-3

_ROOF_CFG = variational.SolverConfig(max_iters=60, tol=1e-9, restarts=2, seed=7)
# the qubit closed-form comparison needs a deeper search than the structural
# roof checks, which all ride exact short-circuit paths
_ROOF_QUBIT_CFG = variational.SolverConfig(max_iters=120, tol=1e-9, restarts=6, seed=7)

_C5_MEASURES = tuple(m for m in CLOSED_MEASURES if m.kind in ("l1", "relent"))
_SYMMETRIZED_MEASURES = tuple(
    m
    for m in DEFAULT_MEASURES
    if m.label() in ("l1", "relent", "tsallis:2", "robustness", "geometric")
)


# ---------------------------------------------------------------------------
# seeding and drawing helpers
# ---------------------------------------------------------------------------


def _trial_seed(seed: int, check_id: str, trial: int) -> int:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(check_hash(check_id), trial))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _trial_rng(seed: int, check_id: str, trial: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(check_hash(check_id), trial))
    )


def _rank_for(tseed: int, d: int):
    # mostly full rank; every few trials a rank-deficient state to hit the
    # solver support-reduction and clamped-spectrum paths
    if tseed % 10 < 7:
        return None
    return 1 + (tseed >> 4) % d


def _draw_state(seed: int, check_id: str, trial: int, d: int):
    tseed = _trial_seed(seed, check_id, trial)
    rank = _rank_for(tseed, d)
    rho = random_density(d, rank, tseed)
    payload = {"d": int(d), "rank": int(rank or d), "state_seed": int(tseed)}
    return rho, payload


def _measure_cfg(mid: MeasureId):
    return _ROOF_CFG if mid.kind == "roofpure" else None


def _random_channel(d: int, seed: int) -> KrausChannel:
    """Generic CPTP channel from an orthonormal stacked-Kraus column frame."""
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, 4))
    g = rng.standard_normal((k * d, d)) + 1j * rng.standard_normal((k * d, d))
    q, _ = np.linalg.qr(g)
    return KrausChannel([q[j * d : (j + 1) * d, :] for j in range(k)], kind="channel")


# ---------------------------------------------------------------------------
# measure-level checks (parameterized by MeasureId)
# ---------------------------------------------------------------------------


def check_real_gap_nonneg(
    mid: MeasureId, dims, trials: int, seed: int, check_id: str | None = None
) -> CheckReport:
    """C(rho) >= C(Re rho) on random mixed states."""
    cid = check_id or f"real-gap-nonneg-{mid.label()}"
    tracker = SlackTracker(catalog.tolerance_for(mid))
    cfg = _measure_cfg(mid)
    states, payloads = [], []
    for t in range(trials):
        rho, pay = _draw_state(seed, cid, t, dims[t % len(dims)])
        states.append(rho)
        payloads.append(pay)
    lhs = catalog.evaluate_many(mid, states, cfg)
    rhs = catalog.evaluate_many(mid, [real_part(r) for r in states], cfg)
    for pay, a, b in zip(payloads, lhs, rhs):
        pay["value"] = float(a)
        pay["value_real_part"] = float(b)
        tracker.add(float(a - b), pay)
    return tracker.report(cid, seed)


def check_conjugation_invariance(
    mid: MeasureId,
    dims,
    trials: int,
    seed: int,
    ensemble: str = "mixed",
    check_id: str | None = None,
) -> CheckReport:
    """|C(rho) - C(rho*)| within the measure tolerance."""
    if ensemble not in ("mixed", "pure", "qubit"):
        raise ValueError(f"unknown ensemble {ensemble!r}")
    suffix = {"mixed": "", "pure": "-pure", "qubit": "-qubit"}[ensemble]
    cid = check_id or f"conj-invariance{suffix}-{mid.label()}"
    tracker = SlackTracker(catalog.tolerance_for(mid))
    cfg = _measure_cfg(mid)
    states, payloads = [], []
    for t in range(trials):
        d = 2 if ensemble == "qubit" else dims[t % len(dims)]
        if ensemble == "pure":
            tseed = _trial_seed(seed, cid, t)
            states.append(random_pure(d, tseed).to_density())
            payloads.append({"d": int(d), "rank": 1, "state_seed": int(tseed)})
        else:
            rho, pay = _draw_state(seed, cid, t, d)
            states.append(rho)
            payloads.append(pay)
    lhs = catalog.evaluate_many(mid, states, cfg)
    rhs = catalog.evaluate_many(mid, [conjugate_state(r) for r in states], cfg)
    for pay, a, b in zip(payloads, lhs, rhs):
        pay["value"] = float(a)
        pay["value_conj"] = float(b)
        tracker.add(-abs(float(a) - float(b)), pay)
    return tracker.report(cid, seed)


def check_faithfulness(mid: MeasureId, dims, trials: int, seed: int) -> CheckReport:
    """Zero on diagonal states, strictly positive on visibly coherent ones."""
    cid = f"axiom-faithfulness-{mid.label()}"
    closedish = catalog.is_closed_form(mid) or mid.kind == "roofpure"
    cap = 1e-8 if closedish else 1e-4
    floor = 1e-8 if closedish else 1e-3
    tracker = SlackTracker(0.0)
    cfg = _measure_cfg(mid)
    for t in range(trials):
        d = dims[t % len(dims)]
        tseed = _trial_seed(seed, cid, t)
        pay = {"d": int(d), "state_seed": int(tseed)}
        if t % 2 == 0:
            rho = dephase(random_density(d, _rank_for(tseed, d), tseed))
            value = catalog.evaluate(mid, rho, cfg)
            pay.update(side="diagonal", value=float(value))
            tracker.add(cap - value, pay)
            continue
        if mid.kind == "roofpure":
            psi = random_pure(d, tseed)
            probs = np.abs(psi.amplitudes) ** 2
            premise = float(np.sort(probs)[-2]) >= 1e-6
            value = catalog.evaluate_pure(mid, psi, cfg)
        else:
            rho = random_density(d, _rank_for(tseed, d), tseed)
            off = rho.data - np.diag(np.diag(rho.data))
            if catalog.is_closed_form(mid):
                premise = float(np.abs(off).max()) >= 1e-3
            else:
                premise = float(np.abs(off).sum()) >= 1e-2
            value = catalog.evaluate(mid, rho, cfg)
        pay.update(side="coherent", value=float(value), premise=bool(premise))
        tracker.add(value - floor if premise else 0.0, pay)
    return tracker.report(cid, seed)


def check_channel_monotonicity(
    mid: MeasureId, dims, trials: int, seed: int
) -> CheckReport:
    """C never increases under random incoherent channels."""
    cid = f"axiom-channel-monotone-{mid.label()}"
    tracker = SlackTracker(catalog.tolerance_for(mid))
    cfg = _measure_cfg(mid)
    ins, outs, payloads = [], [], []
    for t in range(trials):
        d = dims[t % len(dims)]
        tseed = _trial_seed(seed, cid, t)
        rho = random_density(d, _rank_for(tseed, d), tseed)
        branches = 1 + (tseed >> 8) % 4
        phi = random_incoherent_channel(d, branches, tseed ^ 0x9E3779B9)
        ins.append(rho)
        outs.append(apply_channel(phi, rho))
        payloads.append(
            {"d": int(d), "state_seed": int(tseed), "branches": int(branches)}
        )
    lhs = catalog.evaluate_many(mid, ins, cfg)
    rhs = catalog.evaluate_many(mid, outs, cfg)
    for pay, a, b in zip(payloads, lhs, rhs):
        pay["value_in"] = float(a)
        pay["value_out"] = float(b)
        tracker.add(float(a - b), pay)
    return tracker.report(cid, seed)


def check_selective_monotonicity(
    mid: MeasureId, dims, trials: int, seed: int
) -> CheckReport:
    """sum_mu p_mu C(rho_mu) <= C(rho) over selective channel outcomes."""
    cid = f"axiom-selective-monotone-{mid.label()}"
    tracker = SlackTracker(catalog.tolerance_for(mid))
    for t in range(trials):
        d = dims[t % len(dims)]
        tseed = _trial_seed(seed, cid, t)
        rho = random_density(d, _rank_for(tseed, d), tseed)
        branches = 2 + (tseed >> 8) % 3
        phi = random_incoherent_channel(d, branches, tseed ^ 0x9E3779B9)
        avg = sum(
            p * catalog.evaluate(mid, out) for p, out in channel_branches(phi, rho)
        )
        value = catalog.evaluate(mid, rho)
        tracker.add(
            float(value - avg),
            {
                "d": int(d),
                "state_seed": int(tseed),
                "branches": int(branches),
                "value": float(value),
                "selective_average": float(avg),
            },
        )
    return tracker.report(cid, seed)


def check_mixing_convexity(mid: MeasureId, dims, trials: int, seed: int) -> CheckReport:
    """C(sum_i w_i rho_i) <= sum_i w_i C(rho_i)."""
    cid = f"axiom-mixing-convexity-{mid.label()}"
    tracker = SlackTracker(catalog.tolerance_for(mid))
    for t in range(trials):
        d = dims[t % len(dims)]
        rng = _trial_rng(seed, cid, t)
        k = int(rng.integers(2, 5))
        seeds = [int(s) for s in rng.integers(0, 2**63, size=k)]
        weights = rng.dirichlet(np.ones(k))
        comps = [random_density(d, None, s) for s in seeds]
        mix = DensityMatrix(sum(w * c.data for w, c in zip(weights, comps)))
        avg = sum(w * catalog.evaluate(mid, c) for w, c in zip(weights, comps))
        value = catalog.evaluate(mid, mix)
        tracker.add(
            float(avg - value),
            {
                "d": int(d),
                "component_seeds": seeds,
                "weights": [float(w) for w in weights],
                "value_mix": float(value),
                "value_avg": float(avg),
            },
        )
    return tracker.report(cid, seed)


def check_direct_sum_additivity(
    mid: MeasureId, dims, trials: int, seed: int
) -> CheckReport:
    """C(p rho1 (+) (1-p) rho2) = p C(rho1) + (1-p) C(rho2)."""
    cid = f"axiom-direct-sum-{mid.label()}"
    tracker = SlackTracker(catalog.tolerance_for(mid))
    for t in range(trials):
        rng = _trial_rng(seed, cid, t)
        d1 = int(rng.integers(2, 4))
        d2 = int(rng.integers(2, 4))
        s1, s2 = (int(s) for s in rng.integers(0, 2**63, size=2))
        p = float(rng.uniform(0.05, 0.95))
        rho1 = random_density(d1, None, s1)
        rho2 = random_density(d2, None, s2)
        combined = catalog.evaluate(mid, direct_sum(p, rho1, rho2))
        split = p * catalog.evaluate(mid, rho1) + (1.0 - p) * catalog.evaluate(
            mid, rho2
        )
        tracker.add(
            -abs(combined - split),
            {
                "d1": d1,
                "d2": d2,
                "seeds": [s1, s2],
                "p": p,
                "value_sum": float(combined),
                "value_split": float(split),
            },
        )
    return tracker.report(cid, seed)


def check_diag_unitary_invariance(
    mid: MeasureId, dims, trials: int, seed: int
) -> CheckReport:
    """C is unchanged by diagonal-unitary conjugation."""
    cid = f"axiom-diag-unitary-{mid.label()}"
    tol = (
        catalog.tolerance_for(mid)
        if catalog.is_closed_form(mid)
        else DIAG_UNITARY_TOL
    )
    tracker = SlackTracker(tol)
    cfg = _measure_cfg(mid)
    lhs_states, rhs_states, payloads = [], [], []
    for t in range(trials):
        d = dims[t % len(dims)]
        tseed = _trial_seed(seed, cid, t)
        # the mixed-state roof search is stochastic; its invariance content
        # lives in the exact rank-1 path, so pin that rank for roof measures
        rank = 1 if mid.kind == "roofpure" else _rank_for(tseed, d)
        rho = random_density(d, rank, tseed)
        u = random_diag_unitary(d, tseed ^ 0x51ED270)
        lhs_states.append(rho)
        rhs_states.append(apply_channel(u, rho))
        payloads.append({"d": int(d), "state_seed": int(tseed)})
    lhs = catalog.evaluate_many(mid, lhs_states, cfg)
    rhs = catalog.evaluate_many(mid, rhs_states, cfg)
    for pay, a, b in zip(payloads, lhs, rhs):
        pay["value"] = float(a)
        pay["value_rotated"] = float(b)
        tracker.add(-abs(float(a) - float(b)), pay)
    return tracker.report(cid, seed)


def check_axioms(mid: MeasureId, dims=None, trials: int = 300, seed: int = DEFAULT_SEED):
    """Run every axiom check that applies to the given measure."""
    closed = catalog.is_closed_form(mid)
    roof = mid.kind == "roofpure"
    if dims is None:
        dims = CLOSED_DIMS if (closed or roof) else OPT_DIMS
    reports = [check_faithfulness(mid, dims, trials, seed)]
    if not roof:
        reports.append(check_channel_monotonicity(mid, dims, trials, seed))
    if closed:
        reports.append(check_selective_monotonicity(mid, dims, trials, seed))
        reports.append(check_mixing_convexity(mid, dims, trials, seed))
    if mid in _C5_MEASURES:
        reports.append(check_direct_sum_additivity(mid, dims, trials, seed))
    reports.append(check_diag_unitary_invariance(mid, dims, trials, seed))
    return reports


def _symmetrized_eval(mid, stack, cfg, width, combine):
    """Shared scaffolding: evaluate a flat per-trial stack, fold per trial."""
    vals = catalog.evaluate_many(mid, stack, cfg)
    out = []
    for t in range(len(stack) // width):
        out.append(combine([float(x) for x in vals[width * t : width * t + width]]))
    return out


def check_symmetrized_exact(
    mid: MeasureId, dims, trials: int, seed: int
) -> CheckReport:
    """The symmetrized average returns bit-identical values on rho and rho*."""
    cid = f"symmetrized-{mid.label()}-exact-symmetry"
    tracker = SlackTracker(0.0)
    cfg = _measure_cfg(mid)
    stack, payloads = [], []
    for t in range(trials):
        rho, pay = _draw_state(seed, cid, t, dims[t % len(dims)])
        stack.extend(
            [rho, conjugate_state(rho), conjugate_state(conjugate_state(rho))]
        )
        payloads.append(pay)
    devs = _symmetrized_eval(
        mid, stack, cfg, 3, lambda v: abs(0.5 * (v[0] + v[1]) - 0.5 * (v[1] + v[2]))
    )
    for pay, dev in zip(payloads, devs):
        tracker.add(-dev, pay)
    return tracker.report(cid, seed)


def check_symmetrized_monotone(
    mid: MeasureId, dims, trials: int, seed: int
) -> CheckReport:
    """The symmetrized average still contracts under incoherent channels."""
    cid = f"symmetrized-{mid.label()}-monotone"
    tracker = SlackTracker(catalog.tolerance_for(mid))
    cfg = _measure_cfg(mid)
    stack, payloads = [], []
    for t in range(trials):
        d = dims[t % len(dims)]
        tseed = _trial_seed(seed, cid, t)
        rho = random_density(d, _rank_for(tseed, d), tseed)
        phi = random_incoherent_channel(d, 1 + (tseed >> 8) % 4, tseed ^ 0x9E3779B9)
        out = apply_channel(phi, rho)
        stack.extend([rho, conjugate_state(rho), out, conjugate_state(out)])
        payloads.append({"d": int(d), "state_seed": int(tseed)})
    margins = _symmetrized_eval(
        mid, stack, cfg, 4, lambda v: 0.5 * (v[0] + v[1]) - 0.5 * (v[2] + v[3])
    )
    for pay, margin in zip(payloads, margins):
        tracker.add(margin, pay)
    return tracker.report(cid, seed)


def check_symmetrized_real_fixed(
    mid: MeasureId, dims, trials: int, seed: int
) -> CheckReport:
    """On real states the symmetrized average reduces to the plain measure."""
    cid = f"symmetrized-{mid.label()}-real-fixed"
    tracker = SlackTracker(catalog.tolerance_for(mid))
    cfg = _measure_cfg(mid)
    stack, payloads = [], []
    for t in range(trials):
        rho, pay = _draw_state(seed, cid, t, dims[t % len(dims)])
        re = real_part(rho)
        stack.extend([re, conjugate_state(re)])
        payloads.append(pay)
    devs = _symmetrized_eval(
        mid, stack, cfg, 2, lambda v: abs(0.5 * (v[0] + v[1]) - v[0])
    )
    for pay, dev in zip(payloads, devs):
        tracker.add(-dev, pay)
    return tracker.report(cid, seed)


def check_symmetrized_measure(mid: MeasureId, dims, trials: int, seed: int):
    """The conjugation-symmetrized average is itself a well-behaved measure."""
    return [
        check_symmetrized_exact(mid, dims, trials, seed),
        check_symmetrized_monotone(mid, dims, trials, seed),
        check_symmetrized_real_fixed(mid, dims, trials, seed),
    ]


# ---------------------------------------------------------------------------
# structural checks on states and channels
# ---------------------------------------------------------------------------


def _check_conj_involution(cid: str, seed: int, trials: int) -> CheckReport:
    tracker = SlackTracker(0.0)
    for t in range(trials):
        d = 2 + t % 5
        rho, pay = _draw_state(seed, cid, t, d)
        back = conjugate_state(conjugate_state(rho))
        dev = float(np.abs(back.data - rho.data).max())
        phi = _random_channel(d, _trial_seed(seed, cid, t) ^ 0x1234)
        phi_back = conjugate_channel(conjugate_channel(phi))
        dev = max(
            dev,
            max(
                float(np.abs(a - b).max())
                for a, b in zip(phi_back.kraus, phi.kraus)
            ),
        )
        tracker.add(-dev, pay)
    return tracker.report(cid, seed)


def _check_reassembly(cid: str, seed: int, trials: int) -> CheckReport:
    tracker = SlackTracker(1e-14)
    for t in range(trials):
        d = 2 + t % 5
        rho, pay = _draw_state(seed, cid, t, d)
        re = real_part(rho)
        im = imag_part(rho)
        dev = float(np.abs(re.data + 1j * im - rho.data).max())
        dev = max(dev, float(np.abs(re.data.imag).max()))
        dev = max(dev, float(np.abs(im + im.T).max()))
        tracker.add(-dev, pay)
    return tracker.report(cid, seed)


def _check_spectrum_conj(cid: str, seed: int, trials: int) -> CheckReport:
    tracker = SlackTracker(1e-10)
    for t in range(trials):
        d = 2 + t % 5
        rho, pay = _draw_state(seed, cid, t, d)
        conj = conjugate_state(rho)
        dev = float(
            np.abs(np.linalg.eigvalsh(rho.data) - np.linalg.eigvalsh(conj.data)).max()
        )
        dev = max(dev, abs(von_neumann_entropy(rho) - von_neumann_entropy(conj)))
        tracker.add(-dev, pay)
    return tracker.report(cid, seed)


def _check_channel_conj_identity(cid: str, seed: int, trials: int) -> CheckReport:
    """conj(phi)(conj(rho)) equals conj(phi(rho)) entrywise."""
    tracker = SlackTracker(1e-10)
    for t in range(trials):
        d = 2 + t % 5
        rho, pay = _draw_state(seed, cid, t, d)
        tseed = _trial_seed(seed, cid, t)
        if t % 2 == 0:
            phi = _random_channel(d, tseed ^ 0x1234)
        else:
            phi = random_incoherent_channel(d, 1 + tseed % 4, tseed ^ 0x1234)
        lhs = apply_channel(conjugate_channel(phi), conjugate_state(rho))
        rhs = conjugate_state(apply_channel(phi, rho))
        tracker.add(-float(np.abs(lhs.data - rhs.data).max()), pay)
    return tracker.report(cid, seed)


def _check_incoherent_structure(cid: str, seed: int, trials: int) -> CheckReport:
    tracker = SlackTracker(0.0)
    for t in range(trials):
        d = 2 + t % 5
        tseed = _trial_seed(seed, cid, t)
        phi = random_incoherent_channel(d, 1 + tseed % 4, tseed)
        pay = {"d": int(d), "channel_seed": int(tseed)}
        if not (is_incoherent(phi) and is_incoherent(conjugate_channel(phi))):
            tracker.add(-1.0, pay)
            continue
        sigma = dephase(random_density(d, None, tseed ^ 0x77))
        out = apply_channel(phi, sigma).data
        off = out - np.diag(np.diag(out))
        tracker.add(-float(np.abs(off).max()), pay)
    return tracker.report(cid, seed)


def _check_fidelity_basics(cid: str, seed: int, trials: int) -> CheckReport:
    tracker = SlackTracker(0.0)
    for t in range(trials):
        d = 2 + t % 4
        tseed = _trial_seed(seed, cid, t)
        rho = random_density(d, None, tseed)
        sigma = random_density(d, _rank_for(tseed, d), tseed ^ 0xABCD)
        psi = random_pure(d, tseed ^ 0xEF)
        margin = 1e-9 - abs(fidelity(rho, rho) - 1.0)
        margin = min(margin, 1e-8 - abs(fidelity(rho, sigma) - fidelity(sigma, rho)))
        overlap = float(
            np.real(psi.amplitudes.conj() @ sigma.data @ psi.amplitudes)
        )
        margin = min(
            margin, 1e-10 - abs(fidelity(psi.to_density(), sigma) ** 2 - overlap)
        )
        phi = _random_channel(d, tseed ^ 0x5555)
        margin = min(
            margin,
            fidelity(apply_channel(phi, rho), apply_channel(phi, sigma))
            - fidelity(rho, sigma)
            + 1e-7,
        )
        tracker.add(margin, {"d": int(d), "state_seed": int(tseed)})
    return tracker.report(cid, seed)


def _check_bloch_identity(cid: str, seed: int, trials: int) -> CheckReport:
    """Qubit l1 real gap equals sqrt(x^2+y^2) - |x| across the Bloch ball."""
    tracker = SlackTracker(1e-12)
    rng = _trial_rng(seed, cid, 0)
    vecs = rng.standard_normal((trials, 3))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    radii = rng.uniform(0.0, 1.0, size=trials) ** (1.0 / 3.0)
    pts = vecs * radii[:, None]
    for t in range(trials):
        x, y, z = (float(v) for v in pts[t])
        rho = closedform.bloch_state(x, y, z)
        gap = closedform.c_l1(rho) - closedform.c_l1(real_part(rho))
        closed = closedform.bloch_gap_l1(x, y)
        tracker.add(-abs(gap - closed), {"x": x, "y": y, "z": z, "gap": float(gap)})
    return tracker.report(cid, seed)


def _check_l1_gap_closed_form(cid: str, seed: int, trials: int) -> CheckReport:
    """The direct l1 gap formula matches the pipeline in every dimension."""
    tracker = SlackTracker(1e-12)
    for t in range(trials):
        d = CLOSED_DIMS[t % len(CLOSED_DIMS)]
        rho, pay = _draw_state(seed, cid, t, d)
        gap = closedform.c_l1(rho) - closedform.c_l1(real_part(rho))
        closed = closedform.l1_real_gap_closed_form(rho)
        tracker.add(-abs(gap - closed), pay)
    return tracker.report(cid, seed)


# ---------------------------------------------------------------------------
# solver-level checks
# ---------------------------------------------------------------------------


def check_solver_vs_oracle(kind: str, d: int, trials: int, seed: int) -> CheckReport:
    """Variational value vs brute-force grid value within the grid's bound."""
    cid = f"solver-oracle-{kind}-d{d}"
    step = 1e-3 if (d == 2 or kind == "geometric") else 1e-2
    mid = catalog.parse_measure(kind)
    tracker = SlackTracker(0.0)
    for t in range(trials):
        rho, pay = _draw_state(seed, cid, t, d)
        sol = catalog.evaluate(mid, rho)
        ora = variational.oracle_grid(rho, kind, step)
        pay.update(
            solver=float(sol),
            oracle=float(ora.value),
            error_bound=float(ora.error_bound),
        )
        tracker.add(ora.error_bound + OPT_TOL - abs(sol - ora.value), pay)
    return tracker.report(cid, seed)


def _check_plus_extremes(cid: str, seed: int, trials: int) -> CheckReport:
    """The maximally coherent qubit pins robustness and weight at one."""
    tracker = SlackTracker(0.0)
    plus = PureState(np.ones(2) / np.sqrt(2.0)).to_density()
    for _ in range(trials):
        rob = variational.c_robustness(plus).value
        wt = variational.c_weight(plus).value
        rob_o = variational.oracle_grid(plus, "robustness", 1e-3).value
        wt_o = variational.oracle_grid(plus, "weight", 1e-3).value
        dev = max(abs(rob - 1.0), abs(wt - 1.0), abs(rob_o - 1.0), abs(wt_o - 1.0))
        margin = 2e-3 - dev
        margin = min(margin, 1e-9 - abs(variational.c_geometric(plus).value - 0.5))
        margin = min(margin, 1e-9 - abs(closedform.c_l1(plus) - 1.0))
        tracker.add(
            margin,
            {
                "robustness": float(rob),
                "weight": float(wt),
                "oracle_robustness": float(rob_o),
                "oracle_weight": float(wt_o),
            },
        )
    return tracker.report(cid, seed)


def _check_penalty_stability(cid: str, seed: int, trials: int) -> CheckReport:
    """The solved value is insensitive to the exact-penalty strength."""
    tracker = SlackTracker(0.0)
    for t in range(trials):
        d = 2 + t % 3
        rho, pay = _draw_state(seed, cid, t, d)
        margin = np.inf
        for sense in ("dominating", "dominated"):
            prog = variational.DiagonalProgram(rho, sense)
            vals = [
                variational.solve_diagonal_program(prog, kappa_schedule=(k,)).value
                for k in variational.KAPPA_SCHEDULE
            ]
            spread = max(vals) - min(vals)
            pay[f"spread_{sense}"] = float(spread)
            margin = min(margin, 1e-6 - spread)
        tracker.add(margin, pay)
    return tracker.report(cid, seed)


# ---------------------------------------------------------------------------
# convex-roof estimator checks
# ---------------------------------------------------------------------------


def _check_roof_pure_agreement(cid: str, seed: int, trials: int) -> CheckReport:
    tracker = SlackTracker(1e-9)
    for t in range(trials):
        d = 2 + t % 5
        tseed = _trial_seed(seed, cid, t)
        psi = random_pure(d, tseed)
        fn = concave_fn("shannon" if t % 2 == 0 else "onemax")
        est = variational.c_convex_roof_upper(psi.to_density(), fn, _ROOF_CFG)
        exact = closedform.c_convex_roof_pure(psi, fn)
        dev = abs(est.value - exact)
        if est.flagged_upper_bound:
            dev = max(dev, 1.0)  # pure inputs must come back exact
        tracker.add(-dev, {"d": int(d), "state_seed": int(tseed), "f": fn.name})
    return tracker.report(cid, seed)


def _check_roof_diagonal_zero(cid: str, seed: int, trials: int) -> CheckReport:
    tracker = SlackTracker(1e-12)
    for t in range(trials):
        d = 2 + t % 5
        tseed = _trial_seed(seed, cid, t)
        rho = dephase(random_density(d, _rank_for(tseed, d), tseed))
        fn = concave_fn("shannon" if t % 2 == 0 else "onemax")
        est = variational.c_convex_roof_upper(rho, fn, _ROOF_CFG)
        dev = abs(est.value) + (1.0 if est.flagged_upper_bound else 0.0)
        tracker.add(-dev, {"d": int(d), "state_seed": int(tseed), "f": fn.name})
    return tracker.report(cid, seed)


def _check_roof_restart_monotone(cid: str, seed: int, trials: int) -> CheckReport:
    """More restarts never worsen the upper estimate (nested start sets)."""
    tracker = SlackTracker(0.0)
    for t in range(trials):
        d = 2 + t % 3
        rho, pay = _draw_state(seed, cid, t, d)
        fn = concave_fn("shannon" if t % 2 == 0 else "onemax")
        vals = []
        for restarts in (1, 2, 4):
            cfg = variational.SolverConfig(
                max_iters=60, tol=1e-9, restarts=restarts, seed=7
            )
            vals.append(variational.c_convex_roof_upper(rho, fn, cfg).value)
        margin = min(vals[0] - vals[1], vals[1] - vals[2])
        pay["values"] = [float(v) for v in vals]
        tracker.add(margin + 1e-12, pay)
    return tracker.report(cid, seed)


def _check_roof_eigen_dominance(cid: str, seed: int, trials: int) -> CheckReport:
    """The estimate never exceeds the eigendecomposition ensemble value."""
    tracker = SlackTracker(0.0)
    for t in range(trials):
        d = 2 + t % 5
        rho, pay = _draw_state(seed, cid, t, d)
        fn = concave_fn("shannon" if t % 2 == 0 else "onemax")
        vals, vecs = np.linalg.eigh(rho.data)
        vals = clamp_spectrum(vals)
        eig_val = float(
            sum(
                lam * fn(np.abs(vecs[:, j]) ** 2)
                for j, lam in enumerate(vals)
                if lam > 1e-12
            )
        )
        est = variational.c_convex_roof_upper(rho, fn, _ROOF_CFG).value
        pay.update(estimate=float(est), eigen_value=eig_val, f=fn.name)
        tracker.add(eig_val - est + 1e-12, pay)
    return tracker.report(cid, seed)


def _check_roof_qubit_closed_form(cid: str, seed: int, trials: int) -> CheckReport:
    """Qubit upper estimate brackets the known entropy-roof value."""
    tracker = SlackTracker(0.0)
    fn = concave_fn("shannon")
    for t in range(trials):
        rho, pay = _draw_state(seed, cid, t, 2)
        off = abs(complex(rho.data[0, 1]))
        arg = max(1.0 - 4.0 * off * off, 0.0)
        p = 0.5 * (1.0 + np.sqrt(arg))
        closed = float(fn(np.array([p, 1.0 - p])))
        est = variational.c_convex_roof_upper(rho, fn, _ROOF_QUBIT_CFG).value
        pay.update(estimate=float(est), closed=closed)
        tracker.add(min(est - closed + 1e-9, closed + ROOF_QUBIT_GAP - est), pay)
    return tracker.report(cid, seed)


# ---------------------------------------------------------------------------
# Gaussian checks
# ---------------------------------------------------------------------------


def _gauss_modes(t: int) -> int:
    return 1 + t % 3


def _check_gauss_symplectic_algebra(cid: str, seed: int, trials: int) -> CheckReport:
    tracker = SlackTracker(0.0)
    for t in range(trials):
        n = _gauss_modes(t)
        tseed = _trial_seed(seed, cid, t)
        om = gs.omega(n)
        o = gs.conjugation_matrix(n)
        eye = np.eye(2 * n)
        dev = float(np.abs(om @ om + eye).max())
        dev = max(dev, float(np.abs(o @ o - eye).max()))
        dev = max(dev, float(np.abs(o @ om @ o + om).max()))
        s = gs.random_symplectic(n, tseed)
        dev_s = float(np.abs(s @ om @ s.T - om).max())
        tracker.add(
            min(-dev, 1e-9 - dev_s), {"n": int(n), "symplectic_seed": int(tseed)}
        )
    return tracker.report(cid, seed)


def _check_gauss_conj_involution(cid: str, seed: int, trials: int) -> CheckReport:
    tracker = SlackTracker(0.0)
    for t in range(trials):
        n = _gauss_modes(t)
        tseed = _trial_seed(seed, cid, t)
        state = gs.random_gaussian_state(n, tseed)
        back = gs.conjugate_gaussian(gs.conjugate_gaussian(state))
        dev = float(np.abs(back.mean - state.mean).max())
        dev = max(dev, float(np.abs(back.cov - state.cov).max()))
        tracker.add(-dev, {"n": int(n), "state_seed": int(tseed)})
    return tracker.report(cid, seed)


def _check_gauss_conj_spectrum(cid: str, seed: int, trials: int) -> CheckReport:
    """Conjugation preserves normal-form spectra, entropy, and the measure."""
    tracker = SlackTracker(GAUSS_TOL)
    for t in range(trials):
        n = _gauss_modes(t)
        tseed = _trial_seed(seed, cid, t)
        state = gs.random_gaussian_state(n, tseed)
        conj = gs.conjugate_gaussian(state)
        dev = float(
            np.abs(
                gs.symplectic_eigenvalues(state.cov)
                - gs.symplectic_eigenvalues(conj.cov)
            ).max()
        )
        dev = max(dev, abs(gs.entropy_gaussian(state) - gs.entropy_gaussian(conj)))
        dev = max(dev, abs(gs.c_gr(state) - gs.c_gr(conj)))
        tracker.add(-dev, {"n": int(n), "state_seed": int(tseed)})
    return tracker.report(cid, seed)


def _check_gauss_projection_identities(cid: str, seed: int, trials: int) -> CheckReport:
    """The real projection is a fixed point and equals the half mix."""
    tracker = SlackTracker(1e-12)
    for t in range(trials):
        n = _gauss_modes(t)
        tseed = _trial_seed(seed, cid, t)
        state = gs.random_gaussian_state(n, tseed)
        proj = gs.real_projection(state)
        dev = 0.0 if gs.is_real_gaussian(proj, tol=1e-12) else 1.0
        again = gs.real_projection(gs.conjugate_gaussian(state))
        dev = max(dev, float(np.abs(again.mean - proj.mean).max()))
        dev = max(dev, float(np.abs(again.cov - proj.cov).max()))
        mix = gs.boxplus(0.5, state, gs.conjugate_gaussian(state))
        dev = max(dev, float(np.abs(mix.mean - proj.mean).max()))
        dev = max(dev, float(np.abs(mix.cov - proj.cov).max()))
        tracker.add(-dev, {"n": int(n), "state_seed": int(tseed)})
    return tracker.report(cid, seed)


def _check_gauss_uncertainty_closure(cid: str, seed: int, trials: int) -> CheckReport:
    """Conjugation, projection, mixing, and channels keep states physical."""
    tracker = SlackTracker(0.0)
    for t in range(trials):
        n = _gauss_modes(t)
        tseed = _trial_seed(seed, cid, t)
        rng = _trial_rng(seed, cid, t)
        state = gs.random_gaussian_state(n, tseed)
        other = gs.random_gaussian_state(n, tseed ^ 0xBEEF)
        phi = gs.random_gaussian_channel(n, tseed ^ 0xC0FFEE)
        p = float(rng.uniform(0.05, 0.95))
        outputs = [
            gs.conjugate_gaussian(state),
            gs.real_projection(state),
            gs.boxplus(p, state, other),
            gs.apply_gaussian_channel(phi, state),
        ]
        om = gs.omega(n)
        margin = np.inf
        for out in outputs:
            lam = float(np.linalg.eigvalsh(out.cov + 1j * om)[0].real)
            margin = min(margin, lam + 1e-9)
        tracker.add(margin, {"n": int(n), "state_seed": int(tseed), "p": p})
    return tracker.report(cid, seed)


def _check_gauss_normal_form(cid: str, seed: int, trials: int) -> CheckReport:
    """Symplectic eigenvalues recover the planted normal form."""
    tracker = SlackTracker(0.0)
    for t in range(trials):
        n = _gauss_modes(t)
        tseed = _trial_seed(seed, cid, t)
        state, m_mat = gs.random_gaussian_state_with_form(n, tseed)
        w = m_mat @ state.cov @ m_mat.T
        diag = np.diag(w)
        scale = max(1.0, float(diag.max()))
        dev = float(np.abs(w - np.diag(diag)).max())
        dev = max(dev, float(np.abs(diag[0::2] - diag[1::2]).max()))
        nus = gs.symplectic_eigenvalues(state.cov)
        planted = np.sort(0.5 * (diag[0::2] + diag[1::2]))
        dev = max(dev, float(np.abs(nus - planted).max()))
        ok = gs.williamson_check(state.cov, m_mat)
        margin = min(1e-8 * scale - dev, 0.0 if ok else -1.0)
        tracker.add(margin, {"n": int(n), "state_seed": int(tseed)})
    return tracker.report(cid, seed)


def _check_gauss_channel_conj_identity(cid: str, seed: int, trials: int) -> CheckReport:
    tracker = SlackTracker(1e-10)
    for t in range(trials):
        n = _gauss_modes(t)
        tseed = _trial_seed(seed, cid, t)
        state = gs.random_gaussian_state(n, tseed)
        if t % 2 == 0:
            phi = gs.random_gaussian_channel(n, tseed ^ 0xC0FFEE)
        else:
            phi = gs.random_incoherent_gaussian_channel(n, tseed ^ 0xC0FFEE)
        lhs = gs.apply_gaussian_channel(
            gs.conjugate_gaussian_channel(phi), gs.conjugate_gaussian(state)
        )
        rhs = gs.conjugate_gaussian(gs.apply_gaussian_channel(phi, state))
        dev = float(np.abs(lhs.mean - rhs.mean).max())
        dev = max(dev, float(np.abs(lhs.cov - rhs.cov).max()))
        tracker.add(-dev, {"n": int(n), "state_seed": int(tseed)})
    return tracker.report(cid, seed)


def _check_gauss_channel_conj_cp(cid: str, seed: int, trials: int) -> CheckReport:
    """Conjugating a channel preserves complete positivity and involutes."""
    tracker = SlackTracker(0.0)
    for t in range(trials):
        n = _gauss_modes(t)
        tseed = _trial_seed(seed, cid, t)
        phi = gs.random_gaussian_channel(n, tseed)
        conj = gs.conjugate_gaussian_channel(phi)
        om = gs.omega(n)
        herm = conj.n_mat + 1j * om - 1j * (conj.t_mat @ om @ conj.t_mat.T)
        lam = float(np.linalg.eigvalsh(herm)[0].real)
        back = gs.conjugate_gaussian_channel(conj)
        dev = float(np.abs(back.b - phi.b).max())
        dev = max(dev, float(np.abs(back.t_mat - phi.t_mat).max()))
        dev = max(dev, float(np.abs(back.n_mat - phi.n_mat).max()))
        tracker.add(min(lam + 1e-9, -dev), {"n": int(n), "channel_seed": int(tseed)})
    return tracker.report(cid, seed)


def _check_gauss_incoherent_probe(cid: str, seed: int, trials: int) -> CheckReport:
    """Incoherent channels pass the thermal probe; a skewed one fails it."""
    tracker = SlackTracker(gs.THERMAL_TOL)
    for t in range(trials):
        n = _gauss_modes(t)
        tseed = _trial_seed(seed, cid, t)
        phi = gs.random_incoherent_gaussian_channel(n, tseed)
        pay = {"n": int(n), "channel_seed": int(tseed)}
        rep = gs.probe_incoherent_gaussian(phi)
        tracker.add(rep.worst_slack, dict(pay, side="channel"))
        rep_conj = gs.probe_incoherent_gaussian(gs.conjugate_gaussian_channel(phi))
        tracker.add(rep_conj.worst_slack, dict(pay, side="conjugate"))
        if t == 0:
            skew = gs.GaussianChannel(
                np.zeros(2), np.diag([1.2, 0.8]), 0.05 * np.eye(2)
            )
            bad = gs.probe_incoherent_gaussian(skew)
            tracker.add(
                0.0 if bad.failures > 0 else -1.0, {"side": "negative-control"}
            )
    return tracker.report(cid, seed)


def _check_gauss_monotone(cid: str, seed: int, trials: int) -> CheckReport:
    """The Gaussian measure never grows under incoherent channels."""
    tracker = SlackTracker(GAUSS_TOL)
    for t in range(trials):
        n = _gauss_modes(t)
        tseed = _trial_seed(seed, cid, t)
        state = gs.random_gaussian_state(n, tseed)
        phi = gs.random_incoherent_gaussian_channel(n, tseed ^ 0xC0FFEE)
        before = gs.c_gr(state)
        after = gs.c_gr(gs.apply_gaussian_channel(phi, state))
        tracker.add(
            before - after,
            {
                "n": int(n),
                "state_seed": int(tseed),
                "value_in": float(before),
                "value_out": float(after),
            },
        )
    return tracker.report(cid, seed)


def _check_gauss_symmetrized(cid: str, seed: int, trials: int) -> CheckReport:
    """The symmetrized Gaussian measure: exact symmetry, monotone, real-fixed."""
    tracker = SlackTracker(0.0)
    for t in range(trials):
        n = _gauss_modes(t)
        tseed = _trial_seed(seed, cid, t)
        state = gs.random_gaussian_state(n, tseed)
        conj = gs.conjugate_gaussian(state)
        sym = 0.5 * (gs.c_gr(state) + gs.c_gr(conj))
        sym_conj = 0.5 * (gs.c_gr(conj) + gs.c_gr(gs.conjugate_gaussian(conj)))
        margin = -abs(sym - sym_conj)
        phi = gs.random_incoherent_gaussian_channel(n, tseed ^ 0xC0FFEE)
        out = gs.apply_gaussian_channel(phi, state)
        sym_out = 0.5 * (gs.c_gr(out) + gs.c_gr(gs.conjugate_gaussian(out)))
        margin = min(margin, sym - sym_out + GAUSS_TOL)
        proj = gs.real_projection(state)
        sym_real = 0.5 * (gs.c_gr(proj) + gs.c_gr(gs.conjugate_gaussian(proj)))
        margin = min(margin, 1e-12 - abs(sym_real - gs.c_gr(proj)))
        tracker.add(margin, {"n": int(n), "state_seed": int(tseed)})
    return tracker.report(cid, seed)


def _check_gauss_real_gap(cid: str, seed: int, trials: int) -> CheckReport:
    """Projection never raises the measure; both bracket terms stay positive."""
    tracker = SlackTracker(GAUSS_TOL)
    for t in range(trials):
        n = _gauss_modes(t)
        tseed = _trial_seed(seed, cid, t)
        state = gs.random_gaussian_state(n, tseed)
        parts = gs.gr_real_gap(state)
        margin = min(parts.gap, parts.thermal_bracket, parts.entropy_bracket)
        tracker.add(
            margin,
            {
                "n": int(n),
                "state_seed": int(tseed),
                "gap": float(parts.gap),
                "thermal": float(parts.thermal_bracket),
                "entropy": float(parts.entropy_bracket),
            },
        )
    return tracker.report(cid, seed)


def _check_gauss_projection_entropy(cid: str, seed: int, trials: int) -> CheckReport:
    tracker = SlackTracker(GAUSS_TOL)
    for t in range(trials):
        n = _gauss_modes(t)
        tseed = _trial_seed(seed, cid, t)
        state = gs.random_gaussian_state(n, tseed)
        gain = gs.entropy_gaussian(gs.real_projection(state)) - gs.entropy_gaussian(
            state
        )
        tracker.add(gain, {"n": int(n), "state_seed": int(tseed), "gain": float(gain)})
    return tracker.report(cid, seed)


def _check_gauss_mix_entropy(cid: str, seed: int, trials: int) -> CheckReport:
    """Two-state mixing: entropy concavity plus spectrum supermajorization."""
    tracker = SlackTracker(GAUSS_TOL)
    for t in range(trials):
        n = _gauss_modes(t)
        tseed = _trial_seed(seed, cid, t)
        rng = _trial_rng(seed, cid, t)
        a = gs.random_gaussian_state(n, tseed)
        b = gs.random_gaussian_state(n, tseed ^ 0xBEEF)
        p = float(rng.uniform(0.05, 0.95))
        mix = gs.boxplus(p, a, b)
        margin = (
            gs.entropy_gaussian(mix)
            - p * gs.entropy_gaussian(a)
            - (1.0 - p) * gs.entropy_gaussian(b)
        )
        blend = p * gs.symplectic_eigenvalues(a.cov) + (1.0 - p) * (
            gs.symplectic_eigenvalues(b.cov)
        )
        margin = min(
            margin, gs.supermajorize_slack(gs.symplectic_eigenvalues(mix.cov), blend)
        )
        tracker.add(margin, {"n": int(n), "state_seed": int(tseed), "p": p})
    return tracker.report(cid, seed)


def _check_gauss_multi_mix(cid: str, seed: int, trials: int) -> CheckReport:
    """k-component mixing keeps entropy above the weighted average."""
    tracker = SlackTracker(GAUSS_TOL)
    for t in range(trials):
        n = _gauss_modes(t)
        rng = _trial_rng(seed, cid, t)
        k = int(rng.integers(2, 5))
        seeds = [int(s) for s in rng.integers(0, 2**63, size=k)]
        weights = rng.dirichlet(np.ones(k))
        parts = [gs.random_gaussian_state(n, s) for s in seeds]
        mixed = gs.boxplus_many(weights, parts)
        margin = gs.entropy_gaussian(mixed) - float(
            sum(w * gs.entropy_gaussian(st) for w, st in zip(weights, parts))
        )
        tracker.add(
            margin,
            {"n": int(n), "k": k, "seeds": seeds, "weights": [float(w) for w in weights]},
        )
    return tracker.report(cid, seed)


def _check_gauss_spectrum_superadd(cid: str, seed: int, trials: int) -> CheckReport:
    """nu(A+B) dominates nu(A)+nu(B) in ascending prefix sums."""
    tracker = SlackTracker(GAUSS_TOL)
    for t in range(trials):
        n = _gauss_modes(t)
        rng = _trial_rng(seed, cid, t)
        ga = rng.standard_normal((2 * n, 2 * n))
        gb = rng.standard_normal((2 * n, 2 * n))
        a = ga @ ga.T + 0.1 * np.eye(2 * n)
        b = gb @ gb.T + 0.1 * np.eye(2 * n)
        margin = gs.supermajorize_slack(
            gs.symplectic_eigenvalues(a + b),
            gs.symplectic_eigenvalues(a) + gs.symplectic_eigenvalues(b),
        )
        tracker.add(margin, {"n": int(n), "trial": int(t)})
    return tracker.report(cid, seed)


def _check_gauss_g_shape(cid: str, seed: int, trials: int) -> CheckReport:
    """g is nondecreasing and concave along a fine grid of [1, 50]."""
    tracker = SlackTracker(0.0)
    step = 1e-5
    for t in range(trials):
        lo = 1.0 + 0.49 * (t % 100)
        xs = lo + step * np.arange(49001)
        xs = xs[xs <= 50.0]
        vals = gs.g_function(xs)
        d1 = np.diff(vals)
        margin = float(d1.min()) + 1e-7
        margin = min(margin, 1e-7 - float(np.diff(d1).max()))
        if t == 0:
            margin = min(margin, -abs(gs.g_function(1.0)))
            margin = min(margin, 1e-12 - abs(gs.g_function(3.0) - 2.0))
            try:
                gs.g_function(1.0 - 1e-6)
                margin = -1.0  # domain guard must reject sub-vacuum arguments
            except Exception:
                pass
        tracker.add(margin, {"window_start": float(lo)})
    return tracker.report(cid, seed)


def _check_gauss_thermal_forms(cid: str, seed: int, trials: int) -> CheckReport:
    """Reference spectra of the standard families match their closed forms."""
    tracker = SlackTracker(1e-12)
    for t in range(trials):
        rng = _trial_rng(seed, cid, t)
        alpha = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        dev = abs(
            float(gs.thermal_spectrum(gs.coherent_state(alpha))[0])
            - (1.0 + 2.0 * abs(alpha) ** 2)
        )
        zeta = complex(rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2))
        r = abs(zeta)
        dev = max(
            dev,
            abs(
                float(gs.thermal_spectrum(gs.squeezed_state(zeta))[0])
                - np.cosh(2.0 * r)
            ),
        )
        nus = np.sort(rng.uniform(1.0, 6.0, size=_gauss_modes(t)))
        thermal = gs.thermal_state(nus)
        ref = gs.thermal_reference(thermal)
        dev = max(dev, float(np.abs(ref.cov - thermal.cov).max()))
        dev = max(dev, float(np.abs(ref.mean).max()))
        dev = max(dev, 0.0 if gs.is_thermal(thermal) else 1.0)
        dev = max(dev, abs(gs.c_gr(thermal)))
        tracker.add(
            -dev,
            {
                "alpha": [alpha.real, alpha.imag],
                "zeta": [zeta.real, zeta.imag],
                "nus": [float(v) for v in nus],
            },
        )
    return tracker.report(cid, seed)


def _check_gauss_coherent_grid(cid: str, seed: int, trials: int) -> CheckReport:
    """Pipeline gap equals the closed form across the coherent plane."""
    tracker = SlackTracker(GAUSS_TOL)
    axis = np.linspace(-2.0, 2.0, 41)
    for t in range(trials):
        re = float(axis[t % 41])
        worst = np.inf
        worst_alpha = None
        for im in axis:
            alpha = complex(re, float(im))
            pipeline = gs.gr_real_gap(gs.coherent_state(alpha)).gap
            closed = gs.gap_coherent_closed_form(alpha)
            margin = -abs(pipeline - closed)
            if abs(alpha - 1j) < 1e-12:
                margin = min(margin, -abs(pipeline - 2.0))
            if margin < worst:
                worst = margin
                worst_alpha = alpha
        tracker.add(
            worst, {"re": re, "worst_alpha": [worst_alpha.real, worst_alpha.imag]}
        )
    return tracker.report(cid, seed)


def _check_gauss_squeezed_forms(cid: str, seed: int, trials: int) -> CheckReport:
    """Pipeline gap matches the sqrt-determinant form; reference term is flat."""
    tracker = SlackTracker(GAUSS_TOL)
    axis = np.linspace(-1.5, 1.5, 41)
    for t in range(trials):
        re = float(axis[t % 41])
        worst = np.inf
        worst_zeta = None
        for im in axis:
            zeta = complex(re, float(im))
            parts = gs.gr_real_gap(gs.squeezed_state(zeta))
            margin = -abs(parts.gap - gs.gap_squeezed_closed_form(zeta))
            margin = min(margin, 1e-12 - abs(parts.thermal_bracket))
            if abs(zeta) < 1e-12:
                margin = min(margin, -abs(parts.gap))
            if margin < worst:
                worst = margin
                worst_zeta = zeta
        tracker.add(
            worst, {"re": re, "worst_zeta": [worst_zeta.real, worst_zeta.imag]}
        )
    return tracker.report(cid, seed)


def check_gaussian_suite(trials: int | None = None, seed: int = DEFAULT_SEED):
    """Run every Gaussian-family check and return the reports."""
    return [
        _REGISTRY[cid].run(seed, trials)
        for cid in sorted(_REGISTRY)
        if cid.startswith("gauss-")
    ]


# ---------------------------------------------------------------------------
# figure-grid checks
# ---------------------------------------------------------------------------


def _check_fig1_grid(cid: str, seed: int, trials: int) -> CheckReport:
    tracker = SlackTracker(0.0)
    axis = np.linspace(-1.0, 1.0, 41)
    for t in range(trials):
        if t == 0:
            header, rows = figures.fig1_rows(steps=11)
            margin = 0.0 if header == figures.FIG1_HEADER else -1.0
            outside = [r for r in rows if r[2] is None]
            margin = min(margin, 0.0 if len(outside) > 0 else -1.0)
            tracker.add(margin, {"side": "builder"})
            continue
        x = float(axis[t % 41])
        worst = np.inf
        for y in axis:
            if x * x + y * y > 1.0 + 1e-12:
                continue
            rho = closedform.bloch_state(x, float(y), 0.0)
            gap = closedform.c_l1(rho) - closedform.c_l1(real_part(rho))
            margin = 1e-12 - abs(gap - closedform.bloch_gap_l1(x, float(y)))
            margin = min(margin, gap + 1e-15)
            if y == 0.0:
                margin = min(margin, -abs(gap))
            worst = min(worst, margin)
        tracker.add(worst, {"x": x})
    return tracker.report(cid, seed)


def _check_fig2_grid(cid: str, seed: int, trials: int) -> CheckReport:
    tracker = SlackTracker(0.0)
    for t in range(trials):
        if t == 0:
            header, rows = figures.fig2_rows(steps=11)
            margin = 0.0 if header == figures.FIG2_HEADER else -1.0
            dev = max(abs(r[2] - r[3]) for r in rows)
            tracker.add(min(margin, GAUSS_TOL - dev), {"side": "builder"})
            continue
        rng = _trial_rng(seed, cid, t)
        alpha = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        pipeline = gs.gr_real_gap(gs.coherent_state(alpha)).gap
        dev = abs(pipeline - gs.gap_coherent_closed_form(alpha))
        tracker.add(GAUSS_TOL - dev, {"alpha": [alpha.real, alpha.imag]})
    return tracker.report(cid, seed)


def _check_fig3_grid(cid: str, seed: int, trials: int) -> CheckReport:
    tracker = SlackTracker(0.0)
    for t in range(trials):
        if t == 0:
            header, rows = figures.fig3_rows(steps=11)
            margin = 0.0 if header == figures.FIG3_HEADER else -1.0
            dev = max(abs((r[2] - r[3]) - r[4]) for r in rows)
            tracker.add(min(margin, 1e-12 - dev), {"side": "builder"})
            continue
        rng = _trial_rng(seed, cid, t)
        zeta = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        pipeline = gs.gr_real_gap(gs.squeezed_state(zeta)).gap
        dev = abs(pipeline - gs.gap_squeezed_closed_form(zeta))
        tracker.add(GAUSS_TOL - dev, {"zeta": [zeta.real, zeta.imag]})
    return tracker.report(cid, seed)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


class Check:
    """A named check: default trial count plus a (seed, trials) runner."""

    __slots__ = ("check_id", "default_trials", "fn")

    def __init__(self, check_id: str, default_trials: int, fn):
        self.check_id = check_id
        self.default_trials = default_trials
        self.fn = fn

    def run(self, seed: int, trials: int | None = None) -> CheckReport:
        n = self.default_trials if trials is None else int(trials)
        if n < 1:
            raise ValueError("trial count must be at least 1")
        report = self.fn(seed, n)
        if report.check_id != self.check_id:
            raise RuntimeError(
                f"check {self.check_id!r} returned report {report.check_id!r}"
            )
        return report


_REGISTRY: dict[str, Check] = {}


def _register(check_id: str, default_trials: int, fn) -> None:
    if check_id in _REGISTRY:
        raise ValueError(f"duplicate check id {check_id!r}")
    _REGISTRY[check_id] = Check(check_id, default_trials, fn)


def _register_simple(check_id: str, default_trials: int, impl) -> None:
    _register(
        check_id,
        default_trials,
        lambda seed, n, cid=check_id: impl(cid, seed, n),
    )


def _build_registry() -> None:
    for mid in CLOSED_MEASURES:
        _register(
            f"real-gap-nonneg-{mid.label()}",
            1000,
            lambda s, n, m=mid: check_real_gap_nonneg(m, CLOSED_DIMS, n, s),
        )
        _register(
            f"conj-invariance-{mid.label()}",
            1000,
            lambda s, n, m=mid: check_conjugation_invariance(m, CLOSED_DIMS, n, s),
        )
        _register(
            f"conj-invariance-pure-{mid.label()}",
            600,
            lambda s, n, m=mid: check_conjugation_invariance(
                m, CLOSED_DIMS, n, s, ensemble="pure"
            ),
        )
        _register(
            f"conj-invariance-qubit-{mid.label()}",
            600,
            lambda s, n, m=mid: check_conjugation_invariance(
                m, CLOSED_DIMS, n, s, ensemble="qubit"
            ),
        )
        _register(
            f"axiom-faithfulness-{mid.label()}",
            800,
            lambda s, n, m=mid: check_faithfulness(m, CLOSED_DIMS, n, s),
        )
        _register(
            f"axiom-channel-monotone-{mid.label()}",
            1000,
            lambda s, n, m=mid: check_channel_monotonicity(m, CLOSED_DIMS, n, s),
        )
        _register(
            f"axiom-selective-monotone-{mid.label()}",
            1000,
            lambda s, n, m=mid: check_selective_monotonicity(m, CLOSED_DIMS, n, s),
        )
        _register(
            f"axiom-mixing-convexity-{mid.label()}",
            1000,
            lambda s, n, m=mid: check_mixing_convexity(m, CLOSED_DIMS, n, s),
        )
        _register(
            f"axiom-diag-unitary-{mid.label()}",
            800,
            lambda s, n, m=mid: check_diag_unitary_invariance(m, CLOSED_DIMS, n, s),
        )
    for mid in _C5_MEASURES:
        _register(
            f"axiom-direct-sum-{mid.label()}",
            1000,
            lambda s, n, m=mid: check_direct_sum_additivity(m, CLOSED_DIMS, n, s),
        )
    for mid in OPT_MEASURES:
        _register(
            f"real-gap-nonneg-{mid.label()}",
            200,
            lambda s, n, m=mid: check_real_gap_nonneg(m, OPT_DIMS, n, s),
        )
        _register(
            f"conj-invariance-{mid.label()}",
            1000,
            lambda s, n, m=mid: check_conjugation_invariance(m, OPT_DIMS, n, s),
        )
        _register(
            f"conj-invariance-pure-{mid.label()}",
            200,
            lambda s, n, m=mid: check_conjugation_invariance(
                m, OPT_DIMS, n, s, ensemble="pure"
            ),
        )
        _register(
            f"conj-invariance-qubit-{mid.label()}",
            300,
            lambda s, n, m=mid: check_conjugation_invariance(
                m, OPT_DIMS, n, s, ensemble="qubit"
            ),
        )
        _register(
            f"axiom-faithfulness-{mid.label()}",
            200,
            lambda s, n, m=mid: check_faithfulness(m, OPT_DIMS, n, s),
        )
        _register(
            f"axiom-channel-monotone-{mid.label()}",
            1000,
            lambda s, n, m=mid: check_channel_monotonicity(m, OPT_DIMS, n, s),
        )
        _register(
            f"axiom-diag-unitary-{mid.label()}",
            300,
            lambda s, n, m=mid: check_diag_unitary_invariance(m, OPT_DIMS, n, s),
        )
    for mid in ROOF_MEASURES:
        _register(
            f"conj-invariance-pure-{mid.label()}",
            200,
            lambda s, n, m=mid: check_conjugation_invariance(
                m, CLOSED_DIMS, n, s, ensemble="pure"
            ),
        )
        _register(
            f"conj-invariance-qubit-{mid.label()}",
            150,
            lambda s, n, m=mid: check_conjugation_invariance(
                m, CLOSED_DIMS, n, s, ensemble="qubit"
            ),
        )
        _register(
            f"axiom-faithfulness-{mid.label()}",
            150,
            lambda s, n, m=mid: check_faithfulness(m, CLOSED_DIMS, n, s),
        )
        _register(
            f"axiom-diag-unitary-{mid.label()}",
            120,
            lambda s, n, m=mid: check_diag_unitary_invariance(m, (2, 3), n, s),
        )
    _symmetrized_parts = (
        ("exact-symmetry", check_symmetrized_exact),
        ("monotone", check_symmetrized_monotone),
        ("real-fixed", check_symmetrized_real_fixed),
    )
    for mid in _SYMMETRIZED_MEASURES:
        dims = CLOSED_DIMS if catalog.is_closed_form(mid) else OPT_DIMS
        count = 400 if catalog.is_closed_form(mid) else 150
        for part, impl in _symmetrized_parts:
            _register(
                f"symmetrized-{mid.label()}-{part}",
                count,
                lambda s, n, m=mid, f=impl, dm=dims: f(m, dm, n, s),
            )
    _register_simple("state-conj-involution", 400, _check_conj_involution)
    _register_simple("state-real-imag-reassembly", 400, _check_reassembly)
    _register_simple("state-spectrum-conj-invariant", 400, _check_spectrum_conj)
    _register_simple("channel-conj-identity", 500, _check_channel_conj_identity)
    _register_simple("channel-incoherent-structure", 500, _check_incoherent_structure)
    _register_simple("fidelity-basics", 300, _check_fidelity_basics)
    _register_simple("qubit-l1-gap-identity", 10000, _check_bloch_identity)
    _register_simple("l1-gap-closed-form", 1000, _check_l1_gap_closed_form)
    for kind in ("robustness", "weight", "tracenorm", "geometric"):
        for d in (2, 3):
            _register(
                f"solver-oracle-{kind}-d{d}",
                12 if d == 2 else 8,
                lambda s, n, k=kind, dd=d: check_solver_vs_oracle(k, dd, n, s),
            )
    _register_simple("plus-state-extremes", 1, _check_plus_extremes)
    _register_simple("penalty-schedule-stability", 30, _check_penalty_stability)
    _register_simple("roof-pure-agreement", 200, _check_roof_pure_agreement)
    _register_simple("roof-diagonal-zero", 200, _check_roof_diagonal_zero)
    _register_simple("roof-restart-monotone", 12, _check_roof_restart_monotone)
    _register_simple("roof-eigen-dominance", 100, _check_roof_eigen_dominance)
    _register_simple("roof-qubit-closed-form", 100, _check_roof_qubit_closed_form)
    _register_simple("gauss-symplectic-algebra", 200, _check_gauss_symplectic_algebra)
    _register_simple("gauss-conj-involution", 300, _check_gauss_conj_involution)
    _register_simple("gauss-conj-spectrum", 400, _check_gauss_conj_spectrum)
    _register_simple(
        "gauss-real-projection-identities", 400, _check_gauss_projection_identities
    )
    _register_simple("gauss-uncertainty-closure", 300, _check_gauss_uncertainty_closure)
    _register_simple("gauss-normal-form-recovery", 300, _check_gauss_normal_form)
    _register_simple(
        "gauss-channel-conj-identity", 500, _check_gauss_channel_conj_identity
    )
    _register_simple("gauss-channel-conj-cp", 300, _check_gauss_channel_conj_cp)
    _register_simple("gauss-incoherent-probe", 200, _check_gauss_incoherent_probe)
    _register_simple("gauss-monotone", 500, _check_gauss_monotone)
    _register_simple("gauss-symmetrized-measure", 300, _check_gauss_symmetrized)
    _register_simple("gauss-real-gap-nonneg", 1000, _check_gauss_real_gap)
    _register_simple("gauss-projection-entropy", 1000, _check_gauss_projection_entropy)
    _register_simple("gauss-mix-entropy-concavity", 600, _check_gauss_mix_entropy)
    _register_simple("gauss-multi-mix-entropy", 400, _check_gauss_multi_mix)
    _register_simple(
        "gauss-spectrum-superadditive", 600, _check_gauss_spectrum_superadd
    )
    _register_simple("gauss-g-function-shape", 100, _check_gauss_g_shape)
    _register_simple("gauss-thermal-reference-forms", 200, _check_gauss_thermal_forms)
    _register_simple("gauss-coherent-gap-grid", 41, _check_gauss_coherent_grid)
    _register_simple("gauss-squeezed-gap-forms", 41, _check_gauss_squeezed_forms)
    _register_simple("fig1-grid-consistency", 42, _check_fig1_grid)
    _register_simple("fig2-grid-consistency", 50, _check_fig2_grid)
    _register_simple("fig3-grid-consistency", 50, _check_fig3_grid)


_build_registry()


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------


def all_check_ids() -> list[str]:
    return sorted(_REGISTRY)


def run_check(check_id: str, seed: int = DEFAULT_SEED, trials: int | None = None):
    try:
        check = _REGISTRY[check_id]
    except KeyError:
        raise ValueError(f"unknown check id {check_id!r}") from None
    return check.run(seed, trials)


def run_checks(
    seed: int = DEFAULT_SEED,
    filter: str | None = None,
    trials: int | None = None,
    threads: int | None = None,
):
    """Run all (or substring-filtered) checks; returns (reports, summary)."""
    ids = [cid for cid in sorted(_REGISTRY) if filter is None or filter in cid]
    if not ids:
        raise ValueError(f"no checks match filter {filter!r}")
    if trials is not None and int(trials) < 1:
        raise ValueError("trial count must be at least 1")
    if threads is None:
        threads = int(os.environ.get("COHEREKIT_THREADS", "1") or "1")
    threads = max(1, min(int(threads), len(ids)))
    if threads == 1:
        reports = [_REGISTRY[cid].run(seed, trials) for cid in ids]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_REGISTRY[cid].run, seed, trials) for cid in ids]
            reports = [f.result() for f in futures]
    return reports, summarize(reports)


def run_all(
    seed: int = DEFAULT_SEED,
    filter: str | None = None,
    trials: int | None = None,
    threads: int | None = None,
) -> dict:
    """Summary-only wrapper around run_checks."""
    return run_checks(seed, filter, trials, threads)[1]
