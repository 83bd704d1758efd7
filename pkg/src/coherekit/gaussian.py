"""Gaussian states as mean/covariance pairs, channels, and entropic measures.

A state on n modes is the pair (mean, cov) with quadratures interleaved as
(q1, p1, ..., qn, pn).  The symplectic form is Omega = direct sum of
[[0, 1], [-1, 0]] and physicality means V + i*Omega >= 0.  Conjugation in
the number basis acts as the quadrature reflection O = direct sum of
diag(1, -1): the conjugate state is (O mean, O V O), and the real projection
averages a state with its conjugate (p-components of the mean drop, the
q-p cross covariances drop).

Entropy is computed from the symplectic spectrum, the moduli of the
eigenvalues of i*Omega*V, taken one per mode, via the thermal entropy
function g.  The coherence measure here is the entropy gap to the thermal
reference state with matched per-mode photon numbers.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .report import CheckReport, SlackTracker
from .states import InvalidChannelError, InvalidStateError, SchemaError, derived_rng, _loads

SYMMETRY_TOL = 1e-10
UNCERTAINTY_TOL = 1e-9
PAIRING_TOL = 1e-8
G_DOMAIN_TOL = 1e-8
THERMAL_TOL = 1e-9


def omega(n: int) -> np.ndarray:
    """Symplectic form for n modes in interleaved quadrature ordering."""
    if n < 1:
        raise ValueError("need at least one mode")
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((2 * n, 2 * n))
    for j in range(n):
        out[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = block
    return out


def conjugation_matrix(n: int) -> np.ndarray:
    """Reflection diag(1, -1, 1, -1, ...) implementing conjugation."""
    if n < 1:
        raise ValueError("need at least one mode")
    diag = np.ones(2 * n)
    diag[1::2] = -1.0
    return np.diag(diag)


class GaussianState:
    """Validated (mean, cov) pair for n modes.

    Arrays are copied, symmetrized, and frozen.  Construction checks the
    shapes, symmetry of cov within 1e-10, and the uncertainty relation
    lambda_min(V + i Omega) >= -1e-9.
    """

    __slots__ = ("mean", "cov", "modes")

    def __init__(self, mean, cov):
        mean = np.array(mean, dtype=float)
        cov = np.array(cov, dtype=float)
        if mean.ndim != 1 or mean.size % 2 != 0 or mean.size == 0:
            raise InvalidStateError("mean must be a length-2n vector")
        n = mean.size // 2
        if cov.shape != (2 * n, 2 * n):
            raise InvalidStateError("cov must be 2n x 2n for the mean's n")
        if not (np.isfinite(mean).all() and np.isfinite(cov).all()):
            raise InvalidStateError("state contains non-finite entries")
        if np.abs(cov - cov.T).max() > SYMMETRY_TOL:
            raise InvalidStateError("cov is not symmetric within 1e-10")
        cov = 0.5 * (cov + cov.T)
        herm = cov + 1j * omega(n)
        lam = float(np.linalg.eigvalsh(herm)[0])
        if lam < -UNCERTAINTY_TOL:
            raise InvalidStateError(
                f"uncertainty violation: min eig of V+i Omega is {lam:.3e}"
            )
        if float(np.linalg.eigvalsh(cov)[0]) <= 0.0:
            raise InvalidStateError("cov must be positive definite")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "modes", n)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianState is immutable")

    def __repr__(self):
        return f"GaussianState(modes={self.modes})"


class GaussianChannel:
    """Triple (b, T, N) acting as mean -> T mean + b, cov -> T cov T^T + N."""

    __slots__ = ("b", "t_mat", "n_mat", "modes")

    def __init__(self, b, t_mat, n_mat):
        b = np.array(b, dtype=float)
        t_mat = np.array(t_mat, dtype=float)
        n_mat = np.array(n_mat, dtype=float)
        if b.ndim != 1 or b.size % 2 != 0 or b.size == 0:
            raise InvalidChannelError("b must be a length-2n vector")
        n = b.size // 2
        if t_mat.shape != (2 * n, 2 * n) or n_mat.shape != (2 * n, 2 * n):
            raise InvalidChannelError("T and N must be 2n x 2n")
        if not (
            np.isfinite(b).all() and np.isfinite(t_mat).all() and np.isfinite(n_mat).all()
        ):
            raise InvalidChannelError("channel contains non-finite entries")
        if np.abs(n_mat - n_mat.T).max() > SYMMETRY_TOL:
            raise InvalidChannelError("N is not symmetric within 1e-10")
        n_mat = 0.5 * (n_mat + n_mat.T)
        om = omega(n)
        herm = n_mat + 1j * om - 1j * (t_mat @ om @ t_mat.T)
        lam = float(np.linalg.eigvalsh(herm)[0])
        if lam < -UNCERTAINTY_TOL:
            raise InvalidChannelError(
                f"complete positivity violation: min eig {lam:.3e}"
            )
        for arr in (b, t_mat, n_mat):
            arr.setflags(write=False)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "t_mat", t_mat)
        object.__setattr__(self, "n_mat", n_mat)
        object.__setattr__(self, "modes", n)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianChannel is immutable")

    def __repr__(self):
        return f"GaussianChannel(modes={self.modes})"


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def conjugate_gaussian(state: GaussianState) -> GaussianState:
    o_mat = conjugation_matrix(state.modes)
    return GaussianState(o_mat @ state.mean, o_mat @ state.cov @ o_mat)


def real_projection(state: GaussianState) -> GaussianState:
    """Average of a state with its conjugate: the closest real Gaussian."""
    o_mat = conjugation_matrix(state.modes)
    mean = 0.5 * (state.mean + o_mat @ state.mean)
    cov = 0.5 * (state.cov + o_mat @ state.cov @ o_mat)
    return GaussianState(mean, cov)


def is_real_gaussian(state: GaussianState, tol: float = 1e-9) -> bool:
    o_mat = conjugation_matrix(state.modes)
    return (
        float(np.abs(state.mean - o_mat @ state.mean).max()) <= tol
        and float(np.abs(state.cov - o_mat @ state.cov @ o_mat).max()) <= tol
    )


def boxplus(p: float, left: GaussianState, right: GaussianState) -> GaussianState:
    """Gaussian combination: convex mix of means and covariances."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    if left.modes != right.modes:
        raise ValueError("mode count mismatch")
    return GaussianState(
        p * left.mean + (1.0 - p) * right.mean,
        p * left.cov + (1.0 - p) * right.cov,
    )


def boxplus_many(weights, states) -> GaussianState:
    weights = np.asarray(weights, dtype=float)
    states = list(states)
    if weights.ndim != 1 or len(states) != weights.size or weights.size == 0:
        raise ValueError("need one weight per state")
    if (weights < 0.0).any() or abs(weights.sum() - 1.0) > 1e-12:
        raise ValueError("weights must be a probability vector")
    n = states[0].modes
    if any(s.modes != n for s in states):
        raise ValueError("mode count mismatch")
    mean = sum(w * s.mean for w, s in zip(weights, states))
    cov = sum(w * s.cov for w, s in zip(weights, states))
    return GaussianState(mean, cov)


def apply_gaussian_channel(phi: GaussianChannel, state: GaussianState) -> GaussianState:
    if phi.modes != state.modes:
        raise ValueError("mode count mismatch")
    return GaussianState(
        phi.t_mat @ state.mean + phi.b,
        phi.t_mat @ state.cov @ phi.t_mat.T + phi.n_mat,
    )


def conjugate_gaussian_channel(phi: GaussianChannel) -> GaussianChannel:
    o_mat = conjugation_matrix(phi.modes)
    return GaussianChannel(
        o_mat @ phi.b, o_mat @ phi.t_mat @ o_mat, o_mat @ phi.n_mat @ o_mat
    )


def thermal_state(nus) -> GaussianState:
    nus = np.asarray(nus, dtype=float)
    if nus.ndim != 1 or nus.size == 0:
        raise ValueError("need a vector of symplectic values")
    if (nus < 1.0 - G_DOMAIN_TOL).any():
        raise InvalidStateError("thermal parameters must be >= 1")
    cov = np.diag(np.repeat(np.maximum(nus, 1.0), 2))
    return GaussianState(np.zeros(2 * nus.size), cov)


def coherent_state(alpha: complex) -> GaussianState:
    alpha = complex(alpha)
    return GaussianState([2.0 * alpha.real, 2.0 * alpha.imag], np.eye(2))


def squeezed_state(zeta: complex) -> GaussianState:
    """Single-mode squeezed vacuum with complex parameter zeta = r e^{i theta}."""
    zeta = complex(zeta)
    r = abs(zeta)
    theta = math.atan2(zeta.imag, zeta.real)
    ch, sh = math.cosh(2.0 * r), math.sinh(2.0 * r)
    cov = np.array(
        [
            [ch + math.cos(theta) * sh, math.sin(theta) * sh],
            [math.sin(theta) * sh, ch - math.cos(theta) * sh],
        ]
    )
    return GaussianState(np.zeros(2), cov)


# ---------------------------------------------------------------------------
# spectra and entropies
# ---------------------------------------------------------------------------


def _sqrtm_spd(mat: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(mat)
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.T


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """Moduli of the eigenvalues of i Omega V, one per mode, ascending.

    Computed from the Hermitian similarity V^{1/2} (i Omega) V^{1/2}, whose
    spectrum is real and symmetric about zero; the moduli must pair up
    within relative 1e-8 or the covariance is rejected.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2 != 0:
        raise ValueError("covariance must be 2n x 2n")
    n = cov.shape[0] // 2
    if np.abs(cov - cov.T).max() > 1e-8:
        raise ValueError("covariance must be symmetric")
    if float(np.linalg.eigvalsh(cov)[0]) <= 0.0:
        raise ValueError("covariance must be positive definite")
    root = _sqrtm_spd(cov)
    herm = 1j * (root @ omega(n) @ root)
    herm = 0.5 * (herm + herm.conj().T)
    spec = np.linalg.eigvalsh(herm)
    mods = np.sort(np.abs(spec))
    lo, hi = mods[0::2], mods[1::2]
    scale = np.maximum(hi, 1.0)
    if (np.abs(hi - lo) > PAIRING_TOL * scale).any():
        raise ArithmeticError("symplectic spectrum moduli failed to pair")
    return 0.5 * (lo + hi)


def williamson_check(cov: np.ndarray, m_mat: np.ndarray, tol: float = 1e-8) -> bool:
    """True iff m_mat is symplectic and brings cov to its diagonal normal form."""
    cov = np.asarray(cov, dtype=float)
    m_mat = np.asarray(m_mat, dtype=float)
    if m_mat.shape != cov.shape:
        raise ValueError("shape mismatch")
    n = cov.shape[0] // 2
    om = omega(n)
    if np.abs(m_mat @ om @ m_mat.T - om).max() > tol:
        return False
    target = np.diag(np.repeat(symplectic_eigenvalues(cov), 2))
    return bool(np.abs(m_mat @ cov @ m_mat.T - target).max() <= tol)


def g_function(x):
    """Thermal entropy g(x) = ((x+1)/2)log2((x+1)/2) - ((x-1)/2)log2((x-1)/2).

    Defined for x >= 1 with g(1) = 0 by the 0 log 0 convention; inputs in
    [1 - 1e-8, 1) are clamped to 1, anything lower is an error.
    """
    arr = np.asarray(x, dtype=float)
    if (arr < 1.0 - G_DOMAIN_TOL).any():
        raise ValueError("g_function requires x >= 1")
    arr = np.maximum(arr, 1.0)
    up = 0.5 * (arr + 1.0)
    down = 0.5 * (arr - 1.0)
    down_term = np.where(down > 0.0, down * np.log2(np.where(down > 0.0, down, 1.0)), 0.0)
    out = up * np.log2(up) - down_term
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(out)
    return out


def entropy_gaussian(state: GaussianState) -> float:
    """Entropy in bits: sum of g over the symplectic spectrum."""
    return float(np.sum(g_function(symplectic_eigenvalues(state.cov))))


def thermal_spectrum(state: GaussianState) -> np.ndarray:
    """Per-mode thermal parameters matching the state's photon numbers."""
    idx = np.arange(state.modes) * 2
    nus = 0.5 * (
        state.cov[idx, idx]
        + state.cov[idx + 1, idx + 1]
        + state.mean[idx] ** 2
        + state.mean[idx + 1] ** 2
    )
    if (nus < 1.0 - G_DOMAIN_TOL).any():
        raise InvalidStateError("thermal parameter below 1: invalid input state")
    return np.maximum(nus, 1.0)


def thermal_reference(state: GaussianState) -> GaussianState:
    return thermal_state(thermal_spectrum(state))


def is_thermal(state: GaussianState, tol: float = THERMAL_TOL) -> bool:
    if float(np.abs(state.mean).max()) > tol:
        return False
    cov = state.cov
    off = cov - np.diag(np.diag(cov))
    if float(np.abs(off).max()) > tol:
        return False
    diag = np.diag(cov)
    pairs_equal = np.abs(diag[0::2] - diag[1::2]).max() <= tol
    return bool(pairs_equal and (diag >= 1.0 - G_DOMAIN_TOL).all())


def c_gr(state: GaussianState) -> float:
    """Entropy gap to the photon-number-matched thermal reference (bits)."""
    value = float(np.sum(g_function(thermal_spectrum(state)))) - entropy_gaussian(state)
    if value < -1e-9:
        raise ArithmeticError(f"reference entropy gap {value:.3e} below -1e-9")
    return max(value, 0.0)


class GrRealGap(NamedTuple):
    gap: float
    thermal_bracket: float
    entropy_bracket: float


def gr_real_gap(state: GaussianState) -> GrRealGap:
    """Measure drop under real projection, split into its two brackets.

    gap = c_gr(state) - c_gr(real_projection(state)); the thermal bracket is
    the reference-entropy difference (nonnegative because projection only
    removes the p-mean contributions and g is increasing), and the entropy
    bracket is the state-entropy difference (nonnegative by concavity of the
    entropy under the mean/cov averaging).  The brackets sum to the gap.
    """
    projected = real_projection(state)
    thermal_bracket = float(
        np.sum(g_function(thermal_spectrum(state)))
        - np.sum(g_function(thermal_spectrum(projected)))
    )
    entropy_bracket = entropy_gaussian(projected) - entropy_gaussian(state)
    return GrRealGap(thermal_bracket + entropy_bracket, thermal_bracket, entropy_bracket)


def gap_coherent_closed_form(alpha: complex) -> float:
    """Closed form of the real-projection gap for coherent states."""
    alpha = complex(alpha)
    return g_function(1.0 + 2.0 * abs(alpha) ** 2) - g_function(
        1.0 + 2.0 * alpha.real**2
    )


def gap_squeezed_closed_form(zeta: complex) -> float:
    """Closed form of the real-projection gap for squeezed vacuum states.

    The projected covariance has determinant 1 + sin^2(theta) sinh^2(2r), so
    its single symplectic eigenvalue is the square root of that and the gap
    is g(sqrt(1 + sin^2(theta) sinh^2(2r))).
    """
    zeta = complex(zeta)
    r = abs(zeta)
    theta = math.atan2(zeta.imag, zeta.real)
    det = 1.0 + (math.sin(theta) * math.sinh(2.0 * r)) ** 2
    return g_function(math.sqrt(det))


def gap_squeezed_paper_formula(zeta: complex) -> float:
    """Printed closed form g(1 + sin^2(theta) sinh^2(2r)), no square root.

    This variant feeds the projected covariance determinant to g directly
    instead of its square root (for one mode the symplectic eigenvalue is
    sqrt(det V), so the spectral pipeline yields gap_squeezed_closed_form).
    It is kept verbatim for the fig3 comparison columns; the two disagree
    whenever sin(theta) sinh(2r) is nonzero, and the difference is reported
    rather than reconciled.
    """
    zeta = complex(zeta)
    r = abs(zeta)
    theta = math.atan2(zeta.imag, zeta.real)
    det = 1.0 + (math.sin(theta) * math.sinh(2.0 * r)) ** 2
    return g_function(det)


# ---------------------------------------------------------------------------
# majorization
# ---------------------------------------------------------------------------


def supermajorize_slack(x, y) -> float:
    """Minimum margin of the ascending prefix-sum dominance of x over y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("need two equal-length vectors")
    px = np.cumsum(np.sort(x))
    py = np.cumsum(np.sort(y))
    return float((px - py).min())


def weak_supermajorize(x, y, tol: float = 0.0) -> bool:
    """True iff every ascending prefix sum of x dominates that of y."""
    return supermajorize_slack(x, y) >= -tol


# ---------------------------------------------------------------------------
# incoherence probe
# ---------------------------------------------------------------------------


def thermal_probe_set(n: int, max_probes: int = 16) -> list[GaussianState]:
    """Default probe thermal states: nu drawn from {1, 1.5, 3, 10}^n, capped."""
    base = [1.0, 1.5, 3.0, 10.0]
    probes = [np.full(n, v) for v in base]
    if n > 1:
        rng = derived_rng(20240, n)
        while len(probes) < max_probes:
            probes.append(np.array([base[k] for k in rng.integers(0, 4, size=n)]))
    return [thermal_state(p) for p in probes[:max_probes]]


def probe_incoherent_gaussian(
    phi: GaussianChannel, probes: list[GaussianState] | None = None
) -> CheckReport:
    """Necessary-condition test: thermal probes must map to thermal outputs.

    Also cross-checks that the conjugate channel agrees with the channel on
    every probe.  slack is -(distance from thermal form), so failures carry
    the probe that broke incoherence.
    """
    if probes is None:
        probes = thermal_probe_set(phi.modes)
    if not probes:
        raise ValueError("need at least one probe")
    tracker = SlackTracker(THERMAL_TOL)
    conj = conjugate_gaussian_channel(phi)
    for k, probe in enumerate(probes):
        if not is_thermal(probe):
            raise InvalidStateError("probe states must be thermal")
        out = apply_gaussian_channel(phi, probe)
        dev = float(np.abs(out.mean).max())
        off = out.cov - np.diag(np.diag(out.cov))
        dev = max(dev, float(np.abs(off).max()))
        diag = np.diag(out.cov)
        dev = max(dev, float(np.abs(diag[0::2] - diag[1::2]).max()))
        out_conj = apply_gaussian_channel(conj, probe)
        dev = max(dev, float(np.abs(out.mean - out_conj.mean).max()))
        dev = max(dev, float(np.abs(out.cov - out_conj.cov).max()))
        tracker.add(-dev, {"probe": k, "nu": np.diag(probe.cov)[0::2].tolist()})
    return tracker.report("gaussian-channel-incoherence-probe", seed=0)


# ---------------------------------------------------------------------------
# random generators
# ---------------------------------------------------------------------------


def random_symplectic(n: int, seed: int = 0) -> np.ndarray:
    """Random symplectic matrix: orthogonal part times single-mode squeezers."""
    rng = derived_rng(seed, 11, n)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    q = q * np.sign(np.real(np.diag(r)) + 1e-300)
    x_re, x_im = np.real(q), np.imag(q)
    # orthogonal symplectic in (q1..qn, p1..pn) ordering, then interleave
    k_qqpp = np.block([[x_re, -x_im], [x_im, x_re]])
    perm = np.empty(2 * n, dtype=int)
    perm[0::2] = np.arange(n)
    perm[1::2] = np.arange(n) + n
    k_mat = k_qqpp[np.ix_(perm, perm)]
    local = np.zeros((2 * n, 2 * n))
    for j in range(n):
        theta = rng.uniform(0.0, 2.0 * math.pi)
        r_j = rng.uniform(-0.8, 0.8)
        rot = np.array(
            [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
        )
        squeeze = np.diag([math.exp(r_j), math.exp(-r_j)])
        local[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = rot @ squeeze
    return k_mat @ local


def random_gaussian_state(
    n: int, seed: int = 0, nu_max: float = 5.0, mean_scale: float = 1.0
) -> GaussianState:
    state, _ = random_gaussian_state_with_form(n, seed, nu_max, mean_scale)
    return state


def random_gaussian_state_with_form(
    n: int, seed: int = 0, nu_max: float = 5.0, mean_scale: float = 1.0
) -> tuple[GaussianState, np.ndarray]:
    """Random state plus the symplectic matrix that diagonalizes its cov.

    The covariance is built as S^T D S with S random symplectic and D a
    known diagonal normal form, so M = inverse-transpose of S certifies the
    normal form exactly.
    """
    if n < 1:
        raise ValueError("need at least one mode")
    rng = derived_rng(seed, 12, n)
    nus = np.sort(rng.uniform(1.0, nu_max, size=n))
    s_mat = random_symplectic(n, seed=int(rng.integers(0, 2**31)))
    cov = s_mat.T @ np.diag(np.repeat(nus, 2)) @ s_mat
    mean = mean_scale * rng.standard_normal(2 * n)
    m_mat = np.linalg.inv(s_mat).T
    return GaussianState(mean, cov), m_mat


def random_gaussian_channel(n: int, seed: int = 0) -> GaussianChannel:
    """Random CP channel: free T, noise lifted to clear the CP bound."""
    rng = derived_rng(seed, 13, n)
    t_mat = rng.standard_normal((2 * n, 2 * n)) / math.sqrt(2 * n)
    om = omega(n)
    herm = 1j * om - 1j * (t_mat @ om @ t_mat.T)
    need = -float(np.linalg.eigvalsh(herm)[0])
    w = rng.standard_normal((2 * n, 2 * n)) / math.sqrt(2 * n)
    n_mat = w @ w.T + (max(need, 0.0) + 0.1) * np.eye(2 * n)
    b = rng.standard_normal(2 * n)
    return GaussianChannel(b, t_mat, n_mat)


def random_incoherent_gaussian_channel(n: int, seed: int = 0) -> GaussianChannel:
    """Mode-wise attenuation/amplification channel, incoherent by construction.

    Per mode: T = t I2, N = m I2 with m = |1 - t^2| + u, u >= 0.  CP holds
    because the per-mode defect matrix has eigenvalues m -+ (1 - t^2), and
    every thermal input nu maps to the thermal output t^2 nu + m >= 1.
    """
    rng = derived_rng(seed, 14, n)
    t_diag = np.zeros(2 * n)
    m_diag = np.zeros(2 * n)
    for j in range(n):
        t_j = rng.uniform(0.3, 1.7)
        u_j = rng.uniform(0.0, 0.5)
        t_diag[2 * j : 2 * j + 2] = t_j
        m_diag[2 * j : 2 * j + 2] = abs(1.0 - t_j * t_j) + u_j
    return GaussianChannel(np.zeros(2 * n), np.diag(t_diag), np.diag(m_diag))


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def gaussian_from_json(text: str) -> GaussianState:
    payload = _loads(text)
    if not isinstance(payload, dict) or set(payload) != {"modes", "mean", "cov"}:
        raise SchemaError('expected keys {"modes", "mean", "cov"}')
    n = payload["modes"]
    if not isinstance(n, int) or n < 1:
        raise SchemaError("modes must be a positive integer")
    mean = np.array(payload["mean"], dtype=float)
    cov = np.array(payload["cov"], dtype=float)
    if mean.shape != (2 * n,):
        raise SchemaError("mean must have length 2n")
    if cov.shape != (2 * n, 2 * n):
        raise SchemaError("cov must be 2n x 2n")
    return GaussianState(mean, cov)


def gaussian_to_json(state: GaussianState) -> str:
    import json

    return json.dumps(
        {
            "modes": state.modes,
            "mean": state.mean.tolist(),
            "cov": state.cov.tolist(),
        },
        sort_keys=True,
    )


def gaussian_channel_from_json(text: str) -> GaussianChannel:
    payload = _loads(text)
    if not isinstance(payload, dict) or set(payload) != {"modes", "b", "T", "N"}:
        raise SchemaError('expected keys {"modes", "b", "T", "N"}')
    n = payload["modes"]
    if not isinstance(n, int) or n < 1:
        raise SchemaError("modes must be a positive integer")
    b = np.array(payload["b"], dtype=float)
    t_mat = np.array(payload["T"], dtype=float)
    n_mat = np.array(payload["N"], dtype=float)
    if b.shape != (2 * n,) or t_mat.shape != (2 * n, 2 * n) or n_mat.shape != (2 * n, 2 * n):
        raise SchemaError("b must have length 2n and T, N must be 2n x 2n")
    return GaussianChannel(b, t_mat, n_mat)


def gaussian_channel_to_json(phi: GaussianChannel) -> str:
    import json

    return json.dumps(
        {
            "modes": phi.modes,
            "b": phi.b.tolist(),
            "T": phi.t_mat.tolist(),
            "N": phi.n_mat.tolist(),
        },
        sort_keys=True,
    )
