"""Closed-form coherence measures and the real-part gap.

Every measure here vanishes exactly on diagonal (incoherent) states and is
invariant under entrywise conjugation, C(rho) = C(rho*).  Values are clamped
at zero: a tiny negative round-off result (>= -1e-9) is truncated, anything
more negative raises, since it signals broken math rather than noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .states import (
    DensityMatrix,
    InvalidStateError,
    PureState,
    clamp_spectrum,
    dephase,
    von_neumann_entropy,
)

MEASURE_CLAMP_TOL = 1e-9


def _clamp_value(x: float, tol: float = MEASURE_CLAMP_TOL) -> float:
    if x < -tol:
        raise ArithmeticError(f"measure value {x:.3e} below -{tol:.0e}")
    return x if x > 0.0 else 0.0  # also normalizes -0.0


def c_l1(rho: DensityMatrix) -> float:
    """l1 norm of coherence: sum of |rho_jk| over all off-diagonal entries."""
    mags = np.abs(rho.data)
    return float(mags.sum() - np.trace(mags).real)


def c_rel_ent(rho: DensityMatrix) -> float:
    """Relative entropy of coherence S(Delta(rho)) - S(rho), in bits."""
    return _clamp_value(von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho))


def c_tsallis(rho: DensityMatrix, alpha: float) -> float:
    """Tsallis-type coherence for alpha in [0,1) or (1,2].

    C = (sum_j <j|rho^alpha|j>^(1/alpha) - 1) / (alpha - 1).  At alpha = 0
    the exponent 1/alpha is taken as the alpha -> 0+ limit: basis states
    fully inside the support contribute exp(<j| log rho |j>) restricted to
    the support, all others contribute 0.
    """
    if not (0.0 <= alpha < 1.0 or 1.0 < alpha <= 2.0):
        raise ValueError("alpha must lie in [0, 1) or (1, 2]")
    vals, vecs = np.linalg.eigh(rho.data)
    vals = clamp_spectrum(vals)
    # spectral round-off of a singular state shows up as eigenvalues near
    # 1e-16, which alpha < 1 amplifies to ~1e-8; treat them as exact zeros
    vals[vals < 1e-13] = 0.0
    weights = np.abs(vecs) ** 2  # weights[j, k] = |<j|e_k>|^2
    if alpha == 0.0:
        pos = vals > 1e-12
        w = weights[:, pos]
        in_support = w.sum(axis=1) >= 1.0 - 1e-12
        log_vals = np.log(vals[pos])
        terms = np.where(in_support, np.exp(w @ log_vals), 0.0)
        return _clamp_value(1.0 - float(terms.sum()))
    diag_pow = weights @ vals**alpha  # <j|rho^alpha|j>
    total = float((diag_pow ** (1.0 / alpha)).sum())
    return _clamp_value((total - 1.0) / (alpha - 1.0))


# ---------------------------------------------------------------------------
# concave symmetric functions for pure-state convex roofs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConcaveSymmetricFn:
    """Concave, permutation-symmetric f on probability vectors with f(e_j) = 0."""

    name: str
    fn: Callable[[np.ndarray], float]

    def __call__(self, probs: np.ndarray) -> float:
        return self.fn(np.asarray(probs, dtype=float))


def _shannon(probs: np.ndarray) -> float:
    p = probs[probs > 0.0]
    return float(-(p * np.log2(p)).sum()) if p.size else 0.0


def _one_minus_max(probs: np.ndarray) -> float:
    return float(1.0 - probs.max(initial=0.0))


SHANNON = ConcaveSymmetricFn("shannon", _shannon)
ONE_MINUS_MAX = ConcaveSymmetricFn("onemax", _one_minus_max)

_CONCAVE_FNS = {f.name: f for f in (SHANNON, ONE_MINUS_MAX)}


def concave_fn(name: str) -> ConcaveSymmetricFn:
    try:
        return _CONCAVE_FNS[name]
    except KeyError:
        raise ValueError(
            f"unknown concave function {name!r}; known: {sorted(_CONCAVE_FNS)}"
        ) from None


def c_convex_roof_pure(psi: PureState, f: ConcaveSymmetricFn) -> float:
    """Convex-roof measure on a pure state: f applied to (|<j|psi>|^2)_j."""
    return _clamp_value(f(np.abs(psi.amplitudes) ** 2))


# ---------------------------------------------------------------------------
# real-part gaps
# ---------------------------------------------------------------------------


def l1_real_gap_closed_form(rho: DensityMatrix) -> float:
    """C_l1(rho) - C_l1(Re rho) written directly as sum_jk (|rho_jk| - |Re rho_jk|)."""
    arr = rho.data
    return float((np.abs(arr) - np.abs(arr.real)).sum())


def bloch_state(x: float, y: float, z: float) -> DensityMatrix:
    """Qubit state (1/2)(I + x X + y Y + z Z) from Bloch coordinates."""
    if x * x + y * y + z * z > 1.0 + 1e-12:
        raise InvalidStateError("Bloch vector lies outside the unit ball")
    return DensityMatrix(
        0.5
        * np.array(
            [[1.0 + z, x - 1j * y], [x + 1j * y, 1.0 - z]],
            dtype=complex,
        )
    )


def bloch_gap_l1(x: float, y: float) -> float:
    """l1 real-part gap of a qubit in Bloch form: sqrt(x^2 + y^2) - |x|.

    Independent of z; requires x^2 + y^2 <= 1 so a state exists.
    """
    r2 = x * x + y * y
    if r2 > 1.0 + 1e-12:
        raise ValueError("x^2 + y^2 must not exceed 1")
    return math.sqrt(r2) - abs(x)
