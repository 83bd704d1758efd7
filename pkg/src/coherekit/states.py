"""Finite-dimensional quantum states and channels in a fixed reference basis.

All coherence and imaginarity quantities in this package are defined relative
to one orthonormal basis {|0>, ..., |d-1>}, the computational basis of the
stored arrays.  Density matrices are validated on construction (Hermitian,
unit trace, positive semidefinite) and their arrays are frozen; every
operation returns new objects.

Randomized helpers take an explicit integer seed and are bit-deterministic:
the same seed always yields the same output.  For parallel use derive one
seed per task with :func:`derived_rng`, which mixes a master seed and task
indices through ``numpy.random.SeedSequence``.
"""

from __future__ import annotations

import json
import math

import numpy as np

# Ingestion and validation tolerances.
HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
CHANNEL_SUM_TOL = 1e-9
BRANCH_PRUNE_TOL = 1e-12


class SchemaError(ValueError):
    """Malformed serialized payload (bad JSON, wrong shapes, NaN/Inf)."""


class InvalidStateError(ValueError):
    """A state failed one of its defining invariants."""


class InvalidChannelError(ValueError):
    """A channel failed trace preservation / trace non-increase."""


def derived_rng(master_seed: int, *key: int) -> np.random.Generator:
    """Generator for subtask ``key`` of a master seed.

    Mixing function: ``SeedSequence(entropy=master_seed, spawn_key=key)``.
    Distinct keys give independent streams; the mapping is stable across
    runs and platforms, so per-trial work can be farmed out in any order.
    """
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(key))
    return np.random.default_rng(seq)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


# ---------------------------------------------------------------------------
# value types
# ---------------------------------------------------------------------------


class DensityMatrix:
    """Validated d x d density matrix.

    Construction checks Hermiticity (entrywise, tol 1e-10), unit trace
    (tol 1e-10) and positive semidefiniteness (min eigenvalue >= -1e-10),
    then symmetrizes rho <- (rho + rho^dag)/2 to absorb round-off.
    """

    __slots__ = ("data", "dim")

    def __init__(self, data) -> None:
        arr = np.array(data, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidStateError("density matrix must be square")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise InvalidStateError("density matrix entries must be finite")
        herm_dev = np.abs(arr - arr.conj().T).max()
        if herm_dev > HERMITIAN_TOL:
            raise InvalidStateError(
                f"not Hermitian: max |rho - rho^dag| = {herm_dev:.3e} > {HERMITIAN_TOL:.0e}"
            )
        arr = (arr + arr.conj().T) / 2.0
        tr_dev = abs(arr.trace().real - 1.0)
        if tr_dev > TRACE_TOL:
            raise InvalidStateError(
                f"trace deviates from 1 by {tr_dev:.3e} > {TRACE_TOL:.0e}"
            )
        lam_min = float(np.linalg.eigvalsh(arr)[0])
        if lam_min < -PSD_TOL:
            raise InvalidStateError(
                f"not PSD: min eigenvalue {lam_min:.3e} < -{PSD_TOL:.0e}"
            )
        self.data = _freeze(arr)
        self.dim = arr.shape[0]

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


class PureState:
    """Normalized state vector (norm within 1e-10 of 1)."""

    __slots__ = ("amplitudes", "dim")

    def __init__(self, amplitudes) -> None:
        vec = np.array(amplitudes, dtype=complex).reshape(-1)
        if vec.size == 0:
            raise InvalidStateError("empty state vector")
        if not np.all(np.isfinite(vec.real)) or not np.all(np.isfinite(vec.imag)):
            raise InvalidStateError("state vector entries must be finite")
        norm_dev = abs(np.linalg.norm(vec) - 1.0)
        if norm_dev > 1e-10:
            raise InvalidStateError(f"norm deviates from 1 by {norm_dev:.3e}")
        self.amplitudes = _freeze(vec)
        self.dim = vec.size

    def to_density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))

    def __repr__(self) -> str:
        return f"PureState(dim={self.dim})"


class KrausChannel:
    """Operation given by Kraus operators {K_mu} on a d-dimensional space.

    kind="channel" requires sum_mu K_mu^dag K_mu = I within 1e-9.
    kind="operation" only requires I - sum_mu K_mu^dag K_mu PSD within -1e-9,
    i.e. a trace non-increasing map.
    """

    __slots__ = ("kraus", "dim", "kind")

    def __init__(self, kraus, kind: str = "channel") -> None:
        if kind not in ("channel", "operation"):
            raise InvalidChannelError(f"unknown channel kind {kind!r}")
        ops = [np.array(k, dtype=complex) for k in kraus]
        if not ops:
            raise InvalidChannelError("channel needs at least one Kraus operator")
        d = ops[0].shape[0]
        for k in ops:
            if k.ndim != 2 or k.shape != (d, d):
                raise InvalidChannelError("all Kraus operators must be d x d")
            if not np.all(np.isfinite(k.real)) or not np.all(np.isfinite(k.imag)):
                raise InvalidChannelError("Kraus entries must be finite")
        total = sum(k.conj().T @ k for k in ops)
        if kind == "channel":
            dev = np.abs(total - np.eye(d)).max()
            if dev > CHANNEL_SUM_TOL:
                raise InvalidChannelError(
                    f"sum K^dag K deviates from identity by {dev:.3e}"
                )
        else:
            lam_min = float(np.linalg.eigvalsh(np.eye(d) - total)[0])
            if lam_min < -CHANNEL_SUM_TOL:
                raise InvalidChannelError(
                    f"sum K^dag K exceeds identity: min eig(I - sum) = {lam_min:.3e}"
                )
        self.kraus = tuple(_freeze(k) for k in ops)
        self.dim = d
        self.kind = kind

    def __repr__(self) -> str:
        return f"KrausChannel(dim={self.dim}, branches={len(self.kraus)}, kind={self.kind!r})"


# ---------------------------------------------------------------------------
# basic operations
# ---------------------------------------------------------------------------


def conjugate_state(rho: DensityMatrix) -> DensityMatrix:
    """Entrywise complex conjugate rho* (an involution, spectrum preserved)."""
    return DensityMatrix(rho.data.conj())


def real_part(rho: DensityMatrix) -> DensityMatrix:
    """Re rho = (rho + rho*)/2, again a valid state (convex mix of states)."""
    return DensityMatrix((rho.data + rho.data.conj()) / 2.0)


def imag_part(rho: DensityMatrix) -> np.ndarray:
    """Im rho = (rho - rho*)/(2i) as a plain real antisymmetric array."""
    arr = (rho.data - rho.data.conj()) / 2j
    return arr.real


def dephase(rho: DensityMatrix) -> DensityMatrix:
    """Project onto the diagonal: Delta(rho) = sum_j <j|rho|j> |j><j|."""
    return DensityMatrix(np.diag(np.diag(rho.data)))


def clamp_spectrum(vals: np.ndarray, tol: float = PSD_TOL) -> np.ndarray:
    """Clamp eigenvalues in [-tol, 0) to 0; error on anything more negative."""
    lam_min = float(vals.min())
    if lam_min < -tol:
        raise InvalidStateError(f"eigenvalue {lam_min:.3e} below -{tol:.0e}")
    return np.clip(vals, 0.0, None)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -sum lambda log2 lambda, zero eigenvalues contribute 0."""
    vals = clamp_spectrum(np.linalg.eigvalsh(rho.data))
    vals = vals[vals > 0.0]
    return float(-(vals * np.log2(vals)).sum()) if vals.size else 0.0


def _sqrtm_psd(mat: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(mat)
    vals = clamp_spectrum(vals)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Uhlmann fidelity F = tr sqrt(sqrt(rho) sigma sqrt(rho)), in [0, 1]."""
    s = _sqrtm_psd(rho.data)
    inner = s @ sigma.data @ s
    vals = np.linalg.eigvalsh(inner)
    # inner is PSD up to round-off; the sqrt would blow eigenvalue noise of
    # singular inputs up to ~1e-8, so zero everything at round-off scale
    vals[vals < 1e-13] = 0.0
    f = float(np.sqrt(vals).sum())
    return min(f, 1.0)


def trace_norm(mat: np.ndarray) -> float:
    """Sum of singular values."""
    return float(np.linalg.svd(np.asarray(mat), compute_uv=False).sum())


def apply_channel(channel: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """sum_mu K_mu rho K_mu^dag (requires kind='channel' for a valid output state)."""
    if channel.dim != rho.dim:
        raise InvalidChannelError("channel and state dimensions differ")
    if channel.kind != "channel":
        raise InvalidChannelError("trace non-increasing operation does not return a state")
    out = np.zeros_like(rho.data)
    for k in channel.kraus:
        out = out + k @ rho.data @ k.conj().T
    return DensityMatrix(out)


def channel_branches(channel: KrausChannel, rho: DensityMatrix):
    """Selective outcomes [(p_mu, rho_mu)] with p_mu = tr K rho K^dag.

    Branches with p_mu < 1e-12 are pruned (their normalized state is not
    numerically meaningful).
    """
    if channel.dim != rho.dim:
        raise InvalidChannelError("channel and state dimensions differ")
    out = []
    for k in channel.kraus:
        mat = k @ rho.data @ k.conj().T
        p = float(mat.trace().real)
        if p < BRANCH_PRUNE_TOL:
            continue
        out.append((p, DensityMatrix(mat / p)))
    return out


def conjugate_channel(channel: KrausChannel) -> KrausChannel:
    """phi* with Kraus operators K_mu*; same kind, and phi*(rho*) = (phi(rho))*."""
    return KrausChannel([k.conj() for k in channel.kraus], kind=channel.kind)


def is_incoherent(channel: KrausChannel, tol: float = 1e-12) -> bool:
    """True iff every Kraus operator has at most one nonzero entry per column.

    Such operators map diagonal states to diagonal states branch by branch.
    """
    for k in channel.kraus:
        if (np.abs(k) > tol).sum(axis=0).max(initial=0) > 1:
            return False
    return True


def direct_sum(p: float, rho1: DensityMatrix, rho2: DensityMatrix) -> DensityMatrix:
    """Block state p rho1 (+) (1-p) rho2 on the concatenated basis."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("weight p must lie in [0, 1]")
    d1, d2 = rho1.dim, rho2.dim
    out = np.zeros((d1 + d2, d1 + d2), dtype=complex)
    out[:d1, :d1] = p * rho1.data
    out[d1:, d1:] = (1.0 - p) * rho2.data
    return DensityMatrix(out)


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def random_density(d: int, rank: int | None = None, seed: int = 0) -> DensityMatrix:
    """Ginibre-induced random state: G rectangular complex Gaussian, GG^dag normalized."""
    if rank is None:
        rank = d
    if not 1 <= rank <= d:
        raise ValueError("rank must lie in [1, d]")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    mat = g @ g.conj().T
    return DensityMatrix(mat / mat.trace().real)


def random_pure(d: int, seed: int = 0) -> PureState:
    rng = np.random.default_rng(seed)
    vec = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(vec / np.linalg.norm(vec))


def random_diag_unitary(d: int, seed: int = 0) -> KrausChannel:
    """Single-Kraus channel U = diag(exp(i theta_j)), incoherent both ways."""
    rng = np.random.default_rng(seed)
    phases = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=d))
    return KrausChannel([np.diag(phases)], kind="channel")


def random_incoherent_channel(d: int, branches: int, seed: int = 0) -> KrausChannel:
    """Random trace-preserving incoherent channel.

    Branch K_mu is either diagonal-times-permutation (one nonzero entry per
    column, all rows distinct) or a single-column collapse a|t><j|.  Columns
    sharing a target row never share a branch, so the cross-column terms of
    sum_mu K_mu^dag K_mu vanish structurally and a joint column rescale
    makes the sum exactly the identity.
    """
    if branches < 1:
        raise ValueError("need at least one branch")
    rng = np.random.default_rng(seed)
    targets = np.zeros((branches, d), dtype=np.int64)
    amps = np.zeros((branches, d), dtype=complex)
    targets[0] = rng.permutation(d)  # keeps every column represented
    amps[0] = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    for mu in range(1, branches):
        if rng.random() < 0.5:
            targets[mu] = rng.permutation(d)
            amps[mu] = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        else:
            j = int(rng.integers(d))
            targets[mu, j] = rng.integers(d)
            amps[mu, j] = complex(rng.standard_normal(), rng.standard_normal())
    col_norm = np.sqrt((np.abs(amps) ** 2).sum(axis=0))
    # branch 0 touches every column, so dead columns cannot occur; guard anyway
    dead = col_norm < 1e-12
    if dead.any():
        amps[0, dead] = 1.0
        col_norm = np.sqrt((np.abs(amps) ** 2).sum(axis=0))
    amps = amps / col_norm
    ops = []
    for mu in range(branches):
        k = np.zeros((d, d), dtype=complex)
        live = np.flatnonzero(np.abs(amps[mu]) > 0.0)
        k[targets[mu, live], live] = amps[mu, live]
        ops.append(k)
    return KrausChannel(ops, kind="channel")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _reject_nonfinite(token: str):
    raise SchemaError(f"non-finite literal {token!r} in payload")


def _loads(text: str) -> dict:
    try:
        obj = json.loads(text, parse_constant=_reject_nonfinite)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SchemaError("top-level JSON value must be an object")
    return obj


def _matrix_from_parts(re_part, im_part, d: int, what: str) -> np.ndarray:
    try:
        re_arr = np.array(re_part, dtype=float)
        im_arr = np.array(im_part, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{what}: re/im must be numeric matrices") from exc
    if re_arr.shape != (d, d) or im_arr.shape != (d, d):
        raise SchemaError(f"{what}: re/im must both be {d} x {d}")
    if not (np.isfinite(re_arr).all() and np.isfinite(im_arr).all()):
        raise SchemaError(f"{what}: entries must be finite")
    return re_arr + 1j * im_arr


def density_from_json(text: str) -> DensityMatrix:
    """Parse {"dim": d, "re": [[...]], "im": [[...]]}."""
    obj = _loads(text)
    if set(obj) != {"dim", "re", "im"}:
        raise SchemaError('density payload must have exactly keys "dim", "re", "im"')
    d = obj["dim"]
    if not isinstance(d, int) or d < 1:
        raise SchemaError('"dim" must be a positive integer')
    return DensityMatrix(_matrix_from_parts(obj["re"], obj["im"], d, "density matrix"))


def density_to_json(rho: DensityMatrix) -> str:
    payload = {
        "dim": rho.dim,
        "re": rho.data.real.tolist(),
        "im": rho.data.imag.tolist(),
    }
    return json.dumps(payload, sort_keys=True)


def kraus_from_json(text: str) -> KrausChannel:
    """Parse {"dim": d, "kind": "channel"|"operation", "kraus": [{"re", "im"}, ...]}."""
    obj = _loads(text)
    if set(obj) != {"dim", "kind", "kraus"}:
        raise SchemaError('channel payload must have exactly keys "dim", "kind", "kraus"')
    d = obj["dim"]
    if not isinstance(d, int) or d < 1:
        raise SchemaError('"dim" must be a positive integer')
    kind = obj["kind"]
    if kind not in ("channel", "operation"):
        raise SchemaError('"kind" must be "channel" or "operation"')
    ops_raw = obj["kraus"]
    if not isinstance(ops_raw, list) or not ops_raw:
        raise SchemaError('"kraus" must be a non-empty list')
    ops = []
    for i, item in enumerate(ops_raw):
        if not isinstance(item, dict) or set(item) != {"re", "im"}:
            raise SchemaError(f'kraus[{i}] must be an object with keys "re", "im"')
        ops.append(_matrix_from_parts(item["re"], item["im"], d, f"kraus[{i}]"))
    return KrausChannel(ops, kind=kind)


def kraus_to_json(channel: KrausChannel) -> str:
    payload = {
        "dim": channel.dim,
        "kind": channel.kind,
        "kraus": [{"re": k.real.tolist(), "im": k.imag.tolist()} for k in channel.kraus],
    }
    return json.dumps(payload, sort_keys=True)
