"""Measure catalog: parse measure ids, evaluate them, and map tolerances.

Measure strings accepted everywhere (CLI and harness):

    l1, relent, tsallis:<alpha>, robustness, geometric, tracenorm, weight,
    roofpure:<f-id>

The roofpure measures are exact on pure states; on mixed states the value
is the flagged upper-bound estimate, made conjugation-symmetric by taking
the better of the searches started from the state and from its conjugate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import closedform, variational
from .states import DensityMatrix, PureState, conjugate_state, real_part

CLOSED_TOL = 1e-9
OPT_TOL = 1e-4

_CLOSED_KINDS = ("l1", "relent", "tsallis", "roofpure")
_OPT_KINDS = ("robustness", "geometric", "tracenorm", "weight")


@dataclass(frozen=True)
class MeasureId:
    kind: str
    alpha: float | None = None
    f_id: str | None = None

    def __post_init__(self):
        if self.kind not in _CLOSED_KINDS + _OPT_KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.kind == "tsallis":
            if self.alpha is None:
                raise ValueError("tsallis requires an alpha")
            if not (0.0 <= self.alpha < 1.0 or 1.0 < self.alpha <= 2.0):
                raise ValueError("tsallis alpha must lie in [0,1) or (1,2]")
        if self.kind == "roofpure":
            closedform.concave_fn(self.f_id or "")

    def label(self) -> str:
        if self.kind == "tsallis":
            return f"tsallis:{self.alpha:g}"
        if self.kind == "roofpure":
            return f"roofpure:{self.f_id}"
        return self.kind


def parse_measure(text: str) -> MeasureId:
    text = text.strip()
    if ":" in text:
        head, _, tail = text.partition(":")
        if head == "tsallis":
            try:
                alpha = float(tail)
            except ValueError:
                raise ValueError(f"bad tsallis alpha {tail!r}") from None
            return MeasureId("tsallis", alpha=alpha)
        if head == "roofpure":
            return MeasureId("roofpure", f_id=tail)
        raise ValueError(f"unknown measure {text!r}")
    return MeasureId(text)


def is_closed_form(mid: MeasureId) -> bool:
    return mid.kind in _CLOSED_KINDS


def tolerance_for(mid: MeasureId) -> float:
    return CLOSED_TOL if is_closed_form(mid) else OPT_TOL


def dimension_cap(mid: MeasureId) -> int | None:
    if mid.kind == "roofpure":
        return 8
    if mid.kind in _OPT_KINDS:
        return 16
    return None


def _roof_upper_symmetric(
    rho: DensityMatrix, f_id: str, cfg: variational.SolverConfig | None
) -> variational.SolveResult:
    """Upper-bound roof estimate, exactly symmetric under conjugation.

    The achievable-ensemble search is run from both the state and its
    conjugate (the decomposition set is closed under conjugation, with equal
    objective values), and the smaller result is kept; both arguments
    therefore return the identical value.
    """
    fn = closedform.concave_fn(f_id)
    first = variational.c_convex_roof_upper(rho, fn, cfg)
    if not first.flagged_upper_bound:
        return first
    second = variational.c_convex_roof_upper(conjugate_state(rho), fn, cfg)
    return first if first.value <= second.value else second


def _check_cap(mid: MeasureId, rho: DensityMatrix) -> None:
    cap = dimension_cap(mid)
    if cap is not None and rho.dim > cap:
        raise ValueError(f"{mid.label()} supports dimension <= {cap}")


def evaluate_full(
    mid: MeasureId, rho: DensityMatrix, cfg: variational.SolverConfig | None = None
):
    """Evaluate a measure, returning a SolveResult-like record.

    Closed-form measures come back wrapped in a SolveResult with an empty
    certificate so the CLI can treat every measure uniformly.
    """
    _check_cap(mid, rho)
    if mid.kind == "l1":
        return variational.SolveResult(closedform.c_l1(rho), np.zeros(0), 0.0, 0)
    if mid.kind == "relent":
        return variational.SolveResult(closedform.c_rel_ent(rho), np.zeros(0), 0.0, 0)
    if mid.kind == "tsallis":
        return variational.SolveResult(
            closedform.c_tsallis(rho, mid.alpha), np.zeros(0), 0.0, 0
        )
    if mid.kind == "roofpure":
        return _roof_upper_symmetric(rho, mid.f_id, cfg)
    if mid.kind == "robustness":
        return variational.c_robustness(rho, cfg)
    if mid.kind == "weight":
        return variational.c_weight(rho, cfg)
    if mid.kind == "tracenorm":
        return variational.c_trace_norm(rho, cfg)
    return variational.c_geometric(rho, cfg)


def evaluate(
    mid: MeasureId, rho: DensityMatrix, cfg: variational.SolverConfig | None = None
) -> float:
    return float(evaluate_full(mid, rho, cfg).value)


def evaluate_pure(
    mid: MeasureId, psi: PureState, cfg: variational.SolverConfig | None = None
) -> float:
    """Evaluate on a pure state, using the exact pure form where one exists."""
    if mid.kind == "roofpure":
        return closedform.c_convex_roof_pure(psi, closedform.concave_fn(mid.f_id))
    return evaluate(mid, psi.to_density(), cfg)


def evaluate_many(
    mid: MeasureId, rhos: list[DensityMatrix], cfg: variational.SolverConfig | None = None
) -> np.ndarray:
    """Evaluate a batch; the geometric measure runs its ascent in lockstep."""
    if not rhos:
        return np.zeros(0)
    for rho in rhos:
        _check_cap(mid, rho)
    if mid.kind == "geometric":
        dims = {rho.dim for rho in rhos}
        out = np.empty(len(rhos))
        vals_cache = {id(rho): np.linalg.eigvalsh(rho.data) for rho in rhos}
        for d in sorted(dims):
            idx = [k for k, rho in enumerate(rhos) if rho.dim == d]
            pure = [k for k in idx if vals_cache[id(rhos[k])][-1] >= 1.0 - 1e-9]
            mixed = [k for k in idx if vals_cache[id(rhos[k])][-1] < 1.0 - 1e-9]
            for k in pure:
                out[k] = variational.c_geometric(rhos[k], cfg).value
            if mixed:
                stack = np.stack([rhos[k].data for k in mixed])
                values, _ = variational.geometric_batch(stack, cfg)
                out[mixed] = values
        return out
    return np.array([evaluate(mid, rho, cfg) for rho in rhos])


def symmetrized_value(
    mid: MeasureId, rho: DensityMatrix, cfg: variational.SolverConfig | None = None
) -> float:
    """Average of the measure on the state and on its conjugate."""
    return 0.5 * (evaluate(mid, rho, cfg) + evaluate(mid, conjugate_state(rho), cfg))


def real_gap(
    mid: MeasureId, rho: DensityMatrix, cfg: variational.SolverConfig | None = None
) -> float:
    """Measure drop when the state is replaced by its real part."""
    return evaluate(mid, rho, cfg) - evaluate(mid, real_part(rho), cfg)


DEFAULT_MEASURES = tuple(
    parse_measure(s)
    for s in (
        "l1",
        "relent",
        "tsallis:0.5",
        "tsallis:2",
        "robustness",
        "geometric",
        "tracenorm",
        "weight",
    )
)

CLOSED_MEASURES = tuple(m for m in DEFAULT_MEASURES if is_closed_form(m))
OPT_MEASURES = tuple(m for m in DEFAULT_MEASURES if not is_closed_form(m))
ROOF_MEASURES = (parse_measure("roofpure:shannon"), parse_measure("roofpure:onemax"))
