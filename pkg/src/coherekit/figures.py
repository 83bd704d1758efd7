"""Figure data grids: gap surfaces over state-family parameter planes.

Each builder returns (header, rows) where rows are plain tuples of floats
(or None for cells outside the domain).  The pipeline columns are computed
by constructing the state and running the measures; closed-form columns are
independent formulas, and the two are cross-checked here at build time so a
drifting implementation cannot silently emit wrong figure data.
"""

from __future__ import annotations

from . import gaussian as gs
from .closedform import bloch_gap_l1, bloch_state, c_l1
from .states import real_part

FIG1_HEADER = ("x", "y", "gap")
FIG2_HEADER = ("re_alpha", "im_alpha", "gap_pipeline", "gap_closed_form")
FIG3_HEADER = (
    "re_zeta",
    "im_zeta",
    "gap_pipeline",
    "gap_paper_formula",
    "gap_discrepancy",
)

_FIG1_CROSS_TOL = 1e-12
_FIG2_CROSS_TOL = 1e-9
_FIG3_CROSS_TOL = 1e-9


def _axis(extent: float, steps: int) -> list[float]:
    if steps < 2:
        raise ValueError("steps must be at least 2")
    return [-extent + 2.0 * extent * k / (steps - 1) for k in range(steps)]


def fig1_rows(steps: int = 101, extent: float = 1.0):
    """l1 gap C(rho) - C(Re rho) over the Bloch disk at z = 0.

    Cells outside the unit disk are emitted with an empty gap value.  Each
    inside cell is cross-checked against sqrt(x^2+y^2) - |x| within 1e-12.
    """
    rows = []
    for x in _axis(extent, steps):
        for y in _axis(extent, steps):
            if x * x + y * y > 1.0 + 1e-12:
                rows.append((x, y, None))
                continue
            rho = bloch_state(x, y, 0.0)
            gap = c_l1(rho) - c_l1(real_part(rho))
            closed = bloch_gap_l1(x, y)
            if abs(gap - closed) > _FIG1_CROSS_TOL:
                raise ArithmeticError(
                    f"fig1 cross-check failed at ({x:.6g},{y:.6g}): "
                    f"{gap!r} vs {closed!r}"
                )
            rows.append((x, y, gap))
    return FIG1_HEADER, rows


def fig2_rows(steps: int = 41, extent: float = 2.0):
    """Gaussian real-projection gap over the coherent-state plane."""
    rows = []
    for re in _axis(extent, steps):
        for im in _axis(extent, steps):
            alpha = complex(re, im)
            pipeline = gs.gr_real_gap(gs.coherent_state(alpha)).gap
            closed = gs.gap_coherent_closed_form(alpha)
            if abs(pipeline - closed) > _FIG2_CROSS_TOL:
                raise ArithmeticError(
                    f"fig2 cross-check failed at alpha={alpha:.6g}"
                )
            rows.append((re, im, pipeline, closed))
    return FIG2_HEADER, rows


def fig3_rows(steps: int = 41, extent: float = 1.5):
    """Gaussian real-projection gap over the squeezed-vacuum plane.

    Emits both the pipeline value (which matches the sqrt-of-determinant
    closed form within 1e-9) and the no-sqrt printed formula, plus their
    difference; the discrepancy column is data, not an assertion.
    """
    rows = []
    for re in _axis(extent, steps):
        for im in _axis(extent, steps):
            zeta = complex(re, im)
            pipeline = gs.gr_real_gap(gs.squeezed_state(zeta)).gap
            closed = gs.gap_squeezed_closed_form(zeta)
            if abs(pipeline - closed) > _FIG3_CROSS_TOL:
                raise ArithmeticError(
                    f"fig3 cross-check failed at zeta={zeta:.6g}"
                )
            printed = gs.gap_squeezed_paper_formula(zeta)
            rows.append((re, im, pipeline, printed, pipeline - printed))
    return FIG3_HEADER, rows


def format_cell(value) -> str:
    if value is None:
        return ""
    if value == 0.0:
        value = 0.0  # normalize -0.0 so grids are byte-stable
    return format(float(value), ".12g")


def rows_to_csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_cell(v) for v in row))
    return "\n".join(lines) + "\n"
