"""Command-line interface.

Subcommands: measure, gap, fig1, fig2, fig3, gaussian-measure, verify.
Exit codes: 0 success, 2 usage or parse errors, 3 invalid state or channel
content, 4 verification failures.  All CSV output uses 12 significant
digits so files are byte-stable for fixed flags.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, figures, variational, verify
from . import gaussian as gs
from .states import (
    InvalidChannelError,
    InvalidStateError,
    SchemaError,
    density_from_json,
    real_part,
)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt_scalar(value) -> str:
    if isinstance(value, float):
        return figures.format_cell(value)
    if isinstance(value, (list, tuple)):
        return ";".join(_fmt_scalar(v) for v in value)
    return str(value)


def _dict_text(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    keys = list(payload.keys())
    return (
        ",".join(keys)
        + "\n"
        + ",".join(_fmt_scalar(payload[k]) for k in keys)
        + "\n"
    )


def _grid_text(header, rows, fmt: str) -> str:
    if fmt == "csv":
        return figures.rows_to_csv(header, rows)
    body = [[(None if v is None else float(v)) for v in row] for row in rows]
    return json.dumps({"header": list(header), "rows": body}) + "\n"


def _solver_cfg(args):
    flags = (args.max_iters, args.tol, args.restarts, args.seed)
    if all(v is None for v in flags):
        return None
    base = variational.SolverConfig()
    return variational.SolverConfig(
        max_iters=base.max_iters if args.max_iters is None else int(args.max_iters),
        tol=base.tol if args.tol is None else float(args.tol),
        restarts=base.restarts if args.restarts is None else int(args.restarts),
        seed=base.seed if args.seed is None else int(args.seed),
    )


def cmd_measure(args) -> int:
    mid = catalog.parse_measure(args.measure)
    rho = density_from_json(_read_text(args.state))
    res = catalog.evaluate_full(mid, rho, _solver_cfg(args))
    payload = {"measure": mid.label(), "value": float(res.value)}
    if not catalog.is_closed_form(mid):
        payload["feasibility"] = float(res.feasibility)
        payload["iterations"] = int(res.iterations)
        payload["flagged_upper_bound"] = bool(res.flagged_upper_bound)
        if res.certificate.size:
            payload["certificate"] = [float(c) for c in res.certificate]
    _emit(args, _dict_text(payload, args.format))
    return 0


def cmd_gap(args) -> int:
    mid = catalog.parse_measure(args.measure)
    rho = density_from_json(_read_text(args.state))
    cfg = _solver_cfg(args)
    value = catalog.evaluate(mid, rho, cfg)
    value_re = catalog.evaluate(mid, real_part(rho), cfg)
    payload = {
        "measure": mid.label(),
        "value_rho": float(value),
        "value_re_rho": float(value_re),
        "gap": float(value - value_re),
    }
    _emit(args, _dict_text(payload, args.format))
    return 0


def cmd_fig1(args) -> int:
    header, rows = figures.fig1_rows(steps=args.steps, extent=args.range)
    _emit(args, _grid_text(header, rows, args.format))
    return 0


def cmd_fig2(args) -> int:
    header, rows = figures.fig2_rows(steps=args.steps, extent=args.range)
    _emit(args, _grid_text(header, rows, args.format))
    return 0


def cmd_fig3(args) -> int:
    header, rows = figures.fig3_rows(steps=args.steps, extent=args.range)
    _emit(args, _grid_text(header, rows, args.format))
    return 0


def cmd_gaussian_measure(args) -> int:
    state = gs.gaussian_from_json(_read_text(args.state))
    if args.measure == "gr":
        payload = {"measure": "gr", "value": float(gs.c_gr(state))}
    else:
        parts = gs.gr_real_gap(state)
        payload = {
            "measure": "gr-gap",
            "value_rho": float(gs.c_gr(state)),
            "value_re_rho": float(gs.c_gr(gs.real_projection(state))),
            "gap": float(parts.gap),
            "thermal_bracket": float(parts.thermal_bracket),
            "entropy_bracket": float(parts.entropy_bracket),
        }
    _emit(args, _dict_text(payload, args.format))
    return 0


def cmd_verify(args) -> int:
    reports, summary = verify.run_checks(
        seed=args.seed, filter=args.filter, trials=args.trials
    )
    if args.format == "json":
        text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    else:
        cols = (
            "check_id",
            "seed",
            "trials",
            "failures",
            "worst_slack",
            "instance_digest",
        )
        lines = [",".join(cols)]
        for row in summary["checks"]:
            lines.append(",".join(_fmt_scalar(row[c]) for c in cols))
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return 0 if summary["pass"] else 4


def _add_output_flags(sub, default_format: str) -> None:
    sub.add_argument("--out", help="write output to this path instead of stdout")
    sub.add_argument(
        "--format",
        choices=("json", "csv"),
        default=default_format,
        help=f"output format (default {default_format})",
    )


def _add_solver_flags(sub) -> None:
    sub.add_argument(
        "--tol", type=float, help="solver tolerance (default 1e-9)"
    )
    sub.add_argument(
        "--max-iters", type=int, help="solver iteration budget per stage"
    )
    sub.add_argument("--restarts", type=int, help="solver restart count")
    sub.add_argument("--seed", type=int, help="solver start-point seed")


def _add_fig(sub_parsers, name: str, steps: int, extent: float, fn, what: str):
    sub = sub_parsers.add_parser(name, help=what)
    sub.add_argument(
        "--steps", type=int, default=steps, help=f"grid points per axis (default {steps})"
    )
    sub.add_argument(
        "--range",
        type=float,
        default=extent,
        help=f"half-width of the square grid (default {extent})",
    )
    _add_output_flags(sub, "csv")
    sub.set_defaults(func=fn)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coherekit",
        description="Coherence and imaginarity measures, gap grids, and the "
        "randomized verification suite.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    measure = commands.add_parser("measure", help="evaluate a measure on a state")
    measure.add_argument("state", help="density-matrix JSON file ('-' for stdin)")
    measure.add_argument(
        "measure",
        help="measure id: l1, relent, tsallis:<alpha>, robustness, geometric, "
        "tracenorm, weight, roofpure:<f-id>",
    )
    _add_solver_flags(measure)
    _add_output_flags(measure, "json")
    measure.set_defaults(func=cmd_measure)

    gap = commands.add_parser(
        "gap", help="measure drop when the state is replaced by its real part"
    )
    gap.add_argument("state", help="density-matrix JSON file ('-' for stdin)")
    gap.add_argument("measure", help="measure id (same grammar as 'measure')")
    _add_solver_flags(gap)
    _add_output_flags(gap, "json")
    gap.set_defaults(func=cmd_gap)

    _add_fig(
        commands, "fig1", 101, 1.0, cmd_fig1, "l1 gap grid over the Bloch disk"
    )
    _add_fig(
        commands,
        "fig2",
        41,
        2.0,
        cmd_fig2,
        "Gaussian gap grid over the coherent-state plane",
    )
    _add_fig(
        commands,
        "fig3",
        41,
        1.5,
        cmd_fig3,
        "Gaussian gap grid over the squeezed-vacuum plane",
    )

    gauss = commands.add_parser(
        "gaussian-measure", help="Gaussian measure or projection gap"
    )
    gauss.add_argument("state", help="Gaussian-state JSON file ('-' for stdin)")
    gauss.add_argument(
        "--measure",
        choices=("gr", "gr-gap"),
        default="gr",
        help="value only, or the full projection-gap breakdown",
    )
    _add_output_flags(gauss, "json")
    gauss.set_defaults(func=cmd_gaussian_measure)

    ver = commands.add_parser("verify", help="run the randomized check suite")
    ver.add_argument(
        "--seed", type=int, default=verify.DEFAULT_SEED, help="master seed"
    )
    ver.add_argument(
        "--trials",
        type=int,
        default=None,
        help="override every check's trial count (must be >= 1)",
    )
    ver.add_argument(
        "--filter", default=None, help="run only checks whose id contains this"
    )
    _add_output_flags(ver, "json")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if isinstance(code, int) else 2
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
        return 2
    except (InvalidStateError, InvalidChannelError) as exc:
        print(f"error: invalid state: {exc}", file=sys.stderr)
        return 3
    except ArithmeticError as exc:
        print(f"error: numerical: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
