"""Command-line front end.

Commands: `levels`, `compare`, `scan-hbar`.  Defaults reproduce the
reference configuration omega1=1, omega2=sqrt(2), g=0.1, hbar=1.
Exit codes: 0 ok, 2 bad input, 3 convergence budget exceeded, 4 I/O.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Sequence

from . import diag, report
from .model import ModelError, ModelParams, validate

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_BUDGET = 3
EXIT_IO = 4

_DEFAULTS = {
    "omega1": "1",
    "omega2": "sqrt2",
    "g": "0.1",
    "hbar": "1",
    "k": "100",
    "digits": "8",
    "rows": "20",
    "hbars": "1,0.1",
}


def _frequency(text: str) -> float:
    """Decimal, with `sqrt2` accepted so sqrt(2) is not truncated."""
    if text.strip().lower() == "sqrt2":
        return math.sqrt(2.0)
    return float(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quartosc",
        description=(
            "Energy spectra of two non-resonant oscillators with quartic "
            "coupling, by torus-quantized classical perturbation theory, "
            "quantum perturbation theory, and exact diagonalization."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_shared(p: argparse.ArgumentParser) -> None:
        p.add_argument("--omega1", default=None,
                       help=f"first frequency (default {_DEFAULTS['omega1']})")
        p.add_argument("--omega2", default=None,
                       help=f"second frequency; accepts `sqrt2` (default {_DEFAULTS['omega2']})")
        p.add_argument("--g", default=None,
                       help=f"quartic coupling strength (default {_DEFAULTS['g']})")
        p.add_argument("--hbar", default=None,
                       help=f"reduced Planck constant (default {_DEFAULTS['hbar']})")
        p.add_argument("--k", default=None,
                       help=f"number of levels to converge (default {_DEFAULTS['k']})")
        p.add_argument("--digits", default=None,
                       help=f"convergence digit target (default {_DEFAULTS['digits']})")
        p.add_argument("--rows", default=None,
                       help=f"rows to emit (default {_DEFAULTS['rows']})")
        p.add_argument("--out", default=None, metavar="PATH",
                       help="output CSV path (default: stdout)")
        p.add_argument("--dump-matrix", default=None, metavar="PATH",
                       help="also dump the final Hamiltonian as `row col value` triplets")
        p.add_argument("--config", default=None, metavar="PATH",
                       help="plain key=value config file; explicit flags take precedence")

    p_levels = sub.add_parser("levels", help="converged exact levels with labels")
    add_shared(p_levels)

    p_compare = sub.add_parser("compare", help="exact vs semiclassical vs perturbative table")
    add_shared(p_compare)
    p_compare.add_argument("--json", default=None, metavar="PATH",
                           help="also write the table plus convergence metadata as JSON")

    p_scan = sub.add_parser("scan-hbar", help="semiclassical error across hbar values")
    add_shared(p_scan)
    p_scan.add_argument("--hbars", default=None,
                        help=f"comma-separated hbar list (default {_DEFAULTS['hbars']})")

    return parser


def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ModelError(f"config line is not key=value: {line!r}")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def _resolve(args: argparse.Namespace) -> dict[str, str]:
    """Flag value, else config-file value, else default."""
    config = _load_config(args.config) if args.config else {}
    resolved = {}
    for key, default in _DEFAULTS.items():
        explicit = getattr(args, key, None)
        if explicit is not None:
            resolved[key] = explicit
        else:
            resolved[key] = config.get(key, default)
    return resolved


def _parse_params(values: dict[str, str]) -> ModelParams:
    try:
        params = ModelParams(
            omega1=_frequency(values["omega1"]),
            omega2=_frequency(values["omega2"]),
            g=float(values["g"]),
            hbar=float(values["hbar"]),
        )
    except ValueError as exc:
        raise ModelError(f"bad numeric flag value: {exc}") from exc
    return validate(params)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        report._write(text, out)


def _dump_final_matrix(params: ModelParams, n_max: int, path: str) -> None:
    basis = diag.build_basis(n_max)
    diag.dump_matrix_triplets(diag.assemble_hamiltonian(basis, params), path)


def _cmd_levels(args: argparse.Namespace) -> int:
    values = _resolve(args)
    params = _parse_params(values)
    k = int(values["k"])
    digits = int(values["digits"])
    result = diag.converged_levels(params, k=k, digits=digits)
    lines = ["rank,n1,n2,energy,overlap_weight,ambiguous"]
    for lvl in result.levels:
        lines.append(
            f"{lvl.rank},{lvl.assigned.n1},{lvl.assigned.n2},"
            f"{lvl.energy:#.9g},{lvl.overlap_weight:#.4g},{int(lvl.ambiguous)}"
        )
    _emit("\n".join(lines) + "\n", args.out)
    if args.dump_matrix:
        _dump_final_matrix(params, result.final_n_max, args.dump_matrix)
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace) -> int:
    values = _resolve(args)
    params = _parse_params(values)
    table = report.comparison_table(
        params,
        n_rows=int(values["rows"]),
        k=int(values["k"]),
        digits=int(values["digits"]),
    )
    _emit(report.render_comparison_csv(table.rows), args.out)
    if args.json:
        report.emit_json(table, args.json)
    if args.dump_matrix:
        _dump_final_matrix(params, table.report.final_n_max, args.dump_matrix)
    return EXIT_OK


def _cmd_scan_hbar(args: argparse.Namespace) -> int:
    values = _resolve(args)
    hbars_text = args.hbars if args.hbars is not None else values["hbars"]
    try:
        hbars = [float(h) for h in hbars_text.split(",") if h.strip()]
    except ValueError as exc:
        raise ModelError(f"bad --hbars value {hbars_text!r}: {exc}") from exc
    if not hbars:
        raise ModelError("--hbars list is empty")
    if any(h <= 0 for h in hbars):
        raise ModelError(f"--hbars values must be > 0, got {hbars_text!r}")
    params = _parse_params(values)
    rows = report.hbar_scan(params, hbars, n_rows=int(values["rows"]))
    _emit(report.render_scan_csv(rows), args.out)
    return EXIT_OK


_COMMANDS = {
    "levels": _cmd_levels,
    "compare": _cmd_compare,
    "scan-hbar": _cmd_scan_hbar,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except diag.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
