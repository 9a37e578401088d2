"""Command-line front end.

Six subcommands: spectrum, wavefunction, coherent, resolution, expect, and
verify.  Data goes to stdout (or --out) as CSV or JSON with a fixed layout,
so identical invocations produce byte-identical output; progress and
diagnostics go to stderr.

Exit codes: 0 on success, 1 when verify finds a failing check, 2 for usage
and domain errors.
"""

from __future__ import annotations

import argparse
import cmath
import json
import sys
from pathlib import Path

import numpy as np

from .checks import CheckConfig, run_checks
from .coherent import (
    build_coherent_state,
    general_expectation,
    lowering_eigenstate_residual,
    resolution_of_identity_check,
)
from .errors import ConvergenceError, DomainError, IntegrationError
from .model import PotentialParams, build_basis_state, eval_state, momentum_level
from .quadrature import default_r_max, gauss_legendre

__all__ = ["main", "parse_z"]

TABLE_VERSION = "fhpt-table/1"


def parse_z(text: str) -> complex:
    """Complex label from 'a+bi' notation or polar 'r@theta' (theta in radians)."""
    s = text.strip().replace(" ", "")
    if not s:
        raise DomainError("empty complex value")
    if "@" in s:
        mag, _, ang = s.partition("@")
        try:
            return cmath.rect(float(mag), float(ang))
        except ValueError:
            raise DomainError(f"cannot parse polar complex value {text!r}") from None
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise DomainError(f"cannot parse complex value {text!r}") from None


def _params(args: argparse.Namespace) -> PotentialParams:
    return PotentialParams(A=args.A, c1=args.c1, m0=args.m0, c=args.c, hbar=args.hbar)


def _fmt_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _emit(args: argparse.Namespace, command: str, config: dict, columns: list[str], rows: list, summary: dict) -> None:
    if args.format == "json":
        payload = {
            "version": TABLE_VERSION,
            "command": command,
            "config": config,
            "columns": columns,
            "rows": rows,
            "summary": summary,
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [f"# {TABLE_VERSION} command={command}"]
        for k, v in config.items():
            lines.append(f"# {k}={_fmt_cell(v)}")
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(_fmt_cell(v) for v in row))
        for k, v in summary.items():
            lines.append(f"# {k}={_fmt_cell(v)}")
        text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_spectrum(args: argparse.Namespace) -> int:
    params = _params(args)
    rows = [[n, momentum_level(n, params)] for n in range(args.nmax + 1)]
    config = {"A": args.A, "c1": args.c1, "m0": args.m0, "c": args.c, "hbar": args.hbar, "nmax": args.nmax}
    summary = {"a_prime": params.a_prime, "L": params.L, "mass_scale": params.mass_scale}
    _emit(args, "spectrum", config, ["n", "momentum"], rows, summary)
    return 0


def _cmd_wavefunction(args: argparse.Namespace) -> int:
    params = _params(args)
    state = build_basis_state(args.n, params, args.interval)
    k = np.arange(args.samples)
    tau = -0.5 * np.pi + (k + 1.0) * np.pi / (args.samples + 1.0)
    psi = eval_state(state, tau)
    rows = [[float(t), float(p)] for t, p in zip(tau, psi)]
    config = {
        "A": args.A,
        "c1": args.c1,
        "m0": args.m0,
        "c": args.c,
        "hbar": args.hbar,
        "n": args.n,
        "interval": args.interval,
        "samples": args.samples,
    }
    summary = {"a_prime": params.a_prime, "norm_constant": state.norm}
    _emit(args, "wavefunction", config, ["tau", "psi"], rows, summary)
    return 0


def _cmd_coherent(args: argparse.Namespace) -> int:
    params = _params(args)
    z = parse_z(args.z)
    cs = build_coherent_state(z, params, tail_tol=args.tail_tol)
    rows = [
        [n, float(abs(c) ** 2), float(np.angle(c))]
        for n, c in enumerate(cs.coeffs)
    ]
    weights = np.abs(cs.coeffs) ** 2
    mean_level = float(np.dot(weights, np.arange(len(weights))))
    config = {
        "A": args.A,
        "c1": args.c1,
        "m0": args.m0,
        "c": args.c,
        "hbar": args.hbar,
        "z_re": z.real,
        "z_im": z.imag,
        "tail_tol": args.tail_tol,
    }
    summary = {
        "truncation_level": cs.truncation_level,
        "tail_bound": cs.tail_bound,
        "weight_sum": cs.norm_sq,
        "mean_level": mean_level,
        "mean_gamma0": mean_level + params.L + 0.5,
        "lowering_residual": lowering_eigenstate_residual(cs),
    }
    _emit(args, "coherent", config, ["n", "weight", "phase"], rows, summary)
    return 0


def _cmd_resolution(args: argparse.Namespace) -> int:
    params = _params(args)
    rule = gauss_legendre(args.quad_order)
    r_max = default_r_max(2.0 * args.nmax + 2.0 * params.L + 1.0)
    rows = []
    worst = 0.0
    for n in range(args.nmax + 1):
        v = resolution_of_identity_check(n, n, params, rule=rule, r_max=r_max)
        rows.append([n, float(v), float(abs(v - 1.0))])
        worst = max(worst, abs(v - 1.0))
    config = {
        "A": args.A,
        "c1": args.c1,
        "m0": args.m0,
        "c": args.c,
        "hbar": args.hbar,
        "nmax": args.nmax,
        "quad_order": args.quad_order,
    }
    summary = {"r_max": r_max, "max_abs_deviation": worst}
    _emit(args, "resolution", config, ["n", "value", "deviation"], rows, summary)
    return 0


def _cmd_expect(args: argparse.Namespace) -> int:
    params = _params(args)
    z = parse_z(args.z)
    cs = build_coherent_state(z, params, tail_tol=args.tail_tol)
    weights = np.abs(cs.coeffs) ** 2
    ns = np.arange(len(weights), dtype=float)
    mean_level = float(np.dot(weights, ns))
    var_level = float(np.dot(weights, ns * ns)) - mean_level**2
    momenta = np.array([momentum_level(int(n), params) for n in range(len(weights))])
    L = params.L

    def raising_element(i: int, j: int) -> complex:
        if i == j + 1:
            return np.sqrt((j + 1.0) * (j + 2.0 * L + 1.0))
        return 0.0

    raising_mean = general_expectation(cs, raising_element)
    rows = [
        ["level_mean", mean_level],
        ["level_variance", var_level],
        ["gamma0_mean", mean_level + L + 0.5],
        ["momentum_mean", float(np.dot(weights, momenta))],
        ["raising_mean_re", raising_mean.real],
        ["raising_mean_im", raising_mean.imag],
        ["weight_sum", cs.norm_sq],
    ]
    config = {
        "A": args.A,
        "c1": args.c1,
        "m0": args.m0,
        "c": args.c,
        "hbar": args.hbar,
        "z_re": z.real,
        "z_im": z.imag,
        "tail_tol": args.tail_tol,
    }
    summary = {"truncation_level": cs.truncation_level, "tail_bound": cs.tail_bound}
    _emit(args, "expect", config, ["observable", "value"], rows, summary)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    config = CheckConfig(
        A=args.A,
        c1=args.c1,
        m0=args.m0,
        c=args.c,
        hbar=args.hbar,
        nmax=args.nmax,
        quad_order=args.quad_order,
        tol_override=args.tol,
    )
    report = run_checks(config)
    for c in report.checks:
        word = "pass" if c.passed else "FAIL"
        print(f"{word} {c.name}: residual={c.residual:.3e} tol={c.tol:.1e}", file=sys.stderr)
    n_failed = sum(1 for c in report.checks if not c.passed)
    if n_failed:
        print(f"{n_failed} of {len(report.checks)} checks failed", file=sys.stderr)
    else:
        print(f"all {len(report.checks)} checks passed", file=sys.stderr)

    if args.format == "json":
        text = json.dumps(report.to_dict(), indent=2) + "\n"
    else:
        lines = [f"# {report.version}"]
        for k, v in report.config.items():
            lines.append(f"# {k}={_fmt_cell(v)}")
        lines.append("name,identity,residual,tol,pass")
        for c in report.checks:
            lines.append(
                ",".join([c.name, c.identity, repr(c.residual), repr(c.tol), _fmt_cell(c.passed)])
            )
        lines.append(f"# pass={_fmt_cell(report.passed)}")
        text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--A", type=float, default=2.0, help="well strength (default 2.0)")
    p.add_argument("--c1", type=float, default=1.0, help="time-scaling frequency (default 1.0)")
    p.add_argument("--m0", type=float, default=0.5, help="mass parameter (default 0.5, natural units)")
    p.add_argument("--c", type=float, default=1.0, help="speed scale (default 1.0)")
    p.add_argument("--hbar", type=float, default=1.0, help="action scale (default 1.0)")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    p.add_argument("--out", default=None, help="write output to a file instead of stdout")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fhpt",
        description="Quantized-momentum states of a trigonometric secant-squared well: "
        "spectrum, states, ladder algebra, coherent superpositions, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="momentum eigenvalues by level")
    _add_common(p)
    p.add_argument("--nmax", type=int, default=10, help="highest level (default 10)")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("wavefunction", help="sample one normalized state on a tau grid")
    _add_common(p)
    p.add_argument("--n", type=int, default=0, help="level index (default 0)")
    p.add_argument("--samples", type=int, default=201, help="number of interior grid points")
    p.add_argument("--interval", choices=("full", "half"), default="full", help="normalization convention")
    p.set_defaults(func=_cmd_wavefunction)

    p = sub.add_parser("coherent", help="coefficient table of a coherent superposition")
    _add_common(p)
    p.add_argument("--z", default="1", help="complex label, 'a+bi' or polar 'r@theta'")
    p.add_argument("--tail-tol", type=float, default=1e-13, help="dropped-weight bound")
    p.set_defaults(func=_cmd_coherent)

    p = sub.add_parser("resolution", help="diagonal completeness moments over the label plane")
    _add_common(p)
    p.add_argument("--nmax", type=int, default=10, help="highest level (default 10)")
    p.add_argument("--quad-order", type=int, default=200, help="panel rule order")
    p.set_defaults(func=_cmd_resolution)

    p = sub.add_parser("expect", help="expectation values in a coherent state")
    _add_common(p)
    p.add_argument("--z", default="1", help="complex label, 'a+bi' or polar 'r@theta'")
    p.add_argument("--tail-tol", type=float, default=1e-13, help="dropped-weight bound")
    p.set_defaults(func=_cmd_expect)

    p = sub.add_parser("verify", help="run every named identity check and report")
    _add_common(p)
    p.add_argument("--nmax", type=int, default=10, help="level budget for the checks")
    p.add_argument("--quad-order", type=int, default=200, help="quadrature order for overlaps")
    p.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DomainError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (IntegrationError, ConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
