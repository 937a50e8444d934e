"""Command-line front end: curves, base curves, optimal nets, verification suites.

Subcommands
    curve        sample the inscribing curve for a hole aspect n
    base-curve   sample the k-line base curve with crossover annotations
    optimal-net  emit the optimal net and its scale factor (JSON or SVG)
    verify       run a verification suite; exit 0 iff every assertion holds

CSV outputs carry a mandatory header row after '#'-prefixed annotation
lines; numbers are rendered at the requested precision (significant
digits, round-half-even).  Outputs are byte-identical across runs for
identical flags and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace

from . import nets, svg
from .errors import DomainError, RootBracketError
from .inscribe import (
    check_aspect,
    crossover_w,
    curve_sample,
    curve_value,
    diagonal_branch,
    placement,
)
from .oracle import (
    SweepConfig,
    VerificationReport,
    enumerate_axis_nets,
    irregular_spacing_check,
    lagrange_split_check,
    oracle_curve_value,
    perturbation_suite,
    theorem_scan,
)

VERIFY_SUITES = (
    "curve-oracle",
    "theorem-even",
    "theorem-odd",
    "irregular",
    "lagrange",
    "local-optimum",
)


@dataclass(frozen=True)
class OutputSpec:
    format: str
    path: str
    precision: int = 9

    def __post_init__(self) -> None:
        if self.format not in ("csv", "json", "svg"):
            raise DomainError(f"unsupported output format {self.format!r}")
        if not 1 <= int(self.precision) <= 17:
            raise DomainError(f"precision must lie in [1, 17], got {self.precision!r}")


def _num(x: float, precision: int) -> str:
    return format(float(x), f".{precision}g")


def _round_sig(x: float, precision: int) -> float:
    return float(_num(x, precision))


def _p_grid(p_min: float, p_max: float, step: float) -> list[float]:
    if step <= 0.0 or not math.isfinite(step):
        raise DomainError(f"step must be positive and finite, got {step!r}")
    if not (1.0 <= p_min < p_max):
        raise DomainError(f"need 1 <= p_min < p_max, got p_min={p_min!r}, p_max={p_max!r}")
    values = []
    i = 0
    while True:
        p = p_min + i * step
        if p > p_max + 1e-9 * step:
            break
        values.append(min(p, p_max))
        i += 1
    return values


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


# ----------------------------------------------------------------------------
# curve


def cmd_curve(n: float, p_min: float, p_max: float, step: float, out: OutputSpec) -> dict:
    """Sample the inscribing curve for hole aspect n and write it to out.path."""
    n = check_aspect(n, "hole aspect n")
    grid = _p_grid(p_min, p_max, step)
    samples = [curve_sample(n, p) for p in grid]
    w_n = crossover_w(n)
    payload = {
        "n": _round_sig(n, out.precision),
        "precision": out.precision,
        "markers": {
            "plateau_end": _round_sig(n, out.precision),
            "vertical_end": _round_sig(w_n, out.precision),
        },
        "samples": [
            {
                "p": _round_sig(s.p, out.precision),
                "c": _round_sig(s.c, out.precision),
                "branch": s.branch,
            }
            for s in samples
        ],
    }
    if out.format == "csv":
        lines = [
            f"# n={_num(n, out.precision)}",
            f"# plateau_end={_num(n, out.precision)}",
            f"# vertical_end={_num(w_n, out.precision)}",
            "p,c,branch",
        ]
        lines += [
            f"{_num(s.p, out.precision)},{_num(s.c, out.precision)},{s.branch}"
            for s in samples
        ]
        _write(out.path, "\n".join(lines) + "\n")
    elif out.format == "json":
        _write(out.path, json.dumps(payload, indent=2) + "\n")
    else:
        doc = svg.curve_plot_svg(
            [("inscribing-curve", [(s.p, s.c) for s in samples], "#2040a0")],
            markers=[(n, "p=n"), (w_n, "p=w")],
            title=f"Inscribing curve, hole aspect n={_num(n, 6)}",
        )
        _write(out.path, doc)
    return payload


# ----------------------------------------------------------------------------
# base-curve


def _base_curve_point(k: int, p: float) -> tuple[float, str]:
    parallel = curve_value(k + 1, p) / (k + 1)
    if k % 2 == 0:
        grid = curve_value(1, p) / (k // 2 + 1)
    else:
        grid = nets.net_scale_factor(nets.evenly_spaced(k - k // 2, k // 2), p)
    if parallel <= grid + 1e-12:
        return parallel, "parallel"
    return grid, "grid"


def cmd_base_curve(
    k: int,
    p_min: float,
    p_max: float,
    step: float,
    out: OutputSpec,
    overlay: tuple[int, int] | None = None,
) -> dict:
    """Sample the base curve for k lines; overlay a competitor split in SVG mode."""
    if k < 1:
        raise DomainError(f"line count k must be >= 1, got {k}")
    if overlay is not None and out.format != "svg":
        raise DomainError("--overlay is only supported with --format svg")
    grid_ps = _p_grid(p_min, p_max, step)
    points = [(_p, *_base_curve_point(k, _p)) for _p in grid_ps]
    annotations = {"crossover_aspect": nets.crossover_aspect(k) if k >= 2 else None}
    if k >= 3 and k % 2 == 1:
        annotations["crossover_aspect_line_count"] = nets.odd_crossover_line_count(k)
    payload = {
        "k": k,
        "precision": out.precision,
        "annotations": {
            key: (None if value is None else _round_sig(value, out.precision))
            for key, value in annotations.items()
        },
        "samples": [
            {"p": _round_sig(p, out.precision), "c": _round_sig(c, out.precision), "branch": b}
            for p, c, b in points
        ],
    }
    if out.format == "csv":
        lines = [f"# k={k}"]
        for key, value in annotations.items():
            if value is not None:
                lines.append(f"# {key}={_num(value, out.precision)}")
        lines.append("p,c,branch")
        lines += [
            f"{_num(p, out.precision)},{_num(c, out.precision)},{b}" for p, c, b in points
        ]
        _write(out.path, "\n".join(lines) + "\n")
    elif out.format == "json":
        _write(out.path, json.dumps(payload, indent=2) + "\n")
    else:
        series = [("base-curve", [(p, c) for p, c, _ in points], "#2040a0")]
        markers: list[tuple[float, str]] = []
        if annotations["crossover_aspect"] is not None:
            markers.append((annotations["crossover_aspect"], "p1"))
        if overlay is not None:
            v, h = overlay
            if v + h != k or min(v, h) < 0:
                raise DomainError(f"overlay split {overlay!r} must use {k} lines")
            competitor = nets.evenly_spaced(v, h)
            series.append(
                (
                    f"N({v},{h})",
                    [(p, nets.net_scale_factor(competitor, p)) for p in grid_ps],
                    "#c03030",
                )
            )
            aspect_comp = (max(v, h) + 1) / (min(v, h) + 1)
            if k % 2 == 0:
                grid_aspect = 1.0
            else:
                grid_aspect = (k - k // 2 + 1) / (k // 2 + 1)
            markers.append((aspect_comp, "p2"))
            markers.append((crossover_w(grid_aspect), "p3"))
            if aspect_comp > 1.0:
                markers.append((crossover_w(aspect_comp), "p4"))
        doc = svg.curve_plot_svg(series, markers, title=f"Base curve, k={k}")
        _write(out.path, doc)
    return payload


# ----------------------------------------------------------------------------
# optimal-net


def cmd_optimal_net(k: int, p: float, out: OutputSpec) -> dict:
    """Emit the optimal k-line net for intruder aspect p, with its placement."""
    if out.format == "csv":
        raise DomainError("optimal-net supports json or svg output")
    net = nets.optimal_net(k, p)
    grid = nets.holes(net)
    scale = nets.net_scale_factor(net, p)

    best = None
    for i, w in enumerate(grid.widths):
        for j, h in enumerate(grid.heights):
            value = nets.hole_scale(w, h, p)
            if best is None or value > best[0] + 1e-12:
                best = (value, i, j)
    _, i, j = best
    x0 = sum(grid.widths[:i])
    y0 = sum(grid.heights[:j])
    w, h = grid.widths[i], grid.heights[j]
    s = min(w, h)
    hole_aspect = max(w, h) / s
    local = placement(hole_aspect, p)
    if w <= h:
        corners = tuple((x0 + s * cx, y0 + s * cy) for cx, cy in local.corners)
    else:
        corners = tuple((x0 + s * cy, y0 + s * cx) for cx, cy in local.corners)

    payload = {
        "k": k,
        "p": _round_sig(p, out.precision),
        "net": nets.net_to_dict(net),
        "scale_factor": _round_sig(scale, out.precision),
        "maximizing_hole": {
            "x0": _round_sig(x0, out.precision),
            "y0": _round_sig(y0, out.precision),
            "width": _round_sig(w, out.precision),
            "height": _round_sig(h, out.precision),
        },
        "placement": {
            "branch": local.branch,
            "corners": [[_round_sig(x, out.precision), _round_sig(y, out.precision)] for x, y in corners],
        },
    }
    if out.format == "json":
        _write(out.path, json.dumps(payload, indent=2) + "\n")
    else:
        doc = svg.net_plot_svg(
            net.vertical,
            net.horizontal,
            (x0, y0, w, h),
            corners,
            title=f"{net.describe()}, p={_num(p, 6)}, c={_num(scale, 6)}",
        )
        _write(out.path, doc)
    return payload


# ----------------------------------------------------------------------------
# verify


def _verify_curve_oracle(n: float, theta_res: float) -> VerificationReport:
    n = check_aspect(n, "hole aspect n")
    cfg = SweepConfig(theta_resolution=theta_res)
    tol = 5.0 * theta_res
    candidates = []
    failures = []
    worst = 0.0
    for p in _p_grid(1.0, 4.0 * n, 0.125):
        deviation = abs(curve_value(n, p) - oracle_curve_value(n, p, cfg))
        candidates.append((f"p={_num(p, 9)}", deviation))
        worst = max(worst, deviation)
        if deviation > tol:
            failures.append(f"|curve - oracle| = {deviation!r} > {tol!r} at n={n}, p={p}")
    winner = min(candidates, key=lambda item: item[1])[0]
    return VerificationReport(
        candidates=tuple(candidates),
        winner=winner,
        parameters={
            "n": n,
            "theta_resolution": theta_res,
            "tolerance": tol,
            "max_deviation": worst,
        },
        passed=not failures,
        failures=tuple(failures[:10]),
    )


def _verify_theorem(k: int, parity: str) -> VerificationReport:
    if parity == "even" and (k < 2 or k % 2 != 0):
        raise DomainError(f"theorem-even needs even k >= 2, got {k}")
    if parity == "odd" and (k < 3 or k % 2 != 1):
        raise DomainError(f"theorem-odd needs odd k >= 3, got {k}")
    scan = theorem_scan(k)
    x = scan["crossover"]
    p_above = next(p for p in (1.0 + i / 64.0 for i in range(7 * 64 + 1)) if p > x + 1e-9)
    table = enumerate_axis_nets(k, p_above)
    parameters = {
        "k": k,
        "crossover": x,
        "p_grid": {"min": 1.0, "max": 8.0, "step": 1 / 64},
        "checked": scan["checked"],
        "mismatches": scan["mismatches"][:10],
        "table_at_p": p_above,
        "tie_tolerance": 1e-12,
    }
    if parity == "odd":
        alt = nets.odd_crossover_line_count(k)
        parameters["crossover_line_count_formula"] = alt
        parameters["formulas_disagree"] = abs(alt - x) > 1e-12
    failures = tuple(scan["mismatches"][:10])
    return VerificationReport(
        candidates=table.candidates,
        winner=table.winner,
        parameters=parameters,
        passed=not scan["mismatches"],
        failures=failures,
    )


def _verify_irregular(k: int, p_values: list[float], trials: int, seed: int) -> VerificationReport:
    candidates = []
    failures = []
    for p in p_values:
        sub = irregular_spacing_check(k, p, trials=trials, seed=seed)
        worst = min(value for _, value in sub.candidates)
        candidates.append((f"p={_num(p, 9)} worst margin", worst))
        failures.extend(sub.failures)
    winner = min(candidates, key=lambda item: item[1])[0]
    return VerificationReport(
        candidates=tuple(candidates),
        winner=winner,
        parameters={"k": k, "p_values": p_values, "trials": trials, "tolerance": 1e-12},
        seed=seed,
        passed=not failures,
        failures=tuple(failures[:10]),
    )


def _verify_lagrange(k: int, p: float) -> VerificationReport:
    if p <= crossover_w(1):
        raise DomainError(
            f"the split check needs the diagonal branch of the square hole: p > {crossover_w(1)!r}"
        )
    c_prime = diagonal_branch(1, p).c / (k // 2 + 1)
    report = lagrange_split_check(k, c_prime)
    return replace(report, parameters={**report.parameters, "p": p})


def cmd_verify(suite: str, args: argparse.Namespace, out_path: str) -> tuple[int, VerificationReport]:
    """Run one verification suite, write its JSON report, return (exit code, report)."""
    if suite == "curve-oracle":
        report = _verify_curve_oracle(args.n, args.theta_res)
    elif suite == "theorem-even":
        report = _verify_theorem(args.k, "even")
    elif suite == "theorem-odd":
        report = _verify_theorem(args.k, "odd")
    elif suite == "irregular":
        p_values = [args.p] if args.p is not None else [1.0, 1.5, 2.0, 3.0, 5.0]
        report = _verify_irregular(args.k, p_values, args.trials, args.seed)
    elif suite == "lagrange":
        report = _verify_lagrange(args.k, args.p if args.p is not None else 4.0)
    elif suite == "local-optimum":
        report = perturbation_suite(
            args.k, trials=args.trials, epsilon=args.epsilon, seed=args.seed
        )
    else:
        raise DomainError(f"unknown verification suite {suite!r}")
    _write(out_path, report.to_json() + "\n")
    return (0 if report.passed else 1), report


# ----------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tripwire",
        description="Optimal axis-aligned tripwire nets against rectangular intruders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    curve = sub.add_parser("curve", help="sample the inscribing curve for a hole aspect")
    curve.add_argument("--n", type=float, required=True, help="hole aspect ratio (>= 1)")
    _add_range_flags(curve)
    _add_output_flags(curve)

    base = sub.add_parser("base-curve", help="sample the k-line base curve")
    base.add_argument("--k", type=int, required=True, help="number of lines (>= 1)")
    _add_range_flags(base)
    _add_output_flags(base)
    base.add_argument(
        "--overlay",
        type=str,
        default=None,
        metavar="V,H",
        help="overlay the evenly spaced (v,h) competitor curve (SVG only)",
    )

    opt = sub.add_parser("optimal-net", help="emit the optimal net for (k, p)")
    opt.add_argument("--k", type=int, required=True, help="number of lines (>= 1)")
    opt.add_argument("--p", type=float, required=True, help="intruder aspect ratio (>= 1)")
    _add_output_flags(opt, formats=("json", "svg"), default_format="json")

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=VERIFY_SUITES)
    verify.add_argument("--n", type=float, default=1.0, help="hole aspect (curve-oracle)")
    verify.add_argument("--k", type=int, default=4, help="line count (theorem/irregular/lagrange/local-optimum)")
    verify.add_argument("--p", type=float, default=None, help="intruder aspect (irregular/lagrange)")
    verify.add_argument("--seed", type=int, default=0, help="rng seed for randomized suites")
    verify.add_argument("--epsilon", type=float, default=0.02, help="perturbation bound (local-optimum)")
    verify.add_argument("--theta-res", type=float, default=1e-5, help="sweep resolution (curve-oracle)")
    verify.add_argument("--trials", type=int, default=None, help="randomized trial count")
    verify.add_argument("--out", type=str, default=None, help="report path (default verify-<suite>.json)")

    return parser


def _add_range_flags(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("--p-min", type=float, default=1.0, help="range start (>= 1)")
    cmd.add_argument("--p-max", type=float, required=True, help="range end (> p-min)")
    cmd.add_argument("--step", type=float, default=0.01, help="sampling step (> 0)")


def _add_output_flags(cmd, formats=("csv", "json", "svg"), default_format="csv") -> None:
    cmd.add_argument("--format", choices=formats, default=default_format)
    cmd.add_argument("--out", type=str, required=True, help="output file path")
    cmd.add_argument("--precision", type=int, default=9, help="significant digits (1..17)")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "curve":
            out = OutputSpec(format=args.format, path=args.out, precision=args.precision)
            cmd_curve(args.n, args.p_min, args.p_max, args.step, out)
            return 0
        if args.command == "base-curve":
            out = OutputSpec(format=args.format, path=args.out, precision=args.precision)
            overlay = None
            if args.overlay is not None:
                try:
                    v, h = (int(part) for part in args.overlay.split(","))
                except ValueError:
                    parser.error(f"--overlay expects 'v,h' integers, got {args.overlay!r}")
                overlay = (v, h)
            cmd_base_curve(args.k, args.p_min, args.p_max, args.step, out, overlay)
            return 0
        if args.command == "optimal-net":
            out = OutputSpec(format=args.format, path=args.out, precision=args.precision)
            cmd_optimal_net(args.k, args.p, out)
            return 0
        if args.command == "verify":
            if args.trials is None:
                args.trials = 500 if args.suite == "local-optimum" else 1000
            out_path = args.out or f"verify-{args.suite}.json"
            code, report = cmd_verify(args.suite, args, out_path)
            if report.passed:
                print(f"{args.suite}: PASS ({out_path})")
            else:
                print(f"{args.suite}: FAIL: {report.failures[0]}", file=sys.stderr)
            return code
    except (DomainError, RootBracketError) as exc:
        parser.error(str(exc))
    return 2


if __name__ == "__main__":
    sys.exit(main())
