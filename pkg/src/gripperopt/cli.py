"""Command-line front end.

Usage::

    gripperopt capacity [--config FILE] [--payload KG] [--format text|csv]
    gripperopt optimize (--weights W1 | --sweep) [--format csv|text]
    gripperopt torque-profile --samples N [--out FILE]
    gripperopt design [--format text|csv]
    gripperopt reproduce

Without ``--config`` the bundled reference design is used.

Exit codes: 0 analysis ran (feasibility checks may still FAIL),
1 usage error, 2 config error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
import tempfile
from typing import Iterable, Optional, Sequence

from . import gp, magnetics, mechanism, reference
from .config import DesignConfig, load_config
from .errors import ConfigError, DomainError, GripperError
from .mechanism import YokeGeometry
from .sizing import TABLE2_ROWS, full_design_report

EXIT_OK, EXIT_USAGE, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt_csv(x: float) -> str:
    return format(x, ".17g")


def fmt_text(x: float) -> str:
    return format(x, ".6g")


def to_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_csv(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def emit(text: str, out: Optional[str]) -> None:
    """Write the finished output; files are replaced atomically."""
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".gripperopt-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _passfail(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


# -- capacity ------------------------------------------------------------------


def capacity_report(cfg: DesignConfig, payload: Optional[float] = None, fmt: str = "text") -> str:
    const = cfg.constants()
    array = cfg.magnet_array()
    payload = cfg["payload.mass_kg"] if payload is None else payload
    if payload < 0:
        raise ConfigError("must be non-negative", "payload.mass_kg")
    eff = magnetics.effective_pull(array.magnet, const)
    margin = magnetics.payload_margin(array, payload, const)
    if fmt == "csv":
        rows = [
            ("theoretical_pull_kg", eff.theoretical),
            ("effective_pull_kg", eff.mass),
            ("derate_ratio", eff.derate_ratio),
            ("magnet_count", array.count),
            ("array_capacity_kg", margin.capacity),
            ("payload_kg", float(payload)),
            ("margin_ratio", margin.ratio),
            ("payload_pass", _passfail(margin.passed)),
        ]
        return to_csv(("quantity", "value"), rows)

    label = "measured" if eff.measured else "theoretical"
    lines = [
        f"theoretical pull per magnet : {fmt_text(eff.theoretical)} kg",
        f"{label} pull per magnet{' ' * (12 - len(label))}: {fmt_text(eff.mass)} kg",
        f"derate ratio                : {fmt_text(eff.derate_ratio)}",
        f"array capacity ({array.count} magnets)  : {fmt_text(margin.capacity)} kg",
        f"payload                     : {fmt_text(payload)} kg",
    ]
    if margin.infinite_margin:
        lines.append("margin ratio                : infinite (no payload)")
    else:
        lines.append(f"margin ratio                : {fmt_text(margin.ratio)}")
    lines.append(
        f"theoretical {eff.theoretical:.3g} kg / {label} {eff.mass:.3g} kg / array {margin.capacity:.3g} kg"
        f" / payload {payload:.3g} kg: {_passfail(margin.passed)}"
    )
    return "\n".join(lines) + "\n"


# -- optimize ------------------------------------------------------------------

OPTIMIZE_HEADER = ("w1", "w2", "r2_m", "r4a_m", "V", "rigorous_r2_m", "rigorous_r4a_m", "rigorous_V")


def optimize_rows(weights: Sequence[tuple[float, float]], release_force: float) -> list[tuple[float, ...]]:
    rows = []
    for w in weights:
        pdual, pprim = gp.paper_lambda_recipe(w, release_force)
        rdual, rprim = gp.gripper_optimum(w, release_force)
        rows.append(
            (w[0], w[1], pprim[gp.R2], pprim[gp.R4A], pdual.dual_value_V,
             rprim[gp.R2], rprim[gp.R4A], rdual.dual_value_V)
        )
    return rows


def optimize_report(rows, fmt: str = "csv") -> str:
    if fmt == "csv":
        return to_csv(OPTIMIZE_HEADER, rows)
    widths = [6, 6, 12, 12, 12, 14, 15, 12]
    out = ["".join(h.rjust(w) for h, w in zip(OPTIMIZE_HEADER, widths))]
    for row in rows:
        out.append("".join(fmt_text(v).rjust(w) for v, w in zip(row, widths)))
    return "\n".join(out) + "\n"


def _release_force(cfg: DesignConfig) -> float:
    force = cfg.release_force()
    if force is not None:
        return force
    capacity = magnetics.array_capacity(cfg.magnet_array(), cfg.constants())
    return mechanism.required_release_force(capacity, cfg.constants(), cfg["release.factor"])


# -- torque profile ------------------------------------------------------------


def torque_profile_csv(geom: YokeGeometry, force: float, samples: int) -> str:
    theta, torque = mechanism.driving_torque_profile(geom, force, samples)
    return to_csv(("theta2_rad", "T2_Nm"), zip(theta.tolist(), torque.tolist()))


# -- design --------------------------------------------------------------------


def design_report_text(report) -> str:
    lines = [f"{'Component':<40}{'Dimension (cm)':>15}", "-" * 55]
    for label, value in report.table_cm():
        lines.append(f"{label:<40}{fmt_text(round(value, 9)):>15}")
    act = report.actuator
    lines += [
        "",
        "[feasibility]",
        f"payload_pass = {_passfail(report.payload.passed)}",
        f"payload_ratio = {'inf' if report.payload.infinite_margin else fmt_text(report.payload.ratio)}",
        f"actuator_pass = {_passfail(act.passed)}",
        f"actuator_required_kgcm = {fmt_text(act.required_kgcm)}",
        f"actuator_available_kgcm = {fmt_text(act.available_kgcm)}",
        f"actuator_margin = {'inf' if math.isinf(act.margin) else fmt_text(act.margin)}",
        f"gp_point_feasible = {_passfail(report.gp_primal.feasible)}",
        "",
        "[summary]",
        f"actuator: {act.required_kgcm:.3g} kg-cm <= {act.available_kgcm:.3g} kg-cm: {_passfail(act.passed)}"
        if act.passed
        else f"actuator: {act.required_kgcm:.3g} kg-cm > {act.available_kgcm:.3g} kg-cm: FAIL",
        f"payload: {report.payload.payload:.3g} kg vs capacity {report.capacity:.3g} kg: "
        f"{_passfail(report.payload.passed)}",
        f"release force: required {fmt_text(report.required_release_force)} N, design {fmt_text(report.design_force)} N",
        f"weights: w1={fmt_text(report.weights[0])}, w2={fmt_text(report.weights[1])} "
        f"({report.gp_primal.recovery_method}: r2={fmt_text(report.gp_primal[gp.R2])} m, "
        f"r4a={fmt_text(report.gp_primal[gp.R4A])} m, V={fmt_text(report.gp_dual.dual_value_V)})",
        f"dual optimum: r2={fmt_text(report.rigorous_primal[gp.R2])} m, "
        f"r4a={fmt_text(report.rigorous_primal[gp.R4A])} m, V={fmt_text(report.rigorous_dual.dual_value_V)}",
        f"impulse sizing: moving mass {fmt_text(report.moving_mass)} kg at "
        f"{fmt_text(report.impact.velocity_change)} m/s over {fmt_text(report.impact.contact_duration)} s; "
        f"disk {fmt_text(report.computed_disk_thickness * 100)} cm, "
        f"slider {fmt_text(report.computed_slider_thickness * 100)} cm",
    ]
    lines += [f"note: {n}" for n in report.notes]
    return "\n".join(lines) + "\n"


def design_report_csv(report) -> str:
    attrs = [attr for _, attr in TABLE2_ROWS]
    rows = [(label, attr, value) for (label, value), attr in zip(report.table_cm(), attrs)]
    return to_csv(("component", "field", "dimension_cm"), rows)


# -- reproduce -----------------------------------------------------------------


def reproduce_checks(cfg: DesignConfig) -> list[tuple[str, bool, str]]:
    checks = []
    const = cfg.constants()
    array = cfg.magnet_array()
    theo = magnetics.theoretical_pull_mass(array.magnet, const)
    checks.append((
        "pull mass per magnet",
        abs(theo - reference.THEORETICAL_PULL_KG) <= reference.THEORETICAL_PULL_TOL,
        f"{theo:.6g} kg vs {reference.THEORETICAL_PULL_KG} +/- {reference.THEORETICAL_PULL_TOL}",
    ))
    force = _release_force(cfg)
    rows = gp.reproduce_table1(force)
    worst = max(
        max(abs(r.r2 - ref[2]), abs(r.r4a - ref[3]), abs(r.V - ref[4]))
        for r, ref in zip(rows, reference.TABLE1)
    )
    checks.append(("weight sweep table", worst <= reference.TABLE1_TOL, f"max abs error {worst:.3g}"))

    report = full_design_report(cfg.design_inputs())
    bad = [(label, v, ref) for (label, v), ref in zip(report.table_cm(), reference.TABLE2_CM)
           if round(v, 6) != ref]
    checks.append((
        "dimension table",
        not bad,
        "all rows match" if not bad else "; ".join(f"{lb}: {v:.6g} != {ref:g}" for lb, v, ref in bad),
    ))
    required = report.required_release_force
    checks.append((
        "release force",
        abs(required - reference.RELEASE_FORCE_N) <= reference.RELEASE_FORCE_TOL,
        f"{required:.6g} N vs about {reference.RELEASE_FORCE_N:g} N",
    ))
    act = report.actuator
    checks.append((
        "actuator torque",
        act.passed,
        f"{act.required_kgcm:.4g} kg-cm required, {act.available_kgcm:.4g} kg-cm rated",
    ))
    checks.append(("payload", report.payload.passed, f"{report.payload.payload:g} kg vs {report.capacity:.3g} kg"))
    return checks


# -- dispatch ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gripperopt", description="Size a magnetic scotch-yoke aerial gripper.")
    common = _Parser(add_help=False)
    common.add_argument("--config", help="design config file (default: bundled reference design)")
    common.add_argument("--out", help="write output to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("capacity", parents=[common], help="magnet pull and payload margin")
    p.add_argument("--payload", type=float, help="payload mass in kg (overrides config)")
    p.add_argument("--format", choices=("text", "csv"), default="text")

    p = sub.add_parser("optimize", parents=[common], help="weighted GP sizing of disk radius and slider length")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--weights", type=float, metavar="W1", help="area weight w1 in (0, 1); w2 = 1 - w1")
    g.add_argument("--sweep", action="store_true", help="w1 = 0.1 ... 0.9")
    p.add_argument("--format", choices=("csv", "text"), default="csv")

    p = sub.add_parser("torque-profile", parents=[common], help="driving torque over one revolution (CSV)")
    p.add_argument("--samples", type=int, default=360)
    p.add_argument("--r2", type=float, help="disk radius in m (default: sized design)")
    p.add_argument("--force", type=float, help="release force in N (default: design force)")

    p = sub.add_parser("design", parents=[common], help="full dimension table with feasibility flags")
    p.add_argument("--format", choices=("text", "csv"), default="text")

    sub.add_parser("reproduce", parents=[common], help="check the reference design against published values")
    return parser


def _run(args) -> tuple[str, int]:
    cfg = load_config(args.config)
    if args.command == "capacity":
        return capacity_report(cfg, args.payload, args.format), EXIT_OK

    if args.command == "optimize":
        if args.sweep:
            weights = gp.sweep_weights()
        else:
            w1 = cfg["gp.w1"] if args.weights is None else args.weights
            try:
                weights = [gp.weight_pair(w1)]
            except DomainError as exc:
                raise UsageError(str(exc)) from exc
        return optimize_report(optimize_rows(weights, _release_force(cfg)), args.format), EXIT_OK

    if args.command == "torque-profile":
        if args.samples < 2:
            raise UsageError(f"--samples must be at least 2, got {args.samples}")
        if args.r2 is not None and not args.r2 > 0:
            raise UsageError(f"--r2 must be positive, got {args.r2}")
        if args.r2 is None or args.force is None:
            report = full_design_report(cfg.design_inputs())
            r2 = report.dimensions.r2_final if args.r2 is None else args.r2
            r4a = report.dimensions.r4a
            force = report.design_force if args.force is None else args.force
        else:
            r2, r4a, force = args.r2, 4.0 * args.r2, args.force
        return torque_profile_csv(YokeGeometry(r2, r4a), force, args.samples), EXIT_OK

    if args.command == "design":
        report = full_design_report(cfg.design_inputs())
        text = design_report_csv(report) if args.format == "csv" else design_report_text(report)
        return text, EXIT_OK

    if args.command == "reproduce":
        checks = reproduce_checks(cfg)
        lines = [f"{_passfail(ok)}  {name}: {detail}" for name, ok, detail in checks]
        n_ok = sum(ok for _, ok, _ in checks)
        lines.append(f"{n_ok}/{len(checks)} checks passed")
        return "\n".join(lines) + "\n", EXIT_OK if n_ok == len(checks) else EXIT_NUMERIC
    raise UsageError(f"unknown command {args.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = _run(args)
        emit(text, args.out)
    except UsageError as exc:
        print(f"gripperopt: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"gripperopt: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"gripperopt: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GripperError, ArithmeticError, ValueError) as exc:
        print(f"gripperopt: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return code


if __name__ == "__main__":
    sys.exit(main())
