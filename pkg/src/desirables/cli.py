"""Command-line front end: eval, scan, check, fit, and curves.

Exit codes: 0 ok/coherent, 1 incoherent findings or infeasible fit,
2 usage/parse/validation errors, 3 domain or runtime errors.  All output is
UTF-8 with LF line endings; CSV fields containing commas are quoted.
"""

from __future__ import annotations

import argparse
import csv
import sys

from . import config as configmod
from .coherence import AssessmentSet, Functional, audit, fit_functional
from .discount import (
    DiscountSpec,
    Exponential,
    GeneralizedHyperbolic,
    Hybrid,
    Hyperbolic,
    InverseLog,
    QuasiHyperbolic,
    ScaleDependent,
)
from .errors import ConfigError, DesirablesError, SpaceMismatch
from .intertemporal import (
    Preference,
    effective_utility,
    schedule_value,
    shift_schedule,
)

_EXIT_OK = 0
_EXIT_FINDINGS = 1
_EXIT_USAGE = 2
_EXIT_RUNTIME = 3


def _load_scenario(path: str) -> configmod.Scenario:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    return configmod.build_scenario(configmod.parse(text))


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return _EXIT_USAGE


def _runtime_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return _EXIT_RUNTIME


def _named_schedule_value(scenario, name, rounded):
    """Schedule value with payment-level error attribution."""
    sch = scenario.schedules[name]
    try:
        return schedule_value(
            scenario.utility, scenario.discount, sch, round_factors=rounded
        )
    except DesirablesError:
        # Re-evaluate payment by payment to name the culprit.
        for i, p in enumerate(sch.payments):
            try:
                effective_utility(
                    scenario.utility,
                    scenario.discount,
                    p.amount,
                    p.time,
                    p.state,
                    round_factors=rounded,
                )
            except DesirablesError as exc:
                raise DesirablesError(
                    f'schedule "{name}" payment {i} '
                    f"(amount={p.amount:g}, t={p.time:g}): {exc}"
                ) from None
        raise


def cmd_eval(args) -> int:
    scenario = _load_scenario(args.config)
    if not scenario.schedules:
        return _usage_error("no schedules")
    if scenario.discount is None:
        return _usage_error("no discount block")
    rows = []
    try:
        for name in scenario.schedules:
            rows.append((name, _named_schedule_value(scenario, name, args.paper_rounding)))
    except DesirablesError as exc:
        return _runtime_error(str(exc))
    print("schedule\tvalue")
    for name, value in rows:
        print(f"{name}\t{value:.6g}")
    return _EXIT_OK


def cmd_scan(args) -> int:
    scenario = _load_scenario(args.config)
    if scenario.discount is None:
        return _usage_error("no discount block")
    if scenario.scan_shifts is None or scenario.scan_pair is None:
        return _usage_error("no scan block")
    name_a, name_b = scenario.scan_pair
    a0, b0 = scenario.schedules[name_a], scenario.schedules[name_b]
    deltas = sorted(scenario.scan_shifts)
    rounded = args.paper_rounding
    rows = []
    baseline = None
    first_flip = None
    opposite = {Preference.A: Preference.B, Preference.B: Preference.A}
    try:
        base_a = schedule_value(scenario.utility, scenario.discount, a0, round_factors=rounded)
        base_b = schedule_value(scenario.utility, scenario.discount, b0, round_factors=rounded)
        baseline = _prefer(base_a, base_b, args.tol)
        for delta in deltas:
            va = schedule_value(
                scenario.utility,
                scenario.discount,
                shift_schedule(a0, delta),
                round_factors=rounded,
            )
            vb = schedule_value(
                scenario.utility,
                scenario.discount,
                shift_schedule(b0, delta),
                round_factors=rounded,
            )
            pref = _prefer(va, vb, args.tol)
            rows.append((delta, va, vb, pref))
            if first_flip is None and pref is opposite.get(baseline):
                first_flip = delta
    except DesirablesError as exc:
        return _runtime_error(str(exc))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["delta", "value_a", "value_b", "preference"])
    for delta, va, vb, pref in rows:
        writer.writerow([f"{delta:g}", f"{va:.10g}", f"{vb:.10g}", pref.value])
    if first_flip is None:
        print("no reversal")
    else:
        print(f"first flip at delta={first_flip:g}")
    return _EXIT_OK


def _prefer(va: float, vb: float, tol: float) -> Preference:
    if va > vb + tol:
        return Preference.A
    if vb > va + tol:
        return Preference.B
    return Preference.INDIFFERENT


def _assessment_set(scenario) -> AssessmentSet:
    space = scenario.states
    if space is None and scenario.assessments_accepted:
        space = scenario.assessments_accepted[0].space
    if space is None:
        raise ConfigError("assessments need a states block or inline gamble states")
    return AssessmentSet(
        space=space,
        utility=scenario.utility,
        accepted=tuple(scenario.assessments_accepted),
        rejected=tuple(scenario.assessments_rejected),
    )


def cmd_check(args) -> int:
    scenario = _load_scenario(args.config)
    if not scenario.has_assessments:
        return _usage_error("no assessments block")
    try:
        aset = _assessment_set(scenario)
    except (ValueError, SpaceMismatch, ConfigError) as exc:
        return _usage_error(str(exc))
    try:
        findings = audit(aset)
    except DesirablesError as exc:
        return _runtime_error(str(exc))
    if not findings:
        print("coherent")
        return _EXIT_OK
    for finding in findings:
        print(finding)
    return _EXIT_FINDINGS


def cmd_fit(args) -> int:
    scenario = _load_scenario(args.config)
    if not scenario.has_assessments:
        return _usage_error("no assessments block")
    try:
        aset = _assessment_set(scenario)
    except (ValueError, SpaceMismatch, ConfigError) as exc:
        return _usage_error(str(exc))
    try:
        result = fit_functional(aset, strict_margin=args.strict_margin)
    except ValueError as exc:
        return _usage_error(str(exc))
    except DesirablesError as exc:
        return _runtime_error(str(exc))
    if isinstance(result, Functional):
        print("state\tweight")
        for label, w in zip(aset.space.labels, result.weights):
            print(f"{label}\t{w:.6g}")
        return _EXIT_OK
    print("infeasible")
    for kind, index in result.conflict:
        print(f"conflict: {kind}[{index}]")
    return _EXIT_FINDINGS


def _parse_range(text: str) -> list[float]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) != 3:
            raise ValueError
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"malformed range {text!r}; use a number or lo:hi:step"
        ) from None
    if step <= 0 or hi < lo:
        raise argparse.ArgumentTypeError(
            f"malformed range {text!r}; need step > 0 and hi >= lo"
        )
    n = int(round((hi - lo) / step))
    values = [lo + i * step for i in range(n + 1)]
    if values[-1] > hi + 1e-9 * step:
        values.pop()
    return values


_CURVE_PARAMS = {
    "exponential": ("r",),
    "hyperbolic": ("k",),
    "quasi": ("beta", "delta"),
    "generalized": ("k", "p"),
    "scale": ("r", "x"),
    "state": ("r",),
    "hybrid": ("lambda", "r", "k"),
}


def _curve_spec(regime: str, params: dict[str, float]) -> tuple[DiscountSpec, float | None]:
    """Discount spec and the reward argument (if any) for one parameter point."""
    if regime == "exponential" or regime == "state":
        return Exponential(params["r"]), None
    if regime == "hyperbolic":
        return Hyperbolic(params["k"]), None
    if regime == "quasi":
        return QuasiHyperbolic(params["beta"], params["delta"]), None
    if regime == "generalized":
        return GeneralizedHyperbolic(params["k"], params["p"]), None
    if regime == "scale":
        return (
            ScaleDependent(Exponential(params["r"]), InverseLog(params["log_base"])),
            params["x"],
        )
    return Hybrid(params["lambda"], Exponential(params["r"]), Hyperbolic(params["k"])), None


def cmd_curves(args) -> int:
    regime = args.regime
    wanted = _CURVE_PARAMS[regime]
    supplied = {
        "r": args.r,
        "k": args.k,
        "p": args.p,
        "beta": args.beta,
        "delta": args.delta,
        "lambda": getattr(args, "lam"),
        "x": args.x,
    }
    for name in wanted:
        if supplied[name] is None:
            return _usage_error(f"regime {regime!r} needs --{'lambda' if name == 'lambda' else name}")
    for name, value in supplied.items():
        if value is not None and name not in wanted:
            return _usage_error(f"regime {regime!r} does not use --{'lambda' if name == 'lambda' else name}")

    grids = [supplied[name] for name in wanted]
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["regime", "param_set", "t", "factor"])
    try:
        for combo in _product(grids):
            params = dict(zip(wanted, combo))
            params["log_base"] = args.log_base
            spec, x = _curve_spec(regime, params)
            label = ",".join(f"{name}={value:g}" for name, value in zip(wanted, combo))
            for t in args.t:
                factor = spec.factor(t, x)
                writer.writerow([regime, label, f"{t:g}", f"{factor:.10g}"])
    except DesirablesError as exc:
        return _runtime_error(str(exc))
    return _EXIT_OK


def _product(grids: list[list[float]]):
    if not grids:
        yield ()
        return
    for head in grids[0]:
        for rest in _product(grids[1:]):
            yield (head,) + rest


def _add_config_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", required=True, help="scenario config path")
    sub.add_argument("--tol", type=float, default=1e-9, help="indifference tolerance")
    sub.add_argument(
        "--paper-rounding",
        action="store_true",
        help="round primitive discount factors to two decimals",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="desirables",
        description="Evaluate, compare, and audit gambles under non-linear utility "
        "and flexible discounting.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="value every schedule in a config")
    _add_config_flags(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_scan = sub.add_parser("scan", help="preference-reversal scan over time shifts")
    _add_config_flags(p_scan)
    p_scan.set_defaults(func=cmd_scan)

    p_check = sub.add_parser("check", help="audit assessments for coherence")
    _add_config_flags(p_check)
    p_check.set_defaults(func=cmd_check)

    p_fit = sub.add_parser("fit", help="fit representation weights to assessments")
    _add_config_flags(p_fit)
    p_fit.add_argument(
        "--strict-margin",
        type=float,
        default=1e-6,
        help="rejection margin epsilon (strict inequalities are not expressible in an LP)",
    )
    p_fit.set_defaults(func=cmd_fit)

    p_curves = sub.add_parser("curves", help="emit discount-curve data as CSV")
    p_curves.add_argument("--regime", required=True, choices=sorted(_CURVE_PARAMS))
    p_curves.add_argument("--t", type=_parse_range, required=True, help="delays, lo:hi:step")
    p_curves.add_argument("--r", type=_parse_range, help="rate(s)")
    p_curves.add_argument("--k", type=_parse_range, help="hyperbolic k value(s)")
    p_curves.add_argument("--p", type=_parse_range, help="generalized power(s)")
    p_curves.add_argument("--beta", type=_parse_range, help="present-bias beta value(s)")
    p_curves.add_argument("--delta", type=_parse_range, help="long-run delta value(s)")
    p_curves.add_argument("--lambda", dest="lam", type=_parse_range, help="mixture weight(s)")
    p_curves.add_argument("--x", type=_parse_range, help="reward(s) for scale-dependent curves")
    p_curves.add_argument("--log-base", type=float, default=10.0)
    p_curves.set_defaults(func=cmd_curves)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except DesirablesError as exc:
        return _runtime_error(str(exc))


def entrypoint() -> None:
    raise SystemExit(main(sys.argv[1:]))
