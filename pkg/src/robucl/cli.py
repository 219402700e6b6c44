"""Command-line front end.

Wires the pipeline end to end: ingestion, screening, normality checks,
robust center, bootstrap intervals, conservative upper bound, and the
optional inventory conversion. All randomness flows from one --seed
(generated and echoed when omitted) and reports are byte-identical for
a given command line and seed regardless of --threads.

Exit codes: 0 success, 2 input or parse error, 3 statistical
precondition violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from importlib import resources

from . import __version__
from .bootstrap import (
    BootstrapMethod,
    BootstrapPlan,
    StatisticKind,
    bootstrap_hybrid_parametric,
    bootstrap_nonparametric,
    percentile_interval,
)
from .core import Dataset, Measurement, summarize
from .data_io import load_dataset, make_histogram, write_report
from .errors import InputFormatError, PreconditionError
from .inventory import InventoryInputs, estimate_inventory
from .mfv import MfvConfig, mfv_fit
from .outliers import iqr_partition
from .stat_tests import ks_two_sample, shapiro_wilk
from .ucl import (
    NONPARAMETRIC_MIN_N,
    chebyshev_ucl,
    conservative_upper_bound,
    max_plus_2sigma,
    weighted_mean,
)

DEFAULT_CONFIDENCE = 0.9545
DEFAULT_REPLICATES = 210_000
DEFAULT_K = 1.5
DEFAULT_ISOTOPE = "U-235"


@dataclass(frozen=True)
class RunConfig:
    """Resolved run-wide settings shared by the statistical commands."""

    seed: int
    replicates: int
    confidence: float
    alpha: float
    threads: int
    isotope_constants: dict


def _resolve_levels(args) -> tuple[float, float]:
    """Confidence/alpha pair; when both are given they must agree."""
    confidence = getattr(args, "confidence", None)
    alpha = getattr(args, "alpha", None)
    if confidence is not None and alpha is not None:
        if abs(alpha - (1.0 - confidence)) > 1e-9:
            raise InputFormatError(
                f"--confidence {confidence} and --alpha {alpha} disagree "
                "(alpha must equal 1 - confidence)"
            )
    elif alpha is not None:
        confidence = 1.0 - alpha
    elif confidence is None:
        confidence = DEFAULT_CONFIDENCE
    if alpha is None:
        alpha = 1.0 - confidence
    if not (0.0 < confidence < 1.0):
        raise InputFormatError(f"confidence must be in (0, 1), got {confidence}")
    return confidence, alpha


def _resolve_seed(args) -> int:
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = int.from_bytes(os.urandom(8), "big")
    if not (0 <= seed < 2**64):
        raise InputFormatError("seed must fit in an unsigned 64-bit integer")
    return seed


def _isotope_constants(args) -> dict:
    """Isotope table from the bundled config, a user config, and flags."""
    table = json.loads(
        resources.files("robucl").joinpath("data", "isotopes.json").read_text("utf-8")
    )["isotopes"]
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            with open(config_path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise InputFormatError(f"cannot read config {config_path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputFormatError(
                f"config {config_path} line {exc.lineno}: {exc.msg}"
            ) from None
        extra = doc.get("isotopes", doc)
        if not isinstance(extra, dict):
            raise InputFormatError(f"config {config_path}: expected an isotope table")
        table.update(extra)
    return table


def _run_config(args) -> RunConfig:
    confidence, alpha = _resolve_levels(args)
    return RunConfig(
        seed=_resolve_seed(args),
        replicates=getattr(args, "replicates", DEFAULT_REPLICATES),
        confidence=confidence,
        alpha=alpha,
        threads=getattr(args, "threads", 1),
        isotope_constants=_isotope_constants(args),
    )


def _inventory_inputs(args, cfg: RunConfig, concentration: float) -> InventoryInputs:
    name = getattr(args, "isotope", DEFAULT_ISOTOPE)
    if name not in cfg.isotope_constants:
        raise InputFormatError(
            f"isotope {name!r} not in configuration; known: {sorted(cfg.isotope_constants)}"
        )
    consts = dict(cfg.isotope_constants[name])
    if getattr(args, "specific_activity", None) is not None:
        consts["specific_activity"] = args.specific_activity
    if getattr(args, "specific_activity_sigma", None) is not None:
        consts["specific_activity_sigma"] = args.specific_activity_sigma
    if getattr(args, "exemption_threshold", None) is not None:
        consts["exemption_threshold"] = args.exemption_threshold
    try:
        sa = Measurement(
            float(consts["specific_activity"]),
            float(consts.get("specific_activity_sigma", 0.0)),
        )
        threshold = float(consts.get("exemption_threshold", 100.0))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"bad isotope constants for {name!r}: {exc}") from None
    return InventoryInputs(
        volume=args.volume,
        density=args.density,
        concentration=concentration,
        specific_activity=sa,
        exemption_threshold=threshold,
    )


def _bootstrap_dist(dataset, method, cfg, statistic=StatisticKind.MFV, kernel="jitter-resample"):
    plan = BootstrapPlan(
        method=method, seed=cfg.seed, replicates=cfg.replicates, statistic=statistic
    )
    if method is BootstrapMethod.NONPARAMETRIC:
        return bootstrap_nonparametric(dataset, plan, threads=cfg.threads)
    return bootstrap_hybrid_parametric(dataset, plan, threads=cfg.threads, kernel=kernel)


def _dataset_info(dataset: Dataset) -> dict:
    return {"label": dataset.label, "unit": dataset.unit, "n": dataset.n}


# ---------------------------------------------------------------- commands


def cmd_analyze(args):
    dataset = load_dataset(args.input)
    cfg = _run_config(args)
    report = {
        "tool": f"robucl {__version__}",
        "command": "analyze",
        "input": _dataset_info(dataset),
        "seed": cfg.seed,
        "replicates": cfg.replicates,
        "confidence": cfg.confidence,
    }

    if dataset.n >= 4:
        part = iqr_partition(dataset, k=args.k)
        report["outlier_screen"] = {
            "k": part.k,
            "q1": part.q1,
            "q3": part.q3,
            "lower_fence": part.lower_fence,
            "upper_fence": part.upper_fence,
            "outliers": [m.value for m in part.outliers],
            "retained_n": part.retained.n,
        }
        retained = part.retained
    else:
        report["outlier_screen"] = {"skipped": f"needs n >= 4, dataset has {dataset.n}"}
        retained = dataset

    analyzed = retained if args.outliers == "exclude" else dataset
    report["analyzed"] = "retained" if args.outliers == "exclude" else "full"
    report["summary"] = summarize(analyzed)

    def sw_or_note(ds):
        if ds.n < 3:
            return {"skipped": f"needs n >= 3, sample has {ds.n}"}
        try:
            return shapiro_wilk(ds.values())
        except PreconditionError as exc:
            return {"skipped": str(exc)}

    report["shapiro_full"] = sw_or_note(dataset)
    if retained is not dataset:
        report["shapiro_retained"] = sw_or_note(retained)

    report["mfv"] = mfv_fit(analyzed)

    plan_defaults = BootstrapPlan(
        method=BootstrapMethod.NONPARAMETRIC, seed=cfg.seed, replicates=cfg.replicates
    )
    conservative = conservative_upper_bound(
        analyzed, cfg.confidence, plan_defaults, threads=cfg.threads
    )
    report["conservative"] = conservative

    if args.hist_bins:
        # deterministic engine: the same plan reproduces the replicate
        # values the conservative bound just used
        method = (
            BootstrapMethod.NONPARAMETRIC
            if analyzed.n >= NONPARAMETRIC_MIN_N
            else BootstrapMethod.HYBRID_PARAMETRIC
        )
        dist = _bootstrap_dist(analyzed, method, cfg)
        interval = percentile_interval(dist, cfg.confidence)
        report["histogram"] = make_histogram(
            dist.values,
            args.hist_bins,
            markers=[
                ("point_estimate", dist.point_estimate),
                ("ci_lower", interval.lower),
                ("ci_upper", interval.upper),
            ],
        )

    if args.volume is not None or args.density is not None:
        if args.volume is None or args.density is None:
            raise InputFormatError("inventory needs both --volume and --density")
        inputs = _inventory_inputs(args, cfg, conservative.selected.value)
        report["inventory"] = {"isotope": args.isotope, **vars_of(estimate_inventory(inputs))}

    return report


def vars_of(obj):
    """Dataclass instance as a plain field dict (shallow)."""
    from dataclasses import fields

    return {f.name: getattr(obj, f.name) for f in fields(obj)}


def cmd_mfv(args):
    dataset = load_dataset(args.input)
    config = MfvConfig(tol_m=args.tol_m, tol_eps=args.tol_eps, max_iter=args.max_iter)
    return {
        "tool": f"robucl {__version__}",
        "command": "mfv",
        "input": _dataset_info(dataset),
        "result": mfv_fit(dataset, config),
    }


def cmd_bootstrap(args):
    dataset = load_dataset(args.input)
    cfg = _run_config(args)
    method = BootstrapMethod(args.method)
    statistic = StatisticKind(args.statistic)
    dist = _bootstrap_dist(dataset, method, cfg, statistic, args.hpb_kernel)
    interval = percentile_interval(dist, cfg.confidence)
    report = {
        "tool": f"robucl {__version__}",
        "command": "bootstrap",
        "input": _dataset_info(dataset),
        "plan": dist.plan,
        "point_estimate": dist.point_estimate,
        "interval": interval,
    }
    if method is BootstrapMethod.HYBRID_PARAMETRIC:
        report["hpb_kernel"] = args.hpb_kernel
    if args.hist_bins:
        report["histogram"] = make_histogram(
            dist.values,
            args.hist_bins,
            markers=[
                ("point_estimate", dist.point_estimate),
                ("ci_lower", interval.lower),
                ("ci_upper", interval.upper),
            ],
        )
    return report


def cmd_ucl(args):
    dataset = load_dataset(args.input)
    cfg = _run_config(args)
    report = {
        "tool": f"robucl {__version__}",
        "command": "ucl",
        "input": _dataset_info(dataset),
        "method": args.method,
    }
    if args.method == "chebyshev":
        report["result"] = chebyshev_ucl(summarize(dataset), cfg.alpha)
    elif args.method == "max2sigma":
        report["result"] = max_plus_2sigma(dataset)
    elif args.method == "weighted-mean":
        value, se = weighted_mean(dataset)
        report["result"] = {"value": value, "standard_error": se}
    else:  # conservative
        plan_defaults = BootstrapPlan(
            method=BootstrapMethod.NONPARAMETRIC, seed=cfg.seed, replicates=cfg.replicates
        )
        report["seed"] = cfg.seed
        report["replicates"] = cfg.replicates
        report["confidence"] = cfg.confidence
        report["result"] = conservative_upper_bound(
            dataset, cfg.confidence, plan_defaults, threads=cfg.threads
        )
    return report


def cmd_outliers(args):
    dataset = load_dataset(args.input)
    part = iqr_partition(dataset, k=args.k)
    return {
        "tool": f"robucl {__version__}",
        "command": "outliers",
        "input": _dataset_info(dataset),
        "partition": part,
    }


def cmd_normality(args):
    dataset = load_dataset(args.input)
    return {
        "tool": f"robucl {__version__}",
        "command": "normality",
        "input": _dataset_info(dataset),
        "result": shapiro_wilk(dataset.values()),
    }


def cmd_ks(args):
    a = load_dataset(args.input_a)
    b = load_dataset(args.input_b)
    return {
        "tool": f"robucl {__version__}",
        "command": "ks",
        "input_a": _dataset_info(a),
        "input_b": _dataset_info(b),
        "result": ks_two_sample(a.values(), b.values()),
    }


def cmd_inventory(args):
    cfg = _run_config(args)
    inputs = _inventory_inputs(args, cfg, args.concentration)
    return {
        "tool": f"robucl {__version__}",
        "command": "inventory",
        "isotope": args.isotope,
        "result": estimate_inventory(inputs),
    }


def cmd_histogram(args):
    dataset = load_dataset(args.input)
    markers = []
    for spec in args.marker or []:
        label, sep, value = spec.partition("=")
        if not sep:
            raise InputFormatError(f"marker must look like LABEL=VALUE, got {spec!r}")
        try:
            markers.append((label, float(value)))
        except ValueError:
            raise InputFormatError(f"marker value is not a number: {spec!r}") from None
    return make_histogram(dataset.values(), args.hist_bins, markers)


# ---------------------------------------------------------------- parser


def _add_io_flags(p):
    p.add_argument("--format", choices=("json", "csv"), default="json",
                   help="report format (default: json)")
    p.add_argument("--out", metavar="PATH",
                   help="write the report to PATH instead of stdout")


def _add_rng_flags(p):
    p.add_argument("--seed", type=int, metavar="N",
                   help="64-bit reproducibility seed (default: generated and echoed)")
    p.add_argument("--replicates", type=int, default=DEFAULT_REPLICATES, metavar="B",
                   help=f"bootstrap replicates (default: {DEFAULT_REPLICATES})")
    p.add_argument("--threads", type=int, default=1, metavar="T",
                   help="worker threads for replicate evaluation; never changes "
                        "the numbers (default: 1)")


def _add_level_flags(p):
    p.add_argument("--confidence", type=float, metavar="C",
                   help=f"confidence level (default: {DEFAULT_CONFIDENCE})")
    p.add_argument("--alpha", type=float, metavar="A",
                   help="significance level; must equal 1 - confidence when both given")


def _add_isotope_flags(p):
    p.add_argument("--isotope", default=DEFAULT_ISOTOPE,
                   help=f"isotope key in the constants table (default: {DEFAULT_ISOTOPE})")
    p.add_argument("--config", metavar="PATH",
                   help="JSON file with an {\"isotopes\": {name: constants}} table "
                        "overriding the bundled one")
    p.add_argument("--specific-activity", type=float, metavar="BQ_PER_G",
                   help="override the isotope's specific activity")
    p.add_argument("--specific-activity-sigma", type=float, metavar="BQ_PER_G",
                   help="override the specific-activity uncertainty")
    p.add_argument("--exemption-threshold", type=float, metavar="G",
                   help="override the exemption threshold in grams")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="robucl",
        description="Robust central values, bootstrap confidence intervals, and "
                    "conservative upper confidence limits for small outlier-prone "
                    "concentration datasets.",
    )
    parser.add_argument("--version", action="version", version=f"robucl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full pipeline: summary, screening, normality, "
                                       "MFV, conservative bound, optional inventory")
    p.add_argument("input", help="dataset file (csv or json)")
    p.add_argument("--outliers", choices=("report", "exclude"), default="report",
                   help="report: flag outliers but analyze the full set; "
                        "exclude: analyze the retained subset (default: report)")
    p.add_argument("--k", type=float, default=DEFAULT_K,
                   help=f"IQR whisker multiplier (default: {DEFAULT_K})")
    p.add_argument("--hist-bins", type=int, metavar="N",
                   help="embed a histogram of the bootstrap replicates with N bins")
    p.add_argument("--volume", type=float, metavar="M3",
                   help="soil/rock volume; with --density, adds the inventory step")
    p.add_argument("--density", type=float, metavar="KG_M3",
                   help="material density; with --volume, adds the inventory step")
    _add_rng_flags(p)
    _add_level_flags(p)
    _add_isotope_flags(p)
    _add_io_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("mfv", help="most frequent value of one dataset")
    p.add_argument("input")
    p.add_argument("--tol-m", type=float, default=MfvConfig.tol_m,
                   help=f"location tolerance (default: {MfvConfig.tol_m})")
    p.add_argument("--tol-eps", type=float, default=MfvConfig.tol_eps,
                   help=f"scale tolerance (default: {MfvConfig.tol_eps})")
    p.add_argument("--max-iter", type=int, default=MfvConfig.max_iter,
                   help=f"iteration cap (default: {MfvConfig.max_iter})")
    _add_io_flags(p)
    p.set_defaults(func=cmd_mfv)

    p = sub.add_parser("bootstrap", help="bootstrap distribution and percentile interval")
    p.add_argument("input")
    p.add_argument("--method", choices=tuple(m.value for m in BootstrapMethod),
                   default=BootstrapMethod.NONPARAMETRIC.value,
                   help="resampling scheme (default: nonparametric)")
    p.add_argument("--statistic", choices=tuple(s.value for s in StatisticKind),
                   default=StatisticKind.MFV.value,
                   help="replicate statistic (default: mfv)")
    p.add_argument("--hpb-kernel", choices=("jitter-resample", "per-element"),
                   default="jitter-resample",
                   help="hybrid-parametric sampling kernel (default: jitter-resample)")
    p.add_argument("--hist-bins", type=int, metavar="N",
                   help="embed a histogram of the replicates with N bins")
    _add_rng_flags(p)
    _add_level_flags(p)
    _add_io_flags(p)
    p.set_defaults(func=cmd_bootstrap)

    p = sub.add_parser("ucl", help="one upper-bound method on one dataset")
    p.add_argument("input")
    p.add_argument("--method", required=True,
                   choices=("chebyshev", "max2sigma", "weighted-mean", "conservative"),
                   help="chebyshev and the conservative pipeline honor "
                        "--alpha/--confidence; max2sigma is fixed at 2 sigma")
    _add_rng_flags(p)
    _add_level_flags(p)
    _add_io_flags(p)
    p.set_defaults(func=cmd_ucl)

    p = sub.add_parser("outliers", help="IQR screening partition")
    p.add_argument("input")
    p.add_argument("--k", type=float, default=DEFAULT_K,
                   help=f"IQR whisker multiplier (default: {DEFAULT_K})")
    _add_io_flags(p)
    p.set_defaults(func=cmd_outliers)

    p = sub.add_parser("normality", help="Shapiro-Wilk test")
    p.add_argument("input")
    _add_io_flags(p)
    p.set_defaults(func=cmd_normality)

    p = sub.add_parser("ks", help="two-sample Kolmogorov-Smirnov test")
    p.add_argument("input_a")
    p.add_argument("input_b")
    _add_io_flags(p)
    p.set_defaults(func=cmd_ks)

    p = sub.add_parser("inventory", help="concentration to fissile mass and exemption")
    p.add_argument("--volume", type=float, required=True, metavar="M3")
    p.add_argument("--density", type=float, required=True, metavar="KG_M3")
    p.add_argument("--concentration", type=float, required=True, metavar="BQ_KG")
    _add_isotope_flags(p)
    _add_io_flags(p)
    p.set_defaults(func=cmd_inventory)

    p = sub.add_parser("histogram", help="bin a dataset's values for plotting")
    p.add_argument("input")
    p.add_argument("--hist-bins", type=int, required=True, metavar="N",
                   help="number of uniform bins")
    p.add_argument("--marker", action="append", metavar="LABEL=VALUE",
                   help="labeled vertical marker; repeatable")
    _add_io_flags(p)
    p.set_defaults(func=cmd_histogram)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload = args.func(args)
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    data = write_report(payload, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
