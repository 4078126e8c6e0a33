"""
Command-line entry point: ``pairwise-ot <subcommand> [flags]``.

Every subcommand writes one table (CSV or JSON) whose first record is the
run metadata, so a result file carries the flags needed to reproduce it.
Exit codes: 0 success, 2 invalid input, 64 unknown subcommand, 66 unreadable file.
"""

import argparse
import json
import math
import os
import sys
from datetime import datetime, timezone
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import polars as pl

from src import __version__
from src.apps import (
    circle_online_instance,
    greedy_closed_form,
    load_labeling_json,
    load_task_sequence_json,
    make_sketch,
    mean_rounded_cost,
    online_report,
    robust_report,
    round_labels,
    sketch_estimate,
)
from src.config import get_settings
from src.core.distributions import DiscreteDistribution
from src.core.io import dump_distribution_json, dump_space_json, load_distribution_json, load_space_json, read_json
from src.core.seeding import as_seed, trial_keys
from src.core.spaces import CostSpace
from src.exceptions import DistributionError, PairwiseOTError, ParameterRangeError
from src.hashing import Hasher
from src.logger_config import LOG_DIR, setup_logger
from src.oracle.emd import emd_exact, tv_distance
from src.poisson.pfr import dpc_closed_form, empirical_disagreement
from src.polars_schemas import (
    get_bounds_schema,
    get_distance_schema,
    get_hash_batch_schema,
    get_instance_schema,
    get_labeling_schema,
    get_online_schema,
    get_plan_schema,
    get_ratio_pairs_schema,
    get_robust_schema,
    get_scalar_schema,
    get_sketch_schema,
)
from src.ratio import (
    BOUND_KINDS,
    BoundParams,
    bound_calculator,
    circle_mixture_points,
    cycle_instance,
    epsilon_instance,
    estimate_ratio,
    estimate_truncated_ratio,
    grid_walk_instance,
    mixture_instance,
)
from src.spfr.ultrametric import build_minimax_ultrametric
from src.utils import format_float, parse_csv_list, parse_norm_index, round_significant

logger = setup_logger(
    __name__,
    log_file_path=os.path.join(LOG_DIR, "cli.log"),
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_USAGE = 64
EXIT_NO_INPUT = 66

INSTANCE_KINDS = ("cycle", "mixture", "epsilon", "circle-mixture", "grid-walk")
HASHER_FLAGS = ("eta", "resolution", "method", "reduced")


class CommandOutput:
    """One result table plus scalar summary values for the metadata record."""

    def __init__(self, rows: List[Dict[str, Any]], schema: dict, summary: Optional[Dict[str, Any]] = None):
        self.rows = rows
        self.schema = schema
        self.summary = summary or {}

    def frame(self) -> pl.DataFrame:
        return pl.DataFrame([_rounded(row) for row in self.rows], schema=self.schema)


def _rounded(record: Dict[str, Any]) -> Dict[str, Any]:
    return {k: round_significant(v) if isinstance(v, float) else v for k, v in record.items()}


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return round_significant(value) if math.isfinite(value) else format_float(value)
    if isinstance(value, np.integer):
        return int(value)
    return value


# Loaders


def _load_space(path: Optional[str]) -> Optional[CostSpace]:
    return load_space_json(path) if path else None


def _load_collection(paths: Sequence[str], space_path: Optional[str]) -> List[DiscreteDistribution]:
    """All distributions are read on one space: --space if given, else the first file's space."""
    space = _load_space(space_path)
    first = load_distribution_json(paths[0], space)
    return [first] + [load_distribution_json(path, first.space) for path in paths[1:]]


def _resolve(base: str, path: str) -> str:
    return path if os.path.isabs(path) else os.path.join(os.path.dirname(os.path.abspath(base)), path)


def _load_pair(args: argparse.Namespace) -> List[DiscreteDistribution]:
    """
    The two distributions of --dists, or of a sketch instance
    {"space": "<path>", "dists": ["<P>", "<Q>"]} with paths relative to the instance file.
    """
    if args.dists:
        return _load_collection(args.dists, args.space)
    raw = read_json(args.instance)
    dists = raw.get("dists") if isinstance(raw, dict) else None
    if not isinstance(dists, list) or len(dists) != 2 or not all(isinstance(d, str) for d in dists):
        raise DistributionError(f"dists: sketch instance {args.instance} must list two distribution files")
    space_path = args.space or (_resolve(args.instance, raw["space"]) if raw.get("space") else None)
    return _load_collection([_resolve(args.instance, d) for d in dists], space_path)


def _hasher(args: argparse.Namespace) -> Hasher:
    accepted = Hasher.CONFIG.get(args.algo, {}).get("options", {})
    options = {}
    for name in HASHER_FLAGS:
        value = getattr(args, name, None)
        if value is None or value is False or name not in accepted:
            continue
        options[name] = value
    return Hasher(args.algo, **options)


def _require_trials(trials: int, minimum: int = 1) -> int:
    if trials < minimum:
        raise ParameterRangeError("trials", f"must be >= {minimum}, got {trials}")
    return trials


def _norm_index(raw: str) -> float:
    try:
        return parse_norm_index(raw)
    except ValueError:
        raise ParameterRangeError("p", f"expected a norm index >= 1 or 'inf', got {raw!r}")


# Subcommands


def run_emd(args: argparse.Namespace, seed: int, threads: int) -> CommandOutput:
    P, Q = _load_collection([args.p, args.q], args.space)
    result = emd_exact(P, Q, quantize=args.quantize)
    if args.plan:
        rows_idx, cols_idx, mass = result.plan.entries()
        cost = P.space.cost_matrix()
        plan_rows = [
            {"source": int(x), "target": int(y), "mass": float(m), "cost": float(cost[x, y])}
            for x, y, m in zip(rows_idx, cols_idx, mass)
        ]
        plan = CommandOutput(plan_rows, get_plan_schema(), {"emd": result.value})
        write_output(plan, _metadata(args, seed, plan.summary), args.plan, _infer_format(args.plan, None))
    return CommandOutput([{"name": "emd", "value": result.value}], get_scalar_schema(), {"emd": result.value})


def run_dpc(args: argparse.Namespace, seed: int, threads: int) -> CommandOutput:
    P, Q = _load_collection([args.p, args.q], args.space)
    rows = [
        {"name": "tv", "value": tv_distance(P, Q)},
        {"name": "dpc", "value": dpc_closed_form(P, Q)},
    ]
    if args.empirical:
        rate, stderr = empirical_disagreement(P, Q, _require_trials(args.empirical), seed, threads)
        rows += [{"name": "empirical", "value": rate}, {"name": "empirical_stderr", "value": stderr}]
    return CommandOutput(rows, get_scalar_schema(), {row["name"]: row["value"] for row in rows})


def run_hash(args: argparse.Namespace, seed: int, threads: int) -> CommandOutput:
    (P,) = _load_collection([args.dist], args.space)
    hasher = _hasher(args)
    keys = as_seed(seed).keys if args.batch is None else trial_keys(seed, _require_trials(args.batch))
    points = hasher.sample_batch(P.space, P, keys)
    labels = P.space.labels()
    rows = [{"trial": t, "point": int(x), "label": str(labels[x])} for t, x in enumerate(points)]
    return CommandOutput(rows, get_hash_batch_schema(), {"hasher": hasher.describe()})


def run_ratio(args: argparse.Namespace, seed: int, threads: int) -> CommandOutput:
    collection = _load_collection(args.dists, args.space)
    hasher = _hasher(args)
    if args.truncate is None:
        estimate = estimate_ratio(hasher, collection, args.trials, seed, threads)
    else:
        estimate = estimate_truncated_ratio(hasher, collection, args.truncate, args.trials, seed, threads)
    rows = [
        {
            "first": p.first,
            "second": p.second,
            "mean_cost": p.mean_cost,
            "stderr": p.stderr,
            "c_star": p.c_star,
            "ratio": p.ratio,
            "ratio_stderr": p.ratio_stderr,
            "excluded": p.excluded,
        }
        for p in estimate.pairs
    ]
    worst = estimate.worst_pair
    summary = {
        "ratio": estimate.ratio,
        "ratio_stderr": estimate.ratio_stderr,
        "worst_pair": [worst.first, worst.second] if worst else None,
        "hasher": estimate.hasher,
    }
    return CommandOutput(rows, get_ratio_pairs_schema(), summary)


def run_bounds(args: argparse.Namespace, seed: int, threads: int) -> CommandOutput:
    params = BoundParams(
        n=args.n,
        p=_norm_index(args.p),
        q=args.q,
        s=args.s,
        size=args.size,
        eta=args.eta,
    )
    value = bound_calculator(args.kind, params)
    row = {"kind": args.kind, "value": value, "n": params.n, "p": params.p, "q": params.q,
           "s": params.s, "size": params.size, "eta": params.eta}
    return CommandOutput([row], get_bounds_schema(), {"value": value})


def _instance_points(args: argparse.Namespace) -> List[int]:
    points = parse_csv_list(args.points)
    if not points:
        raise ParameterRangeError("points", f"{args.kind} instance needs --points i,j,...")
    try:
        return [int(p) for p in points]
    except ValueError:
        raise ParameterRangeError("points", f"expected integers, got {args.points!r}")


def run_instance(args: argparse.Namespace, seed: int, threads: int) -> CommandOutput:
    if args.kind in ("cycle", "mixture"):
        space = _load_space(args.space)
        if space is None:
            raise ParameterRangeError("space", f"{args.kind} instance needs --space")
        build = cycle_instance if args.kind == "cycle" else mixture_instance
        collection, bound = build(space, _instance_points(args))
    elif args.kind == "epsilon":
        space, collection, bound = epsilon_instance(args.eps)
    elif args.kind == "circle-mixture":
        space, collection, bound = circle_mixture_points(args.k, args.q)
    else:
        space, collection, bound = grid_walk_instance(args.n, args.s, _norm_index(args.p), args.q)

    os.makedirs(args.out_dir, exist_ok=True)
    dump_space_json(space, os.path.join(args.out_dir, "space.json"))
    rows = []
    for i, P in enumerate(collection):
        path = os.path.join(args.out_dir, f"P{i}.json")
        dump_distribution_json(P, path, "space.json")
        rows.append({"index": i, "path": path, "support": ",".join(str(int(x)) for x in P.support)})
    logger.info(f"Wrote {args.kind} instance with {len(collection)} distributions to {args.out_dir}")
    return CommandOutput(rows, get_instance_schema(), {"lower_bound": bound})


def run_sketch(args: argparse.Namespace, seed: int, threads: int) -> CommandOutput:
    P, Q = _load_pair(args)
    hasher = _hasher(args)
    a, b = make_sketch(hasher, P, args.k, seed), make_sketch(hasher, Q, args.k, seed)
    cost = P.space.cost_matrix()
    rows = [
        {"index": i, "point_a": int(x), "point_b": int(y), "cost": float(cost[x, y])}
        for i, (x, y) in enumerate(zip(a.points, b.points))
    ]
    summary = {"estimate": sketch_estimate(a, b, P.space), "emd": emd_exact(P, Q).value}
    return CommandOutput(rows, get_sketch_schema(), summary)


def run_robust(args: argparse.Namespace, seed: int, threads: int) -> CommandOutput:
    report = robust_report(args.eps, _hasher(args), args.trials, seed, threads)
    row = {
        "eps": report.eps,
        "perturbation": report.perturbation,
        "optimal_plan_distance": report.optimal_plan_distance,
        "robust_plan_distance": report.robust_plan_distance,
        "coupled_cost": report.coupled_cost,
        "coupled_cost_stderr": report.coupled_cost_stderr,
        "trials": report.trials,
    }
    return CommandOutput([row], get_robust_schema(), {"robust_plan_distance": report.robust_plan_distance})


def run_online(args: argparse.Namespace, seed: int, threads: int) -> CommandOutput:
    if args.instance:
        seq = load_task_sequence_json(args.instance, _load_space(args.space))
        closed_form = None
    else:
        seq = circle_online_instance(args.l, args.T, args.metric)
        closed_form = greedy_closed_form(args.l, args.T, args.metric)
    report = online_report(seq, _require_trials(args.trials), seed, _hasher(args), threads, closed_form)
    shared = {
        "sum_c_star": report.sum_c_star,
        "ratio_hat": report.ratio_hat,
        "reference_ratio": report.reference_ratio,
    }
    rows = []
    for outcome, closed in ((report.greedy, report.greedy_closed_form), (report.preemptive, None)):
        rows.append({
            "scheme": outcome.scheme,
            "mean_cost": outcome.mean_cost,
            "stderr": outcome.stderr,
            "trials": outcome.trials,
            **shared,
            "closed_form": closed,
        })
    return CommandOutput(rows, get_online_schema(), shared)


def run_round_labels(args: argparse.Namespace, seed: int, threads: int) -> CommandOutput:
    instance = load_labeling_json(args.instance, _load_space(args.space))
    hasher = _hasher(args)
    rounded = round_labels(instance, hasher, seed)
    mean, stderr = mean_rounded_cost(instance, hasher, _require_trials(args.trials), seed, threads)
    rows = [
        {"object": a, "label": int(x), "assignment_cost": float(instance.g[a, x])}
        for a, x in enumerate(rounded.labels)
    ]
    summary = {
        "cost": rounded.cost,
        "fractional_cost": rounded.fractional_cost,
        "mean_cost": mean,
        "mean_cost_stderr": stderr,
    }
    return CommandOutput(rows, get_labeling_schema(), summary)


def run_ultrametric(args: argparse.Namespace, seed: int, threads: int) -> CommandOutput:
    space = load_space_json(args.space)
    ultra = build_minimax_ultrametric(space)
    if args.space_out:
        dump_space_json(ultra, args.space_out)
    dist = ultra.distance_matrix()
    rows = [
        {"row": i, "col": j, "distance": float(dist[i, j])}
        for i in range(ultra.size)
        for j in range(ultra.size)
    ]
    return CommandOutput(rows, get_distance_schema(), {"size": ultra.size})


COMMANDS: Dict[str, Callable[[argparse.Namespace, int, int], CommandOutput]] = {
    "emd": run_emd,
    "dpc": run_dpc,
    "hash": run_hash,
    "ratio": run_ratio,
    "bounds": run_bounds,
    "instance": run_instance,
    "sketch": run_sketch,
    "robust-demo": run_robust,
    "online": run_online,
    "round-labels": run_round_labels,
    "ultrametric": run_ultrametric,
}


# Output


def _infer_format(path: Optional[str], requested: Optional[str]) -> str:
    if requested:
        return requested
    return "json" if path and path.lower().endswith(".json") else "csv"


def _metadata(args: argparse.Namespace, seed: int, summary: Dict[str, Any]) -> Dict[str, Any]:
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("subcommand", "seed")}
    return _jsonable({
        "version": __version__,
        "seed": seed,
        "subcommand": args.subcommand,
        "flags": flags,
        "summary": summary,
        "timestamp": datetime.now(timezone.utc).strftime("%Y-%m-%d %H:%M:%S"),
    })


def write_output(output: CommandOutput, metadata: Dict[str, Any], path: Optional[str], fmt: str) -> None:
    """
    CSV: a '# {metadata}' line followed by the table. JSON: {"metadata", "rows"}.
    Writes to stdout when ``path`` is None.
    """
    frame = output.frame()
    if fmt == "json":
        text = json.dumps({"metadata": metadata, "rows": _jsonable(frame.to_dicts())}, indent=2) + "\n"
    else:
        text = "# " + json.dumps(metadata) + "\n" + frame.write_csv()
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    logger.info(f"Wrote {frame.height} rows to {path}")


# Parser


def _common(parser: argparse.ArgumentParser, trials: Optional[int] = None) -> None:
    parser.add_argument("--seed", type=int, default=0, help="Master seed. PAIRWISE_OT_SEED overrides it when set. Defaults to 0.")
    parser.add_argument("--threads", type=int, default=None, help="Worker threads for trial chunks. Results do not depend on it.")
    parser.add_argument("--out", type=str, default=None, help="Output file. Writes to stdout when omitted.")
    parser.add_argument(
        "--format",
        type=str,
        default=None,
        choices=["csv", "json"],
        help="Output format. Defaults to json for a .json --out and csv otherwise.",
    )
    if trials is not None:
        parser.add_argument("--trials", type=int, default=trials, help=f"Number of child seeds. Defaults to {trials}.")


def _hasher_flags(parser: argparse.ArgumentParser, default: str = "metric") -> None:
    parser.add_argument(
        "--algo",
        type=str,
        default=default,
        choices=sorted(Hasher.CONFIG),
        help=f"Coupling sampler (e.g., poisson, metric, torus, quantile). Defaults to {default}.",
    )
    parser.add_argument("--eta", type=float, default=None, help="Level-ratio parameter of the metric and torus hashes.")
    parser.add_argument("--resolution", type=int, default=None, help="Quadrature resolution per axis for torus kernel tables.")
    parser.add_argument("--method", type=str, default=None, choices=["auto", "fft", "direct"], help="Torus convolution method.")
    parser.add_argument("--reduced", action="store_true", help="Visit only levels where some pairwise distance changes cell.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairwise-ot",
        description="Pairwise multi-marginal optimal transport couplings on finite spaces.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("emd", help="Exact optimal transport cost between two distributions.")
    p.add_argument("--space", type=str, default=None, help="Space JSON. Defaults to the space named by --p.")
    p.add_argument("--p", type=str, required=True, help="First distribution JSON.")
    p.add_argument("--q", type=str, required=True, help="Second distribution JSON.")
    p.add_argument("--plan", type=str, default=None, help="Also write the optimal plan (source, target, mass, cost) here.")
    p.add_argument("--quantize", action="store_true", help="Snap masses to multiples of 2^-40 before solving.")
    _common(p)

    p = sub.add_parser("dpc", help="Disagreement probability of the universal Poisson coupling.")
    p.add_argument("--space", type=str, default=None, help="Space JSON. Defaults to the space named by --p.")
    p.add_argument("--p", type=str, required=True, help="First distribution JSON.")
    p.add_argument("--q", type=str, required=True, help="Second distribution JSON.")
    p.add_argument("--empirical", type=int, default=None, help="Also estimate the disagreement rate over this many trials.")
    _common(p)

    p = sub.add_parser("hash", help="Hash one distribution to a point.")
    p.add_argument("--space", type=str, default=None, help="Space JSON. Defaults to the space named by --dist.")
    p.add_argument("--dist", type=str, required=True, help="Distribution JSON.")
    p.add_argument("--batch", type=int, default=None, help="Emit this many hashes under child seeds instead of one.")
    _hasher_flags(p)
    _common(p)

    p = sub.add_parser("ratio", help="Monte Carlo estimate of a coupling's pairwise ratio on a collection.")
    p.add_argument("--space", type=str, default=None, help="Space JSON. Defaults to the space named by the first --dists file.")
    p.add_argument("--dists", type=str, nargs="+", required=True, help="Two or more distribution JSON files.")
    p.add_argument("--truncate", type=float, default=None, help="Estimate the truncated ratio E[min{c/C*, ETA}] instead.")
    _hasher_flags(p)
    _common(p, trials=10_000)

    p = sub.add_parser("bounds", help="Evaluate a closed-form ratio bound.")
    p.add_argument("--kind", type=str, required=True, choices=sorted(BOUND_KINDS), help="Bound to evaluate.")
    p.add_argument("--n", type=int, default=1, help="Dimension. Defaults to 1.")
    p.add_argument("--p", type=str, default="2", help="Norm index (a number >= 1 or 'inf'). Defaults to 2.")
    p.add_argument("--q", type=float, default=1.0, help="Cost exponent. Defaults to 1.")
    p.add_argument("--s", type=int, default=None, help="Grid side length.")
    p.add_argument("--size", type=int, default=None, help="Number of points (finite-metric, discrete-metric) or distributions.")
    p.add_argument("--eta", type=float, default=None, help="Truncation level or aspect ratio, depending on --kind.")
    _common(p)

    p = sub.add_parser("instance", help="Write a lower-bound instance as distribution files.")
    p.add_argument("--kind", type=str, required=True, choices=INSTANCE_KINDS, help="Instance family.")
    p.add_argument("--space", type=str, default=None, help="Space JSON for cycle and mixture instances.")
    p.add_argument("--points", type=str, default=None, help="Comma-separated point indices for cycle and mixture instances.")
    p.add_argument("--eps", type=float, default=0.1, help="Off-pair cost of the epsilon instance. Defaults to 0.1.")
    p.add_argument("--k", type=int, default=4, help="Half the number of circle points for circle-mixture. Defaults to 4.")
    p.add_argument("--n", type=int, default=2, help="Grid dimension for grid-walk. Defaults to 2.")
    p.add_argument("--s", type=int, default=4, help="Grid side length for grid-walk. Defaults to 4.")
    p.add_argument("--p", type=str, default="2", help="Grid norm index for grid-walk. Defaults to 2.")
    p.add_argument("--q", type=float, default=1.0, help="Cost exponent for circle-mixture and grid-walk. Defaults to 1.")
    p.add_argument("--out-dir", type=str, required=True, help="Directory receiving space.json and P<i>.json.")
    _common(p)

    p = sub.add_parser("sketch", help="Compare two distributions through EMD sketches.")
    p.add_argument("--space", type=str, default=None, help="Space JSON. Defaults to the space named by the first distribution file.")
    pair = p.add_mutually_exclusive_group(required=True)
    pair.add_argument("--dists", type=str, nargs=2, help="The two distribution JSON files.")
    pair.add_argument("--instance", type=str, help="Sketch instance JSON naming the space and the two distribution files.")
    p.add_argument("--k", type=int, default=256, help="Sketch length. Defaults to 256.")
    _hasher_flags(p)
    _common(p)

    p = sub.add_parser("robust-demo", help="Optimal versus hash-based plans under a small perturbation.")
    p.add_argument("--eps", type=float, default=0.1, help="Perturbation size. Defaults to 0.1.")
    _hasher_flags(p)
    _common(p, trials=10_000)

    p = sub.add_parser("online", help="Greedy versus preemptive online transport.")
    p.add_argument("--instance", type=str, default=None, help="Task sequence JSON. Defaults to the antipodal circle sequence.")
    p.add_argument("--space", type=str, default=None, help="Space JSON overriding the one named by --instance.")
    p.add_argument("--l", type=int, default=8, help="Half the number of circle points. Defaults to 8.")
    p.add_argument("--T", type=int, default=32, help="Number of steps. Defaults to 32.")
    p.add_argument("--metric", type=str, default="chord", choices=["chord", "arc"], help="Circle cost. Defaults to chord.")
    _hasher_flags(p)
    _common(p, trials=10_000)

    p = sub.add_parser("round-labels", help="Round a fractional metric labeling with a shared hash seed.")
    p.add_argument("--instance", type=str, required=True, help="Labeling instance JSON.")
    p.add_argument("--space", type=str, default=None, help="Space JSON overriding the one named by --instance.")
    _hasher_flags(p)
    _common(p, trials=1_000)

    p = sub.add_parser("ultrametric", help="Minimax-path ultrametric of a space.")
    p.add_argument("--space", type=str, required=True, help="Space JSON.")
    p.add_argument("--space-out", type=str, default=None, help="Also write the ultrametric as a space JSON here.")
    _common(p)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
        logger.error(f"Unknown subcommand {argv[0]!r}; expected one of {sorted(COMMANDS)}")
        return EXIT_USAGE

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        settings = get_settings(seed=args.seed, threads=args.threads)
        seed = settings.seed if settings.seed is not None else 0
        output = COMMANDS[args.subcommand](args, seed, settings.threads)
        fmt = _infer_format(args.out, args.format)
        write_output(output, _metadata(args, seed, output.summary), args.out, fmt)
        return EXIT_OK
    except PairwiseOTError as e:
        logger.error(f"Input Error: {e}")
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Unreadable input: {e}")
        return EXIT_NO_INPUT


if __name__ == "__main__":
    sys.exit(main())
