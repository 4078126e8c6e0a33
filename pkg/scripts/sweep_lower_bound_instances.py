import os
import argparse
from dotenv import load_dotenv
from typing import List

import polars as pl

from src.logger_config import setup_logger
from src.hashing import Hasher
from src.polars_schemas import get_sweep_schema
from src.ratio import bound_calculator, circle_mixture_points, estimate_ratio, grid_walk_instance
from src.utils import parse_csv_list, round_significant

# Load environment variables from .env file
load_dotenv()

# Configure logging using the centralized setup
script_name = os.path.splitext(os.path.basename(__file__))[0]
log_file_path = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
    "logs",
    f"{script_name}.log",
)
logger = setup_logger(__name__, log_to_console=True, log_file_path=log_file_path)

CIRCLE_HASHERS = ("circle", "metric", "poisson")
GRID_HASHERS = ("torus", "metric")


def sweep_circle(ks: List[int], q: float, trials: int, seed: int, threads: int) -> List[dict]:
    """
    Mixture instances on 2k circle points. The instance bound is a lower
    bound for every coupling, so each hasher's estimate should sit above it.
    """
    rows = []
    for k in ks:
        space, collection, lower = circle_mixture_points(k, q)
        for name in CIRCLE_HASHERS:
            upper = bound_calculator("circle", q=q) if name == "circle" else bound_calculator("finite-metric", size=space.size)
            estimate = estimate_ratio(Hasher(name), collection, trials, seed, threads)
            logger.info(f"circle-mixture k={k} q={q} {name}: r_hat={estimate.ratio:.4f} (lower {lower:.4f})")
            rows.append({
                "instance": "circle-mixture",
                "param": k,
                "hasher": name,
                "ratio": estimate.ratio,
                "ratio_stderr": estimate.ratio_stderr,
                "lower_bound": lower,
                "upper_bound": upper,
                "trials": trials,
            })
    return rows


def sweep_grid(sides: List[int], n: int, trials: int, seed: int, threads: int) -> List[dict]:
    rows = []
    for s in sides:
        space, collection, lower = grid_walk_instance(n, s, 2.0, 1.0)
        upper = bound_calculator("torus-grid", n=n, p=2.0, q=1.0, s=s)
        for name in GRID_HASHERS:
            estimate = estimate_ratio(Hasher(name), collection, trials, seed, threads)
            logger.info(f"grid-walk n={n} s={s} {name}: r_hat={estimate.ratio:.4f} (lower {lower:.4f})")
            rows.append({
                "instance": "grid-walk",
                "param": s,
                "hasher": name,
                "ratio": estimate.ratio,
                "ratio_stderr": estimate.ratio_stderr,
                "lower_bound": lower,
                "upper_bound": upper,
                "trials": trials,
            })
    return rows


def main():
    parser = argparse.ArgumentParser(
        description="Estimate coupling ratios of several hashers on circle-mixture and grid-walk lower-bound instances and write them next to the closed-form bounds."
    )
    parser.add_argument(
        "--circle-k",
        type=str,
        default="3,4,6,8",
        help="Comma-separated half point counts k for circle-mixture instances (e.g., 3,4,6,8).",
    )
    parser.add_argument(
        "--q",
        type=float,
        default=1.5,
        help="Cost exponent for circle-mixture instances. Defaults to 1.5, where the lower bound grows with k.",
    )
    parser.add_argument(
        "--grid-s",
        type=str,
        default="3,4",
        help="Comma-separated grid side lengths for grid-walk instances (e.g., 3,4). Torus hashing needs s >= 3.",
    )
    parser.add_argument("--grid-n", type=int, default=2, help="Grid dimension for grid-walk instances. Defaults to 2.")
    parser.add_argument("--trials", type=int, default=2000, help="Child seeds per estimate. Defaults to 2000.")
    parser.add_argument("--seed", type=int, default=0, help="Master seed. Defaults to 0.")
    parser.add_argument("--threads", type=int, default=1, help="Worker threads. Results do not depend on it.")
    parser.add_argument(
        "--out",
        type=str,
        default=os.path.join("results", "lower_bound_sweep.csv"),
        help="CSV file receiving one row per (instance, parameter, hasher).",
    )
    args = parser.parse_args()

    try:
        ks = [int(k) for k in parse_csv_list(args.circle_k) or []]
        sides = [int(s) for s in parse_csv_list(args.grid_s) or []]

        rows = sweep_circle(ks, args.q, args.trials, args.seed, args.threads)
        rows += sweep_grid(sides, args.grid_n, args.trials, args.seed, args.threads)

        frame = pl.DataFrame(
            [{k: round_significant(v) if isinstance(v, float) else v for k, v in row.items()} for row in rows],
            schema=get_sweep_schema(),
        )
        os.makedirs(os.path.dirname(os.path.abspath(args.out)), exist_ok=True)
        frame.write_csv(args.out)
        logger.info(f"Wrote {frame.height} rows to {args.out}")

    except ValueError as e:
        logger.error(f"Configuration Error: {e}")
    except Exception as e:
        logger.error(f"An unexpected error occurred during the sweep: {e}")


if __name__ == "__main__":
    main()
