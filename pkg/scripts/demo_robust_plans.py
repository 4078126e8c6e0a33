import os
import argparse
from dotenv import load_dotenv

import polars as pl

from src.logger_config import setup_logger
from src.apps import robust_report
from src.hashing import Hasher
from src.polars_schemas import get_robust_schema
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


def main():
    parser = argparse.ArgumentParser(
        description="Compare how far optimal and hash-based transport plans move under shrinking perturbations of the target."
    )
    parser.add_argument(
        "--eps",
        type=str,
        default="0.4,0.2,0.1,0.05,0.025",
        help="Comma-separated perturbation sizes (e.g., 0.2,0.1,0.05).",
    )
    parser.add_argument("--algo", type=str, default="metric", help="Hasher producing the robust plans. Defaults to metric.")
    parser.add_argument("--trials", type=int, default=20000, help="Child seeds per plan (at least 1000). Defaults to 20000.")
    parser.add_argument("--seed", type=int, default=0, help="Master seed. Defaults to 0.")
    parser.add_argument("--threads", type=int, default=1, help="Worker threads. Results do not depend on it.")
    parser.add_argument(
        "--out",
        type=str,
        default=os.path.join("results", "robust_plans.csv"),
        help="CSV file receiving one row per perturbation size.",
    )
    args = parser.parse_args()

    try:
        hasher = Hasher(args.algo)
        rows = []
        for eps in [float(v) for v in parse_csv_list(args.eps) or []]:
            report = robust_report(eps, hasher, args.trials, args.seed, args.threads)
            rows.append({
                "eps": report.eps,
                "perturbation": report.perturbation,
                "optimal_plan_distance": report.optimal_plan_distance,
                "robust_plan_distance": report.robust_plan_distance,
                "coupled_cost": report.coupled_cost,
                "coupled_cost_stderr": report.coupled_cost_stderr,
                "trials": report.trials,
            })

        frame = pl.DataFrame(
            [{k: round_significant(v) if isinstance(v, float) else v for k, v in row.items()} for row in rows],
            schema=get_robust_schema(),
        )
        os.makedirs(os.path.dirname(os.path.abspath(args.out)), exist_ok=True)
        frame.write_csv(args.out)
        logger.info(f"Wrote {frame.height} rows to {args.out}")

    except ValueError as e:
        logger.error(f"Configuration Error: {e}")
    except Exception as e:
        logger.error(f"An unexpected error occurred during the robust plan demo: {e}")


if __name__ == "__main__":
    main()
