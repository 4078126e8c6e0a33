import os
import argparse
from dotenv import load_dotenv

import polars as pl

from src.logger_config import setup_logger
from src.apps import circle_online_instance, greedy_closed_form, online_report
from src.hashing import Hasher
from src.polars_schemas import get_online_schema
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
        description="Run greedy and preemptive online transport on antipodal circle sequences of growing size and write plot-ready CSV."
    )
    parser.add_argument(
        "--l",
        type=str,
        default="4,8,16,32",
        help="Comma-separated half point counts l (e.g., 4,8,16). Each run uses T = 4l steps.",
    )
    parser.add_argument(
        "--metric",
        type=str,
        default="chord",
        choices=["chord", "arc"],
        help="Circle cost: sqrt of the chord length (chord) or of the arc length (arc).",
    )
    parser.add_argument("--algo", type=str, default="metric", help="Hasher for the preemptive scheme. Defaults to metric.")
    parser.add_argument("--trials", type=int, default=5000, help="Simulated populations per scheme. Defaults to 5000.")
    parser.add_argument("--seed", type=int, default=0, help="Master seed. Defaults to 0.")
    parser.add_argument("--threads", type=int, default=1, help="Worker threads. Results do not depend on it.")
    parser.add_argument(
        "--out",
        type=str,
        default=os.path.join("results", "online_transport.csv"),
        help="CSV file receiving two rows (greedy, preemptive) per l.",
    )
    args = parser.parse_args()

    try:
        hasher = Hasher(args.algo)
        rows = []
        for l in [int(v) for v in parse_csv_list(args.l) or []]:
            T = 4 * l
            seq = circle_online_instance(l, T, args.metric)
            report = online_report(seq, args.trials, args.seed, hasher, args.threads, greedy_closed_form(l, T, args.metric))
            logger.info(
                f"l={l}: greedy {report.greedy.mean_cost:.4f}, preemptive {report.preemptive.mean_cost:.4f}, "
                f"offline {report.sum_c_star:.4f}, r_hat={report.ratio_hat:.3f} (reference {report.reference_ratio})"
            )
            for outcome, closed in ((report.greedy, report.greedy_closed_form), (report.preemptive, None)):
                rows.append({
                    "l": l,
                    "T": T,
                    "scheme": outcome.scheme,
                    "mean_cost": outcome.mean_cost,
                    "stderr": outcome.stderr,
                    "trials": outcome.trials,
                    "sum_c_star": report.sum_c_star,
                    "ratio_hat": report.ratio_hat,
                    "reference_ratio": report.reference_ratio,
                    "closed_form": closed,
                })

        schema = {"l": pl.Int64, "T": pl.Int64, **get_online_schema()}
        frame = pl.DataFrame(
            [{k: round_significant(v) if isinstance(v, float) else v for k, v in row.items()} for row in rows],
            schema=schema,
        )
        os.makedirs(os.path.dirname(os.path.abspath(args.out)), exist_ok=True)
        frame.write_csv(args.out)
        logger.info(f"Wrote {frame.height} rows to {args.out}")

    except ValueError as e:
        logger.error(f"Configuration Error: {e}")
    except Exception as e:
        logger.error(f"An unexpected error occurred during the online demo: {e}")


if __name__ == "__main__":
    main()
