"""
Online transport of a population of agents through a sequence of task
distributions. Two schemes are simulated:

- greedy: each new step follows the optimal plan from the previous step,
- preemptive: every task distribution is hashed with one shared seed, so the
  agents' positions form a pairwise-near-optimal coupling of all tasks.

Revisit steps return every agent to its earlier position in both schemes.
"""

import math
import os
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

import numpy as np

from src.core.distributions import DiscreteDistribution, require_same_space
from src.core.io import load_space_json, read_json
from src.core.seeding import SeedContext, trial_keys, uniform_from_keys
from src.core.spaces import CostSpace, circle_space, explicit_metric_space
from src.exceptions import ParameterRangeError, TaskSequenceError
from src.hashing import Hasher
from src.logger_config import LOG_DIR, setup_logger
from src.oracle.emd import conditional_sample_batch, emd_exact
from src.utils import map_chunks

logger = setup_logger(
    __name__,
    log_file_path=os.path.join(LOG_DIR, "online_transport.log"),
)

SCHEMES = ("greedy", "preemptive")
METRICS = ("chord", "arc")
REFERENCE_RATIO = 26.0
CHUNK_KEYS = 4096
STOP = -1


@dataclass(frozen=True, eq=False)
class TaskSequence:
    """
    ``steps[t - 1]`` is (b_t, P_t) for t = 1..T. b_t = t announces a new task
    distribution, 0 <= b_t < t a return to the positions held at time b_t
    (P_t must equal P_{b_t}), and b_t = -1 stops the sequence (last step only).
    """

    space: CostSpace
    initial: DiscreteDistribution
    steps: List[Tuple[int, Optional[DiscreteDistribution]]] = field(default_factory=list)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        require_same_space(self.initial, space=self.space)
        history = [self.initial]
        for t, (b, P) in enumerate(self.steps, start=1):
            if b == STOP:
                if t != len(self.steps):
                    raise TaskSequenceError(f"b_{t}: stop marker -1 is only allowed on the last step")
                continue
            if P is None:
                raise TaskSequenceError(f"P_{t}: missing task distribution")
            require_same_space(P, space=self.space)
            if b == t:
                history.append(P)
                continue
            if not 0 <= b < t:
                raise TaskSequenceError(f"b_{t}: expected -1, {t} or an earlier index, got {b}")
            if not np.allclose(P.mass, history[b].mass, atol=1e-12):
                raise TaskSequenceError(f"P_{t}: revisit of step {b} must repeat P_{b}")
            history.append(P)

    @property
    def horizon(self) -> int:
        """Number of moves T before the stop marker."""
        return sum(1 for b, _ in self.steps if b != STOP)

    def distributions(self) -> List[DiscreteDistribution]:
        """P_0, ..., P_T."""
        return [self.initial] + [P for b, P in self.steps if b != STOP]


@dataclass(frozen=True)
class OnlineOutcome:
    scheme: str
    mean_cost: float
    stderr: float
    trials: int


@dataclass(frozen=True)
class OnlineReport:
    greedy: OnlineOutcome
    preemptive: OnlineOutcome
    sum_c_star: float
    ratio_hat: float
    reference_ratio: float = REFERENCE_RATIO
    greedy_closed_form: Optional[float] = None


def _circle_online_space(l: int, metric: str) -> CostSpace:
    positions = np.arange(2 * l) / (2 * l)
    if metric == "arc":
        return circle_space(positions, q=0.5)
    angles = 2.0 * math.pi * positions
    coords = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    dist = np.linalg.norm(coords[:, None, :] - coords[None, :, :], axis=-1)
    return explicit_metric_space(dist, q=0.5)


def circle_online_instance(l: int, T: int, metric: str = "chord") -> TaskSequence:
    """
    Antipodal pairs P_t = (delta_t + delta_{t+l}) / 2 on 2l equispaced circle
    points. Steps t <= l-2 rotate by one point; afterwards the sequence
    alternates between P_0 (t - l odd) and P_{l-2} (t - l even).

    Args:
        l: Half the number of points, at least 4.
        T: Number of steps, greater than l.
        metric: "chord" for sqrt of the planar chord length, "arc" for sqrt
            of the intrinsic arc distance on the unit-length circle.
    """
    if l < 4:
        raise ParameterRangeError("l", f"need l >= 4, got {l}")
    if T <= l:
        raise ParameterRangeError("T", f"need T > l, got T={T}, l={l}")
    if metric not in METRICS:
        raise ParameterRangeError("metric", f"expected one of {METRICS}, got {metric!r}")
    space = _circle_online_space(l, metric)

    def antipodal(t: int) -> DiscreteDistribution:
        return DiscreteDistribution.uniform(space, [t % (2 * l), (t + l) % (2 * l)])

    initial = antipodal(0)
    steps = []
    for t in range(1, T + 1):
        if t <= l - 2:
            steps.append((t, antipodal(t)))
        elif (t - l) % 2:
            steps.append((0, initial))
        else:
            steps.append((l - 2, antipodal(l - 2)))
    return TaskSequence(space=space, initial=initial, steps=steps)


def greedy_closed_form(l: int, T: int, metric: str = "chord") -> float:
    """Total greedy cost on ``circle_online_instance(l, T, metric)``."""
    if metric == "chord":
        near = math.sqrt(2.0 * math.sin(math.pi / (2 * l)))
        far = math.sqrt(2.0 * math.sin(math.pi * (l - 2) / (2 * l)))
    elif metric == "arc":
        near = math.sqrt(1.0 / (2 * l))
        far = math.sqrt((l - 2) / (2 * l))
    else:
        raise ParameterRangeError("metric", f"expected one of {METRICS}, got {metric!r}")
    return (l - 2) * near + (T - l + 2) * far


def sum_c_star(seq: TaskSequence) -> float:
    """sum_t C*(P_{t-1}, P_t)."""
    dists = seq.distributions()
    return float(sum(emd_exact(a, b).value for a, b in zip(dists[:-1], dists[1:])))


def _inverse_cdf(P: DiscreteDistribution, u: np.ndarray) -> np.ndarray:
    cdf = np.cumsum(P.mass)
    return np.minimum(np.searchsorted(cdf, u, side="left"), P.support[-1])


def _simulate_chunk(scheme: str, seq: TaskSequence, keys: np.ndarray, plans: dict, hasher: Hasher) -> np.ndarray:
    cost = seq.space.cost_matrix()
    if scheme == "greedy":
        current = _inverse_cdf(seq.initial, uniform_from_keys(keys, "z0"))
    else:
        current = hasher.sample_batch(seq.space, seq.initial, keys)
    history = [current]
    total = np.zeros(keys.shape[0])
    for t, (b, P) in enumerate(seq.steps, start=1):
        if b == STOP:
            break
        if b < t:
            nxt = history[b]
        elif scheme == "greedy":
            nxt = conditional_sample_batch(plans[t], current, keys, path=("step", t))
        else:
            nxt = hasher.sample_batch(seq.space, P, keys)
        total += cost[current, nxt]
        history.append(nxt)
        current = nxt
    return total


def online_simulate(
    scheme: str,
    seq: TaskSequence,
    trials: int,
    master_seed: Union[SeedContext, int],
    hasher: Optional[Hasher] = None,
    threads: int = 1,
) -> OnlineOutcome:
    """
    Monte Carlo mean of sum_t c(Z_{t-1}, Z_t) over child seeds
    derive(master, ("trial", i)).

    Args:
        scheme: "greedy" or "preemptive".
        seq: Task sequence.
        trials: Number of simulated populations.
        master_seed: Master seed.
        hasher: Coupling for the preemptive scheme (default: finite-metric hash).
        threads: Worker threads; results do not depend on it.
    """
    if scheme not in SCHEMES:
        raise ParameterRangeError("scheme", f"expected one of {SCHEMES}, got {scheme!r}")
    if trials < 1:
        raise ParameterRangeError("trials", f"must be >= 1, got {trials}")
    hasher = hasher or Hasher("metric")
    plans = {}
    if scheme == "greedy":
        previous = seq.initial
        for t, (b, P) in enumerate(seq.steps, start=1):
            if b == STOP:
                break
            if b == t:
                plans[t] = emd_exact(previous, P).plan
            previous = P

    keys = trial_keys(master_seed, trials)
    parts = map_chunks(lambda k: _simulate_chunk(scheme, seq, k, plans, hasher), keys, CHUNK_KEYS, threads)
    totals = np.concatenate(parts)
    stderr = float(totals.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    outcome = OnlineOutcome(scheme=scheme, mean_cost=float(totals.mean()), stderr=stderr, trials=trials)
    logger.info(f"{scheme}: mean total cost {outcome.mean_cost:.6g} +/- {outcome.stderr:.3g} ({trials} trials)")
    return outcome


def online_report(
    seq: TaskSequence,
    trials: int,
    master_seed: Union[SeedContext, int],
    hasher: Optional[Hasher] = None,
    threads: int = 1,
    closed_form: Optional[float] = None,
) -> OnlineReport:
    """
    Both schemes on one sequence, the offline reference sum_t C* and the
    measured preemptive ratio r_hat = preemptive mean / sum_t C*.
    """
    greedy = online_simulate("greedy", seq, trials, master_seed, hasher, threads)
    preemptive = online_simulate("preemptive", seq, trials, master_seed, hasher, threads)
    reference = sum_c_star(seq)
    ratio_hat = preemptive.mean_cost / reference if reference > 0 else (0.0 if preemptive.mean_cost == 0 else math.inf)
    return OnlineReport(
        greedy=greedy,
        preemptive=preemptive,
        sum_c_star=reference,
        ratio_hat=float(ratio_hat),
        greedy_closed_form=closed_form,
    )


def random_task_sequence(
    space: CostSpace,
    steps: int,
    rng: np.random.Generator,
    revisit_probability: float = 0.3,
    support: int = 3,
) -> TaskSequence:
    """Random sequence mixing new tasks and revisits, for checking the preemptive bound."""
    def fresh() -> DiscreteDistribution:
        points = rng.choice(space.size, size=min(support, space.size), replace=False)
        return DiscreteDistribution.from_weights(space, np.bincount(points, rng.random(points.size), space.size))

    initial = fresh()
    history = [initial]
    plan = []
    for t in range(1, steps + 1):
        if t > 1 and rng.random() < revisit_probability:
            b = int(rng.integers(0, t))
            plan.append((b, history[b]))
        else:
            plan.append((t, fresh()))
        history.append(plan[-1][1])
    return TaskSequence(space=space, initial=initial, steps=plan)


def load_task_sequence_json(path: str, space: Optional[CostSpace] = None) -> TaskSequence:
    """
    Reads {"space": path, "initial": [..], "steps": [[b, [..] or null], ..]}.
    A null mass on a revisit repeats P_b; the space path is relative to the file.
    """
    raw = read_json(path)
    for key in ("initial", "steps"):
        if key not in raw:
            raise TaskSequenceError(f"{key}: missing from task sequence {path}")
    if space is None:
        if "space" not in raw:
            raise TaskSequenceError(f"space: missing from task sequence {path}")
        space_path = raw["space"]
        if not os.path.isabs(space_path):
            space_path = os.path.join(os.path.dirname(os.path.abspath(path)), space_path)
        space = load_space_json(space_path)
    history = [DiscreteDistribution(space, raw["initial"])]
    steps: List[Tuple[int, Optional[DiscreteDistribution]]] = []
    for t, step in enumerate(raw["steps"], start=1):
        if len(step) != 2:
            raise TaskSequenceError(f"steps[{t - 1}]: expected [b, mass], got {step!r}")
        b, mass = int(step[0]), step[1]
        if b == STOP:
            steps.append((STOP, None))
            continue
        if mass is None:
            if not 0 <= b < t:
                raise TaskSequenceError(f"P_{t}: only a revisit may omit its mass")
            P = history[b]
        else:
            P = DiscreteDistribution(space, mass)
        steps.append((b, P))
        history.append(P)
    return TaskSequence(space=space, initial=history[0], steps=steps)
