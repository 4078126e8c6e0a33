from src.apps.sketch import Sketch, make_sketch, sketch_estimate, sketch_vector
from src.apps.robust import (
    RobustExample,
    RobustReport,
    plan_product_distance,
    robust_example,
    robust_plan,
    robust_report,
)
from src.apps.online import (
    OnlineOutcome,
    OnlineReport,
    TaskSequence,
    circle_online_instance,
    greedy_closed_form,
    load_task_sequence_json,
    online_report,
    online_simulate,
    random_task_sequence,
    sum_c_star,
)
from src.apps.labeling import (
    LabelingInstance,
    RoundedLabeling,
    fractional_cost,
    labeling_cost,
    load_labeling_json,
    mean_rounded_cost,
    round_labels,
)

__all__ = [
    "Sketch",
    "make_sketch",
    "sketch_estimate",
    "sketch_vector",
    "RobustExample",
    "RobustReport",
    "plan_product_distance",
    "robust_example",
    "robust_plan",
    "robust_report",
    "OnlineOutcome",
    "OnlineReport",
    "TaskSequence",
    "circle_online_instance",
    "greedy_closed_form",
    "load_task_sequence_json",
    "online_report",
    "online_simulate",
    "random_task_sequence",
    "sum_c_star",
    "LabelingInstance",
    "RoundedLabeling",
    "fractional_cost",
    "labeling_cost",
    "load_labeling_json",
    "mean_rounded_cost",
    "round_labels",
]
