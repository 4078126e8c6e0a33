from src.poisson.pfr import (
    RaceOutcome,
    dpc_closed_form,
    empirical_disagreement,
    pfr_select,
    pfr_select_batch,
    race,
    universal_coupling_batch,
    universal_coupling_sample,
)

__all__ = [
    "RaceOutcome",
    "dpc_closed_form",
    "empirical_disagreement",
    "pfr_select",
    "pfr_select_batch",
    "race",
    "universal_coupling_batch",
    "universal_coupling_sample",
]
