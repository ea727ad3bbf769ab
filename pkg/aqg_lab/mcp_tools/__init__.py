from .simulation_tools import (
    classify_region,
    run_experiment,
    run_sweep,
)

from .lemma_tools import verify_lemmas

__all__ = [
    "classify_region",
    "run_experiment",
    "run_sweep",
    "verify_lemmas",
]
