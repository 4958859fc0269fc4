from .alphabets import alphabet_names, named_alphabet
from .cancellations import CancellationPattern, classify_cancellations
from .invariants import arithmetic_invariants
from .islands import (ISLANDS, find_ck33, island_graph, island_minimal_set,
                      island_pool, minimal_graph, mixed_pool)
from .presets import PRESETS, run_survey
from .report import SurveyReport, load_expected
from .trig import default_grid, special_angles, trig_sweep

__all__ = [
    "named_alphabet", "alphabet_names", "classify_cancellations",
    "CancellationPattern", "arithmetic_invariants", "ISLANDS", "island_pool",
    "island_minimal_set", "island_graph", "minimal_graph", "mixed_pool",
    "find_ck33", "run_survey", "PRESETS", "SurveyReport", "load_expected",
    "trig_sweep", "special_angles", "default_grid",
]
