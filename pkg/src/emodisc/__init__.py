"""NSGA-II with decision/objective-space discretization, DTLZ/WFG benchmark
problems, IGD/GD indicators, and a seeded experiment harness."""

from .core import Individual, Population, RandomSource, dominates, weakly_dominates
from .discretization import (
    DiscretizationConfig,
    ResolutionProfile,
    compute_resolution,
    discretize_decision,
    discretize_objectives,
    normalize_objectives,
)
from .harness import ExperimentConfig, load_config, render_table, run_experiment
from .metrics import ReferenceSet, build_reference_set, gd, igd
from .nsga2 import (
    AlgorithmConfig,
    GenerationTrace,
    RunRecord,
    crowding_distance,
    environmental_selection,
    fast_nondominated_sort,
    run,
)
from .problems import PROBLEM_NAMES, ProblemSpec, evaluate, make_problem, sample_pareto_set
from .stats import SampleSummary, SignificanceMark, mark, wilcoxon_rank_sum
from .variation import VariationConfig, binary_tournament, polynomial_mutation, sbx_crossover

__version__ = "0.1.0"

__all__ = [
    "AlgorithmConfig",
    "DiscretizationConfig",
    "ExperimentConfig",
    "GenerationTrace",
    "Individual",
    "PROBLEM_NAMES",
    "Population",
    "ProblemSpec",
    "RandomSource",
    "ReferenceSet",
    "ResolutionProfile",
    "RunRecord",
    "SampleSummary",
    "SignificanceMark",
    "VariationConfig",
    "binary_tournament",
    "build_reference_set",
    "compute_resolution",
    "crowding_distance",
    "discretize_decision",
    "discretize_objectives",
    "dominates",
    "environmental_selection",
    "evaluate",
    "fast_nondominated_sort",
    "gd",
    "igd",
    "load_config",
    "make_problem",
    "mark",
    "normalize_objectives",
    "polynomial_mutation",
    "render_table",
    "run",
    "run_experiment",
    "sample_pareto_set",
    "sbx_crossover",
    "weakly_dominates",
    "wilcoxon_rank_sum",
]
