"""Online maintenance of non-dominated (Pareto) point sets.

Three interchangeable archive backends (flat array baseline, bi-objective
ordered archive, BSP-tree archive for any number of objectives), a
brute-force oracle for differential testing, a synthetic workload generator,
runtime-analysis helpers and a benchmark CLI.
"""

from .analysis import (
    OrderDistribution,
    ScalingFit,
    binomial_order_probability,
    comparable_nodes_closed_form,
    expected_comparable_nodes,
    fit_exponent,
    q_table,
)
from .archive import Archive, ArchiveCounters, ProcessOutcome
from .array_archive import ArrayArchive
from .bench import BenchResult, make_archive, run_archive
from .biobjective import BiobjectiveArchive
from .bsp import BspArchive, BspConfig, choose_split
from .datagen import SequenceSpec, center_to_hyperplane, generate, hyperplane_nondominance_check
from .dominance import Dominance, compare, ensure_objective_vector, weakly_dominates
from .oracle import non_dominated_subset, sequential_outcomes

__version__ = "0.1.0"

__all__ = [
    "Archive",
    "ArchiveCounters",
    "ArrayArchive",
    "BenchResult",
    "BiobjectiveArchive",
    "BspArchive",
    "BspConfig",
    "Dominance",
    "OrderDistribution",
    "ProcessOutcome",
    "ScalingFit",
    "SequenceSpec",
    "binomial_order_probability",
    "center_to_hyperplane",
    "choose_split",
    "comparable_nodes_closed_form",
    "compare",
    "ensure_objective_vector",
    "expected_comparable_nodes",
    "fit_exponent",
    "generate",
    "hyperplane_nondominance_check",
    "make_archive",
    "non_dominated_subset",
    "q_table",
    "run_archive",
    "sequential_outcomes",
    "weakly_dominates",
    "__version__",
]
