"""Core functionality for bisym."""

# Expose main classes and functions
# Configuration
from bisym.core.config import Configuration, get_config

# Construction
from bisym.core.constructors import (
    ConstructionResult,
    build_corollary4,
    build_l1,
    build_l2,
    build_l3,
    build_l4,
    build_theorem2,
    construct,
    intersection_problem,
)

# Sampling
from bisym.core.sampler import SampleRecord, SampleSummary, TraceMode, draw_spectrum, run_sample

# Circle-hyperbola solver
from bisym.core.solver import IntersectionProblem, IntersectionSolution, oracle_solve, solve

# Spectra and feasibility
from bisym.core.spectrum import (
    CaseTag,
    Condition,
    FeasibilityReport,
    Spectrum,
    Verdict,
    classify,
    corollary4_condition,
    decide,
    lemma1_inequalities,
    make_spectrum,
    necessary_conditions,
    proposition1_conditions,
)

__all__ = [
    # Spectra
    "CaseTag",
    "Condition",
    "FeasibilityReport",
    "Spectrum",
    "Verdict",
    "classify",
    "corollary4_condition",
    "decide",
    "lemma1_inequalities",
    "make_spectrum",
    "necessary_conditions",
    "proposition1_conditions",
    # Solver
    "IntersectionProblem",
    "IntersectionSolution",
    "oracle_solve",
    "solve",
    # Construction
    "ConstructionResult",
    "build_corollary4",
    "build_l1",
    "build_l2",
    "build_l3",
    "build_l4",
    "build_theorem2",
    "construct",
    "intersection_problem",
    # Sampling
    "SampleRecord",
    "SampleSummary",
    "TraceMode",
    "draw_spectrum",
    "run_sample",
    # Configuration
    "Configuration",
    "get_config",
]
