"""Pareto set identification under polyhedral cone orders with noisy bandit feedback."""

from .bandit import (
    DEFAULT_C,
    ExperimentConfig,
    NoiseModel,
    RunResult,
    empirical_gaps,
    naive_elimination,
    sample_budget,
    theorem_budget,
)
from .cone import (
    ConeConstants,
    PolyhedralCone,
    alpha_coefficients,
    beta_closed_form,
    beta_empirical,
    contains,
    distance_to_cone,
    distance_to_interior_complement,
    dual_cone_generators,
    make_orthant,
    make_planar_cone,
    make_theta_cone,
    project_onto_polyhedron,
    strictly_contains,
)
from .datasets import DatasetSpec, load_dataset, load_fixture
from .estimator import NaiveElimination
from .evaluation import (
    GroundTruth,
    SuccessReport,
    aggregate,
    check_covering,
    check_gap_bound,
    evaluate_run,
    gap_statistics,
)
from .gaps import Dominance, GapTable, build_gap_table, classify, gap_M, gap_m, theta_constant
from .pareto import DesignSet, dominates, pareto_set

__version__ = "0.1.0"
