"""Random walk with uniform memory of its whole history and the option to rest.

At every step a past step is recalled uniformly; a recalled move is
followed (p), opposed (q) or replaced by a rest (r), and a recalled rest is
repeated.  The package evaluates the exact first two moments, the exact
small-t distribution, Monte Carlo ensembles and the asymptotic regime of
the variance.
"""
__version__ = "0.1.0"

from .errors import ParameterError, RegimeError, ResourceLimitError
from .model import (
    Parameters,
    Step,
    StepDistribution,
    WalkState,
    apply_step,
    first_step_distribution,
    step_distribution,
    step_distribution_reference,
)
from .moments import (
    MomentSeries,
    cumulative_sigma_sq,
    diffusion_coefficient,
    expected_sigma_sq,
    mean_displacement,
    mean_displacement_recursion,
    mean_square_displacement,
    second_moment_recursion,
    variance_series,
)
from .special import gamma_ratio
from .oracle import ExactDistribution, evolve_exact, exact_moments, position_distribution
from .regimes import ExponentFit, RegimeReport, classify, fit_exponent, sweep_line
from .accumulator import MomentAccumulator, merge_accumulators
from .engine import EnsembleConfig, SimulationResult, run_ensemble, simulate_trajectory

__all__ = [
    "ParameterError", "RegimeError", "ResourceLimitError",
    "Parameters", "Step", "StepDistribution", "WalkState", "apply_step",
    "first_step_distribution", "step_distribution", "step_distribution_reference",
    "MomentSeries", "cumulative_sigma_sq", "diffusion_coefficient", "expected_sigma_sq",
    "mean_displacement", "mean_displacement_recursion", "mean_square_displacement",
    "second_moment_recursion", "variance_series", "gamma_ratio",
    "ExactDistribution", "evolve_exact", "exact_moments", "position_distribution",
    "ExponentFit", "RegimeReport", "classify", "fit_exponent", "sweep_line",
    "MomentAccumulator", "merge_accumulators",
    "EnsembleConfig", "SimulationResult", "run_ensemble", "simulate_trajectory",
]
