"""Monte Carlo experiments, rate fits and reports for the approximation algorithms."""
from .experiments import (
    GapResult,
    evaluate_budget,
    mc_error,
    median_failure_rate,
    run_estimator_study,
    run_gap_experiment,
    run_rates,
)
from .fitting import RateFit, fit_bound_constant, fit_positive, fit_rate, proposition_bound, theorem_rates
from .report import Report, ReportRecord, emit_report, load_report
from .selftest import CheckResult, run_selftest

__all__ = [
    "GapResult",
    "evaluate_budget",
    "mc_error",
    "median_failure_rate",
    "run_estimator_study",
    "run_gap_experiment",
    "run_rates",
    "RateFit",
    "fit_bound_constant",
    "fit_positive",
    "fit_rate",
    "proposition_bound",
    "theorem_rates",
    "Report",
    "ReportRecord",
    "emit_report",
    "load_report",
    "CheckResult",
    "run_selftest",
]
