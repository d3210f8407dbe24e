"""Bifractional Brownian motion covariance toolkit."""

from ._bifbm import (
    BifbmError,
    ConvergenceError,
    GridError,
    Kernel,
    NotPsdError,
    NumericError,
    ParameterError,
    TimeGrid,
    cholesky,
    classify_params,
    critical_k,
    empirical_covariance,
    f_counterexample,
    find_negative_a,
    gram,
    in_theorem_region,
    increment_limit_error,
    lamperti_cov,
    lamperti_stationarity,
    min_eigenvalue,
    oracle_report,
    p_variation,
    psd_check,
    quasihelix_report,
    sample,
    self_similarity_deviation,
)

__all__ = [
    "BifbmError",
    "ConvergenceError",
    "GridError",
    "Kernel",
    "NotPsdError",
    "NumericError",
    "ParameterError",
    "TimeGrid",
    "cholesky",
    "classify_params",
    "critical_k",
    "empirical_covariance",
    "f_counterexample",
    "find_negative_a",
    "gram",
    "in_theorem_region",
    "increment_limit_error",
    "lamperti_cov",
    "lamperti_stationarity",
    "min_eigenvalue",
    "oracle_report",
    "p_variation",
    "psd_check",
    "quasihelix_report",
    "sample",
    "self_similarity_deviation",
]
