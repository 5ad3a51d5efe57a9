"""Normal hierarchical model for random intervals: simulation, hitting
functions, and minimum contrast estimation."""

from ._imce import (
    CenterLengthLaws,
    ContrastConfig,
    FitDiagnostics,
    FitResult,
    HittingMode,
    Interval,
    IntervalSample,
    OptimizerConfig,
    RegionS,
    ThetaParams,
    center_length_laws,
    empirical_hitting,
    fit,
    hits,
    hitting_approx,
    hitting_auto,
    hitting_conditional,
    hitting_exact,
    model_mean,
    model_variance,
    moment_init,
    read_interval_csv,
    region_auto,
    sample_aumann_mean,
    sample_variance,
    simulate,
    write_interval_csv,
)

__all__ = [
    "CenterLengthLaws",
    "ContrastConfig",
    "FitDiagnostics",
    "FitResult",
    "HittingMode",
    "Interval",
    "IntervalSample",
    "OptimizerConfig",
    "RegionS",
    "ThetaParams",
    "center_length_laws",
    "empirical_hitting",
    "fit",
    "hits",
    "hitting_approx",
    "hitting_auto",
    "hitting_conditional",
    "hitting_exact",
    "model_mean",
    "model_variance",
    "moment_init",
    "read_interval_csv",
    "region_auto",
    "sample_aumann_mean",
    "sample_variance",
    "simulate",
    "write_interval_csv",
]
