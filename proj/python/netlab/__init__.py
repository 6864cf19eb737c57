"""Statistical network models, sampling mechanisms and estimators."""

from ._netlab import (
    ConditioningError,
    FitError,
    Multigraph,
    NetlabError,
    RangeError,
    SimpleGraph,
    ValidationError,
    cli,
    degree_profile,
    edge_density,
    edge_sample,
    estimate_reparam,
    fit_power_law,
    gen_er,
    generate,
    mle_thinned_er,
    predict_exact,
    predict_mc,
    relabel,
    restrict,
    run_suite,
    snowball_chain,
    thin,
    vertex_sample,
)

__all__ = [
    "ConditioningError",
    "FitError",
    "Multigraph",
    "NetlabError",
    "RangeError",
    "SimpleGraph",
    "ValidationError",
    "cli",
    "degree_profile",
    "edge_density",
    "edge_sample",
    "estimate_reparam",
    "fit_power_law",
    "gen_er",
    "generate",
    "mle_thinned_er",
    "predict_exact",
    "predict_mc",
    "relabel",
    "restrict",
    "run_suite",
    "snowball_chain",
    "thin",
    "vertex_sample",
]
