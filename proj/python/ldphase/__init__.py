"""Upper-tail phase diagrams for subgraph counts in G(n, p)."""

from ._core import (  # noqa: F401
    DomainError,
    PreconditionError,
    SearchExhaustedError,
    boundary_curve,
    break_witness,
    classify_upper_tail,
    critical_beta2,
    d2_boundary_p,
    double_tangent,
    entropy,
    erg_classify,
    hom_density_graph,
    hyper_classify,
    logistic,
    logit,
    minorant_value,
    p0,
    rate,
    sample_erg,
    scalar_maximize,
)

__version__ = "0.1.0"
