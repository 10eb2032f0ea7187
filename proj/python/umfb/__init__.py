"""Multivariate Faa di Bruno expansions, cumulants and Hermite polynomials."""

from ._core import (
    Formula,
    ResourceCapExceeded,
    SingularSigma,
    chain_rule,
    compound_poisson_moment,
    count_partitions,
    cumulant,
    cumulants,
    expand,
    generalized_bell,
    hermite,
    hermite_float,
    moment,
    moments,
    partitions,
    predicted_term_count,
)

__all__ = [
    "Formula",
    "ResourceCapExceeded",
    "SingularSigma",
    "chain_rule",
    "compound_poisson_moment",
    "count_partitions",
    "cumulant",
    "cumulants",
    "expand",
    "generalized_bell",
    "hermite",
    "hermite_float",
    "moment",
    "moments",
    "partitions",
    "predicted_term_count",
]
