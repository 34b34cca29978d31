"""Exact probabilistic Stirling numbers and (bivariate, r-) Bell polynomials."""

from .bell import BellFamily, bell_bivariate, bell_univariate, gf_oracle, scaled_limit
from .identities import IdentityId, IdentityReport, rhs_classical, sweep, verify
from .moments import (
    DistributionSpec,
    MomentProvider,
    egf_truncation,
    joint_moment,
    make_provider,
    parse_distribution,
    sum_moment,
)
from .numeric import (
    BivarPoly,
    Rational,
    binomial,
    compositions,
    falling_factorial,
    homogenized_falling,
    multinomial,
    poly_eval,
)
from .stirling import prob_stirling2, stirling2

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every memo table (moments, Stirling numbers, Bell polynomials, weights)."""
    from . import bell, identities, moments, stirling

    for mod in (moments, stirling, bell, identities):
        mod.clear_caches()
