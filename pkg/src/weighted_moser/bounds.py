"""Closed-form bounds, the radial scaling identity, and the threshold estimate.

Collected here:

- the concentration upper bound ``2 pi e / (alpha + 2)``, the limit value of
  the functional along normalized concentrating sequences;
- the scaling identity ``S_rad(alpha, 4 pi) = eps * S(0, 4 pi eps)`` checked
  through two matched optimizer runs;
- the threshold estimate ``alpha_star``: the largest weight exponent at which
  the explicit candidate still beats the concentration bound, located by sign
  scan plus bisection of the margin ``candidate integral - (e + 1)``;
- the radial inequality of the substitution map (``remark2_check``): for
  nontrivial radial u and alpha > 0,

      2 pi * integral (exp(4 pi v^2) - 1) r dr
          > (1 / eps^2) * integral (exp(4 pi u^2) - 1) |x|^alpha dx,

  strict because ``t e^t > e^t - 1`` for t > 0.

The threshold is candidate-specific: it estimates from below the set of
exponents where the supremum is attained, and must not be read as sharp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .candidates import E, candidate_value
from .optimizer import OptimizerConfig, OptimizerResult, maximize_radial
from .profiles import (
    DEFAULT_QUADRATURE,
    FOUR_PI,
    OVERFLOW_EXPONENT,
    TWO_PI,
    PreconditionError,
    QuadratureSpec,
    RadialProfile,
    WeightExponent,
    integrate,
    weighted_exp_functional,
)

_BRACKET_HIGH = 100.0
_MAX_BISECTIONS = 80


def concentration_upper_bound(weight: WeightExponent) -> float:
    """The concentration level ``2 pi e / (alpha + 2)``."""

    return TWO_PI * E / (weight.alpha + 2.0)


@dataclass(frozen=True)
class RadialIdentityReport:
    """Two optimizer runs exhibiting the scaling identity.

    ``lhs`` solves the weighted problem at gamma = 4 pi, ``rhs`` the
    unweighted problem at gamma = 4 pi eps; ``scaled_rhs = eps * rhs.value``
    should match ``lhs.value`` up to discretization.
    """

    alpha: float
    lhs: OptimizerResult
    rhs: OptimizerResult
    scaled_rhs: float
    rel_gap: float

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "lhs_value": self.lhs.value,
            "rhs_value": self.rhs.value,
            "scaled_rhs": self.scaled_rhs,
            "rel_gap": self.rel_gap,
            "lhs_converged": self.lhs.converged,
            "rhs_converged": self.rhs.converged,
        }


def radial_identity_check(
    weight: WeightExponent,
    config: OptimizerConfig | None = None,
) -> RadialIdentityReport:
    """Check ``S_rad(alpha, 4 pi) = eps * S(0, 4 pi eps)`` numerically.

    Both runs share the config (and thus, since both problems reduce to the
    same half-line exponent ``beta = eps``, the same discretization), so the
    reported gap measures only the reduction itself.
    """

    eps = weight.epsilon
    lhs = maximize_radial(weight, FOUR_PI, config)
    rhs = maximize_radial(WeightExponent(0.0), FOUR_PI * eps, config)
    scaled = eps * rhs.value
    denom = max(abs(lhs.value), abs(scaled), 1e-300)
    return RadialIdentityReport(
        alpha=weight.alpha,
        lhs=lhs,
        rhs=rhs,
        scaled_rhs=scaled,
        rel_gap=abs(lhs.value - scaled) / denom,
    )


@dataclass(frozen=True)
class AlphaStarEstimate:
    """Constructive lower estimate of the attainment threshold.

    ``alpha_star`` is the largest exponent (to tolerance ``tol``) at which the
    candidate's half-line integral still exceeds ``e + 1``; ``capped`` is set
    when the margin stayed positive over the whole search bracket.
    """

    alpha_star: float
    margin_at_zero: float
    tol: float
    capped: bool

    def to_dict(self) -> dict:
        return {
            "alpha_star_estimate": self.alpha_star,
            "margin_at_zero": self.margin_at_zero,
            "tol": self.tol,
            "capped": self.capped,
        }


def candidate_margin(weight: WeightExponent, quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """``candidate integral - (e + 1)``; positive iff candidate beats the bound.

    The functional form of the comparison, ``pi eps (I - 1) > pi eps e``,
    divides out to exactly this scalar margin.
    """

    return candidate_value(weight, quad).value - (E + 1.0)


def alpha_star_estimate(
    tol: float = 1e-4,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> AlphaStarEstimate:
    """Locate the sign change of the candidate margin on [0, 100].

    A coarse geometric scan brackets the first sign change, bisection narrows
    it to ``tol``; the returned value is the bracket's positive-margin end.
    """

    if not (tol > 0.0):
        raise PreconditionError("tol must be positive")
    margin_zero = candidate_margin(WeightExponent(0.0), quad)
    lo, lo_margin = 0.0, margin_zero
    hi = None
    for a in np.geomspace(1e-4, _BRACKET_HIGH, 64):
        m = candidate_margin(WeightExponent(float(a)), quad)
        if m > 0.0:
            lo, lo_margin = float(a), m
        else:
            hi = float(a)
            break
    if hi is None:
        return AlphaStarEstimate(
            alpha_star=_BRACKET_HIGH, margin_at_zero=margin_zero, tol=tol, capped=True
        )
    for _ in range(_MAX_BISECTIONS):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if candidate_margin(WeightExponent(mid), quad) > 0.0:
            lo = mid
        else:
            hi = mid
    return AlphaStarEstimate(
        alpha_star=lo, margin_at_zero=margin_zero, tol=tol, capped=False
    )


@dataclass(frozen=True)
class Remark2Report:
    """Both sides of the radial substitution inequality and their margin."""

    lhs: float
    rhs: float
    margin: float
    degenerate: bool

    def to_dict(self) -> dict:
        return {
            "lhs_unweighted": self.lhs,
            "rhs_weighted_scaled": self.rhs,
            "margin": self.margin,
            "degenerate": self.degenerate,
        }


def remark2_check(
    u: RadialProfile,
    weight: WeightExponent,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> Remark2Report:
    """Evaluate ``2 pi int (e^{4 pi v^2}-1) r dr`` against ``(1/eps^2) F(u)``.

    ``v`` is the substituted profile, evaluated by exact composition
    (``4 pi v(rho)^2 = 4 pi u(rho^eps)^2 / eps``).  Requires ``alpha > 0``;
    the zero profile is reported as the degenerate equality case.
    """

    if weight.alpha <= 0.0:
        raise PreconditionError("remark2_check requires alpha > 0 (strict inequality regime)")
    if abs(u.radius - 1.0) > 1e-12:
        raise PreconditionError("remark2_check expects a profile on [0, 1]")
    eps = weight.epsilon
    if not np.any(u.values != 0.0):
        return Remark2Report(lhs=0.0, rhs=0.0, margin=0.0, degenerate=True)
    peak = FOUR_PI * float(np.max(np.abs(u.values))) ** 2 / eps
    if peak > OVERFLOW_EXPONENT:
        return Remark2Report(lhs=math.inf, rhs=math.inf, margin=math.nan, degenerate=False)

    def integrand(rho):
        uval = np.interp(rho**eps, u.grid, u.values)
        return np.expm1(FOUR_PI * uval * uval / eps) * rho

    rho_nodes = u.grid ** (1.0 / eps)
    lhs = TWO_PI * integrate(integrand, rho_nodes, quad)
    rhs = weighted_exp_functional(u, weight, FOUR_PI, quad) / (eps * eps)
    return Remark2Report(lhs=lhs, rhs=rhs, margin=lhs - rhs, degenerate=False)
