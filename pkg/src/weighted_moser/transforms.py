"""Changes of variables between the disk and the half line.

Two maps are composed here:

1. The norm-preserving radial substitution ("star" transform)

       v(rho) = u(rho^epsilon) / sqrt(epsilon),    epsilon = 2 / (alpha + 2),

   which turns the weighted exponential functional with weight ``|x|^alpha``
   into an unweighted one:

       integral (exp(4 pi u^2) - 1) |x|^alpha dx
           = epsilon * integral (exp(4 pi v^2) - 1) dx.

2. Moser half-line coordinates ``rho = exp(-t/2)``, ``w = sqrt(4 pi) v``,
   under which the Dirichlet energy becomes ``integral of w'(t)^2 dt`` and

       2 pi * integral (exp(4 pi v^2) - 1) rho d rho
           = pi * (integral exp(w^2 - t) dt - 1).

Composing the two gives the identity checked by ``full_pipeline_identity``:

    integral (exp(4 pi u^2) - 1) |x|^alpha dx
        = pi * epsilon * (integral exp(w(t)^2 - t) dt - 1),

with ``w(t) = sqrt(4 pi / epsilon) * u(exp(-epsilon t / 2))``.

The transform functions return piecewise-linear profiles whose nodes are the
images of the input nodes (optionally subdivided via ``refine``); round trips
are exact at the nodes.  The identity checkers do not go through that
re-representation: they integrate the exactly composed function, so their
residual is pure quadrature error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .profiles import (
    DEFAULT_QUADRATURE,
    FOUR_PI,
    OVERFLOW_EXPONENT,
    TWO_PI,
    HalfLineProfile,
    PreconditionError,
    QuadratureSpec,
    RadialProfile,
    WeightExponent,
    integrate,
    weighted_exp_functional,
)

DEFAULT_T_MAX = 50.0


@dataclass(frozen=True)
class IdentityReport:
    """Left and right side of an identity plus their disagreement."""

    lhs: float
    rhs: float
    abs_diff: float
    rel_diff: float


def _report(lhs: float, rhs: float) -> IdentityReport:
    abs_diff = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    rel = 0.0 if scale == 0.0 else abs_diff / scale
    return IdentityReport(lhs=lhs, rhs=rhs, abs_diff=abs_diff, rel_diff=rel)


def _require_unit_disk(u: RadialProfile, what: str) -> None:
    if abs(u.radius - 1.0) > 1e-12:
        raise PreconditionError(f"{what} expects a profile on the unit interval, got radius {u.radius}")


def _refine_segments(grid: np.ndarray, refine: int) -> np.ndarray:
    """Insert ``refine - 1`` uniform interior points into every grid cell."""

    if refine <= 1:
        return grid
    frac = np.arange(refine) / refine
    fine = (grid[:-1, None] + np.diff(grid)[:, None] * frac).ravel()
    return np.append(fine, grid[-1])


def ssw_transform(u: RadialProfile, weight: WeightExponent, refine: int = 1) -> RadialProfile:
    """Radial substitution ``v(rho) = u(rho^epsilon) / sqrt(epsilon)``.

    The output grid is ``rho_i = r_i^(1/epsilon)``; with ``refine > 1`` each
    output cell is subdivided and the exactly composed function is sampled at
    the extra nodes, reducing the piecewise-linear representation error.
    """

    _require_unit_disk(u, "ssw_transform")
    eps = weight.epsilon
    rho = _refine_segments(u.grid ** (1.0 / eps), refine)
    vals = np.interp(rho**eps, u.grid, u.values) / math.sqrt(eps)
    return RadialProfile(rho, vals)


def ssw_inverse(v: RadialProfile, weight: WeightExponent, refine: int = 1) -> RadialProfile:
    """Inverse substitution ``u(r) = sqrt(epsilon) * v(r^(1/epsilon))``."""

    _require_unit_disk(v, "ssw_inverse")
    eps = weight.epsilon
    r = _refine_segments(v.grid**eps, refine)
    vals = math.sqrt(eps) * np.interp(r ** (1.0 / eps), v.grid, v.values)
    return RadialProfile(r, vals)


def ssw_functional_identity(
    u: RadialProfile,
    weight: WeightExponent,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> IdentityReport:
    """Check the substitution identity at the critical exponent ``4 pi``.

    lhs: weighted functional of ``u``.  rhs: ``epsilon`` times the unweighted
    functional of the exactly composed ``v``.  Since ``4 pi epsilon v(rho)^2 =
    4 pi u(rho^epsilon)^2`` the right side is evaluated without ever building
    a piecewise-linear ``v``.
    """

    _require_unit_disk(u, "ssw_functional_identity")
    eps = weight.epsilon
    lhs = weighted_exp_functional(u, weight, FOUR_PI, quad)
    peak = FOUR_PI * float(np.max(np.abs(u.values))) ** 2
    if peak > OVERFLOW_EXPONENT:
        return _report(lhs, math.inf)

    def integrand(rho):
        uval = np.interp(rho**eps, u.grid, u.values)
        return np.expm1(FOUR_PI * uval * uval) * rho

    rho_nodes = u.grid ** (1.0 / eps)
    rhs = eps * TWO_PI * integrate(integrand, rho_nodes, quad)
    return _report(lhs, rhs)


def moser_transform(
    v: RadialProfile,
    t_max: float | None = None,
    refine: int = 1,
) -> HalfLineProfile:
    """Half-line coordinates ``w(t) = sqrt(4 pi) v(exp(-t/2))`` on ``[0, t_max]``.

    Requires ``v`` on the unit interval with ``v(1) = 0`` (so that ``w(0) = 0``).
    Nodes of ``v`` with ``rho > exp(-t_max / 2)`` map to nodes of ``w``; the
    profile is closed with a node at ``t_max`` and a constant tail, which is
    exact when ``v`` is constant near the origin and an O(grid) truncation
    otherwise.
    """

    _require_unit_disk(v, "moser_transform")
    if v.values[-1] != 0.0:
        raise PreconditionError("moser_transform requires v(1) = 0")
    if t_max is None:
        t_max = DEFAULT_T_MAX
    if not (t_max > 0.0):
        raise PreconditionError("t_max must be positive")
    rho_cut = math.exp(-0.5 * t_max)
    inner = v.grid[v.grid > rho_cut]
    t_nodes = np.append(-2.0 * np.log(inner[::-1]), t_max)
    t_nodes[0] = 0.0  # rho = 1 maps to t = 0 exactly
    t_nodes = _refine_segments(t_nodes, refine)
    vals = math.sqrt(FOUR_PI) * np.interp(np.exp(-0.5 * t_nodes), v.grid, v.values)
    return HalfLineProfile(t_nodes, vals)


def moser_inverse(w: HalfLineProfile) -> RadialProfile:
    """Back to the disk: ``v(rho) = w(-2 log rho) / sqrt(4 pi)``.

    The constant tail of ``w`` becomes the constant value of ``v`` on
    ``[0, exp(-t_max / 2)]``, realized with one extra node at ``rho = 0``.
    """

    if w.values[0] != 0.0:
        raise PreconditionError("moser_inverse requires w(0) = 0")
    rho = np.exp(-0.5 * w.grid[::-1])
    rho[-1] = 1.0
    vals = w.values[::-1] / math.sqrt(FOUR_PI)
    rho = np.concatenate(([0.0], rho))
    vals = np.concatenate(([w.tail_value / math.sqrt(FOUR_PI)], vals))
    return RadialProfile(rho, vals)


def radial_to_halfline(u: RadialProfile, weight: WeightExponent, t: np.ndarray) -> np.ndarray:
    """Sample the exactly composed ``w(t) = sqrt(4 pi / eps) u(exp(-eps t / 2))``."""

    eps = weight.epsilon
    return math.sqrt(FOUR_PI / eps) * np.interp(
        np.exp(-0.5 * eps * np.asarray(t, dtype=float)), u.grid, u.values
    )


def full_pipeline_identity(
    u: RadialProfile,
    weight: WeightExponent,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> IdentityReport:
    """Check the composed identity for ``u`` on the unit disk with ``u(1) = 0``.

    lhs: weighted functional of ``u`` at gamma = 4 pi, integrated in ``r``.
    rhs: ``pi * epsilon * (integral exp(w^2 - t) dt - 1)`` with ``w`` the
    exactly composed half-line function.  The half line is truncated where the
    integrand is below ``exp(-50)`` relative to its peak; the remainder is
    added in closed form with ``u`` frozen at its value at the origin.
    """

    _require_unit_disk(u, "full_pipeline_identity")
    if u.values[-1] != 0.0:
        raise PreconditionError("full_pipeline_identity requires u(1) = 0")
    eps = weight.epsilon
    lhs = weighted_exp_functional(u, weight, FOUR_PI, quad)
    peak = FOUR_PI * float(np.max(np.abs(u.values))) ** 2
    if peak > OVERFLOW_EXPONENT:
        return _report(lhs, math.inf)

    t_cap = peak + 50.0
    positive = u.grid[u.grid > 0.0]
    t_nodes = -2.0 * np.log(positive[::-1]) / eps
    t_nodes = np.append(t_nodes[t_nodes < t_cap], t_cap)
    t_nodes[0] = 0.0

    def integrand(t):
        uval = np.interp(np.exp(-0.5 * eps * t), u.grid, u.values)
        return np.exp(FOUR_PI * uval * uval - t)

    core = integrate(integrand, t_nodes, quad)
    tail = math.exp(FOUR_PI * float(u.values[0]) ** 2 - t_cap)
    rhs = math.pi * eps * (core + tail - 1.0)
    return _report(lhs, rhs)
