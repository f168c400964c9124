"""Profile types and the two basic functionals.

The package works with two one-dimensional representations:

- ``RadialProfile``: a piecewise-linear radial function ``u(r)`` on ``[0, R]``,
  standing in for the radial function ``u(|x|)`` on a disk.
- ``HalfLineProfile``: a piecewise-linear function ``w(t)`` on ``[0, T]`` with a
  constant continuation ``w(t) = tail_value`` for ``t > T``.  These arise from
  radial profiles through the change of variables in :mod:`.transforms`.

On top of these the module provides the Dirichlet energies, the weighted
exponential functional

    F(u) = integral over the unit disk of (exp(gamma * u^2) - 1) * |x|^alpha dx,

its half-line counterpart ``integral of exp(beta * w(t)^2 - t) dt`` (including
the closed-form contribution of the constant tail), a small adaptive quadrature
helper shared across the package, and CSV readers/writers for both profile
kinds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Union

import numpy as np

TWO_PI = 2.0 * math.pi
FOUR_PI = 4.0 * math.pi

# exp() overflows IEEE doubles a bit above exp(709); stay on the safe side.
OVERFLOW_EXPONENT = 700.0


class InvalidProfileError(ValueError):
    """A profile (or profile file) violates its structural invariants."""


class PreconditionError(ValueError):
    """An operation was invoked outside its stated contract."""


@dataclass(frozen=True)
class WeightExponent:
    """The exponent ``alpha >= 0`` of the radial weight ``|x|^alpha``.

    Derived quantities:

    - ``epsilon = 2 / (alpha + 2)``, the exponent of the norm-preserving
      radial substitution ``r -> r^epsilon``;
    - ``star_radius = sqrt(epsilon)``, the radius of the disk carrying the
      same weighted measure as the unit disk carries Lebesgue-wise scaled,
      i.e. ``mu(B_1) = pi * epsilon``;
    - ``mu_total = 2 * pi / (alpha + 2)``, the weighted measure of the unit
      disk.
    """

    alpha: float

    def __post_init__(self) -> None:
        a = float(self.alpha)
        if not math.isfinite(a) or a < 0.0:
            raise PreconditionError(f"weight exponent must be finite and >= 0, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    @property
    def epsilon(self) -> float:
        return 2.0 / (self.alpha + 2.0)

    @property
    def star_radius(self) -> float:
        return math.sqrt(self.epsilon)

    @property
    def mu_total(self) -> float:
        return TWO_PI / (self.alpha + 2.0)


@dataclass(frozen=True)
class QuadratureSpec:
    """Controls for the shared 1-d quadrature.

    ``method`` is either ``"adaptive"`` (panel-wise Gauss-Legendre with global
    refinement until the total stops moving by more than ``abs_tol``) or
    ``"composite-simpson"`` (same refinement loop on Simpson panels).
    """

    method: str = "adaptive"
    abs_tol: float = 1e-10
    max_refinement: int = 12

    def __post_init__(self) -> None:
        if self.method not in ("adaptive", "composite-simpson"):
            raise PreconditionError(f"unknown quadrature method {self.method!r}")
        if not (self.abs_tol > 0.0):
            raise PreconditionError("abs_tol must be positive")
        if self.max_refinement < 1:
            raise PreconditionError("max_refinement must be at least 1")


DEFAULT_QUADRATURE = QuadratureSpec()

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(12)


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float, copy=True)
    out.setflags(write=False)
    return out


def _check_grid_values(grid: np.ndarray, values: np.ndarray, kind: str) -> None:
    if grid.ndim != 1 or values.ndim != 1:
        raise InvalidProfileError(f"{kind}: grid and values must be one-dimensional")
    if grid.size != values.size:
        raise InvalidProfileError(
            f"{kind}: grid ({grid.size}) and values ({values.size}) differ in length"
        )
    if grid.size < 2:
        raise InvalidProfileError(f"{kind}: need at least two nodes")
    if not np.all(np.isfinite(grid)) or not np.all(np.isfinite(values)):
        raise InvalidProfileError(f"{kind}: grid and values must be finite")
    if grid[0] != 0.0:
        raise InvalidProfileError(f"{kind}: grid must start at 0, got {grid[0]}")
    if np.any(np.diff(grid) <= 0.0):
        raise InvalidProfileError(f"{kind}: grid must be strictly increasing")


@dataclass(frozen=True)
class RadialProfile:
    """Piecewise-linear radial function on ``[0, grid[-1]]``.

    The grid starts at 0 and is strictly increasing.  Evaluation outside the
    domain clamps to the endpoint values (callers are expected to stay inside
    the domain; the clamp just avoids silent extrapolation).
    """

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        grid = _freeze(np.asarray(self.grid, dtype=float))
        values = _freeze(np.asarray(self.values, dtype=float))
        _check_grid_values(grid, values, "radial profile")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @property
    def radius(self) -> float:
        return float(self.grid[-1])

    def __call__(self, r):
        return np.interp(r, self.grid, self.values)


@dataclass(frozen=True)
class HalfLineProfile:
    """Piecewise-linear function on ``[0, grid[-1]]`` with a constant tail.

    ``w(t) = tail_value`` for ``t >= grid[-1]``.  ``tail_value`` defaults to
    the last grid value, which keeps the profile continuous; a discontinuous
    tail is rejected.
    """

    grid: np.ndarray
    values: np.ndarray
    tail_value: float | None = None

    def __post_init__(self) -> None:
        grid = _freeze(np.asarray(self.grid, dtype=float))
        values = _freeze(np.asarray(self.values, dtype=float))
        _check_grid_values(grid, values, "half-line profile")
        tail = self.tail_value
        if tail is None:
            tail = float(values[-1])
        else:
            tail = float(tail)
            if not math.isfinite(tail):
                raise InvalidProfileError("half-line profile: tail value must be finite")
            if not math.isclose(tail, float(values[-1]), rel_tol=0.0, abs_tol=1e-12):
                raise InvalidProfileError(
                    "half-line profile: tail value must match the last grid value"
                )
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "tail_value", tail)

    @property
    def t_max(self) -> float:
        return float(self.grid[-1])

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        inside = np.interp(t, self.grid, self.values)
        out = np.where(t >= self.grid[-1], self.tail_value, inside)
        return out if out.ndim else float(out)


Profile = Union[RadialProfile, HalfLineProfile]


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def _split_edges(edges: np.ndarray) -> np.ndarray:
    out = np.empty(2 * edges.size - 1)
    out[0::2] = edges
    out[1::2] = 0.5 * (edges[:-1] + edges[1:])
    return out


def _gauss_total(f: Callable[[np.ndarray], np.ndarray], edges: np.ndarray) -> float:
    a, b = edges[:-1], edges[1:]
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    pts = mid[:, None] + half[:, None] * _GL_NODES
    return float(np.sum(f(pts) * half[:, None] * _GL_WEIGHTS))


def _simpson_total(f: Callable[[np.ndarray], np.ndarray], edges: np.ndarray) -> float:
    a, b = edges[:-1], edges[1:]
    mid = 0.5 * (a + b)
    h = b - a
    return float(np.sum((f(a) + 4.0 * f(mid) + f(b)) * h) / 6.0)


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    breakpoints,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Integrate a vectorized ``f`` over ``[breakpoints[0], breakpoints[-1]]``.

    Interior breakpoints become panel edges, so kinks of piecewise-smooth
    integrands should be listed there.  Panels are refined globally (each one
    split in half) until the total changes by at most ``spec.abs_tol`` or the
    refinement budget runs out.
    """

    edges = np.unique(np.asarray(breakpoints, dtype=float))
    if edges.size < 2:
        return 0.0
    rule = _simpson_total if spec.method == "composite-simpson" else _gauss_total
    total = rule(f, edges)
    for _ in range(spec.max_refinement):
        edges = _split_edges(edges)
        refined = rule(f, edges)
        if abs(refined - total) <= spec.abs_tol:
            return refined
        total = refined
    return total


# ---------------------------------------------------------------------------
# energies and functionals
# ---------------------------------------------------------------------------

def dirichlet_norm_radial(u: RadialProfile) -> float:
    """Squared Dirichlet norm ``2 pi * integral of u'(r)^2 r dr`` (exact)."""

    dr = np.diff(u.grid)
    slope2 = (np.diff(u.values) / dr) ** 2
    rmid = 0.5 * (u.grid[:-1] + u.grid[1:])
    return float(TWO_PI * np.sum(slope2 * rmid * dr))


def dirichlet_norm_halfline(w: HalfLineProfile) -> float:
    """Squared norm ``integral of w'(t)^2 dt``; the constant tail adds nothing."""

    dt = np.diff(w.grid)
    return float(np.sum(np.diff(w.values) ** 2 / dt))


def weighted_exp_functional(
    u: RadialProfile,
    weight: WeightExponent,
    gamma: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Evaluate ``integral over the disk of (exp(gamma u^2) - 1) |x|^alpha dx``.

    The profile is taken as the radial function of ``u`` on the disk of radius
    ``u.radius``.  Returns ``inf`` when the pointwise exponent overflows double
    precision (the integral is astronomically large, not infinite, but it is
    not representable).
    """

    if not (gamma > 0.0) or not math.isfinite(gamma):
        raise PreconditionError(f"gamma must be positive and finite, got {gamma!r}")
    peak = gamma * float(np.max(np.abs(u.values))) ** 2
    if peak > OVERFLOW_EXPONENT:
        return math.inf
    alpha = weight.alpha

    def integrand(r):
        val = np.interp(r, u.grid, u.values)
        return np.expm1(gamma * val * val) * r ** (alpha + 1.0)

    return TWO_PI * integrate(integrand, u.grid, quad)


def halfline_exp_integral(
    w: HalfLineProfile,
    beta: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Evaluate ``integral over [0, inf) of exp(beta w(t)^2 - t) dt``.

    The piecewise-linear part is integrated numerically; the constant tail
    contributes ``exp(beta tail^2 - T)`` in closed form.  Returns ``inf`` on
    exponent overflow.
    """

    if beta < 0.0 or not math.isfinite(beta):
        raise PreconditionError(f"beta must be finite and >= 0, got {beta!r}")
    exponents = beta * w.values**2 - w.grid
    tail_exponent = beta * w.tail_value**2 - w.grid[-1]
    if max(float(np.max(exponents)), tail_exponent) > OVERFLOW_EXPONENT:
        return math.inf

    def integrand(t):
        val = np.interp(t, w.grid, w.values)
        return np.exp(beta * val * val - t)

    return integrate(integrand, w.grid, quad) + math.exp(tail_exponent)


def halfline_functional(
    w: HalfLineProfile,
    weight: WeightExponent,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Half-line form of the critical functional: ``beta = epsilon(alpha)``."""

    return halfline_exp_integral(w, weight.epsilon, quad)


@dataclass(frozen=True)
class FunctionalReport:
    """Dirichlet energy and weighted exponential integral of one profile."""

    alpha: WeightExponent
    gamma: float
    dirichlet: float
    exp_integral: float

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha.alpha,
            "gamma": self.gamma,
            "dirichlet_norm_squared": self.dirichlet,
            "functional_value": self.exp_integral,
        }


def evaluate_profile(
    u: RadialProfile,
    weight: WeightExponent,
    gamma: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> FunctionalReport:
    return FunctionalReport(
        alpha=weight,
        gamma=gamma,
        dirichlet=dirichlet_norm_radial(u),
        exp_integral=weighted_exp_functional(u, weight, gamma, quad),
    )


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

_HEADERS = {"r,u": "radial", "t,w": "halfline"}


def read_profile(path) -> Profile:
    """Read a profile CSV: header ``r,u`` (radial) or ``t,w`` (half-line)."""

    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InvalidProfileError(f"{path}: empty profile file")
    header = lines[0].replace(" ", "")
    kind = _HEADERS.get(header)
    if kind is None:
        raise InvalidProfileError(
            f"{path}: unknown header {lines[0]!r} (expected 'r,u' or 't,w')"
        )
    grid = []
    values = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 2:
            raise InvalidProfileError(f"{path}: malformed row {ln!r}")
        try:
            grid.append(float(parts[0]))
            values.append(float(parts[1]))
        except ValueError as exc:
            raise InvalidProfileError(f"{path}: non-numeric row {ln!r}") from exc
    if kind == "radial":
        return RadialProfile(np.asarray(grid), np.asarray(values))
    return HalfLineProfile(np.asarray(grid), np.asarray(values))


def write_profile(path, profile: Profile) -> None:
    header = "t,w" if isinstance(profile, HalfLineProfile) else "r,u"
    rows = [header]
    rows.extend(f"{x:.17g},{y:.17g}" for x, y in zip(profile.grid, profile.values))
    Path(path).write_text("\n".join(rows) + "\n")
