"""Distribution functions and weighted spherical rearrangement on the disk.

For the measure ``d mu_alpha = |x|^alpha dx`` on the unit disk B, the
distribution function of a nonnegative sample u is

    phi(t) = mu_alpha({x in B : u(x) > t}),

and the mu_alpha-rearrangement is the radial non-increasing function

    u*(x) = inf{t > 0 : phi(t) <= pi |x|^2}

on the disk B* of radius ``star_radius = sqrt(2 / (alpha + 2))``, which has
Lebesgue area equal to ``mu_alpha(B) = 2 pi / (alpha + 2)``.  Rearrangement
preserves all integral moments (equimeasurability) and does not increase the
Dirichlet energy when ``log |x|^alpha`` is subharmonic where positive, which
holds for every alpha >= 0 in two dimensions.

Numerically a sample on an ``nr x ntheta`` polar grid is decomposed into a
large set of (value, mass) atoms: each grid cell is refined ``subdiv`` times
in both directions, the bilinear value range of every subcell is split into
``value_split`` bands, and each band becomes an atom carrying an equal share
of the subcell's exact mu-mass ``d theta * (r2^(a+2) - r1^(a+2)) / (a + 2)``.
Sorting atoms by value gives the distribution function; averaging the sorted
values over shells of a uniform radial grid (with an apex node at the sample
maximum) gives a stable piecewise-linear rearrangement whose moments and
energy converge as the shell count grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .profiles import (
    TWO_PI,
    InvalidProfileError,
    PreconditionError,
    RadialProfile,
    WeightExponent,
)

DEFAULT_SUBDIV = 8
DEFAULT_VALUE_SPLIT = 4
DEFAULT_SHELLS = 2048
_LEVEL_CAP = 4096


@dataclass(frozen=True)
class PolarSample:
    """Nonnegative values on a polar grid of the unit disk.

    ``values[i, j] = u(radii[i], theta_j)`` with ``theta_j = 2 pi j / ntheta``
    (uniform, periodic).  The outermost ring must vanish: samples stand in for
    compactly supported functions.
    """

    radii: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        radii = np.array(self.radii, dtype=float, copy=True)
        values = np.array(self.values, dtype=float, copy=True)
        if radii.ndim != 1 or radii.size < 2:
            raise InvalidProfileError("polar sample: need a 1-d radial grid with >= 2 nodes")
        if np.any(np.diff(radii) <= 0.0) or radii[0] != 0.0 or abs(radii[-1] - 1.0) > 1e-12:
            raise InvalidProfileError("polar sample: radii must increase strictly from 0 to 1")
        if values.ndim != 2 or values.shape[0] != radii.size or values.shape[1] < 4:
            raise InvalidProfileError(
                "polar sample: values must be (n_radii, ntheta) with ntheta >= 4"
            )
        if not np.all(np.isfinite(values)) or np.any(values < 0.0):
            raise InvalidProfileError("polar sample: values must be finite and nonnegative")
        if np.any(values[-1, :] != 0.0):
            raise InvalidProfileError("polar sample: outermost ring must be zero")
        radii.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "values", values)

    @property
    def ntheta(self) -> int:
        return int(self.values.shape[1])

    @property
    def angles(self) -> np.ndarray:
        return np.linspace(0.0, TWO_PI, self.ntheta, endpoint=False)

    @classmethod
    def from_function(cls, f: Callable, nr: int = 128, ntheta: int = 64) -> "PolarSample":
        """Sample ``f(x, y)`` on an ``nr x ntheta`` grid, zeroing the last ring."""

        radii = np.linspace(0.0, 1.0, nr)
        theta = np.linspace(0.0, TWO_PI, ntheta, endpoint=False)
        rr, tt = np.meshgrid(radii, theta, indexing="ij")
        vals = np.asarray(f(rr * np.cos(tt), rr * np.sin(tt)), dtype=float)
        vals = np.maximum(vals, 0.0)
        vals[-1, :] = 0.0
        return cls(radii, vals)


@dataclass(frozen=True)
class DistributionFunction:
    """Tabulated ``phi(t)`` on a level grid, decreasing in the stored order.

    ``thresholds`` is a decreasing list of levels, ``masses`` the matching
    ``phi`` values (non-decreasing in the stored order).  Evaluation between
    tabulated levels uses the right-continuous step convention.
    """

    thresholds: np.ndarray
    masses: np.ndarray
    measure_tag: str

    def __post_init__(self) -> None:
        thr = np.array(self.thresholds, dtype=float, copy=True)
        mas = np.array(self.masses, dtype=float, copy=True)
        if thr.shape != mas.shape or thr.ndim != 1 or thr.size < 1:
            raise InvalidProfileError("distribution function: mismatched tables")
        if np.any(np.diff(thr) > 0.0) or np.any(np.diff(mas) < 0.0):
            raise InvalidProfileError("distribution function: monotonicity violated")
        thr.setflags(write=False)
        mas.setflags(write=False)
        object.__setattr__(self, "thresholds", thr)
        object.__setattr__(self, "masses", mas)

    @property
    def total_mass(self) -> float:
        return float(self.masses[-1]) if self.masses.size else 0.0

    def mass_above(self, t) -> np.ndarray:
        """phi(t) for scalar or array t, right-continuous step interpolation."""

        t = np.asarray(t, dtype=float)
        asc = self.thresholds[::-1]  # ascending levels
        masses_asc = self.masses[::-1]
        idx = np.searchsorted(asc, t, side="right") - 1
        out = np.where(
            t >= asc[-1],
            0.0,
            masses_asc[np.clip(idx, 0, asc.size - 1)],
        )
        out = np.where(t < asc[0], masses_asc[0], out)
        return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# atom decomposition
# ---------------------------------------------------------------------------

def _sample_atoms(
    sample: PolarSample,
    weight: WeightExponent,
    subdiv: int,
    value_split: int,
):
    """Decompose the sample into (value, mass) atoms. Returns sorted-desc arrays."""

    alpha = weight.alpha
    radii = sample.radii
    values = sample.values
    ntheta = sample.ntheta

    # radial subdivision: subdiv subcells inside every [r_i, r_{i+1}]
    frac = np.arange(subdiv + 1) / subdiv
    r_fine = (radii[:-1, None] + np.diff(radii)[:, None] * frac).reshape(-1, subdiv + 1)
    # bilinear interpolation weights along r for subcell edges
    lam = frac  # position of each fine edge inside the coarse cell

    vals_pad = np.concatenate([values, values[:, :1]], axis=1)  # periodic in theta
    v_lo = vals_pad[:-1, :]  # (nr-1, ntheta+1)
    v_hi = vals_pad[1:, :]

    dth = TWO_PI / (ntheta * subdiv)
    mu_coef = dth / (alpha + 2.0)

    atom_vals = []
    atom_mass = []
    tfrac = np.arange(subdiv + 1) / subdiv  # angular subdivision inside one sector
    for k in range(subdiv):  # radial subcell index within each coarse cell
        a, b = lam[k], lam[k + 1]
        # corner values of the radial subcell at coarse angular nodes
        va = v_lo * (1.0 - a) + v_hi * a  # (nr-1, ntheta+1)
        vb = v_lo * (1.0 - b) + v_hi * b
        r1 = r_fine[:, k]
        r2 = r_fine[:, k + 1]
        cell_mass = mu_coef * (r2 ** (alpha + 2.0) - r1 ** (alpha + 2.0))  # per angular strip
        for j in range(subdiv):  # angular subcell within each coarse sector
            ta, tb = tfrac[j], tfrac[j + 1]
            c00 = va[:, :-1] * (1.0 - ta) + va[:, 1:] * ta
            c01 = va[:, :-1] * (1.0 - tb) + va[:, 1:] * tb
            c10 = vb[:, :-1] * (1.0 - ta) + vb[:, 1:] * ta
            c11 = vb[:, :-1] * (1.0 - tb) + vb[:, 1:] * tb
            vmin = np.minimum(np.minimum(c00, c01), np.minimum(c10, c11))
            vmax = np.maximum(np.maximum(c00, c01), np.maximum(c10, c11))
            mass = np.broadcast_to(cell_mass[:, None], vmin.shape)
            # split the value range of each subcell into equal-mass bands
            for q in range(value_split):
                lev = (q + 0.5) / value_split
                atom_vals.append((vmin + (vmax - vmin) * lev).ravel())
                atom_mass.append(mass.ravel() / value_split)

    vals = np.concatenate(atom_vals)
    mass = np.concatenate(atom_mass)
    keep = vals > 0.0
    vals, mass = vals[keep], mass[keep]
    order = np.argsort(vals)[::-1]
    return vals[order], mass[order]


def distribution_function(
    sample: PolarSample,
    weight: WeightExponent,
    subdiv: int = DEFAULT_SUBDIV,
    value_split: int = DEFAULT_VALUE_SPLIT,
) -> DistributionFunction:
    """Tabulate ``phi(t)`` on a level grid spanning [0, max u].

    The level count is twice the number of distinct sample values, capped at
    4096.  Masses come from the exact per-cell antiderivative of the weight;
    monotonicity holds by construction.
    """

    tag = "lebesgue" if weight.alpha == 0.0 else f"mu_alpha({weight.alpha:g})"
    vmax = float(np.max(sample.values))
    if vmax <= 0.0:
        return DistributionFunction(np.array([0.0]), np.array([0.0]), tag)
    vals, mass = _sample_atoms(sample, weight, subdiv, value_split)
    n_levels = min(2 * int(np.unique(sample.values).size), _LEVEL_CAP)
    n_levels = max(n_levels, 2)
    levels = np.linspace(0.0, vmax, n_levels)  # ascending
    cum = np.concatenate([[0.0], np.cumsum(mass)])
    # phi(level) = mass of atoms with value strictly above the level; vals is
    # sorted descending, so the count above a level is the insertion index of
    # the level in the negated (ascending) array
    counts = np.searchsorted(-vals, -levels, side="left")
    phi = cum[counts]
    return DistributionFunction(levels[::-1], phi[::-1], tag)


def mu_integral(
    sample: PolarSample,
    weight: WeightExponent,
    phi: Callable[[np.ndarray], np.ndarray],
    subdiv: int = DEFAULT_SUBDIV,
    value_split: int = DEFAULT_VALUE_SPLIT,
) -> float:
    """``integral over B of Phi(u) d mu_alpha`` for increasing Phi with Phi(0)=0."""

    vals, mass = _sample_atoms(sample, weight, subdiv, value_split)
    if vals.size == 0:
        return 0.0
    return float(np.sum(np.asarray(phi(vals), dtype=float) * mass))


def disk_integral(u: RadialProfile, phi: Callable[[np.ndarray], np.ndarray]) -> float:
    """``integral over the disk of Phi(u(|x|)) dx`` for a radial profile (trapezoid in r)."""

    fine = np.linspace(0.0, u.radius, 8193)
    vals = np.asarray(phi(u(fine)), dtype=float)
    return float(TWO_PI * np.trapezoid(vals * fine, fine))


# ---------------------------------------------------------------------------
# rearrangements
# ---------------------------------------------------------------------------

def mu_rearrange_radial(u: RadialProfile, weight: WeightExponent) -> RadialProfile:
    """Closed-form rearrangement of an already radial non-increasing profile.

    For nonnegative non-increasing u on [0, 1] the mu_alpha-rearrangement is
    the reparametrization ``u*(r) = u(r^eps * eps^(-eps/2))`` on the disk of
    radius ``star_radius = sqrt(eps)``.  Node-wise: the node at radius ``r``
    moves to ``sqrt(eps) * r^(1/eps)``, values are unchanged; at alpha = 0
    this is the identity.
    """

    if abs(u.radius - 1.0) > 1e-12:
        raise PreconditionError("mu_rearrange_radial expects a profile on [0, 1]")
    if np.any(u.values < 0.0):
        raise PreconditionError("mu_rearrange_radial expects nonnegative values")
    scale = max(float(np.max(u.values)), 1.0)
    if np.any(np.diff(u.values) > 1e-12 * scale):
        raise PreconditionError("mu_rearrange_radial expects a non-increasing profile")
    eps = weight.epsilon
    grid = math.sqrt(eps) * u.grid ** (1.0 / eps)
    return RadialProfile(grid, u.values)


def mu_rearrange_general(
    sample: PolarSample,
    weight: WeightExponent,
    shells: int = DEFAULT_SHELLS,
    subdiv: int = DEFAULT_SUBDIV,
    value_split: int = DEFAULT_VALUE_SPLIT,
) -> RadialProfile:
    """Rearrangement of a general polar sample by distributional inversion.

    Atoms are sorted by value and laid out from the origin outward; the
    output node at shell radius ``rho_k`` carries the mass-averaged atom value
    of the shell, with an apex node at the sample maximum and a monotone
    clamp (averaging can only break monotonicity at noise level).  The
    support radius is ``sqrt(total mass / pi) <= star_radius``.
    """

    star = weight.star_radius
    vmax = float(np.max(sample.values))
    if vmax <= 0.0:
        return RadialProfile(np.array([0.0, star]), np.array([0.0, 0.0]))
    vals, mass = _sample_atoms(sample, weight, subdiv, value_split)
    cum = np.concatenate([[0.0], np.cumsum(mass)])
    gsum = np.concatenate([[0.0], np.cumsum(vals * mass)])
    total = cum[-1]
    rmax = math.sqrt(total / math.pi)

    edges = np.linspace(0.0, rmax, shells + 1)
    edge_mass = math.pi * edges**2
    gedge = np.interp(edge_mass, cum, gsum)
    shell_mass = np.diff(edge_mass)
    avg = np.diff(gedge) / shell_mass

    mid = 0.5 * (edges[:-1] + edges[1:])
    grid = np.concatenate([[0.0], mid, [rmax]])
    values = np.concatenate([[vmax], avg, [0.0]])
    values = np.minimum.accumulate(values)
    if rmax < star * (1.0 - 1e-12):
        grid = np.append(grid, star)
        values = np.append(values, 0.0)
    return RadialProfile(grid, values)


# ---------------------------------------------------------------------------
# Polya-Szego comparator
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyaSzegoReport:
    """Finite-difference Dirichlet energies before and after rearrangement."""

    dirichlet_sample: float
    dirichlet_rearranged: float
    ratio: float

    def to_dict(self) -> dict:
        return {
            "dirichlet_sample": self.dirichlet_sample,
            "dirichlet_rearranged": self.dirichlet_rearranged,
            "ratio": self.ratio,
        }


def polar_dirichlet(sample: PolarSample) -> float:
    """Dirichlet energy of a polar sample by central finite differences."""

    radii = sample.radii
    vals = sample.values
    dth = TWO_PI / sample.ntheta
    du_dr = np.gradient(vals, radii, axis=0)
    du_dth = (np.roll(vals, -1, axis=1) - np.roll(vals, 1, axis=1)) / (2.0 * dth)
    rr = radii[:, None]
    grad2 = du_dr**2
    grad2[1:, :] += (du_dth[1:, :] / rr[1:, :]) ** 2  # angular term vanishes at r=0
    radial_density = np.sum(grad2 * rr, axis=1) * dth
    return float(np.trapezoid(radial_density, radii))


def polya_szego_check(
    sample: PolarSample,
    weight: WeightExponent,
    shells: int = DEFAULT_SHELLS,
    subdiv: int = DEFAULT_SUBDIV,
    value_split: int = DEFAULT_VALUE_SPLIT,
) -> PolyaSzegoReport:
    """Compare the sample's Dirichlet energy with that of its rearrangement.

    The ratio rearranged/original should not exceed 1 beyond grid tolerance;
    a violation is reported as-is, never clamped.
    """

    energy_in = polar_dirichlet(sample)
    star = mu_rearrange_general(sample, weight, shells, subdiv, value_split)
    from .profiles import dirichlet_norm_radial

    energy_out = dirichlet_norm_radial(star)
    ratio = math.inf if energy_in <= 0.0 and energy_out > 0.0 else (
        0.0 if energy_in <= 0.0 else energy_out / energy_in
    )
    return PolyaSzegoReport(
        dirichlet_sample=energy_in,
        dirichlet_rearranged=energy_out,
        ratio=ratio,
    )


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def read_polar_sample(path) -> PolarSample:
    """Read `nr,ntheta` header plus a row-major comma-separated value matrix.

    Radii are implied uniform on [0, 1].
    """

    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise InvalidProfileError(f"{path}: empty polar sample file")
    try:
        nr, ntheta = (int(p) for p in lines[0].split(","))
    except ValueError as exc:
        raise InvalidProfileError(f"{path}: malformed header {lines[0]!r}") from exc
    cells = []
    for ln in lines[1:]:
        cells.extend(ln.split(","))
    try:
        flat = np.asarray([float(c) for c in cells])
    except ValueError as exc:
        raise InvalidProfileError(f"{path}: non-numeric matrix entry") from exc
    if flat.size != nr * ntheta:
        raise InvalidProfileError(
            f"{path}: expected {nr * ntheta} entries for a {nr}x{ntheta} matrix, got {flat.size}"
        )
    return PolarSample(np.linspace(0.0, 1.0, nr), flat.reshape(nr, ntheta))


def write_polar_sample(path, sample: PolarSample) -> None:
    rows = [f"{sample.radii.size},{sample.ntheta}"]
    rows.extend(",".join(f"{v:.17g}" for v in row) for row in sample.values)
    Path(path).write_text("\n".join(rows) + "\n")
