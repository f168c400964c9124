"""The explicit Carleson-Chang type candidate and its closed-form value.

In half-line coordinates the candidate is

    w(t) = t / 2              on [0, 2],
           sqrt(t - 1)        on [2, 1 + e^2],
           e                  beyond,

a unit-norm function (its Dirichlet integral is 1/4 * 2 + the middle piece's
1/4 * integral dt / (t - 1) = 1/2 + 1/2).  For the weight exponent alpha,
write ``eps = 2 / (alpha + 2)``.  The half-line integral

    I(alpha) = integral over [0, inf) of exp(eps * w(t)^2 - t) dt

splits into a head quadrature over [0, 2] plus the closed form

    A(alpha) = (1/e) * [ -(2/alpha) * exp(-(alpha/(alpha+2)) e^2)
                         + ((alpha+2)/alpha) * exp(-alpha/(alpha+2)) ],

which collects the middle piece and the tail; A(alpha) -> e as alpha -> 0.
The weighted functional value of the pulled-back candidate is then
``pi * eps * (I(alpha) - 1)``.

Also provided: the small-t remainder coefficient

    B(alpha) = (alpha+2) * exp(-(alpha+2)/2) * (alpha/4)
               * ( e - (alpha/(alpha+2)) * exp((alpha/(alpha+2))^2) ),

the two-sided reference integral ``2 * integral over [0,1] of exp(s^2) ds``,
and the Moser-type concentrating sequence ``w_n(t) = min(t, n) / sqrt(n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .profiles import (
    DEFAULT_QUADRATURE,
    HalfLineProfile,
    PreconditionError,
    QuadratureSpec,
    WeightExponent,
    integrate,
)

E = math.e
CANDIDATE_KNEE = 2.0
CANDIDATE_CUTOFF = 1.0 + E * E

# below this the closed form for A(alpha) loses all digits to cancellation;
# switch to the exact limit value e
_ALPHA_LIMIT = 1e-6


def carleson_chang_values(t):
    """Exact candidate values at arbitrary points ``t >= 0``."""

    t = np.asarray(t, dtype=float)
    out = np.where(
        t <= CANDIDATE_KNEE,
        0.5 * t,
        np.where(t <= CANDIDATE_CUTOFF, np.sqrt(np.maximum(t - 1.0, 0.0)), E),
    )
    return out if out.ndim else float(out)


def carleson_chang_candidate(head_nodes: int = 256, middle_nodes: int = 4096) -> HalfLineProfile:
    """Piecewise-linear sampling of the candidate with a constant tail at e.

    The linear head needs no resolution; ``head_nodes`` cells are kept anyway
    so pullbacks through the coordinate maps stay accurate.  The curved middle
    piece gets ``middle_nodes`` cells.
    """

    if head_nodes < 1 or middle_nodes < 1:
        raise PreconditionError("node counts must be positive")
    head = np.linspace(0.0, CANDIDATE_KNEE, head_nodes + 1)
    middle = np.linspace(CANDIDATE_KNEE, CANDIDATE_CUTOFF, middle_nodes + 1)[1:]
    grid = np.concatenate([head, middle])
    return HalfLineProfile(grid, carleson_chang_values(grid), tail_value=E)


def a_alpha(weight: WeightExponent) -> float:
    """Closed-form middle-plus-tail contribution A(alpha); A(0) = e."""

    a = weight.alpha
    if a < _ALPHA_LIMIT:
        return E
    d = a / (a + 2.0)
    return (-(2.0 / a) * math.exp(-d * E * E) + ((a + 2.0) / a) * math.exp(-d)) / E


def b_alpha(weight: WeightExponent) -> float:
    """Head remainder coefficient B(alpha); vanishes at alpha = 0."""

    a = weight.alpha
    d = a / (a + 2.0)
    return (a + 2.0) * math.exp(-0.5 * (a + 2.0)) * (a / 4.0) * (E - d * math.exp(d * d))


@dataclass(frozen=True)
class ClosedFormValue:
    """Half-line integral of the candidate, split into labelled pieces.

    ``value`` is the full integral I(alpha); ``pieces`` maps piece names to
    their contributions and sums to ``value``.  ``functional`` is the weighted
    functional of the pulled-back candidate, ``pi * eps * (value - 1)``.
    """

    alpha: float
    value: float
    pieces: dict

    @property
    def functional(self) -> float:
        eps = 2.0 / (self.alpha + 2.0)
        return math.pi * eps * (self.value - 1.0)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "halfline_integral": self.value,
            "pieces": dict(self.pieces),
            "functional_value": self.functional,
        }


def candidate_value(
    weight: WeightExponent,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> ClosedFormValue:
    """I(alpha) = head quadrature over [0, 2] + closed form A(alpha)."""

    eps = weight.epsilon

    def head_integrand(t):
        return np.exp(eps * 0.25 * t * t - t)

    head = integrate(head_integrand, [0.0, 1.0, 2.0], quad)
    a_val = a_alpha(weight)
    return ClosedFormValue(
        alpha=weight.alpha,
        value=head + a_val,
        pieces={"head_integral": head, "a_alpha": a_val},
    )


def gauss_integral(quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """The reference constant ``2 * integral over [0, 1] of exp(s^2) ds``."""

    return 2.0 * integrate(lambda s: np.exp(s * s), [0.0, 0.5, 1.0], quad)


def concentrating_sequence(n: int) -> HalfLineProfile:
    """Moser-type unit-norm bump: ``w_n(t) = t / sqrt(n)`` on [0, n], then flat.

    ``n`` is a positive integer indexing the sequence; the Dirichlet integral
    is exactly 1 for every n.
    """

    if int(n) != n or n < 1:
        raise PreconditionError(f"sequence index must be a positive integer, got {n!r}")
    n = int(n)
    grid = np.linspace(0.0, float(n), 33)
    return HalfLineProfile(grid, grid / math.sqrt(n), tail_value=math.sqrt(n))
