"""Winding numbers of sampled loops and character extraction.

An invertible continuous symbol on the torus factors uniquely as a character
times the exponential of a continuous function.  The character's exponent
along axis j equals the winding number of the symbol restricted to the j-th
coordinate circle, so the factorization is computed from d robust winding
numbers.  Winding is ill-conditioned near the origin, hence the relative
origin tolerance; coarse sampling is detected (argument steps >= pi/2) and
refined by doubling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import LatticePoint
from .symbols import SymbolExpr

ORIGIN_RTOL = 1e-9
START_SAMPLES = 256
MAX_SAMPLES = 2**16


class OriginTooCloseError(ArithmeticError):
    """Loop passes too close to the origin for a reliable winding number."""


class StepTooCoarseError(ArithmeticError):
    """Consecutive samples turn by >= pi/2; the loop needs refinement."""


@dataclass(frozen=True)
class LoopSamples:
    """Cyclic complex samples of a loop avoiding the origin."""

    values: np.ndarray
    min_modulus: float
    max_modulus: float

    @staticmethod
    def from_values(values) -> "LoopSamples":
        values = np.asarray(values, dtype=complex)
        if values.size < 3:
            raise ValueError("need at least 3 samples")
        moduli = np.abs(values)
        return LoopSamples(values, float(moduli.min()), float(moduli.max()))


def winding_number(loop: LoopSamples, origin_rtol: float = ORIGIN_RTOL) -> int:
    """Accumulated argument change around the cycle, divided by 2*pi.

    Raises OriginTooCloseError when the loop's minimum modulus is below
    ``origin_rtol`` times its maximum, StepTooCoarseError when any step turns
    by at least pi/2 (caller should resample more finely).
    """
    if loop.min_modulus <= origin_rtol * loop.max_modulus:
        raise OriginTooCloseError(
            f"min modulus {loop.min_modulus:.3e} below "
            f"{origin_rtol:.0e} * max modulus {loop.max_modulus:.3e}"
        )
    ratios = np.roll(loop.values, -1) / loop.values
    steps = np.angle(ratios)
    if np.max(np.abs(steps)) >= np.pi / 2:
        raise StepTooCoarseError("argument increment >= pi/2 between samples")
    total = steps.sum() / (2.0 * np.pi)
    n = int(round(total))
    if abs(total - n) > 1e-6:
        raise ArithmeticError(f"winding sum {total} is not an integer")
    return n


def coordinate_loop(
    phi: SymbolExpr,
    axis: int,
    samples: int,
    base_point: np.ndarray | None = None,
) -> LoopSamples:
    """Samples of the symbol along the coordinate circle of one axis.

    The other angles sit at ``base_point`` (default 0); any base point gives
    a homotopic loop through nonvanishing loops.
    """
    dims = max(phi.active_dim, axis + 1)
    thetas = np.zeros((samples, dims))
    if base_point is not None:
        thetas[:] = np.asarray(base_point, dtype=float)[:dims]
    thetas[:, axis] = np.arange(samples) * (2.0 * np.pi / samples)
    return LoopSamples.from_values(phi.values(thetas))


def _refined_winding(
    phi: SymbolExpr,
    axis: int,
    samples: int,
    max_samples: int,
    base_point: np.ndarray | None,
) -> int:
    while True:
        try:
            return winding_number(coordinate_loop(phi, axis, samples, base_point))
        except StepTooCoarseError:
            if samples >= max_samples:
                raise
            samples *= 2


def bvk_character(
    phi: SymbolExpr,
    dims: int | None = None,
    samples_per_loop: int = START_SAMPLES,
    max_samples: int = MAX_SAMPLES,
    base_point: np.ndarray | None = None,
) -> LatticePoint:
    """Character factor of an invertible symbol, via coordinate windings.

    For phi = chi * exp(g) this returns exactly chi: the exponential factor
    has a continuous logarithm, so all its coordinate windings vanish, and on
    the torus the vanishing of every coordinate winding characterizes the
    exponential component.
    """
    if dims is None:
        dims = phi.active_dim
    exponents = {}
    for axis in range(dims):
        w = _refined_winding(phi, axis, samples_per_loop, max_samples, base_point)
        if w != 0:
            exponents[axis] = w
    return LatticePoint.from_entries(exponents)
