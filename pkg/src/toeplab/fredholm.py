"""Fredholm classification of Toeplitz operators with continuous symbols.

The decision chain: a semi-Fredholm Toeplitz operator forces an invertible
symbol, so a symbol whose modulus dips below tolerance is reported
not-invertible outright.  Otherwise the symbol's character factor is read
off by coordinate windings; the operator is Fredholm exactly when that
character has a finite order index n, and then the operator index is -n.
For characters of infinite order index the operator is still one-sided
invertible, witnessed by which composition of the section of the character
with the section of its conjugate collapses to the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .lattice import (
    EQUAL,
    GREATER,
    DimensionMismatchError,
    LatticePoint,
    OrderSpec,
    ZERO,
    compare,
    ind_character,
)
from .sections import make_window, multiplicativity_check, smallest_singular_values
from .symbols import (
    Exp,
    Poly,
    SymbolExpr,
    TrigPoly,
    default_grid,
    fft_coefficients,
    min_modulus,
    sup_norm_estimate,
)
from .winding import bvk_character

MIN_MODULUS_TOL = 1e-6

TWO_SIDED = "two_sided"
IDENTITY_ON_LEFT_COMPOSITE = "identity_on_left_composite"
IDENTITY_ON_RIGHT_COMPOSITE = "identity_on_right_composite"
NOT_INVERTIBLE_SYMBOL = "not_invertible_symbol"


@dataclass(frozen=True)
class GridConfig:
    """Resolution knobs for symbol sampling and winding loops."""

    grid_per_axis: int | None = None
    samples_per_loop: int = 256
    min_modulus_tol: float = MIN_MODULUS_TOL

    def grid_for(self, dims: int) -> int:
        return self.grid_per_axis if self.grid_per_axis else default_grid(max(dims, 1))


@dataclass(frozen=True)
class FredholmReport:
    symbol_min_modulus: float
    symbol_sup_norm: float
    character: LatticePoint | None
    in_xi: bool
    fredholm: bool
    index: int | None
    sided: str
    notes: dict[str, Any] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        character = None
        if self.character is not None:
            character = list(self.character.to_vector(max(self.character.active_dim, 1)))
        return {
            "symbol_min_modulus": self.symbol_min_modulus,
            "symbol_sup_norm": self.symbol_sup_norm,
            "character": character,
            "in_xi": self.in_xi,
            "fredholm": self.fredholm,
            "index": self.index,
            "sided": self.sided,
            "notes": self.notes,
        }


def _sided_from_character(chi: LatticePoint, order: OrderSpec) -> str:
    """Which composition of the conjugate-character section with the
    character section is the identity.

    For a cone character the conjugate composes to the identity on the left
    of the product; for an inverse-cone character on the right; the zero
    character gives two-sided invertibility of the exponential part.
    """
    side = compare(chi, ZERO, order)
    if side == EQUAL:
        return TWO_SIDED
    if side == GREATER:
        return IDENTITY_ON_LEFT_COMPOSITE
    return IDENTITY_ON_RIGHT_COMPOSITE


def analyze(
    phi: SymbolExpr,
    order: OrderSpec,
    config: GridConfig = GridConfig(),
) -> FredholmReport:
    """Full Fredholm report for a continuous symbol under a linear order."""
    dims = phi.active_dim
    bound = order.bounded_dim
    if bound is not None and dims > bound:
        raise DimensionMismatchError(
            f"symbol has {dims} active axes but the order is {bound}-dimensional"
        )
    grid = config.grid_for(dims)
    low = min_modulus(phi, grid)
    high = sup_norm_estimate(phi, grid)
    notes: dict[str, Any] = {"grid_per_axis": grid}
    if low <= config.min_modulus_tol:
        return FredholmReport(
            symbol_min_modulus=low,
            symbol_sup_norm=high,
            character=None,
            in_xi=False,
            fredholm=False,
            index=None,
            sided=NOT_INVERTIBLE_SYMBOL,
            notes=notes,
        )
    chi = bvk_character(phi, dims=dims, samples_per_loop=config.samples_per_loop)
    ind = ind_character(chi, order)
    sided = _sided_from_character(chi, order)
    if ind is None:
        return FredholmReport(
            symbol_min_modulus=low,
            symbol_sup_norm=high,
            character=chi,
            in_xi=False,
            fredholm=False,
            index=None,
            sided=sided,
            notes=notes,
        )
    return FredholmReport(
        symbol_min_modulus=low,
        symbol_sup_norm=high,
        character=chi,
        in_xi=True,
        fredholm=True,
        index=-ind,
        sided=sided,
        notes=notes,
    )


def one_sided_witness(
    chi: LatticePoint,
    order: OrderSpec,
    window_count: int | None = None,
    box_radius: int = 2,
    dims: int | None = None,
) -> float:
    """Finite-section witness that the identity-composite really holds.

    Returns the block deviation of T_{conj chi} T_chi from the identity (for
    a cone character; mirrored otherwise), computed with an enlarged middle
    window so the value is zero up to rounding.
    """
    side = compare(chi, ZERO, order)
    if window_count is not None:
        base = make_window(order, count=window_count)
    else:
        base = make_window(order, box_radius=box_radius, dims=dims)
    if side >= EQUAL:
        return multiplicativity_check(TrigPoly.monomial(-chi), TrigPoly.monomial(chi), base)
    return multiplicativity_check(TrigPoly.monomial(chi), TrigPoly.monomial(-chi), base)


def invertibility_of_exponential(
    g: TrigPoly,
    order: OrderSpec,
    config: GridConfig = GridConfig(),
    ladder: list[int] | None = None,
) -> FredholmReport:
    """Report for exp(g): zero character, index zero, plus a finite-section
    conditioning probe (smallest singular value along a window ladder)."""
    phi = Exp(Poly(g))
    report = analyze(phi, order, config)
    dims = max(g.active_dim, 1)
    coeffs = fft_coefficients(phi, grid_per_axis=min(config.grid_for(dims), 64))
    use_counts = order.family == "lex" and order.d == 1
    if ladder is None:
        ladder = [8, 16, 32] if use_counts else [1, 2, 3]
    sigma_min = smallest_singular_values(
        coeffs,
        order,
        ladder,
        box_windows=not use_counts,
        dims=order.bounded_dim or max(dims, 1),
    )
    notes = dict(report.notes)
    notes["sigma_min_ladder"] = sigma_min
    notes["ladder"] = ladder
    notes["ladder_kind"] = "count" if use_counts else "box"
    return FredholmReport(
        symbol_min_modulus=report.symbol_min_modulus,
        symbol_sup_norm=report.symbol_sup_norm,
        character=report.character,
        in_xi=report.in_xi,
        fredholm=report.fredholm,
        index=report.index,
        sided=report.sided,
        notes=notes,
    )
