"""Finite-section laboratory for Toeplitz operators on ordered duals.

The analytic Hardy subspace has the positive cone of characters as its
natural basis.  Compressing multiplication by a symbol to the span of a
finite, order-sorted window of cone points yields a dense matrix with
entry[row chi2][col chi1] = coeff(chi2 - chi1); for the circle this is the
classical matrix [coeff(j - k)].  These truncations serve as independent
numerical oracles: semicommutator ranks count cone points below a character,
section norms converge to the symbol's sup norm, and exact operator
identities (adjoint, multiplicativity with an analytic factor) hold on
suitably enlarged windows with no truncation error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import (
    CountNotEnumerableError,
    LatticePoint,
    OrderSpec,
    cone_box_points,
    is_positive,
    sort_key,
    xi_subgroup,
)
from .symbols import TrigPoly

RANK_CUTOFF_REL = 1e-8


@dataclass(frozen=True)
class Window:
    """Ordered tuple of distinct cone points, ascending in the group order."""

    points: tuple[LatticePoint, ...]
    order: OrderSpec

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError("window points must be distinct")
        for p in self.points:
            if not is_positive(p, self.order):
                raise ValueError(f"window point {p} is not in the positive cone")

    def __len__(self) -> int:
        return len(self.points)

    def index_map(self) -> dict[LatticePoint, int]:
        return {p: i for i, p in enumerate(self.points)}

    def enlarged_by_support(self, support: list[LatticePoint]) -> "Window":
        """Window joined with its translates by the given (cone) shifts."""
        seen = set(self.points)
        for w in self.points:
            for s in support:
                t = w + s
                if t not in seen and is_positive(t, self.order):
                    seen.add(t)
        return Window(tuple(sorted(seen, key=sort_key(self.order))), self.order)


def make_window(
    order: OrderSpec,
    count: int | None = None,
    box_radius: int | None = None,
    dims: int | None = None,
) -> Window:
    """Build a window: the ``count`` smallest cone points, or every cone
    point of a sup-norm box.

    Count windows exist only when the order has a least positive element
    (finite order intervals); weight orders reject them.
    """
    if (count is None) == (box_radius is None):
        raise ValueError("specify exactly one of count, box_radius")
    if count is not None:
        xi = xi_subgroup(order)
        if xi.is_trivial:
            raise CountNotEnumerableError(
                f"{order.family} order has no enumerable smallest positive elements"
            )
        if count < 1:
            raise ValueError("count must be positive")
        return Window(tuple(k * xi.generator for k in range(count)), order)
    points = sorted(cone_box_points(order, box_radius, dims), key=sort_key(order))
    return Window(tuple(points), order)


def riesz_project(f: TrigPoly, order: OrderSpec) -> TrigPoly:
    """Coefficient truncation to the positive cone (identity included)."""
    return f.restrict_to_cone(order)


@dataclass(frozen=True)
class ToeplitzMatrix:
    """Dense finite section of a Toeplitz operator on a window."""

    window: Window
    entries: np.ndarray

    def to_json_dict(self) -> dict:
        return {
            "window": [list(p.to_vector(self._dim())) for p in self.window.points],
            "entries": [
                [[z.real, z.imag] for z in row] for row in self.entries
            ],
        }

    def to_text_grid(self) -> str:
        """Plain-text grid, fixed formatting, for golden tests."""
        lines = []
        for row in self.entries:
            lines.append(" ".join(f"{z.real:.12g}{z.imag:+.12g}j" for z in row))
        return "\n".join(lines) + "\n"

    def _dim(self) -> int:
        return max((p.active_dim for p in self.window.points), default=1)


def truncated_toeplitz(phi: TrigPoly, window: Window) -> ToeplitzMatrix:
    """Compression of multiplication by phi to the window's span.

    entry[i][j] = coeff(window[i] - window[j]); entries are constant along
    window-difference classes (the Toeplitz structure).
    """
    pts = window.points
    n = len(pts)
    entries = np.zeros((n, n), dtype=complex)
    index = window.index_map()
    # walk the symbol support: row = col point + support shift
    for shift, c in phi.coeffs.items():
        for j, chi1 in enumerate(pts):
            i = index.get(chi1 + shift)
            if i is not None:
                entries[i, j] = c
    return ToeplitzMatrix(window, entries)


def numerical_rank(matrix: np.ndarray, rel_cutoff: float = RANK_CUTOFF_REL) -> int:
    if matrix.size == 0:
        return 0
    sv = np.linalg.svd(matrix, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > rel_cutoff * sv[0]))


def semicommutator_rank(chi: LatticePoint, window: Window) -> int:
    """Rank of I - T_chi T_{conj chi} on the window.

    On windows closed under subtraction of chi (where the difference stays in
    the cone) this equals the number of window points tau with tau - chi
    outside the cone, i.e. the finite-section count of the order interval
    below chi.
    """
    if not is_positive(chi, window.order):
        raise ValueError("chi must be in the positive cone")
    fwd = truncated_toeplitz(TrigPoly.monomial(chi), window).entries
    bwd = truncated_toeplitz(TrigPoly.monomial(-chi), window).entries
    return numerical_rank(np.eye(len(window)) - fwd @ bwd)


def xi_aligned_window(order: OrderSpec, chi: LatticePoint, margin: int = 2) -> Window:
    """Count window guaranteed to contain the interval below chi and its
    chi-translate closure, for chi on the finite-index axis."""
    xi = xi_subgroup(order)
    if xi.is_trivial:
        raise CountNotEnumerableError("order has a trivial finite-index subgroup")
    axis = xi.generator.entries[0][0]
    if not chi.is_zero and chi.support != (axis,):
        raise ValueError("chi is not on the finite-index axis")
    n = abs(chi.exponent(axis))
    return make_window(order, count=2 * n + margin)


def adjoint_check(phi: TrigPoly, window: Window) -> float:
    """Max entrywise deviation between the section of conj(phi) and the
    conjugate transpose of the section of phi (an exact identity)."""
    a = truncated_toeplitz(phi, window).entries
    b = truncated_toeplitz(phi.conj(), window).entries
    return float(np.max(np.abs(b - a.conj().T))) if a.size else 0.0


def multiplicativity_deviation(
    phi: TrigPoly,
    psi: TrigPoly,
    base_window: Window,
) -> np.ndarray:
    """Deviation matrix of T_{phi psi} minus T_phi T_psi on the base window.

    The middle product is formed on the window enlarged by psi's support, so
    for cone-supported psi the compared block carries no truncation error and
    the deviation is zero up to rounding.  A non-analytic psi makes the
    deviation the (finite-rank or worse) semicommutator, visible on the
    block.
    """
    big = base_window.enlarged_by_support(psi.support)
    a = truncated_toeplitz(phi, big).entries
    b = truncated_toeplitz(psi, big).entries
    product = a @ b
    idx = big.index_map()
    take = [idx[p] for p in base_window.points]
    block = product[np.ix_(take, take)]
    direct = truncated_toeplitz(phi * psi, base_window).entries
    return direct - block


def multiplicativity_check(
    phi: TrigPoly,
    psi: TrigPoly,
    base_window: Window,
) -> float:
    return float(np.max(np.abs(multiplicativity_deviation(phi, psi, base_window))))


def norm_ladder(
    phi: TrigPoly,
    order: OrderSpec,
    sizes: list[int],
    box_windows: bool = False,
    dims: int | None = None,
) -> list[float]:
    """Largest singular values of sections along growing windows.

    Nondecreasing and bounded by the symbol's sup norm; converges to it as
    the window exhausts the cone.
    """
    out = []
    for size in sizes:
        window = (
            make_window(order, box_radius=size, dims=dims)
            if box_windows
            else make_window(order, count=size)
        )
        entries = truncated_toeplitz(phi, window).entries
        sv = np.linalg.svd(entries, compute_uv=False)
        out.append(float(sv[0]) if sv.size else 0.0)
    return out


def smallest_singular_values(
    phi: TrigPoly,
    order: OrderSpec,
    sizes: list[int],
    box_windows: bool = False,
    dims: int | None = None,
) -> list[float]:
    """Conditioning probe: smallest singular value along a window ladder."""
    out = []
    for size in sizes:
        window = (
            make_window(order, box_radius=size, dims=dims)
            if box_windows
            else make_window(order, count=size)
        )
        entries = truncated_toeplitz(phi, window).entries
        sv = np.linalg.svd(entries, compute_uv=False)
        out.append(float(sv[-1]) if sv.size else 0.0)
    return out
