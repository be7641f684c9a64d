"""Symbols on the torus: trigonometric polynomials and expression trees.

A symbol is a continuous function on T^d presented either as a
:class:`TrigPoly` (finite coefficient map over lattice characters) or as an
expression tree built from monomials, polynomials, exponentials, products,
sums and constant shifts.  Evaluation is vectorized over angle grids;
exponential nodes are evaluated pointwise, never expanded into series.

The Fourier convention is fixed artifact-wide as

    coeff(chi) = integral of phi * conj(chi) dm,

so for a trigonometric polynomial the coefficient map is literal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .lattice import ZERO, LatticePoint, OrderSpec, is_positive

# grid points per axis used when the caller does not pin one; chosen to keep
# the total sample count near 2^18 at any dimension
_DEFAULT_GRID = {1: 512, 2: 512, 3: 64}


def default_grid(dim: int) -> int:
    if dim <= 0:
        return 1
    if dim in _DEFAULT_GRID:
        return _DEFAULT_GRID[dim]
    return max(8, 2 ** (18 // dim))


class TrigPoly:
    """Finite complex coefficient map over lattice characters.

    Canonical form: coefficients with modulus exactly 0 are not stored.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[LatticePoint, complex] | None = None):
        cleaned = {}
        if coeffs:
            for point, c in coeffs.items():
                c = complex(c)
                if c != 0:
                    cleaned[point] = c
        self.coeffs = cleaned

    @staticmethod
    def monomial(point: LatticePoint, coeff: complex = 1.0) -> "TrigPoly":
        return TrigPoly({point: coeff})

    @staticmethod
    def constant(c: complex) -> "TrigPoly":
        return TrigPoly({ZERO: c})

    @property
    def support(self) -> list[LatticePoint]:
        return list(self.coeffs)

    @property
    def active_dim(self) -> int:
        return max((p.active_dim for p in self.coeffs), default=0)

    def coefficient(self, chi: LatticePoint) -> complex:
        return self.coeffs.get(chi, 0j)

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        acc = dict(self.coeffs)
        for p, c in other.coeffs.items():
            acc[p] = acc.get(p, 0j) + c
        return TrigPoly(acc)

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            acc: dict[LatticePoint, complex] = {}
            for p1, c1 in self.coeffs.items():
                for p2, c2 in other.coeffs.items():
                    p = p1 + p2
                    acc[p] = acc.get(p, 0j) + c1 * c2
            return TrigPoly(acc)
        return TrigPoly({p: other * c for p, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return self + (-1.0) * other

    def conj(self) -> "TrigPoly":
        """Complex conjugate: coefficients reflect and conjugate."""
        return TrigPoly({-p: c.conjugate() for p, c in self.coeffs.items()})

    def restrict_to_cone(self, order: OrderSpec) -> "TrigPoly":
        """Riesz projection: keep coefficients at positive-cone points."""
        return TrigPoly({p: c for p, c in self.coeffs.items() if is_positive(p, order)})

    def is_cone_supported(self, order: OrderSpec) -> bool:
        return all(is_positive(p, order) for p in self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, TrigPoly) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        terms = ", ".join(f"{p.to_vector()}: {c:.4g}" for p, c in sorted(
            self.coeffs.items(), key=lambda kv: kv[0].entries))
        return f"TrigPoly({{{terms}}})"


def fourier_coefficient(phi: TrigPoly, chi: LatticePoint) -> complex:
    """Coefficient of ``chi`` under the pinned convention (literal lookup)."""
    return phi.coefficient(chi)


# ---------------------------------------------------------------------------
# expression trees


class SymbolExpr:
    """Base of the symbol expression tree."""

    @property
    def active_dim(self) -> int:
        raise NotImplementedError

    def values(self, thetas: np.ndarray) -> np.ndarray:
        """Evaluate at an (N, dims) array of angles, vectorized."""
        raise NotImplementedError


@dataclass(frozen=True)
class Mono(SymbolExpr):
    n: LatticePoint

    @property
    def active_dim(self) -> int:
        return self.n.active_dim

    def values(self, thetas: np.ndarray) -> np.ndarray:
        phase = np.zeros(thetas.shape[0])
        for axis, exponent in self.n.entries:
            phase = phase + exponent * thetas[:, axis]
        return np.exp(1j * phase)


@dataclass(frozen=True)
class Poly(SymbolExpr):
    poly: TrigPoly

    @property
    def active_dim(self) -> int:
        return self.poly.active_dim

    def values(self, thetas: np.ndarray) -> np.ndarray:
        out = np.zeros(thetas.shape[0], dtype=complex)
        for point, c in self.poly.coeffs.items():
            phase = np.zeros(thetas.shape[0])
            for axis, exponent in point.entries:
                phase = phase + exponent * thetas[:, axis]
            out += c * np.exp(1j * phase)
        return out


@dataclass(frozen=True)
class Exp(SymbolExpr):
    arg: SymbolExpr

    @property
    def active_dim(self) -> int:
        return self.arg.active_dim

    def values(self, thetas: np.ndarray) -> np.ndarray:
        return np.exp(self.arg.values(thetas))


@dataclass(frozen=True)
class Product(SymbolExpr):
    factors: tuple[SymbolExpr, ...]

    @property
    def active_dim(self) -> int:
        return max((f.active_dim for f in self.factors), default=0)

    def values(self, thetas: np.ndarray) -> np.ndarray:
        out = np.ones(thetas.shape[0], dtype=complex)
        for f in self.factors:
            out = out * f.values(thetas)
        return out


@dataclass(frozen=True)
class Sum(SymbolExpr):
    terms: tuple[SymbolExpr, ...]

    @property
    def active_dim(self) -> int:
        return max((t.active_dim for t in self.terms), default=0)

    def values(self, thetas: np.ndarray) -> np.ndarray:
        out = np.zeros(thetas.shape[0], dtype=complex)
        for t in self.terms:
            out = out + t.values(thetas)
        return out


@dataclass(frozen=True)
class ShiftConst(SymbolExpr):
    arg: SymbolExpr
    shift: complex

    @property
    def active_dim(self) -> int:
        return self.arg.active_dim

    def values(self, thetas: np.ndarray) -> np.ndarray:
        return self.arg.values(thetas) + self.shift


def eval_at(phi: SymbolExpr, theta: Iterable[float]) -> complex:
    """Pointwise value of the symbol at torus angles theta."""
    theta = np.asarray(tuple(theta), dtype=float)
    if theta.size < phi.active_dim:
        raise ValueError(f"need {phi.active_dim} angles, got {theta.size}")
    return complex(phi.values(theta.reshape(1, -1))[0])


def grid_angles(dims: int, grid_per_axis: int) -> np.ndarray:
    """Uniform product grid on [0, 2pi)^dims, endpoint excluded; shape (G^d, d)."""
    if dims == 0:
        return np.zeros((1, 1))
    axis = np.arange(grid_per_axis) * (2.0 * np.pi / grid_per_axis)
    grids = np.meshgrid(*([axis] * dims), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


def grid_values(phi: SymbolExpr, grid_per_axis: int | None = None) -> np.ndarray:
    """Symbol values over the default uniform grid (flattened)."""
    dims = max(phi.active_dim, 1)
    if grid_per_axis is None:
        grid_per_axis = default_grid(dims)
    return phi.values(grid_angles(dims, grid_per_axis))


def sup_norm_estimate(phi: SymbolExpr, grid_per_axis: int | None = None) -> float:
    """Max modulus over the grid; a lower bound of the true sup norm."""
    if grid_per_axis is not None and grid_per_axis < 8:
        raise ValueError("grid_per_axis must be >= 8")
    return float(np.max(np.abs(grid_values(phi, grid_per_axis))))


def min_modulus(phi: SymbolExpr, grid_per_axis: int | None = None) -> float:
    """Min modulus over the grid; detects symbols that vanish somewhere."""
    if grid_per_axis is not None and grid_per_axis < 8:
        raise ValueError("grid_per_axis must be >= 8")
    return float(np.min(np.abs(grid_values(phi, grid_per_axis))))


def fft_coefficients(
    phi: SymbolExpr,
    grid_per_axis: int | None = None,
    keep_radius: int | None = None,
    prune_tol: float = 1e-12,
) -> TrigPoly:
    """Fourier coefficients of the symbol by FFT on a uniform grid.

    Exact for trigonometric polynomials whose support fits the grid without
    aliasing; for smooth symbols (e.g. exponentials of polynomials) the
    coefficients decay fast and the grid error is far below ``prune_tol``.
    ``keep_radius`` truncates output support to a sup-norm box.
    """
    dims = max(phi.active_dim, 1)
    if grid_per_axis is None:
        grid_per_axis = default_grid(dims)
    n = grid_per_axis
    values = phi.values(grid_angles(dims, n)).reshape((n,) * dims)
    table = np.fft.fftn(values) / (n**dims)
    freqs = np.fft.fftfreq(n, d=1.0 / n).astype(int)
    coeffs: dict[LatticePoint, complex] = {}
    for multi_index in np.argwhere(np.abs(table) > prune_tol):
        exponents = tuple(int(freqs[i]) for i in multi_index)
        if keep_radius is not None and any(abs(e) > keep_radius for e in exponents):
            continue
        coeffs[LatticePoint.of(exponents)] = complex(table[tuple(multi_index)])
    return TrigPoly(coeffs)


# ---------------------------------------------------------------------------
# JSON symbol specs

_COMPLEX_PAIR = "expected [re, im] pair"


def _complex_from_json(obj) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return complex(float(obj[0]), float(obj[1]))
    raise ValueError(_COMPLEX_PAIR)


def symbol_from_json_dict(obj: Mapping) -> SymbolExpr:
    """Parse the wire format {"type": ..., ...} into an expression tree."""
    kind = obj.get("type")
    if kind == "mono":
        return Mono(LatticePoint.of(obj["n"]))
    if kind == "poly":
        coeffs: dict[LatticePoint, complex] = {}
        for term in obj["terms"]:
            p = LatticePoint.of(term["n"])
            coeffs[p] = coeffs.get(p, 0j) + complex(
                float(term.get("re", 0.0)), float(term.get("im", 0.0))
            )
        return Poly(TrigPoly(coeffs))
    if kind == "exp":
        return Exp(symbol_from_json_dict(obj["arg"]))
    if kind == "product":
        return Product(tuple(symbol_from_json_dict(a) for a in obj["args"]))
    if kind == "sum":
        return Sum(tuple(symbol_from_json_dict(a) for a in obj["args"]))
    if kind == "shift":
        return ShiftConst(symbol_from_json_dict(obj["arg"]), _complex_from_json(obj["lambda"]))
    raise ValueError(f"unknown symbol node type {kind!r}")


def symbol_to_json_dict(phi: SymbolExpr) -> dict:
    if isinstance(phi, Mono):
        return {"type": "mono", "n": list(phi.n.to_vector())}
    if isinstance(phi, Poly):
        terms = [
            {"n": list(p.to_vector()), "re": c.real, "im": c.imag}
            for p, c in sorted(phi.poly.coeffs.items(), key=lambda kv: kv[0].entries)
        ]
        return {"type": "poly", "terms": terms}
    if isinstance(phi, Exp):
        return {"type": "exp", "arg": symbol_to_json_dict(phi.arg)}
    if isinstance(phi, Product):
        return {"type": "product", "args": [symbol_to_json_dict(f) for f in phi.factors]}
    if isinstance(phi, Sum):
        return {"type": "sum", "args": [symbol_to_json_dict(t) for t in phi.terms]}
    if isinstance(phi, ShiftConst):
        return {
            "type": "shift",
            "arg": symbol_to_json_dict(phi.arg),
            "lambda": [phi.shift.real, phi.shift.imag],
        }
    raise ValueError(f"cannot serialize node {type(phi).__name__}")
