"""Cross-checking harness: analytic predictions against numerical oracles.

Every case pairs a prediction from the index/spectral theory with an
independent oracle (exhaustive interval enumeration, finite-section ranks,
raster geometry).  Reports are deterministic for a fixed seed and config.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
from scipy import ndimage

from .fredholm import GridConfig, analyze
from .lattice import (
    LatticePoint,
    OrderSpec,
    ZERO,
    brute_interval_points,
    is_positive,
    xi_subgroup,
)
from .sections import make_window, semicommutator_rank, xi_aligned_window
from .spectra import (
    ESSENTIAL,
    RESOLVENT,
    SPECTRUM_NONESSENTIAL,
    SpectralMap,
    classify_point,
    spectral_picture,
)
from .symbols import Exp, Mono, Poly, Product, SymbolExpr, TrigPoly, sup_norm_estimate

_EIGHT = np.ones((3, 3), dtype=bool)


@dataclass(frozen=True)
class SuiteCase:
    name: str
    prediction: Any
    oracle_value: Any
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "prediction": self.prediction,
            "oracle_value": self.oracle_value,
            "pass": self.passed,
        }


@dataclass
class SuiteReport:
    cases: list[SuiteCase]
    seed: int
    config: dict

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def finalize(self) -> "SuiteReport":
        self.cases.sort(key=lambda c: c.name)
        return self

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "config": self.config,
            "cases": [c.to_json_dict() for c in self.cases],
            "all_passed": self.all_passed,
        }


# ---------------------------------------------------------------------------
# seeded random symbols


def random_trig_poly(
    rng: np.random.Generator,
    dims: int,
    box_radius: int = 2,
    n_terms: int = 4,
    scale: float = 1.0,
) -> TrigPoly:
    """Random polynomial: coefficients uniform in a complex disk, support in
    a sup-norm box."""
    coeffs: dict[LatticePoint, complex] = {}
    for _ in range(n_terms):
        point = LatticePoint.of(rng.integers(-box_radius, box_radius + 1, size=dims))
        r = scale * np.sqrt(rng.uniform())
        ang = rng.uniform(0.0, 2.0 * np.pi)
        coeffs[point] = coeffs.get(point, 0j) + r * np.exp(1j * ang)
    return TrigPoly(coeffs)


def random_exp_arg(
    rng: np.random.Generator,
    dims: int,
    sup_bound: float = 0.5,
    box_radius: int = 2,
    n_terms: int = 4,
) -> TrigPoly:
    """Random exponent, rescaled so its sup norm stays below ``sup_bound``
    (keeps min-modulus preconditions comfortably satisfied)."""
    g = random_trig_poly(rng, dims, box_radius=box_radius, n_terms=n_terms, scale=0.3)
    sup = sup_norm_estimate(Poly(g), 64)
    if sup > sup_bound:
        g = (sup_bound / sup) * g
    return g


def _has_infinite_index_characters(order: OrderSpec) -> bool:
    # the circle's lex order is the one case where every character has
    # finite index
    return not (order.family == "lex" and order.d == 1)


def _random_off_axis_character(
    rng: np.random.Generator, order: OrderSpec
) -> LatticePoint:
    """Random positive-cone character of infinite order index."""
    if not _has_infinite_index_characters(order):
        raise ValueError("every character of this order has a finite index")
    xi = xi_subgroup(order)
    axis = xi.generator.entries[0][0] if not xi.is_trivial else None
    dims = order.bounded_dim or 2
    while True:
        vec = rng.integers(-2, 3, size=dims)
        point = LatticePoint.of(vec)
        if point.is_zero or not is_positive(point, order):
            continue
        if axis is None or point.support != (axis,):
            return point


# ---------------------------------------------------------------------------
# index suite


def run_index_suite(
    order: OrderSpec,
    seed: int = 7,
    n_cases: int = 20,
    config: GridConfig = GridConfig(),
) -> SuiteReport:
    """Operator index vs finite-section rank vs brute-force interval count.

    Finite-index characters must agree three ways exactly; infinite-index
    characters must be flagged non-Fredholm while both oracle counts grow
    along their ladders.
    """
    rng = np.random.default_rng(seed)
    cases: list[SuiteCase] = []
    xi = xi_subgroup(order)
    dims = order.bounded_dim or 2

    for i in range(n_cases):
        tag = f"index/{order.family}/case{i:03d}"
        if xi.is_trivial:
            if i % 2 == 0:
                chi = _random_off_axis_character(rng, order)
                cases.append(_infinite_index_case(tag, chi, order, config))
            else:
                g = random_exp_arg(rng, dims)
                report = analyze(Exp(Poly(g)), order, config)
                passed = report.fredholm and report.index == 0 and report.character == ZERO
                cases.append(
                    SuiteCase(
                        name=tag + "/exp-invertible",
                        prediction={"fredholm": True, "index": 0},
                        oracle_value={"fredholm": report.fredholm, "index": report.index},
                        passed=passed,
                    )
                )
        elif i % 2 == 0 or not _has_infinite_index_characters(order):
            n = int(rng.integers(0, 9))
            chi = n * xi.generator
            g = random_exp_arg(rng, dims)
            cases.append(_finite_index_case(tag, chi, n, g, order, config))
        else:
            chi = _random_off_axis_character(rng, order)
            cases.append(_infinite_index_case(tag, chi, order, config))
    return SuiteReport(cases, seed, _snapshot(order, seed, n_cases, config)).finalize()


def _finite_index_case(
    tag: str,
    chi: LatticePoint,
    n: int,
    g: TrigPoly,
    order: OrderSpec,
    config: GridConfig,
) -> SuiteCase:
    phi: SymbolExpr = Product((Mono(chi), Exp(Poly(g))))
    report = analyze(phi, order, config)
    rank = semicommutator_rank(chi, xi_aligned_window(order, chi, margin=2))
    radii = [n + 1, n + 2]
    counts = [len(brute_interval_points(chi, order, r)) for r in radii]
    stabilized = counts[0] == counts[-1]
    passed = (
        report.fredholm
        and report.index == -n
        and rank == n
        and stabilized
        and counts[0] == n
    )
    return SuiteCase(
        name=tag + "/finite-index",
        prediction={"fredholm": True, "index": -n},
        oracle_value={
            "index_from_analyze": report.index,
            "semicommutator_rank": rank,
            "interval_counts": counts,
        },
        passed=passed,
    )


def _infinite_index_case(
    tag: str,
    chi: LatticePoint,
    order: OrderSpec,
    config: GridConfig,
) -> SuiteCase:
    report = analyze(Mono(chi), order, config)
    radii = [2, 3, 4]
    counts = [len(brute_interval_points(chi, order, r)) for r in radii]
    growing_counts = all(a < b for a, b in zip(counts, counts[1:]))
    dims = order.bounded_dim or max(chi.active_dim, 2)
    ranks = [
        semicommutator_rank(chi, make_window(order, box_radius=r, dims=dims))
        for r in radii
    ]
    growing_ranks = ranks[-1] > ranks[0]
    passed = (
        not report.fredholm
        and report.character == chi
        and growing_counts
        and growing_ranks
    )
    return SuiteCase(
        name=tag + "/infinite-index",
        prediction={"fredholm": False},
        oracle_value={
            "fredholm": report.fredholm,
            "interval_counts": counts,
            "rank_ladder": ranks,
        },
        passed=passed,
    )


# ---------------------------------------------------------------------------
# spectrum suite


def _connected(mask: np.ndarray) -> bool:
    if not mask.any():
        return True
    _, n = ndimage.label(mask, structure=_EIGHT)
    return n == 1


def _point_in_mask(smap: SpectralMap, mask: np.ndarray, lam: complex) -> bool:
    re0, re1, im0, im1 = smap.raster.bounds
    if not (re0 <= lam.real < re1 and im0 <= lam.imag < im1):
        return False
    res = smap.raster.resolution
    col = int((lam.real - re0) / (re1 - re0) * res)
    row = int((lam.imag - im0) / (im1 - im0) * res)
    return bool(mask[min(row, res - 1), min(col, res - 1)])


def max_abs_pixel(smap: SpectralMap, mask: np.ndarray) -> float:
    """Largest modulus over the centers of the masked pixels."""
    rows, cols = np.nonzero(mask)
    if rows.size == 0:
        return 0.0
    re0, re1, im0, im1 = smap.raster.bounds
    res = smap.raster.resolution
    re = re0 + (cols + 0.5) * (re1 - re0) / res
    im = im0 + (rows + 0.5) * (im1 - im0) / res
    return float(np.max(np.hypot(re, im)))


def _map_checks(tag: str, smap: SpectralMap, phi: SymbolExpr) -> list[SuiteCase]:
    cases = []
    essential_ok = _connected(smap.essential_mask)
    spectrum_ok = _connected(smap.spectrum_mask)
    cases.append(
        SuiteCase(
            name=tag + "/connectivity",
            prediction={"essential_connected": True, "spectrum_connected": True},
            oracle_value={
                "essential_connected": essential_ok,
                "spectrum_connected": spectrum_ok,
            },
            passed=essential_ok and spectrum_ok,
        )
    )
    radius = max_abs_pixel(smap, smap.spectrum_mask)
    sup = sup_norm_estimate(phi)
    tol = 2.0 * smap.raster.pixel_diag()
    cases.append(
        SuiteCase(
            name=tag + "/radius",
            prediction={"spectral_radius": sup, "tolerance": tol},
            oracle_value={"max_abs_spectrum_pixel": radius},
            passed=abs(radius - sup) <= tol,
        )
    )
    return cases


def run_spectrum_suite(
    order: OrderSpec,
    symbols: Sequence[SymbolExpr] | None = None,
    seed: int = 7,
    resolution: int = 256,
    config: GridConfig = GridConfig(),
) -> SuiteReport:
    """Spectral pictures for unimodular characters and exponentials.

    Checks the disk/circle pictures (hole of a finite-index character is
    spectrum-not-essential, hole of an infinite-index character is
    essential), plus connectivity and the spectral-radius identity for every
    configured symbol.
    """
    rng = np.random.default_rng(seed)
    xi = xi_subgroup(order)
    dims = order.bounded_dim or 2
    cases: list[SuiteCase] = []

    if symbols is None:
        listed: list[SymbolExpr] = []
        if not xi.is_trivial:
            listed.append(Mono(xi.generator))
        if _has_infinite_index_characters(order):
            listed.append(Mono(_random_off_axis_character(rng, order)))
        listed.append(Exp(Poly(random_exp_arg(rng, dims))))
        symbols = listed
    else:
        symbols = list(symbols)

    for k, phi in enumerate(symbols):
        tag = f"spectrum/{order.family}/sym{k:02d}"
        smap = spectral_picture(phi, order, resolution=resolution, config=config)
        cases.extend(_map_checks(tag, smap, phi))
        if isinstance(phi, Mono) and not phi.n.is_zero:
            hole_classes = [c.classification for c in smap.components if c.id > 0]
            want = (
                SPECTRUM_NONESSENTIAL
                if (not xi.is_trivial and phi.n.support == (xi.generator.entries[0][0],))
                else ESSENTIAL
            )
            cases.append(
                SuiteCase(
                    name=tag + "/hole-class",
                    prediction={"holes": [want]},
                    oracle_value={"holes": hole_classes},
                    passed=hole_classes == [want],
                )
            )
        if isinstance(phi, Exp):
            c = classify_point(0j, phi, order, config)
            zero_in_spectrum = _point_in_mask(smap, smap.spectrum_mask, 0j)
            passed = c.kind == RESOLVENT and not zero_in_spectrum
            cases.append(
                SuiteCase(
                    name=tag + "/exp-origin-resolvent",
                    prediction={"origin": RESOLVENT, "origin_in_spectrum": False},
                    oracle_value={"origin": c.kind, "origin_in_spectrum": zero_in_spectrum},
                    passed=passed,
                )
            )
    return SuiteReport(
        cases, seed, _snapshot(order, seed, len(symbols), config, resolution=resolution)
    ).finalize()


def _snapshot(
    order: OrderSpec,
    seed: int,
    n_cases: int,
    config: GridConfig,
    **extra,
) -> dict:
    snap = {
        "order": order.to_json_dict(),
        "seed": seed,
        "n_cases": n_cases,
        "grid_per_axis": config.grid_per_axis,
        "samples_per_loop": config.samples_per_loop,
        "min_modulus_tol": config.min_modulus_tol,
    }
    snap.update(extra)
    return snap
