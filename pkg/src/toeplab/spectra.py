"""Spectral pictures: rasterize the symbol's range and classify its holes.

The spectrum and essential spectrum of a Toeplitz operator with continuous
symbol are the symbol's range plus some of the bounded complement components
(holes).  The classifying map is locally constant off the range, so one
representative per hole decides the whole hole:

* shifted character zero            -> resolvent,
* nonzero character of finite index -> spectrum but not essential spectrum
  (the nonzero Fredholm index is recorded),
* character of infinite index       -> essential spectrum.

Pixels on the (fattened) range itself always belong to the essential
spectrum.  The Weyl spectrum coincides with the spectrum here and is only
recorded as metadata.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy import ndimage

from .fredholm import GridConfig, analyze
from .lattice import OrderSpec
from .symbols import ShiftConst, SymbolExpr, grid_values

RESOLVENT = "resolvent"
SPECTRUM_NONESSENTIAL = "spectrum_nonessential"
ESSENTIAL = "essential"

# RGB colors for the PPM / figure rendering, one per class
CLASS_COLORS = {
    RESOLVENT: (255, 255, 255),
    SPECTRUM_NONESSENTIAL: (70, 130, 180),
    ESSENTIAL: (178, 34, 34),
}

_FOUR_CONNECTED = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)
_EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)

MIN_REPRESENTATIVE_DIST_PX = 3.0


@dataclass(frozen=True)
class RasterImage:
    """Pixel mask of the symbol's range over a complex-plane rectangle.

    Row index runs along the imaginary axis (row 0 at the bottom), column
    index along the real axis.
    """

    mask: np.ndarray
    bounds: tuple[float, float, float, float]  # re0, re1, im0, im1
    resolution: int

    def pixel_center(self, row: int, col: int) -> complex:
        re0, re1, im0, im1 = self.bounds
        dre = (re1 - re0) / self.resolution
        dim = (im1 - im0) / self.resolution
        return complex(re0 + (col + 0.5) * dre, im0 + (row + 0.5) * dim)

    def pixel_diag(self) -> float:
        re0, re1, im0, im1 = self.bounds
        dre = (re1 - re0) / self.resolution
        dim = (im1 - im0) / self.resolution
        return float(np.hypot(dre, dim))


def image_raster(
    phi: SymbolExpr,
    grid_per_axis: int | None = None,
    resolution: int = 512,
    fatten_px: int = 2,
    bounds: tuple[float, float, float, float] | None = None,
) -> RasterImage:
    """Rasterize the sampled range of the symbol.

    Bounds default to the tight box around the samples padded by 10% per
    side; the mask is dilated ``fatten_px`` times (cross structuring
    element) to close sampling gaps on thin curves.  The dilation widens the
    drawn sets by at most fatten_px pixels; callers comparing raster radii
    against analytic values should allow that much slack.
    """
    if resolution < 64:
        raise ValueError("resolution must be >= 64")
    values = grid_values(phi, grid_per_axis)
    re, im = values.real, values.imag
    if bounds is None:
        # square box around the samples, padded 10%, so pixels are square
        center_re = (float(re.min()) + float(re.max())) / 2.0
        center_im = (float(im.min()) + float(im.max())) / 2.0
        half = 0.6 * max(
            float(re.max()) - float(re.min()),
            float(im.max()) - float(im.min()),
        ) or 1.0
        bounds = (center_re - half, center_re + half, center_im - half, center_im + half)
    re0, re1, im0, im1 = bounds
    cols = np.clip(((re - re0) / (re1 - re0) * resolution).astype(int), 0, resolution - 1)
    rows = np.clip(((im - im0) / (im1 - im0) * resolution).astype(int), 0, resolution - 1)
    mask = np.zeros((resolution, resolution), dtype=bool)
    mask[rows, cols] = True
    if fatten_px > 0:
        mask = ndimage.binary_dilation(mask, structure=_FOUR_CONNECTED, iterations=fatten_px)
    return RasterImage(mask, bounds, resolution)


@dataclass(frozen=True)
class Hole:
    """A bounded complement component of the raster mask."""

    id: int
    pixel_count: int
    representative: complex
    representative_dist_px: float
    label: int


def holes(raster: RasterImage) -> list[Hole]:
    """Bounded 4-connected components of the mask complement.

    Each hole's representative is its pixel farthest from the mask (distance
    transform argmax, first in scan order on ties).
    """
    complement = ~raster.mask
    labels, n_labels = ndimage.label(complement, structure=_FOUR_CONNECTED)
    border = np.concatenate(
        [labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]]
    )
    unbounded = set(np.unique(border[border != 0]).tolist())
    dist = ndimage.distance_transform_edt(complement)
    out = []
    hole_id = 0
    for lab in range(1, n_labels + 1):
        if lab in unbounded:
            continue
        hole_id += 1
        where = labels == lab
        masked = np.where(where, dist, -1.0)
        flat = int(np.argmax(masked))
        row, col = divmod(flat, raster.resolution)
        out.append(
            Hole(
                id=hole_id,
                pixel_count=int(where.sum()),
                representative=raster.pixel_center(row, col),
                representative_dist_px=float(dist[row, col]),
                label=lab,
            )
        )
    return out


@dataclass(frozen=True)
class Classification:
    kind: str
    index: int | None = None


def classify_point(
    lam: complex,
    phi: SymbolExpr,
    order: OrderSpec,
    config: GridConfig = GridConfig(),
) -> Classification:
    """Classify one complement point by analyzing the shifted symbol."""
    report = analyze(ShiftConst(phi, -lam), order, config)
    if report.character is None:
        return Classification(ESSENTIAL)
    if report.character.is_zero:
        return Classification(RESOLVENT)
    if report.in_xi:
        return Classification(SPECTRUM_NONESSENTIAL, index=report.index)
    return Classification(ESSENTIAL)


@dataclass(frozen=True)
class Component:
    id: int
    classification: str
    index: int | None
    representative: complex | None
    pixel_count: int
    note: str = ""


@dataclass(frozen=True)
class SpectralMap:
    raster: RasterImage
    components: tuple[Component, ...]
    essential_mask: np.ndarray
    spectrum_mask: np.ndarray
    weyl_equals_spectrum: bool = True
    notes: dict[str, Any] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        re0, re1, im0, im1 = self.raster.bounds
        comps = []
        for c in self.components:
            entry: dict[str, Any] = {
                "id": c.id,
                "class": c.classification,
                "pixel_count": c.pixel_count,
            }
            if c.index is not None:
                entry["index"] = c.index
            if c.representative is not None:
                entry["representative"] = [c.representative.real, c.representative.imag]
            if c.note:
                entry["note"] = c.note
            comps.append(entry)
        return {
            "bounds": {"re": [re0, re1], "im": [im0, im1]},
            "resolution": self.raster.resolution,
            "components": comps,
            "weyl_spectrum_equals_spectrum": self.weyl_equals_spectrum,
            "image_pixel_count": int(self.raster.mask.sum()),
        }

    def class_image(self) -> np.ndarray:
        """(res, res, 3) uint8 image of the classification."""
        res = self.raster.resolution
        img = np.empty((res, res, 3), dtype=np.uint8)
        img[:] = CLASS_COLORS[RESOLVENT]
        img[self.spectrum_mask] = CLASS_COLORS[SPECTRUM_NONESSENTIAL]
        img[self.essential_mask] = CLASS_COLORS[ESSENTIAL]
        return img

    def to_ppm(self) -> str:
        """Plain (P3) portable pixmap, top row first; bit-exact per config."""
        img = self.class_image()
        res = self.raster.resolution
        lines = [f"P3\n{res} {res}\n255"]
        for row in range(res - 1, -1, -1):
            flat = img[row].ravel()
            # 5 pixels per line keeps lines under the plain-PPM 70-char limit
            for start in range(0, flat.size, 15):
                lines.append(" ".join(str(v) for v in flat[start:start + 15]))
        return "\n".join(lines) + "\n"


def spectral_picture(
    phi: SymbolExpr,
    order: OrderSpec,
    grid_per_axis: int | None = None,
    resolution: int = 512,
    fatten_px: int = 2,
    config: GridConfig = GridConfig(),
    recheck_points: int = 0,
    threads: int = 1,
    bounds: tuple[float, float, float, float] | None = None,
) -> SpectralMap:
    """Raster plus per-hole classification, one representative per hole.

    A representative closer than 3 pixels to the mask would make the winding
    ill-conditioned; such holes are conservatively merged into the essential
    spectrum with a note.  ``recheck_points`` > 0 re-classifies that many
    extra interior points per hole as a consistency check.
    """
    raster = image_raster(phi, grid_per_axis, resolution, fatten_px, bounds=bounds)
    hole_list = holes(raster)
    notes: dict[str, Any] = {}

    def classify_hole(hole: Hole) -> Component:
        if hole.representative_dist_px < MIN_REPRESENTATIVE_DIST_PX:
            return Component(
                id=hole.id,
                classification=ESSENTIAL,
                index=None,
                representative=hole.representative,
                pixel_count=hole.pixel_count,
                note="representative within 3px of image; conservatively essential",
            )
        c = classify_point(hole.representative, phi, order, config)
        note = ""
        if recheck_points > 0:
            note = _recheck(hole, raster, phi, order, config, c, recheck_points)
        return Component(
            id=hole.id,
            classification=c.kind,
            index=c.index,
            representative=hole.representative,
            pixel_count=hole.pixel_count,
            note=note,
        )

    if threads > 1 and len(hole_list) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            classified = list(pool.map(classify_hole, hole_list))
    else:
        classified = [classify_hole(h) for h in hole_list]
    classified.sort(key=lambda c: c.id)

    labels, _ = ndimage.label(~raster.mask, structure=_FOUR_CONNECTED)
    essential_mask = raster.mask.copy()
    spectrum_mask = raster.mask.copy()
    hole_by_id = {h.id: h for h in hole_list}
    for comp in classified:
        where = labels == hole_by_id[comp.id].label
        if comp.classification == ESSENTIAL:
            essential_mask |= where
            spectrum_mask |= where
        elif comp.classification == SPECTRUM_NONESSENTIAL:
            spectrum_mask |= where

    unbounded_count = int((~raster.mask).sum() - sum(h.pixel_count for h in hole_list))
    components = (
        Component(
            id=0,
            classification=RESOLVENT,
            index=0,
            representative=None,
            pixel_count=unbounded_count,
        ),
        *classified,
    )
    return SpectralMap(
        raster=raster,
        components=components,
        essential_mask=essential_mask,
        spectrum_mask=spectrum_mask,
        notes=notes,
    )


def _recheck(
    hole: Hole,
    raster: RasterImage,
    phi: SymbolExpr,
    order: OrderSpec,
    config: GridConfig,
    expected: Classification,
    n_points: int,
) -> str:
    labels, _ = ndimage.label(~raster.mask, structure=_FOUR_CONNECTED)
    dist = ndimage.distance_transform_edt(~raster.mask)
    where = (labels == hole.label) & (dist >= MIN_REPRESENTATIVE_DIST_PX)
    rows, cols = np.nonzero(where)
    if rows.size == 0:
        return ""
    stride = max(1, rows.size // n_points)
    mismatches = 0
    for k in range(0, rows.size, stride):
        c = classify_point(raster.pixel_center(int(rows[k]), int(cols[k])), phi, order, config)
        if (c.kind, c.index) != (expected.kind, expected.index):
            mismatches += 1
    return f"recheck mismatches: {mismatches}" if mismatches else ""
