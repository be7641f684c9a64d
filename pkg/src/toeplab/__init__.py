"""Toeplitz operators on Hardy spaces over tori with ordered duals.

Decides Fredholmness and computes the index of T_phi from the symbol's
character-times-exponential factorization, classifies the spectrum and
essential spectrum hole by hole, and cross-checks everything against a
finite-section matrix laboratory and brute-force lattice enumeration.
"""

__version__ = "0.1.0"

from .fredholm import (
    FredholmReport,
    GridConfig,
    analyze,
    invertibility_of_exponential,
    one_sided_witness,
)
from .lattice import (
    LatticePoint,
    OrderSpec,
    XiSubgroup,
    ZERO,
    brute_interval_points,
    compare,
    ind_character,
    is_positive,
    xi_subgroup,
)
from .sections import (
    ToeplitzMatrix,
    Window,
    adjoint_check,
    make_window,
    multiplicativity_check,
    norm_ladder,
    riesz_project,
    semicommutator_rank,
    truncated_toeplitz,
)
from .spectra import (
    SpectralMap,
    classify_point,
    holes,
    image_raster,
    spectral_picture,
)
from .suite import SuiteReport, run_index_suite, run_spectrum_suite
from .symbols import (
    Exp,
    Mono,
    Poly,
    Product,
    ShiftConst,
    Sum,
    SymbolExpr,
    TrigPoly,
    eval_at,
    fourier_coefficient,
    min_modulus,
    sup_norm_estimate,
)
from .winding import (
    LoopSamples,
    OriginTooCloseError,
    StepTooCoarseError,
    bvk_character,
    winding_number,
)

__all__ = [
    "FredholmReport",
    "GridConfig",
    "LatticePoint",
    "LoopSamples",
    "Mono",
    "Exp",
    "Poly",
    "Product",
    "ShiftConst",
    "Sum",
    "OrderSpec",
    "OriginTooCloseError",
    "SpectralMap",
    "StepTooCoarseError",
    "SuiteReport",
    "SymbolExpr",
    "ToeplitzMatrix",
    "TrigPoly",
    "Window",
    "XiSubgroup",
    "ZERO",
    "adjoint_check",
    "analyze",
    "brute_interval_points",
    "bvk_character",
    "classify_point",
    "compare",
    "eval_at",
    "fourier_coefficient",
    "holes",
    "image_raster",
    "ind_character",
    "invertibility_of_exponential",
    "is_positive",
    "make_window",
    "min_modulus",
    "multiplicativity_check",
    "norm_ladder",
    "one_sided_witness",
    "riesz_project",
    "run_index_suite",
    "run_spectrum_suite",
    "semicommutator_rank",
    "spectral_picture",
    "sup_norm_estimate",
    "truncated_toeplitz",
    "winding_number",
    "xi_subgroup",
]
