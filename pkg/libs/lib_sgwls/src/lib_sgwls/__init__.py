"""Semi-global weighted least squares (SG-WLS) smoothing."""

import lib_common
from lib_sgwls.banded import (
    BandedFactors,
    BandedSystem,
    assemble_subsystem,
    backward_substitute,
    dense_solve_oracle,
    forward_substitute,
    rband_lu_factorize,
    solve_banded,
    solve_subsystem,
)
from lib_sgwls.config import Axis, SmoothConfig, WeightKind, WeightParams
from lib_sgwls.reference import SparseSystem, assemble_full, solve_full, wls_energy
from lib_sgwls.smoothing import (
    SparseField,
    interpolate_raster,
    interpolate_sparse,
    smooth,
    smooth_raster,
)
from lib_sgwls.snake import Band, band_centers, band_coords, extract_band, scatter_band
from lib_sgwls.weights import edge_weights_along_band, exp_weight, frac_weight

# Re-export common logger
logger = lib_common.logger

__all__ = [
    "Axis",
    "Band",
    "BandedFactors",
    "BandedSystem",
    "SmoothConfig",
    "SparseField",
    "SparseSystem",
    "WeightKind",
    "WeightParams",
    "assemble_full",
    "assemble_subsystem",
    "backward_substitute",
    "band_centers",
    "band_coords",
    "dense_solve_oracle",
    "edge_weights_along_band",
    "exp_weight",
    "extract_band",
    "forward_substitute",
    "frac_weight",
    "interpolate_raster",
    "interpolate_sparse",
    "rband_lu_factorize",
    "scatter_band",
    "smooth",
    "smooth_raster",
    "solve_banded",
    "solve_full",
    "solve_subsystem",
    "wls_energy",
]
