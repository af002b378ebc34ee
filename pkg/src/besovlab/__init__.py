"""Numerical laboratory for composition operators on 1-D Besov and Sobolev spaces."""

from ._kernels import USING_NUMBA
from .grid import (
    DEFAULT_COUNT,
    DEFAULT_WINDOW,
    Extension,
    GridFunction,
    SpaceParams,
    catalog_family,
    grid_derivative,
    linf_on_interval,
    lp_norm,
    sample,
)
from .norms import (
    DyadicHGrid,
    LPFilterBank,
    besov_norm_diff,
    besov_seminorm_diff,
    difference,
    embedding_lhs,
    littlewood_paley_norm,
    sobolev_norm_diff,
    sobolev_norm_fourier,
    sobolev_seminorm_diff,
)
from .maps import (
    IntervalSet,
    LineMap,
    M_functional,
    U_functional,
    UnboundedPreimageError,
    compose,
    derivative,
    lipschitz_constant,
    max_preimage_count,
    named_map,
    preimage_intervals,
)
from .splitting import IntervalFamily, Partition, intersection_degree, split_partition
from .gadgets import eta_eps, linear_cutoff, unit_bump, zigzag_g
from .multipliers import PsiBump, make_psi, msq_norm_lower, multiplier_norm_lower, unif_norm
from .theorems import CheckReport, RangeGateError, classify, opnorm_lower

__version__ = "0.1.0"
