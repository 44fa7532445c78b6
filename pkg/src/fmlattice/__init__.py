"""Exact lattice computations for derived autoequivalences of bielliptic surfaces."""

from .errors import *  # noqa: F401,F403
from .mukai_lattice import (
    POINT,
    MukaiVector,
    divisor_chi,
    divisor_square,
    euler_chi,
    fiber_degree,
    is_isotropic,
    is_primitive,
    pairing,
)
from .reduction_engine import (
    GeneratorWord,
    ReductionReport,
    erd_degree_kill,
    erd_rank_kill,
    ext_gcd,
    orbit_bfs_oracle,
    realize_tensor,
    reduce_vector,
    solve_final_rfm,
)
from .surface_model import SurfaceType, all_types, lookup_type, rank_of_G
from .transform_matrices import (
    Mat2,
    Mat4,
    Rfm1,
    Rfm2,
    Shift,
    Twist,
    apply,
    generator_matrix,
    gram,
    is_in_gamma,
    kron,
    kron_factor,
    normalized_rfm_matrix,
    preserves_pairing,
    rfm_matrix,
    shift_matrix,
    tensor_group_member,
    twist_matrix,
)

__version__ = "0.1.0"
