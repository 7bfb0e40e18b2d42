"""Function-correcting codes for locally bounded functions over F_2^k."""

from .analysis import (
    ChannelStats,
    OptimalityReport,
    VerificationReport,
    check_optimality_triple,
    redundancy_lower_bound,
    simulate_channel,
    verify_fcc,
)
from .bits import BitVector, enumerate_ball, hamming_distance, hamming_weight, repeat
from .codesearch import (
    BlockCode,
    SearchCertificate,
    generalized_plotkin,
    plotkin_bound,
    repetition_code_4,
    search_N_irregular,
    search_N_uniform,
)
from .distmat import (
    DistanceMatrix,
    build_drm,
    build_fdm,
    check_representative_condition,
    function_distance,
)
from .encoders import (
    AmbiguousDecode,
    FccEncoder,
    build_from_dcode,
    build_generic,
    build_hwdf_mod_a,
    build_hwdf_parity,
    build_lambda4,
    decode_function,
)
from .errors import *  # noqa: F401,F403
from .funcspace import (
    FiniteFunction,
    check_contiguity,
    compute_lambda,
    constant_function,
    cyclic_coloring,
    function_ball,
    hwdf_lambda_bound,
    lexicographic_rearrangement,
    table_function,
    weight_distribution,
    weight_function,
)

__version__ = "0.1.0"
