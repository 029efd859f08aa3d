"""String covers and approximate string covers."""

from .core import (
    CoverSolution,
    OverlapSet,
    Tiling,
    TilingConflict,
    Word,
    as_word,
    expand,
    is_cover,
    is_valid_tiling,
    legal_overlaps,
    shortest_cover,
)
from .metrics import (
    INF,
    ExtendedMetric,
    Hamming,
    PositionalMetric,
    PseudometricTable,
    ShiftMetric,
    SuperadditiveMetric,
    TableMetric,
    distance,
    induced_extended_metric,
    squared_hamming,
    validate_pseudometric,
)
from .solvers import (
    ResourceError,
    approx_acp,
    best_tile_for_tiling,
    best_tiling_for_tile,
    brute_force_general,
    brute_force_oracle,
    efficiency,
    fpt_acp,
    fpt_acp_superadditive,
)
from .pseudo import QuotientMap, acp_pseudometric, compute_quotient, factorize_word, lift_solution
from .blockcode import (
    BlockCodeParams,
    block_acp_check,
    decode_word,
    encode_word,
    psi_decode,
    psi_encode,
    tau_decode,
    tau_encode,
)

__version__ = "0.1.0"
