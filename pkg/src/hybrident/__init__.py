"""Classification, finite embedding, quantification and witnessing of qudit-qumode entanglement."""

from .channels import ChannelParams, fock_sum_output, thermal_dilation_output, zero_temp_output
from .density import DensityMatrix, fidelity, pure_density, trace_distance
from .errors import (
    CutoffInsufficient,
    DimensionZero,
    DimsMismatch,
    HybridEntError,
    InvalidFamilyParams,
    InvalidState,
    InvalidX,
    NonRealResult,
    NotNormalized,
    NotPSD,
    OverlapOutOfRange,
    TrulyHybridInput,
    WrongDims,
)
from .fock import TruncatedFockSpace, gaussianity_check, qudit_mode_ops, wigner
from .gram import Embedding, GramMatrix, build_gram, inverse_gram_schmidt, numerical_rank
from .measures import (
    concurrence,
    embed_state,
    entropy_of_entanglement,
    log_negativity,
    schmidt,
    tripartite_embed,
    tripartite_tangle,
)
from .states import (
    UNBOUNDED,
    Classification,
    Coherent,
    FockVector,
    HybridState,
    PhotonAddedCoherent,
    Verdict,
    classify,
    effective_dimension_bound,
    overlap,
    state_from_json,
)
from .witness import (
    MomentSet,
    WitnessReport,
    moments_from_density,
    optimal_alpha,
    s_closed_thermal,
    s_geometric,
    s_prime_geometric,
    sv_determinant,
    witness_threshold,
)

__version__ = "0.1.0"
