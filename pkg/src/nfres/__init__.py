"""Resolution of near-field beamforming for uniform planar and linear arrays."""

from .array_model import (
    ArrayConfig,
    PhaseModel,
    SteeringVector,
    UserLocation,
    channel_gain,
    element_position,
    exact_distance,
    fresnel_distance,
    rayleigh_distance,
    steering_vector,
    user_cartesian,
)
from .regime import (
    Regime,
    RegimeReport,
    angle_domain_bound,
    beta_threshold_ula,
    beta_threshold_upa,
    classify,
    distance_threshold,
    remark1_bound,
)
from .resolution import (
    ContractError,
    Method,
    PairParams,
    ResolutionResult,
    compute_delta,
    delta_closed_form,
    delta_from_params,
    delta_oracle,
    delta_sum_oracle,
    delta_ula,
    pair_params,
    phi_kernel,
)

__version__ = "0.1.0"
