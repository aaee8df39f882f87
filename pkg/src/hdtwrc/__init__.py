"""Rate regions and time-allocation LPs for the restricted half-duplex two-way relay channel."""

__version__ = "0.1.0"

from .allocator import AllocationResult, Objective, allocate_min_cost, allocate_rate_objective, maxmin_rate
from .core import (
    EPS_FEAS,
    Kind,
    NetworkState,
    RateConstraint,
    RatePair,
    RateRegionSpec,
    RegionLabel,
    TimeAllocation,
    phase_state,
    rates_feasible,
    validate_allocation,
)
from .gaussian import (
    ChannelGains,
    CoherenceParams,
    PhaseMiTable,
    PlaneNetwork,
    PowerConstraints,
    awgn_capacity,
    channel_gain,
    df_phase_mi,
    ub_phase_mi,
)
from .lp import BACKEND, LinearProgram, LpSolution, Sense, Status, solve_lp
from .region import (
    SubRateSplit,
    inner_region_df,
    outer_region,
    restrict_region,
    twc_region,
    validate_rate_split,
)
