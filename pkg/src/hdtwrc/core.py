"""Network states, phases, time allocations and linear rate constraints.

Every bound in the package is a list of inequalities of the form

    (rate selected by kind) <= sum_l coeffs[l] * tau[l],   l = 1..6

where ``kind`` selects R13, R31 or R13 + R31.  Rates are in bits per
channel use, ``tau`` is the fraction of channel uses spent in each phase.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ModelError, NonNegativityViolation, SimplexViolation

EPS_FEAS = 1e-9
N_PHASES = 6


@dataclass(frozen=True)
class NetworkState:
    """Transmit (1) / receive (0) flag of nodes 1, 2, 3 for one channel use."""

    s1: int
    s2: int
    s3: int

    def __post_init__(self):
        for flag in (self.s1, self.s2, self.s3):
            if flag not in (0, 1):
                raise ValueError(f"state flags must be 0 or 1, got {flag!r}")

    @property
    def transmitters(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, s in enumerate(self.as_tuple()) if s)

    @property
    def receivers(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, s in enumerate(self.as_tuple()) if not s)

    @property
    def is_relevant(self) -> bool:
        # all-transmit and all-receive carry no information
        return 0 < sum(self.as_tuple()) < 3

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.s1, self.s2, self.s3)


_PHASE_TABLE = {
    1: NetworkState(1, 0, 0),
    2: NetworkState(0, 0, 1),
    3: NetworkState(1, 0, 1),
    4: NetworkState(0, 1, 0),
    5: NetworkState(0, 1, 1),
    6: NetworkState(1, 1, 0),
    7: NetworkState(1, 1, 1),
    8: NetworkState(0, 0, 0),
}

ALL_PHASES = frozenset(range(1, N_PHASES + 1))


def phase_state(l: int) -> NetworkState:
    """Network state used by phase ``l`` (1..8)."""
    if isinstance(l, bool) or not isinstance(l, (int, np.integer)) or not 1 <= l <= 8:
        raise ValueError(f"phase index must be an integer in 1..8, got {l!r}")
    return _PHASE_TABLE[int(l)]


@dataclass(frozen=True)
class TimeAllocation:
    """Phase time-shares tau_1..tau_6; validated on construction."""

    tau: tuple[float, ...]

    def __post_init__(self):
        tau = tuple(float(t) for t in self.tau)
        object.__setattr__(self, "tau", tau)
        _check_simplex(tau)

    @classmethod
    def uniform(cls) -> "TimeAllocation":
        return cls((1.0 / N_PHASES,) * N_PHASES)

    def __getitem__(self, l: int) -> float:
        """Time share of phase ``l`` (1-based, like the phase ids)."""
        return self.tau[l - 1]

    def as_array(self) -> np.ndarray:
        return np.array(self.tau)

    @property
    def total(self) -> float:
        return math.fsum(self.tau)


def _check_simplex(tau: Sequence[float]) -> None:
    if len(tau) != N_PHASES:
        raise ValueError(f"time allocation needs {N_PHASES} entries, got {len(tau)}")
    for l, t in enumerate(tau, start=1):
        if not math.isfinite(t) or t < 0.0:
            raise NonNegativityViolation(f"tau_{l} = {t!r} is negative or not finite")
    total = math.fsum(tau)
    if total > 1.0 + EPS_FEAS:
        raise SimplexViolation(f"sum of tau is {total!r} > 1")


def validate_allocation(tau) -> TimeAllocation:
    """Check the simplex constraints and return the allocation.

    Raises NonNegativityViolation or SimplexViolation naming the first
    violated constraint.
    """
    if isinstance(tau, TimeAllocation):
        _check_simplex(tau.tau)
        return tau
    return TimeAllocation(tuple(tau))


@dataclass(frozen=True)
class RatePair:
    r13: float
    r31: float

    def __post_init__(self):
        for name in ("r13", "r31"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0.0:
                raise ValueError(f"{name} must be finite and >= 0, got {v!r}")
            object.__setattr__(self, name, v)

    def scaled(self, c: float) -> "RatePair":
        return RatePair(c * self.r13, c * self.r31)

    def as_tuple(self) -> tuple[float, float]:
        return (self.r13, self.r31)


class Kind(enum.Enum):
    R13 = "R13"
    R31 = "R31"
    SUM = "SUM"

    @property
    def weights(self) -> tuple[int, int]:
        """Multipliers of (R13, R31) on the left-hand side."""
        return {Kind.R13: (1, 0), Kind.R31: (0, 1), Kind.SUM: (1, 1)}[self]


class RegionLabel(enum.Enum):
    OUTER = "OUTER"
    INNER_DF = "INNER_DF"
    TWC = "TWC"


_EXPECTED_ROWS = {RegionLabel.OUTER: 4, RegionLabel.INNER_DF: 5, RegionLabel.TWC: 2}


@dataclass(frozen=True)
class RateConstraint:
    kind: Kind
    coeffs: tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if len(coeffs) != N_PHASES:
            raise ModelError(f"constraint needs {N_PHASES} phase coefficients, got {len(coeffs)}")
        if any(not math.isfinite(c) or c < 0.0 for c in coeffs):
            raise ModelError(f"phase coefficients must be finite and >= 0: {coeffs}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "kind", Kind(self.kind))

    def capacity(self, tau) -> float:
        t = tau.tau if isinstance(tau, TimeAllocation) else tau
        return math.fsum(c * x for c, x in zip(self.coeffs, t))

    def lhs(self, r: RatePair) -> float:
        w13, w31 = self.kind.weights
        return w13 * r.r13 + w31 * r.r31

    def coeff(self, l: int) -> float:
        return self.coeffs[l - 1]


@dataclass(frozen=True)
class RateRegionSpec:
    constraints: tuple[RateConstraint, ...]
    label: RegionLabel

    def __post_init__(self):
        constraints = tuple(self.constraints)
        label = RegionLabel(self.label)
        if not all(isinstance(c, RateConstraint) for c in constraints):
            raise ModelError("region constraints must be RateConstraint instances")
        if len(constraints) != _EXPECTED_ROWS[label]:
            raise ModelError(
                f"{label.value} region needs {_EXPECTED_ROWS[label]} constraints, got {len(constraints)}"
            )
        object.__setattr__(self, "constraints", constraints)
        object.__setattr__(self, "label", label)

    def __len__(self):
        return len(self.constraints)

    def __iter__(self):
        return iter(self.constraints)

    def coeff_matrix(self) -> np.ndarray:
        """(k, 6) array of phase coefficients, one row per constraint."""
        return np.array([c.coeffs for c in self.constraints], dtype=float)

    def rate_matrix(self) -> np.ndarray:
        """(k, 2) array of the 0/1 weights on (R13, R31)."""
        return np.array([c.kind.weights for c in self.constraints], dtype=float)

    def capacities(self, tau) -> np.ndarray:
        t = validate_allocation(tau).as_array()
        return self.coeff_matrix() @ t

    def scaled(self, c: float) -> "RateRegionSpec":
        return RateRegionSpec(
            tuple(RateConstraint(k.kind, tuple(c * x for x in k.coeffs)) for k in self.constraints),
            self.label,
        )

    def with_coeffs(self, coeffs: Iterable[Sequence[float]]) -> "RateRegionSpec":
        return RateRegionSpec(
            tuple(RateConstraint(k.kind, tuple(row)) for k, row in zip(self.constraints, coeffs)),
            self.label,
        )


def rates_feasible(region: RateRegionSpec, tau, r: RatePair) -> bool:
    """True iff every constraint of ``region`` holds at (r, tau) within EPS_FEAS."""
    tau = validate_allocation(tau)
    if not isinstance(r, RatePair):
        r = RatePair(*r)
    return all(c.lhs(r) <= c.capacity(tau) + EPS_FEAS for c in region.constraints)
