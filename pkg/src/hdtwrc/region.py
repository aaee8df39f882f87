"""Rate regions assembled from a PhaseMiTable.

* ``outer_region``: cut-set bound, two cuts per direction.
* ``inner_region_df``: decode-and-forward achievable region; the relay
  decodes in phases 1-3 and forwards in phases 4-6.  Phase time-shares of
  zero are admitted (closure of the region).
* ``twc_region``: direct exchange without the relay (phases 1 and 2 only).

``validate_rate_split`` checks a rate pair against the per-decoder
constraints of the DF code itself, where each message is split into six
sub-messages routed over different phases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    ALL_PHASES,
    N_PHASES,
    Kind,
    RateConstraint,
    RatePair,
    RateRegionSpec,
    RegionLabel,
    validate_allocation,
)
from .gaussian import PhaseMiTable
from .lp import LinearProgram, Sense, solve_lp

SPLIT_SUM_TOL = 1e-7


def _row(kind, **by_phase):
    coeffs = [0.0] * N_PHASES
    for key, v in by_phase.items():
        coeffs[int(key[1:]) - 1] = v
    return RateConstraint(kind, tuple(coeffs))


def outer_region(mi: PhaseMiTable) -> RateRegionSpec:
    return RateRegionSpec(
        (
            _row(Kind.R13, t1=mi.i1_23, t3=mi.i1_2g3, t6=mi.i1_3g2),
            _row(Kind.R13, t1=mi.i1_3, t4=mi.i2_3, t6=mi.i12_3),
            _row(Kind.R31, t2=mi.i3_12, t3=mi.i3_2g1, t5=mi.i3_1g2),
            _row(Kind.R31, t2=mi.i3_1, t4=mi.i2_1, t5=mi.i23_1),
        ),
        RegionLabel.OUTER,
    )


def inner_region_df(mi: PhaseMiTable) -> RateRegionSpec:
    return RateRegionSpec(
        (
            _row(Kind.R13, t1=mi.i1_2, t3=mi.i1_2g3, t6=mi.i1_3g2),
            _row(Kind.R13, t1=mi.i1_3, t4=mi.i2_3, t6=mi.i12_3),
            _row(Kind.R31, t2=mi.i3_2, t3=mi.i3_2g1, t5=mi.i3_1g2),
            _row(Kind.R31, t2=mi.i3_1, t4=mi.i2_1, t5=mi.i23_1),
            _row(Kind.SUM, t1=mi.i1_2, t2=mi.i3_2, t3=mi.i13_2, t5=mi.i3_1g2, t6=mi.i1_3g2),
        ),
        RegionLabel.INNER_DF,
    )


def twc_region(mi: PhaseMiTable) -> RateRegionSpec:
    return RateRegionSpec(
        (_row(Kind.R13, t1=mi.i1_3), _row(Kind.R31, t2=mi.i3_1)),
        RegionLabel.TWC,
    )


def restrict_region(region: RateRegionSpec, active) -> RateRegionSpec:
    """Zero the coefficients of every phase not in ``active``."""
    active = frozenset(int(l) for l in active)
    if not active <= ALL_PHASES:
        raise ValueError(f"active phases must be a subset of 1..{N_PHASES}, got {sorted(active)}")
    mask = np.array([l in active for l in range(1, N_PHASES + 1)], dtype=float)
    if mask.all():
        return region
    return region.with_coeffs(region.coeff_matrix() * mask)


@dataclass(frozen=True)
class SubRateSplit:
    """Rates of the twelve sub-messages; 1-6 carry W13, 7-12 carry W31."""

    rates: tuple[float, ...]

    def __post_init__(self):
        rates = tuple(float(r) for r in self.rates)
        if len(rates) != 12 or any(r < 0.0 for r in rates):
            raise ValueError("a sub-rate split has 12 nonnegative entries")
        object.__setattr__(self, "rates", rates)

    def __getitem__(self, m: int) -> float:
        return self.rates[m - 1]

    @property
    def r13(self) -> float:
        return sum(self.rates[:6])

    @property
    def r31(self) -> float:
        return sum(self.rates[6:])


def split_constraints(tau, mi: PhaseMiTable) -> list[tuple[tuple[int, ...], float]]:
    """Decoder constraints ``sum(r[m] for m in parts) < capacity``.

    Five at the relay, four at node 1, four at node 3.
    """
    t1, t2, t3, t4, t5, t6 = validate_allocation(tau).tau
    return [
        # relay
        ((1, 2, 3), t1 * mi.i1_2),
        ((7, 8, 9), t2 * mi.i3_2),
        ((4, 5), t3 * mi.i1_2g3),
        ((10, 11), t3 * mi.i3_2g1),
        ((4, 5, 10, 11), t3 * mi.i13_2),
        # node 1
        ((7, 10), t4 * mi.i2_1),
        ((8, 11), t5 * mi.i2_1p5),
        ((12,), t5 * mi.i3_1g2),
        ((9,), t2 * mi.i3_1),
        # node 3
        ((1, 4), t4 * mi.i2_3),
        ((2, 5), t6 * mi.i2_3p6),
        ((6,), t6 * mi.i1_3g2),
        ((3,), t1 * mi.i1_3),
    ]


def validate_rate_split(r: RatePair, tau, mi: PhaseMiTable, margin: float = 1e-6) -> SubRateSplit | None:
    """Find sub-message rates meeting every decoder constraint, or None.

    Strict inequalities are relaxed to ``<= capacity + margin``.
    """
    if not margin > 0.0:
        raise ValueError(f"margin must be positive, got {margin!r}")
    if not isinstance(r, RatePair):
        r = RatePair(*r)
    rows = split_constraints(tau, mi)
    A = np.zeros((len(rows) + 2, 12))
    b = np.zeros(len(rows) + 2)
    for i, (parts, cap) in enumerate(rows):
        A[i, [m - 1 for m in parts]] = 1.0
        b[i] = cap + margin
    A[-2, :6] = 1.0
    A[-1, 6:] = 1.0
    b[-2:] = r.r13, r.r31
    senses = ("<=",) * len(rows) + ("=", "=")
    sol = solve_lp(LinearProgram(Sense.MIN, np.zeros(12), A, senses, b))
    if not sol.optimal:
        return None
    split = SubRateSplit(tuple(sol.x))
    if abs(split.r13 - r.r13) > SPLIT_SUM_TOL or abs(split.r31 - r.r31) > SPLIT_SUM_TOL:
        return None
    return split
