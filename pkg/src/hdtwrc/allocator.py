"""Optimal time allocation over the six phases for a fixed rate region.

With the MI table held fixed every bound is linear in (tau, R13, R31), so
each objective is one small LP:

    variables  tau_1..tau_6, R13, R31 [, t]
    subject to lhs_k(R13, R31) <= coeffs_k . tau   for every region row k
               sum(tau) <= 1                       (idle time allowed)

MAXMIN adds ``t <= R13``, ``t <= R31`` and maximizes ``t``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import EPS_FEAS, N_PHASES, RatePair, RateRegionSpec, TimeAllocation, rates_feasible
from .errors import ModelError
from .lp import LinearProgram, Sense, Status, solve_lp


class Objective(enum.Enum):
    SRMAX = "srmax"
    WSRMAX = "wsrmax"
    MAXMIN = "maxmin"


@dataclass(frozen=True)
class AllocationResult:
    status: Status
    tau: TimeAllocation | None
    rates: RatePair | None
    value: float
    beta: float | None = None
    gamma: float | None = None

    @property
    def feasible(self) -> bool:
        return self.status is Status.OPTIMAL

    def as_dict(self) -> dict:
        return {
            "status": self.status.value,
            "tau": list(self.tau.tau) if self.tau is not None else None,
            "r13": self.rates.r13 if self.rates is not None else None,
            "r31": self.rates.r31 if self.rates is not None else None,
            "value": self.value if math.isfinite(self.value) else None,
            "beta": self.beta,
            "gamma": self.gamma,
        }


def _check_region(region):
    if not isinstance(region, RateRegionSpec):
        raise ModelError(f"expected a RateRegionSpec, got {type(region).__name__}")


def _clean_tau(x) -> TimeAllocation:
    tau = np.maximum(np.asarray(x[:N_PHASES], dtype=float), 0.0)
    total = tau.sum()
    if total > 1.0:
        # roundoff only; LP feasibility guarantees total <= 1 + tiny
        tau = tau / total
    return TimeAllocation(tuple(tau))


def rate_objective_lp(region: RateRegionSpec, objective, lam: float | None = None) -> LinearProgram:
    objective = Objective(objective)
    Q = region.coeff_matrix()
    W = region.rate_matrix()
    k = len(Q)
    n = N_PHASES + 2 + (objective is Objective.MAXMIN)
    A = np.zeros((k + 1 + 2 * (objective is Objective.MAXMIN), n))
    A[:k, :N_PHASES] = -Q
    A[:k, N_PHASES:N_PHASES + 2] = W
    A[k, :N_PHASES] = 1.0
    b = np.zeros(A.shape[0])
    b[k] = 1.0
    c = np.zeros(n)
    if objective is Objective.MAXMIN:
        A[k + 1, [N_PHASES, n - 1]] = (-1.0, 1.0)
        A[k + 2, [N_PHASES + 1, n - 1]] = (-1.0, 1.0)
        c[-1] = 1.0
    elif objective is Objective.SRMAX:
        c[N_PHASES:N_PHASES + 2] = 1.0
    else:
        if lam is None or not 0.0 <= lam <= 1.0:
            raise ModelError(f"WSRMAX needs a weight lambda in [0, 1], got {lam!r}")
        c[N_PHASES:N_PHASES + 2] = (lam, 1.0 - lam)
    return LinearProgram(Sense.MAX, c, A, ("<=",) * A.shape[0], b)


def allocate_rate_objective(
    region: RateRegionSpec,
    objective,
    lam: float | None = None,
    *,
    beta: float | None = None,
    gamma: float | None = None,
    backend: str | None = None,
) -> AllocationResult:
    """Maximize a rate objective over the time allocation.

    For MAXMIN the reported rates are the symmetric operating point
    ``(t, t)``.  ``beta``/``gamma`` are echoed into the result only.
    """
    _check_region(region)
    objective = Objective(objective)
    if objective is not Objective.WSRMAX and lam is not None:
        raise ModelError("lambda is only meaningful for WSRMAX")
    lp = rate_objective_lp(region, objective, lam)
    sol = solve_lp(lp, backend=backend)
    if not sol.optimal:
        # unreachable for well-formed regions: tau = 0, R = 0 is feasible and rates are bounded
        raise ModelError(f"rate allocation LP is {sol.status.value}")
    x = sol.x
    tau = _clean_tau(x)
    if objective is Objective.MAXMIN:
        t = max(float(x[-1]), 0.0)
        rates = RatePair(t, t)
    else:
        rates = RatePair(max(float(x[N_PHASES]), 0.0), max(float(x[N_PHASES + 1]), 0.0))
    return AllocationResult(Status.OPTIMAL, tau, rates, sol.objective, beta=beta, gamma=gamma)


def maxmin_rate(region: RateRegionSpec, backend: str | None = None) -> float:
    return allocate_rate_objective(region, Objective.MAXMIN, backend=backend).value


def allocate_min_cost(
    region: RateRegionSpec,
    target: RatePair,
    costs,
    *,
    beta: float | None = None,
    gamma: float | None = None,
    backend: str | None = None,
) -> AllocationResult:
    """Cheapest time allocation that supports ``target``.

    Returns a result with status INFEASIBLE when no allocation with
    ``sum(tau) <= 1`` reaches the target.
    """
    _check_region(region)
    if not isinstance(target, RatePair):
        target = RatePair(*target)
    costs = np.asarray(costs, dtype=float).reshape(-1)
    if costs.size != N_PHASES or not np.all(np.isfinite(costs)) or np.any(costs < 0.0):
        raise ModelError(f"need {N_PHASES} finite nonnegative phase costs, got {costs.tolist()}")
    Q = region.coeff_matrix()
    demand = region.rate_matrix() @ np.array(target.as_tuple())
    A = np.vstack([Q, np.ones(N_PHASES)])
    b = np.append(demand, 1.0)
    senses = (">=",) * len(Q) + ("<=",)
    sol = solve_lp(LinearProgram(Sense.MIN, costs, A, senses, b), backend=backend)
    if sol.status is Status.INFEASIBLE:
        return AllocationResult(Status.INFEASIBLE, None, target, math.nan, beta=beta, gamma=gamma)
    tau = _clean_tau(sol.x)
    if not rates_feasible(region, tau, target):
        # clipping pushed the point off the boundary by more than EPS_FEAS
        raise ModelError(f"min-cost allocation misses target by more than {EPS_FEAS}")
    return AllocationResult(Status.OPTIMAL, tau, target, sol.objective, beta=beta, gamma=gamma)
