"""Small dense linear programs solved by a two-phase tableau simplex.

Pivoting follows Bland's rule (lowest-index entering column, lowest-index
basic variable among tied ratios), so the reported vertex is deterministic
even on degenerate or non-unique optima.  The pivot loop runs in the
compiled ``_simplex`` extension when it is importable and falls back to
``_simplex_py`` otherwise; set ``HDTWRC_BACKEND=python`` to force the
fallback.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass

import numpy as np

from . import _simplex_py
from .errors import ModelError

try:
    if os.environ.get("HDTWRC_BACKEND", "").lower() == "python":
        raise ImportError("pure-Python backend requested")
    from . import _simplex as _kernel

    BACKEND = "cython"
except ImportError:
    _kernel = _simplex_py
    BACKEND = "python"

KERNELS = {"python": _simplex_py}
if BACKEND == "cython":
    KERNELS["cython"] = _kernel

MAX_VARS = 16
MAX_ROWS = 32
PIVOT_TOL = 1e-11
FEAS_TOL = 1e-9


class Sense(enum.Enum):
    MAX = "max"
    MIN = "min"


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


_ROW_SENSES = ("<=", "=", ">=")


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """``max``/``min`` ``c @ x`` s.t. ``A[i] @ x (<=|=|>=) b[i]``, ``x >= 0``."""

    sense: Sense
    c: np.ndarray
    A: np.ndarray
    row_senses: tuple[str, ...]
    b: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).reshape(-1)
        A = np.asarray(self.A, dtype=float)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if A.size == 0:
            A = A.reshape(0, c.size)
        if A.ndim != 2:
            raise ModelError(f"constraint matrix must be 2-D, got shape {A.shape}")
        n = c.size
        m = A.shape[0]
        if A.shape[1] != n:
            raise ModelError(f"constraint matrix has {A.shape[1]} columns for {n} variables")
        if b.size != m or len(self.row_senses) != m:
            raise ModelError(f"{m} constraint rows but {b.size} right-hand sides and {len(self.row_senses)} senses")
        if n == 0 or n > MAX_VARS or m > MAX_ROWS:
            raise ModelError(f"problem size {n} variables x {m} rows outside 1..{MAX_VARS} x 0..{MAX_ROWS}")
        bad = [s for s in self.row_senses if s not in _ROW_SENSES]
        if bad:
            raise ModelError(f"unknown constraint senses {bad}")
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ModelError("linear program has non-finite coefficients")
        object.__setattr__(self, "sense", Sense(self.sense))
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "row_senses", tuple(self.row_senses))

    @property
    def n_vars(self) -> int:
        return self.c.size

    def residuals(self, x) -> np.ndarray:
        """Constraint violation per row (0 when satisfied)."""
        x = np.asarray(x, dtype=float)
        ax = self.A @ x
        out = np.zeros(len(self.b))
        for i, s in enumerate(self.row_senses):
            if s == "<=":
                out[i] = max(ax[i] - self.b[i], 0.0)
            elif s == ">=":
                out[i] = max(self.b[i] - ax[i], 0.0)
            else:
                out[i] = abs(ax[i] - self.b[i])
        return out


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: Status
    x: np.ndarray | None
    objective: float | None
    # final phase-2 tableau and basis, kept for optimality checks
    tableau: np.ndarray | None = None
    basis: np.ndarray | None = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def solve_lp(lp: LinearProgram, backend: str | None = None) -> LpSolution:
    kernel = _kernel if backend is None else KERNELS[backend]
    n = lp.n_vars
    A = lp.A.copy()
    b = lp.b.copy()
    senses = list(lp.row_senses)
    # make every right-hand side nonnegative
    for i in range(len(b)):
        if b[i] < 0.0:
            A[i] = -A[i]
            b[i] = -b[i]
            senses[i] = {"<=": ">=", ">=": "<=", "=": "="}[senses[i]]
    m = len(b)

    n_slack = sum(s != "=" for s in senses)
    art_rows = [i for i, s in enumerate(senses) if s != "<="]
    n_art = len(art_rows)
    n_cols = n + n_slack + n_art

    T = np.zeros((m + 1, n_cols + 1))
    T[:m, :n] = A
    T[:m, -1] = b
    basis = np.empty(m, dtype=np.intp)
    k_slack = n
    k_art = n + n_slack
    for i, s in enumerate(senses):
        if s == "<=":
            T[i, k_slack] = 1.0
            basis[i] = k_slack
            k_slack += 1
        elif s == ">=":
            T[i, k_slack] = -1.0
            k_slack += 1
        if s != "<=":
            T[i, k_art] = 1.0
            basis[i] = k_art
            k_art += 1

    max_iter = 50 * (m + n_cols) + 1000
    scale = max(1.0, float(np.max(np.abs(b))) if m else 1.0)

    if n_art:
        # phase 1: minimize the sum of artificials
        T[m, n + n_slack:n_cols] = 1.0
        for i in art_rows:
            T[m] -= T[i]
        status, _ = kernel.run_simplex(T, basis, n_cols, PIVOT_TOL, max_iter)
        if status != _simplex_py.OPTIMAL or -T[m, -1] > FEAS_TOL * scale:
            return LpSolution(Status.INFEASIBLE, None, None)
        # drive remaining (zero-level) artificials out of the basis
        keep = np.ones(m, dtype=bool)
        for i in range(m):
            if basis[i] >= n + n_slack:
                cols = np.flatnonzero(np.abs(T[i, :n + n_slack]) > PIVOT_TOL)
                if cols.size:
                    kernel.pivot(T, basis, i, int(cols[0]))
                else:
                    keep[i] = False  # redundant equality
        T = np.ascontiguousarray(np.vstack([T[:m][keep][:, list(range(n + n_slack)) + [n_cols]], np.zeros((1, n + n_slack + 1))]))
        basis = np.ascontiguousarray(basis[keep])
        m = len(basis)
        n_cols = n + n_slack

    cost = np.zeros(n_cols)
    cost[:n] = -lp.c if lp.sense is Sense.MAX else lp.c
    T[m, :n_cols] = cost
    T[m, -1] = 0.0
    for i in range(m):
        cb = cost[basis[i]]
        if cb != 0.0:
            T[m] -= cb * T[i]
    status, _ = kernel.run_simplex(T, basis, n_cols, PIVOT_TOL, max_iter)
    if status == _simplex_py.UNBOUNDED:
        return LpSolution(Status.UNBOUNDED, None, None)
    if status != _simplex_py.OPTIMAL:
        raise RuntimeError("simplex iteration limit reached despite Bland's rule")

    z = np.zeros(n_cols)
    z[basis] = np.maximum(T[:m, -1], 0.0)
    x = z[:n]
    return LpSolution(Status.OPTIMAL, x, float(lp.c @ x), tableau=T, basis=basis.copy())
