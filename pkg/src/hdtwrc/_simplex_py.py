"""Pure-Python/numpy pivot kernel; same contract as the compiled ``_simplex``.

Tableau layout: rows ``0..m-1`` are ``[A | b]``, row ``m`` holds the
reduced costs of a minimization with ``-z`` in the last column.
"""

import numpy as np

OPTIMAL = 0
UNBOUNDED = 1
ITERATION_LIMIT = 2

# relative slack under which two ratios count as tied
TIE_TOL = 1e-12


def pivot(T, basis, r, j):
    T[r] /= T[r, j]
    col = T[:, j].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r])
    T[:, j] = 0.0
    T[r, j] = 1.0
    basis[r] = j


def run_simplex(T, basis, ncols, tol, max_iter):
    """Bland's-rule primal simplex on ``T`` in place.

    Only columns ``< ncols`` may enter.  Returns ``(status, iterations)``.
    """
    m = T.shape[0] - 1
    for it in range(max_iter):
        cand = np.flatnonzero(T[m, :ncols] < -tol)
        if cand.size == 0:
            return OPTIMAL, it
        j = cand[0]
        col = T[:m, j]
        rows = np.flatnonzero(col > tol)
        if rows.size == 0:
            return UNBOUNDED, it
        ratios = np.maximum(T[rows, -1], 0.0) / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + TIE_TOL * (1.0 + best)]
        r = ties[np.argmin(basis[ties])]
        pivot(T, basis, r, j)
    return ITERATION_LIMIT, max_iter
