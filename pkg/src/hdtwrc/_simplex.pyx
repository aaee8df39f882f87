# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled pivot kernel; mirrors ``_simplex_py`` operation for operation."""

cdef double TIE_TOL = 1e-12

OPTIMAL = 0
UNBOUNDED = 1
ITERATION_LIMIT = 2


cdef void _pivot(double[:, ::1] T, Py_ssize_t[::1] basis, Py_ssize_t r, Py_ssize_t j) noexcept nogil:
    cdef Py_ssize_t m1 = T.shape[0]
    cdef Py_ssize_t nc = T.shape[1]
    cdef Py_ssize_t i, k
    cdef double piv = T[r, j]
    cdef double f
    for k in range(nc):
        T[r, k] = T[r, k] / piv
    for i in range(m1):
        if i == r:
            continue
        f = T[i, j]
        if f == 0.0:
            continue
        for k in range(nc):
            T[i, k] = T[i, k] - f * T[r, k]
        T[i, j] = 0.0
    T[r, j] = 1.0
    basis[r] = j


def pivot(double[:, ::1] T, Py_ssize_t[::1] basis, Py_ssize_t r, Py_ssize_t j):
    _pivot(T, basis, r, j)


cdef int _run(double[:, ::1] T, Py_ssize_t[::1] basis, Py_ssize_t ncols, double tol,
             Py_ssize_t max_iter, Py_ssize_t* n_iter) noexcept nogil:
    cdef Py_ssize_t m = T.shape[0] - 1
    cdef Py_ssize_t last = T.shape[1] - 1
    cdef Py_ssize_t it, i, j, r
    cdef double a, ratio, best, rhs
    for it in range(max_iter):
        n_iter[0] = it
        j = -1
        for i in range(ncols):
            if T[m, i] < -tol:
                j = i
                break
        if j < 0:
            return 0
        best = -1.0
        for i in range(m):
            a = T[i, j]
            if a > tol:
                rhs = T[i, last]
                if rhs < 0.0:
                    rhs = 0.0
                ratio = rhs / a
                if best < 0.0 or ratio < best:
                    best = ratio
        if best < 0.0:
            return 1
        r = -1
        for i in range(m):
            a = T[i, j]
            if a > tol:
                rhs = T[i, last]
                if rhs < 0.0:
                    rhs = 0.0
                ratio = rhs / a
                if ratio <= best + TIE_TOL * (1.0 + best):
                    if r < 0 or basis[i] < basis[r]:
                        r = i
        _pivot(T, basis, r, j)
    n_iter[0] = max_iter
    return 2


def run_simplex(double[:, ::1] T, Py_ssize_t[::1] basis, Py_ssize_t ncols, double tol, Py_ssize_t max_iter):
    """Bland's-rule primal simplex on ``T`` in place; returns ``(status, iterations)``."""
    cdef Py_ssize_t n_iter = 0
    cdef int status
    with nogil:
        status = _run(T, basis, ncols, tol, max_iter, &n_iter)
    return status, n_iter
