# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: phased-Givens basis, dephased conditional entropy, simplex descent.

Mirrors ``_kernels_py`` and ``optimize.nelder_mead`` operation for operation.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, log2, sqrt
from libc.stdlib cimport malloc, free
from scipy.linalg.cython_lapack cimport zheev

from .optimize import SimplexResult

cnp.import_array()

NAME = "compiled"


cdef struct Workspace:
    int m
    int rest
    const double complex* r
    double offset
    double complex* u
    double complex* tmp
    double complex* blk
    double* w
    double complex* work
    int lwork
    double* rwork


cdef void _givens(int m, const double* x, double complex* u) noexcept nogil:
    cdef int i, j, a, k = 0
    cdef double c, s
    cdef double complex ph, ci, cj
    for i in range(m * m):
        u[i] = 0
    for i in range(m):
        u[i * m + i] = 1
    for i in range(m):
        for j in range(i + 1, m):
            c = cos(x[k])
            s = sin(x[k])
            ph = cos(x[k + 1]) + 1j * sin(x[k + 1])
            for a in range(m):
                ci = u[a * m + i]
                cj = u[a * m + j]
                u[a * m + i] = c * ci + ph * s * cj
                u[a * m + j] = -ph.conjugate() * s * ci + c * cj
            k += 2


cdef inline double _xlogx(double v) noexcept nogil:
    if v > 0:
        return -v * log2(v)
    return 0.0


cdef double _objective(Workspace* ws, const double* x) noexcept nogil:
    cdef int m = ws.m, rest = ws.rest
    cdef int a, b, i, j, k, info, n
    cdef double total = 0.0, p, tr, dd, disc
    cdef double complex acc, uk
    cdef const double complex* r = ws.r
    cdef char jobz = b'N'
    cdef char uplo = b'L'
    _givens(m, x, ws.u)
    for k in range(m):
        # tmp[a, i, j] = sum_b r[a, i, b, j] u[b, k]
        for a in range(m):
            for i in range(rest):
                for j in range(rest):
                    acc = 0
                    for b in range(m):
                        acc = acc + r[((a * rest + i) * m + b) * rest + j] * ws.u[b * m + k]
                    ws.tmp[(a * rest + i) * rest + j] = acc
        for i in range(rest):
            for j in range(rest):
                acc = 0
                for a in range(m):
                    acc = acc + ws.u[a * m + k].conjugate() * ws.tmp[(a * rest + i) * rest + j]
                ws.blk[i * rest + j] = acc
        p = 0.0
        for i in range(rest):
            p += ws.blk[i * rest + i].real
        total -= _xlogx(p)
        if rest == 1:
            total += _xlogx(ws.blk[0].real)
        elif rest == 2:
            tr = 0.5 * (ws.blk[0].real + ws.blk[3].real)
            dd = 0.5 * (ws.blk[0].real - ws.blk[3].real)
            disc = sqrt(dd * dd + ws.blk[1].real * ws.blk[1].real + ws.blk[1].imag * ws.blk[1].imag)
            total += _xlogx(tr + disc) + _xlogx(tr - disc)
        else:
            n = rest
            zheev(&jobz, &uplo, &n, ws.blk, &n, ws.w, ws.work, &ws.lwork, ws.rwork, &info)
            for i in range(rest):
                total += _xlogx(ws.w[i])
    return total + ws.offset


cdef class _Problem:
    cdef Workspace ws
    cdef object r_keep

    def __cinit__(self, r, double offset):
        arr = np.ascontiguousarray(r, dtype=np.complex128)
        if arr.ndim != 4 or arr.shape[0] != arr.shape[2] or arr.shape[1] != arr.shape[3]:
            raise ValueError(f"expected shape (m, rest, m, rest), got {arr.shape}")
        self.r_keep = arr
        cdef const double complex[:, :, :, ::1] view = arr
        cdef int m = arr.shape[0], rest = arr.shape[1]
        self.ws.m = m
        self.ws.rest = rest
        self.ws.r = &view[0, 0, 0, 0]
        self.ws.offset = offset
        self.ws.lwork = max(1, 4 * rest)
        self.ws.u = <double complex*> malloc(m * m * sizeof(double complex))
        self.ws.tmp = <double complex*> malloc(m * rest * rest * sizeof(double complex))
        self.ws.blk = <double complex*> malloc(rest * rest * sizeof(double complex))
        self.ws.w = <double*> malloc(rest * sizeof(double))
        self.ws.work = <double complex*> malloc(self.ws.lwork * sizeof(double complex))
        self.ws.rwork = <double*> malloc(max(1, 3 * rest) * sizeof(double))
        if (self.ws.u == NULL or self.ws.tmp == NULL or self.ws.blk == NULL or self.ws.w == NULL
                or self.ws.work == NULL or self.ws.rwork == NULL):
            raise MemoryError()

    def __dealloc__(self):
        free(self.ws.u)
        free(self.ws.tmp)
        free(self.ws.blk)
        free(self.ws.w)
        free(self.ws.work)
        free(self.ws.rwork)


def givens_basis(int m, params):
    cdef double[::1] x = np.ascontiguousarray(params, dtype=np.float64)
    if x.shape[0] != m * (m - 1):
        raise ValueError(f"expected {m * (m - 1)} parameters for m={m}, got {x.shape[0]}")
    out = np.empty((m, m), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    if m > 1:
        _givens(m, &x[0], &o[0, 0])
    else:
        o[0, 0] = 1
    return out


def gamma_objective(r, params, double offset):
    cdef _Problem prob = _Problem(r, offset)
    cdef double[::1] x = np.ascontiguousarray(params, dtype=np.float64)
    if x.shape[0] != prob.ws.m * (prob.ws.m - 1):
        raise ValueError("parameter count does not match the measured dimension")
    return _objective(&prob.ws, &x[0])


cdef void _sort(int n1, int n, double* sim, double* fsim, int* order, double* scratch) noexcept nogil:
    # stable insertion sort of the simplex rows by objective value
    cdef int i, j, key
    cdef double fk
    for i in range(n1):
        order[i] = i
    for i in range(1, n1):
        key = order[i]
        fk = fsim[key]
        j = i - 1
        while j >= 0 and fsim[order[j]] > fk:
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = key
    for i in range(n1):
        for j in range(n):
            scratch[i * n + j] = sim[order[i] * n + j]
    for i in range(n1 * n):
        sim[i] = scratch[i]
    for i in range(n1):
        scratch[i] = fsim[order[i]]
    for i in range(n1):
        fsim[i] = scratch[i]


def minimize_gamma(r, double offset, x0, double step, double tol, int max_iterations):
    """Simplex descent of the dephased objective; returns a ``SimplexResult``."""
    cdef _Problem prob = _Problem(r, offset)
    cdef double[::1] start = np.ascontiguousarray(x0, dtype=np.float64)
    cdef int n = start.shape[0]
    if n != prob.ws.m * (prob.ws.m - 1) or n == 0:
        raise ValueError("parameter count does not match the measured dimension")
    cdef int n1 = n + 1
    cdef double alpha = 1.0, chi = 1.0 + 2.0 / n, psi = 0.75 - 1.0 / (2.0 * n), sigma = 1.0 - 1.0 / n
    cdef double* sim = <double*> malloc(n1 * n * sizeof(double))
    cdef double* fsim = <double*> malloc(n1 * sizeof(double))
    cdef double* scratch = <double*> malloc(n1 * n * sizeof(double))
    cdef int* order = <int*> malloc(n1 * sizeof(int))
    cdef double* xbar = <double*> malloc(n * sizeof(double))
    cdef double* xr = <double*> malloc(n * sizeof(double))
    cdef double* xe = <double*> malloc(n * sizeof(double))
    if (sim == NULL or fsim == NULL or scratch == NULL or order == NULL or xbar == NULL
            or xr == NULL or xe == NULL):
        raise MemoryError()
    cdef int i, j, it = 0, nev = 0, best
    cdef double fr, fe, fmax, fmin
    cdef bint shrink
    cdef double* worst
    best_x = np.empty(n, dtype=np.float64)
    cdef double[::1] bx = best_x
    with nogil:
        for i in range(n1):
            for j in range(n):
                sim[i * n + j] = start[j]
            if i > 0:
                sim[i * n + i - 1] += step
            fsim[i] = _objective(&prob.ws, &sim[i * n])
        nev = n1
        while it < max_iterations:
            _sort(n1, n, sim, fsim, order, scratch)
            it += 1
            worst = &sim[n * n]
            for j in range(n):
                xbar[j] = 0.0
            for i in range(n):
                for j in range(n):
                    xbar[j] += sim[i * n + j]
            for j in range(n):
                xbar[j] /= n
            for j in range(n):
                xr[j] = xbar[j] + alpha * (xbar[j] - worst[j])
            fr = _objective(&prob.ws, xr)
            nev += 1
            shrink = False
            if fr < fsim[0]:
                for j in range(n):
                    xe[j] = xbar[j] + alpha * chi * (xbar[j] - worst[j])
                fe = _objective(&prob.ws, xe)
                nev += 1
                if fe < fr:
                    for j in range(n):
                        worst[j] = xe[j]
                    fsim[n] = fe
                else:
                    for j in range(n):
                        worst[j] = xr[j]
                    fsim[n] = fr
            elif fr < fsim[n - 1]:
                for j in range(n):
                    worst[j] = xr[j]
                fsim[n] = fr
            elif fr < fsim[n]:
                for j in range(n):
                    xe[j] = xbar[j] + psi * alpha * (xbar[j] - worst[j])
                fe = _objective(&prob.ws, xe)
                nev += 1
                if fe <= fr:
                    for j in range(n):
                        worst[j] = xe[j]
                    fsim[n] = fe
                else:
                    shrink = True
            else:
                for j in range(n):
                    xe[j] = xbar[j] - psi * (xbar[j] - worst[j])
                fe = _objective(&prob.ws, xe)
                nev += 1
                if fe < fsim[n]:
                    for j in range(n):
                        worst[j] = xe[j]
                    fsim[n] = fe
                else:
                    shrink = True
            if shrink:
                for i in range(1, n1):
                    for j in range(n):
                        sim[i * n + j] = sim[j] + sigma * (sim[i * n + j] - sim[j])
                    fsim[i] = _objective(&prob.ws, &sim[i * n])
                nev += n
            fmax = fsim[0]
            fmin = fsim[0]
            for i in range(1, n1):
                if fsim[i] > fmax:
                    fmax = fsim[i]
                if fsim[i] < fmin:
                    fmin = fsim[i]
            if fmax - fmin < tol:
                break
        best = 0
        for i in range(1, n1):
            if fsim[i] < fsim[best]:
                best = i
        for j in range(n):
            bx[j] = sim[best * n + j]
        fr = fsim[best]
    free(sim)
    free(fsim)
    free(scratch)
    free(order)
    free(xbar)
    free(xr)
    free(xe)
    return SimplexResult(float(fr), best_x, it, nev)
