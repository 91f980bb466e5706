# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: sine/cosine integrals and the dense symmetric eigensolver.

Every function here has a line-for-line counterpart in ``_kernels_py``; the two
must agree to rounding. Inputs are validated by the public wrappers, not here.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, log, fabs, sqrt, hypot, copysign

cnp.import_array()

cdef double EULER_GAMMA = 0.5772156649015329
cdef double PI_2 = 1.5707963267948966
cdef double EPS = 2.220446049250313e-16
cdef double FPMIN = 1e-300
cdef int CF_MAX_ITER = 100000


cdef inline void _sici(double x, double crossover, double *si, double *ci) noexcept nogil:
    # x > 0 assumed
    cdef double term, s, c, x2, t
    cdef double br, bi, cr, ci_, dr, di, hr, hi, a, denr, deni, den, delr, deli, tr, ti, cx, sx
    cdef int n, i
    if x <= crossover:
        x2 = x * x
        # Si = sum (-1)^n x^(2n+1) / ((2n+1)(2n+1)!)
        term = x
        s = x
        n = 0
        while True:
            n += 1
            term = -term * x2 / ((2.0 * n) * (2.0 * n + 1.0))
            t = term / (2.0 * n + 1.0)
            s += t
            if fabs(t) < EPS * 1e-2 * fabs(s):
                break
        # Ci = gamma + ln x + sum_{n>=1} (-1)^n x^(2n) / ((2n)(2n)!)
        term = 1.0
        c = 0.0
        n = 0
        while True:
            n += 1
            term = -term * x2 / ((2.0 * n - 1.0) * (2.0 * n))
            t = term / (2.0 * n)
            c += t
            if fabs(t) < EPS * 1e-2 * (fabs(c) + 1e-300) or n > 200:
                break
        si[0] = s
        ci[0] = EULER_GAMMA + log(x) + c
        return
    # modified Lentz continued fraction for E1(ix) = -Ci(x) + i (Si(x) - pi/2)
    br = 1.0
    bi = x
    cr = 1.0 / FPMIN
    ci_ = 0.0
    den = br * br + bi * bi
    dr = br / den
    di = -bi / den
    hr = dr
    hi = di
    for i in range(2, CF_MAX_ITER):
        a = -(i - 1.0) * (i - 1.0)
        br += 2.0
        # d = 1 / (a*d + b)
        denr = a * dr + br
        deni = a * di + bi
        den = denr * denr + deni * deni
        dr = denr / den
        di = -deni / den
        # c = b + a / c
        den = cr * cr + ci_ * ci_
        cr = br + a * cr / den
        ci_ = bi - a * ci_ / den
        delr = cr * dr - ci_ * di
        deli = cr * di + ci_ * dr
        tr = hr * delr - hi * deli
        ti = hr * deli + hi * delr
        hr = tr
        hi = ti
        if fabs(delr - 1.0) + fabs(deli) < EPS:
            break
    cx = cos(x)
    sx = sin(x)
    tr = cx * hr + sx * hi
    ti = cx * hi - sx * hr
    ci[0] = -tr
    si[0] = PI_2 + ti


def sici_scalar(double x, double crossover):
    """Return ``(Si(x), Ci(x))`` for ``x > 0``."""
    cdef double s, c
    _sici(x, crossover, &s, &c)
    return s, c


def sici_array(cnp.ndarray x_in, double crossover):
    """Vectorised ``sici_scalar`` over a float64 array of positive values."""
    cdef cnp.ndarray[double, ndim=1] x = np.ascontiguousarray(x_in, dtype=np.float64).ravel()
    cdef Py_ssize_t n = x.shape[0], i
    cdef cnp.ndarray[double, ndim=1] s = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] c = np.empty(n)
    cdef double[::1] xv = x, sv = s, cv = c
    with nogil:
        for i in range(n):
            _sici(xv[i], crossover, &sv[i], &cv[i])
    shape = np.shape(x_in)
    return s.reshape(shape), c.reshape(shape)


def tridiagonalize(a_in, bint want_q):
    """Householder reduction of a symmetric matrix to tridiagonal form.

    Only the lower triangle of ``a_in`` is read. Returns ``(d, e, q)`` where
    ``d`` is the diagonal, ``e`` the sub-diagonal (length n-1) and ``q`` the
    orthogonal matrix with ``q.T @ a @ q`` tridiagonal (``None`` unless
    ``want_q``).
    """
    cdef double[:, ::1] a = np.array(a_in, dtype=np.float64, order="C", copy=True)
    cdef Py_ssize_t n = a.shape[0]
    cdef cnp.ndarray[double, ndim=1] d_arr = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] e_arr = np.zeros(max(n - 1, 0))
    cdef cnp.ndarray[double, ndim=1] beta_arr = np.zeros(n)
    cdef cnp.ndarray[double, ndim=1] work = np.zeros(n)
    cdef double[::1] d = d_arr, e = e_arr, beta = beta_arr, p = work
    cdef double[:, ::1] qv
    cdef Py_ssize_t k, i, j, m0
    cdef double norm, alpha, vv, bt, s, vi, kk, wi, xm
    with nogil:
        for k in range(n - 2):
            m0 = k + 1
            # v := column k below the diagonal divided by its largest entry (keeps the
            # squares away from underflow), stored in row k (upper part, unused otherwise)
            xm = 0.0
            for i in range(m0, n):
                if fabs(a[i, k]) > xm:
                    xm = fabs(a[i, k])
            if xm == 0.0:
                e[k] = 0.0
                beta[k] = 0.0
                continue
            norm = 0.0
            for i in range(m0, n):
                a[k, i] = a[i, k] / xm
                norm += a[k, i] * a[k, i]
            norm = sqrt(norm)
            alpha = -copysign(norm, a[k, m0])
            a[k, m0] -= alpha
            vv = 0.0
            for i in range(m0, n):
                vv += a[k, i] * a[k, i]
            bt = 2.0 / vv
            beta[k] = bt
            e[k] = alpha * xm
            # p = bt * A22 v, lower triangle only
            for i in range(m0, n):
                p[i] = 0.0
            for i in range(m0, n):
                vi = a[k, i]
                s = a[i, i] * vi
                for j in range(m0, i):
                    s += a[i, j] * a[k, j]
                    p[j] += a[i, j] * vi
                p[i] += s
            kk = 0.0
            for i in range(m0, n):
                p[i] *= bt
                kk += a[k, i] * p[i]
            kk *= 0.5 * bt
            for i in range(m0, n):
                p[i] -= kk * a[k, i]
            # A22 -= v w^T + w v^T
            for i in range(m0, n):
                vi = a[k, i]
                wi = p[i]
                for j in range(m0, i + 1):
                    a[i, j] -= vi * p[j] + wi * a[k, j]
        for i in range(n):
            d[i] = a[i, i]
        if n >= 2:
            e[n - 2] = a[n - 1, n - 2]
    if not want_q:
        return d_arr, e_arr, None
    q_arr = np.eye(n)
    qv = q_arr
    with nogil:
        for k in range(n - 3, -1, -1):
            bt = beta[k]
            if bt == 0.0:
                continue
            m0 = k + 1
            # r = v^T Q[m0:, m0:]
            for j in range(m0, n):
                p[j] = 0.0
            for i in range(m0, n):
                vi = a[k, i]
                for j in range(m0, n):
                    p[j] += vi * qv[i, j]
            for i in range(m0, n):
                vi = bt * a[k, i]
                for j in range(m0, n):
                    qv[i, j] -= vi * p[j]
    return d_arr, e_arr, q_arr


def tql_implicit(d_in, e_in, z_in, int max_iter, double tol):
    """Implicit-shift QL on a symmetric tridiagonal matrix.

    ``z_in`` (n x n or ``None``) is post-multiplied by the accumulated
    rotations. An off-diagonal is negligible once
    ``|e_m| <= tol * (|d_m| + |d_m+1|)``. Returns ``(d, z, failed)`` where ``failed`` is the index of the
    eigenvalue that did not converge within ``max_iter`` sweeps, or -1.
    Eigenvalues are returned unsorted.
    """
    cdef cnp.ndarray[double, ndim=1] d_arr = np.array(d_in, dtype=np.float64, copy=True)
    cdef Py_ssize_t n = d_arr.shape[0]
    cdef cnp.ndarray[double, ndim=1] e_arr = np.zeros(n)
    if n > 1:
        e_arr[: n - 1] = e_in
    cdef double[::1] d = d_arr, e = e_arr
    cdef bint want_z = z_in is not None
    cdef double[:, ::1] zt
    if want_z:
        zt_arr = np.ascontiguousarray(np.asarray(z_in, dtype=np.float64).T)
    else:
        zt_arr = np.zeros((1, 1))
    zt = zt_arr
    cdef Py_ssize_t l, m, i, k
    cdef int it
    cdef int failed = -1
    cdef double dd, g, r, s, c, p, f, b, zi, zi1
    cdef bint early
    with nogil:
        for l in range(n):
            it = 0
            while True:
                m = l
                while m < n - 1:
                    dd = fabs(d[m]) + fabs(d[m + 1])
                    if fabs(e[m]) <= tol * dd:
                        break
                    m += 1
                if m == l:
                    break
                if it == max_iter:
                    failed = l
                    break
                it += 1
                g = (d[l + 1] - d[l]) / (2.0 * e[l])
                r = hypot(g, 1.0)
                g = d[m] - d[l] + e[l] / (g + copysign(r, g))
                s = 1.0
                c = 1.0
                p = 0.0
                early = False
                i = m - 1
                while i >= l:
                    f = s * e[i]
                    b = c * e[i]
                    r = hypot(f, g)
                    e[i + 1] = r
                    if r == 0.0:
                        d[i + 1] -= p
                        e[m] = 0.0
                        early = True
                        break
                    s = f / r
                    c = g / r
                    g = d[i + 1] - p
                    r = (d[i] - g) * s + 2.0 * c * b
                    p = s * r
                    d[i + 1] = g + p
                    g = c * r - b
                    if want_z:
                        for k in range(zt.shape[1]):
                            zi1 = zt[i + 1, k]
                            zi = zt[i, k]
                            zt[i + 1, k] = s * zi + c * zi1
                            zt[i, k] = c * zi - s * zi1
                    i -= 1
                if early:
                    continue
                d[l] -= p
                e[l] = g
                e[m] = 0.0
            if failed >= 0:
                break
    z_out = np.ascontiguousarray(zt_arr.T) if want_z else None
    return d_arr, z_out, failed


cdef inline Py_ssize_t _sturm(double[::1] d, double[::1] e2, double x, double pivmin) noexcept nogil:
    cdef Py_ssize_t n = d.shape[0], i, count = 0
    cdef double q = d[0] - x
    if fabs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, n):
        q = d[i] - x - e2[i - 1] / q
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def sturm_count(d_in, e_in, double x):
    """Number of eigenvalues of the tridiagonal matrix strictly below ``x``."""
    cdef double[::1] d = np.ascontiguousarray(d_in, dtype=np.float64)
    e2_arr = np.ascontiguousarray(np.asarray(e_in, dtype=np.float64) ** 2)
    cdef double[::1] e2 = e2_arr
    pivmin = 2.2250738585072014e-308 * max(1.0, float(e2_arr.max()) if e2_arr.size else 1.0)
    return _sturm(d, e2, x, pivmin)


def bisect_lowest(d_in, e_in, Py_ssize_t count, int max_iter):
    """Lowest ``count`` eigenvalues of a symmetric tridiagonal matrix by bisection."""
    cdef double[::1] d = np.ascontiguousarray(d_in, dtype=np.float64)
    e_np = np.ascontiguousarray(e_in, dtype=np.float64)
    e2_arr = e_np ** 2
    cdef double[::1] e2 = e2_arr
    cdef Py_ssize_t n = d.shape[0], j
    cdef cnp.ndarray[double, ndim=1] out = np.empty(count)
    cdef double[::1] ov = out
    ae = np.abs(e_np)
    radius = np.zeros(n)
    if n > 1:
        radius[: n - 1] += ae
        radius[1:] += ae
    cdef double glo = float(np.min(np.asarray(d) - radius))
    cdef double ghi = float(np.max(np.asarray(d) + radius))
    cdef double span = max(fabs(glo), fabs(ghi), 1e-300)
    glo -= 2.0 * EPS * span * n + 1e-300
    ghi += 2.0 * EPS * span * n + 1e-300
    cdef double pivmin = 2.2250738585072014e-308 * max(1.0, float(e2_arr.max()) if e2_arr.size else 1.0)
    cdef double lo, hi, mid
    cdef int it
    with nogil:
        for j in range(count):
            lo = glo
            hi = ghi
            it = 0
            while hi - lo > 2.0 * EPS * (fabs(lo) + fabs(hi)) + pivmin and it < max_iter:
                mid = 0.5 * (lo + hi)
                if _sturm(d, e2, mid, pivmin) > j:
                    hi = mid
                else:
                    lo = mid
                it += 1
            ov[j] = 0.5 * (lo + hi)
            glo = lo
    return out
