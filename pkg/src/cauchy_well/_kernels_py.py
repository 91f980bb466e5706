"""Pure-Python/numpy fallback for the compiled kernels in ``_kernels.pyx``.

Same signatures, same algorithms. Slower by one to three orders of magnitude
on the eigensolver; ``sici_array`` is vectorised and reasonably quick.
"""

import math

import numpy as np

EULER_GAMMA = 0.5772156649015329
EPS = np.finfo(float).eps
FPMIN = 1e-300
CF_MAX_ITER = 100000


def _series(x):
    x2 = x * x
    term = x
    s = x
    n = 0
    while True:
        n += 1
        term = -term * x2 / ((2.0 * n) * (2.0 * n + 1.0))
        t = term / (2.0 * n + 1.0)
        s += t
        if abs(t) < EPS * 1e-2 * abs(s):
            break
    term = 1.0
    c = 0.0
    n = 0
    while True:
        n += 1
        term = -term * x2 / ((2.0 * n - 1.0) * (2.0 * n))
        t = term / (2.0 * n)
        c += t
        if abs(t) < EPS * 1e-2 * (abs(c) + 1e-300) or n > 200:
            break
    return s, EULER_GAMMA + math.log(x) + c


def _lentz(x):
    b = complex(1.0, x)
    c = complex(1.0 / FPMIN, 0.0)
    d = 1.0 / b
    h = d
    for i in range(2, CF_MAX_ITER):
        a = -(i - 1.0) * (i - 1.0)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta.real - 1.0) + abs(delta.imag) < EPS:
            break
    h *= complex(math.cos(x), -math.sin(x))
    return math.pi / 2 + h.imag, -h.real


def sici_scalar(x, crossover):
    if x <= crossover:
        return _series(x)
    return _lentz(x)


def sici_array(x_in, crossover):
    x = np.asarray(x_in, dtype=np.float64)
    flat = x.ravel()
    si = np.empty_like(flat)
    ci = np.empty_like(flat)

    small = flat <= crossover
    if small.any():
        xs = flat[small]
        x2 = xs * xs
        term = xs.copy()
        s = xs.copy()
        for n in range(1, 200):
            term = -term * x2 / ((2.0 * n) * (2.0 * n + 1.0))
            t = term / (2.0 * n + 1.0)
            s += t
            if np.all(np.abs(t) < EPS * 1e-2 * np.abs(s)):
                break
        term = np.ones_like(xs)
        c = np.zeros_like(xs)
        for n in range(1, 200):
            term = -term * x2 / ((2.0 * n - 1.0) * (2.0 * n))
            t = term / (2.0 * n)
            c += t
            if np.all(np.abs(t) < EPS * 1e-2 * (np.abs(c) + 1e-300)):
                break
        si[small] = s
        ci[small] = EULER_GAMMA + np.log(xs) + c

    big = ~small
    if big.any():
        xb = flat[big]
        b = 1.0 + 1j * xb
        c = np.full(xb.shape, 1.0 / FPMIN, dtype=complex)
        d = 1.0 / b
        h = d.copy()
        active = np.ones(xb.shape, dtype=bool)
        for i in range(2, CF_MAX_ITER):
            a = -(i - 1.0) * (i - 1.0)
            b = b + 2.0
            # converged lanes are frozen by forcing delta = 1
            d_new = 1.0 / (a * d + b)
            c_new = b + a / c
            delta = np.where(active, c_new * d_new, 1.0)
            d = np.where(active, d_new, d)
            c = np.where(active, c_new, c)
            h = h * delta
            active &= ~(np.abs(delta.real - 1.0) + np.abs(delta.imag) < EPS)
            if not active.any():
                break
        h = h * (np.cos(xb) - 1j * np.sin(xb))
        si[big] = np.pi / 2 + h.imag
        ci[big] = -h.real
    return si.reshape(x.shape), ci.reshape(x.shape)


def tridiagonalize(a_in, want_q):
    a = np.array(a_in, dtype=np.float64, copy=True)
    n = a.shape[0]
    # symmetrise from the lower triangle, matching the compiled kernel
    a = np.tril(a) + np.tril(a, -1).T
    e = np.zeros(max(n - 1, 0))
    vs = []
    for k in range(n - 2):
        x = a[k + 1 :, k].copy()
        xm = float(np.abs(x).max())
        if xm == 0.0:
            e[k] = 0.0
            vs.append((0.0, None))
            continue
        # normalise by the largest entry so the squares cannot underflow
        x /= xm
        norm = math.sqrt(float(x @ x))
        alpha = -math.copysign(norm, x[0])
        v = x
        v[0] -= alpha
        bt = 2.0 / float(v @ v)
        e[k] = alpha * xm
        sub = a[k + 1 :, k + 1 :]
        p = bt * (sub @ v)
        kk = 0.5 * bt * float(v @ p)
        w = p - kk * v
        sub -= np.outer(v, w) + np.outer(w, v)
        vs.append((bt, v))
    d = np.diag(a).copy()
    if n >= 2:
        e[n - 2] = a[n - 1, n - 2]
    if not want_q:
        return d, e, None
    q = np.eye(n)
    for k in range(n - 3, -1, -1):
        bt, v = vs[k]
        if bt == 0.0:
            continue
        blk = q[k + 1 :, k + 1 :]
        blk -= bt * np.outer(v, v @ blk)
    return d, e, q


def tql_implicit(d_in, e_in, z_in, max_iter, tol):
    d = [float(v) for v in d_in]
    n = len(d)
    e = [0.0] * n
    for i in range(n - 1):
        e[i] = float(e_in[i])
    want_z = z_in is not None
    zt = np.ascontiguousarray(np.asarray(z_in, dtype=np.float64).T) if want_z else None
    failed = -1
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= tol * dd:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                failed = l
                break
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            early = False
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
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
                    zi1 = zt[i + 1].copy()
                    zi = zt[i]
                    zt[i + 1] = s * zi + c * zi1
                    zt[i] = c * zi - s * zi1
                i -= 1
            if early:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
        if failed >= 0:
            break
    z_out = np.ascontiguousarray(zt.T) if want_z else None
    return np.array(d), z_out, failed


def _pivmin(e2):
    return np.finfo(float).tiny * max(1.0, float(e2.max()) if e2.size else 1.0)


def sturm_count(d_in, e_in, x):
    d = np.asarray(d_in, dtype=np.float64)
    e2 = np.asarray(e_in, dtype=np.float64) ** 2
    pivmin = _pivmin(e2)
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    count = int(q < 0.0)
    for i in range(1, d.shape[0]):
        q = d[i] - x - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        count += q < 0.0
    return int(count)


def bisect_lowest(d_in, e_in, count, max_iter):
    # all targets bisect in lockstep; one O(n) python loop per step, vectorised over targets
    d = np.asarray(d_in, dtype=np.float64)
    e = np.asarray(e_in, dtype=np.float64)
    e2 = e ** 2
    n = d.shape[0]
    pivmin = _pivmin(e2)
    radius = np.zeros(n)
    if n > 1:
        radius[:-1] += np.abs(e)
        radius[1:] += np.abs(e)
    glo = float(np.min(d - radius))
    ghi = float(np.max(d + radius))
    span = max(abs(glo), abs(ghi), 1e-300)
    glo -= 2.0 * EPS * span * n + 1e-300
    ghi += 2.0 * EPS * span * n + 1e-300
    j = np.arange(count)
    lo = np.full(count, glo)
    hi = np.full(count, ghi)
    for _ in range(max_iter):
        width = hi - lo
        if np.all(width <= 2.0 * EPS * (np.abs(lo) + np.abs(hi)) + pivmin):
            break
        mid = 0.5 * (lo + hi)
        q = d[0] - mid
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        cnt = (q < 0.0).astype(np.int64)
        for i in range(1, n):
            q = d[i] - mid - e2[i - 1] / q
            q = np.where(np.abs(q) < pivmin, -pivmin, q)
            cnt += q < 0.0
        above = cnt > j
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    return 0.5 * (lo + hi)
