# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled moment-integrand kernel.  Same contract as ``_quadpy.integrate_side``."""
from libc.math cimport exp, fabs, fmax, fmin, pow, sqrt, M_PI
from libc.stdlib cimport malloc, free

cdef double XGK[8]
cdef double WGK[8]
cdef double WG[4]
XGK[:] = [0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
          0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
          0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
          0.207784955007898467600689403773245, 0.0]
WGK[:] = [0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
          0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
          0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
          0.204432940075298892414161999234649, 0.209482141084727828012999174891714]
WG[:] = [0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
         0.381830050505118944950369775488975, 0.417959183673469387755102040816327]

# nodes/weights laid out in the same ascending order as the Python kernel
cdef double NODES[15]
cdef double WK15[15]
cdef double WG15[15]
cdef int _i
for _i in range(7):
    NODES[_i] = -XGK[_i]
    NODES[14 - _i] = XGK[_i]
    WK15[_i] = WGK[_i]
    WK15[14 - _i] = WGK[_i]
    WG15[_i] = 0.0
    WG15[14 - _i] = 0.0
NODES[7] = 0.0
WK15[7] = WGK[7]
WG15[7] = WG[3]
WG15[1] = WG[0]; WG15[13] = WG[0]
WG15[3] = WG[1]; WG15[11] = WG[1]
WG15[5] = WG[2]; WG15[9] = WG[2]

cdef double SQRT_2PI = sqrt(2.0 * M_PI)
cdef double EPS = 2.220446049250313e-16
cdef double UFLOW = 2.2250738585072014e-308


cdef inline double _density(int code, double zeta, const double[:] tx,
                            const double[:] tf, Py_ssize_t n, double x) noexcept nogil:
    cdef Py_ssize_t lo, hi, mid
    cdef double w
    if code == 0:
        return (zeta / M_PI) / (x * x + zeta * zeta)
    elif code == 1:
        if fabs(x) <= zeta:
            return 0.5 / zeta
        return 0.0
    elif code == 2:
        w = x / zeta
        return exp(-0.5 * w * w) / (zeta * SQRT_2PI)
    else:
        if n == 0 or x < tx[0] or x > tx[n - 1]:
            return 0.0
        if x == tx[n - 1]:
            return tf[n - 1]
        lo = 0
        hi = n - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if tx[mid] <= x:
                lo = mid
            else:
                hi = mid
        w = (x - tx[lo]) / (tx[hi] - tx[lo])
        return tf[lo] + w * (tf[hi] - tf[lo])


cdef inline double _integrand(int code, double zeta, const double[:] tx, const double[:] tf,
                              Py_ssize_t n, int k, int side, int tpow, double t) noexcept nogil:
    cdef double tt = t * t
    cdef double x
    cdef double y
    if side > 0:
        x = tt - 1.0
    else:
        x = -1.0 - tt
    y = 2.0 * _density(code, zeta, tx, tf, n, x)
    if k:
        y = y * x
    if tpow:
        y = y * t
    return y


cdef void _panel(int code, double zeta, const double[:] tx, const double[:] tf, Py_ssize_t n,
                 int k, int side, int tpow, double a, double b, bint mapped, double t0,
                 double scale, double* val, double* err) noexcept nogil:
    cdef double half = 0.5 * (b - a)
    cdef double mid = 0.5 * (a + b)
    cdef double kr = 0.0
    cdef double ga = 0.0
    cdef double u, om, y
    cdef double ys[15]
    cdef double ah, e, mean
    cdef double resabs = 0.0
    cdef double resasc = 0.0
    cdef int i
    for i in range(15):
        u = mid + half * NODES[i]
        if mapped:
            om = 1.0 - u
            y = _integrand(code, zeta, tx, tf, n, k, side, tpow, t0 + scale * u / om) * (scale / (om * om))
        else:
            y = _integrand(code, zeta, tx, tf, n, k, side, tpow, u)
        ys[i] = y
        kr += WK15[i] * y
        ga += WG15[i] * y
    val[0] = half * kr
    # QUADPACK qk15 error heuristic
    ah = fabs(half)
    e = fabs((kr - ga) * half)
    mean = 0.5 * kr
    for i in range(15):
        resabs += WK15[i] * fabs(ys[i])
        resasc += WK15[i] * fabs(ys[i] - mean)
    resabs *= ah
    resasc *= ah
    if resasc != 0.0 and e != 0.0:
        e = resasc * fmin(1.0, pow(200.0 * e / resasc, 1.5))
    if resabs > UFLOW / (50.0 * EPS):
        e = fmax(50.0 * EPS * resabs, e)
    err[0] = e


def integrate_side(int code, double zeta, tx, tf, int k, int side, int tpow, edges,
                   bint tail, double rel_tol, double abs_tol, int max_panels):
    """Integrate one side; returns ``(value, error, n_panels, converged)``."""
    import numpy as np
    cdef const double[:] txv = np.ascontiguousarray(tx, dtype=float)
    cdef const double[:] tfv = np.ascontiguousarray(tf, dtype=float)
    cdef const double[:] ev = np.ascontiguousarray(edges, dtype=float)
    cdef Py_ssize_t n = txv.shape[0]
    cdef Py_ssize_t ne = ev.shape[0]
    # initial panels can already exceed the budget
    cdef int cap = max_panels + <int> ne + 2
    cdef double* pa = <double*> malloc(cap * sizeof(double))
    cdef double* pb = <double*> malloc(cap * sizeof(double))
    cdef double* pv = <double*> malloc(cap * sizeof(double))
    cdef double* pe = <double*> malloc(cap * sizeof(double))
    cdef bint* pm = <bint*> malloc(cap * sizeof(bint))
    cdef int np_ = 0
    cdef int i, worst
    cdef double t0, scale, total, err, a, b, m, v1, e1, v2, e2
    cdef bint mapped, converged = False
    if pa == NULL or pb == NULL or pv == NULL or pe == NULL or pm == NULL:
        free(pa); free(pb); free(pv); free(pe); free(pm)
        raise MemoryError()
    try:
        with nogil:
            for i in range(ne - 1):
                if ev[i + 1] > ev[i]:
                    pa[np_] = ev[i]
                    pb[np_] = ev[i + 1]
                    pm[np_] = False
                    _panel(code, zeta, txv, tfv, n, k, side, tpow, ev[i], ev[i + 1],
                           False, 0.0, 1.0, &pv[np_], &pe[np_])
                    np_ += 1
            t0 = ev[ne - 1] if ne > 0 else 0.0
            scale = t0 if t0 > 1.0 else 1.0
            if tail:
                pa[np_] = 0.0
                pb[np_] = 1.0
                pm[np_] = True
                _panel(code, zeta, txv, tfv, n, k, side, tpow, 0.0, 1.0, True, t0, scale,
                       &pv[np_], &pe[np_])
                np_ += 1
            total = 0.0
            err = 0.0
            if np_ == 0:
                converged = True
            while np_ > 0:
                total = 0.0
                err = 0.0
                worst = 0
                for i in range(np_):
                    total += pv[i]
                    err += pe[i]
                    if pe[i] > pe[worst]:
                        worst = i
                if err <= abs_tol or err <= rel_tol * fabs(total):
                    converged = True
                    break
                if np_ >= max_panels:
                    break
                a = pa[worst]
                b = pb[worst]
                mapped = pm[worst]
                m = 0.5 * (a + b)
                if not (a < m and m < b):
                    break
                _panel(code, zeta, txv, tfv, n, k, side, tpow, a, m, mapped, t0, scale, &v1, &e1)
                _panel(code, zeta, txv, tfv, n, k, side, tpow, m, b, mapped, t0, scale, &v2, &e2)
                pb[worst] = m
                pv[worst] = v1
                pe[worst] = e1
                pa[np_] = m
                pb[np_] = b
                pm[np_] = mapped
                pv[np_] = v2
                pe[np_] = e2
                np_ += 1
        return total, err, np_, converged
    finally:
        free(pa); free(pb); free(pv); free(pe); free(pm)
