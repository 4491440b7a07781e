"""Pure-Python moment-integrand kernel (fallback for ``_quadext``).

Both kernels integrate one side of the singularity-free moment integrand

    h(t) = 2 * t**tpow * x(t)**k * f'(x(t)),
    x(t) = t**2 - 1   (side = +1)   or   -1 - t**2   (side = -1),

over ``[edges[0], edges[-1]]`` plus, optionally, ``[edges[-1], inf)``
through the map ``t = t0 + L*tau/(1 - tau)``.  The adaptive scheme is a
global bisection driven by the 7/15-point Gauss-Kronrod pair (QUADPACK's
qk15 error heuristic): the panel with the largest error estimate is split
until the summed estimate falls below ``max(abs_tol, rel_tol*|total|)``.

The two implementations follow the same panel order and arithmetic so their
results agree to a few ulps.
"""
import numpy as np

from ._densities import density_array

_EPS = 2.220446049250313e-16
_UFLOW = 2.2250738585072014e-308

# 15-point Kronrod nodes on [-1, 1] with the embedded 7-point Gauss rule.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

NODES = np.array([-x for x in _XGK[:7]] + [0.0] + list(reversed(_XGK[:7])))
W_KRONROD = np.array(list(_WGK[:7]) + [_WGK[7]] + list(reversed(_WGK[:7])))
W_GAUSS = np.zeros(15)
for _i, _w in zip((1, 3, 5), _WG[:3]):
    W_GAUSS[_i] = _w
    W_GAUSS[14 - _i] = _w
W_GAUSS[7] = _WG[3]


def _integrand(code, zeta, tx, tf, k, side, tpow, t):
    tt = t * t
    x = tt - 1.0 if side > 0 else -1.0 - tt
    y = 2.0 * density_array(code, zeta, tx, tf, x)
    if k:
        y = y * x
    if tpow:
        y = y * t
    return y


def _panel(code, zeta, tx, tf, k, side, tpow, a, b, mapped, t0, scale):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    u = mid + half * NODES
    if mapped:
        om = 1.0 - u
        t = t0 + scale * u / om
        y = _integrand(code, zeta, tx, tf, k, side, tpow, t) * (scale / (om * om))
    else:
        y = _integrand(code, zeta, tx, tf, k, side, tpow, u)
    kr = 0.0
    ga = 0.0
    for i in range(15):
        kr += W_KRONROD[i] * y[i]
        ga += W_GAUSS[i] * y[i]
    return half * kr, _error_estimate(y, kr, ga, half)


def _error_estimate(y, kr, ga, half):
    # QUADPACK qk15 heuristic: scale |K - G| by the panel's variation and
    # floor it at the rounding level of the panel sum.
    ah = abs(half)
    err = abs((kr - ga) * half)
    mean = 0.5 * kr
    resabs = 0.0
    resasc = 0.0
    for i in range(15):
        resabs += W_KRONROD[i] * abs(y[i])
        resasc += W_KRONROD[i] * abs(y[i] - mean)
    resabs *= ah
    resasc *= ah
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > _UFLOW / (50.0 * _EPS):
        err = max(50.0 * _EPS * resabs, err)
    return err


def integrate_side(code, zeta, tx, tf, k, side, tpow, edges, tail,
                   rel_tol, abs_tol, max_panels):
    """Integrate one side; returns ``(value, error, n_panels, converged)``."""
    tx = np.asarray(tx, dtype=float)
    tf = np.asarray(tf, dtype=float)
    panels = []
    for a, b in zip(edges[:-1], edges[1:]):
        if b > a:
            v, e = _panel(code, zeta, tx, tf, k, side, tpow, a, b, False, 0.0, 1.0)
            panels.append([a, b, False, v, e])
    t0 = float(edges[-1]) if len(edges) else 0.0
    scale = max(1.0, t0)
    if tail:
        v, e = _panel(code, zeta, tx, tf, k, side, tpow, 0.0, 1.0, True, t0, scale)
        panels.append([0.0, 1.0, True, v, e])
    if not panels:
        return 0.0, 0.0, 0, True

    while True:
        total = 0.0
        err = 0.0
        worst = 0
        for i, p in enumerate(panels):
            total += p[3]
            err += p[4]
            if p[4] > panels[worst][4]:
                worst = i
        if err <= max(abs_tol, rel_tol * abs(total)):
            return total, err, len(panels), True
        if len(panels) >= max_panels:
            return total, err, len(panels), False
        a, b, mapped = panels[worst][0], panels[worst][1], panels[worst][2]
        m = 0.5 * (a + b)
        if not (a < m < b):
            return total, err, len(panels), False
        v1, e1 = _panel(code, zeta, tx, tf, k, side, tpow, a, m, mapped, t0, scale)
        v2, e2 = _panel(code, zeta, tx, tf, k, side, tpow, m, b, mapped, t0, scale)
        panels[worst] = [a, m, mapped, v1, e1]
        panels.append([m, b, mapped, v2, e2])
