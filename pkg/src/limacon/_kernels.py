"""Hot numeric kernels.

Two interchangeable implementations live here: scalar loops compiled with
numba ``@njit`` and vectorized numpy code. The numba path is used when numba
imports and ``LIMACON_DISABLE_JIT`` is unset (or "0"); otherwise the numpy
path is used. Both are always importable so tests and the benchmark can
compare them directly.

Jets are arrays of shape ``(n, 2, 4)``: ``[i, c, d]`` is the ``d``-th
derivative of coordinate ``c`` (0 = x, 1 = y) at sample ``i``.

The transition arc is addressed by a compact coordinate ``w`` in ``[0, 2]``.
For ``w <= 1`` the point is ``z(-w)`` on the curve ``(mu, f)``; for ``w > 1``
it is ``z(2 - w)`` on the curve ``(-mu, -f)``, which is the same point set
because ``z(1/t; mu, f) = conj(z(t; -mu, -f))``. This keeps the far endpoint
(``t -> inf``) at a finite, well-conditioned parameter.
"""

import os
import warnings

import numpy as np

SQRT2 = np.sqrt(2.0)

# 8-point Gauss-Legendre rule on [-1, 1]
GL_NODES, GL_WEIGHTS = np.polynomial.legendre.leggauss(8)

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def decorator(func):
            return func

        return decorator


def _env_disables_jit():
    return os.environ.get("LIMACON_DISABLE_JIT", "0").strip().lower() not in ("", "0", "false", "no")


USE_NUMBA = HAVE_NUMBA and not _env_disables_jit()
BACKEND = "numba" if USE_NUMBA else "numpy"

if not HAVE_NUMBA and not _env_disables_jit():  # pragma: no cover
    warnings.warn("numba could not be imported; falling back to numpy kernels")


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def _np_rational_jets(mu, f, t):
    t = np.asarray(t, dtype=np.float64)
    t2 = t * t
    am = mu - 1.0
    ap = mu + 1.0
    D = t2 * t2 + 1.0
    D1 = 4.0 * t2 * t
    D2 = 12.0 * t2
    D3 = 24.0 * t

    # x = f P / D,  y = f Q / D
    P = (am * t2 - 2.0 * mu) * t2 + ap
    P1 = (4.0 * am * t2 - 4.0 * mu) * t
    P2 = 12.0 * am * t2 - 4.0 * mu
    P3 = 24.0 * am * t
    Q = SQRT2 * (am * t2 - ap) * t
    Q1 = SQRT2 * (3.0 * am * t2 - ap)
    Q2 = 6.0 * SQRT2 * am * t
    Q3 = np.full_like(t, 6.0 * SQRT2 * am)

    out = np.empty(t.shape + (2, 4))
    for c, (N, N1, N2, N3) in enumerate(((P, P1, P2, P3), (Q, Q1, Q2, Q3))):
        v0 = f * N / D
        v1 = (f * N1 - D1 * v0) / D
        v2 = (f * N2 - 2.0 * D1 * v1 - D2 * v0) / D
        v3 = (f * N3 - 3.0 * D1 * v2 - 3.0 * D2 * v1 - D3 * v0) / D
        out[..., c, 0] = v0
        out[..., c, 1] = v1
        out[..., c, 2] = v2
        out[..., c, 3] = v3
    return out


def _np_arc_jets(mu, f, w):
    w = np.asarray(w, dtype=np.float64)
    near = w <= 1.0
    out = np.empty(w.shape + (2, 4))
    # near half: P(w) = z(-w) = (x(w), -y(w)) by parity of x and y
    jn = _np_rational_jets(mu, f, w[near])
    jn[:, 1, :] *= -1.0
    out[near] = jn
    # far half: P(w) = z~(2 - w), d/dw = -d/ds
    jf = _np_rational_jets(-mu, -f, 2.0 - w[~near])
    jf[:, :, 1] *= -1.0
    jf[:, :, 3] *= -1.0
    out[~near] = jf
    return out


def _np_curvature_from_jets(j):
    x1, y1 = j[..., 0, 1], j[..., 1, 1]
    x2, y2 = j[..., 0, 2], j[..., 1, 2]
    x3, y3 = j[..., 0, 3], j[..., 1, 3]
    sp2 = x1 * x1 + y1 * y1
    speed = np.sqrt(sp2)
    cross = x1 * y2 - y1 * x2
    k = cross / (sp2 * speed)
    dk = (x1 * y3 - y1 * x3) / (sp2 * speed) - 3.0 * cross * (x1 * x2 + y1 * y2) / (sp2 * sp2 * speed)
    tau = np.arctan2(y1, x1)
    return speed, k, dk, tau


def _np_arc_curvature(mu, f, w):
    return _np_curvature_from_jets(_np_arc_jets(mu, f, w))


def _np_implicit_residual(mu, f, x, y):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    r2 = x * x + y * y
    lhs = r2 - mu * f * x
    return (lhs * lhs - f * f * (x * x + 2.0 * y * y)) / (f * f * f * f)


def _np_segment_lengths(mu, f, w):
    w = np.asarray(w, dtype=np.float64)
    a = w[:-1]
    b = w[1:]
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    nodes = mid[:, None] + half[:, None] * GL_NODES[None, :]
    speed = _np_arc_curvature(mu, f, nodes.ravel())[0].reshape(nodes.shape)
    return half * (speed @ GL_WEIGHTS)


def _np_directed_hausdorff(points, poly):
    """max over ``points`` of the distance to the polyline ``poly``."""
    points = np.asarray(points, dtype=np.float64)
    poly = np.asarray(poly, dtype=np.float64)
    a = poly[:-1]
    d = poly[1:] - a
    dd = np.einsum("ij,ij->i", d, d)
    dd = np.where(dd > 0.0, dd, 1.0)
    worst = 0.0
    # chunk to bound memory at (chunk x segments)
    for start in range(0, len(points), 256):
        p = points[start:start + 256]
        rel = p[:, None, :] - a[None, :, :]
        s = np.clip(np.einsum("ijk,jk->ij", rel, d) / dd, 0.0, 1.0)
        diff = rel - s[..., None] * d[None, :, :]
        dist2 = np.einsum("ijk,ijk->ij", diff, diff).min(axis=1)
        worst = max(worst, float(np.sqrt(dist2.max())))
    return worst


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------


@njit(cache=True)
def _jit_rational_jet_one(mu, f, t, out):
    t2 = t * t
    am = mu - 1.0
    ap = mu + 1.0
    D = t2 * t2 + 1.0
    D1 = 4.0 * t2 * t
    D2 = 12.0 * t2
    D3 = 24.0 * t
    P = (am * t2 - 2.0 * mu) * t2 + ap
    P1 = (4.0 * am * t2 - 4.0 * mu) * t
    P2 = 12.0 * am * t2 - 4.0 * mu
    P3 = 24.0 * am * t
    s2 = 1.4142135623730951
    Q = s2 * (am * t2 - ap) * t
    Q1 = s2 * (3.0 * am * t2 - ap)
    Q2 = 6.0 * s2 * am * t
    Q3 = 6.0 * s2 * am

    v0 = f * P / D
    v1 = (f * P1 - D1 * v0) / D
    v2 = (f * P2 - 2.0 * D1 * v1 - D2 * v0) / D
    v3 = (f * P3 - 3.0 * D1 * v2 - 3.0 * D2 * v1 - D3 * v0) / D
    out[0, 0] = v0
    out[0, 1] = v1
    out[0, 2] = v2
    out[0, 3] = v3
    v0 = f * Q / D
    v1 = (f * Q1 - D1 * v0) / D
    v2 = (f * Q2 - 2.0 * D1 * v1 - D2 * v0) / D
    v3 = (f * Q3 - 3.0 * D1 * v2 - 3.0 * D2 * v1 - D3 * v0) / D
    out[1, 0] = v0
    out[1, 1] = v1
    out[1, 2] = v2
    out[1, 3] = v3


@njit(cache=True)
def _jit_rational_jets(mu, f, t):
    n = t.shape[0]
    out = np.empty((n, 2, 4))
    for i in range(n):
        _jit_rational_jet_one(mu, f, t[i], out[i])
    return out


@njit(cache=True)
def _jit_arc_jet_one(mu, f, w, out):
    if w <= 1.0:
        _jit_rational_jet_one(mu, f, w, out)
        for d in range(4):
            out[1, d] = -out[1, d]
    else:
        _jit_rational_jet_one(-mu, -f, 2.0 - w, out)
        for c in range(2):
            out[c, 1] = -out[c, 1]
            out[c, 3] = -out[c, 3]


@njit(cache=True)
def _jit_arc_jets(mu, f, w):
    n = w.shape[0]
    out = np.empty((n, 2, 4))
    for i in range(n):
        _jit_arc_jet_one(mu, f, w[i], out[i])
    return out


@njit(cache=True)
def _jit_arc_curvature(mu, f, w):
    n = w.shape[0]
    speed = np.empty(n)
    k = np.empty(n)
    dk = np.empty(n)
    tau = np.empty(n)
    j = np.empty((2, 4))
    for i in range(n):
        _jit_arc_jet_one(mu, f, w[i], j)
        x1 = j[0, 1]
        y1 = j[1, 1]
        x2 = j[0, 2]
        y2 = j[1, 2]
        sp2 = x1 * x1 + y1 * y1
        sp = np.sqrt(sp2)
        cross = x1 * y2 - y1 * x2
        speed[i] = sp
        k[i] = cross / (sp2 * sp)
        dk[i] = (x1 * j[1, 3] - y1 * j[0, 3]) / (sp2 * sp) - 3.0 * cross * (x1 * x2 + y1 * y2) / (sp2 * sp2 * sp)
        tau[i] = np.arctan2(y1, x1)
    return speed, k, dk, tau


@njit(cache=True)
def _jit_implicit_residual(mu, f, x, y):
    n = x.shape[0]
    out = np.empty(n)
    f4 = f * f * f * f
    for i in range(n):
        xi = x[i]
        yi = y[i]
        lhs = xi * xi + yi * yi - mu * f * xi
        out[i] = (lhs * lhs - f * f * (xi * xi + 2.0 * yi * yi)) / f4
    return out


@njit(cache=True)
def _jit_segment_lengths(mu, f, w, nodes, weights):
    m = w.shape[0] - 1
    out = np.empty(m)
    j = np.empty((2, 4))
    for i in range(m):
        half = 0.5 * (w[i + 1] - w[i])
        mid = 0.5 * (w[i + 1] + w[i])
        acc = 0.0
        for q in range(nodes.shape[0]):
            _jit_arc_jet_one(mu, f, mid + half * nodes[q], j)
            acc += weights[q] * np.sqrt(j[0, 1] * j[0, 1] + j[1, 1] * j[1, 1])
        out[i] = half * acc
    return out


@njit(cache=True)
def _jit_directed_hausdorff(points, poly):
    worst = 0.0
    m = poly.shape[0] - 1
    for i in range(points.shape[0]):
        px = points[i, 0]
        py = points[i, 1]
        best = np.inf
        for s in range(m):
            ax = poly[s, 0]
            ay = poly[s, 1]
            dx = poly[s + 1, 0] - ax
            dy = poly[s + 1, 1] - ay
            dd = dx * dx + dy * dy
            u = 0.0
            if dd > 0.0:
                u = ((px - ax) * dx + (py - ay) * dy) / dd
                if u < 0.0:
                    u = 0.0
                elif u > 1.0:
                    u = 1.0
            ex = px - ax - u * dx
            ey = py - ay - u * dy
            d2 = ex * ex + ey * ey
            if d2 < best:
                best = d2
        if best > worst:
            worst = best
    return np.sqrt(worst)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def _as1d(a):
    return np.ascontiguousarray(np.atleast_1d(np.asarray(a, dtype=np.float64)).ravel())


def rational_jets(mu, f, t):
    t = _as1d(t)
    if USE_NUMBA:
        return _jit_rational_jets(float(mu), float(f), t)
    return _np_rational_jets(float(mu), float(f), t)


def arc_jets(mu, f, w):
    w = _as1d(w)
    if USE_NUMBA:
        return _jit_arc_jets(float(mu), float(f), w)
    return _np_arc_jets(float(mu), float(f), w)


def arc_curvature(mu, f, w):
    """(speed, k, dk/dw, tau) along the transition arc at compact coordinates ``w``."""
    w = _as1d(w)
    if USE_NUMBA:
        return _jit_arc_curvature(float(mu), float(f), w)
    return _np_arc_curvature(float(mu), float(f), w)


def implicit_residual(mu, f, x, y):
    x = _as1d(x)
    y = _as1d(y)
    if USE_NUMBA:
        return _jit_implicit_residual(float(mu), float(f), x, y)
    return _np_implicit_residual(float(mu), float(f), x, y)


def segment_lengths(mu, f, w):
    """Arc length of each ``[w[i], w[i+1]]`` by 8-point Gauss-Legendre."""
    w = _as1d(w)
    # the chart seam at w = 1 has a speed kink; never integrate across it
    i = np.searchsorted(w, 1.0)
    split = 0 < i < len(w) and w[i] != 1.0 and w[i - 1] < 1.0
    if split:
        w = np.insert(w, i, 1.0)
    if USE_NUMBA:
        out = _jit_segment_lengths(float(mu), float(f), w, GL_NODES, GL_WEIGHTS)
    else:
        out = _np_segment_lengths(float(mu), float(f), w)
    if split:
        out = np.concatenate([out[:i - 1], [out[i - 1] + out[i]], out[i + 1:]])
    return out


def directed_hausdorff(points, poly):
    points = np.ascontiguousarray(np.asarray(points, dtype=np.float64).reshape(-1, 2))
    poly = np.ascontiguousarray(np.asarray(poly, dtype=np.float64).reshape(-1, 2))
    if USE_NUMBA:
        return float(_jit_directed_hausdorff(points, poly))
    return _np_directed_hausdorff(points, poly)
