"""Differential geometry along the rational parametrization.

Orientation
-----------
The limacon is oriented by *decreasing* rational parameter ``t``. In that
orientation the tangent and curvature at ``t = 0`` and ``t -> inf`` agree with
the closed-form elements of :func:`limacon.core.endpoint_elements`.

The transition arc from A to B is traced by ``eval_rational(-t)`` for
``t in [0, inf]`` (the mirror image of ``eval_rational(t)``). Along it the
curvature equals :func:`curvature_at` ``(params, t)``, which is even in ``t``.
Numerics run on a compact coordinate ``w in [0, 2]`` (``t = w`` for ``w <= 1``,
``t = 1 / (2 - w)`` beyond), see :mod:`limacon._kernels`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, NamedTuple, Tuple

import numpy as np
from scipy import integrate, optimize

from . import _kernels
from .core import LimaconParams, endpoint_elements
from .errors import NotSpiralRegime, SingularPoint, ValidationError

QUAD_TOL = 1e-10
SPEED_TOL = 1e-12


@dataclass(frozen=True)
class CurvatureSample:
    t: float
    s: float
    k: float
    tau: float


class Vertex(NamedTuple):
    t: float
    k: float


@dataclass(frozen=True)
class MonotonicityReport:
    monotone: bool
    direction: int
    worst_violation: float
    tolerance: float
    n_samples: int

    def __bool__(self):
        return self.monotone


# ---------------------------------------------------------------------------
# coordinates
# ---------------------------------------------------------------------------


def t_to_w(t):
    """Compact arc coordinate of transition-arc parameter ``t >= 0``."""
    t = np.asarray(t, dtype=np.float64)
    with np.errstate(divide="ignore"):
        return np.where(t <= 1.0, t, 2.0 - 1.0 / np.where(t > 0, t, 1.0))


def w_to_t(w):
    w = np.asarray(w, dtype=np.float64)
    with np.errstate(divide="ignore"):
        return np.where(w <= 1.0, w, 1.0 / (2.0 - w))


def endpoint_grid(n: int) -> np.ndarray:
    """``n`` compact coordinates on ``[0, 2]`` clustered at both endpoints."""
    if n < 2:
        raise ValidationError("need at least two samples")
    w = 1.0 - np.cos(np.linspace(0.0, math.pi, n))
    w[0] = 0.0
    w[-1] = 2.0
    return w


# ---------------------------------------------------------------------------
# pointwise quantities
# ---------------------------------------------------------------------------


def derivatives(params: LimaconParams, t: float) -> Tuple[np.ndarray, np.ndarray]:
    """First and second derivative of ``(x(t), y(t))``."""
    j = _kernels.rational_jets(params.mu, params.f, t)[0]
    return j[:, 1].copy(), j[:, 2].copy()


def _compact_jet(params: LimaconParams, t: float):
    """Jet of the curve near rational parameter ``t`` in a well-conditioned chart.

    Returns ``(jet, sign)`` where ``sign`` converts curvature in the chart's
    increasing direction into curvature of the oriented limacon.
    """
    t = float(t)
    if math.isnan(t):
        raise ValidationError("t is NaN")
    if abs(t) <= 1.0:
        return _kernels.rational_jets(params.mu, params.f, t)[0], -1.0
    s = 0.0 if math.isinf(t) else 1.0 / t
    # z(t; mu, f) = conj(z(1/t; -mu, -f)); both the conjugation and the reversal
    # of the parameter direction flip the sign, so the chart keeps the sign -1.
    return _kernels.rational_jets(-params.mu, -params.f, s)[0], -1.0


def _regular_or_raise(params, jet, t):
    speed = math.hypot(jet[0, 1], jet[1, 1])
    if speed < SPEED_TOL * abs(params.f):
        raise SingularPoint(f"curve is singular at t={t!r} (mu={params.mu!r})")
    return speed


def curvature_at(params: LimaconParams, t: float) -> float:
    jet, sign = _compact_jet(params, t)
    speed = _regular_or_raise(params, jet, t)
    cross = jet[0, 1] * jet[1, 2] - jet[1, 1] * jet[0, 2]
    return float(sign * cross / speed**3)


def tangent_angle(params: LimaconParams, t: float) -> float:
    """Tangent angle of the oriented limacon at ``eval_rational(t)``, in (-pi, pi]."""
    jet, _ = _compact_jet(params, t)
    _regular_or_raise(params, jet, t)
    if abs(float(t)) <= 1.0:
        # oriented by decreasing t
        return math.atan2(-jet[1, 1], -jet[0, 1])
    # chart point is the mirror and runs the same way as the orientation
    return math.atan2(-jet[1, 1], jet[0, 1])


def speed(params: LimaconParams, t) -> np.ndarray:
    j = _kernels.rational_jets(params.mu, params.f, t)
    return np.hypot(j[:, 0, 1], j[:, 1, 1])


# ---------------------------------------------------------------------------
# arc length
# ---------------------------------------------------------------------------


def _chart_speed(mu, f):
    def fn(u):
        j = _kernels.rational_jets(mu, f, u)[0]
        return math.hypot(j[0, 1], j[1, 1])

    return fn


def _length_01(params, a, b, tol):
    """Length over |t| in [a, b] with 0 <= a <= b <= inf, via charts."""
    total = 0.0
    if a < 1.0:
        hi = min(b, 1.0)
        v, _ = integrate.quad(_chart_speed(params.mu, params.f), a, hi, epsabs=tol, epsrel=1e-13, limit=200)
        total += v
    if b > 1.0:
        lo = max(a, 1.0)
        # t = 1/s maps [lo, b] onto [1/b, 1/lo] with |z'(t)| dt = |z~'(s)| ds
        s_lo = 0.0 if math.isinf(b) else 1.0 / b
        s_hi = 1.0 / lo
        v, _ = integrate.quad(_chart_speed(-params.mu, -params.f), s_lo, s_hi, epsabs=tol, epsrel=1e-13, limit=200)
        total += v
    return total


def arc_length(params: LimaconParams, t0: float, t1: float, tol: float = QUAD_TOL) -> float:
    """Signed arc length ``int_{t0}^{t1} |z'(t)| dt``; infinite bounds allowed.

    Absolute quadrature tolerance is ``tol * |f|``.
    """
    t0 = float(t0)
    t1 = float(t1)
    if t0 == t1:
        return 0.0
    if abs(params.mu) == 1.0 and (math.isinf(t0) or math.isinf(t1)):
        raise SingularPoint("the arc reaches the cusp at t = inf")
    if t0 > t1:
        return -arc_length(params, t1, t0, tol)
    atol = tol * abs(params.f)
    # speed is even in t
    if t0 >= 0.0:
        return _length_01(params, t0, t1, atol)
    if t1 <= 0.0:
        return _length_01(params, -t1, -t0, atol)
    return _length_01(params, 0.0, -t0, atol) + _length_01(params, 0.0, t1, atol)


def transition_length(params: LimaconParams, tol: float = QUAD_TOL) -> float:
    return arc_length(params, 0.0, math.inf, tol)


# ---------------------------------------------------------------------------
# arc-level analysis
# ---------------------------------------------------------------------------


def _require_regular_arc(params):
    if abs(params.mu) == 1.0:
        raise SingularPoint("for |mu| = 1 the transition arc ends in a cusp")


def transition_tangents(params: LimaconParams, w: np.ndarray) -> np.ndarray:
    """Unwrapped tangent angles along the transition arc at compact coordinates ``w``."""
    _, _, _, tau = _kernels.arc_curvature(params.mu, params.f, w)
    return np.unwrap(tau)


def turning_angle(params: LimaconParams, n: int = 8193) -> float:
    """Total change of the unwrapped tangent angle from A to B."""
    if abs(params.mu) <= 1.0:
        raise NotSpiralRegime(f"turning angle of a spiral transition needs |mu| > 1, got mu={params.mu!r}")
    while True:
        w = endpoint_grid(n)
        _, _, _, tau = _kernels.arc_curvature(params.mu, params.f, w)
        steps = np.diff(np.unwrap(tau))
        if np.max(np.abs(steps)) < 0.25 or n > 2**22:
            return float(np.sum(steps))
        n = 2 * n - 1


def turning_angle_by_quadrature(params: LimaconParams) -> float:
    """Turning angle as ``int k ds``; an independent check of :func:`turning_angle`."""
    if abs(params.mu) <= 1.0:
        raise NotSpiralRegime(f"|mu| > 1 required, got mu={params.mu!r}")

    def integrand(w):
        sp, k, _, _ = _kernels.arc_curvature(params.mu, params.f, w)
        return k[0] * sp[0]

    a, _ = integrate.quad(integrand, 0.0, 1.0, epsabs=1e-12, epsrel=1e-13, limit=400)
    b, _ = integrate.quad(integrand, 1.0, 2.0, epsabs=1e-12, epsrel=1e-13, limit=400)
    return a + b


def is_monotone_curvature(params: LimaconParams, n_samples: int = 10_000, rtol: float = 1e-12) -> MonotonicityReport:
    """Check that curvature is monotone over the transition arc.

    Samples are clustered near both endpoints. Successive differences must
    share one sign up to ``rtol * max|k|``.
    """
    if n_samples < 2:
        raise ValidationError("n_samples must be at least 2")
    w = endpoint_grid(n_samples)
    if abs(params.mu) == 1.0:
        w = w[:-1]  # drop the cusp
    _, k, _, _ = _kernels.arc_curvature(params.mu, params.f, w)
    tol = rtol * float(np.max(np.abs(k)))
    dk = np.diff(k)
    direction = int(np.sign(k[-1] - k[0]))
    if direction == 0:
        worst = float(np.max(np.abs(dk)))
    else:
        worst = float(max(0.0, np.max(-direction * dk)))
    ok = direction != 0 and worst <= tol
    return MonotonicityReport(ok, direction, worst, tol, len(w))


def curvature_profile(params: LimaconParams, n: int) -> List[CurvatureSample]:
    """``n`` samples of (t, s, k, tau) from A to B with ``s`` strictly increasing."""
    w, s, k, tau = profile_arrays(params, n)
    t = w_to_t(w)
    return [CurvatureSample(float(a), float(b), float(c), float(d)) for a, b, c, d in zip(t, s, k, tau)]


def profile_arrays(params: LimaconParams, n: int):
    """Array form of :func:`curvature_profile`: ``(w, s, k, tau)``."""
    _require_regular_arc(params)
    w = endpoint_grid(n)
    _, k, _, tau = _kernels.arc_curvature(params.mu, params.f, w)
    s = np.concatenate([[0.0], np.cumsum(_kernels.segment_lengths(params.mu, params.f, w))])
    return w, s, k, np.unwrap(tau)


def endpoint_dk_ds(params: LimaconParams) -> Tuple[float, float]:
    """dk/ds at A and B; zero is what G3 contact with the end circles requires."""
    _require_regular_arc(params)
    sp, _, dk, _ = _kernels.arc_curvature(params.mu, params.f, np.array([0.0, 2.0]))
    return float(dk[0] / sp[0]), float(dk[1] / sp[1])


def _dk_dw(params, w):
    return float(_kernels.arc_curvature(params.mu, params.f, w)[2][0])


def find_vertices(params: LimaconParams, n_scan: int = 4096, include_endpoints: bool = False) -> List[Vertex]:
    """Curvature extrema of the whole limacon, located by sign scan plus bisection.

    Interior vertices of the transition arc come in mirror pairs ``(t, -t)``.
    The points ``t = 0`` and ``t = +-inf`` are always stationary for ``k`` by
    symmetry; they are listed only with ``include_endpoints``.
    """
    w = np.linspace(0.0, 2.0, n_scan + 1)[1:-1]
    if abs(params.mu) == 1.0:
        w = w[w < 2.0 - 1e-6]
    _, _, dk, _ = _kernels.arc_curvature(params.mu, params.f, w)
    found = []
    for i in np.nonzero(np.sign(dk[:-1]) * np.sign(dk[1:]) < 0)[0]:
        a, b = w[i], w[i + 1]
        if a >= 1.0:
            # bisect in s = 2 - w to keep relative resolution near t = inf
            root = optimize.bisect(lambda s: _dk_dw(params, 2.0 - s), 2.0 - b, 2.0 - a, xtol=1e-15, rtol=4 * np.finfo(float).eps)
            t = 1.0 / root
        else:
            t = optimize.bisect(lambda x: _dk_dw(params, x), a, b, xtol=1e-14, rtol=4 * np.finfo(float).eps)
        found.append(t)
    out = []
    for t in found:
        k = curvature_at(params, t)
        out.append(Vertex(t, k))
        out.append(Vertex(-t, k))
    if include_endpoints:
        ends = endpoint_elements(params) if abs(params.mu) != 1.0 else None
        out.append(Vertex(0.0, ends.elem_A.k if ends else curvature_at(params, 0.0)))
        if ends is not None:
            out.append(Vertex(math.inf, ends.elem_B.k))
    return sorted(out, key=lambda v: v.t)
