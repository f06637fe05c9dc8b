"""Normalized boundary data and the closed-form ``u`` parametrization.

For boundary elements ``{-1, 0, -pi/2, (kappa^2-1)/(2 kappa^2)}`` and
``{1, 0, -pi/2, (kappa^2-1)/2}`` the connecting curve is a rational
function of ``u``, with ``0 <= u <= 1`` covering the transition. It is the
canonical limacon with ``mu = (kappa+1)/(kappa-1)`` and ``f = 1`` seen through
a rigid motion, which :func:`affine_correspondence` constructs and checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import Polynomial
from scipy import integrate, optimize

from . import diffgeo
from .core import CurvatureElement, LimaconParams, Point2, endpoint_elements, implicit_residual_many
from .errors import NoCorrespondence, UnitKappa, ValidationError


def _check_kappa(kappa):
    kappa = float(kappa)
    if not (kappa > 0.0 and math.isfinite(kappa)):
        raise ValidationError(f"kappa must be positive and finite, got {kappa!r}")
    if kappa == 1.0:
        raise UnitKappa("kappa = 1 puts the common center at infinity")
    return kappa


@dataclass(frozen=True)
class NormalizedProblem:
    kappa: float
    elem_minus: CurvatureElement
    elem_plus: CurvatureElement
    center: Point2


def normalized_problem(kappa: float) -> NormalizedProblem:
    kappa = _check_kappa(kappa)
    k2 = kappa * kappa
    minus = CurvatureElement(Point2(-1.0, 0.0), -0.5 * math.pi, (k2 - 1.0) / (2.0 * k2))
    plus = CurvatureElement(Point2(1.0, 0.0), -0.5 * math.pi, (k2 - 1.0) / 2.0)
    center = Point2((k2 + 1.0) / (k2 - 1.0), 0.0)
    for elem in (minus, plus):
        c = elem.curvature_center
        if c.distance(center) > 1e-12 * max(1.0, abs(center.x)):
            raise NoCorrespondence("normalized boundary elements are not concentric")
    return NormalizedProblem(kappa, minus, plus, center)


@lru_cache(maxsize=64)
def _u_polys(kappa):
    u = Polynomial([0.0, 1.0])
    v = 1.0 - u
    den = kappa * kappa * u**4 + v**4
    nx = (2.0 * kappa / (kappa - 1.0)) * (1.0 - 2.0 * u) * (kappa * u**2 - v**2)
    ny = (-2.0 * math.sqrt(2.0 * kappa**3) / (kappa - 1.0)) * u * v * (1.0 - 2.0 * u)
    return den, nx, ny


def eval_u_many(kappa: float, u) -> np.ndarray:
    kappa = _check_kappa(kappa)
    u = np.asarray(u, dtype=np.float64)
    v = 1.0 - u
    den = kappa * kappa * u**4 + v**4
    x = (kappa + 1.0) / (kappa - 1.0) + (2.0 * kappa / (kappa - 1.0)) * (1.0 - 2.0 * u) * (u * u * kappa - v * v) / den
    y = (-2.0 * math.sqrt(2.0 * kappa**3) / (kappa - 1.0)) * u * v * (1.0 - 2.0 * u) / den
    return np.stack([x, y], axis=-1)


def eval_u(kappa: float, u: float) -> Point2:
    x, y = eval_u_many(kappa, float(u))
    return Point2(float(x), float(y))


def u_jets(kappa: float, u):
    """Value, first and second derivative of ``(x(u), y(u))``; shape ``(n, 2, 3)``."""
    kappa = _check_kappa(kappa)
    u = np.atleast_1d(np.asarray(u, dtype=np.float64))
    den, nx, ny = _u_polys(kappa)
    d = [den(u), den.deriv(1)(u), den.deriv(2)(u)]
    out = np.empty(u.shape + (2, 3))
    offset = (kappa + 1.0) / (kappa - 1.0)
    for c, num in enumerate((nx, ny)):
        v0 = num(u) / d[0]
        v1 = (num.deriv(1)(u) - d[1] * v0) / d[0]
        v2 = (num.deriv(2)(u) - 2.0 * d[1] * v1 - d[2] * v0) / d[0]
        out[:, c, 0] = v0 + (offset if c == 0 else 0.0)
        out[:, c, 1] = v1
        out[:, c, 2] = v2
    return out


def curvature_u(kappa: float, u) -> np.ndarray:
    j = u_jets(kappa, u)
    x1, y1, x2, y2 = j[:, 0, 1], j[:, 1, 1], j[:, 0, 2], j[:, 1, 2]
    return (x1 * y2 - y1 * x2) / np.hypot(x1, y1) ** 3


def tangent_angle_u(kappa: float, u) -> np.ndarray:
    j = u_jets(kappa, u)
    return np.arctan2(j[:, 1, 1], j[:, 0, 1])


def arc_length_u(kappa: float, u0: float, u1: float) -> float:
    def sp(u):
        j = u_jets(kappa, u)[0]
        return math.hypot(j[0, 1], j[1, 1])

    return integrate.quad(sp, u0, u1, epsabs=1e-13, epsrel=1e-13, limit=200)[0]


@dataclass(frozen=True)
class AffineCorrespondence:
    """Similarity ``T(x, y) = (mu - x/f, sign_y * y/|f|)`` from canonical to normalized coordinates."""

    kappa: float
    mu: float
    f: float
    sign_y: int
    max_residual: float

    @property
    def params(self) -> LimaconParams:
        return LimaconParams(self.mu, self.f)

    @property
    def orientation(self) -> int:
        """+1 if ``T`` preserves orientation."""
        return int(-np.sign(self.f) * self.sign_y)

    def to_normalized(self, points) -> np.ndarray:
        p = np.asarray(points, dtype=np.float64).reshape(-1, 2)
        return np.column_stack([self.mu - p[:, 0] / self.f, self.sign_y * p[:, 1] / abs(self.f)])

    def to_canonical(self, points) -> np.ndarray:
        p = np.asarray(points, dtype=np.float64).reshape(-1, 2)
        return np.column_stack([self.f * (self.mu - p[:, 0]), self.sign_y * abs(self.f) * p[:, 1]])

    def canonical_angle(self, tau):
        """Map a direction angle in normalized coordinates to canonical coordinates."""
        tau = np.asarray(tau, dtype=np.float64)
        return np.arctan2(self.sign_y * abs(self.f) * np.sin(tau), -self.f * np.cos(tau))


def affine_correspondence(kappa: float, n: int = 256, tol: float = 1e-9) -> AffineCorrespondence:
    """Similarity carrying the ``u`` curve onto the canonical limacon.

    The ``y`` sign is fixed by matching the tangent at ``u = 0`` with the
    canonical element at A; membership of ``n`` samples is then verified.
    """
    kappa = _check_kappa(kappa)
    mu = (kappa + 1.0) / (kappa - 1.0)
    k0 = (kappa * kappa - 1.0) / (2.0 * kappa * kappa)
    f = 2.0 * mu / (k0 * (mu + 1.0) ** 2)
    params = LimaconParams(mu, f)
    tau_a = endpoint_elements(params).elem_A.tau
    tau_u0 = float(tangent_angle_u(kappa, 0.0)[0])

    best = None
    for sign_y in (1, -1):
        trial = AffineCorrespondence(kappa, mu, f, sign_y, math.nan)
        gap = abs(math.remainder(float(trial.canonical_angle(tau_u0)) - tau_a, 2.0 * math.pi))
        if best is None or gap < best[0]:
            best = (gap, sign_y)
    sign_y = best[1]

    u = np.linspace(0.0, 1.0, n)
    pts = AffineCorrespondence(kappa, mu, f, sign_y, math.nan).to_canonical(eval_u_many(kappa, u))
    res = float(np.max(np.abs(implicit_residual_many(params, pts))))
    if not res < tol or best[0] > 1e-9:
        raise NoCorrespondence(f"u curve does not map onto the limacon (residual {res:.3g}, tangent gap {best[0]:.3g})")
    return AffineCorrespondence(kappa, mu, f, sign_y, res)


def profile_deviation(kappa: float, n: int = 33) -> float:
    """Max |k| difference between the ``u`` curve and the canonical arc at equal arc length."""
    corr = affine_correspondence(kappa)
    params = corr.params
    scale = abs(corr.f)
    u = np.linspace(0.0, 1.0, n)
    s_u = np.concatenate([[0.0], np.cumsum([arc_length_u(kappa, a, b) for a, b in zip(u[:-1], u[1:])])])
    k_u = curvature_u(kappa, u) * corr.orientation / scale
    total = diffgeo.transition_length(params)

    def s_of_w(w):
        t = float(diffgeo.w_to_t(w))
        return diffgeo.arc_length(params, 0.0, t)

    worst = 0.0
    for s, k in zip(s_u * scale, k_u):
        if s <= 0.0:
            w = 0.0
        elif s >= total * (1 - 1e-15):
            w = 2.0
        else:
            w = optimize.brentq(lambda x: s_of_w(x) - s, 0.0, 2.0, xtol=1e-14, rtol=1e-15)
        t = float(diffgeo.w_to_t(w))
        worst = max(worst, abs(diffgeo.curvature_at(params, t) - k))
    return worst
