"""Domain types and closed-form evaluation of the limacon-like spiral.

The curve family is

    r(xi) = f * (mu * cos(xi) +- sqrt(2 - cos(xi)**2))

with implicit form ``(x^2 + y^2 - mu f x)^2 = f^2 (x^2 + 2 y^2)`` and the
degree-4 rational parametrization evaluated by :func:`eval_rational`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import _kernels
from .errors import DegenerateMu, NoIntersection, SingularEndpoint, UnitRatio, ValidationError

SQRT2 = math.sqrt(2.0)


class RegimeClass(str, enum.Enum):
    HYPERBOLIC = "Hyperbolic"
    PARABOLIC = "Parabolic"
    ELLIPTIC = "Elliptic"
    LEMNISCATE = "Lemniscate"


def classify(mu: float) -> RegimeClass:
    """Shape regime of ``mu``; the parabolic test is an exact comparison."""
    mu = float(mu)
    if not math.isfinite(mu):
        raise ValidationError(f"mu must be finite, got {mu!r}")
    a = abs(mu)
    if a > 1.0:
        return RegimeClass.HYPERBOLIC
    if a == 1.0:
        return RegimeClass.PARABOLIC
    if a > 0.0:
        return RegimeClass.ELLIPTIC
    return RegimeClass.LEMNISCATE


@dataclass(frozen=True)
class LimaconParams:
    mu: float
    f: float = 1.0

    def __post_init__(self):
        mu = float(self.mu)
        f = float(self.f)
        if not math.isfinite(mu):
            raise ValidationError(f"mu must be finite, got {self.mu!r}")
        if not math.isfinite(f) or f == 0.0:
            raise ValidationError(f"f must be finite and non-zero, got {self.f!r}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "f", f)

    @property
    def regime(self) -> RegimeClass:
        return classify(self.mu)

    def swapped(self) -> "LimaconParams":
        """Parameters (-mu, -f); ``z(1/t)`` of self is the mirror of ``z(t)`` of these."""
        return LimaconParams(-self.mu, -self.f)


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __iter__(self):
        yield self.x
        yield self.y

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def distance(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


def normalize_angle(tau: float) -> float:
    """Map an angle to (-pi, pi]."""
    a = math.remainder(tau, 2.0 * math.pi)
    if a <= -math.pi:
        a += 2.0 * math.pi
    return a


@dataclass(frozen=True)
class CurvatureElement:
    """A point with unit tangent ``(cos tau, sin tau)`` and signed curvature ``k``."""

    point: Point2
    tau: float
    k: float

    def __post_init__(self):
        object.__setattr__(self, "tau", normalize_angle(float(self.tau)))
        object.__setattr__(self, "k", float(self.k))

    @property
    def tangent(self) -> np.ndarray:
        return np.array([math.cos(self.tau), math.sin(self.tau)])

    @property
    def normal(self) -> np.ndarray:
        return np.array([-math.sin(self.tau), math.cos(self.tau)])

    @property
    def curvature_center(self) -> Optional[Point2]:
        if self.k == 0.0:
            return None
        n = self.normal / self.k
        return Point2(self.point.x + n[0], self.point.y + n[1])

    @property
    def radius(self) -> float:
        return math.inf if self.k == 0.0 else 1.0 / abs(self.k)


@dataclass(frozen=True)
class EndpointData:
    """Curvature elements at xi = 0 (A) and xi = pi (B) and their common center.

    ``center`` is None when the center lies at infinity (mu = 0).
    """

    elem_A: CurvatureElement
    elem_B: CurvatureElement
    center: Optional[Point2]

    @property
    def center_at_infinity(self) -> bool:
        return self.center is None

    def concentricity_error(self) -> float:
        """Largest distance between either curvature center and ``center``, relative to the larger radius."""
        if self.center is None:
            return math.nan
        ca = self.elem_A.curvature_center
        cb = self.elem_B.curvature_center
        scale = max(self.elem_A.radius, self.elem_B.radius)
        return max(ca.distance(self.center), cb.distance(self.center)) / scale


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def polar_radius(params: LimaconParams, xi, branch: int = 1):
    """Signed polar radius; negative values plot at angle ``xi + pi``."""
    c = np.cos(xi)
    return params.f * (params.mu * c + branch * np.sqrt(2.0 - c * c))


def eval_polar(params: LimaconParams, xi: float, branch: int = 1) -> Point2:
    if branch not in (1, -1):
        raise ValidationError("branch must be +1 or -1")
    r = float(polar_radius(params, xi, branch))
    return Point2(r * math.cos(xi), r * math.sin(xi))


def eval_polar_many(params: LimaconParams, xi, branch: int = 1) -> np.ndarray:
    xi = np.asarray(xi, dtype=np.float64)
    r = polar_radius(params, xi, branch)
    return np.stack([r * np.cos(xi), r * np.sin(xi)], axis=-1)


def _rational_xy(mu, f, t):
    t2 = t * t
    n = (mu - 1.0) * t2 - (mu + 1.0)
    d = t2 * t2 + 1.0
    return f * (t2 - 1.0) * n / d, f * SQRT2 * t * n / d


def eval_rational(params: LimaconParams, t: float) -> Point2:
    t = float(t)
    if math.isinf(t):
        return eval_rational_at_infinity(params)
    x, y = _rational_xy(params.mu, params.f, t)
    return Point2(x, y)


def eval_rational_many(params: LimaconParams, t) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    x, y = _rational_xy(params.mu, params.f, t)
    return np.stack([x, y], axis=-1)


def eval_rational_at_infinity(params: LimaconParams) -> Point2:
    return Point2(params.f * (params.mu - 1.0), 0.0)


def implicit_residual(params: LimaconParams, p) -> float:
    """``((x^2+y^2-mu f x)^2 - f^2 (x^2+2y^2)) / f^4``; zero iff ``p`` is on the curve."""
    x, y = p
    return float(_kernels.implicit_residual(params.mu, params.f, x, y)[0])


def implicit_residual_many(params: LimaconParams, points) -> np.ndarray:
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    return _kernels.implicit_residual(params.mu, params.f, pts[:, 0], pts[:, 1])


# ---------------------------------------------------------------------------
# endpoint data and ratios
# ---------------------------------------------------------------------------


def _sgn(v: float) -> float:
    return math.copysign(1.0, v) if v != 0.0 else 0.0


def _end_element(params: LimaconParams, shift: float) -> CurvatureElement:
    mu, f = params.mu, params.f
    m = mu + shift
    x = f * m
    tau = 0.5 * math.pi * _sgn(x)
    k = 2.0 * mu / (abs(f) * abs(m) * m)
    return CurvatureElement(Point2(x, 0.0), tau, k)


def endpoint_elements(params: LimaconParams) -> EndpointData:
    """Closed-form curvature elements at A (xi = 0) and B (xi = pi).

    Raises SingularEndpoint for |mu| = 1. For mu = 0 both curvatures vanish
    and ``center`` is None.
    """
    mu, f = params.mu, params.f
    if abs(mu) == 1.0:
        raise SingularEndpoint("for |mu| = 1 the xi = pi endpoint is a cusp at the origin")
    a = _end_element(params, 1.0)
    b = _end_element(params, -1.0)
    center = None if mu == 0.0 else Point2(f * (mu * mu - 1.0) / (2.0 * mu), 0.0)
    return EndpointData(a, b, center)


def curvature_ratio(mu: float) -> float:
    """k(pi) / k(0) = (mu+1)/(mu-1) * |(mu+1)/(mu-1)|."""
    q = (mu + 1.0) / (mu - 1.0)
    return q * abs(q)


def mu_from_ratio(kappa: float, same_winding: bool) -> float:
    """Shape parameter giving ``k(pi)/k(0) = +kappa^2`` (same winding) or ``-kappa^2``."""
    a = abs(float(kappa))
    if a == 0.0 or not math.isfinite(a):
        raise ValidationError(f"kappa must be finite and non-zero, got {kappa!r}")
    if a == 1.0:
        raise UnitRatio("curvature ratio +-1 is not reachable (only as the duplicated-circle limit)")
    if same_winding:
        return (a + 1.0) / (a - 1.0)
    return (a - 1.0) / (a + 1.0)


def center_polar_roots(params: LimaconParams, theta: float) -> Tuple[float, float]:
    """Both roots rho of the curve's polar equation about the common center, ascending."""
    mu, f = params.mu, params.f
    if mu == 0.0:
        raise DegenerateMu("the common center is at infinity for mu = 0")
    c = math.cos(theta)
    s = math.sin(theta)
    g = c + mu * math.sqrt(mu * mu + s * s)
    h = mu * mu - 1.0
    # discriminant / (16 mu^2 f^2) = (g - h)(g + h), factored to keep the double root exact
    disc = (g - h) * (g + h)
    if disc < 0.0:
        if disc < -1e-14 * max(g * g, h * h, 1.0):
            raise NoIntersection(f"the ray at theta={theta!r} misses the curve")
        disc = 0.0
    root = math.sqrt(disc)
    # 4 mu^2 rho^2 - 4 mu f g rho + h^2 f^2 = 0  ->  rho = f (g +- root) / (2 mu)
    r1 = f * (g - root) / (2.0 * mu)
    r2 = f * (g + root) / (2.0 * mu)
    # the smaller-magnitude root via Vieta when cancellation threatens it
    if abs(g) > 0.0 and root > 0.0:
        big = f * (g + math.copysign(root, g)) / (2.0 * mu)
        small = (h * h * f * f) / (4.0 * mu * mu) / big
        r1, r2 = big, small
    return (min(r1, r2), max(r1, r2))
