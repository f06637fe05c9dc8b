"""Pre-image conic, circle inversion, midcircle and the hyperbola construction.

The limacon is the inverse, in the circle of radius |f| about the origin, of
the conic ``2y^2 + (1 - mu^2) x^2 + 2 mu f x - f^2 = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .core import EndpointData, LimaconParams, Point2, RegimeClass, eval_rational_many, implicit_residual_many
from .errors import InversionPoleOnCurve, OppositeWinding, PoleAtCenter, ValidationError


@dataclass(frozen=True)
class ConicParams:
    """``A x^2 + B xy + C y^2 + D x + E y + F = 0`` with its focal data.

    ``scale`` is the length used to normalize residuals (``|f|``).
    """

    A: float
    B: float
    C: float
    D: float
    E: float
    F: float
    e: float
    p: float
    x_f_plus: float
    x_f_minus: float
    scale: float

    @property
    def coefficients(self) -> Tuple[float, ...]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    @property
    def kind(self) -> str:
        disc = self.B * self.B - 4.0 * self.A * self.C
        if disc > 0.0:
            return "hyperbola"
        if disc == 0.0:
            return "parabola"
        return "ellipse"

    @property
    def regime(self) -> RegimeClass:
        return {"hyperbola": RegimeClass.HYPERBOLIC, "parabola": RegimeClass.PARABOLIC}.get(
            self.kind, RegimeClass.ELLIPTIC
        )


def eccentricity_condition(mu: float) -> float:
    """Eccentricity making the extremal circles concentric: ``2 e^2 = mu^2 + 1``."""
    return math.sqrt((mu * mu + 1.0) / 2.0)


def conic_from_params(params: LimaconParams) -> ConicParams:
    mu, f = params.mu, params.f
    e = eccentricity_condition(mu)

    def focus(d):
        return math.inf if d == 0.0 else f / (2.0 * d)

    return ConicParams(
        A=1.0 - mu * mu,
        B=0.0,
        C=2.0,
        D=2.0 * mu * f,
        E=0.0,
        F=-f * f,
        e=e,
        p=0.5 * f,
        x_f_plus=focus(mu + e),
        x_f_minus=focus(mu - e),
        scale=abs(f),
    )


def conic_residual_many(conic: ConicParams, points) -> np.ndarray:
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    x, y = pts[:, 0], pts[:, 1]
    q = conic.A * x * x + conic.B * x * y + conic.C * y * y + conic.D * x + conic.E * y + conic.F
    return q / (conic.scale * conic.scale)


def conic_residual(conic: ConicParams, p) -> float:
    return float(conic_residual_many(conic, [tuple(p)])[0])


def invert_in_circle(p, center, radius: float) -> Point2:
    px, py = p
    cx, cy = center
    dx, dy = px - cx, py - cy
    d2 = dx * dx + dy * dy
    if d2 == 0.0:
        raise PoleAtCenter("cannot invert the center of inversion")
    s = radius * radius / d2
    return Point2(cx + s * dx, cy + s * dy)


def invert_many(points, center, radius: float) -> np.ndarray:
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    c = np.asarray(tuple(center), dtype=np.float64)
    rel = pts - c
    d2 = np.einsum("ij,ij->i", rel, rel)
    if np.any(d2 == 0.0):
        raise PoleAtCenter("cannot invert the center of inversion")
    return c + (radius * radius / d2)[:, None] * rel


def duality_samples(params: LimaconParams, n: int, min_radius: float = 1e-3) -> np.ndarray:
    """``n`` curve points from parameters spread over the whole real line, away from the origin."""
    t = np.tan(np.linspace(-0.5 * math.pi, 0.5 * math.pi, n + 2)[1:-1])
    z = eval_rational_many(params, t)
    keep = np.hypot(z[:, 0], z[:, 1]) >= min_radius * abs(params.f)
    return z[keep]


def limacon_conic_duality_check(params: LimaconParams, t_samples=128) -> float:
    """Max |conic residual| of the limacon samples inverted in the circle of radius |f|."""
    if np.isscalar(t_samples):
        z = duality_samples(params, int(t_samples))
    else:
        z = eval_rational_many(params, np.asarray(t_samples, dtype=np.float64))
    conic = conic_from_params(params)
    w = invert_many(z, (0.0, 0.0), abs(params.f))
    return float(np.max(np.abs(conic_residual_many(conic, w))))


@dataclass(frozen=True)
class Circle:
    center: Point2
    radius: float


def midcircle(data: EndpointData) -> Circle:
    """Concentric circle whose inversion swaps the two extremal circles."""
    ka, kb = data.elem_A.k, data.elem_B.k
    if data.center is None:
        raise OppositeWinding("extremal circles have a center at infinity")
    if ka * kb <= 0.0:
        raise OppositeWinding("extremal circles are oppositely directed")
    return Circle(data.center, math.sqrt(1.0 / abs(ka) / abs(kb)))


def midcircle_symmetry_residual(params: LimaconParams, data: EndpointData, n: int = 64) -> float:
    """Max implicit residual of ``n`` curve samples after inversion in the midcircle."""
    circ = midcircle(data)
    t = np.tan(np.linspace(-0.5 * math.pi, 0.5 * math.pi, n + 2)[1:-1])
    z = eval_rational_many(params, t)
    w = invert_many(z, tuple(circ.center), circ.radius)
    return float(np.max(np.abs(implicit_residual_many(params, w))))


# ---------------------------------------------------------------------------
# construction from a canonical hyperbola
# ---------------------------------------------------------------------------

# 8th-order central difference weights
_D1 = np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0.0, 4 / 5, -1 / 5, 4 / 105, -1 / 280])
_D2 = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])
_OFFSETS = np.arange(-4, 5)


def fd_curvature_element(fn, t: float, h: float = 0.02):
    """Point, tangent angle and curvature of a complex-valued curve ``fn`` by finite differences."""
    v = fn(t + h * _OFFSETS)
    z = v[4]
    d1 = (_D1 @ v) / h
    d2 = (_D2 @ v) / (h * h)
    k = (d1.real * d2.imag - d1.imag * d2.real) / abs(d1) ** 3
    return z, math.atan2(d1.imag, d1.real), k


@dataclass(frozen=True)
class CanonicalHyperbola:
    """``x^2/a^2 - y^2/b^2 = 1``."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0.0 and self.b > 0.0):
            raise ValidationError("hyperbola semi-axes must be positive")

    @classmethod
    def from_eccentricity(cls, a: float, e: float) -> "CanonicalHyperbola":
        if e <= 1.0:
            raise ValidationError("a hyperbola needs e > 1")
        return cls(a, a * math.sqrt(e * e - 1.0))

    @property
    def e(self) -> float:
        return math.sqrt(1.0 + (self.b / self.a) ** 2)

    @property
    def p(self) -> float:
        return self.b * self.b / self.a

    def z(self, t, branch: int = 1):
        t = np.asarray(t, dtype=np.float64)
        return branch * self.a * np.cosh(t) + 1j * self.b * np.sinh(t)


@dataclass
class ConstructionReport:
    mu: float
    x0: float
    radius: float
    elements: Tuple[tuple, tuple]
    centers: Tuple[complex, complex]
    distance: float
    points: np.ndarray = field(repr=False)

    @property
    def concentric(self) -> bool:
        return self.distance <= 1e-9 * max(abs(self.centers[0]), abs(self.centers[1]), self.radius)


def construct_by_inversion(
    hyp: CanonicalHyperbola,
    mu: float,
    n: int = 512,
    full: bool = False,
    x0: Optional[float] = None,
    t_max: float = 20.0,
) -> ConstructionReport:
    """Invert ``hyp`` by ``w = p^2 / (z - x0)`` and compare the vertex-image curvature centers.

    The inversion center defaults to ``x0 = mu * a``; the centers coincide
    exactly when ``2 e^2 = mu^2 + 1``. ``points`` holds the image of the half
    branches joined through the image of infinity (the transition arc), or the
    image of the whole hyperbola when ``full`` is set.
    """
    if x0 is None:
        x0 = mu * hyp.a
    if abs(abs(x0) - hyp.a) <= 1e-12 * hyp.a:
        raise InversionPoleOnCurve(f"inversion center ({x0}, 0) is a vertex of the hyperbola")
    p2 = hyp.p * hyp.p

    def image(branch):
        return lambda t: p2 / (hyp.z(t, branch) - x0)

    elements = []
    centers = []
    for branch in (1, -1):
        z, tau, k = fd_curvature_element(image(branch), 0.0)
        elements.append((z, tau, k))
        centers.append(z + 1j * np.exp(1j * tau) / k)
    distance = abs(centers[0] - centers[1])

    ts = np.linspace(0.0, t_max, n)
    if full:
        parts = [image(1)(-ts[::-1]), image(1)(ts[1:]), [0j], image(-1)(-ts[::-1]), image(-1)(ts[1:])]
    else:
        parts = [image(1)(ts), [0j], image(-1)(-ts[::-1])]
    w = np.concatenate([np.asarray(q, dtype=complex) for q in parts])
    return ConstructionReport(
        mu=float(mu),
        x0=float(x0),
        radius=hyp.p,
        elements=(elements[0], elements[1]),
        centers=(complex(centers[0]), complex(centers[1])),
        distance=float(distance),
        points=np.column_stack([w.real, w.imag]),
    )


def concentricity_scan(mu: float, offsets: Sequence[float] = (-0.1, 0.0, 0.1), a: float = 1.0):
    """Vertex-image center distance for eccentricities ``e* + offset``."""
    e_star = eccentricity_condition(mu)
    out = []
    for d in offsets:
        hyp = CanonicalHyperbola.from_eccentricity(a, e_star + d)
        out.append((e_star + d, construct_by_inversion(hyp, mu).distance))
    return out
