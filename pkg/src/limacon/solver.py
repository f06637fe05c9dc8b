"""Placed transitions between two concentric directed circles."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import List, Optional

import numpy as np

from . import _kernels, diffgeo
from .core import (
    CurvatureElement,
    EndpointData,
    LimaconParams,
    Point2,
    RegimeClass,
    classify,
    endpoint_elements,
    eval_polar_many,
    mu_from_ratio,
)
from .errors import DegenerateEqualCircles, NotConcentric, RatioMinusOne, ValidationError

TOL_CONCENTRIC = 1e-9


@dataclass(frozen=True)
class DirectedCircle:
    center: Point2
    radius: float
    winding: int = 1

    def __post_init__(self):
        if not isinstance(self.center, Point2):
            object.__setattr__(self, "center", Point2(*map(float, self.center)))
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise ValidationError(f"radius must be positive and finite, got {self.radius!r}")
        if self.winding not in (1, -1):
            raise ValidationError(f"winding must be +1 or -1, got {self.winding!r}")
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "winding", int(self.winding))

    @property
    def curvature(self) -> float:
        return self.winding / self.radius


@dataclass(frozen=True)
class Placement:
    """World = R(rotation) . M . (p - origin) + translation, with M = diag(1, -1) when reflected.

    ``origin`` is the canonical common center ``(x_c, 0)``.
    """

    rotation: float
    translation: Point2
    reflect: bool = False
    origin: Point2 = Point2(0.0, 0.0)

    def matrix(self) -> np.ndarray:
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        m = np.array([[c, -s], [s, c]])
        if self.reflect:
            m = m @ np.diag([1.0, -1.0])
        return m

    def apply(self, points) -> np.ndarray:
        p = np.asarray(points, dtype=np.float64).reshape(-1, 2) - np.array(tuple(self.origin))
        return p @ self.matrix().T + np.array(tuple(self.translation))

    def apply_point(self, p: Point2) -> Point2:
        x, y = self.apply([tuple(p)])[0]
        return Point2(float(x), float(y))

    def apply_element(self, e: CurvatureElement) -> CurvatureElement:
        sgn = -1.0 if self.reflect else 1.0
        return CurvatureElement(self.apply_point(e.point), sgn * e.tau + self.rotation, sgn * e.k)


@dataclass(frozen=True)
class TransitionSolution:
    params: LimaconParams
    placement: Placement
    endpoints: EndpointData
    regime: RegimeClass
    kappa: float
    inner: DirectedCircle
    outer: DirectedCircle
    anchor: float = 0.0

    def sample(self, n: int = 256) -> np.ndarray:
        """World points of the transition arc from A (outer circle) to B."""
        w = diffgeo.endpoint_grid(n)
        return self.placement.apply(_kernels.arc_jets(self.params.mu, self.params.f, w)[:, :, 0])

    def to_canonical(self, points) -> np.ndarray:
        pl = self.placement
        p = np.asarray(points, dtype=np.float64).reshape(-1, 2) - np.array(tuple(pl.translation))
        return p @ pl.matrix() + np.array(tuple(pl.origin))


def _assign(inner: DirectedCircle, outer: DirectedCircle, tol_concentric: float):
    scale = max(inner.radius, outer.radius)
    if inner.center.distance(outer.center) > tol_concentric * scale:
        raise NotConcentric(
            f"circle centers differ by {inner.center.distance(outer.center):.3g} (tolerance {tol_concentric * scale:.3g})"
        )
    same = inner.winding == outer.winding
    if inner.radius == outer.radius:
        if same:
            raise DegenerateEqualCircles("equal equally-directed circles: only the duplicated-circle limit connects them")
        raise RatioMinusOne("equal oppositely-directed circles (curvature ratio -1) are excluded")
    if inner.radius > outer.radius:
        raise ValidationError("inner radius must be smaller than outer radius")
    return same


def solve_transition(
    inner: DirectedCircle,
    outer: DirectedCircle,
    anchor_angle: float = 0.0,
    tol_concentric: float = TOL_CONCENTRIC,
) -> TransitionSolution:
    """Limacon transition from the outer circle (at A) to the inner circle (at B).

    ``anchor_angle`` is the direction from the common center to A.
    """
    same = _assign(inner, outer, tol_concentric)
    kappa = math.sqrt(outer.radius / inner.radius)
    mu = mu_from_ratio(kappa, same_winding=same)
    # |1/k(0)| = f (mu+1)^2 / (2 mu) carries the larger radius
    f = 2.0 * mu * outer.radius / (mu + 1.0) ** 2
    params = LimaconParams(mu, f)
    canon = endpoint_elements(params)
    # canonical windings: outer +1, inner +1 (same) or -1 (opposite)
    reflect = outer.winding < 0
    placement = Placement(float(anchor_angle), outer.center, reflect, canon.center)
    world = EndpointData(
        placement.apply_element(canon.elem_A),
        placement.apply_element(canon.elem_B),
        outer.center,
    )
    return TransitionSolution(params, placement, world, classify(mu), kappa, inner, outer, float(anchor_angle))


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------


def osculation_error(elem: CurvatureElement, circle: DirectedCircle) -> float:
    """Largest mismatch between an element and a directed circle, in length units."""
    on_circle = abs(elem.point.distance(circle.center) - circle.radius)
    if elem.k == 0.0:
        return math.inf
    center_err = elem.curvature_center.distance(circle.center)
    radius_err = abs(1.0 / abs(elem.k) - circle.radius)
    winding_err = 0.0 if np.sign(elem.k) == circle.winding else 2.0 * circle.radius
    return max(on_circle, center_err, radius_err, winding_err)


def _measured_endpoints(solution: TransitionSolution):
    """Endpoint elements recomputed from the curve, not from the closed form."""
    p = solution.params
    out = []
    for t in (0.0, math.inf):
        pt = _kernels.arc_jets(p.mu, p.f, float(diffgeo.t_to_w(t)))[0, :, 0]
        elem = CurvatureElement(Point2(*pt), diffgeo.tangent_angle(p, t), diffgeo.curvature_at(p, t))
        out.append(solution.placement.apply_element(elem))
    return out


@dataclass
class DiagnosticReport:
    osculation_error_A: float
    osculation_error_B: float
    relative_osculation_error: float
    turning_angle: Optional[float]
    monotone: bool
    vertices: List[diffgeo.Vertex] = field(default_factory=list)
    endpoint_dk_ds: tuple = (math.nan, math.nan)
    regime: str = ""

    def as_dict(self) -> dict:
        return {
            "osculation_error_A": self.osculation_error_A,
            "osculation_error_B": self.osculation_error_B,
            "relative_osculation_error": self.relative_osculation_error,
            "turning_angle": self.turning_angle,
            "monotone": self.monotone,
            "vertices": [{"t": v.t, "k": v.k} for v in self.vertices],
            "endpoint_dk_ds": list(self.endpoint_dk_ds),
            "regime": self.regime,
        }


def diagnose(solution: TransitionSolution, n_samples: int = 10_000) -> DiagnosticReport:
    a, b = _measured_endpoints(solution)
    err_a = osculation_error(a, solution.outer)
    err_b = osculation_error(b, solution.inner)
    p = solution.params
    turning = diffgeo.turning_angle(p) if abs(p.mu) > 1.0 else None
    return DiagnosticReport(
        osculation_error_A=err_a,
        osculation_error_B=err_b,
        relative_osculation_error=max(err_a, err_b) / solution.outer.radius,
        turning_angle=turning,
        monotone=diffgeo.is_monotone_curvature(p, n_samples).monotone,
        vertices=diffgeo.find_vertices(p),
        endpoint_dk_ds=diffgeo.endpoint_dk_ds(p),
        regime=solution.regime.value,
    )


def tampered(solution: TransitionSolution, dx: float = 0.0, dy: float = 0.0) -> TransitionSolution:
    """Copy of ``solution`` with its placement translated; for testing diagnostics."""
    t = solution.placement.translation
    return replace(solution, placement=replace(solution.placement, translation=Point2(t.x + dx, t.y + dy)))


# ---------------------------------------------------------------------------
# duplicated-circle limit
# ---------------------------------------------------------------------------


@dataclass
class LimitSample:
    mu: float
    f: float
    points: np.ndarray
    hausdorff: float
    circle_residual: float


def hausdorff_to_circle(points: np.ndarray, R: float, n_circle: int = 2048) -> float:
    """Symmetric Hausdorff distance between a closed sampled curve and ``(x-R)^2 + y^2 = R^2``."""
    pts = np.asarray(points, dtype=np.float64)
    to_circle = float(np.max(np.abs(np.hypot(pts[:, 0] - R, pts[:, 1]) - R)))
    phi = np.linspace(0.0, 2.0 * math.pi, n_circle, endpoint=False)
    circle = np.column_stack([R + R * np.cos(phi), R * np.sin(phi)])
    poly = np.vstack([pts, pts[:1]])
    return max(to_circle, _kernels.directed_hausdorff(circle, poly))


def degenerate_limit_curve(R: float, n: int = 4096, exponents=(2, 3, 4)) -> List[LimitSample]:
    """Limacons with ``mu = 10^j`` and ``mu f = 2R`` approaching the duplicated circle."""
    if not R > 0.0:
        raise ValidationError("R must be positive")
    xi = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    out = []
    for j in exponents:
        mu = 10.0**j
        f = 2.0 * R / mu
        pts = eval_polar_many(LimaconParams(mu, f), xi)
        circle_res = float(np.max(np.abs((pts[:, 0] ** 2 + pts[:, 1] ** 2 - 2.0 * R * pts[:, 0]) ** 2))) / R**4
        out.append(LimitSample(mu, f, pts, hausdorff_to_circle(pts, R), circle_res))
    return out
