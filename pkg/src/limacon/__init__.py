"""Limacon-like spiral: a quartic curve giving G3, 2*pi, monotone-curvature
transitions between concentric circles of curvature."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .core import (
    CurvatureElement,
    EndpointData,
    LimaconParams,
    Point2,
    RegimeClass,
    center_polar_roots,
    classify,
    endpoint_elements,
    eval_polar,
    eval_rational,
    eval_rational_at_infinity,
    implicit_residual,
    mu_from_ratio,
)
from .solver import DirectedCircle, TransitionSolution, diagnose, solve_transition

__all__ = [
    "BACKEND",
    "CurvatureElement",
    "DirectedCircle",
    "EndpointData",
    "LimaconParams",
    "Point2",
    "RegimeClass",
    "TransitionSolution",
    "center_polar_roots",
    "classify",
    "diagnose",
    "endpoint_elements",
    "eval_polar",
    "eval_rational",
    "eval_rational_at_infinity",
    "implicit_residual",
    "mu_from_ratio",
    "solve_transition",
]
