"""Command line interface.

Subcommands: trace, profile, classify, solve, duality, construct, gallery.
Exit status 0 on success, 1 on numerical failure, 2 on invalid input; on
failure a JSON error object is written to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import __version__, diffgeo
from .core import LimaconParams, Point2, classify, endpoint_elements, mu_from_ratio
from .errors import LimaconError, ValidationError
from .export import (
    SCHEMA,
    STYLE,
    Panel,
    csv_text,
    dumps_json,
    limacon_panel,
    render_panels,
    transition_points,
    write_text,
)
from .inversion import CanonicalHyperbola, conic_from_params, construct_by_inversion, eccentricity_condition, limacon_conic_duality_check, midcircle
from .solver import DirectedCircle, diagnose, solve_transition

log = logging.getLogger("limacon")

MODES = ("trace", "solve", "profile", "classify", "duality", "construct", "gallery")


@dataclass
class JobConfig:
    mode: str
    mu: List[float] = field(default_factory=list)
    f: float = 1.0
    kappa: Optional[float] = None
    inner_radius: Optional[float] = None
    outer_radius: Optional[float] = None
    center_x: float = 0.0
    center_y: float = 0.0
    winding_inner: int = 1
    winding_outer: int = 1
    anchor: float = 0.0
    n: int = 256
    a: float = 1.0
    b: Optional[float] = None
    svg: Optional[str] = None
    csv: Optional[str] = None
    json: Optional[str] = None
    tol: float = 1e-9

    def validate(self) -> "JobConfig":
        if self.mode not in MODES:
            raise ValidationError(f"unknown mode {self.mode!r}")
        if self.n < 2:
            raise ValidationError("--n must be at least 2")
        if not self.tol > 0.0:
            raise ValidationError("--tol must be positive")
        for v in self.mu + [self.f, self.center_x, self.center_y, self.anchor]:
            if not math.isfinite(v):
                raise ValidationError("numeric arguments must be finite")
        if self.mode == "gallery":
            if not self.mu:
                raise ValidationError("gallery needs at least one --mu")
        elif self.mode == "solve":
            if self.inner_radius is None or self.outer_radius is None:
                raise ValidationError("solve needs --inner-radius and --outer-radius")
        elif self.mode in ("trace", "profile", "classify", "duality", "construct"):
            if len(self.mu) > 1:
                raise ValidationError(f"{self.mode} takes a single --mu")
            if not self.mu and self.kappa is None:
                raise ValidationError(f"{self.mode} needs --mu or --kappa")
        if self.f == 0.0:
            raise ValidationError("--f must be non-zero")
        for w in (self.winding_inner, self.winding_outer):
            if w not in (1, -1):
                raise ValidationError("windings must be +1 or -1")
        return self

    def resolved_mu(self) -> float:
        if self.mu:
            return self.mu[0]
        return mu_from_ratio(self.kappa, same_winding=self.winding_inner == self.winding_outer)

    def params(self) -> LimaconParams:
        return LimaconParams(self.resolved_mu(), self.f)


def _report(config: JobConfig, **body) -> dict:
    out = {"schema": SCHEMA, "mode": config.mode, "config": asdict(config)}
    out.update(body)
    return out


def _endpoint_dict(params: LimaconParams) -> Optional[dict]:
    try:
        ends = endpoint_elements(params)
    except LimaconError:
        return None

    def elem(e):
        return {"x": e.point.x, "y": e.point.y, "tau": e.tau, "k": e.k}

    return {
        "A": elem(ends.elem_A),
        "B": elem(ends.elem_B),
        "center": None if ends.center is None else [ends.center.x, ends.center.y],
    }


# ---------------------------------------------------------------------------
# modes
# ---------------------------------------------------------------------------


def _trace(config, artifacts):
    params = config.params()
    panel = limacon_panel(params, config.n)
    arc = transition_points(params, config.n)
    if config.svg:
        artifacts["svg"] = render_panels([panel])
    if config.csv:
        artifacts["csv"] = csv_text(("x", "y"), arc)
    return _report(config, regime=classify(params.mu).value, endpoints=_endpoint_dict(params), n_points=len(arc))


def _profile(config, artifacts):
    params = config.params()
    w, s, k, tau = diffgeo.profile_arrays(params, config.n)
    if config.csv:
        artifacts["csv"] = csv_text(("s", "k"), zip(s, k))
    if config.svg:
        panel = Panel(f"k(s), mu = {params.mu:g}")
        panel.path("profile", np.column_stack([s, k]), STYLE["transition"])
        artifacts["svg"] = render_panels([panel])
    mono = diffgeo.is_monotone_curvature(params, max(config.n, 2))
    return _report(
        config,
        regime=classify(params.mu).value,
        length=float(s[-1]),
        k_start=float(k[0]),
        k_end=float(k[-1]),
        monotone=mono.monotone,
    )


def _classify(config, artifacts):
    return _report(config, regime=classify(config.resolved_mu()).value)


def _duality(config, artifacts):
    params = config.params()
    conic = conic_from_params(params)
    res = limacon_conic_duality_check(params, config.n)
    return _report(
        config,
        regime=classify(params.mu).value,
        conic={
            "coefficients": list(conic.coefficients),
            "kind": conic.kind,
            "e": conic.e,
            "p": conic.p,
            "x_f_plus": conic.x_f_plus,
            "x_f_minus": conic.x_f_minus,
        },
        max_residual=res,
        ok=res < config.tol,
    )


def _construct(config, artifacts):
    mu = config.resolved_mu()
    if config.b is None:
        hyp = CanonicalHyperbola.from_eccentricity(config.a, eccentricity_condition(mu))
    else:
        hyp = CanonicalHyperbola(config.a, config.b)
    rep = construct_by_inversion(hyp, mu, n=config.n)
    if config.svg:
        panel = Panel(f"inverted hyperbola, mu = {mu:g}")
        panel.path("image", rep.points, STYLE["transition"])
        for c, (z, tau, k) in zip(rep.centers, rep.elements):
            panel.circle("extremal", (c.real, c.imag), 1.0 / abs(k), STYLE["extremal"])
        artifacts["svg"] = render_panels([panel])
    if config.csv:
        artifacts["csv"] = csv_text(("x", "y"), rep.points)
    return _report(
        config,
        hyperbola={"a": hyp.a, "b": hyp.b, "e": hyp.e, "p": hyp.p},
        inversion_center=[rep.x0, 0.0],
        curvature_centers=[[c.real, c.imag] for c in rep.centers],
        distance=rep.distance,
        concentric=rep.concentric,
        condition_holds=abs(2.0 * hyp.e**2 - (mu * mu + 1.0)) <= 1e-12 * (mu * mu + 1.0),
    )


def _solve(config, artifacts):
    c = Point2(config.center_x, config.center_y)
    inner = DirectedCircle(c, config.inner_radius, config.winding_inner)
    outer = DirectedCircle(c, config.outer_radius, config.winding_outer)
    sol = solve_transition(inner, outer, config.anchor, tol_concentric=config.tol)
    diag = diagnose(sol)
    if config.svg or config.csv:
        pts = sol.sample(config.n)
        if config.csv:
            artifacts["csv"] = csv_text(("x", "y"), pts)
        if config.svg:
            panel = Panel(f"mu = {sol.params.mu:.6g}, kappa = {sol.kappa:.6g}")
            panel.path("transition", pts, STYLE["transition"])
            panel.circle("extremal", tuple(c), outer.radius, STYLE["extremal"])
            panel.circle("extremal", tuple(c), inner.radius, STYLE["extremal"])
            if inner.winding == outer.winding:
                panel.circle("midcircle", tuple(c), midcircle(sol.endpoints).radius, STYLE["midcircle"])
            artifacts["svg"] = render_panels([panel])
    pl = sol.placement
    return _report(
        config,
        params={"mu": sol.params.mu, "f": sol.params.f},
        kappa=sol.kappa,
        regime=sol.regime.value,
        placement={
            "rotation": pl.rotation,
            "translation": [pl.translation.x, pl.translation.y],
            "reflect": pl.reflect,
            "origin": [pl.origin.x, pl.origin.y],
        },
        diagnostics=diag.as_dict(),
    )


def gallery(mus: Sequence[float], n: int = 512):
    """One panel per distinct mu, in the given order; returns ``(svg, mus_used)``."""
    if len(mus) == 0:
        raise ValidationError("gallery needs at least one mu value")
    seen = []
    for m in mus:
        if m in seen:
            log.warning("duplicate mu=%g dropped from gallery", m)
            continue
        seen.append(m)
    return render_panels([limacon_panel(LimaconParams(m, 1.0), n) for m in seen]), seen


def _gallery(config, artifacts):
    svg, used = gallery(config.mu, config.n)
    artifacts["svg"] = svg
    return _report(config, panels=[{"mu": m, "regime": classify(m).value} for m in used])


_HANDLERS = {
    "trace": _trace,
    "profile": _profile,
    "classify": _classify,
    "duality": _duality,
    "construct": _construct,
    "solve": _solve,
    "gallery": _gallery,
}


def run(config: JobConfig, stdout=None):
    """Execute one job; returns ``(exit_code, artifacts)``.

    ``artifacts`` maps "svg"/"csv"/"json" to the text written (if requested).
    Exceptions from the library propagate; :func:`main` turns them into exit codes.
    """
    config.validate()
    artifacts: Dict[str, str] = {}
    report = _HANDLERS[config.mode](config, artifacts)
    artifacts["json"] = dumps_json(report)
    if config.svg and "svg" in artifacts:
        write_text(config.svg, artifacts["svg"])
    if config.csv and "csv" in artifacts:
        write_text(config.csv, artifacts["csv"])
    if config.json:
        write_text(config.json, artifacts["json"])
    else:
        (stdout or sys.stdout).write(artifacts["json"])
    return 0, artifacts


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _winding(text):
    v = int(float(text))
    if v not in (1, -1):
        raise argparse.ArgumentTypeError("winding must be +1 or -1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mu", type=float, action="append", default=None, help="shape parameter (repeat for gallery)")
    common.add_argument("--f", type=float, default=1.0, help="length scale")
    common.add_argument("--kappa", type=float, default=None, help="curvature-ratio root; alternative to --mu")
    common.add_argument("--inner-radius", type=float, default=None)
    common.add_argument("--outer-radius", type=float, default=None)
    common.add_argument("--center-x", type=float, default=0.0)
    common.add_argument("--center-y", type=float, default=0.0)
    common.add_argument("--winding-inner", type=_winding, default=1)
    common.add_argument("--winding-outer", type=_winding, default=1)
    common.add_argument("--anchor", type=float, default=0.0, help="direction of endpoint A from the center, radians")
    common.add_argument("--n", type=int, default=256, help="number of samples")
    common.add_argument("--a", type=float, default=1.0, help="hyperbola semi-axis (construct)")
    common.add_argument("--b", type=float, default=None, help="hyperbola semi-axis (construct); default from 2e^2 = mu^2 + 1")
    common.add_argument("--svg", metavar="PATH")
    common.add_argument("--csv", metavar="PATH")
    common.add_argument("--json", metavar="PATH")
    common.add_argument("--tol", type=float, default=1e-9)

    parser = _Parser(prog="limacon", description="Limacon-like spiral transitions between concentric circles.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="mode", required=True, parser_class=_Parser)
    for mode in MODES:
        sub.add_parser(mode, parents=[common])
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> JobConfig:
    ns = build_parser().parse_args(argv)
    d = vars(ns)
    d["mu"] = d["mu"] or []
    return JobConfig(**d)


def _fail(exc: Exception, code: int) -> int:
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}) + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        config = parse_config(argv)
        code, _ = run(config)
        return code
    except LimaconError as exc:
        return _fail(exc, exc.exit_code)
    except OSError as exc:
        return _fail(exc, 2)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
