import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from limacon.core import LimaconParams, Point2, RegimeClass, curvature_ratio, endpoint_elements, eval_rational_many, implicit_residual_many
from limacon.errors import InversionPoleOnCurve, OppositeWinding, PoleAtCenter, ValidationError
from limacon.inversion import (
    CanonicalHyperbola,
    concentricity_scan,
    conic_from_params,
    conic_residual,
    construct_by_inversion,
    duality_samples,
    eccentricity_condition,
    fd_curvature_element,
    invert_in_circle,
    invert_many,
    limacon_conic_duality_check,
    midcircle,
    midcircle_symmetry_residual,
)

from conftest import MU_GRID


def _foci(A, C, D, F):
    """Foci on the x axis of A x^2 + C y^2 + D x + F = 0 by completing the square (A != 0)."""
    xc = -D / (2.0 * A)
    G = D * D / (4.0 * A) - F
    ax, ay = G / A, G / C
    if ax > 0 and ay > 0:
        c = math.sqrt(ax - ay)
    else:
        c = math.sqrt(abs(ax) + abs(ay))
    return sorted([xc - c, xc + c])


class TestConic:
    def test_coefficients_mu3(self):
        c = conic_from_params(LimaconParams(3.0, 1.0))
        assert c.coefficients == (-8.0, 0.0, 2.0, 6.0, 0.0, -1.0)
        assert c.e == pytest.approx(math.sqrt(5.0), rel=1e-15)
        assert c.p == 0.5

    @pytest.mark.parametrize(
        "mu, kind", [(3.0, "hyperbola"), (-1.5, "hyperbola"), (1.0, "parabola"), (0.5, "ellipse"), (0.0, "ellipse")]
    )
    def test_kind_tracks_regime(self, mu, kind):
        c = conic_from_params(LimaconParams(mu, 1.0))
        assert c.kind == kind
        want = RegimeClass.ELLIPTIC if mu == 0.0 else LimaconParams(mu, 1.0).regime
        assert c.regime is want

    @pytest.mark.parametrize("mu", [-3.0, -0.5, 0.0, 0.5, 1.5, 3.0, 10.0])
    @pytest.mark.parametrize("f", [1.0, 2.5])
    def test_foci_against_completed_square(self, mu, f):
        c = conic_from_params(LimaconParams(mu, f))
        want = _foci(c.A, c.C, c.D, c.F)
        np.testing.assert_allclose(sorted([c.x_f_plus, c.x_f_minus]), want, rtol=1e-12, atol=1e-14)

    def test_parabola_focus(self):
        # 2 y^2 + 2 x - 1 = 0 opens to -x with vertex 1/2 and focus 1/4
        c = conic_from_params(LimaconParams(1.0, 1.0))
        assert c.x_f_plus == 0.25 and c.x_f_minus == math.inf

    @given(st.floats(-20.0, 20.0))
    def test_eccentricity_law(self, mu):
        assert 2.0 * eccentricity_condition(mu) ** 2 == pytest.approx(mu * mu + 1.0, rel=1e-14)


class TestInversion:
    def test_fixed_circle(self):
        p = invert_in_circle((0.6, 0.8), (0.0, 0.0), 1.0)
        assert p.x == pytest.approx(0.6) and p.y == pytest.approx(0.8)

    def test_pole(self):
        with pytest.raises(PoleAtCenter):
            invert_in_circle((1.0, 2.0), (1.0, 2.0), 3.0)
        with pytest.raises(PoleAtCenter):
            invert_many([[0.0, 0.0]], (0.0, 0.0), 1.0)

    @settings(max_examples=100)
    @given(
        st.tuples(st.floats(-10, 10), st.floats(-10, 10)),
        st.tuples(st.floats(-10, 10), st.floats(-10, 10)),
        st.floats(0.1, 5.0),
    )
    def test_involution(self, p, c, r):
        if math.hypot(p[0] - c[0], p[1] - c[1]) < 1e-2:
            return
        q = invert_in_circle(invert_in_circle(p, c, r), c, r)
        assert q.x == pytest.approx(p[0], abs=1e-9) and q.y == pytest.approx(p[1], abs=1e-9)

    def test_many_matches_single(self):
        pts = np.array([[1.0, 2.0], [-3.0, 0.5]])
        many = invert_many(pts, (0.5, -0.5), 2.0)
        for row, p in zip(many, pts):
            assert tuple(row) == pytest.approx(tuple(invert_in_circle(p, (0.5, -0.5), 2.0)))


class TestDuality:
    @pytest.mark.parametrize("mu", MU_GRID)
    @pytest.mark.parametrize("f", [1.0, -2.0])
    def test_all_regimes(self, mu, f):
        assert limacon_conic_duality_check(LimaconParams(mu, f), 128) < 1e-9

    def test_samples_avoid_origin(self):
        params = LimaconParams(0.5, 1.0)
        z = duality_samples(params, 128)
        assert len(z) <= 128
        assert np.min(np.hypot(z[:, 0], z[:, 1])) >= 1e-3

    def test_converse(self):
        # conic points invert back onto the limacon
        params = LimaconParams(3.0, 1.0)
        c = conic_from_params(params)
        y = np.linspace(-3.0, 3.0, 41)
        xc, a = 0.375, 0.125
        # 8 (x - xc)^2 - 2 y^2 = 1/8, i.e. a^2 = 1/64 and b^2 = 1/16
        x = xc + a * np.sqrt(1.0 + 16.0 * y * y)
        pts = np.column_stack([x, y])
        assert max(abs(conic_residual(c, p)) for p in pts) < 1e-12
        back = invert_many(pts, (0.0, 0.0), 1.0)
        assert np.max(np.abs(implicit_residual_many(params, back))) < 1e-12


class TestMidcircle:
    def test_radius_mu3(self):
        circ = midcircle(endpoint_elements(LimaconParams(3.0, 1.0)))
        assert circ.radius == pytest.approx(4.0 / 3.0, rel=1e-15)
        assert circ.center.x == pytest.approx(4.0 / 3.0, rel=1e-15)

    @pytest.mark.parametrize("mu", [1.5, 3.0, -3.0, 10.0])
    def test_swaps_extremal_circles(self, mu):
        params = LimaconParams(mu, 1.0)
        ends = endpoint_elements(params)
        circ = midcircle(ends)
        img = invert_in_circle(tuple(ends.elem_A.point), tuple(circ.center), circ.radius)
        assert img.distance(circ.center) == pytest.approx(ends.elem_B.radius, rel=1e-13)
        assert midcircle_symmetry_residual(params, ends, 64) < 1e-9

    def test_opposite_winding(self):
        with pytest.raises(OppositeWinding):
            midcircle(endpoint_elements(LimaconParams(0.5, 1.0)))
        with pytest.raises(OppositeWinding):
            midcircle(endpoint_elements(LimaconParams(0.0, 1.0)))


class TestConstruction:
    def test_fd_element_on_circle(self):
        z, tau, k = fd_curvature_element(lambda t: 2.0 * np.exp(1j * t), 0.3)
        assert abs(z - 2.0 * np.exp(0.3j)) < 1e-15
        assert k == pytest.approx(0.5, rel=1e-12)
        assert tau == pytest.approx(0.3 + math.pi / 2, abs=1e-12)

    def test_hyperbola(self):
        h = CanonicalHyperbola(1.0, 2.0)
        assert h.e == pytest.approx(math.sqrt(5.0)) and h.p == 4.0
        assert CanonicalHyperbola.from_eccentricity(1.0, math.sqrt(5.0)).b == pytest.approx(2.0)
        z = h.z(np.linspace(-2, 2, 9))
        np.testing.assert_allclose(z.real**2 - z.imag**2 / 4.0, 1.0, rtol=1e-13)
        with pytest.raises(ValidationError):
            CanonicalHyperbola.from_eccentricity(1.0, 0.9)
        with pytest.raises(ValidationError):
            CanonicalHyperbola(0.0, 1.0)

    def test_concentric_mu3(self):
        rep = construct_by_inversion(CanonicalHyperbola(1.0, 2.0), 3.0)
        assert rep.concentric and rep.distance < 1e-9
        assert rep.x0 == 3.0
        (_, _, ka), (_, _, kb) = rep.elements
        assert kb / ka == pytest.approx(curvature_ratio(3.0), rel=1e-9)

    def test_inversion_center_at_mu_p_fails(self):
        # centring the inversion at mu * p instead of mu * a does not give concentric circles
        h = CanonicalHyperbola(1.0, 2.0)
        assert construct_by_inversion(h, 3.0, x0=3.0 * h.p).distance > 1.0

    @pytest.mark.parametrize("mu", [1.5, 3.0, 5.0])
    def test_scan(self, mu):
        (_, lo), (_, mid), (_, hi) = concentricity_scan(mu)
        assert mid < 1e-9 and lo > 1e-3 and hi > 1e-3

    def test_pole_on_curve(self):
        with pytest.raises(InversionPoleOnCurve):
            construct_by_inversion(CanonicalHyperbola(1.0, 2.0), 1.0)

    def test_image_is_a_limacon(self):
        # the image is a similar copy of the limacon with the same mu
        mu = 3.0
        rep = construct_by_inversion(CanonicalHyperbola.from_eccentricity(1.0, eccentricity_condition(mu)), mu, n=64)
        ends = endpoint_elements(LimaconParams(mu, 1.0))
        (za, _, ka), _ = rep.elements
        scale = ends.elem_A.k / ka
        # canonical A is the far vertex of the image; map the image so that its center goes to the canonical one
        c = rep.centers[0]
        pts = (rep.points[:, 0] + 1j * rep.points[:, 1] - c) * np.sign((za - c).real) / scale
        back = np.column_stack([pts.real + ends.center.x, pts.imag])
        assert np.max(np.abs(implicit_residual_many(LimaconParams(mu, 1.0), back))) < 1e-8
