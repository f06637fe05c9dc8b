import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from limacon.core import LimaconParams, endpoint_elements, eval_rational
from limacon.diffgeo import (
    arc_length,
    curvature_at,
    curvature_profile,
    derivatives,
    endpoint_dk_ds,
    endpoint_grid,
    find_vertices,
    is_monotone_curvature,
    profile_arrays,
    speed,
    t_to_w,
    tangent_angle,
    transition_length,
    turning_angle,
    turning_angle_by_quadrature,
    w_to_t,
)
from limacon.errors import NotSpiralRegime, SingularPoint, ValidationError

from conftest import SPIRAL_MUS

mp.mp.dps = 30


def _mp_curve(mu, f):
    mu, f = mp.mpf(mu), mp.mpf(f)

    def z(t):
        d = t**4 + 1
        x = f * ((mu - 1) * t**4 - 2 * mu * t**2 + (mu + 1)) / d
        y = f * mp.sqrt(2) * ((mu - 1) * t**3 - (mu + 1) * t) / d
        return x, y

    return z


def _mp_curvature(mu, f, t):
    """Curvature of the curve oriented by decreasing t, by high-precision differentiation."""
    z = _mp_curve(mu, f)
    t = mp.mpf(t)
    x1 = mp.diff(lambda s: z(s)[0], t, 1)
    y1 = mp.diff(lambda s: z(s)[1], t, 1)
    x2 = mp.diff(lambda s: z(s)[0], t, 2)
    y2 = mp.diff(lambda s: z(s)[1], t, 2)
    return float(-(x1 * y2 - y1 * x2) / (x1**2 + y1**2) ** 1.5)


def _mp_length(mu, f, a, b):
    z = _mp_curve(mu, f)

    def sp(t):
        return mp.sqrt(mp.diff(lambda s: z(s)[0], t) ** 2 + mp.diff(lambda s: z(s)[1], t) ** 2)

    return float(mp.quad(sp, [a, 1, b] if a < 1 < b else [a, b]))


class TestCoordinates:
    def test_round_trip(self):
        t = np.array([0.0, 0.3, 1.0, 2.0, 1e6])
        # 2 - 1/t keeps about eps * t relative accuracy
        back = w_to_t(t_to_w(t))
        assert np.all(np.abs(back - t) <= 4e-16 * np.maximum(t, 1.0) ** 2)
        assert float(t_to_w(np.inf)) == 2.0
        assert float(w_to_t(2.0)) == math.inf

    def test_grid(self):
        w = endpoint_grid(9)
        assert w[0] == 0.0 and w[-1] == 2.0 and w[4] == pytest.approx(1.0)
        assert np.all(np.diff(w) > 0)
        with pytest.raises(ValidationError):
            endpoint_grid(1)


class TestDerivatives:
    @pytest.mark.parametrize("mu", [-3.0, -0.5, 0.0, 0.5, 1.0, 3.0])
    @pytest.mark.parametrize("t", [-2.5, -0.7, 0.0, 0.4, 1.0, 3.0])
    def test_central_difference(self, mu, t):
        params = LimaconParams(mu, 1.3)
        h = 1e-6
        d1, d2 = derivatives(params, t)
        zp = np.array(tuple(eval_rational(params, t + h)))
        zm = np.array(tuple(eval_rational(params, t - h)))
        z0 = np.array(tuple(eval_rational(params, t)))
        scale = 1.0 + np.max(np.abs(d1))
        np.testing.assert_allclose(d1, (zp - zm) / (2 * h), rtol=1e-6, atol=1e-6 * scale)
        h2 = 1e-4
        zp = np.array(tuple(eval_rational(params, t + h2)))
        zm = np.array(tuple(eval_rational(params, t - h2)))
        np.testing.assert_allclose(d2, (zp - 2 * z0 + zm) / h2**2, rtol=1e-5, atol=1e-5 * (1 + np.max(np.abs(d2))))

    def test_even_x_at_zero(self):
        d1, _ = derivatives(LimaconParams(3.0, 1.0), 0.0)
        assert d1[0] == 0.0

    def test_regular_arc(self):
        sp = speed(LimaconParams(3.0, 1.0), np.linspace(-10.0, 10.0, 20001))
        assert np.min(sp) > 0.0

    def test_speed_at_cusp(self):
        assert speed(LimaconParams(1.0, 1.0), 1e9)[0] < 1e-8


class TestCurvature:
    @pytest.mark.parametrize("mu", [-3.0, -1.2, 0.3, 0.5, 2.0, 10.0])
    @pytest.mark.parametrize("t", [0.0, 0.25, 0.9, 1.0, 1.7, 6.0])
    def test_against_mpmath(self, mu, t):
        assert curvature_at(LimaconParams(mu, 0.8), t) == pytest.approx(_mp_curvature(mu, 0.8, t), rel=1e-10, abs=1e-12)

    @pytest.mark.parametrize("mu", SPIRAL_MUS + [0.5, -0.7])
    @pytest.mark.parametrize("f", [1.0, -2.0])
    def test_endpoint_closed_forms(self, mu, f):
        params = LimaconParams(mu, f)
        ends = endpoint_elements(params)
        assert curvature_at(params, 0.0) == pytest.approx(ends.elem_A.k, rel=1e-13)
        assert curvature_at(params, math.inf) == pytest.approx(ends.elem_B.k, rel=1e-13)
        assert curvature_at(params, 1e9) == pytest.approx(ends.elem_B.k, rel=1e-9)
        for t, e in ((0.0, ends.elem_A), (math.inf, ends.elem_B)):
            assert math.remainder(tangent_angle(params, t) - e.tau, 2 * math.pi) == pytest.approx(0.0, abs=1e-14)

    def test_even(self):
        params = LimaconParams(3.0, 1.0)
        for t in (0.1, 0.8, 1.5, 40.0):
            assert curvature_at(params, -t) == pytest.approx(curvature_at(params, t), rel=1e-13)

    def test_singular_cusp(self):
        with pytest.raises(SingularPoint):
            curvature_at(LimaconParams(1.0, 1.0), math.inf)
        with pytest.raises(SingularPoint):
            curvature_at(LimaconParams(-1.0, 1.0), 0.0)

    def test_nan_rejected(self):
        with pytest.raises(ValidationError):
            curvature_at(LimaconParams(3.0, 1.0), math.nan)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(1.05, 20.0), st.floats(0.1, 10.0), st.floats(0.01, 50.0), st.floats(0.2, 5.0))
    def test_scaling(self, mu, f, t, c):
        k1 = curvature_at(LimaconParams(mu, f), t)
        k2 = curvature_at(LimaconParams(mu, c * f), t)
        assert k2 == pytest.approx(k1 / c, rel=1e-10)


class TestArcLength:
    def test_reference_value(self):
        # computed with mpmath at 30 digits
        assert transition_length(LimaconParams(3.0, 1.0)) == pytest.approx(10.026001931748, rel=1e-12)

    @pytest.mark.parametrize("mu", [-3.0, 0.5, 1.5, 3.0])
    @pytest.mark.parametrize("a, b", [(0.0, 0.5), (0.2, 3.0), (1.0, 8.0)])
    def test_against_mpmath(self, mu, a, b):
        want = _mp_length(mu, 1.0, a, b)
        assert arc_length(LimaconParams(mu, 1.0), a, b) == pytest.approx(want, rel=1e-10)

    def test_signed_and_additive(self):
        params = LimaconParams(3.0, 1.0)
        ab = arc_length(params, -0.5, 2.0)
        assert ab == pytest.approx(arc_length(params, -0.5, 0.3) + arc_length(params, 0.3, 2.0), rel=1e-12)
        assert arc_length(params, 2.0, -0.5) == pytest.approx(-ab, rel=1e-15)
        assert arc_length(params, 1.0, 1.0) == 0.0

    def test_whole_curve(self):
        params = LimaconParams(3.0, 1.0)
        total = arc_length(params, -math.inf, math.inf)
        assert total == pytest.approx(2 * transition_length(params), rel=1e-12)

    def test_cusp_bound_rejected(self):
        with pytest.raises(SingularPoint):
            arc_length(LimaconParams(1.0, 1.0), 0.0, math.inf)

    def test_scales_with_f(self):
        assert transition_length(LimaconParams(3.0, -2.5)) == pytest.approx(2.5 * transition_length(LimaconParams(3.0, 1.0)), rel=1e-12)


class TestTurning:
    @pytest.mark.parametrize("mu", SPIRAL_MUS)
    def test_two_pi(self, mu):
        params = LimaconParams(mu, 1.0)
        assert abs(turning_angle(params)) == pytest.approx(2 * math.pi, abs=1e-12)
        assert turning_angle_by_quadrature(params) == pytest.approx(turning_angle(params), abs=1e-9)

    @pytest.mark.parametrize("mu", [0.0, 0.5, 1.0, -1.0])
    def test_requires_spiral(self, mu):
        with pytest.raises(NotSpiralRegime):
            turning_angle(LimaconParams(mu, 1.0))


class TestMonotone:
    @pytest.mark.parametrize("mu", SPIRAL_MUS + [1.0001, 1.0])
    def test_spiral(self, mu):
        rep = is_monotone_curvature(LimaconParams(mu, 1.0))
        assert rep.monotone and bool(rep)
        assert rep.n_samples >= 9999

    @pytest.mark.parametrize("mu", [-0.7, -0.3, 0.3, 0.5, 0.7])
    def test_non_spiral(self, mu):
        assert not is_monotone_curvature(LimaconParams(mu, 1.0)).monotone

    def test_direction(self):
        # curvature grows from A (large circle) to B (small circle)
        assert is_monotone_curvature(LimaconParams(3.0, 1.0)).direction == 1

    @pytest.mark.parametrize("mu", SPIRAL_MUS)
    def test_g3_endpoints(self, mu):
        a, b = endpoint_dk_ds(LimaconParams(mu, 1.0))
        assert abs(a) < 1e-12 and abs(b) < 1e-12


def _dense_extrema(params, n=200001):
    t = np.linspace(-6.0, 6.0, n)
    k = np.array([curvature_at(params, x) for x in t])
    i = np.where((np.diff(np.sign(np.diff(k))) != 0))[0] + 1
    return t[i]


class TestVertices:
    def test_elliptic_known(self):
        v = find_vertices(LimaconParams(0.5, 1.0))
        assert sorted(x.t for x in v) == pytest.approx([-math.sqrt(3.0), math.sqrt(3.0)], rel=1e-10)

    @pytest.mark.parametrize("mu", [-0.7, 0.3, 0.7])
    def test_against_dense_scan(self, mu):
        params = LimaconParams(mu, 1.0)
        found = sorted(v.t for v in find_vertices(params) if abs(v.t) < 6.0)
        dense = sorted(x for x in _dense_extrema(params, 20001) if 1e-3 < abs(x))
        assert len(found) == len(dense) >= 2
        np.testing.assert_allclose(found, dense, atol=2e-3)
        for v in find_vertices(params):
            assert v.k == pytest.approx(curvature_at(params, v.t), rel=1e-14)

    @pytest.mark.parametrize("mu", SPIRAL_MUS)
    def test_spiral_has_none(self, mu):
        assert find_vertices(LimaconParams(mu, 1.0)) == []

    def test_include_endpoints(self):
        v = find_vertices(LimaconParams(3.0, 1.0), include_endpoints=True)
        assert {x.t for x in v} >= {0.0}


class TestProfile:
    def test_arrays(self):
        params = LimaconParams(3.0, 1.0)
        w, s, k, tau = profile_arrays(params, 65)
        assert np.all(np.diff(s) > 0)
        assert s[-1] == pytest.approx(transition_length(params), rel=1e-12)
        assert k[0] == pytest.approx(0.375, rel=1e-14)
        assert k[-1] == pytest.approx(1.5, rel=1e-14)
        assert tau[-1] - tau[0] == pytest.approx(2 * math.pi, abs=1e-12)

    def test_samples(self):
        prof = curvature_profile(LimaconParams(3.0, 1.0), 5)
        assert prof[0].t == 0.0 and prof[-1].t == math.inf
        assert prof[2].t == pytest.approx(1.0)

    def test_cusp_rejected(self):
        with pytest.raises(SingularPoint):
            profile_arrays(LimaconParams(1.0, 1.0), 10)
