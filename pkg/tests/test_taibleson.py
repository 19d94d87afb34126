import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qharm.field import FieldParams, QuotientLattice
from qharm.gamma import gamma_qn
from qharm.radial import RadialProfile, lp_norm, radial_fourier
from qharm.taibleson import (
    hypersingular_constant,
    levy_khinchin_check,
    real_part_variant_check,
    taibleson_fourier,
    taibleson_hypersingular,
    taibleson_hypersingular_lattice,
)
from qharm.vilenkin import lift_profile

from conftest import make_profile, quotient_params

P21 = FieldParams(2, 1, 1.0)


class TestFourierRoute:
    def test_zero(self):
        out = taibleson_fourier(RadialProfile.zeros(P21, -2, 2))
        assert lp_norm(out, math.inf) == 0.0

    def test_worked_value(self):
        """D^1 applied to the unit-ball indicator evaluates to 2/3 at 0."""
        D = taibleson_fourier(RadialProfile.ball_indicator(P21, 0))
        assert abs(D.tail - 2.0 / 3.0) < 1e-13

    def test_eigenlayer_diagonal(self, rng):
        """Fourier mass on one crown scales by the single multiplier value."""
        params = FieldParams(3, 2, 0.5)
        m0 = -2
        e = radial_fourier(RadialProfile(params, m0, m0, [1.0]), "inverse")
        D = taibleson_fourier(e)
        lam = 3.0 ** (-m0 * 0.5)
        assert lp_norm(D - lam * e, 2) < 1e-12 * lam


class TestOracleEquivalence:
    @pytest.mark.parametrize("q,n,alpha", [(2, 1, 1.0), (3, 2, 0.5), (5, 1, 2.0)])
    def test_sphere_indicators(self, q, n, alpha):
        params = FieldParams(q, n, alpha)
        for k0 in range(-3, 4):
            f = RadialProfile.sphere_indicator(params, k0)
            D = taibleson_fourier(f)
            for k_x in list(range(-5, 6)) + [None]:
                hs = taibleson_hypersingular(f, k_x)
                fo = D.tail if k_x is None else D.value_at(k_x)
                assert abs(hs - fo) <= 1e-10 * max(1.0, abs(fo))

    def test_random_window(self, rng):
        f = make_profile(rng, P21, -4, 4, tail=0.5)
        D = taibleson_fourier(f)
        for k_x in list(range(-6, 7)) + [None]:
            hs = taibleson_hypersingular(f, k_x)
            fo = D.tail if k_x is None else D.value_at(k_x)
            assert abs(hs - fo) <= 1e-10 * max(1.0, abs(fo))

    def test_worked_value_hypersingular(self):
        f = RadialProfile.ball_indicator(P21, 0)
        assert abs(taibleson_hypersingular(f, None) - 2.0 / 3.0) < 1e-13


class TestLatticeRoute:
    def test_annihilates_constants(self):
        lat = QuotientLattice(quotient_params(2, 1), 3, 3)
        const = np.full(lat.size, 1.7 - 0.4j)
        for x in (0, 5, 17):
            assert taibleson_hypersingular_lattice(const, x, lat) == 0.0

    def test_matches_radial_route_inside_window(self):
        """On a lifted profile whose support clears the lattice boundary, the
        quotient-model operator agrees with the closed-form radial one at
        points where f vanishes (no outer-tail correction)."""
        params = quotient_params(2, 1)
        lat = QuotientLattice(params, 4, 4)
        prof = RadialProfile.sphere_indicator(params, 1)
        lifted = lift_profile(prof, lat)
        norms = lat.norms()
        D_radial = taibleson_fourier(prof)
        # pick x on a crown where f(x) = 0: outer truncation exact
        for k_x in (-1, 0, 2, 3):
            idxs = np.nonzero(norms == 2.0 ** (-k_x))[0]
            got = taibleson_hypersingular_lattice(lifted.values, int(idxs[0]), lat)
            want = D_radial.value_at(k_x)
            assert abs(got - want) < 1e-10

    def test_radial_input_radial_output(self):
        params = quotient_params(3, 1)
        lat = QuotientLattice(params, 2, 2)
        prof = RadialProfile.sphere_indicator(params, 0)
        lifted = lift_profile(prof, lat)
        norms = lat.norms()
        for v in np.unique(norms):
            idxs = np.nonzero(norms == v)[0]
            outs = [
                taibleson_hypersingular_lattice(lifted.values, int(i), lat)
                for i in idxs[:4]
            ]
            assert max(abs(o - outs[0]) for o in outs) < 1e-12


class TestLevyKhinchin:
    def test_worked_case_exact(self):
        lhs, rhs = levy_khinchin_check(0, P21)
        assert lhs == 1.0
        assert rhs == 1.0

    def test_zero_point(self):
        assert levy_khinchin_check(None, P21) == (0.0, 0.0)

    @settings(max_examples=60, deadline=None)
    @given(
        st.sampled_from([2, 3, 5]),
        st.sampled_from([1, 2]),
        st.sampled_from([0.5, 1.0, 2.0, 3.7]),
        st.integers(-3, 3),
    )
    def test_closed_form_grid(self, q, n, alpha, n0):
        params = FieldParams(q, n, alpha)
        lhs, rhs = levy_khinchin_check(-n0, params)
        assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), 1.0)

    def test_truncated_mode(self):
        params = FieldParams(3, 2, 0.5)
        lhs, rhs = levy_khinchin_check(-3, params, mode="truncated", budget=40)
        assert abs(lhs - rhs) <= 1e-6
        lhs2, rhs2 = levy_khinchin_check(-3, params, mode="closed_form")
        assert abs(lhs2 - rhs2) <= 1e-12 * abs(lhs2)

    def test_mode_validation(self):
        with pytest.raises(ValueError):
            levy_khinchin_check(0, P21, mode="bogus")


class TestConstants:
    @pytest.mark.parametrize("q,n,alpha", [(2, 1, 1.0), (3, 2, 0.5), (5, 2, 3.7)])
    def test_hypersingular_constant_is_reciprocal_gamma(self, q, n, alpha):
        params = FieldParams(q, n, alpha)
        assert abs(
            hypersingular_constant(params) - 1.0 / gamma_qn(-alpha, params).real
        ) < 1e-12 * abs(hypersingular_constant(params))


class TestRealPartVariant:
    def test_imaginary_part_vanishes(self):
        lat = QuotientLattice(quotient_params(2, 1), 3, 3)
        worst = max(real_part_variant_check(i, lat) for i in range(lat.size))
        assert worst <= 1e-13

    def test_zero_point(self):
        lat = QuotientLattice(quotient_params(3, 1), 2, 2)
        assert real_part_variant_check(0, lat) == 0.0

    def test_stable_under_refinement(self):
        params = quotient_params(2, 1)
        a = max(
            real_part_variant_check(i, QuotientLattice(params, 2, 2)) for i in range(3)
        )
        b = max(
            real_part_variant_check(i, QuotientLattice(params, 2, 4)) for i in range(3)
        )
        assert a <= 1e-13 and b <= 1e-13


class TestConditionalNegativeDefiniteness:
    def test_zero_sum_weights(self, rng):
        """sum c_i conj(c_j) ||x_i - x_j||**alpha has nonpositive real part
        for weights summing to zero."""
        lat = QuotientLattice(quotient_params(2, 1), 3, 3)
        for alpha in (0.5, 1.0, 3.7):
            for _ in range(25):
                m = 6
                pts = rng.integers(0, lat.size, size=m)
                c = rng.standard_normal(m) + 1j * rng.standard_normal(m)
                c[-1] = -np.sum(c[:-1])
                total = 0.0
                for i in range(m):
                    for j in range(m):
                        d = lat.sub(int(pts[i]), int(pts[j]))
                        total += (c[i] * np.conj(c[j])).real * float(
                            lat.norm(d)
                        ) ** alpha
                assert total <= 1e-10
