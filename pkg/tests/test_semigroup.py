import cmath
import math

import numpy as np
import pytest

from holoflow import (
    BadParameter,
    CoefSpace,
    EscapeError,
    SeriesFn,
    apply,
    generator_action,
    generator_residual,
    matrix_summary,
    matrix_to_csv,
    maximality_residual,
    operator_matrix,
    parse_symbol,
    series_compose,
    strong_continuity_report,
    transport_pde_residual,
)

H2 = CoefSpace.h2()
LINEAR = parse_symbol("-z")
TANH = parse_symbol("1-z^2")


def e(k, n):
    return SeriesFn.basis(k, n)


def tanh_flow(t, z):
    return cmath.tanh(t + cmath.atanh(z))


class TestApply:
    def test_linear_eigenvector(self):
        out = apply(LINEAR, math.log(2), e(1, 1), 1e-10)
        assert np.allclose(out.coeffs, [0, 0.5], atol=1e-10)

    def test_time_zero_is_identity(self):
        f = SeriesFn([0.3, 1, -2j, 0.1])
        out = apply(TANH, 0.0, f, 1e-10)
        assert np.array_equal(out.coeffs, f.coeffs)

    def test_constant_series_fixed(self):
        f = SeriesFn([2.5])
        assert np.array_equal(apply(TANH, 0.7, f, 1e-9).coeffs, f.coeffs)

    def test_tanh_flow_values(self):
        out = apply(TANH, 0.5, e(1, 32), 1e-10)
        for k in range(5):
            z = 0.2 * cmath.exp(2j * cmath.pi * k / 5)
            assert abs(out.eval_at(z) - tanh_flow(0.5, z)) <= 1e-8

    def test_escape_propagates(self):
        with pytest.raises(EscapeError):
            apply(parse_symbol("z"), 3.0, e(1, 8), 1e-9)

    def test_multiplicative_on_polynomials(self):
        n = 16
        f = e(1, n) + e(2, n)
        g = e(1, n) - e(3, n)
        left = apply(TANH, 0.4, f * g, 1e-10)
        right = apply(TANH, 0.4, f, 1e-10) * apply(TANH, 0.4, g, 1e-10)
        assert np.max(np.abs(left.coeffs - right.coeffs)) <= 1e-9


class TestOperatorMatrix:
    def test_linear_is_diagonal(self):
        m = operator_matrix(LINEAR, 0.7, 6, 1e-10)
        diag = np.exp(-0.7 * np.arange(7))
        assert np.allclose(m.entries, np.diag(diag), atol=1e-9)
        assert m.spectral_radius_estimate() == pytest.approx(1.0)

    def test_time_zero_identity(self):
        m = operator_matrix(TANH, 0.0, 5, 1e-10)
        assert np.array_equal(m.entries, np.eye(6))

    def test_column_zero_fixed(self):
        m = operator_matrix(TANH, 0.3, 8, 1e-10)
        want = np.zeros(9)
        want[0] = 1
        assert np.array_equal(m.entries[:, 0], want)

    def test_matches_apply_on_random_series(self):
        rng = np.random.default_rng(12)
        m = operator_matrix(TANH, 0.3, 8, 1e-10)
        for _ in range(10):
            f = SeriesFn(rng.standard_normal(9) + 1j * rng.standard_normal(9))
            direct = apply(TANH, 0.3, f, 1e-10)
            assert np.max(np.abs(m.act(f).coeffs - direct.coeffs)) <= 1e-9

    def test_semigroup_law_of_matrices(self):
        for G in (LINEAR, parse_symbol("-i*z"), TANH):
            for t, s in [(0.2, 0.3), (0.3, 0.2), (0.25, 0.25)]:
                mt = operator_matrix(G, t, 8, 1e-11)
                ms = operator_matrix(G, s, 8, 1e-11)
                mts = operator_matrix(G, t + s, 8, 1e-11)
                assert np.max(np.abs(mts.entries - ms.entries @ mt.entries)) \
                    <= 1e-8

    def test_csv_export_shape(self):
        m = operator_matrix(LINEAR, 0.5, 3, 1e-10)
        text = matrix_to_csv(m)
        lines = text.splitlines()
        assert lines[0].startswith("# t=0.5 N=3")
        assert len(lines) == 5
        assert len(lines[1].split(",")) == 8

    def test_summary_consistency(self):
        m = operator_matrix(TANH, 0.4, 12, 1e-10)
        doc = matrix_summary(m)
        assert doc["N"] == 12
        assert doc["residuals"]["apply_consistency"] <= 1e-9


class TestGeneratorResidual:
    def test_linear_half_h(self):
        # residual = |(e^-h - 1)/h + 1| ~ h/2
        h = 1e-3
        r = generator_residual(LINEAR, e(1, 16), H2, h, 1e-10)
        assert r == pytest.approx(h / 2, rel=1e-2)
        assert r <= 1e-3

    def test_constant_series_zero(self):
        f = SeriesFn([1.0] + [0.0] * 16)
        assert generator_residual(TANH, f, H2, 1e-3, 1e-10) <= 1e-12

    def test_first_order_in_h(self):
        steps = [1e-2, 5e-3, 2.5e-3]
        rs = [generator_residual(TANH, e(1, 64), H2, h, 1e-10) for h in steps]
        assert rs[0] / rs[1] == pytest.approx(2.0, rel=0.05)
        assert rs[1] / rs[2] == pytest.approx(2.0, rel=0.05)

    def test_h_validation(self):
        with pytest.raises(BadParameter):
            generator_residual(LINEAR, e(1, 8), H2, 1e-7, 1e-10)

    def test_generator_action_closed_form(self):
        # (1 - z^2) d/dz of z = 1 - z^2
        g = generator_action(TANH, e(1, 8))
        assert np.allclose(g.coeffs, [1, 0, -1, 0, 0, 0, 0, 0, 0], atol=1e-11)


class TestMaximality:
    def test_linear_exact_identity(self):
        r = maximality_residual(LINEAR, e(1, 16), H2, 1.0, 64, 1e-10)
        assert r <= 1e-8

    def test_constant_series_zero(self):
        f = SeriesFn([3.0] + [0.0] * 16)
        assert maximality_residual(TANH, f, H2, 0.5, 16, 1e-10) <= 1e-14

    def test_tanh_quadratic_seed(self):
        r = maximality_residual(TANH, e(2, 64), H2, 0.5, 64, 1e-10)
        assert r <= 1e-6

    def test_simpson_rate(self):
        rs = [maximality_residual(TANH, e(1, 24), H2, 0.8, n, 1e-11)
              for n in (8, 16, 32)]
        assert rs[0] / rs[1] > 8   # order ~4 until solver error floors it
        assert rs[1] / rs[2] > 8

    def test_node_validation(self):
        with pytest.raises(BadParameter):
            maximality_residual(LINEAR, e(1, 8), H2, 0.5, 7, 1e-10)


class TestTransport:
    def test_linear_discretization_error_only(self):
        r = transport_pde_residual(LINEAR, e(1, 16), 0.5, 1.0, 1e-3, 1e-3)
        assert r <= 1e-6

    def test_constant_zero(self):
        f = SeriesFn([4.0] + [0.0] * 8)
        assert transport_pde_residual(TANH, f, 0.3, 0.5, 1e-3, 1e-3) <= 1e-12

    def test_tanh(self):
        r = transport_pde_residual(TANH, e(1, 32), 0.2, 0.4, 1e-3, 1e-3)
        assert r <= 1e-5

    def test_probe_validation(self):
        with pytest.raises(BadParameter):
            transport_pde_residual(LINEAR, e(1, 8), 0.9999, 0.5, 1e-3, 1e-3)


class TestStrongContinuity:
    def test_linear_halving(self):
        ts = [2.0 ** -k for k in range(1, 8)]
        report = strong_continuity_report(LINEAR, e(1, 8), H2, ts)
        devs = [d for _, d in report]
        for (t, d) in report:
            assert d == pytest.approx(1 - math.exp(-t), rel=1e-6)
        ratios = [a / b for a, b in zip(devs, devs[1:])]
        for r in ratios[-3:]:
            assert r == pytest.approx(2.0, rel=0.15)

    def test_zero_series(self):
        report = strong_continuity_report(TANH, SeriesFn.zeros(8), H2,
                                          [0.5, 0.25])
        assert all(d == 0 for _, d in report)

    def test_tanh_decreasing(self):
        ts = [2.0 ** -k for k in range(1, 9)]
        f = e(1, 32) + e(2, 32)
        report = strong_continuity_report(TANH, f, H2, ts)
        devs = [d for _, d in report]
        assert all(a > b for a, b in zip(devs, devs[1:]))
        assert devs[-1] < 1e-2


class TestReproducingPairing:
    def test_pairing_tracks_apply(self):
        f = e(1, 24) + e(3, 24)
        out = apply(TANH, 0.3, f, 1e-10)
        for space in (H2, CoefSpace.bergman(), CoefSpace.dirichlet()):
            for z in (0.3, -0.2 + 0.4j):
                k = space.kernel_coeffs(z, 24)
                assert space.pair(out, k) == pytest.approx(
                    out.eval_at(z), rel=1e-12)
