import numpy as np
import pytest

from supercurv.errors import MismatchError
from supercurv.geometry import (
    conformality_residual,
    conservation_residual,
    cp1_coordinates,
    current_L,
    curvature_components,
    curvature_holomorphic,
    curvature_of,
    el_commutator,
    embed,
    expected_curvature,
    metric,
    sphere_radius2,
    su_basis,
    surface_derivative_residual,
    surface_X,
)
from supercurv.grassmann import THETA_MINUS, THETA_PLUS, align, g_generator, g_mul, odd_algebra, point_max
from supercurv.superfield import (
    CurveSpec,
    align_fields,
    build_curve,
    commutator,
    constant_matrix,
    gsv_curve,
    odd_polynomial,
    partial,
    point_residual,
    polynomial_vector,
    projector,
    random_curve_spec,
    tower,
    veronese,
)

P = 0.6 + 0.7j
EPS = odd_algebra(1)


def gsv(n, coeffs, orders, p=P):
    return gsv_curve(n, odd_polynomial(list(coeffs), "eps1", p, orders, EPS))


@pytest.mark.parametrize(
    "n, k, value",
    [(2, 0, 4.0), (3, 0, 2.0), (3, 1, 1.0), (4, 0, 4 / 3), (5, 2, 1 / 3)],
)
def test_expected_curvature(n, k, value):
    assert expected_curvature(n, k) == pytest.approx(value)


class TestMetric:
    def test_veronese_metric_at_origin(self):
        m = metric(veronese(3, 0, (3, 3)))
        assert m.g_pm.value == pytest.approx(1)
        assert conformality_residual(m) < 1e-14

    def test_holomorphic_metric_is_conformal(self, rng):
        w = build_curve(random_curve_spec(rng, 3), P, (4, 4))
        assert conformality_residual(metric(w)) < 1e-10

    def test_gsv_metric_odd_coefficient(self):
        # g+- = (1/2)(1 + y+ y-)^-2 on CP^1, translated along theta+ eps1
        m = metric(gsv(2, [1.0], (3, 3)))
        mask = EPS.mask(THETA_PLUS, "eps1")
        expected = -1j * np.conj(P) / (1 + abs(P) ** 2) ** 3
        assert m.g_pm.term(mask).value == pytest.approx(expected, abs=1e-12)
        assert m.g_pm.value == pytest.approx(0.5 / (1 + abs(P) ** 2) ** 2)


class TestCurvature:
    @pytest.mark.parametrize("k, value", [(0, 2.0), (1, 1.0), (2, 2.0)])
    def test_veronese_tower(self, k, value):
        K = curvature_of(tower(veronese(3, P, (6, 6)))[k])
        assert K.body == pytest.approx(value, rel=1e-9)
        assert K.soul_max == 0

    @pytest.mark.parametrize("k", [0, 1])
    def test_gsv_tower_has_constant_curvature(self, k):
        K = curvature_of(tower(gsv(3, [1.0, 0.5, -0.3j], (6, 6)))[k])
        assert K.body == pytest.approx(expected_curvature(3, k), rel=1e-9)
        assert K.soul_max < 1e-8
        assert K.theta_soul_max < 1e-8

    def test_non_veronese_curve_is_not_constant(self):
        spec = CurveSpec(kind="custom", n=3, components=[[1.0], [0.0, 1.0], [0.0, 0.0, 0.0, 1.0]])
        values = [curvature_of(build_curve(spec, p, (5, 5))).body.real for p in (0.3, 1.1)]
        assert abs(values[0] - values[1]) > 0.1

    def test_closed_form_on_cp1(self, rng):
        w = build_curve(random_curve_spec(rng, 2), P, (5, 5))
        assert point_max(curvature_holomorphic(w).value - 4) < 1e-10

    def test_closed_form_on_veronese(self):
        K = curvature_holomorphic(veronese(4, P, (5, 5)))
        assert K.body == pytest.approx(4 / 3, rel=1e-10)

    def test_formulas_agree_on_random_curve(self, rng):
        w = build_curve(random_curve_spec(rng, 3), P, (6, 6))
        general, closed = align(curvature_of(w).value, curvature_holomorphic(w).value)
        assert point_max(general - closed) < 1e-8

    def test_components_of_constant_curvature(self):
        K = curvature_of(gsv(3, [1.0], (6, 6)))
        assert point_max(K.k1) < 1e-9
        assert point_max(K.k2) < 1e-9
        assert point_max(K.k3) < 1e-9
        assert K.k0.value == pytest.approx(2)

    def test_components_rebuild_the_curvature(self, rng):
        K = curvature_of(build_curve(random_curve_spec(rng, 3), P, (5, 5)))
        k0, k1, k2, k3 = curvature_components(K)
        value = K.value
        tp = g_generator(THETA_PLUS, value.config, value.base_point, value.orders)
        tm = g_generator(THETA_MINUS, value.config, value.base_point, value.orders)
        rebuilt = k0 + g_mul(tp, k1) * 1j + g_mul(tm, k2) * 1j - g_mul(g_mul(tp, tm), k3)
        assert point_max(rebuilt - value) < 1e-12 * max(1.0, point_max(value))
        assert k0.value == pytest.approx(K.body)


class TestCurrent:
    def test_constant_projector_has_no_current(self):
        P0 = constant_matrix(np.diag([1.0, 0.0]), EPS, P, (2, 2))
        assert point_residual(current_L(P0)) == 0

    def test_bosonic_current_is_a_commutator(self):
        Pk = projector(veronese(3, P, (4, 4)))
        dm, low = align_fields(partial(Pk, "minus"), Pk)
        L, expected = align_fields(current_L(Pk), commutator(dm, low))
        assert point_residual(L - expected) < 1e-14

    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_tower_projectors_are_solutions(self, k):
        Pk = projector(tower(gsv(3, [1.0, 0.5], (6, 6)))[k])
        assert point_residual(el_commutator(Pk)) < 1e-9
        assert point_residual(conservation_residual(Pk)) < 1e-9


class TestSurface:
    def test_surface_of_basis_vector(self):
        e1 = polynomial_vector([[1.0], [0.0]], P, (1, 1))
        np.testing.assert_allclose(surface_X(projector(e1)).body_values(), np.diag([0.5, -0.5]))

    def test_surface_derivative_is_minus_current(self, rng):
        w = build_curve(random_curve_spec(rng, 3), P, (4, 4))
        assert point_residual(surface_derivative_residual(projector(w))) < 1e-9

    def test_pauli_basis(self):
        sigma1, sigma2, sigma3 = np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1])
        basis = su_basis(2)
        np.testing.assert_allclose(basis[0], sigma3)
        np.testing.assert_allclose(basis[1], sigma1)
        np.testing.assert_allclose(basis[2], sigma2)

    @pytest.mark.parametrize("n", [3, 4])
    def test_basis_is_orthonormal(self, n):
        basis = su_basis(n)
        assert len(basis) == n * n - 1
        gram = np.array([[0.5 * np.trace(a @ b) for b in basis] for a in basis])
        np.testing.assert_allclose(gram, np.eye(n * n - 1), atol=1e-14)
        for k in basis:
            np.testing.assert_allclose(k, k.conj().T)
            assert abs(np.trace(k)) < 1e-14

    def test_cp1_coordinates(self):
        w = veronese(2, P, (1, 1))
        point = embed(surface_X(projector(w)))
        np.testing.assert_allclose(point.coords, cp1_coordinates(P), atol=1e-14)
        assert point.norm2 == pytest.approx(0.25)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_sphere_radius(self, rng, n):
        w = build_curve(random_curve_spec(rng, n), P, (2, 2))
        assert embed(surface_X(projector(w))).norm2 == pytest.approx(sphere_radius2(n), abs=1e-12)

    def test_embedding_needs_traceless_matrix(self):
        with pytest.raises(MismatchError):
            embed(projector(veronese(2, P, (1, 1))))
