import math

import numpy as np
import pytest
from pydantic import ValidationError
from pyhalfstrip import CapabilityError, ParameterError, UnknownFunctionError
from pyhalfstrip.vectorfn import (
    TWO_PI,
    Catalog,
    FunctionOnI,
    NormParams,
    QuadratureKind,
    catalog,
    default_rule,
    even_odd_parts,
    finite_difference,
    from_profiles,
    integrate,
    lp_norm,
    make_quadrature,
    resolving_rule,
    sobolev2_norm,
)


class TestMakeQuadrature:
    @pytest.mark.parametrize(
        ("kind", "panels", "order"),
        [
            ("gauss_composite", 1, 2),
            ("gauss_composite", 16, 8),
            ("gauss_composite", 64, 8),
            ("trapezoid_periodic", 7, 2),
            ("trapezoid_periodic", 512, 4),
        ],
    )
    def test_make_quadrature_should_have_weights_summing_to_two_pi_when_sizes_are_valid(self, kind, panels, order):
        rule = make_quadrature(kind, panels, order)
        assert math.isclose(rule.weights.sum(), TWO_PI, rel_tol=1e-12)
        assert np.all(rule.weights > 0)
        assert np.all((rule.nodes >= 0) & (rule.nodes <= TWO_PI))

    @pytest.mark.parametrize("order", [2, 4, 8])
    def test_make_quadrature_should_integrate_polynomials_exactly_when_degree_is_within_exactness(self, order):
        rule = make_quadrature(QuadratureKind.GAUSS_COMPOSITE, 3, order)
        degree = rule.exactness_degree
        assert degree == 2 * order - 1
        assert math.isclose(rule.apply(rule.nodes**degree), TWO_PI ** (degree + 1) / (degree + 1), rel_tol=1e-12)

    def test_make_quadrature_should_place_equally_spaced_nodes_when_kind_is_trapezoid_periodic(self):
        rule = make_quadrature("trapezoid_periodic", 4, 2)
        assert np.allclose(rule.nodes, [0, math.pi / 2, math.pi, 3 * math.pi / 2])
        assert rule.exactness_degree == 0

    def test_make_quadrature_should_integrate_trigonometric_polynomials_when_kind_is_trapezoid_periodic(self):
        rule = make_quadrature("trapezoid_periodic", 32, 2)
        assert abs(rule.apply(np.cos(5 * rule.nodes))) < 1e-12
        assert math.isclose(rule.apply(np.cos(5 * rule.nodes) ** 2), math.pi, rel_tol=1e-12)

    def test_make_quadrature_should_integrate_on_interval_when_interval_is_given(self):
        rule = make_quadrature("gauss_composite", 4, 8, (1.0, 3.0))
        assert math.isclose(rule.weights.sum(), 2.0, rel_tol=1e-12)
        assert math.isclose(rule.apply(np.exp(-rule.nodes)), math.exp(-1) - math.exp(-3), rel_tol=1e-12)

    @pytest.mark.parametrize(("panels", "order"), [(0, 8), (4, 1), (-1, 2)])
    def test_make_quadrature_should_raise_parameter_error_when_sizes_are_invalid(self, panels, order):
        with pytest.raises(ParameterError):
            make_quadrature("gauss_composite", panels, order)

    def test_make_quadrature_should_raise_parameter_error_when_kind_is_unknown(self):
        with pytest.raises(ParameterError):
            make_quadrature("simpson", 4, 2)


class TestDefaultRules:
    def test_default_rule_should_be_composite_gauss_with_512_nodes_when_environment_is_clean(self):
        rule = default_rule()
        assert rule.kind is QuadratureKind.GAUSS_COMPOSITE
        assert rule.nodes.size == 512

    def test_resolving_rule_should_have_two_panels_per_frequency_when_frequency_is_high(self):
        rule = resolving_rule(300)
        assert rule.panels == 600
        assert rule.kind is QuadratureKind.GAUSS_COMPOSITE

    def test_resolving_rule_should_not_be_coarser_than_default_when_frequency_is_low(self):
        assert resolving_rule(3).panels == default_rule().panels


class TestNormParams:
    def test_norm_params_should_raise_validation_error_when_p_is_one(self):
        with pytest.raises(ValidationError):
            NormParams(p=1.0, xi=5.0)

    def test_norm_params_should_raise_validation_error_when_xi_is_not_positive(self):
        with pytest.raises(ValidationError):
            NormParams(p=2.0, xi=0.0)


class TestFunctionOnI:
    f = catalog("xsin_3", 2)

    def test_call_should_return_vector_when_point_is_scalar(self):
        assert self.f(math.pi / 2).shape == (2,)

    def test_call_should_append_dimension_when_points_are_an_array(self):
        assert self.f(np.zeros((4, 5))).shape == (4, 5, 2)

    def test_call_should_raise_parameter_error_when_evaluator_returns_wrong_shape(self):
        f = FunctionOnI(dim=2, evaluator=lambda x: np.zeros((x.size, 3)), name="broken")
        with pytest.raises(ParameterError):
            f(np.zeros(4))

    def test_derivative_should_raise_capability_error_when_analytic_derivative_is_missing(self):
        f = FunctionOnI(dim=1, evaluator=lambda x: x[:, None], name="identity")
        with pytest.raises(CapabilityError):
            f.derivative(1.0, 1)
        assert not f.has_derivatives

    def test_arithmetic_should_combine_values_and_derivatives_when_dimensions_match(self):
        g = catalog("cos_2", 2)
        x = np.linspace(0, TWO_PI, 9)
        combined = 2.0 * self.f - g
        assert np.allclose(combined(x), 2 * self.f(x) - g(x))
        assert np.allclose(combined.derivative(x, 2), 2 * self.f.derivative(x, 2) - g.derivative(x, 2))

    def test_add_should_raise_parameter_error_when_dimensions_differ(self):
        with pytest.raises(ParameterError):
            self.f + catalog("cos_2", 3)  # noqa: B018


class TestFromProfiles:
    def test_from_profiles_should_scale_components_when_weights_are_given(self):
        f = from_profiles(np.cos, None, None, dim=2, name="w", weights=np.array([1.0, -2.0]))
        assert np.allclose(f(0.0), [1.0, -2.0])
        assert f.deriv1 is None

    def test_from_profiles_should_raise_parameter_error_when_weights_have_wrong_shape(self):
        with pytest.raises(ParameterError):
            from_profiles(np.cos, None, None, dim=2, name="w", weights=np.ones(3))


class TestLpNorm:
    rule = default_rule()

    def test_lp_norm_should_be_root_two_pi_when_function_is_one_and_p_is_two(self):
        assert math.isclose(lp_norm(catalog("one"), 2, self.rule), math.sqrt(TWO_PI), rel_tol=1e-12)

    def test_lp_norm_should_use_euclidean_norm_when_values_are_vectors(self):
        assert math.isclose(lp_norm(catalog("one", 3), 2, self.rule), math.sqrt(3 * TWO_PI), rel_tol=1e-12)

    def test_lp_norm_should_equal_root_pi_when_function_is_cos_2x(self):
        assert math.isclose(lp_norm(catalog("cos_2"), 2, self.rule), math.sqrt(math.pi), rel_tol=1e-12)

    @pytest.mark.parametrize("p", [0.5, 0.0, -1.0, math.inf])
    def test_lp_norm_should_raise_parameter_error_when_p_is_out_of_range(self, p):
        with pytest.raises(ParameterError):
            lp_norm(catalog("one"), p, self.rule)

    def test_integrate_should_return_vector_when_function_is_vector_valued(self):
        assert np.allclose(integrate(catalog("one", 2), self.rule), [TWO_PI, TWO_PI])


class TestFiniteDifference:
    x = np.array([1.0, 2.0, 3.0])

    @pytest.mark.parametrize("order", [1, 2])
    def test_finite_difference_should_converge_at_order_two_when_function_is_smooth(self, order):
        f = catalog("cos_2")
        errors = [
            np.max(np.abs(finite_difference(f, self.x, order, h=h) - f.derivative(self.x, order))) for h in (0.02, 0.01)
        ]
        assert 3.5 < errors[0] / errors[1] < 4.5

    def test_finite_difference_should_use_one_sided_stencil_when_point_is_an_end_point(self):
        f = catalog("xsin_3")
        x = np.array([0.0, TWO_PI])
        assert np.allclose(finite_difference(f, x, 1, h=1e-3), f.derivative(x, 1), atol=1e-4)

    def test_finite_difference_should_raise_capability_error_when_order_is_three(self):
        with pytest.raises(CapabilityError):
            finite_difference(catalog("cos_2"), self.x, 3)


class TestSobolev2Norm:
    rule = default_rule()

    def test_sobolev2_norm_should_sum_three_norms_when_function_is_cos_2x(self):
        assert math.isclose(sobolev2_norm(catalog("cos_2"), 2, self.rule), 7 * math.sqrt(math.pi), rel_tol=1e-12)

    def test_sobolev2_norm_should_agree_with_fallback_when_function_is_x_sin_3x(self):
        f = catalog("xsin_3")
        bare = f.model_copy(update={"deriv1": None, "deriv2": None})
        analytic = sobolev2_norm(f, 2, self.rule)
        approximate = sobolev2_norm(bare, 2, self.rule, fallback=True)
        assert abs(approximate - analytic) / analytic < 1e-5

    def test_sobolev2_norm_should_raise_capability_error_when_derivatives_are_missing_and_fallback_is_off(self):
        bare = catalog("bump").model_copy(update={"deriv2": None})
        with pytest.raises(CapabilityError):
            sobolev2_norm(bare, 2, self.rule)


class TestEvenOddParts:
    x = np.linspace(0, TWO_PI, 33)

    @pytest.mark.parametrize("name", ["xsin_3", "combo", "bump"])
    def test_even_odd_parts_should_sum_to_function_when_split(self, name):
        f = catalog(name)
        even, odd = even_odd_parts(f)
        assert np.allclose(even(self.x) + odd(self.x), f(self.x), atol=1e-14)
        assert np.allclose(even(TWO_PI - self.x), even(self.x), atol=1e-13)
        assert np.allclose(odd(TWO_PI - self.x), -odd(self.x), atol=1e-13)

    def test_even_odd_parts_should_flip_derivative_sign_when_reflecting(self):
        even, odd = even_odd_parts(catalog("xsin_3"))
        # (x − π) sin 3x and π sin 3x
        assert np.allclose(odd(self.x)[:, 0], math.pi * np.sin(3 * self.x))
        expected = np.sin(3 * self.x) + 3 * (self.x - math.pi) * np.cos(3 * self.x)
        assert np.allclose(even.derivative(self.x, 1)[:, 0], expected)


class TestCatalog:
    x = np.linspace(0.3, 6.0, 11)

    def test_catalog_should_return_eigenfunction_when_name_is_cos_k(self):
        assert np.allclose(catalog("cos_2")(0.0), [1.0])

    def test_catalog_should_return_associated_function_when_name_is_xsin_k(self):
        assert np.allclose(catalog("xsin_3", 2)(math.pi / 2), [-math.pi / 2, -math.pi / 2])

    def test_catalog_should_return_combination_when_name_is_combo(self):
        x = 1.3
        expected = 0.5 * math.cos(x) - 0.25 * x * math.sin(2 * x) + 0.125 * math.cos(3 * x)
        assert math.isclose(catalog("combo")(x)[0], expected, rel_tol=1e-14)

    def test_catalog_should_vanish_with_derivatives_when_bump_is_evaluated_at_end_points(self):
        f = catalog("bump")
        ends = np.array([0.0, TWO_PI])
        assert np.all(f(ends) == 0)
        assert np.all(f.derivative(ends, 1) == 0)
        assert np.all(f.derivative(ends, 2) == 0)
        assert math.isclose(f(math.pi)[0], math.exp(-1), rel_tol=1e-14)

    @pytest.mark.parametrize("name", ["zero", "one", "cos_2", "xsin_3", "combo", "bump"])
    @pytest.mark.parametrize("order", [1, 2])
    def test_catalog_should_carry_consistent_derivatives_when_entry_is_published(self, name, order):
        f = catalog(name)
        assert np.allclose(finite_difference(f, self.x, order, h=1e-4), f.derivative(self.x, order), atol=1e-5)

    @pytest.mark.parametrize("name", ["nosuch", "cos", "cos_0", "xsin_-1", "bump_2"])
    def test_catalog_should_raise_unknown_function_error_when_name_is_not_published(self, name):
        with pytest.raises(UnknownFunctionError):
            catalog(name)

    def test_catalog_should_raise_parameter_error_when_dim_is_not_positive(self):
        with pytest.raises(ParameterError):
            catalog("one", 0)

    @pytest.mark.parametrize(("name", "entry"), [("bump", Catalog.BUMP), ("XSIN", Catalog.XSIN), ("cos", Catalog.COS)])
    def test_getitem_should_return_entry_when_member_name_is_given_in_any_case(self, name, entry):
        assert Catalog[name] is entry

    def test_getitem_should_raise_unknown_function_error_when_member_is_missing(self):
        with pytest.raises(UnknownFunctionError, match="known: zero, one, cos, xsin, combo, bump"):
            Catalog["nosuch"]  # noqa: B018

    def test_names_should_list_indexed_entries_with_suffix_when_called(self):
        assert Catalog.names == ["zero", "one", "cos_k", "xsin_k", "combo", "bump"]

    def test_catalog_enum_should_resolve_indexed_names_when_called_with_suffix(self):
        assert Catalog("xsin_12") is Catalog.XSIN
        assert str(Catalog.COMBO) == "combo"
