import numpy as np
import pytest

from qdgas.polynomials import (
    BinaryPolynomial,
    Constraint,
    CpboProblem,
    QuboProblem,
    Relation,
    equality_to_penalty,
    is_feasible,
    quantize,
    qubo_terms,
    qubo_to_polynomial,
)

from conftest import PORTFOLIO_TERMS


class TestBinaryPolynomial:
    def test_canonicalization_merges_and_drops_zeros(self):
        p = BinaryPolynomial(3, {(2, 0): 1, (0, 2): 2, (1,): 0})
        assert p.terms == {(0, 2): 3}

    def test_repeated_variable_in_term_rejected(self):
        with pytest.raises(ValueError, match="repeats"):
            BinaryPolynomial(2, {(0, 0): 1})

    def test_out_of_range_variable_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            BinaryPolynomial(2, {(2,): 1})

    def test_non_integer_coefficient_rejected(self):
        with pytest.raises(ValueError, match="not an integer"):
            BinaryPolynomial(1, {(0,): 0.5})

    def test_evaluate_reference_objective(self):
        p = BinaryPolynomial(3, PORTFOLIO_TERMS)
        assert p.evaluate((1, 0, 1)) == -6

    def test_evaluate_all_zeros_gives_free_term(self):
        p = BinaryPolynomial(3, {(): 7, (0, 1): 3})
        assert p.evaluate((0, 0, 0)) == 7

    def test_evaluate_twovar_at_ones(self):
        p = BinaryPolynomial(2, {(): -2, (0,): 1, (1,): 1})
        assert p.evaluate((1, 1)) == 0

    def test_evaluate_validates_assignment(self):
        p = BinaryPolynomial(2, {(0,): 1})
        with pytest.raises(ValueError, match="length"):
            p.evaluate((1,))
        with pytest.raises(ValueError, match="0 or 1"):
            p.evaluate((1, 2))

    def test_evaluate_key_matches_evaluate(self):
        rng = np.random.default_rng(0)
        from conftest import random_polynomial

        p = random_polynomial(rng, 5)
        for key in range(32):
            bits = tuple((key >> i) & 1 for i in range(5))
            assert p.evaluate_key(key) == p.evaluate(bits)

    def test_value_range_exact(self):
        p = BinaryPolynomial(3, PORTFOLIO_TERMS)
        assert p.value_range() == (-6, 2)
        assert p.coefficient_sums() == (-7, 2)


class TestQuboConversion:
    def test_diagonal_merges_into_linear(self):
        qubo = QuboProblem([[2, 0], [0, 0]], [-1, 0], 0)
        assert qubo_to_polynomial(qubo).terms == {(0,): 1}

    def test_constant_only(self):
        qubo = QuboProblem(np.zeros((2, 2)), np.zeros(2), 5)
        assert qubo_to_polynomial(qubo).terms == {(): 5}

    def test_non_integer_entries_rejected(self):
        qubo = QuboProblem([[0.5]], [0.0], 0.0)
        with pytest.raises(ValueError, match="quantize"):
            qubo_to_polynomial(qubo)

    def test_symmetric_convention_counts_both_triangles(self):
        qubo = QuboProblem([[0, 1], [2, 0]], [0, 0], 0)
        assert qubo_to_polynomial(qubo).terms == {(0, 1): 3}

    @pytest.mark.parametrize("num_vars", [2, 4, 8, 12])
    def test_expansion_matches_quadratic_form_exhaustively(self, num_vars):
        rng = np.random.default_rng(num_vars)
        qubo = QuboProblem(
            rng.integers(-5, 6, size=(num_vars, num_vars)),
            rng.integers(-5, 6, size=num_vars),
            int(rng.integers(-5, 6)),
        )
        poly = qubo_to_polynomial(qubo)
        for key in range(1 << num_vars):
            bits = tuple((key >> i) & 1 for i in range(num_vars))
            assert poly.evaluate(bits) == int(round(qubo.evaluate(bits)))

    def test_risk_matrix_expansion_differs_from_reference_objective(self):
        # Half the covariance matrix as Q and the negated returns as b give,
        # under the strict symmetric expansion, a polynomial that is NOT the
        # hand-stated reference objective for the same data. The converter
        # must report its own expansion and leave the discrepancy visible.
        q = 0.5 * np.array([[2, 0, -4], [0, 4, -2], [-4, -2, 10]])
        b = -np.array([1, -2, 3])
        converted = qubo_to_polynomial(QuboProblem(q, b, 0))
        assert converted.terms == {(1,): 4, (2,): 2, (0, 2): -4, (1, 2): -2}
        reference = BinaryPolynomial(3, PORTFOLIO_TERMS)
        assert converted.terms != reference.terms
        differing = [
            key
            for key in range(8)
            if converted.evaluate_key(key) != reference.evaluate_key(key)
        ]
        assert differing  # the two objectives disagree on some assignments


class TestEqualityPenalty:
    def test_two_vars_budget_one(self):
        p = equality_to_penalty(2, budget=1, weight=10)
        assert p.terms == {(): 10, (0,): -10, (1,): -10, (0, 1): 20}

    def test_budget_zero_is_square_of_sum(self):
        p = equality_to_penalty(3, budget=0, weight=1)
        assert p.terms == {
            (0,): 1,
            (1,): 1,
            (2,): 1,
            (0, 1): 2,
            (0, 2): 2,
            (1, 2): 2,
        }

    def test_single_var_budget_one(self):
        p = equality_to_penalty(1, budget=1, weight=1)
        assert p.terms == {(): 1, (0,): -1}

    def test_weight_must_be_positive(self):
        with pytest.raises(ValueError, match="positive"):
            equality_to_penalty(2, budget=1, weight=0)

    @pytest.mark.parametrize("num_vars,budget,weight", [(4, 2, 3), (6, 0, 1), (12, 5, 2)])
    def test_zero_on_budget_and_at_least_weight_off_budget(
        self, num_vars, budget, weight
    ):
        p = equality_to_penalty(num_vars, budget, weight)
        for key in range(1 << num_vars):
            bits = tuple((key >> i) & 1 for i in range(num_vars))
            value = p.evaluate(bits)
            if sum(bits) == budget:
                assert value == 0
            else:
                assert value >= weight


class TestQuantize:
    def test_reference_vector(self):
        report = quantize(
            {(0,): -3.77e-3, (1,): 1.09e-3, (2,): 2.41e-3}, num_value_qubits=5
        )
        assert report.quantized.terms == {(0,): -16, (1,): 5, (2,): 10}

    def test_integers_at_full_scale_unchanged(self):
        report = quantize({(0,): -8.0, (1,): 4.0, (2,): 3.0}, num_value_qubits=4)
        assert report.quantized.terms == {(0,): -8, (1,): 4, (2,): 3}
        assert report.max_abs_error == 0.0

    def test_simple_halving(self):
        report = quantize({(0,): -1.0, (1,): 0.5}, num_value_qubits=4)
        assert report.quantized.terms == {(0,): -8, (1,): 4}

    def test_positive_maximum_clamped_into_range(self):
        report = quantize({(0,): 1.0, (1,): 0.97}, num_value_qubits=5)
        half = 16
        values = report.quantized.terms.values()
        assert all(-half <= v <= half - 1 for v in values)
        assert report.quantized.terms[(0,)] == 15

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError, match="all-zero"):
            quantize({(0,): 0.0}, num_value_qubits=4)

    def test_error_reported_against_emitted_integers(self):
        report = quantize({(0,): -1.0, (1,): 0.3}, num_value_qubits=4)
        # 0.3 * 8 = 2.4 -> 2, error 0.4 in grid units of 8
        assert report.quantized.terms[(1,)] == 2
        assert report.max_abs_error == pytest.approx(0.4 / 8)

    def test_argmin_preserved_when_error_is_small(self):
        # exact objective -1.0 x0 + 0.4 x1 + 0.2 x2: distinct values are
        # separated by 0.2 while per-coefficient quantization error at m=5 is
        # at most 0.5/16 ~ 0.031, so the minimizer survives quantization.
        exact = {(0,): -1.0, (1,): 0.4, (2,): 0.2}
        report = quantize(exact, num_value_qubits=5)
        scale = report.scale

        def exact_value(bits):
            return sum(
                coeff * all(bits[j] for j in subset)
                for subset, coeff in exact.items()
            )

        exact_best = min(
            (tuple((k >> i) & 1 for i in range(3)) for k in range(8)),
            key=exact_value,
        )
        quant_best = min(
            (tuple((k >> i) & 1 for i in range(3)) for k in range(8)),
            key=report.quantized.evaluate,
        )
        assert report.max_abs_error * len(exact) * 16 < 0.5 * 0.2 * scale
        assert quant_best == exact_best


class TestFeasibility:
    def test_hamming_weight_constraint(self, constrained_portfolio):
        assert is_feasible(constrained_portfolio, (1, 0, 0))
        assert not is_feasible(constrained_portfolio, (1, 1, 0))

    def test_empty_constraints_always_feasible(self, portfolio_problem):
        assert is_feasible(portfolio_problem, (1, 1, 1))

    def test_equality_constraint(self):
        budget = Constraint(
            BinaryPolynomial(2, {(0,): 1, (1,): 1, (): -1}), Relation.EQUALS_ZERO
        )
        problem = CpboProblem(BinaryPolynomial(2, {(0,): 1}), (budget,))
        assert problem.is_feasible((1, 0))
        assert not problem.is_feasible((1, 1))

    def test_constraint_num_vars_must_match(self):
        with pytest.raises(ValueError, match="num_vars"):
            CpboProblem(
                BinaryPolynomial(2, {(0,): 1}),
                (
                    Constraint(
                        BinaryPolynomial(3, {(0,): 1}), Relation.LESS_THAN_ZERO
                    ),
                ),
            )


def test_qubo_terms_keeps_real_coefficients():
    qubo = QuboProblem([[0.25, 0.5], [0.5, 0.0]], [0.1, 0.0], 0.0)
    terms = qubo_terms(qubo)
    assert terms[(0,)] == pytest.approx(0.35)
    assert terms[(0, 1)] == pytest.approx(1.0)
