import pytest

from qdgas.exceptions import ValueRangeError
from qdgas.polynomials import BinaryPolynomial, Constraint, CpboProblem, Relation
from qdgas.registers import (
    RegisterLayout,
    assignment_to_key,
    decode_twos_complement,
    default_value_width,
    encode_twos_complement,
    key_to_assignment,
    plan_layout,
    twos_complement_width,
)


class TestTwosComplement:
    def test_decode_examples(self):
        assert decode_twos_complement(6, 3) == -2
        assert decode_twos_complement(3, 3) == 3
        assert decode_twos_complement(4, 3) == -4  # boundary 2^{m-1}

    @pytest.mark.parametrize("width", [2, 3, 4, 5, 6])
    def test_round_trip(self, width):
        half = 1 << (width - 1)
        for value in range(-half, half):
            assert decode_twos_complement(
                encode_twos_complement(value, width), width
            ) == value

    def test_encode_out_of_range(self):
        with pytest.raises(ValueRangeError):
            encode_twos_complement(4, 3)
        with pytest.raises(ValueRangeError):
            encode_twos_complement(-5, 3)

    def test_decode_out_of_range(self):
        with pytest.raises(ValueError):
            decode_twos_complement(8, 3)
        with pytest.raises(ValueError):
            decode_twos_complement(-1, 3)

    def test_width_covers_asymmetric_ranges(self):
        assert twos_complement_width(-2, 1) == 2
        assert twos_complement_width(0, 5) == 4
        assert twos_complement_width(-6, 2) == 4
        assert twos_complement_width(0, 0) == 2


class TestLayout:
    def test_ranges_are_contiguous_and_disjoint(self):
        layout = RegisterLayout(3, 4, (("c0", 2), ("c1", 3)))
        qubits = (
            list(layout.key_qubits)
            + list(layout.value_qubits)
            + list(layout.constraint_qubits(0))
            + list(layout.constraint_qubits(1))
            + [layout.indicator_qubit(0), layout.indicator_qubit(1)]
        )
        assert qubits == list(range(layout.total_qubits))
        assert layout.total_qubits == 3 + 4 + 2 + 3 + 2

    def test_sign_qubits(self):
        layout = RegisterLayout(3, 4, (("c0", 2),))
        assert layout.sign_qubit == 6
        assert layout.constraint_sign_qubit(0) == 8

    def test_value_register_needs_two_qubits(self):
        with pytest.raises(ValueError, match="sign bit"):
            RegisterLayout(2, 1)

    def test_split_outcome(self):
        layout = RegisterLayout(2, 3)
        basis = 0b10110  # value 0b101 = 5, key 0b10 = 2
        assert layout.split_outcome(basis) == (2, 5)

    def test_global_flag_qubit(self):
        layout = RegisterLayout(2, 2, has_global_flag=True)
        assert layout.global_flag_qubit == layout.total_qubits - 1
        with pytest.raises(ValueError):
            RegisterLayout(2, 2).global_flag_qubit


class TestPlanning:
    def test_default_width_adds_threshold_headroom(self, portfolio_objective):
        # coefficient sums [-7, 2]: span 10 needs 4 bits, plus 1 for shifts
        assert default_value_width(portfolio_objective) == 5

    def test_constraint_register_sized_from_exact_range(
        self, constrained_portfolio
    ):
        layout = plan_layout(constrained_portfolio)
        # x0 + x1 + x2 - 2 spans [-2, 1]: two qubits suffice
        assert layout.constraint_registers == (("c0", 2),)
        assert layout.total_qubits == 3 + 5 + 2 + 1

    def test_override(self, portfolio_problem):
        layout = plan_layout(portfolio_problem, value_qubits=4)
        assert layout.num_value_qubits == 4

    def test_constant_polynomial_gets_minimum_width(self):
        problem = CpboProblem(BinaryPolynomial(1, {}))
        assert plan_layout(problem).num_value_qubits == 2


def test_key_assignment_round_trip():
    for key in range(16):
        assert assignment_to_key(key_to_assignment(key, 4)) == key
    assert key_to_assignment(0b101, 3) == (1, 0, 1)
