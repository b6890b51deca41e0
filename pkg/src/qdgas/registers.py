"""Qubit layout planning and two's-complement value coding.

Layout order: key register (one qubit per variable, qubit i = variable i),
then the value register, then one register per constraint, then one indicator
qubit per constraint, then an optional global flag. Bit i of a register is
its 2^i digit, so each register's most significant qubit is its sign qubit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exceptions import ValueRangeError
from .polynomials import BinaryPolynomial, CpboProblem


def encode_twos_complement(value: int, width: int) -> int:
    """Map an integer in [-2^{w-1}, 2^{w-1}) to its modular representative."""
    half = 1 << (width - 1)
    if not -half <= value < half:
        raise ValueRangeError(
            f"{value} does not fit a {width}-bit two's-complement register",
            required_width=twos_complement_width(value, value),
        )
    return value % (1 << width)


def decode_twos_complement(raw: int, width: int) -> int:
    """Inverse of :func:`encode_twos_complement`."""
    if not 0 <= raw < (1 << width):
        raise ValueError(f"raw value {raw} out of range for {width} bits")
    half = 1 << (width - 1)
    return raw - (1 << width) if raw >= half else raw


def twos_complement_width(lo: int, hi: int) -> int:
    """Smallest width (>= 2) whose two's-complement range covers [lo, hi]."""
    width = 2
    while not (-(1 << (width - 1)) <= lo and hi <= (1 << (width - 1)) - 1):
        width += 1
    return width


def _ceil_log2(value: int) -> int:
    return (value - 1).bit_length() if value > 1 else 0


def default_value_width(polynomial: BinaryPolynomial) -> int:
    """Value-register size from coefficient sums, plus one qubit of headroom
    so every shifted polynomial f(x) - y with y in [min f, max f] still fits."""
    lo, hi = polynomial.coefficient_sums()
    span = max(1, hi - lo + 1)
    return max(2, _ceil_log2(span) + 1)


def constraint_width(polynomial: BinaryPolynomial) -> int:
    """Minimal register size holding the constraint polynomial's exact range."""
    lo, hi = polynomial.value_range()
    return twos_complement_width(lo, hi)


@dataclass(frozen=True)
class RegisterLayout:
    """Named qubit ranges for one problem instance."""

    num_key_qubits: int
    num_value_qubits: int
    constraint_registers: tuple[tuple[str, int], ...] = ()
    has_global_flag: bool = False

    def __post_init__(self):
        object.__setattr__(
            self, "constraint_registers", tuple(self.constraint_registers)
        )
        if self.num_key_qubits < 1:
            raise ValueError("need at least one key qubit")
        if self.num_value_qubits < 2:
            raise ValueError("value register needs a sign bit plus magnitude")
        for name, width in self.constraint_registers:
            if width < 2:
                raise ValueError(f"constraint register {name!r} needs width >= 2")

    @property
    def num_constraints(self) -> int:
        return len(self.constraint_registers)

    @property
    def total_qubits(self) -> int:
        return (
            self.num_key_qubits
            + self.num_value_qubits
            + sum(w for _, w in self.constraint_registers)
            + self.num_constraints
            + (1 if self.has_global_flag else 0)
        )

    @property
    def key_qubits(self) -> tuple[int, ...]:
        return tuple(range(self.num_key_qubits))

    @property
    def value_qubits(self) -> tuple[int, ...]:
        start = self.num_key_qubits
        return tuple(range(start, start + self.num_value_qubits))

    @property
    def sign_qubit(self) -> int:
        return self.num_key_qubits + self.num_value_qubits - 1

    def constraint_qubits(self, index: int) -> tuple[int, ...]:
        start = self.num_key_qubits + self.num_value_qubits
        for i, (_, width) in enumerate(self.constraint_registers):
            if i == index:
                return tuple(range(start, start + width))
            start += width
        raise IndexError(f"no constraint register {index}")

    def constraint_sign_qubit(self, index: int) -> int:
        return self.constraint_qubits(index)[-1]

    def indicator_qubit(self, index: int) -> int:
        if not 0 <= index < self.num_constraints:
            raise IndexError(f"no indicator qubit {index}")
        start = (
            self.num_key_qubits
            + self.num_value_qubits
            + sum(w for _, w in self.constraint_registers)
        )
        return start + index

    @property
    def global_flag_qubit(self) -> int:
        if not self.has_global_flag:
            raise ValueError("layout has no global flag qubit")
        return self.total_qubits - 1

    def split_outcome(self, basis_index: int) -> tuple[int, int]:
        """(key integer, raw value-register content) of a measured index."""
        key = basis_index & ((1 << self.num_key_qubits) - 1)
        raw = (basis_index >> self.num_key_qubits) & (
            (1 << self.num_value_qubits) - 1
        )
        return key, raw


def plan_layout(
    problem: CpboProblem, value_qubits: int | None = None
) -> RegisterLayout:
    """Size all registers for a problem; ``value_qubits`` overrides the default."""
    width = value_qubits if value_qubits is not None else default_value_width(
        problem.objective
    )
    if width < 2:
        raise ValueError("value register needs at least 2 qubits")
    registers = tuple(
        (f"c{i}", constraint_width(c.polynomial))
        for i, c in enumerate(problem.constraints)
    )
    return RegisterLayout(
        num_key_qubits=problem.num_vars,
        num_value_qubits=width,
        constraint_registers=registers,
    )


def key_to_assignment(key: int, num_vars: int) -> tuple[int, ...]:
    """Unpack a key integer into the assignment tuple (variable i = bit i)."""
    return tuple((key >> i) & 1 for i in range(num_vars))


def assignment_to_key(assignment: Sequence[int]) -> int:
    key = 0
    for i, bit in enumerate(assignment):
        if bit:
            key |= 1 << i
    return key
