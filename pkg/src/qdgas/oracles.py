"""Circuit builders: geometric-sequence value encoding, sign and constraint
oracles, diffusion, and the assembled Grover iterate.

The value encoding writes f(x) - y into a two's-complement register without
quantum arithmetic: each monomial contributes phase rotations on the value
register controlled by its key qubits, and one inverse QFT at the end turns
the accumulated geometric phase pattern into the binary value. Thresholds
move by shifting the free term, so the sign-bit oracle never changes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import ValueRangeError
from .polynomials import BinaryPolynomial, CpboProblem, Relation
from .registers import RegisterLayout, twos_complement_width
from .simulator import Circuit, Gate, inverse_qft_gates

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class OracleSet:
    """The four circuits one Grover Adaptive Search iteration needs."""

    state_preparation: Circuit
    oracle: Circuit
    diffusion: Circuit
    grover_iterate: Circuit


@dataclass(frozen=True)
class ResourceEstimate:
    """Gate counts for one state-preparation circuit.

    ``rotations_by_controls[d]`` counts phase rotations carrying d controls
    (d = monomial degree). Hadamards on the key register are reported
    separately from the value-register ones so both bookkeeping conventions
    can be reconciled.
    """

    value_hadamards: int
    key_hadamards: int
    rotations_by_controls: dict[int, int]
    inverse_qft_blocks: int

    def total_gates(self) -> int:
        return (
            self.value_hadamards
            + self.key_hadamards
            + sum(self.rotations_by_controls.values())
        )


def geometric_phase_gates(
    theta: float, value_qubits: tuple[int, ...], controls: tuple[int, ...] = ()
) -> list[Gate]:
    """Phase gates R(2^i * theta) on value qubit i (its 2^i digit), so a
    register in equal superposition picks up amplitude e^{ik theta} on |k>."""
    return [
        Gate.phase((1 << i) * theta, q, controls=controls)
        for i, q in enumerate(value_qubits)
    ]


def build_ug(theta: float, num_value_qubits: int) -> Circuit:
    """Geometric-sequence operator over a standalone m-qubit register."""
    if num_value_qubits < 1:
        raise ValueError("need at least one value qubit")
    qubits = tuple(range(num_value_qubits))
    return Circuit(num_value_qubits, tuple(geometric_phase_gates(theta, qubits)))


def monomial_angle(coefficient: int, num_value_qubits: int) -> float:
    return TWO_PI * coefficient / (1 << num_value_qubits)


def build_controlled_monomial(
    variables: tuple[int, ...], coefficient: int, layout: RegisterLayout
) -> Circuit:
    """Encoding block for one monomial: every rotation of the value encoding
    gains the monomial's key qubits as controls (none for the free term)."""
    if coefficient == 0:
        raise ValueError("monomial coefficient must be nonzero")
    if any(v < 0 or v >= layout.num_key_qubits for v in variables):
        raise ValueError(f"variables {variables} outside the key register")
    controls = tuple(sorted(variables))
    gates = geometric_phase_gates(
        monomial_angle(coefficient, layout.num_value_qubits),
        layout.value_qubits,
        controls=controls,
    )
    return Circuit(layout.total_qubits, tuple(gates))


def _check_value_range(
    polynomial: BinaryPolynomial, shift: int, width: int, what: str
) -> None:
    lo, hi = polynomial.value_range()
    lo, hi = lo + shift, hi + shift
    half = 1 << (width - 1)
    if lo < -half or hi >= half:
        required = twos_complement_width(lo, hi)
        raise ValueRangeError(
            f"{what} takes values in [{lo}, {hi}], outside the "
            f"{width}-qubit two's-complement range [{-half}, {half - 1}]; "
            f"{required} qubits are required",
            required_width=required,
        )


def _value_encoding_gates(
    polynomial: BinaryPolynomial,
    shift: int,
    value_qubits: tuple[int, ...],
) -> list[Gate]:
    """Hadamards on the target register, one controlled-rotation block per
    nonzero coefficient (free term shifted), then the inverse QFT."""
    width = len(value_qubits)
    gates = [Gate.h(q) for q in value_qubits]
    terms = dict(polynomial.terms)
    terms[()] = terms.get((), 0) + shift
    for subset in sorted(terms, key=lambda s: (len(s), s)):
        coeff = terms[subset]
        if coeff == 0:
            continue
        gates.extend(
            geometric_phase_gates(
                monomial_angle(coeff, width), value_qubits, controls=subset
            )
        )
    gates.extend(inverse_qft_gates(value_qubits))
    return gates


def build_a(
    polynomial: BinaryPolynomial, threshold: int, layout: RegisterLayout
) -> Circuit:
    """State preparation: equal superposition of keys entangled with the
    two's-complement value f(x) - threshold.

    Raises :class:`ValueRangeError` (with the register size that would fit)
    if any shifted value falls outside the value register's range.
    """
    _check_value_range(
        polynomial, -threshold, layout.num_value_qubits, "the shifted objective"
    )
    gates = [Gate.h(q) for q in layout.key_qubits]
    gates.extend(
        _value_encoding_gates(polynomial, -threshold, layout.value_qubits)
    )
    return Circuit(layout.total_qubits, tuple(gates))


def build_sign_oracle(layout: RegisterLayout) -> Circuit:
    """Phase-flip states whose value register holds a negative number: a
    single Z on the register's sign qubit."""
    return Circuit(layout.total_qubits, (Gate.z(layout.sign_qubit),))


def build_diffusion(num_qubits: int) -> Circuit:
    """Reflection about the all-zeros state of every register the state
    preparation touches: X on all qubits, a fully-controlled Z, X on all."""
    flip = [Gate.x(q) for q in range(num_qubits)]
    mcz = Gate.z(num_qubits - 1, controls=tuple(range(num_qubits - 1)))
    return Circuit(num_qubits, (*flip, mcz, *reversed(flip)))


def _indicator_block(
    constraint_index: int, problem: CpboProblem, layout: RegisterLayout
) -> list[Gate]:
    """Compute one constraint register, copy its satisfied/violated bit onto
    the indicator qubit, and uncompute the register.

    Inequality constraints are written so satisfaction means a negative
    register value, read off the register's sign qubit. Equality constraints
    detect the exact zero state through an X-conjugated controlled flip.
    Applying the same block twice restores the indicator, which is how the
    oracle cleans up after its phase flip.
    """
    constraint = problem.constraints[constraint_index]
    reg = layout.constraint_qubits(constraint_index)
    indicator = layout.indicator_qubit(constraint_index)
    _check_value_range(
        constraint.polynomial, 0, len(reg), f"constraint {constraint_index}"
    )
    encode = _value_encoding_gates(constraint.polynomial, 0, reg)
    if constraint.relation is Relation.LESS_THAN_ZERO:
        detect = [Gate.x(indicator, controls=(reg[-1],))]
    else:
        wrap = [Gate.x(q) for q in reg]
        detect = [*wrap, Gate.x(indicator, controls=reg), *wrap]
    unencode = [g.adjoint() for g in reversed(encode)]
    return [*encode, *detect, *unencode]


def build_constrained_oracle(
    problem: CpboProblem,
    threshold: int,
    layout: RegisterLayout,
    encoder: str = "phase",
) -> OracleSet:
    """Assemble state preparation, oracle, diffusion and the Grover iterate.

    The oracle raises each constraint's indicator, phase-flips states whose
    value register is negative while every indicator is set, then lowers the
    indicators again; all work registers end exactly in |0>.
    """
    if encoder == "phase":
        prep = build_a(problem.objective, threshold, layout)
    elif encoder == "ry":
        prep = build_ry_encoder(problem.objective, layout, threshold=threshold)
    else:
        raise ValueError(f"unknown encoder {encoder!r}")
    width = prep.num_qubits

    blocks = [
        _indicator_block(i, problem, layout)
        for i in range(len(problem.constraints))
    ]
    indicators = tuple(
        layout.indicator_qubit(i) for i in range(len(problem.constraints))
    )
    flip = Gate.z(layout.sign_qubit, controls=indicators)
    oracle_gates: list[Gate] = []
    for block in blocks:
        oracle_gates.extend(block)
    oracle_gates.append(flip)
    for block in reversed(blocks):
        oracle_gates.extend(block)
    oracle = Circuit(width, tuple(oracle_gates))

    diffusion = build_diffusion(width)
    iterate = oracle.concat(prep.adjoint(), diffusion, prep)
    return OracleSet(
        state_preparation=prep,
        oracle=oracle,
        diffusion=diffusion,
        grover_iterate=iterate,
    )


def ancilla_rotation_eigenstate_gates(ancilla: int) -> list[Gate]:
    """Prepare (i|0> + |1>)/sqrt(2), the y-rotation eigenstate used for
    phase kickback."""
    return [
        Gate.h(ancilla),
        Gate.phase(math.pi / 2.0, ancilla),
        Gate.x(ancilla),
    ]


def controlled_ry_gates(
    angle: float, target: int, controls: tuple[int, ...]
) -> list[Gate]:
    """Exact controlled R_y(angle) from the closed gate set.

    R_y(angle) = e^{-i angle/2} S H Phase(angle) H S^dagger on the target;
    the leftover controlled global phase is restored by a phase gate on one
    control conditioned on the rest.
    """
    if not controls:
        raise ValueError("need at least one control for the phase correction")
    head, rest = controls[0], controls[1:]
    return [
        Gate.phase(-math.pi / 2.0, target, controls=controls),
        Gate.h(target, controls=controls),
        Gate.phase(angle, target, controls=controls),
        Gate.h(target, controls=controls),
        Gate.phase(math.pi / 2.0, target, controls=controls),
        Gate.phase(-angle / 2.0, head, controls=rest),
    ]


def build_ry_encoder(
    polynomial: BinaryPolynomial,
    layout: RegisterLayout,
    threshold: int = 0,
) -> Circuit:
    """Alternative state preparation: rotations ride on one extra ancilla.

    The ancilla is prepared in the y-rotation eigenstate, every phase
    rotation of the plain encoder becomes a controlled R_y(2 theta) on the
    ancilla (kicking the eigenvalue e^{i theta} back onto the control
    branch), and the ancilla preparation is undone at the end. The key/value
    joint distribution matches :func:`build_a` exactly.
    """
    _check_value_range(
        polynomial, -threshold, layout.num_value_qubits, "the shifted objective"
    )
    ancilla = layout.total_qubits
    width = layout.total_qubits + 1

    gates = [Gate.h(q) for q in layout.key_qubits]
    gates.extend(Gate.h(q) for q in layout.value_qubits)
    prep = ancilla_rotation_eigenstate_gates(ancilla)
    gates.extend(prep)

    terms = dict(polynomial.terms)
    terms[()] = terms.get((), 0) + (-threshold)
    m = layout.num_value_qubits
    for subset in sorted(terms, key=lambda s: (len(s), s)):
        coeff = terms[subset]
        if coeff == 0:
            continue
        theta = monomial_angle(coeff, m)
        for i, value_qubit in enumerate(layout.value_qubits):
            controls = tuple(sorted(subset)) + (value_qubit,)
            gates.extend(
                controlled_ry_gates(2.0 * (1 << i) * theta, ancilla, controls)
            )

    gates.extend(inverse_qft_gates(layout.value_qubits))
    gates.extend(g.adjoint() for g in reversed(prep))
    return Circuit(width, tuple(gates))


def estimate_resources(
    polynomial: BinaryPolynomial, layout: RegisterLayout
) -> ResourceEstimate:
    """Count the gates the state preparation needs, by class.

    For a dense degree-2 polynomial with a free term this reproduces
    m value Hadamards, m plain rotations, m*n singly-controlled and
    m*n(n-1)/2 doubly-controlled rotations, plus one inverse-QFT block.
    """
    m = layout.num_value_qubits
    rotations: dict[int, int] = {}
    for subset, coeff in polynomial.terms.items():
        if coeff == 0:
            continue
        rotations[len(subset)] = rotations.get(len(subset), 0) + m
    return ResourceEstimate(
        value_hadamards=m,
        key_hadamards=layout.num_key_qubits,
        rotations_by_controls=dict(sorted(rotations.items())),
        inverse_qft_blocks=1,
    )
