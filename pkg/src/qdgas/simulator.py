"""Exact statevector simulation of a small, closed gate set.

Gates are H, X, Z, Phase(theta) and Swap, each with an arbitrary set of
control qubits. Controlled action is applied directly (no decomposition to a
hardware basis). Qubit 0 is the least-significant bit of the basis-state
index; every register decoding in the package follows this convention.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from . import kernels

#: tolerance for norm/amplitude checks on states
NORM_TOLERANCE = 1e-9
#: norm guard applied before sampling a measurement
MEASURE_NORM_TOLERANCE = 1e-6


class GateKind(Enum):
    H = "h"
    X = "x"
    Z = "z"
    PHASE = "phase"
    SWAP = "swap"


_SELF_ADJOINT = {GateKind.H, GateKind.X, GateKind.Z, GateKind.SWAP}


@dataclass(frozen=True)
class Gate:
    """One gate application: a kind, target qubit(s) and control qubits.

    The phase angle is stored exactly as given; reduction mod 2pi happens
    implicitly when the amplitude factor e^{i theta} is evaluated.
    """

    kind: GateKind
    targets: tuple[int, ...]
    controls: frozenset[int] = frozenset()
    theta: float = 0.0

    def __post_init__(self):
        expected = 2 if self.kind is GateKind.SWAP else 1
        if len(self.targets) != expected:
            raise ValueError(f"{self.kind.value} gate needs {expected} target(s)")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError("duplicate target qubits")
        if any(t < 0 for t in self.targets) or any(c < 0 for c in self.controls):
            raise ValueError("negative qubit index")
        if self.controls & set(self.targets):
            raise ValueError("controls overlap targets")

    @classmethod
    def h(cls, target: int, controls: Iterable[int] = ()) -> "Gate":
        return cls(GateKind.H, (target,), frozenset(controls))

    @classmethod
    def x(cls, target: int, controls: Iterable[int] = ()) -> "Gate":
        return cls(GateKind.X, (target,), frozenset(controls))

    @classmethod
    def z(cls, target: int, controls: Iterable[int] = ()) -> "Gate":
        return cls(GateKind.Z, (target,), frozenset(controls))

    @classmethod
    def phase(cls, theta: float, target: int, controls: Iterable[int] = ()) -> "Gate":
        return cls(GateKind.PHASE, (target,), frozenset(controls), theta=float(theta))

    @classmethod
    def swap(cls, target_a: int, target_b: int, controls: Iterable[int] = ()) -> "Gate":
        return cls(GateKind.SWAP, (target_a, target_b), frozenset(controls))

    def adjoint(self) -> "Gate":
        if self.kind in _SELF_ADJOINT:
            return self
        return Gate(self.kind, self.targets, self.controls, theta=-self.theta)

    def max_qubit(self) -> int:
        return max((*self.targets, *self.controls))


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over a fixed number of qubits."""

    num_qubits: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for gate in self.gates:
            if gate.max_qubit() >= self.num_qubits:
                raise ValueError(
                    f"gate on qubit {gate.max_qubit()} exceeds circuit width "
                    f"{self.num_qubits}"
                )

    def __len__(self) -> int:
        return len(self.gates)

    def adjoint(self) -> "Circuit":
        return Circuit(self.num_qubits, tuple(g.adjoint() for g in reversed(self.gates)))

    def concat(self, *others: "Circuit") -> "Circuit":
        gates = list(self.gates)
        for other in others:
            if other.num_qubits != self.num_qubits:
                raise ValueError("cannot concatenate circuits of different widths")
            gates.extend(other.gates)
        return Circuit(self.num_qubits, tuple(gates))


@dataclass(frozen=True)
class StateVector:
    """2^num_qubits complex amplitudes; treat as immutable."""

    num_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.num_qubits,):
            raise ValueError(
                f"expected {1 << self.num_qubits} amplitudes, got {amps.shape}"
            )
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def zero(cls, num_qubits: int) -> "StateVector":
        return cls.basis(num_qubits, 0)

    @classmethod
    def basis(cls, num_qubits: int, index: int) -> "StateVector":
        if not 0 <= index < (1 << num_qubits):
            raise ValueError(f"basis index {index} out of range")
        amps = np.zeros(1 << num_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(num_qubits, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def _apply_gate_inplace(amps: np.ndarray, gate: Gate, num_qubits: int) -> None:
    if gate.max_qubit() >= num_qubits:
        raise ValueError(
            f"gate on qubit {gate.max_qubit()} out of range for {num_qubits} qubits"
        )
    cmask = 0
    for c in gate.controls:
        cmask |= 1 << c
    if gate.kind is GateKind.H:
        kernels.kernel_hadamard(amps, 1 << gate.targets[0], cmask)
    elif gate.kind is GateKind.X:
        kernels.kernel_x(amps, 1 << gate.targets[0], cmask)
    elif gate.kind is GateKind.Z:
        kernels.kernel_phase(amps, 1 << gate.targets[0], cmask, complex(-1.0))
    elif gate.kind is GateKind.PHASE:
        kernels.kernel_phase(
            amps, 1 << gate.targets[0], cmask, cmath.exp(1j * gate.theta)
        )
    elif gate.kind is GateKind.SWAP:
        kernels.kernel_swap(
            amps, 1 << gate.targets[0], 1 << gate.targets[1], cmask
        )
    else:  # pragma: no cover
        raise ValueError(f"unknown gate kind {gate.kind}")


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply one controlled gate, returning a new state.

    Amplitudes of basis states where any control bit is 0 are untouched.
    """
    amps = state.amplitudes.copy()
    _apply_gate_inplace(amps, gate, state.num_qubits)
    return StateVector(state.num_qubits, amps)


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    """Apply a circuit's gates in order, returning a new state."""
    if circuit.num_qubits != state.num_qubits:
        raise ValueError(
            f"circuit width {circuit.num_qubits} != state width {state.num_qubits}"
        )
    amps = state.amplitudes.copy()
    for gate in circuit.gates:
        _apply_gate_inplace(amps, gate, state.num_qubits)
    return StateVector(state.num_qubits, amps)


def probabilities(state: StateVector) -> np.ndarray:
    """Elementwise |amplitude|^2."""
    return np.abs(state.amplitudes) ** 2


def measure_all(state: StateVector, rng) -> int:
    """Draw a basis index from the |amplitude|^2 distribution.

    ``rng`` is either an integer seed or a ``numpy.random.Generator``; the
    draw is deterministic for a given generator state.
    """
    if isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(int(rng))
    norm = state.norm()
    if abs(norm - 1.0) > MEASURE_NORM_TOLERANCE:
        raise ValueError(f"state norm {norm} deviates from 1 beyond tolerance")
    probs = probabilities(state)
    cumulative = np.cumsum(probs)
    cumulative /= cumulative[-1]
    return int(np.searchsorted(cumulative, rng.random(), side="right"))


def qft_gates(qubits: Sequence[int]) -> list[Gate]:
    """Textbook QFT on the given qubits (qubits[0] = least significant).

    Maps |k> to 2^{-m/2} sum_j e^{2 pi i jk / 2^m} |j> with j, k read in the
    significance order of ``qubits``.
    """
    qs = list(qubits)
    gates: list[Gate] = []
    for hi in reversed(range(len(qs))):
        gates.append(Gate.h(qs[hi]))
        for lo in reversed(range(hi)):
            gates.append(
                Gate.phase(math.pi / (1 << (hi - lo)), qs[hi], controls=(qs[lo],))
            )
    for a in range(len(qs) // 2):
        gates.append(Gate.swap(qs[a], qs[len(qs) - 1 - a]))
    return gates


def inverse_qft_gates(qubits: Sequence[int]) -> list[Gate]:
    """Adjoint of :func:`qft_gates`: reversed order, negated phases."""
    return [g.adjoint() for g in reversed(qft_gates(qubits))]
