"""Outcome distribution when a non-integer target meets the inverse QFT.

Encoding a real a through the geometric-phase route concentrates measurement
probability on the integers nearest a; the profile is the Fejer kernel. The
distribution is computed two independent ways -- the closed-form kernel and a
full statevector simulation -- and both must agree, which keeps this module
honest against the simulator and vice versa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .oracles import build_ug
from .simulator import Circuit, Gate, StateVector, apply_circuit, inverse_qft_gates, probabilities

AGREEMENT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class FejerDistribution:
    """Probabilities over the 2^m register outcomes for one real target."""

    num_qubits: int
    target: float
    probabilities: np.ndarray


def _closed_form(target: float, num_qubits: int) -> np.ndarray:
    size = 1 << num_qubits
    probs = np.empty(size)
    for j in range(size):
        # distance from the target to outcome j, as a register fraction
        r = (target - j) % size
        u = math.pi * r / size
        if u == 0.0:
            probs[j] = 1.0
        else:
            probs[j] = (math.sin(size * u) / (size * math.sin(u))) ** 2
    return probs


def _simulated(target: float, num_qubits: int) -> np.ndarray:
    theta = 2.0 * math.pi * target / (1 << num_qubits)
    gates = [Gate.h(q) for q in range(num_qubits)]
    gates.extend(build_ug(theta, num_qubits).gates)
    gates.extend(inverse_qft_gates(tuple(range(num_qubits))))
    state = apply_circuit(
        StateVector.zero(num_qubits), Circuit(num_qubits, tuple(gates))
    )
    return probabilities(state)


def fejer_distribution(target: float, num_qubits: int) -> FejerDistribution:
    """Distribution for encoding ``target`` into an m-qubit register.

    ``target`` must lie in the register's two's-complement range
    [-2^{m-1}, 2^{m-1}). Integer targets give a point mass on
    target mod 2^m; non-integer targets spread over nearby outcomes with the
    two nearest integers jointly carrying at least 81% of the mass.
    """
    if num_qubits < 2:
        raise ValueError("need at least 2 qubits")
    half = 1 << (num_qubits - 1)
    if not -half <= target < half:
        raise ValueError(
            f"target {target} outside the register range [{-half}, {half})"
        )
    closed = _closed_form(target, num_qubits)
    simulated = _simulated(target, num_qubits)
    gap = float(np.max(np.abs(closed - simulated)))
    if gap > AGREEMENT_TOLERANCE:
        raise RuntimeError(
            f"closed-form and simulated distributions disagree by {gap}"
        )
    return FejerDistribution(
        num_qubits=num_qubits, target=target, probabilities=closed
    )


def two_nearest_mass(dist: FejerDistribution) -> float:
    """Combined probability of the two integers nearest the target (one
    outcome's mass when the target is an integer)."""
    size = 1 << dist.num_qubits
    lo = math.floor(dist.target)
    if lo == dist.target:
        return float(dist.probabilities[int(lo) % size])
    hi = lo + 1
    return float(
        dist.probabilities[lo % size] + dist.probabilities[hi % size]
    )
