"""Grover Adaptive Search: iterated amplitude amplification against a
decreasing threshold.

Each iteration draws a rotation count r from {0, ..., ceil(k-1)}, simulates
G^r A|0> for the current threshold, and measures. The measured key is
re-evaluated classically; the threshold only moves on a classically verified,
feasible improvement (the measured value register is a filter, never the
source of y). On improvement k resets to 1, otherwise k grows by the
configured factor. The search stops after ``patience`` consecutive
non-improvements or ``max_iterations`` total iterations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .exceptions import InfeasibleProblemError
from .oracles import build_constrained_oracle
from .polynomials import CpboProblem
from .registers import (
    RegisterLayout,
    decode_twos_complement,
    key_to_assignment,
    plan_layout,
)
from .simulator import StateVector, apply_circuit, measure_all

DEFAULT_GROWTH_FACTOR = 8.0 / 7.0


@dataclass(frozen=True)
class GasConfig:
    """Run parameters. ``growth_factor`` is the k-multiplier applied after a
    non-improving iteration (the lambda > 1 of the randomized rotation-count
    strategy)."""

    growth_factor: float = DEFAULT_GROWTH_FACTOR
    patience: int = 3
    max_iterations: int = 100
    seed: int = 0
    value_qubits: int | None = None
    encoder: str = "phase"
    max_initial_samples: int = 1000

    def __post_init__(self):
        if not self.growth_factor > 1.0:
            raise ValueError("growth_factor must be > 1")
        if self.patience < 1:
            raise ValueError("patience must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.encoder not in ("phase", "ry"):
            raise ValueError(f"unknown encoder {self.encoder!r}")


@dataclass(frozen=True)
class GasIteration:
    """One loop pass: threshold and rotation budget going in, measurement and
    classical verdict coming out."""

    index: int
    threshold: int
    k: float
    rotations: int
    measured_key: tuple[int, ...]
    measured_raw_value: int
    objective_value: int
    feasible: bool
    accepted: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "threshold": self.threshold,
            "k": self.k,
            "rotations": self.rotations,
            "measured_key": list(self.measured_key),
            "measured_raw_value": self.measured_raw_value,
            "objective_value": self.objective_value,
            "feasible": self.feasible,
            "accepted": self.accepted,
        }


@dataclass(frozen=True)
class GasTrace:
    """Full record of a run; ``best_value`` always comes from classical
    re-evaluation of ``best_key``."""

    iterations: tuple[GasIteration, ...]
    initial_key: tuple[int, ...]
    initial_value: int
    best_key: tuple[int, ...]
    best_value: int
    total_grover_applications: int
    stop_reason: str
    num_value_qubits: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "initial_key": list(self.initial_key),
            "initial_value": self.initial_value,
            "best_key": list(self.best_key),
            "best_value": self.best_value,
            "total_grover_applications": self.total_grover_applications,
            "stop_reason": self.stop_reason,
            "num_value_qubits": self.num_value_qubits,
            "iterations": [it.to_dict() for it in self.iterations],
        }


def optimal_rotations(num_states: int, num_flagged: int) -> int:
    """floor((pi/4) sqrt(N/s)): the rotation count that maximally amplifies
    s flagged states out of N."""
    if num_states < 1:
        raise ValueError("num_states must be >= 1")
    if not 1 <= num_flagged <= num_states:
        raise ValueError(f"num_flagged must be in [1, {num_states}]")
    return int(math.floor((math.pi / 4.0) * math.sqrt(num_states / num_flagged)))


def sample_rotation_count(k: float, rng: np.random.Generator) -> int:
    """Uniform draw from {0, 1, ..., ceil(k-1)}."""
    if k < 1.0:
        raise ValueError(f"k must be >= 1, got {k}")
    upper = math.ceil(k - 1.0)
    return int(rng.integers(0, upper + 1))


def decode_value(raw: int, num_value_qubits: int) -> int:
    """Two's-complement decode of a measured value register."""
    return decode_twos_complement(raw, num_value_qubits)


def _sample_initial_key(
    problem: CpboProblem, rng: np.random.Generator, attempts: int
) -> int:
    space = 1 << problem.num_vars
    for _ in range(attempts):
        key = int(rng.integers(0, space))
        if problem.is_feasible_key(key):
            return key
    raise InfeasibleProblemError(
        f"no feasible assignment found in {attempts} uniform samples"
    )


def run_gas(
    problem: CpboProblem,
    config: GasConfig = GasConfig(),
    layout: RegisterLayout | None = None,
) -> GasTrace:
    """Run the adaptive search; identical (problem, config) gives an
    identical trace."""
    if layout is None:
        layout = plan_layout(problem, value_qubits=config.value_qubits)
    rng = np.random.default_rng(config.seed)
    n = problem.num_vars

    initial_key = _sample_initial_key(problem, rng, config.max_initial_samples)
    initial_assignment = key_to_assignment(initial_key, n)
    threshold = problem.objective.evaluate(initial_assignment)
    best_key, best_value = initial_assignment, threshold

    iterations: list[GasIteration] = []
    total_rotations = 0
    k = 1.0
    misses = 0
    oracles = None
    stop_reason = "max_iterations"

    for index in range(1, config.max_iterations + 1):
        rotations = sample_rotation_count(k, rng)
        if oracles is None:
            oracles = build_constrained_oracle(
                problem, threshold, layout, encoder=config.encoder
            )
        state = StateVector.zero(oracles.state_preparation.num_qubits)
        state = apply_circuit(state, oracles.state_preparation)
        for _ in range(rotations):
            state = apply_circuit(state, oracles.grover_iterate)
        outcome = measure_all(state, rng)
        total_rotations += rotations

        key, raw = layout.split_outcome(outcome)
        assignment = key_to_assignment(key, n)
        value = problem.objective.evaluate(assignment)
        feasible = problem.is_feasible(assignment)
        accepted = feasible and value < threshold
        iterations.append(
            GasIteration(
                index=index,
                threshold=threshold,
                k=k,
                rotations=rotations,
                measured_key=assignment,
                measured_raw_value=raw,
                objective_value=value,
                feasible=feasible,
                accepted=accepted,
            )
        )
        if accepted:
            threshold = value
            best_key, best_value = assignment, value
            k = 1.0
            misses = 0
            oracles = None
        else:
            k = config.growth_factor * k
            misses += 1
            if misses >= config.patience:
                stop_reason = "patience"
                break

    return GasTrace(
        iterations=tuple(iterations),
        initial_key=initial_assignment,
        initial_value=(
            problem.objective.evaluate(initial_assignment)
        ),
        best_key=best_key,
        best_value=best_value,
        total_grover_applications=total_rotations,
        stop_reason=stop_reason,
        num_value_qubits=layout.num_value_qubits,
    )
