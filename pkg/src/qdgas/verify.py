"""Independent classical references the tests check the quantum path against.

Nothing here touches the circuit builders: the brute-force minimizer walks
assignments, and the distribution predictor uses only the two-dimensional
amplitude-amplification algebra plus classical evaluation. Disagreement with
the simulated pipeline therefore localizes a bug to one side.
"""

from __future__ import annotations

import math

from .exceptions import InfeasibleProblemError
from .polynomials import CpboProblem
from .registers import RegisterLayout, encode_twos_complement, key_to_assignment

BRUTE_FORCE_MAX_VARS = 24


def brute_force_min(problem: CpboProblem) -> tuple[int, set[tuple[int, ...]]]:
    """Exhaustive minimum over feasible assignments, with every minimizer."""
    n = problem.num_vars
    if n > BRUTE_FORCE_MAX_VARS:
        raise ValueError(f"brute force capped at {BRUTE_FORCE_MAX_VARS} variables")
    best: int | None = None
    argmins: set[tuple[int, ...]] = set()
    for key in range(1 << n):
        if not problem.is_feasible_key(key):
            continue
        value = problem.objective.evaluate_key(key)
        if best is None or value < best:
            best = value
            argmins = {key_to_assignment(key, n)}
        elif value == best:
            argmins.add(key_to_assignment(key, n))
    if best is None:
        raise InfeasibleProblemError("no feasible assignment exists")
    return best, argmins


def flagged_keys(problem: CpboProblem, threshold: int) -> list[int]:
    """Keys that are feasible and strictly below the threshold."""
    return [
        key
        for key in range(1 << problem.num_vars)
        if problem.is_feasible_key(key)
        and problem.objective.evaluate_key(key) < threshold
    ]


def amplified_probability(num_states: int, num_flagged: int, rotations: int) -> float:
    """sin^2((2r+1) asin(sqrt(s/N))): total mass on flagged states after r
    Grover iterations from the uniform start."""
    if num_flagged == 0:
        return 0.0
    theta = math.asin(math.sqrt(num_flagged / num_states))
    return math.sin((2 * rotations + 1) * theta) ** 2


def predict_distribution(
    problem: CpboProblem,
    threshold: int,
    rotations: int,
    layout: RegisterLayout,
) -> dict[int, float]:
    """Closed-form joint distribution after G^r A|0>.

    Amplification preserves uniformity inside the flagged and unflagged sets,
    so the flagged mass sin^2((2r+1) theta) splits evenly over flagged
    key/value pairs and the remainder evenly over the rest. Keys are returned
    as full basis indices with the value register holding f(x) - threshold in
    two's complement and all work registers zero.
    """
    n = problem.num_vars
    num_states = 1 << n
    flagged = set(flagged_keys(problem, threshold))
    s = len(flagged)
    p_flagged = amplified_probability(num_states, s, rotations)

    distribution: dict[int, float] = {}
    for key in range(num_states):
        value = problem.objective.evaluate_key(key)
        raw = encode_twos_complement(value - threshold, layout.num_value_qubits)
        basis = key | (raw << n)
        if key in flagged:
            share = p_flagged / s
        elif s == num_states:
            share = 0.0
        else:
            share = (1.0 - p_flagged) / (num_states - s)
        distribution[basis] = share
    return distribution
