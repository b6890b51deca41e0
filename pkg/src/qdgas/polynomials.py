"""Problem model: multilinear binary polynomials, QUBO form, constraints.

A polynomial over binary variables is stored as a map from a sorted tuple of
variable indices to an integer coefficient; the empty tuple holds the free
term. Since x_i^2 = x_i for binary x_i, every polynomial is multilinear after
merging, and evaluation is exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np

Term = tuple[int, ...]


def _canonical_terms(terms: Mapping[Iterable[int], float | int]) -> dict[Term, int]:
    merged: dict[Term, int] = {}
    for subset, coeff in terms.items():
        key = tuple(sorted(set(subset)))
        if len(key) != len(tuple(subset)):
            raise ValueError(f"term {tuple(subset)} repeats a variable")
        if coeff != int(coeff):
            raise ValueError(f"coefficient {coeff} for term {key} is not an integer")
        merged[key] = merged.get(key, 0) + int(coeff)
    return {k: v for k, v in sorted(merged.items()) if v != 0}


@dataclass(frozen=True)
class BinaryPolynomial:
    """Integer-coefficient multilinear polynomial over n binary variables."""

    num_vars: int
    terms: Mapping[Term, int]

    def __post_init__(self):
        canonical = _canonical_terms(self.terms)
        for subset in canonical:
            if subset and (subset[0] < 0 or subset[-1] >= self.num_vars):
                raise ValueError(
                    f"term {subset} references a variable outside 0..{self.num_vars - 1}"
                )
        object.__setattr__(self, "terms", canonical)

    @classmethod
    def constant(cls, value: int, num_vars: int) -> "BinaryPolynomial":
        return cls(num_vars, {(): value})

    @property
    def free_term(self) -> int:
        return self.terms.get((), 0)

    @property
    def degree(self) -> int:
        return max((len(t) for t in self.terms), default=0)

    def evaluate(self, assignment: Sequence[int]) -> int:
        """Exact value at a 0/1 assignment vector of length num_vars."""
        if len(assignment) != self.num_vars:
            raise ValueError(
                f"assignment length {len(assignment)} != num_vars {self.num_vars}"
            )
        if any(v not in (0, 1) for v in assignment):
            raise ValueError("assignment entries must be 0 or 1")
        total = 0
        for subset, coeff in self.terms.items():
            if all(assignment[j] for j in subset):
                total += coeff
        return total

    def evaluate_key(self, key: int) -> int:
        """Evaluate at the assignment packed into an integer (bit i = x_i)."""
        total = 0
        for subset, coeff in self.terms.items():
            mask = 0
            for j in subset:
                mask |= 1 << j
            if (key & mask) == mask:
                total += coeff
        return total

    def add(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        if other.num_vars != self.num_vars:
            raise ValueError("polynomials have different num_vars")
        merged = dict(self.terms)
        for subset, coeff in other.terms.items():
            merged[subset] = merged.get(subset, 0) + coeff
        return BinaryPolynomial(self.num_vars, merged)

    def with_free_term_shift(self, delta: int) -> "BinaryPolynomial":
        merged = dict(self.terms)
        merged[()] = merged.get((), 0) + delta
        return BinaryPolynomial(self.num_vars, merged)

    def coefficient_sums(self) -> tuple[int, int]:
        """(sum of negative coefficients, sum of positive coefficients)."""
        lo = sum(c for c in self.terms.values() if c < 0)
        hi = sum(c for c in self.terms.values() if c > 0)
        return lo, hi

    def value_range(self) -> tuple[int, int]:
        """Exact (min, max) over all assignments; exhaustive for n <= 20,
        coefficient-sum bounds beyond that."""
        if self.num_vars > 20:
            return self.coefficient_sums()
        lo = hi = None
        for key in range(1 << self.num_vars):
            v = self.evaluate_key(key)
            lo = v if lo is None or v < lo else lo
            hi = v if hi is None or v > hi else hi
        return int(lo), int(hi)


class Relation(Enum):
    LESS_THAN_ZERO = "<0"
    EQUALS_ZERO = "==0"


@dataclass(frozen=True)
class Constraint:
    """A polynomial condition on the key register: g(x) < 0 or g(x) = 0."""

    polynomial: BinaryPolynomial
    relation: Relation

    def is_satisfied(self, assignment: Sequence[int]) -> bool:
        value = self.polynomial.evaluate(assignment)
        if self.relation is Relation.LESS_THAN_ZERO:
            return value < 0
        return value == 0

    def is_satisfied_key(self, key: int) -> bool:
        value = self.polynomial.evaluate_key(key)
        if self.relation is Relation.LESS_THAN_ZERO:
            return value < 0
        return value == 0


@dataclass(frozen=True)
class CpboProblem:
    """Objective polynomial plus zero or more constraints on the same variables."""

    objective: BinaryPolynomial
    constraints: tuple[Constraint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for c in self.constraints:
            if c.polynomial.num_vars != self.objective.num_vars:
                raise ValueError("constraint num_vars differs from objective")

    @property
    def num_vars(self) -> int:
        return self.objective.num_vars

    def is_feasible(self, assignment: Sequence[int]) -> bool:
        return all(c.is_satisfied(assignment) for c in self.constraints)

    def is_feasible_key(self, key: int) -> bool:
        return all(c.is_satisfied_key(key) for c in self.constraints)


@dataclass(frozen=True)
class QuboProblem:
    """min x^T Q x + b^T x + c over binary x."""

    q: np.ndarray
    b: np.ndarray
    c: float

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if q.ndim != 2 or q.shape[0] != q.shape[1]:
            raise ValueError("Q must be square")
        if b.shape != (q.shape[0],):
            raise ValueError("b length must match Q")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "b", b)

    @property
    def num_vars(self) -> int:
        return self.q.shape[0]

    def evaluate(self, assignment: Sequence[int]) -> float:
        x = np.asarray(assignment, dtype=float)
        return float(x @ self.q @ x + self.b @ x + self.c)


def qubo_terms(qubo: QuboProblem) -> dict[Term, float]:
    """Merge a quadratic form into polynomial terms.

    Uses x_i^2 = x_i, so the coefficient of {i} is Q_ii + b_i and the
    coefficient of {i, j} for i < j is Q_ij + Q_ji.
    """
    n = qubo.num_vars
    terms: dict[Term, float] = {}
    if qubo.c != 0:
        terms[()] = float(qubo.c)
    for i in range(n):
        coeff = float(qubo.q[i, i] + qubo.b[i])
        if coeff != 0:
            terms[(i,)] = coeff
    for i in range(n):
        for j in range(i + 1, n):
            coeff = float(qubo.q[i, j] + qubo.q[j, i])
            if coeff != 0:
                terms[(i, j)] = coeff
    return terms


def qubo_to_polynomial(qubo: QuboProblem) -> BinaryPolynomial:
    """Convert a QUBO with integer entries to a multilinear polynomial.

    The expansion follows the symmetric quadratic-form convention strictly
    (both Q_ij and Q_ji contribute to the pair {i, j}); it never reconciles a
    differing hand-stated polynomial for the same data. Non-integer entries
    are rejected: quantize first.
    """
    terms = qubo_terms(qubo)
    for subset, coeff in terms.items():
        if coeff != int(coeff):
            raise ValueError(
                f"non-integer coefficient {coeff} for term {subset}; "
                "quantize the problem first"
            )
    return BinaryPolynomial(qubo.num_vars, {k: int(v) for k, v in terms.items()})


def equality_to_penalty(num_vars: int, budget: int, weight: int) -> BinaryPolynomial:
    """Expand weight * (sum_i x_i - budget)^2 into a multilinear polynomial.

    The result is 0 exactly on assignments meeting the budget and at least
    ``weight`` elsewhere; the caller adds it to an objective.
    """
    if weight <= 0:
        raise ValueError(f"penalty weight must be positive, got {weight}")
    terms: dict[Term, int] = {(): weight * budget * budget}
    for i in range(num_vars):
        terms[(i,)] = weight * (1 - 2 * budget)
    for i in range(num_vars):
        for j in range(i + 1, num_vars):
            terms[(i, j)] = 2 * weight
    return BinaryPolynomial(num_vars, terms)


def _round_half_away(value: float) -> int:
    return int(math.copysign(math.floor(abs(value) + 0.5), value))


@dataclass(frozen=True)
class QuantizationReport:
    """Result of scaling real coefficients onto a 2^{m-1} integer grid."""

    scale: float
    quantized: BinaryPolynomial
    max_abs_error: float


def quantize(
    coefficients: Mapping[Iterable[int], float] | BinaryPolynomial,
    num_value_qubits: int,
    num_vars: int | None = None,
) -> QuantizationReport:
    """Map real coefficients v to round((v / max|v|) * 2^{m-1}).

    Rounding is half-away-from-zero; a positive value that would round onto
    2^{m-1} is clamped to 2^{m-1} - 1 so every integer lies in
    [-2^{m-1}, 2^{m-1} - 1]. The reported error is the true maximum distance
    between the scaled coefficient and the emitted integer, in units of
    2^{m-1}.
    """
    if num_value_qubits < 2:
        raise ValueError("need at least 2 value qubits")
    if isinstance(coefficients, BinaryPolynomial):
        raw = dict(coefficients.terms)
        if num_vars is None:
            num_vars = coefficients.num_vars
    else:
        raw = {tuple(sorted(set(s))): float(c) for s, c in coefficients.items()}
        if num_vars is None:
            num_vars = max((max(s) + 1 for s in raw if s), default=0)
    largest = max((abs(v) for v in raw.values()), default=0.0)
    if largest == 0:
        raise ValueError("cannot quantize an all-zero polynomial")
    half = 1 << (num_value_qubits - 1)
    quantized: dict[Term, int] = {}
    worst = 0.0
    for subset, value in raw.items():
        scaled = (value / largest) * half
        q = _round_half_away(scaled)
        q = min(q, half - 1)
        worst = max(worst, abs(scaled - q) / half)
        quantized[subset] = q
    return QuantizationReport(
        scale=half / largest,
        quantized=BinaryPolynomial(num_vars, quantized),
        max_abs_error=worst,
    )


def is_feasible(problem: CpboProblem, assignment: Sequence[int]) -> bool:
    """True iff every constraint of the problem holds at the assignment."""
    return problem.is_feasible(assignment)
