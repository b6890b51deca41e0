import numpy as np
import pytest

from qdgas.polynomials import BinaryPolynomial, Constraint, CpboProblem, Relation

# Reference instance used throughout: minimize
#   -2 x0 x2 - x1 x2 - x0 + 2 x1 - 3 x2
# over three binary variables; global minimum -6 at (1, 0, 1). With the
# cardinality constraint x0 + x1 + x2 < 2 the constrained minimum is -3 at
# (0, 0, 1).
PORTFOLIO_TERMS = {(0, 2): -2, (1, 2): -1, (0,): -1, (1,): 2, (2,): -3}


@pytest.fixture
def portfolio_objective():
    return BinaryPolynomial(3, PORTFOLIO_TERMS)


@pytest.fixture
def portfolio_problem(portfolio_objective):
    return CpboProblem(portfolio_objective)


@pytest.fixture
def hamming_lt2():
    weight = BinaryPolynomial(3, {(0,): 1, (1,): 1, (2,): 1, (): -2})
    return Constraint(weight, Relation.LESS_THAN_ZERO)


@pytest.fixture
def constrained_portfolio(portfolio_objective, hamming_lt2):
    return CpboProblem(portfolio_objective, (hamming_lt2,))


@pytest.fixture
def twovar_problem():
    # minimize -2 + x0 + x1; minimum -2 at (0, 0)
    return CpboProblem(BinaryPolynomial(2, {(): -2, (0,): 1, (1,): 1}))


def random_polynomial(
    rng: np.random.Generator,
    num_vars: int,
    max_degree: int = 3,
    max_terms: int = 8,
    coeff_bound: int = 6,
) -> BinaryPolynomial:
    """Random integer polynomial with at least one nonzero term."""
    subsets: list[tuple[int, ...]] = [()]
    for size in range(1, max_degree + 1):
        if size > num_vars:
            break
        seen = set()
        for _ in range(num_vars * 2):
            subset = tuple(
                sorted(rng.choice(num_vars, size=size, replace=False).tolist())
            )
            seen.add(subset)
        subsets.extend(sorted(seen))
    count = int(rng.integers(1, max_terms + 1))
    picks = rng.choice(len(subsets), size=min(count, len(subsets)), replace=False)
    terms = {}
    for pick in picks:
        coeff = 0
        while coeff == 0:
            coeff = int(rng.integers(-coeff_bound, coeff_bound + 1))
        terms[subsets[int(pick)]] = coeff
    return BinaryPolynomial(num_vars, terms)


@pytest.fixture
def make_polynomial():
    return random_polynomial
