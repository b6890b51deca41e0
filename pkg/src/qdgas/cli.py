"""Command-line interface: solve problem files, report oracle resources,
brute-force check, and dump encoding distributions.

Exit codes: 0 success, 2 malformed problem file, 3 value-register overflow,
4 no feasible assignment.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Any

from .exceptions import (
    InfeasibleProblemError,
    ProblemFormatError,
    ValueRangeError,
)
from .fejer import fejer_distribution
from .gas import GasConfig, GasTrace, run_gas
from .oracles import build_constrained_oracle, estimate_resources
from .polynomials import (
    BinaryPolynomial,
    Constraint,
    CpboProblem,
    QuboProblem,
    Relation,
    qubo_terms,
    quantize,
)
from .registers import decode_twos_complement, plan_layout
from .simulator import StateVector, apply_circuit, probabilities

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_OVERFLOW = 3
EXIT_INFEASIBLE = 4


# ---------------------------------------------------------------------------
# problem-file loading

def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ProblemFormatError(message)


def _parse_terms(raw_terms: Any, var_index: dict[str, int], where: str) -> dict:
    _require(isinstance(raw_terms, list), f"{where}: expected a list of terms")
    terms: dict[tuple[int, ...], float] = {}
    for i, item in enumerate(raw_terms):
        spot = f"{where}[{i}]"
        _require(isinstance(item, dict), f"{spot}: expected an object")
        _require("vars" in item, f"{spot}.vars: missing")
        _require("coeff" in item, f"{spot}.coeff: missing")
        names = item["vars"]
        _require(
            isinstance(names, list) and all(isinstance(v, str) for v in names),
            f"{spot}.vars: expected a list of variable names",
        )
        for name in names:
            _require(name in var_index, f"{spot}.vars: unknown variable {name!r}")
        coeff = item["coeff"]
        _require(
            isinstance(coeff, (int, float)) and not isinstance(coeff, bool),
            f"{spot}.coeff: expected a number",
        )
        subset = tuple(sorted(var_index[name] for name in names))
        _require(
            len(subset) == len(set(subset)),
            f"{spot}.vars: repeated variable",
        )
        terms[subset] = terms.get(subset, 0) + float(coeff)
    return terms


def _terms_to_polynomial(
    terms: dict, num_vars: int, where: str, quant_m: int | None
):
    integral = all(c == int(c) for c in terms.values())
    if integral:
        return (
            BinaryPolynomial(num_vars, {s: int(c) for s, c in terms.items()}),
            None,
        )
    _require(
        quant_m is not None,
        f"{where}: non-integer coefficients need a quantization block",
    )
    report = quantize(terms, quant_m, num_vars=num_vars)
    return report.quantized, report


def load_problem(path: str | Path):
    """Parse a problem file into (CpboProblem, metadata dict)."""
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ProblemFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"{path} is not valid JSON: {exc}") from exc

    _require(isinstance(raw, dict), "top level: expected a JSON object")
    _require("variables" in raw, "variables: missing")
    names = raw["variables"]
    _require(
        isinstance(names, list)
        and names
        and all(isinstance(v, str) for v in names),
        "variables: expected a non-empty list of names",
    )
    _require(len(set(names)) == len(names), "variables: names must be unique")
    var_index = {name: i for i, name in enumerate(names)}
    num_vars = len(names)

    has_objective = "objective" in raw
    has_qubo = "qubo" in raw
    _require(
        has_objective != has_qubo,
        "exactly one of 'objective' or 'qubo' must be present",
    )

    quant_m = None
    if "quantization" in raw:
        block = raw["quantization"]
        _require(
            isinstance(block, dict) and isinstance(block.get("m"), int),
            "quantization.m: expected an integer",
        )
        quant_m = block["m"]

    if has_objective:
        terms = _parse_terms(raw["objective"], var_index, "objective")
    else:
        qubo_block = raw["qubo"]
        _require(isinstance(qubo_block, dict), "qubo: expected an object")
        for field in ("Q", "b", "c"):
            _require(field in qubo_block, f"qubo.{field}: missing")
        try:
            qubo = QuboProblem(qubo_block["Q"], qubo_block["b"], qubo_block["c"])
        except ValueError as exc:
            raise ProblemFormatError(f"qubo: {exc}") from exc
        _require(
            qubo.num_vars == num_vars,
            f"qubo.Q: dimension {qubo.num_vars} != {num_vars} variables",
        )
        terms = qubo_terms(qubo)
    objective, quant_report = _terms_to_polynomial(
        terms, num_vars, "objective", quant_m
    )

    constraints = []
    raw_constraints = raw.get("constraints", [])
    _require(isinstance(raw_constraints, list), "constraints: expected a list")
    for i, item in enumerate(raw_constraints):
        where = f"constraints[{i}]"
        _require(isinstance(item, dict), f"{where}: expected an object")
        _require("terms" in item, f"{where}.terms: missing")
        _require("relation" in item, f"{where}.relation: missing")
        relation_raw = item["relation"]
        _require(
            relation_raw in ("<0", "==0"),
            f"{where}.relation: expected '<0' or '==0', got {relation_raw!r}",
        )
        terms = _parse_terms(item["terms"], var_index, f"{where}.terms")
        _require(
            all(c == int(c) for c in terms.values()),
            f"{where}.terms: constraint coefficients must be integers",
        )
        poly = BinaryPolynomial(num_vars, {s: int(c) for s, c in terms.items()})
        constraints.append(Constraint(poly, Relation(relation_raw)))

    problem = CpboProblem(objective, tuple(constraints))
    meta = {
        "variables": list(names),
        "quantization": None
        if quant_report is None
        else {
            "m": quant_m,
            "scale": quant_report.scale,
            "max_abs_error": quant_report.max_abs_error,
        },
    }
    return problem, meta


# ---------------------------------------------------------------------------
# output helpers

def _key_bits(assignment) -> str:
    # variable 0 leftmost
    return "".join(str(b) for b in assignment)


def _named(assignment, names) -> dict[str, int]:
    return {name: int(bit) for name, bit in zip(names, assignment)}


def _write_iteration_histogram(
    path: Path, problem, layout, threshold, rotations, encoder, names
) -> None:
    oracles = build_constrained_oracle(problem, threshold, layout, encoder=encoder)
    state = StateVector.zero(oracles.state_preparation.num_qubits)
    state = apply_circuit(state, oracles.state_preparation)
    for _ in range(rotations):
        state = apply_circuit(state, oracles.grover_iterate)
    probs = probabilities(state)

    n = layout.num_key_qubits
    m = layout.num_value_qubits
    # marginalize onto key+value; work registers are |0> up to simulation noise
    marginal = probs.reshape(-1, 1 << (n + m)).sum(axis=0)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["basis_state", "key_bits", "decoded_value", "probability", "assignment"]
        )
        for basis in range(1 << (n + m)):
            key, raw = basis & ((1 << n) - 1), basis >> n
            assignment = tuple((key >> i) & 1 for i in range(n))
            writer.writerow(
                [
                    basis,
                    _key_bits(assignment),
                    decode_twos_complement(raw, m),
                    f"{marginal[basis]:.12g}",
                    json.dumps(_named(assignment, names)),
                ]
            )


def write_trace(path: Path, trace: GasTrace, config: GasConfig, names) -> None:
    payload = {
        "config": {
            "growth_factor": config.growth_factor,
            "patience": config.patience,
            "max_iterations": config.max_iterations,
            "seed": config.seed,
            "value_qubits": config.value_qubits,
            "encoder": config.encoder,
        },
        "variables": list(names),
        "best_assignment": _named(trace.best_key, names),
        **trace.to_dict(),
    }
    path.write_text(json.dumps(payload, indent=2) + "\n")


# ---------------------------------------------------------------------------
# subcommands

def _cmd_solve(args) -> int:
    problem, meta = load_problem(args.problem)
    names = meta["variables"]
    config = GasConfig(
        growth_factor=args.growth_factor,
        patience=args.patience,
        max_iterations=args.max_iters,
        seed=args.seed,
        value_qubits=args.value_qubits,
        encoder=args.encoder,
    )
    trace = run_gas(problem, config)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    layout = plan_layout(problem, value_qubits=config.value_qubits)
    for iteration in trace.iterations:
        _write_iteration_histogram(
            out_dir / f"iteration_{iteration.index:03d}.csv",
            problem,
            layout,
            iteration.threshold,
            iteration.rotations,
            config.encoder,
            names,
        )
    write_trace(out_dir / "trace.json", trace, config, names)

    if meta["quantization"]:
        q = meta["quantization"]
        print(
            f"quantized objective to m={q['m']} grid "
            f"(scale {q['scale']:.6g}, max error {q['max_abs_error']:.3g})"
        )
    print(f"best key: {_key_bits(trace.best_key)}")
    print(f"best assignment: {json.dumps(_named(trace.best_key, names))}")
    print(f"best value: {trace.best_value}")
    print(
        f"iterations: {len(trace.iterations)} "
        f"(stop: {trace.stop_reason}, grover applications: "
        f"{trace.total_grover_applications})"
    )
    print(f"outputs in {out_dir}")
    return EXIT_OK


def _cmd_resources(args) -> int:
    problem, _ = load_problem(args.problem)
    layout = plan_layout(problem, value_qubits=args.value_qubits)
    estimate = estimate_resources(problem.objective, layout)
    rows = [
        ("hadamard (value register)", estimate.value_hadamards),
        ("hadamard (key register)", estimate.key_hadamards),
    ]
    for controls, count in estimate.rotations_by_controls.items():
        label = "phase rotation" if controls == 0 else (
            f"{controls}-controlled phase rotation"
        )
        rows.append((label, count))
    rows.append(("inverse QFT block", estimate.inverse_qft_blocks))
    width = max(len(label) for label, _ in rows)
    print(
        f"registers: {layout.num_key_qubits} key + "
        f"{layout.num_value_qubits} value qubits"
    )
    for label, count in rows:
        print(f"{label:<{width}}  {count}")
    return EXIT_OK


def _cmd_brute(args) -> int:
    from .verify import brute_force_min

    problem, meta = load_problem(args.problem)
    best, argmins = brute_force_min(problem)
    print(f"minimum value: {best}")
    for assignment in sorted(argmins):
        print(
            f"argmin: {_key_bits(assignment)} "
            f"{json.dumps(_named(assignment, meta['variables']))}"
        )
    return EXIT_OK


def _cmd_fejer(args) -> int:
    dist = fejer_distribution(args.target, args.num_qubits)
    handle = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(handle)
        writer.writerow(["outcome", "decoded_value", "probability"])
        for j, p in enumerate(dist.probabilities):
            writer.writerow(
                [j, decode_twos_complement(j, args.num_qubits), f"{p:.12g}"]
            )
    finally:
        if args.out:
            handle.close()
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdgas",
        description=(
            "Solve constrained polynomial binary optimization problems with "
            "exactly simulated Grover adaptive search"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run the adaptive search on a problem file")
    solve.add_argument("problem", help="problem file (JSON)")
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument(
        "--lambda",
        dest="growth_factor",
        type=float,
        default=8.0 / 7.0,
        help="rotation-budget growth factor (> 1, default 8/7)",
    )
    solve.add_argument("--patience", type=int, default=3)
    solve.add_argument("--max-iters", type=int, default=100)
    solve.add_argument(
        "--value-qubits", type=int, default=None, help="override value-register size"
    )
    solve.add_argument("--encoder", choices=("phase", "ry"), default="phase")
    solve.add_argument("--out-dir", default="gas_out")
    solve.set_defaults(func=_cmd_solve)

    resources = sub.add_parser(
        "resources", help="gate counts for the state-preparation circuit"
    )
    resources.add_argument("problem")
    resources.add_argument("--value-qubits", type=int, default=None)
    resources.set_defaults(func=_cmd_resources)

    brute = sub.add_parser("brute", help="exhaustive minimum for cross-checking")
    brute.add_argument("problem")
    brute.set_defaults(func=_cmd_brute)

    fejer = sub.add_parser(
        "fejer", help="encoding distribution for a real-valued target"
    )
    fejer.add_argument("target", type=float)
    fejer.add_argument("num_qubits", type=int)
    fejer.add_argument("--out", default=None, help="CSV path (default stdout)")
    fejer.set_defaults(func=_cmd_fejer)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ProblemFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except ValueRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except InfeasibleProblemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
