"""Grover adaptive search for constrained polynomial binary optimization,
exactly simulated with quantum-dictionary value encodings."""

from .exceptions import (
    InfeasibleProblemError,
    ProblemFormatError,
    QdgasError,
    ValueRangeError,
)
from .fejer import FejerDistribution, fejer_distribution, two_nearest_mass
from .gas import (
    GasConfig,
    GasIteration,
    GasTrace,
    decode_value,
    optimal_rotations,
    run_gas,
    sample_rotation_count,
)
from .kernels import backend as kernel_backend
from .oracles import (
    OracleSet,
    ResourceEstimate,
    build_a,
    build_constrained_oracle,
    build_controlled_monomial,
    build_diffusion,
    build_ry_encoder,
    build_sign_oracle,
    build_ug,
    estimate_resources,
)
from .polynomials import (
    BinaryPolynomial,
    Constraint,
    CpboProblem,
    QuantizationReport,
    QuboProblem,
    Relation,
    equality_to_penalty,
    is_feasible,
    quantize,
    qubo_to_polynomial,
)
from .registers import (
    RegisterLayout,
    decode_twos_complement,
    encode_twos_complement,
    plan_layout,
)
from .simulator import (
    Circuit,
    Gate,
    GateKind,
    StateVector,
    apply_circuit,
    apply_gate,
    inverse_qft_gates,
    measure_all,
    probabilities,
    qft_gates,
)
from .verify import brute_force_min, predict_distribution

__version__ = "0.1.0"

__all__ = [
    "BinaryPolynomial",
    "Circuit",
    "Constraint",
    "CpboProblem",
    "FejerDistribution",
    "GasConfig",
    "GasIteration",
    "GasTrace",
    "Gate",
    "GateKind",
    "InfeasibleProblemError",
    "OracleSet",
    "ProblemFormatError",
    "QdgasError",
    "QuantizationReport",
    "QuboProblem",
    "RegisterLayout",
    "Relation",
    "ResourceEstimate",
    "StateVector",
    "ValueRangeError",
    "apply_circuit",
    "apply_gate",
    "brute_force_min",
    "build_a",
    "build_constrained_oracle",
    "build_controlled_monomial",
    "build_diffusion",
    "build_ry_encoder",
    "build_sign_oracle",
    "build_ug",
    "decode_twos_complement",
    "decode_value",
    "encode_twos_complement",
    "equality_to_penalty",
    "estimate_resources",
    "fejer_distribution",
    "inverse_qft_gates",
    "is_feasible",
    "kernel_backend",
    "measure_all",
    "optimal_rotations",
    "plan_layout",
    "predict_distribution",
    "probabilities",
    "qft_gates",
    "quantize",
    "qubo_to_polynomial",
    "run_gas",
    "sample_rotation_count",
    "two_nearest_mass",
]
