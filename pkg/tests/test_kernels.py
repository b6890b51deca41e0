"""The two kernel backends must produce bit-identical states."""

import importlib

import numpy as np
import pytest

import qdgas.kernels as kernels
from qdgas.kernels import _fallback

_cext = pytest.importorskip(
    "qdgas.kernels._cext", reason="compiled kernels not built"
)


def random_amps(rng, num_qubits):
    amps = rng.normal(size=1 << num_qubits) + 1j * rng.normal(size=1 << num_qubits)
    amps /= np.linalg.norm(amps)
    return amps.astype(np.complex128)


def test_backend_reports_a_name():
    assert kernels.backend in ("compiled", "python")


@pytest.mark.parametrize("num_qubits", [1, 3, 6])
def test_backends_bit_identical(num_qubits):
    rng = np.random.default_rng(17)
    size_mask = (1 << num_qubits) - 1
    for trial in range(200):
        amps = random_amps(rng, num_qubits)
        a, b = amps.copy(), amps.copy()
        tbit = int(rng.integers(0, num_qubits))
        tmask = 1 << tbit
        cmask = int(rng.integers(0, 1 << num_qubits)) & ~tmask & size_mask
        op = trial % 4
        if op == 0:
            _cext.kernel_hadamard(a, tmask, cmask)
            _fallback.kernel_hadamard(b, tmask, cmask)
        elif op == 1:
            factor = complex(np.exp(1j * rng.uniform(-np.pi, np.pi)))
            _cext.kernel_phase(a, tmask, cmask, factor)
            _fallback.kernel_phase(b, tmask, cmask, factor)
        elif op == 2:
            _cext.kernel_x(a, tmask, cmask)
            _fallback.kernel_x(b, tmask, cmask)
        else:
            t2bit = int(rng.integers(0, num_qubits))
            if t2bit == tbit:
                continue
            t2mask = 1 << t2bit
            cmask &= ~t2mask
            _cext.kernel_swap(a, tmask, t2mask, cmask)
            _fallback.kernel_swap(b, tmask, t2mask, cmask)
        np.testing.assert_array_equal(a, b)


def test_forced_python_backend(monkeypatch):
    # the selector respects QDGAS_BACKEND on a fresh import
    monkeypatch.setenv("QDGAS_BACKEND", "python")
    spec = importlib.util.find_spec("qdgas.kernels")
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    assert module.backend == "python"
    assert module.kernel_hadamard is _fallback.kernel_hadamard
