"""Pure-NumPy gate kernels, bit-identical to the compiled ones.

Both backends use the same IEEE double operations in the same order per
amplitude pair, so states produced through either path compare equal.
"""

import math

import numpy as np

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

_index_cache: dict[int, np.ndarray] = {}


def _indices(size: int) -> np.ndarray:
    arr = _index_cache.get(size)
    if arr is None:
        arr = np.arange(size)
        _index_cache[size] = arr
    return arr


def kernel_hadamard(amps, tmask, cmask):
    idx = _indices(amps.size)
    lower = idx[(idx & (tmask | cmask)) == cmask]
    upper = lower | tmask
    a = amps[lower]
    b = amps[upper]
    amps[lower] = (a + b) * _INV_SQRT2
    amps[upper] = (a - b) * _INV_SQRT2


def kernel_phase(amps, tmask, cmask, factor):
    idx = _indices(amps.size)
    full = tmask | cmask
    amps[(idx & full) == full] *= factor


def kernel_x(amps, tmask, cmask):
    idx = _indices(amps.size)
    lower = idx[(idx & (tmask | cmask)) == cmask]
    upper = lower | tmask
    a = amps[lower]
    amps[lower] = amps[upper]
    amps[upper] = a


def kernel_swap(amps, t1mask, t2mask, cmask):
    idx = _indices(amps.size)
    want = t1mask | cmask
    sel = idx[(idx & (t1mask | t2mask | cmask)) == want]
    other = sel ^ (t1mask | t2mask)
    a = amps[sel]
    amps[sel] = amps[other]
    amps[other] = a
