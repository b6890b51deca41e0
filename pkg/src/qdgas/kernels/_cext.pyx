# cython: boundscheck=False, wraparound=False, cdivision=True
# Statevector gate kernels. Masks follow the packing used by the simulator:
# qubit 0 is the least-significant bit of the basis-state index, a gate acts
# on indices where every control bit is 1.

from libc.math cimport sqrt

ctypedef double complex cplx

cdef double INV_SQRT2 = 1.0 / sqrt(2.0)


def kernel_hadamard(cplx[::1] amps, Py_ssize_t tmask, Py_ssize_t cmask):
    cdef Py_ssize_t size = amps.shape[0]
    cdef Py_ssize_t i, j
    cdef cplx a, b
    for i in range(size):
        if i & tmask:
            continue
        if (i & cmask) != cmask:
            continue
        j = i | tmask
        a = amps[i]
        b = amps[j]
        amps[i] = (a + b) * INV_SQRT2
        amps[j] = (a - b) * INV_SQRT2


def kernel_phase(cplx[::1] amps, Py_ssize_t tmask, Py_ssize_t cmask, cplx factor):
    # Shared by Z (factor -1) and Phase(theta) (factor e^{i theta}).
    cdef Py_ssize_t size = amps.shape[0]
    cdef Py_ssize_t full = tmask | cmask
    cdef Py_ssize_t i
    for i in range(size):
        if (i & full) == full:
            amps[i] = amps[i] * factor


def kernel_x(cplx[::1] amps, Py_ssize_t tmask, Py_ssize_t cmask):
    cdef Py_ssize_t size = amps.shape[0]
    cdef Py_ssize_t i, j
    cdef cplx tmp
    for i in range(size):
        if i & tmask:
            continue
        if (i & cmask) != cmask:
            continue
        j = i | tmask
        tmp = amps[i]
        amps[i] = amps[j]
        amps[j] = tmp


def kernel_swap(cplx[::1] amps, Py_ssize_t t1mask, Py_ssize_t t2mask, Py_ssize_t cmask):
    cdef Py_ssize_t size = amps.shape[0]
    cdef Py_ssize_t i, j
    cdef cplx tmp
    for i in range(size):
        if not (i & t1mask):
            continue
        if i & t2mask:
            continue
        if (i & cmask) != cmask:
            continue
        j = i ^ (t1mask | t2mask)
        tmp = amps[i]
        amps[i] = amps[j]
        amps[j] = tmp
