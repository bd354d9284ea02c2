# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled amplitude kernels.

All kernels act in place on a C-contiguous ``complex128`` array of shape
``(2**num_qubits, batch)``. Row ``i`` is the amplitude of basis state ``i``
(bit ``q`` of ``i`` is qubit ``q``); columns are independent vectors, so a
single call can update a state vector (``batch == 1``) or every column of a
matrix being compiled.

Loops run over a compact counter ``j`` whose bits are spread into the free
(non-control, non-target) positions, so only the selected rows are visited.
"""

cimport cython

ctypedef double complex cplx


cdef inline int _fixed_positions(Py_ssize_t mask, int* out) noexcept nogil:
    cdef int n = 0, q
    for q in range(63):
        if (mask >> q) & 1:
            out[n] = q
            n += 1
    return n


cdef inline Py_ssize_t _spread(Py_ssize_t j, int* fixed, int nfixed) noexcept nogil:
    # insert a zero bit at each fixed position, lowest first
    cdef int t, p
    for t in range(nfixed):
        p = fixed[t]
        j = ((j >> p) << (p + 1)) | (j & (((<Py_ssize_t>1) << p) - 1))
    return j


cdef inline void _swap_rows(cplx[:, ::1] state, Py_ssize_t i, Py_ssize_t j, Py_ssize_t batch) noexcept nogil:
    cdef Py_ssize_t k
    cdef cplx tmp
    for k in range(batch):
        tmp = state[i, k]
        state[i, k] = state[j, k]
        state[j, k] = tmp


def apply_mcx(cplx[:, ::1] state, Py_ssize_t ctrl_mask, Py_ssize_t ctrl_value, int target):
    cdef Py_ssize_t dim = state.shape[0]
    cdef Py_ssize_t batch = state.shape[1]
    cdef Py_ssize_t bit = (<Py_ssize_t>1) << target
    cdef int fixed[64]
    cdef int nfixed = _fixed_positions(ctrl_mask | bit, fixed)
    cdef Py_ssize_t count = dim >> nfixed
    cdef Py_ssize_t j, i
    with nogil:
        for j in range(count):
            i = _spread(j, fixed, nfixed) | ctrl_value
            _swap_rows(state, i, i | bit, batch)


def apply_mcswap(cplx[:, ::1] state, Py_ssize_t ctrl_mask, Py_ssize_t ctrl_value, int a, int b):
    cdef Py_ssize_t dim = state.shape[0]
    cdef Py_ssize_t batch = state.shape[1]
    cdef Py_ssize_t bit_a = (<Py_ssize_t>1) << a
    cdef Py_ssize_t bit_b = (<Py_ssize_t>1) << b
    cdef int fixed[64]
    cdef int nfixed = _fixed_positions(ctrl_mask | bit_a | bit_b, fixed)
    cdef Py_ssize_t count = dim >> nfixed
    cdef Py_ssize_t j, i
    with nogil:
        for j in range(count):
            # pair |..1_a..0_b..> with |..0_a..1_b..>
            i = _spread(j, fixed, nfixed) | ctrl_value | bit_a
            _swap_rows(state, i, (i ^ bit_a) | bit_b, batch)


def apply_1q(cplx[:, ::1] state, int target, cplx[:, ::1] mat):
    cdef Py_ssize_t dim = state.shape[0]
    cdef Py_ssize_t batch = state.shape[1]
    cdef Py_ssize_t bit = (<Py_ssize_t>1) << target
    cdef Py_ssize_t low = bit - 1
    cdef Py_ssize_t i, j, k, h
    cdef cplx u00 = mat[0, 0], u01 = mat[0, 1], u10 = mat[1, 0], u11 = mat[1, 1]
    cdef cplx a0, a1
    with nogil:
        for h in range(dim >> 1):
            i = ((h >> target) << (target + 1)) | (h & low)
            j = i | bit
            for k in range(batch):
                a0 = state[i, k]
                a1 = state[j, k]
                state[i, k] = u00 * a0 + u01 * a1
                state[j, k] = u10 * a0 + u11 * a1
