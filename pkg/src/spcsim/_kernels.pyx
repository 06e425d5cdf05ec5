# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Fock kernels (hot inner loops of the Hamiltonian assembly).

Same contract as ``spcsim._kernels_py``: COO matrix elements of ladder
strings over the lexicographically ascending fixed-number basis, ranked by
the stars-and-bars combinadic.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int32_t occ_t
ctypedef cnp.int64_t idx_t


cdef inline idx_t _rank(const occ_t* v, Py_ssize_t M, long total,
                        const idx_t* binom, Py_ssize_t bstride) nogil:
    cdef idx_t r = 0
    cdef long a = total
    cdef long b, m
    cdef Py_ssize_t j
    for j in range(M - 1):
        m = M - 1 - j
        b = a - v[j]
        r += binom[(a + m) * bstride + m] - binom[(b + m) * bstride + m]
        a = b
    return r


def rank_states(occ, binom, total):
    """Lexicographic-ascending rank of each occupation row in ``occ``."""
    cdef cnp.ndarray[occ_t, ndim=2, mode="c"] s = np.ascontiguousarray(occ, dtype=np.int32)
    cdef cnp.ndarray[idx_t, ndim=2, mode="c"] bt = np.ascontiguousarray(binom, dtype=np.int64)
    cdef Py_ssize_t K = s.shape[0], M = s.shape[1]
    cdef cnp.ndarray[idx_t, ndim=1] out = np.empty(K, dtype=np.int64)
    cdef long N = total
    cdef Py_ssize_t i
    cdef Py_ssize_t bstride = bt.shape[1]
    for i in range(K):
        out[i] = _rank(&s[i, 0], M, N, &bt[0, 0], bstride)
    return out


def hopping_entries(states, binom, total, theta):
    """COO triplets of ``sum_nk theta[n,k] adag_n a_k`` on the basis ``states``."""
    cdef cnp.ndarray[occ_t, ndim=2, mode="c"] s = np.ascontiguousarray(states, dtype=np.int32)
    cdef cnp.ndarray[idx_t, ndim=2, mode="c"] bt = np.ascontiguousarray(binom, dtype=np.int64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode="c"] th = np.ascontiguousarray(theta, dtype=np.complex128)
    cdef Py_ssize_t D = s.shape[0], M = s.shape[1]
    cdef long N = total
    cdef Py_ssize_t bstride = bt.shape[1]

    cdef Py_ssize_t cap = 0, cnt = 0
    cdef Py_ssize_t n, k, d, j
    for n in range(M):
        for k in range(M):
            if th[n, k] != 0.0:
                cap += 1
    cap = cap * D + 16

    cdef cnp.ndarray[idx_t, ndim=1] rows = np.empty(cap, dtype=np.int64)
    cdef cnp.ndarray[idx_t, ndim=1] cols = np.empty(cap, dtype=np.int64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] vals = np.empty(cap, dtype=np.complex128)

    cdef cnp.ndarray[occ_t, ndim=1, mode="c"] scratch = np.empty(M, dtype=np.int32)
    cdef double complex t
    cdef double amp
    for d in range(D):
        for n in range(M):
            for k in range(M):
                t = th[n, k]
                if t == 0.0:
                    continue
                if n == k:
                    if s[d, n] > 0:
                        rows[cnt] = d
                        cols[cnt] = d
                        vals[cnt] = t * s[d, n]
                        cnt += 1
                    continue
                if s[d, k] == 0:
                    continue
                for j in range(M):
                    scratch[j] = s[d, j]
                amp = (scratch[k] * (scratch[n] + 1.0)) ** 0.5
                scratch[k] -= 1
                scratch[n] += 1
                rows[cnt] = _rank(&scratch[0], M, N, &bt[0, 0], bstride)
                cols[cnt] = d
                vals[cnt] = t * amp
                cnt += 1
    return rows[:cnt].copy(), cols[:cnt].copy(), vals[:cnt].copy()


def quartic_entries(states, binom, total, U):
    """COO triplets of ``sum_nklm U[n,k,l,m] adag_n a_k adag_l a_m`` (as ordered)."""
    cdef cnp.ndarray[occ_t, ndim=2, mode="c"] s = np.ascontiguousarray(states, dtype=np.int32)
    cdef cnp.ndarray[idx_t, ndim=2, mode="c"] bt = np.ascontiguousarray(binom, dtype=np.int64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=4, mode="c"] u4 = np.ascontiguousarray(U, dtype=np.complex128)
    cdef Py_ssize_t D = s.shape[0], M = s.shape[1]
    cdef long N = total
    cdef Py_ssize_t bstride = bt.shape[1]

    nz = np.argwhere(np.asarray(U) != 0.0).astype(np.int64)
    cdef cnp.ndarray[idx_t, ndim=2, mode="c"] nzi = np.ascontiguousarray(nz, dtype=np.int64)
    cdef Py_ssize_t nnz_terms = nzi.shape[0]

    cdef Py_ssize_t cap = nnz_terms * D + 16
    cdef cnp.ndarray[idx_t, ndim=1] rows = np.empty(cap, dtype=np.int64)
    cdef cnp.ndarray[idx_t, ndim=1] cols = np.empty(cap, dtype=np.int64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] vals = np.empty(cap, dtype=np.complex128)
    cdef cnp.ndarray[occ_t, ndim=1, mode="c"] scratch = np.empty(M, dtype=np.int32)

    cdef Py_ssize_t cnt = 0, d, t, j
    cdef Py_ssize_t n, k, l, m
    cdef double amp
    cdef double complex uval
    for d in range(D):
        for t in range(nnz_terms):
            n = nzi[t, 0]; k = nzi[t, 1]; l = nzi[t, 2]; m = nzi[t, 3]
            if s[d, m] == 0:
                continue
            for j in range(M):
                scratch[j] = s[d, j]
            amp = scratch[m] ** 0.5
            scratch[m] -= 1
            amp *= (scratch[l] + 1.0) ** 0.5
            scratch[l] += 1
            if scratch[k] == 0:
                continue
            amp *= scratch[k] ** 0.5
            scratch[k] -= 1
            amp *= (scratch[n] + 1.0) ** 0.5
            scratch[n] += 1
            uval = u4[n, k, l, m]
            rows[cnt] = _rank(&scratch[0], M, N, &bt[0, 0], bstride)
            cols[cnt] = d
            vals[cnt] = uval * amp
            cnt += 1
    return rows[:cnt].copy(), cols[:cnt].copy(), vals[:cnt].copy()


def pair_density_diag(states, umat):
    """Diagonal ``sum_nk umat[n,k] n_n n_k`` evaluated on every basis state."""
    cdef cnp.ndarray[occ_t, ndim=2, mode="c"] s = np.ascontiguousarray(states, dtype=np.int32)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode="c"] u = np.ascontiguousarray(umat, dtype=np.complex128)
    cdef Py_ssize_t D = s.shape[0], M = s.shape[1]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(D, dtype=np.complex128)
    cdef Py_ssize_t d, n, k
    cdef double complex acc
    for d in range(D):
        acc = 0.0
        for n in range(M):
            if s[d, n] == 0:
                continue
            for k in range(M):
                if s[d, k] != 0:
                    acc = acc + u[n, k] * s[d, n] * s[d, k]
        out[d] = acc
    return out
