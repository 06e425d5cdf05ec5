"""Pure-NumPy Fock kernels (fallback backend).

Matrix elements of ladder-operator strings over the fixed-total-number
occupation basis.  States are ranked by the stars-and-bars combinadic of
the lexicographically ascending ordering, so no hash lookups are needed;
``binom`` is the precomputed Pascal table ``binom[n, k] = C(n, k)``.
"""

import numpy as np


def rank_states(occ: np.ndarray, binom: np.ndarray, total: int) -> np.ndarray:
    """Lexicographic-ascending rank of each occupation row in ``occ``."""
    occ = np.atleast_2d(occ)
    K, M = occ.shape
    if M == 1:
        return np.zeros(K, dtype=np.int64)
    prefix = np.cumsum(occ, axis=1)
    # amount left at slot j (including occ[:, j]) and after removing it
    a = total - (prefix - occ)
    b = a - occ
    m = (M - 1 - np.arange(M))[None, :]
    ranks = binom[a + m, m] - binom[b + m, m]
    return np.sum(ranks[:, : M - 1], axis=1).astype(np.int64)


def hopping_entries(states, binom, total, theta):
    """COO triplets of ``sum_nk theta[n,k] adag_n a_k`` on the basis ``states``."""
    D, M = states.shape
    rows, cols, vals = [], [], []
    idx = np.arange(D, dtype=np.int64)
    for n in range(M):
        for k in range(M):
            t = theta[n, k]
            if t == 0.0:
                continue
            if n == k:
                occ = states[:, n]
                m = occ > 0
                if m.any():
                    rows.append(idx[m])
                    cols.append(idx[m])
                    vals.append(t * occ[m].astype(np.complex128))
                continue
            m = states[:, k] > 0
            if not m.any():
                continue
            src = idx[m]
            amp = np.sqrt(states[src, k] * (states[src, n] + 1.0)) * t
            tgt = states[src].copy()
            tgt[:, k] -= 1
            tgt[:, n] += 1
            rows.append(rank_states(tgt, binom, total))
            cols.append(src)
            vals.append(amp.astype(np.complex128))
    if not rows:
        e = np.empty(0)
        return e.astype(np.int64), e.astype(np.int64), e.astype(np.complex128)
    return np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)


def quartic_entries(states, binom, total, U):
    """COO triplets of ``sum_nklm U[n,k,l,m] adag_n a_k adag_l a_m`` (as ordered)."""
    D, M = states.shape
    rows, cols, vals = [], [], []
    idx = np.arange(D, dtype=np.int64)
    nz = np.argwhere(U != 0.0)
    for n, k, l, m in nz:
        u = U[n, k, l, m]
        # apply right-to-left: a_m, adag_l, a_k, adag_n
        sel = states[:, m] > 0
        w = states[sel].copy()
        if w.size == 0:
            continue
        amp = np.sqrt(w[:, m].astype(float))
        w[:, m] -= 1
        amp *= np.sqrt(w[:, l] + 1.0)
        w[:, l] += 1
        keep = w[:, k] > 0
        if not keep.any():
            continue
        w = w[keep]
        amp = amp[keep]
        src = idx[sel][keep]
        amp *= np.sqrt(w[:, k].astype(float))
        w[:, k] -= 1
        amp *= np.sqrt(w[:, n] + 1.0)
        w[:, n] += 1
        rows.append(rank_states(w, binom, total))
        cols.append(src)
        vals.append(u * amp.astype(np.complex128))
    if not rows:
        e = np.empty(0)
        return e.astype(np.int64), e.astype(np.int64), e.astype(np.complex128)
    return np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)


def pair_density_diag(states, umat):
    """Diagonal ``sum_nk umat[n,k] n_n n_k`` evaluated on every basis state."""
    occ = states.astype(np.complex128)
    return np.einsum("dn,nk,dk->d", occ, umat.astype(np.complex128), occ)
