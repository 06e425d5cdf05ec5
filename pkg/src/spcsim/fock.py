"""Number-conserving bosonic Fock space: basis, Hamiltonian matrix, dynamics.

The coupling coefficients conserve total photon number term by term, so only
the fixed-N occupation sector is ever built.  The Hamiltonian matrix is

    H = sum_nk theta[n,k] adag_n a_k  -  interaction,

with the interaction either the rank-4 operator string exactly as ordered
(``form="full"``) or the occupation-number coupling ``sum_nk U[n,k] n_n n_k``
(``form="lg_diagonal"``, diagonal in this basis).  Matrix elements come from
the compiled kernel backend when available (see :mod:`spcsim.kernels`).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sparse
from scipy.linalg import eigh, expm

from .coupling import EffectiveHamiltonian
from .kernels import impl as _impl

__all__ = [
    "CapacityError",
    "FockBasis",
    "StateVector",
    "ObservableSeries",
    "build_fock_basis",
    "hamiltonian_matrix",
    "prepare_product_state",
    "evolve",
    "density",
    "two_time_correlator",
    "nonlocal_sum",
    "observable_series",
]

DIMENSION_CAP = 200_000
DENSE_CAP = 2_000


class CapacityError(RuntimeError):
    """Requested Fock sector exceeds the configured dimension cap."""


def _binom_table(n_max: int) -> np.ndarray:
    t = np.zeros((n_max + 1, n_max + 1), dtype=np.int64)
    t[:, 0] = 1
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            t[n, k] = t[n - 1, k - 1] + t[n - 1, k]
    return t


@dataclass
class FockBasis:
    """Fixed total-number occupation basis, lexicographically ascending."""

    modes: int
    total: int
    states: np.ndarray  # (dim, modes) int32
    binom: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.states.shape[0]

    def index_of(self, occupation) -> int:
        """Position of an occupation vector in the basis ordering."""
        occ = np.asarray(occupation, dtype=np.int32).reshape(1, self.modes)
        if occ.sum() != self.total:
            raise ValueError(f"occupation sums to {occ.sum()}, expected {self.total}")
        return int(_impl.rank_states(occ, self.binom, self.total)[0])


def build_fock_basis(modes: int, total: int, cap: int = DIMENSION_CAP) -> FockBasis:
    """Enumerate the complete fixed-N sector in deterministic order."""
    if modes < 1 or total < 0:
        raise ValueError("need modes >= 1 and total >= 0")
    dim = math.comb(total + modes - 1, total)
    if dim > cap:
        raise CapacityError(f"sector dimension {dim} exceeds cap {cap}")
    states = np.zeros((dim, modes), dtype=np.int32)
    occ = np.zeros(modes, dtype=np.int32)

    row = 0

    def fill(slot: int, remaining: int):
        nonlocal row
        if slot == modes - 1:
            occ[slot] = remaining
            states[row] = occ
            row += 1
            return
        for v in range(remaining + 1):
            occ[slot] = v
            fill(slot + 1, remaining - v)
        occ[slot] = 0

    fill(0, total)
    binom = _binom_table(total + modes + 1)
    return FockBasis(modes, total, states, binom)


@dataclass
class StateVector:
    """Complex amplitudes over a :class:`FockBasis`."""

    amplitudes: np.ndarray
    basis: FockBasis

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass
class ObservableSeries:
    """Observable values on a strictly increasing time grid."""

    times: np.ndarray
    values: dict[str, np.ndarray]

    def __post_init__(self):
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")


def hamiltonian_matrix(ham: EffectiveHamiltonian, basis: FockBasis) -> sparse.csr_matrix:
    """Realize the effective Hamiltonian on the fixed-N sector (sparse CSR)."""
    if ham.mode_count != basis.modes:
        raise ValueError(
            f"mode mismatch: coefficients {ham.mode_count}, basis {basis.modes}"
        )
    theta = np.ascontiguousarray(ham.theta, dtype=np.complex128)
    rows, cols, vals = _impl.hopping_entries(basis.states, basis.binom, basis.total, theta)
    H = sparse.coo_matrix((vals, (rows, cols)), shape=(basis.dim, basis.dim))
    if ham.interaction is not None:
        if ham.form == "lg_diagonal":
            umat = np.ascontiguousarray(ham.interaction, dtype=np.complex128)
            diag = _impl.pair_density_diag(basis.states, umat)
            H = H - sparse.diags(diag)
        else:
            u4 = np.ascontiguousarray(ham.interaction, dtype=np.complex128)
            rows, cols, vals = _impl.quartic_entries(basis.states, basis.binom, basis.total, u4)
            H = H - sparse.coo_matrix((vals, (rows, cols)), shape=(basis.dim, basis.dim))
    return H.tocsr()


def prepare_product_state(coeffs, basis: FockBasis) -> StateVector:
    """Normalized single-photon superposition with mode amplitudes ``coeffs``."""
    if basis.total != 1:
        raise ValueError("product-state preparation here is the single-photon sector")
    c = np.asarray(coeffs, dtype=complex).reshape(basis.modes)
    norm = np.linalg.norm(c)
    if norm == 0:
        raise ValueError("mode coefficients must not all vanish")
    amps = np.zeros(basis.dim, dtype=complex)
    for n in range(basis.modes):
        occ = np.zeros(basis.modes, dtype=np.int32)
        occ[n] = 1
        amps[basis.index_of(occ)] = c[n] / norm
    return StateVector(amps, basis)


def _hermiticity_defect(H) -> float:
    diff = H - H.getH() if sparse.issparse(H) else H - H.conj().T
    return float(abs(diff).max()) if sparse.issparse(diff) else float(np.max(np.abs(diff)))


def _evolve_dense(vec: np.ndarray, H, tau: float) -> np.ndarray:
    Hd = H.toarray() if sparse.issparse(H) else np.asarray(H)
    if _hermiticity_defect(Hd) < 1e-8:
        w, V = eigh(Hd)
        return V @ (np.exp(-1j * w * tau) * (V.conj().T @ vec))
    return expm(-1j * tau * Hd) @ vec


def _lanczos_step(H, vec: np.ndarray, tau: float, m_max: int, tol: float):
    """One Krylov approximation of ``exp(-i tau H) vec``; returns (result, err)."""
    nrm = np.linalg.norm(vec)
    if nrm == 0.0:
        return vec.copy(), 0.0
    dim = vec.shape[0]
    m_max = min(m_max, dim)
    V = np.zeros((m_max, dim), dtype=complex)
    alpha = np.zeros(m_max)
    beta = np.zeros(m_max)
    V[0] = vec / nrm
    w = H @ V[0]
    alpha[0] = np.real(np.vdot(V[0], w))
    w = w - alpha[0] * V[0]
    m = 1
    happy = False
    for j in range(1, m_max):
        beta[j] = np.linalg.norm(w)
        if beta[j] < 1e-14 * nrm:
            happy = True
            break
        V[j] = w / beta[j]
        w = H @ V[j] - beta[j] * V[j - 1]
        alpha[j] = np.real(np.vdot(V[j], w))
        w = w - alpha[j] * V[j]
        m = j + 1
    T = np.diag(alpha[:m]) + np.diag(beta[1:m], 1) + np.diag(beta[1:m], -1)
    wT, VT = eigh(T)
    small = VT @ (np.exp(-1j * wT * tau) * VT[0].conj())
    result = nrm * (V[:m].T @ small)
    if happy:
        return result, 0.0
    # error heuristic: weight leaking out of the subspace over this step
    err = float(np.linalg.norm(w) * abs(tau) * abs(small[-1]))
    return result, err


def _evolve_krylov(vec: np.ndarray, H, tau: float, tol: float, m_max: int = 40) -> np.ndarray:
    remaining = tau
    out = vec.copy()
    dt = tau
    while abs(remaining) > 1e-15 * max(abs(tau), 1.0):
        step = dt if abs(dt) <= abs(remaining) else remaining
        result, err = _lanczos_step(H, out, step, m_max, tol)
        if err > tol and abs(step) > 1e-12 * abs(tau):
            dt = step / 2.0
            continue
        out = result
        remaining -= step
    return out


def _evolve_vec(vec: np.ndarray, H, tau: float, method: str, tol: float) -> np.ndarray:
    if tau == 0.0:
        return vec.copy()
    if method == "dense_eig":
        if vec.shape[0] > DENSE_CAP:
            raise CapacityError(
                f"dense evolution capped at dimension {DENSE_CAP}; use method='krylov'"
            )
        return _evolve_dense(vec, H, tau)
    if method == "krylov":
        return _evolve_krylov(vec, H, tau, tol)
    raise ValueError(f"unknown method {method!r}")


def evolve(
    state: StateVector,
    H,
    tau: float,
    method: str = "dense_eig",
    tol: float = 1e-9,
) -> StateVector:
    """Propagate ``state`` for time ``tau`` under the sector Hamiltonian ``H``.

    ``dense_eig`` diagonalizes once (capped dimension); ``krylov`` runs an
    adaptive short-iterate Lanczos propagator with local error below ``tol``
    per step.  A non-Hermitian ``H`` triggers a warning, not an error.
    """
    defect = _hermiticity_defect(H)
    if defect > 1e-8:
        warnings.warn(
            f"Hamiltonian hermiticity defect {defect:.2e}: evolution may be non-unitary"
        )
    amps = _evolve_vec(state.amplitudes, H, tau, method, tol)
    return StateVector(amps, state.basis)


def density(state: StateVector, r: int) -> float:
    """Occupation expectation of mode ``r``."""
    if not 0 <= r < state.basis.modes:
        raise IndexError(f"mode index {r} out of range")
    occ = state.basis.states[:, r]
    return float(np.real(np.sum(occ * np.abs(state.amplitudes) ** 2)))


def two_time_correlator(
    state0: StateVector,
    H,
    r: int,
    offset: int,
    tau: float,
    method: str = "dense_eig",
    tol: float = 1e-9,
) -> float:
    """Equal-state correlator ``Re < n_r(0) n_{r+offset}(tau) >``.

    Evaluated with two auxiliary propagations; ``offset = 0`` gives the local
    two-time density correlator.
    """
    basis = state0.basis
    r2 = r + offset
    if not 0 <= r < basis.modes or not 0 <= r2 < basis.modes:
        raise IndexError("mode index out of range")
    a = _evolve_vec(state0.amplitudes, H, tau, method, tol)
    c = _evolve_vec(basis.states[:, r] * state0.amplitudes, H, tau, method, tol)
    return float(np.real(np.vdot(c, basis.states[:, r2] * a)))


def nonlocal_sum(
    state0: StateVector,
    H,
    r: int,
    tau: float,
    method: str = "dense_eig",
    tol: float = 1e-9,
) -> float:
    """Sum of the two-time correlator over every admissible offset.

    Equals ``sum_R Re < n_r(0) n_{r+R}(tau) >`` with ``r + R`` running over
    all modes; for number-conserving dynamics this reduces to
    ``N * < n_r(0) >``.
    """
    basis = state0.basis
    if not 0 <= r < basis.modes:
        raise IndexError("mode index out of range")
    a = _evolve_vec(state0.amplitudes, H, tau, method, tol)
    c = _evolve_vec(basis.states[:, r] * state0.amplitudes, H, tau, method, tol)
    total = 0.0
    for r2 in range(basis.modes):
        total += float(np.real(np.vdot(c, basis.states[:, r2] * a)))
    return total


def observable_series(
    state0: StateVector,
    H,
    taus,
    correlators: list[tuple[int, int]] | None = None,
    method: str = "dense_eig",
    tol: float = 1e-9,
    interaction_time: float | None = None,
    H_hopping=None,
) -> ObservableSeries:
    """Densities (and optional two-time correlators) over a time grid.

    If ``interaction_time`` is given, evolution beyond it continues under the
    hopping-only Hamiltonian ``H_hopping`` (the interaction switches off at
    the end of the interaction window).
    """
    taus = np.asarray(list(taus), dtype=float)
    basis = state0.basis
    labels: dict[str, list[float]] = {f"n_{r}": [] for r in range(basis.modes)}
    labels["total_number"] = []
    for r, off in correlators or []:
        labels[f"corr_r{r}_R{off}"] = []

    def state_at(tau: float) -> np.ndarray:
        if interaction_time is None or tau <= interaction_time:
            return _evolve_vec(state0.amplitudes, H, tau, method, tol)
        if H_hopping is None:
            raise ValueError("interaction_time set but no hopping-only Hamiltonian given")
        mid = _evolve_vec(state0.amplitudes, H, interaction_time, method, tol)
        return _evolve_vec(mid, H_hopping, tau - interaction_time, method, tol)

    for tau in taus:
        amps = state_at(float(tau))
        sv = StateVector(amps, basis)
        total = 0.0
        for r in range(basis.modes):
            val = density(sv, r)
            labels[f"n_{r}"].append(val)
            total += val
        labels["total_number"].append(total)
        for r, off in correlators or []:
            labels[f"corr_r{r}_R{off}"].append(
                two_time_correlator(state0, H, r, off, float(tau), method, tol)
            )
    return ObservableSeries(taus, {k: np.asarray(v) for k, v in labels.items()})
