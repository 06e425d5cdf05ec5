"""Benchmark the compiled Fock kernels against the pure-NumPy fallback.

Run:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np
import scipy.sparse as sparse

from spcsim.fock import build_fock_basis
from spcsim.kernels import load_backend

compiled, compiled_name = load_backend(pure=False)
pure, _ = load_backend(pure=True)

if compiled_name != "compiled":
    print("compiled extension not available; nothing to compare")
    raise SystemExit(1)


def time_call(fn, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def as_csr(triplets, dim):
    rows, cols, vals = triplets
    return sparse.coo_matrix((vals, (rows, cols)), shape=(dim, dim)).tocsr()


def bench_hopping(modes, total):
    basis = build_fock_basis(modes, total)
    rng = np.random.default_rng(1)
    theta = rng.normal(size=(modes, modes)) + 1j * rng.normal(size=(modes, modes))
    tc, out_c = time_call(
        lambda: compiled.hopping_entries(basis.states, basis.binom, basis.total, theta)
    )
    tp, out_p = time_call(
        lambda: pure.hopping_entries(basis.states, basis.binom, basis.total, theta)
    )
    assert abs(as_csr(out_c, basis.dim) - as_csr(out_p, basis.dim)).max() < 1e-12
    return basis.dim, tc, tp


def bench_quartic(modes, total):
    basis = build_fock_basis(modes, total)
    rng = np.random.default_rng(2)
    U = rng.normal(size=(modes,) * 4)
    tc, out_c = time_call(
        lambda: compiled.quartic_entries(basis.states, basis.binom, basis.total, U)
    )
    tp, out_p = time_call(
        lambda: pure.quartic_entries(basis.states, basis.binom, basis.total, U)
    )
    assert abs(as_csr(out_c, basis.dim) - as_csr(out_p, basis.dim)).max() < 1e-10
    return basis.dim, tc, tp


def bench_diag(modes, total):
    basis = build_fock_basis(modes, total)
    rng = np.random.default_rng(3)
    umat = rng.normal(size=(modes, modes)) + 0j
    tc, out_c = time_call(lambda: compiled.pair_density_diag(basis.states, umat))
    tp, out_p = time_call(lambda: pure.pair_density_diag(basis.states, umat))
    assert np.allclose(out_c, out_p)
    return basis.dim, tc, tp


def main():
    print(f"{'kernel':<26}{'modes':>6}{'photons':>8}{'dim':>8}"
          f"{'compiled':>12}{'pure':>12}{'speedup':>9}")
    cases = [
        (bench_hopping, "hopping matrix", (12, 4)),
        (bench_hopping, "hopping matrix", (20, 3)),
        (bench_hopping, "hopping matrix", (26, 3)),
        (bench_quartic, "quartic string", (5, 3)),
        (bench_quartic, "quartic string", (6, 3)),
        (bench_diag, "occupation diagonal", (20, 3)),
        (bench_diag, "occupation diagonal", (26, 4)),
    ]
    for fn, name, (modes, total) in cases:
        dim, tc, tp = fn(modes, total)
        print(
            f"{name:<26}{modes:>6}{total:>8}{dim:>8}"
            f"{tc * 1e3:>10.2f}ms{tp * 1e3:>10.2f}ms{tp / tc:>8.1f}x"
        )


if __name__ == "__main__":
    main()
