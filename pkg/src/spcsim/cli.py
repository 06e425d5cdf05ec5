"""Command-line front end: basis-check | potential | hopping | assemble | evolve.

Configuration comes from a JSON file plus command-line overrides (CLI wins
over file, file over defaults); unknown keys are rejected before any
computation.  Every command writes CSV artifacts with a JSON metadata
sidecar (config hash, package version, tolerances, convergence diagnostics)
and is byte-identical when rerun with the same config and seed.

Exit codes: 0 success, 2 config error, 3 quadrature non-convergence,
4 capacity exceeded.
"""

from __future__ import annotations

import argparse
import copy
import hashlib
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from . import coupling as cp
from . import fock as fk
from .geometry import (
    Architecture,
    SchemaError,
    architecture_from_dict,
    gen_ring,
    gen_uniform_cylinder,
    load_architecture,
)
from .modes import (
    BasisSpec,
    ModeIndex,
    QuadratureGrid,
    attenuation_factor,
    completeness_residual,
    enumerate_modes,
    eval_lg_momentum,
    power_radius,
)

FIG4_PAIRS = [(0.1, 0.9), (0.2, 0.8), (0.4, 1.0), (0.4, 0.6)]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3
EXIT_CAPACITY = 4


class ConfigError(ValueError):
    """Run configuration violates the documented schema."""


DEFAULT_CONFIG = {
    "basis": {
        "w0": 1.0,
        "k0": 1.0e4,
        "q_max": 18.0,
        "l_max": 0,
        "p_max": 25,
        "radial_sector": True,
    },
    "geometry": {
        "kind": "boundary_cylinder",
        "a_frac": 0.1,
        "b_frac": 0.9,
        "count": 2000,
        "gap": 0.5,
        "orbital_width": 0.0,
        "omega0": 1.0,
        "g_coh": 1.0,
        "g_inc": 1.0,
    },
    "quadrature": {
        "n_radial": 300,
        "n_angular": 128,
        "n_pv": 32768,
        "epsilon_pv": None,
        "convergence_check": True,
        "convergence_tol": 0.01,
    },
    "deltas": [0.001, 0.01, 0.02, 0.05],
    "hopping": {"method": "point_particle"},
    "dynamics": {
        "photons": 1,
        "initial": None,
        "taus": [0.0, 0.5, 1.0, 1.5, 2.0],
        "method": "dense_eig",
        "tol": 1e-9,
        "interaction_time": None,
        "correlators": [],
        "theta_override": None,
        "interaction_override": None,
        "delta": 0.001,
    },
    "output": {"dir": "out"},
    "seed": 1234,
}


def _merge(base: dict, update: dict, path: str = "config") -> dict:
    out = copy.deepcopy(base)
    for key, val in update.items():
        if key not in base:
            raise ConfigError(f"{path}: unknown key '{key}'")
        if isinstance(base[key], dict) and base[key] and not key == "geometry":
            if not isinstance(val, dict):
                raise ConfigError(f"{path}.{key}: expected an object")
            out[key] = _merge(base[key], val, f"{path}.{key}")
        else:
            out[key] = copy.deepcopy(val)
    return out


def load_config(path: str | None, overrides: dict) -> dict:
    cfg = copy.deepcopy(DEFAULT_CONFIG)
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                user = json.load(fh)
        except FileNotFoundError as exc:
            raise ConfigError(f"config file not found: {path}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
        if not isinstance(user, dict):
            raise ConfigError("config root must be a JSON object")
        cfg = _merge(cfg, user)
    cfg = _merge(cfg, overrides) if overrides else cfg
    _validate(cfg)
    return cfg


def _require(cond: bool, msg: str):
    if not cond:
        raise ConfigError(msg)


def _validate(cfg: dict):
    b = cfg["basis"]
    _require(b["w0"] > 0, "basis.w0 must be positive")
    _require(b["q_max"] > 0, "basis.q_max must be positive")
    _require(b["k0"] > 0, "basis.k0 must be positive")
    _require(int(b["l_max"]) >= 0 and int(b["p_max"]) >= 0, "basis truncations must be >= 0")
    q = cfg["quadrature"]
    _require(int(q["n_radial"]) >= 8, "quadrature.n_radial must be >= 8")
    _require(int(q["n_angular"]) >= 4, "quadrature.n_angular must be >= 4")
    _require(int(q["n_pv"]) >= 64, "quadrature.n_pv must be >= 64")
    _require(
        isinstance(cfg["deltas"], list) and len(cfg["deltas"]) >= 1,
        "deltas must be a non-empty list",
    )
    _require(all(isinstance(d, (int, float)) for d in cfg["deltas"]), "deltas must be numbers")
    g = cfg["geometry"]
    kind = g.get("kind")
    geo_keys = {
        "boundary_cylinder": {"kind", "a_frac", "b_frac", "count", "gap", "orbital_width", "omega0", "g_coh", "g_inc"},
        "uniform_cylinder": {"kind", "a", "b", "count", "gap", "orbital_width", "omega0", "g_coh", "g_inc"},
        "ring": {"kind", "radius", "count", "gap", "orbital_width", "omega0", "g_coh", "g_inc"},
        "file": {"kind", "path"},
        "inline": {"kind", "architecture"},
    }
    _require(kind in geo_keys, f"geometry.kind '{kind}' not recognized")
    unknown = set(g) - geo_keys[kind]
    _require(not unknown, f"geometry: unknown keys {sorted(unknown)} for kind '{kind}'")
    d = cfg["dynamics"]
    _require(
        all(isinstance(c, (list, tuple)) and len(c) == 2 for c in d["correlators"]),
        "dynamics.correlators must be [mode, offset] pairs",
    )
    _require(int(d["photons"]) >= 0, "dynamics.photons must be >= 0")
    _require(d["method"] in {"dense_eig", "krylov"}, "dynamics.method invalid")
    taus = d["taus"]
    _require(isinstance(taus, list) and len(taus) >= 1, "dynamics.taus must be a list")
    _require(all(t2 > t1 for t1, t2 in zip(taus, taus[1:])), "dynamics.taus must increase")
    _require(isinstance(cfg["seed"], int), "seed must be an integer")


def basis_from_config(cfg: dict) -> BasisSpec:
    b = cfg["basis"]
    return BasisSpec(
        w0=float(b["w0"]),
        k0=float(b["k0"]),
        q_max=float(b["q_max"]),
        l_max=int(b["l_max"]),
        p_max=int(b["p_max"]),
        radial_sector=bool(b["radial_sector"]),
    )


def grid_from_config(cfg: dict, spec: BasisSpec) -> QuadratureGrid:
    q = cfg["quadrature"]
    return QuadratureGrid.disk(spec.q_max, int(q["n_radial"]), int(q["n_angular"]))


def pv_from_config(cfg: dict, spec: BasisSpec) -> cp.PrincipalValueGrid:
    q = cfg["quadrature"]
    eps = q["epsilon_pv"]
    return cp.PrincipalValueGrid.for_spec(
        spec, n_cells=int(q["n_pv"]), epsilon=None if eps is None else float(eps)
    )


def boundary_radius(spec: BasisSpec) -> float:
    return power_radius(ModeIndex(0, spec.p_max), 0.95, spec)


def architecture_from_config(cfg: dict, spec: BasisSpec) -> Architecture:
    g = cfg["geometry"]
    kind = g["kind"]
    common = {
        "gaps": (float(g.get("gap", 0.5)),),
        "orbital_width": float(g.get("orbital_width", 0.0)),
        "omega0": float(g.get("omega0", 1.0)),
        "g_coh": float(g.get("g_coh", 1.0)),
        "g_inc": float(g.get("g_inc", 1.0)),
    }
    if kind == "file":
        _require("path" in g, "geometry.kind=file requires 'path'")
        return load_architecture(g["path"])
    if kind == "inline":
        _require("architecture" in g, "geometry.kind=inline requires 'architecture'")
        return architecture_from_dict(g["architecture"])
    if kind == "ring":
        _require("radius" in g and "count" in g, "ring geometry requires radius, count")
        return gen_ring(float(g["radius"]), int(g["count"]), **common)
    if kind == "uniform_cylinder":
        _require(
            all(k in g for k in ("a", "b", "count")),
            "uniform_cylinder requires a, b, count",
        )
        return gen_uniform_cylinder(
            float(g["a"]), float(g["b"]), int(g["count"]), seed=int(cfg["seed"]), **common
        )
    # boundary_cylinder: radii are fractions of the 95% boundary radius
    _require(
        all(k in g for k in ("a_frac", "b_frac", "count")),
        "boundary_cylinder requires a_frac, b_frac, count",
    )
    c = boundary_radius(spec)
    return gen_uniform_cylinder(
        float(g["a_frac"]) * c,
        float(g["b_frac"]) * c,
        int(g["count"]),
        seed=int(cfg["seed"]),
        **common,
    )


# --- deterministic output helpers ---------------------------------------------


def config_hash(cfg: dict) -> str:
    # output routing is not part of the run's semantic identity
    semantic = {k: v for k, v in cfg.items() if k != "output"}
    blob = json.dumps(semantic, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _fmt(x) -> str:
    if isinstance(x, complex):
        return repr(x)
    return repr(float(x))


def write_matrix_csv(path: Path, matrix: np.ndarray, index_label: str = "n\\k"):
    m = np.asarray(matrix)
    is_complex = np.iscomplexobj(m) and np.max(np.abs(m.imag)) > 1e-12 * max(
        float(np.max(np.abs(m.real))), 1e-300
    )
    vals = m if is_complex else m.real
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(index_label + "," + ",".join(str(j) for j in range(vals.shape[1])) + "\n")
        for i in range(vals.shape[0]):
            fh.write(str(i) + "," + ",".join(_fmt(v) for v in vals[i]) + "\n")
    return is_complex


def write_report_csv(path: Path, rows: list[tuple[str, str, float]]):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("metric,label,value\n")
        for metric, label, value in rows:
            fh.write(f"{metric},{label},{_fmt(value)}\n")


def write_series_csv(path: Path, series: fk.ObservableSeries):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("tau,label,value\n")
        for i, tau in enumerate(series.times):
            for label in sorted(series.values):
                fh.write(f"{_fmt(tau)},{label},{_fmt(series.values[label][i])}\n")


def write_sidecar(path: Path, payload: dict):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def base_sidecar(cfg: dict, command: str, **extra) -> dict:
    out = {
        "command": command,
        "config_hash": config_hash(cfg),
        "package_version": __version__,
        "seed": cfg["seed"],
        "grid": {
            "n_radial": cfg["quadrature"]["n_radial"],
            "n_angular": cfg["quadrature"]["n_angular"],
            "n_pv": cfg["quadrature"]["n_pv"],
        },
    }
    out.update(extra)
    return out


# --- commands -------------------------------------------------------------------


def cmd_basis_check(cfg: dict, outdir: Path) -> int:
    spec = basis_from_config(cfg)
    grid = grid_from_config(cfg, spec)
    modes = enumerate_modes(spec)
    M = len(modes)
    vals = np.empty((M, grid.n_radial, grid.n_angular), dtype=complex)
    for n, m in enumerate(modes):
        vals[n] = eval_lg_momentum(
            m, grid.radial_nodes[:, None], grid.angular_nodes[None, :], spec
        )
    wr = grid.radial_weights * grid.radial_nodes
    gram = np.einsum("i,j,nij,mij->nm", wr, grid.angular_weights, vals.conj(), vals)
    gram_offdiag = float(np.max(np.abs(gram - np.diag(np.diag(gram)))))
    gram_diag_dev = float(np.max(np.abs(np.diag(gram) - 1.0)))

    rng = np.random.default_rng(cfg["seed"])
    residuals = [
        completeness_residual(
            spec, rng.uniform(0, 0.25 * spec.q_max, 2), rng.uniform(-1.5, 1.5, 2)
        )
        for _ in range(20)
    ]

    rows = [
        ("gram_max_offdiag", "all_modes", gram_offdiag),
        ("gram_max_diag_deviation", "all_modes", gram_diag_dev),
        ("completeness_mean_residual", "20_samples", float(np.mean(residuals))),
    ]
    for frac in (0.5, 0.95):
        for mode in (ModeIndex(0, 0), ModeIndex(0, spec.p_max)):
            rows.append(
                (
                    "power_radius",
                    f"l{mode.l}_p{mode.p}_f{frac}",
                    power_radius(mode, frac, spec),
                )
            )
    for l_exp, p_exp in ((2, 2), (1, 1), (2, 1)):
        q_max = 10.0 ** (-p_exp) * spec.k0
        dz = 10.0**l_exp * 2.0 * np.pi / spec.k0
        rows.append(
            (
                "attenuation_factor",
                f"l{l_exp}_p{p_exp}",
                attenuation_factor(q_max, spec.k0, dz),
            )
        )
    write_report_csv(outdir / "basis_report.csv", rows)
    write_sidecar(
        outdir / "basis_report.json",
        base_sidecar(
            cfg,
            "basis-check",
            dims=M,
            tolerances={"gram": 1e-8},
            results={"gram_max_offdiag": gram_offdiag},
        ),
    )
    return EXIT_OK if gram_offdiag < 1e-8 else EXIT_CONVERGENCE


def cmd_potential(cfg: dict, outdir: Path) -> int:
    spec = basis_from_config(cfg)
    grid = grid_from_config(cfg, spec)
    pv = pv_from_config(cfg, spec)
    check = bool(cfg["quadrature"]["convergence_check"])
    tol = float(cfg["quadrature"]["convergence_tol"])
    qmax2 = spec.q_max**2
    crossections = {}
    worst = 0.0
    for ratio in cfg["deltas"]:
        V = cp.scattering_potential(
            spec, float(ratio) * qmax2, grid, pv=pv, convergence_check=check,
            convergence_tol=tol,
        )
        tag = f"delta_{ratio}"
        W = cp.middle_trace(V.entries)
        write_matrix_csv(outdir / f"V_mk_{tag}.csv", W)
        write_matrix_csv(outdir / f"V_nm_{tag}.csv", cp.partial_trace_first_pair(V.entries))
        write_matrix_csv(outdir / f"V_kl_{tag}.csv", cp.partial_trace_last_pair(V.entries))
        crossections[ratio] = cp.anti_diagonal_crossection(W)
        conv = {
            k: V.meta[k]
            for k in ("nr_doubled_delta", "epsilon_halved_delta")
            if k in V.meta
        }
        worst = max(worst, conv.get("nr_doubled_delta", 0.0))
        write_sidecar(
            outdir / f"V_mk_{tag}.json",
            base_sidecar(
                cfg,
                "potential",
                dims=spec.mode_count,
                delta_over_qmax2=float(ratio),
                epsilon_pv=V.meta["epsilon_pv"],
                convergence=conv,
                half_max_bandwidth=cp.half_max_bandwidth(W),
            ),
        )
    with open(outdir / "crossection.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("index," + ",".join(f"delta_{r}" for r in cfg["deltas"]) + "\n")
        M = spec.mode_count
        for i in range(M):
            fh.write(
                str(i)
                + ","
                + ",".join(_fmt(crossections[r][i]) for r in cfg["deltas"])
                + "\n"
            )
    write_sidecar(
        outdir / "crossection.json",
        base_sidecar(cfg, "potential", dims=spec.mode_count, deltas=cfg["deltas"]),
    )
    return EXIT_OK if worst <= tol else EXIT_CONVERGENCE


def _hopping_matrices(cfg: dict, spec: BasisSpec, arch: Architecture):
    method = cfg["hopping"]["method"]
    if method == "point_particle":
        coh = cp.hopping_coherent_pp(arch, spec)
        inc = cp.hopping_incoherent_pp(arch, spec)
        return coh, inc, {}
    if method != "exact":
        raise ConfigError(f"hopping.method '{method}' not recognized")
    grid = grid_from_config(cfg, spec)
    pv = pv_from_config(cfg, spec)
    check = bool(cfg["quadrature"]["convergence_check"])
    tol = float(cfg["quadrature"]["convergence_tol"])
    coh = cp.hopping_coherent_exact(arch, spec, grid, pv=pv, convergence_check=check, convergence_tol=tol)
    plus, minus = cp.hopping_incoherent_exact(
        arch, spec, grid, pv=pv, convergence_check=check, convergence_tol=tol
    )
    inc = cp.HoppingMatrix(plus.entries + minus.entries, "incoherent", plus.meta)
    conv = {
        k: v
        for k, v in coh.meta.items()
        if k in ("nr_doubled_delta", "epsilon_halved_delta")
    }
    return coh, inc, conv


def cmd_hopping(cfg: dict, outdir: Path, preset: str | None) -> int:
    spec = basis_from_config(cfg)
    tol = float(cfg["quadrature"]["convergence_tol"])
    if preset == "cylinder-fig4":
        c = boundary_radius(spec)
        pairs = FIG4_PAIRS
        count = int(cfg["geometry"].get("count", 2000))
        archs = [
            (
                f"a{fa}_b{fb}",
                gen_uniform_cylinder(fa * c, fb * c, count, seed=int(cfg["seed"])),
            )
            for fa, fb in pairs
        ]
    else:
        archs = [("geometry", architecture_from_config(cfg, spec))]
    worst = 0.0
    for tag, arch in archs:
        coh, inc, conv = _hopping_matrices(cfg, spec, arch)
        tot = cp.hopping_total(arch, coh, inc)
        write_matrix_csv(outdir / f"theta_coh_{tag}.csv", coh.entries)
        write_matrix_csv(outdir / f"theta_inc_{tag}.csv", inc.entries)
        write_matrix_csv(outdir / f"theta_total_{tag}.csv", tot.entries)
        start, stop = cp.confinement_block(inc.entries)
        worst = max(worst, conv.get("nr_doubled_delta", 0.0))
        write_sidecar(
            outdir / f"theta_inc_{tag}.json",
            base_sidecar(
                cfg,
                "hopping",
                dims=spec.mode_count,
                scatterers=arch.count,
                hermiticity_defect=inc.hermiticity_defect,
                confinement_block={"start": start, "stop": stop},
                convergence=conv,
            ),
        )
    return EXIT_OK if worst <= tol else EXIT_CONVERGENCE


def cmd_assemble(cfg: dict, outdir: Path) -> int:
    spec = basis_from_config(cfg)
    arch = architecture_from_config(cfg, spec)
    grid = grid_from_config(cfg, spec)
    pv = pv_from_config(cfg, spec)
    coh, inc, conv = _hopping_matrices(cfg, spec, arch)
    tot = cp.hopping_total(arch, coh, inc)
    S = cp.structural_tensor(arch, spec)
    qmax2 = spec.q_max**2
    write_matrix_csv(outdir / "theta_total.csv", tot.entries)
    for ratio in cfg["deltas"]:
        V = cp.scattering_potential(
            spec, float(ratio) * qmax2, grid, pv=pv, convergence_check=False
        )
        U = cp.interaction_tensor(S, V)
        umat, discarded = cp.reduce_lg_diagonal(U)
        ham = cp.assemble_hamiltonian(tot, umat)
        tag = f"delta_{ratio}"
        write_matrix_csv(outdir / f"u_reduced_{tag}.csv", umat)
        write_sidecar(
            outdir / f"u_reduced_{tag}.json",
            base_sidecar(
                cfg,
                "assemble",
                dims=spec.mode_count,
                delta_over_qmax2=float(ratio),
                hermiticity_defect=ham.meta["hermiticity_defect"],
                interaction_defect=ham.meta["interaction_defect"],
                discarded_offdiagonal_weight=discarded,
                convergence=conv,
            ),
        )
    return EXIT_OK


def cmd_evolve(cfg: dict, outdir: Path) -> int:
    dyn = cfg["dynamics"]
    if dyn["theta_override"] is not None:
        theta = np.asarray(dyn["theta_override"], dtype=complex)
        umat = (
            np.asarray(dyn["interaction_override"], dtype=complex)
            if dyn["interaction_override"] is not None
            else None
        )
    else:
        spec = basis_from_config(cfg)
        arch = architecture_from_config(cfg, spec)
        coh, inc, _ = _hopping_matrices(cfg, spec, arch)
        theta = cp.hopping_total(arch, coh, inc).entries
        grid = grid_from_config(cfg, spec)
        pv = pv_from_config(cfg, spec)
        V = cp.scattering_potential(
            spec, float(dyn["delta"]) * spec.q_max**2, grid, pv=pv, convergence_check=False
        )
        S = cp.structural_tensor(arch, spec)
        umat, _ = cp.reduce_lg_diagonal(cp.interaction_tensor(S, V))
    M = theta.shape[0]
    ham = cp.assemble_hamiltonian(theta, umat)
    basis = fk.build_fock_basis(M, int(dyn["photons"]))
    H = fk.hamiltonian_matrix(ham, basis)
    H_hop = None
    if dyn["interaction_time"] is not None:
        H_hop = fk.hamiltonian_matrix(cp.assemble_hamiltonian(theta, None), basis)
    initial = dyn["initial"]
    if initial is None:
        initial = [1.0] + [0.0] * (M - 1)
    if int(dyn["photons"]) == 1:
        state = fk.prepare_product_state(np.asarray(initial, dtype=complex), basis)
    else:
        amps = np.zeros(basis.dim, dtype=complex)
        amps[0] = 1.0
        state = fk.StateVector(amps, basis)
    series = fk.observable_series(
        state,
        H,
        dyn["taus"],
        correlators=[tuple(c) for c in dyn["correlators"]],
        method=dyn["method"],
        tol=float(dyn["tol"]),
        interaction_time=dyn["interaction_time"],
        H_hopping=H_hop,
    )
    write_series_csv(outdir / "observables.csv", series)
    write_sidecar(
        outdir / "observables.json",
        base_sidecar(
            cfg,
            "evolve",
            dims=basis.dim,
            modes=M,
            photons=int(dyn["photons"]),
            method=dyn["method"],
            tolerances={"evolution": float(dyn["tol"])},
            hermiticity_defect=ham.meta["hermiticity_defect"],
        ),
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spcsim",
        description="Photon mode-coupling simulator: basis diagnostics, coupling "
        "tensors, and Fock-space dynamics.",
    )
    parser.add_argument("--config", help="JSON run configuration", default=None)
    parser.add_argument("--out", help="output directory", default=None)
    parser.add_argument("--seed", type=int, default=None, help="override RNG seed")
    parser.add_argument(
        "--delta",
        type=float,
        action="append",
        default=None,
        help="gap / q_max^2 ratio (repeatable, overrides config deltas)",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("basis-check", help="orthonormality, completeness, power radii")
    sub.add_parser("potential", help="scattering kernel traces per gap value")
    hop = sub.add_parser("hopping", help="hopping matrices for the geometry")
    hop.add_argument(
        "--preset",
        choices=["cylinder-fig4"],
        default=None,
        help="iterate the four annulus fraction pairs",
    )
    sub.add_parser("assemble", help="total hopping plus reduced interaction")
    sub.add_parser("evolve", help="observable time series")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides: dict = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.delta is not None:
        overrides["deltas"] = list(args.delta)
    if args.out is not None:
        overrides["output"] = {"dir": args.out}
    try:
        cfg = load_config(args.config, overrides)
    except (ConfigError, SchemaError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    outdir = Path(cfg["output"]["dir"])
    outdir.mkdir(parents=True, exist_ok=True)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            if args.command == "basis-check":
                return cmd_basis_check(cfg, outdir)
            if args.command == "potential":
                return cmd_potential(cfg, outdir)
            if args.command == "hopping":
                return cmd_hopping(cfg, outdir, args.preset)
            if args.command == "assemble":
                return cmd_assemble(cfg, outdir)
            if args.command == "evolve":
                return cmd_evolve(cfg, outdir)
    except (ConfigError, SchemaError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except fk.CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
