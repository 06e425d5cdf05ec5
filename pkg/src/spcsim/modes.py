"""Laguerre-Gauss transverse modes at the beam waist.

Provides the orthonormal mode basis in position and transverse-momentum
space, quadrature grids over the momentum disk, and basis diagnostics:
plane-wave reconstruction residual, enclosed-power radius, and the
paraxial attenuation of a finite-bandwidth beam.

Conventions (pinned by the tests in ``tests/test_modes.py``):

* position modes carry unit L2 norm on the transverse plane and the
  azimuthal phase ``exp(i*l*phi)``;
* momentum modes are the unitary 2-D Fourier transforms (forward kernel
  ``exp(-i q.rho) / 2pi``), which maps a Laguerre-Gauss profile of waist
  ``w0`` onto the same profile with waist ``2/w0`` times the eigenphase
  ``(-i)**(|l| + 2p)``;
* with both sides unit-normalized, the plane wave is reconstructed as
  ``2*pi * sum_lp conj(phi_lp(q)) * psi_lp(rho) = exp(i q.rho)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import eval_genlaguerre

__all__ = [
    "ModeIndex",
    "BasisSpec",
    "QuadratureGrid",
    "enumerate_modes",
    "eval_lg_position",
    "eval_lg_momentum",
    "mode_values_position",
    "mode_values_momentum_radial",
    "completeness_residual",
    "power_radius",
    "attenuation_factor",
]

_QUARTER_PHASES = (1.0 + 0.0j, -1.0j, -1.0 + 0.0j, 1.0j)  # (-i)**k for k mod 4


@dataclass(frozen=True)
class ModeIndex:
    """Azimuthal/radial quantum numbers ``(l, p)`` of one transverse mode."""

    l: int
    p: int

    def __post_init__(self):
        if self.p < 0:
            raise ValueError(f"radial index p must be >= 0, got {self.p}")


@dataclass(frozen=True)
class BasisSpec:
    """Truncated mode basis: waist, carrier, momentum cutoff and bounds.

    Lengths are measured in units of the waist ``w0`` and momenta in
    ``1/w0``.  ``radial_sector=True`` restricts the enumeration to the
    ``l = 0`` (purely radial) modes used for the annulus geometries, where
    the flat index coincides with ``p``.
    """

    w0: float = 1.0
    k0: float = 1.0e4
    q_max: float = 18.0
    l_max: int = 0
    p_max: int = 25
    radial_sector: bool = True

    def __post_init__(self):
        if self.w0 <= 0:
            raise ValueError("waist w0 must be positive")
        if self.q_max <= 0:
            raise ValueError("momentum cutoff q_max must be positive")
        if self.k0 <= 0:
            raise ValueError("carrier wavevector k0 must be positive")
        if self.l_max < 0 or self.p_max < 0:
            raise ValueError("truncation bounds must be non-negative")
        if self.paraxiality >= 1.0:
            raise ValueError(
                f"paraxiality q_max/(sqrt(2)*k0) = {self.paraxiality:.3g} "
                "must be < 1"
            )

    @property
    def paraxiality(self) -> float:
        """Small parameter q_max / (sqrt(2) * k0) of the paraxial expansion."""
        return self.q_max / (math.sqrt(2.0) * self.k0)

    @property
    def mode_count(self) -> int:
        if self.radial_sector:
            return self.p_max + 1
        return (2 * self.l_max + 1) * (self.p_max + 1)


def enumerate_modes(spec: BasisSpec) -> tuple[ModeIndex, ...]:
    """Deterministic flat ordering of the basis: l ascending, then p ascending."""
    if spec.radial_sector:
        return tuple(ModeIndex(0, p) for p in range(spec.p_max + 1))
    return tuple(
        ModeIndex(l, p)
        for l in range(-spec.l_max, spec.l_max + 1)
        for p in range(spec.p_max + 1)
    )


def _norm_const(l: int, p: int, w: float) -> float:
    # sqrt(2 p! / (pi (p+|l|)!)) / w, via log-gamma for large indices
    al = abs(l)
    return math.sqrt(2.0 / math.pi * math.exp(math.lgamma(p + 1) - math.lgamma(p + al + 1))) / w


def _lg_radial(l: int, p: int, r, w: float):
    """Radial profile of the unit-norm mode with waist ``w`` (no angular factor)."""
    al = abs(l)
    r = np.asarray(r, dtype=float)
    x = 2.0 * r * r / (w * w)
    out = _norm_const(l, p, w) * eval_genlaguerre(p, al, x) * np.exp(-r * r / (w * w))
    if al:
        out = out * (math.sqrt(2.0) * r / w) ** al
    return out


def eval_lg_position(mode: ModeIndex, rho, phi, spec: BasisSpec):
    """Complex mode amplitude at polar position ``(rho, phi)`` in the waist plane.

    Unit L2 norm: ``integral |psi|^2 d^2 rho = 1``; phase ``exp(i*l*phi)``.
    Broadcasts over array-valued ``rho`` and ``phi``.
    """
    rad = _lg_radial(mode.l, mode.p, rho, spec.w0)
    if mode.l == 0:
        return rad + 0.0j
    return rad * np.exp(1j * mode.l * np.asarray(phi, dtype=float))


def eval_lg_momentum(mode: ModeIndex, q, theta_q, spec: BasisSpec):
    """Transverse-momentum amplitude at ``(q, theta_q)``.

    Self-similar profile with momentum waist ``2/w0``, scaled by the Fourier
    eigenphase ``(-i)**(|l| + 2p)``; phase ``exp(i*l*theta_q)``.
    """
    wq = 2.0 / spec.w0
    rad = _lg_radial(mode.l, mode.p, q, wq)
    phase = _QUARTER_PHASES[(abs(mode.l) + 2 * mode.p) % 4]
    if mode.l == 0:
        return phase * rad
    return phase * rad * np.exp(1j * mode.l * np.asarray(theta_q, dtype=float))


def mode_values_position(spec: BasisSpec, x, y) -> np.ndarray:
    """Matrix ``psi[n, j]`` of every basis mode at cartesian points ``(x[j], y[j])``."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    rho = np.hypot(x, y)
    phi = np.arctan2(y, x)
    modes = enumerate_modes(spec)
    out = np.empty((len(modes), x.size), dtype=complex)
    for n, m in enumerate(modes):
        out[n] = eval_lg_position(m, rho, phi, spec)
    return out


def mode_values_momentum_radial(spec: BasisSpec, q) -> np.ndarray:
    """Radial momentum profiles ``phi[n, j]`` at ``theta_q = 0`` (angular factor split off)."""
    q = np.atleast_1d(np.asarray(q, dtype=float))
    modes = enumerate_modes(spec)
    out = np.empty((len(modes), q.size), dtype=complex)
    for n, m in enumerate(modes):
        out[n] = eval_lg_momentum(m, q, 0.0, spec)
    return out


@dataclass(frozen=True)
class QuadratureGrid:
    """Tensor quadrature over the momentum disk ``|q| <= q_max``.

    Gauss-Legendre radial nodes on ``[0, q_max]`` and uniform angular nodes;
    ``integrate`` applies the polar jacobian, so integrating 1 returns the
    disk area.
    """

    radial_nodes: np.ndarray
    radial_weights: np.ndarray
    angular_nodes: np.ndarray
    angular_weights: np.ndarray

    @classmethod
    def disk(cls, q_max: float, n_radial: int = 200, n_angular: int = 128) -> "QuadratureGrid":
        if q_max <= 0 or n_radial < 2 or n_angular < 4:
            raise ValueError("need q_max > 0, n_radial >= 2, n_angular >= 4")
        x, w = leggauss(n_radial)
        nodes = 0.5 * q_max * (x + 1.0)
        weights = 0.5 * q_max * w
        ang = np.arange(n_angular) * (2.0 * math.pi / n_angular)
        angw = np.full(n_angular, 2.0 * math.pi / n_angular)
        return cls(nodes, weights, ang, angw)

    @property
    def n_radial(self) -> int:
        return self.radial_nodes.size

    @property
    def n_angular(self) -> int:
        return self.angular_nodes.size

    def refined(self, factor: int = 2) -> "QuadratureGrid":
        """Same disk with ``factor``-times more radial nodes (convergence checks)."""
        q_max = float(np.sum(self.radial_weights))  # GL weights on [0, q_max] sum to q_max
        return QuadratureGrid.disk(q_max, factor * self.n_radial, self.n_angular)

    def integrate(self, values: np.ndarray) -> complex:
        """Integrate samples ``values[i, j]`` at (radial i, angular j) over the disk."""
        wr = self.radial_weights * self.radial_nodes
        return complex(np.einsum("i,j,ij->", wr, self.angular_weights, values))


def completeness_residual(spec: BasisSpec, q, rho) -> float:
    """Pointwise defect of the truncated plane-wave reconstruction.

    Returns ``| 2*pi * sum_n conj(phi_n(q)) psi_n(rho) - exp(i q.rho) |`` over
    the enumerated basis; decays (in the mean over sample points) as the
    truncation bounds grow.  ``q`` and ``rho`` are 2-vectors.
    """
    q = np.asarray(q, dtype=float).reshape(2)
    rho = np.asarray(rho, dtype=float).reshape(2)
    qn = math.hypot(q[0], q[1])
    qang = math.atan2(q[1], q[0])
    rn = math.hypot(rho[0], rho[1])
    rang = math.atan2(rho[1], rho[0])
    acc = 0.0 + 0.0j
    for m in enumerate_modes(spec):
        acc += np.conj(eval_lg_momentum(m, qn, qang, spec)) * eval_lg_position(m, rn, rang, spec)
    return float(abs(2.0 * math.pi * acc - np.exp(1j * (q[0] * rho[0] + q[1] * rho[1]))))


def _enclosed_power(mode: ModeIndex, c: float, spec: BasisSpec, n_nodes: int) -> float:
    if c <= 0.0:
        return 0.0
    x, w = leggauss(n_nodes)
    r = 0.5 * c * (x + 1.0)
    rad = _lg_radial(mode.l, mode.p, r, spec.w0)
    return float(2.0 * math.pi * 0.5 * c * np.sum(w * rad * rad * r))


def power_radius(mode: ModeIndex, fraction: float, spec: BasisSpec, n_nodes: int = 256) -> float:
    """Smallest radius enclosing ``fraction`` of the mode power.

    Cumulative radial quadrature plus bisection; relative tolerance 1e-8.
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction must lie in (0, 1), got {fraction}")
    # bracket: grow until past the target, measured against the numeric total
    hi = spec.w0 * (math.sqrt(2.0 * mode.p + abs(mode.l) + 1.0) + 4.0)
    total = _enclosed_power(mode, 4.0 * hi, spec, 4 * n_nodes)
    target = fraction * total
    while _enclosed_power(mode, hi, spec, n_nodes) < target:
        hi *= 2.0
    lo = 0.0
    while hi - lo > 1e-9 * hi:
        mid = 0.5 * (lo + hi)
        if _enclosed_power(mode, mid, spec, n_nodes) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def attenuation_factor(q_max: float, k0: float, dz: float) -> float:
    """Intensity fraction surviving paraxial propagation over a slab ``dz``.

    The finite transverse bandwidth attenuates amplitudes by
    ``exp(-q_max**2 * dz / (2*k0))``; the returned flux factor is its square,
    ``exp(-q_max**2 * dz / k0)``, equal to 1 at ``dz = 0``.
    """
    if q_max <= 0 or k0 <= 0 or dz < 0:
        raise ValueError("need q_max > 0, k0 > 0, dz >= 0")
    return math.exp(-q_max * q_max * dz / k0)
