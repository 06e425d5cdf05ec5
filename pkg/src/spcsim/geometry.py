"""Scatterer architectures: positions, internal gaps, couplings, persistence.

Positions are transverse ``(x, y)`` coordinates in waist units (the
interaction region is a thin slab, so the longitudinal coordinate is
suppressed).  Architectures are generated deterministically from a seed
with NumPy's PCG64 generator, or loaded from the documented JSON format.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Scatterer",
    "Architecture",
    "SchemaError",
    "gen_uniform_cylinder",
    "gen_ring",
    "save_architecture",
    "load_architecture",
]


class SchemaError(ValueError):
    """Architecture file violates the documented schema."""


@dataclass(frozen=True)
class Scatterer:
    """One scatterer: transverse position, internal spectral gaps, orbital width.

    ``gaps`` are the internal transition energies ``eps >= 0`` (each maps to
    an interaction gap ``2 * omega0 * eps``); ``orbital_width = 0`` is the
    point-particle limit.
    """

    x: float
    y: float
    gaps: tuple[float, ...] = (0.5,)
    orbital_width: float = 0.0

    def __post_init__(self):
        if any(not math.isfinite(g) or g < 0 for g in self.gaps):
            raise ValueError("spectral gaps must be finite and >= 0")
        if self.orbital_width < 0:
            raise ValueError("orbital_width must be >= 0")


@dataclass(frozen=True)
class Architecture:
    """A set of scatterers plus the carrier frequency and coupling constants."""

    scatterers: tuple[Scatterer, ...]
    omega0: float = 1.0
    g_coh: float = 1.0
    g_inc: float = 1.0
    label: str = ""

    def __post_init__(self):
        if len(self.scatterers) == 0:
            raise ValueError("architecture needs at least one scatterer")
        if self.omega0 <= 0:
            raise ValueError("carrier frequency omega0 must be positive")

    @property
    def count(self) -> int:
        return len(self.scatterers)

    def positions(self) -> np.ndarray:
        """Array of shape (count, 2) with the transverse coordinates."""
        return np.array([(s.x, s.y) for s in self.scatterers], dtype=float)

    def interaction_gaps(self) -> list[float]:
        """Sorted unique interaction gaps ``2 * omega0 * eps`` over all scatterers."""
        vals = {2.0 * self.omega0 * g for s in self.scatterers for g in s.gaps}
        return sorted(vals)


def gen_uniform_cylinder(
    a: float,
    b: float,
    count: int,
    seed: int,
    gaps: tuple[float, ...] = (0.5,),
    orbital_width: float = 0.0,
    omega0: float = 1.0,
    g_coh: float = 1.0,
    g_inc: float = 1.0,
) -> Architecture:
    """Scatterers filling the annulus ``a <= rho <= b`` with uniform area density.

    Radii are drawn as ``sqrt(a^2 + u * (b^2 - a^2))`` with ``u`` uniform on
    [0, 1), angles uniform on [0, 2 pi); bit-reproducible for a given seed.
    """
    if not 0 <= a < b:
        raise ValueError(f"need 0 <= a < b, got a={a}, b={b}")
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(np.random.PCG64(seed))
    u = rng.random(count)
    ang = rng.random(count) * 2.0 * math.pi
    rho = np.sqrt(a * a + u * (b * b - a * a))
    scatterers = tuple(
        Scatterer(float(r * math.cos(t)), float(r * math.sin(t)), gaps, orbital_width)
        for r, t in zip(rho, ang)
    )
    return Architecture(
        scatterers,
        omega0=omega0,
        g_coh=g_coh,
        g_inc=g_inc,
        label=f"uniform_cylinder(a={a}, b={b}, count={count}, seed={seed})",
    )


def gen_ring(
    radius: float,
    count: int,
    gaps: tuple[float, ...] = (0.5,),
    orbital_width: float = 0.0,
    omega0: float = 1.0,
    g_coh: float = 1.0,
    g_inc: float = 1.0,
) -> Architecture:
    """``count`` scatterers equally spaced on a circle of the given radius."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    if count < 1:
        raise ValueError("count must be >= 1")
    scatterers = tuple(
        Scatterer(
            radius * math.cos(2.0 * math.pi * j / count),
            radius * math.sin(2.0 * math.pi * j / count),
            gaps,
            orbital_width,
        )
        for j in range(count)
    )
    return Architecture(
        scatterers, omega0=omega0, g_coh=g_coh, g_inc=g_inc,
        label=f"ring(radius={radius}, count={count})",
    )


# --- persistence ------------------------------------------------------------

_TOP_KEYS = {"label", "omega0", "g_coh", "g_inc", "scatterers"}
_SCATTERER_KEYS = {"x", "y", "gaps", "orbital_width"}


def architecture_to_dict(arch: Architecture) -> dict:
    return {
        "label": arch.label,
        "omega0": arch.omega0,
        "g_coh": arch.g_coh,
        "g_inc": arch.g_inc,
        "scatterers": [
            {"x": s.x, "y": s.y, "gaps": list(s.gaps), "orbital_width": s.orbital_width}
            for s in arch.scatterers
        ],
    }


def _require_number(obj: dict, key: str, where: str) -> float:
    if key not in obj:
        raise SchemaError(f"{where}: missing required key '{key}'")
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise SchemaError(f"{where}: key '{key}' must be a number, got {type(val).__name__}")
    return float(val)


def architecture_from_dict(data: dict, where: str = "architecture") -> Architecture:
    if not isinstance(data, dict):
        raise SchemaError(f"{where}: expected a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise SchemaError(f"{where}: unknown keys {sorted(unknown)}")
    label = data.get("label", "")
    if not isinstance(label, str):
        raise SchemaError(f"{where}: 'label' must be a string")
    omega0 = _require_number(data, "omega0", where)
    g_coh = _require_number(data, "g_coh", where)
    g_inc = _require_number(data, "g_inc", where)
    raw = data.get("scatterers")
    if not isinstance(raw, list) or not raw:
        raise SchemaError(f"{where}: 'scatterers' must be a non-empty list")
    scatterers = []
    for i, entry in enumerate(raw):
        loc = f"{where}.scatterers[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(f"{loc}: expected an object")
        unknown = set(entry) - _SCATTERER_KEYS
        if unknown:
            raise SchemaError(f"{loc}: unknown keys {sorted(unknown)}")
        x = _require_number(entry, "x", loc)
        y = _require_number(entry, "y", loc)
        gaps = entry.get("gaps")
        if not isinstance(gaps, list) or not gaps:
            raise SchemaError(f"{loc}: 'gaps' must be a non-empty list of numbers")
        for j, g in enumerate(gaps):
            if isinstance(g, bool) or not isinstance(g, (int, float)):
                raise SchemaError(f"{loc}.gaps[{j}]: must be a number")
            if g < 0:
                raise SchemaError(f"{loc}.gaps[{j}]: gap must be >= 0, got {g}")
        width = _require_number(entry, "orbital_width", loc)
        if width < 0:
            raise SchemaError(f"{loc}: orbital_width must be >= 0")
        scatterers.append(Scatterer(x, y, tuple(float(g) for g in gaps), width))
    try:
        return Architecture(tuple(scatterers), omega0, g_coh, g_inc, label)
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from exc


def save_architecture(arch: Architecture, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(architecture_to_dict(arch), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_architecture(path) -> Architecture:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return architecture_from_dict(data, where=str(path))
