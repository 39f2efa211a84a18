"""Causality envelope of the soliton and spacetime-interval bookkeeping."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .constants import CODATA2018, DomainError, PhysicalConstants

if TYPE_CHECKING:
    from .field import SpacetimePoint

TIMELIKE = "timelike"
NULL = "null"
SPACELIKE = "spacelike"


@dataclass(frozen=True)
class EnvelopeGeometry:
    """Circular ellipsoid of length lambda and maximum diameter lambda/pi."""

    wavelength: float

    @property
    def radial_semi_axis(self) -> float:
        return self.wavelength / (2 * math.pi)

    @property
    def half_length(self) -> float:
        return self.wavelength / 2

    @property
    def diameter(self) -> float:
        return self.wavelength / math.pi

    @property
    def length(self) -> float:
        return self.wavelength

    @property
    def aspect_ratio(self) -> float:
        return self.half_length / self.radial_semi_axis

    @property
    def volume(self) -> float:
        """Analytic volume ``lambda^3 / (6 pi)``."""
        a = self.radial_semi_axis
        return 4.0 / 3.0 * math.pi * a * a * self.half_length


@dataclass(frozen=True)
class IntervalClass:
    s_squared: float
    kind: str


def envelope(wavelength: float) -> EnvelopeGeometry:
    if not wavelength > 0:
        raise DomainError(f"wavelength must be positive, got {wavelength!r}")
    return EnvelopeGeometry(float(wavelength))


def inside(r, z, wavelength: float, center_z=0.0):
    """Vectorized containment ``(2 pi r)^2 + (2 (z - center_z))^2 <= lambda^2``."""
    r = np.asarray(r, dtype=float)
    dz = np.asarray(z, dtype=float) - center_z
    return (2 * np.pi * r) ** 2 + (2 * dz) ** 2 <= wavelength**2


def contains(point: "SpacetimePoint", env: EnvelopeGeometry, center_z: float = 0.0) -> bool:
    """Closed-ellipsoid test; surface points count as inside."""
    return bool(inside(point.r, point.z, env.wavelength, center_z))


def surface_radius(z: float, wavelength: float) -> float:
    """Envelope radius at axial offset ``z`` from the centre."""
    if abs(z) > wavelength / 2:
        raise DomainError(f"|z| = {abs(z)!r} exceeds half-length {wavelength / 2!r}")
    return math.sqrt(max(wavelength**2 - (2 * z) ** 2, 0.0)) / (2 * math.pi)


def default_null_tolerance(dt: float, constants: PhysicalConstants = CODATA2018) -> float:
    return 1e-9 * (constants.c * abs(dt)) ** 2


def interval_classify(a: "SpacetimePoint", b: "SpacetimePoint", tol: float | None = None,
                      constants: PhysicalConstants = CODATA2018) -> IntervalClass:
    """Classify the separation of two events by the sign of
    ``s^2 = c^2 dt^2 - |dx|^2``; ``|s^2| <= tol`` counts as null."""
    dt = b.t - a.t
    d2 = (b.x - a.x) ** 2 + (b.y - a.y) ** 2 + (b.z - a.z) ** 2
    s2 = (constants.c * dt) ** 2 - d2
    if tol is None:
        tol = default_null_tolerance(dt, constants)
    if abs(s2) <= tol:
        kind = NULL
    elif s2 > 0:
        kind = TIMELIKE
    else:
        kind = SPACELIKE
    return IntervalClass(s2, kind)


def causal_length_check(wavelength: float, constants: PhysicalConstants = CODATA2018) -> dict:
    """Same-phase events one period apart on the axis, and half a period apart.

    Both separations are expected to be null; only the full-period case is the
    model's claim, the half-period one is a self-consistency extra.
    """
    from .field import SpacetimePoint

    if not wavelength > 0:
        raise DomainError(f"wavelength must be positive, got {wavelength!r}")
    origin = SpacetimePoint(0.0, 0.0, 0.0, 0.0)
    period = wavelength / constants.c
    full = interval_classify(origin, SpacetimePoint(0.0, 0.0, wavelength, period), constants=constants)
    half = interval_classify(origin, SpacetimePoint(0.0, 0.0, wavelength / 2, period / 2),
                             constants=constants)
    return {
        "wavelength": wavelength,
        "s_squared": full.s_squared,
        "class": full.kind,
        "half_period_s_squared": half.s_squared,
        "half_period_class": half.kind,
        "pass": full.kind == NULL,
    }


def monte_carlo_volume(wavelength: float, samples: int = 1_000_000, seed: int = 0) -> tuple[float, float]:
    """Envelope volume by uniform sampling of the bounding box.

    Returns ``(estimate, standard_error)``.
    """
    env = envelope(wavelength)
    rng = np.random.default_rng(seed)
    a, hz = env.radial_semi_axis, env.half_length
    pts = rng.uniform(-1.0, 1.0, size=(samples, 3)) * np.array([a, a, hz])
    hit = inside(np.hypot(pts[:, 0], pts[:, 1]), pts[:, 2], wavelength)
    box = 8 * a * a * hz
    frac = hit.mean()
    return box * frac, box * math.sqrt(frac * (1 - frac) / samples)
