"""Wavefunction and electromagnetic field of the ellipsoidal photon soliton.

Fields are complex analytic signals; the physical field is the real part.
Inside the envelope the radial factor is ``alpha*r`` (V/m), outside it is
``beta/r`` (V/m); the angular factor is ``A exp(i phi) +/- B exp(-i phi)``
and everything travels as ``exp(2 pi i (z - c t) / lambda)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import InitVar, dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from . import geometry
from .constants import CODATA2018, DomainError, PhysicalConstants, SingularityError

if TYPE_CHECKING:
    from .normalization import NormalizationPair

INTERIOR = "interior"
EVANESCENT = "evanescent"


@dataclass(frozen=True)
class PhotonSpec:
    """Wavelength, quantum number and polarization coefficients of a photon.

    ``pol_a`` weights the ``exp(+i phi)`` (spin +hbar) factor and ``pol_b`` the
    ``exp(-i phi)`` (spin -hbar) factor. Unless ``normalize=False`` the pair is
    rescaled so that ``|A|^2 + |B|^2 = 1``; with ``normalize=False`` an
    unnormalized pair is rejected.
    """

    wavelength: float
    n: int = 1
    pol_a: complex = 1.0
    pol_b: complex = 0.0
    normalize: InitVar[bool] = True

    def __post_init__(self, normalize):
        if not (math.isfinite(self.wavelength) and self.wavelength > 0):
            raise DomainError(f"wavelength must be positive, got {self.wavelength!r}")
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"quantum number n must be an integer >= 1, got {self.n!r}")
        a, b = complex(self.pol_a), complex(self.pol_b)
        norm2 = abs(a) ** 2 + abs(b) ** 2
        if norm2 == 0:
            raise DomainError("polarization coefficients A and B are both zero")
        if normalize:
            s = math.sqrt(norm2)
            a, b = a / s, b / s
        elif abs(norm2 - 1.0) > 1e-12:
            raise DomainError(f"|A|^2 + |B|^2 = {norm2!r}, expected 1")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "pol_a", a)
        object.__setattr__(self, "pol_b", b)

    @classmethod
    def circular(cls, wavelength: float, handedness: int = +1, n: int = 1) -> "PhotonSpec":
        if handedness not in (+1, -1):
            raise DomainError("handedness must be +1 or -1")
        return cls(wavelength, n, 1.0, 0.0) if handedness > 0 else cls(wavelength, n, 0.0, 1.0)

    @classmethod
    def linear(cls, wavelength: float, n: int = 1) -> "PhotonSpec":
        return cls(wavelength, n, 1.0, 1.0)

    @property
    def is_pure_spin(self) -> bool:
        return self.pol_a == 0 or self.pol_b == 0


@dataclass(frozen=True)
class SpacetimePoint:
    x: float
    y: float
    z: float
    t: float = 0.0

    @classmethod
    def from_polar(cls, r: float, phi: float, z: float, t: float = 0.0) -> "SpacetimePoint":
        if r < 0:
            raise DomainError(f"radius must be non-negative, got {r!r}")
        return cls(r * math.cos(phi), r * math.sin(phi), z, t)

    @property
    def r(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def phi(self) -> float:
        p = math.atan2(self.y, self.x)
        return math.pi if p == -math.pi else p

    def shifted(self, dx=0.0, dy=0.0, dz=0.0, dt=0.0) -> "SpacetimePoint":
        return SpacetimePoint(self.x + dx, self.y + dy, self.z + dz, self.t + dt)


@dataclass(frozen=True)
class FieldSample:
    """Complex E (V/m) and H (A/m) 3-vectors at one spacetime point."""

    E: np.ndarray
    H: np.ndarray
    branch: str = INTERIOR
    point: SpacetimePoint | None = field(default=None, compare=False)

    @property
    def E_mag(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.E) ** 2)))

    @property
    def H_mag(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.H) ** 2)))

    def as_dict(self) -> dict:
        out = {"branch": self.branch}
        for name, vec in (("E", self.E), ("H", self.H)):
            for axis, value in zip("xyz", vec):
                out[f"{name}_{axis}"] = complex(value)
        out["E_mag"] = self.E_mag
        out["H_mag"] = self.H_mag
        return out


def travel_phase(z, t, wavelength: float, constants: PhysicalConstants = CODATA2018):
    """Monochromatic traveling factor ``exp(2 pi i (z - c t) / lambda)``.

    Accepts scalars or numpy arrays for ``z`` and ``t``.
    """
    if not wavelength > 0:
        raise DomainError(f"wavelength must be positive, got {wavelength!r}")
    arg = 2 * np.pi * (np.asarray(z, dtype=float) - constants.c * np.asarray(t, dtype=float)) / wavelength
    out = np.exp(1j * arg)
    return complex(out) if out.ndim == 0 else out


def _angular(phi, spec: PhotonSpec):
    ep = np.exp(1j * phi)
    em = np.exp(-1j * phi)
    return spec.pol_a * ep + spec.pol_b * em, spec.pol_a * ep - spec.pol_b * em


def field_components(x, y, z, t, alpha, beta, spec: PhotonSpec,
                     constants: PhysicalConstants = CODATA2018):
    """Vectorized transverse components ``(Ex, Ey, Hx, Hy)``.

    ``alpha`` and ``beta`` may be scalars or arrays broadcastable against the
    coordinates (the latter is how a z-dependent ``beta`` is injected).
    Points with r = 0 and nonzero ``beta`` produce inf/nan; callers that need
    an error use the scalar API.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = np.hypot(x, y)
    phi = np.arctan2(y, x)
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = np.where(beta != 0, beta / r, 0.0)
    plus, minus = _angular(phi, spec)
    s = travel_phase(z, t, spec.wavelength, constants)
    ex = (alpha * r + inv) * plus * s
    ey = 1j * (alpha * r - inv) * minus * s
    z0c = constants.impedance
    return ex, ey, -ey / z0c, ex / z0c


def psi(point: SpacetimePoint, alpha: float, beta: float, spec: PhotonSpec,
        constants: PhysicalConstants = CODATA2018) -> complex:
    """Scalar wavefunction ``(alpha r + beta/r)(A e^{i phi} + B e^{-i phi}) S``."""
    r = point.r
    if beta != 0 and r == 0:
        raise SingularityError("psi with beta != 0 is singular on the axis r = 0")
    radial = alpha * r + (beta / r if beta != 0 else 0.0)
    phi = point.phi
    ang = spec.pol_a * cmath.exp(1j * phi) + spec.pol_b * cmath.exp(-1j * phi)
    return radial * ang * travel_phase(point.z, point.t, spec.wavelength, constants)


def _sample(point, alpha, beta, spec, constants, branch) -> FieldSample:
    ex, ey, hx, hy = field_components(point.x, point.y, point.z, point.t, alpha, beta, spec, constants)
    E = np.array([complex(ex), complex(ey), 0j])
    H = np.array([complex(hx), complex(hy), 0j])
    return FieldSample(E, H, branch, point)


def field_interior(point: SpacetimePoint, alpha: float, spec: PhotonSpec,
                   constants: PhysicalConstants = CODATA2018) -> FieldSample:
    """Interior (``alpha r``) field; valid everywhere, zero on the axis."""
    return _sample(point, alpha, 0.0, spec, constants, INTERIOR)


def field_evanescent(point: SpacetimePoint, beta: float, spec: PhotonSpec,
                     constants: PhysicalConstants = CODATA2018) -> FieldSample:
    """Exterior (``beta / r``) field. Raises `SingularityError` on the axis."""
    if point.r == 0:
        raise SingularityError(
            f"evanescent field is singular on the axis (z={point.z!r}, t={point.t!r})")
    return _sample(point, 0.0, beta, spec, constants, EVANESCENT)


def branch_at(point: SpacetimePoint, wavelength: float, z0: float = 0.0,
              constants: PhysicalConstants = CODATA2018) -> str:
    """Which branch applies at ``point`` for an envelope centred at ``c t + z0``."""
    env = geometry.envelope(wavelength)
    center = constants.c * point.t + z0
    return INTERIOR if geometry.contains(point, env, center) else EVANESCENT


def field_total(point: SpacetimePoint, spec: PhotonSpec, norm: "NormalizationPair",
                z0: float = 0.0, constants: PhysicalConstants = CODATA2018) -> FieldSample:
    """Piecewise soliton field: interior inside the envelope, evanescent outside.

    The envelope co-moves with the phase, centred at ``z = c t + z0``. Only
    the z = 0 ring is amplitude-matched; elsewhere on the surface the two
    branches disagree.
    """
    if branch_at(point, spec.wavelength, z0, constants) == INTERIOR:
        return field_interior(point, norm.alpha, spec, constants)
    return field_evanescent(point, norm.beta, spec, constants)


def polar_components(sample: FieldSample, point: SpacetimePoint):
    """Project a sample onto the (r, phi) basis: ``(E_r, E_phi, H_r, H_phi)``."""
    if point.r == 0:
        raise DomainError("polar basis is undefined on the axis r = 0")
    c, s = point.x / point.r, point.y / point.r
    ex, ey = sample.E[0], sample.E[1]
    hx, hy = sample.H[0], sample.H[1]
    return (complex(ex * c + ey * s), complex(-ex * s + ey * c),
            complex(hx * c + hy * s), complex(-hx * s + hy * c))
