"""Amplitude normalization: closed forms and energy quadrature.

The closed forms fix ``alpha`` (interior slope, V/m^2) from the quantized
energy ``n h c / lambda`` and derive the exterior amplitude ``beta`` (V) by
matching ``alpha r = beta / r`` on the ring ``r = lambda / 2 pi``.

Two energy-density conventions are available for the quadrature route:

``standard_si``
    period average of ``(eps0 |E_re|^2 + mu0 |H_re|^2) / 2``.
``paper_literal``
    ``standard_si`` times ``1 / (2 pi)``, the single factor that makes the
    ellipsoid normalization reproduce the ``120 pi^4`` constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import CODATA2018, DomainError, PhysicalConstants
from .field import PhotonSpec, field_components
from .geometry import envelope

PAPER_CLOSED_FORM = "paper_closed_form"
QUADRATURE_DERIVED = "quadrature_derived"

ELLIPSOID = "ellipsoid"
CYLINDER = "cylinder"
REGIONS = (ELLIPSOID, CYLINDER)

STANDARD_SI = "standard_si"
PAPER_LITERAL = "paper_literal"
CONVENTIONS = {STANDARD_SI: 1.0, PAPER_LITERAL: 1.0 / (2 * math.pi)}

MIN_BUDGET = 10_000
TIME_SAMPLES = 6


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    samples_used: int
    region: str
    method: str = "gauss"
    converged: bool = True
    units: str = "J"

    def as_dict(self) -> dict:
        return {
            "kind": "quadrature",
            "value": self.value,
            "abs_error_estimate": self.abs_error_estimate,
            "samples_used": self.samples_used,
            "region": self.region,
            "method": self.method,
            "converged": self.converged,
            "units": self.units,
        }


@dataclass(frozen=True)
class NormalizationPair:
    alpha: float
    beta: float
    source: str = PAPER_CLOSED_FORM
    quadrature: QuadratureResult | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise DomainError("alpha and beta must be non-negative (phase lives in A, B)")

    @classmethod
    def paper(cls, wavelength: float, n: int = 1,
              constants: PhysicalConstants = CODATA2018) -> "NormalizationPair":
        return cls(alpha_paper(wavelength, n, constants), beta_paper(wavelength, n, constants))


def _check(wavelength, n):
    if not wavelength > 0:
        raise DomainError(f"wavelength must be positive, got {wavelength!r}")
    if int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")


def alpha_paper(wavelength: float, n: int = 1, constants: PhysicalConstants = CODATA2018) -> float:
    """``sqrt(120 n h c pi^4 / (eps0 lambda^6))`` in V/m^2."""
    _check(wavelength, n)
    k = constants
    return math.sqrt(120 * n * k.h * k.c * math.pi**4 / (k.eps0 * wavelength**6))


def beta_paper(wavelength: float, n: int = 1, constants: PhysicalConstants = CODATA2018) -> float:
    """``sqrt(7.5 n h c / (eps0 lambda^2))`` in V."""
    _check(wavelength, n)
    k = constants
    return math.sqrt(7.5 * n * k.h * k.c / (k.eps0 * wavelength**2))


def match_beta(alpha: float, wavelength: float) -> float:
    """Exterior amplitude continuous with ``alpha r`` at ``r = lambda / 2 pi``."""
    if alpha < 0:
        raise DomainError(f"alpha must be non-negative, got {alpha!r}")
    a = wavelength / (2 * math.pi)
    return alpha * a * a


def gradient_ratio(alpha: float, beta: float, r: float) -> float:
    """Ratio of exterior to interior radial gradients, ``-beta / (alpha r^2)``."""
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    if not r > 0:
        raise DomainError(f"r must be positive, got {r!r}")
    return -beta / (alpha * r * r)


def beta_z_conjecture(z: float, wavelength: float, n: int = 1,
                      constants: PhysicalConstants = CODATA2018) -> float:
    """z-dependent exterior amplitude from matching on the whole envelope surface.

    Equal to `beta_paper` at z = 0 and zero at the ends. Not a Maxwell
    solution when substituted into the field; never used by `field_total`.
    """
    if abs(z) > wavelength / 2:
        raise DomainError(f"|z| = {abs(z)!r} exceeds half-length {wavelength / 2!r}")
    return (1.0 - (2.0 * z / wavelength) ** 2) * beta_paper(wavelength, n, constants)


def _region_radius(region, wavelength):
    if region == ELLIPSOID:
        return lambda z: np.sqrt(np.maximum(wavelength**2 - (2 * z) ** 2, 0.0)) / (2 * np.pi)
    if region == CYLINDER:
        a = envelope(wavelength).radial_semi_axis
        return lambda z: np.full_like(z, a)
    raise DomainError(f"unknown region {region!r}; expected one of {REGIONS}")


def _product_nodes(region, wavelength, n):
    """Cylindrical product rule: Gauss-Legendre in z and r, trapezoid in phi.

    Returns flattened ``(r, phi, z, weight)`` with the ``r`` Jacobian folded
    into the weights.
    """
    hz = wavelength / 2
    radius = _region_radius(region, wavelength)
    xg, wg = np.polynomial.legendre.leggauss(n)
    z = hz * xg
    wz = hz * wg
    rmax = radius(z)
    r = 0.5 * rmax[:, None] * (xg[None, :] + 1.0)
    wr = 0.5 * rmax[:, None] * wg[None, :] * r
    phi = 2 * np.pi * np.arange(n) / n
    wphi = 2 * np.pi / n
    R = np.broadcast_to(r[:, :, None], (n, n, n))
    P = np.broadcast_to(phi[None, None, :], (n, n, n))
    Z = np.broadcast_to(z[:, None, None], (n, n, n))
    W = wz[:, None, None] * wr[:, :, None] * wphi
    W = np.broadcast_to(W, (n, n, n))
    return R.ravel(), P.ravel(), Z.ravel(), W.ravel()


def _energy_density(x, y, z, spec, alpha, constants, scale):
    """Period-averaged energy density of the real interior field (J/m^3)."""
    period = spec.wavelength / constants.c
    acc = np.zeros(np.shape(x))
    for j in range(TIME_SAMPLES):
        ex, ey, hx, hy = field_components(x, y, z, j * period / TIME_SAMPLES, alpha, 0.0, spec, constants)
        e2 = ex.real**2 + ey.real**2
        h2 = hx.real**2 + hy.real**2
        acc += 0.5 * (constants.eps0 * e2 + constants.mu0 * h2)
    return scale * acc / TIME_SAMPLES


def _convention_scale(convention):
    try:
        return CONVENTIONS[convention]
    except KeyError:
        raise DomainError(f"unknown convention {convention!r}; expected one of {tuple(CONVENTIONS)}") from None


def _gauss_energy(spec, alpha, region, scale, n, constants):
    r, phi, z, w = _product_nodes(region, spec.wavelength, n)
    dens = _energy_density(r * np.cos(phi), r * np.sin(phi), z, spec, alpha, constants, scale)
    return float(np.sum(w * dens)), r.size


def energy_quadrature(spec: PhotonSpec, norm: NormalizationPair, region: str = ELLIPSOID,
                      convention: str = STANDARD_SI, budget: int = MIN_BUDGET,
                      method: str = "gauss", rtol: float = 1e-6, seed: int = 0,
                      constants: PhysicalConstants = CODATA2018) -> QuadratureResult:
    """Integrate the interior field's energy density over ``region``.

    ``method="gauss"`` uses the cylindrical product rule with about
    ``budget`` nodes and estimates the error from a rule of half the order.
    ``method="monte_carlo"`` samples the bounding box uniformly and reports
    the standard error. Non-convergence sets ``converged=False``; it does not
    raise.
    """
    if budget < MIN_BUDGET:
        raise DomainError(f"budget must be >= {MIN_BUDGET}, got {budget}")
    scale = _convention_scale(convention)
    lam = spec.wavelength
    _region_radius(region, lam)

    if method == "gauss":
        n = max(4, int(round(budget ** (1 / 3))))
        fine, used_fine = _gauss_energy(spec, norm.alpha, region, scale, n, constants)
        coarse, used_coarse = _gauss_energy(spec, norm.alpha, region, scale, n // 2, constants)
        value, err, used = fine, abs(fine - coarse), used_fine + used_coarse
    elif method == "monte_carlo":
        env = envelope(lam)
        a, hz = env.radial_semi_axis, env.half_length
        rng = np.random.default_rng(seed)
        pts = rng.uniform(-1.0, 1.0, size=(budget, 3)) * np.array([a, a, hz])
        x, y, z = pts.T
        rmax = _region_radius(region, lam)(z)
        mask = np.hypot(x, y) <= rmax
        dens = np.where(mask, _energy_density(x, y, z, spec, norm.alpha, constants, scale), 0.0)
        box = 8 * a * a * hz
        value = float(box * dens.mean())
        err = float(box * dens.std(ddof=1) / math.sqrt(budget))
        used = budget
    else:
        raise DomainError(f"unknown quadrature method {method!r}")

    converged = err <= rtol * abs(value) if value != 0 else err == 0
    return QuadratureResult(value, err, used, region, method, bool(converged))


def solve_alpha_from_energy(wavelength: float, n: int = 1, region: str = ELLIPSOID,
                            convention: str = STANDARD_SI, budget: int = MIN_BUDGET,
                            method: str = "gauss", seed: int = 0,
                            constants: PhysicalConstants = CODATA2018) -> NormalizationPair:
    """Amplitude for which the region's field energy equals ``n h c / lambda``.

    The energy is quadratic in ``alpha``, so one quadrature at unit amplitude
    suffices. Circular polarization is used; the density does not depend on
    the (normalized) polarization anyway.
    """
    _check(wavelength, n)
    spec = PhotonSpec.circular(wavelength, +1, n)
    unit = energy_quadrature(spec, NormalizationPair(1.0, 0.0, QUADRATURE_DERIVED), region,
                             convention, budget, method, seed=seed, constants=constants)
    target = n * constants.h * constants.c / wavelength
    alpha = math.sqrt(target / unit.value)
    return NormalizationPair(alpha, match_beta(alpha, wavelength), QUADRATURE_DERIVED, unit)


def energy_constant(pair: NormalizationPair, wavelength: float, n: int = 1,
                    constants: PhysicalConstants = CODATA2018) -> float:
    """Dimensionless ``K`` in ``alpha^2 = K n h c / (eps0 lambda^6)``."""
    k = constants
    return pair.alpha**2 * k.eps0 * wavelength**6 / (n * k.h * k.c)


def momentum_angular_quadrature(spec: PhotonSpec, norm: NormalizationPair,
                                budget: int = MIN_BUDGET,
                                constants: PhysicalConstants = CODATA2018) -> QuadratureResult:
    """z angular momentum of the interior field over the ellipsoid.

    Integrates ``(r x (E_re x H_re))_z / c^2`` averaged over one period. No
    value is asserted: the model's fields are purely transverse, so the
    Poynting vector is axial and this moment vanishes pointwise.
    """
    if not spec.is_pure_spin:
        raise DomainError("angular momentum diagnostic needs a circular state (A*B == 0)")
    if budget < MIN_BUDGET:
        raise DomainError(f"budget must be >= {MIN_BUDGET}, got {budget}")
    n = max(4, int(round(budget ** (1 / 3))))

    def integrate(order):
        r, phi, z, w = _product_nodes(ELLIPSOID, spec.wavelength, order)
        x, y = r * np.cos(phi), r * np.sin(phi)
        period = spec.wavelength / constants.c
        acc = np.zeros_like(x)
        for j in range(TIME_SAMPLES):
            ex, ey, hx, hy = field_components(x, y, z, j * period / TIME_SAMPLES, norm.alpha, 0.0,
                                              spec, constants)
            E = np.stack([ex.real, ey.real, np.zeros_like(x)], axis=-1)
            H = np.stack([hx.real, hy.real, np.zeros_like(x)], axis=-1)
            g = np.cross(E, H) / constants.c**2
            acc += x * g[:, 1] - y * g[:, 0]
        return float(np.sum(w * acc / TIME_SAMPLES)), r.size

    fine, used_f = integrate(n)
    coarse, used_c = integrate(n // 2)
    err = abs(fine - coarse)
    return QuadratureResult(fine, err, used_f + used_c, ELLIPSOID, "gauss",
                            err <= 1e-6 * abs(fine) if fine else err == 0, units="kg m^2/s")
