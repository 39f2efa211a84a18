"""Finite-difference checks of the model's mathematical claims.

Field functions passed in here map a `SpacetimePoint` to a `FieldSample`
(or, for scalar checks, to a complex number). Residuals are reported
dimensionless: the raw finite-difference residual divided by ``k`` (or
``k^2`` for the wave operator) times the largest field magnitude seen in
the stencil, with ``k = 2 pi / lambda``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import CODATA2018, DomainError, PhysicalConstants
from .field import (
    EVANESCENT,
    FieldSample,
    PhotonSpec,
    SpacetimePoint,
    field_components,
    field_evanescent,
    field_interior,
    psi,
)
from .geometry import inside
from .normalization import beta_paper, beta_z_conjecture

FieldFn = Callable[[SpacetimePoint], FieldSample]
ScalarFn = Callable[[SpacetimePoint], complex]

ODE_ERRATUM = (
    "Radial equation implemented as R'' + R'/r - m^2 R / r^2 = 0. As printed, the "
    "separated equation omits the 1/r^2 factor on the separation constant and its "
    "sign makes exp(+/- i phi) correspond to m^2 = -1; the standard form is the one "
    "whose m = 1 solutions are r and 1/r."
)


class PreconditionError(DomainError):
    """A stencil would straddle the envelope surface or reach the axis."""


class NotEigenstateError(DomainError):
    pass


@dataclass(frozen=True)
class ResidualReport:
    div_E: float
    div_H: float
    faraday: float
    ampere: float
    step: float
    point: SpacetimePoint
    branch: str = ""

    @property
    def max_residual(self) -> float:
        return max(self.div_E, self.div_H, self.faraday, self.ampere)

    def as_dict(self) -> dict:
        p = self.point
        return {
            "kind": "maxwell_residual",
            "branch": self.branch,
            "x": p.x, "y": p.y, "z": p.z, "t": p.t,
            "step": self.step,
            "div_E": self.div_E,
            "div_H": self.div_H,
            "faraday": self.faraday,
            "ampere": self.ampere,
        }


@dataclass(frozen=True)
class EigenReport:
    operator: str
    estimate: complex
    expected: float
    units: str

    @property
    def rel_error(self) -> float:
        return abs(self.estimate - self.expected) / abs(self.expected)

    def as_dict(self) -> dict:
        return {
            "kind": "eigen",
            "operator": self.operator,
            "estimate_re": self.estimate.real,
            "estimate_im": self.estimate.imag,
            "expected": self.expected,
            "units": self.units,
            "rel_error": self.rel_error,
        }


def default_steps(wavelength: float, constants: PhysicalConstants = CODATA2018) -> tuple[float, float]:
    """Spatial and temporal steps, lambda/1e4 and (lambda/c)/1e4."""
    return wavelength / 1e4, wavelength / constants.c / 1e4


def _stencil(point, h, dt):
    out = {}
    for axis, (dx, dy, dz, dtt) in {
        "x": (h, 0, 0, 0), "y": (0, h, 0, 0), "z": (0, 0, h, 0), "t": (0, 0, 0, dt),
    }.items():
        out[axis] = (point.shifted(-dx, -dy, -dz, -dtt), point.shifted(dx, dy, dz, dtt))
    return out


def _check_stencil(samples, point, h):
    if point.r < 2 * h:
        raise PreconditionError(
            f"point r={point.r!r} within 2 steps of the propagation axis (step {h!r})")
    branches = {s.branch for s in samples}
    if len(branches) > 1:
        raise PreconditionError("stencil straddles the envelope surface (branch changes)")


def maxwell_residual(field_fn: FieldFn, point: SpacetimePoint, step: float | None = None,
                     time_step: float | None = None, wavelength: float | None = None,
                     constants: PhysicalConstants = CODATA2018) -> ResidualReport:
    """Second-order central-difference residuals of the four vacuum equations.

    ``wavelength`` sets the normalizing wavenumber; it defaults to
    ``1e4 * step``. With neither given it must be recoverable from the default
    step convention, so at least one of ``step``/``wavelength`` is required.
    """
    if wavelength is None and step is None:
        raise DomainError("maxwell_residual needs step or wavelength")
    if wavelength is None:
        wavelength = step * 1e4
    h0, dt0 = default_steps(wavelength, constants)
    h = step if step is not None else h0
    dt = time_step if time_step is not None else h / constants.c
    k = 2 * math.pi / wavelength

    centre = field_fn(point)
    st = _stencil(point, h, dt)
    samples = {axis: (field_fn(m), field_fn(p)) for axis, (m, p) in st.items()}
    _check_stencil([centre] + [s for pair in samples.values() for s in pair], point, h)

    def d(axis, vec, i):
        m, p = samples[axis]
        hh = dt if axis == "t" else h
        return (getattr(p, vec)[i] - getattr(m, vec)[i]) / (2 * hh)

    E = lambda ax, i: d(ax, "E", i)
    H = lambda ax, i: d(ax, "H", i)
    div_e = E("x", 0) + E("y", 1) + E("z", 2)
    div_h = H("x", 0) + H("y", 1) + H("z", 2)
    curl_e = np.array([E("y", 2) - E("z", 1), E("z", 0) - E("x", 2), E("x", 1) - E("y", 0)])
    curl_h = np.array([H("y", 2) - H("z", 1), H("z", 0) - H("x", 2), H("x", 1) - H("y", 0)])
    dh_dt = np.array([H("t", i) for i in range(3)])
    de_dt = np.array([E("t", i) for i in range(3)])
    faraday = curl_e + constants.mu0 * dh_dt
    ampere = curl_h - constants.eps0 * de_dt

    all_samples = [centre] + [s for pair in samples.values() for s in pair]
    e_scale = max(max(np.max(np.abs(s.E)), constants.impedance * np.max(np.abs(s.H)))
                  for s in all_samples)
    h_scale = e_scale / constants.impedance

    def norm(value, scale):
        return float(np.max(np.abs(value)) / (k * scale)) if scale > 0 else 0.0

    return ResidualReport(norm(div_e, e_scale), norm(div_h, h_scale), norm(faraday, e_scale),
                          norm(ampere, h_scale), h, point, centre.branch)


def dalembert_residual(scalar_fn: ScalarFn, point: SpacetimePoint, wavelength: float,
                       steps: tuple[float, float] | None = None, min_r: bool = True,
                       constants: PhysicalConstants = CODATA2018) -> float:
    """Normalized wave-operator residual ``|lap f - f_tt / c^2| / (k^2 max|f|)``."""
    h, dt = steps if steps is not None else default_steps(wavelength, constants)
    if min_r and point.r < 2 * h:
        raise PreconditionError(f"point r={point.r!r} within 2 steps of the propagation axis")
    k = 2 * math.pi / wavelength
    f0 = scalar_fn(point)
    vals = [abs(f0)]
    total = 0j
    for (dx, dy, dz, dtt), denom in (
        ((h, 0, 0, 0), h * h), ((0, h, 0, 0), h * h), ((0, 0, h, 0), h * h),
        ((0, 0, 0, dt), -(constants.c * dt) ** 2),
    ):
        fp = scalar_fn(point.shifted(dx, dy, dz, dtt))
        fm = scalar_fn(point.shifted(-dx, -dy, -dz, -dtt))
        vals += [abs(fp), abs(fm)]
        total += (fp - 2 * f0 + fm) / denom
    scale = max(vals)
    return float(abs(total) / (k * k * scale)) if scale > 0 else 0.0


def _d4(f, x0, h):
    """Fourth-order central first derivative."""
    return (-f(x0 + 2 * h) + 8 * f(x0 + h) - 8 * f(x0 - h) + f(x0 - 2 * h)) / (12 * h)


def lz_eigencheck(psi_fn: ScalarFn, point: SpacetimePoint, spec: PhotonSpec | None = None,
                  dphi: float = 1e-3) -> EigenReport:
    """``(-i d psi / d phi) / psi`` in units of hbar, expected +1 (A) or -1 (B)."""
    if spec is not None and not spec.is_pure_spin:
        raise NotEigenstateError("mixed polarization (A and B both nonzero) is not an Lz eigenstate")
    r = point.r
    if r == 0:
        raise DomainError("Lz check needs r > 0")
    phi0 = point.phi

    def at(phi):
        return psi_fn(SpacetimePoint.from_polar(r, phi, point.z, point.t))

    val = at(phi0)
    if val == 0:
        raise DomainError("psi vanishes at the evaluation point")
    est = -1j * _d4(at, phi0, dphi) / val
    if spec is not None:
        expected = 1.0 if spec.pol_b == 0 else -1.0
    else:
        expected = 1.0 if est.real >= 0 else -1.0
        if abs(est - expected) > 1e-6:
            raise NotEigenstateError(f"d/dphi ratio {est!r} is not +/-1; not an Lz eigenstate")
    return EigenReport("Lz", complex(est), expected, "hbar")


def energy_momentum_eigencheck(psi_fn: ScalarFn, point: SpacetimePoint, wavelength: float,
                               steps: tuple[float, float] | None = None,
                               constants: PhysicalConstants = CODATA2018) -> tuple[EigenReport, EigenReport]:
    """Momentum ``(hbar/i) psi_z / psi`` and energy ``-(hbar/i) psi_t / psi``."""
    h, dt = steps if steps is not None else default_steps(wavelength, constants)
    val = psi_fn(point)
    if val == 0:
        raise DomainError("psi vanishes at the evaluation point; ratio undefined")
    hbar = constants.hbar
    dz = _d4(lambda z: psi_fn(SpacetimePoint(point.x, point.y, z, point.t)), point.z, h)
    dtt = _d4(lambda t: psi_fn(SpacetimePoint(point.x, point.y, point.z, t)), point.t, dt)
    p = hbar / 1j * dz / val
    e = -hbar / 1j * dtt / val
    return (EigenReport("momentum_z", complex(p), constants.h / wavelength, "kg m/s"),
            EigenReport("energy", complex(e), constants.h * constants.c / wavelength, "J"))


def separation_ode_residual(radial_form: str, m: int, r_samples) -> np.ndarray:
    """Exact residual of ``R'' + R'/r - m^2 R / r^2`` for ``R = r`` or ``R = 1/r``."""
    r = np.asarray(r_samples, dtype=float)
    if np.any(r <= 0):
        raise DomainError("radial samples must be positive")
    # derivatives written via R/r so the m = 1 terms cancel exactly in floating point
    if radial_form == "r":
        R = r
        q = R / r
        dR, d2R = q, np.zeros_like(r)
    elif radial_form in ("1/r", "inv"):
        R = 1 / r
        q = R / r
        dR, d2R = -q, 2 * q / r
    else:
        raise DomainError(f"radial form must be 'r' or '1/r', got {radial_form!r}")
    return d2R + (dR - m * m * q) / r


def _pointwise_field(spec, alpha, beta_fn, branch, constants):
    def fn(p: SpacetimePoint) -> FieldSample:
        beta = beta_fn(p.z) if beta_fn is not None else 0.0
        ex, ey, hx, hy = field_components(p.x, p.y, p.z, p.t, alpha, beta, spec, constants)
        return FieldSample(np.array([complex(ex), complex(ey), 0j]),
                           np.array([complex(hx), complex(hy), 0j]), branch, p)
    return fn


def betaz_field(spec: PhotonSpec, constants: PhysicalConstants = CODATA2018) -> FieldFn:
    """Evanescent field with the z-dependent conjectured amplitude substituted."""
    return _pointwise_field(
        spec, 0.0, lambda z: beta_z_conjecture(z, spec.wavelength, spec.n, constants), EVANESCENT, constants)


def constant_beta_field(spec: PhotonSpec, beta: float,
                        constants: PhysicalConstants = CODATA2018) -> FieldFn:
    return lambda p: field_evanescent(p, beta, spec, constants)


def interior_field(spec: PhotonSpec, alpha: float,
                   constants: PhysicalConstants = CODATA2018) -> FieldFn:
    return lambda p: field_interior(p, alpha, spec, constants)


# -- seeded sample grids -----------------------------------------------------

def interior_points(wavelength: float, count: int, rng: np.random.Generator, step: float,
                    margin: float = 4.0) -> list[SpacetimePoint]:
    """Uniform points inside the envelope, at least ``margin`` steps from the
    axis and from the surface (measured radially)."""
    a, hz = wavelength / (2 * math.pi), wavelength / 2
    pts = []
    while len(pts) < count:
        x, y = rng.uniform(-a, a, 2)
        z = rng.uniform(-hz, hz)
        r = math.hypot(x, y)
        if r < margin * step:
            continue
        if not inside(r + margin * step, abs(z) + margin * step, wavelength):
            continue
        pts.append(SpacetimePoint(float(x), float(y), float(z), 0.0))
    return pts


def evanescent_points(wavelength: float, count: int, rng: np.random.Generator, step: float,
                      r_max_factor: float = 2.0 * math.pi * 2.0, margin: float = 4.0,
                      z_range: float | None = None) -> list[SpacetimePoint]:
    """Points with ``r`` in (lambda/2pi + margin*step, r_max_factor*lambda/2pi)."""
    a = wavelength / (2 * math.pi)
    zr = wavelength if z_range is None else z_range
    pts = []
    while len(pts) < count:
        r = rng.uniform(a + margin * step, r_max_factor * a)
        phi = rng.uniform(-math.pi, math.pi)
        z = rng.uniform(-zr, zr)
        pts.append(SpacetimePoint.from_polar(float(r), float(phi), float(z), 0.0))
    return pts


def betaz_violation_demo(wavelength: float, n: int = 1, sample_grid: list[SpacetimePoint] | None = None,
                         count: int = 200, seed: int = 0, spec: PhotonSpec | None = None,
                         step: float | None = None, z_slice_count: int = 20,
                         constants: PhysicalConstants = CODATA2018) -> dict:
    """Maxwell residuals of the constant-beta field vs the z-dependent-beta field.

    The default grid lies outside the envelope with ``|z| <= 0.45 lambda`` so
    the conjectured amplitude stays nonzero. The summary statistic is the
    median, over grid points, of the ratio of the larger Faraday/Ampere
    residual of the conjectured field to that of the constant-beta field.
    """
    spec = spec or PhotonSpec.circular(wavelength, +1, n)
    h = step if step is not None else default_steps(wavelength, constants)[0]
    rng = np.random.default_rng(seed)
    if sample_grid is None:
        sample_grid = evanescent_points(wavelength, count, rng, h, z_range=0.45 * wavelength)
    beta0 = beta_paper(wavelength, spec.n, constants)
    const_fn = constant_beta_field(spec, beta0, constants)
    conj_fn = betaz_field(spec, constants)

    pairs, ratios = [], []
    tiny = np.finfo(float).tiny
    for p in sample_grid:
        rc = maxwell_residual(const_fn, p, h, wavelength=wavelength, constants=constants)
        rz = maxwell_residual(conj_fn, p, h, wavelength=wavelength, constants=constants)
        base = max(rc.faraday, rc.ampere)
        ratios.append(max(rz.faraday, rz.ampere) / max(base, tiny))
        pairs.append((rc, rz))

    # pointwise agreement on the z = 0 slice
    slice_pts = [SpacetimePoint(q.x, q.y, 0.0, q.t) for q in sample_grid[:z_slice_count]]
    slice_equal = all(
        np.array_equal(const_fn(q).E, conj_fn(q).E) and np.array_equal(const_fn(q).H, conj_fn(q).H)
        for q in slice_pts)

    const_med = float(np.median([max(a.faraday, a.ampere) for a, _ in pairs]))
    return {
        "wavelength": wavelength,
        "n": spec.n,
        "points": len(sample_grid),
        "step": h,
        "median_constant_residual": const_med,
        "median_conjecture_residual": float(np.median([max(b.faraday, b.ampere) for _, b in pairs])),
        "median_ratio": float(np.median(ratios)),
        "z0_slice_identical": bool(slice_equal),
        "pairs": pairs,
    }


def psi_function(spec: PhotonSpec, alpha: float, beta: float = 0.0,
                 constants: PhysicalConstants = CODATA2018) -> ScalarFn:
    return lambda p: psi(p, alpha, beta, spec, constants)


def residual_order(field_fn: FieldFn, point: SpacetimePoint, wavelength: float,
                   steps=(1e-3, 5e-4, 2.5e-4), constants: PhysicalConstants = CODATA2018) -> list[float]:
    """Max Maxwell residual at successively halved steps (fractions of lambda)."""
    return [maxwell_residual(field_fn, point, s * wavelength, wavelength=wavelength,
                             constants=constants).max_residual for s in steps]


__all__ = [
    "EigenReport", "NotEigenstateError", "ODE_ERRATUM", "PreconditionError", "ResidualReport",
    "betaz_field", "betaz_violation_demo", "constant_beta_field", "dalembert_residual",
    "default_steps", "energy_momentum_eigencheck", "evanescent_points", "interior_field",
    "interior_points", "lz_eigencheck", "maxwell_residual", "psi_function", "residual_order",
    "separation_ode_residual",
]
