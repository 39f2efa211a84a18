"""Experimental predictions of the soliton model.

`slit_transmission` and `visibility_model` are model extensions: only the
lambda/pi cutoff and the monotone decrease with slit separation come from the
model itself. Their records carry ``model="extension"``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .constants import CODATA2018, DomainError, PhysicalConstants

PAPER = "paper"
EXTENSION = "extension"


@dataclass(frozen=True)
class PredictionRecord:
    name: str
    value: float
    units: str
    formula: str
    inputs: dict = field(default_factory=dict)
    model: str = PAPER
    warnings: tuple = ()

    def __post_init__(self):
        if not self.units:
            raise DomainError(f"prediction {self.name!r} has empty units")
        if not math.isfinite(self.value):
            raise DomainError(f"prediction {self.name!r} is not finite: {self.value!r}")

    def as_dict(self) -> dict:
        return {
            "kind": "prediction",
            "name": self.name,
            "value": self.value,
            "units": self.units,
            "formula": self.formula,
            "inputs": dict(self.inputs),
            "model": self.model,
            "warnings": list(self.warnings),
        }


@dataclass(frozen=True)
class FringePattern:
    slit_separation: float
    wavelength: float
    screen_distance: float
    maxima_positions: tuple
    visibility: float | None = None
    small_angle_ok: bool = True

    @property
    def spacing(self) -> float:
        return self.wavelength * self.screen_distance / self.slit_separation


def _positive(name, value):
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be positive, got {value!r}")


def intrinsic_intensity(wavelength: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Mean intensity inside the soliton, ``4 pi h c^2 / lambda^4`` (W/m^2).

    Also the predicted threshold intensity for multiphoton absorption.
    """
    _positive("wavelength", wavelength)
    return 4 * math.pi * constants.h * constants.c**2 / wavelength**4


def soliton_dimensions(wavelength: float) -> tuple[float, float]:
    """(length, diameter) = (lambda, lambda / pi)."""
    _positive("wavelength", wavelength)
    return wavelength, wavelength / math.pi


def resolving_power_gap() -> float:
    """Fractional amount by which lambda/pi falls short of lambda/3."""
    return (1 / 3 - 1 / math.pi) / (1 / 3)


def absorption_time(wavelength: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Transit time of the envelope past a point: one period, ``lambda / c``."""
    _positive("wavelength", wavelength)
    return wavelength / constants.c


@dataclass(frozen=True)
class Photoemission:
    kinetic_energy: float
    stopping_voltage: float
    emits: bool


def photoelectric(nu: float, nu0: float, constants: PhysicalConstants = CODATA2018) -> Photoemission:
    """Einstein photoemission: KE = h (nu - nu0) at or above threshold, else none."""
    _positive("nu", nu)
    _positive("nu0", nu0)
    emits = nu >= nu0
    ke = constants.h * (nu - nu0) if emits else 0.0
    return Photoemission(ke, ke / constants.e_charge, emits)


def slit_transmission(width: float, wavelength: float) -> float:
    """Fraction of the ``r^2`` intensity disc passing a centred slit of ``width``.

    With ``a = lambda / 2 pi`` and ``sin(theta) = w / 2a`` the clipped integral
    is ``2 a^4 (theta/2 + sin(2 theta)/6 - sin(4 theta)/24)`` and the full disc
    gives ``pi a^4 / 2``.
    """
    if width < 0:
        raise DomainError(f"slit width must be non-negative, got {width!r}")
    _positive("wavelength", wavelength)
    a = wavelength / (2 * math.pi)
    u = width / (2 * a)
    if u >= 1:
        return 1.0
    th = math.asin(u)
    return 4 / math.pi * (th / 2 + math.sin(2 * th) / 6 - math.sin(4 * th) / 24)


def fringe_maxima(d: float, wavelength: float, screen_distance: float, max_order: int,
                  small_angle_limit: float = 0.1) -> FringePattern:
    """Far-field two-slit maxima ``x_m = m lambda L / d`` for ``|m| <= max_order``.

    ``small_angle_ok`` is False when the outermost order's angle
    ``m lambda / d`` exceeds ``small_angle_limit`` rad or ``L`` is not much
    larger than ``d``.
    """
    _positive("slit separation", d)
    _positive("wavelength", wavelength)
    _positive("screen distance", screen_distance)
    if max_order < 0:
        raise DomainError("max_order must be non-negative")
    spacing = wavelength * screen_distance / d
    xs = tuple(m * spacing for m in range(-max_order, max_order + 1))
    ok = max_order * wavelength / d <= small_angle_limit and d <= small_angle_limit * screen_distance
    return FringePattern(d, wavelength, screen_distance, xs, None, ok)


def visibility_model(d: float, wavelength: float) -> float:
    """Two-amplitude visibility ``2 rho / (1 + rho^2)``, ``rho = (lambda/2pi) / d``.

    ``rho`` is the 1/r evanescent amplitude at the far slit relative to its
    value on the matching ring.
    """
    _positive("wavelength", wavelength)
    a = wavelength / (2 * math.pi)
    if not d >= a:
        raise DomainError(f"slit separation {d!r} lies inside the envelope radius {a!r}")
    rho = a / d
    return 2 * rho / (1 + rho * rho)


# -- record builders used by the CLI ------------------------------------------

def predict(name: str, constants: PhysicalConstants = CODATA2018, **p) -> list[PredictionRecord]:
    """Build the records for one named prediction; see `PREDICTIONS`."""
    try:
        builder = PREDICTIONS[name]
    except KeyError:
        raise DomainError(f"unknown prediction {name!r}; expected one of {sorted(PREDICTIONS)}") from None
    return builder(constants=constants, **p)


def _threshold(wavelength, constants, **_):
    return [PredictionRecord("threshold_intensity", intrinsic_intensity(wavelength, constants), "W/m^2",
                             "I_p = 4 pi h c^2 / lambda^4", {"wavelength": wavelength})]


def _dimensions(wavelength, constants, **_):
    length, diameter = soliton_dimensions(wavelength)
    inp = {"wavelength": wavelength}
    return [
        PredictionRecord("length", length, "m", "L = lambda", inp),
        PredictionRecord("diameter", diameter, "m", "D = lambda / pi", inp),
        PredictionRecord("aspect_ratio", length / diameter, "1", "L / D = pi", inp),
        PredictionRecord("resolving_power_gap", resolving_power_gap(), "1",
                         "(lambda/3 - lambda/pi) / (lambda/3)", {}),
    ]


def _absorption(wavelength, constants, **_):
    return [PredictionRecord("absorption_time", absorption_time(wavelength, constants), "s",
                             "tau = lambda / c", {"wavelength": wavelength})]


def _photo(nu, nu0, constants, **_):
    res = photoelectric(nu, nu0, constants)
    inp = {"nu": nu, "nu0": nu0}
    return [
        PredictionRecord("kinetic_energy", res.kinetic_energy, "J", "KE = h (nu - nu0)", inp),
        PredictionRecord("stopping_voltage", res.stopping_voltage, "V", "V = (h nu - h nu0) / e", inp),
        PredictionRecord("emits", float(res.emits), "bool", "nu >= nu0", inp),
    ]


def _slit(width, wavelength, constants, **_):
    return [PredictionRecord("slit_transmission", slit_transmission(width, wavelength), "1",
                             "clipped r^2 disc, cutoff at w = lambda / pi",
                             {"width": width, "wavelength": wavelength}, EXTENSION)]


def _visibility(d, wavelength, constants, **_):
    return [PredictionRecord("visibility", visibility_model(d, wavelength), "1",
                             "V = 2 rho / (1 + rho^2), rho = (lambda / 2 pi) / d",
                             {"d": d, "wavelength": wavelength}, EXTENSION)]


def _fringes(d, wavelength, screen_distance, max_order=3, constants=None, **_):
    pat = fringe_maxima(d, wavelength, screen_distance, int(max_order))
    warn = () if pat.small_angle_ok else ("small-angle approximation violated",)
    inp = {"d": d, "wavelength": wavelength, "screen_distance": screen_distance}
    m0 = int(max_order)
    return [PredictionRecord(f"maximum_{m}", x, "m", "x_m = m lambda L / d", {**inp, "order": m},
                             warnings=warn)
            for m, x in zip(range(-m0, m0 + 1), pat.maxima_positions)]


PREDICTIONS = {
    "threshold": _threshold,
    "dimensions": _dimensions,
    "absorption": _absorption,
    "photoelectric": _photo,
    "slit": _slit,
    "visibility": _visibility,
    "fringes": _fringes,
}
