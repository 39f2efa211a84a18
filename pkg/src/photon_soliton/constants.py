"""Physical constants (SI, CODATA 2018) used throughout the package."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class SingularityError(DomainError):
    """Evaluation on the propagation axis of a 1/r field."""


@dataclass(frozen=True)
class PhysicalConstants:
    """Container for the constants entering the model.

    Defaults are the CODATA 2018 values. ``h``, ``c`` and ``e_charge`` are
    exact in the 2019 SI; ``eps0`` and ``mu0`` are recommended values.
    """

    h: float = 6.62607015e-34
    c: float = 299792458.0
    eps0: float = 8.8541878128e-12
    mu0: float = 1.25663706212e-6
    e_charge: float = 1.602176634e-19

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"constant {f.name} must be positive, got {value!r}")
        closure = self.mu0 * self.eps0 * self.c**2
        if abs(closure - 1.0) > 1e-9:
            raise DomainError(f"mu0*eps0*c^2 = {closure!r}, expected 1 within 1e-9")

    @property
    def hbar(self) -> float:
        return self.h / (2 * math.pi)

    @property
    def impedance(self) -> float:
        """Vacuum impedance mu0*c (ohm)."""
        return self.mu0 * self.c

    def with_overrides(self, **kw) -> "PhysicalConstants":
        return replace(self, **kw)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


CODATA2018 = PhysicalConstants()
