"""Ellipsoidal photon-soliton model: fields, normalization, verification, predictions."""

__version__ = "0.1.0"

from .constants import CODATA2018, DomainError, PhysicalConstants, SingularityError
from .field import (
    FieldSample,
    PhotonSpec,
    SpacetimePoint,
    field_evanescent,
    field_interior,
    field_total,
    polar_components,
    psi,
    travel_phase,
)
from .geometry import EnvelopeGeometry, contains, envelope, surface_radius
from .normalization import NormalizationPair, alpha_paper, beta_paper, match_beta

__all__ = [
    "CODATA2018", "DomainError", "EnvelopeGeometry", "FieldSample", "NormalizationPair",
    "PhotonSpec", "PhysicalConstants", "SingularityError", "SpacetimePoint", "alpha_paper",
    "beta_paper", "contains", "envelope", "field_evanescent", "field_interior", "field_total",
    "match_beta", "polar_components", "psi", "surface_radius", "travel_phase",
]
