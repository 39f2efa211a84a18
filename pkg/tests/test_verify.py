import math

import numpy as np
import pytest
import sympy as sp

from photon_soliton import CODATA2018, NormalizationPair, PhotonSpec, SpacetimePoint
from photon_soliton.field import field_total
from photon_soliton.verify import (
    NotEigenstateError,
    PreconditionError,
    betaz_field,
    betaz_violation_demo,
    constant_beta_field,
    dalembert_residual,
    energy_momentum_eigencheck,
    evanescent_points,
    interior_field,
    interior_points,
    lz_eigencheck,
    maxwell_residual,
    psi_function,
    separation_ode_residual,
)

LAM = 650e-9
RING = LAM / (2 * math.pi)
H = LAM / 1e4
K = CODATA2018


def test_symbolic_oracle_fields_solve_maxwell():
    """The x +/- iy forms of both branches are divergence- and curl-free in the plane."""
    x, y, A, B = sp.symbols("x y A B")
    u, v = x + sp.I * y, x - sp.I * y
    for ex, ey in ((A * u + B * v, sp.I * (A * u - B * v)),
                   (A / v + B / u, -sp.I * (A / v - B / u))):
        assert sp.simplify(sp.diff(ex, x) + sp.diff(ey, y)) == 0
        assert sp.simplify(sp.diff(ey, x) - sp.diff(ex, y)) == 0
        for comp in (ex, ey):
            assert sp.simplify(sp.diff(comp, x, 2) + sp.diff(comp, y, 2)) == 0


def test_symbolic_oracle_radial_ode():
    r, m = sp.symbols("r m", positive=True)
    for R, m_val, expected in ((r, 1, 0), (1 / r, 1, 0), (r, 2, -3 / r)):
        expr = sp.diff(R, r, 2) + sp.diff(R, r) / r - m_val**2 * R / r**2
        assert sp.simplify(expr - expected) == 0


@pytest.mark.parametrize("form, m, expected", [
    ("r", 1, lambda r: 0 * r),
    ("1/r", 1, lambda r: 0 * r),
    ("r", 2, lambda r: -3 / r),
])
def test_separation_ode_residual(form, m, expected):
    r = np.linspace(0.1, 3.0, 9)
    assert np.allclose(separation_ode_residual(form, m, r), expected(r), rtol=1e-14, atol=0)
    if m == 1:
        assert np.all(separation_ode_residual(form, m, r) == 0)


def test_maxwell_interior_and_evanescent(spec, paper_norm):
    rng = np.random.default_rng(4)
    for p in interior_points(LAM, 20, rng, H):
        rep = maxwell_residual(interior_field(spec, paper_norm.alpha), p, H, wavelength=LAM)
        assert rep.max_residual < 1e-6
    for p in evanescent_points(LAM, 20, rng, H):
        rep = maxwell_residual(constant_beta_field(spec, paper_norm.beta), p, H, wavelength=LAM)
        assert rep.max_residual < 1e-6
        assert min(rep.div_E, rep.div_H, rep.faraday, rep.ampere) >= 0


def test_maxwell_preconditions(paper_norm):
    spec = PhotonSpec.circular(LAM)
    with pytest.raises(PreconditionError, match="axis"):
        maxwell_residual(interior_field(spec, paper_norm.alpha), SpacetimePoint(H, 0, 0), H, wavelength=LAM)

    def total(p):
        return field_total(p, spec, paper_norm)

    with pytest.raises(PreconditionError, match="surface"):
        maxwell_residual(total, SpacetimePoint(RING + 0.5 * H, 0, 0), H, wavelength=LAM)


def test_residual_second_order(paper_norm):
    """Halving the step cuts the residual about 4x above the roundoff floor."""
    spec = PhotonSpec.circular(LAM)
    fn = constant_beta_field(spec, paper_norm.beta)
    p = SpacetimePoint.from_polar(1.3 * RING, 0.4, 0.1 * LAM)
    res = [maxwell_residual(fn, p, s * LAM, wavelength=LAM).max_residual for s in (4e-3, 2e-3, 1e-3)]
    for coarse, fine in zip(res, res[1:]):
        assert 3.5 < coarse / fine < 4.5


def test_dalembert(paper_norm):
    spec = PhotonSpec.circular(LAM)
    inner = interior_field(spec, paper_norm.alpha)
    outer = constant_beta_field(spec, paper_norm.beta)
    p_in = SpacetimePoint.from_polar(0.6 * RING, 0.3, 0.1 * LAM)
    base = dalembert_residual(lambda p: inner(p).E[0], p_in, LAM)
    assert base < 1e-6
    p_out = SpacetimePoint.from_polar(LAM, 2.0, 0.2 * LAM)
    assert dalembert_residual(lambda p: outer(p).E[1], p_out, LAM) < 1e-6

    def corrupted(p):
        return (p.x + 1j * p.y) * math.hypot(p.x, p.y) * np.exp(2j * math.pi * (p.z - K.c * p.t) / LAM)

    assert dalembert_residual(corrupted, p_in, LAM) > 1e3 * max(base, 1e-12)


def test_lz_eigen(paper_norm):
    p = SpacetimePoint.from_polar(0.5 * RING, 0.8, 0.05 * LAM)
    for hand, expected in ((+1, 1.0), (-1, -1.0)):
        spec = PhotonSpec.circular(LAM, hand)
        rep = lz_eigencheck(psi_function(spec, paper_norm.alpha), p, spec)
        assert abs(rep.estimate - expected) < 1e-8
        assert lz_eigencheck(psi_function(spec, paper_norm.alpha), p).expected == expected
    mixed = PhotonSpec.linear(LAM)
    with pytest.raises(NotEigenstateError):
        lz_eigencheck(psi_function(mixed, paper_norm.alpha), p, mixed)
    with pytest.raises(NotEigenstateError):
        lz_eigencheck(psi_function(mixed, paper_norm.alpha), SpacetimePoint.from_polar(0.5 * RING, 0.3, 0))


@pytest.mark.parametrize("lam", [1.0, 650e-9])
def test_energy_momentum(lam):
    spec = PhotonSpec.circular(lam)
    norm = NormalizationPair.paper(lam)
    p = SpacetimePoint.from_polar(0.3 * lam / (2 * math.pi), 0.2, 0.1 * lam)
    mom, en = energy_momentum_eigencheck(psi_function(spec, norm.alpha), p, lam)
    assert mom.rel_error < 1e-8 and mom.expected == pytest.approx(K.h / lam)
    assert en.rel_error < 1e-8 and en.expected == pytest.approx(K.h * K.c / lam)
    if lam == 650e-9:
        assert en.expected == pytest.approx(3.056e-19, rel=1e-3)


def test_eigen_point_independent(paper_norm):
    rng = np.random.default_rng(7)
    spec = PhotonSpec.circular(LAM)
    fn = psi_function(spec, paper_norm.alpha)
    vals = [energy_momentum_eigencheck(fn, p, LAM)[1].estimate.real for p in interior_points(LAM, 30, rng, H)]
    assert np.std(vals) / np.mean(vals) < 1e-8


def test_betaz_demo():
    demo = betaz_violation_demo(LAM, count=40, seed=1)
    assert demo["median_constant_residual"] < 1e-6
    assert demo["median_ratio"] > 1e3
    assert demo["z0_slice_identical"]
    again = betaz_violation_demo(LAM, count=40, seed=1)
    assert again["median_ratio"] == demo["median_ratio"]


def test_betaz_field_equals_constant_at_z0(paper_norm):
    spec = PhotonSpec.circular(LAM)
    p = SpacetimePoint.from_polar(2 * RING, 0.5, 0.0)
    assert np.array_equal(betaz_field(spec)(p).E, constant_beta_field(spec, paper_norm.beta)(p).E)
