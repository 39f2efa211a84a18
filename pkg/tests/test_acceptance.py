"""Exit criteria for the package; each test prints one PASS/FAIL line."""

import math
import time

import numpy as np
import pytest
from oracles import second_moment_cylinder, second_moment_ellipsoid, slit_brute_force

from photon_soliton import CODATA2018, NormalizationPair, PhotonSpec
from photon_soliton import experiments as X
from photon_soliton import verify as V
from photon_soliton.cli import main
from photon_soliton.normalization import (
    CONVENTIONS,
    CYLINDER,
    ELLIPSOID,
    STANDARD_SI,
    alpha_paper,
    beta_paper,
    energy_constant,
    gradient_ratio,
    match_beta,
    solve_alpha_from_energy,
)

K = CODATA2018
LAM = 650e-9
STEP = LAM / 1e4


@pytest.fixture
def verdict(request):
    tr = request.config.pluginmanager.getplugin("terminalreporter")

    def emit(label, ok, detail):
        line = f"[acceptance] {label}: {'PASS' if ok else 'FAIL'} ({detail})"
        if tr is not None:
            tr.write_line(line)
        else:
            print(line)
        assert ok, line

    return emit


def test_c1_maxwell_residuals(verdict):
    rng = np.random.default_rng(0)
    t0 = time.perf_counter()
    worst = {}
    for label, (a, b) in {"spin+": (1, 0), "spin-": (0, 1), "superposition": (1, 1)}.items():
        spec = PhotonSpec(LAM, 1, a, b)
        norm = NormalizationPair.paper(LAM)
        inner = V.interior_field(spec, norm.alpha)
        outer = V.constant_beta_field(spec, norm.beta)
        worst[label, "interior"] = max(
            V.maxwell_residual(inner, p, STEP, wavelength=LAM).max_residual
            for p in V.interior_points(LAM, 200, rng, STEP))
        worst[label, "evanescent"] = max(
            V.maxwell_residual(outer, p, STEP, wavelength=LAM).max_residual
            for p in V.evanescent_points(LAM, 200, rng, STEP))
    elapsed = time.perf_counter() - t0
    top = max(worst.values())
    verdict("C1 Maxwell residuals < 1e-6, runtime < 10 s", top < 1e-6 and elapsed < 10,
            f"max residual {top:.3e}, {elapsed:.2f} s")


def test_c2_betaz_violation(verdict):
    demo = V.betaz_violation_demo(LAM, count=200, seed=0)
    ok = demo["median_ratio"] > 1e3 and demo["z0_slice_identical"]
    verdict("C2 conjectured beta(z) breaks Maxwell", ok,
            f"median ratio {demo['median_ratio']:.3e}, z=0 slice identical={demo['z0_slice_identical']}")


def test_c3_normalization_consistency(verdict):
    lams = np.geomspace(100e-9, 1e-2, 50)
    rel = max(abs(match_beta(alpha_paper(l), l) / beta_paper(l) - 1) for l in lams)
    verdict("C3 beta_paper == match_beta(alpha_paper)", rel <= 1e-12, f"max rel diff {rel:.2e}")


def test_c4_region_ratio_and_si_constant(verdict):
    ratios = {}
    for conv in CONVENTIONS:
        ell = solve_alpha_from_energy(LAM, 1, ELLIPSOID, conv)
        cyl = solve_alpha_from_energy(LAM, 1, CYLINDER, conv)
        ratios[conv] = ell.alpha**2 / cyl.alpha**2
    # alpha^2 scales inversely with the region's second moment of r^2
    a = LAM / (2 * math.pi)
    oracle_ratio = second_moment_cylinder(a, LAM) / second_moment_ellipsoid(a, LAM / 2)
    si = energy_constant(solve_alpha_from_energy(LAM, 1, ELLIPSOID, STANDARD_SI), LAM)
    si_oracle = LAM**5 / second_moment_ellipsoid(a, LAM / 2)
    ok_ratio = all(abs(r / (120 / 64) - 1) <= 5e-3 for r in ratios.values())
    ok_inverse = all(abs((1 / r) / (64 / 120) - 1) <= 5e-3 for r in ratios.values())
    ok_si = abs(si / (60 * math.pi**3) - 1) <= 5e-3 and abs(si_oracle / (60 * math.pi**3) - 1) <= 1e-12
    verdict("C4 alpha^2 ellipsoid/cylinder = 15/8 (both conventions); SI constant = 60 pi^3",
            ok_ratio and ok_inverse and ok_si and abs(oracle_ratio / (15 / 8) - 1) < 1e-12,
            f"ratios {', '.join(f'{k}={v:.6f}' for k, v in ratios.items())}; "
            f"cylinder/ellipsoid={1 / ratios[STANDARD_SI]:.6f}; SI constant/pi^3={si / math.pi**3:.6f}")


def test_c5_eigenvalues(verdict):
    rng = np.random.default_rng(5)
    pts = V.interior_points(LAM, 100, rng, STEP)
    alpha = alpha_paper(LAM)
    lz_err = mom_err = en_err = 0.0
    cvs = []
    for hand, expected in ((+1, 1.0), (-1, -1.0)):
        spec = PhotonSpec.circular(LAM, hand)
        fn = V.psi_function(spec, alpha)
        lz = [V.lz_eigencheck(fn, p, spec) for p in pts]
        em = [V.energy_momentum_eigencheck(fn, p, LAM) for p in pts]
        lz_err = max(lz_err, max(abs(r.estimate - expected) for r in lz))
        mom_err = max(mom_err, max(m.rel_error for m, _ in em))
        en_err = max(en_err, max(e.rel_error for _, e in em))
        for vals in ([r.estimate.real for r in lz], [m.estimate.real for m, _ in em],
                     [e.estimate.real for _, e in em]):
            cvs.append(np.std(vals) / abs(np.mean(vals)))
    ok = lz_err < 1e-8 and mom_err < 1e-8 and en_err < 1e-8 and max(cvs) < 1e-8
    verdict("C5 Lz = +/-1, p = h/lambda, E = h nu", ok,
            f"Lz err {lz_err:.1e}, p rel {mom_err:.1e}, E rel {en_err:.1e}, max CV {max(cvs):.1e}")


def test_c6_gradient_ratio(verdict):
    errs = []
    for lam in (400e-9, 650e-9, 10.5e-6):
        a = alpha_paper(lam)
        errs.append(abs(gradient_ratio(a, match_beta(a, lam), lam / (2 * math.pi)) + 1))
    verdict("C6 gradient ratio = -1 at matching radius", max(errs) <= 1e-12, f"max |ratio+1| {max(errs):.1e}")


def test_c7_predictions(verdict):
    ip = X.intrinsic_intensity(LAM)
    ip_oracle = 4 * math.pi * 6.62607015e-34 * 299792458.0**2 / (650e-9) ** 4
    length, diameter = X.soliton_dimensions(LAM)
    gap = X.resolving_power_gap()
    tau = X.absorption_time(500e-9)
    ok = (abs(ip / ip_oracle - 1) <= 1e-12 and abs(ip / 4.19e9 - 1) < 2e-3
          and abs(length / diameter - math.pi) <= 1e-12
          and abs(gap - 0.0451) <= 1e-4
          and abs(tau / 1.668e-15 - 1) < 1e-3)
    verdict("C7 predictions", ok,
            f"I_p={ip:.4e} W/m^2, aspect={length / diameter:.12f}, gap={100 * gap:.3f}%, tau={tau * 1e15:.4f} fs")


def test_c8_model_curves(verdict):
    lam = 2 * math.pi  # envelope radius 1
    ws = np.linspace(0, lam / math.pi, 11)
    t = [X.slit_transmission(w, lam) for w in ws]
    brute = [slit_brute_force(w, 1.0, n=4000) for w in ws[1:-1]]
    disagreement = max(abs(a - b) for a, b in zip(t[1:-1], brute))
    monotone = all(b > a for a, b in zip(t, t[1:]))
    edge = X.slit_transmission(lam / math.pi, lam) == 1.0 and X.slit_transmission(2 * lam, lam) == 1.0
    d = np.geomspace(LAM / (2 * math.pi), 1e-3, 300)
    v = [X.visibility_model(x, LAM) for x in d]
    vis_ok = all(b < a for a, b in zip(v, v[1:])) and abs(v[0] - 1) < 1e-12
    ok = disagreement <= 1e-4 and monotone and edge and t[0] == 0.0 and vis_ok
    verdict("C8 slit transmission and visibility curves", ok,
            f"max |T - brute| {disagreement:.1e}, V(lambda/2pi)={v[0]:.12f}")


def test_c9_determinism(verdict, tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    codes = [main(["verify", "--suite", "all", "--seed", "0", "--out", str(p)]) for p in (a, b)]
    capsys.readouterr()
    same = a.read_bytes() == b.read_bytes()
    verdict("C9 verify --suite all --seed 0 byte-identical", same and codes == [0, 0],
            f"exit codes {codes}, {a.stat().st_size} bytes")
