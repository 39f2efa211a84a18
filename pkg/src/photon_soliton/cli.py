"""Command-line interface: ``photon-soliton {field,verify,normalize,predict,report}``.

Exit codes: 0 pass, 1 a checked bound failed, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import experiments, suites
from .constants import DomainError, SingularityError
from .field import PhotonSpec, SpacetimePoint, field_evanescent, field_interior, field_total
from .normalization import (
    CONVENTIONS,
    CYLINDER,
    ELLIPSOID,
    NormalizationPair,
    energy_constant,
    solve_alpha_from_energy,
)
from .report import ReportEnvelope, csv_table, load_config, now_utc, records_csv, sweep_csv, write_output

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

POL_NAMED = {"+1": (1.0, 0.0), "-1": (0.0, 1.0), "lin": (1.0, 1.0)}


def parse_pol(text: str) -> tuple[complex, complex]:
    """``+1``, ``-1``, ``lin`` or four comma-separated floats ``Are,Aim,Bre,Bim``."""
    if text in POL_NAMED:
        return POL_NAMED[text]
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            f"invalid polarization {text!r}: use +1, -1, lin or Are,Aim,Bre,Bim")
    try:
        ar, ai, br, bi = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid polarization {text!r}: non-numeric part") from None
    return complex(ar, ai), complex(br, bi)


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="config file (default: $PHOTON_SOLITON_CONFIG)")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int, dest="quadrature_budget", help="quadrature sample budget")
    p.add_argument("--fd-step", type=_positive_float, help="spatial FD step as a fraction of lambda")
    p.add_argument("--fd-time-step", type=_positive_float, help="temporal FD step as a fraction of the period")
    p.add_argument("--format", choices=("json", "csv"), dest="output_format")
    p.add_argument("--timestamp", action="store_true", help="stamp the report with the current UTC time")
    p.add_argument("--out", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="photon-soliton", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    f = sub.add_parser("field", help="evaluate the six field components at a point")
    f.add_argument("--lambda", dest="wavelength", type=_positive_float, required=True)
    f.add_argument("--r", type=float, default=0.0)
    f.add_argument("--phi", type=float, default=0.0)
    f.add_argument("--z", type=float, default=0.0)
    f.add_argument("--t", type=float, default=0.0)
    f.add_argument("--n", type=int, default=1)
    f.add_argument("--pol", type=parse_pol, default=(1.0, 0.0))
    f.add_argument("--norm", choices=("paper", "quadrature"), default="paper")
    f.add_argument("--region", choices=(ELLIPSOID, CYLINDER), default=ELLIPSOID)
    f.add_argument("--convention", choices=tuple(CONVENTIONS), default="paper_literal")
    _common(f)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=suites.SUITES + ("all",), default="all")
    v.add_argument("--lambda", dest="wavelength", type=_positive_float, default=650e-9)
    v.add_argument("--points", type=int, default=200, help="random points per branch")
    _common(v)

    nrm = sub.add_parser("normalize", help="closed-form vs quadrature amplitudes")
    nrm.add_argument("--lambda", dest="wavelength", type=_positive_float, default=650e-9)
    nrm.add_argument("--n", type=int, default=1)
    nrm.add_argument("--region", choices=(ELLIPSOID, CYLINDER, "both"), default="both")
    nrm.add_argument("--convention", choices=tuple(CONVENTIONS) + ("both",), default="both")
    nrm.add_argument("--method", choices=("gauss", "monte_carlo"), default="gauss")
    _common(nrm)

    pr = sub.add_parser("predict", help="experimental predictions, single value or sweep")
    pr.add_argument("name", choices=sorted(experiments.PREDICTIONS))
    for flag, dest in (("--lambda", "wavelength"), ("--nu", "nu"), ("--nu0", "nu0"), ("--width", "width"),
                       ("--d", "d"), ("--L", "screen_distance")):
        pr.add_argument(flag, dest=dest, type=float)
    pr.add_argument("--max-order", type=int, default=3)
    pr.add_argument("--sweep", help="parameter to sweep (default: inferred from --X-from flags)")
    for dest in ("wavelength", "nu", "nu0", "width", "d", "screen_distance"):
        flag = {"wavelength": "lambda", "screen_distance": "L"}.get(dest, dest).replace("_", "-")
        pr.add_argument(f"--{flag}-from", dest=f"{dest}_from", type=float)
        pr.add_argument(f"--{flag}-to", dest=f"{dest}_to", type=float)
    pr.add_argument("--steps", type=int, default=50)
    pr.add_argument("--log", action="store_true", help="geometric sweep spacing")
    _common(pr)

    rp = sub.add_parser("report", help="full run: verification, normalization and prediction tables")
    rp.add_argument("--lambda", dest="wavelength", type=_positive_float, default=650e-9)
    rp.add_argument("--points", type=int, default=200)
    rp.add_argument("--out-dir", default="report")
    _common(rp)
    return parser


def _config(args):
    return load_config(
        getattr(args, "config", None),
        seed=args.seed,
        quadrature_budget=args.quadrature_budget,
        fd_step=args.fd_step,
        fd_time_step=args.fd_time_step,
        output_format=args.output_format,
    )


def _stamp(args):
    return now_utc() if args.timestamp else None


# -- commands ---------------------------------------------------------------

def cmd_field(args, cfg) -> int:
    k = cfg.physical_constants()
    a, b = args.pol
    spec = PhotonSpec(args.wavelength, args.n, a, b)
    if args.norm == "paper":
        norm = NormalizationPair.paper(args.wavelength, args.n, k)
    else:
        norm = solve_alpha_from_energy(args.wavelength, args.n, args.region, args.convention,
                                       cfg.quadrature_budget, constants=k)
    point = SpacetimePoint.from_polar(args.r, args.phi, args.z, args.t)
    sample = field_total(point, spec, norm, constants=k)
    rec = {"kind": "field", "x": point.x, "y": point.y, "z": point.z, "t": point.t,
           "r": point.r, "phi": point.phi, "alpha": norm.alpha, "beta": norm.beta,
           "norm_source": norm.source, **sample.as_dict()}
    ring = args.wavelength / (2 * math.pi)
    if point.r > 0 and abs(point.r - ring) <= 1e-4 * ring and abs(point.z - k.c * point.t) <= 1e-4 * ring:
        inner = field_interior(point, norm.alpha, spec, k)
        outer = field_evanescent(point, norm.beta, spec, k)
        rec["continuity_note"] = (
            "point is on the matching ring r = lambda/2pi; interior |E| = "
            f"{inner.E_mag:.12e}, evanescent |E| = {outer.E_mag:.12e}")
        rec["interior_E_mag"] = inner.E_mag
        rec["evanescent_E_mag"] = outer.E_mag
    if cfg.output_format == "csv":
        rows = []
        for name, vec, units in (("E", sample.E, "V/m"), ("H", sample.H, "A/m")):
            for axis, val in zip("xyz", vec):
                rows.append((f"{name}_{axis}_re", float(val.real), units))
                rows.append((f"{name}_{axis}_im", float(val.imag), units))
        rows += [("E_mag", sample.E_mag, "V/m"), ("H_mag", sample.H_mag, "A/m")]
        text = csv_table(("component", "value", "units"), rows) + f"# branch={sample.branch}\n"
        write_output(text, args.out)
    else:
        env = ReportEnvelope("field", cfg.as_dict(), [rec], {}, _stamp(args))
        write_output(env.to_json(), args.out)
    return EXIT_OK


def cmd_verify(args, cfg) -> int:
    records, checks = suites.run(args.suite, cfg, args.wavelength, args.points)
    env = ReportEnvelope("verify", {**cfg.as_dict(), "suite": args.suite, "wavelength": args.wavelength,
                                    "points": args.points}, records, checks, _stamp(args))
    if cfg.output_format == "csv":
        write_output(csv_table(("check", "pass", "units"), [(k, str(v).lower(), "1") for k, v in checks.items()]),
                     args.out)
    else:
        write_output(env.to_json(), args.out)
    return EXIT_OK if env.passed else EXIT_FAIL


def normalization_records(wavelength, n, regions, conventions, cfg, method="gauss"):
    k = cfg.physical_constants()
    closed = NormalizationPair.paper(wavelength, n, k)
    records = [{"kind": "normalization", "source": closed.source, "region": ELLIPSOID,
                "convention": "paper_literal", "alpha": closed.alpha, "beta": closed.beta,
                "alpha_units": "V/m^2", "beta_units": "V",
                "energy_constant": energy_constant(closed, wavelength, n, k)}]
    solved = {}
    for region in regions:
        for conv in conventions:
            pair = solve_alpha_from_energy(wavelength, n, region, conv, cfg.quadrature_budget, method,
                                           int(cfg.seed), k)
            solved[region, conv] = pair
            records.append({
                "kind": "normalization", "source": pair.source, "region": region, "convention": conv,
                "convention_scale": CONVENTIONS[conv], "alpha": pair.alpha, "beta": pair.beta,
                "alpha_units": "V/m^2", "beta_units": "V",
                "energy_constant": energy_constant(pair, wavelength, n, k),
                "energy_constant_over_pi3": energy_constant(pair, wavelength, n, k) / math.pi**3,
                "alpha_ratio_to_closed_form": pair.alpha / closed.alpha,
                "alpha_sq_ratio_to_closed_form": (pair.alpha / closed.alpha) ** 2,
                "quadrature": pair.quadrature,
            })
    checks = {}
    rel = cfg.tolerances["quadrature_rel"]
    for conv in conventions:
        if (ELLIPSOID, conv) in solved and (CYLINDER, conv) in solved:
            ratio = solved[ELLIPSOID, conv].alpha ** 2 / solved[CYLINDER, conv].alpha ** 2
            records.append({"kind": "region_ratio", "convention": conv,
                            "alpha_sq_ellipsoid_over_cylinder": ratio,
                            "alpha_sq_cylinder_over_ellipsoid": 1 / ratio, "expected_ellipsoid_over_cylinder": 15 / 8})
            checks[f"region_ratio_{conv}"] = abs(ratio / (15 / 8) - 1) <= rel
    for (region, conv), pair in solved.items():
        checks[f"quadrature_converged_{region}_{conv}"] = bool(pair.quadrature.converged)
    return records, checks


def cmd_normalize(args, cfg) -> int:
    regions = (ELLIPSOID, CYLINDER) if args.region == "both" else (args.region,)
    convs = tuple(CONVENTIONS) if args.convention == "both" else (args.convention,)
    records, checks = normalization_records(args.wavelength, args.n, regions, convs, cfg, args.method)
    env = ReportEnvelope("normalize", {**cfg.as_dict(), "wavelength": args.wavelength, "n": args.n},
                         records, checks, _stamp(args))
    if cfg.output_format == "csv":
        rows = [(f"{r['region']}/{r['convention']}/{r['source']}", r["alpha"], "V/m^2")
                for r in records if r["kind"] == "normalization"]
        write_output(csv_table(("param", "value", "units"), rows), args.out)
    else:
        write_output(env.to_json(), args.out)
    # informational: non-convergence is flagged in the report, not in the exit code
    return EXIT_OK


PARAMS = ("wavelength", "nu", "nu0", "width", "d", "screen_distance")
REQUIRED = {
    "threshold": ("wavelength",), "dimensions": ("wavelength",), "absorption": ("wavelength",),
    "photoelectric": ("nu", "nu0"), "slit": ("width", "wavelength"), "visibility": ("d", "wavelength"),
    "fringes": ("d", "wavelength", "screen_distance"),
}


def _sweep_values(args):
    swept = [p for p in PARAMS if getattr(args, f"{p}_from") is not None or getattr(args, f"{p}_to") is not None]
    if args.sweep:
        swept = [args.sweep]
    if not swept:
        return None, None
    if len(swept) > 1:
        raise DomainError(f"only one parameter can be swept, got {swept}")
    name = swept[0]
    lo, hi = getattr(args, f"{name}_from", None), getattr(args, f"{name}_to", None)
    if lo is None or hi is None:
        raise DomainError(f"sweep of {name!r} needs both --from and --to bounds")
    if args.steps < 1:
        raise DomainError("--steps must be >= 1")
    values = np.geomspace(lo, hi, args.steps) if args.log else np.linspace(lo, hi, args.steps)
    return name, [float(v) for v in values]


def cmd_predict(args, cfg) -> int:
    k = cfg.physical_constants()
    params = {p: getattr(args, p) for p in PARAMS if getattr(args, p) is not None}
    if args.name == "fringes":
        params["max_order"] = args.max_order
    swept, values = _sweep_values(args)
    needed = [p for p in REQUIRED[args.name] if p not in params and p != swept]
    if needed:
        raise DomainError(f"prediction {args.name!r} needs parameters: {', '.join(needed)}")
    if swept is None:
        records = experiments.predict(args.name, k, **params)
        if cfg.output_format == "csv":
            write_output(records_csv(records), args.out)
        else:
            env = ReportEnvelope("predict", {**cfg.as_dict(), "prediction": args.name, "inputs": params},
                                 records, {}, _stamp(args))
            write_output(env.to_json(), args.out)
        return EXIT_OK
    rows = []
    for v in values:
        try:
            rows.append(experiments.predict(args.name, k, **{**params, swept: v})[0])
        except DomainError as exc:
            raise DomainError(f"{exc} (at {swept}={v!r}, inputs={params})") from None
    if args.output_format == "json":
        env = ReportEnvelope("predict", {**cfg.as_dict(), "prediction": args.name, "sweep": swept,
                                         "inputs": params}, rows, {}, _stamp(args))
        write_output(env.to_json(), args.out)
    else:
        write_output(sweep_csv(values, rows), args.out)
    return EXIT_OK


REPORT_SWEEPS = (
    ("visibility", "d", lambda lam: np.geomspace(lam / (2 * np.pi), 100 * lam, 60)),
    ("slit", "width", lambda lam: np.linspace(0.0, 1.2 * lam / np.pi, 61)),
    ("threshold", "wavelength", lambda lam: np.geomspace(200e-9, 20e-6, 60)),
    ("absorption", "wavelength", lambda lam: np.geomspace(200e-9, 20e-6, 60)),
)


def cmd_report(args, cfg) -> int:
    k = cfg.physical_constants()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lam = args.wavelength
    records, checks = suites.run("all", cfg, lam, args.points)
    nrec, nchk = normalization_records(lam, 1, (ELLIPSOID, CYLINDER), tuple(CONVENTIONS), cfg)
    records += nrec
    checks.update(nchk)
    preds = []
    for name, extra in (("threshold", {}), ("dimensions", {}), ("absorption", {}),
                        ("fringes", {"d": 1e-3, "screen_distance": 1.0, "max_order": 3})):
        preds += experiments.predict(name, k, wavelength=lam, **extra)
    preds += experiments.predict("photoelectric", k, nu=k.c / lam, nu0=0.5 * k.c / lam)
    records += preds
    (out / "predictions.csv").write_text(records_csv(preds), encoding="utf-8")
    for name, param, grid in REPORT_SWEEPS:
        values = [float(v) for v in grid(lam)]
        base = {"wavelength": lam} if param != "wavelength" else {}
        rows = [experiments.predict(name, k, **base, **{param: v})[0] for v in values]
        (out / f"sweep_{name}_{param}.csv").write_text(sweep_csv(values, rows), encoding="utf-8")
    env = ReportEnvelope("report", {**cfg.as_dict(), "wavelength": lam, "points": args.points},
                         records, checks, _stamp(args))
    (out / "report.json").write_text(env.to_json(), encoding="utf-8")
    summary = csv_table(("check", "pass", "units"), [(c, str(v).lower(), "1") for c, v in checks.items()])
    (out / "checks.csv").write_text(summary, encoding="utf-8")
    sys.stdout.write(summary)
    return EXIT_OK if env.passed else EXIT_FAIL


COMMANDS = {
    "field": cmd_field,
    "verify": cmd_verify,
    "normalize": cmd_normalize,
    "predict": cmd_predict,
    "report": cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except SingularityError as exc:
        print(f"photon-soliton {args.command}: singularity: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ValueError, OSError) as exc:
        print(f"photon-soliton {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
