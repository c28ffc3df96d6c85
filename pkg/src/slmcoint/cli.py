"""Command-line front end.

Commands: simulate, estimate, spec-test, fit-artfima, mc, ckc.  Every
command writes its outputs plus a manifest.json (arguments, seeds, input
hashes) sufficient to re-run it bit-identically.  Exit codes: 0 success,
2 validation error, 3 numerical failure.
"""

import argparse
import hashlib
import json
import os
import sys

import numpy as np

from . import __version__
from .processes import (TemperedProcessSpec, NoiseConfig, simulate_model,
                        regression_function_sine, MemoryKind, SimulatedPath)
from .kernel_regression import get_kernel, kernel_estimate
from .spec_test import (run_spec_test, get_family, uniform_weight, NlsError,
                        SubsamplingError)
from .whittle import fit_artfima00, fit_arfima00
from .mc import StudyConfig, run_study, export_study, parse_exponent
from .empirical import ingest_ckc_csv, ckc_analysis, write_ckc_report

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def _sha256(path):
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            digest.update(block)
    return digest.hexdigest()


def _write_manifest(outdir, command, args_dict, inputs=()):
    manifest = {
        "command": command,
        "arguments": {k: v for k, v in sorted(args_dict.items())
                      if not callable(v)},
        "package_version": __version__,
        "input_sha256": {os.path.basename(p): _sha256(p) for p in inputs},
    }
    path = os.path.join(outdir, "manifest.json")
    with open(path, "w", newline="\n") as fh:
        fh.write(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _read_xy(path):
    data = np.genfromtxt(path, delimiter=",", names=True)
    names = data.dtype.names
    if names is None or "x" not in names or "y" not in names:
        raise ValueError(f"{path}: need a CSV with 'x' and 'y' columns")
    return np.asarray(data["x"], dtype=float), np.asarray(data["y"], dtype=float)


def _cmd_simulate(args):
    spec = TemperedProcessSpec(
        d=args.d, lam=args.lam, n=args.n, memory_kind=MemoryKind.parse(args.memory),
        burn_in=args.burn_in,
        presample="full" if args.presample == "full" else int(args.presample))
    noise = NoiseConfig(rho=args.rho, psi=args.psi, sigma=args.sigma, seed=args.seed)
    f = None if args.zero_function else (
        lambda x: regression_function_sine(x, args.f_terms))
    path = simulate_model(spec, noise, f=f)
    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, "path.csv")
    path.to_csv(csv_path)
    path.write_manifest(os.path.join(args.out, "run.json"))
    _write_manifest(args.out, "simulate", vars(args))
    print(csv_path)
    return EXIT_OK


def _cmd_estimate(args):
    x, y = _read_xy(args.data)
    n = x.shape[0]
    h = args.bandwidth if args.bandwidth else n ** parse_exponent(args.bandwidth_rule)
    grid = np.linspace(args.grid_start, args.grid_stop, args.grid_points)
    est = kernel_estimate(x, y, grid, h, get_kernel(args.kernel),
                          alpha=args.alpha, variance=args.variance)
    os.makedirs(args.out, exist_ok=True)
    out_csv = os.path.join(args.out, "estimate.csv")
    est.to_csv(out_csv)
    _write_manifest(args.out, "estimate", vars(args), inputs=[args.data])
    print(out_csv)
    return EXIT_OK


def _cmd_spec_test(args):
    x, y = _read_xy(args.data)
    n = x.shape[0]
    h = args.bandwidth if args.bandwidth else n ** parse_exponent(args.bandwidth_rule)
    b = args.block_size if args.block_size else int(
        args.block_coef * n ** args.block_exponent)
    a, bsup = (float(v) for v in args.weight_support.split(","))
    lam = args.lam
    if args.memory == "slm" and lam == 0.0 and args.lambda_rule:
        lam = n ** parse_exponent(args.lambda_rule)
    result = run_spec_test(
        x, y, get_family(args.family), h, b, get_kernel(args.kernel),
        uniform_weight(a, bsup), memory_kind=args.memory, d=args.d, lam=lam,
        quad_cells=args.quad_cells)
    os.makedirs(args.out, exist_ok=True)
    out_json = os.path.join(args.out, "spec_test.json")
    result.to_json(out_json)
    _write_manifest(args.out, "spec-test", vars(args), inputs=[args.data])
    print(f"p_value={result.p_value!r} t_normalized={result.t_normalized!r}")
    return EXIT_OK


def _cmd_fit_artfima(args):
    data = np.genfromtxt(args.data, delimiter=",", names=True)
    names = data.dtype.names
    if names is None:
        series = np.genfromtxt(args.data, delimiter=",")
    else:
        cols = [c for c in names if c != "year"]
        if len(cols) != 1:
            raise ValueError(
                f"{args.data}: expected a single value column (plus optional year)")
        series = np.asarray(data[cols[0]], dtype=float)
    fit = fit_artfima00(series) if args.model == "artfima" else fit_arfima00(series)
    os.makedirs(args.out, exist_ok=True)
    out_json = os.path.join(args.out, "fit.json")
    fit.to_json(out_json)
    _write_manifest(args.out, "fit-artfima", vars(args), inputs=[args.data])
    print(f"d_hat={fit.d_hat!r} lambda_hat={fit.lambda_hat!r} mse={fit.mse!r}")
    return EXIT_OK


def _cmd_mc(args):
    config = StudyConfig.from_json(args.config)
    if args.study and args.study != config.study_kind:
        raise ValueError(
            f"--study {args.study} does not match config study_kind "
            f"{config.study_kind}")
    result = run_study(config, threads=args.threads)
    export_study(result, args.out)
    _write_manifest(args.out, "mc", vars(args), inputs=[args.config])
    print(args.out)
    return EXIT_OK


def _cmd_ckc(args):
    series = ingest_ckc_csv(args.data, country=args.country)
    report = ckc_analysis(series, quad_cells=args.quad_cells)
    os.makedirs(args.out, exist_ok=True)
    out_json = os.path.join(args.out, "ckc_report.json")
    write_ckc_report(report, out_json)
    _write_manifest(args.out, "ckc", vars(args), inputs=[args.data])
    for row in report["p_values"]:
        print(f"{row['hypothesis']:9s} h={row['bandwidth_rule']:8s} "
              f"b={row['block_size']:3d} p={row['p_value']:.4f}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="slmcoint",
        description="Tempered cointegrating regression: simulation, kernel "
                    "estimation, specification testing and Whittle fitting")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate a model path")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=float, default=0.0)
    p.add_argument("--lam", type=float, default=0.0)
    p.add_argument("--memory", choices=["lm", "slm", "short"], default="short")
    p.add_argument("--rho", type=float, default=0.5)
    p.add_argument("--psi", type=float, default=0.25)
    p.add_argument("--sigma", type=float, default=0.2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--burn-in", type=int, default=1000)
    p.add_argument("--presample", default="full")
    p.add_argument("--f-terms", type=int, default=1000)
    p.add_argument("--zero-function", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("estimate", help="kernel regression with confidence bands")
    p.add_argument("--data", required=True)
    p.add_argument("--bandwidth", type=float, default=None)
    p.add_argument("--bandwidth-rule", default="n^-1/3")
    p.add_argument("--kernel", choices=["epanechnikov", "gaussian"],
                   default="epanechnikov")
    p.add_argument("--grid-start", type=float, default=0.0)
    p.add_argument("--grid-stop", type=float, default=1.0)
    p.add_argument("--grid-points", type=int, default=100)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--variance", choices=["centered", "uncentered"],
                   default="centered")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("spec-test", help="parametric specification test")
    p.add_argument("--data", required=True)
    p.add_argument("--family", choices=["linear", "quadratic"], default="linear")
    p.add_argument("--bandwidth", type=float, default=None)
    p.add_argument("--bandwidth-rule", default="n^-1/5")
    p.add_argument("--block-size", type=int, default=None)
    p.add_argument("--block-rule", dest="block_coef", type=float, default=1.0,
                   help="coefficient c of b = [c*n^0.5]")
    p.add_argument("--block-exponent", type=float, default=0.5)
    p.add_argument("--memory", choices=["slm", "lm", "short"], default="slm")
    p.add_argument("--d", type=float, default=0.0)
    p.add_argument("--lam", type=float, default=0.0)
    p.add_argument("--lambda-rule", default="n^-1/5")
    p.add_argument("--kernel", choices=["gaussian", "epanechnikov"],
                   default="gaussian")
    p.add_argument("--weight-support", default="-100,100")
    p.add_argument("--quad-cells", type=int, default=2048)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_spec_test)

    p = sub.add_parser("fit-artfima", help="Whittle fit of tempered noise")
    p.add_argument("--data", required=True,
                   help="single-column CSV (optional year column ignored)")
    p.add_argument("--model", choices=["artfima", "arfima"], default="artfima")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_fit_artfima)

    p = sub.add_parser("mc", help="run a Monte Carlo study from a JSON config")
    p.add_argument("--study", choices=["estimation", "coverage", "size"],
                   default=None)
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_mc)

    p = sub.add_parser("ckc", help="Carbon Kuznets curve workflow")
    p.add_argument("--data", required=True, help="CSV with year,gdp,co2 columns")
    p.add_argument("--country", default="")
    p.add_argument("--quad-cells", type=int, default=2048)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_ckc)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NlsError, SubsamplingError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
