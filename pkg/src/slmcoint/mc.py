"""Configuration-driven Monte Carlo studies: estimation error tables,
confidence-interval coverage tables and empirical-size tables for the
subsampled specification test.

Determinism: replication r draws its innovations from a generator seeded by
(master_seed, r) only, innovations are shared across memory settings within
a replication, and accumulation happens in fixed-size chunks combined in
chunk order, so every cell is reproducible bit for bit regardless of thread
count or cell execution order.
"""

import json
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .processes import (MemoryKind, TemperedProcessSpec, NoiseConfig,
                        simulate_innovations, simulate_regressor,
                        simulate_error_ar1, sine_series_interpolator,
                        innovation_length)
from .kernel_regression import get_kernel, fitted_values
from .spec_test import (linear_family, uniform_weight, t_statistic,
                        normalized_statistic, subsample_statistics,
                        subsample_quantile, _sliding_theta)

SLM_RULES = {"SLM1": -1.0 / 3.0, "SLM2": -0.25, "SLM3": -0.2, "SLM4": -1.0 / 6.0}
DEFAULT_BLOCK_RULES = ((0.5, 0.5), (1.0, 0.5), (2.0, 0.5), (4.0, 0.5))
DEFAULT_LEVELS = (0.01, 0.05, 0.10)
_CHUNK_SIZE = 25


def parse_exponent(value):
    """Exponent a of a power rule n^a, from a number or strings like
    'n^-1/3', '1/sqrt(n)', '1/n'."""
    if isinstance(value, (int, float)):
        return float(value)
    s = str(value).strip().lower().replace(" ", "")
    if s in ("1/sqrt(n)", "n^-1/2"):
        return -0.5
    if s == "1/n":
        return -1.0
    if s.startswith("n^"):
        body = s[2:].strip("{}")
        if "/" in body:
            num, den = body.split("/")
            return float(num) / float(den)
        return float(body)
    raise ValueError(f"cannot parse power rule {value!r}")


@dataclass(frozen=True)
class MemorySetting:
    """Regressor memory setting: the kind plus the tempering schedule
    lam = n^lambda_exponent for semi-long memory."""

    kind: MemoryKind
    lambda_exponent: float = None
    label: str = None

    def __post_init__(self):
        object.__setattr__(self, "kind", MemoryKind.parse(self.kind))
        if self.kind is MemoryKind.SEMI_LONG:
            if self.lambda_exponent is None:
                raise ValueError("semi-long setting needs a lambda exponent")
            if not (-1.0 < self.lambda_exponent < 0.0):
                raise ValueError(
                    "tempering schedule must satisfy lam -> 0 and n*lam -> inf "
                    "(exponent in (-1, 0))")
        if self.label is None:
            if self.kind is MemoryKind.SEMI_LONG:
                for name, expo in SLM_RULES.items():
                    if abs(expo - self.lambda_exponent) < 1e-12:
                        object.__setattr__(self, "label", name)
                        break
                else:
                    object.__setattr__(self, "label", f"SLM(n^{self.lambda_exponent:g})")
            else:
                object.__setattr__(self, "label",
                                   "LM" if self.kind is MemoryKind.LONG else "SHORT")

    def lam(self, n):
        if self.kind is MemoryKind.SEMI_LONG:
            return float(n) ** self.lambda_exponent
        return 0.0

    def to_dict(self):
        return {"kind": self.kind.value, "lambda_exponent": self.lambda_exponent,
                "label": self.label}

    @classmethod
    def from_dict(cls, payload):
        if isinstance(payload, str):
            name = payload.upper()
            if name in SLM_RULES:
                return cls(MemoryKind.SEMI_LONG, SLM_RULES[name])
            return cls(MemoryKind.parse(payload))
        payload = dict(payload)
        rule = payload.pop("rule", None)
        if rule is not None:
            payload.setdefault("lambda_exponent", SLM_RULES[rule.upper()])
            payload.setdefault("kind", "semi_long")
        if payload.get("lambda_exponent") is not None:
            payload["lambda_exponent"] = parse_exponent(payload["lambda_exponent"])
        return cls(**payload)


@dataclass(frozen=True)
class BlockRule:
    """Block size b = floor(coef * n^exponent)."""

    coef: float
    exponent: float = 0.5

    def size(self, n):
        return int(self.coef * float(n) ** self.exponent)

    def label(self):
        return f"{self.coef:g}n^{self.exponent:g}"


@dataclass(frozen=True)
class StudyConfig:
    """Monte Carlo study configuration (JSON-serializable).

    Study-specific fields: ``eval_points``/``alpha``/``variance_mode`` for
    coverage, ``block_rules``/``nominal_levels``/``weight_support``/
    ``quad_cells`` for size, ``grid_points``/``min_window_count`` for
    estimation.  ``presample`` is the shock history length used by the
    simulations (0 = in-sample innovations only, the tables' convention;
    "full" = complete truncated history).
    """

    study_kind: str
    n: int
    replications: int
    d_values: tuple
    memory_settings: tuple
    bandwidth_exponents: tuple
    rho: float = 0.5
    psi: float = 0.25
    sigma: float = 0.2
    master_seed: int = 20250808
    f_terms: int = 1000
    burn_in: int = 1000
    kernel: str = "epanechnikov"
    grid_points: int = 100
    min_window_count: int = 2
    eval_points: tuple = (0.25, 0.50, 0.75, 0.95)
    alpha: float = 0.05
    variance_mode: str = "uncentered"
    block_rules: tuple = DEFAULT_BLOCK_RULES
    nominal_levels: tuple = DEFAULT_LEVELS
    weight_support: tuple = (-100.0, 100.0)
    quad_cells: int = 1024
    presample: object = 0
    chunk_size: int = _CHUNK_SIZE

    def __post_init__(self):
        if self.study_kind not in ("estimation", "coverage", "size"):
            raise ValueError("study_kind must be estimation, coverage or size")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        object.__setattr__(self, "d_values", tuple(float(v) for v in self.d_values))
        object.__setattr__(self, "memory_settings", tuple(
            ms if isinstance(ms, MemorySetting) else MemorySetting.from_dict(ms)
            for ms in self.memory_settings))
        object.__setattr__(self, "bandwidth_exponents", tuple(
            parse_exponent(e) for e in self.bandwidth_exponents))
        object.__setattr__(self, "block_rules", tuple(
            br if isinstance(br, BlockRule) else BlockRule(*br)
            for br in self.block_rules))
        object.__setattr__(self, "eval_points", tuple(float(v) for v in self.eval_points))
        object.__setattr__(self, "nominal_levels",
                           tuple(float(v) for v in self.nominal_levels))
        object.__setattr__(self, "weight_support",
                           tuple(float(v) for v in self.weight_support))

    def to_dict(self):
        return {
            "study_kind": self.study_kind, "n": self.n,
            "replications": self.replications, "d_values": list(self.d_values),
            "memory_settings": [ms.to_dict() for ms in self.memory_settings],
            "bandwidth_exponents": list(self.bandwidth_exponents),
            "rho": self.rho, "psi": self.psi, "sigma": self.sigma,
            "master_seed": self.master_seed, "f_terms": self.f_terms,
            "burn_in": self.burn_in, "kernel": self.kernel,
            "grid_points": self.grid_points,
            "min_window_count": self.min_window_count,
            "eval_points": list(self.eval_points), "alpha": self.alpha,
            "variance_mode": self.variance_mode,
            "block_rules": [[br.coef, br.exponent] for br in self.block_rules],
            "nominal_levels": list(self.nominal_levels),
            "weight_support": list(self.weight_support),
            "quad_cells": self.quad_cells, "presample": self.presample,
            "chunk_size": self.chunk_size,
        }

    def to_json(self, path=None):
        payload = json.dumps(self.to_dict(), indent=2, sort_keys=True)
        if path is None:
            return payload
        with open(path, "w", newline="\n") as fh:
            fh.write(payload + "\n")

    @classmethod
    def from_dict(cls, payload):
        return cls(**payload)

    @classmethod
    def from_json(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def settings_grid(self):
        """(setting, d) combinations, honoring the memory-kind d ranges:
        long memory rows with d outside [0, 1/2) are skipped."""
        out = []
        for ms in self.memory_settings:
            for d in self.d_values:
                if ms.kind is MemoryKind.LONG and not (0.0 <= d < 0.5):
                    continue
                if ms.kind is MemoryKind.SHORT and d != 0.0:
                    continue
                out.append((ms, d))
        return out

    def spec_for(self, setting, d):
        return TemperedProcessSpec(
            d=d, lam=setting.lam(self.n), n=self.n, memory_kind=setting.kind,
            burn_in=self.burn_in, presample=self.presample)


@dataclass
class StudyResult:
    """Study output: one table per criterion plus raw histogram data and a
    manifest sufficient to reproduce every cell bit for bit."""

    study_kind: str
    tables: dict
    histograms: dict
    config: StudyConfig

    def cell(self, criterion, **keys):
        for row in self.tables[criterion]:
            if all(_match(row.get(k), v) for k, v in keys.items()):
                return row
        raise KeyError(f"no {criterion} cell matching {keys}")

    def manifest(self):
        return self.config.to_dict()


def _match(a, b):
    if isinstance(a, float) and isinstance(b, (int, float)):
        return abs(a - float(b)) < 1e-9
    return a == b


def _simulate_paths(config, rep, grid_specs):
    """All (setting, d) paths for one replication from one innovation draw."""
    if not grid_specs:
        return {}, None
    rng = np.random.default_rng([config.master_seed, rep])
    noise = NoiseConfig(rho=config.rho, psi=config.psi, sigma=config.sigma,
                        seed=config.master_seed)
    probe = config.spec_for(*grid_specs[0])
    xi, eps = simulate_innovations(innovation_length(probe), noise, rng=rng)
    u = simulate_error_ar1(eps, config.psi, n_keep=config.n)
    out = {}
    for ms, d in grid_specs:
        x = simulate_regressor(config.spec_for(ms, d), xi)
        out[(ms.label, d)] = x
    return out, u


def _chunks(config):
    r = config.replications
    cs = config.chunk_size
    return [(lo, min(lo + cs, r)) for lo in range(0, r, cs)]


def _run_chunked(worker, config, threads):
    jobs = [(config, lo, hi) for lo, hi in _chunks(config)]
    if threads and threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(worker, jobs))
    return [worker(j) for j in jobs]



def _batch_se(values):
    """Standard error from chunk-level statistics, ignoring empty chunks."""
    vals = np.asarray(values, dtype=float)
    n = np.count_nonzero(np.isfinite(vals))
    if n < 2:
        return float("nan")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return float(np.nanstd(vals, ddof=1) / np.sqrt(len(vals)))

# ---------------------------------------------------------------- estimation

def _f_evaluator(config):
    # f_terms = 0 selects the zero regression function
    if config.f_terms == 0:
        return lambda x: np.zeros_like(np.asarray(x, dtype=float))
    return sine_series_interpolator(config.f_terms)


def _estimation_chunk(args):
    config, lo, hi = args
    kernel = get_kernel(config.kernel)
    grid = np.linspace(0.0, 1.0, config.grid_points)
    f_eval = _f_evaluator(config)
    ftrue = f_eval(grid)
    grid_specs = config.settings_grid()
    cells = {}
    for ms, d in grid_specs:
        for he in config.bandwidth_exponents:
            cells[(ms.label, d, he)] = [
                np.zeros(config.grid_points), np.zeros(config.grid_points),
                np.zeros(config.grid_points), 0, 0]
    for rep in range(lo, hi):
        xs, u = _simulate_paths(config, rep, grid_specs)
        for ms, d in grid_specs:
            x = xs[(ms.label, d)]
            y = f_eval(x) + config.sigma * u
            for he in config.bandwidth_exponents:
                h = float(config.n) ** he
                U = (x[None, :] - grid[:, None]) / h
                W = kernel(U)
                mass = W.sum(axis=1)
                if np.isfinite(kernel.halfwidth):
                    count = (np.abs(U) <= kernel.halfwidth).sum(axis=1)
                else:
                    count = np.where(mass > 0, config.min_window_count, 0)
                ok = count >= config.min_window_count
                acc = cells[(ms.label, d, he)]
                if np.any(ok):
                    e = (W[ok] @ y) / mass[ok] - ftrue[ok]
                    acc[0][ok] += 1.0
                    acc[1][ok] += e
                    acc[2][ok] += e * e
                acc[3] += int(np.count_nonzero(mass == 0))
                acc[4] += int(np.count_nonzero(~ok))
    return cells


def _point_stats(cnt, s1, s2):
    ok = cnt >= 2
    if not np.any(ok):
        return np.nan, np.nan, np.nan
    mean = s1[ok] / cnt[ok]
    var = (s2[ok] - cnt[ok] * mean ** 2) / (cnt[ok] - 1)
    var = np.maximum(var, 0.0)
    bias = float(np.mean(mean))
    std = float(np.mean(np.sqrt(var)))
    rmse = float(np.mean(np.sqrt(s2[ok] / cnt[ok])))
    return bias, std, rmse


def run_estimation_study(config, threads=1):
    """Bias / Std / RMSE of the kernel regression estimator over an
    equally spaced grid on [0, 1], averaged across grid points.

    A (replication, point) pair enters the averages only when its kernel
    window holds at least ``min_window_count`` observations; the zero-mass
    and excluded fractions are reported per cell, and cells with more than
    1% zero-mass pairs are flagged.
    """
    if config.study_kind != "estimation":
        raise ValueError("config.study_kind must be 'estimation'")
    payloads = _run_chunked(_estimation_chunk, config, threads)
    tables = {"bias": [], "std": [], "rmse": []}
    for ms, d in config.settings_grid():
        for he in config.bandwidth_exponents:
            key = (ms.label, d, he)
            tot = [np.zeros(config.grid_points), np.zeros(config.grid_points),
                   np.zeros(config.grid_points), 0, 0]
            chunk_stats = []
            for payload in payloads:
                c = payload[key]
                for i in range(3):
                    tot[i] += c[i]
                tot[3] += c[3]
                tot[4] += c[4]
                chunk_stats.append(_point_stats(c[0], c[1], c[2]))
            bias, std, rmse = _point_stats(tot[0], tot[1], tot[2])
            errs = [_batch_se([cs[i] for cs in chunk_stats])
                    for i in range(3)]
            pairs = config.replications * config.grid_points
            zero_frac = tot[3] / pairs
            excl_frac = tot[4] / pairs
            base = {"memory": ms.label, "bandwidth_rule": f"n^{he!r}",
                    "bandwidth_exponent": he, "d": d,
                    "zero_mass_frac": zero_frac, "excluded_frac": excl_frac,
                    "flagged": bool(zero_frac > 0.01)}
            for name, value, err in (("bias", bias, errs[0]),
                                     ("std", std, errs[1]),
                                     ("rmse", rmse, errs[2])):
                tables[name].append(dict(base, value=value, mc_error=err))
    return StudyResult("estimation", tables, {}, config)


# ------------------------------------------------------------------ coverage

def _coverage_chunk(args):
    config, lo, hi = args
    kernel = get_kernel(config.kernel)
    d1, k2 = kernel.moments()
    z = norm.ppf(1.0 - config.alpha / 2.0)
    f_eval = _f_evaluator(config)
    pts = np.asarray(config.eval_points)
    fpts = f_eval(pts)
    grid_specs = config.settings_grid()
    npts = pts.shape[0]
    cells = {}
    for ms, d in grid_specs:
        for he in config.bandwidth_exponents:
            cells[(ms.label, d, he)] = [np.zeros(npts, dtype=int),
                                        np.zeros(npts, dtype=int),
                                        np.zeros(npts)]
    for rep in range(lo, hi):
        xs, u = _simulate_paths(config, rep, grid_specs)
        for ms, d in grid_specs:
            x = xs[(ms.label, d)]
            y = f_eval(x) + config.sigma * u
            for he in config.bandwidth_exponents:
                h = float(config.n) ** he
                if config.variance_mode == "uncentered":
                    r2 = y * y
                else:
                    r2 = (y - fitted_values(x, y, h, kernel)) ** 2
                W = kernel((x[None, :] - pts[:, None]) / h)
                mass = W.sum(axis=1)
                ok = mass > 0
                acc = cells[(ms.label, d, he)]
                if not np.any(ok):
                    continue
                fh = (W[ok] @ y) / mass[ok]
                s2 = (W[ok] @ r2) / mass[ok]
                half = z * np.sqrt(s2 * k2 / (mass[ok] * d1))
                covered = np.abs(fh - fpts[ok]) <= half
                acc[0][ok] += 1
                acc[1][np.nonzero(ok)[0][covered]] += 1
                acc[2][ok] += 2.0 * half
    return cells


def run_coverage_study(config, alpha=None, threads=1):
    """Empirical coverage and expected length of the pointwise confidence
    interval at the requested x points.

    Coverage counts a replication as a miss when the point has no kernel
    mass (undefined interval); expected length averages over the defined
    replications.  ``variance_mode="uncentered"`` (the default) builds the
    intervals from the local second moment of y, which is the convention
    that reproduces the benchmark coverage table; "centered" uses the
    residual variance around the leave-in fit.
    """
    if config.study_kind != "coverage":
        raise ValueError("config.study_kind must be 'coverage'")
    if alpha is not None and alpha != config.alpha:
        config = StudyConfig.from_dict(dict(config.to_dict(), alpha=alpha))
    # alpha = 1 is the degenerate zero-width interval (coverage 0, length 0)
    if config.alpha > 1.0 or config.alpha <= 0.0:
        raise ValueError("alpha must be in (0, 1]")
    payloads = _run_chunked(_coverage_chunk, config, threads)
    chunk_sizes = [hi - lo for lo, hi in _chunks(config)]
    tables = {"coverage": [], "length": []}
    r = config.replications
    for ms, d in config.settings_grid():
        for he in config.bandwidth_exponents:
            key = (ms.label, d, he)
            ndef = np.zeros(len(config.eval_points), dtype=int)
            ncov = np.zeros(len(config.eval_points), dtype=int)
            slen = np.zeros(len(config.eval_points))
            chunk_cov = []
            chunk_len = []
            for payload, cs in zip(payloads, chunk_sizes):
                c = payload[key]
                ndef += c[0]
                ncov += c[1]
                slen += c[2]
                chunk_cov.append(c[1] / cs)
                with np.errstate(invalid="ignore", divide="ignore"):
                    chunk_len.append(np.where(c[0] > 0, c[2] / np.maximum(c[0], 1), np.nan))
            for i, x0 in enumerate(config.eval_points):
                cov = ncov[i] / r
                ln = slen[i] / ndef[i] if ndef[i] else np.nan
                cov_err = _batch_se([cc[i] for cc in chunk_cov])
                len_err = _batch_se([cl[i] for cl in chunk_len])
                base = {"memory": ms.label, "bandwidth_rule": f"n^{he!r}",
                        "bandwidth_exponent": he, "d": d, "x": x0,
                        "defined_frac": ndef[i] / r}
                tables["coverage"].append(dict(base, value=cov, mc_error=cov_err))
                tables["length"].append(dict(base, value=ln, mc_error=len_err))
    return StudyResult("coverage", tables, {}, config)


# ---------------------------------------------------------------------- size

def _size_chunk(args):
    config, lo, hi = args
    kernel = get_kernel(config.kernel)
    weight = uniform_weight(*config.weight_support)
    family = linear_family()
    grid_specs = config.settings_grid()
    cells = {}
    tnorms = {}
    for ms, d in grid_specs:
        for he in config.bandwidth_exponents:
            tnorms[(ms.label, d, he)] = []
            for br in config.block_rules:
                for lv in config.nominal_levels:
                    cells[(ms.label, d, he, br.label(), lv)] = 0
    for rep in range(lo, hi):
        xs, u = _simulate_paths(config, rep, grid_specs)
        for ms, d in grid_specs:
            x = xs[(ms.label, d)]
            y = x + config.sigma * u  # H0: theta = (0, 1)
            lam = ms.lam(config.n)
            theta_full, valid_full, _ = _sliding_theta(x, y, family.degree, config.n)
            if not valid_full[0]:
                raise ValueError("degenerate full-sample design in size study")
            for he in config.bandwidth_exponents:
                h = float(config.n) ** he
                t_raw = t_statistic(x, y, family, theta_full[0], h, kernel,
                                    weight, config.quad_cells)
                t_norm, _ = normalized_statistic(t_raw, config.n, lam, d, h, ms.kind)
                tnorms[(ms.label, d, he)].append(t_norm)
                for br in config.block_rules:
                    b = br.size(config.n)
                    h_b = float(b) ** he
                    lam_b = (float(b) ** ms.lambda_exponent
                             if ms.kind is MemoryKind.SEMI_LONG else 0.0)
                    vals = subsample_statistics(
                        x, y, family, b, h_b, lam_b, d, ms.kind, kernel, weight,
                        config.quad_cells)
                    for lv in config.nominal_levels:
                        if t_norm > subsample_quantile(vals, lv):
                            cells[(ms.label, d, he, br.label(), lv)] += 1
    return cells, tnorms


def run_size_study(config, nominal_levels=None, threads=1):
    """Empirical size: rejection frequency of the subsampled specification
    test on data generated under the linear null y = x + sigma*u."""
    if config.study_kind != "size":
        raise ValueError("config.study_kind must be 'size'")
    if nominal_levels is not None:
        config = StudyConfig.from_dict(
            dict(config.to_dict(), nominal_levels=list(nominal_levels)))
    payloads = _run_chunked(_size_chunk, config, threads)
    tables = {"size": []}
    histograms = {}
    r = config.replications
    chunk_sizes = [hi - lo for lo, hi in _chunks(config)]
    for ms, d in config.settings_grid():
        for he in config.bandwidth_exponents:
            hkey = (ms.label, d, he)
            histograms[hkey] = np.concatenate(
                [np.asarray(p[1][hkey]) for p in payloads])
            for br in config.block_rules:
                for lv in config.nominal_levels:
                    key = (ms.label, d, he, br.label(), lv)
                    count = sum(p[0][key] for p in payloads)
                    rates = [p[0][key] / cs for p, cs in zip(payloads, chunk_sizes)]
                    err = _batch_se(rates)
                    tables["size"].append({
                        "memory": ms.label, "bandwidth_rule": f"n^{he!r}",
                        "bandwidth_exponent": he, "d": d,
                        "block_rule": br.label(), "block_size": br.size(config.n),
                        "level": lv, "value": count / r, "mc_error": err})
    return StudyResult("size", tables, histograms, config)


def run_study(config, threads=1):
    runner = {"estimation": run_estimation_study,
              "coverage": run_coverage_study,
              "size": run_size_study}[config.study_kind]
    return runner(config, threads=threads)


# -------------------------------------------------------------------- export

_COLUMNS = {
    "bias": ("memory", "bandwidth_rule", "d", "value", "mc_error",
             "zero_mass_frac", "excluded_frac"),
    "std": ("memory", "bandwidth_rule", "d", "value", "mc_error",
            "zero_mass_frac", "excluded_frac"),
    "rmse": ("memory", "bandwidth_rule", "d", "value", "mc_error",
             "zero_mass_frac", "excluded_frac"),
    "coverage": ("memory", "bandwidth_rule", "d", "x", "value", "mc_error",
                 "defined_frac"),
    "length": ("memory", "bandwidth_rule", "d", "x", "value", "mc_error",
               "defined_frac"),
    "size": ("memory", "bandwidth_rule", "d", "block_rule", "level", "value",
             "mc_error"),
}


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def export_study(result, outdir):
    """Write one CSV per criterion, histogram data and the JSON manifest.

    Output is byte-deterministic given the result, so re-running a study
    from its manifest re-exports identical files.
    """
    import os
    os.makedirs(outdir, exist_ok=True)
    written = []
    for criterion, rows in result.tables.items():
        cols = _COLUMNS[criterion]
        path = os.path.join(outdir, f"{criterion}.csv")
        with open(path, "w", newline="\n") as fh:
            fh.write(",".join(cols) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(row.get(c, "")) for c in cols) + "\n")
        written.append(path)
    for (label, d, he), values in result.histograms.items():
        path = os.path.join(outdir, f"histogram_{label}_d{d:g}_h{-he:g}.csv")
        with open(path, "w", newline="\n") as fh:
            fh.write("t_normalized\n")
            for v in values:
                fh.write(repr(float(v)) + "\n")
        written.append(path)
    mpath = os.path.join(outdir, "manifest.json")
    with open(mpath, "w", newline="\n") as fh:
        fh.write(json.dumps(result.manifest(), indent=2, sort_keys=True) + "\n")
    written.append(mpath)
    return written
