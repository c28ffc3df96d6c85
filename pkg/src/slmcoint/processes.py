"""Simulation of long-memory and tempered (semi-long-memory) regressor processes.

The regressor is a partial sum of moving-average shocks,

    x_k = sum_{s<=k} X(s),      X(s) = sum_{j=0}^{J} phi(j) * xi(s - j),

where phi(j) = b_d(j) under long memory and phi(j) = exp(-lam*j) * b_d(j)
under semi-long memory.  The coefficients b_d(j) are the fractional
(binomial) weights of (1 - z)^{-d}.  Endogeneity between the regressor
innovations xi and the error innovations eps is induced through their
contemporaneous correlation rho.
"""

import enum
import json
from dataclasses import dataclass, asdict
from functools import lru_cache

import numpy as np
from scipy.signal import fftconvolve, lfilter

DEFAULT_BURN_IN = 1000
DEFAULT_SINE_TERMS = 1000
_TEMPER_TRUNC_TOL = 1e-12
_TEMPER_LAG_FLOOR = 50


class MemoryKind(str, enum.Enum):
    LONG = "long"
    SEMI_LONG = "semi_long"
    SHORT = "short"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "_")
        aliases = {
            "lm": cls.LONG, "long": cls.LONG, "long_memory": cls.LONG,
            "slm": cls.SEMI_LONG, "semi_long": cls.SEMI_LONG,
            "semi_long_memory": cls.SEMI_LONG, "semilong": cls.SEMI_LONG,
            "short": cls.SHORT, "sm": cls.SHORT, "short_memory": cls.SHORT,
        }
        if key not in aliases:
            raise ValueError(f"unknown memory kind: {value!r}")
        return aliases[key]


def frac_coeffs(d, n_lags):
    """Fractional MA coefficients b_d(j) = Gamma(j+d) / (Gamma(d) Gamma(j+1)).

    Computed by the stable recursion b(0) = 1, b(j) = b(j-1) * (j-1+d) / j,
    which avoids Gamma overflow and matches the binomial expansion of
    (1-z)^{-d}.  For d = 0 the result is the delta sequence; d = 1 gives the
    all-ones (cumulative sum) filter.

    Parameters
    ----------
    d : float
        Fractional differencing parameter.  Negative integers are rejected
        (pole of Gamma(d)).
    n_lags : int
        Highest lag J; the returned array has length J + 1.
    """
    if n_lags < 0:
        raise ValueError("n_lags must be >= 0")
    d = float(d)
    if d < 0 and d == int(d):
        raise ValueError(f"d={d} is a negative integer (Gamma pole)")
    out = np.empty(n_lags + 1)
    out[0] = 1.0
    if n_lags:
        j = np.arange(1, n_lags + 1)
        out[1:] = np.cumprod((j - 1.0 + d) / j)
    return out


def tempered_coeffs(d, lam, n_lags):
    """Exponentially tempered fractional coefficients phi(j) = e^{-lam*j} b_d(j)."""
    if lam < 0:
        raise ValueError("lam must be >= 0")
    coeffs = frac_coeffs(d, n_lags)
    if lam > 0:
        coeffs = coeffs * np.exp(-lam * np.arange(n_lags + 1))
    return coeffs


def default_truncation(n, burn_in, memory_kind, lam=0.0):
    """Default MA truncation lag: n + burn_in, shortened under tempering.

    Under semi-long memory the exponential factor makes lags beyond
    -ln(tol)/lam negligible, so the truncation is capped there (plus a
    small lag floor).
    """
    kind = MemoryKind.parse(memory_kind)
    base = n + burn_in
    if kind is MemoryKind.SEMI_LONG and lam > 0:
        capped = int(np.ceil(-np.log(_TEMPER_TRUNC_TOL) / lam)) + _TEMPER_LAG_FLOOR
        return min(base, capped)
    return base


@dataclass(frozen=True)
class TemperedProcessSpec:
    """Parameters of a shock/regressor process.

    ``presample`` controls how much innovation history feeds the first
    shock X(1): ``"full"`` gives every shock its complete truncated
    history, while an integer gives that many pre-sample lags (0 builds
    the shocks from in-sample innovations only).
    """

    d: float
    lam: float
    n: int
    memory_kind: MemoryKind
    truncation: int = None
    burn_in: int = DEFAULT_BURN_IN
    presample: object = "full"

    def __post_init__(self):
        object.__setattr__(self, "memory_kind", MemoryKind.parse(self.memory_kind))
        kind = self.memory_kind
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if kind is MemoryKind.LONG:
            if not (0.0 <= self.d < 0.5):
                raise ValueError("long memory requires 0 <= d < 1/2")
            if self.lam != 0.0:
                raise ValueError("long memory requires lam = 0")
        elif kind is MemoryKind.SEMI_LONG:
            if self.d < 0.0:
                raise ValueError("semi-long memory requires d >= 0")
            if self.lam <= 0.0:
                raise ValueError("semi-long memory requires lam > 0")
        else:
            if self.d != 0.0:
                raise ValueError("short memory requires d = 0")
        if self.truncation is None:
            object.__setattr__(
                self, "truncation",
                default_truncation(self.n, self.burn_in, kind, self.lam))
        if self.truncation < 0:
            raise ValueError("truncation must be >= 0")
        if self.presample != "full":
            p = int(self.presample)
            if p < 0:
                raise ValueError("presample must be 'full' or a count >= 0")
            object.__setattr__(self, "presample", p)

    @property
    def history_lags(self):
        return self.truncation if self.presample == "full" else self.presample

    def coefficients(self):
        if self.memory_kind is MemoryKind.SHORT:
            return np.ones(1)
        return tempered_coeffs(self.d, self.lam, self.truncation)

    def to_dict(self):
        out = asdict(self)
        out["memory_kind"] = self.memory_kind.value
        return out

    @classmethod
    def from_dict(cls, payload):
        return cls(**payload)


@dataclass(frozen=True)
class NoiseConfig:
    """Error-process parameters: corr(xi, eps) = rho, AR(1) coefficient psi,
    error scale sigma, RNG seed."""

    rho: float
    psi: float
    sigma: float
    seed: int

    def __post_init__(self):
        if abs(self.rho) > 1.0:
            raise ValueError("|rho| must be <= 1 (covariance not psd otherwise)")
        if abs(self.psi) >= 1.0:
            raise ValueError("|psi| < 1 required (stationary AR error)")
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, payload):
        return cls(**payload)


def simulate_innovations(n_total, noise, rng=None):
    """Draw correlated innovation streams (xi, eps).

    xi is i.i.d. standard normal and eps = rho*xi + sqrt(1-rho^2)*e with e an
    independent standard normal, so both streams have unit variance and
    corr(xi_k, eps_k) = rho.  Deterministic given the seed.
    """
    if n_total < 1:
        raise ValueError("n_total must be >= 1")
    if rng is None:
        rng = np.random.default_rng(noise.seed)
    xi = rng.standard_normal(n_total)
    e = rng.standard_normal(n_total)
    eps = noise.rho * xi + np.sqrt(1.0 - noise.rho ** 2) * e
    return xi, eps


def simulate_regressor(spec, xi):
    """Partial-sum regressor x_k built from the innovation stream xi.

    The trailing ``spec.n`` entries of xi are the in-sample innovations;
    the ``spec.history_lags`` entries before them supply the pre-sample
    shock history.  Shocks are computed by FFT convolution with the
    (tempered) fractional coefficients and then cumulated.
    """
    xi = np.asarray(xi, dtype=float)
    hist = spec.history_lags
    need = spec.n + hist
    if xi.shape[0] < need:
        raise ValueError(f"innovation stream too short: need >= {need}, got {xi.shape[0]}")
    phi = spec.coefficients()
    # trailing zero coefficients (delta case, underflowed tempered tails)
    # contribute nothing; trimming keeps equal-coefficient specs bit-identical
    nz = np.nonzero(phi)[0]
    phi = phi[:int(nz[-1]) + 1] if nz.size else phi[:1]
    window = xi[-need:]
    if phi.shape[0] == 1:
        shocks = phi[0] * window[hist:hist + spec.n]
    else:
        shocks = fftconvolve(window, phi)[hist:hist + spec.n]
    return np.cumsum(shocks)


def simulate_error_ar1(eps, psi, n_keep=None):
    """AR(1) error u_k = psi*u_{k-1} + eps_k started at zero.

    The recursion runs over the whole eps stream; the last ``n_keep``
    values are returned, so any leading entries act as burn-in and u
    effectively starts from its stationary distribution.
    """
    if abs(psi) >= 1.0:
        raise ValueError("|psi| < 1 required")
    eps = np.asarray(eps, dtype=float)
    u = lfilter([1.0], [1.0, -psi], eps)
    if n_keep is None:
        return u
    if not (1 <= n_keep <= eps.shape[0]):
        raise ValueError("n_keep out of range")
    return u[-n_keep:]


def regression_function_sine(x, terms=DEFAULT_SINE_TERMS):
    """Alternating sine-series regression function.

    f(x) = sum_{j=1}^{terms} (-1)^{j+1} sin(j*pi*x) / j^2; the truncation
    error of the infinite series is bounded by sum_{j>terms} j^{-2} < 1/terms.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    xv = np.atleast_1d(x)
    out = np.zeros_like(xv)
    # chunk the series to bound the (n_points, terms) workspace
    step = max(1, int(2e6 / max(1, xv.size)))
    for lo in range(1, terms + 1, step):
        j = np.arange(lo, min(lo + step, terms + 1), dtype=float)
        signs = np.where(j % 2 == 1, 1.0, -1.0)
        out += np.sin(np.outer(xv, j) * np.pi) @ (signs / j ** 2)
    return float(out[0]) if scalar else out


@lru_cache(maxsize=4)
def _sine_table(terms, resolution):
    grid = np.linspace(-1.0, 1.0, resolution)
    return grid, regression_function_sine(grid, terms)


def sine_series_interpolator(terms=DEFAULT_SINE_TERMS, resolution=200001):
    """Fast evaluator of regression_function_sine via one-period interpolation.

    The series has period 2, so values are looked up on a dense table over
    [-1, 1].  Interpolation error is below 2e-4 at the default resolution;
    intended for Monte Carlo harness use where f is evaluated millions of
    times.
    """
    grid, table = _sine_table(terms, resolution)

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        folded = np.mod(x + 1.0, 2.0) - 1.0
        return np.interp(folded, grid, table)

    return evaluate


@dataclass
class SimulatedPath:
    """One model draw: regressor x, error u, response y = f(x) + sigma*u."""

    x: np.ndarray
    u: np.ndarray
    y: np.ndarray
    spec: TemperedProcessSpec
    noise: NoiseConfig

    def to_csv(self, path):
        with open(path, "w", newline="\n") as fh:
            fh.write("k,x,u,y\n")
            for k in range(self.x.shape[0]):
                fh.write(f"{k + 1},{float(self.x[k])!r},"
                         f"{float(self.u[k])!r},{float(self.y[k])!r}\n")

    def manifest(self):
        return {"spec": self.spec.to_dict(), "noise": self.noise.to_dict()}

    def write_manifest(self, path):
        with open(path, "w", newline="\n") as fh:
            json.dump(self.manifest(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @staticmethod
    def read_csv(path):
        data = np.genfromtxt(path, delimiter=",", names=True)
        return data["x"], data["u"], data["y"]


def innovation_length(spec):
    """Canonical innovation draw length: n + burn_in history for the error
    plus a full-length shock history window.

    The length depends only on (n, burn_in), so paths simulated under
    different memory settings from the same seed share innovations draw
    for draw.
    """
    return 2 * (spec.n + spec.burn_in)


def simulate_model(spec, noise, f=None, f_eval=None, rng=None):
    """Full model draw y_k = f(x_k) + sigma * u_k as a SimulatedPath.

    Both innovation streams come from one seeded generator, so endogeneity
    (corr(xi, eps) = rho) holds by construction and re-simulation with the
    same spec/noise reproduces the path bit for bit.  ``f_eval`` overrides
    ``f`` with a pre-built evaluator (e.g. an interpolator).
    """
    xi, eps = simulate_innovations(innovation_length(spec), noise, rng=rng)
    x = simulate_regressor(spec, xi)
    u = simulate_error_ar1(eps, noise.psi, n_keep=spec.n)
    if f_eval is not None:
        fx = np.asarray(f_eval(x), dtype=float)
    elif f is not None:
        fx = np.asarray(f(x), dtype=float)
    else:
        fx = np.zeros_like(x)
    y = fx + noise.sigma * u
    return SimulatedPath(x=x, u=u, y=y, spec=spec, noise=noise)


def scale_dn(n, lam, d, memory_kind):
    """Normalization d_N of the partial-sum regressor.

    sqrt(n)/lam^d under semi-long memory, n^{d+1/2} under long memory and
    sqrt(n) under short memory (unit long-run variance convention).
    """
    kind = MemoryKind.parse(memory_kind)
    if kind is MemoryKind.SEMI_LONG:
        if lam <= 0:
            raise ValueError("semi-long memory scale requires lam > 0")
        return np.sqrt(n) / lam ** d
    if kind is MemoryKind.LONG:
        return float(n) ** (d + 0.5)
    return np.sqrt(n)
