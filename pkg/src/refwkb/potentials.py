"""Potential wells consumed by the rest of the package.

All wells are normalized to a sole minimum V(0) = 0.  Finite wells rise
monotonically on each flank toward a height U; near the origin every well
behaves like k^2 x^2.  Models are immutable and their ``evaluate`` /
``derivative`` callables accept scalars or numpy arrays.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from .errors import ConfigError
from .validation import check_positive

__all__ = [
    "PadeParams",
    "PotentialModel",
    "make_tanh2_well",
    "make_harmonic",
    "generate_from_pade",
    "load_tabulated",
    "load_tabulated_csv",
    "from_spec",
    "turning_points",
    "s_map",
]

# number of (tau, x) pairs precomputed for inverting x(s)
_TABLE_SIZE = 4096
# tanh(tau) saturates to within ~1e-15 of 1 here; larger adds nothing
_TAU_MAX = 18.0


@dataclass(frozen=True)
class PadeParams:
    """Coefficients of the rational slope ds/dx = k(1-c s^2)/(1+b s+g s^2)."""

    k: float
    c: float
    b: float = 0.0
    g: float = 0.0

    def __post_init__(self):
        check_positive("k", self.k)

    @property
    def well_height(self) -> float:
        """U = 1/c for a finite well."""
        if self.c <= 0.0:
            return math.inf
        return 1.0 / self.c

    def sigma(self, s):
        """The slope ds/dx evaluated at s."""
        s = np.asarray(s, dtype=float)
        return self.k * (1.0 - self.c * s * s) / (1.0 + self.b * s + self.g * s * s)

    def validate_denominator(self) -> None:
        """Reject parameter sets whose denominator vanishes on the well.

        The denominator 1 + b s + g s^2 must stay strictly positive for
        s in [-sqrt(U), sqrt(U)].
        """
        if self.c <= 0.0:
            raise ValueError("finite-well parameters require c > 0")
        smax = math.sqrt(self.well_height)
        s = np.linspace(-smax, smax, 2001)
        den = 1.0 + self.b * s + self.g * s * s
        if den.min() <= 0.0:
            raise ValueError(
                "denominator 1 + b*s + g*s^2 has a zero inside "
                f"[-sqrt(U), sqrt(U)] = [{-smax:g}, {smax:g}]"
            )


@dataclass(frozen=True, eq=False)
class PotentialModel:
    """An evaluatable 1-D well with minimum 0 at x = 0.

    ``height_U`` is ``math.inf`` for oscillator-like wells.  ``derivative``
    returns dV/dx and is available for every built-in kind.
    """

    evaluate: Callable
    beta: float
    curvature_k: float
    height_U: float
    kind: str
    derivative: Callable | None = None
    symmetric: bool = False
    pade_params: PadeParams | None = None
    # (x shift, V shift) applied when normalizing tabulated input
    normalization_shift: tuple[float, float] = (0.0, 0.0)
    meta: dict = field(default_factory=dict)

    def __call__(self, x):
        return self.evaluate(x)

    @property
    def finite(self) -> bool:
        return math.isfinite(self.height_U)


def make_tanh2_well(U: float, p: float, beta: float) -> PotentialModel:
    """Basic finite well V = U tanh^2(p x); curvature k = p sqrt(U)."""
    U = check_positive("U", U)
    p = check_positive("p", p)
    beta = check_positive("beta", beta)

    def evaluate(x):
        t = np.tanh(p * np.asarray(x, dtype=float))
        return U * t * t

    def derivative(x):
        px = p * np.asarray(x, dtype=float)
        t = np.tanh(px)
        return 2.0 * U * p * t * (1.0 - t * t)

    k = p * math.sqrt(U)
    return PotentialModel(
        evaluate=evaluate,
        derivative=derivative,
        beta=beta,
        curvature_k=k,
        height_U=U,
        kind="tanh2",
        symmetric=True,
        pade_params=PadeParams(k=k, c=1.0 / U, b=0.0, g=0.0),
        meta={"U": U, "p": p},
    )


def make_harmonic(kcoef: float, beta: float) -> PotentialModel:
    """Parabolic well V = k^2 x^2 (infinite height)."""
    kcoef = check_positive("kcoef", kcoef)
    beta = check_positive("beta", beta)

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        return (kcoef * kcoef) * x * x

    def derivative(x):
        x = np.asarray(x, dtype=float)
        return 2.0 * kcoef * kcoef * x

    return PotentialModel(
        evaluate=evaluate,
        derivative=derivative,
        beta=beta,
        curvature_k=kcoef,
        height_U=math.inf,
        kind="harmonic",
        symmetric=True,
        meta={"k": kcoef},
    )


def _x_of_tau(tau, params: PadeParams):
    """Closed-form x(s) expressed through tau = artanh(s/sqrt(U)).

    With s = sqrt(U) tanh(tau) the antiderivative of (1+b t+g t^2)/(k(1-c t^2))
    becomes fully cancellation-free:

        x = [ -(g/c) sqrt(U) tanh(tau) + (1 + g/c) tau / sqrt(c)
              + (b/c) log(cosh(tau)) ] / k
    """
    tau = np.asarray(tau, dtype=float)
    c, b, g, k = params.c, params.b, params.g, params.k
    su = math.sqrt(params.well_height)
    # log(cosh) without overflow
    at = np.abs(tau)
    logcosh = at + np.log1p(np.exp(-2.0 * at)) - math.log(2.0)
    return (-(g / c) * su * np.tanh(tau)
            + (1.0 + g / c) * tau / math.sqrt(c)
            + (b / c) * logcosh) / k


def generate_from_pade(params: PadeParams, beta: float) -> PotentialModel:
    """Construct the finite well implied by the rational slope parameters.

    Integrates dx/ds = 1/sigma in closed form, precomputes a monotone
    (x, s) table, and inverts it with interpolation plus Newton polishing
    so that evaluate() is cheap inside quadrature loops.
    """
    beta = check_positive("beta", beta)
    params.validate_denominator()
    U = params.well_height
    su = math.sqrt(U)

    tau_tab = np.linspace(-_TAU_MAX, _TAU_MAX, _TABLE_SIZE)
    x_tab = _x_of_tau(tau_tab, params)
    s_tab = su * np.tanh(tau_tab)
    if np.any(np.diff(x_tab) <= 0.0):
        raise ValueError("x(s) is not strictly increasing; invalid parameters")
    x_max = x_tab[-1]
    x_min = x_tab[0]
    s_hi = s_tab[-1]
    s_lo = s_tab[0]

    def s_of_x(x):
        x = np.asarray(x, dtype=float)
        s = np.interp(x, x_tab, s_tab)
        # two Newton steps: ds = (x - x(s)) * sigma(s)
        for _ in range(2):
            tau = np.arctanh(np.clip(s / su, -1.0 + 1e-16, 1.0 - 1e-16))
            s = s + (x - _x_of_tau(tau, params)) * params.sigma(s)
            s = np.clip(s, s_lo, s_hi)
        return np.where(x >= x_max, s_hi, np.where(x <= x_min, s_lo, s))

    def evaluate(x):
        s = s_of_x(x)
        return s * s

    def derivative(x):
        s = s_of_x(x)
        return 2.0 * s * params.sigma(s)

    return PotentialModel(
        evaluate=evaluate,
        derivative=derivative,
        beta=beta,
        curvature_k=params.k,
        height_U=U,
        kind="pade_generated",
        symmetric=(params.b == 0.0),
        pade_params=params,
        meta={"x_table_max": float(x_max)},
    )


def load_tabulated(grid, values, beta: float) -> PotentialModel:
    """Build a well from sampled (x, V) data.

    The samples are shifted so the (parabola-refined) minimum sits at
    x = 0 with V = 0; the applied shift is kept on the model.  Each flank
    is interpolated with a monotone cubic (PCHIP) so no spurious minima
    appear between nodes.
    """
    beta = check_positive("beta", beta)
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values, dtype=float)
    if grid.ndim != 1 or grid.shape != values.shape:
        raise ValueError("grid and values must be 1-D arrays of equal length")
    if grid.size < 16:
        raise ValueError(f"tabulated potential needs >= 16 points, got {grid.size}")
    if np.any(np.diff(grid) <= 0.0):
        raise ValueError("grid positions must be strictly increasing")

    j = int(np.argmin(values))
    if j == 0 or j == values.size - 1:
        raise ValueError("potential minimum must lie strictly inside the grid")
    # refine the vertex with the parabola through the three lowest nodes
    xs = grid[j - 1:j + 2]
    vs = values[j - 1:j + 2]
    a, b_lin, c0 = np.polyfit(xs, vs, 2)
    if a <= 0.0:
        raise ValueError("samples do not define a parabolic minimum")
    x0 = -b_lin / (2.0 * a)
    v0 = np.polyval([a, b_lin, c0], x0)

    x = grid - x0
    v = np.maximum(values - v0, 0.0)

    left_x = np.concatenate([x[x < 0.0], [0.0]])
    left_v = np.concatenate([v[x < 0.0], [0.0]])
    right_x = np.concatenate([[0.0], x[x > 0.0]])
    right_v = np.concatenate([[0.0], v[x > 0.0]])
    left = PchipInterpolator(left_x, left_v, extrapolate=False)
    right = PchipInterpolator(right_x, right_v, extrapolate=False)
    dleft = left.derivative()
    dright = right.derivative()

    def evaluate(xq):
        xq = np.asarray(xq, dtype=float)
        out = np.where(xq < 0.0,
                       left(np.clip(xq, left_x[0], 0.0)),
                       right(np.clip(xq, 0.0, right_x[-1])))
        return np.asarray(out, dtype=float)

    def derivative(xq):
        xq = np.asarray(xq, dtype=float)
        out = np.where(xq < 0.0,
                       dleft(np.clip(xq, left_x[0], 0.0)),
                       dright(np.clip(xq, 0.0, right_x[-1])))
        # clamped regions are flat
        out = np.where((xq < left_x[0]) | (xq > right_x[-1]), 0.0, out)
        return np.asarray(out, dtype=float)

    height = float(min(v[0], v[-1]))
    return PotentialModel(
        evaluate=evaluate,
        derivative=derivative,
        beta=beta,
        curvature_k=math.sqrt(a),
        height_U=height,
        kind="tabulated",
        symmetric=False,
        normalization_shift=(float(x0), float(v0)),
        meta={"n_points": int(grid.size)},
    )


def load_tabulated_csv(path: str, beta: float) -> PotentialModel:
    """Read a two-column (x, V) CSV file and build a tabulated well."""
    xs, vs = [], []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                xs.append(float(row[0]))
                vs.append(float(row[1]))
            except (ValueError, IndexError) as exc:
                raise ConfigError(f"{path}: bad CSV row {row!r}") from exc
    return load_tabulated(np.asarray(xs), np.asarray(vs), beta)


_SPEC_KEYS = {
    "tanh2": {"kind", "beta", "U", "p"},
    "harmonic": {"kind", "beta", "k"},
    "pade": {"kind", "beta", "k", "c", "b", "g"},
    "tabulated": {"kind", "beta", "grid_file"},
}


def from_spec(spec: dict) -> PotentialModel:
    """Build a model from a JSON-style potential specification."""
    if not isinstance(spec, dict):
        raise ConfigError(f"potential spec must be an object, got {type(spec).__name__}")
    kind = spec.get("kind")
    if kind not in _SPEC_KEYS:
        raise ConfigError(
            f"unknown potential kind {kind!r}; expected one of {sorted(_SPEC_KEYS)}"
        )
    unknown = set(spec) - _SPEC_KEYS[kind]
    if unknown:
        raise ConfigError(
            f"unknown key(s) {sorted(unknown)} in {kind!r} potential spec"
        )
    if "beta" not in spec:
        raise ConfigError("potential spec is missing required key 'beta'")
    beta = spec["beta"]
    try:
        if kind == "tanh2":
            return make_tanh2_well(spec["U"], spec["p"], beta)
        if kind == "harmonic":
            return make_harmonic(spec["k"], beta)
        if kind == "pade":
            params = PadeParams(k=spec["k"], c=spec["c"],
                                b=spec.get("b", 0.0), g=spec.get("g", 0.0))
            return generate_from_pade(params, beta)
        return load_tabulated_csv(spec["grid_file"], beta)
    except KeyError as exc:
        raise ConfigError(f"{kind!r} potential spec is missing key {exc}") from None
    except (ValueError, OSError) as exc:
        raise ConfigError(f"invalid {kind!r} potential spec: {exc}") from exc


def _bracket_flank(model: PotentialModel, eps: float, sign: float) -> float:
    """Find an |x| on the given flank with V(x) >= eps, by doubling."""
    x = sign * math.sqrt(eps) / model.curvature_k
    for _ in range(200):
        if float(model.evaluate(x)) >= eps:
            return x
        x *= 2.0
    raise ValueError(
        f"no turning point on flank sign={sign:+.0f} for eps={eps:g} "
        f"(well height {model.height_U:g})"
    )


def turning_points(model: PotentialModel, eps: float) -> tuple[float, float]:
    """Classical turning points x- < 0 < x+ with V(x) = eps."""
    if not 0.0 < eps < model.height_U:
        raise ValueError(f"eps={eps!r} must lie in (0, {model.height_U:g})")

    def solve(sign):
        hi = _bracket_flank(model, eps, sign)
        f = lambda x: float(model.evaluate(x)) - eps
        lo = 0.0
        a, b = (hi, lo) if sign < 0 else (lo, hi)
        return brentq(f, a, b, xtol=1e-300, rtol=1e-14)

    return solve(-1.0), solve(+1.0)


def s_map(model: PotentialModel, x):
    """The auxiliary variable s(x) = sign(x) sqrt(V(x))."""
    x = np.asarray(x, dtype=float)
    return np.sign(x) * np.sqrt(np.maximum(model.evaluate(x), 0.0))
