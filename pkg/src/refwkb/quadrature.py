"""Energy-dependent integrals over the classically allowed region.

All integrands here carry square-root behavior at the turning points, so
every integral goes through one double-exponential (tanh-sinh) routine,
which converges spectrally for endpoint singularities.  Node positions
are carried as exact distances from each endpoint; integrands receive
those distances so the singular factor eps - V never suffers endpoint
cancellation.  Every operation returns its value together with an error
estimate taken from the last level refinement.
"""
from __future__ import annotations

import math
import os
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np

from .errors import NumericsError
from .potentials import PotentialModel, turning_points

__all__ = [
    "QuadResult",
    "PhaseSplit",
    "MomentIntegrals",
    "tanh_sinh",
    "phase_integral",
    "phase_derivative",
    "moment_integrals",
    "delta1_raw_integral",
]

# |t| beyond this the transformed nodes are indistinguishable from the
# endpoints in double precision
_T_MAX = 3.5
_MIN_LEVEL = 4
_MAX_LEVEL = 11
# fraction of the interval below which eps - V is replaced by its
# linearization at the turning point
_LINEARIZE_FRAC = 1e-8


class QuadResult(NamedTuple):
    value: float
    error: float


class PhaseSplit(NamedTuple):
    """Phase integral at one energy, split over the two half-axes."""

    eps: float
    phi_plus: float
    phi_minus: float
    phi_total: float
    error: float


class MomentIntegrals(NamedTuple):
    i0: float
    i2: float
    j1: float
    error: float


def default_tolerance() -> float:
    """Absolute/relative stop tolerance; WKB_QUAD_TOL overrides (test-only)."""
    env = os.environ.get("WKB_QUAD_TOL")
    return float(env) if env else 1e-11


@lru_cache(maxsize=_MAX_LEVEL + 2)
def _rule(level: int):
    """tanh-sinh nodes on (-1, 1) as distances from each endpoint, plus weights."""
    h = 2.0 ** (-level)
    n = int(_T_MAX / h)
    t = np.arange(-n, n + 1) * h
    v = 0.5 * math.pi * np.sinh(t)
    w = h * 0.5 * math.pi * np.cosh(t) / np.cosh(v) ** 2
    # 1 + u and 1 - u without cancellation (u = tanh(v))
    dist_lo = 2.0 / (np.exp(-2.0 * v) + 1.0)
    dist_hi = 2.0 / (np.exp(2.0 * v) + 1.0)
    return t, dist_lo, dist_hi, w


def _level_sum(f: Callable, a: float, b: float, level: int,
               with_distances: bool) -> float:
    t, dist_lo, dist_hi, w = _rule(level)
    half = 0.5 * (b - a)
    da = half * dist_lo
    db = half * dist_hi
    x = np.where(t < 0.0, a + da, b - db)
    y = np.asarray(f(x, da, db) if with_distances else f(x), dtype=float)
    y = np.where(np.isfinite(y), y, 0.0)
    return half * float(np.sum(y * w))


def tanh_sinh(f: Callable, a: float, b: float, tol: float | None = None,
              fixed_level: int | None = None,
              with_distances: bool = False) -> QuadResult:
    """Integrate f over (a, b); f may be endpoint-singular but integrable.

    With ``with_distances`` the integrand is called as f(x, da, db) where
    da, db are the exact node distances from each endpoint, so singular
    factors can be evaluated without cancellation.  With ``fixed_level``
    the rule is evaluated at exactly that refinement level (deterministic
    node set, needed when results feed finite differences); otherwise
    levels are refined until two successive levels agree to ``tol``.
    """
    if a == b:
        return QuadResult(0.0, 0.0)
    if tol is None:
        tol = default_tolerance()
    if fixed_level is not None:
        val = _level_sum(f, a, b, fixed_level, with_distances)
        prev = _level_sum(f, a, b, fixed_level - 1, with_distances)
        return QuadResult(val, abs(val - prev))
    prev = _level_sum(f, a, b, _MIN_LEVEL - 1, with_distances)
    err = math.inf
    val = prev
    for level in range(_MIN_LEVEL, _MAX_LEVEL + 1):
        val = _level_sum(f, a, b, level, with_distances)
        err = abs(val - prev)
        if err <= max(tol, tol * abs(val)):
            return QuadResult(val, err)
        prev = val
    return QuadResult(val, err)


def _dv_dx(model: PotentialModel):
    if model.derivative is not None:
        return model.derivative

    def fd(x):  # 5-point central difference fallback
        x = np.asarray(x, dtype=float)
        h = 1e-5 * (1.0 + np.abs(x))
        return (-model.evaluate(x + 2 * h) + 8 * model.evaluate(x + h)
                - 8 * model.evaluate(x - h) + model.evaluate(x - 2 * h)) / (12 * h)

    return fd


def _gap_fn(model: PotentialModel, eps: float, a: float, b: float,
            lo_is_turning: bool, hi_is_turning: bool) -> Callable:
    """eps - V(x) with the turning-point neighborhoods linearized.

    Within _LINEARIZE_FRAC of the interval length from a turning point
    the direct difference has O(1) relative rounding error; there
    eps - V ~ |V'| * distance is exact to the same order and smooth.
    """
    dv = _dv_dx(model)
    span = b - a
    switch = _LINEARIZE_FRAC * span
    slope_a = abs(float(dv(a))) if lo_is_turning else 0.0
    slope_b = abs(float(dv(b))) if hi_is_turning else 0.0

    def gap(x, da, db):
        g = eps - np.asarray(model.evaluate(x), dtype=float)
        if lo_is_turning:
            g = np.where(da < switch, slope_a * da, g)
        if hi_is_turning:
            g = np.where(db < switch, slope_b * db, g)
        return np.maximum(g, 1e-300)

    return gap


def _check_energy(model: PotentialModel, eps: float, module: str,
                  allow_top: bool = False) -> None:
    top = model.height_U
    hi_ok = eps <= top if allow_top else eps < top
    if not (eps > 0.0 and hi_ok):
        raise NumericsError(module, f"energy outside (0, {top:g})", energy=eps)


def _near_top(model: PotentialModel, eps: float) -> bool:
    return model.finite and (model.height_U - eps) <= 1e-12 * model.height_U


def _asymptotic_bound(model: PotentialModel, eps: float, sign: float) -> float:
    """Integration cutoff on one flank for eps at the well top.

    Expands until eps - V underflows the double-precision resolution of
    eps, or the potential visibly stops growing (clamped flanks).
    """
    target = 4e-16 * eps
    x = sign * math.sqrt(eps) / model.curvature_k
    prev_v = float(model.evaluate(x))
    for _ in range(120):
        x *= 1.5
        v = float(model.evaluate(x))
        if eps - v <= target:
            return x
        if v - prev_v <= 1e-16 * eps:  # flank has flattened out
            return x
        prev_v = v
    return x


def _tail_estimate(model: PotentialModel, eps: float, x_cut: float) -> float:
    """Bound the discarded tail of sqrt(eps - V) past an asymptotic cutoff."""
    f2 = math.sqrt(max(eps - float(model.evaluate(x_cut)), 0.0))
    x1 = x_cut / 1.5
    f1 = math.sqrt(max(eps - float(model.evaluate(x1)), 0.0))
    if f2 <= 0.0:
        return 0.0
    if f1 > f2:
        rate = math.log(f1 / f2) / abs(x_cut - x1)
        return f2 / rate
    return f2 * abs(x_cut)


def phase_integral(model: PotentialModel, eps: float,
                   tol: float | None = None) -> PhaseSplit:
    """Phase integral (1/pi beta) int sqrt(eps - V) dx, split at x = 0.

    Accepts eps up to and including the well height; at the top the
    turning points recede to infinity but the integral stays convergent
    and is cut off where the integrand has decayed below resolution.
    """
    _check_energy(model, eps, "quadrature", allow_top=True)
    tail = 0.0
    if _near_top(model, eps):
        xm = _asymptotic_bound(model, eps, -1.0)
        xp = _asymptotic_bound(model, eps, +1.0)
        turning = False
        tail = _tail_estimate(model, eps, xm) + _tail_estimate(model, eps, xp)
    else:
        xm, xp = turning_points(model, eps)
        turning = True

    def make(a, b, lo_t, hi_t):
        gap = _gap_fn(model, eps, a, b, lo_t, hi_t)
        return lambda x, da, db: np.sqrt(gap(x, da, db))

    scale = 1.0 / (math.pi * model.beta)
    plus = tanh_sinh(make(0.0, xp, False, turning), 0.0, xp,
                     tol=tol, with_distances=True)
    minus = tanh_sinh(make(xm, 0.0, turning, False), xm, 0.0,
                      tol=tol, with_distances=True)
    err = (plus.error + minus.error + tail) * scale
    if err > 1e-6 * max(1.0, abs(plus.value + minus.value) * scale):
        raise NumericsError("quadrature",
                            f"phase integral did not converge (err~{err:.2e})",
                            energy=eps)
    return PhaseSplit(
        eps=eps,
        phi_plus=plus.value * scale,
        phi_minus=minus.value * scale,
        phi_total=(plus.value + minus.value) * scale,
        error=err,
    )


def phase_derivative(model: PotentialModel, eps: float,
                     tol: float | None = None) -> QuadResult:
    """dPhi/deps = (1/2 pi beta) int dx / sqrt(eps - V) between turning points."""
    _check_energy(model, eps, "quadrature")
    xm, xp = turning_points(model, eps)
    gap = _gap_fn(model, eps, xm, xp, True, True)

    def integrand(x, da, db):
        return 1.0 / np.sqrt(gap(x, da, db))

    scale = 1.0 / (2.0 * math.pi * model.beta)
    res = tanh_sinh(integrand, xm, xp, tol=tol, with_distances=True)
    value = res.value * scale
    if value <= 0.0:
        raise NumericsError("quadrature", "non-positive phase derivative",
                            energy=eps)
    return QuadResult(value, res.error * scale)


def moment_integrals(c: float, eps: float,
                     tol: float | None = None) -> MomentIntegrals:
    """Moments of sqrt(eps - s^2)/(1 - c s^2) over s in [0, sqrt(eps)].

    Returns I0 (m=0), I2 (m=2) and the odd moment J1 (m=1).  At
    eps = 1/c the integrable endpoint singularity is evaluated through
    the cancellation-free reduced integrand.
    """
    if eps <= 0.0:
        raise NumericsError("quadrature", "moment integrals need eps > 0",
                            energy=eps)
    if c > 0.0 and eps > (1.0 + 1e-12) / c:
        raise NumericsError(
            "quadrature",
            f"1 - c s^2 vanishes inside (0, sqrt(eps)) for c={c:g}",
            energy=eps,
        )
    root = math.sqrt(eps)
    at_top = c > 0.0 and abs(c * eps - 1.0) <= 1e-12

    def f(m):
        if at_top:
            # 1 - c s^2 == c (eps - s^2) exactly at the top; the factored
            # form (root - s)(root + s) keeps the endpoint exact
            def integrand(s, da, db):
                return s ** m / (c * np.sqrt(db * (s + root)))
        else:
            def integrand(s, da, db):
                return (s ** m * np.sqrt(db * (s + root))
                        / (1.0 - c * s * s))
        return tanh_sinh(integrand, 0.0, root, tol=tol, with_distances=True)

    r0, r2, r1 = f(0), f(2), f(1)
    return MomentIntegrals(r0.value, r2.value, r1.value,
                           r0.error + r2.error + r1.error)


def delta1_raw_integral(model: PotentialModel, eps: float,
                        tol: float | None = None,
                        fixed_level: int | None = None) -> QuadResult:
    """W(eps) = int (dV/dx)^2 / sqrt(eps - V) dx between turning points.

    This is the integral whose second energy derivative yields the first
    quantization correction; differentiation happens in the corrections
    module.
    """
    _check_energy(model, eps, "quadrature")
    xm, xp = turning_points(model, eps)
    dv = _dv_dx(model)
    gap = _gap_fn(model, eps, xm, xp, True, True)

    def integrand(x, da, db):
        g = np.asarray(dv(x), dtype=float)
        return g * g / np.sqrt(gap(x, da, db))

    res = tanh_sinh(integrand, xm, xp, tol=tol, fixed_level=fixed_level,
                    with_distances=True)
    return QuadResult(res.value, res.error)
