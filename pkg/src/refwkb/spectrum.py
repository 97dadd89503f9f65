"""Eigenlevel solving, level counting and the state density.

Levels solve Phi(eps) = n + 1/2 + delta(eps) by bracketed root finding
on the monotone phase integral; plain WKB sets delta to zero.  The
correction delta is re-evaluated at every iterate (the condition defines
eps implicitly through delta), not lagged.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from scipy.optimize import brentq

from .corrections import (delta1_basic, delta1_closed, delta1_direct,
                          delta_from_delta1)
from .errors import NumericsError
from .potentials import PotentialModel
from .quadrature import phase_derivative, phase_integral

__all__ = [
    "LevelRecord",
    "SpectrumSummary",
    "solve_level",
    "count_levels",
    "state_density",
    "compare_spectra",
    "default_correction_source",
]

# interior window (fractions of U) inside which the direct-numeric
# correction has stencil room; outside it the last valid value is frozen
_DIRECT_LO = 0.02
_DIRECT_HI = 0.96


@dataclass(frozen=True)
class LevelRecord:
    n: int
    eps_wkb: float | None = None
    eps_improved: float | None = None
    eps_oracle: float | None = None
    delta_used: float | None = None
    abs_err_wkb: float | None = None
    abs_err_improved: float | None = None
    frozen_correction: bool = False


@dataclass(frozen=True)
class SpectrumSummary:
    levels: list[LevelRecord]
    n_levels: int
    phi_at_top: float | None = None
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.levels and len(self.levels) != self.n_levels:
            raise ValueError("n_levels inconsistent with levels list")


def default_correction_source(model: PotentialModel) -> str:
    if model.kind == "tanh2":
        return "basic_well"
    if model.pade_params is not None and (model.pade_params.b == 0.0
                                          or model.pade_params.g == 0.0):
        return "closed_form"
    return "direct_numeric"


def _delta_fn(model: PotentialModel, source: str) -> Callable[[float], tuple[float, bool]]:
    """Return eps -> (delta, frozen) for the configured correction source."""
    if source == "basic_well":
        if model.kind != "tanh2":
            raise ValueError("basic_well correction requires a tanh2 model")
        d = delta_from_delta1(
            delta1_basic(model.meta["U"], model.meta["p"], model.beta))
        return lambda eps: (d, False)

    if source == "closed_form":
        params = model.pade_params
        if params is None:
            raise ValueError(
                "closed_form correction needs rational-slope parameters; "
                "run extraction first or use direct_numeric")

        def closed(eps: float) -> tuple[float, bool]:
            return delta_from_delta1(
                delta1_closed(params, model.beta, eps)), False

        return closed

    if source == "direct_numeric":
        last: dict[str, float] = {}

        def direct(eps: float) -> tuple[float, bool]:
            if model.finite:
                lo = _DIRECT_LO * model.height_U
                hi = _DIRECT_HI * model.height_U
                e = min(max(eps, lo), hi)
            else:
                e = eps
            frozen = e != eps
            try:
                d = delta_from_delta1(delta1_direct(model, e))
                last["delta"] = d
            except NumericsError:
                if "delta" not in last:
                    raise
                d = last["delta"]
                frozen = True
            return d, frozen

        return direct

    raise ValueError(f"unknown correction source {source!r}")


def solve_level(model: PotentialModel, n: int, mode: str = "improved",
                correction_source: str | None = None,
                eps_max: float | None = None) -> LevelRecord:
    """Solve one eigenlevel in 'wkb' or 'improved' mode.

    Finite wells bracket on (0, U); infinite wells need ``eps_max``.
    Raises NumericsError when no level with this n exists in the
    bracketing interval.
    """
    if n < 0:
        raise ValueError("quantum number n must be >= 0")
    if mode not in ("wkb", "improved"):
        raise ValueError(f"unknown mode {mode!r}")
    if correction_source is None:
        correction_source = default_correction_source(model)

    if model.finite:
        hi = model.height_U * (1.0 - 1e-9)
    else:
        if eps_max is None:
            raise ValueError("eps_max is required for infinite wells")
        hi = eps_max
    lo = 1e-9 * hi

    delta_fn = _delta_fn(model, correction_source)
    frozen_flag = {"frozen": False}

    def residual(eps: float) -> float:
        phi = phase_integral(model, eps).phi_total
        if mode == "wkb":
            d = 0.0
        else:
            d, frozen = delta_fn(eps)
            frozen_flag["frozen"] |= frozen
        return phi - (n + 0.5 + d)

    f_lo, f_hi = residual(lo), residual(hi)
    if f_lo > 0.0 or f_hi < 0.0:
        raise NumericsError(
            "spectrum",
            f"no {mode} level n={n} inside ({lo:g}, {hi:g}) "
            f"(residuals {f_lo:.3g}, {f_hi:.3g})",
        )
    eps = brentq(residual, lo, hi, xtol=1e-13 * hi, rtol=1e-15)
    d_used = 0.0 if mode == "wkb" else delta_fn(eps)[0]
    record = LevelRecord(
        n=n,
        eps_wkb=eps if mode == "wkb" else None,
        eps_improved=eps if mode == "improved" else None,
        delta_used=d_used,
        frozen_correction=frozen_flag["frozen"],
    )
    return record


def count_levels(model: PotentialModel,
                 correction_source: str | None = None) -> SpectrumSummary:
    """Number of bound levels of a finite well (levels list left empty).

    Uses Phi(U) and delta evaluated just below the top:
    n_levels = floor(Phi(U) - delta - 1/2) + 1, never less than one
    (every 1-D well binds at least one state).
    """
    if not model.finite:
        raise ValueError("count_levels requires a finite-height well")
    if correction_source is None:
        correction_source = default_correction_source(model)
    U = model.height_U
    phi_top = phase_integral(model, U).phi_total
    delta_fn = _delta_fn(model, correction_source)
    delta_top, _ = delta_fn(U * (1.0 - 1e-9))
    n_levels = max(1, math.floor(phi_top - delta_top - 0.5) + 1)
    return SpectrumSummary(levels=[], n_levels=n_levels, phi_at_top=phi_top,
                           stats={"delta_at_top": delta_top})


def state_density(model: PotentialModel, eps: float) -> float:
    """dPhi/deps, the leading approximation to the density of states."""
    return phase_derivative(model, eps).value


def _solve_or_none(model, n, mode, source, eps_max):
    try:
        return solve_level(model, n, mode, source, eps_max)
    except NumericsError:
        return None


def compare_spectra(model: PotentialModel,
                    oracle_levels: Sequence[float] | None = None,
                    correction_source: str | None = None,
                    eps_max: float | None = None) -> SpectrumSummary:
    """Three-way comparison: plain WKB, improved, and oracle energies.

    The oracle list may be empty or shorter/longer than the solved
    spectrum; mismatched counts are reported in the stats, not fatal.
    """
    if correction_source is None:
        correction_source = default_correction_source(model)
    oracle = sorted(float(e) for e in (oracle_levels or []))
    if model.finite:
        if any(e >= model.height_U for e in oracle):
            raise ValueError("oracle levels must lie below the well height")
        summary = count_levels(model, correction_source)
        n_levels = summary.n_levels
        phi_top = summary.phi_at_top
    else:
        n_levels = len(oracle)
        phi_top = None
        if n_levels == 0:
            raise ValueError("infinite wells need oracle levels to set the count")

    records = []
    for n in range(n_levels):
        wkb = _solve_or_none(model, n, "wkb", correction_source, eps_max)
        imp = _solve_or_none(model, n, "improved", correction_source, eps_max)
        orc = oracle[n] if n < len(oracle) else None
        e_w = wkb.eps_wkb if wkb else None
        e_i = imp.eps_improved if imp else None
        records.append(LevelRecord(
            n=n,
            eps_wkb=e_w,
            eps_improved=e_i,
            eps_oracle=orc,
            delta_used=imp.delta_used if imp else None,
            abs_err_wkb=abs(e_w - orc) if (e_w is not None and orc is not None) else None,
            abs_err_improved=abs(e_i - orc) if (e_i is not None and orc is not None) else None,
            frozen_correction=imp.frozen_correction if imp else False,
        ))

    stats: dict = {
        "count_wkb": sum(r.eps_wkb is not None for r in records),
        "count_improved": sum(r.eps_improved is not None for r in records),
        "count_oracle": len(oracle),
    }
    for mode, key in (("wkb", "abs_err_wkb"), ("improved", "abs_err_improved")):
        errs = [getattr(r, key) for r in records if getattr(r, key) is not None]
        if errs:
            stats[f"max_abs_err_{mode}"] = max(errs)
            stats[f"mean_abs_err_{mode}"] = sum(errs) / len(errs)
    return SpectrumSummary(levels=records, n_levels=len(records),
                           phi_at_top=phi_top, stats=stats)
