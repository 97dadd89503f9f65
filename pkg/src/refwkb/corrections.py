"""Corrections to the leading-order quantization condition.

The first correction delta1 comes either from closed forms in the
rational-slope parameters or from a direct numerical route (second
energy derivative of a turning-point integral).  The resummed total
delta maps any delta1 into (-1/2, 1/2) and is exact for the basic
tanh^2 family.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericsError
from .potentials import PadeParams, PotentialModel, generate_from_pade
from .quadrature import delta1_raw_integral

__all__ = [
    "CorrectionSet",
    "delta_from_delta1",
    "delta1_basic",
    "delta1_closed",
    "delta1_direct",
    "gamma_diagnostic",
    "correction_set",
]

# fraction of the distance to the nearest energy boundary used as the
# base step of the second-derivative stencil; large enough that the
# quadrature noise amplified by 1/h^2 stays far below the truncation
# budget, small enough that the h^6 truncation term is negligible
_H_FRAC = 0.05
# deterministic node set for every stencil evaluation; this level is
# fully converged for the smooth singular integrands handled here
_STENCIL_LEVEL = 9


@dataclass(frozen=True)
class CorrectionSet:
    """delta1, the resummed delta, delta3 and the class diagnostic gamma."""

    eps: float
    delta1: float
    delta_total: float
    delta3: float
    gamma: float
    source: str  # closed_form | direct_numeric | basic_well


def delta_from_delta1(delta1):
    """Resummed total correction 2 d1 / (1 + sqrt(1 + 16 d1^2)).

    Strictly increasing, odd, and maps the real line onto (-1/2, 1/2).
    Accepts scalars or arrays.
    """
    d = np.asarray(delta1, dtype=float)
    out = 2.0 * d / (1.0 + np.sqrt(1.0 + 16.0 * d * d))
    return float(out) if out.ndim == 0 else out


def delta1_basic(U: float, p: float, beta: float) -> float:
    """First correction for the basic well V = U tanh^2(p x): -beta p / (8 sqrt(U)).

    Independent of energy; diverges to -inf as the well becomes shallow.
    """
    if U <= 0.0 or p <= 0.0 or beta <= 0.0:
        raise ValueError("U, p and beta must all be positive")
    return -beta * p / (8.0 * math.sqrt(U))


def delta1_closed(params: PadeParams, beta: float, eps: float,
                  printed_signs: bool = False) -> float:
    """Closed-form delta1 for b = 0 or g = 0 parameter sets.

    The inner signs follow the series-consistent form: (1 + eps g) for
    b = 0 and (1 - eps b^2) for g = 0.  ``printed_signs`` flips them to
    the uncorrected variants and exists purely for documentation and
    regression tests; it is not a supported computation path.

    For general (b != 0, g != 0) no closed form is available and the
    direct numerical route on the generated well is used instead.
    """
    k, c, b, g = params.k, params.c, params.b, params.g
    if b == 0.0:
        inner = (1.0 - eps * g) if printed_signs else (1.0 + eps * g)
        if inner <= 0.0:
            raise ValueError(f"closed form invalid: 1 + eps*g = {inner:g} <= 0")
        return -beta * k * (c + g) / (8.0 * inner ** 2.5)
    if g == 0.0:
        inner = (1.0 + eps * b * b) if printed_signs else (1.0 - eps * b * b)
        if inner <= 0.0:
            raise ValueError(f"closed form invalid: 1 - eps*b^2 = {inner:g} <= 0")
        return -beta * k * (c - b * b) / (8.0 * inner ** 2.5)
    return delta1_direct(generate_from_pade(params, beta), eps)


def _second_derivative_room(model: PotentialModel, eps: float) -> float:
    room = eps if not model.finite else min(eps, model.height_U - eps)
    if room <= 0.0:
        raise NumericsError("corrections",
                            "no room for the energy stencil", energy=eps)
    return room


def delta1_direct(model: PotentialModel, eps: float,
                  h_frac: float = _H_FRAC) -> float:
    """delta1 = (beta / 24 pi) d^2W/deps^2 with W the raw turning-point integral.

    The second derivative uses a 5-point stencil at steps h and h/2 with
    Richardson extrapolation; W is evaluated on a fixed quadrature level
    so the finite differences see a smooth function of energy.
    """
    room = _second_derivative_room(model, eps)
    h = h_frac * room
    cache: dict[float, float] = {}

    def w(e: float) -> float:
        if e not in cache:
            cache[e] = delta1_raw_integral(model, e,
                                           fixed_level=_STENCIL_LEVEL).value
        return cache[e]

    def stencil(hh: float) -> float:
        return (-w(eps - 2 * hh) + 16 * w(eps - hh) - 30 * w(eps)
                + 16 * w(eps + hh) - w(eps + 2 * hh)) / (12 * hh * hh)

    d2w = (16.0 * stencil(0.5 * h) - stencil(h)) / 15.0
    return model.beta / (24.0 * math.pi) * d2w


def gamma_diagnostic(model: PotentialModel, eps: float,
                     step_frac: float = 0.1) -> float:
    """d(delta1)/deps by central differences of the direct route.

    Vanishing gamma certifies membership in the exactly solvable family
    for which the resummed delta is exact.
    """
    room = _second_derivative_room(model, eps)
    d = step_frac * room
    return (delta1_direct(model, eps + d) - delta1_direct(model, eps - d)) / (2 * d)


def correction_set(model: PotentialModel, eps: float,
                   source: str = "direct_numeric") -> CorrectionSet:
    """Evaluate delta1, delta, delta3 and gamma at one energy."""
    if source == "basic_well":
        if model.kind != "tanh2":
            raise ValueError("basic_well source requires a tanh2 model")
        d1 = delta1_basic(model.meta["U"], model.meta["p"], model.beta)
        gamma = 0.0
    elif source == "closed_form":
        if model.pade_params is None:
            raise ValueError("closed_form source needs rational-slope parameters")
        d1 = delta1_closed(model.pade_params, model.beta, eps)
        room = _second_derivative_room(model, eps)
        d = 0.05 * room
        gamma = (delta1_closed(model.pade_params, model.beta, eps + d)
                 - delta1_closed(model.pade_params, model.beta, eps - d)) / (2 * d)
    elif source == "direct_numeric":
        d1 = delta1_direct(model, eps)
        gamma = gamma_diagnostic(model, eps)
    else:
        raise ValueError(f"unknown correction source {source!r}")
    return CorrectionSet(
        eps=eps,
        delta1=d1,
        delta_total=delta_from_delta1(d1),
        delta3=-4.0 * d1 ** 3,
        gamma=gamma,
        source=source,
    )
