"""Recovery of rational-slope parameters from computed phase integrals.

The even and odd parts of the phase integral determine g and b through
two decoupled linear relations; at the well top these reduce to simple
closed expressions.  A separate density route recovers c from dPhi/deps
alone, and an adiabaticity scan checks how slowly the recovered
coefficients drift with energy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericsError
from .potentials import PadeParams, PotentialModel
from .quadrature import moment_integrals, phase_derivative, phase_integral

__all__ = [
    "ExtractionReport",
    "extract_at_top",
    "extract_at_energy",
    "extract_c_from_density",
    "adiabaticity_check",
    "default_energy_grid",
]


@dataclass(frozen=True)
class ExtractionReport:
    params: PadeParams
    eps_used: float
    residuals: dict = field(default_factory=dict)
    adiabaticity: float | None = None
    valid: bool = True
    # whether downstream delta1 can use the closed forms (b = 0 or g = 0
    # within residuals) or must fall back to the direct numeric route
    downstream: str = "closed_form"


def _require_finite(model: PotentialModel, op: str) -> float:
    if not model.finite:
        raise ValueError(f"{op} requires a finite-height well")
    return model.height_U


def _report(model: PotentialModel, b: float, g: float, eps: float,
            residuals: dict, with_adiabaticity: bool = True) -> ExtractionReport:
    U = model.height_U
    c = 1.0 / U
    params = PadeParams(k=model.curvature_k, c=c, b=b, g=g)
    try:
        params.validate_denominator()
        valid = True
    except ValueError:
        valid = False
    tol = max(1e-10, 10.0 * max(residuals.values(), default=0.0))
    downstream = "closed_form" if (abs(b) <= tol or abs(g) <= tol) \
        else "direct_numeric"
    adiab = None
    if with_adiabaticity:
        try:
            ratios = adiabaticity_check(model, [min(eps, 0.9 * U)])
            adiab = ratios[0]
        except NumericsError:
            adiab = None
    return ExtractionReport(params=params, eps_used=eps, residuals=residuals,
                            adiabaticity=adiab, valid=valid,
                            downstream=downstream)


def extract_at_top(model: PotentialModel) -> ExtractionReport:
    """Recover (b, g) from the phase integral evaluated at eps = U.

    g = 2 beta k Phi(U) / U^2 - 2/U and
    b = pi beta k (Phi+ - Phi-) / (2 U^{3/2}).
    """
    U = _require_finite(model, "extract_at_top")
    beta, k = model.beta, model.curvature_k
    split = phase_integral(model, U)
    g = 2.0 * beta * k * split.phi_total / U ** 2 - 2.0 / U
    b = math.pi * beta * k * (split.phi_plus - split.phi_minus) / (2.0 * U ** 1.5)
    residuals = {
        "g": 2.0 * beta * k * split.error / U ** 2,
        "b": math.pi * beta * k * split.error / (2.0 * U ** 1.5),
    }
    return _report(model, b, g, U, residuals)


def extract_at_energy(model: PotentialModel, eps: float) -> ExtractionReport:
    """Recover energy-dependent (b, g) from the phase split at eps <= U."""
    U = _require_finite(model, "extract_at_energy")
    if not 0.0 < eps <= U:
        raise ValueError(f"eps={eps!r} outside (0, {U:g}]")
    beta, k = model.beta, model.curvature_k
    c = 1.0 / U
    split = phase_integral(model, eps)
    mom = moment_integrals(c, eps)
    if mom.i2 < 1e-14 or mom.j1 < 1e-14:
        raise NumericsError("extraction",
                            "degenerate linear system (eps too small)",
                            energy=eps)
    g = (math.pi * beta * k * split.phi_total / 2.0 - mom.i0) / mom.i2
    b = math.pi * beta * k * (split.phi_plus - split.phi_minus) / (2.0 * mom.j1)
    residuals = {
        "g": (math.pi * beta * k * split.error / 2.0 + mom.error) / mom.i2,
        "b": math.pi * beta * k * split.error / (2.0 * mom.j1),
    }
    return _report(model, b, g, eps, residuals)


def extract_c_from_density(model: PotentialModel, eps: float,
                           printed_signs: bool = False) -> float:
    """Recover c from the state density: c = {1 - [1/(2 k beta Phi')]^2} / eps.

    Valid in the g = 0 regime.  ``printed_signs`` evaluates the
    sign-flipped bracket (documentation only; it returns -1/U on wells
    where the corrected form returns 1/U exactly).
    """
    if not 0.0 < eps < model.height_U:
        raise ValueError(f"eps={eps!r} outside (0, {model.height_U:g})")
    dphi = phase_derivative(model, eps).value
    ratio = 1.0 / (2.0 * model.curvature_k * model.beta * dphi)
    if printed_signs:
        return (ratio * ratio - 1.0) / eps
    return (1.0 - ratio * ratio) / eps


def adiabaticity_check(model: PotentialModel, eps_grid) -> list[float | None]:
    """|eps dc/deps| / |c| at each grid energy; None where c is ~0.

    Small ratios certify that the well stays similar to the exactly
    solvable family across its energy range.
    """
    eps_grid = [float(e) for e in eps_grid]
    if len(eps_grid) < 1:
        raise ValueError("adiabaticity_check needs at least one energy")
    out: list[float | None] = []
    for eps in eps_grid:
        if not 0.0 < eps < model.height_U:
            raise ValueError(f"grid energy {eps!r} outside the well")
        d = 0.01 * (eps if not model.finite
                    else min(eps, model.height_U - eps))
        c0 = extract_c_from_density(model, eps)
        cp = extract_c_from_density(model, eps + d)
        cm = extract_c_from_density(model, eps - d)
        if abs(c0) < 1e-10:
            out.append(None)
            continue
        dc = (cp - cm) / (2.0 * d)
        out.append(abs(eps * dc) / abs(c0))
    return out


def default_energy_grid(model: PotentialModel, n: int = 9) -> np.ndarray:
    """Chebyshev-spaced energies on [0.1 U, 0.9 U].

    Avoids the degenerate linear system at eps -> 0 and the singular
    phase derivative at eps -> U.
    """
    U = _require_finite(model, "default_energy_grid")
    j = np.arange(n)
    nodes = np.cos(math.pi * (2 * j + 1) / (2 * n))  # in (-1, 1)
    return 0.5 * U + 0.4 * U * nodes[::-1]
