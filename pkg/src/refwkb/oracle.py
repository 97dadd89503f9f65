"""Independent ground truth: finite-difference diagonalization.

Discretizes -beta^2 psi'' + V psi = eps psi on a Dirichlet box with the
3-point Laplacian and solves the symmetric tridiagonal eigenproblem for
all levels below a cutoff.  Richardson extrapolation over grid
refinements supplies eigenvalues with an honest error estimate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import NumericsError
from .potentials import PotentialModel

__all__ = ["OracleConfig", "auto_config", "diagonalize", "converge"]


@dataclass(frozen=True)
class OracleConfig:
    domain_halfwidth_L: float
    grid_points_N: int = 2001
    energy_cutoff: float | None = None  # defaults to the well height

    def __post_init__(self):
        if self.domain_halfwidth_L <= 0.0:
            raise ValueError("domain halfwidth must be positive")
        if self.grid_points_N < 200:
            raise ValueError("grid_points_N must be >= 200")


def auto_config(model: PotentialModel, energy_cutoff: float | None = None,
                grid_points_N: int = 4001) -> OracleConfig:
    """Pick a box halfwidth enclosing everything below the cutoff."""
    cutoff = energy_cutoff
    if cutoff is None:
        if not model.finite:
            raise ValueError("infinite wells need an explicit energy cutoff")
        cutoff = model.height_U
    target = cutoff * (1.0 - 1e-6) if model.finite else cutoff * 6.0
    L = math.sqrt(cutoff) / model.curvature_k
    for _ in range(200):
        if float(model.evaluate(L)) >= target and \
           float(model.evaluate(-L)) >= target:
            break
        L *= 1.5
    if model.finite:
        # states just below the top decay slowly; the wall-height criterion
        # alone leaves a box-truncation error that grid refinement cannot
        # remove, so pad generously
        L *= 3.0
    return OracleConfig(domain_halfwidth_L=L, grid_points_N=grid_points_N,
                        energy_cutoff=energy_cutoff)


def _resolve(model: PotentialModel, config: OracleConfig) -> tuple[float, float]:
    """Validate the box, auto-doubling L (up to 4x) when the well leaks."""
    cutoff = config.energy_cutoff
    if cutoff is None:
        if not model.finite:
            raise ValueError("infinite wells need an explicit energy cutoff")
        cutoff = model.height_U
    L = config.domain_halfwidth_L
    if model.finite:
        wall = model.height_U * (1.0 - 1e-6)
    else:
        wall = cutoff
    for _ in range(3):
        if float(model.evaluate(L)) >= wall and float(model.evaluate(-L)) >= wall:
            return L, cutoff
        L *= 2.0
    if float(model.evaluate(L)) >= wall and float(model.evaluate(-L)) >= wall:
        return L, cutoff
    raise NumericsError(
        "oracle",
        f"box walls V(+-{L:g}) below the cutoff {cutoff:g}; "
        "domain does not confine the requested states",
    )


def diagonalize(model: PotentialModel, config: OracleConfig) -> list[float]:
    """All eigenvalues below the cutoff, ascending.

    3-point Laplacian, Dirichlet ends; the tridiagonal eigenproblem is
    solved by bisection on the selected eigenvalue range.
    """
    L, cutoff = _resolve(model, config)
    N = config.grid_points_N
    h = 2.0 * L / (N - 1)
    x = np.linspace(-L, L, N)[1:-1]
    b2 = model.beta ** 2
    diag = 2.0 * b2 / h ** 2 + np.asarray(model.evaluate(x), dtype=float)
    off = np.full(N - 3, -b2 / h ** 2)
    vals = eigh_tridiagonal(diag, off, select="v",
                            select_range=(-1.0, cutoff),
                            eigvals_only=True)
    return [float(v) for v in np.sort(vals)]


def converge(model: PotentialModel,
             base: OracleConfig) -> tuple[list[float], float]:
    """Richardson-extrapolated levels with an observed error estimate.

    Diagonalizes at N, 2N-1 and 4N-3 (h, h/2, h/4) and extrapolates the
    second-order scheme twice; the achieved tolerance is the size of the
    last extrapolation step, a conservative estimate of the residual
    error of the returned levels.
    """
    ns = [base.grid_points_N,
          2 * base.grid_points_N - 1,
          4 * base.grid_points_N - 3]
    runs = [diagonalize(model, replace(base, grid_points_N=n)) for n in ns]
    count = min(len(r) for r in runs)
    if count == 0:
        return [], 0.0
    a, b, c = (np.asarray(r[:count]) for r in runs)
    r1 = (4.0 * b - a) / 3.0
    r2 = (4.0 * c - b) / 3.0
    final = (16.0 * r2 - r1) / 15.0
    # size of the correction just applied: the observed error scale of
    # the returned levels
    achieved = float(np.max(np.abs(final - r2)))
    return [float(v) for v in final], achieved
