"""Estimator-style front ends so the solver composes with sklearn pipelines."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .corrections import delta1_closed
from .extraction import extract_at_energy, extract_at_top
from .oracle import auto_config, converge
from .spectrum import compare_spectra, count_levels, default_correction_source
from .validation import check_potential

__all__ = ["SpectrumSolver", "PadeExtractor"]


class SpectrumSolver(BaseEstimator):
    """Solves the bound-state spectrum of a 1-D well.

    Parameters
    ----------
    correction_source : {'basic_well', 'closed_form', 'direct_numeric'} or None
        How the quantization correction is evaluated; None picks a
        sensible default for the potential kind.
    eps_max : float or None
        Upper energy bound for infinite wells.
    with_oracle : bool
        Also run the finite-difference diagonalization and attach
        per-level errors.
    oracle_points : int
        Base grid size of the oracle before Richardson refinement.
    """

    def __init__(self, correction_source=None, eps_max=None,
                 with_oracle=False, oracle_points=2001):
        self.correction_source = correction_source
        self.eps_max = eps_max
        self.with_oracle = with_oracle
        self.oracle_points = oracle_points

    def fit(self, potential, y=None):
        model = check_potential(potential)
        source = self.correction_source or default_correction_source(model)
        oracle_levels = None
        if self.with_oracle:
            cfg = auto_config(model, energy_cutoff=self.eps_max,
                              grid_points_N=self.oracle_points)
            oracle_levels, self.oracle_tol_ = converge(model, cfg)
        summary = compare_spectra(model, oracle_levels,
                                  correction_source=source,
                                  eps_max=self.eps_max)
        self.model_ = model
        self.summary_ = summary
        self.levels_ = summary.levels
        self.n_levels_ = summary.n_levels
        return self

    def _check_fitted(self):
        if not hasattr(self, "summary_"):
            raise NotFittedError("call fit(potential) first")

    def predict(self, n):
        """Improved-mode energies for an array of quantum numbers."""
        self._check_fitted()
        n = np.atleast_1d(np.asarray(n, dtype=int))
        out = np.full(n.shape, np.nan)
        for i, ni in enumerate(n):
            if 0 <= ni < self.n_levels_:
                e = self.levels_[ni].eps_improved
                out[i] = np.nan if e is None else e
        return out


class PadeExtractor(BaseEstimator):
    """Recovers rational-slope parameters (k, c, b, g) from a finite well.

    fit() runs the moment-matching extraction (at the well top by
    default, or at ``at_energy``); transform() evaluates the closed-form
    first correction at the requested energies.
    """

    def __init__(self, at_energy=None):
        self.at_energy = at_energy

    def fit(self, potential, y=None):
        model = check_potential(potential)
        if self.at_energy is None:
            report = extract_at_top(model)
        else:
            report = extract_at_energy(model, self.at_energy)
        self.model_ = model
        self.report_ = report
        self.params_ = report.params
        return self

    def transform(self, energies):
        if not hasattr(self, "params_"):
            raise NotFittedError("call fit(potential) first")
        energies = np.atleast_1d(np.asarray(energies, dtype=float))
        return np.array([
            delta1_closed(self.params_, self.model_.beta, e) for e in energies
        ])
