"""Semiclassical bound-state spectra with reference-potential corrections.

Phase integrals give the leading quantization condition; a resummed
first correction, obtained either in closed form from rational-slope
(Pade) reference parameters or by direct numerical differentiation,
sharpens it by orders of magnitude for wells similar to the exactly
solvable tanh^2 family.  An independent finite-difference
diagonalization oracle provides ground truth.
"""

from .corrections import (CorrectionSet, correction_set, delta1_basic,
                          delta1_closed, delta1_direct, delta_from_delta1,
                          gamma_diagnostic)
from .errors import ConfigError, NumericsError, RefWKBError
from .estimators import PadeExtractor, SpectrumSolver
from .extraction import (ExtractionReport, adiabaticity_check,
                         default_energy_grid, extract_at_energy,
                         extract_at_top, extract_c_from_density)
from .oracle import OracleConfig, auto_config, converge, diagonalize
from .potentials import (PadeParams, PotentialModel, from_spec,
                         generate_from_pade, load_tabulated,
                         load_tabulated_csv, make_harmonic, make_tanh2_well,
                         s_map, turning_points)
from .quadrature import (MomentIntegrals, PhaseSplit, QuadResult,
                         delta1_raw_integral, moment_integrals,
                         phase_derivative, phase_integral, tanh_sinh)
from .spectrum import (LevelRecord, SpectrumSummary, compare_spectra,
                       count_levels, default_correction_source, solve_level,
                       state_density)

__version__ = "0.1.0"

__all__ = [
    "CorrectionSet", "correction_set", "delta1_basic", "delta1_closed",
    "delta1_direct", "delta_from_delta1", "gamma_diagnostic",
    "ConfigError", "NumericsError", "RefWKBError",
    "PadeExtractor", "SpectrumSolver",
    "ExtractionReport", "adiabaticity_check", "default_energy_grid",
    "extract_at_energy", "extract_at_top", "extract_c_from_density",
    "OracleConfig", "auto_config", "converge", "diagonalize",
    "PadeParams", "PotentialModel", "from_spec", "generate_from_pade",
    "load_tabulated", "load_tabulated_csv", "make_harmonic",
    "make_tanh2_well", "s_map", "turning_points",
    "MomentIntegrals", "PhaseSplit", "QuadResult", "delta1_raw_integral",
    "moment_integrals", "phase_derivative", "phase_integral", "tanh_sinh",
    "LevelRecord", "SpectrumSummary", "compare_spectra", "count_levels",
    "default_correction_source", "solve_level", "state_density",
]
