"""Small input-validation helpers used by constructors and estimators."""
from __future__ import annotations

import math
from typing import Any


def check_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")
    return value


def check_in_range(name: str, value: float, lo: float, hi: float,
                   inclusive_hi: bool = False) -> float:
    value = float(value)
    ok = lo < value <= hi if inclusive_hi else lo < value < hi
    if not ok:
        bracket = "]" if inclusive_hi else ")"
        raise ValueError(f"{name}={value!r} outside ({lo:g}, {hi:g}{bracket}")
    return value


def check_potential(potential: Any):
    """Accept a PotentialModel or a JSON-style spec dict, return a model."""
    from .potentials import PotentialModel, from_spec

    if isinstance(potential, PotentialModel):
        return potential
    if isinstance(potential, dict):
        return from_spec(potential)
    raise TypeError(
        "expected a PotentialModel or a potential spec dict, "
        f"got {type(potential).__name__}"
    )
