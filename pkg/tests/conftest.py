import math

import numpy as np
import pytest

import refwkb as rw


def exact_tanh2_levels(U, p=1.0, beta=1.0):
    """Closed-form spectrum of V = U tanh^2(p x): eps_n = U - (beta p)^2 (s - n)^2
    with s(s+1) = U / (beta p)^2."""
    q = U / (beta * p) ** 2
    s = (-1.0 + math.sqrt(1.0 + 4.0 * q)) / 2.0
    return [U - (beta * p) ** 2 * (s - n) ** 2 for n in range(int(math.floor(s)) + 1)]


def exact_tanh2_defect(U, p=1.0, beta=1.0):
    """The exact phase defect sqrt(U) - sqrt(1 + 4U)/2 (for beta = p = 1)."""
    assert beta == 1.0 and p == 1.0
    return math.sqrt(U) - math.sqrt(1.0 + 4.0 * U) / 2.0


@pytest.fixture(scope="session")
def tanh25():
    return rw.make_tanh2_well(25.0, 1.0, 1.0)


@pytest.fixture(scope="session")
def harmonic():
    return rw.make_harmonic(1.0, 1.0)


@pytest.fixture(scope="session")
def pade_asym():
    """Generated well with both b and g nonzero."""
    return rw.generate_from_pade(rw.PadeParams(k=2.0, c=0.04, b=0.05, g=0.01), 1.0)


@pytest.fixture(scope="session")
def perturbed_tanh2():
    """tanh^2 well times (1 + 0.1 tanh^2), which leaves the solvable family."""
    U, p = 25.0, 1.0

    def ev(x):
        t = np.tanh(p * np.asarray(x, dtype=float)) ** 2
        return U * t * (1.0 + 0.1 * t)

    def dv(x):
        x = np.asarray(x, dtype=float)
        t = np.tanh(p * x)
        return U * p * 2.0 * t * (1.0 - t * t) * (1.0 + 0.2 * t * t)

    return rw.PotentialModel(
        evaluate=ev, derivative=dv, beta=1.0,
        curvature_k=p * math.sqrt(U), height_U=1.1 * U,
        kind="tabulated", symmetric=True,
    )
