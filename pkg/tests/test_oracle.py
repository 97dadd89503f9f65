import math

import numpy as np
import pytest

import refwkb as rw
from refwkb.errors import NumericsError
from conftest import exact_tanh2_levels


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            rw.OracleConfig(domain_halfwidth_L=-1.0)
        with pytest.raises(ValueError):
            rw.OracleConfig(domain_halfwidth_L=10.0, grid_points_N=100)

    def test_auto_finite_well(self, tanh25):
        cfg = rw.auto_config(tanh25)
        assert float(tanh25.evaluate(cfg.domain_halfwidth_L)) \
            > 25.0 * (1.0 - 1e-6)

    def test_auto_infinite_needs_cutoff(self, harmonic):
        with pytest.raises(ValueError):
            rw.auto_config(harmonic)
        cfg = rw.auto_config(harmonic, energy_cutoff=10.0)
        assert float(harmonic.evaluate(cfg.domain_halfwidth_L)) >= 60.0


class TestDiagonalize:
    def test_harmonic_levels(self, harmonic):
        cfg = rw.auto_config(harmonic, energy_cutoff=9.0, grid_points_N=4001)
        levels = rw.diagonalize(harmonic, cfg)
        # exact: 2 n + 1 below the cutoff
        assert len(levels) == 5
        for n, e in enumerate(levels):
            assert e == pytest.approx(2 * n + 1, abs=2e-4)

    def test_tanh2_levels_raw(self, tanh25):
        cfg = rw.auto_config(tanh25, grid_points_N=2001)
        levels = rw.diagonalize(tanh25, cfg)
        exact = exact_tanh2_levels(25.0)
        assert len(levels) == len(exact)
        # the raw second-order scheme is only good to ~1e-3 here; converge()
        # below does the heavy lifting
        for e, x in zip(levels, exact):
            assert e == pytest.approx(x, abs=1e-2)

    def test_leaky_box_raises(self, tanh25):
        cfg = rw.OracleConfig(domain_halfwidth_L=0.5, grid_points_N=400)
        with pytest.raises(NumericsError):
            rw.diagonalize(tanh25, cfg)


class TestConverge:
    def test_tanh2_tight(self, tanh25):
        cfg = rw.auto_config(tanh25, grid_points_N=1201)
        levels, tol = rw.converge(tanh25, cfg)
        exact = exact_tanh2_levels(25.0)
        assert len(levels) == 5
        for e, x in zip(levels, exact):
            assert e == pytest.approx(x, abs=max(5.0 * tol, 1e-8))

    def test_achieved_tol_honest(self, harmonic):
        cfg = rw.auto_config(harmonic, energy_cutoff=9.0, grid_points_N=1501)
        levels, tol = rw.converge(harmonic, cfg)
        for n, e in enumerate(levels):
            assert abs(e - (2 * n + 1)) <= max(10.0 * tol, 1e-10)

    def test_tol_shrinks_with_refinement(self, tanh25):
        c1 = rw.auto_config(tanh25, grid_points_N=601)
        c2 = rw.auto_config(tanh25, grid_points_N=2401)
        _, t1 = rw.converge(tanh25, c1)
        _, t2 = rw.converge(tanh25, c2)
        assert t2 < t1

    def test_count_stable_across_grids(self, tanh25):
        counts = set()
        for n in (801, 1601, 3201):
            cfg = rw.auto_config(tanh25, grid_points_N=n)
            counts.add(len(rw.diagonalize(tanh25, cfg)))
        assert counts == {5}

    def test_empty_below_cutoff(self, harmonic):
        cfg = rw.auto_config(harmonic, energy_cutoff=0.5, grid_points_N=801)
        levels, tol = rw.converge(harmonic, cfg)
        assert levels == [] and tol == 0.0


class TestParity:
    def test_even_odd_alternation(self, tanh25):
        # eigenvectors of a symmetric well alternate even/odd with n
        cfg = rw.auto_config(tanh25, grid_points_N=1501)
        from scipy.linalg import eigh_tridiagonal

        L = cfg.domain_halfwidth_L
        N = cfg.grid_points_N
        h = 2.0 * L / (N - 1)
        x = np.linspace(-L, L, N)[1:-1]
        diag = 2.0 / h ** 2 + np.asarray(tanh25.evaluate(x))
        off = np.full(N - 3, -1.0 / h ** 2)
        vals, vecs = eigh_tridiagonal(diag, off, select="v",
                                      select_range=(-1.0, 25.0))
        for n in range(vecs.shape[1]):
            v = vecs[:, n]
            sym = np.abs(v + v[::-1]).max()
            anti = np.abs(v - v[::-1]).max()
            if n % 2 == 0:
                assert anti < sym * 1e-6
            else:
                assert sym < anti * 1e-6
