import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import refwkb as rw
from refwkb.errors import NumericsError


class TestExtractAtTop:
    def test_tanh2_gives_zero_b_g(self, tanh25):
        rep = rw.extract_at_top(tanh25)
        assert rep.params.k == 5.0
        assert rep.params.c == pytest.approx(0.04, abs=1e-12)
        assert abs(rep.params.b) < 1e-7
        assert abs(rep.params.g) < 1e-7
        assert rep.valid
        assert rep.downstream == "closed_form"

    def test_roundtrip_asymmetric(self, pade_asym):
        rep = rw.extract_at_top(pade_asym)
        assert rep.params.b == pytest.approx(0.05, abs=1e-6)
        assert rep.params.g == pytest.approx(0.01, abs=1e-6)
        assert rep.downstream == "direct_numeric"

    def test_roundtrip_g_only(self):
        model = rw.generate_from_pade(rw.PadeParams(k=5.0, c=0.04, g=0.02), 1.0)
        rep = rw.extract_at_top(model)
        assert abs(rep.params.b) < 1e-7
        assert rep.params.g == pytest.approx(0.02, abs=1e-6)
        assert rep.downstream == "closed_form"

    def test_requires_finite(self, harmonic):
        with pytest.raises(ValueError):
            rw.extract_at_top(harmonic)

    @given(b=st.floats(-0.05, 0.05), g=st.floats(-0.01, 0.01))
    @settings(max_examples=10, deadline=None)
    def test_roundtrip_property(self, b, g):
        params = rw.PadeParams(k=2.0, c=0.04, b=b, g=g)
        model = rw.generate_from_pade(params, 1.0)
        rep = rw.extract_at_top(model)
        tol_b = max(1e-4 / math.sqrt(25.0), 20.0 * rep.residuals["b"])
        tol_g = max(1e-4 / 25.0, 20.0 * rep.residuals["g"])
        assert rep.params.b == pytest.approx(b, abs=tol_b)
        assert rep.params.g == pytest.approx(g, abs=tol_g)


class TestExtractAtEnergy:
    @pytest.mark.parametrize("eps", [5.0, 12.5, 20.0])
    def test_tanh2_all_energies(self, tanh25, eps):
        rep = rw.extract_at_energy(tanh25, eps)
        assert abs(rep.params.b) < 1e-7
        assert abs(rep.params.g) < 1e-7

    def test_matches_top_route_at_the_top(self, pade_asym):
        top = rw.extract_at_top(pade_asym)
        at = rw.extract_at_energy(pade_asym, pade_asym.height_U)
        assert at.params.b == pytest.approx(top.params.b, abs=1e-6)
        assert at.params.g == pytest.approx(top.params.g, abs=1e-6)

    def test_rejects_out_of_range(self, tanh25):
        with pytest.raises(ValueError):
            rw.extract_at_energy(tanh25, 26.0)
        with pytest.raises(ValueError):
            rw.extract_at_energy(tanh25, 0.0)

    def test_degenerate_at_tiny_energy(self, tanh25):
        with pytest.raises(NumericsError):
            rw.extract_at_energy(tanh25, 1e-13)


class TestDensityRoute:
    @pytest.mark.parametrize("eps", [5.0, 16.0, 24.0])
    def test_tanh2_recovers_c(self, tanh25, eps):
        assert rw.extract_c_from_density(tanh25, eps) \
            == pytest.approx(0.04, abs=1e-8)

    def test_harmonic_gives_zero(self, harmonic):
        for eps in (1.0, 4.0, 9.0):
            assert abs(rw.extract_c_from_density(harmonic, eps)) < 1e-8

    def test_printed_variant_sign_flipped(self, tanh25):
        good = rw.extract_c_from_density(tanh25, 16.0)
        bad = rw.extract_c_from_density(tanh25, 16.0, printed_signs=True)
        assert bad == pytest.approx(-good, abs=1e-8)


class TestAdiabaticity:
    def test_tanh2_flat(self, tanh25):
        ratios = rw.adiabaticity_check(tanh25, [5.0, 12.5, 20.0])
        assert all(r is not None and r < 1e-5 for r in ratios)

    def test_harmonic_absent(self, harmonic):
        ratios = rw.adiabaticity_check(harmonic, [2.0])
        assert ratios == [None]

    def test_needs_energies(self, tanh25):
        with pytest.raises(ValueError):
            rw.adiabaticity_check(tanh25, [])


class TestDefaultGrid:
    def test_range_and_order(self, tanh25):
        grid = rw.default_energy_grid(tanh25)
        assert len(grid) == 9
        assert np.all(np.diff(grid) > 0.0)
        assert grid[0] >= 0.1 * 25.0 - 1e-12
        assert grid[-1] <= 0.9 * 25.0 + 1e-12

    def test_requires_finite(self, harmonic):
        with pytest.raises(ValueError):
            rw.default_energy_grid(harmonic)
