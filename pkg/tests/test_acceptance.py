"""Acceptance gate: nine end-to-end checks, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict
lines; each check is an independent test so a red line pinpoints the
failing guarantee.
"""
import json
import math

import numpy as np
import pytest

import refwkb as rw
from refwkb.cli import main
from conftest import exact_tanh2_defect, exact_tanh2_levels


def _verdict(num: int, name: str, ok: bool) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {name}")
    assert ok, f"criterion {num} ({name}) failed"


def test_criterion_1_resummed_delta_exact_on_basic_well(tanh25):
    exact = exact_tanh2_levels(25.0)
    cfg = rw.auto_config(tanh25, grid_points_N=2001)
    oracle, _ = rw.converge(tanh25, cfg)
    ok = len(oracle) == 5
    for n, e_exact in enumerate(exact):
        e_imp = rw.solve_level(tanh25, n, mode="improved").eps_improved
        ok &= abs(e_imp - e_exact) <= 1e-5 * e_exact
        ok &= abs(e_imp - oracle[n]) <= 2e-5 * e_exact
    e_wkb = rw.solve_level(tanh25, 0, mode="wkb").eps_wkb
    ok &= abs(abs(e_wkb - exact[0]) - 0.2251) <= 1e-3
    _verdict(1, "resummed correction exact on the basic well", ok)


def test_criterion_2_direct_delta1_value(tanh25):
    ok = True
    for eps in (5.0, 12.5, 20.0):
        d1 = rw.delta1_direct(tanh25, eps)
        ok &= abs(d1 + 0.025) <= 1e-5
        ok &= abs(rw.gamma_diagnostic(tanh25, eps)) < 1e-4
    _verdict(2, "direct-numeric delta1 equals -beta p/(8 sqrt U)", ok)


def test_criterion_3_parameter_extraction_roundtrip():
    ok = True
    for k, c, b, g in ((2.0, 0.04, 0.05, 0.01), (5.0, 0.04, 0.0, 0.02)):
        model = rw.generate_from_pade(rw.PadeParams(k=k, c=c, b=b, g=g), 1.0)
        rep = rw.extract_at_top(model)
        ok &= abs(rep.params.b - b) <= 1e-4
        ok &= abs(rep.params.g - g) <= 1e-4
    _verdict(3, "rational-slope parameters recovered at the well top", ok)


def test_criterion_4_shallow_well_limit():
    ok = True
    defects = []
    for U in (1.0, 0.1, 0.01):
        m = rw.make_tanh2_well(U, 1.0, 1.0)
        delta = rw.delta_from_delta1(rw.delta1_basic(U, 1.0, 1.0))
        defects.append(delta)
        ok &= abs(delta - exact_tanh2_defect(U)) <= 1e-6
        ok &= rw.count_levels(m).n_levels == 1
        rec = rw.solve_level(m, 0, mode="improved")
        ok &= 0.0 < rec.eps_improved < U
    # monotone approach to -1/2 as the well becomes shallow
    ok &= defects[0] > defects[1] > defects[2] > -0.5
    _verdict(4, "shallow wells keep one level, defect approaches -1/2", ok)


def test_criterion_5_sign_arbitration():
    ok = True
    cases = [rw.PadeParams(k=2.0, c=0.04, g=s * 0.01) for s in (1, -1)] + \
            [rw.PadeParams(k=2.0, c=0.04, b=s * 0.05) for s in (1, -1)]
    for params in cases:
        model = rw.generate_from_pade(params, 1.0)
        U = 1.0 / params.c
        for frac in (0.2, 0.5, 0.8):
            eps = frac * U
            closed = rw.delta1_closed(params, 1.0, eps)
            direct = rw.delta1_direct(model, eps)
            ok &= abs(closed - direct) <= 1e-5 * abs(direct)
            if frac == 0.8:
                printed = rw.delta1_closed(params, 1.0, eps,
                                           printed_signs=True)
                ok &= abs(printed - direct) > 1e-4 * abs(direct)
    _verdict(5, "series-consistent signs agree with the direct route, "
                "printed variants do not", ok)


def test_criterion_6_density_based_c(tanh25, harmonic):
    ok = True
    for eps in (5.0, 16.0, 24.0):
        ok &= abs(rw.extract_c_from_density(tanh25, eps) - 0.04) <= 1e-6
    ok &= abs(rw.extract_c_from_density(harmonic, 4.0)) <= 1e-8
    _verdict(6, "state density recovers c", ok)


def test_criterion_7_level_counting():
    ok = True
    counts = {}
    for U in (25.0, 100.0):
        m = rw.make_tanh2_well(U, 1.0, 1.0)
        counts[U] = rw.count_levels(m).n_levels
        oracle = rw.diagonalize(m, rw.auto_config(m, grid_points_N=2001))
        ok &= counts[U] == len(oracle)
    ok &= counts[25.0] == 5 and counts[100.0] == 10
    # N grows like sqrt(U): doubling sqrt(U) doubles the count
    ok &= counts[100.0] == 2 * counts[25.0]
    _verdict(7, "level counts match the oracle and scale like sqrt(U)", ok)


def test_criterion_8_delta3_consistency():
    rng = np.random.default_rng(20260823)
    d1 = rng.uniform(-0.1, 0.1, size=10_000)
    delta = rw.delta_from_delta1(d1)
    resid = np.abs(delta - d1 + 4.0 * d1 ** 3)
    ok = bool(np.all(resid <= 48.0 * np.abs(d1) ** 5 + 1e-15))
    _verdict(8, "resummation reproduces the cubic term", ok)


def test_criterion_9_determinism(tmp_path):
    cfg = tmp_path / "bench.json"
    cfg.write_text(json.dumps(
        {"kind": "tanh2", "beta": 1.0, "U": 25.0, "p": 1.0}))
    outs = []
    for tag in ("a", "b"):
        out = tmp_path / f"{tag}.csv"
        code = main(["compare", "--config", str(cfg), "--out", str(out)])
        assert code == 0
        outs.append(out.read_bytes())
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    _verdict(9, "repeated benchmark runs are byte-identical", ok)
