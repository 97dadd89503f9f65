"""Command-line front end: JSON configs in, tables/CSV out.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .corrections import correction_set, delta_from_delta1
from .errors import ConfigError, NumericsError, RefWKBError
from .extraction import (adiabaticity_check, default_energy_grid,
                         extract_at_top)
from .oracle import auto_config, converge
from .potentials import from_spec, turning_points
from .quadrature import phase_derivative, phase_integral
from .spectrum import compare_spectra, count_levels, default_correction_source

SPECTRUM_HEADER = ("n,eps_wkb,eps_improved,eps_oracle,"
                   "abs_err_wkb,abs_err_improved,delta_used")
PLOT_HEADER = "eps,phi,delta1,delta,density"

_SOURCE_BY_FLAG = {
    "basic": "basic_well",
    "closed": "closed_form",
    "direct": "direct_numeric",
}

SEED_CONFIGS = {
    "tanh2_U0.01.json": {"kind": "tanh2", "beta": 1.0, "U": 0.01, "p": 1.0},
    "tanh2_U4.json": {"kind": "tanh2", "beta": 1.0, "U": 4.0, "p": 1.0},
    "tanh2_U25.json": {"kind": "tanh2", "beta": 1.0, "U": 25.0, "p": 1.0},
    "tanh2_U100.json": {"kind": "tanh2", "beta": 1.0, "U": 100.0, "p": 1.0},
    "harmonic.json": {"kind": "harmonic", "beta": 1.0, "k": 1.0},
    "pade_b005_g001.json": {"kind": "pade", "beta": 1.0, "k": 2.0,
                            "c": 0.04, "b": 0.05, "g": 0.01},
    "pade_b0_g002.json": {"kind": "pade", "beta": 1.0, "k": 5.0,
                          "c": 0.04, "b": 0.0, "g": 0.02},
}


def _fmt(v) -> str:
    if v is None:
        return ""
    return format(float(v), ".12g")


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _load_model(path: str):
    try:
        with open(path) as fh:
            spec = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: malformed JSON ({exc})") from exc
    return from_spec(spec)


def _source(args, model) -> str:
    if args.correction is None:
        return default_correction_source(model)
    return _SOURCE_BY_FLAG[args.correction]


def _oracle_levels(model, emax, n_base=2001):
    cfg = auto_config(model, energy_cutoff=emax if not model.finite else None,
                      grid_points_N=n_base)
    levels, tol = converge(model, cfg)
    return levels, tol


def _spectrum_csv(summary) -> str:
    lines = [SPECTRUM_HEADER]
    for r in summary.levels:
        lines.append(",".join([
            str(r.n), _fmt(r.eps_wkb), _fmt(r.eps_improved),
            _fmt(r.eps_oracle), _fmt(r.abs_err_wkb),
            _fmt(r.abs_err_improved), _fmt(r.delta_used),
        ]))
    return "\n".join(lines) + "\n"


def _energy_list(args, model):
    if args.energies:
        return [float(tok) for tok in args.energies.split(",")]
    if model.finite:
        return [float(e) for e in default_energy_grid(model)]
    raise ConfigError("infinite wells need --energies")


def cmd_spectrum(args) -> int:
    model = _load_model(args.config)
    source = _source(args, model)
    oracle = None
    if args.oracle:
        oracle, _ = _oracle_levels(model, args.emax)
    summary = compare_spectra(model, oracle, correction_source=source,
                              eps_max=args.emax)
    _write_text(args.out, _spectrum_csv(summary))
    return 0


def cmd_compare(args) -> int:
    model = _load_model(args.config)
    source = _source(args, model)
    oracle, tol = _oracle_levels(model, args.emax)
    summary = compare_spectra(model, oracle, correction_source=source,
                              eps_max=args.emax)
    _write_text(args.out, _spectrum_csv(summary))
    s = summary.stats
    for mode in ("wkb", "improved"):
        mx = s.get(f"max_abs_err_{mode}")
        mn = s.get(f"mean_abs_err_{mode}")
        print(f"{mode}: levels={s[f'count_{mode}']} "
              f"max_abs_err={_fmt(mx)} mean_abs_err={_fmt(mn)}")
    print(f"oracle: levels={s['count_oracle']} achieved_tol={_fmt(tol)}")
    if args.plot_data:
        _write_text(args.plot_data, _plot_csv(model, source, args.emax))
    return 0


def _plot_csv(model, source, emax) -> str:
    if model.finite:
        top = model.height_U
    else:
        if emax is None:
            raise ConfigError("infinite wells need --emax for plot data")
        top = emax
    lines = [PLOT_HEADER]
    for i in range(1, 65):
        eps = top * i / 65.0
        phi = phase_integral(model, eps).phi_total
        cs = correction_set(model, _clamp_for_source(model, eps, source),
                            source=source)
        dens = phase_derivative(model, eps).value
        lines.append(",".join([_fmt(eps), _fmt(phi), _fmt(cs.delta1),
                               _fmt(cs.delta_total), _fmt(dens)]))
    return "\n".join(lines) + "\n"


def _clamp_for_source(model, eps, source):
    # the direct-numeric stencil needs interior room
    if source == "direct_numeric" and model.finite:
        return min(max(eps, 0.02 * model.height_U), 0.96 * model.height_U)
    return eps


def cmd_extract(args) -> int:
    model = _load_model(args.config)
    if not model.finite:
        print("error: extraction at the well top needs a finite well; "
              "use the density-based c extraction instead", file=sys.stderr)
        return 2
    report = extract_at_top(model)
    U = model.height_U
    gammas = []
    for frac in (0.25, 0.5, 0.75):
        cs = correction_set(model, frac * U, source="direct_numeric")
        gammas.append((frac * U, cs.gamma))
    grid = default_energy_grid(model)
    ratios = adiabaticity_check(model, grid)
    rows = [("k", report.params.k), ("c", report.params.c),
            ("b", report.params.b), ("g", report.params.g),
            ("eps_used", report.eps_used),
            ("residual_b", report.residuals["b"]),
            ("residual_g", report.residuals["g"]),
            ("valid", int(report.valid)),
            ("downstream", report.downstream)]
    for eps, gm in gammas:
        rows.append((f"gamma@{_fmt(eps)}", gm))
    for eps, ratio in zip(grid, ratios):
        rows.append((f"adiabaticity@{_fmt(eps)}",
                     "absent" if ratio is None else ratio))
    for key, val in rows:
        print(f"{key} = {val if isinstance(val, str) else _fmt(val)}")
    if args.out:
        lines = ["key,value"]
        for key, val in rows:
            lines.append(f"{key},{val if isinstance(val, str) else _fmt(val)}")
        _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_delta1(args) -> int:
    model = _load_model(args.config)
    source = _source(args, model)
    energies = _energy_list(args, model)
    lines = ["eps,delta1,delta,delta3,gamma"]
    for eps in energies:
        cs = correction_set(model, eps, source=source)
        lines.append(",".join([_fmt(eps), _fmt(cs.delta1),
                               _fmt(cs.delta_total), _fmt(cs.delta3),
                               _fmt(cs.gamma)]))
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_density(args) -> int:
    model = _load_model(args.config)
    if args.energies:
        energies = [float(tok) for tok in args.energies.split(",")]
    else:
        if model.finite:
            top = model.height_U
        elif args.emax is not None:
            top = args.emax
        else:
            raise ConfigError("infinite wells need --emax or --energies")
        energies = [top * i / 65.0 for i in range(1, 65)]
    lines = ["eps,density"]
    for eps in energies:
        lines.append(f"{_fmt(eps)},{_fmt(phase_derivative(model, eps).value)}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_generate(args) -> int:
    model = _load_model(args.config)
    if model.kind != "pade_generated":
        raise ConfigError("generate expects a 'pade' potential spec")
    xm, xp = turning_points(model, 0.999 * model.height_U)
    xs = np.linspace(xm, xp, 2001)
    vs = model.evaluate(xs)
    lines = ["x,V"]
    for x, v in zip(xs, vs):
        lines.append(f"{_fmt(x)},{_fmt(v)}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_oracle(args) -> int:
    model = _load_model(args.config)
    if not model.finite and args.emax is None:
        raise ConfigError("infinite wells need --emax")
    levels, tol = _oracle_levels(model, args.emax, n_base=args.points)
    lines = ["n,eps"]
    for n, eps in enumerate(levels):
        lines.append(f"{n},{_fmt(eps)}")
    _write_text(args.out, "\n".join(lines) + "\n")
    print(f"achieved_tol={_fmt(tol)}", file=sys.stderr)
    return 0


def cmd_count(args) -> int:
    model = _load_model(args.config)
    summary = count_levels(model, _source(args, model))
    print(f"n_levels={summary.n_levels} phi_at_top={_fmt(summary.phi_at_top)}")
    return 0


def _seed_examples(directory: str) -> int:
    import os

    os.makedirs(directory, exist_ok=True)
    for name, spec in SEED_CONFIGS.items():
        with open(os.path.join(directory, name), "w") as fh:
            json.dump(spec, fh, indent=2, sort_keys=True)
            fh.write("\n")
    print(f"wrote {len(SEED_CONFIGS)} configs to {directory}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="refwkb",
        description="Bound-state spectra from phase integrals with "
                    "reference-potential corrections.",
    )
    parser.add_argument("--seed-examples", metavar="DIR",
                        help="write the built-in benchmark configs and exit")
    sub = parser.add_subparsers(dest="command")

    def add(name, func, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--config", required=True, help="potential spec JSON")
        p.add_argument("--out", help="output CSV path (default: stdout)")
        p.add_argument("--correction", choices=sorted(_SOURCE_BY_FLAG),
                       help="correction source (default: by potential kind)")
        p.add_argument("--emax", type=float,
                       help="energy ceiling for infinite wells")
        p.set_defaults(func=func)
        return p

    p = add("spectrum", cmd_spectrum, help="solve the spectrum to CSV")
    p.add_argument("--oracle", action="store_true",
                   help="attach diagonalization energies and errors")
    add("extract", cmd_extract, help="recover (k, c, b, g) from the phase split")
    p = add("delta1", cmd_delta1, help="first correction over an energy grid")
    p.add_argument("--energies", help="comma-separated energies")
    p = add("density", cmd_density, help="state density over an energy grid")
    p.add_argument("--energies", help="comma-separated energies")
    add("generate", cmd_generate, help="tabulate a generated well as (x, V) CSV")
    p = add("oracle", cmd_oracle, help="diagonalization levels to CSV")
    p.add_argument("--points", type=int, default=2001,
                   help="base grid size before refinement")
    p = add("compare", cmd_compare,
            help="three-way benchmark: wkb / improved / oracle")
    p.add_argument("--plot-data", help="write a 64-point energy scan CSV")
    add("count", cmd_count, help="number of bound levels")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.seed_examples:
        return _seed_examples(args.seed_examples)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericsError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except RefWKBError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
