"""Command-line interface: ``tfa <subcommand> [--config PATH] [--out CSV] [--svg SVG]``.

Exit codes: 0 success, 2 configuration error, 3 numerical check failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import replace

import numpy as np

from . import asymptotics, dispersion, dynamics, wavelab
from .compare import COMPARE_COLUMNS, MalformedSeriesError, compare, read_series
from .config import MODELS, ConfigError, RunConfig, default_config, load_config
from .mixture import (DegenerateMixtureError, equilibrium_speed, nguyen_bubbly, nguyen_slug,
                      wood_minimum, wood_speed, wood_speed_isothermal_gas)
from .polyroots import NonConvergenceError
from .svg import Series, line_plot
from .tables import csv_text, write_atomic

EXIT_OK, EXIT_CONFIG, EXIT_CHECK, EXIT_IO = 0, 2, 3, 4


class Output:
    def __init__(self, csv: str, svg: str | None = None, failed: list[str] | None = None,
                 summary: str = ""):
        self.csv, self.svg, self.failed, self.summary = csv, svg, failed or [], summary


def _require_sweep(cfg: RunConfig, variable: str, default):
    if cfg.sweep is None:
        return np.asarray(default, dtype=float)
    if cfg.sweep.variable != variable:
        raise ConfigError("sweep.variable", f"this subcommand sweeps '{variable}'")
    return cfg.sweep.grid()


def _models(cfg: RunConfig) -> tuple[str, ...]:
    m = cfg.param("model")
    return MODELS if m == "all" else (m,)


# subcommands ---------------------------------------------------------------------

def sos_sweep(cfg: RunConfig) -> Output:
    alphas = _require_sweep(cfg, "alpha", np.linspace(0.0, 1.0, 101))
    kappa = cfg.param("kappa")
    header = ("alpha_plus", "c_w", "c_w_isothermal", "c_0", "c_kappa", "c_eq",
              "nguyen_slug", "nguyen_bubbly")
    rows = []
    for a in alphas:
        m = cfg.mixture(float(a))
        rows.append((float(a), wood_speed(m), wood_speed_isothermal_gas(m), dynamics.c0(m),
                     dynamics.c_kappa(m, kappa), equilibrium_speed(m)[1],
                     nguyen_slug(m), nguyen_bubbly(m)))
    svg = None
    if cfg.svg is not None:
        cols = list(zip(*rows))
        c_min = wood_minimum(cfg.plus, cfg.minus).c_min
        svg = line_plot([Series("c_w", cols[0], cols[1]),
                         Series(f"c_kappa (kappa={kappa:g})", cols[0], cols[4]),
                         Series("c_0", cols[0], cols[3])],
                        title="Mixture sound speeds", xlabel="alpha+", ylabel="m/s", ylog=True,
                        hlines=[(c_min, f"c_min = {c_min:.4g} m/s")])
    return Output(csv_text(header, rows), svg)


def dispersion_sweep(cfg: RunConfig) -> Output:
    ks = _require_sweep(cfg, "k", np.geomspace(1.0, 1.0e4, 41))
    mix, kappa = cfg.mixture(), cfg.param("kappa")
    rows = []
    curves: dict[str, tuple[list, list]] = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for model in _models(cfg):
            for k in ks:
                k = float(k)
                if model == "one-fluid":
                    poly = dispersion.ns_poly(cfg.minus, k)
                elif model == "one-velocity":
                    poly = dispersion.two_fluid_one_velocity_poly(mix, k)
                else:
                    poly = dispersion.added_mass_poly(mix, kappa, k)
                for b in dispersion.solve_poly(poly).branches:
                    rows.append((model, k, b.kind, b.phase_speed, b.attenuation))
                    if b.kind == "acoustic+":
                        xs, ys = curves.setdefault(model, ([], []))
                        xs.append(k)
                        ys.append(b.attenuation)
    svg = None
    if cfg.svg is not None:
        svg = line_plot([Series(m, *xy) for m, xy in curves.items()],
                        title="Acoustic attenuation", xlabel="k (rad/m)", ylabel="sigma (1/s)",
                        xlog=True, ylog=True)
    return Output(csv_text(("model", "k", "branch", "c_of_k", "sigma"), rows), svg)


def foldy_sweep(cfg: RunConfig) -> Output:
    omegas = _require_sweep(cfg, "omega", np.geomspace(1.0e2, 1.0e6, 201))
    mix = cfg.mixture(cfg.params.get("alpha_plus", 0.9))
    R = cfg.param("R")
    trammell_keys = ("lambda_plus", "L", "dPdT", "Cp_plus")
    with_trammell = all(key in cfg.params for key in trammell_keys)
    header = ["omega", "c_phase", "attenuation", "k_real", "k_imag"]
    if with_trammell:
        header += ["trammell_c_phase", "trammell_attenuation"]
    rows = []
    for w in omegas:
        w = float(w)
        c, att, k = dispersion.foldy_speed(mix, R, w)
        row = [w, c, att, k.real, k.imag]
        if with_trammell:
            kt = dispersion.trammell_k(mix, R, w, *(cfg.params[key] for key in trammell_keys))
            row += [w / kt.real, kt.imag]
        rows.append(row)
    svg = None
    if cfg.svg is not None:
        cols = list(zip(*rows))
        series = [Series("Foldy", cols[0], cols[1])]
        if with_trammell:
            series.append(Series("phase change", cols[0], cols[5]))
        w0 = dispersion.minnaert(mix, R)
        svg = line_plot(series, title=f"Bubbly liquid, Minnaert frequency {w0:.4g} rad/s",
                        xlabel="omega (rad/s)", ylabel="phase speed (m/s)", xlog=True, ylog=True,
                        hlines=[(wood_speed(mix), "Wood")])
    return Output(csv_text(header, rows), svg)


def asym_check(cfg: RunConfig) -> Output:
    checks = asymptotics.standard_order_checks(cfg.minus, cfg.mixture(), cfg.param("kappa"))
    rows = [(c.name, c.slope, c.expected, c.band, c.passed) for c in checks]
    failed = [c.name for c in checks if not c.passed]
    return Output(csv_text(("check", "fitted_slope", "expected", "band", "pass"), rows),
                  failed=failed)


def eig_check(cfg: RunConfig) -> Output:
    tol = cfg.params.get("tolerance", 1e-9)
    results = dynamics.eigen_suite(cfg.mixture(), cfg.param("kappa"))
    rows, failed = [], []
    for r in results:
        ok = r.rel_err <= tol
        if not ok:
            failed.append(r.model)
        for i, (got, want) in enumerate(zip(r.computed, r.expected)):
            rows.append((r.model, i, float(got), float(want), r.rel_err, ok))
    header = ("model", "index", "computed", "expected", "rel_err", "pass")
    return Output(csv_text(header, rows), failed=failed)


def wavelab_verify(cfg: RunConfig) -> Output:
    tol = cfg.params.get("tolerance", 1e-4)
    mix, kappa = cfg.mixture(), cfg.param("kappa")
    rows, failed = [], []
    for model in _models(cfg):
        fluid = cfg.minus if model == "one-fluid" else mix
        if cfg.sweep is not None:
            ks = _require_sweep(cfg, "k", [])
        else:
            ks = [wavelab.k_for_knudsen(model, fluid, kn) for kn in np.geomspace(1e-5, 1e-3, 5)]
        for k in ks:
            r = wavelab.closure(model, fluid, float(k), kappa=kappa)
            ok = r.rel_err <= tol
            if not ok:
                failed.append(f"{model} k={float(k)!r}")
            rows.append((model, float(k), r.c_predicted, r.c_measured, r.sigma_predicted,
                         r.sigma_measured, r.rel_err))
    header = ("model", "k", "c_predicted", "c_measured", "sigma_predicted", "sigma_measured",
              "rel_err")
    return Output(csv_text(header, rows), failed=failed)


def compare_data(cfg: RunConfig, data_path: str) -> Output:
    series = read_series(data_path)
    rows, rms = compare(cfg.mixture(), series)
    summary = " ".join(f"rms_{k}={v!r}" for k, v in rms.items())
    return Output(csv_text(COMPARE_COLUMNS, rows), summary=summary)


COMMANDS = {
    "sos-sweep": sos_sweep,
    "dispersion-sweep": dispersion_sweep,
    "foldy-sweep": foldy_sweep,
    "asym-check": asym_check,
    "eig-check": eig_check,
    "wavelab-verify": wavelab_verify,
    "compare-data": compare_data,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tfa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="YAML configuration file")
        p.add_argument("--defaults", help="named property preset, e.g. water-air-25C")
        p.add_argument("--out", help="CSV output path (default: outputs.csv or stdout)")
        p.add_argument("--svg", help="SVG output path")
        if name == "compare-data":
            p.add_argument("--data", required=True, help="measured series CSV: alpha,speed[,u]")
    return parser


def _load(args) -> RunConfig:
    if args.config:
        cfg = load_config(args.config)
        if args.defaults and args.defaults != cfg.defaults_tag:
            raise ConfigError("--defaults", "conflicts with the config file's 'defaults'")
        return cfg
    return default_config(args.defaults or "water-air-25C")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    cfg = replace(cfg, csv=args.out or cfg.csv, svg=args.svg or cfg.svg)
    command = COMMANDS[args.command]
    try:
        if args.command == "compare-data":
            out = command(cfg, args.data)
        else:
            out = command(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MalformedSeriesError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ArithmeticError, DegenerateMixtureError, NonConvergenceError, ValueError) as exc:
        print(f"numerical error in {args.command}: {exc}", file=sys.stderr)
        return EXIT_CHECK
    try:
        if cfg.csv:
            write_atomic(cfg.csv, out.csv)
        else:
            sys.stdout.write(out.csv)
        if cfg.svg and out.svg is not None:
            write_atomic(cfg.svg, out.svg)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    if out.summary:
        print(out.summary, file=sys.stderr)
    if out.failed:
        print(f"{args.command}: failed checks: {', '.join(out.failed)}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
