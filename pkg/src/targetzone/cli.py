"""Command-line front end: calibrate / solve / simulate / figure.

Reports echo every resolved setting so a run can be audited and repeated;
identical configuration and seed reproduce reports and CSV files byte for
byte. Figure CSVs are long-format so any plotting tool can pivot them.
Times are reported as time remaining t; calendar time is tau = T - t.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .config import RunConfig, parse_config
from .errors import ConfigError, TargetZoneError
from .model import Band, ModelParams
from .pde import Surface, boundary_paths, slice_at, solve_nonstationary
from .stationary import (
    calibrate_bm,
    calibrate_symmetric,
    eval_stationary,
    eval_stationary_bm,
    eval_stationary_bm_slope,
    eval_stationary_slope,
)
from .stochastic import feynman_kac_estimate

# Section times for figure 2 as fractions of the horizon; at the default
# T = 3 these are the figure's times 0, 0.15, 0.6, 1.95, 3.
_SECTION_FRACTIONS = (0.0, 0.05, 0.2, 0.65, 1.0)
_FIG4_CURVE_POINTS = 201


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def write_csv(
    path: str | Path,
    header: Sequence[str],
    rows: Iterable[Sequence],
    comments: Sequence[str] = (),
) -> None:
    with open(path, "w", newline="") as fh:
        for comment in comments:
            fh.write(f"# {comment}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def _echo(pairs: Iterable[tuple[str, object]]) -> None:
    for key, value in pairs:
        print(f"  {key} = {_fmt(value)}")


def _param_pairs(config: RunConfig) -> list[tuple[str, object]]:
    p = config.params
    return [
        ("alpha", p.alpha),
        ("rho", p.rho),
        ("sigma", p.sigma),
        ("mu", p.mu),
        ("e_bar", config.e_bar),
        ("horizon", p.horizon),
    ]


def _calibrated_band(config: RunConfig):
    """Band plus a stationary evaluator; rho = 0 routes to the BM reference."""
    p = config.params
    if p.rho == 0:
        coefs, band = calibrate_bm(p.alpha, p.sigma, config.e_bar)
        return band, coefs, (lambda f: eval_stationary_bm(coefs, f))
    if p.mu != 0:
        raise ConfigError("mu", "band calibration is implemented for the symmetric case mu = 0")
    coefs, band = calibrate_symmetric(p, config.e_bar)
    return band, coefs, (lambda f: eval_stationary(p, coefs, f))


def cmd_calibrate(config: RunConfig) -> int:
    p = config.params
    print("targetzone calibrate")
    _echo(_param_pairs(config))
    if p.rho == 0:
        coefs, band = calibrate_bm(p.alpha, p.sigma, config.e_bar)
        res_value = eval_stationary_bm(coefs, band.f_hi) - config.e_bar
        res_slope = eval_stationary_bm_slope(coefs, band.f_hi)
        _echo(
            [
                ("model", "bm"),
                ("lambda", coefs.lam),
                ("a_coef", coefs.a_coef),
                ("f_bar", band.f_hi),
                ("residual_value", res_value),
                ("residual_slope", res_slope),
            ]
        )
    else:
        coefs, band = calibrate_symmetric(p, config.e_bar)
        res_value = eval_stationary(p, coefs, band.f_hi) - config.e_bar
        res_slope = eval_stationary_slope(p, coefs, band.f_hi)
        _echo(
            [
                ("model", "ou"),
                ("c1", coefs.c1),
                ("c2", coefs.c2),
                ("f_bar", band.f_hi),
                ("residual_value", res_value),
                ("residual_slope", res_slope),
            ]
        )
    return 0


def _solve(config: RunConfig) -> tuple[Surface, Band, object]:
    band, coefs, stationary = _calibrated_band(config)
    surface = solve_nonstationary(config.params, band, config.grid)
    return surface, band, stationary


def cmd_solve(config: RunConfig) -> int:
    surface, band, stationary = _solve(config)
    final = surface.values[-1]
    gap = float(np.max(np.abs(final - np.array([stationary(f) for f in surface.f_axis]))))
    print("targetzone solve")
    _echo(_param_pairs(config))
    _echo(
        [
            ("nf", config.grid.nf),
            ("nt", config.grid.nt),
            ("theta", config.grid.theta),
            ("f_bar", band.f_hi),
            ("edge_value_at_horizon", float(final[-1])),
            ("max_gap_to_stationary_at_horizon", gap),
        ]
    )
    if config.output_path:
        _write_surface(config.output_path, surface)
        print(f"  wrote {config.output_path}")
    return 0


def cmd_simulate(config: RunConfig) -> int:
    band, _, _ = _calibrated_band(config)
    f0 = config.f0 if config.f0 is not None else 0.5 * band.f_hi
    t = config.probe_t if config.probe_t is not None else config.params.horizon
    est = feynman_kac_estimate(
        config.params, band, f0, t, config.mc.n_paths, config.mc.dt, config.mc.seed
    )
    print("targetzone simulate")
    _echo(_param_pairs(config))
    _echo(
        [
            ("f_bar", band.f_hi),
            ("f0", f0),
            ("t", t),
            ("paths", est.n_paths),
            ("dt", config.mc.dt),
            ("seed", est.seed),
            ("mean", est.mean),
            ("std_error", est.std_error),
        ]
    )
    if config.output_path:
        write_csv(
            config.output_path,
            ["f0", "t", "n_paths", "dt", "seed", "mean", "std_error"],
            [[f0, t, est.n_paths, config.mc.dt, est.seed, est.mean, est.std_error]],
        )
        print(f"  wrote {config.output_path}")
    return 0


def _write_surface(path: str | Path, surface: Surface) -> None:
    def rows():
        for k, t in enumerate(surface.t_axis):
            for i, f in enumerate(surface.f_axis):
                yield (float(t), float(f), float(surface.values[k, i]))

    write_csv(path, ["t", "f", "e"], rows())


def cmd_figure(which: int, config: RunConfig) -> int:
    out = config.output_path or f"figure{which}.csv"
    print(f"targetzone figure {which}")
    _echo(_param_pairs(config))

    if which == 1:
        surface, _, _ = _solve(config)
        _write_surface(out, surface)
        written = [out]
    elif which == 2:
        surface, _, _ = _solve(config)
        rows = []
        for fraction in _SECTION_FRACTIONS:
            section = slice_at(surface, fraction * config.params.horizon)
            rows.extend((section.t, float(f), float(e)) for f, e in zip(section.f, section.e))
        write_csv(out, ["t", "f", "e"], rows)
        written = [out]
    elif which == 3:
        surface, _, _ = _solve(config)
        paths = boundary_paths(surface)
        write_csv(out, ["t", "e_lower", "e_upper"], paths.rows())
        written = [out]
    elif which == 4:
        written = _write_fig4(out, config)
    else:
        raise ConfigError("which", f"must be 1, 2, 3 or 4, got {which}")

    for path in written:
        print(f"  wrote {path}")
    return 0


def _write_fig4(out: str, config: RunConfig) -> list[str]:
    """One stationary curve per model tag, each on its own calibrated band."""
    p = config.params
    stem = Path(out)
    written: list[str] = []

    def curve_path(tag: str) -> Path:
        return stem.with_name(f"{stem.stem}_{tag}{stem.suffix or '.csv'}")

    bm_coefs, bm_band = calibrate_bm(p.alpha, p.sigma, config.e_bar)
    f_grid = np.linspace(bm_band.f_lo, bm_band.f_hi, _FIG4_CURVE_POINTS)
    path = curve_path("bm")
    write_csv(
        path,
        ["f", "e"],
        [(float(f), eval_stationary_bm(bm_coefs, float(f))) for f in f_grid],
        comments=[f"f_bar={_fmt(bm_band.f_hi)}"],
    )
    written.append(str(path))

    for rho in config.rho_list:
        params = ModelParams(p.alpha, rho, p.sigma, 0.0, p.horizon)
        coefs, band = calibrate_symmetric(params, config.e_bar)
        f_grid = np.linspace(band.f_lo, band.f_hi, _FIG4_CURVE_POINTS)
        path = curve_path(f"ou_rho={rho:g}")
        write_csv(
            path,
            ["f", "e"],
            [(float(f), eval_stationary(params, coefs, float(f))) for f in f_grid],
            comments=[f"f_bar={_fmt(band.f_hi)}"],
        )
        written.append(str(path))
    return written


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    for flag in (
        "--alpha",
        "--rho",
        "--sigma",
        "--mu",
        "--e-bar",
        "--horizon",
        "--theta",
        "--dt",
        "--f0",
        "--t",
    ):
        common.add_argument(flag)
    for flag in ("--nf", "--nt", "--paths", "--seed"):
        common.add_argument(flag)
    common.add_argument("--rho-list")
    common.add_argument("--config", dest="config_path")
    common.add_argument("--out")

    parser = argparse.ArgumentParser(
        prog="targetzone",
        description=(
            "Target-zone exchange rate with a fixed entry date and a regulated "
            "mean-reverting fundamental: calibration, PDE solve, Monte-Carlo "
            "check, and figure-ready CSV exports."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("calibrate", parents=[common], help="solve the stationary band calibration")
    sub.add_parser("solve", parents=[common], help="solve the time-dependent problem")
    sub.add_parser("simulate", parents=[common], help="Feynman-Kac Monte-Carlo estimate")
    fig = sub.add_parser("figure", parents=[common], help="write figure data as CSV")
    fig.add_argument("--which", type=int, choices=(1, 2, 3, 4), required=True)
    return parser


_FLAG_KEYS = (
    "alpha",
    "rho",
    "sigma",
    "mu",
    "e_bar",
    "horizon",
    "theta",
    "dt",
    "f0",
    "t",
    "nf",
    "nt",
    "paths",
    "seed",
    "rho_list",
    "out",
)


def _resolve_config(ns: argparse.Namespace) -> RunConfig:
    if ns.config_path:
        path = Path(ns.config_path)
        if not path.is_file():
            raise ConfigError("config", f"no such file: {path}")
        file_text = path.read_text()
    else:
        file_text = ""
    overrides = [(key, getattr(ns, key)) for key in _FLAG_KEYS if getattr(ns, key) is not None]
    return parse_config(file_text, overrides)


def main(argv: list[str] | None = None) -> int:
    ns = _build_parser().parse_args(argv)
    try:
        config = _resolve_config(ns)
        if ns.command == "calibrate":
            return cmd_calibrate(config)
        if ns.command == "solve":
            return cmd_solve(config)
        if ns.command == "simulate":
            return cmd_simulate(config)
        return cmd_figure(ns.which, config)
    except (TargetZoneError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
