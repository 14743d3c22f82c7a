"""Command-line driver: ``estimate``, ``verify-bounds``, ``sweep`` and ``generate``.

Parameters come from an optional INI file (one section per command, plus an
optional ``[common]`` section) and are overridden by flags.

Exit codes: 0 success; 1 estimator failure or violated bound; 2 bad input
file or unwritable output; 3 parameter precondition violated.
"""

import argparse
import configparser
import os
import sys
from dataclasses import replace

import numpy as np

from . import io
from .errors import ConvergenceError, EstimatorError, ParameterError, SampleFileError
from .estimators import esprit, music
from .experiments import (
    SWEEP_METADATA,
    desk_profile,
    extract_transition_curve,
    fit_md_scaling,
    fit_transition_slope,
    paper_profile,
    run_sweep,
)
from .forward import add_noise, check_L, default_L, fourier_coefficients
from .measures import AtomicMeasure, ClumpsConfig, generate_clumps
from .metrics import matching_distance
from .plotting import loglog_svg
from .verification import run_bound_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_PARAM = 0, 1, 2, 3

class Settings:
    """Flag values layered over a config section over built-in defaults."""

    def __init__(self, args, section):
        self._args = vars(args)
        self._section = section

    def get(self, key, kind=str, default=None):
        flag = self._args.get(key.replace("-", "_"))
        if flag is not None:
            return flag
        if key in self._section:
            raw = self._section[key]
            try:
                return kind(raw)
            except ValueError:
                raise ParameterError(f"config value {key} = {raw!r} is not a valid {kind.__name__}")
        return default


def _flag(text):
    if isinstance(text, bool):
        return text
    value = str(text).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValueError(text)


_flag.__name__ = "boolean"


def _floats(text):
    return [float(v) for v in str(text).replace(";", ",").split(",") if v.strip()]


def _ints(text):
    return tuple(int(v) for v in str(text).split(",") if v.strip())


def _complexes(text):
    return [complex(v.replace(" ", "")) for v in str(text).split(",") if v.strip()]


def _load_section(path, command):
    parser = configparser.ConfigParser()
    parser.optionxform = str  # keep 'S', 'M', 'L' case-sensitive
    if path is not None:
        if not parser.read(path):
            raise SampleFileError(f"cannot read config file {path!r}")
    merged = dict(parser["common"]) if parser.has_section("common") else {}
    if parser.has_section(command):
        merged.update(parser[command])
    return merged


def _out_dir(settings):
    path = settings.get("out", str, "out")
    try:
        return io.ensure_dir(path)
    except OSError as exc:
        raise SampleFileError(f"cannot write to output directory: {exc}") from None


def _synthetic_measure(settings):
    support = settings.get("support")
    if support is None:
        raise ParameterError("need --input or a synthetic --support")
    omega = _floats(support)
    amps = settings.get("amplitudes")
    x = _complexes(amps) if amps is not None else [1.0] * len(omega)
    return AtomicMeasure(omega, x)


def _synthetic_samples(settings):
    M = settings.get("M", int, 20)
    clumps = settings.get("clumps")
    if clumps is not None:
        cfg = ClumpsConfig(M, _ints(clumps), 1.0 / settings.get("srf", float, 2.0),
                           settings.get("beta", float, 10.0))
        omega = generate_clumps(cfg, settings.get("seed", int, 0))
        rng = np.random.default_rng(settings.get("seed", int, 0))
        mu = AtomicMeasure(omega, np.exp(2j * np.pi * rng.random(omega.size)))
    else:
        mu = _synthetic_measure(settings)
    sigma = settings.get("sigma", float, 0.0)
    if sigma < 0:
        raise ParameterError("sigma must be non-negative")
    y0 = fourier_coefficients(mu, M)
    return mu, add_noise(y0, sigma, settings.get("seed", int, 0))


def cmd_generate(settings):
    mu, meas = _synthetic_samples(settings)
    out = _out_dir(settings)
    path = io.write_samples(os.path.join(out, settings.get("name", str, "samples.csv")), meas.samples)
    io.write_table(os.path.join(out, "truth.csv"), ["j", "omega", "amp_re", "amp_im"],
                   [(j, w, a.real, a.imag) for j, (w, a) in enumerate(zip(mu.support, mu.amplitudes))])
    print(f"wrote {meas.samples.size} samples to {path}")
    return EXIT_OK


def cmd_estimate(settings):
    estimator = settings.get("estimator", str, "esprit")
    if estimator not in ("esprit", "music"):
        raise ParameterError(f"unknown estimator {estimator!r}")
    S = settings.get("S", int)
    source = settings.get("input")
    truth = None
    if source is not None:
        if S is None:
            raise ParameterError("the number of atoms S is required with --input")
        y = io.read_samples(source)
    else:
        truth, meas = _synthetic_samples(settings)
        y = meas.samples
        # synthetic runs know their support size
        S = truth.S if S is None else S
    M = y.size - 1
    L = settings.get("L", int, default_L(M))
    check_L(S, L, M)
    try:
        if estimator == "esprit":
            result = esprit(y, S, L, amplitudes=True)
        else:
            result = music(y, S, L, grid_size=settings.get("grid", int), amplitudes=True)
    except (EstimatorError, ConvergenceError) as exc:
        print(f"estimator failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    order = np.argsort(result.support_estimate)
    md = None if truth is None else matching_distance(truth.support, result.support_estimate)
    print(f"estimator: {estimator}  S={S}  M={M}  L={L}")
    for j in order:
        w = result.support_estimate[j]
        a = result.amplitudes_estimate[j] if result.amplitudes_estimate is not None else np.nan
        print(f"omega_hat = {w:.8f}   x_hat = {complex(a):.6g}")
    sv = result.diagnostics.singular_values
    print("leading singular values:", " ".join(f"{v:.4g}" for v in sv[: min(sv.size, S + 1)]))
    if md is not None:
        print(f"md = {md:.3e}")
    out = _out_dir(settings)
    io.write_estimate(os.path.join(out, "estimate.csv"), result, md)
    return EXIT_OK


def _uncertainty_pairs(text):
    if text is None:
        return None
    pairs = []
    for item in str(text).split(","):
        if item.strip():
            try:
                S, N = item.split(":")
                pairs.append((int(S), int(N)))
            except ValueError:
                raise ParameterError(f"bad S:N pair {item!r}") from None
    return pairs


def cmd_verify_bounds(settings):
    pairs = _uncertainty_pairs(settings.get("uncertainty"))
    profile = settings.get("profile", str, "desk")
    # validate before any computation starts
    if pairs is not None:
        for S, N in pairs:
            if N < S:
                raise ParameterError(f"uncertainty constant may be infinite below N = S (S={S}, N={N})")
    out = _out_dir(settings)
    reports = run_bound_suite(
        seed=settings.get("seed", int, 0),
        profile=profile,
        inject_broken=settings.get("inject_broken", _flag, False),
        uncertainty_pairs=pairs,
    )
    io.write_bounds(os.path.join(out, "bounds.csv"), reports)
    failed = [r for r in reports if not r.satisfied]
    print(f"{len(reports)} bound checks, {len(failed)} violated")
    for r in failed[:20]:
        print(f"VIOLATED {r.name}: lhs={r.lhs:.6g} > rhs={r.rhs:.6g}  {r.context}")
    return EXIT_FAIL if failed else EXIT_OK


def _clump_sets(text):
    return [_ints(item) for item in str(text).split(";") if item.strip()]


def cmd_sweep(settings):
    estimator = settings.get("estimator", str, "esprit")
    if estimator not in ("esprit", "music"):
        raise ParameterError(f"unknown estimator {estimator!r}")
    profile = settings.get("profile", str, "desk")
    build = {"desk": desk_profile, "paper": paper_profile}.get(profile)
    if build is None:
        raise ParameterError(f"unknown profile {profile!r}")
    seed = settings.get("seed", int, 0)
    threads = settings.get("threads", int) or os.cpu_count() or 1
    specs = {}
    for sizes in _clump_sets(settings.get("clumps", str, "2;2,2")):
        label = f"A{len(sizes)}_lam{max(sizes)}"
        spec = build(sizes, M=settings.get("M", int, 100), beta=settings.get("beta", float, 10.0),
                     master_seed=seed)
        overrides = {}
        if settings.get("trials", int) is not None:
            overrides["trials_per_cell"] = settings.get("trials", int)
        if settings.get("phase_draws", int) is not None:
            overrides["phase_draws"] = settings.get("phase_draws", int)
        if overrides:
            spec = replace(spec, **overrides)
        specs[label] = spec
    out = _out_dir(settings)

    cells, curves, slopes, series = [], [], [], {}
    status = EXIT_OK
    for label, spec in specs.items():
        result = run_sweep(spec, estimator=estimator, threads=threads)
        curve = extract_transition_curve(result)
        cells += [(label,) + tuple(r[2:]) for r in result.records]
        curves += [(label, p.srf, p.sigma_star, p.status) for p in curve]
        try:
            fit = fit_transition_slope(curve)
            slopes.append((label, estimator, fit.slope, fit.intercept, fit.r2, fit.q))
            print(f"{label}: q = {fit.q:.3f} (r2 = {fit.r2:.3f})")
        except ParameterError as exc:
            slopes.append((label, estimator, np.nan, np.nan, np.nan, np.nan))
            print(f"{label}: {exc}", file=sys.stderr)
            status = EXIT_FAIL
        pts = [(p.srf, p.sigma_star) for p in curve if p.status == "resolved"]
        if pts:
            series[label] = tuple(zip(*pts))
        try:
            md_fit = fit_md_scaling(result, 0)
            # md-vs-SRF scaling at the smallest sigma; q does not apply
            slopes.append((label + "_md", estimator, md_fit.slope, md_fit.intercept, md_fit.r2,
                           np.nan))
        except ParameterError:
            pass

    io.write_table(os.path.join(out, "cells.csv"),
                   ["label", "srf", "sigma", "phase_draw", "mean_md", "success_rate", "failures"],
                   cells)
    io.write_table(os.path.join(out, "curve.csv"), ["label", "srf", "sigma_star", "status"], curves)
    io.write_slopes(os.path.join(out, "slopes.csv"), slopes)
    io.write_metadata(os.path.join(out, "metadata.csv"),
                      dict(SWEEP_METADATA, estimator=estimator, profile=profile, seed=seed))
    with open(os.path.join(out, "transition.svg"), "w") as fh:
        fh.write(loglog_svg(series, "SRF", "sigma*", f"95% transition ({estimator})"))
    return status


def _add_common(p):
    p.add_argument("--config", help="INI file with a section per command")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output directory")
    p.add_argument("--profile", choices=("desk", "paper"))
    p.add_argument("--threads", type=int)
    p.add_argument("--estimator", choices=("esprit", "music"))


def build_parser():
    parser = argparse.ArgumentParser(prog="superres", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate a support from samples")
    _add_common(p)
    p.add_argument("--input", help="samples CSV with columns k,re,im")
    p.add_argument("--S", type=int, help="number of atoms")
    p.add_argument("--L", type=int, help="Hankel parameter (default M // 2)")
    p.add_argument("--grid", type=int, help="MUSIC grid size")
    _add_synthetic(p)

    p = sub.add_parser("verify-bounds", help="run the numerical bound suite")
    _add_common(p)
    p.add_argument("--uncertainty", help="comma-separated S:N pairs")
    p.add_argument("--inject-broken", action="store_true", default=None,
                   help="add a deliberately wrong check (harness self-test)")

    p = sub.add_parser("sweep", help="Monte-Carlo phase-transition sweep")
    _add_common(p)
    p.add_argument("--clumps", help="clump sizes, sets separated by ';' (e.g. '2;2,2')")
    p.add_argument("--M", type=int)
    p.add_argument("--beta", type=float)
    p.add_argument("--trials", type=int)
    p.add_argument("--phase-draws", type=int)

    p = sub.add_parser("generate", help="write a synthetic samples CSV")
    _add_common(p)
    _add_synthetic(p)
    p.add_argument("--name", help="file name inside --out (default samples.csv)")
    return parser


def _add_synthetic(p):
    p.add_argument("--support", help="comma-separated support points in [0, 1)")
    p.add_argument("--amplitudes", help="comma-separated complex amplitudes, e.g. 1,0.5+1j")
    p.add_argument("--clumps", help="clump sizes for a random clumps support")
    p.add_argument("--srf", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--M", type=int)
    p.add_argument("--sigma", type=float)


COMMANDS = {
    "estimate": cmd_estimate,
    "verify-bounds": cmd_verify_bounds,
    "sweep": cmd_sweep,
    "generate": cmd_generate,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        settings = Settings(args, _load_section(args.config, args.command))
        return COMMANDS[args.command](settings)
    except SampleFileError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_INPUT
