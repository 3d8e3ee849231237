"""Config-driven command line: define a model, compute its solvable-sector data.

Subcommands: spectrum, polynomials, weights, norms, moments, dual, selfdual,
coulomb, validate, sweep.  Model parameters mirror the config schema and may
come from --config JSON, from flags, or both (flags win).  Rationals are
written as "p/q" strings so exact mode round-trips.  Single runs emit JSON,
sweeps emit CSV; identical configs in exact mode produce byte-identical
output.

Exit codes: 0 success, 2 configuration error, 3 not quasi-exactly solvable
(non-integer J), 4 numerical certification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import serialize
from .coulomb import (
    CoulombModel,
    TerminationError,
    orthogonality_obstruction,
    qes_state,
    termination_solve,
)
from .models import (
    CalogeroMarchioro,
    CalogeroSutherland,
    ModelValidationError,
    NotQuasiExactError,
    NovelCorrelation,
    ReducedModel,
    cm_reduce,
    cs_reduce,
    novel_reduce,
    reduced_model,
)
from .rootfinding import RootCountError
from .scalars import ExactnessError, ScalarMode, ScalarModeError
from .sextic import generate_P, generate_Q, norm_P, norm_Q
from .spectra import (
    DegenerateSpectrumError,
    closed_form_energies,
    duality_check,
    dualize,
    positivity_report,
    selfdual_check,
    solve_spectrum,
)
from .validate import (
    BracketError,
    ResidualConvergenceError,
    build_coulomb_eigenfunction,
    build_sextic_eigenfunction,
    problem_for_coulomb,
    problem_for_recursion,
    residual,
    shoot_refine,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NOT_QES = 3
EXIT_CERTIFICATION = 4

_CONFIG_ERRORS = (ModelValidationError, ExactnessError, ScalarModeError, ValueError)
_CERTIFICATION_ERRORS = (
    RootCountError,
    DegenerateSpectrumError,
    ResidualConvergenceError,
    BracketError,
    TerminationError,
)


class ConfigError(ValueError):
    pass


class CertificationFailure(RuntimeError):
    pass


# -- argument plumbing ---------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, model_kinds) -> None:
    p.add_argument("--config", help="JSON config file; flags override its keys")
    p.add_argument("--model", choices=model_kinds, help="model kind")
    p.add_argument("--mode", choices=["exact", "float", "auto"], default=None)
    p.add_argument("--bits", type=int, default=None, help="float mantissa bits")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    # reduced-model scalars
    p.add_argument("--a", dest="a", default=None, help="radial exponent a")
    p.add_argument("--gamma", default=None, help="effective angular constant")
    p.add_argument("--alpha", default=None)
    p.add_argument("--beta", default=None)
    p.add_argument("--J", dest="levels", type=int, default=None, help="level count J")
    # physical-model parameters
    p.add_argument("--particles", type=int, default=None)
    p.add_argument("--dimension", type=int, default=None)
    p.add_argument("--pair-coupling", dest="pair_coupling", default=None)
    p.add_argument("--three-body", dest="three_body", default=None)
    p.add_argument("--correlation", default=None, help="correlation exponent g")
    p.add_argument("--inv-square", dest="inv_square", default=None, help="F coefficient")
    p.add_argument("--quartic", default=None, help="C coefficient")
    p.add_argument("--sextic", default=None, help="H coefficient")
    p.add_argument("--quadratic", default=None, help="B coefficient (alternative to --J)")
    # coulomb-family parameters
    p.add_argument("--oscillator", default=None, help="oscillator strength B")
    p.add_argument(
        "--coulomb-strength", dest="coulomb_strength", default=None, help="C (any sign)"
    )
    p.add_argument("--truncation", type=int, default=None, help="truncation degree n")


_SEXTIC_KINDS = (
    "reduced",
    "calogero_marchioro",
    "novel_correlation",
    "calogero_sutherland",
)
_ALL_KINDS = _SEXTIC_KINDS + ("coulomb",)

_CONFIG_KEYS = (
    "model", "mode", "bits", "format",
    "a", "gamma", "alpha", "beta", "levels",
    "particles", "dimension", "pair_coupling", "three_body", "correlation",
    "inv_square", "quartic", "sextic", "quadratic",
    "oscillator", "coulomb_strength", "truncation",
    "max_n",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qes",
        description="Solvable sectors of three N-body models: spectra, weights, "
        "norms, moments, duality, and independent ODE validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def task(name, help_, kinds=_SEXTIC_KINDS, max_n=False):
        p = sub.add_parser(name, help=help_)
        _add_common(p, kinds)
        if max_n:
            p.add_argument("--max-n", dest="max_n", type=int, default=None)
        return p

    task("spectrum", "solvable energies and weights")
    task("polynomials", "coefficient tables of the P and Q families", max_n=True)
    task("weights", "discrete weights of the solvable measure")
    task("norms", "product-formula and discrete square norms", max_n=True)
    task("moments", "weighted power moments of the solvable measure", max_n=True)
    task("dual", "anti-isospectral partner and its spectrum")
    task("selfdual", "symmetry report for the alpha = 0 sector")
    task("coulomb", "truncation constraints of the oscillator+Coulomb family",
         kinds=("coulomb",), max_n=True)
    v = task("validate", "independent ODE residual and shooting cross-check",
             kinds=_ALL_KINDS)
    v.add_argument("--residual-threshold", type=float, default=1e-8)
    v.add_argument("--shoot-rtol", type=float, default=1e-6)
    v.add_argument("--grid-points", type=int, default=10_000)
    s = task("sweep", "parameter sweep to a CSV table")
    s.add_argument(
        "--sweep",
        action="append",
        default=[],
        metavar="NAME=V1,V2,... or NAME=LO:HI",
        help="grid parameter (repeat for a two-parameter grid)",
    )
    s.add_argument("--jobs", type=int, default=1)
    return parser


def _merged_config(args) -> dict:
    cfg: dict = {}
    if getattr(args, "config", None):
        try:
            cfg.update(json.loads(Path(args.config).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
    if "J" in cfg:  # accepted alias for the level count
        cfg["levels"] = cfg.pop("J")
    for key in _CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    unknown = set(cfg) - set(_CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    fmt = cfg.get("format")
    native = "csv" if args.command == "sweep" else "json"
    if fmt is not None and fmt != native:
        raise ConfigError(f"task {args.command!r} emits {native}, not {fmt}")
    return cfg


def _mode_of(cfg) -> tuple[str, int]:
    bits = cfg.get("bits") or int(os.environ.get("QES_DEFAULT_BITS", "128"))
    return cfg.get("mode", "auto"), bits


def _require(cfg, keys, kind):
    missing = [k for k in keys if cfg.get(k) is None]
    if missing:
        raise ConfigError(f"model {kind!r} needs {missing}")


def _reduce_config(cfg) -> ReducedModel:
    kind = cfg.get("model") or "reduced"
    mode, bits = _mode_of(cfg)
    if kind == "reduced":
        _require(cfg, ["gamma", "alpha", "beta", "levels"], kind)
        return reduced_model(
            cfg.get("a", "0"), cfg["gamma"], cfg["alpha"], cfg["beta"],
            int(cfg["levels"]),
            mode="exact" if mode == "auto" else mode, bits=bits,
        )
    radial = dict(
        inv_square=cfg.get("inv_square", "0"),
        quartic=cfg.get("quartic", "0"),
        sextic=cfg.get("sextic", "1"),
        quadratic=cfg.get("quadratic"),
        levels=int(cfg["levels"]) if cfg.get("levels") is not None else None,
    )
    if kind == "calogero_marchioro":
        _require(cfg, ["particles", "dimension", "pair_coupling"], kind)
        params = CalogeroMarchioro(
            n_particles=int(cfg["particles"]),
            dimension=int(cfg["dimension"]),
            pair_coupling=cfg["pair_coupling"],
            three_body=cfg.get("three_body"),
            **radial,
        )
        return cm_reduce(params, mode=mode, bits=bits)
    if kind == "novel_correlation":
        _require(cfg, ["particles", "correlation"], kind)
        params = NovelCorrelation(
            n_particles=int(cfg["particles"]),
            correlation_exponent=cfg["correlation"],
            **radial,
        )
        return novel_reduce(params, mode=mode, bits=bits)
    if kind == "calogero_sutherland":
        _require(cfg, ["particles", "pair_coupling"], kind)
        params = CalogeroSutherland(
            n_particles=int(cfg["particles"]),
            pair_coupling=cfg["pair_coupling"],
            **radial,
        )
        return cs_reduce(params, mode=mode, bits=bits)
    raise ConfigError(f"model kind {kind!r} is not valid for this task")


def _recursion_of(cfg):
    rm = _reduce_config(cfg)
    if not rm.is_qes:
        raise NotQuasiExactError(rm.j)
    return rm, rm.recursion()


def _coulomb_scalars(cfg):
    kind = cfg.get("model")
    if kind != "coulomb":
        raise ConfigError("this task needs --model coulomb")
    _require(cfg, ["gamma", "oscillator"], "coulomb")
    mode, bits = _mode_of(cfg)
    resolved = (
        ScalarMode.exact() if mode in ("exact", "auto") else ScalarMode.floating(bits)
    )
    return (
        resolved.scalar(cfg.get("a", "0")),
        resolved.scalar(cfg["gamma"]),
        resolved.scalar(cfg["oscillator"]),
        cfg,
        bits,
    )


# -- tasks -----------------------------------------------------------------------


def _spectrum_payload(rm: ReducedModel, rec):
    spectrum = solve_spectrum(rec)
    closed = None
    try:
        cf = closed_form_energies(rec)
        closed = list(cf) if cf is not None else None
    except ExactnessError:
        closed = None
    return spectrum, {
        "j": rec.j,
        "reduction": {
            "a": rm.a, "gamma": rm.gamma, "alpha": rm.alpha, "beta": rm.beta,
            "provenance": rm.provenance,
        },
        "energies": list(spectrum.energies),
        "weights": list(spectrum.weights),
        "closed_form_energies": closed,
        "positivity": positivity_report(rec),
    }


def _task_spectrum(cfg, args):
    rm, rec = _recursion_of(cfg)
    _, payload = _spectrum_payload(rm, rec)
    return serialize.document("spectrum", cfg, rm.mode, payload)


def _task_weights(cfg, args):
    rm, rec = _recursion_of(cfg)
    spectrum = solve_spectrum(rec)
    return serialize.document(
        "weights", cfg, rm.mode,
        {"j": rec.j, "energies": list(spectrum.energies), "weights": list(spectrum.weights)},
    )


def _task_polynomials(cfg, args):
    rm, rec = _recursion_of(cfg)
    n_max = cfg.get("max_n") or 2 * rec.j
    ps = generate_P(rec, n_max)
    qs = generate_Q(rec, n_max)
    return serialize.document(
        "polynomials", cfg, rm.mode,
        {
            "n_max": n_max,
            "P": [{"n": n, "coefficients": list(p.coeffs), "text": str(p)}
                  for n, p in enumerate(ps)],
            "Q": [{"n": n, "coefficients": list(q.coeffs), "text": str(q)}
                  for n, q in enumerate(qs)],
        },
    )


def _task_norms(cfg, args):
    rm, rec = _recursion_of(cfg)
    n_max = cfg.get("max_n") or 10
    spectrum = solve_spectrum(rec)
    rows = []
    for n in range(n_max + 1):
        row = {"n": n, "norm_P": norm_P(rec, n), "norm_Q": norm_Q(rec, n)}
        if n <= rec.j + 5:
            row["discrete_norm_P"] = spectrum.discrete_norm(n)
        rows.append(row)
    return serialize.document("norms", cfg, rm.mode, {"rows": rows})


def _task_moments(cfg, args):
    rm, rec = _recursion_of(cfg)
    n_max = cfg.get("max_n") or 10
    spectrum = solve_spectrum(rec)
    growth = 4 * rec.alpha * rec.s
    return serialize.document(
        "moments", cfg, rm.mode,
        {
            "moments": [spectrum.moment(n) for n in range(n_max + 1)],
            "leading_growth_base": growth,
        },
    )


def _task_dual(cfg, args):
    rm, rec = _recursion_of(cfg)
    spectrum = solve_spectrum(rec)
    dual_rec = dualize(rec)
    dual_spectrum = solve_spectrum(dual_rec)
    report = duality_check(rec)
    doc = serialize.document(
        "dual", cfg, rm.mode,
        {
            "alpha": rec.alpha,
            "dual_alpha": dual_rec.alpha,
            "energies": list(spectrum.energies),
            "dual_energies": list(dual_spectrum.energies),
            "weights": list(spectrum.weights),
            "dual_weights": list(dual_spectrum.weights),
            "check": report,
        },
    )
    if not report.passed:
        raise CertificationFailure("duality check failed: " + serialize.dumps(doc))
    return doc


def _task_selfdual(cfg, args):
    alpha = cfg.get("alpha")
    if alpha is not None and Fraction(str(alpha)) != 0:
        raise ConfigError("selfdual requires alpha = 0")
    cfg = dict(cfg)
    cfg["alpha"] = "0"
    rm, rec = _recursion_of(cfg)
    spectrum = solve_spectrum(rec)
    report = selfdual_check(rec)
    doc = serialize.document(
        "selfdual", cfg, rm.mode,
        {
            "energies": list(spectrum.energies),
            "weights": list(spectrum.weights),
            "odd_moments": [spectrum.moment(2 * m + 1) for m in range(rec.j)],
            "check": report,
        },
    )
    if not report.passed:
        raise CertificationFailure("self-duality check failed")
    return doc


def _task_coulomb(cfg, args):
    a, gamma, b, cfg, bits = _coulomb_scalars(cfg)
    n_max = cfg.get("max_n") or cfg.get("truncation") or 2
    rows = []
    for n in range(1, n_max + 1):
        res = termination_solve(a, gamma, n, b)
        rows.append(
            {"n": n, "energy": res.energy, "c_squared": list(res.c_squared_values)}
        )
    fmode = ScalarMode.floating(bits)
    model = CoulombModel(
        fmode.scalar(a.value), fmode.scalar(gamma.value), fmode.scalar(b.value),
        fmode.scalar(cfg.get("coulomb_strength", "1")),
    )
    obstruction = orthogonality_obstruction(model, max(4, n_max))
    return serialize.document(
        "coulomb", cfg, a.mode,
        {"constraints": rows, "orthogonality_obstruction": obstruction},
    )


def _validate_sextic(cfg, args):
    rm, rec = _recursion_of(cfg)
    spectrum = solve_spectrum(rec)
    problem = problem_for_recursion(
        rec, rm.a, rm.gamma, n_points=args.grid_points
    )
    rows = []
    ok = True
    rho_max = None
    for energy in spectrum.energies:
        phi = build_sextic_eigenfunction(rec, rm.a, rm.gamma, energy)
        rep = residual(problem, phi, energy, n_points=args.grid_points)
        shot = shoot_refine(problem, float(energy))
        rel = abs(shot - float(energy)) / max(1.0, abs(float(energy)))
        good = (
            rep.value < args.residual_threshold
            and abs(rep.slope - 2.0) <= 0.2
            and rel < args.shoot_rtol
        )
        ok = ok and good
        rho_max = rep.rho_max
        rows.append(
            {
                "energy": energy,
                "residual": rep.value,
                "slope": rep.slope,
                "shoot": shot,
                "shoot_rel_error": rel,
                "nodes": phi.node_count(),
                "passed": good,
            }
        )
    return ok, {"levels": rows, "rho_max": rho_max}


def _validate_coulomb(cfg, args):
    a, gamma, b, cfg, bits = _coulomb_scalars(cfg)
    n = cfg.get("truncation") or 1
    res = termination_solve(a, gamma, n, b)
    fmode = ScalarMode.floating(bits)
    sign = -1 if str(cfg.get("coulomb_strength", "1")).startswith("-") else 1
    c = sign * fmode.scalar(res.c_squared.value).sqrt()
    model = CoulombModel(
        fmode.scalar(a.value), fmode.scalar(gamma.value), fmode.scalar(b.value), c
    )
    phi = build_coulomb_eigenfunction(model, n)
    problem = problem_for_coulomb(model, n_points=args.grid_points)
    rep = residual(problem, phi, res.energy, n_points=args.grid_points)
    shot = shoot_refine(problem, float(res.energy))
    rel = abs(shot - float(res.energy)) / max(1.0, abs(float(res.energy)))
    state = qes_state(model, n)
    good = (
        rep.value < args.residual_threshold
        and abs(rep.slope - 2.0) <= 0.2
        and rel < args.shoot_rtol
    )
    return good, {
        "levels": [
            {
                "n": n,
                "energy": res.energy,
                "coulomb_strength": c,
                "residual": rep.value,
                "slope": rep.slope,
                "shoot": shot,
                "shoot_rel_error": rel,
                "nodes": state.node_count,
                "label": state.label,
                "passed": good,
            }
        ]
    }


def _task_validate(cfg, args):
    if cfg.get("model") == "coulomb":
        ok, payload = _validate_coulomb(cfg, args)
        mode = "float"
    else:
        rm = _reduce_config(cfg)
        ok, payload = _validate_sextic(cfg, args)
        mode = serialize.mode_name(rm.mode)
    doc = serialize.document("validate", cfg, mode, payload)
    if not ok:
        raise CertificationFailure("validation failed:\n" + serialize.dumps(doc))
    return doc


# -- sweep -------------------------------------------------------------------------


def _parse_sweep(raw: str) -> tuple[str, list[str]]:
    if "=" not in raw:
        raise ConfigError(f"sweep grid {raw!r} must look like name=v1,v2 or name=lo:hi")
    name, _, rest = raw.partition("=")
    name = name.strip()
    if name not in _CONFIG_KEYS:
        raise ConfigError(f"unknown sweep parameter {name!r}")
    rest = rest.strip()
    if not rest:
        return name, []
    if ":" in rest:
        lo, _, hi = rest.partition(":")
        return name, [str(v) for v in range(int(lo), int(hi) + 1)]
    return name, [v.strip() for v in rest.split(",") if v.strip()]


def _sweep_point(payload):
    index, cfg, names, j = payload
    try:
        rm, rec = _recursion_of(cfg)
        spectrum = solve_spectrum(rec)
        values = [str(cfg[n]) for n in names]
        energies = [e.decimal_str(20) for e in spectrum.energies]
        wts = [w.decimal_str(20) for w in spectrum.weights]
        return [index, *values, rec.j, True, *energies, *wts, "ok", ""]
    except Exception as exc:  # failure is recorded in-row, sweep continues
        values = [str(cfg.get(n, "")) for n in names]
        blank = [""] * (2 * j)
        return [index, *values, "", "", *blank, "error", f"{type(exc).__name__}: {exc}"]


def _task_sweep(cfg, args):
    sweeps = [_parse_sweep(s) for s in args.sweep]
    if not 1 <= len(sweeps) <= 2:
        raise ConfigError("sweep needs one or two --sweep parameters")
    levels = cfg.get("levels")
    if levels is None:
        raise ConfigError("sweep needs a fixed level count (give --J)")
    j = int(levels)
    names = [name for name, _ in sweeps]
    grids = [vals for _, vals in sweeps]
    points = []
    index = 0
    if len(grids) == 1:
        for v in grids[0]:
            points.append((index, {**cfg, names[0]: v}, names, j))
            index += 1
    else:
        for v1 in grids[0]:
            for v2 in grids[1]:
                points.append((index, {**cfg, names[0]: v1, names[1]: v2}, names, j))
                index += 1
    header = (
        ["index", *names, "j", "is_qes"]
        + [f"E_{k}" for k in range(1, j + 1)]
        + [f"omega_{k}" for k in range(1, j + 1)]
        + ["status", "error"]
    )
    if args.jobs > 1 and points:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_point, points))
    else:
        rows = [_sweep_point(p) for p in points]
    rows.sort(key=lambda r: r[0])
    return serialize.csv_table(header, rows)


_TASKS = {
    "spectrum": _task_spectrum,
    "polynomials": _task_polynomials,
    "weights": _task_weights,
    "norms": _task_norms,
    "moments": _task_moments,
    "dual": _task_dual,
    "selfdual": _task_selfdual,
    "coulomb": _task_coulomb,
    "validate": _task_validate,
    "sweep": _task_sweep,
}


def run(command: str, cfg: dict, args) -> str:
    """Execute one task and return the rendered artifact."""
    result = _TASKS[command](cfg, args)
    if isinstance(result, str):
        return result
    return serialize.dumps(result)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _error_json(exc) -> str:
    return json.dumps(
        {"error": {"type": type(exc).__name__, "message": str(exc)}}, sort_keys=True
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merged_config(args)
        text = run(args.command, cfg, args)
    except NotQuasiExactError as exc:
        print(_error_json(exc), file=sys.stderr)
        return EXIT_NOT_QES
    except CertificationFailure as exc:
        print(_error_json(exc), file=sys.stderr)
        return EXIT_CERTIFICATION
    except _CERTIFICATION_ERRORS as exc:
        print(_error_json(exc), file=sys.stderr)
        return EXIT_CERTIFICATION
    except (ConfigError,) + _CONFIG_ERRORS as exc:
        print(_error_json(exc), file=sys.stderr)
        return EXIT_CONFIG
    _emit(text, getattr(args, "out", None))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
