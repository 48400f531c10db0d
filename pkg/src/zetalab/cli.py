"""Command-line front end.

Exit codes: 0 success, 2 domain error, 3 only inconclusive results, 4 I/O error.
An optional ``key=value`` config file (``--config`` or ``$ZETALAB_CONFIG``)
supplies defaults that command-line flags override.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import os
import re
import sys
from dataclasses import dataclass, field

from . import approximants, criteria, special_functions, zero_finder, zeta_engine
from ._common import ZetaLabError

EXIT_OK, EXIT_DOMAIN, EXIT_INCONCLUSIVE, EXIT_IO = 0, 2, 3, 4
CONFIG_ENV = "ZETALAB_CONFIG"

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^([+-]?{_NUM})(?:([+-]{_NUM})i)?$|^([+-]?{_NUM})i$")


class ConfigError(ZetaLabError, ValueError):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``a+bi`` / ``a-bi`` (also ``a`` or ``bi``) with decimal literals and no spaces."""
    m = _COMPLEX_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"not a complex literal of the form a+bi: {text!r}")
    if m.group(3) is not None:
        return complex(0.0, float(m.group(3)))
    return complex(float(m.group(1)), float(m.group(2) or 0.0))


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _complex_list(text: str) -> list[complex]:
    return [parse_complex(x) for x in text.split(",") if x]


def _range(text: str) -> tuple[float, float]:
    lo, _, hi = text.partition(":")
    if not hi:
        return float(lo), float(lo)
    return float(lo), float(hi)


@dataclass
class RunConfig:
    """Defaults for all commands; every tolerance must be positive and ``C > 1``."""

    C: float = zeta_engine.DEFAULT_C
    min_N: int = zeta_engine.DEFAULT_MIN_N
    zero_tol: float = zero_finder.DEFAULT_TOL
    zero_step: float = zero_finder.DEFAULT_STEP
    f_modulus_tol: float = 1e-8
    derivative_tol: float = 1e-3
    eta_target: float = zeta_engine.DEFAULT_ETA_TARGET
    schedule: list[int] = field(default_factory=lambda: list(approximants.DEFAULT_SCHEDULE))
    n_values: list[int] = field(default_factory=lambda: [10**2, 10**3, 10**4])
    grid_density: int = criteria.START_BOUNDARY_POINTS
    threads: int = 1
    zeros_out: str = "zeros.csv"
    criterion_out: str = "-"
    certify_out: str = "-"
    sweep_out: str = "sweep.csv"

    def validate(self) -> "RunConfig":
        if not self.C > 1:
            raise ConfigError(f"C must exceed 1, got {self.C}")
        for name in ("zero_tol", "zero_step", "f_modulus_tol", "derivative_tol", "eta_target"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if self.min_N < 1 or self.threads < 1 or self.grid_density < 4:
            raise ConfigError("min_N and threads must be >= 1, grid_density >= 4")
        return self

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        kinds = {f.name: f.type for f in dataclasses.fields(cls)}
        values = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                key, sep, val = (p.strip() for p in line.partition("="))
                if not sep or key not in kinds:
                    raise ConfigError(f"{path}:{lineno}: unknown or malformed entry {line!r}")
                kind = kinds[key]
                try:
                    if kind == "list[int]":
                        values[key] = _int_list(val)
                    elif kind == "int":
                        values[key] = int(val)
                    elif kind == "float":
                        values[key] = float(val)
                    else:
                        values[key] = val
                except ValueError as exc:
                    raise ConfigError(f"{path}:{lineno}: {exc}") from None
        return cls(**values).validate()


def load_config(path: str | None) -> RunConfig:
    path = path or os.environ.get(CONFIG_ENV)
    return RunConfig.from_file(path) if path else RunConfig()


def _cj(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _clean(obj):
    """Replace non-finite floats with ``None`` so the output is strict JSON."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _emit(obj, out=None) -> None:
    (out or sys.stdout).write(json.dumps(_clean(obj), allow_nan=False) + "\n")


def _open_out(path: str):
    return sys.stdout if path == "-" else open(path, "w", encoding="utf-8", newline="")


# -- commands ------------------------------------------------------------------


def cmd_eval(args, cfg: RunConfig) -> int:
    s = args.s
    subject = args.subject
    bound = None
    meta: dict = {}
    if subject == "zeta":
        plan = zeta_engine.TruncationPlan.for_point(s, cfg.C, cfg.min_N)
        r = zeta_engine.zeta_euler_maclaurin(s, plan)
        value, bound = r.value, r.abs_error_bound
        meta = {"method": "euler-maclaurin", "N": plan.N, "C": plan.C}
    elif subject == "eta":
        r = zeta_engine.eta_accelerated(s, args.m, cfg.eta_target)
        value, bound = r.value, r.abs_error_bound
        meta = {"method": "chebyshev-accelerated", "m": args.m}
    elif subject == "lambda":
        plan = zeta_engine.TruncationPlan.for_point(s, cfg.C, cfg.min_N)
        r = special_functions.lambda_completed(s, zeta_engine.zeta_euler_maclaurin(s, plan))
        value, bound = r.value, r.abs_error_bound
        meta = {"method": "gamma * euler-maclaurin", "N": plan.N}
    elif subject == "F":
        if args.method == "direct":
            r = special_functions.f_ratio_direct(s)
        else:
            r = special_functions.f_ratio_continued(s)
        value, bound = r.value, r.abs_error_bound
        meta = {"method": args.method, "modulus": abs(value)}
    elif subject == "H_N":
        v, e = zeta_engine.h_partial_sums([s], _need_n(args))
        value, bound = complex(v[0]), float(e[0])
        meta = {"method": "closed-form partial sum", "N": args.n}
    elif subject == "h_n":
        value = zeta_engine.h_term(_need_n(args), s)
        meta = {"method": "single term", "n": args.n}
    elif subject == "zeta_N":
        v, e = zeta_engine.dirichlet_sums(s, _need_n(args))
        value, bound = complex(v[0]), float(e[0])
        meta = {"method": "plain partial sum", "N": args.n}
    else:  # pragma: no cover - argparse restricts choices
        raise ZetaLabError(f"unknown subject {subject}")
    _emit({"subject": subject, "s": _cj(s), "value": _cj(value), "abs_error_bound": bound, **meta})
    return EXIT_OK


def _need_n(args) -> int:
    if args.n is None:
        raise zeta_engine.DomainError(f"--n is required for subject {args.subject}")
    return args.n


def cmd_zeros(args, cfg: RunConfig) -> int:
    records = zero_finder.scan_and_refine(
        args.t_min, args.t_max,
        args.step if args.step is not None else cfg.zero_step,
        args.tol if args.tol is not None else cfg.zero_tol,
        method=args.method, C=cfg.C, min_N=cfg.min_N,
    )
    out = args.out or cfg.zeros_out
    zero_finder.catalog_write(records, out)
    _emit({"command": "zeros", "count": len(records), "path": out})
    return EXIT_OK


def cmd_criterion(args, cfg: RunConfig) -> int:
    zeros = zero_finder.catalog_read(args.zeros)
    if args.limit is not None:
        zeros = zeros[: args.limit]
    reports = []
    for z in zeros:
        if args.kind == "f-modulus":
            reports.append(criteria.check_f_modulus(z, args.tol or cfg.f_modulus_tol))
        else:
            reports.append(criteria.check_derivative_ratio(
                z, args.m, N_schedule=args.n_schedule or (10**3, 10**4, 10**5),
                tol=args.tol or cfg.derivative_tol, target_error=cfg.eta_target,
            ))
    out_path = args.out or cfg.criterion_out
    fh = _open_out(out_path)
    try:
        for r in reports:
            _emit(r.to_dict(), fh)
    finally:
        if fh is not sys.stdout:
            fh.close()
    if out_path != "-":
        _emit({"command": "criterion", "kind": args.kind, "count": len(reports),
               "passed": sum(r.passed for r in reports), "path": out_path})
    if reports and all(r.status == "inconclusive" for r in reports):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_certify(args, cfg: RunConfig) -> int:
    combo = None
    if args.evaluator == "combination":
        if args.mean:
            combo = criteria.ARITHMETIC_MEAN
        else:
            alphas = args.alphas or [1.0]
            offsets = args.offsets or [1] * len(alphas)
            combo = criteria.CombinationParams(tuple(alphas), tuple(offsets), args.perturbation)
    cert = criteria.certify_disc(
        args.center, args.radius, args.evaluator, combo,
        args.n_values or cfg.n_values,
        args.grid_density or cfg.grid_density,
        threads=cfg.threads,
    )
    out_path = args.out or cfg.certify_out
    fh = _open_out(out_path)
    try:
        _emit(cert.to_dict(), fh)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_INCONCLUSIVE if cert.verdict == "inconclusive" else EXIT_OK


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if math.isnan(x):
        return "nan"
    return f"{x:.17g}"


def write_sweep_csv(rows, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(criteria.SWEEP_COLUMNS)
    for r in rows:
        w.writerow([_fmt(getattr(r, c)) for c in criteria.SWEEP_COLUMNS])


def cmd_sweep(args, cfg: RunConfig) -> int:
    rows = criteria.sweep_f_modulus(
        args.sigma_range, args.t_range,
        (args.step, args.t_step if args.t_step is not None else args.step), N1=args.n1, N2=args.n2, threads=cfg.threads
    )
    out_path = args.out or cfg.sweep_out
    fh = _open_out(out_path)
    try:
        write_sweep_csv(rows, fh)
    finally:
        if fh is not sys.stdout:
            fh.close()
    if out_path != "-":
        _emit({"command": "sweep", "rows": len(rows), "failed_cells": sum(bool(r.error) for r in rows),
               "path": out_path})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zetalab", description=__doc__.splitlines()[0])
    p.add_argument("--config", help=f"key=value config file (default: ${CONFIG_ENV})")
    p.add_argument("--threads", type=int, help="worker-thread hint; never changes numerical output")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate one function at one point")
    e.add_argument("--subject", required=True, choices=["zeta", "eta", "lambda", "F", "H_N", "h_n", "zeta_N"])
    e.add_argument("--s", required=True, type=parse_complex)
    e.add_argument("--n", type=int, help="index for H_N, h_n, zeta_N")
    e.add_argument("--m", type=int, default=0, help="derivative order for eta")
    e.add_argument("--method", choices=["continued", "direct"], default="continued", help="formula for F")
    e.set_defaults(func=cmd_eval)

    z = sub.add_parser("zeros", help="scan the critical line and write a zero catalog")
    z.add_argument("--t-min", type=float, default=0.0)
    z.add_argument("--t-max", type=float, required=True)
    z.add_argument("--step", type=float)
    z.add_argument("--tol", type=float)
    z.add_argument("--method", choices=list(zero_finder.ZETA_METHODS), default="euler-maclaurin")
    z.add_argument("--out")
    z.set_defaults(func=cmd_zeros)

    c = sub.add_parser("criterion", help="run a zero criterion over a catalog (JSON lines)")
    c.add_argument("--kind", required=True, choices=["f-modulus", "derivative-ratio"])
    c.add_argument("--zeros", required=True)
    c.add_argument("--tol", type=float)
    c.add_argument("--m", type=int, default=1)
    c.add_argument("--n-schedule", type=_int_list)
    c.add_argument("--limit", type=int, help="only the first LIMIT zeros")
    c.add_argument("--out")
    c.set_defaults(func=cmd_criterion)

    d = sub.add_parser("certify", help="certify nonvanishing of a partial sum on a disc")
    d.add_argument("--center", required=True, type=parse_complex)
    d.add_argument("--radius", required=True, type=float)
    d.add_argument("--evaluator", choices=["H_N", "phi_N", "combination"], default="H_N")
    d.add_argument("--n-values", type=_int_list)
    d.add_argument("--alphas", type=_complex_list)
    d.add_argument("--offsets", type=_int_list)
    d.add_argument("--perturbation", type=parse_complex, default=0j)
    d.add_argument("--mean", action="store_true", help="arithmetic mean of H_N and H_{N-1}")
    d.add_argument("--grid-density", type=int)
    d.add_argument("--out")
    d.set_defaults(func=cmd_certify)

    w = sub.add_parser("sweep", help="tabulate |F| and its approximants on a grid (CSV)")
    w.add_argument("--sigma-range", required=True, type=_range, help="lo:hi")
    w.add_argument("--t-range", required=True, type=_range, help="lo:hi")
    w.add_argument("--step", required=True, type=float, help="grid step in sigma (and t unless --t-step)")
    w.add_argument("--t-step", type=float)
    w.add_argument("--n1", type=int, default=1000)
    w.add_argument("--n2", type=int, default=1024000)
    w.add_argument("--out")
    w.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.threads is not None:
            cfg.threads = args.threads
        cfg.validate()
        return args.func(args, cfg)
    except OSError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_IO
    except (ZetaLabError, ValueError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
