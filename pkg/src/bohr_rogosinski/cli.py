"""Command-line front end.

Subcommands: ``radius``, ``table``, ``verify``, ``scan``, ``fuzz`` and
``curve`` (functional versus r, for plotting).  Output is a JSON object or a
tidy CSV table; floats are written with 15 significant digits (as strings in
JSON).

Exit codes: 0 success/pass, 1 bound exceeded or fuzz failure, 2 usage
error, 3 when ``--self-map`` is asserted for coefficients that break the
Wiener bound.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from . import __version__
from .disk_maps import (
    DEFAULT_ORDER,
    BlaschkeSpec,
    blaschke_product,
    half_plane,
    koebe,
    moebius_extremal,
    reflected_moebius,
)
from .radius import DEFAULT_TOLERANCE, Family, RadiusEquation, RootNotFound, closed_form, solve
from .series import DomainError, TruncatedPowerSeries, WIENER_TOL, wiener_excess
from .subordination import MajorantKind, SubordinationCase, verify_subordinate
from .verifiers import (
    DEFAULT_TOL,
    FunctionalId,
    Kind,
    evaluate,
    property_fuzz,
    sharpness_scan,
)

SCHEMA_VERSION = "1.0"
TOL_ENV = "BRR_TOL"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_WIENER = 0, 1, 2, 3


class UsageError(Exception):
    pass


class WienerError(Exception):
    pass


def fmt_cell(x: Any) -> Any:
    """Canonical cell text shared by CSV and JSON output."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x} in output")
        if x == 0.0:
            x = 0.0  # drop the sign of -0.0
        return format(x, ".15g")
    return str(x)


@dataclass
class OutputRecord:
    command: str
    parameters: Dict[str, Any]
    rows: List[Dict[str, Any]]
    tolerance: float
    schema_version: str = SCHEMA_VERSION
    columns: Optional[List[str]] = field(default=None, repr=False)

    def _columns(self) -> List[str]:
        if self.columns:
            return self.columns
        cols: List[str] = []
        for row in self.rows:
            cols.extend(k for k in row if k not in cols)
        return cols

    def to_json(self) -> str:
        cols = self._columns()
        doc = {
            "schema_version": self.schema_version,
            "command": self.command,
            "parameters": {k: fmt_cell(v) for k, v in self.parameters.items()},
            "tolerance": fmt_cell(self.tolerance),
            "rows": [{c: fmt_cell(row.get(c)) for c in cols} for row in self.rows],
        }
        return json.dumps(doc, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        cols = self._columns()
        writer.writerow(cols)
        for row in self.rows:
            writer.writerow([fmt_cell(row.get(c)) for c in cols])
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        return self.to_csv() if fmt == "csv" else self.to_json()


def resolve_tol(value: Optional[float], default: float) -> float:
    if value is not None:
        tol = value
    elif os.environ.get(TOL_ENV):
        try:
            tol = float(os.environ[TOL_ENV])
        except ValueError as exc:
            raise UsageError(f"{TOL_ENV} is not a number: {os.environ[TOL_ENV]!r}") from exc
    else:
        tol = default
    if not (tol > 0 and math.isfinite(tol)):
        raise UsageError(f"tolerance must be positive, got {tol}")
    return tol


def _parse_kv(body: str) -> Dict[str, str]:
    out = {}
    for part in body.split(";"):
        if not part:
            continue
        if "=" not in part:
            raise UsageError(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def load_coefficients(path: str) -> np.ndarray:
    """Read a JSON array of [re, im] pairs (index = power)."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read coefficient file {path}: {exc}") from exc
    if not isinstance(data, list) or not data:
        raise UsageError("coefficient file must hold a nonempty JSON array")
    coeffs = []
    for item in data:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(v, (int, float)) for v in item)):
            raise UsageError(f"bad coefficient entry {item!r}; expected [re, im]")
        coeffs.append(complex(item[0], item[1]))
    return np.array(coeffs)


def parse_function(spec: str, order: int = DEFAULT_ORDER, self_map: bool = False) -> TruncatedPowerSeries:
    """Build a series from ``moebius:a=..``, ``reflected:a=..``, ``blaschke:zeros=..``,
    ``koebe``, ``halfplane`` or ``coeffs:<file>``."""
    name, _, body = spec.partition(":")
    try:
        if name in ("moebius", "reflected"):
            kv = _parse_kv(body)
            if "a" not in kv:
                raise UsageError(f"{name} needs a=<value>")
            a = float(kv["a"])
            return (moebius_extremal if name == "moebius" else reflected_moebius)(a, order)
        if name == "blaschke":
            kv = _parse_kv(body)
            if "zeros" not in kv:
                raise UsageError("blaschke needs zeros=<z1>,<z2>,...")
            zeros = tuple(complex(t.replace(" ", "")) for t in kv["zeros"].split(",") if t)
            phase = float(kv.get("phase", 0.0))
            return blaschke_product(BlaschkeSpec(zeros, complex(math.cos(phase), math.sin(phase))), order)
        if name == "koebe" and not body:
            return koebe(order)
        if name == "halfplane" and not body:
            return half_plane(order)
        if name == "coeffs":
            coeffs = load_coefficients(body)
            if self_map:
                excess = wiener_excess(coeffs)
                if excess > WIENER_TOL:
                    raise WienerError(f"Wiener bound violated by {excess:.3e}")
            return TruncatedPowerSeries(coeffs, self_map=self_map, label=f"coeffs:{body}")
    except ValueError as exc:
        raise UsageError(f"bad function spec {spec!r}: {exc}") from exc
    raise UsageError(f"unknown function spec {spec!r}")


KIND_CHOICES = [k.value for k in Kind]
FAMILY_CHOICES = [f.value for f in Family]


def _equation(family: str, n: Optional[int], m: Optional[int]) -> RadiusEquation:
    fam = Family(family)
    if fam.needs_n and n is None:
        raise UsageError(f"--n is required for family {family}")
    if fam.needs_m and m is None:
        raise UsageError(f"--m is required for family {family}")
    return RadiusEquation(fam, n if fam.needs_n else None, m if fam.needs_m else None)


def cmd_radius(args) -> tuple:
    tol = resolve_tol(args.tol, DEFAULT_TOLERANCE)
    eq = _equation(args.family, args.n, args.m)
    res = solve(eq, tol)
    row = {
        "family": eq.family.value,
        "N": eq.N,
        "m": eq.m,
        "radius": res.value,
        "lo": res.bracket[0],
        "hi": res.bracket[1],
        "residual": res.residual,
        "iterations": res.iterations,
        "closed_form": closed_form(eq),
    }
    params = {"family": eq.family.value, "N": eq.N, "m": eq.m}
    return OutputRecord("radius", params, [row], tol), EXIT_OK


def cmd_table(args) -> tuple:
    tol = resolve_tol(args.tol, DEFAULT_TOLERANCE)
    if args.n_max < 1:
        raise UsageError("--n-max must be >= 1")
    rows = []
    for N in range(1, args.n_max + 1):
        eq = _equation(args.family, N, args.m)
        res = solve(eq, tol)
        rows.append({"N": N, "radius": res.value, "residual": res.residual})
    params = {"family": args.family, "n_max": args.n_max, "m": args.m}
    return OutputRecord("table", params, rows, tol, columns=["N", "radius", "residual"]), EXIT_OK


def _fid(args) -> FunctionalId:
    return FunctionalId(Kind(args.theorem), args.n, args.m, args.lam)


def _z_arg(text: Optional[str]) -> Optional[complex]:
    if text is None:
        return None
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise UsageError(f"bad complex number {text!r}") from exc


def _sub_case(args, fn: str) -> SubordinationCase:
    name, _, body = fn.partition(":")
    defaults = {"koebe": (0.0, 0.25, 1.0), "halfplane": (0.0, 0.5, 1.0)}
    if name == "moebius":
        a = float(_parse_kv(body)["a"])
        defaults["moebius"] = (a, 1.0 - a, 1.0 - a * a)
    f0, dist0, d0 = defaults.get(name, (None, None, None))
    f0 = args.f0 if args.f0 is not None else f0
    dist0 = args.dist0 if args.dist0 is not None else dist0
    d0 = args.deriv0 if args.deriv0 is not None else d0
    if None in (f0, dist0, d0):
        raise UsageError("--f0, --dist0 and --deriv0 are required for this function")
    return SubordinationCase(MajorantKind(args.sub_class), f0, dist0, d0)


def cmd_verify(args) -> tuple:
    tol = resolve_tol(args.tol, DEFAULT_TOL)
    z = _z_arg(args.z)
    if args.sub_class:
        g = parse_function(args.fn, args.order, self_map=args.self_map)
        case = _sub_case(args, args.fn)
        rep = verify_subordinate(g, case, args.r, z, tol, classical=args.classical)
        kind = rep.kind
    else:
        if args.theorem is None:
            raise UsageError("--theorem or --class is required")
        g = parse_function(args.fn, args.order, self_map=args.self_map)
        rep = evaluate(_fid(args), g, args.r, z, tol)
        kind = rep.kind
    row = rep.as_row()
    params = {"theorem": args.theorem, "class": args.sub_class, "fn": args.fn, "r": args.r,
              "order": args.order, "kind": kind}
    return OutputRecord("verify", params, [row], tol), (EXIT_OK if rep.passed else EXIT_FAIL)


def cmd_scan(args) -> tuple:
    tol = resolve_tol(args.tol, DEFAULT_TOL)
    res = sharpness_scan(_fid(args), args.r, args.grid, args.order, tol)
    row = {"r": res.r, "sup_value": res.sup_value, "argmax_a": res.argmax_a,
           "exceeded": res.exceeded, "bound": res.bound, "points": len(res.values)}
    params = {"theorem": args.theorem, "N": args.n, "m": args.m, "lam": _fid(args).lam,
              "r": args.r, "grid": args.grid, "order": args.order}
    return OutputRecord("scan", params, [row], tol), (EXIT_FAIL if res.exceeded else EXIT_OK)


def cmd_fuzz(args) -> tuple:
    tol = resolve_tol(args.tol, DEFAULT_TOL)
    rep = property_fuzz(_fid(args), args.r, args.trials, args.seed, args.max_degree, args.order, tol=tol)
    rows = [{"trial": t.trial, "seed": t.seed, "degree": t.degree, "margin": t.margin,
             "passed": t.passed} for t in rep.results]
    params = {"theorem": args.theorem, "N": args.n, "m": args.m, "r": args.r,
              "trials": args.trials, "seed": args.seed, "max_degree": args.max_degree,
              "order": args.order, "failures": len(rep.failures), "worst_margin": rep.worst_margin}
    return OutputRecord("fuzz", params, rows, tol), (EXIT_OK if rep.passed else EXIT_FAIL)


def cmd_curve(args) -> tuple:
    tol = resolve_tol(args.tol, DEFAULT_TOL)
    if args.points < 2 or not (0.0 <= args.r_min < args.r_max < 1.0):
        raise UsageError("need 0 <= r-min < r-max < 1 and points >= 2")
    f = parse_function(args.fn, args.order, self_map=args.self_map)
    fid = _fid(args)
    rows = []
    for r in np.linspace(args.r_min, args.r_max, args.points):
        rep = evaluate(fid, f, float(r), None, tol)
        rows.append({"r": rep.r, "value": rep.value, "bound": rep.bound, "margin": rep.margin,
                     "passed": rep.passed})
    params = {"theorem": args.theorem, "fn": args.fn, "N": args.n, "m": args.m,
              "r_min": args.r_min, "r_max": args.r_max, "points": args.points}
    return OutputRecord("curve", params, rows, tol), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="brr", description="Bohr and Bohr-Rogosinski radii and inequalities")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, tol_help):
        sp.add_argument("--tol", type=float, default=None, help=f"{tol_help} (env {TOL_ENV})")
        sp.add_argument("--format", choices=["json", "csv"], default="json")

    def theorem(sp, required=True):
        sp.add_argument("--theorem", choices=KIND_CHOICES, required=required)
        sp.add_argument("--n", type=int, default=1)
        sp.add_argument("--m", type=int, default=1)
        sp.add_argument("--lam", type=float, default=None, help="area / square-term constant")
        sp.add_argument("--order", type=int, default=DEFAULT_ORDER, help="truncation order M")

    sp = sub.add_parser("radius", help="solve one radius equation")
    sp.add_argument("--family", choices=FAMILY_CHOICES, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    common(sp, "bisection tolerance, default 1e-12")
    sp.set_defaults(func=cmd_radius)

    sp = sub.add_parser("table", help="radius versus N")
    sp.add_argument("--family", choices=[f.value for f in Family if f.needs_n], required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--m", type=int)
    common(sp, "bisection tolerance, default 1e-12")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("verify", help="evaluate one inequality on one function")
    theorem(sp, required=False)
    sp.add_argument("--fn", required=True, help="moebius:a=V | reflected:a=V | blaschke:zeros=Z1,Z2 | koebe | halfplane | coeffs:FILE")
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--z", default=None, help="evaluation point, default -r (r for --class)")
    sp.add_argument("--self-map", action="store_true", help="assert |f| <= 1 for coeffs:FILE")
    sp.add_argument("--class", dest="sub_class", choices=[c.value for c in MajorantKind])
    sp.add_argument("--f0", type=float)
    sp.add_argument("--dist0", type=float)
    sp.add_argument("--deriv0", type=float)
    sp.add_argument("--classical", action="store_true", help="use 1-|g(z)| instead of the distance")
    common(sp, "pass tolerance, default 1e-9")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("scan", help="sharpness scan over the extremal family")
    theorem(sp)
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--grid", type=int, default=64)
    common(sp, "exceedance tolerance, default 1e-9")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("fuzz", help="random Blaschke products")
    theorem(sp)
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--trials", type=int, default=500)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-degree", type=int, default=5)
    common(sp, "pass tolerance, default 1e-9")
    sp.set_defaults(func=cmd_fuzz)

    sp = sub.add_parser("curve", help="functional versus r (plot data)")
    theorem(sp)
    sp.add_argument("--fn", required=True)
    sp.add_argument("--self-map", action="store_true")
    sp.add_argument("--r-min", type=float, default=0.0)
    sp.add_argument("--r-max", type=float, required=True)
    sp.add_argument("--points", type=int, default=51)
    common(sp, "pass tolerance, default 1e-9")
    sp.set_defaults(func=cmd_curve)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        record, code = args.func(args)
    except WienerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_WIENER
    except (UsageError, DomainError, RootNotFound) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(record.render(args.format))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
