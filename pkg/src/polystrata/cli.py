"""Command-line front end; prints JSON (default) or CSV on standard output.

Exit codes: 0 success, 2 usage error or malformed input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import partitions as pt
from .checks import SUITES, run_suite
from .flow import phi, reduce
from .grids import FIGURES, GridError, emit_grid
from .io import (
    InputError,
    parse_scalar,
    partition_from_json,
    poly_from_json,
    poly_to_json,
    roots_from_json,
    roots_to_json,
    scalar_json,
)
from .poly_core import RootFindingError, from_roots, roots
from .strata import (
    IllConditionedWarning,
    mu_of,
    solve_by_tangency,
    stratum_label,
    tangent_count_through,
    tangent_space_Dmu,
)
from .viete import discriminant, real_cubic_chamber

__all__ = ["main", "run", "build_parser"]

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _common(p, poly=True):
    if poly:
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--poly", help='polynomial JSON, e.g. \'{"degree":2,"coeffs":[-3,2]}\'')
        g.add_argument("--roots", help="roots JSON: [r1, r2, ...] or [{\"root\":r,\"mult\":k}, ...]")
    p.add_argument("--tol", type=float, default=1e-8, help="clustering tolerance (default 1e-8)")
    p.add_argument("--field", choices=["complex", "real"], default="complex")
    p.add_argument("--format", choices=["json", "csv"], default="json")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="polystrata", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _common(sub.add_parser("solve", help="roots and their tangent hyperplanes"))
    _common(sub.add_parser("discriminant", help="discriminant (and real cubic chamber)"))
    _common(sub.add_parser("stratify", help="multiplicity partition and D_{d,k} memberships"))
    _common(sub.add_parser("tangent-space", help="tangent space of the stratum through P"))
    p = sub.add_parser("tangent-count", help="tangent spaces of D_mu through P")
    _common(p)
    p.add_argument("--mu", required=True)
    p = sub.add_parser("flow", help="translate all roots by t")
    _common(p)
    p.add_argument("--t", required=True, help="shift, a number or [re, im]")
    _common(sub.add_parser("reduce", help="flow to the slice a_1 = 0"))

    p = sub.add_parser("partition", help="partition calculators")
    p.add_argument("op", choices=["down1", "up1", "uplus", "gamma", "deg", "dualdim", "resdown1"])
    p.add_argument("--mu")
    p.add_argument("--kappa")
    p.add_argument("--tau")
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("grid", help="write a validated figure grid as CSV")
    p.add_argument("figure", choices=FIGURES)
    p.add_argument("--samples", type=int, default=21)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("check", help="run a seeded invariant suite")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    return ap


# ---------------------------------------------------------------------------
# commands: each returns (json object, csv rows)
# ---------------------------------------------------------------------------

def _poly(args):
    if args.poly is not None:
        return poly_from_json(args.poly, field=args.field)
    P = from_roots(roots_from_json(args.roots))
    if args.field == "real":
        if np.max(np.abs(P.coeffs.imag)) > 1e-12 * P.scale:
            raise InputError("roots do not give a real polynomial")
        P = from_roots(roots_from_json(args.roots), field="real")
    return P


def _cplx_cols(prefix, z):
    z = complex(z)
    return {f"{prefix}_re": z.real, f"{prefix}_im": z.imag}


def cmd_solve(args):
    P = _poly(args)
    rc = roots(P, args.tol)
    out, rows = [], []
    for (_, k), (u, plane) in zip(rc, solve_by_tangency(rc)):
        out.append({
            "root": scalar_json(u),
            "mult": k,
            "normal": [scalar_json(c) for c in plane.normals[0]],
            "offset": scalar_json(plane.offsets[0]),
        })
        rows.append({**_cplx_cols("root", u), "mult": k})
    return {"degree": P.degree, "roots": out}, rows


def cmd_discriminant(args):
    P = _poly(args)
    if P.degree < 2:
        raise InputError("discriminant needs degree >= 2")
    delta = discriminant(P)
    obj = {"degree": P.degree, "discriminant": scalar_json(delta)}
    row = _cplx_cols("discriminant", delta)
    if P.field == "real" and P.degree == 3:
        obj["chamber"] = row["chamber"] = real_cubic_chamber(P, args.tol)
    return obj, [row]


def cmd_stratify(args):
    P = _poly(args)
    label = stratum_label(P, args.tol)
    _, rc = mu_of(P, args.tol)
    members = [{"k": k, "in_D": m, "open": label.in_open(k)} for k, m in label.dk_memberships]
    obj = {"degree": P.degree, "mu": list(label.mu), "roots": roots_to_json(rc), "memberships": members}
    return obj, members


def cmd_tangent_space(args):
    P = _poly(args)
    flat, divisor = tangent_space_Dmu(P, args.tol)
    obj = {"dim": flat.dim, "whole_space": flat.is_whole,
           "divisor": [scalar_json(c) for c in divisor], "flat": flat.to_json()}
    rows = [{"power": divisor.size - 1 - i, **_cplx_cols("coeff", c)} for i, c in enumerate(divisor)]
    return obj, rows


def cmd_tangent_count(args):
    P = _poly(args)
    mu = partition_from_json(args.mu)
    if mu.weight != P.degree:
        raise InputError(f"partition weight {mu.weight} differs from degree {P.degree}")
    n = tangent_count_through(P, mu, args.tol)
    return {"mu": list(mu), "count": n}, [{"count": n}]


def cmd_flow(args):
    P = _poly(args)
    t = parse_scalar(json.loads(args.t) if args.t.strip().startswith("[") else args.t)
    if P.field == "real":
        if t.imag:
            raise InputError("complex shift in real-field mode")
        t = t.real
    Q = phi(P, t)
    return {"poly": poly_to_json(Q)}, [_cplx_cols(f"a{k}", c) for k, c in enumerate(Q.coeffs, 1)]


def cmd_reduce(args):
    P = _poly(args)
    Q, t_star = reduce(P)
    obj = {"poly": poly_to_json(Q), "t_star": scalar_json(t_star)}
    return obj, [{**_cplx_cols("t_star", t_star)}]


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"partition {args.op} needs --{' --'.join(missing)}")
    return [partition_from_json(getattr(args, n)) for n in names]


def cmd_partition(args):
    op = args.op
    if op in ("down1", "up1"):
        (mu,) = _need(args, "mu")
        val = list((pt.down1 if op == "down1" else pt.up1)(mu))
    elif op == "uplus":
        mu, kappa = _need(args, "mu", "kappa")
        val = list(pt.uplus(mu, kappa))
    elif op == "gamma":
        kappa, tau = _need(args, "kappa", "tau")
        val = pt.gamma(kappa, tau)
    elif op == "deg":
        (mu,) = _need(args, "mu")
        val = {"deg": pt.deg_Dmu(mu), "dual_bound": pt.dual_degree_bound(mu)}
    elif op == "dualdim":
        (mu,) = _need(args, "mu")
        dual, gauss = pt.dual_dims(mu, mu.weight)
        val = {"dual_dim": dual, "gauss_dim": gauss}
    else:
        mu, nu = _need(args, "mu", "tau")
        try:
            classes = pt.res_down1_classes(nu, mu)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        val = {"count": len(classes), "classes": [[list(k) for k in c] for c in classes]}
    flat = val if isinstance(val, dict) else {"value": val}
    row = {k: (json.dumps(v) if isinstance(v, list) else v) for k, v in flat.items()}
    return {"op": op, "result": val}, [row]


def cmd_grid(args):
    n = emit_grid(args.figure, args.samples, args.out)
    obj = {"figure": args.figure, "rows": n, "out": args.out}
    return obj, [obj]


def cmd_check(args):
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    results = [run_suite(n, args.seed, args.samples) for n in names]
    obj = {"seed": args.seed, "results": [r.to_json() for r in results]}
    return obj, [r.to_json() for r in results]


COMMANDS = {
    "solve": cmd_solve,
    "discriminant": cmd_discriminant,
    "stratify": cmd_stratify,
    "tangent-space": cmd_tangent_space,
    "tangent-count": cmd_tangent_count,
    "flow": cmd_flow,
    "reduce": cmd_reduce,
    "partition": cmd_partition,
    "grid": cmd_grid,
    "check": cmd_check,
}


def _write(obj, rows, fmt, stream):
    if fmt == "json":
        stream.write(json.dumps(obj) + "\n")
        return
    fields: list[str] = []
    for r in rows:
        fields.extend(k for k in r if k not in fields)
    w = csv.DictWriter(stream, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


def run(argv, stdout=None, stderr=None) -> int:
    """Run one command; returns the exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        obj, rows = COMMANDS[args.command](args)
    except (InputError, json.JSONDecodeError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (RootFindingError, GridError, np.linalg.LinAlgError, ArithmeticError) as exc:
        stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except ValueError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    buf = io.StringIO()
    _write(obj, rows, args.format, buf)
    stdout.write(buf.getvalue())
    if args.command == "check" and not all(r["ok"] for r in obj["results"]):
        return EXIT_NUMERIC
    return EXIT_OK


def main() -> None:
    import warnings

    warnings.simplefilter("default", IllConditionedWarning)
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
