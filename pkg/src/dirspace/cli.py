"""Command-line entry point: ``dirspace <subcommand> ...``.

Every subcommand writes a JSON document (to ``--out`` or stdout).  Exit codes:
0 success, 1 failed verification, 2 usage or input error (with a JSON error
object on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import verify
from .gleason import gleason_norms, gleason_solve
from .measure import MeasureError, load_measure, moment_table, weighted_moment
from .opmodel import kernel_eval, model_roundtrip
from .poly import Poly1, load_poly
from .potential import (QuadratureGrid, dirichlet2_quadrature, dirichlet_via_potential_with_error,
                        u_mu)
from .space1d import gram1
from .space2d import Gram2, dirichlet2, gram2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _cpair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _complex_arg(text: str) -> complex:
    parts = [float(x) for x in text.split(",")]
    if len(parts) == 1:
        return complex(parts[0], 0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")
    return complex(*parts)


def _point_arg(text: str) -> tuple[complex, complex]:
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected re1,im1,re2,im2 but got {text!r}")
    return complex(parts[0], parts[1]), complex(parts[2], parts[3])


def _pair_arg(text: str) -> tuple[int, int]:
    a, b = (int(x) for x in text.split(","))
    return a, b


def _matrix(a: np.ndarray) -> list:
    return [[_cpair(x) for x in row] for row in np.atleast_2d(a)]


def _grid(args) -> QuadratureGrid:
    return QuadratureGrid(args.grid_radial, args.grid_angular)


def _one_var(p) -> Poly1:
    if any(n for (_, n) in p.terms):
        raise UsageError("one-variable polynomial expected (n = 0 in every term)")
    return Poly1(p.to_array()[:, 0]) if not p.is_zero() else Poly1()


# -- subcommands -------------------------------------------------------------

def cmd_moments(args):
    spec = load_measure(args.measure)
    if args.weight:
        vals = [[weighted_moment(spec, i, j, args.weight) for j in range(args.order + 1)]
                for i in range(args.order + 1)]
        entries = np.array(vals)
    else:
        entries = moment_table(spec, args.order).entries
    return {"order": args.order, "weight": args.weight, "entries": _matrix(entries)}, 0


def cmd_potential(args):
    spec = load_measure(args.measure)
    out = {"at": _cpair(args.at), "value": u_mu(spec, args.at)}
    if args.poly:
        g = _one_var(load_poly(args.poly))
        val, err = dirichlet_via_potential_with_error(spec, g, _grid(args))
        out["dirichlet"] = {"value": val, "error_estimate": err,
                            "grid": [args.grid_radial, args.grid_angular]}
    return out, 0


def cmd_gram1d(args):
    G = gram1(load_measure(args.measure), args.order)
    return {"order": args.order, "convention": "entry[i][j] = <z^i, z^j>",
            "entries": _matrix(G)}, 0


def cmd_gram2d(args):
    G = gram2(load_measure(args.mu1), load_measure(args.mu2), args.m, args.n)
    return G.to_dict(), 0


def cmd_dirichlet(args):
    s1, s2 = load_measure(args.mu1), load_measure(args.mu2)
    f = load_poly(args.poly)
    parts = dirichlet2(s1, s2, f)
    out = {"total": parts.total, "I": parts.interior, "B": parts.boundary}
    if args.quadrature:
        out["quadrature"] = dirichlet2_quadrature(s1, s2, f, _grid(args))
    return out, 0


def cmd_kernel(args):
    s1, s2 = load_measure(args.mu1), load_measure(args.mu2)
    val = kernel_eval(s1, s2, args.z, args.w, args.trunc)
    return {"z": [_cpair(x) for x in args.z], "w": [_cpair(x) for x in args.w],
            "trunc": list(args.trunc), "value": _cpair(val)}, 0


def cmd_gleason(args):
    f = load_poly(args.poly)
    sol = gleason_solve(f, args.lam, args.axis)
    out = {"lambda": _cpair(args.lam), "axis": args.axis,
           "f1": sol.f1.to_dict(), "f2": sol.f2.to_dict(), "residual": sol.residual}
    if args.mu1 and args.mu2:
        out["norms"] = gleason_norms(load_measure(args.mu1), load_measure(args.mu2), f,
                                     args.lam, args.axis)
    return out, 0


def cmd_roundtrip(args):
    with open(args.gram) as fh:
        G = Gram2.from_dict(json.load(fh))
    rt = model_roundtrip(G)
    return {"moments1": _matrix(rt.moments1.entries), "moments2": _matrix(rt.moments2.entries),
            "max_residual": rt.max_residual}, 0


def cmd_verify(args):
    if (args.mu1 is None) != (args.mu2 is None):
        raise UsageError("--mu1 and --mu2 must be given together")
    if args.mu1:
        pairs = [(load_measure(args.mu1), load_measure(args.mu2))]
    else:
        pairs = verify.corpus(args.seed, args.count)
    params = {"degree": args.degree, "alpha_max": args.alpha_max}
    if args.tol is not None:
        params["tol"] = args.tol
    if args.check == "all":
        report = verify.run_all(pairs, seed=args.seed, **params)
    else:
        report = verify.CHECKS[args.check](pairs, seed=args.seed, **params)
        report["parameters"].setdefault("seed", args.seed)
    return report, 0 if report["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dirspace", description="Dirichlet-type spaces on the disc and bidisc")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="write JSON here instead of stdout")
        sp.add_argument("--timing", action="store_true", help="include wall time in the output")
        return sp

    sp = add("moments", cmd_moments, "moment table of a measure")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--order", type=int, default=4)
    sp.add_argument("--weight", type=int, default=0, help="exponent n of (1-|z|^2)^n")

    sp = add("potential", cmd_potential, "evaluate U_mu, optionally the area Dirichlet integral")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--at", type=_complex_arg, required=True)
    sp.add_argument("--poly", help="one-variable polynomial for the area integral")
    sp.add_argument("--grid-radial", type=int, default=128)
    sp.add_argument("--grid-angular", type=int, default=256)

    sp = add("gram1d", cmd_gram1d, "Gram matrix of 1, z, ..., z^N in D(mu)")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--order", type=int, required=True)

    sp = add("gram2d", cmd_gram2d, "Gram matrix of monomials in D(mu1, mu2)")
    sp.add_argument("--mu1", required=True)
    sp.add_argument("--mu2", required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("dirichlet", cmd_dirichlet, "Dirichlet integral of a polynomial (total, I, B)")
    sp.add_argument("--mu1", required=True)
    sp.add_argument("--mu2", required=True)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--quadrature", action="store_true")
    sp.add_argument("--grid-radial", type=int, default=128)
    sp.add_argument("--grid-angular", type=int, default=256)

    sp = add("kernel", cmd_kernel, "truncated reproducing kernel value")
    sp.add_argument("--mu1", required=True)
    sp.add_argument("--mu2", required=True)
    sp.add_argument("--z", type=_point_arg, required=True, help="re1,im1,re2,im2")
    sp.add_argument("--w", type=_point_arg, required=True, help="re1,im1,re2,im2")
    sp.add_argument("--trunc", type=_pair_arg, default=(10, 10), help="M,N")

    sp = add("gleason", cmd_gleason, "solve the Gleason problem at (lam,0) or (0,lam)")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--lambda", dest="lam", type=_complex_arg, required=True)
    sp.add_argument("--axis", type=int, choices=(1, 2), default=1)
    sp.add_argument("--mu1")
    sp.add_argument("--mu2")

    sp = add("roundtrip", cmd_roundtrip, "recover moment tables from a bidisc Gram file")
    sp.add_argument("--gram", required=True)

    sp = add("verify", cmd_verify, "run a verification check")
    sp.add_argument("check", choices=sorted(verify.CHECKS) + ["all"])
    sp.add_argument("--mu1")
    sp.add_argument("--mu2")
    sp.add_argument("--alpha-max", type=int, default=4)
    sp.add_argument("--degree", type=int, default=5)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    sp.add_argument("--count", type=int, default=5, help="random pairs when no measures given")
    return p


def _fail(kind: str, message: str) -> int:
    print(json.dumps({"error": {"type": kind, "message": message}}, sort_keys=True), file=sys.stderr)
    return 2


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("a subcommand is required")
        start = time.perf_counter()
        report, code = args.func(args)
    except UsageError as exc:
        return _fail("usage", f"{exc}\n{parser.format_usage()}")
    except (MeasureError, OSError, json.JSONDecodeError, ValueError) as exc:
        # SingularPoint, IllConditioned, InconsistentGram etc. are ValueErrors
        return _fail(type(exc).__name__, str(exc))
    if args.timing:
        report["wall_time_s"] = round(time.perf_counter() - start, 6)
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
