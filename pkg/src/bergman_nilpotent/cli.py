"""Command-line front end.

Usage:
    bergman-nilpotent member 9 0 3
    bergman-nilpotent moment 6 0 0 --parts --exact
    bergman-nilpotent verify 9
    bergman-nilpotent matrix 9 --symbol 1,1,0,0 --window 12 --out t_phi.csv
    bergman-nilpotent figure lattice 9 --out lattice.svg
    bergman-nilpotent scan --m-range 6:20
    bergman-nilpotent zero-product 9

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import figures, serialize
from .errors import BudgetExceeded, ContractError
from .lattice import DomainSpec, member
from .moments import Divergent, moment
from .operator import ShiftOperator, Symbol, truncated_matrix
from .quadrature import Region, integrate_region
from .verify import SCAN_HEADER, degree_scan, verify_proposition, zero_product_search

PRECISION_ENV = "BERGMAN_NILPOTENT_PRECISION"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    precision_target: float = 1e-10
    quadrature_budget: int = 10 ** 6
    window: int | None = None
    output_format: str = "json"
    output_path: str | None = None

    def __post_init__(self):
        if not 1e-14 <= self.precision_target <= 1e-2:
            raise ContractError("precision target must lie in [1e-14, 1e-2]")
        if self.window is not None and self.window < 1:
            raise ContractError("window must be >= 1")
        if self.quadrature_budget < 1:
            raise ContractError("quadrature budget must be >= 1")


def _nonneg_int(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if val < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {val}")
    return val


def _m_value(text: str) -> int:
    val = _nonneg_int(text)
    if val < 2:
        raise argparse.ArgumentTypeError(f"m must be >= 2, got {val}")
    return val


def _symbol(text: str) -> Symbol:
    try:
        a, b, c, d = (int(p) for p in text.split(","))
        return Symbol(a, b, c, d)
    except (ValueError, ContractError) as exc:
        raise argparse.ArgumentTypeError(f"symbol must be a,b,c,d with a,c >= 0: {exc}")


def _m_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("range must look like a:b")
    if not 2 <= lo <= hi <= 64:
        raise argparse.ArgumentTypeError("need 2 <= a <= b <= 64")
    return lo, hi


def _default_precision() -> float:
    raw = os.environ.get(PRECISION_ENV)
    return float(raw) if raw else 1e-10


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output_path:
        serialize.write_atomic(cfg.output_path, text)
    else:
        sys.stdout.write(text)


def cmd_member(args, cfg: RunConfig) -> int:
    m, a1, a2 = args.m, args.a1, args.a2
    doc = {
        "m": m, "a1": a1, "a2": a2,
        "member": member(m, (a1, a2)),
        "constraints": {"diag": a2 >= a1, "width": 2 * a1 + m - 1 > 2 * a2},
    }
    _emit(serialize.dumps(doc), cfg)
    return EXIT_OK


def cmd_moment(args, cfg: RunConfig) -> int:
    mv = moment(args.s, args.t, args.m)
    doc = mv.to_json(parts=args.parts, exact=args.exact)
    status = EXIT_OK
    if args.check:
        check = {}
        for region, key in ((Region.X, "x_part"), (Region.Y, "y_part"), (Region.Z, "z_part")):
            res = integrate_region((args.s, args.t), args.m, region,
                                   cfg.precision_target, cfg.quadrature_budget)
            if res is Divergent:
                check[key] = {"status": "Divergent"}
                agree = getattr(mv, key) is None
            else:
                closed = getattr(mv, key)
                value = 4 * 3.141592653589793 ** 2 * res.value
                rel = abs(value - closed) / closed if closed else float("inf")
                agree = closed is not None and rel <= cfg.precision_target * 10
                check[key] = {"status": "Finite", "value": value,
                              "rel_diff": rel if closed else None}
            check[key]["agrees"] = agree
            if not agree:
                status = EXIT_FAIL
        doc["quadrature_check"] = check
    _emit(serialize.dumps(doc), cfg)
    return status


def cmd_verify(args, cfg: RunConfig) -> int:
    report = verify_proposition(args.m, cfg.window)
    _emit(serialize.dumps(report.to_json()), cfg)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_matrix(args, cfg: RunConfig) -> int:
    spec = DomainSpec(args.m)
    window = cfg.window if cfg.window is not None else 4 * spec.m
    tm = truncated_matrix(ShiftOperator(spec, args.symbol), window)
    if cfg.output_format == "json":
        text = serialize.dumps(serialize.matrix_to_json(tm))
    else:
        text = serialize.matrix_to_csv(tm)
    _emit(text, cfg)
    return EXIT_OK


def cmd_figure(args, cfg: RunConfig) -> int:
    if args.which == "domain":
        svg = figures.domain_svg(args.m, args.r1_max, args.r2_max)
    else:
        svg = figures.lattice_svg(args.m, cfg.window)
    _emit(svg, cfg)
    return EXIT_OK


def cmd_scan(args, cfg: RunConfig) -> int:
    lo, hi = args.m_range
    rows = [(r.m, r.r, r.degree_lattice, r.floor_m_over_4, r.agree) for r in degree_scan(lo, hi)]
    _emit(serialize.rows_to_csv(SCAN_HEADER, rows), cfg)
    return EXIT_OK


def cmd_zero_product(args, cfg: RunConfig) -> int:
    certs = zero_product_search(args.m, args.max_degree)
    window = cfg.window if cfg.window is not None else 4 * args.m
    ok = all(c.recheck(window) for c in certs)
    doc = {"m": args.m, "max_degree": args.max_degree, "count": len(certs),
           "rechecked_window": window, "all_rechecked": ok,
           "certificates": [c.to_json() for c in certs]}
    _emit(serialize.dumps(doc), cfg)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", dest="out", help="write output here (atomically) instead of stdout")
    common.add_argument("--precision", type=float, default=None,
                        help=f"quadrature precision target (default 1e-10, or ${PRECISION_ENV})")
    common.add_argument("--budget", type=_nonneg_int, default=10 ** 6,
                        help="quadrature subdivision budget")
    common.add_argument("--window", type=_nonneg_int, default=None, help="lattice window size n")

    parser = argparse.ArgumentParser(prog="bergman-nilpotent", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("member", parents=[common], help="membership of z^a in A^2(Omega_m)")
    p.add_argument("m", type=_m_value)
    p.add_argument("a1", type=_nonneg_int)
    p.add_argument("a2", type=_nonneg_int)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("moment", parents=[common], help="mixed radial moment M(s, t)")
    p.add_argument("m", type=_m_value)
    p.add_argument("s", type=_nonneg_int)
    p.add_argument("t", type=_nonneg_int)
    p.add_argument("--parts", action="store_true", help="include the X, Y_m, Z contributions")
    p.add_argument("--exact", action="store_true", help="include exact closed forms")
    p.add_argument("--check", action="store_true", help="cross-check every part by quadrature")
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("verify", parents=[common], help="check properties (i)-(iv) of T_phi")
    p.add_argument("m", type=_m_value)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("matrix", parents=[common], help="truncated matrix of T_u")
    p.add_argument("m", type=_m_value)
    p.add_argument("--symbol", type=_symbol, default=Symbol(1, 1, 0, 0), help="a,b,c,d (default 1,1,0,0)")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("figure", parents=[common], help="SVG figure of the domain or the lattice")
    p.add_argument("which", choices=("domain", "lattice"))
    p.add_argument("m", type=_m_value)
    p.add_argument("--r1-max", type=float, default=8.0)
    p.add_argument("--r2-max", type=float, default=8.0)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("scan", parents=[common], help="nilpotency degree across m (CSV)")
    p.add_argument("--m-range", type=_m_range, default=(6, 20))
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("zero-product", parents=[common], help="certified zero products T_u T_v = 0")
    p.add_argument("m", type=_m_value)
    p.add_argument("--max-degree", type=_nonneg_int, default=4)
    p.set_defaults(func=cmd_zero_product)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = {"figure": "svg", "scan": "csv"}.get(args.command, "json")
    if args.command == "matrix":
        fmt = args.fmt
    try:
        cfg = RunConfig(
            precision_target=args.precision if args.precision is not None else _default_precision(),
            quadrature_budget=args.budget,
            window=args.window,
            output_format=fmt,
            output_path=args.out,
        )
        return args.func(args, cfg)
    except ContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
