"""Command-line front end: ``tvrt {data,tv,rt,verify,selftest}``.

Exit codes: 0 success, 1 a verification or self-test failed, 2 bad input or
usage, 3 a resource ceiling was hit.
"""

from __future__ import annotations

import argparse
import json
import sys

from .census import resolve_link, resolve_triangulation
from .errors import ResourceLimitError
from .links import LinkError
from .modular import modular_data, to_json
from .triangulation import TriangulationError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CEILING = 0, 1, 2, 3
DEFAULT_LEVEL = 5


class InputError(Exception):
    pass


def _level(text: str) -> int:
    try:
        r = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"level must be an integer, got {text!r}") from None
    if r < 3:
        raise argparse.ArgumentTypeError(f"level must be >= 3, got {r}")
    return r


def _levels(text: str) -> list[int]:
    return [_level(t) for t in text.split(",") if t.strip()]


def _positive(text: str) -> int:
    try:
        n = int(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def _emit(obj, as_json: bool, plain_lines) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for line in plain_lines:
            print(line)


def _fmt(x, mode: str) -> str:
    z = x.to_complex()
    num = f"{z.real:.12g}" if abs(z.imag) < 1e-12 else f"{z.real:.12g}{z.imag:+.12g}i"
    if mode == "exact":
        return str(x)
    if mode == "float":
        return num
    return f"{x}  ~ {num}"


def _load_tri(source):
    try:
        return resolve_triangulation(source)
    except FileNotFoundError:
        raise InputError(f"triangulation file not found: {source}") from None
    except TriangulationError as exc:
        raise InputError(f"{source}: {exc}") from None


def _load_link(source):
    try:
        return resolve_link(source)
    except FileNotFoundError:
        raise InputError(f"link file not found: {source}") from None
    except LinkError as exc:
        raise InputError(f"{source}: {exc}") from None


# --- subcommands -------------------------------------------------------------------


def cmd_data(args) -> int:
    md = modular_data(args.level)
    data = to_json(md)
    lines = [f"level r={md.r}  colours 0..{md.r - 2}"]
    for c in md.colours:
        lines.append(f"  qdim({c}) = {_fmt(md.qdims[c], args.output)}   twist({c}) = {_fmt(md.twists[c], args.output)}")
    lines.append(f"  omega^2 = {_fmt(md.global_dim, args.output)}")
    lines.append(f"  Delta_L = {_fmt(md.delta_L, args.output)}")
    lines.append(f"  Delta_R = {_fmt(md.delta_R, args.output)}")
    lines.append(f"  6j entries = {len(md.sixj_table)}")
    _emit(data, args.json, lines)
    return EXIT_OK


def cmd_tv(args) -> int:
    from .turaev_viro import tv_state_sum

    tri = _load_tri(args.tri)
    res = tv_state_sum(tri, modular_data(args.level), args.method, ceiling=args.ceiling, threads=args.threads)
    out = res.to_json()
    out["input"] = args.tri
    lines = [
        f"Z_TV = {_fmt(res.value, args.output)}",
        f"level {res.level}, method {res.method}, {res.edges} edges, "
        f"{res.colorings_admissible}/{res.colorings_total} admissible colourings",
    ]
    _emit(out, args.json, lines)
    return EXIT_OK


def cmd_rt(args) -> int:
    from .links import linking_data
    from .reshetikhin_turaev import modulus_squared, rt_invariant

    link = _load_link(args.link)
    tau = rt_invariant(link, modular_data(args.level), threads=args.threads)
    ld = linking_data(link)
    out = tau.to_json()
    out["input"] = args.link
    out["linking_matrix"] = [list(row) for row in ld.linking_matrix]
    out["signature"] = ld.signature
    z = tau.numeric
    lines = [
        f"tau = ({tau.reduced}) * w^{tau.omega_power} * kappa^{tau.anomaly_power}   ~ {z.real:.12g}{z.imag:+.12g}i",
        f"|tau|^2 = {_fmt(modulus_squared(tau), args.output)}",
        f"signature {ld.signature}, H1 = {ld.h1()}",
    ]
    _emit(out, args.json, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verification import ManifoldPair, PairMismatch, verify_pair, verify_suite

    levels = args.level or [DEFAULT_LEVEL]
    kw = {"method": args.method, "threads": args.threads, "ceiling": args.ceiling}
    if args.suite:
        reports = verify_suite(levels, **kw)
    else:
        if not (args.tri and args.link):
            raise InputError("verify needs either --suite or both --tri and --link")
        tri = _load_tri(args.tri)
        link = _load_link(args.link)
        pair = ManifoldPair(args.name or args.tri, tri, link, tri.homology_h1())
        try:
            reports = [verify_pair(pair, r, **kw) for r in levels]
        except PairMismatch as exc:
            raise InputError(str(exc)) from None
    _emit([rep.to_json() for rep in reports], args.json, [rep.line() for rep in reports])
    return EXIT_OK if all(rep.passed for rep in reports) else EXIT_FAIL


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    results = run_selftest(args.max_level)
    _emit([r.to_json() for r in results], args.json, [r.line() for r in results])
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# --- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tvrt", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, level=True):
        if level:
            sp.add_argument("--level", "-r", type=_level, default=DEFAULT_LEVEL, help="root order r >= 3 (default 5)")
        sp.add_argument("--json", action="store_true", help="machine-readable JSON output")
        sp.add_argument("--output", choices=("exact", "float", "both"), default="both", help="number format")

    def engine(sp):
        sp.add_argument("--method", choices=("brute", "pruned"), default="pruned")
        sp.add_argument("--threads", type=_positive, default=1, help="worker processes")
        sp.add_argument("--ceiling", type=_positive, default=10**8, help="work ceiling for the state sum")

    sp = sub.add_parser("data", help="dump level-r modular data")
    common(sp)
    sp.set_defaults(func=cmd_data)

    sp = sub.add_parser("tv", help="Turaev-Viro state sum of a triangulation")
    common(sp)
    engine(sp)
    sp.add_argument("--tri", required=True, help=".tri file or census name")
    sp.set_defaults(func=cmd_tv)

    sp = sub.add_parser("rt", help="Reshetikhin-Turaev invariant of a surgery link")
    common(sp)
    sp.add_argument("--threads", type=_positive, default=1)
    sp.add_argument("--link", required=True, help=".lnk file or bundled link name")
    sp.set_defaults(func=cmd_rt)

    sp = sub.add_parser("verify", help="check Z_TV = |tau|^2")
    common(sp, level=False)
    engine(sp)
    sp.add_argument("--level", "-r", type=_levels, action="extend", help="level(s), comma separated or repeated")
    sp.add_argument("--suite", action="store_true", help="all bundled manifold pairs")
    sp.add_argument("--tri")
    sp.add_argument("--link")
    sp.add_argument("--name")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("selftest", help="algebraic and invariance self-checks")
    common(sp, level=False)
    sp.add_argument("--max-level", type=_level, default=6)
    sp.set_defaults(func=cmd_selftest)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"tvrt: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"tvrt: resource ceiling: {exc}", file=sys.stderr)
        return EXIT_CEILING


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
