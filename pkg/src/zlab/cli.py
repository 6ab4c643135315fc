"""Command-line entry point: ``zlab <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys
import warnings

from .jumps import jump_set, jump_set_equivalence
from .lie import lie_expand, restricted_power_expand
from .ncpoly import ZZ, ModRing
from .reports import Report
from .shuffle import indec_dimension, infiltration, shuffle
from .unitriangular import (
    FiniteUTGroup,
    verify_binomial,
    verify_group_identities,
    verify_section6,
    zassenhaus_inductive,
    zassenhaus_product,
)
from .words import (
    bracketing,
    foliage,
    format_bracket,
    format_word,
    lyndon_words,
    necklace_count,
    parse_bracket,
    parse_word,
)
from .zassenhaus import (
    LevelParams,
    fundamental_matrix,
    h2_dimension,
    main_theorem_check,
    verify_shuffle_relations,
)

SECTION6_MAX_ORDER = 4096


class UsageError(Exception):
    pass


def _emit(args, data, text: str) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _params(args) -> LevelParams:
    return LevelParams(args.p, args.n, args.m, getattr(args, "precision", None))


# subcommands

def cmd_lyndon(args) -> int:
    lengths = args.lengths or list(range(1, args.n + 1))
    words = lyndon_words(args.m, lengths)
    rows = [(format_word(w), format_bracket(bracketing(w))) for w in words]
    counts = {i: necklace_count(args.m, i) for i in sorted(set(lengths))}
    data = {"m": args.m, "words": [{"word": w, "bracketing": b} for w, b in rows],
            "counts": {str(i): c for i, c in counts.items()}}
    width = max((len(w) for w, _ in rows), default=1)
    text = "\n".join(f"{w:<{width}}  {b}" for w, b in rows)
    _emit(args, data, text)
    return 0


def _product_cmd(args, fn) -> int:
    u, v = parse_word(args.u), parse_word(args.v)
    poly = fn(u, v)
    data = {"u": args.u, "v": args.v,
            "terms": [{"word": format_word(w), "coeff": c} for w, c in poly.sorted_terms()]}
    _emit(args, data, str(poly))
    return 0


def cmd_shuffle(args) -> int:
    return _product_cmd(args, shuffle)


def cmd_infiltrate(args) -> int:
    return _product_cmd(args, infiltration)


def cmd_fundamental_matrix(args) -> int:
    F = fundamental_matrix(_params(args))
    if args.format == "json":
        print(F.to_json(indent=2))
    elif args.format == "csv":
        sys.stdout.write(F.to_csv())
    else:
        labels = [format_word(w) for w in F.index]
        width = max(len(s) for s in labels)
        print(" " * width + "  " + " ".join(f"{s:>{width}}" for s in labels))
        for label, row in zip(labels, F.entries):
            print(f"{label:>{width}}  " + " ".join(f"{x:>{width}}" for x in row))
    return 0


def cmd_dims(args) -> int:
    params = _params(args)
    data = {
        "p": params.p, "n": params.n, "m": params.m,
        "jump_set": params.jumps,
        "h2_dimension": h2_dimension(params),
        "index_size": len(params.index()),
    }
    if params.n < params.p:
        data["indec_dimension"] = indec_dimension(params.m, params.n, params.p)
        data["main_theorem"] = main_theorem_check(params)
    text = "\n".join(f"{k}: {' '.join(map(str, v)) if isinstance(v, list) else v}"
                     for k, v in data.items())
    _emit(args, data, text)
    return 0 if data.get("main_theorem", True) else 1


def cmd_jump_set(args) -> int:
    J = jump_set(args.n, args.p)
    _emit(args, {"p": args.p, "n": args.n, "jump_set": J}, " ".join(map(str, J)))
    return 0


def cmd_ut_filtration(args) -> int:
    G = FiniteUTGroup(args.i, args.p, args.j)
    rows = []
    for k in range(1, args.n + 1):
        Z = zassenhaus_product(G, k, args.p)
        rows.append({"n": k, "order": Z.order, "agrees": zassenhaus_inductive(G, k, args.p) == Z})
    data = {"i": args.i, "p": args.p, "j": args.j, "group_order": G.order, "filtration": rows}
    text = "\n".join([f"U_{args.i}(Z/{G.q}), order {G.order}", "n  order  inductive=product"] +
                     [f"{r['n']:<2} {r['order']:<6} {r['agrees']}" for r in rows])
    _emit(args, data, text)
    return 0 if all(r["agrees"] for r in rows) else 1


def cmd_lie_expand(args) -> int:
    b = parse_bracket(args.bracket)
    ring = ZZ if args.p is None else ModRing(args.p, 1)
    if args.j:
        if args.p is None:
            raise UsageError("--j needs --p")
        poly = restricted_power_expand(args.j, b, ring)
    else:
        poly = lie_expand(b, ring)
    data = {"bracket": format_bracket(b), "foliage": format_word(foliage(b)), "j": args.j,
            "series": poly.to_dict()}
    _emit(args, data, str(poly))
    return 0


# verification suites

def _suite_shuffle(args) -> list[Report]:
    return [verify_shuffle_relations(_params(args))]


def _suite_section6(args) -> list[Report]:
    return [verify_section6(args.p, args.i_max, args.j_max, args.n_max or 6, args.max_order)]


def _identity_groups(p: int, max_order: int) -> list[FiniteUTGroup]:
    groups = []
    for i, j in [(2, 0), (3, 0), (2, 1)]:
        if (p ** (j + 1)) ** (i * (i + 1) // 2) <= max_order:
            groups.append(FiniteUTGroup(i, p, j))
    return groups


def _suite_identities(args) -> list[Report]:
    if args.i is not None:
        groups = [FiniteUTGroup(args.i, args.p, args.j or 0)]
    else:
        groups = _identity_groups(args.p, args.max_order)
    n_max = args.n_max or 2 * args.p
    reports = []
    for G in groups:
        r = Report(f"identities {G!r} n<={n_max}")
        for n in range(1, n_max + 1):
            r.merge(verify_group_identities(G, n, args.p))
        reports.append(r)
    return reports


def _suite_binomial(args) -> list[Report]:
    return [verify_binomial(primes=(args.p,))]


def _suite_matrix(args) -> list[Report]:
    r = Report(f"fundamental matrix p={args.p} n={args.n} m={args.m}")
    F = fundamental_matrix(_params(args))
    r.check(F.is_unitriangular(), "fundamental matrix is not upper unitriangular")
    r.check(F.size == h2_dimension(_params(args)), "index size differs from the H^2 dimension")
    return [r]


def _suite_main(args) -> list[Report]:
    r = Report(f"main theorem p={args.p} n={args.n} m={args.m}")
    if args.n < args.p:
        r.check(main_theorem_check(_params(args)), "dimension count or Lyndon spanning fails")
    else:
        r.skipped.append(f"n={args.n} >= p={args.p}")
    return [r]


def _suite_jumps(args) -> list[Report]:
    r = Report(f"jump set equivalence p={args.p} n<=200")
    for n in range(1, 201):
        r.check(jump_set_equivalence(n, args.p), f"jump set conditions disagree at n={n}")
    return [r]


SUITES = {
    "shuffle-relations": [_suite_shuffle],
    "section6": [_suite_section6],
    "identities": [_suite_identities],
    "binomial": [_suite_binomial],
    "all": [_suite_matrix, _suite_shuffle, _suite_main, _suite_jumps, _suite_section6,
            _suite_identities, _suite_binomial],
}


def cmd_verify(args) -> int:
    reports = [r for suite in SUITES[args.suite] for r in suite(args)]
    ok = all(r.ok for r in reports)
    data = {"ok": ok, "reports": [r.to_dict() for r in reports]}
    lines = [r.summary() for r in reports]
    for r in reports:
        lines.extend(f"  violation: {v}" for v in r.violations[:20])
    lines.append("OK" if ok else "FAILED")
    _emit(args, data, "\n".join(lines))
    return 0 if ok else 1


# parser

def _prime(text: str) -> int:
    from sympy import isprime

    value = int(text)
    if not isprime(value):
        raise argparse.ArgumentTypeError(f"{value} is not prime")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} is not positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["text", "json"], default="text",
                     help="output format (default: text)")
    level = argparse.ArgumentParser(add_help=False)
    level.add_argument("--p", type=_prime, required=True, help="the prime p")
    level.add_argument("--n", type=_positive, required=True, help="filtration level n (2..8)")
    level.add_argument("--m", type=_positive, required=True, help="alphabet size m (1..9)")

    parser = argparse.ArgumentParser(
        prog="zlab",
        description="Zassenhaus filtrations, Magnus coefficients and shuffle relations.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lyndon", parents=[fmt], help="list Lyndon words and their bracketings")
    s.add_argument("--m", type=_positive, required=True, help="alphabet size")
    s.add_argument("--n", type=_positive, default=4, help="maximal length (default: 4)")
    s.add_argument("--lengths", type=_positive, nargs="+", help="explicit lengths instead of 1..n")
    s.set_defaults(func=cmd_lyndon)

    for name, func, what in [("shuffle", cmd_shuffle, "shuffle product"),
                             ("infiltrate", cmd_infiltrate, "infiltration product")]:
        s = sub.add_parser(name, parents=[fmt], help=f"{what} of two words")
        s.add_argument("u", help="first word, letters a-i")
        s.add_argument("v", help="second word, letters a-i")
        s.set_defaults(func=func)

    s = sub.add_parser("fundamental-matrix", parents=[level],
                       help="level-n fundamental matrix over the Lyndon index set")
    s.add_argument("--format", choices=["text", "json", "csv"], default="text",
                   help="output format (default: text)")
    s.add_argument("--precision", type=_positive, default=None,
                   help="coefficient precision K for Z/p^K (default: j_n(1)+1)")
    s.set_defaults(func=cmd_fundamental_matrix)

    s = sub.add_parser("dims", parents=[fmt, level], help="dimension bookkeeping")
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("jump-set", parents=[fmt], help="print J(n)")
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--n", type=_positive, required=True)
    s.set_defaults(func=cmd_jump_set)

    s = sub.add_parser("verify", parents=[fmt], help="run verification suites")
    s.add_argument("suite", choices=list(SUITES))
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--n", type=_positive, default=3, help="level n (default: 3)")
    s.add_argument("--m", type=_positive, default=2, help="alphabet size (default: 2)")
    s.add_argument("--i-max", type=_positive, default=3, help="section6 grid: max i (default: 3)")
    s.add_argument("--j-max", type=int, default=1, help="section6 grid: max j (default: 1)")
    s.add_argument("--n-max", type=_positive, default=None,
                   help="max level (section6 default: 6, identities default: 2p)")
    s.add_argument("--i", type=_positive, default=None, help="identities: single group U_i")
    s.add_argument("--j", type=int, default=None, help="identities: modulus p^(j+1)")
    s.add_argument("--max-order", type=_positive, default=SECTION6_MAX_ORDER,
                   help=f"skip groups larger than this (default: {SECTION6_MAX_ORDER})")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("ut-filtration", parents=[fmt],
                       help="Zassenhaus filtration of U_i(Z/p^(j+1))")
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--i", type=_positive, required=True)
    s.add_argument("--j", type=int, default=0)
    s.add_argument("--n", type=_positive, default=4, help="levels 1..n (default: 4)")
    s.set_defaults(func=cmd_ut_filtration)

    s = sub.add_parser("lie-expand", parents=[fmt],
                       help="expand a bracket like [a,[a,b]] (or a Lyndon word)")
    s.add_argument("bracket")
    s.add_argument("--p", type=_prime, default=None, help="reduce modulo p (default: integers)")
    s.add_argument("--j", type=int, default=0, help="take the p^j-th power (needs --p)")
    s.set_defaults(func=cmd_lie_expand)
    return parser


def _version() -> str:
    from . import __version__

    return __version__


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = _show_warning
            return args.func(args)
    except (ValueError, UsageError, ArithmeticError) as exc:
        print(f"zlab: error: {exc}", file=sys.stderr)
        return 2


def _show_warning(message, category, filename, lineno, file=None, line=None) -> None:
    print(f"zlab: warning: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
