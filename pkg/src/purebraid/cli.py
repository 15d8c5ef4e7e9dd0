"""Command-line front end: ``purebraid <command> [options]``.

Text arguments that are omitted (or given as ``-``) are read from stdin.
Exit codes: 0 ok, 1 bad input, 2 size budget exceeded, 3 selftest failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import oracles
from .braid import (
    comb,
    format_combed,
    parse_braid,
    parse_permutation,
    parse_singular_braid,
)
from .chords import (
    CablingSpec,
    enumerate_non_decreasing,
    format_combination,
    normal_form,
    parse_combination,
    parse_diagram,
)
from .errors import BudgetExceeded, InputError
from .quantum import (
    DEFAULT_ORDER,
    MAX_DIMENSION,
    all_permutations,
    j_invariant,
    j_singular,
    separate,
    trace_sigma,
)
from .series import format_series
from .weights import (
    DEFAULT_BUDGET,
    format_path,
    format_polynomial,
    parse_path,
    separation_matrix,
    w_k_sigma,
    w_path,
    w_sigma,
)

EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_SELFTEST = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; we reserve 2 for budgets
    def error(self, message):
        raise InputError(message)


def _text(value: str | None, stdin) -> str:
    if value is None or value == "-":
        return stdin.read()
    return value


def _cmd_comb(args, stdin):
    c = comb(parse_braid(_text(args.braid, stdin)))
    text = format_combed(c)
    data = {"n": c.strands,
            "layers": {str(nu): [[i, e] for i, e in c.layer(nu)] for nu in range(2, c.strands + 1)}}
    return text, data


def _cmd_normalize(args, stdin):
    x = normal_form(parse_combination(_text(args.expr, stdin)), args.strategy)
    text = format_combination(x)
    data = {"n": x.strands,
            "terms": [{"coefficient": str(c), "diagram": [list(ch) for ch in d.chords]}
                      for d, c in x.terms.items()]}
    return text, data


def _cmd_weight(args, stdin):
    d = parse_diagram(_text(args.diagram, stdin))
    if args.path is not None:
        if args.sigma is not None or args.k is not None:
            raise InputError("--path cannot be combined with --sigma or --k")
        p = parse_path(args.path)
        w = w_path(d, p)
        data = {"route": "path", "path": format_path(p)}
    elif args.sigma is None:
        raise InputError("weight needs --path or --sigma")
    elif args.k is not None:
        try:
            k = tuple(int(x) for x in args.k.replace(",", " ").split())
        except ValueError:
            raise InputError(f"malformed cabling vector {args.k!r}") from None
        spec = CablingSpec(k)
        sigma = parse_permutation(args.sigma, spec.total)
        w = w_k_sigma(d, spec, sigma)
        data = {"route": "k_sigma", "k": list(k), "sigma": sigma.cycle_notation()}
    else:
        sigma = parse_permutation(args.sigma, d.strands)
        w = w_sigma(d, sigma)
        data = {"route": "sigma", "sigma": sigma.cycle_notation()}
    text = format_polynomial(w)
    data["value"] = text
    data["coefficients"] = list(w.coefficients)
    return text, data


def _cmd_dims(args, stdin):
    if args.n < 1 or args.m < 0:
        raise InputError("dims needs n >= 1 and m >= 0", kind="range")
    count = len(enumerate_non_decreasing(args.n, args.m))
    predicted = oracles.hilbert_counts(args.n, args.m)[args.m]
    match = "true" if count == predicted else "false"
    return (f"count={count} hilbert={predicted} match={match}",
            {"n": args.n, "m": args.m, "count": count, "hilbert": predicted, "match": count == predicted})


def _cmd_sepmatrix(args, stdin):
    budget = DEFAULT_BUDGET if args.budget is None else args.budget
    mat = separation_matrix(args.n, args.m, budget)
    return str(mat), {"n": args.n, "m": args.m, "size": len(mat.rows),
                      "rows": [list(r) for r in mat.rows], "unitriangular": mat.is_unitriangular()}


def _cmd_quantum(args, stdin):
    s = parse_singular_braid(_text(args.braid, stdin))
    max_dim = MAX_DIMENSION if args.budget is None else args.budget
    if s.double_points:
        J = j_singular(s, args.N, args.M, max_dim)
    else:
        J = j_invariant(s.resolution(), args.N, args.M, max_dim)
    perms = ([parse_permutation(args.sigma, s.strands)] if args.sigma is not None
             else all_permutations(s.strands))
    lines, traces = [], []
    for sigma in perms:
        tr = trace_sigma(J, sigma, args.N)
        lines.append(f"sigma={sigma.cycle_notation()}: {format_series(tr)}")
        traces.append({"sigma": sigma.cycle_notation(),
                       "coefficients": [str(c) for c in tr.coefficients]})
    return "\n".join(lines), {"N": args.N, "M": args.M, "n": s.strands, "traces": traces}


def _cmd_separate(args, stdin):
    if args.a is None or args.b is None:
        raise InputError("separate needs --a and --b")
    max_dim = MAX_DIMENSION if args.budget is None else args.budget
    report = separate(parse_braid(args.a), parse_braid(args.b), args.N, args.M, max_dim)
    return "\n".join(report.lines()), report.to_dict()


def _cmd_selftest(args, stdin):
    from .selftest import run_all

    numbers = None
    if args.only:
        try:
            numbers = [int(x) for x in args.only.replace(",", " ").split()]
        except ValueError:
            raise InputError(f"malformed --only list {args.only!r}") from None
    results = run_all(numbers)
    passed = sum(r.passed for r in results)
    lines = [r.line() for r in results] + [f"passed={passed}/{len(results)}"]
    data = {"passed": passed, "total": len(results),
            "checks": [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
                       for r in results]}
    return "\n".join(lines), data, passed == len(results)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="purebraid", description="Pure braids, chord diagrams and gl(N) weights.")
    parser.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("comb", help="combed normal form of a pure braid")
    p.add_argument("--braid", help='e.g. "n=3; s1 s1"')
    p.set_defaults(run=_cmd_comb)

    p = sub.add_parser("normalize", help="straighten a chord-diagram combination")
    p.add_argument("--expr", help='e.g. "n=3; 1*[t(1,3) t(1,2)] - 1*[t(1,2) t(1,3)]"')
    p.add_argument("--strategy", choices=("leftmost", "rightmost"), default="leftmost")
    p.set_defaults(run=_cmd_normalize)

    p = sub.add_parser("weight", help="evaluate W_P, W_sigma or W_{k,sigma} on a diagram")
    p.add_argument("--diagram", help='e.g. "n=3; t(1,3) t(2,3)"')
    p.add_argument("--path", help='e.g. "{S1, S1 S3 S3}"')
    p.add_argument("--sigma", help='cycle notation, e.g. "(1)(2 3)"')
    p.add_argument("--k", help='cabling vector, e.g. "2,0,2"')
    p.set_defaults(run=_cmd_weight)

    p = sub.add_parser("dims", help="basis count against the Hilbert series")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(run=_cmd_dims)

    p = sub.add_parser("sepmatrix", help="separation matrix and unitriangularity verdict")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--budget", type=int, help=f"work budget in steps (default {DEFAULT_BUDGET})")
    p.set_defaults(run=_cmd_sepmatrix)

    p = sub.add_parser("quantum", help="traces tr_sigma of the quantum invariant as series in h")
    p.add_argument("--braid", help='braid or singular braid, e.g. "n=2; d1 s1"')
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--M", type=int, default=DEFAULT_ORDER)
    p.add_argument("--sigma", help="single permutation (default: all)")
    p.add_argument("--budget", type=int, help=f"largest matrix dimension N^n (default {MAX_DIMENSION})")
    p.set_defaults(run=_cmd_quantum)

    p = sub.add_parser("separate", help="find a trace coefficient telling two pure braids apart")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--M", type=int, default=DEFAULT_ORDER)
    p.add_argument("--budget", type=int, help=f"largest matrix dimension N^n (default {MAX_DIMENSION})")
    p.set_defaults(run=_cmd_separate)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--only", help='comma-separated check numbers, e.g. "1,3"')
    p.set_defaults(run=_cmd_selftest)
    return parser


def run(argv: Sequence[str], stdin=None, stdout=None, stderr=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(list(argv))
        result = args.run(args, stdin)
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=stderr)
        return EXIT_BUDGET
    ok = True
    if len(result) == 3:
        text, data, ok = result
    else:
        text, data = result
    if args.json:
        print(json.dumps(data), file=stdout)
    else:
        print(text, file=stdout)
    return 0 if ok else EXIT_SELFTEST


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
