"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 input format error, 3 budget or
timeout exceeded.  All output is deterministic for fixed inputs/seeds.
"""

import argparse
import random
import sys

from . import core, decomp, errors, lecount, occur, sat

FORMAT_ERRORS = (
    errors.FormatError,
    errors.CycleError,
    errors.RangeError,
    errors.NotAModuleError,
    errors.SizeError,
    errors.ConstraintError,
)
BUDGET_ERRORS = (errors.SizeLimitError, errors.MemoryBudgetError, errors.TimeoutError)


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path):
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_poset(path, as_permutation=False):
    text = _read(path)
    if as_permutation:
        return core.poset_from_permutation(core.parse_permutation(text))
    return core.parse_poset(text)


def build_parser():
    parser = Parser(prog="posetmatch")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("le", help="count linear extensions")
    p.add_argument("poset")
    p.add_argument("--method", choices=["auto", "downset", "recurse", "brute"], default="auto")
    p.add_argument("--check", action="store_true",
                   help="also run the brute-force oracle and fail on mismatch")

    p = sub.add_parser("occur", help="count or enumerate occurrences")
    p.add_argument("--pattern", required=True)
    p.add_argument("--text", required=True)
    p.add_argument("--perm-pattern", action="store_true")
    p.add_argument("--perm-text", action="store_true")
    p.add_argument("--induced", action="store_true")
    p.add_argument("--injective", action="store_true")
    p.add_argument("--unlabeled", action="store_true")
    p.add_argument("--enumerate", action="store_true")

    p = sub.add_parser("auts", help="count automorphisms of a permutation")
    p.add_argument("perm", help="one-line permutation, e.g. \"2 1\"")

    for verb in ("decomp", "width", "iwidth", "chains"):
        p = sub.add_parser(verb)
        p.add_argument("poset")

    p = sub.add_parser("sat-reduce", help="write the 3-SAT gadget")
    p.add_argument("cnf")
    p.add_argument("--pattern-out", required=True)
    p.add_argument("--text-out", required=True)

    p = sub.add_parser("sat-verify", help="verify the reduction on a formula")
    p.add_argument("cnf")
    p.add_argument("--method", choices=["backtrack", "structured"], default="structured")
    p.add_argument("--timeout", type=float, default=60.0)

    p = sub.add_parser("gen", help="generate seeded instances")
    p.add_argument("kind", choices=["poset", "perm"])
    p.add_argument("n", type=int)
    p.add_argument("rest", nargs="+", help="poset: <edge-prob> <seed>; perm: <seed>")

    return parser


def _run_le(args, out):
    P = _load_poset(args.poset)
    if args.method == "downset":
        value = lecount.count_le_downset_dp(P)
    elif args.method == "brute":
        value = lecount.count_le_bruteforce(P)
    else:  # auto and recurse both use the Gallai recursion
        value = lecount.count_linear_extensions(P)
    if args.check:
        oracle = lecount.count_le_bruteforce(P)
        if oracle != value:
            raise errors.ConstraintError("le mismatch: %d vs oracle %d" % (value, oracle))
    out.write("%d\n" % value)


def _run_occur(args, out):
    P = _load_poset(args.pattern, args.perm_pattern)
    Q = _load_poset(args.text, args.perm_text)
    flavor = core.OccurrenceFlavor(args.induced, args.injective, args.unlabeled)
    if args.enumerate:
        for occ in occur.enumerate_occurrences(P, Q, flavor):
            out.write(" ".join("%d->%d" % (v + 1, q) for v, q in enumerate(occ.assignment)) + "\n")
    else:
        out.write("%d\n" % occur.count_occurrences(P, Q, flavor))


def _run_gen(args, out):
    if args.kind == "poset":
        if len(args.rest) != 2:
            raise UsageError("gen poset <n> <edge-prob> <seed>")
        prob, seed = float(args.rest[0]), int(args.rest[1])
        rng = random.Random(seed)
        pairs = [(a, b) for a in range(1, args.n + 1) for b in range(a + 1, args.n + 1)
                 if rng.random() < prob]
        out.write(core.format_poset(core.poset_from_relations(args.n, pairs)))
    else:
        if len(args.rest) != 1:
            raise UsageError("gen perm <n> <seed>")
        rng = random.Random(int(args.rest[0]))
        img = list(range(1, args.n + 1))
        rng.shuffle(img)
        out.write(core.format_permutation(core.Permutation(img)))


def run(argv, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        err.write("usage error: %s\n" % exc)
        return 1
    try:
        if args.verb == "le":
            _run_le(args, out)
        elif args.verb == "occur":
            _run_occur(args, out)
        elif args.verb == "auts":
            sigma = core.parse_permutation(args.perm)
            out.write("%d\n" % lecount.count_automorphisms_dim2(sigma))
        elif args.verb == "decomp":
            out.write(decomp.tree_to_sexpr(decomp.gallai_tree(_load_poset(args.poset))) + "\n")
        elif args.verb == "width":
            out.write("%d\n" % decomp.width(_load_poset(args.poset)))
        elif args.verb == "iwidth":
            out.write("%d\n" % decomp.intrinsic_width(_load_poset(args.poset)))
        elif args.verb == "chains":
            for seq in decomp.dilworth(_load_poset(args.poset)).chains:
                out.write(" ".join(str(x) for x in seq) + "\n")
        elif args.verb == "sat-reduce":
            gadget = sat.build_gadget(sat.parse_dimacs(_read(args.cnf)))
            with open(args.pattern_out, "w", encoding="utf-8") as handle:
                handle.write(core.format_permutation(gadget.pattern))
            with open(args.text_out, "w", encoding="utf-8") as handle:
                handle.write(core.format_permutation(gadget.text))
        elif args.verb == "sat-verify":
            report = sat.verify_reduction(sat.parse_dimacs(_read(args.cnf)),
                                          method=args.method, timeout=args.timeout)
            out.write(str(report) + "\n")
        elif args.verb == "gen":
            _run_gen(args, out)
    except UsageError as exc:
        err.write("usage error: %s\n" % exc)
        return 1
    except FORMAT_ERRORS as exc:
        err.write("error: %s\n" % exc)
        return 2
    except BUDGET_ERRORS as exc:
        err.write("error: %s\n" % exc)
        return 3
    except OSError as exc:
        err.write("error: %s\n" % exc)
        return 2
    return 0


def main():
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
