"""3-SAT to permutation-pattern-matching reduction and its verifiers.

build_gadget turns a 3-CNF formula over n variables and m clauses into a
pattern permutation pi of length 4n+5m and a text permutation tau of
length 8n+35m, assembled from per-variable and per-clause blocks of
rational values and then rank-normalized.  verify_reduction counts
matches of pi in tau two independent ways and compares with exhaustive
#SAT.
"""

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .core import OccurrenceFlavor, Permutation, is_occurrence, poset_from_permutation
from .errors import (
    ArityError,
    ConstraintError,
    FormatError,
    PolarityError,
    SizeLimitError,
    TimeoutError,
)
from .occur import count_occurrences

__all__ = [
    "Cnf3",
    "GadgetInstance",
    "VerifyReport",
    "parse_dimacs",
    "build_gadget",
    "count_satisfying",
    "verify_reduction",
]


@dataclass(frozen=True)
class Cnf3:
    """A 3-CNF formula: clauses are triples of (variable, is_positive)."""

    n: int
    clauses: tuple

    def __post_init__(self):
        for clause in self.clauses:
            if len(clause) != 3:
                raise ArityError("clause %r does not have exactly 3 literals" % (clause,))
            polarity = {}
            for var, positive in clause:
                if not 1 <= var <= self.n:
                    raise FormatError("variable %d outside 1..%d" % (var, self.n))
                if polarity.setdefault(var, positive) != positive:
                    raise PolarityError("variable %d occurs with both polarities" % var)

    @property
    def m(self):
        return len(self.clauses)


@dataclass(frozen=True)
class GadgetInstance:
    """The reduction output plus the pre-normalization rational sequences."""

    pattern: Permutation
    text: Permutation
    pattern_values: tuple
    text_values: tuple


@dataclass(frozen=True)
class VerifyReport:
    method: str
    matches: int
    sat: int
    pairs: tuple = None  # (r, s) vectors accepted by the structured method
    all_induced: bool = None
    all_block_local: bool = None

    @property
    def verdict(self):
        return "PASS" if self.matches == self.sat else "FAIL"

    def __str__(self):
        return "matches=%d sat=%d verdict=%s" % (self.matches, self.sat, self.verdict)


def parse_dimacs(text):
    """DIMACS CNF subset: 'p cnf n m' then m lines of 3 literals ending in 0."""
    n = m = None
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError("line %d: duplicate header" % lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError("line %d: expected 'p cnf <n> <m>'" % lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError("line %d: bad header counts" % lineno)
        else:
            if n is None:
                raise FormatError("line %d: clause before header" % lineno)
            try:
                lits = [int(p) for p in parts]
            except ValueError:
                raise FormatError("line %d: non-integer literal" % lineno)
            if not lits or lits[-1] != 0:
                raise FormatError("line %d: clause not terminated by 0" % lineno)
            lits = lits[:-1]
            if len(lits) != 3:
                raise ArityError("line %d: %d literals, expected 3" % (lineno, len(lits)))
            if any(lit == 0 for lit in lits):
                raise FormatError("line %d: zero literal inside clause" % lineno)
            clauses.append(tuple((abs(lit), lit > 0) for lit in lits))
    if n is None:
        raise FormatError("missing 'p cnf' header")
    if m != len(clauses):
        raise FormatError("header promises %d clauses, found %d" % (m, len(clauses)))
    return Cnf3(n, tuple(clauses))


def _rank_normalize(values):
    ranks = {v: r + 1 for r, v in enumerate(sorted(values))}
    if len(ranks) != len(values):
        raise ConstraintError("gadget values are not distinct")
    return Permutation([ranks[v] for v in values])


def build_gadget(f):
    """Construct the pattern/text pair for a 3-CNF formula.

    Variable blocks: pi^x_i = (2n+2i-1) i (2n-i+1) (2n+2i) and tau^x_i =
    (4n+4i-1) (2i-1) (4n-2i+2) (4n+4i) (4n+4i-3) (2i) (4n-2i+1) (4n+4i-2).
    Clause blocks pair pi^C_i = (4n+2i-1) u_i1 u_i2 u_i3 (4n+2i) with
    seven bracketed rows in tau^C_i, row s holding one value per literal
    slot: a "true" value t when binary digit j of s is 0 and a "false"
    value f when it is 1.

    Free parameters (the blocks only constrain them by intervals and
    orderings): all values for literal slot j of clause i share the
    denominator 24m+2.  The u value sits just above the running maximum
    of the slot's variables so far, which keeps it inside
    (a(i,j), 2n-a(i,j)+1) while staying strictly increasing down the
    slot.  The t and f values for a variable a cluster in (2a, 2a+1), an
    interval interior to both T_a = (2a-1, 4n-2a+2) and
    F_a = (2a, 4n-2a+1), increasing with (clause, slot, k); that gives
    the required within-clause orderings and cross-clause growth even
    when a variable changes polarity between clauses.  Slots are indexed
    separately so a clause repeating a variable still gets distinct
    values.  Everything is asserted post-construction.
    """
    n, m = f.n, f.m
    denom = 24 * m + 2
    pattern = []
    for i in range(1, n + 1):
        pattern += [2 * n + 2 * i - 1, i, 2 * n - i + 1, 2 * n + 2 * i]
    u = {}
    runmax = {1: 0, 2: 0, 3: 0}
    for i in range(1, m + 1):
        for j in (1, 2, 3):
            runmax[j] = max(runmax[j], f.clauses[i - 1][j - 1][0])
            u[i, j] = runmax[j] + Fraction(21 * m + 3 * (i - 1) + j, denom)
    for i in range(1, m + 1):
        pattern += [4 * n + 2 * i - 1, u[i, 1], u[i, 2], u[i, 3], 4 * n + 2 * i]

    text = []
    for i in range(1, n + 1):
        text += [4 * n + 4 * i - 1, 2 * i - 1, 4 * n - 2 * i + 2, 4 * n + 4 * i,
                 4 * n + 4 * i - 3, 2 * i, 4 * n - 2 * i + 1, 4 * n + 4 * i - 2]
    t, fv = {}, {}
    for i in range(1, m + 1):
        for j in (1, 2, 3):
            var = f.clauses[i - 1][j - 1][0]
            base = 21 * (i - 1) + 7 * (j - 1)
            for k in (1, 2, 3, 4):
                t[i, j, k] = 2 * var + Fraction(base + k, denom)
            for k in (1, 2, 3):
                fv[i, j, k] = 2 * var + Fraction(base + 4 + k, denom)
    rows = [  # binary digits of the row index; 0 picks t, 1 picks f
        (0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1), (1, 1, 0),
    ]
    t_next = {(i, j): 1 for i in range(1, m + 1) for j in (1, 2, 3)}
    f_next = {(i, j): 1 for i in range(1, m + 1) for j in (1, 2, 3)}
    for i in range(1, m + 1):
        for s, digits in enumerate(rows):
            text.append(8 * n + 14 * i - 1 - 2 * s)
            for j, digit in zip((1, 2, 3), digits):
                if digit == 0:
                    text.append(t[i, j, t_next[i, j]])
                    t_next[i, j] += 1
                else:
                    text.append(fv[i, j, f_next[i, j]])
                    f_next[i, j] += 1
            text.append(8 * n + 14 * i - 2 * s)

    _assert_gadget_constraints(f, u, t, fv, pattern, text)
    return GadgetInstance(_rank_normalize(pattern), _rank_normalize(text),
                          tuple(pattern), tuple(text))


def _assert_gadget_constraints(f, u, t, fv, pattern, text):
    n, m = f.n, f.m
    if len(pattern) != 4 * n + 5 * m or len(text) != 8 * n + 35 * m:
        raise ConstraintError("gadget block lengths are wrong")
    for i in range(1, m + 1):
        for j in (1, 2, 3):
            var, positive = f.clauses[i - 1][j - 1]
            if not var < u[i, j] < 2 * n - var + 1:
                raise ConstraintError("u[%d,%d] outside its interval" % (i, j))
            t_interval = (2 * var - 1, 4 * n - 2 * var + 2) if positive else (2 * var, 4 * n - 2 * var + 1)
            f_interval = (2 * var, 4 * n - 2 * var + 1) if positive else (2 * var - 1, 4 * n - 2 * var + 2)
            for k in (1, 2, 3, 4):
                if not t_interval[0] < t[i, j, k] < t_interval[1]:
                    raise ConstraintError("t[%d,%d,%d] outside its interval" % (i, j, k))
            for k in (1, 2, 3):
                if not f_interval[0] < fv[i, j, k] < f_interval[1]:
                    raise ConstraintError("f[%d,%d,%d] outside its interval" % (i, j, k))
            if not t[i, j, 1] < t[i, j, 2] < t[i, j, 3] < t[i, j, 4]:
                raise ConstraintError("t values out of order at (%d,%d)" % (i, j))
            if not fv[i, j, 1] < fv[i, j, 2] < fv[i, j, 3]:
                raise ConstraintError("f values out of order at (%d,%d)" % (i, j))
            for ip in range(1, i):
                if not u[i, j] > u[ip, j]:
                    raise ConstraintError("u not increasing across clauses")
                # t and f grow clause over clause per variable, wherever
                # that variable sat in the earlier clause
                for jp in (1, 2, 3):
                    if f.clauses[ip - 1][jp - 1][0] != var:
                        continue
                    if not t[i, j, 1] > t[ip, jp, 4]:
                        raise ConstraintError("t not increasing across clauses")
                    if not fv[i, j, 1] > fv[ip, jp, 3]:
                        raise ConstraintError("f not increasing across clauses")
    if len(set(pattern)) != len(pattern) or len(set(text)) != len(text):
        raise ConstraintError("gadget values are not distinct")


def count_satisfying(f):
    """#SAT by exhaustion over all 2^n assignments (n <= 20)."""
    if f.n > 20:
        raise SizeLimitError("n = %d exceeds the #SAT oracle budget" % f.n)
    count = 0
    for bits in range(1 << f.n):
        if all(any(((bits >> (var - 1)) & 1 == 1) == positive for var, positive in clause)
               for clause in f.clauses):
            count += 1
    return count


def _structured_candidates(f):
    """Candidate matches indexed by (r, s) vectors.

    r_i in {0,1} picks which bracket of tau^x_i hosts pi^x_i; s_i in
    0..6 picks the row of tau^C_i hosting pi^C_i.  Positions are forced:
    brackets and rows have exactly the right number of interior slots.
    """
    n, m = f.n, f.m
    for r in product((0, 1), repeat=n):
        base_x = []
        for i in range(1, n + 1):
            start = 8 * (i - 1) + 4 * r[i - 1]  # 0-based start of the bracket
            base_x.append((start, start + 1, start + 2, start + 3))
        for s in product(range(7), repeat=m):
            assignment = []
            for quad in base_x:
                assignment.extend(p + 1 for p in quad)
            for i in range(1, m + 1):
                start = 8 * n + 35 * (i - 1) + 5 * s[i - 1]
                assignment.extend(p + 1 for p in range(start, start + 5))
            yield r, s, tuple(assignment)


def _block_local(f, assignment):
    """True iff each pattern block lands inside its own text block."""
    n, m = f.n, f.m
    pos = 0
    for i in range(n):
        lo, hi = 8 * i + 1, 8 * (i + 1)
        for _ in range(4):
            if not lo <= assignment[pos] <= hi:
                return False
            pos += 1
    for i in range(m):
        lo, hi = 8 * n + 35 * i + 1, 8 * n + 35 * (i + 1)
        for _ in range(5):
            if not lo <= assignment[pos] <= hi:
                return False
            pos += 1
    return True


def verify_reduction(f, method="structured", timeout=60.0):
    """Count matches of the gadget and compare with #SAT.

    method="backtrack" runs the occurrence counter on D(pi), D(tau)
    (non-induced, injective, unlabeled); method="structured" enumerates
    the (r, s)-indexed candidate maps and validates each one, recording
    which pairs matched and whether every match is induced and
    block-local.
    """
    if method not in ("backtrack", "structured"):
        raise ValueError("unknown method %r" % method)
    gadget = build_gadget(f)
    sat = count_satisfying(f)
    deadline = time.monotonic() + timeout if timeout else None
    if method == "backtrack":
        flavor = OccurrenceFlavor(induced=False, injective=True, unlabeled=True)
        matches = count_occurrences(
            poset_from_permutation(gadget.pattern),
            poset_from_permutation(gadget.text),
            flavor,
            deadline=deadline,
        )
        return VerifyReport(method, matches, sat)
    P = poset_from_permutation(gadget.pattern)
    Q = poset_from_permutation(gadget.text)
    plain = OccurrenceFlavor(induced=False, injective=True)
    induced = OccurrenceFlavor(induced=True, injective=True)
    pairs = []
    all_induced = True
    all_local = True
    for r, s, assignment in _structured_candidates(f):
        if deadline is not None and time.monotonic() > deadline:
            raise TimeoutError("structured verification exceeded its deadline")
        if is_occurrence(assignment, P, Q, plain):
            pairs.append((r, s))
            if not is_occurrence(assignment, P, Q, induced):
                all_induced = False
            if not _block_local(f, assignment):
                all_local = False
    return VerifyReport(method, len(pairs), sat, tuple(pairs), all_induced, all_local)
