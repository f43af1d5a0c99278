"""Ground types: posets, permutations, occurrence flavors, and their I/O.

Posets live on the ground set {1, ..., n} and store the full transitive
closure of their strict order, so relation queries are O(1).  Permutations
encode dimension-2 posets through D(sigma): i precedes j iff i < j and
sigma(i) < sigma(j).
"""

from dataclasses import dataclass

from .errors import CycleError, FormatError, RangeError

__all__ = [
    "Poset",
    "Permutation",
    "OccurrenceFlavor",
    "OccurrenceMap",
    "poset_from_relations",
    "poset_from_permutation",
    "restrict",
    "is_occurrence",
    "chain",
    "antichain",
    "parse_poset",
    "format_poset",
    "parse_permutation",
    "format_permutation",
]


class Poset:
    """A strict partial order on 1..n, transitively closed.

    The relation is stored as bitmask rows: ``up[i]`` has bit j set iff
    element i+1 strictly precedes element j+1.  Instances are immutable;
    construct them through poset_from_relations or poset_from_permutation.
    """

    __slots__ = ("n", "up", "down", "_hash")

    def __init__(self, n, up):
        self.n = n
        self.up = tuple(up)
        down = [0] * n
        for i in range(n):
            row = self.up[i]
            while row:
                j = (row & -row).bit_length() - 1
                down[j] |= 1 << i
                row &= row - 1
        self.down = tuple(down)
        self._hash = hash((n, self.up))

    def less(self, a, b):
        """True iff a strictly precedes b (1-based elements)."""
        return (self.up[a - 1] >> (b - 1)) & 1 == 1

    def comparable(self, a, b):
        return self.less(a, b) or self.less(b, a)

    def relations(self):
        """All strict pairs (a, b) with a < b in the order, 1-based."""
        out = []
        for i in range(self.n):
            row = self.up[i]
            while row:
                j = (row & -row).bit_length() - 1
                out.append((i + 1, j + 1))
                row &= row - 1
        return out

    def cover_pairs(self):
        """Pairs (a, b) where b covers a (no element strictly between)."""
        covers = []
        for a, b in self.relations():
            between = self.up[a - 1] & self.down[b - 1]
            if between == 0:
                covers.append((a, b))
        return covers

    def __eq__(self, other):
        return isinstance(other, Poset) and self.n == other.n and self.up == other.up

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Poset(n=%d, relations=%r)" % (self.n, self.relations())


class Permutation:
    """A bijection of 1..n given by its image sequence."""

    __slots__ = ("n", "img")

    def __init__(self, img):
        img = tuple(img)
        if sorted(img) != list(range(1, len(img) + 1)):
            raise FormatError("not a permutation of 1..%d: %r" % (len(img), img))
        self.n = len(img)
        self.img = img

    def __call__(self, i):
        return self.img[i - 1]

    def inverse(self):
        inv = [0] * self.n
        for i, v in enumerate(self.img):
            inv[v - 1] = i + 1
        return Permutation(inv)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.img == other.img

    def __hash__(self):
        return hash(self.img)

    def __repr__(self):
        return "Permutation(%r)" % (self.img,)


@dataclass(frozen=True)
class OccurrenceFlavor:
    """Which notion of occurrence is being counted.

    induced: images must reproduce incomparabilities as well as relations.
    injective: the map must be injective.
    unlabeled: count orbits under precomposition with automorphisms of the
    pattern instead of individual maps.
    """

    induced: bool = False
    injective: bool = False
    unlabeled: bool = False


@dataclass(frozen=True)
class OccurrenceMap:
    """assignment[v-1] is the image of pattern element v in the text."""

    assignment: tuple

    def __len__(self):
        return len(self.assignment)


def poset_from_relations(n, pairs):
    """Transitive closure of the given strict relations on 1..n.

    Raises CycleError if the closure would relate an element to itself,
    RangeError if a pair mentions an element outside 1..n.
    """
    up = [0] * n
    for a, b in pairs:
        if not (1 <= a <= n and 1 <= b <= n):
            raise RangeError("relation (%d, %d) outside 1..%d" % (a, b, n))
        if a == b:
            raise CycleError("reflexive pair (%d, %d)" % (a, b))
        up[a - 1] |= 1 << (b - 1)
    # Warshall closure, one bitmask row at a time.
    for k in range(n):
        rowk = up[k]
        if not rowk:
            continue
        bit = 1 << k
        for i in range(n):
            if up[i] & bit:
                up[i] |= rowk
    for i in range(n):
        if up[i] & (1 << i):
            raise CycleError("closure creates a cycle through %d" % (i + 1))
    return Poset(n, up)


def poset_from_permutation(sigma):
    """The dimension-<=2 poset D(sigma): i < j and sigma(i) < sigma(j)."""
    n = sigma.n
    up = [0] * n
    img = sigma.img
    for i in range(n):
        vi = img[i]
        row = 0
        for j in range(i + 1, n):
            if img[j] > vi:
                row |= 1 << j
        up[i] = row
    return Poset(n, up)


def restrict(P, subset):
    """Induced subposet on `subset`, relabeled 1..|subset| in natural order."""
    elems = sorted(set(subset))
    for x in elems:
        if not 1 <= x <= P.n:
            raise RangeError("element %r outside 1..%d" % (x, P.n))
    k = len(elems)
    up = [0] * k
    for i in range(k):
        for j in range(k):
            if i != j and P.less(elems[i], elems[j]):
                up[i] |= 1 << j
    return Poset(k, up)


def is_occurrence(f, P, Q, flavor):
    """Check whether f is an occurrence of P in Q of the given flavor.

    The unlabeled field is ignored: it is a counting convention, not a
    property of a single map.
    """
    assignment = f.assignment if isinstance(f, OccurrenceMap) else tuple(f)
    if len(assignment) != P.n:
        raise RangeError("map has %d entries, pattern has %d" % (len(assignment), P.n))
    for q in assignment:
        if not 1 <= q <= Q.n:
            raise RangeError("image %r outside 1..%d" % (q, Q.n))
    if flavor.injective and len(set(assignment)) != P.n:
        return False
    for v in range(1, P.n + 1):
        for w in range(1, P.n + 1):
            if v == w:
                continue
            if P.less(v, w) and not Q.less(assignment[v - 1], assignment[w - 1]):
                return False
            if flavor.induced and Q.less(assignment[v - 1], assignment[w - 1]) and not P.less(v, w):
                return False
    return True


def chain(n):
    """The total order 1 < 2 < ... < n."""
    up = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            up[i] |= 1 << j
    return Poset(n, up)


def antichain(n):
    """n pairwise-incomparable elements."""
    return Poset(n, [0] * n)


# --- textual formats -------------------------------------------------------
#
# Poset files: first non-comment line "p <n>", then "r <a> <b>" lines, each
# asserting a < b.  Lines starting with "#" are comments.  Writers emit the
# cover relation only; readers accept any generating set.


def parse_poset(text):
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError("line %d: duplicate p line" % lineno)
            if len(parts) != 2:
                raise FormatError("line %d: expected 'p <n>'" % lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise FormatError("line %d: bad count %r" % (lineno, parts[1]))
            if n < 0:
                raise FormatError("line %d: negative count" % lineno)
        elif parts[0] == "r":
            if n is None:
                raise FormatError("line %d: 'r' before 'p'" % lineno)
            if len(parts) != 3:
                raise FormatError("line %d: expected 'r <a> <b>'" % lineno)
            try:
                a, b = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError("line %d: bad relation" % lineno)
            pairs.append((a, b))
        else:
            raise FormatError("line %d: unknown directive %r" % (lineno, parts[0]))
    if n is None:
        raise FormatError("missing 'p <n>' line")
    return poset_from_relations(n, pairs)


def format_poset(P):
    lines = ["p %d" % P.n]
    for a, b in P.cover_pairs():
        lines.append("r %d %d" % (a, b))
    return "\n".join(lines) + "\n"


def parse_permutation(text):
    parts = text.split()
    if not parts:
        raise FormatError("empty permutation")
    try:
        img = [int(p) for p in parts]
    except ValueError:
        raise FormatError("non-integer entry in permutation")
    return Permutation(img)


def format_permutation(sigma):
    return " ".join(str(v) for v in sigma.img) + "\n"
