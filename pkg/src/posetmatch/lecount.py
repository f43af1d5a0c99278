"""Linear-extension counting and dimension-2 automorphism counting.

Two polynomial engines are provided: a down-set lattice DP driven by a
Dilworth chain cover, and a recursion over the Gallai tree that handles
prime quotients by inflating each quotient element to a chain (inflation
preserves the quotient's width, so the DP stays polynomial for bounded
intrinsic width).  Exhaustive oracles live here too.

Counts are plain Python integers (arbitrary precision).
"""

from dataclasses import dataclass
from itertools import permutations
from math import factorial, prod

from .core import Permutation, Poset, poset_from_permutation, poset_from_relations
from .decomp import dilworth, gallai_tree
from .errors import MemoryBudgetError, SizeLimitError
from .occur import automorphism_maps

DEFAULT_NODE_BUDGET = 2_000_000
DEFAULT_ORACLE_BUDGET = 9

__all__ = [
    "DownSetLattice",
    "CanonicalCode",
    "downset_lattice",
    "lattice_as_poset",
    "count_le_downset_dp",
    "inflate",
    "count_linear_extensions",
    "count_automorphisms_dim2",
    "canonical_code",
    "count_automorphisms_bruteforce",
    "count_le_bruteforce",
]


@dataclass(frozen=True)
class DownSetLattice:
    """Down-sets keyed by chain-prefix vectors.

    nodes maps the key (|D ∩ C_1|, ..., |D ∩ C_k|) of each down-set D to
    the sorted list of keys it covers (D minus one maximal element).
    """

    nodes: dict
    chain_assignment: object

    @property
    def empty_key(self):
        return (0,) * len(self.chain_assignment.chains)

    @property
    def full_key(self):
        return tuple(len(c) for c in self.chain_assignment.chains)


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Byte string identifying a dimension-<=2 poset up to isomorphism."""

    code: bytes


def downset_lattice(P, cd):
    """The lattice of down-sets of P over the chain cover cd.

    Built frontier-first: a down-set D extends by the least unused element
    x of a chain iff no chain's least unused element precedes x, which
    needs at most k^2 comparisons per down-set.
    """
    chains = cd.chains
    k = len(chains)
    empty = (0,) * k
    nodes = {empty: []}
    queue = [empty]
    while queue:
        key = queue.pop()
        frontier = [chains[j][key[j]] if key[j] < len(chains[j]) else None for j in range(k)]
        for i in range(k):
            x = frontier[i]
            if x is None:
                continue
            ok = True
            for j in range(k):
                y = frontier[j]
                if y is not None and y != x and P.less(y, x):
                    ok = False
                    break
            if not ok:
                continue
            newkey = key[:i] + (key[i] + 1,) + key[i + 1:]
            node = nodes.get(newkey)
            if node is None:
                nodes[newkey] = [key]
                queue.append(newkey)
            else:
                node.append(key)
    for children in nodes.values():
        children.sort()
    return DownSetLattice(nodes, cd)


def lattice_as_poset(lattice):
    """The down-set lattice ordered by inclusion, as a Poset.

    Nodes are numbered 1..N in order of (size, key); inclusion is
    componentwise comparison of prefix vectors.
    """
    keys = sorted(lattice.nodes, key=lambda key: (sum(key), key))
    index = {key: i for i, key in enumerate(keys)}
    up = [0] * len(keys)
    for i, a in enumerate(keys):
        for j, b in enumerate(keys):
            if a != b and all(x <= y for x, y in zip(a, b)):
                up[i] |= 1 << j
    return Poset(len(keys), up)


def count_le_downset_dp(P, node_budget=DEFAULT_NODE_BUDGET):
    """e(P) by the down-set recurrence f(D) = sum over covered D'."""
    cd = dilworth(P)
    projected = prod(len(c) + 1 for c in cd.chains)
    if projected > node_budget:
        raise MemoryBudgetError(
            "projected down-set count %d exceeds budget %d" % (projected, node_budget)
        )
    lattice = downset_lattice(P, cd)
    f = {lattice.empty_key: 1}
    for key in sorted(lattice.nodes, key=lambda key: (sum(key), key)):
        children = lattice.nodes[key]
        if children:
            f[key] = sum(f[c] for c in children)
    return f[lattice.full_key]


def inflate(quotient, sizes):
    """Replace element i of the quotient by a chain of sizes[i].

    Relations lift uniformly, so the result has the quotient's width.
    """
    assert len(sizes) == quotient.n
    offsets = []
    total = 0
    for s in sizes:
        offsets.append(total)
        total += s
    pairs = []
    for i in range(quotient.n):
        base = offsets[i]
        for t in range(sizes[i] - 1):
            pairs.append((base + t + 1, base + t + 2))
        for j in range(quotient.n):
            if i != j and quotient.less(i + 1, j + 1):
                # linking the chain ends suffices; closure lifts the rest
                pairs.append((base + sizes[i], offsets[j] + 1))
    return poset_from_relations(total, pairs)


def _multinomial(sizes):
    return factorial(sum(sizes)) // prod(factorial(s) for s in sizes)


def count_linear_extensions(P, node_budget=DEFAULT_NODE_BUDGET):
    """e(P) by recursion on the Gallai tree.

    Every module may be ordered internally without constraint from the
    rest of an extension, so e(node) is the product over children times a
    shuffle factor: 1 for series nodes, the multinomial of child sizes for
    parallel nodes, and for prime nodes the extension count of the
    quotient with each element inflated to a chain of the child's size.
    """

    def walk(node):
        if node.kind == "leaf":
            return 1
        total = prod(walk(c) for c in node.children)
        sizes = [len(c.elements) for c in node.children]
        if node.kind == "series":
            return total
        if node.kind == "parallel":
            return total * _multinomial(sizes)
        return total * count_le_downset_dp(inflate(node.quotient, sizes), node_budget)

    return walk(gallai_tree(P))


def _pattern(sigma, positions):
    """The permutation pattern of sigma at the given (sorted) positions."""
    values = [sigma.img[p - 1] for p in positions]
    ranks = {v: r + 1 for r, v in enumerate(sorted(values))}
    return Permutation([ranks[v] for v in values])


def _quotient_perm(sigma, children):
    """Quotient permutation at a prime node, children in min-position order.

    Picking each child's least position as representative realizes the
    quotient as the pattern of sigma at those positions.
    """
    reps = [child.elements[0] for child in children]
    return _pattern(sigma, reps)


def _code(sigma):
    P = poset_from_permutation(sigma)
    if P.n == 1:
        return b"L"
    tree = gallai_tree(P)
    child_perms = [_pattern(sigma, child.elements) for child in tree.children]
    child_codes = [_code(p) for p in child_perms]
    if tree.kind == "series":
        return b"(S" + b"".join(child_codes) + b")"
    if tree.kind == "parallel":
        return b"(P" + b"".join(sorted(child_codes)) + b")"
    rho = _quotient_perm(sigma, tree.children)
    inv = rho.inverse()

    def variant(perm, codes):
        head = ",".join(str(v) for v in perm.img).encode()
        return b"(X" + head + b"|" + b"".join(codes) + b")"

    # the two realizer orderings: children by position with rho, and
    # children by value with rho inverse
    a = variant(rho, child_codes)
    value_order = [child_codes[inv.img[j] - 1] for j in range(rho.n)]
    b = variant(inv, value_order)
    return min(a, b)


def canonical_code(sigma):
    """Isomorphism-canonical code of D(sigma), recursive over its Gallai tree."""
    return CanonicalCode(_code(sigma))


def count_automorphisms_dim2(sigma):
    """|Aut(D(sigma))| by recursion on the Gallai tree.

    Series nodes contribute nothing beyond their children; parallel nodes
    allow permuting isomorphic children; a prime quotient has at most one
    nontrivial automorphism, the inverse of its quotient permutation, and
    it lifts only when it is genuinely an automorphism and pairs
    isomorphic children.
    """
    P = poset_from_permutation(sigma)
    if P.n == 1:
        return 1
    tree = gallai_tree(P)
    child_perms = [_pattern(sigma, child.elements) for child in tree.children]
    total = prod(count_automorphisms_dim2(p) for p in child_perms)
    if tree.kind == "series":
        return total
    if tree.kind == "parallel":
        groups = {}
        for p in child_perms:
            groups[_code(p)] = groups.get(_code(p), 0) + 1
        return total * prod(factorial(m) for m in groups.values())
    rho = _quotient_perm(sigma, tree.children)
    tau = rho.inverse().img
    quot = tree.quotient
    lift = 1
    for i in range(quot.n):
        for j in range(quot.n):
            if i != j and quot.less(i + 1, j + 1) != quot.less(tau[i], tau[j]):
                lift = 0
                break
        if not lift:
            break
    if lift:
        codes = [_code(p) for p in child_perms]
        if any(codes[i] != codes[tau[i] - 1] for i in range(quot.n)):
            lift = 0
    return total * (1 + lift)


def count_automorphisms_bruteforce(P, budget=DEFAULT_ORACLE_BUDGET):
    """Exhaustive |Aut(P)| over all bijections; oracle use only."""
    if P.n > budget:
        raise SizeLimitError("|P| = %d exceeds oracle budget %d" % (P.n, budget))
    return len(automorphism_maps(P))


def count_le_bruteforce(P, budget=DEFAULT_ORACLE_BUDGET):
    """Exhaustive e(P) over all total orders; oracle use only."""
    if P.n > budget:
        raise SizeLimitError("|P| = %d exceeds oracle budget %d" % (P.n, budget))
    count = 0
    for order in permutations(range(P.n)):
        seen = 0
        ok = True
        for x in order:
            if P.up[x] & seen:
                ok = False
                break
            seen |= 1 << x
        if ok:
            count += 1
    return count
