"""Modular (Gallai) decomposition, quotients, and Dilworth chain covers.

The decomposition follows Gallai's trichotomy: a poset on two or more
elements is parallel when its comparability graph is disconnected, series
when the complement is disconnected, and prime otherwise, in which case
the maximal proper strong modules partition the ground set.
"""

from dataclasses import dataclass, field
from functools import cmp_to_key

import networkx as nx

from .core import Poset, poset_from_relations, restrict
from .errors import ConstraintError, NotAModuleError, RangeError

__all__ = [
    "GallaiTree",
    "ChainDecomposition",
    "is_module",
    "gallai_tree",
    "quotient",
    "dilworth",
    "width",
    "intrinsic_width",
    "tree_to_sexpr",
    "reconstruct",
]


@dataclass(frozen=True)
class GallaiTree:
    """One node of the strong-module tree.

    elements holds the global (1-based) ground-set subset this node
    induces; children are in quotient order for series nodes and sorted by
    smallest element otherwise.  quotient is the poset on the children (in
    child order) and is populated for prime nodes.
    """

    kind: str  # "leaf" | "series" | "parallel" | "prime"
    elements: tuple
    children: tuple = ()
    quotient: Poset = field(default=None, compare=False)

    def nodes(self):
        yield self
        for child in self.children:
            yield from child.nodes()


@dataclass(frozen=True)
class ChainDecomposition:
    """Disjoint chains (increasing element sequences) covering the poset."""

    chains: tuple


def is_module(P, T):
    """True iff every element outside T relates to all of T uniformly."""
    mask = 0
    for x in T:
        if not 1 <= x <= P.n:
            raise RangeError("element %r outside 1..%d" % (x, P.n))
        mask |= 1 << (x - 1)
    for z in range(P.n):
        if mask & (1 << z):
            continue
        for rows in (P.up, P.down):
            inter = rows[z] & mask
            if inter != 0 and inter != mask:
                return False
    return True


def _components(members, neighbors):
    """Connected components of a graph given by a neighbor-mask function."""
    remaining = 0
    for x in members:
        remaining |= 1 << x
    comps = []
    while remaining:
        start = (remaining & -remaining)
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            probe = frontier
            while probe:
                v = (probe & -probe).bit_length() - 1
                probe &= probe - 1
                nxt |= neighbors(v) & remaining & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        remaining &= ~comp
    return comps


def _mask_to_elems(mask):
    out = []
    while mask:
        out.append((mask & -mask).bit_length())
        mask &= mask - 1
    return out


def _min_module(P, seed_mask, scope_mask):
    """Smallest module of P (within scope) containing the seed elements.

    Repeatedly absorbs any element that sees the current set non-uniformly
    (a "splitter") until none remains.
    """
    T = seed_mask
    changed = True
    while changed:
        changed = False
        outside = scope_mask & ~T
        probe = outside
        while probe:
            z = (probe & -probe).bit_length() - 1
            probe &= probe - 1
            up = P.up[z] & T
            down = P.down[z] & T
            if (up != 0 and up != T) or (down != 0 and down != T):
                T |= 1 << z
                changed = True
    return T


def _gallai(P, members):
    if len(members) == 1:
        return GallaiTree("leaf", (members[0] + 1,))
    scope = 0
    for x in members:
        scope |= 1 << x

    comp_neighbors = lambda v: (P.up[v] | P.down[v]) & scope
    comps = _components(members, comp_neighbors)
    if len(comps) > 1:
        comps.sort(key=lambda m: (m & -m))
        children = tuple(_gallai(P, [e - 1 for e in _mask_to_elems(m)]) for m in comps)
        return GallaiTree("parallel", tuple(e + 1 for e in members), children)

    inc_neighbors = lambda v: scope & ~(P.up[v] | P.down[v] | (1 << v))
    cocomps = _components(members, inc_neighbors)
    if len(cocomps) > 1:
        def below(a, b):
            # across co-components every pair is comparable
            x = (a & -a).bit_length()
            y = (b & -b).bit_length()
            return -1 if P.less(x, y) else 1

        cocomps.sort(key=cmp_to_key(below))
        children = tuple(_gallai(P, [e - 1 for e in _mask_to_elems(m)]) for m in cocomps)
        return GallaiTree("series", tuple(e + 1 for e in members), children)

    # Prime: members of the same maximal proper strong module as x are
    # exactly those y for which the minimal module containing {x, y} is
    # proper (every proper module of a prime poset sits inside one class).
    unassigned = scope
    classes = []
    while unassigned:
        xbit = unassigned & -unassigned
        cls = xbit
        probe = unassigned & ~xbit
        while probe:
            ybit = probe & -probe
            probe &= probe - 1
            if _min_module(P, xbit | ybit, scope) != scope:
                cls |= ybit
        classes.append(cls)
        unassigned &= ~cls
    classes.sort(key=lambda m: (m & -m))
    if len(classes) < 4:
        raise ConstraintError("prime node with %d children" % len(classes))
    children = tuple(_gallai(P, [e - 1 for e in _mask_to_elems(m)]) for m in classes)
    reps = [min(_mask_to_elems(m)) for m in classes]
    quot = restrict(P, reps)
    return GallaiTree("prime", tuple(e + 1 for e in members), children, quot)


def gallai_tree(P):
    """The full strong-module tree of P."""
    if P.n < 1:
        raise RangeError("empty poset has no decomposition")
    return _gallai(P, list(range(P.n)))


def quotient(P, parts):
    """Poset on the given module partition; blocks are checked."""
    seen = 0
    for part in parts:
        if not is_module(P, part):
            raise NotAModuleError("block %r is not a module" % (sorted(part),))
        for x in part:
            bit = 1 << (x - 1)
            if seen & bit:
                raise NotAModuleError("element %d appears in two blocks" % x)
            seen |= bit
    if seen != (1 << P.n) - 1:
        raise NotAModuleError("blocks do not cover the ground set")
    reps = [min(part) for part in parts]
    k = len(reps)
    up = [0] * k
    for i in range(k):
        for j in range(k):
            if i != j and P.less(reps[i], reps[j]):
                up[i] |= 1 << j
    return Poset(k, up)


def dilworth(P):
    """Minimum chain cover via maximum matching on the split graph.

    Matching a's copy to b's copy fuses a < b into a common chain; the
    cover has n - |matching| chains, which is the width.
    """
    n = P.n
    graph = nx.Graph()
    left = [("l", a) for a in range(1, n + 1)]
    graph.add_nodes_from(left)
    graph.add_nodes_from(("r", b) for b in range(1, n + 1))
    for a, b in P.relations():
        graph.add_edge(("l", a), ("r", b))
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    succ = {}
    has_pred = set()
    for node, mate in matching.items():
        if node[0] == "l":
            succ[node[1]] = mate[1]
            has_pred.add(mate[1])
    chains = []
    for start in range(1, n + 1):
        if start in has_pred:
            continue
        seq = [start]
        while seq[-1] in succ:
            seq.append(succ[seq[-1]])
        chains.append(tuple(seq))
    chains.sort(key=lambda c: c[0])
    return ChainDecomposition(tuple(chains))


def width(P):
    """Size of the largest antichain (Dilworth)."""
    return len(dilworth(P).chains)


def intrinsic_width(P):
    """Maximum width over prime quotients of the Gallai tree; 1 if none."""
    best = 1
    for node in gallai_tree(P).nodes():
        if node.kind == "prime":
            best = max(best, width(node.quotient))
    return best


def _permutation_encoding(Q):
    """A permutation rho with D(rho) equal to Q, or None.

    For i < j the orientation of rho is forced: rho(i) < rho(j) iff i
    precedes j.  The encoding exists iff that tournament is transitive.
    """
    k = Q.n
    greater = [0] * k  # greater[i]: elements that must exceed rho(i)
    for i in range(k):
        for j in range(i + 1, k):
            if Q.less(j + 1, i + 1):
                return None
            if Q.less(i + 1, j + 1):
                greater[i] |= 1 << j
            else:
                greater[j] |= 1 << i
    # rank by number of forced-smaller elements
    below = [0] * k
    for i in range(k):
        row = greater[i]
        while row:
            j = (row & -row).bit_length() - 1
            below[j] += 1
            row &= row - 1
    if sorted(below) != list(range(k)):
        return None
    rho = [b + 1 for b in below]
    from .core import Permutation, poset_from_permutation

    perm = Permutation(rho)
    if poset_from_permutation(perm) != Q:
        return None
    return perm


def tree_to_sexpr(tree):
    """Parenthesized serialization: leaf ids, (S ...), (P ...), (X[q] ...)."""
    if tree.kind == "leaf":
        return str(tree.elements[0])
    inner = " ".join(tree_to_sexpr(c) for c in tree.children)
    if tree.kind == "series":
        return "(S %s)" % inner
    if tree.kind == "parallel":
        return "(P %s)" % inner
    perm = _permutation_encoding(tree.quotient)
    if perm is not None:
        enc = " ".join(str(v) for v in perm.img)
    else:
        enc = ",".join("%d<%d" % (a, b) for a, b in tree.quotient.cover_pairs())
    return "(X[%s] %s)" % (enc, inner)


def reconstruct(tree):
    """Rebuild the poset (on the root's ground set) from its Gallai tree."""
    pairs = []

    def walk(node):
        if node.kind == "leaf":
            return
        for child in node.children:
            walk(child)
        if node.kind == "series":
            # consecutive children only; transitivity fills in the rest
            for i in range(len(node.children) - 1):
                for a in node.children[i].elements:
                    for b in node.children[i + 1].elements:
                        pairs.append((a, b))
        elif node.kind == "prime":
            quot = node.quotient
            for i in range(quot.n):
                for j in range(quot.n):
                    if i != j and quot.less(i + 1, j + 1):
                        for a in node.children[i].elements:
                            for b in node.children[j].elements:
                                pairs.append((a, b))

    walk(tree)
    n = len(tree.elements)
    return poset_from_relations(n, pairs)
