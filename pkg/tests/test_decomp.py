import itertools

import pytest

from posetmatch import (
    Permutation,
    antichain,
    chain,
    dilworth,
    gallai_tree,
    intrinsic_width,
    is_module,
    poset_from_permutation,
    poset_from_relations,
    quotient,
    width,
)
from posetmatch.decomp import reconstruct, tree_to_sexpr
from posetmatch.errors import NotAModuleError, RangeError

from conftest import random_poset


def brute_modules(P):
    found = []
    for r in range(1, P.n + 1):
        for sub in itertools.combinations(range(1, P.n + 1), r):
            if is_module(P, sub):
                found.append(frozenset(sub))
    return found


def brute_width(P):
    best = 1
    for r in range(1, P.n + 1):
        for sub in itertools.combinations(range(1, P.n + 1), r):
            if all(not P.comparable(a, b) for a, b in itertools.combinations(sub, 2)):
                best = max(best, r)
    return best


def test_is_module_examples(rng):
    P = random_poset(rng, 6)
    for x in range(1, 7):
        assert is_module(P, {x})
    assert is_module(P, set(range(1, 7)))
    Q = poset_from_permutation(Permutation([2, 3, 1]))
    assert not is_module(Q, {2, 3})
    with pytest.raises(RangeError):
        is_module(Q, {0})


def test_gallai_chain_and_antichain():
    t = gallai_tree(chain(3))
    assert t.kind == "series" and [c.kind for c in t.children] == ["leaf"] * 3
    t = gallai_tree(antichain(3))
    assert t.kind == "parallel" and len(t.children) == 3
    assert gallai_tree(chain(1)).kind == "leaf"


def test_gallai_2413_is_prime():
    P = poset_from_permutation(Permutation([2, 4, 1, 3]))
    # oracle: no 2- or 3-subset is a module
    for r in (2, 3):
        for sub in itertools.combinations(range(1, 5), r):
            assert not is_module(P, sub)
    t = gallai_tree(P)
    assert t.kind == "prime" and len(t.children) == 4


def test_gallai_strong_modules_are_nodes(rng):
    # every strong module found by brute force is a tree node (or a union
    # of consecutive series children / a subset of parallel children, the
    # degenerate weak-strong cases)
    for _ in range(15):
        P = random_poset(rng, rng.randint(2, 7))
        tree = gallai_tree(P)
        node_sets = {frozenset(node.elements) for node in tree.nodes()}
        unions = set()
        for node in tree.nodes():
            kids = [frozenset(c.elements) for c in node.children]
            if node.kind == "series":
                for i in range(len(kids)):
                    for j in range(i, len(kids)):
                        unions.add(frozenset().union(*kids[i:j + 1]))
            elif node.kind == "parallel":
                for r in range(1, len(kids) + 1):
                    for combo in itertools.combinations(kids, r):
                        unions.add(frozenset().union(*combo))
        modules = brute_modules(P)
        for module in modules:
            strong = all(
                other <= module or module <= other or not (other & module)
                for other in modules
            )
            if strong:
                assert module in node_sets or module in unions


def test_gallai_reconstruct(rng):
    for _ in range(40):
        P = random_poset(rng, rng.randint(1, 8))
        assert reconstruct(gallai_tree(P)) == P


def test_prime_quotients_have_no_nontrivial_module(rng):
    for _ in range(40):
        P = random_poset(rng, rng.randint(2, 8))
        for node in gallai_tree(P).nodes():
            if node.kind != "prime":
                continue
            q = node.quotient
            assert q.n >= 4
            for r in range(2, q.n):
                for sub in itertools.combinations(range(1, q.n + 1), r):
                    assert not is_module(q, sub)


def test_quotient_examples():
    assert quotient(chain(4), [{1, 2}, {3, 4}]) == chain(2)
    assert quotient(antichain(4), [{1, 2}, {3, 4}]) == antichain(2)
    P = poset_from_permutation(Permutation([2, 4, 1, 3]))
    assert quotient(P, [{1}, {2}, {3}, {4}]) == P
    with pytest.raises(NotAModuleError):
        quotient(poset_from_permutation(Permutation([2, 3, 1])), [{2, 3}, {1}])
    with pytest.raises(NotAModuleError):
        quotient(chain(3), [{1, 2}])


def test_dilworth_examples():
    assert dilworth(chain(6)).chains == ((1, 2, 3, 4, 5, 6),)
    assert len(dilworth(antichain(5)).chains) == 5


def test_dilworth_properties(rng):
    for _ in range(40):
        P = random_poset(rng, rng.randint(1, 8))
        cd = dilworth(P)
        seen = set()
        for seq in cd.chains:
            for a, b in zip(seq, seq[1:]):
                assert P.less(a, b)
            seen.update(seq)
        assert seen == set(range(1, P.n + 1))
        assert len(cd.chains) == brute_width(P) == width(P)


def test_intrinsic_width_examples():
    assert intrinsic_width(chain(7)) == 1
    assert intrinsic_width(antichain(5)) == 1
    assert intrinsic_width(poset_from_permutation(Permutation([2, 4, 1, 3]))) == 2


def test_sexpr_forms():
    assert tree_to_sexpr(gallai_tree(chain(3))) == "(S 1 2 3)"
    assert tree_to_sexpr(gallai_tree(antichain(3))) == "(P 1 2 3)"
    s = tree_to_sexpr(gallai_tree(poset_from_permutation(Permutation([2, 4, 1, 3]))))
    assert s == "(X[2 4 1 3] 1 2 3 4)"
