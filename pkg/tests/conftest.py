import random

import pytest

from posetmatch import poset_from_relations


def random_poset(rng, n, prob=None):
    """Seeded random poset: Bernoulli upper-triangular relation, closed."""
    if prob is None:
        prob = rng.random()
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)
             if rng.random() < prob]
    return poset_from_relations(n, pairs)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
