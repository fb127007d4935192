import random

import pytest

from ringcodes.linear import LinearCode
from ringcodes.rings import make_ring


def random_code(ring, n, rng, max_rows=None):
    """Seeded random generator matrix (possibly redundant or degenerate)."""
    k = rng.randrange(1, (max_rows or n) + 1)
    rows = [
        [ring.from_index(rng.randrange(ring.size)) for _ in range(n)]
        for _ in range(k)
    ]
    return LinearCode(ring, n, rows)


def duality_corpus(seed=20240901, codes_per_ring=200, max_n=6):
    """The shared random corpus: 200 codes over each of Z_4, Z_9, Z_27 and
    F_3[g]/(g^2) with lengths up to 6."""
    rngs = [
        make_ring(2, 2),
        make_ring(3, 2),
        make_ring(3, 3),
        make_ring(3, 2, "fpgamma"),
    ]
    rng = random.Random(seed)
    out = []
    for ring in rngs:
        for _ in range(codes_per_ring):
            n = rng.randrange(1, max_n + 1)
            out.append(random_code(ring, n, rng))
    return out


@pytest.fixture(scope="session")
def corpus():
    return duality_corpus()
