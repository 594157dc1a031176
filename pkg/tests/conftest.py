import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import staircodes as sc

# n <= 16, r <= 16, m <= 3, s <= 4 throughout; covers m' = 0..4, every
# tie-break case, the no-spare-chunk edge (m + m' = n), r = 1 and m = 0.
SWEEP_CONFIGS = [
    (4, 2, 1, ()),
    (6, 3, 1, (1,)),
    (6, 3, 1, (1, 2)),
    (6, 4, 2, ()),
    (8, 4, 2, (1, 1, 2)),
    (8, 4, 1, (4,)),
    (8, 5, 2, (2, 2)),
    (8, 16, 1, (1,)),
    (8, 16, 2, (4,)),
    (8, 16, 2, (1, 1, 1, 1)),
    (9, 6, 3, (1, 1)),
    (10, 4, 1, (1, 3)),
    (10, 8, 3, (4,)),
    (12, 6, 2, (1, 2)),
    (12, 16, 3, (1, 1, 2)),
    (16, 16, 1, (2,)),
    (16, 16, 2, (1, 1)),
    (16, 16, 3, (3,)),
    (16, 8, 2, (2, 2)),
    (5, 4, 1, (1, 1, 2)),
    (4, 4, 2, (1, 1)),
    (7, 1, 2, (1, 1)),
    (6, 4, 0, (2, 2)),
    (16, 16, 3, (1, 3)),
    (11, 7, 2, (1, 1, 1)),
]


def sweep_configs():
    return [sc.config_new(n, r, m, e) for n, r, m, e in SWEEP_CONFIGS]


@pytest.fixture
def exemplar():
    """The worked example used throughout: n=8, r=4, m=2, e=(1,1,2)."""
    return sc.config_new(8, 4, 2, (1, 1, 2))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
