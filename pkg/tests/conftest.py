import random

import pytest

from sheafloc import CartanElement, is_regular


def random_regular_X(model, rng: random.Random, lo=-20, hi=20, slice_="split"):
    """A random integer point off every wall of ``model``."""
    while True:
        v = [rng.randint(lo, hi) for _ in range(model.rank)]
        X = CartanElement.on_slice(v, slice_)
        if is_regular(model.delta, X):
            return X


@pytest.fixture
def rng():
    return random.Random(20240611)
