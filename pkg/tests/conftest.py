import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nanowords import census as cz
from nanowords.words import Nanoword, normalize_increasing


@pytest.fixture(scope="session")
def census4():
    t0 = time.monotonic()
    census = cz.build_census(4)
    census.limits["build_seconds"] = time.monotonic() - t0
    return census


@pytest.fixture(scope="session")
def census5():
    t0 = time.monotonic()
    census = cz.build_census(5, warn=lambda m: None)
    census.limits["build_seconds"] = time.monotonic() - t0
    return census


def random_nanoword(rng: random.Random, n: int) -> Nanoword:
    symbols = []
    for i in range(n):
        symbols += [chr(65 + i)] * 2
    rng.shuffle(symbols)
    types = "".join(rng.choice("ab") for _ in range(n))
    nw, _ = normalize_increasing(Nanoword("".join(symbols), types))
    return nw
