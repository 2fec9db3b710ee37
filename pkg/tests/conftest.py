import numpy as np
import pytest

from apwords import BINARY, Alphabet, CounterexampleFamily, FiniteWord


@pytest.fixture
def family():
    return CounterexampleFamily()


@pytest.fixture
def ab():
    return Alphabet("ab")


def bword(text):
    return FiniteWord.from_text(BINARY, text)


def naive_occurrences(x, w):
    """Quadratic reference scan (oracle for the production scanner)."""
    xd, wd = x.data, w.data
    m, n = len(xd), len(wd)
    return [
        i for i in range(n - m + 1) if bool(np.array_equal(wd[i : i + m], xd))
    ]
