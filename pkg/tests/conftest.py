import random

import pytest


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_rows(rng, n, p=0.5):
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return rows


def permute_rows(rows, perm):
    n = len(rows)
    out = [0] * n
    for i in range(n):
        r = rows[i]
        img = 0
        for j in range(n):
            if r >> j & 1:
                img |= 1 << perm[j]
        out[perm[i]] = img
    return out
