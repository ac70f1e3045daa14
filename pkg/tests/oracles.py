"""Independent reference computations shared by the test modules."""
from functools import lru_cache
from itertools import product

import numpy as np


def all_strings(alphabet_size=4, max_len=6):
    """Every string up to ``max_len`` as tuples, shortest first."""
    out = []
    for n in range(max_len + 1):
        out.extend(product(range(alphabet_size), repeat=n))
    return out


def padded(strings, width):
    mat = np.zeros((len(strings), width), dtype=np.int32)
    lens = np.array([len(s) for s in strings], dtype=np.int32)
    for i, s in enumerate(strings):
        mat[i, :len(s)] = s
    return mat, lens


def all_pairs_distance(strings, alphabet_size=4):
    """Edit distance of every (ref, hyp) pair, shape ``(n, n)``, int8.

    Walks the trie of hypotheses depth-first, extending one dynamic
    programming column per trie edge for all references at once.
    """
    width = max(len(s) for s in strings)
    refs, lens = padded(strings, width)
    index = {s: i for i, s in enumerate(strings)}
    dist = np.full((len(strings), len(strings)), -1, dtype=np.int8)
    rows = np.arange(len(strings))

    def visit(prefix, col):
        dist[:, index[prefix]] = col[rows, lens]
        if len(prefix) == width:
            return
        for c in range(alphabet_size):
            new = np.empty_like(col)
            new[:, 0] = col[:, 0] + 1
            for i in range(1, width + 1):
                new[:, i] = np.minimum(
                    np.minimum(col[:, i - 1] + (refs[:, i - 1] != c), col[:, i] + 1),
                    new[:, i - 1] + 1,
                )
            visit(prefix + (c,), new)

    base = np.tile(np.arange(width + 1, dtype=np.int32), (len(strings), 1))
    visit((), base)
    return dist


@lru_cache(maxsize=None)
def recursive_distance(a, b):
    """Textbook recursion; exponential without the cache."""
    if not a:
        return len(b)
    if not b:
        return len(a)
    return min(
        recursive_distance(a[1:], b) + 1,
        recursive_distance(a, b[1:]) + 1,
        recursive_distance(a[1:], b[1:]) + (a[0] != b[0]),
    )
