"""Path enumeration and square-move union-find on bit-encoded lattice paths.

A path with ``n = dx + dy`` steps is an n-bit integer whose most significant
bit is the first step, 0 for Right and 1 for Up.  Numeric order is then the
lexicographic order with Right < Up.

Two implementations with the same outputs:

* ``numba``: compiled loops (Gosper's hack enumeration, in-place union-find);
* ``numpy``: vectorised bit arithmetic plus scipy's sparse graph routines.

``CTOP_NUMBA=0`` forces the numpy path; otherwise numba is used when it
imports.
"""

from __future__ import annotations

import os
from itertools import combinations
from math import comb

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components, minimum_spanning_tree

try:  # optional accelerator
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False


def backend() -> str:
    if os.environ.get("CTOP_NUMBA", "1").strip().lower() in ("0", "false", "no", "off"):
        return "numpy"
    return "numba" if HAVE_NUMBA else "numpy"


# -- numpy ---------------------------------------------------------------------------------------


def enumerate_codes_numpy(dx: int, dy: int) -> np.ndarray:
    n = dx + dy
    if n == 0:
        return np.zeros(1, dtype=np.int64)
    if dy == 0:
        return np.zeros(1, dtype=np.int64)
    weights = np.int64(1) << np.arange(n - 1, -1, -1, dtype=np.int64)
    ups = np.array(list(combinations(range(n), dy)), dtype=np.int64)
    codes = weights[ups].sum(axis=1)
    codes.sort()
    return codes


def classes_numpy(codes: np.ndarray, dx: int, dy: int, blocked: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Component labels and spanning-forest merge pairs (index pairs into ``codes``).

    ``blocked[x, y]`` is True when the unit cell with lower-left corner
    (x, y), relative to the path source, is forbidden.
    """
    n = dx + dy
    m = len(codes)
    if n < 2 or m < 2:
        return np.arange(m, dtype=np.int64), np.zeros((0, 2), dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    bits = (codes[:, None] >> shifts[None, :]) & 1  # (m, n), step i in column i
    ys = np.cumsum(bits, axis=1) - bits  # height before step i
    xs = np.arange(n)[None, :] - ys
    # Right at i followed by Up at i+1 swaps to Up, Right across cell (x, y)
    ru = (bits[:, :-1] == 0) & (bits[:, 1:] == 1)
    ok = ru & ~blocked[xs[:, :-1], ys[:, :-1]]
    rows, cols = np.nonzero(ok)
    flip = (np.int64(3) << (n - 2 - cols).astype(np.int64))
    targets = codes[rows] ^ flip
    j = np.searchsorted(codes, targets)
    graph = coo_matrix((np.ones(len(rows)), (rows, j)), shape=(m, m)).tocsr()
    _, labels = connected_components(graph, directed=False)
    forest = minimum_spanning_tree(graph + graph.T).tocoo()
    pairs = np.stack([forest.row, forest.col], axis=1).astype(np.int64)
    return labels.astype(np.int64), pairs


# -- numba ---------------------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _enumerate_numba(dx, dy, count):
        out = np.empty(count, dtype=np.int64)
        if dy == 0:
            out[0] = 0
            return out
        v = (np.int64(1) << dy) - 1
        for k in range(count):
            out[k] = v
            t = v | (v - 1)
            # next larger integer with the same popcount (Gosper)
            low = (~t) & (t + 1)
            shift = 0
            w = v & -v
            while w > 1:
                w >>= 1
                shift += 1
            v = (t + 1) | ((low - 1) >> (shift + 1))
        return out

    @njit(cache=True)
    def _find(parent, i):
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            nxt = parent[i]
            parent[i] = root
            i = nxt
        return root

    @njit(cache=True)
    def _classes_numba(codes, dx, dy, blocked):
        m = codes.shape[0]
        n = dx + dy
        parent = np.arange(m)
        pairs = np.empty((max(m - 1, 0), 2), dtype=np.int64)
        npairs = 0
        for a in range(m):
            c = codes[a]
            x = 0
            y = 0
            for i in range(n - 1):
                b0 = (c >> (n - 1 - i)) & 1
                b1 = (c >> (n - 2 - i)) & 1
                if b0 == 0 and b1 == 1 and not blocked[x, y]:
                    target = c ^ (np.int64(3) << (n - 2 - i))
                    b = np.searchsorted(codes, target)
                    ra = _find(parent, a)
                    rb = _find(parent, b)
                    if ra != rb:
                        if ra < rb:
                            parent[rb] = ra
                        else:
                            parent[ra] = rb
                        pairs[npairs, 0] = a
                        pairs[npairs, 1] = b
                        npairs += 1
                if b0 == 1:
                    y += 1
                else:
                    x += 1
        labels = np.empty(m, dtype=np.int64)
        for a in range(m):
            labels[a] = _find(parent, a)
        return labels, pairs[:npairs]


def enumerate_codes(dx: int, dy: int, which: str | None = None) -> np.ndarray:
    which = which or backend()
    if which == "numba":
        return _enumerate_numba(dx, dy, comb(dx + dy, dy))
    return enumerate_codes_numpy(dx, dy)


def square_classes(
    codes: np.ndarray, dx: int, dy: int, blocked: np.ndarray, which: str | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Labels (equal iff same class) and merge pairs for the paths in ``codes``."""
    which = which or backend()
    # the (dx+1, dy+1) window keeps far-edge lookups in range; those moves never occur
    pad = np.zeros((dx + 1, dy + 1), dtype=np.bool_)
    window = blocked[: dx + 1, : dy + 1]
    pad[: window.shape[0], : window.shape[1]] = window
    if which == "numba":
        return _classes_numba(codes, dx, dy, pad)
    return classes_numpy(codes, dx, dy, pad)
