"""Pure-Python implementation of the state-resolution kernels.

These loops dominate the runtime of the naive bracket oracle and of the
Khovanov cube construction: for every bit string s in {0,1}^c the smoothed
diagram's circles are found by union-find over edge labels.  The compiled
twin in ``_kernels.pyx`` implements the same three functions; import
through :mod:`skeinlab.kernels`, which picks the fastest available.

Conventions: crossings are quadruples (a, b, c, d) of 0-based edge ids,
listed counterclockwise from the incoming under-strand.  Bit 0 of a state
is the A-smoothing, joining (a, b) and (c, d); bit 1 joins (a, d) and
(b, c).
"""

import numpy as np

BACKEND_NAME = "python"


def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def _base_parent(n_points, pre_pairs):
    parent = list(range(n_points))
    for x, y in pre_pairs:
        rx, ry = _find(parent, x), _find(parent, y)
        if rx != ry:
            parent[ry] = rx
    # flatten so per-state copies start from a compressed forest
    for i in range(n_points):
        _find(parent, i)
    return parent


def state_circles(quads, n_points, pre_pairs, state):
    """Circles of a single smoothing.

    Returns (count, labels) where labels[edge] is the circle index,
    circles numbered by first appearance in edge order.
    """
    base = _base_parent(n_points, pre_pairs)
    parent = list(base)
    for k, (a, b, c, d) in enumerate(quads):
        if (state >> k) & 1:
            pairs = ((a, d), (b, c))
        else:
            pairs = ((a, b), (c, d))
        for x, y in pairs:
            rx, ry = _find(parent, x), _find(parent, y)
            if rx != ry:
                parent[ry] = rx
    labels = [0] * n_points
    seen = {}
    for i in range(n_points):
        r = _find(parent, i)
        if r not in seen:
            seen[r] = len(seen)
        labels[i] = seen[r]
    return len(seen), labels


def all_state_circles(quads, n_points, pre_pairs):
    """Circle counts and labelings for every state.

    Returns (counts, labels): counts is an int32 array of length 2^c,
    labels an int16 array of shape (2^c, n_points) with canonical circle
    indices per edge.
    """
    c = len(quads)
    n_states = 1 << c
    counts = np.zeros(n_states, dtype=np.int32)
    labels = np.zeros((n_states, n_points), dtype=np.int16)
    base = _base_parent(n_points, pre_pairs)
    for s in range(n_states):
        parent = list(base)
        for k in range(c):
            a, b, cc, d = quads[k]
            if (s >> k) & 1:
                p0, p1 = (a, d), (b, cc)
            else:
                p0, p1 = (a, b), (cc, d)
            for x, y in (p0, p1):
                rx, ry = _find(parent, x), _find(parent, y)
                if rx != ry:
                    parent[ry] = rx
        seen = {}
        row = labels[s]
        for i in range(n_points):
            r = _find(parent, i)
            if r not in seen:
                seen[r] = len(seen)
            row[i] = seen[r]
        counts[s] = len(seen)
    return counts, labels


def bracket_histogram(quads, n_points, pre_pairs):
    """Histogram H[w, l] = number of states with w one-bits and l circles.

    The naive Kauffman bracket state sum is assembled from this histogram
    exactly: sum over (w, l) of H[w, l] * A^(c - 2w) * delta^l.
    """
    c = len(quads)
    n_states = 1 << c
    hist = np.zeros((c + 1, n_points + 1), dtype=np.int64)
    base = _base_parent(n_points, pre_pairs)
    for s in range(n_states):
        parent = list(base)
        w = 0
        for k in range(c):
            a, b, cc, d = quads[k]
            if (s >> k) & 1:
                w += 1
                pairs = ((a, d), (b, cc))
            else:
                pairs = ((a, b), (cc, d))
            for x, y in pairs:
                rx, ry = _find(parent, x), _find(parent, y)
                if rx != ry:
                    parent[ry] = rx
        roots = 0
        for i in range(n_points):
            if _find(parent, i) == i:
                roots += 1
        hist[w, roots] += 1
    return hist
