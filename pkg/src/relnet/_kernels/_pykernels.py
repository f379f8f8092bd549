"""Pure-Python kernels.  Interface-identical to the compiled ``_ckernels``."""

from itertools import product


def pair_index(k):
    """Vertex pairs ``(i, j)``, ``i < j``, in the order labelings use."""
    return [(i, j) for i in range(k) for j in range(i + 1, k)]


def _connected(k, pairs, labels):
    if k <= 1:
        return True
    reach = 1
    grew = True
    while grew:
        grew = False
        for (i, j), lab in zip(pairs, labels):
            if lab and ((reach >> i) & 1) != ((reach >> j) & 1):
                reach |= (1 << i) | (1 << j)
                grew = True
    return reach == (1 << k) - 1


def connected_labelings(k, n_labels):
    """All edge labelings of the complete graph on ``k`` vertices that are connected.

    A labeling assigns each vertex pair (in :func:`pair_index` order) either
    0 (no edge) or a tag number in ``1..n_labels``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    pairs = pair_index(k)
    return [labels for labels in product(range(n_labels + 1), repeat=len(pairs))
            if _connected(k, pairs, labels)]


def consistent_combinations(choices):
    """Index tuples picking one row per choice list such that rows agree.

    Each row is a sequence of ints, one slot per variable, ``-1`` where the
    variable is absent.  Two rows agree when no slot holds two different
    non-negative values.  Results come out in lexicographic index order.
    """
    n = len(choices)
    if n == 0:
        return []
    if any(len(c) == 0 for c in choices):
        return []
    width = len(choices[0][0])
    out = []
    current = [-1] * width
    picked = [0] * n

    def descend(level):
        if level == n:
            out.append(tuple(picked))
            return
        for idx, row in enumerate(choices[level]):
            touched = []
            ok = True
            for slot in range(width):
                v = row[slot]
                if v < 0:
                    continue
                c = current[slot]
                if c < 0:
                    current[slot] = v
                    touched.append(slot)
                elif c != v:
                    ok = False
                    break
            if ok:
                picked[level] = idx
                descend(level + 1)
            for slot in touched:
                current[slot] = -1

    descend(0)
    return out
