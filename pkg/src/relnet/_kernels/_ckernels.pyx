# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels.  Interface-identical to ``_pykernels``."""

from libc.stdlib cimport malloc, free


def pair_index(int k):
    return [(i, j) for i in range(k) for j in range(i + 1, k)]


cdef bint _connected(int k, int npairs, int* pi, int* pj, int* labels) nogil:
    cdef unsigned long long reach = 1, full
    cdef bint grew = True
    cdef int p, bi, bj
    if k <= 1:
        return True
    full = (1ULL << k) - 1
    while grew:
        grew = False
        for p in range(npairs):
            if labels[p]:
                bi = (reach >> pi[p]) & 1
                bj = (reach >> pj[p]) & 1
                if bi != bj:
                    reach |= (1ULL << pi[p]) | (1ULL << pj[p])
                    grew = True
    return reach == full


def connected_labelings(int k, int n_labels):
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > 63:
        raise ValueError("k too large")
    cdef int npairs = k * (k - 1) // 2
    cdef int base = n_labels + 1
    cdef int* pi = <int*> malloc(max(npairs, 1) * sizeof(int))
    cdef int* pj = <int*> malloc(max(npairs, 1) * sizeof(int))
    cdef int* labels = <int*> malloc(max(npairs, 1) * sizeof(int))
    cdef int i, j, p, q
    out = []
    try:
        p = 0
        for i in range(k):
            for j in range(i + 1, k):
                pi[p] = i
                pj[p] = j
                p += 1
        for p in range(npairs):
            labels[p] = 0
        while True:
            if _connected(k, npairs, pi, pj, labels):
                out.append(tuple([labels[q] for q in range(npairs)]))
            # odometer increment, last pair fastest (matches itertools.product)
            q = npairs - 1
            while q >= 0:
                labels[q] += 1
                if labels[q] < base:
                    break
                labels[q] = 0
                q -= 1
            if q < 0:
                break
    finally:
        free(pi)
        free(pj)
        free(labels)
    return out


def consistent_combinations(choices):
    cdef int n = len(choices)
    if n == 0:
        return []
    for c in choices:
        if len(c) == 0:
            return []
    cdef int width = len(choices[0][0])
    cdef int total = 0, lvl, r, s, v, cur
    cdef int* sizes = <int*> malloc(n * sizeof(int))
    cdef int* offsets = <int*> malloc(n * sizeof(int))
    for lvl in range(n):
        sizes[lvl] = len(choices[lvl])
        offsets[lvl] = total
        total += sizes[lvl]
    cdef int* rows = <int*> malloc(max(total * width, 1) * sizeof(int))
    cdef int* current = <int*> malloc(max(width, 1) * sizeof(int))
    # owner[s] = deepest level that set slot s, or -1
    cdef int* owner = <int*> malloc(max(width, 1) * sizeof(int))
    cdef int* picked = <int*> malloc(n * sizeof(int))
    cdef int* base_row
    cdef bint ok
    out = []
    try:
        for lvl in range(n):
            for r in range(sizes[lvl]):
                row = choices[lvl][r]
                for s in range(width):
                    rows[(offsets[lvl] + r) * width + s] = row[s]
        for s in range(width):
            current[s] = -1
            owner[s] = -1
        lvl = 0
        picked[0] = -1
        while lvl >= 0:
            # undo this level's previous pick
            for s in range(width):
                if owner[s] == lvl:
                    owner[s] = -1
                    current[s] = -1
            picked[lvl] += 1
            if picked[lvl] >= sizes[lvl]:
                lvl -= 1
                continue
            base_row = rows + (offsets[lvl] + picked[lvl]) * width
            ok = True
            for s in range(width):
                v = base_row[s]
                if v < 0:
                    continue
                cur = current[s]
                if cur < 0:
                    current[s] = v
                    owner[s] = lvl
                elif cur != v:
                    ok = False
                    break
            if not ok:
                continue
            if lvl == n - 1:
                out.append(tuple([picked[r] for r in range(n)]))
            else:
                lvl += 1
                picked[lvl] = -1
    finally:
        free(sizes)
        free(offsets)
        free(rows)
        free(current)
        free(owner)
        free(picked)
    return out
