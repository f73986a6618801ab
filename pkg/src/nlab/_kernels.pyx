# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled ribbon map kernels; same contract as nlab._kernels_py."""

from libc.string cimport memset

BACKEND = "cython"

DEF MAXN = 64


cdef int _canonical_fill(int* io, int* ga, int* la, int n,
                         int* best, int have_best, list best_perms):
    """Try all roots; maintain the minimal code in `best`.  Returns 1 once set."""
    cdef int[MAXN] perm, order, g2, i2, l2
    cdef int d, root, k, head, nb, cmp_state
    for root in range(n):
        for d in range(n):
            perm[d] = -1
        perm[root] = 0
        order[0] = root
        k = 1
        head = 0
        while head < k:
            d = order[head]
            head += 1
            nb = ga[d]
            if perm[nb] < 0:
                perm[nb] = k
                order[k] = nb
                k += 1
            nb = io[d]
            if perm[nb] < 0:
                perm[nb] = k
                order[k] = nb
                k += 1
        if k < n:
            raise ValueError("disconnected map")
        for d in range(n):
            g2[perm[d]] = perm[ga[d]]
            i2[perm[d]] = perm[io[d]]
            l2[perm[d]] = la[d]
        if not have_best:
            cmp_state = -1
        else:
            cmp_state = 0
            for d in range(n):
                if g2[d] != best[d]:
                    cmp_state = -1 if g2[d] < best[d] else 1
                    break
            if cmp_state == 0:
                for d in range(n):
                    if i2[d] != best[n + d]:
                        cmp_state = -1 if i2[d] < best[n + d] else 1
                        break
            if cmp_state == 0:
                for d in range(n):
                    if l2[d] != best[2 * n + d]:
                        cmp_state = -1 if l2[d] < best[2 * n + d] else 1
                        break
        if cmp_state < 0:
            for d in range(n):
                best[d] = g2[d]
                best[n + d] = i2[d]
                best[2 * n + d] = l2[d]
            have_best = 1
            del best_perms[:]
            best_perms.append(tuple(perm[d] for d in range(n)))
        elif cmp_state == 0:
            best_perms.append(tuple(perm[d] for d in range(n)))
    return have_best


def canonical_data(iota, gamma, labels):
    """Minimal rooted-BFS relabeling over all darts; see the Python twin."""
    cdef int n = len(iota)
    if n > MAXN:
        raise ValueError("too many darts for the compiled kernel")
    cdef int[MAXN] io, ga, la
    cdef int[3 * MAXN] best
    cdef int d
    for d in range(n):
        io[d] = iota[d]
        ga[d] = gamma[d]
        la[d] = labels[d]
    best_perms = []
    _canonical_fill(io, ga, la, n, best, 0, best_perms)
    code = (tuple(best[d] for d in range(n)),
            tuple(best[n + d] for d in range(n)),
            tuple(best[2 * n + d] for d in range(n)))
    return code, best_perms


cdef int _connected(int* io, int* ga, int n):
    cdef int[MAXN] stack
    cdef int[MAXN] seen
    cdef int top, k, d, nb
    memset(seen, 0, n * sizeof(int))
    stack[0] = 0
    top = 1
    seen[0] = 1
    k = 1
    while top:
        top -= 1
        d = stack[top]
        nb = ga[d]
        if not seen[nb]:
            seen[nb] = 1
            k += 1
            stack[top] = nb
            top += 1
        nb = io[d]
        if not seen[nb]:
            seen[nb] = 1
            k += 1
            stack[top] = nb
            top += 1
    return k == n


cdef int _count_faces(int* io, int* ga, int n):
    cdef int[MAXN] seen
    cdef int faces = 0, d, cur
    memset(seen, 0, n * sizeof(int))
    for d in range(n):
        if seen[d]:
            continue
        faces += 1
        cur = d
        while not seen[cur]:
            seen[cur] = 1
            cur = ga[io[cur]]
    return faces


cdef void _scan_rec(int* io, int* ga, int n, int nvert, int nedge,
                    int wg, int wf, dict found, long* counter,
                    object progress, list gamma_list) except *:
    cdef int d = -1, e, faces, genus2, j
    for j in range(n):
        if io[j] < 0:
            d = j
            break
    if d < 0:
        counter[0] += 1
        if progress is not None and counter[0] % 100000 == 0:
            progress(counter[0])
        if _connected(io, ga, n):
            faces = _count_faces(io, ga, n)
            genus2 = 2 - (nvert - nedge + faces)
            if genus2 % 2 == 0:
                if (wg < 0 or genus2 // 2 == wg) and (wf < 0 or faces == wf):
                    code, _ = canonical_data([io[j] for j in range(n)],
                                             gamma_list, [0] * n)
                    found[code] = None
        return
    for e in range(d + 1, n):
        if io[e] < 0:
            io[d] = e
            io[e] = d
            _scan_rec(io, ga, n, nvert, nedge, wg, wf, found, counter,
                      progress, gamma_list)
            io[d] = -1
            io[e] = -1


def scan_pairings(valences, want_genus, want_faces, progress=None):
    """Enumerate iso classes of connected maps with fixed vertex valences."""
    cdef int n = 0
    cdef int v, j, start
    for v in valences:
        n += v
    if n % 2 or n == 0 or n > MAXN:
        return []
    cdef int[MAXN] ga, io
    start = 0
    for v in valences:
        for j in range(v):
            ga[start + j] = start + (j + 1) % v
        start += v
    for j in range(n):
        io[j] = -1
    cdef long counter = 0
    found = {}
    gamma_list = [ga[j] for j in range(n)]
    _scan_rec(io, ga, n, len(valences), n // 2, want_genus, want_faces,
              found, &counter, progress, gamma_list)
    return sorted(found)
