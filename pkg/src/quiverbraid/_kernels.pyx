# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; see _kernels_py for the reference semantics."""


def braid_violation(int n, const int[:] pid, const int[:] left, const int[:] right):
    cdef int x, y, z, p, q, r, t, u, v, a, b, c, d, e, g, h, i, j, k
    cdef int xo, yo
    cdef long nn = <long>n * n
    for x in range(n):
        xo = x * n
        for y in range(n):
            p = pid[xo + y]
            if p < 0:
                continue
            a = left[p]
            if a < 0 or right[p] < 0:
                continue
            b = right[p]
            yo = y * n
            for z in range(n):
                q = pid[yo + z]
                if q < 0:
                    continue
                g = left[q]
                if g < 0 or right[q] < 0:
                    continue
                h = right[q]
                r = pid[b * n + z]
                if r < 0:
                    return x * nn + yo + z
                c = left[r]
                if c < 0 or right[r] < 0:
                    continue
                d = right[r]
                t = pid[a * n + c]
                if t < 0:
                    return x * nn + yo + z
                e = left[t]
                if e < 0 or right[t] < 0:
                    continue
                u = pid[xo + g]
                if u < 0:
                    return x * nn + yo + z
                i = left[u]
                if i < 0 or right[u] < 0:
                    continue
                j = right[u]
                v = pid[j * n + h]
                if v < 0:
                    return x * nn + yo + z
                k = left[v]
                if k < 0 or right[v] < 0:
                    continue
                if e != i or right[t] != k or d != right[v]:
                    return x * nn + yo + z
    return -1


def apply_generator(int n, const int[:] pid, const int[:] left, const int[:] right,
                    codes, int length, int i):
    cdef long hi = <long>n ** (length - i - 1)
    cdef long lo = <long>n ** (length - i - 2)
    cdef long c
    cdef int x, y, p
    out = []
    for c in codes:
        x = (c // hi) % n
        y = (c // lo) % n
        p = pid[x * n + y]
        if p < 0:
            out.append(-1)
            continue
        out.append(c + (left[p] - x) * hi + (right[p] - y) * lo)
    return out
