"""Pure-Python kernels. Same signatures as the compiled ``_kernels`` module.

Arrays are flat int sequences. ``pid[x*n + y]`` is the index of the
composable pair (x, y) or -1. ``left[p]``/``right[p]`` hold the arrow
indices of sigma(pair p); an entry with a -1 on either side is unassigned.
"""


def braid_violation(n, pid, left, right):
    """First triple (as x*n*n + y*n + z) where the braid equation fails, else -1.

    Triples touching an unassigned entry are skipped. A composite landing
    outside the composable pairs counts as a failure.
    """
    nn = n * n
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


def apply_generator(n, pid, left, right, codes, length, i):
    """Apply sigma at positions (i, i+1) to each base-n encoded tuple of a level.

    Returns the list of image codes; -1 where the pair is not composable.
    """
    hi = n ** (length - i - 1)
    lo = n ** (length - i - 2)
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
