# cython: language_level=3, boundscheck=False, wraparound=False
"""
Compiled kernel for enumerating subexpressions with a prescribed target.

Same contract as the pure-Python fallback: a pruned depth-first scan over
the 2^m bit choices, with suffix-reachability sets of integer-encoded
permutations (base-n digit strings) used to cut dead branches.
"""

__all__ = ["target_masks", "IMPLEMENTATION"]

IMPLEMENTATION = "cython"

cdef long _encode(int* p, int n):
    cdef long code = 0
    cdef int x
    for x in range(n - 1, -1, -1):
        code = code * n + p[x]
    return code


def target_masks(int n, trans, target):
    """All bitmasks whose subproduct of `trans` equals `target` (0-based)."""
    cdef int m = len(trans)
    cdef int i, x, a, b, tmp
    if n > 16 or m > 62:
        raise ValueError("instance too large for the compiled kernel")

    cdef int ta[64]
    cdef int tb[64]
    for i in range(m):
        pair = trans[i]
        ta[i] = pair[0]
        tb[i] = pair[1]

    cdef int tgt[16]
    for x in range(n):
        tgt[x] = target[x]

    cdef int ident[16]
    for x in range(n):
        ident[x] = x
    cdef long id_code = _encode(ident, n)

    # reachable[i] = set of encoded products of subsets of trans[i:]
    reachable = [None] * (m + 1)
    reachable[m] = {id_code}
    cdef int s[16]
    cdef long code
    for i in range(m - 1, -1, -1):
        a = ta[i]
        b = tb[i]
        prev = reachable[i + 1]
        cur = set(prev)
        for pcode in prev:
            code = pcode
            for x in range(n):
                s[x] = code % n
                code //= n
            for x in range(n):
                if s[x] == a:
                    s[x] = b
                elif s[x] == b:
                    s[x] = a
            cur.add(_encode(s, n))
        reachable[i] = cur

    out = []
    cdef int prefix[16]
    cdef int inv[16]
    cdef int res[16]
    for x in range(n):
        prefix[x] = x

    # iterative DFS: stack of (position, mask, phase)
    cdef list stack = [(0, 0, 0)]
    cdef long mask
    cdef int pos, phase
    cdef long rescode
    while stack:
        pos, mask, phase = stack.pop()
        if phase == 2:
            # undo the bit-1 swap made when phase 1 was scheduled
            a = ta[pos]
            b = tb[pos]
            tmp = prefix[a]
            prefix[a] = prefix[b]
            prefix[b] = tmp
            continue
        # residual = prefix^{-1} * target
        for x in range(n):
            inv[prefix[x]] = x
        for x in range(n):
            res[x] = inv[tgt[x]]
        rescode = _encode(res, n)
        if pos == m:
            if rescode == id_code:
                out.append(mask)
            continue
        if phase == 0:
            if rescode not in reachable[pos]:
                continue
            # schedule: bit 0 branch first, then bit 1 branch (phase 1)
            stack.append((pos, mask, 1))
            stack.append((pos + 1, mask, 0))
        else:
            # phase 1: take bit 1; swap now, schedule the undo
            a = ta[pos]
            b = tb[pos]
            tmp = prefix[a]
            prefix[a] = prefix[b]
            prefix[b] = tmp
            stack.append((pos, mask, 2))
            stack.append((pos + 1, mask | (1 << (m - 1 - pos)), 0))
    out.sort()
    return out
