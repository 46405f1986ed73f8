"""
Pure-Python kernel for enumerating subexpressions with a prescribed target.

Works on 0-based one-line permutation tuples.  A depth-first scan over the
2^m bit choices is pruned with precomputed suffix-reachability sets: the
prefix u can be extended to the target w iff u^{-1} w is a product of some
subset of the remaining transpositions.
"""

__all__ = ["target_masks", "IMPLEMENTATION"]

IMPLEMENTATION = "python"


def target_masks(n, trans, target):
    """
    All bitmasks b (bit m-i set iff position i+1 is used... precisely:
    position i in 1..m corresponds to bit (m-i), so numeric order on masks
    equals lexicographic order on bit tuples) whose subproduct of `trans`
    equals `target`.

    n: rank; trans: list of 0-based (i, j) pairs; target: 0-based image tuple.
    """
    m = len(trans)
    identity = tuple(range(n))

    # reachable[i] = set of products of subsets of trans[i:], as tuples
    reachable = [None] * (m + 1)
    reachable[m] = {identity}
    for i in range(m - 1, -1, -1):
        a, b = trans[i]
        prev = reachable[i + 1]
        cur = set(prev)
        for s in prev:
            # left-multiply by the transposition (a b): swap the values a, b
            lst = list(s)
            for x in range(n):
                if lst[x] == a:
                    lst[x] = b
                elif lst[x] == b:
                    lst[x] = a
            cur.add(tuple(lst))
        reachable[i] = cur

    out = []
    prefix = list(range(n))  # running prefix product, one-line

    def residual():
        # (prefix^{-1} target) as a tuple
        inv = [0] * n
        for x in range(n):
            inv[prefix[x]] = x
        return tuple(inv[target[x]] for x in range(n))

    def dfs(i, mask):
        if i == m:
            if residual() == identity:
                out.append(mask)
            return
        if residual() not in reachable[i]:
            return
        # bit 0 first for lexicographic output order
        dfs(i + 1, mask)
        a, b = trans[i]
        # right-multiply the prefix by (a b): swap the entries at a and b
        prefix[a], prefix[b] = prefix[b], prefix[a]
        dfs(i + 1, mask | (1 << (m - 1 - i)))
        prefix[a], prefix[b] = prefix[b], prefix[a]

    dfs(0, 0)
    return out
