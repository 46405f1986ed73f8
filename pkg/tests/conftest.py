import random

import pytest

from bsbimod.coxeter import Permutation, Reflection, ReflExpr


def random_expr(rng: random.Random, n: int, m: int,
                simple_only: bool = False) -> ReflExpr:
    entries = []
    for _ in range(m):
        if simple_only:
            i = rng.randrange(1, n)
            j = i + 1
        else:
            i, j = sorted(rng.sample(range(1, n + 1), 2))
        entries.append(Reflection(i, j, n))
    return ReflExpr(n, tuple(entries))


def reachable_targets(t: ReflExpr):
    """All products of subsequences of t (small m only)."""
    seen = {Permutation.identity(t.n)}
    for p in t.entries:
        seen |= {w * p.as_permutation() for w in seen}
    return sorted(seen, key=lambda w: w.images)


@pytest.fixture
def rng():
    return random.Random(20240824)
