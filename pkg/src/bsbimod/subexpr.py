"""
Subexpressions of a reflection expression: prefix products, position sets
M_p, folding, enumeration of Sub(t) and Sub(t, w), relative cardinality,
the per-reflection equivalence classes, the graphs Gr(Phi), frozen and
unfrozen subexpression sets, and balancedness.

A subexpression is a 0/1 sequence bound to its reflection expression; two
subexpressions over different expressions are never equal.
"""

__all__ = [
    "Subexpr", "SubSet", "SubGraph", "CAP",
    "rel_card", "enumerate_sub", "equiv_class", "graph", "components",
    "frozen_set", "unfrozen_set", "con_component", "balance", "balanced_set",
    "ENUM_IMPLEMENTATION",
]

from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Sequence, Tuple, Union

from .polyring import Polynomial, act
from .coxeter import Permutation, Reflection, ReflExpr

try:  # compiled kernel with pure-Python fallback
    from . import _enumcore as _enum
except ImportError:  # pragma: no cover - depends on build environment
    from . import _enumpure as _enum

ENUM_IMPLEMENTATION = _enum.IMPLEMENTATION

CAP = 24  # enumeration cap on the expression length

Bits = Tuple[int, ...]


@dataclass(frozen=True)
class Subexpr:
    """A 0/1 sequence bound to a reflection expression."""
    expr: ReflExpr
    bits: Bits

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if len(self.bits) != len(self.expr):
            raise ValueError("bits length mismatch")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0/1")

    def __len__(self) -> int:
        return len(self.bits)

    def __repr__(self) -> str:
        return f"Subexpr({''.join(map(str, self.bits))})"

    # -- prefix data -------------------------------------------------------

    def _prefixes(self) -> Tuple[Permutation, ...]:
        """Cached (eps^{<1}, ..., eps^{<m+1})."""
        cached = getattr(self, "_prefix_cache", None)
        if cached is None:
            out = [Permutation.identity(self.expr.n)]
            for k in range(1, len(self.bits) + 1):
                cur = out[-1]
                if self.bits[k - 1]:
                    cur = cur * self.expr[k].as_permutation()
                out.append(cur)
            cached = tuple(out)
            object.__setattr__(self, "_prefix_cache", cached)
        return cached

    def prefix(self, i: int) -> Permutation:
        """eps^{<i} = t_1^{eps_1} ... t_{i-1}^{eps_{i-1}}."""
        if not 1 <= i <= len(self.bits) + 1:
            raise IndexError(i)
        return self._prefixes()[i - 1]

    def prefix_le(self, i: int) -> Permutation:
        """eps^{<=i}."""
        return self.prefix(i + 1)

    def refl_at(self, i: int) -> Reflection:
        """eps^i = eps^{<i} t_i (eps^{<i})^{-1}."""
        return self.prefix(i).conjugate_reflection(self.expr[i])

    def root_before(self, i: int) -> Polynomial:
        """eps^{->i} = eps^{<i}(alpha_{t_i})."""
        return act(self.prefix(i).images, self.expr[i].root())

    def root_after(self, i: int) -> Polynomial:
        """eps^{<-i} = eps^{<=i}(alpha_{t_i})."""
        return act(self.prefix_le(i).images, self.expr[i].root())

    def target(self) -> Permutation:
        """eps^max: the full product."""
        return self.prefix(len(self) + 1)

    def M(self, p: Reflection) -> Tuple[int, ...]:
        """M_p(eps): positions i with eps^i = p."""
        return tuple(i for i in range(1, len(self) + 1) if self.refl_at(i) == p)

    def all_M(self) -> Dict[Reflection, Tuple[int, ...]]:
        """All nonempty M_p(eps), keyed by reflection."""
        cached = getattr(self, "_allM_cache", None)
        if cached is None:
            out: Dict[Reflection, list] = {}
            for i in range(1, len(self) + 1):
                out.setdefault(self.refl_at(i), []).append(i)
            cached = {p: tuple(v) for p, v in out.items()}
            object.__setattr__(self, "_allM_cache", cached)
        return dict(cached)

    def fold(self, X: Sequence[int]) -> "Subexpr":
        """f_X eps: flip the bits at X."""
        Xs = set(X)
        if any(not 1 <= x <= len(self) for x in Xs):
            raise ValueError("fold positions out of range")
        return Subexpr(self.expr, tuple(
            1 - b if i + 1 in Xs else b for i, b in enumerate(self.bits)))

    def dotted(self) -> ReflExpr:
        """eps^dot: the expression whose i-th entry is eps^i."""
        return ReflExpr(self.expr.n, tuple(
            self.refl_at(i) for i in range(1, len(self) + 1)))

    def weight(self) -> Polynomial:
        """o(eps) = prod_i eps^{->i}."""
        out = Polynomial.one(self.expr.n)
        for i in range(1, len(self) + 1):
            out = out * self.root_before(i)
        return out


@dataclass(frozen=True)
class SubSet:
    """A canonically ordered set of subexpressions of one expression."""
    expr: ReflExpr
    target: Optional[Permutation]  # None means "all"
    members: Tuple[Bits, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(tuple(b) for b in self.members))
        if len(set(self.members)) != len(self.members):
            raise ValueError("duplicate members")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, eps) -> bool:
        if isinstance(eps, Subexpr):
            return eps.expr == self.expr and eps.bits in set(self.members)
        return tuple(eps) in set(self.members)

    def subexprs(self) -> Tuple[Subexpr, ...]:
        return tuple(Subexpr(self.expr, b) for b in self.members)

    def restrict(self, bits_set) -> "SubSet":
        keep = {tuple(b) for b in bits_set}
        return SubSet(self.expr, self.target,
                      tuple(b for b in self.members if b in keep))

    def to_json(self) -> dict:
        obj = {"expr": self.expr.to_json(),
               "members": ["".join(map(str, b)) for b in self.members]}
        if self.target is not None:
            obj["target"] = list(self.target.images)
        return obj

    def __repr__(self) -> str:
        body = ",".join("".join(map(str, b)) for b in self.members)
        return f"SubSet[{body}]"


@dataclass(frozen=True)
class SubGraph:
    """The graph Gr(Phi): vertices Phi, edges {eps, delta} with eps =._p delta,
    labeled by the reflection p and the least even fold set Y realizing it."""
    vertices: SubSet
    edges: Tuple[Tuple[Bits, Bits, Reflection, Tuple[int, ...]], ...]

    def edge_pairs(self) -> Tuple[Tuple[Bits, Bits], ...]:
        return tuple((a, b) for a, b, _, _ in self.edges)

    def to_dot(self) -> str:
        lines = ["graph sub {"]
        for b in self.vertices.members:
            name = "".join(map(str, b))
            lines.append(f'  "{name}";')
        for a, b, p, Y in self.edges:
            sa, sb = "".join(map(str, a)), "".join(map(str, b))
            ys = ",".join(map(str, Y))
            lines.append(f'  "{sa}" -- "{sb}" [label="p=({p.i},{p.j});Y={{{ys}}}"];')
        lines.append("}")
        return "\n".join(lines)


def rel_card(Y, X) -> int:
    """
    |Y|_X: the number of elements of Y sitting at odd positions of X, with
    positions counted decreasingly (the largest element of X has position 1).

    >>> rel_card({2, 3, 9}, {1, 2, 3, 4, 7, 9})
    2
    """
    X = sorted(set(X), reverse=True)
    Y = set(Y)
    if not Y <= set(X):
        raise ValueError("Y must be a subset of X")
    return sum(1 for pos, x in enumerate(X, start=1) if pos % 2 == 1 and x in Y)


def enumerate_sub(t: ReflExpr, w: Union[Permutation, str, None] = "all",
                  cap: int = CAP) -> SubSet:
    """Sub(t) (w = "all"/None) or Sub(t, w), canonically (lexicographically)
    ordered by bits."""
    m = len(t)
    if m > cap:
        raise ValueError(f"expression length {m} exceeds the cap {cap}")
    if w is None or w == "all":
        members = tuple(tuple((mask >> (m - 1 - i)) & 1 for i in range(m))
                        for mask in range(2 ** m))
        return SubSet(t, None, members)
    if not isinstance(w, Permutation):
        raise TypeError("target must be a Permutation or 'all'")
    trans = [(r.i - 1, r.j - 1) for r in t.entries]
    target = tuple(v - 1 for v in w.images)
    masks = _enum.target_masks(t.n, trans, target)
    members = tuple(tuple((mask >> (m - 1 - i)) & 1 for i in range(m))
                    for mask in masks)
    return SubSet(t, w, members)


def _even_subsets(X: Sequence[int]):
    X = sorted(X)
    k = len(X)
    for mask in range(2 ** k):
        if bin(mask).count("1") % 2 == 0:
            yield tuple(X[i] for i in range(k) if (mask >> i) & 1)


def _all_subsets(X: Sequence[int]):
    X = sorted(X)
    k = len(X)
    for mask in range(2 ** k):
        yield tuple(X[i] for i in range(k) if (mask >> i) & 1)


def equiv_class(eps: Subexpr, p: Reflection, target_restricted: bool) -> SubSet:
    """The =._p class of eps: all f_X eps over X subset of M_p(eps), with X
    even when restricted to Sub(t, target)."""
    Mp = eps.M(p)
    gen = _even_subsets(Mp) if target_restricted else _all_subsets(Mp)
    seen = sorted({eps.fold(X).bits for X in gen})
    tgt = eps.target() if target_restricted else None
    return SubSet(eps.expr, tgt, tuple(seen))


def graph(Phi: SubSet) -> SubGraph:
    """Gr(Phi): edges {eps, delta} with delta = f_Y eps, Y an even subset of
    some M_p(eps) with |Y| >= 2, both endpoints in Phi."""
    members = set(Phi.members)
    edges: Dict[Tuple[Bits, Bits], Tuple[Reflection, Tuple[int, ...]]] = {}
    for bits in Phi.members:
        eps = Subexpr(Phi.expr, bits)
        for p, Mp in sorted(eps.all_M().items(), key=lambda kv: (kv[0].i, kv[0].j)):
            if len(Mp) < 2:
                continue
            for Y in _even_subsets(Mp):
                if len(Y) < 2:
                    continue
                other = eps.fold(Y).bits
                if other == bits or other not in members:
                    continue
                key = (min(bits, other), max(bits, other))
                if key not in edges or (p.i, p.j, Y) < (
                        edges[key][0].i, edges[key][0].j, edges[key][1]):
                    edges[key] = (p, Y)
    edge_list = tuple((a, b, p, Y) for (a, b), (p, Y) in sorted(edges.items()))
    return SubGraph(Phi, edge_list)


def components(G: SubGraph) -> Tuple[Tuple[Bits, ...], ...]:
    """Connected components, each sorted, ordered by least member."""
    adj: Dict[Bits, set] = {b: set() for b in G.vertices.members}
    for a, b, _, _ in G.edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = set()
    comps = []
    for start in G.vertices.members:
        if start in seen:
            continue
        stack, comp = [start], set()
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(adj[v] - comp)
        seen |= comp
        comps.append(tuple(sorted(comp)))
    return tuple(sorted(comps, key=lambda c: c[0]))


def _require_member(sub: SubSet, eps: Subexpr):
    if eps.bits not in set(sub.members):
        raise ValueError("subexpression not in the given set")


def frozen_set(sub: SubSet, eps: Subexpr, X: Sequence[int]) -> SubSet:
    """Sub^X(t, w, eps): members agreeing with eps at every position of X."""
    _require_member(sub, eps)
    Xs = set(X)
    keep = [b for b in sub.members
            if all(b[i - 1] == eps.bits[i - 1] for i in Xs)]
    return SubSet(sub.expr, sub.target, tuple(keep))


def unfrozen_set(sub: SubSet, eps: Subexpr, X: Sequence[int]) -> SubSet:
    """Sub_X(t, w, eps): members differing from eps only inside X."""
    _require_member(sub, eps)
    Xs = set(X)
    keep = [b for b in sub.members
            if all(i in Xs for i in range(1, len(b) + 1)
                   if b[i - 1] != eps.bits[i - 1])]
    return SubSet(sub.expr, sub.target, tuple(keep))


def con_component(sub: SubSet, eps: Subexpr, Y: Sequence[int]) -> SubSet:
    """Sub^Y_con(t, w, eps): the connected component of the frozen set
    containing eps, in the graph induced on the frozen set."""
    frozen = frozen_set(sub, eps, Y)
    G = graph(frozen)
    for comp in components(G):
        if eps.bits in comp:
            return SubSet(sub.expr, sub.target, comp)
    raise AssertionError("eps not found in its own frozen set")


def balance(eps: Subexpr):
    """(positive indices, negative indices, balanced?).  Index i is positive
    iff eps^{<i} t_i is shorter than eps^{<i} (a Bruhat drop)."""
    positive, negative = [], []
    for i in range(1, len(eps) + 1):
        u = eps.prefix(i)
        if (u * eps.expr[i].as_permutation()).length() < u.length():
            positive.append(i)
        else:
            negative.append(i)
    pos = tuple(positive)
    balanced = all(min(Mp) not in pos for Mp in eps.all_M().values())
    return pos, tuple(negative), balanced


def balanced_set(Phi: SubSet) -> bool:
    return all(balance(eps)[2] for eps in Phi.subexprs())


if __name__ == "__main__":
    import doctest
    doctest.testmod()
