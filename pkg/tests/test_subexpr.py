import itertools
import random

import pytest

from bsbimod.coxeter import (Permutation, Reflection, ReflExpr, make_sequence,
                             product)
from bsbimod.subexpr import (Subexpr, SubSet, enumerate_sub, graph, components,
                             frozen_set, unfrozen_set, con_component, balance,
                             balanced_set, rel_card, equiv_class,
                             ENUM_IMPLEMENTATION)
from conftest import random_expr, reachable_targets


def brute_force_sub(t, w):
    m = len(t.entries)
    out = []
    for bits in itertools.product((0, 1), repeat=m):
        prod = Permutation.identity(t.n)
        for b, p in zip(bits, t.entries):
            if b:
                prod = prod * p.as_permutation()
        if w == "all" or prod == w:
            out.append(bits)
    return out


class TestEnumeration:
    def test_kernel_selected(self):
        assert ENUM_IMPLEMENTATION in ("cython", "python")

    def test_against_brute_force(self, rng):
        for _ in range(25):
            t = random_expr(rng, 4, rng.randint(1, 8))
            for w in ("all", Permutation.identity(4),
                      rng.choice(reachable_targets(t))):
                sub = enumerate_sub(t, w)
                assert list(sub.members) == brute_force_sub(t, w)

    def test_members_sorted_lex(self, rng):
        t = random_expr(rng, 4, 7)
        sub = enumerate_sub(t, "all")
        assert list(sub.members) == sorted(sub.members)

    def test_two_solution_oracle(self):
        n = 4
        pairs = [(1, 3), (2, 4), (1, 2), (3, 4), (1, 4), (2, 3)]
        t = ReflExpr(n, tuple(Reflection(a, b, n) for a, b in pairs))
        sub = enumerate_sub(t, Permutation.identity(n))
        assert set(sub.members) == {(0,) * 6, (1,) * 6}


class TestSubexpr:
    def setup_method(self):
        self.t = make_sequence("D", (1, 2, 3), 3)
        self.eps = Subexpr(self.t, (1, 0, 1, 0, 0))

    def test_prefixes(self):
        # eps^{<1} = 1; eps^{<i} multiplies in the chosen entries only
        assert self.eps.prefix(1) == Permutation.identity(3)
        assert self.eps.prefix(2).images == (2, 1, 3)
        assert self.eps.prefix(6) == self.eps.target()

    def test_refl_at_conjugates(self):
        # eps^i = eps^{<i} t_i (eps^{<i})^{-1}
        for i in range(1, 6):
            u = self.eps.prefix(i)
            expect = u * self.t[i].as_permutation() * u.inverse()
            assert self.eps.refl_at(i).as_permutation() == expect

    def test_M_partitions_positions(self):
        allM = self.eps.all_M()
        got = sorted(x for Mp in allM.values() for x in Mp)
        assert got == [1, 2, 3, 4, 5]
        for p, Mp in allM.items():
            assert all(self.eps.refl_at(i) == p for i in Mp)

    def test_roots(self):
        # eps^{->i} = eps^{<i}(alpha_{t_i}) is the root of eps^i up to sign
        from bsbimod.polyring import act
        for i in range(1, 6):
            r = self.eps.refl_at(i).root()
            got = self.eps.root_before(i)
            assert got in (r, r.scale(-1))
            assert got == act(self.eps.prefix(i).images, self.t[i].root())

    def test_dotted(self):
        dot = self.eps.dotted()
        assert dot.entries == tuple(self.eps.refl_at(i) for i in range(1, 6))


class TestFold:
    def test_flip_bits(self):
        t = make_sequence("D", (1, 2, 3), 3)
        eps = Subexpr(t, (0, 0, 0, 0, 0))
        assert eps.fold((1, 3)).bits == (1, 0, 1, 0, 0)

    def test_involution_and_composition(self, rng):
        for _ in range(40):
            t = random_expr(rng, 4, 6)
            eps = Subexpr(t, tuple(rng.randint(0, 1) for _ in range(6)))
            X = tuple(sorted(rng.sample(range(1, 7), rng.randint(0, 4))))
            Y = tuple(sorted(rng.sample(range(1, 7), rng.randint(0, 4))))
            assert eps.fold(X).fold(X).bits == eps.bits
            sym = tuple(sorted(set(X) ^ set(Y)))
            assert eps.fold(X).fold(Y).bits == eps.fold(sym).bits

    def test_fold_preserves_target_on_even_M_subsets(self, rng):
        for _ in range(40):
            t = random_expr(rng, 4, 6)
            eps = Subexpr(t, tuple(rng.randint(0, 1) for _ in range(6)))
            for p, Mp in eps.all_M().items():
                for r in range(0, len(Mp) + 1, 2):
                    for X in itertools.combinations(Mp, r):
                        assert eps.fold(X).target() == eps.target()


class TestRelCard:
    def test_oracle(self):
        assert rel_card({2, 3, 9}, {1, 2, 3, 4, 7, 9}) == 2

    def test_parity_identities(self, rng):
        for _ in range(200):
            X = sorted(rng.sample(range(1, 15), rng.randint(1, 8)))
            Y = set(rng.sample(X, rng.randint(0, len(X))))
            # sum_{x in X} |Y^{<x}| + |Y| = |Y|_X (mod 2)
            s = sum(len([y for y in Y if y < x]) for x in X) + len(Y)
            assert s % 2 == rel_card(Y, X) % 2

    def test_requires_subset(self):
        with pytest.raises(ValueError):
            rel_card({5}, {1, 2})


class TestGraph:
    def test_D3_cycle(self):
        t = make_sequence("D", (1, 2, 3), 3)
        sub = enumerate_sub(t, Permutation.identity(3))
        G = graph(sub)
        assert len(sub) == 5 and len(G.edges) == 5
        assert len(components(G)) == 1
        deg = {b: 0 for b in sub.members}
        for a, b, _, _ in G.edges:
            deg[a] += 1
            deg[b] += 1
        assert set(deg.values()) == {2}

    def test_edge_labels_in_dot(self):
        t = make_sequence("D", (1, 2, 3), 3)
        sub = enumerate_sub(t, Permutation.identity(3))
        dot = graph(sub).to_dot()
        assert "--" in dot and "p=(" in dot and "Y={" in dot

    def test_two_solution_graph_disconnected(self):
        n = 4
        pairs = [(1, 3), (2, 4), (1, 2), (3, 4), (1, 4), (2, 3)]
        t = ReflExpr(n, tuple(Reflection(a, b, n) for a, b in pairs))
        sub = enumerate_sub(t, Permutation.identity(n))
        G = graph(sub)
        assert len(G.edges) == 0 and len(components(G)) == 2


class TestFrozenSets:
    def test_frozen_and_unfrozen(self):
        t = make_sequence("D", (1, 2, 3), 3)
        sub = enumerate_sub(t, Permutation.identity(3))
        eps = Subexpr(t, sub.members[0])
        fro = frozen_set(sub, eps, (1,))
        assert all(b[0] == eps.bits[0] for b in fro.members)
        unf = unfrozen_set(sub, eps, (1, 2))
        for b in unf.members:
            assert all(b[i] == eps.bits[i] for i in range(2, 5))

    def test_con_component_within_frozen(self):
        t = make_sequence("D", (1, 2, 3), 3)
        sub = enumerate_sub(t, Permutation.identity(3))
        eps = Subexpr(t, sub.members[0])
        comp = con_component(sub, eps, (1,))
        assert eps.bits in comp.members
        fro = set(frozen_set(sub, eps, (1,)).members)
        assert set(comp.members) <= fro


class TestBalance:
    def test_balance_flags(self, rng):
        for _ in range(30):
            t = random_expr(rng, 4, 5, simple_only=True)
            for b in enumerate_sub(t, "all").members[:8]:
                eps = Subexpr(t, b)
                pos, neg, _ = balance(eps)
                assert sorted(pos + neg) == [1, 2, 3, 4, 5]
                for i in pos:
                    u = eps.prefix(i)
                    assert (u * t[i].as_permutation()).length() < u.length()

    def test_balanced_set_on_two_solutions(self):
        n = 4
        pairs = [(1, 3), (2, 4), (1, 2), (3, 4), (1, 4), (2, 3)]
        t = ReflExpr(n, tuple(Reflection(a, b, n) for a, b in pairs))
        sub = enumerate_sub(t, Permutation.identity(n))
        # the all-ones solution has no Bruhat drop at its first position
        assert isinstance(balanced_set(sub), bool)


class TestJson:
    def test_subset_json(self):
        t = make_sequence("D", (1, 2, 3), 3)
        sub = enumerate_sub(t, Permutation.identity(3))
        obj = sub.to_json()
        assert obj["members"] == ["".join(map(str, b)) for b in sub.members]
        assert obj["target"] == [1, 2, 3]
