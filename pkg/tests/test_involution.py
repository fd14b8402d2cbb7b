import itertools

import numpy as np
import pytest

from srgfam import involution
from srgfam.errors import ContractError, StructureError
from srgfam.graphcore import Graph


def oracle_sigma(G, v):
    """Direct set-based construction, independent of the packed signatures."""
    N = set(G.neighbors(v))
    partner = {}
    for a in N:
        (b,) = set(G.neighbors(a)) & N
        partner[a] = b
    perm = list(range(G.v))
    for a in N:
        perm[a] = partner[a]
    non = [u for u in range(G.v) if u != v and u not in N]
    trace = {u: frozenset(set(G.neighbors(u)) & N) for u in non}
    for u in non:
        B = frozenset(partner[a] for a in trace[u])
        (w,) = [x for x in non if trace[x] == B]
        perm[u] = w
    return perm


def compose(p, q):
    return [p[q[x]] for x in range(len(q))]


def test_sigma_matches_oracle(l33, bh, sig_l33, sig_bh):
    for G, S in ((l33, sig_l33), (bh, sig_bh)):
        for v in range(G.v):
            assert list(S[v]) == oracle_sigma(G, v)


def test_sigma_properties(games, sig_games):
    V = games.v
    ident = np.arange(V)
    S = sig_games.astype(np.int64)
    assert (S[ident, ident] == ident).all()
    for v in (0, 17, 400, 728):
        assert (S[v][S[v]] == ident).all()
        assert involution.is_automorphism(games, S[v])
    # deterministic
    assert np.array_equal(involution.sigma_array(games, 5), involution.sigma_array(games, 5))


def test_involution_serialize(l33):
    s = involution.sigma(l33, 0)
    text = s.serialize()
    assert list(map(int, text.split())) == list(s.perm)
    assert s(0) == 0


def test_lemma2_brute_l33(l33, sig_l33):
    """Pure-Python permutation algebra on the smallest graph."""
    S = [list(map(int, row)) for row in sig_l33]
    V = 9
    e = list(range(V))
    for u, v in itertools.product(range(V), repeat=2):
        assert S[u][v] == S[v][u]
        assert compose(compose(S[u], S[v]), S[u]) == S[S[u][v]]
        if u != v:
            h = compose(S[u], S[v])
            assert all(h[x] != x for x in e)
            assert compose(h, compose(h, h)) == e
        if l33.adjacent(u, v):
            h = compose(S[u], S[v])
            assert all(l33.adjacent(x, h[x]) for x in e)
    for a, b, u in itertools.product(range(V), repeat=3):
        g = compose(S[a], S[b])
        ginv = compose(S[b], S[a])
        assert compose(compose(g, S[u]), ginv) == S[g[u]]
    for v, w, u in itertools.product(range(V), repeat=3):
        r = compose(S[v], compose(S[w], S[u]))
        assert compose(r, r) == e


@pytest.mark.parametrize("name", ["l33", "bh"])
def test_lemmas_exhaustive(name, l33, bh, sig_l33, sig_bh):
    G, S = {"l33": (l33, sig_l33), "bh": (bh, sig_bh)}[name]
    r2 = involution.verify_lemma2(G, S, mode="exhaustive")
    assert r2.passed, r2.details
    r3 = involution.verify_lemma3(G, S, mode="exhaustive")
    assert r3.passed and r3.details["triples_tested"] == G.v ** 3
    assert involution.triangle_check(G, S).passed


def test_lemmas_detect_damage(bh, sig_bh):
    S = sig_bh.copy()
    # break one involution by swapping two images
    S[3, [10, 11]] = S[3, [11, 10]]
    r2 = involution.verify_lemma2(bh, S, mode="exhaustive")
    assert not r2.passed
    assert r2.details["violations_i"] > 0 and r2.details["witnesses_i"]
    r3 = involution.verify_lemma3(bh, S, mode="sampled", samples=20000, seed=1)
    assert not r3.passed and r3.details["witnesses"] and r3.details["seed"] == 1


def test_sampled_reports_seed(games, sig_games):
    r = involution.verify_lemma3(games, sig_games, mode="sampled", samples=5000, seed=9)
    assert r.passed and r.details["seed"] == 9 and r.details["triples_tested"] == 5000
    with pytest.raises(ContractError):
        involution.verify_lemma3(games, sig_games, mode="bogus")


def test_sigma_rejects_non_family():
    # triangular prism: N(0) = {1, 2, 3} cannot carry a perfect matching
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    G = Graph.from_edges(6, edges)
    with pytest.raises(StructureError):
        involution.sigma_array(G, 0)


def test_is_automorphism_contract(l33):
    with pytest.raises(ContractError):
        involution.is_automorphism(l33, [0] * 9)
    assert not involution.is_automorphism(l33, [1, 0, 2, 3, 4, 5, 6, 7, 8])
