import random
from fractions import Fraction

import pytest

from srgfam import euclid
from srgfam.errors import ConsistencyError, ContractError, DomainError
from srgfam.exactlinalg import psd_with_rank_bound, rat_rank
from srgfam.graphcore import spectrum

F = Fraction
G_DIM = {1: 4, 2: 20, 4: 112}


def test_rep_constants():
    c = euclid.rep_constants(2)
    assert (c.p, c.q) == (F(-7, 20), F(1, 10))
    assert (c.alpha, c.beta, c.gamma) == (F(2, 3), F(1, 3), F(2))
    for n in range(1, 50):
        c = euclid.rep_constants(n)
        assert -1 < c.p < c.q < 1
    assert euclid.rep_constants(1).alpha is None
    with pytest.raises(DomainError):
        euclid.rep_constants(0)


def test_constants_match_spectrum():
    # p = s/k and q = -(1+s)/(v-1-k) project onto the s-eigenspace
    from srgfam.family import family_params
    for n in (1, 2, 3, 4, 7):
        par = family_params(n)
        s = spectrum(par).s
        c = euclid.rep_constants(n)
        assert c.p == s / par.k
        assert c.q == -(1 + s) / (par.v - 1 - par.k)


@pytest.mark.parametrize("name,n", [("l33", 1), ("bh", 2), ("games", 4)])
def test_two_design(name, n, request):
    G = request.getfixturevalue(name)
    r = euclid.two_design_check(G, n)
    assert r.passed
    assert r.details["sum_of_gram"] == 0
    assert r.details["second_moment"] == {1: F(81, 4), 2: F(6561, 20), 4: F(531441, 112)}[n]


def test_two_design_wrong_graph(l33):
    with pytest.raises(ContractError):
        euclid.two_design_check(l33, 2)


def test_neighborhood_gram_rank(bh, games):
    assert euclid.gram_rank_of_neighborhood(bh, 2, 0) == 20
    assert euclid.gram_rank_of_neighborhood(games, 4, 0) == 112


@pytest.mark.parametrize("name,n,size", [("l33", 1, 9), ("bh", 2, 81), ("games", 4, 200)])
def test_random_subsets_psd(name, n, size, request):
    G = request.getfixturevalue(name)
    rng = random.Random(1)
    U = rng.sample(range(G.v), size)
    M = euclid.gram_of_subset(G, n, U)
    assert psd_with_rank_bound(M, G_DIM[n])
    if size < G.v:
        assert not psd_with_rank_bound(M, G_DIM[n] - 1)


@pytest.mark.parametrize("name,n", [("bh", 2), ("games", 4)])
def test_relation_residual(name, n, request):
    G = request.getfixturevalue(name)
    rng = random.Random(2)
    vinf = rng.randrange(G.v)
    non = [u for u in range(G.v) if u != vinf and not G.adjacent(u, vinf)]
    for u in rng.sample(non, 10):
        assert euclid.relation_residual(G, n, vinf, u) == 0
    c = euclid.rep_constants(n)
    import dataclasses
    u = non[0]
    for field in ("alpha", "beta", "gamma"):
        bumped = dataclasses.replace(c, **{field: getattr(c, field) + F(1, 7)})
        assert euclid.relation_residual(G, n, vinf, u, constants=bumped) > 0


def test_relation_needs_n_at_least_2(l33):
    with pytest.raises(DomainError):
        euclid.relation_residual(l33, 1, 0, 8)
    with pytest.raises(ContractError):
        euclid.neighbor_sets(l33, 0, 1)


def test_intersection_adjacency(bh, l33):
    rng = random.Random(4)
    non = [u for u in range(81) if u and not bh.adjacent(0, u)]
    for _ in range(100):
        u, w = rng.sample(non, 2)
        r = euclid.intersection_adjacency_check(bh, 2, 0, u, w)
        assert r.passed and r.details["status"] == "checked"
    r = euclid.intersection_adjacency_check(l33, 1, 0, 4, 8)
    assert r.passed and r.details["status"] == "degenerate, skipped"


def test_profiles_constant(bh, games):
    rng = random.Random(5)
    for G, n, want in ((bh, 2, (1, 0, 36, 8)), (games, 4, (1, 0, 0, 0, 450, 72))):
        for _ in range(8):
            vinf = rng.randrange(G.v)
            u = rng.choice([x for x in range(G.v) if x != vinf and not G.adjacent(x, vinf)])
            prof = euclid.profile_measure(G, n, vinf, u)
            assert prof.m == want and prof.checks.passed
            sol = euclid.profile_solve(n, prof.m[: n - 1])
            assert sol.feasible and sol.top == tuple(prof.m[n - 1:])


def test_profile_l33(l33):
    prof = euclid.profile_measure(l33, 1, 0, 4)
    assert prof.m == (1, 0, 0)


def test_profile_solve_examples():
    assert euclid.profile_solve(2, [1]).top == (0, 36, 8)
    assert euclid.profile_solve(2, [0]).top == (3, 33, 9)
    assert euclid.profile_solve(4, [1, 0, 0]).top == (0, 450, 72)
    with pytest.raises(ContractError):
        euclid.profile_solve(2, [0, 0])


def test_profile_closed_form_agrees():
    rng = random.Random(6)
    for n in range(2, 9):
        for _ in range(30):
            low = [rng.randrange(3) for _ in range(n - 1)]
            sol = euclid.profile_solve(n, low)
            m_prev, m_top = euclid.profile_closed_form(n, low)
            assert sol.top[0] == m_prev and sol.top[2] == m_top


def test_lemma1():
    counts = []
    for n in range(2, 9):
        r = euclid.lemma1_check(n)
        assert r.passed
        counts.append(r.details["tuples"])
    assert counts == [2, 4, 7, 15, 32, 66, 141]
    with pytest.raises(DomainError):
        euclid.lemma1_check(1)


def test_quadform():
    assert euclid.quadform(2).det == F(-243, 125)
    assert euclid.quadform(1).det == F(-9, 4)
    for n in range(1, 101):
        q = euclid.quadform(n)
        assert q.det < 0 and q.det == euclid.quadform_closed_det(n)
        assert all(q.a[i][j] == q.a[j][i] for i in range(3) for j in range(3))
