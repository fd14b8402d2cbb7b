"""The two-valued Gram model of the Euclidean representation, and the
counting identities behind the construction of sigma_v.

The representation vectors are never materialized: unit vectors x_i with
<x_i, x_j> = p for adjacent and q for non-adjacent pairs are handled only
through exact rational Gram matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import ConsistencyError, ContractError, DomainError
from .exactlinalg import RatMatrix, rat_det, rat_rank
from .graphcore import Graph, SrgParams, iter_bits, neighborhood_matching
from .report import Report


@dataclass(frozen=True)
class RepConstants:
    n: int
    p: Fraction
    q: Fraction
    alpha: Fraction | None
    beta: Fraction | None
    gamma: Fraction | None


def rep_constants(n: int) -> RepConstants:
    """Inner products p, q and the relation coefficients (None when n = 1)."""
    if n < 1:
        raise DomainError("n must be at least 1")
    p = Fraction(-(n * n + 2 * n - 1), n * n * (n + 3))
    q = Fraction(1, n * (n + 3))
    if n == 1:
        return RepConstants(1, p, q, None, None, None)
    return RepConstants(n, p, q, Fraction(n, n * n - 1), Fraction(1, n * n - 1), Fraction(n, n - 1))


def _relation_constants(n: int) -> RepConstants:
    c = rep_constants(n)
    if c.alpha is None:
        raise DomainError("alpha, beta, gamma are undefined for n = 1")
    return c


def gram_of_subset(G: Graph, n: int, U) -> RatMatrix:
    return _gram(G, rep_constants(n), list(U))


def _family_params(G: Graph, n: int) -> SrgParams:
    from .family import family_params

    p = family_params(n)
    if G.v != p.v:
        raise ContractError(f"graph has {G.v} vertices, family member n={n} has {p.v}")
    return p


def two_design_check(G: Graph, n: int) -> Report:
    """Zero sum and second moment |V|^2/g of the Gram model, from edge counts."""
    from .graphcore import spectrum

    params = _family_params(G, n)
    c = rep_constants(n)
    v = G.v
    ordered_adj = sum(r.bit_count() for r in G.rows)
    ordered_non = v * (v - 1) - ordered_adj
    total = v + ordered_adj * c.p + ordered_non * c.q
    moment = v + ordered_adj * c.p ** 2 + ordered_non * c.q ** 2
    g = spectrum(params).g
    target = Fraction(v * v) / g
    details = {"n": n, "sum_of_gram": total, "second_moment": moment, "target": target, "g": g}
    return Report("two_design", total == 0 and moment == target, details)


def neighbor_sets(G: Graph, vinf: int, u: int) -> tuple[int, int]:
    """Bitsets (A(u), B(u)) relative to the base vertex vinf."""
    if u == vinf or G.adjacent(u, vinf):
        raise ContractError(f"{u} must be a non-neighbour of {vinf}")
    match = neighborhood_matching(G, vinf)
    A = G.rows[u] & G.rows[vinf]
    B = 0
    for a in iter_bits(A):
        B |= 1 << match.partner[a]
    return A, B


def relation_residual(G: Graph, n: int, vinf: int, u: int, constants: RepConstants | None = None) -> Fraction:
    """Squared norm of x_u + alpha*sum_A x_i + beta*sum_B x_i + gamma*x_vinf."""
    c = constants if constants is not None else _relation_constants(n)
    A, B = neighbor_sets(G, vinf, u)
    coef: dict[int, Fraction] = {u: Fraction(1)}
    for a in iter_bits(A):
        coef[a] = coef.get(a, 0) + c.alpha
    for b in iter_bits(B):
        coef[b] = coef.get(b, 0) + c.beta
    coef[vinf] = coef.get(vinf, 0) + c.gamma
    verts = list(coef)
    M = _gram(G, c, verts)
    vec = [coef[x] for x in verts]
    return sum(vec[i] * M[i][j] * vec[j] for i in range(len(verts)) for j in range(len(verts)))


def _gram(G: Graph, c: RepConstants, verts) -> RatMatrix:
    one = Fraction(1)
    return [[one if a == b else (c.p if G.adjacent(a, b) else c.q) for b in verts] for a in verts]


def intersection_adjacency_check(G: Graph, n: int, vinf: int, u: int, w: int) -> Report:
    """u ~ w iff n|A(u)∩A(w)| + |A(u)∩B(w)| = n+1, and u ≁ w iff it equals n(n+1)."""
    if u == w:
        raise ContractError("u and w must differ")
    Au, _ = neighbor_sets(G, vinf, u)
    Aw, Bw = neighbor_sets(G, vinf, w)
    k = (Au & Aw).bit_count()
    l = (Au & Bw).bit_count()
    value = n * k + l
    adjacent = G.adjacent(u, w)
    details = {"u": u, "w": w, "adjacent": adjacent, "AA": k, "AB": l, "value": value}
    if n + 1 == n * (n + 1):
        details["status"] = "degenerate, skipped"
        return Report("intersection_adjacency", True, details)
    ok = value == (n + 1 if adjacent else n * (n + 1))
    details["status"] = "checked"
    return Report("intersection_adjacency", ok, details)


@dataclass(frozen=True)
class IntersectionProfile:
    """m[i] = #{w non-adjacent to vinf and u, w != u : |A(u)∩A(w)| = i}."""

    m: tuple[int, ...]
    checks: Report


def profile_targets(n: int) -> tuple[int, int, int]:
    """Closed-form right-hand sides of the three counting equations."""
    return (n ** 4 + 4 * n ** 3 + 2 * n ** 2 - 5 * n - 1,
            n * (n * n - 1) * (n + 2) ** 2,
            n * (n * n - 1) * (n + 2) * (n * n + n - 1) // 2)


def profile_measure(G: Graph, n: int, vinf: int, u: int) -> IntersectionProfile:
    A, _ = neighbor_sets(G, vinf, u)
    rows = G.rows
    full = (1 << G.v) - 1
    X = full & ~rows[vinf] & ~rows[u] & ~(1 << vinf) & ~(1 << u)
    m = [0] * (n + 2)
    overflow = 0
    for w in iter_bits(X):
        i = (rows[w] & A).bit_count()
        if i < len(m):
            m[i] += 1
        else:
            overflow += 1
    # direct counts, independent of the histogram
    avec = list(iter_bits(A))
    edges = sum((rows[a] & X).bit_count() for a in avec)
    triples = sum((rows[a] & rows[b] & X).bit_count()
                  for i, a in enumerate(avec) for b in avec[i + 1:])
    moments = (sum(m), sum(i * x for i, x in enumerate(m)), sum(comb(i, 2) * x for i, x in enumerate(m)))
    targets = profile_targets(n) if n >= 1 else None
    direct = (X.bit_count(), edges, triples)
    ok = overflow == 0 and moments == direct and (targets is None or moments == targets)
    details = {"vinf": vinf, "u": u, "m": m, "moments": moments, "direct_counts": direct,
               "closed_form": targets, "overflow": overflow}
    return IntersectionProfile(tuple(m), Report("profile_identities", ok, details))


@dataclass(frozen=True)
class ProfileSolution:
    top: tuple[Fraction, Fraction, Fraction]   # (m_{n-1}, m_n, m_{n+1})
    feasible: bool


def profile_solve(n: int, low) -> ProfileSolution:
    """Solve the three counting equations for m_{n-1}, m_n, m_{n+1} given m_0..m_{n-2}."""
    low = [int(x) for x in low]
    if len(low) != max(n - 1, 0):
        raise ContractError(f"expected {max(n - 1, 0)} low-order counts, got {len(low)}")
    if any(x < 0 for x in low):
        raise ContractError("counts must be nonnegative")
    T0, T1, T2 = profile_targets(n)
    r0 = T0 - sum(low)
    r1 = T1 - sum(i * x for i, x in enumerate(low))
    r2 = T2 - sum(comb(i, 2) * x for i, x in enumerate(low))
    idx = (n - 1, n, n + 1)
    M = [[Fraction(1)] * 3, [Fraction(i) for i in idx], [Fraction(comb(i, 2)) for i in idx]]
    rhs = [Fraction(r0), Fraction(r1), Fraction(r2)]
    D = rat_det(M)
    sol = []
    for col in range(3):
        Mc = [row[:col] + [rhs[r]] + row[col + 1:] for r, row in enumerate(M)]
        sol.append(rat_det(Mc) / D)
    feasible = all(x.denominator == 1 and x >= 0 for x in sol)
    return ProfileSolution(tuple(sol), feasible)


def profile_closed_form(n: int, low) -> tuple[int, int]:
    """(m_{n-1}, m_{n+1}) from the explicit elimination formulas."""
    low = [int(x) for x in low]
    m_prev = comb(n + 1, 2) - sum(comb(n - i + 1, 2) * x for i, x in enumerate(low))
    m_top = n * n * (n + 3) - 2 * n * (n + 1) + comb(n, 2) - sum(comb(n - i, 2) * x for i, x in enumerate(low))
    return m_prev, m_top


def lemma1_check(n: int) -> Report:
    """Exhaustive check over all m_0..m_{n-2} >= 0 with sum C(n-i+1,2) m_i <= C(n+1,2)."""
    if n < 2:
        raise DomainError("the inequality check needs n >= 2")
    budget = comb(n + 1, 2)
    hyp = [comb(n - i + 1, 2) for i in range(n - 1)]
    concl = [comb(n - i, 2) for i in range(n - 1)]
    bound = comb(n, 2)
    count = 0
    bad = []
    equality = []

    def rec(i, used, value, tup):
        nonlocal count
        if i == n - 1:
            count += 1
            if value > bound:
                bad.append(tuple(tup))
            elif value == bound:
                equality.append(tuple(tup))
            return
        x = 0
        while used + x * hyp[i] <= budget:
            tup.append(x)
            rec(i + 1, used + x * hyp[i], value + x * concl[i], tup)
            tup.pop()
            x += 1

    rec(0, 0, 0, [])
    expected_eq = [tuple([1] + [0] * (n - 2))]
    ok = not bad and equality == expected_eq
    return Report("lemma1", ok, {"n": n, "tuples": count, "violations": bad[:20],
                                 "equality_cases": equality[:20]})


@dataclass(frozen=True)
class QuadForm:
    n: int
    a: RatMatrix
    det: Fraction


def quadform_closed_det(n: int) -> Fraction:
    return Fraction(-8 * (n + 1) * (n ** 4 + 6 * n ** 3 + 7 * n ** 2 - 6 * n + 1), n ** 3 * (n + 3) ** 3)


def quadform(n: int) -> QuadForm:
    """The 3x3 form matrix with a33 = q; determinant by elimination and closed form."""
    c = rep_constants(n)
    p, q = c.p, c.q
    s = 2 * n * (n + 1)
    a11 = 2 + 2 * q
    a12 = s * (p + q)
    a13 = 2 * q
    a22 = s * (1 + p + 2 * (n * n + n - 1) * q)
    a23 = s * q
    a33 = q
    a = [[a11, a12, a13], [a12, a22, a23], [a13, a23, a33]]
    det = rat_det(a)
    closed = quadform_closed_det(n)
    if det != closed:
        raise ConsistencyError(f"n={n}: elimination gives {det}, closed form {closed}")
    return QuadForm(n, a, det)


def gram_rank_of_neighborhood(G: Graph, n: int, vinf: int) -> int:
    return rat_rank(gram_of_subset(G, n, G.neighbors(vinf)))
