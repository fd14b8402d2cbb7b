"""The involutions sigma_v built from raw adjacency, and the identities they satisfy.

``sigma(G, v)`` fixes v, swaps the matched pairs of N(v), and sends each
non-neighbour u to the unique non-neighbour w whose neighbourhood trace
A(w) = N(w) ∩ N(v) equals B(u), the partner image of A(u).

All involutions of a graph are stacked into an integer array ``S`` with
``S[v, x] = sigma_v(x)``; the verification routines work on that array.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, StructureError
from .graphcore import Graph, neighborhood_matching
from .report import MAX_WITNESSES, Report

CHUNK = 4096


def _check_perm(perm, v: int) -> np.ndarray:
    perm = np.asarray(perm)
    if perm.shape != (v,) or not np.array_equal(np.sort(perm), np.arange(v)):
        raise ContractError("not a permutation of the vertex set")
    return perm


def is_automorphism(G: Graph, perm) -> bool:
    perm = _check_perm(perm, G.v)
    A = G.matrix
    return bool(np.array_equal(A[np.ix_(perm, perm)], A))


@dataclass(frozen=True)
class Involution:
    base: int
    perm: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.perm[x]

    def serialize(self) -> str:
        return " ".join(map(str, self.perm))


def sigma_array(G: Graph, v: int) -> np.ndarray:
    """sigma_v as an int array, validated as an involutive automorphism fixing v."""
    match = neighborhood_matching(G, v)
    A = G.matrix
    nv = np.flatnonzero(A[v])
    non = np.flatnonzero(~A[v])
    non = non[non != v]
    pos = {int(x): i for i, x in enumerate(nv)}
    phi_local = np.array([pos[match.partner[int(x)]] for x in nv], dtype=np.int64)

    perm = np.arange(G.v)
    perm[nv] = nv[phi_local]

    traces = A[np.ix_(non, nv)]
    # B(u) = phi(A(u)); phi is an involution so column permutation by phi_local maps A to B
    images = traces[:, phi_local]
    keys = [row.tobytes() for row in np.packbits(traces, axis=1)]
    lookup = {}
    for u, key in zip(non, keys):
        if key in lookup:
            raise StructureError(
                f"A({lookup[key]}) = A({u}) relative to {v}; input is not a family SRG")
        lookup[key] = int(u)
    for u, row in zip(non, np.packbits(images, axis=1)):
        w = lookup.get(row.tobytes())
        if w is None:
            raise StructureError(f"no vertex w with A(w) = B({u}) relative to {v}; input is not a family SRG")
        perm[u] = w
    if not np.array_equal(perm[perm], np.arange(G.v)):
        raise StructureError(f"sigma_{v} is not an involution")
    if not is_automorphism(G, perm):
        raise StructureError(f"sigma_{v} is not an automorphism")
    return perm


def sigma(G: Graph, v: int) -> Involution:
    return Involution(v, tuple(int(x) for x in sigma_array(G, v)))


def all_sigmas(G: Graph) -> np.ndarray:
    """Array S with S[v] = sigma_v for every vertex v."""
    dtype = np.int16 if G.v < 2**15 else np.int64
    return np.stack([sigma_array(G, v) for v in range(G.v)]).astype(dtype)


# ---------------------------------------------------------------- verification

def _pairs(V: int, mode: str, samples: int, rng, distinct=True):
    if mode == "exhaustive":
        u, w = np.divmod(np.arange(V * V), V)
    elif mode == "sampled":
        u = rng.integers(0, V, samples)
        w = rng.integers(0, V, samples)
    else:
        raise ContractError(f"unknown mode {mode!r}")
    if distinct:
        keep = u != w
        u, w = u[keep], w[keep]
    return u, w


def _chunks(*arrays):
    n = len(arrays[0])
    for s in range(0, n, CHUNK):
        yield tuple(a[s:s + CHUNK] for a in arrays)


def _compose(S, outer, inner):
    """Rows H[b] = sigma_outer[b] ∘ sigma_inner[b]."""
    return np.take_along_axis(S[outer], S[inner].astype(np.int64), axis=1)


def verify_lemma2(G: Graph, S: np.ndarray, mode: str = "exhaustive",
                  samples: int = 10**5, seed: int = 0) -> Report:
    """Symmetry, conjugation covariance, order-3 products and adjacency shifts.

    (i)   sigma_u(v) = sigma_v(u)                       all pairs, always
    (ii)  g sigma_u g^-1 = sigma_{g(u)}                 g = sigma_a sigma_b, all a, b, u
    (iii) sigma_u sigma_v sigma_u = sigma_{sigma_u(v)}
    (iv)  sigma_u sigma_v fixed-point-free, cube = e    u != v
    (v)   x ~ sigma_u sigma_v(x) for adjacent u, v      all x
    """
    V = G.v
    S = np.asarray(S)
    rng = np.random.default_rng(seed)
    ident = np.arange(V)
    A = G.matrix
    out = {}

    bad = np.argwhere(S != S.T)
    out["i"] = [[int(a), int(b)] for a, b in bad[:MAX_WITNESSES]], len(bad)

    # (ii) with g = sigma_a sigma_b, g^-1 = sigma_b sigma_a
    witnesses, nbad, tested = [], 0, 0
    if mode == "exhaustive":
        a, rest = np.divmod(np.arange(V ** 3), V * V)
        b, u = np.divmod(rest, V)
    elif mode == "sampled":
        a, b, u = (rng.integers(0, V, samples) for _ in range(3))
    else:
        raise ContractError(f"unknown mode {mode!r}")
    for ca, cb, cu in _chunks(a, b, u):
        g = _compose(S, ca, cb)
        ginv = _compose(S, cb, ca)
        lhs = np.take_along_axis(g, np.take_along_axis(S[cu].astype(np.int64), ginv.astype(np.int64), 1), 1)
        gu = g[np.arange(len(cu)), cu]
        rhs = S[gu]
        rows = np.flatnonzero((lhs != rhs).any(axis=1))
        nbad += len(rows)
        tested += len(cu)
        witnesses += [[int(ca[r]), int(cb[r]), int(cu[r])] for r in rows[:MAX_WITNESSES - len(witnesses)]]
    out["ii"] = witnesses, nbad

    u, w = _pairs(V, mode, samples, rng, distinct=False)
    w3, n3 = [], 0
    w4, n4 = [], 0
    w5, n5 = [], 0
    for cu, cw in _chunks(u, w):
        # (iii)
        lhs = np.take_along_axis(_compose(S, cu, cw), S[cu].astype(np.int64), 1)
        rhs = S[S[cu, cw]]
        rows = np.flatnonzero((lhs != rhs).any(axis=1))
        n3 += len(rows)
        w3 += [[int(cu[r]), int(cw[r])] for r in rows[:MAX_WITNESSES - len(w3)]]
        # (iv)
        dist = cu != cw
        du, dw = cu[dist], cw[dist]
        h = _compose(S, du, dw).astype(np.int64)
        fixed = (h == ident).any(axis=1)
        h3 = np.take_along_axis(h, np.take_along_axis(h, h, 1), 1)
        cube = (h3 != ident).any(axis=1)
        rows = np.flatnonzero(fixed | cube)
        n4 += len(rows)
        w4 += [[int(du[r]), int(dw[r])] for r in rows[:MAX_WITNESSES - len(w4)]]
        # (v)
        adj = A[cu, cw]
        au, aw = cu[adj], cw[adj]
        h = _compose(S, au, aw).astype(np.int64)
        ok = A[ident[None, :], h]
        rows = np.flatnonzero(~ok.all(axis=1))
        n5 += len(rows)
        w5 += [[int(au[r]), int(aw[r])] for r in rows[:MAX_WITNESSES - len(w5)]]
    out["iii"] = w3, n3
    out["iv"] = w4, n4
    out["v"] = w5, n5

    details = {"mode": mode, "seed": seed, "pairs_tested": int(len(u)), "conjugations_tested": tested}
    for item, (wit, count) in out.items():
        details[f"violations_{item}"] = int(count)
        if count:
            details[f"witnesses_{item}"] = wit
    return Report("lemma2", all(c == 0 for _, c in out.values()), details)


def verify_lemma3(G: Graph, S: np.ndarray, mode: str = "exhaustive",
                  samples: int = 10**5, seed: int = 0) -> Report:
    """(sigma_v sigma_w sigma_u)^2 = e on all triples or a seeded sample."""
    V = G.v
    S = np.asarray(S).astype(np.int64)
    ident = np.arange(V)
    witnesses, nbad, tested = [], 0, 0
    if mode == "exhaustive":
        for v in range(V):
            for w in range(V):
                T = S[v][S[w]]
                R = T[S]  # R[u, x] = sigma_v sigma_w sigma_u (x)
                bad = np.flatnonzero((np.take_along_axis(R, R, 1) != ident).any(axis=1))
                nbad += len(bad)
                witnesses += [[v, w, int(u)] for u in bad[:MAX_WITNESSES - len(witnesses)]]
        tested = V ** 3
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        vv, ww, uu = (rng.integers(0, V, samples) for _ in range(3))
        for cv, cw, cu in _chunks(vv, ww, uu):
            R = np.take_along_axis(S[cv], np.take_along_axis(S[cw], S[cu], 1), 1)
            bad = np.flatnonzero((np.take_along_axis(R, R, 1) != ident).any(axis=1))
            nbad += len(bad)
            witnesses += [[int(cv[r]), int(cw[r]), int(cu[r])] for r in bad[:MAX_WITNESSES - len(witnesses)]]
        tested = samples
    else:
        raise ContractError(f"unknown mode {mode!r}")
    details = {"mode": mode, "seed": seed, "triples_tested": int(tested), "violations": int(nbad)}
    if nbad:
        details["witnesses"] = witnesses
    return Report("lemma3", nbad == 0, details)


def triangle_check(G: Graph, S: np.ndarray) -> Report:
    """sigma_u(v) = w for every triangle {u, v, w}."""
    bad, count = [], 0
    for u, v in G.edges():
        w = (G.rows[u] & G.rows[v]).bit_length() - 1
        for a, b, c in ((u, v, w), (v, w, u), (w, u, v)):
            if S[a, b] != c:
                count += 1
                if len(bad) < MAX_WITNESSES:
                    bad.append([a, b, c])
    return Report("triangles", count == 0, {"violations": count, "witnesses": bad})
