"""F_3 vector-space structure on the vertex set, transported from the involutions.

With a base vertex v0 as zero, addition is ``u + v = sigma_{v0}(sigma_u(v))``
and negation is ``sigma_{v0}``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ContractError, ParseError, StructureError
from .graphcore import Graph
from .involution import is_automorphism
from .report import MAX_WITNESSES, Report


def vertex_add(S, v0: int, u: int, v: int) -> int:
    return int(S[v0, S[u, v]])


def addition_table(S, v0: int) -> np.ndarray:
    """T[u, v] = u + v for the structure based at v0."""
    S = np.asarray(S)
    return S[v0][S.astype(np.int64)]


def group_axioms_check(G: Graph, S, v0: int, mode: str = "exhaustive",
                       samples: int = 10**5, seed: int = 0) -> Report:
    V = G.v
    T = addition_table(S, v0).astype(np.int64)
    ident = np.arange(V)
    neg = np.asarray(S)[v0].astype(np.int64)
    checks = {}
    checks["commutative"] = int(np.count_nonzero(T != T.T))
    checks["identity"] = int(np.count_nonzero(T[:, v0] != ident))
    checks["inverse"] = int(np.count_nonzero(T[ident, neg] != v0))
    checks["double_is_negation"] = int(np.count_nonzero(T[ident, ident] != neg))
    checks["exponent_3"] = int(np.count_nonzero(T[T[ident, ident], ident] != v0))
    witnesses = []
    bad = 0
    if mode == "exhaustive":
        for u in range(V):
            lhs = T[T[u]]          # (u + v) + w, indexed [v, w]
            rhs = T[u][T]          # u + (v + w)
            rows, cols = np.nonzero(lhs != rhs)
            bad += len(rows)
            witnesses += [[u, int(a), int(b)] for a, b in zip(rows[:MAX_WITNESSES], cols[:MAX_WITNESSES])]
        tested = V ** 3
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        u, v, w = (rng.integers(0, V, samples) for _ in range(3))
        mask = T[T[u, v], w] != T[u, T[v, w]]
        bad = int(np.count_nonzero(mask))
        witnesses = [[int(u[i]), int(v[i]), int(w[i])] for i in np.flatnonzero(mask)[:MAX_WITNESSES]]
        tested = samples
    else:
        raise ContractError(f"unknown mode {mode!r}")
    checks["associative"] = bad
    details = {"mode": mode, "seed": seed, "v0": v0, "triples_tested": tested,
               "violations": checks}
    if witnesses:
        details["associativity_witnesses"] = witnesses[:MAX_WITNESSES]
    return Report("group_axioms", all(c == 0 for c in checks.values()), details)


@dataclass(frozen=True)
class Coordinatization:
    """Vertex -> F_3^m labels; ``coords[x]`` is a row of trits."""

    v0: int
    m: int
    coords: np.ndarray

    @property
    def inverse(self) -> np.ndarray:
        """inverse[code] = vertex, with codes base-3, first coordinate most significant."""
        inv = np.empty(len(self.coords), dtype=np.int64)
        inv[self.codes] = np.arange(len(self.coords))
        return inv

    @property
    def codes(self) -> np.ndarray:
        return self.coords.astype(np.int64) @ (3 ** np.arange(self.m - 1, -1, -1))

    def to_json(self) -> str:
        return json.dumps({"m": self.m, "v0": self.v0, "coords": self.coords.tolist()},
                          separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Coordinatization":
        try:
            obj = json.loads(text)
            m, v0 = int(obj["m"]), int(obj["v0"])
            coords = np.array(obj["coords"], dtype=np.int8).reshape(-1, m)
        except (KeyError, ValueError, TypeError, json.JSONDecodeError) as exc:
            raise ParseError(f"bad coordinatization file: {exc}") from None
        if len(coords) != 3 ** m or not np.isin(coords, (0, 1, 2)).all():
            raise ParseError("coordinates must be 3^m rows of trits")
        if coords[v0].any() or len(np.unique(coords.astype(np.int64) @ 3 ** np.arange(m))) != len(coords):
            raise ParseError("coordinates must be a bijection with v0 at zero")
        return cls(v0, m, coords)

    def write(self, path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="ascii")

    @classmethod
    def read(cls, path) -> "Coordinatization":
        return cls.from_json(Path(path).read_text(encoding="ascii"))


def identity_coordinatization(d: int) -> Coordinatization:
    """Vertex index = base-3 code of its coordinates (the Cayley-graph numbering)."""
    codes = np.arange(3 ** d)
    coords = np.stack([(codes // 3 ** (d - 1 - i)) % 3 for i in range(d)], axis=1).astype(np.int8)
    return Coordinatization(0, d, coords)


def coordinatize(G: Graph, S, v0: int) -> Coordinatization:
    """Greedy basis: repeatedly adjoin the smallest vertex outside the current span."""
    V = G.v
    T = addition_table(S, v0)
    neg = np.asarray(S)[v0]
    span = np.array([v0])
    coords = np.zeros((1, 0), dtype=np.int8)
    covered = np.zeros(V, dtype=bool)
    covered[v0] = True
    while len(span) < V:
        e = int(np.argmin(covered))
        plus = T[span, e]
        minus = T[span, neg[e]]
        new = np.concatenate([span, plus, minus])
        if len(np.unique(new)) != 3 * len(span):
            raise StructureError(f"adjoining vertex {e} does not triple the span (size {len(span)})")
        coords = np.concatenate([
            np.hstack([coords, np.zeros((len(span), 1), dtype=np.int8)]),
            np.hstack([coords, np.ones((len(span), 1), dtype=np.int8)]),
            np.hstack([coords, np.full((len(span), 1), 2, dtype=np.int8)]),
        ])
        span = new
        covered[new] = True
    m = coords.shape[1]
    if 3 ** m != V:
        raise StructureError(f"span has {len(span)} elements, not 3^{m}")  # pragma: no cover
    out = np.empty_like(coords)
    out[span] = coords
    return Coordinatization(v0, m, out)


def check_sigma_linear(G: Graph, S, C: Coordinatization, mode: str = "exhaustive",
                       samples: int = 10**5, seed: int = 0) -> Report:
    """sigma_v(u) = -(u + v) in coordinates, and every translation is an automorphism."""
    V = G.v
    S = np.asarray(S)
    X = C.coords.astype(np.int64)
    if mode == "exhaustive":
        v, u = np.divmod(np.arange(V * V), V)
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        v, u = rng.integers(0, V, samples), rng.integers(0, V, samples)
    else:
        raise ContractError(f"unknown mode {mode!r}")
    lhs = X[S[v, u]]
    rhs = (-(X[u] + X[v])) % 3
    mask = (lhs != rhs).any(axis=1)
    bad = int(np.count_nonzero(mask))
    wit = [[int(v[i]), int(u[i])] for i in np.flatnonzero(mask)[:MAX_WITNESSES]]

    inv = C.inverse
    weights = 3 ** np.arange(C.m - 1, -1, -1)
    bad_shifts = []
    for t in range(V):
        perm = inv[((X + X[t]) % 3) @ weights]
        if not is_automorphism(G, perm):
            bad_shifts.append(t)
    details = {"mode": mode, "seed": seed, "pairs_tested": int(len(u)), "violations": bad,
               "shifts_tested": V, "non_automorphic_shifts": len(bad_shifts)}
    if wit:
        details["witnesses"] = wit
    if bad_shifts:
        details["shift_witnesses"] = bad_shifts[:MAX_WITNESSES]
    return Report("sigma_linear", bad == 0 and not bad_shifts, details)


def translation_invariant(G: Graph, C: Coordinatization) -> bool:
    """x ~ y iff 0 ~ (x - y) in coordinates."""
    X = C.coords.astype(np.int64)
    inv = C.inverse
    weights = 3 ** np.arange(C.m - 1, -1, -1)
    A = G.matrix
    diff = inv[((X[:, None, :] - X[None, :, :]) % 3) @ weights]
    return bool(np.array_equal(A, A[C.v0][diff]))
