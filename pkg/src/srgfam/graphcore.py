"""Dense graphs with bitset rows, strong-regularity checks and graph files."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .errors import ContractError, FeasibilityError, ParseError, StructureError
from .report import MAX_WITNESSES, Report


def iter_bits(x: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Graph:
    """Undirected simple graph on vertices ``0..v-1``.

    Row ``i`` of the adjacency is stored as a Python int whose bit ``j`` is
    set iff ``i ~ j``; common-neighbour counts are popcounts of ANDs.
    Instances are treated as immutable.
    """

    __slots__ = ("v", "rows", "__dict__")

    def __init__(self, v: int, rows: Iterable[int]):
        rows = tuple(rows)
        if len(rows) != v:
            raise ContractError(f"expected {v} rows, got {len(rows)}")
        full = (1 << v) - 1
        for i, r in enumerate(rows):
            if r & ~full or (r >> i) & 1:
                raise ContractError(f"row {i} out of range or has a loop")
        for i, r in enumerate(rows):
            for j in iter_bits(r):
                if not (rows[j] >> i) & 1:
                    raise ContractError(f"adjacency not symmetric at ({i}, {j})")
        self.v = v
        self.rows = rows

    @classmethod
    def from_edges(cls, v: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * v
        for a, b in edges:
            if a == b:
                raise ContractError(f"self-loop at {a}")
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return cls(v, rows)

    @classmethod
    def from_matrix(cls, A) -> "Graph":
        A = np.asarray(A, dtype=bool)
        v = A.shape[0]
        if A.shape != (v, v):
            raise ContractError("adjacency matrix must be square")
        rows = [sum(1 << int(j) for j in np.flatnonzero(row)) for row in A]
        return cls(v, rows)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Boolean adjacency matrix (read-only)."""
        A = np.zeros((self.v, self.v), dtype=bool)
        for i, r in enumerate(self.rows):
            A[i, list(iter_bits(r))] = True
        A.setflags(write=False)
        return A

    def adjacent(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def neighbors(self, i: int) -> list[int]:
        return list(iter_bits(self.rows[i]))

    def degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    def common(self, i: int, j: int) -> int:
        return (self.rows[i] & self.rows[j]).bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows) for j in iter_bits(r >> (i + 1) << (i + 1))]

    def relabel(self, perm) -> "Graph":
        """Graph with vertex ``i`` renamed ``perm[i]``."""
        perm = [int(x) for x in perm]
        return Graph.from_edges(self.v, ((perm[a], perm[b]) for a, b in self.edges()))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.v == other.v and self.rows == other.rows

    def __hash__(self):
        return hash((self.v, self.rows))

    def __repr__(self):
        return f"Graph(v={self.v}, edges={sum(r.bit_count() for r in self.rows) // 2})"


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int
    n: int | None = None

    def __post_init__(self):
        if min(self.v, self.k, self.lam, self.mu) < 0:
            raise ContractError("parameters must be nonnegative")
        if not self.v > self.k >= self.mu:
            raise ContractError(f"need v > k >= mu, got {self.astuple()}")
        if self.n is not None:
            n = self.n
            want = ((n * n + 3 * n - 1) ** 2, n * n * (n + 3), 1, n * (n + 1))
            if self.astuple() != want:
                raise ContractError(f"{self.astuple()} is not family member n={n}")

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)

    def family_index(self) -> int | None:
        """n if these parameters belong to the family, else None."""
        if self.n is not None:
            return self.n
        if self.lam != 1:
            return None
        # mu = n(n+1)
        n = (math.isqrt(4 * self.mu + 1) - 1) // 2
        if n >= 1 and n * (n + 1) == self.mu and self.k == n * n * (n + 3) and self.v == (n * n + 3 * n - 1) ** 2:
            return n
        return None


@dataclass(frozen=True)
class Spectrum:
    r: Fraction
    s: Fraction
    f: Fraction
    g: Fraction


def _eigendata(p: SrgParams):
    """(sqrt of discriminant or None, r, s, f, g) with exact rationals."""
    v, k, lam, mu = p.astuple()
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    root = math.isqrt(disc)
    if root * root != disc or root == 0:
        return None
    r = Fraction(lam - mu + root, 2)
    s = Fraction(lam - mu - root, 2)
    t = Fraction(2 * k + (v - 1) * (lam - mu), root)
    f = (v - 1 - t) / 2
    g = (v - 1 + t) / 2
    return root, r, s, f, g


def params_feasible(p: SrgParams) -> Report:
    v, k, lam, mu = p.astuple()
    lhs, rhs = (v - k - 1) * mu, k * (k - lam - 1)
    details = {"params": list(p.astuple()), "counting_identity": [lhs, rhs]}
    failures = []
    if lhs != rhs:
        failures.append(f"(v-k-1)mu = {lhs} != {rhs} = k(k-lambda-1)")
    eig = _eigendata(p)
    if eig is None:
        failures.append("discriminant (lambda-mu)^2+4(k-mu) is not a positive square")
    else:
        _, r, s, f, g = eig
        details.update(r=r, s=s, f=f, g=g)
        for name, x in (("r", r), ("s", s), ("f", f), ("g", g)):
            if x.denominator != 1:
                failures.append(f"{name} = {x} is not an integer")
        if f < 0 or g < 0:
            failures.append("negative multiplicity")
    details["failures"] = failures
    return Report("params_feasible", not failures, details)


def spectrum(p: SrgParams) -> Spectrum:
    rep = params_feasible(p)
    if not rep.passed:
        raise FeasibilityError("; ".join(rep.details["failures"]))
    _, r, s, f, g = _eigendata(p)
    return Spectrum(r, s, f, g)


def matrix_identity_holds(G: Graph, p: SrgParams) -> tuple[bool, list]:
    """Check A^2 + (mu-lambda)A + (mu-k)I = mu J entrywise in integers."""
    v, k, lam, mu = p.astuple()
    # entries of A^2 are at most v; fall back to Python ints if that could overflow
    dtype = np.int64 if v * max(1, k, mu) < 2**62 else object
    A = G.matrix.astype(dtype)
    lhs = A @ A + (mu - lam) * A + (mu - k) * np.eye(v, dtype=dtype)
    bad = np.argwhere(lhs != mu)
    return bad.size == 0, [[int(i), int(j), int(lhs[i, j])] for i, j in bad[:MAX_WITNESSES]]


def verify_srg(G: Graph, p: SrgParams) -> Report:
    if G.v != p.v:
        raise ContractError(f"graph has {G.v} vertices, parameters say {p.v}")
    v, k, lam, mu = p.astuple()
    rows = G.rows
    bad_degree = [[i, r.bit_count()] for i, r in enumerate(rows) if r.bit_count() != k]
    bad_lam, bad_mu = [], []
    n_lam = n_mu = 0
    for i in range(v):
        ri = rows[i]
        for j in range(i + 1, v):
            c = (ri & rows[j]).bit_count()
            if (ri >> j) & 1:
                if c != lam:
                    n_lam += 1
                    if len(bad_lam) < MAX_WITNESSES:
                        bad_lam.append([i, j, c])
            elif c != mu:
                n_mu += 1
                if len(bad_mu) < MAX_WITNESSES:
                    bad_mu.append([i, j, c])
    ident_ok, ident_bad = matrix_identity_holds(G, p)
    details = {
        "params": list(p.astuple()),
        "edges": sum(r.bit_count() for r in rows) // 2,
        "regular": not bad_degree,
        "lambda_violations": n_lam,
        "mu_violations": n_mu,
        "matrix_identity": ident_ok,
    }
    if bad_degree:
        details["degree_witnesses"] = bad_degree[:MAX_WITNESSES]
    if bad_lam:
        details["lambda_witnesses"] = bad_lam
    if bad_mu:
        details["mu_witnesses"] = bad_mu
    if not ident_ok:
        details["identity_witnesses"] = ident_bad
    ok = not bad_degree and n_lam == 0 and n_mu == 0 and ident_ok
    return Report("verify_srg", ok, details)


@dataclass(frozen=True)
class Matching:
    base: int
    pairs: tuple[tuple[int, int], ...]
    partner: dict

    def phi(self, i: int) -> int:
        return self.partner[i]


def neighborhood_matching(G: Graph, v: int) -> Matching:
    """The perfect matching induced on N(v) in a lambda=1 graph."""
    nv = G.rows[v]
    partner = {}
    for i in iter_bits(nv):
        inside = G.rows[i] & nv
        if inside.bit_count() != 1:
            raise StructureError(
                f"vertex {i} has {inside.bit_count()} neighbours inside N({v}); graph is not lambda=1")
        partner[i] = inside.bit_length() - 1
    pairs = tuple(sorted((i, j) for i, j in partner.items() if i < j))
    return Matching(v, pairs, partner)


# ---------------------------------------------------------------- files

def format_graph(G: Graph, p: SrgParams) -> str:
    lines = [f"srg v={p.v} k={p.k} lambda={p.lam} mu={p.mu}"]
    lines += [f"{a} {b}" for a, b in G.edges()]
    return "\n".join(lines) + "\n"


def write_graph(G: Graph, p: SrgParams, path) -> None:
    if G.v != p.v:
        raise ContractError("vertex count does not match parameters")
    Path(path).write_text(format_graph(G, p), encoding="ascii", newline="\n")


def parse_graph(text: str) -> tuple[Graph, SrgParams]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty file", 1)
    head = lines[0].split()
    keys = ("v", "k", "lambda", "mu")
    if len(head) != 5 or head[0] != "srg":
        raise ParseError(f"bad header {lines[0]!r}", 1)
    vals = {}
    for tok, key in zip(head[1:], keys):
        name, _, num = tok.partition("=")
        if name != key or not num.isdigit():
            raise ParseError(f"bad header field {tok!r}", 1)
        vals[key] = int(num)
    try:
        p = SrgParams(vals["v"], vals["k"], vals["lambda"], vals["mu"])
    except ContractError as exc:
        raise ParseError(str(exc), 1) from None
    v = p.v
    rows = [0] * v
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(" ")
        if len(parts) != 2 or not all(x.isdigit() for x in parts):
            raise ParseError(f"malformed edge line {line!r}", lineno)
        a, b = int(parts[0]), int(parts[1])
        if a >= v or b >= v:
            raise ParseError(f"vertex index out of range 0..{v - 1}", lineno)
        if a == b:
            raise ParseError(f"self-loop at {a}", lineno)
        if (rows[a] >> b) & 1:
            raise ParseError(f"duplicate edge {a} {b}", lineno)
        rows[a] |= 1 << b
        rows[b] |= 1 << a
    n_edges = len(lines) - 1
    if 2 * n_edges != p.k * v:
        raise ParseError(f"{n_edges} edge lines, expected k*v/2 = {p.k * v / 2:g}")
    return Graph(v, rows), p


def read_graph(path) -> tuple[Graph, SrgParams]:
    return parse_graph(Path(path).read_text(encoding="ascii"))
