"""The parameter family and its three known members.

Vertex numbering is frozen:

* ``L(3,3)``: vertex ``(i, j)`` in F_3^2 has index ``3*i + j``.
* Brouwer-Haemers: vertex = element of GF(81) with coefficients
  ``c0 + c1 x + c2 x^2 + c3 x^3`` (mod ``x^4 + x + 2``), index ``sum(c_i 3^i)``.
* Games graph: vertex = vector of F_3^6, index = base-3 number with the
  first coordinate most significant (see :mod:`srgfam.caps`).
"""
from __future__ import annotations

import itertools

from .errors import ContractError, StructureError
from .graphcore import Graph, SrgParams

GF81_MODULUS = (2, 1, 0, 0, 1)  # x^4 + x + 2, coefficients low to high


def family_params(n: int) -> SrgParams:
    if n < 1:
        raise ContractError("family index must be a positive integer")
    return SrgParams((n * n + 3 * n - 1) ** 2, n * n * (n + 3), 1, n * (n + 1), n=n)


def _poly_mod(a: list[int], m: tuple[int, ...]) -> list[int]:
    """Remainder of a by monic m over F_3 (coefficient lists low to high)."""
    a = [x % 3 for x in a]
    dm = len(m) - 1
    for top in range(len(a) - 1, dm - 1, -1):
        c = a[top]
        if c:
            for t in range(dm + 1):
                a[top - dm + t] = (a[top - dm + t] - c * m[t]) % 3
    return a[:dm] + [0] * max(0, dm - len(a))


def is_irreducible_f3(m: tuple[int, ...]) -> bool:
    """Exhaustive test: no monic factor of degree 1..deg/2 divides m."""
    deg = len(m) - 1
    if m[-1] != 1:
        raise ContractError("modulus must be monic")
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(3), repeat=d):
            if not any(_poly_mod(list(m), low + (1,))):
                return False
    return True


if not is_irreducible_f3(GF81_MODULUS):  # pragma: no cover - guards the frozen choice
    raise ImportError("GF(81) modulus x^4 + x + 2 is reducible")


class GF81Element:
    """Element of GF(3)[x]/(x^4 + x + 2)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(int(c) % 3 for c in coeffs)
        if len(coeffs) != 4:
            raise ContractError("GF(81) elements have 4 coefficients")
        self.coeffs = coeffs

    @classmethod
    def from_int(cls, x: int) -> "GF81Element":
        if not 0 <= x < 81:
            raise ContractError(f"{x} is not a GF(81) index")
        return cls((x % 3, x // 3 % 3, x // 9 % 3, x // 27))

    def __int__(self):
        c = self.coeffs
        return c[0] + 3 * c[1] + 9 * c[2] + 27 * c[3]

    def __add__(self, other):
        return GF81Element(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return GF81Element(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return GF81Element(-a for a in self.coeffs)

    def __mul__(self, other):
        prod = [0] * 7
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return GF81Element(_poly_mod(prod, GF81_MODULUS))

    def __pow__(self, e: int):
        result = GF81Element((1, 0, 0, 0))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, GF81Element) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"GF81Element({self.coeffs})"


def gf81_elements() -> list[GF81Element]:
    return [GF81Element.from_int(x) for x in range(81)]


def fourth_powers() -> set[int]:
    """Indices of the nonzero fourth powers in GF(81)."""
    return {int(x ** 4) for x in gf81_elements() if x}


def build_l33() -> Graph:
    """Rook's graph on the 3x3 grid."""
    edges = []
    for a, b in itertools.combinations(range(9), 2):
        if a // 3 == b // 3 or a % 3 == b % 3:
            edges.append((a, b))
    return Graph.from_edges(9, edges)


def build_brouwer_haemers() -> Graph:
    """Cayley graph of (GF(81), +) whose connection set is the nonzero fourth powers."""
    conn = fourth_powers()
    els = gf81_elements()
    if any(int(-els[c]) not in conn for c in conn):
        raise StructureError("connection set not closed under negation")
    rows = [0] * 81
    for x in els:
        for c in conn:
            rows[int(x)] |= 1 << int(x + els[c])
    return Graph(81, rows)


def build_games(cap) -> Graph:
    """Cayley graph on F_3^6 with x ~ y iff [x - y] lies in a 56-point cap of PG(5,3)."""
    from .caps import cayley_from_cap, is_cap

    if cap.d != 6 or len(cap) != 56 or not is_cap(cap).passed:
        raise ContractError("build_games needs a certified 56-cap in PG(5,3)")
    return cayley_from_cap(cap)
