"""Bounded search for n^2 + 3n - 1 = 3^m.

The equation is equivalent to u^2 - 13 = 4 * 3^m with u = 2n + 3; every hit
is checked in both forms. Completeness beyond the scanned range depends on
an external number-theoretic result and is not established here.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractError


@dataclass(frozen=True)
class DiophSolution:
    n: int
    m: int
    u: int


def power_of_three(x: int) -> int | None:
    """m with 3^m = x, by repeated exact division; None if x is not a power of 3."""
    if x < 1:
        return None
    m = 0
    while x % 3 == 0:
        x //= 3
        m += 1
    return m if x == 1 else None


def scan_range(lo: int, hi: int) -> list[DiophSolution]:
    """Solutions with lo <= n < hi."""
    out = []
    for n in range(max(lo, 1), hi):
        m = power_of_three(n * n + 3 * n - 1)
        if m is None or m < 1:
            continue
        u = 2 * n + 3
        if u * u - 13 != 4 * 3 ** m:
            raise AssertionError(f"substitution identity fails at n={n}")  # pragma: no cover
        out.append(DiophSolution(n, m, u))
    return out


def scan(max_n: int = 10**6, chunk: int | None = None) -> list[DiophSolution]:
    """All solutions with 1 <= n <= max_n, in increasing n."""
    if max_n < 1:
        raise ContractError("max_n must be >= 1")
    if chunk is None:
        return scan_range(1, max_n + 1)
    out = []
    for lo in range(1, max_n + 1, chunk):
        out += scan_range(lo, min(lo + chunk, max_n + 1))
    return out
