from math import isqrt

from hypothesis import given, strategies as st

from srgfam import dioph


def oracle(max_n):
    """Walk the powers of 3 and solve n^2 + 3n - 1 = 3^m for n."""
    out = []
    m, t = 0, 1
    while t <= max_n ** 2 + 3 * max_n:
        disc = 9 + 4 * (t + 1)
        r = isqrt(disc)
        if r * r == disc and (r - 3) % 2 == 0 and 1 <= (r - 3) // 2 <= max_n:
            out.append(((r - 3) // 2, m))
        m, t = m + 1, 3 * t
    return out


def test_scan_million():
    sols = dioph.scan(10**6)
    assert [(s.n, s.m) for s in sols] == [(1, 1), (2, 2), (4, 3)]
    assert [(s.n, s.m) for s in sols] == oracle(10**6)
    for s in sols:
        assert s.n ** 2 + 3 * s.n - 1 == 3 ** s.m
        assert s.u ** 2 - 13 == 4 * 3 ** s.m


def test_power_of_three():
    assert dioph.power_of_three(1) == 0
    assert dioph.power_of_three(3 ** 40) == 40
    assert dioph.power_of_three(3 ** 40 + 1) is None
    assert dioph.power_of_three(0) is None


@given(st.integers(1, 5000), st.integers(1, 2000))
def test_chunking_independent(max_n, chunk):
    assert dioph.scan(max_n, chunk=chunk) == dioph.scan(max_n)
