import itertools

import numpy as np
import pytest

from hypercount.algebra import LaurentPolynomial
from hypercount.partitions import (
    Partition,
    centralizer_order,
    enumerate_partitions,
    gl_order,
    lie_centralizer_order,
    nilpotent_matrix,
    pairing_n,
)

q = LaurentPolynomial.monomial(1)


def all_matrices(s, p):
    for entries in itertools.product(range(p), repeat=s * s):
        yield np.array(entries, dtype=np.int64).reshape(s, s)


def invertible_mod(m, p):
    return round(np.linalg.det(m)) % p != 0


def brute_centralizer(lam, p, group=True):
    X = np.array(nilpotent_matrix(lam), dtype=np.int64).reshape(sum(lam), sum(lam))
    s = sum(lam)
    count = 0
    for g in all_matrices(s, p):
        if group and not invertible_mod(g, p):
            continue
        if not ((g @ X - X @ g) % p).any():
            count += 1
    return count


def test_enumerate_small():
    assert enumerate_partitions(0) == [()]
    assert enumerate_partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(enumerate_partitions(6)) == 11


def test_enumerate_counts_match_euler_recurrence():
    # p(n) via the generating function prod 1/(1 - x^k), computed independently
    N = 15
    counts = [1] + [0] * N
    for k in range(1, N + 1):
        for n in range(k, N + 1):
            counts[n] += counts[n - k]
    assert [len(enumerate_partitions(n)) for n in range(N + 1)] == counts


def test_enumerate_is_distinct_and_valid():
    for s in range(9):
        parts = enumerate_partitions(s)
        assert len(set(parts)) == len(parts)
        assert all(sum(lam) == s for lam in parts)
        assert parts == sorted(parts, reverse=True)


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


@pytest.mark.parametrize("lam, mu, expected", [((2, 1), (2, 1), 5), ((3, 1), (1, 1), 4), ((), (3, 2), 0)])
def test_pairing_examples(lam, mu, expected):
    assert pairing_n(lam, mu) == expected


def test_pairing_symmetric():
    parts = [lam for s in range(7) for lam in enumerate_partitions(s)]
    for lam in parts:
        for mu in parts:
            assert pairing_n(lam, mu) == pairing_n(mu, lam)


def test_pairing_with_column():
    for s in range(7):
        for lam in enumerate_partitions(s):
            for w in range(5):
                assert pairing_n(lam, (1,) * w) == w * len(lam)


def test_pairing_is_conjugate_square_sum():
    for s in range(9):
        for lam in enumerate_partitions(s):
            assert pairing_n(lam, lam) == sum(x * x for x in Partition(lam).conjugate())


def test_centralizer_examples():
    assert centralizer_order((1,)).as_laurent() == q - 1
    assert centralizer_order((1, 1)).as_laurent() == (q**2 - 1) * (q**2 - q)
    assert centralizer_order((2,)).as_laurent() == q**2 - q


def test_lie_centralizer_examples():
    assert lie_centralizer_order((1,)) == q
    assert lie_centralizer_order((1, 1)) == q**4
    assert lie_centralizer_order((2,)) == q**2


def test_gl2_f2_order_is_six():
    assert brute_centralizer((1, 1), 2) == 6


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1)])
def test_centralizer_matches_enumeration(lam, p):
    if sum(lam) == 3 and p == 3 and lam == (1, 1, 1):
        # |GL_3(F_3)| enumeration is the slowest case; compare against the group order formula
        assert centralizer_order(lam)(p) == gl_order(3)(p) == 11232
        return
    assert centralizer_order(lam)(p) == brute_centralizer(lam, p)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("lam", [(2,), (2, 1), (3,)])
def test_lie_centralizer_matches_enumeration(lam, p):
    assert lie_centralizer_order(lam)(p) == brute_centralizer(lam, p, group=False)


def count_nilpotent(s, p):
    total = 0
    for m in all_matrices(s, p):
        power = np.linalg.matrix_power(m, s) % p
        total += not power.any()
    return total


@pytest.mark.parametrize("s, p", [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_orbit_sizes_sum_to_nilpotent_count(s, p):
    # sum of |GL_s| / |C_lam| over nilpotent types = number of nilpotent matrices
    total = sum(gl_order(s)(p) // centralizer_order(lam)(p) for lam in enumerate_partitions(s))
    assert total == p ** (s * s - s)
    if p ** (s * s) <= 20000:
        assert count_nilpotent(s, p) == total
