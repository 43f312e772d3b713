import pytest

from hypercount.adhm import (
    AdhmQuery,
    adhm_count,
    adhm_dimension,
    adhm_poincare,
    adhm_poincare_series,
    feit_fine_product,
    grand_product,
    grand_series,
    nil_coefficient,
    phi_nil,
    phi_reg,
    poincare_product,
    regular_product,
)
from hypercount.algebra import LaurentPolynomial
from hypercount.partitions import enumerate_partitions

q = LaurentPolynomial.monomial(1)
t = LaurentPolynomial.monomial(1, var="t")


# -- x-adic oracle, x = 1/q ---------------------------------------------------------
# Coefficients are dicts {exponent of x: int}.  Intermediate results keep
# terms up to WORK so that later multiplication by negative powers of x cannot
# pull truncated terms back below PREC, where the comparison happens.

PREC = 6
WORK = PREC + 60


def _xmul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= WORK:
                out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _xadd(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _xinv(a):
    """Inverse of a Laurent series in x whose lowest coefficient is +-1."""
    low = min(a)
    c0 = a[low]
    assert c0 in (1, -1)
    shifted = {k - low: v for k, v in a.items()}
    inv = {}
    for n in range(WORK + low + 1):
        s = (1 if n == 0 else 0) - sum(shifted.get(n - m, 0) * inv.get(m, 0) for m in range(n))
        if s:
            inv[n] = s * c0
    return {k - low: v for k, v in inv.items()}


def x_expand(r):
    """Expand a rational function of q as a series in x = 1/q."""
    num = {-e: c for e, c in r.num.terms}
    den = {-e: c for e, c in r.den.terms}
    return _xmul(num, _xinv(den))


def product_series_x(k, n_max, depth):
    """prod_i prod_{j=1..depth} 1/(1 - T^i x^(j-k-1)), T-coefficients in x."""
    series = [{0: 1}] + [{} for _ in range(n_max)]
    for i in range(1, n_max + 1):
        for j in range(1, depth + 1):
            e = j - k - 1
            geo = [{} for _ in range(n_max + 1)]
            for m in range(n_max // i + 1):
                geo[i * m] = {e * m: 1}
            new = [{} for _ in range(n_max + 1)]
            for a in range(n_max + 1):
                for b in range(n_max + 1 - a):
                    if series[a] and geo[b]:
                        new[a + b] = _xadd(new[a + b], _xmul(series[a], geo[b]))
            series = new
    return series


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_nilpotent_series_against_x_adic_product(k):
    n_max = 4
    # factors with j - k - 1 > WORK only contribute beyond the working window
    ref = product_series_x(k, n_max, WORK + k + 1)
    for n in range(n_max + 1):
        got = x_expand(nil_coefficient(n, k))
        assert {e: c for e, c in got.items() if e <= PREC} == {e: c for e, c in ref[n].items() if e <= PREC}


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_feit_fine_identity(k):
    assert phi_nil(k, 6) == feit_fine_product(k, 6)


def test_regular_series_is_product():
    assert phi_reg(6) == regular_product(6)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_grand_series_is_finite_product(k):
    assert grand_series(k, 6) == grand_product(k, 6)


def test_first_nilpotent_coefficients():
    assert nil_coefficient(0, 5) == 1
    # s = 1: q / (q - 1) times q^k
    assert nil_coefficient(1, 0).num == q and nil_coefficient(1, 0).den == q - 1


FROZEN = {
    (1, 1): q**2,
    (2, 1): q**3 + q**4,
    (3, 1): q**4 + q**5 + q**6,
    (1, 2): q**3 + q**4,
    (2, 2): q**5 + 2 * q**6 + q**7 + q**8,
    (3, 2): q**7 + 2 * q**8 + 3 * q**9 + 2 * q**10 + q**11 + q**12,
    (1, 3): q**4 + q**5 + q**6,
    (2, 3): q**7 + 2 * q**8 + 2 * q**9 + 2 * q**10 + q**11 + q**12,
}


@pytest.mark.parametrize("nk", sorted(FROZEN))
def test_frozen_counts(nk):
    assert adhm_count(*nk) == FROZEN[nk]


def test_framing_one_is_cotangent_projective_space_times_plane():
    # M(1, k) = T*P^(k-1) x C^2
    for k in range(1, 6):
        expected = sum((q**j for j in range(k - 1, 2 * k - 1)), LaurentPolynomial.constant(0)) * q**2
        assert adhm_count(1, k) == expected


@pytest.mark.parametrize("n", range(1, 9))
def test_empty_without_framing(n):
    assert adhm_count(n, 0) == 0


def test_counts_monic_of_full_degree():
    for k in range(1, 4):
        for n in range(1, 6):
            c = adhm_count(n, k)
            assert c.degree == adhm_dimension(n, k) and c.leading_coefficient == 1
            assert c.nonnegative()


def test_hilbert_scheme_betti_numbers():
    # P_t(Hilb^n C^2) = sum over partitions of n of t^(2(n - l(lam)))
    for n in range(1, 8):
        expected = LaurentPolynomial({}, "t")
        for lam in enumerate_partitions(n):
            expected = expected + t ** (2 * (n - len(lam)))
        assert adhm_poincare(n, 1) == expected


def test_k1_poincare_through_t6():
    series = poincare_product(1, 6)
    want = [
        1,
        1,
        1 + t**2,
        1 + t**2 + t**4,
        1 + t**2 + 2 * t**4 + t**6,
        1 + t**2 + 2 * t**4 + 2 * t**6 + t**8,
        1 + t**2 + 2 * t**4 + 3 * t**6 + 3 * t**8 + t**10,
    ]
    for n, w in enumerate(want):
        assert series[(n,)] == w


@pytest.mark.parametrize("k", [1, 2, 3])
def test_poincare_product_matches_counts(k):
    series = adhm_poincare_series(k, 6)
    for n in range(1, 7):
        assert series[(n,)].as_laurent() == adhm_poincare(n, k)


def test_poincare_series_requires_framing():
    with pytest.raises(ValueError):
        adhm_poincare_series(0, 3)


def test_query_validation():
    with pytest.raises(ValueError):
        AdhmQuery(-1, 3)
    with pytest.raises(ValueError):
        AdhmQuery(1, 0)
    with pytest.raises(ValueError):
        adhm_count(0, 1)
