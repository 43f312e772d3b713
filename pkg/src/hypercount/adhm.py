"""Twisted ADHM spaces M(n, k) and Hilbert schemes of points on the plane.

M(n, k) is the quotient by GL_n of the solutions of [A, B] + IJ = Id.  Its
point count comes from the series identity

    1 + sum_n #M(n, k) T^n / q^(kn) = Phi_nil^k(T) / Phi_nil^0(T)

where Phi_nil^k sums over nilpotent orbit types (partitions).  The
regular-orbit series is the reciprocal of Phi_nil^0 and is never summed
directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import LaurentPolynomial, RationalFunction, TruncatedMultiSeries
from .partitions import centralizer_order, enumerate_partitions, lie_centralizer_order


class FormulaError(ArithmeticError):
    pass


@dataclass(frozen=True)
class AdhmQuery:
    k: int
    n_max: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("framing rank k must be nonnegative")
        if self.n_max < 1:
            raise ValueError("n_max must be at least 1")


def _q(e: int, var: str = "q") -> LaurentPolynomial:
    return LaurentPolynomial.monomial(e, 1, var)


def nil_coefficient(s: int, k: int) -> RationalFunction:
    """sum over partitions lam of s of |gl-centralizer| * q^(k l(lam)) / |GL-centralizer|."""
    total = RationalFunction.zero()
    for lam in enumerate_partitions(s):
        weight = lie_centralizer_order(lam) * _q(k * len(lam))
        total = total + RationalFunction.from_poly(weight) / centralizer_order(lam)
    return total


@lru_cache(maxsize=None)
def phi_nil(k: int, n_max: int) -> TruncatedMultiSeries:
    return TruncatedMultiSeries.from_function((n_max,), lambda v: nil_coefficient(v[0], k))


def _euler_coefficients(m_max: int, scale: LaurentPolynomial, sign: int) -> list[RationalFunction]:
    """Coefficients c_m of prod_{j>=0} (1 - z x^j)^(-sign) in z, with x = 1/q.

    The product F satisfies F(z) = F(xz) (1 - z)^(-sign), which gives

        sign = +1:  c_m (1 - x^m) = c_{m-1}
        sign = -1:  c_m (1 - x^m) = -x^(m-1) c_{m-1}

    ``scale`` substitutes z -> scale * z.
    """
    one = RationalFunction.one()
    x = RationalFunction(_q(-1))
    out = [one]
    for m in range(1, m_max + 1):
        prev = out[-1]
        step = prev if sign > 0 else -(x ** (m - 1)) * prev
        out.append(step / (one - x ** m))
    return [c * RationalFunction.from_poly(scale ** m) for m, c in enumerate(out)]


def _product_series(n_max: int, shift: int, sign: int) -> TruncatedMultiSeries:
    # prod_i prod_{j>=1} (1 - T^i q^(shift+1-j))^(-sign), one factor family per i
    result = TruncatedMultiSeries.one((n_max,))
    for i in range(1, n_max + 1):
        coeffs = _euler_coefficients(n_max // i, _q(shift), sign)
        factor = TruncatedMultiSeries((n_max,), {(i * m,): c for m, c in enumerate(coeffs)})
        result = result * factor
    return result


@lru_cache(maxsize=None)
def feit_fine_product(k: int, n_max: int) -> TruncatedMultiSeries:
    """prod_{i>=1} prod_{j>=1} 1 / (1 - T^i q^(k+1-j)) expanded through T^n_max."""
    return _product_series(n_max, k, +1)


def regular_product(n_max: int) -> TruncatedMultiSeries:
    """prod_{i>=1} prod_{j>=1} (1 - T^i q^(1-j)), the regular-orbit series."""
    return _product_series(n_max, 0, -1)


def phi_reg(n_max: int) -> TruncatedMultiSeries:
    return phi_nil(0, n_max).invert()


@lru_cache(maxsize=None)
def grand_series(k: int, n_max: int) -> TruncatedMultiSeries:
    """1 + sum_n #M(n,k) T^n / q^(kn), via Phi_nil^k * Phi_reg."""
    return phi_nil(k, n_max) * phi_reg(n_max)


def grand_product(k: int, n_max: int) -> TruncatedMultiSeries:
    """prod_{i>=1} prod_{l=1..k} 1 / (1 - T^i q^l), a finite closed form."""
    result = TruncatedMultiSeries.one((n_max,))
    for i in range(1, n_max + 1):
        for l in range(1, k + 1):
            geo = {(i * m,): _q(l * m) for m in range(n_max // i + 1)}
            result = result * TruncatedMultiSeries((n_max,), geo)
    return result


def adhm_count(n: int, k: int) -> LaurentPolynomial:
    """Number of F_q-points of M(n, k) as a polynomial in q."""
    if n < 1:
        raise ValueError("n must be positive")
    coeff = grand_series(k, n)[(n,)]
    if not coeff.is_laurent():
        raise FormulaError(f"coefficient of T^{n} for k={k} is not a Laurent polynomial: {coeff}")
    count = coeff.num.shift(k * n)
    if not count.is_polynomial():
        raise FormulaError(f"#M({n},{k}) = {count} has negative powers of q")
    return count


def adhm_dimension(n: int, k: int) -> int:
    return 2 * n * k


def _poincare_from_count(count: LaurentPolynomial, dim: int) -> LaurentPolynomial:
    # purity: P_t = t^(2 dim) #M(t^-2)
    return count.substitute(-2, "t").shift(2 * dim)


def adhm_poincare(n: int, k: int) -> LaurentPolynomial:
    return _poincare_from_count(adhm_count(n, k), adhm_dimension(n, k))


def poincare_product(k: int, n_max: int) -> TruncatedMultiSeries:
    """prod_{i<=n_max} prod_{b=1..k} 1 / (1 - t^(2(k(i-1)+b-1)) T^i), coefficients in t."""
    result = TruncatedMultiSeries.one((n_max,), var="t")
    for i in range(1, n_max + 1):
        for b in range(1, k + 1):
            e = 2 * (k * (i - 1) + b - 1)
            geo = {(i * m,): LaurentPolynomial.monomial(e * m, 1, "t") for m in range(n_max // i + 1)}
            result = result * TruncatedMultiSeries((n_max,), geo, var="t")
    return result


def adhm_poincare_series(k: int, n_max: int) -> TruncatedMultiSeries:
    """Generating function of Poincare polynomials, cross-checked against the counts."""
    if k < 1:
        raise ValueError("k must be positive")
    series = poincare_product(k, n_max)
    for n in range(1, n_max + 1):
        expected = adhm_poincare(n, k)
        if series[(n,)] != expected:
            raise FormulaError(f"T^{n}: product gives {series[(n,)]}, counts give {expected}")
    return series
