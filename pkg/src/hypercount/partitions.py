"""Partitions and the statistics of nilpotent orbits they index.

A partition ``lam`` of ``s`` labels the Jordan type of a nilpotent ``s x s``
matrix ``X_lam``.  The orders of its centralizers in GL_s(F_q) and gl_s(F_q)
are polynomials in q built from the pairing

    n(lam, mu) = sum_{i,j} min(lam_i, mu_j)

and the part multiplicities of ``lam``.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .algebra import LaurentPolynomial, RationalFunction


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> dict[int, int]:
        """Part value -> number of occurrences (m_k)."""
        return dict(Counter(self))

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for x in self if x > i) for i in range(self[0]))

    def to_json(self) -> list[int]:
        return list(self)

    def __repr__(self):
        return f"Partition({tuple(self)!r})"


@lru_cache(maxsize=None)
def _partitions(s: int, largest: int) -> tuple[Partition, ...]:
    if s == 0:
        return (Partition(),)
    out = []
    for first in range(min(s, largest), 0, -1):
        for rest in _partitions(s - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def enumerate_partitions(s: int) -> list[Partition]:
    """All partitions of ``s`` in lexicographically descending order."""
    if s < 0:
        raise ValueError("cannot partition a negative integer")
    return list(_partitions(s, s))


def pairing_n(lam, mu) -> int:
    return sum(min(a, b) for a in lam for b in mu)


def gl_order(s: int, var: str = "q") -> LaurentPolynomial:
    """|GL_s(F_q)| = prod_{i<s} (q^s - q^i)."""
    q = LaurentPolynomial.monomial(1, 1, var)
    out = LaurentPolynomial.constant(1, var)
    for i in range(s):
        out = out * (q ** s - q ** i)
    return out


@lru_cache(maxsize=None)
def _centralizer_poly(lam: Partition, var: str) -> LaurentPolynomial:
    # q^{n(lam,lam)} prod_k prod_{j<=m_k} (1 - q^{-j}), cleared of negative powers:
    # each factor (1 - q^{-j}) = q^{-j} (q^j - 1)
    q = LaurentPolynomial.monomial(1, 1, var)
    out = LaurentPolynomial.monomial(pairing_n(lam, lam), 1, var)
    for m in lam.multiplicities().values():
        for j in range(1, m + 1):
            out = out * (q ** j - 1)
            out = out.shift(-j)
    return out


def centralizer_order(lam, var: str = "q") -> RationalFunction:
    """Order of the centralizer of ``X_lam`` in GL_s(F_q), as a function of q."""
    return RationalFunction.from_poly(_centralizer_poly(Partition(lam), var))


def centralizer_polynomial(lam, var: str = "q") -> LaurentPolynomial:
    return _centralizer_poly(Partition(lam), var)


def lie_centralizer_order(lam, var: str = "q") -> LaurentPolynomial:
    """Order of the centralizer of ``X_lam`` in gl_s(F_q): q**n(lam, lam)."""
    return LaurentPolynomial.monomial(pairing_n(lam, lam), 1, var)


def nilpotent_matrix(lam) -> list[list[int]]:
    """Jordan-form nilpotent of type ``lam`` (ones on the superdiagonal of each block)."""
    s = sum(lam)
    m = [[0] * s for _ in range(s)]
    start = 0
    for block in lam:
        for i in range(start, start + block - 1):
            m[i][i + 1] = 1
        start += block
    return m
