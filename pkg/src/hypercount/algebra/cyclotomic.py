"""Prime-field scalars and cyclotomic integers for exact character sums."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeFieldElement:
    residue: int
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "residue", self.residue % self.p)

    def _other(self, other) -> int:
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.residue
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else PrimeFieldElement(self.residue + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else PrimeFieldElement(self.residue - o, self.p)

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.p)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else PrimeFieldElement(self.residue * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "PrimeFieldElement":
        if self.residue == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return PrimeFieldElement(pow(self.residue, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * PrimeFieldElement(o, self.p).inverse()

    def __int__(self):
        return self.residue


class CyclotomicInteger:
    """Element of Z[zeta_p] in the basis 1, zeta, ..., zeta**(p-2).

    ``zeta**(p-1)`` is rewritten as ``-(1 + zeta + ... + zeta**(p-2))``, so two
    values are equal exactly when their coordinate tuples are equal.
    """

    __slots__ = ("p", "coords")

    def __init__(self, p: int, coords: Iterable[int]):
        coords = list(coords)
        if len(coords) == p:
            top = coords.pop()
            coords = [c - top for c in coords]
        if len(coords) != p - 1:
            raise ValueError(f"expected {p - 1} coordinates for p={p}, got {len(coords)}")
        self.p = p
        self.coords = tuple(coords)

    @classmethod
    def from_exponent_weights(cls, p: int, weights: Iterable[int]) -> "CyclotomicInteger":
        """``sum(weights[r] * zeta**r for r in range(p))``."""
        return cls(p, weights)

    @classmethod
    def integer(cls, p: int, n: int) -> "CyclotomicInteger":
        return cls(p, [n] + [0] * (p - 2))

    @classmethod
    def zeta_power(cls, p: int, e: int) -> "CyclotomicInteger":
        w = [0] * p
        w[e % p] = 1
        return cls(p, w)

    def _full(self) -> list[int]:
        return list(self.coords) + [0]

    def _check(self, other: "CyclotomicInteger") -> None:
        if self.p != other.p:
            raise ValueError(f"mixing Z[zeta_{self.p}] and Z[zeta_{other.p}]")

    def __add__(self, other):
        if isinstance(other, int):
            other = CyclotomicInteger.integer(self.p, other)
        self._check(other)
        return CyclotomicInteger(self.p, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInteger(self.p, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInteger(self.p, [a * other for a in self.coords])
        self._check(other)
        p = self.p
        acc = [0] * p
        a, b = self._full(), other._full()
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        acc[(i + j) % p] += x * y
        return CyclotomicInteger(p, acc)

    __rmul__ = __mul__

    def exact_div_int(self, n: int) -> "CyclotomicInteger":
        if any(c % n for c in self.coords):
            raise ArithmeticError(f"{self} is not divisible by {n}")
        return CyclotomicInteger(self.p, [c // n for c in self.coords])

    def is_rational_integer(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def to_int(self) -> int:
        if not self.is_rational_integer():
            raise ArithmeticError(f"{self} is not a rational integer")
        return self.coords[0]

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_rational_integer() and self.coords[0] == other
        if isinstance(other, CyclotomicInteger):
            return self.p == other.p and self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.coords))

    def __repr__(self):
        return f"CyclotomicInteger(p={self.p}, coords={list(self.coords)})"


def character(x: PrimeFieldElement, scale: int = 1) -> CyclotomicInteger:
    """The additive character ``x -> zeta_p**(scale * x)``."""
    return CyclotomicInteger.zeta_power(x.p, scale * x.residue)
