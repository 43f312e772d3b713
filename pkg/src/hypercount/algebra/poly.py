"""Integer Laurent polynomials and reduced rational functions in one variable.

Both types are immutable and hashable.  The variable is carried as a short
tag (``"q"`` for point counts, ``"t"`` for Poincare polynomials); mixing tags
in arithmetic raises :class:`VariableMismatch`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping


class VariableMismatch(ValueError):
    pass


class InexactDivision(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


class LaurentPolynomial:
    __slots__ = ("_terms", "var", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = (), var: str = "q"):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, c in items:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coefficient {c!r} is not an integer")
            acc[int(e)] = acc.get(int(e), 0) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self.var = var
        self._hash = None

    @classmethod
    def _raw(cls, terms: tuple, var: str) -> "LaurentPolynomial":
        # terms already sorted, merged and pruned
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.var = var
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: int, var: str = "q") -> "LaurentPolynomial":
        return cls._raw(((0, c),) if c else (), var)

    @classmethod
    def monomial(cls, e: int, c: int = 1, var: str = "q") -> "LaurentPolynomial":
        return cls._raw(((e, c),) if c else (), var)

    @classmethod
    def from_list(cls, coeffs: Iterable[int], var: str = "q", shift: int = 0) -> "LaurentPolynomial":
        """Ascending dense coefficient list, lowest exponent ``shift``."""
        return cls._raw(tuple((i + shift, c) for i, c in enumerate(coeffs) if c), var)

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def coeff(self, e: int) -> int:
        for ee, c in self._terms:
            if ee == e:
                return c
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == ((0, 1),)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def is_polynomial(self) -> bool:
        """True when no negative exponents occur."""
        return not self._terms or self._terms[0][0] >= 0

    @property
    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return self._terms[-1][0]

    @property
    def low_degree(self) -> int:
        if not self._terms:
            raise ValueError("low degree of the zero polynomial")
        return self._terms[0][0]

    @property
    def leading_coefficient(self) -> int:
        return self._terms[-1][1] if self._terms else 0

    def content(self) -> int:
        return reduce(gcd, (c for _, c in self._terms), 0)

    def dense(self) -> tuple[int, list[int]]:
        """Return ``(low, coeffs)`` with ``self == q**low * sum(coeffs[i] q**i)``."""
        if not self._terms:
            return 0, []
        lo = self._terms[0][0]
        out = [0] * (self._terms[-1][0] - lo + 1)
        for e, c in self._terms:
            out[e - lo] = c
        return lo, out

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "LaurentPolynomial") -> None:
        if self.var != other.var:
            raise VariableMismatch(f"cannot combine {self.var}-polynomial with {other.var}-polynomial")

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return LaurentPolynomial.constant(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial._raw(tuple(sorted((e, c) for e, c in acc.items() if c)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw(tuple((e, -c) for e, c in self._terms), self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return LaurentPolynomial._raw((), self.var)
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial._raw(tuple(sorted((e, c) for e, c in acc.items() if c)), self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) == 1 and abs(self._terms[0][1]) == 1:
                e, c = self._terms[0]
                return LaurentPolynomial.monomial(e * n, c ** (-n), self.var)
            raise ValueError("negative power of a non-unit Laurent polynomial")
        result = LaurentPolynomial.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``var**k``."""
        return LaurentPolynomial._raw(tuple((e + k, c) for e, c in self._terms), self.var)

    def scale_int(self, k: int) -> "LaurentPolynomial":
        if k == 0:
            return LaurentPolynomial._raw((), self.var)
        return LaurentPolynomial._raw(tuple((e, c * k) for e, c in self._terms), self.var)

    def divmod(self, other: "LaurentPolynomial") -> tuple["LaurentPolynomial", "LaurentPolynomial"]:
        """Division with remainder, dividing from the top degree down.

        Both operands are shifted to ordinary polynomials first; the quotient
        absorbs the shift, so the remainder has degree below ``other``'s span.
        """
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            zero = LaurentPolynomial._raw((), self.var)
            return zero, zero
        blo, b = other.dense()
        alo, a = self.dense()
        lead = b[-1]
        rem = a[:]
        nq = len(a) - len(b) + 1
        if nq <= 0:
            return LaurentPolynomial._raw((), self.var), self
        quot = [0] * nq
        for i in range(nq - 1, -1, -1):
            c = rem[i + len(b) - 1]
            if c == 0:
                continue
            if c % lead:
                raise InexactDivision(f"{self} / {other}: non-integral quotient coefficient")
            f = c // lead
            quot[i] = f
            for j, bj in enumerate(b):
                rem[i + j] -= f * bj
        q = LaurentPolynomial.from_list(quot, self.var, alo - blo)
        r = LaurentPolynomial.from_list(rem, self.var, alo)
        return q, r

    def exact_divide(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Return ``c`` with ``self == other * c``; raise on any remainder."""
        try:
            q, r = self.divmod(other)
        except InexactDivision:
            raise InexactDivision(f"({self}) / ({other}) is not exact") from None
        if not r.is_zero():
            raise InexactDivision(f"({self}) / ({other}) leaves remainder {r}")
        return q

    # -- evaluation and substitution ------------------------------------

    def __call__(self, x):
        """Evaluate at an int or Fraction; negative exponents give Fractions."""
        total = Fraction(0) if any(e < 0 for e, _ in self._terms) else 0
        for e, c in self._terms:
            total += c * (Fraction(x) ** e if e < 0 else x ** e)
        return total

    def eval_mod(self, x: int, p: int) -> int:
        total = 0
        for e, c in self._terms:
            total += c * pow(x, e, p)
        return total % p

    def substitute(self, exponent: int, var: str) -> "LaurentPolynomial":
        """Replace ``self.var`` by ``var**exponent`` (e.g. q -> t**-2 is ``(-2, "t")``)."""
        if exponent == 0:
            return LaurentPolynomial.constant(sum(c for _, c in self._terms), var)
        terms = sorted((e * exponent, c) for e, c in self._terms)
        return LaurentPolynomial._raw(tuple(terms), var)

    def nonnegative(self) -> bool:
        return all(c > 0 for _, c in self._terms)

    def only_even_powers(self) -> bool:
        return all(e % 2 == 0 for e, _ in self._terms)

    # -- comparison -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.var == other.var and self._terms == other._terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self._terms == (((0, other),) if other else ())
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.var, self._terms))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- rendering ------------------------------------------------------

    def to_json(self) -> dict:
        return {"var": self.var, "terms": [[e, str(c)] for e, c in self._terms]}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPolynomial":
        return cls(((int(e), int(c)) for e, c in data["terms"]), data["var"])

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms:
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = self.var if e == 1 else f"{self.var}^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPolynomial({dict(self._terms)!r}, var={self.var!r})"


def variable(var: str = "q") -> LaurentPolynomial:
    return LaurentPolynomial.monomial(1, 1, var)


def _primitive(a: list[int]) -> list[int]:
    c = reduce(gcd, a, 0)
    if c in (0, 1):
        return a
    return [x // c for x in a]


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of dense ascending integer lists."""
    a = a[:]
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for j, bj in enumerate(b):
            a[shift + j] -= la * bj
        while a and a[-1] == 0:
            a.pop()
    return a


def poly_gcd(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """Primitive gcd of the ordinary-polynomial parts (monomial factors dropped).

    The result has positive leading coefficient and content 1.
    """
    a._check(b)
    if a.is_zero():
        a, b = b, a
    if b.is_zero():
        if a.is_zero():
            return a
        _, da = a.dense()
        g = _primitive(da)
        if g[-1] < 0:
            g = [-x for x in g]
        return LaurentPolynomial.from_list(g, a.var)
    _, x = a.dense()
    _, y = b.dense()
    x, y = _primitive(x), _primitive(y)
    if len(x) < len(y):
        x, y = y, x
    while y and len(y) > 1:
        r = _prem(x, y)
        x, y = y, _primitive(r)
    if not y:
        g = x
    else:
        g = [1]
    if g[-1] < 0:
        g = [-c for c in g]
    return LaurentPolynomial.from_list(g, a.var)


class RationalFunction:
    """Quotient of Laurent polynomials in reduced canonical form.

    Canonical form: the denominator is an ordinary polynomial with nonzero
    constant term and positive leading coefficient, numerator and
    denominator are coprime, and the combined integer content is 1.  All
    monomial factors live in the numerator.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, var: str | None = None):
        if isinstance(num, int) and not isinstance(num, bool):
            num = LaurentPolynomial.constant(num, var or (den.var if den is not None else "q"))
        if den is None:
            den = LaurentPolynomial.constant(1, num.var)
        elif isinstance(den, int):
            den = LaurentPolynomial.constant(den, num.var)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _reduce(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPolynomial, den: LaurentPolynomial) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def from_poly(cls, p: LaurentPolynomial) -> "RationalFunction":
        return cls._raw(p, LaurentPolynomial.constant(1, p.var))

    @classmethod
    def one(cls, var: str = "q") -> "RationalFunction":
        return cls.from_poly(LaurentPolynomial.constant(1, var))

    @classmethod
    def zero(cls, var: str = "q") -> "RationalFunction":
        return cls.from_poly(LaurentPolynomial.constant(0, var))

    @property
    def var(self) -> str:
        return self.num.var

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def as_laurent(self) -> LaurentPolynomial:
        if not self.den.is_one():
            raise InexactDivision(f"{self} is not a Laurent polynomial")
        return self.num

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.var != self.var:
                raise VariableMismatch(f"cannot combine {self.var} with {other.var}")
            return other
        if isinstance(other, LaurentPolynomial):
            self.num._check(other)
            return RationalFunction.from_poly(other)
        if isinstance(other, int) and not isinstance(other, bool):
            return RationalFunction.from_poly(LaurentPolynomial.constant(other, self.var))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return RationalFunction.zero(self.var)
        if self.den.is_one() and other.den.is_one():
            return RationalFunction._raw(self.num * other.num, self.den)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction.one(self.var) / (self ** (-n))
        return RationalFunction(self.num ** n, self.den ** n)

    def __call__(self, x) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {x}")
        return Fraction(self.num(x)) / Fraction(d)

    def substitute(self, exponent: int, var: str) -> "RationalFunction":
        return RationalFunction(self.num.substitute(exponent, var), self.den.substitute(exponent, var))

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (LaurentPolynomial, int)) and not isinstance(other, bool):
            return self.den.is_one() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RationalFunction":
        return cls(LaurentPolynomial.from_json(data["num"]), LaurentPolynomial.from_json(data["den"]))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"


def _reduce(num: LaurentPolynomial, den: LaurentPolynomial) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    var = num.var
    if num.is_zero():
        return num, LaurentPolynomial.constant(1, var)
    # pull monomial factors out of the denominator
    dlo = den.low_degree
    if dlo:
        den = den.shift(-dlo)
        num = num.shift(-dlo)
    if den.degree > 0:
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_divide(g)
            den = den.exact_divide(g)
            dlo = den.low_degree
            if dlo:
                den = den.shift(-dlo)
                num = num.shift(-dlo)
    c = gcd(num.content(), den.content())
    if den.leading_coefficient < 0:
        c = -c
    if c != 1:
        num = LaurentPolynomial._raw(tuple((e, x // c) for e, x in num.terms), var)
        den = LaurentPolynomial._raw(tuple((e, x // c) for e, x in den.terms), var)
    return num, den
