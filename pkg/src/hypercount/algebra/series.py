"""Multivariate power series truncated to a degree box.

Coefficients are :class:`RationalFunction` values in a single variable.  The
box is fixed at construction and every operation stays inside it, so a
coefficient reported for ``T**v`` is exact whenever ``v`` lies in the box.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterator, Mapping

from .poly import LaurentPolynomial, RationalFunction, VariableMismatch


class BoxMismatch(ValueError):
    pass


def box_points(box: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All multi-degrees within ``box`` in lexicographic order."""
    return itertools.product(*(range(b + 1) for b in box))


def _below(v: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    return itertools.product(*(range(x + 1) for x in v))


class TruncatedMultiSeries:
    __slots__ = ("box", "var", "_coeffs")

    def __init__(self, box, coeffs: Mapping[tuple[int, ...], object] | None = None, var: str = "q"):
        box = tuple(int(b) for b in box)
        if any(b < 0 for b in box):
            raise ValueError(f"truncation box {box} has a negative bound")
        self.box = box
        self.var = var
        store: dict[tuple[int, ...], RationalFunction] = {}
        for v, c in (coeffs or {}).items():
            v = tuple(v)
            if len(v) != len(box):
                raise BoxMismatch(f"multi-degree {v} has wrong arity for box {box}")
            if any(x < 0 for x in v):
                raise ValueError(f"negative multi-degree {v}")
            if any(x > b for x, b in zip(v, box)):
                continue
            c = _as_rf(c, var)
            if not c.is_zero():
                store[v] = c
        self._coeffs = store

    @classmethod
    def one(cls, box, var: str = "q") -> "TruncatedMultiSeries":
        box = tuple(box)
        return cls(box, {(0,) * len(box): RationalFunction.one(var)}, var)

    @classmethod
    def from_function(cls, box, fn: Callable[[tuple[int, ...]], object], var: str = "q") -> "TruncatedMultiSeries":
        box = tuple(box)
        return cls(box, {v: fn(v) for v in box_points(box)}, var)

    @property
    def arity(self) -> int:
        return len(self.box)

    def __getitem__(self, v) -> RationalFunction:
        if isinstance(v, int):
            v = (v,)
        v = tuple(v)
        if len(v) != self.arity or any(x > b or x < 0 for x, b in zip(v, self.box)):
            raise KeyError(f"multi-degree {v} outside truncation box {self.box}")
        return self._coeffs.get(v, RationalFunction.zero(self.var))

    def items(self):
        return sorted(self._coeffs.items())

    def _check(self, other: "TruncatedMultiSeries") -> None:
        if self.box != other.box:
            raise BoxMismatch(f"boxes differ: {self.box} vs {other.box}")
        if self.var != other.var:
            raise VariableMismatch(f"coefficient variables differ: {self.var} vs {other.var}")

    def __add__(self, other: "TruncatedMultiSeries") -> "TruncatedMultiSeries":
        self._check(other)
        out = dict(self._coeffs)
        for v, c in other._coeffs.items():
            out[v] = out[v] + c if v in out else c
        return TruncatedMultiSeries(self.box, out, self.var)

    def __neg__(self):
        return TruncatedMultiSeries(self.box, {v: -c for v, c in self._coeffs.items()}, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "TruncatedMultiSeries") -> "TruncatedMultiSeries":
        self._check(other)
        out: dict[tuple[int, ...], RationalFunction] = {}
        box = self.box
        for u, a in self._coeffs.items():
            for v, b in other._coeffs.items():
                w = tuple(x + y for x, y in zip(u, v))
                if any(x > bb for x, bb in zip(w, box)):
                    continue
                prod = a * b
                out[w] = out[w] + prod if w in out else prod
        return TruncatedMultiSeries(box, out, self.var)

    def scale(self, c) -> "TruncatedMultiSeries":
        c = _as_rf(c, self.var)
        return TruncatedMultiSeries(self.box, {v: x * c for v, x in self._coeffs.items()}, self.var)

    def invert(self) -> "TruncatedMultiSeries":
        """Multiplicative inverse; the constant term must be exactly 1."""
        zero = (0,) * self.arity
        if not self[zero].is_one():
            raise ValueError(f"constant term {self[zero]} is not 1; series not invertible here")
        inv: dict[tuple[int, ...], RationalFunction] = {zero: RationalFunction.one(self.var)}
        nonconst = [(u, a) for u, a in self._coeffs.items() if u != zero]
        # lexicographic order visits every v - u (u > 0) before v
        for v in box_points(self.box):
            if v == zero:
                continue
            acc = None
            for u, a in nonconst:
                if any(x > y for x, y in zip(u, v)):
                    continue
                rest = tuple(y - x for x, y in zip(u, v))
                b = inv.get(rest)
                if b is None:
                    continue
                term = a * b
                acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                inv[v] = -acc
        return TruncatedMultiSeries(self.box, inv, self.var)

    def __truediv__(self, other: "TruncatedMultiSeries") -> "TruncatedMultiSeries":
        return self * other.invert()

    def map_coefficients(self, fn, var: str | None = None) -> "TruncatedMultiSeries":
        return TruncatedMultiSeries(self.box, {v: fn(v, c) for v, c in self._coeffs.items()}, var or self.var)

    def restrict(self, box) -> "TruncatedMultiSeries":
        """Re-truncate to a smaller box."""
        box = tuple(box)
        if len(box) != self.arity or any(b > s for b, s in zip(box, self.box)):
            raise BoxMismatch(f"{box} is not contained in {self.box}")
        return TruncatedMultiSeries(box, self._coeffs, self.var)

    def __eq__(self, other):
        if not isinstance(other, TruncatedMultiSeries):
            return NotImplemented
        return self.box == other.box and self.var == other.var and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.box, self.var, tuple(sorted(self._coeffs.items()))))

    def to_json(self) -> dict:
        return {
            "box": list(self.box),
            "var": self.var,
            "coefficients": [[list(v), c.to_json()] for v, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedMultiSeries":
        coeffs = {tuple(v): RationalFunction.from_json(c) for v, c in data["coefficients"]}
        return cls(tuple(data["box"]), coeffs, data["var"])

    def __repr__(self):
        body = ", ".join(f"{v}: {c}" for v, c in self.items())
        return f"TruncatedMultiSeries(box={self.box}, {{{body}}})"


def _as_rf(c, var: str) -> RationalFunction:
    if isinstance(c, RationalFunction):
        if c.var != var:
            raise VariableMismatch(f"coefficient in {c.var}, series in {var}")
        return c
    if isinstance(c, LaurentPolynomial):
        if c.var != var:
            raise VariableMismatch(f"coefficient in {c.var}, series in {var}")
        return RationalFunction.from_poly(c)
    if isinstance(c, int) and not isinstance(c, bool):
        return RationalFunction.from_poly(LaurentPolynomial.constant(c, var))
    raise TypeError(f"unsupported coefficient {c!r}")
