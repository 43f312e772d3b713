"""Framed Nakajima quiver varieties M(v, w).

For a nilpotent tuple X = (X_lam1, ..., X_lamn) the kernel of the gauge
action on the representation space has dimension

    sum_{(i,j) in E} n(lam_i, lam_j) + sum_i w_i l(lam_i)

and the nilpotent generating series

    Phi_nil(w) = sum_v T^v sum_{lam_i in P(v_i)} q^kernel / prod_i |C_lam_i|

determines every count through Phi(w) = Phi_nil(w) / Phi_nil(0), whose T^v
coefficient is #M(v, w) |g_v| / |V_{v,w}|.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .algebra import LaurentPolynomial, RationalFunction, TruncatedMultiSeries, box_points
from .partitions import Partition, centralizer_polynomial, enumerate_partitions, pairing_n


class InvalidQuiver(ValueError):
    pass


class FormulaError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Quiver:
    """Vertices 0..n-1 and a multiset of oriented edges; loops allowed."""

    vertices: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, vertices: int, edges=()):
        edges = tuple(sorted((int(i), int(j)) for i, j in edges))
        if vertices < 1:
            raise InvalidQuiver("a quiver needs at least one vertex")
        for i, j in edges:
            if not (0 <= i < vertices and 0 <= j < vertices):
                raise InvalidQuiver(f"edge {(i, j)} out of range for {vertices} vertices")
        object.__setattr__(self, "vertices", int(vertices))
        object.__setattr__(self, "edges", edges)

    @classmethod
    def jordan(cls) -> "Quiver":
        return cls(1, [(0, 0)])

    @classmethod
    def edgeless(cls, vertices: int = 1) -> "Quiver":
        return cls(vertices, [])

    @classmethod
    def from_one_based(cls, vertices: int, edges) -> "Quiver":
        return cls(vertices, [(i - 1, j - 1) for i, j in edges])

    def one_based_edges(self) -> list[list[int]]:
        return [[i + 1, j + 1] for i, j in self.edges]

    def relabel(self, perm: Sequence[int]) -> "Quiver":
        """Vertex i becomes perm[i]."""
        return Quiver(self.vertices, [(perm[i], perm[j]) for i, j in self.edges])


@dataclass(frozen=True)
class QuiverQuery:
    quiver: Quiver
    w: tuple[int, ...]
    v_max: tuple[int, ...]

    def __init__(self, quiver: Quiver, w, v_max):
        w = tuple(int(x) for x in w)
        v_max = tuple(int(x) for x in v_max)
        if len(w) != quiver.vertices or len(v_max) != quiver.vertices:
            raise InvalidQuiver("w and v_max must have one entry per vertex")
        if any(x < 0 for x in w) or any(x < 0 for x in v_max):
            raise InvalidQuiver("dimension vectors must be nonnegative")
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "v_max", v_max)

    @classmethod
    def from_json(cls, data: dict) -> "QuiverQuery":
        try:
            n = int(data["vertices"])
            edges = data.get("edges", [])
            w = data["w"]
        except KeyError as exc:
            raise InvalidQuiver(f"quiver instance is missing field {exc.args[0]!r}") from None
        v_max = data.get("vmax", data.get("v", None))
        if v_max is None:
            raise InvalidQuiver("quiver instance needs 'vmax' (or 'v')")
        return cls(Quiver.from_one_based(n, edges), w, v_max)

    def to_json(self) -> dict:
        return {
            "vertices": self.quiver.vertices,
            "edges": self.quiver.one_based_edges(),
            "w": list(self.w),
            "vmax": list(self.v_max),
        }

    def contains(self, v) -> bool:
        return len(v) == len(self.v_max) and all(0 <= a <= b for a, b in zip(v, self.v_max))


def kernel_exponent(quiver: Quiver, w: Sequence[int], lambdas: Sequence) -> int:
    """log_q of the kernel size of the gauge action of a nilpotent tuple."""
    lambdas = [Partition(lam) for lam in lambdas]
    total = sum(pairing_n(lambdas[i], lambdas[j]) for i, j in quiver.edges)
    total += sum(wi * len(lam) for wi, lam in zip(w, lambdas))
    return total


def quiver_dimension(quiver: Quiver, v: Sequence[int], w: Sequence[int]) -> int:
    """Complex dimension 2 sum_E v_i v_j + 2 sum_i v_i (w_i - v_i)."""
    return 2 * sum(v[i] * v[j] for i, j in quiver.edges) + 2 * sum(a * (b - a) for a, b in zip(v, w))


def _nil_term(quiver: Quiver, w, lambdas, var: str) -> RationalFunction:
    den = LaurentPolynomial.constant(1, var)
    for lam in lambdas:
        den = den * centralizer_polynomial(lam, var)
    e = kernel_exponent(quiver, w, lambdas)
    if var == "t":
        # q = t^-2
        return RationalFunction(LaurentPolynomial.monomial(-2 * e, 1, "t"), den.substitute(-2, "t"))
    return RationalFunction(LaurentPolynomial.monomial(e, 1, var), den)


def _nil_coefficient(quiver: Quiver, w, v, var: str) -> RationalFunction:
    per_vertex = [enumerate_partitions(x) for x in v]
    # collect numerators over a shared denominator to limit gcd work
    terms: dict[LaurentPolynomial, LaurentPolynomial] = {}
    for lambdas in itertools.product(*per_vertex):
        t = _nil_term(quiver, w, lambdas, var)
        terms[t.den] = terms.get(t.den, LaurentPolynomial.constant(0, var)) + t.num
    total = RationalFunction.zero(var)
    for den, num in terms.items():
        total = total + RationalFunction(num, den)
    return total


@lru_cache(maxsize=256)
def _phi_nil(quiver: Quiver, w: tuple[int, ...], box: tuple[int, ...], var: str) -> TruncatedMultiSeries:
    return TruncatedMultiSeries.from_function(box, lambda v: _nil_coefficient(quiver, w, v, var), var)


def quiver_phi_nil(query: QuiverQuery, var: str = "q") -> TruncatedMultiSeries:
    """Nilpotent generating series Phi_nil(w) truncated to the query box."""
    return _phi_nil(query.quiver, query.w, query.v_max, var)


@lru_cache(maxsize=256)
def _grand(quiver: Quiver, w: tuple[int, ...], box: tuple[int, ...], var: str) -> TruncatedMultiSeries:
    num = _phi_nil(quiver, w, box, var)
    den = _phi_nil(quiver, (0,) * quiver.vertices, box, var)
    return num * den.invert()


def quiver_grand_series(query: QuiverQuery, var: str = "q") -> TruncatedMultiSeries:
    """Phi(w) = Phi_nil(w) / Phi_nil(0); in ``var="t"`` this is sum_v P_t t^(-d) T^v."""
    return _grand(query.quiver, query.w, query.v_max, var)


def _check_v(query: QuiverQuery, v) -> tuple[int, ...]:
    v = tuple(int(x) for x in v)
    if not query.contains(v):
        raise InvalidQuiver(f"dimension vector {v} lies outside the box {query.v_max}")
    return v


def quiver_count(query: QuiverQuery, v) -> LaurentPolynomial:
    """#M(v, w) over F_q as a polynomial in q."""
    v = _check_v(query, v)
    coeff = quiver_grand_series(query)[v]
    if not coeff.is_laurent():
        raise FormulaError(f"T^{v} coefficient {coeff} is not a Laurent polynomial")
    quiver = query.quiver
    # |V_{v,w}| / |g_v|
    shift = sum(v[i] * v[j] for i, j in quiver.edges) + sum(a * b for a, b in zip(v, query.w)) - sum(a * a for a in v)
    count = coeff.num.shift(shift)
    if not count.is_polynomial():
        raise FormulaError(f"#M({v},{query.w}) = {count} has negative powers of q")
    return count


def quiver_poincare(query: QuiverQuery, v) -> LaurentPolynomial:
    """P_t(M(v, w)) = t^(2d) #M(t^-2), with d the complex dimension."""
    v = _check_v(query, v)
    count = quiver_count(query, v)
    d = quiver_dimension(query.quiver, v, query.w)
    poincare = count.substitute(-2, "t").shift(2 * d)
    if not poincare.is_polynomial() or not poincare.nonnegative() or not poincare.only_even_powers():
        raise FormulaError(f"P_t(M({v},{query.w})) = {poincare} is not a nonnegative polynomial in t^2")
    return poincare


def poincare_from_generating_function(query: QuiverQuery, v) -> LaurentPolynomial:
    """P_t read off the t-variable generating function as t^d [T^v]."""
    v = _check_v(query, v)
    coeff = quiver_grand_series(query, var="t")[v]
    if not coeff.is_laurent():
        raise FormulaError(f"T^{v} coefficient {coeff} is not a Laurent polynomial in t")
    return coeff.num.shift(quiver_dimension(query.quiver, v, query.w))


def quiver_table(query: QuiverQuery) -> list[dict]:
    rows = []
    for v in box_points(query.v_max):
        count = quiver_count(query, v)
        rows.append(
            {
                "v": list(v),
                "dim": quiver_dimension(query.quiver, v, query.w),
                "count": count,
                "poincare": quiver_poincare(query, v),
            }
        )
    return rows


def unit_toric_matrix(quiver: Quiver, w: Sequence[int]) -> list[list[int]]:
    """Weight matrix of the torus action at v = (1, ..., 1).

    One column e_j - e_i per edge (i, j) (zero for loops) and w_i columns e_i
    for the framing at vertex i.
    """
    n = quiver.vertices
    cols = []
    for i, j in quiver.edges:
        col = [0] * n
        col[j] += 1
        col[i] -= 1
        cols.append(col)
    for i, wi in enumerate(w):
        for _ in range(wi):
            col = [0] * n
            col[i] = 1
            cols.append(col)
    return [[c[r] for c in cols] for r in range(n)]
