"""Toric hyperkahler varieties from an integer weight matrix.

The columns a_1..a_n of a full-rank d x n matrix A cut out hyperplanes
H_i = {X : <a_i, X> = 0} in the Lie algebra of the d-torus.  A flat of the
arrangement is recorded by its closed set of column indices (the hyperplanes
containing it), so larger closed sets are smaller subspaces and the full
index set is the origin, the top element.

Point count of the quotient at a generic level:

    #M(q) = q^(n-d) / (q-1)^d * sum_V mu(V, top) q^ca(V)

with ca(V) the size of the closed set.  The Poincare polynomial is
t^(4(n-d)) #M(t^-2), which equals the h-polynomial of the Gale dual
matroid evaluated at t^2.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import LaurentPolynomial, variable
from .linalg import columns, integer_kernel_basis, maximal_minors, rank_mod_p, rank_q


class InvalidInstance(ValueError):
    pass


class FormulaError(ArithmeticError):
    """A computed invariant violated a property it must have."""


@dataclass(frozen=True)
class ToricInstance:
    matrix: tuple[tuple[int, ...], ...]
    xi: tuple[Fraction, ...] | None = None

    def __init__(self, matrix, xi=None):
        rows = tuple(tuple(int(x) for x in r) for r in matrix)
        if not rows or not rows[0]:
            raise InvalidInstance("weight matrix is empty")
        if len({len(r) for r in rows}) != 1:
            raise InvalidInstance("weight matrix rows have different lengths")
        object.__setattr__(self, "matrix", rows)
        if xi is not None:
            xi = tuple(Fraction(x) for x in xi)
            if len(xi) != len(rows):
                raise InvalidInstance(f"xi has length {len(xi)}, expected {len(rows)}")
        object.__setattr__(self, "xi", xi)
        if self.n < self.d:
            raise InvalidInstance(f"need n >= d, got d={self.d}, n={self.n}")
        if rank_q(rows) != self.d:
            raise InvalidInstance("weight matrix is rank deficient over Q")

    @property
    def d(self) -> int:
        return len(self.matrix)

    @property
    def n(self) -> int:
        return len(self.matrix[0])

    @property
    def dimension(self) -> int:
        """Complex dimension 2(n - d) of the quotient."""
        return 2 * (self.n - self.d)

    @classmethod
    def from_json(cls, data: dict) -> "ToricInstance":
        try:
            matrix = data["matrix"]
        except KeyError:
            raise InvalidInstance("toric instance needs a 'matrix' field") from None
        return cls(matrix, data.get("xi"))

    def to_json(self) -> dict:
        out: dict = {"matrix": [list(r) for r in self.matrix]}
        if self.xi is not None:
            out["xi"] = [str(x) for x in self.xi]
        return out


@dataclass
class FlatLattice:
    n: int
    flats: list[frozenset[int]]
    rank: dict[frozenset[int], int]
    mobius: dict[frozenset[int], int]

    @property
    def top(self) -> frozenset[int]:
        return frozenset(range(self.n))

    @property
    def bottom(self) -> frozenset[int]:
        return min(self.flats, key=len)

    def coatom_count(self, flat: frozenset[int]) -> int:
        return len(flat)

    def interval_to_top(self, flat: frozenset[int]) -> list[frozenset[int]]:
        return [g for g in self.flats if flat <= g]


def _closure(matrix, subset: frozenset[int], r: int | None = None) -> frozenset[int]:
    if r is None:
        r = rank_q(columns(matrix, sorted(subset)))
    out = set(subset)
    for j in range(len(matrix[0])):
        if j not in out and rank_q(columns(matrix, sorted(subset | {j}))) == r:
            out.add(j)
    return frozenset(out)


def build_flat_lattice(inst: ToricInstance) -> FlatLattice:
    matrix = inst.matrix
    n = inst.n
    rank: dict[frozenset[int], int] = {}
    start = _closure(matrix, frozenset(), 0)
    rank[start] = 0
    frontier = [start]
    # every flat is the closure of some flat of rank one less plus one element
    while frontier:
        nxt = []
        for f in frontier:
            for j in range(n):
                if j in f:
                    continue
                g = _closure(matrix, f | {j}, rank[f] + 1)
                if g not in rank:
                    rank[g] = rank[f] + 1
                    nxt.append(g)
        frontier = nxt
    flats = sorted(rank, key=lambda f: (rank[f], sorted(f)))
    top = frozenset(range(n))
    if top not in rank or rank[top] != inst.d:
        raise InvalidInstance("arrangement is not essential")
    mobius: dict[frozenset[int], int] = {}
    for f in sorted(flats, key=lambda f: -rank[f]):
        if f == top:
            mobius[f] = 1
        else:
            mobius[f] = -sum(mobius[g] for g in mobius if f < g)
    return FlatLattice(n, flats, rank, mobius)


def mobius_sum(lattice: FlatLattice, var: str = "q") -> LaurentPolynomial:
    """sum_V mu(V, top) q^ca(V)."""
    return LaurentPolynomial(((len(f), lattice.mobius[f]) for f in lattice.flats), var)


def toric_count_polynomial(inst: ToricInstance, lattice: FlatLattice | None = None) -> LaurentPolynomial:
    lattice = lattice or build_flat_lattice(inst)
    q = variable("q")
    s = mobius_sum(lattice)
    return s.shift(inst.n - inst.d).exact_divide((q - 1) ** inst.d)


def toric_poincare(inst: ToricInstance, count: LaurentPolynomial | None = None) -> LaurentPolynomial:
    count = count if count is not None else toric_count_polynomial(inst)
    poincare = count.substitute(-2, "t").shift(2 * inst.dimension)
    if not poincare.is_polynomial() or not poincare.nonnegative() or not poincare.only_even_powers():
        raise FormulaError(f"Poincare polynomial {poincare} is not a nonnegative polynomial in t^2")
    return poincare


def generic_level(inst: ToricInstance, xi: Sequence, p: int | None = None) -> bool:
    """Is ``xi`` nonzero on every positive-dimensional flat of the arrangement?

    Equivalently ``xi`` avoids the span of every closed set of rank < d.  With
    ``p`` the test is carried out over F_p.
    """
    lattice = build_flat_lattice(inst)
    xi = [Fraction(x) for x in xi]
    if p is not None:
        if any(x.denominator % p == 0 for x in xi):
            return False
        xi = [x.numerator * pow(x.denominator, -1, p) % p for x in xi]
    for f in lattice.flats:
        if lattice.rank[f] == inst.d:
            continue
        if not f:
            in_span = all(x == 0 for x in xi)
        else:
            cols = columns(inst.matrix, sorted(f))
            aug = [row + [x] for row, x in zip(cols, xi)]
            if p is None:
                in_span = rank_q(aug) == lattice.rank[f]
            else:
                in_span = rank_mod_p(aug, p) == rank_mod_p(cols, p)
        if in_span:
            return False
    return True


def check_level(inst: ToricInstance) -> bool:
    """Warn when a user-supplied level is not generic; True when fine or absent."""
    if inst.xi is None:
        return True
    ok = generic_level(inst, inst.xi)
    if not ok:
        warnings.warn(f"level {list(map(str, inst.xi))} is not generic for this arrangement", stacklevel=2)
    return ok


def default_level(inst: ToricInstance, bound: int = 6) -> tuple[int, ...]:
    """Smallest positive integer vector (in a fixed search order) that is generic."""
    for trial in itertools.product(range(1, bound + 1), repeat=inst.d):
        if generic_level(inst, trial):
            return trial
    raise InvalidInstance("no generic level found in the search range")


def bad_primes_hint(inst: ToricInstance) -> set[int]:
    """Primes dividing some nonzero maximal minor of A."""
    out = set()
    for m in maximal_minors(inst.matrix):
        m = abs(m)
        f = 2
        while m > 1 and f * f <= m:
            while m % f == 0:
                out.add(f)
                m //= f
            f += 1
        if m > 1:
            out.add(m)
    return out


# -- matroids ---------------------------------------------------------------


@dataclass(frozen=True)
class Matroid:
    """Matroid of the columns of a rational matrix."""

    vectors: tuple[tuple[Fraction, ...], ...]
    size: int = field(default=0)

    def __init__(self, rows, size: int | None = None):
        rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if size is None:
            if not rows:
                raise ValueError("ground set size required for a matrix with no rows")
            size = len(rows[0])
        object.__setattr__(self, "vectors", tuple(tuple(r[j] for r in rows) for j in range(size)))
        object.__setattr__(self, "size", size)

    @property
    def realization(self) -> list[list[Fraction]]:
        nrows = len(self.vectors[0]) if self.vectors else 0
        return [[v[i] for v in self.vectors] for i in range(nrows)]

    def rank(self, subset=None) -> int:
        idx = range(self.size) if subset is None else sorted(subset)
        vecs = [self.vectors[j] for j in idx]
        if not vecs or not vecs[0]:
            return 0
        return rank_q(vecs)

    def bases(self) -> list[tuple[int, ...]]:
        r = self.rank()
        return [s for s in itertools.combinations(range(self.size), r) if self.rank(s) == r]

    def independent_sets(self) -> list[tuple[int, ...]]:
        return [
            s
            for k in range(self.size + 1)
            for s in itertools.combinations(range(self.size), k)
            if self.rank(s) == k
        ]


def gale_dual(inst: ToricInstance) -> Matroid:
    """Matroid of a Gale dual configuration B, whose rows span ker A."""
    basis = integer_kernel_basis(inst.matrix)
    return Matroid(basis, size=inst.n)


@dataclass(frozen=True)
class BivariatePolynomial:
    coeffs: tuple[tuple[tuple[int, int], int], ...]

    def __init__(self, coeffs: dict):
        object.__setattr__(self, "coeffs", tuple(sorted((k, c) for k, c in coeffs.items() if c)))

    def __call__(self, x, y):
        return sum(c * x ** i * y ** j for (i, j), c in self.coeffs)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for (i, j), c in self.coeffs:
            factors = [str(c)] if c != 1 or i == j == 0 else []
            if i:
                factors.append("x" if i == 1 else f"x^{i}")
            if j:
                factors.append("y" if j == 1 else f"y^{j}")
            terms.append("*".join(factors))
        return " + ".join(terms)


def _vec_rank(vecs) -> int:
    if not vecs or not vecs[0]:
        return 0
    return rank_q(vecs)


def _contract(vecs: list[tuple[Fraction, ...]], e: int) -> list[tuple[Fraction, ...]]:
    pivot_vec = vecs[e]
    r = next(i for i, x in enumerate(pivot_vec) if x != 0)
    out = []
    for j, v in enumerate(vecs):
        if j == e:
            continue
        f = v[r] / pivot_vec[r]
        w = tuple(a - f * b for a, b in zip(v, pivot_vec))
        out.append(w[:r] + w[r + 1:])
    return out


def _tutte(vecs: list[tuple[Fraction, ...]], order: list[int]) -> dict[tuple[int, int], int]:
    if not vecs:
        return {(0, 0): 1}
    # order holds a priority for each remaining element; process the smallest
    e = min(range(len(vecs)), key=lambda j: order[j])
    rest_order = order[:e] + order[e + 1:]
    deleted = vecs[:e] + vecs[e + 1:]
    if all(x == 0 for x in vecs[e]):
        sub = _tutte(deleted, rest_order)
        return {(i, j + 1): c for (i, j), c in sub.items()}
    if _vec_rank(deleted) < _vec_rank(vecs):
        sub = _tutte(_contract(vecs, e), rest_order)
        return {(i + 1, j): c for (i, j), c in sub.items()}
    out = dict(_tutte(deleted, rest_order))
    for k, c in _tutte(_contract(vecs, e), rest_order).items():
        out[k] = out.get(k, 0) + c
    return out


def tutte_polynomial(m: Matroid, order: Sequence[int] | None = None) -> BivariatePolynomial:
    """Tutte polynomial by deletion-contraction; ``order`` fixes the processing order."""
    order = list(range(m.size)) if order is None else list(order)
    if sorted(order) != list(range(m.size)):
        raise ValueError("order must be a permutation of the ground set")
    priority = [0] * m.size
    for pos, el in enumerate(order):
        priority[el] = pos
    return BivariatePolynomial(_tutte(list(m.vectors), priority))


def h_polynomial(m: Matroid, var: str = "q") -> LaurentPolynomial:
    """h-polynomial of the independence complex: q^r T(1/q, 1)."""
    r = m.rank()
    acc: dict[int, int] = {}
    for (i, _j), c in tutte_polynomial(m).coeffs:
        acc[r - i] = acc.get(r - i, 0) + c
    return LaurentPolynomial(acc, var)


def toric_summary(inst: ToricInstance) -> dict:
    lattice = build_flat_lattice(inst)
    count = toric_count_polynomial(inst, lattice)
    return {
        "count": count,
        "poincare": toric_poincare(inst, count),
        "h_dual": h_polynomial(gale_dual(inst)),
        "flats": len(lattice.flats),
    }
