"""Finite-field ground truth for the counting formulas.

Two independent evaluations of the number of solutions of mu(v, w) = xi over
F_p:

* ``brute_force_count`` runs over every v in V, assembles the linear map
  w -> mu(v, w) from the explicit moment map, and counts the solutions of the
  resulting affine system;
* ``character_sum_count`` sums |ker rho(X)| Psi(<X, xi>) over the Lie
  algebra in Z[zeta_p] and rescales by |V| / |g|.

``interpolate_count`` divides brute-force counts by |G(F_p)| and rebuilds the
count polynomial from several primes.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import CyclotomicInteger, LaurentPolynomial, is_prime
from .partitions import gl_order
from .quiver import Quiver, quiver_dimension
from .toric import ToricInstance, bad_primes_hint, default_level, generic_level

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
CHUNK = 1 << 15


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, cost: int, budget: int):
        super().__init__(f"{what} needs about {cost} linear solves, budget is {budget}")
        self.cost = cost
        self.budget = budget


class OracleError(ArithmeticError):
    """An identity that must hold exactly failed."""


class InsufficientPrimes(ValueError):
    pass


@dataclass(frozen=True)
class RepresentationInstance:
    kind: str
    toric: ToricInstance | None = None
    quiver: Quiver | None = None
    v: tuple[int, ...] = ()
    w: tuple[int, ...] = ()
    xi: tuple[Fraction, ...] = field(default=())

    @classmethod
    def from_toric(cls, inst: ToricInstance) -> "RepresentationInstance":
        xi = inst.xi if inst.xi is not None else tuple(Fraction(x) for x in default_level(inst))
        return cls("toric", toric=inst, xi=tuple(xi))

    @classmethod
    def from_quiver(cls, quiver: Quiver, v, w) -> "RepresentationInstance":
        v, w = tuple(int(x) for x in v), tuple(int(x) for x in w)
        if len(v) != quiver.vertices or len(w) != quiver.vertices:
            raise ValueError("v and w need one entry per vertex")
        return cls("quiver", quiver=quiver, v=v, w=w)

    @classmethod
    def from_json(cls, data: dict) -> "RepresentationInstance":
        kind = data.get("kind")
        if kind == "toric":
            return cls.from_toric(ToricInstance.from_json(data))
        if kind == "quiver":
            if "v" not in data:
                raise ValueError("quiver instance for verification needs a dimension vector 'v'")
            quiver = Quiver.from_one_based(int(data["vertices"]), data.get("edges", []))
            return cls.from_quiver(quiver, data["v"], data["w"])
        raise ValueError(f"unknown instance kind {kind!r}; expected 'toric' or 'quiver'")

    # -- shapes ---------------------------------------------------------

    @property
    def dim_V(self) -> int:
        if self.kind == "toric":
            return self.toric.n
        q = self.quiver
        return sum(self.v[i] * self.v[j] for i, j in q.edges) + sum(a * b for a, b in zip(self.v, self.w))

    @property
    def dim_g(self) -> int:
        if self.kind == "toric":
            return self.toric.d
        return sum(a * a for a in self.v)

    @property
    def dimension(self) -> int:
        if self.kind == "toric":
            return self.toric.dimension
        return quiver_dimension(self.quiver, self.v, self.w)

    def group_order(self, p: int) -> int:
        if self.kind == "toric":
            return (p - 1) ** self.toric.d
        out = 1
        for a in self.v:
            out *= gl_order(a)(p)
        return out

    def group_order_polynomial(self) -> LaurentPolynomial:
        if self.kind == "toric":
            return (LaurentPolynomial.monomial(1) - 1) ** self.toric.d
        out = LaurentPolynomial.constant(1)
        for a in self.v:
            out = out * gl_order(a)
        return out

    def is_bad_prime(self, p: int) -> bool:
        if self.kind == "toric":
            return p in bad_primes_hint(self.toric) or not generic_level(self.toric, self.xi, p)
        return sum(self.v) % p == 0 and sum(self.v) > 0

    def xi_mod(self, p: int) -> np.ndarray:
        if self.kind == "toric":
            if any(x.denominator % p == 0 for x in self.xi):
                raise ValueError(f"level {self.xi} is not defined mod {p}")
            return np.array([x.numerator * pow(x.denominator, -1, p) % p for x in self.xi], dtype=np.int64)
        out = []
        for a in self.v:
            out.extend(1 if r == c else 0 for r in range(a) for c in range(a))
        return np.array(out, dtype=np.int64)

    # -- explicit moment map ---------------------------------------------

    def moment_map(self, vvec: Sequence[int], wvec: Sequence[int]) -> list[int]:
        """mu(v, w) in coordinates dual to the standard basis of g (integers, unreduced)."""
        if self.kind == "toric":
            A = self.toric.matrix
            return [sum(A[a][i] * vvec[i] * wvec[i] for i in range(self.toric.n)) for a in range(self.toric.d)]
        return _quiver_moment_map(self.quiver, self.v, self.w, vvec, wvec)

    def moment_tensor(self) -> np.ndarray:
        """Array M[a, b, c] = mu(e_a, e_b)_c, from the explicit moment map."""
        N, m = self.dim_V, self.dim_g
        out = np.zeros((N, N, m), dtype=np.int64)
        for a in range(N):
            ea = [0] * N
            ea[a] = 1
            for b in range(N):
                eb = [0] * N
                eb[b] = 1
                out[a, b] = self.moment_map(ea, eb)
        return out

    # -- Lie algebra action ----------------------------------------------

    def action_matrices(self) -> np.ndarray:
        """R[c] is the matrix of rho(E_c) on V, for each basis vector E_c of g."""
        if self.kind == "toric":
            A = self.toric.matrix
            return np.array([np.diag(row) for row in A], dtype=np.int64)
        return _quiver_action(self.quiver, self.v, self.w)


def _block_layout(quiver: Quiver, v, w):
    """Offsets of the edge blocks (v_j x v_i) and framing blocks (v_i x w_i) in V."""
    offsets = []
    pos = 0
    for i, j in quiver.edges:
        offsets.append(("edge", i, j, pos, v[j], v[i]))
        pos += v[j] * v[i]
    for i in range(quiver.vertices):
        offsets.append(("frame", i, i, pos, v[i], w[i]))
        pos += v[i] * w[i]
    return offsets


def _quiver_moment_map(quiver: Quiver, v, w, vvec, wvec) -> list[int]:
    # V holds phi_e in Hom(V_i, V_j) and I_i in Hom(W_i, V_i); the dual pieces are
    # psi_e in Hom(V_j, V_i) and J_i in Hom(V_i, W_i).  Then
    #   mu_k = sum_{e -> k} phi_e psi_e - sum_{k -> e} psi_e phi_e + I_k J_k.
    mus = [np.zeros((a, a), dtype=object) for a in v]
    vv = np.array(vvec, dtype=object)
    ww = np.array(wvec, dtype=object)
    for kind, i, j, pos, rows, cols in _block_layout(quiver, v, w):
        size = rows * cols
        if size == 0:
            continue
        x = vv[pos:pos + size].reshape(rows, cols)
        y = ww[pos:pos + size].reshape(rows, cols).T
        if kind == "edge":
            mus[j] = mus[j] + x.dot(y)
            mus[i] = mus[i] - y.dot(x)
        else:
            mus[i] = mus[i] + x.dot(y)
    out = []
    for mu in mus:
        a = mu.shape[0]
        # coordinate dual to E_rc is <mu, E_rc> = tr(E_rc mu) = mu[c, r]
        out.extend(int(mu[c, r]) for r in range(a) for c in range(a))
    return out


def _quiver_action(quiver: Quiver, v, w) -> np.ndarray:
    N = sum(v[i] * v[j] for i, j in quiver.edges) + sum(a * b for a, b in zip(v, w))
    gbasis = [(k, r, c) for k, a in enumerate(v) for r in range(a) for c in range(a)]
    out = np.zeros((len(gbasis), N, N), dtype=np.int64)
    layout = _block_layout(quiver, v, w)
    for g, (k, r, c) in enumerate(gbasis):
        E = np.zeros((v[k], v[k]), dtype=np.int64)
        E[r, c] = 1
        for kind, i, j, pos, rows, cols in layout:
            for s in range(rows * cols):
                basis = np.zeros(rows * cols, dtype=np.int64)
                basis[s] = 1
                phi = basis.reshape(rows, cols)
                img = np.zeros((rows, cols), dtype=np.int64)
                if kind == "edge":
                    if j == k:
                        img += E.dot(phi)
                    if i == k:
                        img -= phi.dot(E)
                elif i == k:
                    img += E.dot(phi)
                out[g, pos:pos + rows * cols, pos + s] = img.reshape(-1)
    return out


# -- batched linear algebra over F_p -------------------------------------------


def batched_echelon(mats: np.ndarray, p: int, ncols: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Gaussian elimination of a stack of matrices over F_p.

    Returns (rank over the first ``ncols`` columns, pivot-found flag for
    column ``ncols``), the latter marking inconsistent augmented systems.
    """
    M = np.array(mats, dtype=np.int64) % p
    B, R, C = M.shape
    ncols = C if ncols is None else ncols
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, -1, p)
    r = np.zeros(B, dtype=np.int64)
    rank = np.zeros(B, dtype=np.int64)
    extra = np.zeros(B, dtype=bool)
    rows = np.arange(R)
    idx = np.arange(B)
    for c in range(C):
        cand = (M[:, :, c] != 0) & (rows[None, :] >= r[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = cand.argmax(axis=1)
        b = idx[has]
        pr, rr = piv[has], r[has]
        top = M[b, rr].copy()
        M[b, rr] = M[b, pr]
        M[b, pr] = top
        lead = M[b, rr, c]
        M[b, rr] = (M[b, rr] * inv[lead][:, None]) % p
        pivot_rows = M[b, rr]
        factors = M[b, :, c].copy()
        factors[np.arange(len(b)), rr] = 0
        M[b] = (M[b] - factors[:, :, None] * pivot_rows[:, None, :]) % p
        if c < ncols:
            rank[b] += 1
        else:
            extra[b] = True
        r[b] += 1
        r = np.minimum(r, R)
    return rank, extra


def _digits(start: int, stop: int, p: int, width: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), width), dtype=np.int64)
    for k in range(width):
        out[:, k] = idx % p
        idx = idx // p
    return out


def _brute_chunk(args) -> int:
    tensor, xi, p, start, stop = args
    N = tensor.shape[0]
    vs = _digits(start, stop, p, N)
    # L[b, c, k] = sum_a v[b, a] * mu(e_a, e_k)_c
    L = np.einsum("ba,akc->bck", vs, tensor) % p
    aug = np.concatenate([L, np.broadcast_to(xi[None, :, None], (len(vs), len(xi), 1))], axis=2)
    rank, inconsistent = batched_echelon(aug, p, ncols=N)
    ok = ~inconsistent
    total = 0
    for rk, cnt in zip(*np.unique(rank[ok], return_counts=True)):
        total += int(cnt) * p ** (N - int(rk))
    return total


def _chunks(total: int):
    return [(s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]


def _run(fn, jobs, workers: int):
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, jobs))
    return [fn(j) for j in jobs]


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def brute_force_cost(inst: RepresentationInstance, p: int) -> int:
    return p ** inst.dim_V


def brute_force_count(inst: RepresentationInstance, p: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> int:
    """Number of (v, w) in V x V* over F_p with mu(v, w) = xi."""
    _check_prime(p)
    cost = brute_force_cost(inst, p)
    if cost > budget:
        raise BudgetExceeded(f"brute force over F_{p}", cost, budget)
    N, m = inst.dim_V, inst.dim_g
    xi = inst.xi_mod(p)
    if m == 0:
        return p ** (2 * N)
    if N == 0:
        return 1 if not xi.any() else 0
    tensor = inst.moment_tensor() % p
    jobs = [(tensor, xi, p, s, e) for s, e in _chunks(p ** N)]
    return sum(_run(_brute_chunk, jobs, workers))


def _character_chunk(args) -> list[int]:
    action, xi, p, start, stop = args
    m, N, _ = action.shape
    xs = _digits(start, stop, p, m)
    mats = np.einsum("ba,aij->bij", xs, action) % p
    rank, _ = batched_echelon(mats, p)
    residues = (xs @ xi) % p
    weights = [0] * p
    for res, rk in zip(residues.tolist(), rank.tolist()):
        weights[res] += p ** (N - rk)
    return weights


def character_sum(inst: RepresentationInstance, p: int, scale: int = 1, budget: int = DEFAULT_BUDGET,
                  workers: int = 1) -> CyclotomicInteger:
    """sum_{X in g} |ker rho(X)| Psi(<X, xi>) with Psi(x) = zeta_p^(scale x)."""
    _check_prime(p)
    if scale % p == 0:
        raise ValueError("the additive character must be nontrivial")
    m, N = inst.dim_g, inst.dim_V
    cost = p ** m
    if cost > budget:
        raise BudgetExceeded(f"character sum over F_{p}", cost, budget)
    if m == 0:
        return CyclotomicInteger.integer(p, p ** N)
    action = inst.action_matrices() % p
    xi = inst.xi_mod(p)
    weights = [0] * p
    for part in _run(_character_chunk, [(action, xi, p, s, e) for s, e in _chunks(p ** m)], workers):
        for r, x in enumerate(part):
            weights[r] += x
    spread = [0] * p
    for r, x in enumerate(weights):
        spread[(scale * r) % p] += x
    return CyclotomicInteger.from_exponent_weights(p, spread)


def character_sum_count(inst: RepresentationInstance, p: int, scale: int = 1, budget: int = DEFAULT_BUDGET,
                        workers: int = 1) -> int:
    """|g|^-1 |V| times the character sum, asserted to be a rational integer."""
    total = character_sum(inst, p, scale, budget, workers) * (p ** inst.dim_V)
    try:
        total = total.exact_div_int(p ** inst.dim_g)
    except ArithmeticError as exc:
        raise OracleError(f"character sum not divisible by |g| at p={p}: {exc}") from None
    if not total.is_rational_integer():
        raise OracleError(f"character sum at p={p} is not a rational integer: {total}")
    return total.to_int()


def variety_count(inst: RepresentationInstance, p: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> int:
    """Brute-force solutions divided by |G(F_p)|, divisibility asserted."""
    sols = brute_force_count(inst, p, budget, workers)
    g = inst.group_order(p)
    if sols % g:
        raise OracleError(f"{sols} solutions at p={p} not divisible by |G| = {g}")
    return sols // g


def lagrange_interpolate(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Ascending coefficients of the interpolating polynomial, exact over Q."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += yi * b / denom
    return coeffs


@dataclass
class Interpolation:
    polynomial: LaurentPolynomial
    points: list[tuple[int, int]]
    held_out: list[tuple[int, int]]
    skipped: list[int]


def interpolate_count(inst: RepresentationInstance, primes: Sequence[int], degree_bound: int | None = None,
                      budget: int = DEFAULT_BUDGET, workers: int = 1) -> Interpolation:
    """Rebuild #M(q) from brute-force counts at the good primes in ``primes``."""
    if degree_bound is None:
        degree_bound = max(inst.dimension, 0)
    good = [p for p in primes if not inst.is_bad_prime(p)]
    skipped = [p for p in primes if inst.is_bad_prime(p)]
    if len(good) < degree_bound + 1:
        raise InsufficientPrimes(
            f"need {degree_bound + 1} good primes for degree {degree_bound}, have {good} (skipped {skipped})"
        )
    values = [(p, variety_count(inst, p, budget, workers)) for p in good]
    fit, held = values[: degree_bound + 1], values[degree_bound + 1:]
    coeffs = lagrange_interpolate(fit)
    if any(c.denominator != 1 for c in coeffs):
        raise OracleError(f"interpolant through {fit} has non-integer coefficients {coeffs}")
    poly = LaurentPolynomial.from_list([int(c) for c in coeffs])
    for p, y in held:
        if poly(p) != y:
            raise OracleError(f"interpolant {poly} gives {poly(p)} at held-out prime {p}, brute force {y}")
    log.debug("interpolated %s from %s (held out %s)", poly, fit, held)
    return Interpolation(poly, fit, held, skipped)
