import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _battery import A2, EDGELESS, JORDAN
from hypercount.adhm import adhm_count, adhm_poincare
from hypercount.algebra import LaurentPolynomial
from hypercount.linalg import rank_mod_p
from hypercount.oracle import RepresentationInstance
from hypercount.partitions import enumerate_partitions, nilpotent_matrix
from hypercount.quiver import (
    InvalidQuiver,
    Quiver,
    QuiverQuery,
    kernel_exponent,
    poincare_from_generating_function,
    quiver_count,
    quiver_dimension,
    quiver_poincare,
    quiver_table,
    unit_toric_matrix,
)
from hypercount.toric import ToricInstance, generic_level, toric_count_polynomial

q = LaurentPolynomial.monomial(1)
t = LaurentPolynomial.monomial(1, var="t")

KRONECKER = Quiver(2, [(0, 1), (0, 1)])
TWO_CYCLE = Quiver(2, [(0, 1), (1, 0)])
DOUBLE_LOOP = Quiver(1, [(0, 0), (0, 0)])
A3 = Quiver(3, [(0, 1), (1, 2)])


def count(quiver, v, w):
    return quiver_count(QuiverQuery(quiver, w, v), v)


def test_quiver_validation():
    with pytest.raises(InvalidQuiver):
        Quiver(0)
    with pytest.raises(InvalidQuiver):
        Quiver(2, [(0, 2)])
    with pytest.raises(InvalidQuiver):
        QuiverQuery(A2, (1,), (1, 1))
    with pytest.raises(InvalidQuiver):
        QuiverQuery(A2, (1, -1), (1, 1))
    with pytest.raises(InvalidQuiver):
        quiver_count(QuiverQuery(A2, (1, 1), (1, 1)), (2, 0))


def test_json_round_trip():
    query = QuiverQuery.from_json({"vertices": 2, "edges": [[1, 2]], "w": [1, 0], "vmax": [1, 1]})
    assert query.quiver == A2
    assert QuiverQuery.from_json(query.to_json()) == query
    with pytest.raises(InvalidQuiver):
        QuiverQuery.from_json({"vertices": 1, "w": [1]})
    with pytest.raises(InvalidQuiver):
        QuiverQuery.from_json({"edges": [], "w": [1], "vmax": [1]})


def test_edgeless_is_cotangent_grassmannian():
    assert count(EDGELESS, (1,), (2,)) == q + q**2
    assert quiver_poincare(QuiverQuery(EDGELESS, (2,), (1,)), (1,)) == 1 + t**2
    assert quiver_poincare(QuiverQuery(EDGELESS, (3,), (1,)), (1,)) == 1 + t**2 + t**4
    # T*Gr(2, 4): Poincare polynomial is the Gaussian binomial [4 choose 2] in t^2
    assert quiver_poincare(QuiverQuery(EDGELESS, (4,), (2,)), (2,)) == 1 + t**2 + 2 * t**4 + t**6 + t**8
    assert count(EDGELESS, (1,), (1,)) == 1


def test_a2_examples():
    assert count(A2, (1, 1), (1, 1)) == 2 * q + q**2
    assert count(A2, (1, 1), (1, 0)) == 1
    assert quiver_dimension(A2, (1, 1), (1, 0)) == 0
    assert quiver_poincare(QuiverQuery(A2, (1, 1), (1, 1)), (1, 1)) == 1 + 2 * t**2


def test_a3_unit_vector():
    assert quiver_poincare(QuiverQuery(A3, (1, 0, 1), (1, 1, 1)), (1, 1, 1)) == 1 + 3 * t**2


def test_double_loop():
    assert quiver_poincare(QuiverQuery(DOUBLE_LOOP, (1,), (2,)), (2,)) == 1 + t**2 + t**4 + t**6


@pytest.mark.parametrize("w", [0, 1, 2])
def test_jordan_reproduces_adhm(w):
    query = QuiverQuery(JORDAN, (w,), (5,))
    for n in range(1, 6):
        assert quiver_count(query, (n,)) == adhm_count(n, w)
        if w:
            assert quiver_poincare(query, (n,)) == adhm_poincare(n, w)


def test_vanishing_without_framing():
    for quiver in (EDGELESS, JORDAN, DOUBLE_LOOP):
        query = QuiverQuery(quiver, (0,), (3,))
        for n in range(1, 4):
            assert quiver_count(query, (n,)) == 0
    query = QuiverQuery(A2, (0, 0), (2, 2))
    for v in itertools.product(range(3), repeat=2):
        if any(v):
            assert quiver_count(query, v) == 0


def test_relabelling_vertices():
    query = QuiverQuery(A3, (1, 0, 2), (2, 2, 2))
    perm = [2, 0, 1]
    moved = QuiverQuery(A3.relabel(perm), tuple(query.w[perm.index(i)] for i in range(3)), (2, 2, 2))
    for v in itertools.product(range(3), repeat=3):
        w_v = tuple(v[perm.index(i)] for i in range(3))
        assert quiver_count(query, v) == quiver_count(moved, w_v)


def test_edge_orientation_does_not_matter():
    a = QuiverQuery(Quiver(2, [(0, 1)]), (1, 1), (2, 2))
    b = QuiverQuery(Quiver(2, [(1, 0)]), (1, 1), (2, 2))
    for v in itertools.product(range(3), repeat=2):
        assert quiver_count(a, v) == quiver_count(b, v)


def test_both_poincare_routes_agree():
    for quiver, w, box in [(JORDAN, (2,), (3,)), (A2, (1, 1), (2, 2)), (KRONECKER, (1, 1), (2, 1)), (TWO_CYCLE, (1, 0), (1, 1))]:
        query = QuiverQuery(quiver, w, box)
        for v in itertools.product(*[range(b + 1) for b in box]):
            if quiver_count(query, v).is_zero():
                continue
            assert poincare_from_generating_function(query, v) == quiver_poincare(query, v)


SWEEP = [
    (KRONECKER, (1, 1), (2, 2)),
    (TWO_CYCLE, (1, 1), (2, 2)),
    (DOUBLE_LOOP, (1,), (3,)),
    (A3, (1, 0, 1), (1, 2, 1)),
    (A2, (2, 2), (2, 2)),
    (JORDAN, (3,), (3,)),
]


@pytest.mark.parametrize("quiver, w, box", SWEEP)
def test_counts_monic_and_poincare_nonnegative(quiver, w, box):
    for row in quiver_table(QuiverQuery(quiver, w, box)):
        c, d = row["count"], row["dim"]
        if c.is_zero():
            assert d < 0
            continue
        assert c.degree == d and c.leading_coefficient == 1
        assert row["poincare"].nonnegative() and row["poincare"].degree <= d * 2


def nilpotent_element(inst, lambdas):
    """Coordinates of (X_lam1, ..., X_lamn) in the basis E_rc of g."""
    out = []
    for lam, a in zip(lambdas, inst.v):
        X = np.array(nilpotent_matrix(lam), dtype=np.int64).reshape(a, a)
        out.extend(int(X[r, c]) for r in range(a) for c in range(a))
    return np.array(out, dtype=np.int64)


@pytest.mark.parametrize(
    "quiver, v, w",
    [(JORDAN, (3,), (1,)), (JORDAN, (2,), (2,)), (A2, (2, 2), (1, 0)), (KRONECKER, (2, 1), (0, 1)), (A3, (1, 2, 2), (0, 1, 1))],
)
def test_kernel_exponent_matches_action_rank(quiver, v, w):
    inst = RepresentationInstance.from_quiver(quiver, v, w)
    action = inst.action_matrices()
    for lambdas in itertools.product(*[enumerate_partitions(a) for a in v]):
        x = nilpotent_element(inst, lambdas)
        mat = np.tensordot(x, action, axes=1) % 5
        kernel = inst.dim_V - rank_mod_p(mat.tolist(), 5)
        assert kernel == kernel_exponent(quiver, w, lambdas)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_moment_map_is_dual_to_action(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 2)
    edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 2))]
    quiver = Quiver(n, edges)
    v = tuple(rng.randint(1, 2) for _ in range(n))
    w = tuple(rng.randint(0, 2) for _ in range(n))
    inst = RepresentationInstance.from_quiver(quiver, v, w)
    tensor = inst.moment_tensor()
    action = inst.action_matrices()
    # <mu(e_a, e_b), E_c> = <rho(E_c) e_a, e_b>
    assert np.array_equal(tensor, np.transpose(action, (2, 1, 0)))


@pytest.mark.parametrize(
    "quiver, w",
    [(A2, (1, 1)), (A2, (1, 2)), (A3, (1, 0, 1)), (A3, (1, 1, 1)), (TWO_CYCLE, (1, 1)), (KRONECKER, (1, 1)), (EDGELESS, (3,))],
)
def test_unit_vector_matches_toric_formula(quiver, w):
    v = (1,) * quiver.vertices
    inst = ToricInstance(unit_toric_matrix(quiver, w))
    if not generic_level(inst, v):
        pytest.skip("the unit level is not generic for this arrangement")
    assert count(quiver, v, w) == toric_count_polynomial(inst)
