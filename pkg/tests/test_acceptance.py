"""Acceptance criteria, one test per criterion.

Each test records PASS or FAIL in the ``acceptance criteria`` section of the
pytest terminal summary.  Run alone with ``pytest tests/test_acceptance.py``
or ``python tests/test_acceptance.py``.
"""

import functools
import random
import sys

import pytest
from hypothesis import assume, given, settings

import conftest
from kirbycalc import intmat
from kirbycalc.alexander import alexander_polynomial, fox_milnor_test, knot_determinant
from kirbycalc.forms import (E8_MATRIX, SymmetricForm, form_invariants, handle_slide, inertia,
                             obstruction_report, orthogonal_complement, standard_form,
                             verify_congruence)
from kirbycalc.handles import HandleComplex, homology_summary
from kirbycalc.laurent import LaurentPoly
from kirbycalc.legendrian import (OrientedFront, adjunction_bound, classical_invariants,
                                  front_to_pd, slice_bennequin_bound, stabilize, stein_trace,
                                  thom_bound)
from kirbycalc.linkdiag import connected_sum, crossing_signs, linking_matrix, linking_number, parse_pd
from knots import (ONE_HANDLE_COMPLEXES, FIGURE_EIGHT_FRONT, KNOT_942_PD, KNOT_TABLE, PRETZEL_FRONT,
                   TREFOIL_FRONT, TREFOIL_PD, linking_example, table_knot)
from oracles import float_inertia, goeritz_determinant, kauffman_jones
from strategies import int_matrices, sym_matrices
from test_legendrian import fronts


def criterion(n, text, part=None):
    """Record the outcome of criterion ``n``; split criteria AND their parts."""
    def wrap(f):
        @functools.wraps(f)
        def run(*args, **kwargs):
            ok = False
            try:
                f(*args, **kwargs)
                ok = True
            finally:
                prev = conftest.ACCEPTANCE.get(n, (True, text))
                label = text if ok or part is None else f"{text} [failed: {part}]"
                conftest.ACCEPTANCE[n] = (prev[0] and ok, label if not ok else prev[1])
        return run
    return wrap


def jones(d):
    return kauffman_jones([x.arcs for x in d.crossings], crossing_signs(d)[1])


@criterion(1, "linking numbers 2, 0, 0 and linking matrix [[6,2,0],[2,0,0],[0,0,-1]]")
def test_criterion_01_linking():
    fl = linking_example()
    d = fl.diagram
    assert (linking_number(d, 0, 1), linking_number(d, 0, 2), linking_number(d, 1, 2)) == (2, 0, 0)
    assert linking_matrix(fl).tolist() == [[6, 2, 0], [2, 0, 0], [0, 0, -1]]


@criterion(2, "form invariants det 4, b+ 1, b- 2, sigma -1, odd, nondegenerate, not unimodular")
def test_criterion_02_form_invariants():
    inv = form_invariants(linking_matrix(linking_example()))
    assert (inv.det, inv.b_plus, inv.b_minus, inv.signature) == (4, 1, 2, -1)
    assert inv.parity == "odd" and inv.nondegenerate and not inv.unimodular


@criterion(3, "E8: det 1, sigma 8, even, positive-definite, Rohlin flagged, mu 1")
def test_criterion_03_e8():
    Q = SymmetricForm(E8_MATRIX)
    inv = form_invariants(Q)
    assert (inv.det, inv.signature, inv.parity, inv.definiteness) == (1, 8, "even", "positive-definite")
    rep = obstruction_report(Q)
    assert rep.sigma_mod_16 == 8 and rep.rohlin_smooth_ok is False and rep.mu == 1


@criterion(4, "slides take [[0,1],[1,n]] to [[0,1],[1,n mod 2]] for n in -4..5, congruence verified")
def test_criterion_04_slide_parity():
    for n in range(-4, 6):
        start = SymmetricForm([[0, 1], [1, n]])
        Q, A = start, intmat.identity(2)
        eps = -1 if n > 0 else 1
        for _ in range(abs(n - n % 2) // 2):
            Q, S = handle_slide(Q, 1, 0, eps)
            A = intmat.matmul(A, S)
        assert Q.tolist() == [[0, 1], [1, n % 2]]
        assert verify_congruence(start, Q, A)


@criterion(5, "handle complexes give (H1, H2) = (Z/2, 0), (Z^2, Z), (Z, Z), (0, 0)")
def test_criterion_05_homology_table():
    got = []
    for doc in ONE_HANDLE_COMPLEXES:
        h = homology_summary(HandleComplex.from_json(doc))
        got.append((h.h1_str(), h.h2_rank))
    assert got == [("Z/2", 0), ("Z^2", 1), ("Z", 1), ("0", 0)]


@criterion(6, "complement of (3,1^8) in <1>+8<-1>: rank 8, even, |det| 1, sigma -8")
def test_criterion_06_blow_down():
    G, _ = orthogonal_complement(standard_form("diag", [1] + [-1] * 8), [3] + [1] * 8)
    inv = form_invariants(G)
    assert (inv.rank, inv.parity, abs(inv.det), inv.signature) == (8, "even", 1, -8)


@criterion(7, "trefoil t-1+t^-1 det 3 not slice; unknot 1; 9_42 det 7 matching Goeritz")
def test_criterion_07_alexander():
    p = alexander_polynomial(parse_pd(TREFOIL_PD).diagram)
    assert str(p) == "t - 1 + t^-1" and knot_determinant(p) == 3
    rep = fox_milnor_test(p)
    assert not rep.det_square and rep.not_slice
    assert alexander_polynomial(parse_pd("", components=1).diagram) == LaurentPoly({0: 1})
    d = parse_pd(KNOT_942_PD).diagram
    assert goeritz_determinant([x.arcs for x in d.crossings]) == 7
    assert knot_determinant(alexander_polynomial(d)) == 7


@criterion(8, "Alexander polynomial multiplicative on 20 random connected sums")
def test_criterion_08_multiplicativity():
    rng = random.Random(8)
    names = sorted(KNOT_TABLE)
    for _ in range(20):
        a, b = rng.choice(names), rng.choice(names)
        ka, kb = table_knot(a), table_knot(b)
        assert alexander_polynomial(connected_sum(ka, kb)) == \
            alexander_polynomial(ka) * alexander_polynomial(kb)


@criterion(9, "fronts: trefoil (1,0), figure-eight (-3,0), P(3,-5,-7) (1,0); g4 >= 1 bounds",
           part="trefoil and figure-eight")
def test_criterion_09_fronts():
    tre, fig8 = OrientedFront(TREFOIL_FRONT), OrientedFront(FIGURE_EIGHT_FRONT)
    assert jones(front_to_pd(tre)) == jones(table_knot("3_1"))
    assert jones(front_to_pd(fig8)) == jones(table_knot("4_1"))
    assert (classical_invariants(tre).tb, classical_invariants(tre).rot) == (1, 0)
    assert (classical_invariants(fig8).tb, classical_invariants(fig8).rot) == (-3, 0)
    assert slice_bennequin_bound(tre).bound == 1


@pytest.mark.xfail(strict=True, reason="no tb = 1 front of P(3,-5,-7) is encoded; the "
                   "pretzel-box front has tb = -6 (see decisions ledger)")
@criterion(9, "fronts: trefoil (1,0), figure-eight (-3,0), P(3,-5,-7) (1,0); g4 >= 1 bounds",
           part="P(3,-5,-7) front with tb 1")
def test_criterion_09_pretzel():
    f = OrientedFront(PRETZEL_FRONT)
    assert alexander_polynomial(front_to_pd(f)) == LaurentPoly({0: 1})
    inv = classical_invariants(f)
    assert (inv.tb, inv.rot) == (1, 0)
    assert slice_bennequin_bound(f).bound == 1


@settings(max_examples=200, deadline=None, derandomize=True)
@given(fronts())
def _stabilization_property(f):
    for c in range(f.n_components):
        for sign in (1, -1):
            a = classical_invariants(f, c)
            b = classical_invariants(stabilize(f, c, sign), c)
            assert (b.tb - a.tb, b.rot - a.rot) == (-1, sign)


@criterion(10, "stabilization moves (tb, rot) by (-1, sign) on 200 random fronts")
def test_criterion_10_stabilization():
    _stabilization_property()


@criterion(11, "Stein trefoil trace [0], c1 [0], adjunction bound 1; Thom 0, 1, 10 for d = 2, 3, 6")
def test_criterion_11_adjunction():
    t = stein_trace(OrientedFront(TREFOIL_FRONT))
    assert t.form.tolist() == [[0]] and list(t.c1) == [0]
    assert adjunction_bound(t, [1]).bound == 1
    assert [thom_bound(d).bound for d in (2, 3, 6)] == [0, 1, 10]


@settings(max_examples=500, deadline=None, derandomize=True)
@given(sym_matrices())
def _inertia_property(M):
    expected = float_inertia(M)
    assume(expected is not None)
    assert inertia(SymmetricForm(M)) == expected


@settings(max_examples=500, deadline=None, derandomize=True)
@given(int_matrices)
def _snf_property(M):
    S, U, V = intmat.smith_normal_form(M)
    assert intmat.matmul(intmat.matmul(U, M), V) == S
    assert intmat.is_unimodular(U) and intmat.is_unimodular(V)
    d = [S[i][i] for i in range(min(len(S), len(S[0])))]
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)
    assert all(x >= 0 for x in d)
    assert all((y == 0) if x == 0 else (y % x == 0) for x, y in zip(d, d[1:]))


@criterion(12, "exact inertia matches eigenvalues (500) and SNF contract holds (500)")
def test_criterion_12_inertia_and_snf():
    _inertia_property()
    _snf_property()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
