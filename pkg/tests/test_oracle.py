from hypothesis import given, settings

from monores import QQ, Field, full_betti, strand_betti, taylor
from monores.ideal import MonomialIdeal
from monores.oracle import _strand_matrix, rank
from monores.taylor import group_by_mdeg

from conftest import XYZ, ideal, mono
from lattice_oracle import lattice_betti
from test_ideal import ideals

FIELDS = (QQ, Field(2), Field(3), Field(32003))


def test_strand_betti_examples():
    # strand at xyz: V2 = three pairs, V3 = the triple; D3 has unit entries, rank 1: 3 - 1 = 2
    assert strand_betti(ideal("x*y", "y*z", "x*z"), mono("x*y*z")) == {2: 2}
    assert strand_betti(ideal("x", "y"), mono("x*y")) == {2: 1}
    for M in (ideal("x", "y"), ideal("x^2*y", "z^3"), ideal("x*y", "y*z", "x*z")):
        assert strand_betti(M, XYZ.one()) == {0: 1}
    assert strand_betti(ideal("x^2", "x*y"), mono("x^3")) == {}


def test_strand_of_zero_ideal():
    Z = MonomialIdeal.zero(XYZ)
    assert strand_betti(Z, XYZ.one()) == {0: 1}
    assert full_betti(Z).total == {0: 1} and full_betti(Z).pd == 0


def test_full_betti_examples():
    for F in FIELDS:
        assert full_betti(ideal("x", "y"), F).total == {0: 1, 1: 2, 2: 1}
        b = full_betti(ideal("x^2", "x*y", "y^2"), F)
        assert b.total == {0: 1, 1: 3, 2: 2} and b.pd == 2
        assert full_betti(ideal("x^3*y"), F).total == {0: 1, 1: 1}
        assert full_betti(ideal("x^3*y"), F).field == str(F)


def test_parallel_strands_match_serial():
    M = ideal("x^2*y", "x*y^2", "x*y*z", "z^3", "y^2*z", "x^2*z")
    assert full_betti(M, QQ, workers=3) == full_betti(M, QQ)


@settings(max_examples=40, deadline=None)
@given(ideals(n=3, max_exp=2, q_max=6))
def test_strand_rank_inequality(M):
    C = taylor(M)
    for m, strand in group_by_mdeg(C).items():
        ranks = [0] * (len(strand) + 1)
        for s in range(1, len(strand)):
            if strand[s] and strand[s - 1]:
                ranks[s] = rank(_strand_matrix(C, s, strand[s], strand[s - 1]), C.field)
        for i in range(len(strand)):
            assert ranks[i] + ranks[i + 1] <= len(strand[i])


@settings(max_examples=40, deadline=None)
@given(ideals(n=3, max_exp=2, q_max=5))
def test_oracle_matches_lattice_homology(M):
    table = full_betti(M)
    assert {(i, m.exponents): b for (i, m), b in table.multigraded.items()} == lattice_betti(M)


@settings(max_examples=40, deadline=None)
@given(ideals(n=4, max_exp=1, q_max=6))
def test_squarefree_degree_sanity_bound(M):
    # along a chain degrees rise by at least one per step, starting at the minimum generator degree
    d = M.min_degree()
    for (i, m), b in full_betti(M).multigraded.items():
        if i >= 1:
            assert m.degree >= i + d - 1
