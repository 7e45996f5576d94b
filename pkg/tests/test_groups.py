from gradlie.groups import (
    FinAbGroup,
    GroupError,
    Subgroup,
    abelian_groups_of_order_at_most,
    all_subgroups,
    group_from_invariants,
    quotient_with_section,
    subgroup_generated,
    torsion_and_squares,
)

import pytest


def test_trivial_group():
    G = group_from_invariants([])
    assert G.order == 1
    assert list(G) == [G.identity()]


def test_klein_four():
    G = group_from_invariants([2, 2])
    assert G.order == 4
    assert all((g * g).is_identity() for g in G)


def test_smith_normalization():
    # [4, 2] normalizes to the invariant-factor chain [2, 4]
    G = group_from_invariants([4, 2])
    assert G.invariant_factors == (2, 4)
    assert G.order == 8
    assert group_from_invariants([6, 4]).invariant_factors == (2, 12)
    assert group_from_invariants([2, 3]).invariant_factors == (6,)


def test_bad_factor_rejected():
    with pytest.raises(GroupError):
        group_from_invariants([1, 2])
    with pytest.raises(GroupError):
        group_from_invariants([0])


def test_subgroup_generated():
    G = group_from_invariants([2, 2])
    t = subgroup_generated(G, [])
    assert t.order == 1
    a = G.element([1, 0])
    s = subgroup_generated(G, [a])
    assert s.order == 2 and a in s

    Z4 = group_from_invariants([4])
    sq = subgroup_generated(Z4, [Z4.element([2])])
    assert sorted(e.residues for e in sq) == [(0,), (2,)]


def test_torsion_and_squares():
    G = group_from_invariants([2, 2])
    g2, sq, theta = torsion_and_squares(G)
    assert g2.order == 4 and sq.order == 1 and len(theta) == 4

    Z4 = group_from_invariants([4])
    g2, sq, theta = torsion_and_squares(Z4)
    assert sorted(e.residues for e in g2) == [(0,), (2,)]
    assert sorted(e.residues for e in sq) == [(0,), (2,)]
    assert [e.residues for e in theta] == [(0,), (1,)]

    Z3 = group_from_invariants([3])
    g2, sq, theta = torsion_and_squares(Z3)
    assert g2.order == 1 and sq.order == 3 and len(theta) == 1
    # |G_[2]| * |G^[2]| = |G| on a sample of groups
    for G in abelian_groups_of_order_at_most(12):
        a, b, th = torsion_and_squares(G)
        assert a.order * b.order == G.order
        assert len(th) == G.order // b.order
        assert th[0].is_identity()


def test_quotient_with_section():
    G = group_from_invariants([2, 2])
    T = subgroup_generated(G, [G.element([1, 0])])
    Q = quotient_with_section(G, T)
    assert len(Q) == 2
    assert sorted(Q.keys) == [(0, 0), (0, 1)]
    for g in G:
        x = Q.pi(g)
        assert Q.pi(Q.xi(x)) == x
        assert Q.xi(x).inv() * g in T
    # trivial subgroup: quotient is G itself
    Q0 = quotient_with_section(G, subgroup_generated(G, []))
    assert len(Q0) == 4
    # full subgroup: single coset with representative e
    Q1 = quotient_with_section(G, Subgroup.full(G))
    assert len(Q1) == 1 and Q1.xi(Q1.keys[0]).is_identity()


def test_all_subgroups_counts():
    G = group_from_invariants([2, 2])
    assert len(all_subgroups(G)) == 5  # e, three Z2, G
    Z8 = group_from_invariants([8])
    assert len(all_subgroups(Z8)) == 4


def test_element_order():
    G = group_from_invariants([2, 4])
    assert G.element([1, 2]).order() == 2
    assert G.element([1, 1]).order() == 4
    assert G.identity().order() == 1
