import itertools

import pytest

from gradlie.forms import (
    Bicharacter,
    SignMap,
    abstract_basis,
    alternating_bicharacters_elem2,
    alternating_bicharacters_general,
    quadratic_forms_with_polar,
    radical,
)
from gradlie.gda import (
    BasisError,
    DescriptorError,
    GdaDescriptor,
    build_basis,
    derive_eta,
    full_eta,
    ungraded_class,
    validate_descriptor,
)
from gradlie.groups import Subgroup, group_from_invariants, subgroup_generated
from gradlie.scalars import UnitRoot


def trivial_R():
    G = group_from_invariants([])
    T = Subgroup.full(G)
    return GdaDescriptor.case1("R", T, SignMap.constant(T.elements, 1))


def pauli_descriptor(signs=(1, 1, -1)):
    G = group_from_invariants([2, 2])
    T = Subgroup.full(G)
    table = {(0, 0): 1, (1, 0): signs[0], (0, 1): signs[1], (1, 1): signs[2]}
    return GdaDescriptor.case1("R", T, SignMap(T.elements, table))


def quaternion_descriptor():
    return pauli_descriptor((-1, -1, -1))


def test_validate_trivial():
    assert validate_descriptor(trivial_R()).ok


def test_validate_rejects_non_elem2():
    G = group_from_invariants([4])
    T = Subgroup.full(G)
    mu = SignMap.constant(T.elements, 1)
    with pytest.raises(Exception):
        d = GdaDescriptor.case1("R", T, mu)
        assert not validate_descriptor(d).ok


def test_validate_case2_needs_order2_f():
    G = group_from_invariants([2, 2, 2])
    T = Subgroup.full(G)
    basis = abstract_basis(T)
    betas = [b for b in alternating_bicharacters_elem2(T) if radical(b).order == 2]
    beta = betas[0]
    f = [t for t in radical(beta) if not t.is_identity()][0]
    for mu in quadratic_forms_with_polar(T, beta):
        d = GdaDescriptor.case2("R", T, f, mu)
        rep = validate_descriptor(d)
        assert rep.ok == (mu(f) == -1)
    bad = GdaDescriptor.case2("R", T, G.identity(), quadratic_forms_with_polar(T, beta)[0])
    assert not validate_descriptor(bad).ok


def test_pauli_basis_table():
    d = pauli_descriptor()
    b = build_basis(d, delta=1)
    # the deterministic symplectic pick orders the generators lexicographically:
    # first generator a = [0,1], partner b = [1,0]
    a, bb = b.extras["gens"][0], b.extras["gens"][1]
    ab = a * bb
    assert b.lam_root(a, bb).as_sign() == 1
    assert b.lam_root(bb, a).as_sign() == -1
    assert b.lam_root(a, a).as_sign() == 1
    assert b.lam_root(bb, bb).as_sign() == 1
    assert b.lam_root(ab, ab).as_sign() == -1
    assert b.beta_full(a, bb).as_sign() == -1


def test_trivial_basis():
    b = build_basis(trivial_R(), delta=1)
    e = trivial_R().ambient.identity()
    assert b.lam_root(e, e).is_one()


def test_eta_is_good_invariant():
    # eta(s t^2) = eta(s) across descriptors (vacuous for elementary 2-groups,
    # checked for the central-complex case below through eta = 1)
    d = pauli_descriptor()
    eta = derive_eta(d, 1)
    for s in d.T:
        for t in d.T:
            assert eta(s * t * t) == eta(s)


def test_all_bases_elem2_sweep():
    # every valid case-1/2/4 descriptor over T of order <= 8 builds a coherent table
    for factors in ([2], [2, 2], [2, 2, 2]):
        G = group_from_invariants(factors)
        T = Subgroup.full(G)
        for beta in alternating_bicharacters_elem2(T):
            rad = radical(beta)
            for mu in quadratic_forms_with_polar(T, beta):
                if rad.order == 1:
                    for delta0 in ("R", "H"):
                        d = GdaDescriptor.case1(delta0, T, mu)
                        assert validate_descriptor(d).ok
                        for delta in (1, -1):
                            build_basis(d, delta=delta)
                elif rad.order == 2:
                    f = [t for t in rad if not t.is_identity()][0]
                    if mu(f) == -1:
                        d = GdaDescriptor.case2("R", T, f, mu)
                        assert validate_descriptor(d).ok
                        build_basis(d, delta=1)
                    else:
                        for eta in quadratic_forms_with_polar(T, beta):
                            if eta(f) == -1:
                                d = GdaDescriptor.case4("R", T, f, mu, eta)
                                assert validate_descriptor(d).ok
                                build_basis(d, delta=1)


def complex_noncentral_descriptor(mu_u0=1):
    # D_e = C inside M_2(R) or H: T = Z2 = {e, u}, K = {e}, mu(u) = +-1
    G = group_from_invariants([2])
    T = Subgroup.full(G)
    K = subgroup_generated(G, [])
    u = G.element([1])
    mu = SignMap([u], {u.residues: mu_u0})
    return GdaDescriptor.case1("C", T, mu, K=K)


def big_complex_case1():
    # T = Z2^3, K = Z2^2 with nondegenerate beta on K
    G = group_from_invariants([2, 2, 2])
    T = Subgroup.full(G)
    K = subgroup_generated(G, [G.element([1, 0, 0]), G.element([0, 1, 0])])
    comp = sorted(t for t in T if t not in K)
    u0 = comp[0]
    # nice map: mu(u0 t) = mu(u0) q(t) for a quadratic form q on K with
    # nondegenerate polar; pick q = (+,+,-) on (a, b, ab)
    q = {(0, 0, 0): 1, (1, 0, 0): 1, (0, 1, 0): 1, (1, 1, 0): -1}
    table = {}
    for t in K:
        table[(u0 * t).residues] = q[t.residues]
    mu = SignMap(comp, table)
    return GdaDescriptor.case1("C", T, mu, K=K)


def test_complex_noncentral_case1():
    for d in [
        complex_noncentral_descriptor(1),
        complex_noncentral_descriptor(-1),
        big_complex_case1(),
    ]:
        rep = validate_descriptor(d)
        assert rep.ok, rep.failures()
        for delta in (1, -1):
            b = build_basis(d, delta=delta)
            # unital table: squares on K are +1; paper scaling carries delta
            for t in d.K:
                assert b.square_sign(t) == 1
                assert b.paper_eta(t) == delta
            for u in d.complement():
                assert b.square_sign(u) == d.mu(u)
                assert b.paper_eta(u) == b.eta(u)


def test_complex_case2():
    # T = Z2^2 with K = <f>: D = M_2(C)-type descriptor
    G = group_from_invariants([2, 2])
    T = Subgroup.full(G)
    K = subgroup_generated(G, [G.element([0, 1])])
    f = G.element([0, 1])
    comp = sorted(t for t in T if t not in K)
    # mu_u(f) = mu(u f) mu(u) must be -1
    mu = SignMap(comp, {comp[0].residues: 1, comp[1].residues: -1})
    d = GdaDescriptor.case2("C", T, f, mu, K=K)
    rep = validate_descriptor(d)
    assert rep.ok, rep.failures()
    b = build_basis(d, delta=1)
    # distinguished extension has X_f^2 = +1, and X_f anticommutes with the
    # complement, so the central degree-f element is i X_f with square -1
    assert b.square_sign(f) == 1
    for u in comp:
        assert b.beta_full(u, f).as_sign() == -1


def test_ungraded_class_table():
    # section 4.2 ell-formulas on small descriptors
    assert ungraded_class(pauli_descriptor()) == ("R", 2, False)
    assert ungraded_class(quaternion_descriptor()) == ("H", 1, False)
    assert ungraded_class(trivial_R()) == ("R", 1, False)

    G = group_from_invariants([2, 2])
    T = Subgroup.full(G)
    mu = SignMap.constant(T.elements, 1)  # trivial polar, rad = T: invalid case1
    d = GdaDescriptor.case1("R", T, mu)
    assert not validate_descriptor(d).ok

    d = complex_noncentral_descriptor(mu_u0=1)
    assert ungraded_class(d) == ("R", 2, False)
    dneg = complex_noncentral_descriptor(mu_u0=-1)
    assert ungraded_class(dneg) == ("H", 1, False)


def test_case3_bases():
    # central-complex: T in {e}, Z2^2, Z3^2 with nondegenerate beta
    G0 = group_from_invariants([])
    d0 = GdaDescriptor.case3(Subgroup.full(G0), Bicharacter.trivial(Subgroup.full(G0)))
    assert validate_descriptor(d0).ok
    build_basis(d0)
    assert ungraded_class(d0) == ("C", 1, False)

    for factors in ([2, 2], [3, 3]):
        G = group_from_invariants(factors)
        T = Subgroup.full(G)
        betas = [b for b in alternating_bicharacters_general(T) if radical(b).order == 1]
        assert betas
        for beta in betas:
            d = GdaDescriptor.case3(T, beta)
            rep = validate_descriptor(d)
            assert rep.ok, rep.failures()
            b = build_basis(d)
            # commutation matches beta everywhere
            for s in T:
                for t in T:
                    assert b.beta_full(s, t) == beta(s, t).rescaled(b.modulus)
    assert ungraded_class(GdaDescriptor.case3(T, betas[0])) == ("C", 3, False)


def test_case3_sign_flip_keeps_invariants():
    G = group_from_invariants([3, 3])
    T = Subgroup.full(G)
    beta = [b for b in alternating_bicharacters_general(T) if radical(b).order == 1][0]
    d = GdaDescriptor.case3(T, beta)
    b0 = build_basis(d)
    classes = sorted(set(b0.extras["class_of"].values()))
    flippable = [c for c in classes if c != min(classes)]
    if flippable:
        flips = {flippable[0]: -1}
        build_basis(d, sign_flips=flips)  # invariants re-checked inside


def test_sign_factor_is_pm1():
    d = pauli_descriptor()
    b = build_basis(d, 1)
    for t in d.T:
        for u in d.T:
            assert b.sign_factor(t, u) in (1, -1)
    G = group_from_invariants([3, 3])
    T = Subgroup.full(G)
    beta = [x for x in alternating_bicharacters_general(T) if radical(x).order == 1][0]
    b3 = build_basis(GdaDescriptor.case3(T, beta))
    for t in T:
        for u in T:
            assert b3.sign_factor(t, u) in (1, -1)


def test_derive_eta_case4_rejected():
    G = group_from_invariants([2])
    T = Subgroup.full(G)
    f = G.element([1])
    mu = SignMap.constant(T.elements, 1)
    eta = SignMap(T.elements, {(0,): 1, (1,): -1})
    d = GdaDescriptor.case4("R", T, f, mu, eta)
    assert validate_descriptor(d).ok
    with pytest.raises(DescriptorError):
        derive_eta(d, 1)
    assert full_eta(d, 1) == eta
    b = build_basis(d, 1)
    assert b.eta(f) == -1
