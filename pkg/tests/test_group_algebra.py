"""Tests for group algebra centers, blocks, Brauer maps and defect groups."""

from itertools import product

import pytest

from blockfusion.errors import NonSplitField, NotInvariant, SupportOutsideCentralizer
from blockfusion.ffield import field
from blockfusion.group_algebra import (
    AlgebraElement,
    BlockIdempotent,
    blocks,
    block_dimension,
    brauer_map,
    center_basis,
    defect_group,
    is_primitive_in,
    normal_principal_check,
    orbit_sums_of_primitives,
    primitive_idempotents,
    principal_block,
    splitting_field,
    subalgebra_on_partition,
)
from blockfusion.groups import (
    Subgroup,
    centralizer,
    cyclic,
    dihedral,
    named_group,
    perm_from_cycles,
    quotient,
    sylow_subgroup,
    symmetric,
)


def exhaustive_idempotents(A):
    """Oracle: all solutions of e^2 = e by sweeping every element of A."""
    out = []
    for coords in product(range(A.field.q), repeat=A.dim):
        if A.mul_coords(coords, coords) == tuple(coords):
            out.append(tuple(coords))
    return out


def exhaustive_primitives(A):
    """Oracle: minimal nonzero idempotents under e <= f iff ef = e."""
    idems = [e for e in exhaustive_idempotents(A) if any(e)]
    prims = []
    for e in idems:
        proper_below = [f for f in idems
                        if f != e and A.mul_coords(e, f) == f]
        if not proper_below:
            prims.append(e)
    return sorted(prims)


def test_splitting_field_choices():
    assert splitting_field(symmetric(3), 2).q == 4
    assert splitting_field(cyclic(3), 2).q == 4
    assert splitting_field(dihedral(8), 2).q == 2
    assert splitting_field(named_group("A5"), 2).q == 16
    assert splitting_field(symmetric(3), 3).q == 3
    assert splitting_field(symmetric(4), 3).q == 9
    assert splitting_field(symmetric(4), 2, degree_override=3).q == 8


def test_center_dimensions():
    K = field(2, 2)
    assert center_basis(symmetric(3), K).dim == 3
    assert center_basis(cyclic(1), K).dim == 1
    assert center_basis(symmetric(4), field(2)).dim == 5


def test_primitive_idempotents_s3_vs_oracle():
    G = symmetric(3)
    K = splitting_field(G, 2)
    A = center_basis(G, K)
    prims = primitive_idempotents(A)
    assert len(prims) == 2
    assert sorted(b.coords for b in prims) == exhaustive_primitives(A)


def test_primitive_idempotents_s4_vs_oracle():
    G = symmetric(4)
    K = splitting_field(G, 2)
    A = center_basis(G, K)
    prims = primitive_idempotents(A)
    # S4 has a single 2-block: the exhaustive oracle over the 5-dim center
    # finds only 0 and 1
    assert sorted(b.coords for b in prims) == exhaustive_primitives(A)
    assert len(prims) == 1


def test_p_group_center_local():
    for G in (dihedral(8), dihedral(16), named_group("Q16")):
        K = splitting_field(G, 2)
        prims = primitive_idempotents(center_basis(G, K))
        assert len(prims) == 1
        assert prims[0].element == AlgebraElement.one(G, K)


def test_block_invariants_everywhere():
    K2 = splitting_field(named_group("A4"), 2)
    for name in ("S3", "A4", "C2xC3"):
        G = named_group(name)
        for p in (2, 3):
            K = splitting_field(G, p)
            bs = blocks(G, K)
            total = bs[0].element
            for b in bs[1:]:
                total = total + b.element
            assert total == AlgebraElement.one(G, K)
            for i, a in enumerate(bs):
                assert a.element.is_idempotent()
                assert all(a.element.conj(g) == a.element for g in G.generators)
                for b in bs[i + 1:]:
                    assert (a.element * b.element).is_zero()


def test_nonsplit_field_detected():
    # kC3 over GF(2) does not split: the center has a GF(4) residue field
    G = cyclic(3)
    with pytest.raises(NonSplitField):
        primitive_idempotents(center_basis(G, field(2)))


def test_splitting_stability_s3():
    G = symmetric(3)
    for p in (2, 3):
        K = splitting_field(G, p)
        K2 = field(K.p, 2 * K.m)
        assert len(blocks(G, K)) == len(primitive_idempotents(center_basis(G, K2)))


def test_principal_block_examples():
    # p-group: principal block is 1
    D8 = dihedral(8)
    K = splitting_field(D8, 2)
    assert principal_block(D8, K).element == AlgebraElement.one(D8, K)
    # kC3, p=2: principal = 1 + g + g^2
    C3 = cyclic(3)
    K3 = splitting_field(C3, 2)
    pb = principal_block(C3, K3)
    assert len(pb.element.support) == 3
    assert all(c == 1 for c in pb.element.support.values())
    # kS3, p=2: augmentation-1 block among the two
    S3 = symmetric(3)
    KS = splitting_field(S3, 2)
    assert principal_block(S3, KS).augmentation() == 1


def test_brauer_map_basics():
    G = symmetric(4)
    K = splitting_field(G, 2)
    b = principal_block(G, K)
    # Br_1 is the identity on Z(kG)
    assert brauer_map(G, G.trivial_subgroup(), G.trivial_subgroup(), b.element) \
        == b.element
    # Br_D of the principal block is nonzero for D the Sylow 2-subgroup
    D = sylow_subgroup(G, 2)
    assert not brauer_map(G, G.trivial_subgroup(), D, b.element).is_zero()


def test_brauer_map_kills_full_orbit():
    # a single full Q-orbit sum of p-length with support away from C_G(Q)
    G = symmetric(4)
    K = splitting_field(G, 2)
    Q = Subgroup(G, [perm_from_cycles(4, "(0 1)")])
    g = perm_from_cycles(4, "(0 2 1 3)")
    q = Q.small_gens()[0]
    orbit = AlgebraElement(G, K, {g: 1, g.conj(q): 1})
    assert g.conj(q) != g
    out = brauer_map(G, G.trivial_subgroup(), Q, orbit)
    CQ = centralizer(G, Q)
    assert g not in CQ.element_set
    assert out.is_zero()


def test_brauer_map_errors():
    G = symmetric(4)
    K = splitting_field(G, 2)
    D = sylow_subgroup(G, 2)
    x = AlgebraElement(G, K, {G.elements[3]: 1})
    with pytest.raises(NotInvariant):
        brauer_map(G, G.trivial_subgroup(), D, x)
    # support outside C_G(P) for P with small centralizer
    P = Subgroup(G, [perm_from_cycles(4, "(0 1)(2 3)")])
    CP = centralizer(G, P)
    outside = next(g for g in G.elements if g not in CP.element_set)
    z = AlgebraElement(G, K, {outside: 1})
    with pytest.raises(SupportOutsideCentralizer):
        brauer_map(G, P, P, z)


def test_defect_groups():
    # principal block of kS4 at p=2 has defect group D8 (the Sylow)
    G = symmetric(4)
    K = splitting_field(G, 2)
    D = defect_group(G, principal_block(G, K))
    assert D.order == 8
    # nonprincipal block of kS3 at p=2 has trivial defect
    S3 = symmetric(3)
    KS = splitting_field(S3, 2)
    other = [b for b in blocks(S3, KS) if b.augmentation() == 0][0]
    assert defect_group(S3, other).order == 1
    # blocks of a p-group have full defect
    D16 = dihedral(16)
    KD = splitting_field(D16, 2)
    assert defect_group(D16, principal_block(D16, KD)).order == 16


def test_defect_group_oracle_s4():
    # oracle: evaluate Br_Q over every 2-subgroup of the Sylow directly
    from blockfusion.groups import subgroups_of

    G = symmetric(4)
    K = splitting_field(G, 2)
    b = principal_block(G, K)
    S = sylow_subgroup(G, 2)
    best = 0
    for T in subgroups_of(S.as_group()):
        Q = Subgroup(G, T.small_gens())
        if not brauer_map(G, G.trivial_subgroup(), Q, b.element).is_zero():
            best = max(best, Q.order)
    assert best == defect_group(G, b).order


def test_defect_zero_criterion():
    # block has trivial defect iff dim kGb = (dim of its simple)^2;
    # oracle for the simple: explicit 2-dim representation of S3 over GF(4)
    G = symmetric(3)
    K = splitting_field(G, 2)
    b = [x for x in blocks(G, K) if x.augmentation() == 0][0]
    assert defect_group(G, b).order == 1
    dim = block_dimension(G, b)
    assert dim == 4
    # explicit 2-dim module: sum-zero subspace of k^3, basis e0+e1, e1+e2
    from blockfusion.ffield import Matrix

    def rep(perm):
        # matrix of the permutation action on the sum-zero basis
        cols = []
        for vec in ([1, 1, 0], [0, 1, 1]):
            img = [0, 0, 0]
            for i, c in enumerate(vec):
                img[perm(i)] = c
            # express img in the basis: img = a*(1,1,0) + b*(0,1,1)
            a, bb = img[0], img[2]
            assert (a ^ bb) == img[1] or K.add(a, bb) == img[1]
            cols.append([a, bb])
        return Matrix(K, [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]])

    for g in G.generators:
        for h in G.generators:
            assert rep(g * h).rows == rep(g).mul(rep(h)).rows
    # the defect-zero block acts as the identity on this simple
    acc = Matrix.zero(K, 2, 2)
    for g, c in b.element.support.items():
        m = rep(g)
        acc = Matrix(K, [[K.add(acc.rows[i][j], K.mul(c, m.rows[i][j]))
                          for j in range(2)] for i in range(2)])
    assert acc.rows == Matrix.identity(K, 2).rows
    assert dim == 2 * 2


def test_normal_principal_check_iso_case():
    G = symmetric(3)
    C3 = Subgroup(G, [perm_from_cycles(3, "(0 1 2)")])
    rep = normal_principal_check(G, C3, 2)
    assert rep["ok"] and rep["isomorphism"] and rep["dim_ideal"] == 2


def test_normal_principal_check_non_iso_case():
    G = symmetric(4)
    V = Subgroup(G, [perm_from_cycles(4, "(0 1)(2 3)"),
                     perm_from_cycles(4, "(0 2)(1 3)")])
    rep = normal_principal_check(G, V, 2)
    assert rep["ok"] and not rep["isomorphism"] and not rep["N_is_p_prime"]
    assert rep["dim_ideal"] == 24 and rep["quotient_order"] == 6


def test_normal_principal_check_trivial():
    G = symmetric(3)
    rep = normal_principal_check(G, G.trivial_subgroup(), 2)
    assert rep["ok"] and rep["isomorphism"]


def test_brauer_quotient_commutation():
    # nu . Br_Q = Br_{QN/N} . nu on Z(kC_G(P))^{C_{P,N} Q},
    # for (G, N, P <= Q) = (S4, V4, V4 <= D8)
    G = symmetric(4)
    K = splitting_field(G, 2)
    V = Subgroup(G, [perm_from_cycles(4, "(0 1)(2 3)"),
                     perm_from_cycles(4, "(0 2)(1 3)")])
    D = sylow_subgroup(G, 2)
    Q, hom = quotient(G, V)
    from blockfusion.tower import c_group

    CPN = c_group(G, V, V)
    # span of Z(kC_G(P))^{C_{P,N} Q}: orbit sums of C_G(P)-classes
    CP = centralizer(G, V)
    A = center_basis(CP.as_group(), K)
    acting = CPN.small_gens() + D.small_gens()
    for vec in A.basis:
        x = vec
        orbit = {x.key(): x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in acting:
                z = y.conj(g)
                if z.key() not in orbit:
                    orbit[z.key()] = z
                    frontier.append(z)
        total = None
        for z in orbit.values():
            total = z if total is None else total + z
        lhs = brauer_map(G, V, D, total).push(hom)
        DV = hom.image_of_subgroup(D)
        PV = hom.image_of_subgroup(V)
        rhs = brauer_map(Q, PV, DV, total.push(hom))
        assert lhs == rhs


def test_subalgebra_on_partition_and_primitivity():
    G = symmetric(3)
    K = splitting_field(G, 2)
    A = center_basis(G, K)
    # whole-basis singleton partition reproduces A's primitives
    B = subalgebra_on_partition(A, [[i] for i in range(A.dim)])
    assert [b.coords for b in primitive_idempotents(B)] == \
        [b.coords for b in primitive_idempotents(A)]
    prims = primitive_idempotents(A)
    for b in prims:
        assert is_primitive_in(b.element, A)
    total = prims[0].element + prims[1].element
    assert not is_primitive_in(total, A)


def test_orbit_sums_of_primitives():
    # C3 over GF(4) at p=2: an involution inverting C3 swaps the two
    # nonprincipal blocks; orbit sums are 1 orbit of 1 and 1 orbit of 2
    G = symmetric(3)
    K = splitting_field(G, 2)
    C3 = Subgroup(G, [perm_from_cycles(3, "(0 1 2)")])
    A = center_basis(C3.as_group(), K)
    prims = primitive_idempotents(A)
    assert len(prims) == 3
    flip = perm_from_cycles(3, "(0 1)")
    orbits, sums = orbit_sums_of_primitives(prims, (flip,))
    sizes = sorted(len(o) for o in orbits)
    assert sizes == [1, 2]
    for s in sums:
        assert (s * s) == s
