"""Tests for fusion systems: construction, quotients, nilpotency."""

import pytest

from blockfusion.brauer_pairs import BlockContext, maximal_pairs
from blockfusion.errors import BaseMismatch, NotStronglyClosed
from blockfusion.fusion import (
    block_fusion,
    is_nilpotent,
    is_subsystem,
    quotient_fusion,
    quotient_morphism_check,
    strongly_closed_subgroups,
    sylow_fusion,
    systems_equal,
    trivial_fusion,
)
from blockfusion.groups import (
    GroupHom,
    Subgroup,
    cyclic,
    dihedral,
    direct_product,
    named_group,
    perm_from_cycles,
    quotient,
    sylow_subgroup,
    symmetric,
)


def fusion_s4():
    G = symmetric(4)
    return G, sylow_fusion(G, sylow_subgroup(G, 2))


def test_sylow_fusion_inner_case():
    # F_P(P): morphisms are conjugations within P
    D8 = dihedral(8)
    F = trivial_fusion(D8)
    F.validate()
    full = F.full_group()
    assert len(F.aut(full)) == D8.order // 2  # inner automorphisms D8/Z


def test_sylow_fusion_s4_aut_of_klein():
    G, F = fusion_s4()
    V = next(S for S in F.subgroups if S.order == 4
             and all(x.order() <= 2 for x in S.elements)
             and S.is_normal_in(G))
    assert len(F.aut(V)) == 6
    F.validate()


def test_sylow_fusion_of_direct_product_is_inner():
    # G = P x C3 at p = 2: fusion collapses to F_P(P)
    P = dihedral(8)
    G = direct_product(P, cyclic(3))
    S = sylow_subgroup(G, 2)
    F = sylow_fusion(G, S)
    T = trivial_fusion(S.as_group())
    assert systems_equal(F, T)


def test_block_fusion_equals_sylow_for_s4_principal():
    G = symmetric(4)
    ctx = BlockContext(G, 2)
    b = ctx.principal_block()
    rep, _, _ = maximal_pairs(ctx, b)
    Fb = block_fusion(G, b, rep)
    Fs = sylow_fusion(G, sylow_subgroup(G, 2), base=Fb.base)
    assert systems_equal(Fb, Fs)


def test_block_fusion_p_group():
    D8 = dihedral(8)
    ctx = BlockContext(D8, 2)
    rep, _, _ = maximal_pairs(ctx, ctx.principal_block())
    F = block_fusion(D8, ctx.principal_block(), rep)
    assert systems_equal(F, trivial_fusion(F.base))


def test_block_fusion_nilpotent_product_block():
    # block of k(P x C3) at p = 2 is nilpotent: fusion is inner
    P = dihedral(8)
    G = direct_product(P, cyclic(3))
    ctx = BlockContext(G, 2)
    b = ctx.principal_block()
    rep, _, _ = maximal_pairs(ctx, b)
    F = block_fusion(G, b, rep)
    assert is_nilpotent(F, cross_check=True)


def test_block_fusion_is_subsystem_of_sylow():
    G = symmetric(3)
    ctx = BlockContext(G, 2)
    b = ctx.principal_block()
    rep, _, _ = maximal_pairs(ctx, b)
    F = block_fusion(G, b, rep)
    Fs = sylow_fusion(G, sylow_subgroup(G, 2), base=F.base)
    assert is_subsystem(F, Fs)


def test_strongly_closed():
    G, F = fusion_s4()
    orders = sorted(S.order for S in strongly_closed_subgroups(F))
    assert orders == [1, 4, 8]
    # in F_P(P) the strongly closed subgroups are exactly the normal ones
    D8 = dihedral(8)
    T = trivial_fusion(D8)
    normal = [S for S in T.subgroups if S.is_normal_in(D8)]
    assert strongly_closed_subgroups(T) == normal
    assert len(normal) == 6
    # the full group is always strongly closed
    assert T.subgroups[-1] in strongly_closed_subgroups(T)


def test_quotient_fusion_full_group():
    D8 = dihedral(8)
    T = trivial_fusion(D8)
    Q = quotient_fusion(T, T.full_group())
    assert Q.base.order == 1
    assert Q.morphism_count() == 1


def test_quotient_fusion_to_c2():
    # quotient of F_D8(S4) by the normal Klein four lives on C2
    G, F = fusion_s4()
    V = next(S for S in strongly_closed_subgroups(F) if S.order == 4)
    Q = quotient_fusion(F, V)
    assert Q.base.order == 2
    assert len(Q.subgroups) == 2
    Q.validate()


def test_quotient_fusion_d16_to_d8():
    D16 = dihedral(16)
    a = D16.generators[0]
    T16 = trivial_fusion(D16)
    S = next(s for s in T16.subgroups
             if s.element_set == Subgroup(D16, (a ** 4,)).element_set)
    Q = quotient_fusion(T16, S)
    D8 = dihedral(8)
    QD, pi = quotient(D16, S)
    iso = GroupHom(QD, D8, list(D8.generators))
    assert systems_equal(Q.transport(iso), trivial_fusion(D8))


def test_quotient_fusion_requires_strongly_closed():
    G, F = fusion_s4()
    nonclosed = next(S for S in F.subgroups if S.order == 2
                     and S not in strongly_closed_subgroups(F))
    with pytest.raises(NotStronglyClosed):
        quotient_fusion(F, nonclosed)


def test_quotient_morphism_check():
    # trivial S: lifts are the morphisms themselves
    G, F = fusion_s4()
    S1 = next(S for S in F.subgroups if S.order == 1)
    rep = quotient_morphism_check(F, S1)
    assert rep["ok"]
    # the substantive case: S = normal Klein four in F_D8(S4)
    V = next(S for S in strongly_closed_subgroups(F) if S.order == 4)
    rep = quotient_morphism_check(F, V)
    assert rep["ok"] and rep["checked"] > 0
    # inner systems: conjugations extend
    T = trivial_fusion(dihedral(8))
    Z = next(S for S in strongly_closed_subgroups(T) if S.order == 2)
    assert quotient_morphism_check(T, Z)["ok"]


def test_nilpotency_detector():
    for name in ("C4", "D8", "D16", "Q16"):
        P = named_group(name)
        assert is_nilpotent(trivial_fusion(P), cross_check=True)
    G, F = fusion_s4()
    assert not is_nilpotent(F, cross_check=True)
    S3 = symmetric(3)
    F3 = sylow_fusion(S3, sylow_subgroup(S3, 3))
    assert not is_nilpotent(F3, cross_check=True)
    # Aut_{F}(C3) has order 2 at p = 3
    C3 = next(S for S in F3.subgroups if S.order == 3)
    assert len(F3.aut(C3)) == 2


def test_aut_group_as_permutation_group():
    G, F = fusion_s4()
    V = next(S for S in F.subgroups if S.order == 4
             and all(x.order() <= 2 for x in S.elements)
             and S.is_normal_in(G))
    A = F.aut_group(V)
    assert A.order == 6
    assert not A.is_abelian()  # S3 on the three involutions


def test_is_subsystem_and_base_mismatch():
    D8 = dihedral(8)
    T = trivial_fusion(D8)
    G = symmetric(4)
    F = sylow_fusion(G, sylow_subgroup(G, 2))
    assert is_subsystem(T, T)
    with pytest.raises(BaseMismatch):
        is_subsystem(T, F)


def test_iterated_quotients_agree():
    # (F/S1)/(S2/S1) matches F/S2 on the D16 tower
    D16 = dihedral(16)
    a = D16.generators[0]
    T = trivial_fusion(D16)
    S1 = next(s for s in T.subgroups
              if s.element_set == Subgroup(D16, (a ** 4,)).element_set)
    S2 = next(s for s in T.subgroups
              if s.element_set == Subgroup(D16, (a ** 2,)).element_set)
    Q1 = quotient_fusion(T, S1)
    S21 = next(s for s in Q1.subgroups
               if s.element_set ==
               frozenset(quotient(D16, S1)[1](x) for x in S2.elements))
    Q12 = quotient_fusion(Q1, S21)
    Q2 = quotient_fusion(T, S2)
    # compare through the canonical isomorphism of the two base quotients
    QD1, pi1 = quotient(D16, S1)
    QD12, pi12 = quotient(QD1, S21)
    QD2, pi2 = quotient(D16, S2)
    iso = GroupHom(QD12, QD2, [pi2(g) for g in D16.generators])
    assert systems_equal(Q12.transport(iso), Q2)


def test_fusion_morphism_quotient():
    # the natural morphism F -> F/S exists and verifies both conditions
    from blockfusion.fusion import FusionMorphism, quotient_fusion_morphism

    G, F = fusion_s4()
    V = next(S for S in strongly_closed_subgroups(F) if S.order == 4)
    Fq, mor = quotient_fusion_morphism(F, V)
    assert mor.source is F and mor.target is Fq
    # applying Phi to an inner morphism gives an inner morphism downstairs
    R = F.subgroups[-1]
    graph = next(iter(F.aut(R)))
    image = mor.apply(R, graph)
    assert image in Fq.aut(Fq.subgroups[-1])
    # inner system: quotient morphism by any strongly closed subgroup
    T = trivial_fusion(dihedral(16))
    for S in strongly_closed_subgroups(T):
        quotient_fusion_morphism(T, S)


def test_fusion_morphism_rejects_non_descending():
    # no morphism exists from F_D16(PGL(2,7)) along the natural epi to D8:
    # the centre of D16 fuses to reflections
    from blockfusion.errors import LiftNotFound
    from blockfusion.fusion import FusionMorphism
    from blockfusion.groups import GroupHom, pgl_2_7
    from blockfusion.tower import descent_fusion_system, dihedral_descent_tower

    ft = dihedral_descent_tower(pgl_2_7())
    top = ft.systems[1]
    epi = ft.epis[0]
    bottom = ft.systems[0]
    with pytest.raises(LiftNotFound):
        FusionMorphism(top, bottom, epi)


def test_fusion_serialize():
    F = trivial_fusion(dihedral(8))
    data = F.serialize()
    assert data["base_order"] == 8
    assert len(data["subgroups"]) == 10
    assert data["provenance"] == "sylow"
    import json

    json.dumps(data)  # canonical and JSON-serializable
