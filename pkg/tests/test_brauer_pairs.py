"""Tests for the Brauer-pair poset."""

import pytest

from blockfusion.brauer_pairs import (
    BlockContext,
    BrauerPair,
    leq,
    maximal_pairs,
    normal_leq,
    pair_conjugator,
    restrict_pair,
    verify_maximal,
)
from blockfusion.errors import NotMaximalPair, NotNormalIn, NotSubgroup
from blockfusion.groups import (
    Subgroup,
    dihedral,
    named_group,
    perm_from_cycles,
    sylow_subgroup,
    symmetric,
)


def s4_context():
    return BlockContext(symmetric(4), 2)


def test_block_pair_and_primitivity_guard():
    ctx = s4_context()
    b = ctx.principal_block()
    pair = ctx.block_pair(b)
    assert pair.P.order == 1
    # a non-primitive idempotent is rejected
    with pytest.raises(AssertionError):
        BrauerPair(ctx, ctx.group.trivial_subgroup(),
                   b.element + b.element)  # zero element


def test_normal_leq_reflexive_case():
    # (P,e) vs itself with P = Q: true iff e = f
    ctx = s4_context()
    G = ctx.group
    V = Subgroup(G, [perm_from_cycles(4, "(0 1)(2 3)"),
                     perm_from_cycles(4, "(0 2)(1 3)")])
    prims = ctx.centralizer_primitives(V)
    assert len(prims) == 1  # C_S4(V) = V, a 2-group: local center
    pair = BrauerPair(ctx, V, prims[0].element)
    assert normal_leq(pair, pair)


def test_normal_leq_specialization_at_trivial():
    # (1, b) <= (Q, f) iff Br_Q(b) f = f
    from blockfusion.group_algebra import brauer_map

    ctx = s4_context()
    G = ctx.group
    b = ctx.principal_block()
    D = sylow_subgroup(G, 2)
    f = ctx.centralizer_primitives(D)[0].element
    bottom = ctx.block_pair(b)
    top = BrauerPair(ctx, D, f)
    expected = brauer_map(G, G.trivial_subgroup(), D, b.element) * f == f
    assert normal_leq(bottom, top) == expected


def test_normal_leq_requires_normality():
    ctx = s4_context()
    G = ctx.group
    A = Subgroup(G, [perm_from_cycles(4, "(0 1)")])
    D = sylow_subgroup(G, 2)
    # A is not inside D's normalizer chain here: pick a non-normal pair
    B = Subgroup(G, [perm_from_cycles(4, "(0 2)")])
    pa = BrauerPair(ctx, A, ctx.centralizer_primitives(A)[0].element)
    pb = BrauerPair(ctx, B, ctx.centralizer_primitives(B)[0].element)
    with pytest.raises(NotNormalIn):
        normal_leq(pa, pb)


def test_v4_leq_d8_in_s4():
    # (V, e_V) <= (D8, e_D8) for the principal-block pairs
    ctx = s4_context()
    G = ctx.group
    V = Subgroup(G, [perm_from_cycles(4, "(0 1)(2 3)"),
                     perm_from_cycles(4, "(0 2)(1 3)")])
    D = sylow_subgroup(G, 2)
    eD = ctx.centralizer_primitives(D)[0].element
    top = BrauerPair(ctx, D, eD)
    eV = restrict_pair(top, V)
    assert normal_leq(eV, top)
    chain = leq(eV, top, exhaustive=True)
    assert chain is not None and len(chain) == 2


def test_leq_reflexive_and_block_partition():
    ctx = BlockContext(symmetric(3), 2)
    G = ctx.group
    bs = ctx.blocks()
    assert len(bs) == 2
    principal = ctx.principal_block()
    other = next(b for b in bs if b is not principal)
    P2 = sylow_subgroup(G, 2)
    top = BrauerPair(ctx, P2, ctx.centralizer_primitives(P2)[0].element)
    assert leq(top, top) is not None
    # pairs from different blocks are incomparable
    bottom_other = ctx.block_pair(other)
    bottom_principal = ctx.block_pair(principal)
    assert (leq(bottom_other, top) is None) != (leq(bottom_principal, top) is None)
    # (1, b) <= (D, e) for the maximal pair of block b
    rep, _, _ = maximal_pairs(ctx, principal)
    assert leq(ctx.block_pair(principal), rep, exhaustive=True) is not None


def test_restrict_pair_identity_and_pgroup():
    # restrict to P = Q gives f itself; p-groups restrict to (P, 1)
    D16 = dihedral(16)
    ctx = BlockContext(D16, 2)
    full = D16.full_subgroup()
    e = ctx.centralizer_primitives(full)[0].element
    top = BrauerPair(ctx, full, e)
    assert restrict_pair(top, full).e == e
    a = D16.generators[0]
    C4 = Subgroup(D16, (a ** 2,))
    low = restrict_pair(top, C4)
    from blockfusion.group_algebra import AlgebraElement

    assert low.e == AlgebraElement.one(D16, ctx.field)


def test_restrict_pair_to_trivial_gives_block():
    ctx = s4_context()
    D = sylow_subgroup(ctx.group, 2)
    top = BrauerPair(ctx, D, ctx.centralizer_primitives(D)[0].element)
    bottom = restrict_pair(top, ctx.group.trivial_subgroup())
    assert bottom.e == ctx.principal_block().element


def test_restrict_pair_transitivity():
    ctx = s4_context()
    G = ctx.group
    D = sylow_subgroup(G, 2)
    top = BrauerPair(ctx, D, ctx.centralizer_primitives(D)[0].element)
    V = Subgroup(G, [perm_from_cycles(4, "(0 1)(2 3)"),
                     perm_from_cycles(4, "(0 2)(1 3)")])
    Z = Subgroup(G, [perm_from_cycles(4, "(0 1)(2 3)")])
    via_V = restrict_pair(restrict_pair(top, V), Z)
    direct = restrict_pair(top, Z)
    assert via_V.e == direct.e


def test_restrict_pair_not_subgroup():
    ctx = s4_context()
    G = ctx.group
    D = sylow_subgroup(G, 2)
    top = BrauerPair(ctx, D, ctx.centralizer_primitives(D)[0].element)
    odd = Subgroup(G, [perm_from_cycles(4, "(0 1 2)")])
    with pytest.raises(NotSubgroup):
        restrict_pair(top, odd)


def test_g_equivariance_of_leq():
    ctx = s4_context()
    G = ctx.group
    D = sylow_subgroup(G, 2)
    top = BrauerPair(ctx, D, ctx.centralizer_primitives(D)[0].element)
    V = Subgroup(G, [perm_from_cycles(4, "(0 1)(2 3)"),
                     perm_from_cycles(4, "(0 2)(1 3)")])
    low = restrict_pair(top, V)
    for g in list(G.elements)[3:10]:
        assert leq(low.conjugate(g), top.conjugate(g)) is not None


def test_maximal_pairs_p_group():
    D16 = dihedral(16)
    ctx = BlockContext(D16, 2)
    rep, all_pairs, orbit = maximal_pairs(ctx, ctx.principal_block())
    assert rep.P.order == 16 and len(all_pairs) == 1 and orbit == 1


def test_maximal_pairs_s4():
    ctx = s4_context()
    rep, all_pairs, orbit = maximal_pairs(ctx, ctx.principal_block())
    assert rep.P.order == 8
    assert orbit == 3  # three Sylow 2-subgroups, one pair each
    verify_maximal(rep, ctx.principal_block())


def test_maximal_pairs_defect_zero():
    ctx = BlockContext(symmetric(3), 2)
    other = next(b for b in ctx.blocks() if b.augmentation() == 0)
    rep, all_pairs, orbit = maximal_pairs(ctx, other)
    assert rep.P.order == 1 and orbit == 1


def test_maximal_pairs_oracle_sweep_s4():
    # oracle: enumerate pairs over all 2-subgroups of the Sylow and compare
    from blockfusion.groups import subgroups_of

    ctx = s4_context()
    G = ctx.group
    b = ctx.principal_block()
    S = sylow_subgroup(G, 2)
    found = []
    for T in subgroups_of(S.as_group()):
        Q = Subgroup(G, T.small_gens())
        for cand in ctx.centralizer_primitives(Q):
            pair = BrauerPair(ctx, Q, cand.element)
            if restrict_pair(pair, G.trivial_subgroup()).e != b.element:
                continue
            found.append(pair)
    top_order = max(p.P.order for p in found)
    maximal = [p for p in found if p.P.order == top_order]
    rep, all_pairs, _ = maximal_pairs(ctx, b)
    assert {p.key() for p in maximal} == {p.key() for p in all_pairs}


def test_not_maximal_rejected():
    ctx = s4_context()
    G = ctx.group
    V = Subgroup(G, [perm_from_cycles(4, "(0 1)(2 3)"),
                     perm_from_cycles(4, "(0 2)(1 3)")])
    pair = BrauerPair(ctx, V, ctx.centralizer_primitives(V)[0].element)
    with pytest.raises(NotMaximalPair):
        verify_maximal(pair, ctx.principal_block())


def test_pair_conjugator():
    ctx = s4_context()
    rep, _, _ = maximal_pairs(ctx, ctx.principal_block())
    g = ctx.group.elements[7]
    moved = rep.conjugate(g)
    w = pair_conjugator(rep, moved)
    assert w is not None
    assert rep.conjugate(w) == moved
