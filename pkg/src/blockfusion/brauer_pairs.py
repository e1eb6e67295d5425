"""Brauer pairs (P, e) for finite group algebras and their partial order.

A BlockContext bundles a group, a prime and a splitting field and caches
the centralizer centers and their primitive idempotents, so that the
poset operations (normal inclusion, restriction, maximal pairs) can sweep
them exhaustively.
"""

from __future__ import annotations

from .errors import NotMaximalPair, NotNormalIn, NotSubgroup
from .group_algebra import (
    blocks,
    brauer_map,
    center_basis,
    defect_group,
    primitive_idempotents,
    principal_block,
    splitting_field,
)
from .groups import Subgroup, centralizer, is_conjugate, normalizer, sylow_subgroup


class BlockContext:
    """Caches per-subgroup Brauer-pair data for one (G, p, field)."""

    def __init__(self, G, p, K=None):
        self.group = G
        self.p = p
        self.field = K or splitting_field(G, p)
        self._idems = {}
        self._restrict = {}

    def blocks(self):
        return blocks(self.group, self.field)

    def principal_block(self):
        return principal_block(self.group, self.field)

    def centralizer_primitives(self, P):
        """Primitive idempotents of Z(kC_G(P)), canonically ordered."""
        key = P.element_set
        if key not in self._idems:
            C = centralizer(self.group, P)
            A = center_basis(C.as_group(), self.field,
                             label=f"Z(kC_G(P)) for |P|={P.order}")
            self._idems[key] = primitive_idempotents(A)
        return self._idems[key]

    def pair(self, P, e):
        return BrauerPair(self, P, e)

    def block_pair(self, b):
        """The minimal pair (1, b)."""
        return BrauerPair(self, self.group.trivial_subgroup(), b.element)


class BrauerPair:
    """A pair (P, e): P a p-subgroup, e primitive in Z(kC_G(P)).

    `e` is stored as an AlgebraElement; primitivity is certified against
    the cached decomposition of the centralizer center.
    """

    def __init__(self, ctx, P, e):
        self.ctx = ctx
        self.P = P
        self.e = e
        prims = ctx.centralizer_primitives(P)
        assert any(b.element == e for b in prims), \
            "idempotent is not primitive in Z(kC_G(P))"

    def conjugate(self, g):
        return BrauerPair(self.ctx, self.P.conjugate(g), self.e.conj(g))

    def key(self):
        return (self.P.key(), self.e.key())

    def __eq__(self, other):
        return (isinstance(other, BrauerPair)
                and self.P.element_set == other.P.element_set
                and self.e == other.e)

    def __hash__(self):
        return hash((self.P.element_set, self.e.key()))

    def __repr__(self):
        return f"BrauerPair(|P|={self.P.order}, {len(self.e.support)} terms)"

    def serialize(self):
        return {
            "subgroup": [g.cycle_string() for g in self.P.small_gens()],
            "idempotent": self.e.serialize(),
        }


def _stable_primitives(ctx, P, Q):
    """Q-stable primitive idempotents of Z(kC_G(P)) (Q must normalize P)."""
    gens = Q.small_gens()
    return [b for b in ctx.centralizer_primitives(P)
            if all(b.element.conj(q) == b.element for q in gens)]


def normal_leq(pair1, pair2):
    """(P,e) normal-<= (Q,f): P normal in Q, e Q-stable, Br_Q(e) f = f.

    Also asserts, by exhaustion, that exactly one Q-stable primitive
    idempotent of Z(kC_G(P)) satisfies the condition.
    """
    ctx = pair1.ctx
    P, e = pair1.P, pair1.e
    Q, f = pair2.P, pair2.e
    if not (P.element_set <= Q.element_set and P.is_normal_in(Q)):
        raise NotNormalIn("first component is not normal in the second")
    hits = []
    for b in _stable_primitives(ctx, P, Q):
        img = brauer_map(ctx.group, P, Q, b.element)
        prod = img * f
        assert prod.is_zero() or prod == f, "Br_Q(e) f must be 0 or f"
        if prod == f:
            hits.append(b.element)
    assert len(hits) == 1, "unique Q-stable idempotent dominating f"
    stable = all(e.conj(q) == e for q in Q.small_gens())
    return stable and hits[0] == e


def restrict_pair(pair, P):
    """The unique (P, e) <= (Q, f), found along the normalizer chain.

    Chain: P = P_1 < N_Q(P_1) < ... < Q (strictly increasing since Q is a
    p-group), descending with the unique normal-inclusion idempotent at
    each step.  Returns the BrauerPair at P.
    """
    ctx = pair.ctx
    Q, f = pair.P, pair.e
    if not P.element_set <= Q.element_set:
        raise NotSubgroup("restriction target is not a subgroup")
    key = (P.element_set, Q.element_set, f.key())
    if key in ctx._restrict:
        return ctx._restrict[key]
    chain = [P]
    while chain[-1].element_set != Q.element_set:
        Ncur = normalizer(Q.as_group(), Subgroup(Q.as_group(), chain[-1].small_gens()))
        nxt = Subgroup(ctx.group, Ncur.small_gens())
        assert nxt.order > chain[-1].order, "normalizer chain must grow"
        chain.append(nxt)
    result = pair
    for R in reversed(chain[:-1]):
        result = _restrict_normal_step(ctx, result, R)
    ctx._restrict[key] = result
    return result


def _restrict_normal_step(ctx, pair, R):
    """Unique (R, e) normal-<= pair, for R normal in pair.P."""
    Q, f = pair.P, pair.e
    hits = []
    for b in _stable_primitives(ctx, R, Q):
        img = brauer_map(ctx.group, R, Q, b.element)
        prod = img * f
        assert prod.is_zero() or prod == f
        if prod == f:
            hits.append(b.element)
    assert len(hits) == 1, "normal restriction must have a unique solution"
    return BrauerPair(ctx, R, hits[0])


def leq(pair1, pair2, exhaustive=False):
    """Witnessing inclusion chain for (P,e) <= (Q,f), or None.

    One canonical chain suffices by the uniqueness of restriction; with
    exhaustive=True (|Q| <= 32) every chain of normal inclusions is
    searched and chain-independence is asserted.
    """
    if not pair1.P.element_set <= pair2.P.element_set:
        raise NotSubgroup("first component is not contained in the second")
    restricted = restrict_pair(pair2, pair1.P)
    ok = restricted.e == pair1.e
    if exhaustive:
        assert pair2.P.order <= 32, "exhaustive mode limited to |Q| <= 32"
        found = _leq_exhaustive(pair1, pair2)
        assert found == ok, "chain-independence violated"
    if not ok:
        return None
    chain = [pair1]
    cur = pair1.P
    while cur.element_set != pair2.P.element_set:
        Ncur = normalizer(pair2.P.as_group(),
                          Subgroup(pair2.P.as_group(), cur.small_gens()))
        cur = Subgroup(pair1.ctx.group, Ncur.small_gens())
        chain.append(restrict_pair(pair2, cur))
    for lower, upper in zip(chain, chain[1:]):
        assert normal_leq(lower, upper)
    return chain


def _leq_exhaustive(pair1, pair2):
    """Reachability of pair2 from pair1 through all normal inclusions."""
    from .groups import subgroups_of

    ctx = pair1.ctx
    Qgrp = pair2.P.as_group()
    subs = [Subgroup(ctx.group, S.small_gens()) for S in subgroups_of(Qgrp)]
    reachable = {pair1.key()}
    frontier = [pair1]
    while frontier:
        cur = frontier.pop()
        for S in subs:
            if not (cur.P.element_set < S.element_set
                    and cur.P.is_normal_in(S)):
                continue
            for b in _stable_primitives(ctx, S, S):
                cand = BrauerPair(ctx, S, b.element)
                if normal_leq(cur, cand) and cand.key() not in reachable:
                    reachable.add(cand.key())
                    frontier.append(cand)
    return pair2.key() in reachable


def maximal_pairs(ctx, b):
    """Maximal Brauer pairs above (1, b), up to conjugacy.

    Returns (representative, all pairs on the canonical defect group,
    orbit size).  Cross-checks that the first components are defect
    groups and that all the pairs found are G-conjugate.
    """
    G = ctx.group
    D = defect_group(G, b)
    ours = []
    for cand in ctx.centralizer_primitives(D):
        pair = BrauerPair(ctx, D, cand.element)
        bottom = restrict_pair(pair, G.trivial_subgroup())
        if bottom.e == b.element:
            ours.append(pair)
    assert ours, "a maximal pair must exist above every block"
    ours.sort(key=lambda pr: pr.key())
    rep = ours[0]
    # pairwise conjugacy of the maximal pairs found on D
    for other in ours[1:]:
        witness = _pair_conjugator(ctx, rep, other)
        assert witness is not None, "maximal pairs must be G-conjugate"
    stab = sum(
        1 for g in G.elements
        if all(x.conj(g) in D.element_set for x in D.small_gens())
        and rep.e.conj(g) == rep.e
    )
    orbit_size = G.order // stab
    return rep, ours, orbit_size


def _pair_conjugator(ctx, pair1, pair2):
    """g with (P1, e1)^g = (P2, e2), or None."""
    G = ctx.group
    gens = pair1.P.small_gens()
    for g in G.elements:
        if all(x.conj(g) in pair2.P.element_set for x in gens) \
                and pair1.P.order == pair2.P.order \
                and pair1.e.conj(g) == pair2.e:
            return g
    return None


def pair_conjugator(pair1, pair2):
    return _pair_conjugator(pair1.ctx, pair1, pair2)


def verify_maximal(pair, b):
    """Check (pair.P, pair.e) is a maximal pair of the block b."""
    ctx = pair.ctx
    D = defect_group(ctx.group, b)
    if pair.P.order != D.order or is_conjugate(ctx.group, pair.P, D) is None:
        raise NotMaximalPair("first component is not a defect group")
    bottom = restrict_pair(pair, ctx.group.trivial_subgroup())
    if bottom.e != b.element:
        raise NotMaximalPair("pair does not lie above the block")
    return True
