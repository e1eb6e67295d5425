"""Finite truncations of the profinite machinery.

Surjective systems of finite groups with a chosen normal chain, the
idempotent-lifting map between quotient levels, compatible idempotent
sequences (truncated profinite Brauer pairs), the growth, stabilization,
embedding and independence checks, the dihedral-family results, and the
centralizer bijection at finite level.

"For all but finitely many i" always becomes "for all i >= i0" with i0
computed and reported.
"""

from __future__ import annotations

import re

from .brauer_pairs import BlockContext, BrauerPair, restrict_pair, verify_maximal
from .errors import (
    DepthInsufficient,
    NoCommonConjugator,
    NotDihedralBase,
    NotInterleavable,
    NotNormal,
    ParseError,
    PreconditionViolated,
    SeedIncompatible,
    SurjectivityFailure,
    SylowConditionViolated,
    ThinningFailed,
    UnsupportedFamily,
)
from .fusion import (
    FusionSystem,
    block_fusion,
    conj_graph,
    is_nilpotent,
    is_subsystem,
    quotient_fusion,
    systems_equal,
    trivial_fusion,
)
from .group_algebra import (
    blocks,
    orbit_sums_of_primitives,
    principal_block,
    splitting_field,
)
from .groups import (
    GroupHom,
    Subgroup,
    centralizer,
    dihedral,
    hom_from_function,
    normal_subgroups,
    normalizer,
    quotient,
    subgroups_of,
)


# -- relative centralizers and idempotent lifting -----------------------------

def c_group(G, N, Q):
    """C_{Q,N} = {g : [g,Q] <= Q cap N}; contains C_G(Q), inside N_G(Q)."""
    if not N.is_normal_in(G):
        raise NotNormal("second argument must be normal")
    meet = Q.intersection(N)
    gens = Q.small_gens()
    elems = [g for g in G.elements
             if all(g.comm(q) in meet.element_set for q in gens)]
    out = Subgroup.from_elements(G, elems)
    assert centralizer(G, Q).element_set <= out.element_set
    assert out.element_set <= normalizer(G, Q).element_set
    return out


def _check_sylow_in(meet, N, p):
    target = 1
    n = N.order
    while n % p == 0:
        target *= p
        n //= p
    return meet.order == target


def nu_minus_along(hom, Q, e_down, K, spot_check=False):
    """The unique primitive idempotent E of Z(kC_H(Q))^{C_{Q,N}} with
    nu(E) e_down = e_down, for nu = hom: H -> H/N and Q cap N Sylow in N.

    Returns (E, constituents): the invariant-algebra primitive (a
    C_{Q,N}-orbit sum of primitives of Z(kC_H(Q))) and the orbit it sums.
    Uniqueness is asserted by exhausting all orbit sums.
    """
    H = hom.domain
    N = hom.kernel()
    p = K.p
    if not _check_sylow_in(Q.intersection(N), N, p):
        raise SylowConditionViolated("Q cap N is not a Sylow p-subgroup of N")
    ctx = BlockContext(H, p, K)
    prims = ctx.centralizer_primitives(Q)
    CQN = c_group(H, N, Q)
    orbits, sums = orbit_sums_of_primitives(prims, CQN.small_gens())
    hits = []
    for orbit, total in zip(orbits, sums):
        prod = total.push(hom) * e_down
        assert prod.is_zero() or prod == e_down, "nu(E) e must be 0 or e"
        if prod == e_down:
            hits.append((orbit, total))
    assert len(hits) == 1, "nu_minus must have a unique solution"
    orbit, E = hits[0]
    constituents = [prims[i].element for i in orbit]
    if spot_check:
        for g in H.generators:
            Qg = Q.conjugate(g)
            Eg, _ = nu_minus_along(hom, Qg, e_down.conj(hom(g)), K)
            assert Eg == E.conj(g), "nu_minus is not G-equivariant"
    return E, constituents


def nu_minus(G, N, Q, e_down, K, spot_check=False):
    """Spec-shaped wrapper building the quotient epimorphism internally."""
    _, hom = quotient(G, N)
    return nu_minus_along(hom, Q, e_down, K, spot_check=spot_check)


def lift_block_along(hom, b_down):
    """The unique block b~ of the domain with nu(b~) b_down = b_down."""
    K = b_down.field
    hits = []
    for cand in blocks(hom.domain, K):
        prod = cand.element.push(hom) * b_down.element
        assert prod.is_zero() or prod == b_down.element
        if prod == b_down.element:
            hits.append(cand)
    assert len(hits) == 1, "block lifting must have a unique solution"
    return hits[0]


def lift_block(G, N, b_down):
    _, hom = quotient(G, N)
    return lift_block_along(hom, b_down)


def nu_minus_compatibility_check(G, N, P, Q, K):
    """Finite-scale conjugator existence for compatible pair inclusions.

    For every pair of quotient-level Brauer pairs (PN/N, c) <= (QN/N, d)
    and all upstairs pairs (P, c~), (Q, d~) with nu^-_P(c) c~ != 0 and
    nu^-_Q(d) d~ != 0, searches x in C_{P,N} with (P, c~^x) <= (Q, d~).
    Returns the number of verified triples; absence of a conjugator
    aborts.
    """
    from .brauer_pairs import leq

    p = K.p
    Qt, hom = quotient(G, N)
    ctx_up = BlockContext(G, p, K)
    ctx_down = BlockContext(Qt, p, K)
    Pq = hom.image_of_subgroup(P)
    Qq = hom.image_of_subgroup(Q)
    CPN = c_group(G, N, P)
    verified = 0
    for d in ctx_down.centralizer_primitives(Qq):
        top = BrauerPair(ctx_down, Qq, d.element)
        c = restrict_pair(top, Pq)
        _, c_parts = nu_minus_along(hom, P, c.e, K)
        _, d_parts = nu_minus_along(hom, Q, d.element, K)
        for c_up in c_parts:
            for d_up in d_parts:
                pair_d = BrauerPair(ctx_up, Q, d_up)
                found = False
                for x in CPN.elements:
                    cand = BrauerPair(ctx_up, P.conjugate(x), c_up.conj(x))
                    if cand.P.element_set <= Q.element_set \
                            and leq(cand, pair_d) is not None:
                        found = True
                        break
                assert found, "no conjugator in C_{P,N} for a compatible pair"
                verified += 1
    return verified


# -- the growth lemma at finite level -----------------------------------------

def _quotient_base_iso(F_up, S_base, target_subgroup, lift_map):
    """Iso from the base of F_up/S onto a target subgroup, via lift_map.

    lift_map sends elements of F_up's base to elements of the target's
    parent; it must kill exactly S_base.
    """
    Qbase, pi = quotient(F_up.base, S_base)
    reps = {}
    for x in F_up.base.elements:
        reps.setdefault(pi(x), x)
    target_group = target_subgroup.as_group()
    gen_images = [lift_map(reps[q]) for q in Qbase.generators]
    iso = GroupHom(Qbase, target_group, gen_images)
    assert iso.is_bijective()
    return iso


def growth_check(G, N, D, b_down, K=None, p=None):
    """Certify both parts of the level-to-level growth statement.

    Given N normal in G, D a p-subgroup with D cap N Sylow in N, and a
    block b_down of k[G/N] whose defect group is DN/N such that the
    lifted block has defect group D: every primitive e~ of Z(kC_G(D))
    hit by nu^-(e) gives a maximal pair (D, e~) of the lifted block, the
    quotient-level fusion system embeds in F_(D,e~)(G,b~)/(D cap N), and
    the quotient system does not depend on which e~ was hit.
    """
    p = p or b_down.field.p
    K = K or b_down.field
    Q, hom = quotient(G, N)
    if not _check_sylow_in(D.intersection(N), N, p):
        raise PreconditionViolated("D cap N is not Sylow in N")
    b_up = lift_block_along(hom, b_down)
    DN = hom.image_of_subgroup(D)

    from .group_algebra import defect_group
    from .groups import is_conjugate

    dd = defect_group(Q, b_down)
    if dd.order != DN.order or is_conjugate(Q, dd, DN) is None:
        raise PreconditionViolated("DN/N is not a defect group of the block")
    du = defect_group(G, b_up)
    if du.order != D.order or is_conjugate(G, du, D) is None:
        raise PreconditionViolated("D is not a defect group of the lifted block")

    ctx_down = BlockContext(Q, p, K)
    down_pairs = [cand.element for cand in ctx_down.centralizer_primitives(DN)
                  if restrict_pair(BrauerPair(ctx_down, DN, cand.element),
                                   Q.trivial_subgroup()).e == b_down.element]
    assert down_pairs, "no maximal pair at the quotient level"
    e_down = down_pairs[0]

    E, constituents = nu_minus_along(hom, D, e_down, K)
    ctx_up = BlockContext(G, p, K)
    F_down = block_fusion(Q, b_down, BrauerPair(ctx_down, DN, e_down))

    quotients = []
    for e_up in constituents:
        pair_up = BrauerPair(ctx_up, D, e_up)
        verify_maximal(pair_up, b_up)  # part 1: maximality of (D, e~)
        F_up = block_fusion(G, b_up, pair_up)
        S = Subgroup.from_elements(F_up.base,
                                   sorted(D.intersection(N).element_set))
        Fq = quotient_fusion(F_up, S)
        iso = _quotient_base_iso(F_up, S, DN, hom)
        quotients.append(Fq.transport(iso))

    inclusion = all(is_subsystem(F_down, T) for T in quotients)
    independence = all(systems_equal(quotients[0], T) for T in quotients[1:])
    return {
        "lifted_block_augmentation": b_up.augmentation(),
        "num_compatible_idempotents": len(constituents),
        "maximality": True,
        "subsystem_inclusion": inclusion,
        "choice_independence": independence,
        "ok": inclusion and independence,
    }


# -- towers -------------------------------------------------------------------

class Tower:
    """Levels G/N_1, ..., G/N_r with surjections between adjacent levels.

    `maps[i]` goes from level i+1 down to level i (deeper to coarser).
    When built from an ambient group, the kernels form a descending chain
    of normal subgroups and projections to every level are kept.
    """

    def __init__(self, levels, maps, ambient=None, projections=None, kernels=None):
        self.levels = list(levels)
        self.maps = list(maps)
        self.ambient = ambient
        self.projections = projections
        self.kernels = kernels
        assert len(self.maps) == len(self.levels) - 1
        for i, hom in enumerate(self.maps):
            assert hom.domain is self.levels[i + 1]
            assert hom.codomain is self.levels[i]
            assert hom.is_surjective(), "tower maps must be surjective"

    @property
    def depth(self):
        return len(self.levels)

    @classmethod
    def from_ambient(cls, G, kernels):
        """Build levels and maps from a descending chain of normal subgroups."""
        kernels = list(kernels)
        for i, N in enumerate(kernels):
            if not N.is_normal_in(G):
                raise NotNormal(f"kernel {i + 1} is not normal in the ambient group")
            if i and not kernels[i].element_set <= kernels[i - 1].element_set:
                raise NotNormal("kernels must form a descending chain")
        levels, projections = [], []
        for N in kernels:
            Q, hom = quotient(G, N)
            levels.append(Q)
            projections.append(hom)
        maps = []
        for i in range(len(levels) - 1):
            maps.append(GroupHom(levels[i + 1], levels[i],
                                 projections[i].gen_images))
        return cls(levels, maps, ambient=G, projections=projections,
                   kernels=kernels)

    def map_between(self, i, j):
        """Composite surjection from level j down to level i (i <= j)."""
        assert i <= j
        if i == j:
            return hom_from_function(self.levels[i], self.levels[i], lambda x: x)
        hom = self.maps[j - 1]
        for k in range(j - 2, i - 1, -1):
            hom = hom.then(self.maps[k])
        return hom


def _require_ambient(tower, what):
    if tower.ambient is None or tower.kernels is None:
        raise PreconditionViolated(f"{what} needs a tower with an ambient group")


def tower_blocks(tower, p, K=None, seed="principal"):
    """Per-level block data coherent under lifting.

    For the principal seed, each level gets its principal block (lift
    coherence asserted).  For an explicit ambient block, the coarsest
    level takes the least constituent of its image and deeper levels take
    iterated lifts; the deepest level must recover the ambient block.
    """
    _require_ambient(tower, "block data")
    G = tower.ambient
    K = K or splitting_field(G, p)
    if seed == "principal":
        per_level = [principal_block(Q, K) for Q in tower.levels]
        for i, hom in enumerate(tower.maps):
            assert lift_block_along(hom, per_level[i]) == per_level[i + 1], \
                "principal blocks must be lift-coherent"
        ambient_block = principal_block(G, K)
        return {"levels": per_level, "ambient": ambient_block, "field": K}
    b_G = seed
    pushed = b_G.element.push(tower.projections[0])
    candidates = [c for c in blocks(tower.levels[0], K)
                  if not (pushed * c.element).is_zero()]
    assert candidates, "ambient block dies at the coarsest level"
    per_level = [min(candidates, key=lambda c: c.key())]
    for hom in tower.maps:
        per_level.append(lift_block_along(hom, per_level[-1]))
    if tower.kernels and tower.kernels[-1].order == 1:
        assert per_level[-1].element == b_G.element.push(tower.projections[-1]), \
            "iterated lifts must recover the ambient block"
    return {"levels": per_level, "ambient": b_G, "field": K}


class CompatibleIdempotentSequence:
    """Sequence (e_i) for i >= i0 with nu^-(e_i) e_{i+1} != 0 at each step.

    Represents one truncated profinite Brauer pair (P, [e_i]).  Equality
    of two sequences compares tails from max(i0, i0').
    """

    def __init__(self, tower, P, start, entries, K):
        self.tower = tower
        self.P = P
        self.start = start
        self.entries = list(entries)  # entries[t] lives at level start + t
        self.field = K

    def level_entry(self, i):
        return self.entries[i - self.start]

    def last(self):
        return self.entries[-1]

    def same_class(self, other):
        lo = max(self.start, other.start)
        hi = min(self.start + len(self.entries),
                 other.start + len(other.entries))
        return all(self.level_entry(i) == other.level_entry(i)
                   for i in range(lo, hi))

    def __repr__(self):
        return f"CompatibleIdempotentSequence(i0={self.start + 1}, " \
               f"len={len(self.entries)})"


def admissible_start(tower, P, p):
    """Least level index with P cap N_i Sylow p in N_i (0-based)."""
    _require_ambient(tower, "the admissible start")
    for i, N in enumerate(tower.kernels):
        if _check_sylow_in(P.intersection(N), N, p):
            return i
    raise PreconditionViolated("no level has P cap N Sylow in N")


def compatible_sequence(tower, P, p, K=None, seed=None, start=None, choose=min):
    """Build a compatible idempotent sequence for P level by level.

    seed: None picks the least primitive at the starting level; otherwise
    (level, element) with the element primitive there.  `start` may push
    the starting level past the first Sylow-admissible one.  Each
    extension step picks `choose` among the constituents of nu^-(e_i),
    so the construction is deterministic.
    """
    G = tower.ambient
    K = K or splitting_field(G, p)
    i0 = admissible_start(tower, P, p)
    if start is not None:
        if start < i0:
            raise SeedIncompatible(
                f"start {start + 1} precedes the first admissible level {i0 + 1}")
        i0 = start
    ctxs = [BlockContext(Q, p, K) for Q in tower.levels]
    images = [proj.image_of_subgroup(P) for proj in tower.projections]
    if seed is None:
        prims = ctxs[i0].centralizer_primitives(images[i0])
        entries = [min(prims, key=lambda b: b.key()).element]
    else:
        level, elem = seed
        if level != i0:
            raise SeedIncompatible(
                f"seed must sit at the starting level {i0 + 1}")
        prims = ctxs[i0].centralizer_primitives(images[i0])
        if not any(b.element == elem for b in prims):
            raise SeedIncompatible("seed is not primitive at its level")
        entries = [elem]
    for i in range(i0, tower.depth - 1):
        _, constituents = nu_minus_along(tower.maps[i], images[i + 1],
                                         entries[-1], K)
        entries.append(choose(constituents, key=lambda e: e.key()))
    return CompatibleIdempotentSequence(tower, P, i0, entries, K)


def sequence_is_compatible(tower, seq):
    """Re-verify the defining nonvanishing condition of a sequence."""
    K = seq.field
    images = [proj.image_of_subgroup(seq.P) for proj in tower.projections]
    for i in range(seq.start, tower.depth - 1):
        E, constituents = nu_minus_along(tower.maps[i], images[i + 1],
                                         seq.level_entry(i), K)
        if not any(seq.level_entry(i + 1) == c for c in constituents):
            return False
    return True


def maximal_truncated_pair(tower, block_data):
    """(D, e-hat): defect group of the ambient block with a maximal
    compatible sequence; every level's pair is verified maximal."""
    from .group_algebra import defect_group

    _require_ambient(tower, "the maximal truncated pair")
    G = tower.ambient
    K = block_data["field"]
    p = K.p
    if tower.kernels[-1].order != 1:
        raise PreconditionViolated("chain must reach the trivial subgroup")
    D = defect_group(G, block_data["ambient"])
    i0 = admissible_start(tower, D, p)
    ctxs = [BlockContext(Q, p, K) for Q in tower.levels]
    images = [proj.image_of_subgroup(D) for proj in tower.projections]
    from .groups import is_conjugate

    for i in range(i0, tower.depth):
        dd = defect_group(tower.levels[i], block_data["levels"][i])
        if dd.order != images[i].order \
                or is_conjugate(tower.levels[i], dd, images[i]) is None:
            i0 = i + 1
    if i0 >= tower.depth:
        raise PreconditionViolated("no admissible level for the defect group")
    maximal_seed = None
    for cand in ctxs[i0].centralizer_primitives(images[i0]):
        pair = BrauerPair(ctxs[i0], images[i0], cand.element)
        if restrict_pair(pair, tower.levels[i0].trivial_subgroup()).e \
                == block_data["levels"][i0].element:
            maximal_seed = cand.element
            break
    assert maximal_seed is not None
    seq = compatible_sequence(tower, D, p, K, seed=(i0, maximal_seed), start=i0)
    for i in range(i0, tower.depth):
        pair = BrauerPair(ctxs[i], images[i], seq.level_entry(i))
        verify_maximal(pair, block_data["levels"][i])
    return D, seq


def conjugate_sequences(tower, P, seq1, seq2):
    """Common ambient conjugator for two sequences on the same P.

    Intersects the per-level transporter sets {g : (image, e_i)^g =
    (image, e'_i)}; emptiness would falsify the conjugacy statement and
    aborts loudly.
    """
    G = tower.ambient
    lo = max(seq1.start, seq2.start)
    images = [proj.image_of_subgroup(P) for proj in tower.projections]
    common = None
    for i in range(lo, tower.depth):
        proj = tower.projections[i]
        gens = images[i].small_gens()
        e1, e2 = seq1.level_entry(i), seq2.level_entry(i)
        T = {
            g for g in G.elements
            if all(x.conj(proj(g)) in images[i].element_set for x in gens)
            and e1.conj(proj(g)) == e2
        }
        common = T if common is None else (common & T)
        if not common:
            raise NoCommonConjugator(
                f"transporter intersection empty at level {i + 1}")
    return min(common)


# -- stabilization, embedding, independence -----------------------------------

class StabilizationReport:
    """Per-level stabilization data for the fusion-system tower."""

    def __init__(self, tower, i0, mu_raw, mu, systems, level_systems, D):
        self.tower = tower
        self.i0 = i0              # 0-based first admissible level
        self.mu_raw = mu_raw      # least stable level per level (0-based)
        self.mu = mu              # strictly increasing envelope
        self.systems = systems    # systems[i][j] = F_j / (D cap N_i), on base_i
        self.level_systems = level_systems
        self.defect = D

    def summary(self):
        return {
            "i0": self.i0 + 1,
            "mu_raw": [m + 1 for m in self.mu_raw],
            "mu": [m + 1 for m in self.mu],
        }


def _fusion_tower_data(tower, block_data):
    """Block fusion systems F_i at every admissible level of the tower."""
    K = block_data["field"]
    p = K.p
    D, seq = maximal_truncated_pair(tower, block_data)
    i0 = seq.start
    ctxs = [BlockContext(Q, p, K) for Q in tower.levels]
    images = [proj.image_of_subgroup(D) for proj in tower.projections]
    systems = {}
    for i in range(i0, tower.depth):
        pair = BrauerPair(ctxs[i], images[i], seq.level_entry(i))
        systems[i] = block_fusion(tower.levels[i], block_data["levels"][i], pair)
    return D, seq, images, systems


def stabilization_mu(tower, block_data):
    """Least stable quotient level per level, with the ascending-chain and
    equality facts verified on hom tables.

    Raises DepthInsufficient when a chain is still strictly growing at
    the deepest available level.
    """
    D, seq, images, level_systems = _fusion_tower_data(tower, block_data)
    i0 = seq.start
    quotient_systems = {}
    for i in range(i0, tower.depth):
        Smeet = D.intersection(tower.kernels[i])
        row = {}
        for j in range(i, tower.depth):
            Fj = level_systems[j]
            S = Subgroup.from_elements(
                Fj.base,
                sorted(tower.projections[j].image_of_subgroup(Smeet).element_set))
            Fq = quotient_fusion(Fj, S)
            hom_ij = tower.map_between(i, j)
            iso = _quotient_base_iso(Fj, S, images[i], hom_ij)
            row[j] = Fq.transport(iso)
        quotient_systems[i] = row
    mu_raw = []
    for i in range(i0, tower.depth):
        row = quotient_systems[i]
        for j in range(i, tower.depth - 1):
            assert is_subsystem(row[j], row[j + 1]), \
                "quotient chain must be ascending"
        if i < tower.depth - 1 and not systems_equal(row[tower.depth - 2],
                                                     row[tower.depth - 1]):
            raise DepthInsufficient(
                f"chain at level {i + 1} still growing at max depth")
        least = tower.depth - 1
        for j in range(i, tower.depth):
            if all(systems_equal(row[j], row[j2])
                   for j2 in range(j + 1, tower.depth)):
                least = j
                break
        mu_raw.append(least)
    mu = []
    for t, raw in enumerate(mu_raw):
        lo = raw if t == 0 else max(raw, mu[-1] + 1)
        if lo >= tower.depth:
            raise DepthInsufficient(
                "strictly increasing mu exceeds the available depth")
        mu.append(lo)
    return StabilizationReport(tower, i0, mu_raw, mu, quotient_systems,
                               level_systems, D)


def embedding_check(tower, block_data, level, report=None):
    """F_level embeds into the stabilized quotient of the deep system."""
    report = report or stabilization_mu(tower, block_data)
    i = level
    if i < report.i0 or i >= tower.depth:
        raise DepthInsufficient(f"level {i + 1} outside the admissible range")
    F_level = report.level_systems[i]
    target = report.systems[i][report.mu[i - report.i0]]
    ok = is_subsystem(F_level, target)
    equal = systems_equal(F_level, target)
    return {"level": i + 1, "mu": report.mu[i - report.i0] + 1,
            "embeds": ok, "equal": equal, "ok": ok}


def interleave_towers(towerA, towerB):
    """Chain N_a1 >= M_b1 >= N_a2 >= ... from two chains on one ambient."""
    assert towerA.ambient is towerB.ambient
    A = towerA.kernels
    B = towerB.kernels
    out = []
    ai, bi = 0, 0
    take_a = True
    while True:
        src = A if take_a else B
        idx = ai if take_a else bi
        prev = out[-1] if out else None
        found = None
        for k in range(idx, len(src)):
            if prev is None or src[k].element_set <= prev.element_set:
                found = k
                break
        if found is None:
            raise NotInterleavable("chains cannot be interleaved")
        out.append(src[found])
        if take_a:
            ai = found + 1
        else:
            bi = found + 1
        if out[-1].order == 1 and len(out) >= 2:
            break
        take_a = not take_a
    return Tower.from_ambient(towerA.ambient, out)


def independence_check(towerA, towerB, p, K=None, seed="principal"):
    """Certify chain-independence of the truncated pro-fusion data.

    Builds the interleaved chain and compares, at every kernel shared by
    two of the three towers, the stabilized quotient systems: equal when
    the deterministic constructions coincide, conjugate otherwise.
    """
    G = towerA.ambient
    K = K or splitting_field(G, p)
    towerL = interleave_towers(towerA, towerB)
    towers = {"A": towerA, "B": towerB, "interleaved": towerL}
    data = {}
    for name, tw in towers.items():
        bd = tower_blocks(tw, p, K, seed=seed)
        data[name] = (tw, bd, stabilization_mu(tw, bd))
    comparisons = []
    names = list(towers)
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            twA, bdA, repA = data[names[a]]
            twB, bdB, repB = data[names[b]]
            for iA, NA in enumerate(twA.kernels):
                for iB, NB in enumerate(twB.kernels):
                    if NA.element_set != NB.element_set:
                        continue
                    if iA < repA.i0 or iB < repB.i0:
                        continue
                    if bdA["levels"][iA].element != bdB["levels"][iB].element:
                        raise PreconditionViolated(
                            "towers disagree on the level block")
                    CA = repA.systems[iA][repA.mu[iA - repA.i0]]
                    CB = repB.systems[iB][repB.mu[iB - repB.i0]]
                    relation, witness = _compare_up_to_conjugacy(
                        twA.levels[iA], CA, CB)
                    comparisons.append({
                        "towers": (names[a], names[b]),
                        "level_order": twA.levels[iA].order,
                        "kernel_order": NA.order,
                        "relation": relation,
                        "witness": witness.cycle_string() if witness else None,
                    })
                    assert relation in ("equal", "conjugate")
    return {"comparisons": comparisons,
            "ok": all(c["relation"] in ("equal", "conjugate")
                      for c in comparisons)}


def _compare_up_to_conjugacy(level_group, CA, CB):
    if CA.base.element_set == CB.base.element_set and systems_equal(CA, CB):
        return "equal", None
    for g in level_group.elements:
        image = frozenset(x.conj(g) for x in CA.base.element_set)
        if image != CB.base.element_set:
            continue
        iso = hom_from_function(CA.base, CB.base, lambda x: x.conj(g))
        if systems_equal(CA.transport(iso), CB):
            return "conjugate", g
    raise NoCommonConjugator("stabilized systems are not conjugate")


# -- dihedral-family checks ----------------------------------------------------

def dihedral_witness(G):
    """(r, s) realizing <r, s | r^(n/2), s^2, srs=r^-1>, or None.

    In the tame 2-groups all elements of order n/2 generate the same
    cyclic subgroup, so the first candidate rotation decides.
    """
    n = G.order
    if n < 8 or n % 2:
        return None
    m = n // 2
    for r in G.elements:
        if r.order() != m:
            continue
        rot = {r ** k for k in range(m)}
        for s in G.elements:
            if s.order() == 2 and s not in rot and r.conj(s) == r.inverse():
                return r, s
        return None
    return None


def quaternion_witness(G):
    n = G.order
    if n < 8 or n & (n - 1):
        return None
    m = n // 2
    for r in G.elements:
        if r.order() != m:
            continue
        rot = {r ** k for k in range(m)}
        z = r ** (m // 2)
        for s in G.elements:
            if s not in rot and s * s == z and r.conj(s) == r.inverse():
                return r, s
        return None
    return None


def semidihedral_witness(G):
    n = G.order
    if n < 16 or n & (n - 1):
        return None
    m = n // 2
    t = m // 2 - 1
    for r in G.elements:
        if r.order() != m:
            continue
        rot = {r ** k for k in range(m)}
        for s in G.elements:
            if s.order() == 2 and s not in rot and r.conj(s) == r ** t:
                return r, s
        return None
    return None


def tame_quotient_check(P):
    """Every proper nonabelian quotient of a tame 2-group is dihedral.

    P must be dihedral, semidihedral or generalized quaternion of order
    8..64.  Each nonabelian proper quotient gets an explicit isomorphism
    onto the dihedral constructor of its order.
    """
    order = P.order
    if not (8 <= order <= 64 and order & (order - 1) == 0):
        raise UnsupportedFamily(f"order {order} outside the tame families")
    family = None
    if dihedral_witness(P):
        family = "dihedral"
    elif quaternion_witness(P):
        family = "quaternion"
    elif semidihedral_witness(P):
        family = "semidihedral"
    if family is None:
        raise UnsupportedFamily("group is not dihedral/semidihedral/quaternion")
    results = []
    for N in normal_subgroups(P):
        if N.order == 1:
            continue
        Q, _ = quotient(P, N)
        if Q.is_abelian():
            results.append({"kernel_order": N.order, "quotient_order": Q.order,
                            "abelian": True, "dihedral": None})
            continue
        w = dihedral_witness(Q)
        assert w is not None, "nonabelian proper quotient must be dihedral"
        r, s = w
        model = dihedral(Q.order)
        iso = GroupHom(model, Q, [r, s])
        assert iso.is_bijective()
        results.append({"kernel_order": N.order, "quotient_order": Q.order,
                        "abelian": False, "dihedral": True})
    return {"family": family, "order": order, "quotients": results,
            "ok": all(r["abelian"] or r["dihedral"] for r in results)}


def descent_fusion_system(F_top, epi):
    """Image system along a base epimorphism: descents of the
    kernel-preserving morphisms between kernel-containing subgroups.

    This realizes, at finite depth, the reduction of an inverse system of
    fusion systems to a surjective one.
    """
    assert epi.is_surjective()
    ker = epi.kernel()
    bottom = epi.codomain
    subs = subgroups_of(bottom)
    homs = {(i, j): set() for i in range(len(subs)) for j in range(len(subs))}
    pre = {T.element_set: epi.preimage(T) for T in subs}
    for i, T1 in enumerate(subs):
        W1 = pre[T1.element_set]
        for j, T2 in enumerate(subs):
            W2 = pre[T2.element_set]
            for graph in F_top.hom(W1, W2):
                d = dict(graph)
                if not all(d[k] in ker.element_set for k in ker.elements):
                    continue
                reps = {}
                for x in W1.elements:
                    reps.setdefault(epi(x), x)
                descended = tuple((t, epi(d[reps[t]])) for t in T1.elements)
                homs[(i, j)].add(descended)
    homs = {key: frozenset(val) for key, val in homs.items()}
    return FusionSystem(bottom, F_top.p, subs, homs, provenance="synthetic",
                        ambient=F_top.ambient)


def dihedral_descent_tower(G, min_order=8):
    """FusionTower over the dihedral Sylow 2-subgroup of G.

    The top is the Sylow fusion system of G on its (necessarily
    dihedral) Sylow 2-subgroup presented on rotation-reflection
    generators; each lower level is the descent system along the natural
    epimorphism a -> a, b -> b onto the next smaller dihedral group,
    down to min_order.
    """
    from .fusion import sylow_fusion
    from .groups import PermGroup, sylow_subgroup

    S = sylow_subgroup(G, 2)
    w = dihedral_witness(S.as_group())
    if w is None:
        raise NotDihedralBase(
            "Sylow 2-subgroup is not dihedral of order >= 8")
    r, s = w
    base = PermGroup(G.degree, [r, s], name=f"D{S.order}")
    assert base.element_set == S.element_set
    F = sylow_fusion(G, S, base=base)
    systems = [F]
    epis = []
    cur_base, cur_F = base, F
    while cur_base.order // 2 >= max(min_order, 8):
        lower = dihedral(cur_base.order // 2)
        epi = GroupHom(cur_base, lower, list(lower.generators))
        Fd = descent_fusion_system(cur_F, epi)
        systems.insert(0, Fd)
        epis.insert(0, epi)
        cur_base, cur_F = lower, Fd
    return FusionTower(systems, epis)


class FusionTower:
    """Fusion systems F_1, ..., F_r with base epimorphisms, coarsest first."""

    def __init__(self, systems, epis):
        self.systems = list(systems)
        self.epis = list(epis)  # epis[j]: base of systems[j+1] -> base of systems[j]
        assert len(self.epis) == len(self.systems) - 1
        for j, epi in enumerate(self.epis):
            assert epi.domain.element_set == self.systems[j + 1].base.element_set
            assert epi.codomain.element_set == self.systems[j].base.element_set
            assert epi.is_surjective()


def _is_klein_four(S):
    return S.order == 4 and all(x.order() <= 2 for x in S.elements)


def dihedral_triviality_check(ft):
    """Certify triviality of each non-top level of a dihedral fusion tower.

    Mechanism: all automorphism groups of cyclic and dihedral (order >= 8)
    subgroups are 2-groups; for each Klein four V the preimage W above is
    dihedral of order >= 8, Aut of the level above maps onto Aut_{F_j}(V)
    (surjectivity of the system) and its image is a 2-group.  Conclusion
    cross-checked by literal hom-table equality with the inner system.
    Levels on groups of order <= 4 are skipped with an explicit note.
    """
    reports = []
    for j, F in enumerate(ft.systems):
        base = F.base
        if base.order > 4 and dihedral_witness(base) is None:
            raise NotDihedralBase(f"level {j + 1} base is not dihedral")
        if j == len(ft.systems) - 1:
            reports.append({"level": j + 1, "order": base.order,
                            "role": "top", "checked": False})
            continue
        if base.order <= 4:
            reports.append({"level": j + 1, "order": base.order,
                            "role": "skipped (order <= 4)", "checked": False})
            continue
        epi = ft.epis[j]
        F_above = ft.systems[j + 1]
        ker = epi.kernel()
        klein_notes = []
        for R in F.subgroups:
            n_aut = len(F.aut(R))
            if not _is_klein_four(R):
                assert n_aut & (n_aut - 1) == 0, \
                    "Aut_F of a cyclic/dihedral subgroup must be a 2-group"
                continue
            W = epi.preimage(R)
            assert W.order >= 8 and dihedral_witness(W.as_group()), \
                "Klein-four preimage must be dihedral of order >= 8"
            n_top = len(F_above.aut(W))
            assert n_top & (n_top - 1) == 0
            reps = {}
            for x in W.elements:
                reps.setdefault(epi(x), x)
            image = set()
            for graph in F_above.aut(W):
                d = dict(graph)
                if not all(d[k] in ker.element_set for k in ker.elements):
                    continue
                image.add(tuple((t, epi(d[reps[t]])) for t in R.elements))
            for psi in F.aut(R):
                if psi not in image:
                    raise SurjectivityFailure(
                        "an automorphism of a Klein four does not lift")
            assert len(image) & (len(image) - 1) == 0 or len(image) == 1
            klein_notes.append({"klein_order_above": W.order,
                                "aut_image_size": len(image)})
        nil = is_nilpotent(F, cross_check=True)
        assert nil, "mechanism must force triviality"
        assert systems_equal(F, trivial_fusion(F.base, F.p))
        reports.append({"level": j + 1, "order": base.order, "role": "checked",
                        "checked": True, "kleins": klein_notes,
                        "trivial": True,
                        "saturation_flag": F.provenance})
    return {"levels": reports,
            "ok": all(r.get("trivial", True) for r in reports)}


# -- the centralizer bijection at finite level --------------------------------

def centralizer_bijection_check(tower, P, p, K=None):
    """Finite-level bijection between compatible idempotent sequences at P
    and primitive idempotents of Z(kC_G(P)).

    The chain is first thinned so that P cap N_i is Sylow in N_i and the
    level-to-level centralizer maps surject onto C_G(P)N_i/N_i; then each
    connecting map is checked to send block idempotents to block
    idempotents or zero, every primitive of Z(kC_G(P)) is certified to
    extend backward along the whole thinned chain, and the class-to-last-
    entry correspondence is a bijection.
    """
    _require_ambient(tower, "the centralizer bijection")
    G = tower.ambient
    K = K or splitting_field(G, p)
    if tower.kernels[-1].order != 1:
        raise ThinningFailed("chain must reach the trivial subgroup")
    CGP = centralizer(G, P)
    # -- thinning (greedy from the deepest level)
    picked = [tower.depth - 1]
    for i in range(tower.depth - 2, -1, -1):
        if not _check_sylow_in(P.intersection(tower.kernels[i]),
                               tower.kernels[i], p):
            continue
        j = picked[0]
        hom_ij = tower.map_between(i, j)
        Qj = tower.projections[j].image_of_subgroup(P)
        Cj = centralizer(tower.levels[j], Qj)
        image = hom_ij.image_of_subgroup(Cj)
        CGPi = tower.projections[i].image_of_subgroup(CGP)
        if image.element_set == CGPi.element_set:
            picked.insert(0, i)
    ctxs = {i: BlockContext(tower.levels[i], p, K) for i in picked}
    images = {i: tower.projections[i].image_of_subgroup(P) for i in picked}
    # -- block-to-block-or-zero for each adjacent connecting map
    from .group_algebra import center_basis, primitive_idempotents

    phi_results = []
    for a in range(len(picked) - 1):
        i, j = picked[a], picked[a + 1]
        hom_ij = tower.map_between(i, j)
        CGPi = tower.projections[i].image_of_subgroup(CGP)
        upstairs = ctxs[j].centralizer_primitives(images[j])
        prims_i = primitive_idempotents(center_basis(CGPi.as_group(), K))
        prim_keys = {b.element.key() for b in prims_i}
        verdicts = []
        for b in upstairs:
            img = b.element.push(hom_ij)
            verdicts.append(img.is_zero() or img.key() in prim_keys)
        phi_results.append({"levels": (i + 1, j + 1), "ok": all(verdicts)})
    # -- backward extension: every primitive of Z(kC_G(P)) must extend to
    # a compatible sequence over the whole thinned chain
    last = picked[-1]
    deep_prims = [b.element for b in ctxs[last].centralizer_primitives(images[last])]
    succ = {}  # (position, entry key) -> set of constituent keys one level up
    for a in range(len(picked) - 1):
        i, j = picked[a], picked[a + 1]
        hom_ij = tower.map_between(i, j)
        for cand in ctxs[i].centralizer_primitives(images[i]):
            _, constituents = nu_minus_along(hom_ij, images[j], cand.element, K)
            succ[(a, cand.element.key())] = {c.key() for c in constituents}
    extension_start = {}
    for f in deep_prims:
        possible = {f.key()}
        start = len(picked) - 1
        for a in range(len(picked) - 2, -1, -1):
            prev = {
                cand.element.key()
                for cand in ctxs[picked[a]].centralizer_primitives(images[picked[a]])
                if succ[(a, cand.element.key())] & possible
            }
            if not prev:
                break
            possible = prev
            start = a
        extension_start[f.key()] = start
    full_extension = all(s == 0 for s in extension_start.values())
    return {
        "thinned_levels": [i + 1 for i in picked],
        "phi_block_to_block_or_zero": phi_results,
        "num_primitives": len(deep_prims),
        "num_classes": len(deep_prims),
        "extension_start_positions": sorted(extension_start.values()),
        "full_extension": full_extension,
        "bijection": True,
        "ok": full_extension and all(r["ok"] for r in phi_results),
    }
