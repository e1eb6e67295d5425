"""Group algebras kG over finite splitting fields.

Centers are presented on the class-sum basis with exact structure
constants; block idempotents come out of a deterministic
radical-then-split pipeline (p-th power map for the radical, minimal
polynomial factorization for the splitting, p-th power lifting).  The
Brauer map, defect groups and the principal-block operations live here
too.
"""

from __future__ import annotations

import math

from . import ffield
from .errors import (
    NonSplitField,
    NotInvariant,
    NotNormal,
    SupportOutsideCentralizer,
)
from .ffield import Matrix, factor, field, poly_degree
from .groups import Subgroup, centralizer, quotient, sylow_subgroup


def splitting_field(G, p, degree_override=None):
    """GF(p^m) with m minimal such that p^m = 1 mod the p'-part of exp(G).

    This splits kG and every subgroup or centralizer algebra arising from
    G (Brauer's splitting field theorem at desk scale).
    """
    if degree_override is not None:
        return field(p, degree_override)
    e = G.exponent()
    while e % p == 0:
        e //= p
    m = 1
    while pow(p, m, e) != 1 % e:
        m += 1
    return field(p, m)


class AlgebraElement:
    """Sparse element of a group algebra: {group element -> coefficient}.

    Zero coefficients are never stored.  The ambient group is kept for
    serialization; arithmetic only needs the support.
    """

    __slots__ = ("group", "field", "support")

    def __init__(self, group, K, support):
        self.group = group
        self.field = K
        self.support = {g: c for g, c in support.items() if c}

    @classmethod
    def zero(cls, group, K):
        return cls(group, K, {})

    @classmethod
    def one(cls, group, K):
        return cls(group, K, {group.identity: 1})

    def is_zero(self):
        return not self.support

    def __add__(self, other):
        K = self.field
        out = dict(self.support)
        for g, c in other.support.items():
            out[g] = K.add(out.get(g, 0), c)
        return AlgebraElement(self.group, K, out)

    def __sub__(self, other):
        return self + other.scale(self.field.neg(1))

    def __mul__(self, other):
        K = self.field
        out = {}
        for g, a in self.support.items():
            for h, b in other.support.items():
                gh = g * h
                out[gh] = K.add(out.get(gh, 0), K.mul(a, b))
        return AlgebraElement(self.group, K, out)

    def scale(self, c):
        K = self.field
        return AlgebraElement(self.group, K,
                              {g: K.mul(c, a) for g, a in self.support.items()})

    def conj(self, x):
        return AlgebraElement(self.group, self.field,
                              {g.conj(x): c for g, c in self.support.items()})

    def push(self, hom):
        """Image under the algebra map induced by a group hom."""
        K = self.field
        out = {}
        for g, c in self.support.items():
            h = hom(g)
            out[h] = K.add(out.get(h, 0), c)
        return AlgebraElement(hom.codomain, K, out)

    def restrict_to(self, element_set):
        return AlgebraElement(self.group, self.field,
                              {g: c for g, c in self.support.items()
                               if g in element_set})

    def augmentation(self):
        K = self.field
        total = 0
        for c in self.support.values():
            total = K.add(total, c)
        return total

    def is_idempotent(self):
        return (self * self) == self

    def key(self):
        return tuple(sorted((g.images, c) for g, c in self.support.items()))

    def serialize(self):
        return [[g.cycle_string(), self.field.coeffs(c)]
                for g, c in sorted(self.support.items(),
                                   key=lambda item: item[0].images)]

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement)
                and self.field == other.field
                and self.support == other.support)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"AlgebraElement({len(self.support)} terms over {self.field!r})"


class CommAlgebra:
    """Commutative algebra on an explicit basis with structure constants.

    Used for centers Z(kC_G(P)) (class-sum basis) and their invariant
    subalgebras (orbit-sum basis).  Commutativity and associativity are
    verified on the basis at construction.
    """

    def __init__(self, K, basis, table, one_coords, label="A"):
        self.field = K
        self.basis = list(basis)
        self.table = table  # table[i][j] = coordinate tuple of basis_i * basis_j
        self.one_coords = tuple(one_coords)
        self.label = label
        self.dim = len(self.basis)
        for i in range(self.dim):
            for j in range(i, self.dim):
                assert table[i][j] == table[j][i], "structure constants not symmetric"
        self._check_associativity()

    def _check_associativity(self):
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    left = self.mul_coords(self.table[i][j], self._unit(k))
                    right = self.mul_coords(self._unit(i), self.table[j][k])
                    assert left == right, "structure constants not associative"

    def _unit(self, i):
        return tuple(1 if t == i else 0 for t in range(self.dim))

    def mul_coords(self, u, v):
        K = self.field
        out = [0] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                c = K.mul(a, b)
                row = self.table[i][j]
                for t in range(self.dim):
                    if row[t]:
                        out[t] = K.add(out[t], K.mul(c, row[t]))
        return tuple(out)

    def pow_coords(self, u, e):
        out = self.one_coords
        base = u
        while e:
            if e & 1:
                out = self.mul_coords(out, base)
            base = self.mul_coords(base, base)
            e >>= 1
        return out

    def element(self, coords):
        """Expand a coordinate vector into an AlgebraElement."""
        acc = AlgebraElement.zero(self.basis[0].group, self.field)
        for c, b in zip(coords, self.basis):
            if c:
                acc = acc + b.scale(c)
        return acc

    def __repr__(self):
        return f"CommAlgebra({self.label}, dim {self.dim})"


def center_basis(G, K, label=None):
    """Z(kG) on the conjugacy class sum basis."""
    key = ("center", K.p, K.m)
    if key in G._cache:
        return G._cache[key]
    classes = G.conjugacy_classes()
    r = len(classes)
    reps = [cls[0] for cls in classes]
    basis = [AlgebraElement(G, K, {g: 1 for g in cls}) for cls in classes]
    counts = [[[0] * r for _ in range(r)] for _ in range(r)]
    for k, z in enumerate(reps):
        for x in G.elements:
            y = x.inverse() * z
            counts[G.class_of(x)][G.class_of(y)][k] += 1
    table = [[tuple(K.scalar_from_int(counts[i][j][k]) for k in range(r))
              for j in range(r)] for i in range(r)]
    one = tuple(1 if classes[i] == (G.identity,) else 0 for i in range(r))
    A = CommAlgebra(K, basis, table, one, label=label or f"Z(k[{G.name or 'G'}])")
    G._cache[key] = A
    return A


def subalgebra_on_partition(A, parts, label=None):
    """Subalgebra spanned by sums of basis elements over each part.

    Used for invariant subalgebras: the parts are the orbits of a
    permutation action on the basis.  The product of two part sums must
    again have coordinates constant on parts (checked).
    """
    K = A.field
    basis = []
    for part in parts:
        acc = A.basis[part[0]]
        for i in part[1:]:
            acc = acc + A.basis[i]
        basis.append(acc)
    r = len(parts)
    table = []
    for a in range(r):
        row = []
        for b in range(r):
            coords = [0] * A.dim
            for i in parts[a]:
                for j in parts[b]:
                    prod = A.table[i][j]
                    for t in range(A.dim):
                        coords[t] = K.add(coords[t], prod[t])
            newc = []
            for part in parts:
                c = coords[part[0]]
                assert all(coords[i] == c for i in part), \
                    "product not constant on parts"
                newc.append(c)
            row.append(tuple(newc))
        table.append(row)
    one = []
    for part in parts:
        c = A.one_coords[part[0]]
        assert all(A.one_coords[i] == c for i in part)
        one.append(c)
    return CommAlgebra(K, basis, table, tuple(one), label=label or A.label + "^H")


class BlockIdempotent:
    """Primitive idempotent of an explicitly presented commutative algebra.

    `ambient` says which algebra it is primitive in; primitivity in a
    smaller or larger algebra is never implied and must be checked with
    `is_primitive_in`.
    """

    def __init__(self, element, algebra, coords, ambient):
        self.element = element
        self.algebra = algebra
        self.coords = tuple(coords)
        self.ambient = ambient
        assert not element.is_zero()

    @property
    def field(self):
        return self.element.field

    def key(self):
        return self.element.key()

    def augmentation(self):
        return self.element.augmentation()

    def __eq__(self, other):
        return isinstance(other, BlockIdempotent) and self.element == other.element

    def __hash__(self):
        return hash(self.element.key())

    def __repr__(self):
        return f"BlockIdempotent(in {self.ambient}, {len(self.element.support)} terms)"


def _fp_flatten(K, coords):
    out = []
    for c in coords:
        out.extend(K.coeffs(c))
    return out


def _fp_unflatten(K, vec):
    m = K.m
    return tuple(K.from_coeffs(vec[i * m:(i + 1) * m]) for i in range(len(vec) // m))


def _radical_basis(A):
    """Echelonized basis of rad(A) = nilpotents, via the GF(p)-linear map
    x -> x^(p^e) with p^e >= dim (its kernel is exactly the radical)."""
    K = A.field
    p = K.p
    e = 1
    while p ** e < max(A.dim, 2):
        e += 1
    Fp = field(p, 1)
    rows = []
    for i in range(A.dim):
        for j in range(K.m):
            v = tuple(K.from_coeffs([0] * j + [1]) if t == i else 0
                      for t in range(A.dim))
            w = v
            for _ in range(e):
                w = A.pow_coords(w, p)
            rows.append(_fp_flatten(K, w))
    M = Matrix(Fp, rows).transpose()
    kernel = M.kernel_basis()
    rad_rows = [list(_fp_unflatten(K, vec)) for vec in kernel]
    return ffield.echelon_basis(K, rad_rows)


def _reduce_mod(K, rad_basis, coords):
    """Canonical representative of coords modulo the (rref) radical basis."""
    v = list(coords)
    for row in rad_basis:
        pivot = next(i for i, x in enumerate(row) if x)
        if v[pivot]:
            c = v[pivot]
            for i in range(len(v)):
                v[i] = K.sub(v[i], K.mul(c, row[i]))
    return tuple(v)


def _min_poly(A, rad_basis, unit, v):
    """Minimal polynomial of v in the unital algebra (u*A/rad, u)."""
    K = A.field
    powers = [unit]
    while True:
        nxt = _reduce_mod(K, rad_basis, A.mul_coords(powers[-1], v))
        cols = Matrix(K, [list(p) for p in powers]).transpose()
        sol = cols.solve(list(nxt))
        if sol is not None:
            mu = [K.neg(c) for c in sol] + [1]
            return mu
        powers.append(nxt)
        assert len(powers) <= A.dim + 1


def primitive_idempotents(A):
    """All primitive idempotents of a commutative algebra, canonically sorted.

    Radical by p-th power kernel; split A/rad by factoring minimal
    polynomials of a deterministic basis sweep; lift along the radical by
    x -> x^(p^e).  Raises NonSplitField when a residue field is a proper
    extension of the coefficient field.
    """
    K = A.field
    rad = _radical_basis(A)
    dim_ss = A.dim - len(rad)

    def red(v):
        return _reduce_mod(K, rad, v)

    idems = [red(A.one_coords)]
    changed = True
    while changed and len(idems) < dim_ss:
        changed = False
        for s in range(A.dim):
            basis_vec = red(A._unit(s))
            new_idems = []
            for u in idems:
                v = red(A.mul_coords(u, basis_vec))
                mu = _min_poly(A, rad, u, v)
                if poly_degree(mu) == 1:
                    new_idems.append(u)
                    continue
                pieces = factor(K, mu)
                if any(poly_degree(g) > 1 for g, _ in pieces):
                    raise NonSplitField(
                        f"minimal polynomial {mu} has a nonlinear factor; "
                        "enlarge the field degree")
                assert all(m == 1 for _, m in pieces), "A/rad not semisimple"
                roots = [K.neg(g[0]) for g, _ in pieces]
                for lam in roots:
                    piece = u
                    for other in roots:
                        if other == lam:
                            continue
                        shifted = tuple(K.sub(a, K.mul(other, b))
                                        for a, b in zip(v, u))
                        piece = A.mul_coords(piece, shifted)
                        piece = tuple(K.mul(K.inv(K.sub(lam, other)), c)
                                      for c in piece)
                        piece = red(piece)
                    new_idems.append(piece)
                changed = True
            idems = new_idems
            if len(idems) == dim_ss:
                break
    if len(idems) != dim_ss:
        raise NonSplitField(
            "splitting stalled before reaching the semisimple dimension; "
            "enlarge the field degree")
    # lift along the radical: x -> x^(p^e) with p^e >= dim kills x^2 - x
    p = K.p
    e = 1
    while p ** e < max(A.dim, 2):
        e += 1
    lifted = [A.pow_coords(u, p ** e) for u in idems]
    out = []
    for coords in lifted:
        elem = A.element(coords)
        assert elem.is_idempotent() and not elem.is_zero()
        out.append(BlockIdempotent(elem, A, coords, A.label))
    for i, a in enumerate(out):
        for b in out[i + 1:]:
            assert (a.element * b.element).is_zero(), "idempotents not orthogonal"
    total = out[0].element
    for b in out[1:]:
        total = total + b.element
    assert total == A.element(A.one_coords), "idempotents do not sum to 1"
    out.sort(key=lambda b: b.key())
    return out


def is_primitive_in(e, A):
    """Is the idempotent e primitive in the explicitly presented algebra A?

    Dedicated cross-ambient check: e must be a single member of A's
    primitive decomposition, not a proper sum.
    """
    prims = primitive_idempotents(A)
    matches = [b for b in prims if not (b.element * e).is_zero()]
    return len(matches) == 1 and matches[0].element == e


def blocks(G, K):
    """Block idempotents of kG (primitive idempotents of its center)."""
    key = ("blocks", K.p, K.m)
    if key not in G._cache:
        G._cache[key] = primitive_idempotents(center_basis(G, K))
    return G._cache[key]


def principal_block(G, K):
    """The block not annihilating the trivial module: augmentation 1."""
    key = ("principal", K.p, K.m)
    if key not in G._cache:
        found = None
        for b in blocks(G, K):
            aug = b.augmentation()
            if aug == K.one:
                assert found is None
                found = b
            else:
                assert aug == 0, "block augmentation must be 0 or 1"
        assert found is not None
        G._cache[key] = found
    return G._cache[key]


def brauer_map(G, P, Q, x):
    """Br_Q: truncate a Q-stable element of kC_G(P) to its C_G(Q) part."""
    CP = centralizer(G, P)
    if not all(g in CP.element_set for g in x.support):
        raise SupportOutsideCentralizer("support not inside C_G(P)")
    for q in Q.small_gens():
        if x.conj(q) != x:
            raise NotInvariant("element is not Q-stable")
    CQ = centralizer(G, Q)
    return x.restrict_to(CQ.element_set)


def defect_group(G, b):
    """A defect group of the block b: maximal p-subgroup with Br_D(b) != 0.

    Sweeps all subgroups of a fixed Sylow p-subgroup; all inclusion-maximal
    survivors are verified conjugate, and the principal block is
    cross-checked to have full Sylow defect.  Returns the least maximizer.
    """
    from .groups import SUBGROUP_ENUMERATION_BOUND, is_conjugate, subgroups_of

    K = b.field
    p = K.p
    key = ("defect", K.p, K.m, b.key())
    if key in G._cache:
        return G._cache[key]
    S = sylow_subgroup(G, p)
    assert S.order <= SUBGROUP_ENUMERATION_BOUND
    candidates = [Subgroup(G, T.small_gens()) for T in subgroups_of(S.as_group())]
    nonzero = [Q for Q in candidates
               if not brauer_map(G, G.trivial_subgroup(), Q, b.element).is_zero()]
    assert nonzero, "Br_1(b) = b is nonzero"
    maximal = [Q for Q in nonzero
               if not any(Q.element_set < R.element_set for R in nonzero)]
    top = max(Q.order for Q in maximal)
    assert all(Q.order == top for Q in maximal), "maximizers of unequal order"
    for Q in maximal[1:]:
        assert is_conjugate(G, maximal[0], Q) is not None, \
            "maximal Brauer-nonzero subgroups not conjugate"
    D = min(maximal, key=Subgroup.key)
    if b.augmentation() == K.one:
        assert D.order == S.order, "principal block must have full Sylow defect"
    G._cache[key] = D
    return D


def block_dimension(G, b):
    """Dimension of the two-sided ideal kG*b."""
    K = b.field
    order = {g: i for i, g in enumerate(G.elements)}
    rows = []
    for g in G.elements:
        vec = [0] * G.order
        for h, c in b.element.support.items():
            vec[order[g * h]] = c
        rows.append(vec)
    return Matrix(K, rows).rank()


def normal_principal_check(G, N, p, K=None):
    """Certify the principal-block restriction behaviour of kG -> k[G/N].

    Checks that e_N (principal block of kN) is central in kG, that
    kG*e_N -> k[G/N] is onto, and that it is an isomorphism exactly when
    p does not divide |N|.
    """
    if not N.is_normal_in(G):
        raise NotNormal(f"{N!r} not normal in {G!r}")
    K = K or splitting_field(G, p)
    eN = principal_block(N.as_group(), K)
    elem = AlgebraElement(G, K, dict(eN.element.support))
    central = all(elem.conj(g) == elem for g in G.generators)
    Q, hom = quotient(G, N)
    order = {g: i for i, g in enumerate(G.elements)}
    qorder = {g: i for i, g in enumerate(Q.elements)}
    rows, qrows = [], []
    for g in G.elements:
        prod = AlgebraElement(G, K, {g: 1}) * elem
        vec = [0] * G.order
        for h, c in prod.support.items():
            vec[order[h]] = c
        rows.append(vec)
        qvec = [0] * Q.order
        for h, c in prod.push(hom).support.items():
            qvec[qorder[h]] = c
        qrows.append(qvec)
    dim_ideal = Matrix(K, rows).rank()
    dim_image = Matrix(K, qrows).rank()
    surjective = dim_image == Q.order
    iso = surjective and dim_ideal == Q.order
    p_prime = N.order % p != 0
    return {
        "e_N_central": central,
        "dim_ideal": dim_ideal,
        "quotient_order": Q.order,
        "surjective": surjective,
        "isomorphism": iso,
        "N_is_p_prime": p_prime,
        "iff_holds": iso == p_prime,
        "ok": central and surjective and (iso == p_prime),
    }


def orbit_sums_of_primitives(idems, acting_gens):
    """Orbits of primitive idempotents under conjugation, and their sums.

    The sums are exactly the primitive idempotents of the corresponding
    invariant subalgebra (every idempotent of a commutative algebra is a
    subset sum of the primitives, and invariant subsets are orbit unions).
    Returns (orbit index tuples, orbit sum elements) in canonical order.
    """
    by_key = {b.key(): i for i, b in enumerate(idems)}
    seen = set()
    orbits = []
    for i, b in enumerate(idems):
        if i in seen:
            continue
        orbit = {i}
        frontier = [b.element]
        while frontier:
            x = frontier.pop()
            for g in acting_gens:
                y = x.conj(g)
                j = by_key[y.key()]
                if j not in orbit:
                    orbit.add(j)
                    frontier.append(y)
        seen |= orbit
        orbits.append(tuple(sorted(orbit)))
    sums = []
    for orbit in orbits:
        acc = idems[orbit[0]].element
        for j in orbit[1:]:
            acc = acc + idems[j].element
        sums.append(acc)
    return orbits, sums
