"""Finite permutation groups with full element enumeration.

Everything here works by exhaustive enumeration: the target groups have
order at most a few hundred (with a hard guard at 200 000), so exactness
and determinism are preferred over clever data structures.  All objects
are immutable after construction; every sweep runs in a fixed sorted
order so repeated runs produce identical results.
"""

from __future__ import annotations

import math
import re
from functools import lru_cache

from .errors import (
    EnumerationBoundExceeded,
    NonBijection,
    NotAHomomorphism,
    NotNormal,
    NotPGroup,
    ParseError,
    SubgroupNotContained,
)

ENUMERATION_BOUND = 200_000
SUBGROUP_ENUMERATION_BOUND = 256


class Perm:
    """A permutation of {0..n-1}, stored as its tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        if sorted(images) != list(range(n)):
            raise NonBijection(f"not a bijection of 0..{n - 1}: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        # (a * b)(x) = a(b(x)): apply b first.
        a, b = self.images, other.images
        return Perm(a[b[x]] for x in range(len(a)))

    def inverse(self):
        images = self.images
        inv = [0] * len(images)
        for i, j in enumerate(images):
            inv[j] = i
        return Perm(inv)

    def conj(self, g):
        """self ** g = g^-1 * self * g."""
        return g.inverse() * self * g

    def comm(self, g):
        """[self, g] = self^-1 g^-1 self g."""
        return self.inverse() * g.inverse() * self * g

    def __pow__(self, k):
        n = len(self.images)
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm(range(n))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def order(self):
        return math.lcm(*(len(c) for c in self.cycles()))

    def cycles(self):
        """Disjoint cycles, each starting at its minimum, sorted by minimum."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                seen.add(start)
                continue
            cyc = [start]
            seen.add(start)
            cur = self.images[start]
            while cur != start:
                cyc.append(cur)
                seen.add(cur)
                cur = self.images[cur]
            out.append(cyc)
        return out

    def cycle_string(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycs)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __le__(self, other):
        return self.images <= other.images

    def __repr__(self):
        return f"Perm{self.cycle_string()}"


def perm_from_cycles(degree, text):
    """Parse cycle notation like ``(0 1)(2 3 4)`` or ``()``."""
    text = text.strip()
    if text in ("()", "", "id"):
        return Perm(range(degree))
    if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\))+", text):
        raise ParseError(f"bad cycle notation: {text!r}")
    images = list(range(degree))
    for cyc in re.findall(r"\(([^()]*)\)", text):
        pts = [int(t) for t in re.split(r"[\s,]+", cyc.strip()) if t]
        if len(set(pts)) != len(pts):
            raise ParseError(f"repeated point in cycle: {cyc!r}")
        for p in pts:
            if p >= degree:
                raise ParseError(f"point {p} out of range for degree {degree}")
        for i, p in enumerate(pts):
            images[p] = pts[(i + 1) % len(pts)]
    try:
        return Perm(images)
    except NonBijection as exc:
        raise ParseError(f"cycles overlap in {text!r}") from exc


class PermGroup:
    """Group generated by permutations, with its full element list.

    The element list is sorted by image tuple; all downstream sweeps
    iterate it in that order, which is what makes reports reproducible.
    """

    def __init__(self, degree, generators, name=None, enum_bound=ENUMERATION_BOUND):
        self.degree = degree
        gens = [g if isinstance(g, Perm) else Perm(g) for g in generators]
        for g in gens:
            if g.degree != degree:
                raise NonBijection(f"generator degree {g.degree} != {degree}")
        self.generators = tuple(gens)
        self.name = name
        self.identity = Perm(range(degree))
        self._words = {self.identity: ()}
        frontier = [self.identity]
        while frontier:
            new = []
            for g in frontier:
                for i, s in enumerate(gens):
                    h = g * s
                    if h not in self._words:
                        self._words[h] = self._words[g] + (i,)
                        new.append(h)
                        if len(self._words) > enum_bound:
                            raise EnumerationBoundExceeded(
                                f"order exceeds bound {enum_bound}"
                            )
            frontier = new
        self.elements = tuple(sorted(self._words))
        self.element_set = frozenset(self.elements)
        self.order = len(self.elements)
        self._cache = {}

    def __contains__(self, perm):
        return perm in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return self.order

    def __repr__(self):
        label = self.name or f"degree {self.degree}"
        return f"PermGroup({label}, order {self.order})"

    def word(self, g):
        """g as a tuple of generator indices (left-to-right product)."""
        return self._words[g]

    def exponent(self):
        return math.lcm(*(g.order() for g in self.elements))

    def is_abelian(self):
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def is_p_group(self, p):
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def conjugacy_classes(self):
        """Partition of the elements into conjugacy classes.

        Classes are sorted by their minimal element; each class is a
        sorted tuple.
        """
        if "classes" not in self._cache:
            seen = set()
            classes = []
            for x in self.elements:
                if x in seen:
                    continue
                orbit = {x}
                frontier = [x]
                while frontier:
                    y = frontier.pop()
                    for g in self.generators:
                        z = y.conj(g)
                        if z not in orbit:
                            orbit.add(z)
                            frontier.append(z)
                seen |= orbit
                classes.append(tuple(sorted(orbit)))
            classes.sort(key=lambda c: c[0])
            self._cache["classes"] = tuple(classes)
        return self._cache["classes"]

    def class_of(self, x):
        if "class_index" not in self._cache:
            idx = {}
            for i, cls in enumerate(self.conjugacy_classes()):
                for y in cls:
                    idx[y] = i
            self._cache["class_index"] = idx
        return self._cache["class_index"][x]

    def center_elements(self):
        return tuple(
            x for x in self.elements
            if all(x * g == g * x for g in self.generators)
        )

    def subgroup(self, generators):
        return Subgroup(self, generators)

    def full_subgroup(self):
        if "full_subgroup" not in self._cache:
            self._cache["full_subgroup"] = Subgroup(self, self.generators)
        return self._cache["full_subgroup"]

    def trivial_subgroup(self):
        return Subgroup(self, ())


def group_from_generators(degree, perms, name=None, enum_bound=ENUMERATION_BOUND):
    """Enumerate the group generated by ``perms`` on {0..degree-1}."""
    return PermGroup(degree, perms, name=name, enum_bound=enum_bound)


class Subgroup:
    """Subgroup of a PermGroup, closed and checked at construction."""

    def __init__(self, parent, generators):
        self.parent = parent
        gens = tuple(g if isinstance(g, Perm) else Perm(g) for g in generators)
        for g in gens:
            if g not in parent.element_set:
                raise SubgroupNotContained(f"{g} not in {parent}")
        self.generators = gens
        elems = {parent.identity}
        frontier = [parent.identity]
        while frontier:
            new = []
            for x in frontier:
                for s in gens:
                    y = x * s
                    if y not in elems:
                        elems.add(y)
                        new.append(y)
            frontier = new
        self.elements = tuple(sorted(elems))
        self.element_set = frozenset(elems)
        self.order = len(elems)

    @classmethod
    def from_elements(cls, parent, elements):
        return cls(parent, tuple(elements))

    def key(self):
        """Canonical sort key: (order, sorted element images)."""
        return (self.order, tuple(g.images for g in self.elements))

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.element_set == other.element_set
        )

    def __hash__(self):
        return hash(self.element_set)

    def __contains__(self, perm):
        return perm in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return self.order

    def __le__(self, other):
        return self.element_set <= other.element_set

    def __lt__(self, other):
        return self.element_set < other.element_set

    def __repr__(self):
        return f"Subgroup(order {self.order} of {self.parent!r})"

    def is_p_group(self, p):
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def small_gens(self):
        """A short generating sequence, chosen greedily and deterministically."""
        if self.order == 1:
            return ()
        gens = []
        have = {self.parent.identity}
        for x in self.elements:
            if x in have:
                continue
            gens.append(x)
            have = Subgroup(self.parent, gens).element_set
            if len(have) == self.order:
                break
        return tuple(gens)

    def as_group(self):
        """View this subgroup as a standalone PermGroup (same degree)."""
        if not hasattr(self, "_as_group"):
            g = PermGroup(self.parent.degree, self.small_gens())
            assert g.element_set == self.element_set
            self._as_group = g
        return self._as_group

    def conjugate(self, g):
        return Subgroup(self.parent, tuple(x.conj(g) for x in self.small_gens()))

    def is_normal_in(self, other):
        """True when ``other`` normalizes this subgroup."""
        gens = other.small_gens() if isinstance(other, Subgroup) else other.generators
        return all(x.conj(g) in self.element_set for g in gens for x in self.small_gens())

    def intersection(self, other):
        common = self.element_set & other.element_set
        return Subgroup.from_elements(self.parent, sorted(common))

    def join(self, other):
        return Subgroup(self.parent, self.small_gens() + other.small_gens())


def centralizer(G, S):
    """C_G(S) by exhaustive search."""
    key = ("centralizer", S.element_set)
    if key not in G._cache:
        gens = S.small_gens()
        elems = [g for g in G.elements if all(g * s == s * g for s in gens)]
        G._cache[key] = Subgroup.from_elements(G, elems)
    return G._cache[key]


def normalizer(G, S):
    """N_G(S) by exhaustive search."""
    key = ("normalizer", S.element_set)
    if key not in G._cache:
        gens = S.small_gens()
        elems = [
            g for g in G.elements
            if all(s.conj(g) in S.element_set for s in gens)
        ]
        G._cache[key] = Subgroup.from_elements(G, elems)
    return G._cache[key]


def sylow_subgroup(G, p):
    """A Sylow p-subgroup; the same one on every call (sorted sweeps)."""
    key = ("sylow", p)
    if key in G._cache:
        return G._cache[key]
    target = 1
    n = G.order
    while n % p == 0:
        target *= p
        n //= p
    P = G.trivial_subgroup()
    while P.order < target:
        N = normalizer(G, P) if P.order > 1 else G.full_subgroup()
        grown = False
        for y in N.elements:
            if y in P.element_set:
                continue
            o = y.order()
            m = o
            while m % p == 0:
                m //= p
            yp = y ** m  # p-part of y
            if yp not in P.element_set and not yp.is_identity():
                Q = Subgroup(G, P.small_gens() + (yp,))
                if Q.is_p_group(p):
                    P = Q
                    grown = True
                    break
        assert grown, "Sylow growth step failed"
    G._cache[key] = P
    return P


def _transporter(G, S, T):
    """All g in G with S^g = T (empty tuple when none)."""
    if S.order != T.order:
        return ()
    gens = S.small_gens()
    return tuple(
        g for g in G.elements
        if all(s.conj(g) in T.element_set for s in gens)
    )


def is_conjugate(G, S, T):
    """A witness g with S^g = T, or None.  Accepts subgroups or elements."""
    if isinstance(S, Perm):
        for g in G.elements:
            if S.conj(g) == T:
                return g
        return None
    for g in _transporter(G, S, T):
        return g
    return None


def transporter(G, S, T):
    return _transporter(G, S, T)


def conjugacy_classes(G):
    return G.conjugacy_classes()


def quotient(G, N):
    """(G/N, natural epimorphism), N normal in G (checked).

    The quotient acts on the right cosets of N; cosets are labelled by
    their minimal element and sorted, so the construction is canonical.
    """
    if not N.is_normal_in(G):
        raise NotNormal(f"{N!r} is not normal in {G!r}")
    key = ("quotient", N.element_set)
    if key in G._cache:
        return G._cache[key]
    coset_of = {}
    reps = []
    for g in G.elements:
        if g in coset_of:
            continue
        coset = sorted(n * g for n in N.elements)
        rep = coset[0]
        reps.append(rep)
        for x in coset:
            coset_of[x] = rep
    reps.sort()
    index = {rep: i for i, rep in enumerate(reps)}

    def act(g):
        return Perm(index[coset_of[rep * g]] for rep in reps)

    gen_images = [act(g) for g in G.generators]
    Q = PermGroup(len(reps), gen_images, name=f"{G.name or 'G'}/N")
    hom = GroupHom(G, Q, gen_images)
    assert hom.is_surjective()
    assert hom.kernel().element_set == N.element_set
    G._cache[key] = (Q, hom)
    return Q, hom


class GroupHom:
    """Homomorphism specified by generator images, verified at construction.

    The verification walks the Cayley graph of the domain once: for every
    element g and generator s it checks phi(g*s) = phi(g)*phi(s), which
    pins down multiplicativity on all of the domain.
    """

    def __init__(self, domain, codomain, gen_images):
        if len(gen_images) != len(domain.generators):
            raise NotAHomomorphism("generator image count mismatch")
        for h in gen_images:
            if h not in codomain.element_set:
                raise NotAHomomorphism(f"image {h} not in codomain")
        self.domain = domain
        self.codomain = codomain
        self.gen_images = tuple(gen_images)
        images = {domain.identity: codomain.identity}
        frontier = [domain.identity]
        while frontier:
            new = []
            for g in frontier:
                img = images[g]
                for s, hs in zip(domain.generators, self.gen_images):
                    gs = g * s
                    expected = img * hs
                    if gs in images:
                        if images[gs] != expected:
                            raise NotAHomomorphism(
                                "generator images do not respect relations"
                            )
                    else:
                        images[gs] = expected
                        new.append(gs)
            frontier = new
        self._map = images

    def __call__(self, x):
        if isinstance(x, Perm):
            return self._map[x]
        if isinstance(x, Subgroup):
            return self.image_of_subgroup(x)
        raise TypeError(f"cannot apply hom to {x!r}")

    def image_of_subgroup(self, S):
        return Subgroup(self.codomain, tuple(self._map[g] for g in S.small_gens()))

    def image(self):
        return Subgroup(self.codomain, self.gen_images)

    def kernel(self):
        ker = [g for g in self.domain.elements if self._map[g].is_identity()]
        return Subgroup.from_elements(self.domain, ker)

    def preimage(self, T):
        elems = [g for g in self.domain.elements if self._map[g] in T.element_set]
        return Subgroup.from_elements(self.domain, elems)

    def is_surjective(self):
        return self.image().order == self.codomain.order

    def is_bijective(self):
        return self.is_surjective() and self.domain.order == self.codomain.order

    def inverse(self):
        assert self.is_bijective()
        inv = {v: k for k, v in self._map.items()}
        gen_images = [inv[g] for g in self.codomain.generators]
        return GroupHom(self.codomain, self.domain, gen_images)

    def then(self, other):
        """Composite hom: first self, then other."""
        assert self.codomain.element_set == other.domain.element_set
        return GroupHom(
            self.domain, other.codomain,
            [other(h) for h in self.gen_images],
        )

    def __repr__(self):
        return f"GroupHom({self.domain!r} -> {self.codomain!r})"


def hom_from_function(domain, codomain, fn):
    """Build a verified hom from a function on elements."""
    return GroupHom(domain, codomain, [fn(g) for g in domain.generators])


def subgroups_of(G):
    """Every subgroup of G, as a sorted duplicate-free list.

    Computed as the join-closure of all cyclic subgroups, which is
    complete for arbitrary finite groups: any subgroup is a join of the
    cyclic subgroups it contains, and joins are reached pairwise.
    """
    if G.order > SUBGROUP_ENUMERATION_BOUND:
        raise EnumerationBoundExceeded(
            f"subgroup enumeration limited to order {SUBGROUP_ENUMERATION_BOUND}"
        )
    if "subgroups" in G._cache:
        return G._cache["subgroups"]
    seen = {}
    for x in G.elements:
        S = Subgroup(G, (x,))
        seen.setdefault(S.element_set, S)
    worklist = list(seen.values())
    while worklist:
        fresh = []
        current = list(seen.values())
        for A in worklist:
            for B in current:
                if A.element_set <= B.element_set or B.element_set <= A.element_set:
                    continue
                J = A.join(B)
                if J.element_set not in seen:
                    seen[J.element_set] = J
                    fresh.append(J)
        worklist = fresh
    subs = sorted(seen.values(), key=Subgroup.key)
    G._cache["subgroups"] = subs
    return subs


def subgroups_of_brute(G):
    """Oracle: closure of all 1-, 2- and 3-element generating sets.

    Exponential sweep kept for cross-checking `subgroups_of` on small
    instances only.
    """
    if G.order > 32:
        raise EnumerationBoundExceeded("brute-force subgroup oracle limited to order 32")
    seen = {frozenset([G.identity]): Subgroup(G, ())}
    elems = G.elements
    for x in elems:
        S = Subgroup(G, (x,))
        seen.setdefault(S.element_set, S)
    for i, x in enumerate(elems):
        for y in elems[i:]:
            S = Subgroup(G, (x, y))
            seen.setdefault(S.element_set, S)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems[i:], start=i):
            for z in elems[j:]:
                S = Subgroup(G, (x, y, z))
                seen.setdefault(S.element_set, S)
    return sorted(seen.values(), key=Subgroup.key)


def normal_subgroups(G):
    return [S for S in subgroups_of(G) if S.is_normal_in(G)]


def frattini_quotient(P):
    """(P/Phi(P), projection, rank) for a p-group P.

    Phi(P) = P^p [P,P]; the quotient is elementary abelian of rank
    log_p of its order.
    """
    primes = {q for q in range(2, P.order + 1) if P.order % q == 0 and _is_prime(q)}
    if len(primes) != 1:
        raise NotPGroup(f"order {P.order} is not a prime power")
    p = primes.pop()
    gens = [x ** p for x in P.elements]
    gens += [x.comm(y) for x in P.elements for y in P.elements]
    frat = Subgroup(P, tuple(g for g in gens if not g.is_identity()))
    Q, hom = quotient(P, frat)
    rank = 0
    n = Q.order
    while n > 1:
        n //= p
        rank += 1
    assert p ** rank == Q.order
    return Q, hom, rank


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- named constructors ------------------------------------------------------

def cyclic(n, name=None):
    if n == 1:
        return PermGroup(1, [], name=name or "C1")
    return PermGroup(n, [Perm([(i + 1) % n for i in range(n)])], name=name or f"C{n}")


def symmetric(n, name=None):
    if n <= 1:
        return PermGroup(max(n, 1), [], name=name or f"S{n}")
    gens = [Perm([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(Perm([(i + 1) % n for i in range(n)]))
    return PermGroup(n, gens, name=name or f"S{n}")


def alternating(n, name=None):
    if n <= 2:
        return PermGroup(max(n, 1), [], name=name or f"A{n}")
    three = list(range(n))
    three[0], three[1], three[2] = 1, 2, 0
    gens = [Perm(three)]
    if n > 3:
        if n % 2:
            gens.append(Perm([(i + 1) % n for i in range(n)]))
        else:
            # (n-1)-cycle on 1..n-1 is even when n is even
            gens.append(Perm([0] + [1 + (i % (n - 1)) for i in range(1, n)]))
    G = PermGroup(n, gens, name=name or f"A{n}")
    assert G.order == math.factorial(n) // 2, f"A{n} construction broken"
    return G


def dihedral(order, name=None):
    """Dihedral group of the given 2-power order (order >= 8 on order/2 points).

    Convention: presentation <a, b | a^(order/2), b^2, baba>, realized with
    a = full rotation, b = reflection.
    """
    if order == 2:
        return cyclic(2, name=name or "D2")
    if order == 4:
        return PermGroup(4, [Perm([1, 0, 2, 3]), Perm([0, 1, 3, 2])], name=name or "D4")
    assert order >= 8 and order % 2 == 0
    m = order // 2
    a = Perm([(i + 1) % m for i in range(m)])
    b = Perm([(-i) % m for i in range(m)])
    G = PermGroup(m, [a, b], name=name or f"D{order}")
    assert G.order == order
    return G


def quaternion(order, name=None):
    """Generalized quaternion group of 2-power order >= 8.

    Realized by the right-regular action (no smaller faithful permutation
    representation exists: every nontrivial subgroup contains the centre).
    """
    assert order >= 8 and order & (order - 1) == 0
    m = order // 2  # order of a
    labels = [(i, j) for j in (0, 1) for i in range(m)]
    pos = {lab: k for k, lab in enumerate(labels)}

    def mul(x, y):
        i1, j1 = x
        i2, j2 = y
        sign = -1 if j1 else 1
        i = (i1 + sign * i2 + (m // 2 if j1 and j2 else 0)) % m
        return (i, j1 ^ j2)

    def right_mult(y):
        return Perm([pos[mul(lab, y)] for lab in labels])

    G = PermGroup(order, [right_mult((1, 0)), right_mult((0, 1))],
                  name=name or f"Q{order}")
    assert G.order == order
    return G


def semidihedral(order, name=None):
    """Semidihedral group of 2-power order >= 16, on order/2 points.

    Presentation <a, b | a^(order/2), b^2, b a b = a^(order/4 - 1)>.
    """
    assert order >= 16 and order & (order - 1) == 0
    m = order // 2
    t = m // 2 - 1
    a = Perm([(i + 1) % m for i in range(m)])
    b = Perm([(t * i) % m for i in range(m)])
    G = PermGroup(m, [a, b], name=name or f"SD{order}")
    assert G.order == order
    return G


def pgl_2_7(name=None):
    """PGL(2,7) acting on the 8-point projective line (points 0..6, 7 = infinity)."""
    INF = 7

    def mobius(fn):
        return Perm([fn(x) for x in range(8)])

    def translate(x):
        return INF if x == INF else (x + 1) % 7

    def scale(x):
        return INF if x == INF else (3 * x) % 7

    def invert(x):
        if x == INF:
            return 0
        if x == 0:
            return INF
        return pow(x, 5, 7)  # x^-1 mod 7

    G = PermGroup(8, [mobius(translate), mobius(scale), mobius(invert)],
                  name=name or "PGL(2,7)")
    assert G.order == 336
    return G


def direct_product(G, H, name=None):
    """G x H on the disjoint union of their point sets."""
    d = G.degree + H.degree
    gens = [Perm(list(g.images) + list(range(G.degree, d))) for g in G.generators]
    gens += [Perm(list(range(G.degree)) + [G.degree + i for i in h.images])
             for h in H.generators]
    name = name or f"{G.name or 'G'}x{H.name or 'H'}"
    P = PermGroup(d, gens, name=name)
    assert P.order == G.order * H.order
    return P


_CONSTRUCTORS = {
    "dihedral": dihedral,
    "symmetric": symmetric,
    "quaternion": quaternion,
    "semidihedral": semidihedral,
    "cyclic": cyclic,
    "alternating": alternating,
}


@lru_cache(maxsize=None)
def named_group(name):
    """Resolve names like S4, A5, D16, Q16, SD16, C6, C2xC3, PGL27."""
    raw = name
    name = name.strip()
    if "x" in name and not name.startswith("P"):
        parts = name.split("x")
        G = named_group(parts[0])
        for part in parts[1:]:
            G = direct_product(G, named_group(part), name=raw)
        return G
    m = re.fullmatch(r"([A-Za-z]+)\s*\(\s*(\d+)\s*\)", name)
    if m and m.group(1).lower() in _CONSTRUCTORS:
        return _CONSTRUCTORS[m.group(1).lower()](int(m.group(2)))
    if name.upper() in ("PGL27", "PGL(2,7)"):
        return pgl_2_7()
    m = re.fullmatch(r"(SD|[SACDQ])(\d+)", name.upper())
    if m:
        kind, n = m.group(1), int(m.group(2))
        table = {"S": symmetric, "A": alternating, "C": cyclic,
                 "D": dihedral, "Q": quaternion, "SD": semidihedral}
        return table[kind](n)
    raise ParseError(f"unknown group name: {raw!r}")


def parse_group_text(text):
    """Parse the group file format.

    Either a single named-constructor line (e.g. ``dihedral(16)``), or a
    ``degree: n`` line followed by one permutation per line in cycle
    notation.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty group description")
    if not lines[0].lower().startswith("degree"):
        if len(lines) != 1:
            raise ParseError("constructor form takes a single line")
        return named_group(lines[0])
    m = re.fullmatch(r"degree\s*:\s*(\d+)", lines[0], flags=re.I)
    if not m:
        raise ParseError(f"bad degree line: {lines[0]!r}")
    degree = int(m.group(1))
    gens = [perm_from_cycles(degree, ln) for ln in lines[1:]]
    return PermGroup(degree, gens)


def load_group(path_or_name):
    """Load a group from a file path, falling back to a named constructor."""
    import os

    if os.path.exists(path_or_name):
        with open(path_or_name) as fh:
            return parse_group_text(fh.read())
    return named_group(path_or_name)
