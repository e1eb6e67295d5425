"""Finite quivers and truncated completed path algebras kQ/(I + J^s).

Ideals are only ever handled through their degree-s truncations: the
span of u*g*v inside the space of paths of length < s, with exact linear
algebra over the coefficient field.  That is enough to certify every
statement used here truncation-wise, without noncommutative Groebner
machinery.

Composition is right to left: for arrows a: 0 -> 1 and b: 1 -> 2 the
product b*a is the path "ba" from 0 to 2, while a*b = 0.  Serialized
path words read left to right in composition order (leftmost applied
last).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    BadIndex,
    GeneratorNotInJSquared,
    GeneratorsDoNotSpan,
    NotAChain,
    NotPGroup,
    ParseError,
)
from .ffield import Matrix, echelon_basis, field, row_space_contains
from .groups import frattini_quotient, Subgroup


class Quiver:
    """Finite directed graph with labelled arrows (loops, multi-arcs fine)."""

    def __init__(self, num_vertices, arrows):
        self.num_vertices = num_vertices
        self.arrows = []
        labels = set()
        for src, tgt, label in arrows:
            assert 0 <= src < num_vertices and 0 <= tgt < num_vertices
            assert label not in labels, f"duplicate arrow label {label!r}"
            labels.add(label)
            self.arrows.append((src, tgt, label))
        self.label_index = {label: i for i, (_, _, label) in enumerate(self.arrows)}

    def source(self, i):
        return self.arrows[i][0]

    def target(self, i):
        return self.arrows[i][1]

    def label(self, i):
        return self.arrows[i][2]

    def __repr__(self):
        return f"Quiver({self.num_vertices} vertices, {len(self.arrows)} arrows)"


# A path is (source, target, word); word is a tuple of arrow indices in
# composition order (rightmost applied first).  Length-0 paths are the
# vertex idempotents e_i = (i, i, ()).

def trivial_path(i):
    return (i, i, ())


def arrow_path(quiver, i):
    return (quiver.source(i), quiver.target(i), (i,))


def compose(u, v):
    """u * v: defined when source(u) == target(v)."""
    if u[0] != v[1]:
        return None
    return (v[0], u[1], u[2] + v[2])


def path_length(p):
    return len(p[2])


def paths_of_length(quiver, n):
    """All length-n paths, in canonical (word-lexicographic) order."""
    if n == 0:
        return [trivial_path(i) for i in range(quiver.num_vertices)]
    out = []
    for prev in paths_of_length(quiver, n - 1):
        for i in range(len(quiver.arrows)):
            # extend on the left: new arrow applied after the old path
            if quiver.source(i) == prev[1]:
                out.append((prev[0], quiver.target(i), (i,) + prev[2]))
    out.sort(key=lambda p: p[2])
    return out


def path_string(quiver, p):
    if not p[2]:
        return f"e{p[0]}"
    labels = [quiver.label(i) for i in p[2]]
    if all(len(lbl) == 1 for lbl in labels):
        return "".join(labels)
    return "*".join(labels)


class _PathSpace:
    """Index of all paths of length < s."""

    def __init__(self, quiver, s):
        self.quiver = quiver
        self.s = s
        self.paths = []
        self.by_degree = []
        for d in range(s):
            layer = paths_of_length(quiver, d)
            self.by_degree.append(layer)
            self.paths.extend(layer)
        self.index = {p: i for i, p in enumerate(self.paths)}
        self.dim = len(self.paths)

    def vector(self, K, terms):
        """Coordinate vector of {path: coeff}, dropping degrees >= s."""
        v = [0] * self.dim
        for p, c in terms.items():
            if path_length(p) < self.s:
                v[self.index[p]] = K.add(v[self.index[p]], c)
        return v


def _ideal_rows_from_generators(quiver, gens, s, K):
    """Echelon basis of the degree-s truncation of the two-sided ideal.

    Span of u*g*v over all path pairs whose degrees can contribute below
    s, with leading-degree elimination done by the echelon form (the
    generators need not be homogeneous).
    """
    space = _PathSpace(quiver, s)
    mindegs = []
    for g, terms in enumerate(gens):
        if not terms:
            raise GeneratorNotInJSquared(f"generator {g} is zero")
        md = min(path_length(p) for p in terms)
        if md < 2:
            raise GeneratorNotInJSquared(
                f"generator {g} has a term of degree {md} < 2")
        mindegs.append(md)
    rows = []
    all_paths = [p for d in range(s) for p in paths_of_length(quiver, d)]
    for terms, md in zip(gens, mindegs):
        for u in all_paths:
            for v in all_paths:
                if path_length(u) + md + path_length(v) >= s:
                    continue
                out = {}
                for p, c in terms.items():
                    pv = compose(p, v)
                    if pv is None:
                        continue
                    upv = compose(u, pv)
                    if upv is None or path_length(upv) >= s:
                        continue
                    out[upv] = K.add(out.get(upv, 0), c)
                if out:
                    rows.append(space.vector(K, out))
    return echelon_basis(K, rows), space


class TruncatedAlgebra:
    """kQ/(I + J^s) on the surviving-path basis.

    The ideal is given by the echelon basis of its truncation; quotient
    representatives are the non-pivot paths, and multiplication composes
    paths then reduces.
    """

    def __init__(self, quiver, s, K, ideal_rows, space=None):
        self.quiver = quiver
        self.s = s
        self.field = K
        self.space = space or _PathSpace(quiver, s)
        self.ideal_rows = ideal_rows
        pivots = set()
        for row in ideal_rows:
            pivots.add(next(i for i, x in enumerate(row) if x))
        self.basis_paths = [p for i, p in enumerate(self.space.paths)
                            if i not in pivots]
        self.basis_index = {p: i for i, p in enumerate(self.basis_paths)}

    @property
    def dim(self):
        return len(self.basis_paths)

    def reduce(self, vector):
        """Canonical representative modulo the truncated ideal."""
        K = self.field
        v = list(vector)
        for row in self.ideal_rows:
            pivot = next(i for i, x in enumerate(row) if x)
            if v[pivot]:
                c = v[pivot]
                for i in range(len(v)):
                    v[i] = K.sub(v[i], K.mul(c, row[i]))
        return v

    def element(self, terms):
        return self.reduce(self.space.vector(self.field, terms))

    def multiply(self, va, vb):
        """Product of two reduced vectors, reduced again."""
        K = self.field
        out = {}
        for ia, ca in enumerate(va):
            if not ca:
                continue
            pa = self.space.paths[ia]
            for ib, cb in enumerate(vb):
                if not cb:
                    continue
                pb = self.space.paths[ib]
                prod = compose(pa, pb)
                if prod is None or path_length(prod) >= self.s:
                    continue
                out[prod] = K.add(out.get(prod, 0), K.mul(ca, cb))
        return self.reduce(self.space.vector(self.field, out))

    def quotient_dim_at(self, t):
        """dim kQ/(I + J^t) for t <= s, from the truncated columns."""
        assert t <= self.s
        cut = sum(len(layer) for layer in self.space.by_degree[:t])
        rows = [row[:cut] for row in self.ideal_rows]
        rows = [r for r in rows if any(r)]
        rank = Matrix(self.field, rows).rank() if rows else 0
        return cut - rank

    def dims_by_degree(self):
        """Dimension of each degree layer of the filtered quotient."""
        out = []
        prev = 0
        for t in range(1, self.s + 1):
            cur = self.quotient_dim_at(t)
            out.append(cur - prev)
            prev = cur
        return out

    def degree_zero_at(self, n):
        """Is the image of kQ_n zero in kQ/(I + J^(n+1))?  (needs n < s)"""
        assert n < self.s
        cut = sum(len(layer) for layer in self.space.by_degree[: n + 1])
        rows = [row[:cut] for row in self.ideal_rows]
        rows = [r for r in rows if any(r)]
        for p in self.space.by_degree[n]:
            vec = [0] * cut
            vec[self.space.index[p]] = 1
            if not row_space_contains(self.field, rows, vec):
                return False
        return True

    def validate(self):
        """Degree grading and associativity on basis triples."""
        K = self.field
        vecs = []
        for p in self.basis_paths:
            v = [0] * self.space.dim
            v[self.space.index[p]] = 1
            vecs.append(self.reduce(v))
        for ia, va in enumerate(vecs):
            for ib, vb in enumerate(vecs):
                ab = self.multiply(va, vb)
                for ic, vc in enumerate(vecs):
                    left = self.multiply(ab, vc)
                    right = self.multiply(va, self.multiply(vb, vc))
                    assert left == right, "truncated product not associative"
        return True


def truncated_quotient(quiver, generators, s, K=None):
    """kQ/(I + J^s) for I generated by the given path combinations."""
    assert s >= 1
    K = K or field(2)
    rows, space = _ideal_rows_from_generators(quiver, generators, s, K)
    return TruncatedAlgebra(quiver, s, K, rows, space)


def is_admissible(quiver, generators, bound, K=None):
    """Least n <= bound with J^n inside I, or None.

    Detected as: the degree-n component of kQ/(I + J^(n+1)) vanishes;
    by the closed-ideal Nakayama argument this pins J^n <= I exactly.
    """
    assert bound >= 2
    K = K or field(2)
    for n in range(2, bound + 1):
        A = truncated_quotient(quiver, generators, n + 1, K)
        if A.degree_zero_at(n):
            return n
    return None


class IdealChain:
    """Descending chain of relation ideals, given by truncation providers.

    providers[n] maps a truncation degree s to the echelon rows of
    pi_s(I_n); built either from generator sets or from group-algebra
    kernels.
    """

    def __init__(self, quiver, K, providers):
        self.quiver = quiver
        self.field = K
        self.providers = providers

    @classmethod
    def from_generators(cls, quiver, K, generator_sets):
        providers = []
        for gens in generator_sets:
            providers.append(
                lambda s, gens=gens:
                _ideal_rows_from_generators(quiver, gens, s, K)[0])
        return cls(quiver, K, providers)

    def truncation(self, n, s):
        return self.providers[n](s)

    def __len__(self):
        return len(self.providers)


def chain_limit_check(chain, s_max):
    """Eventual constancy of dim kQ/(I_n + J^s) in n, for each s <= s_max.

    Containment I_{n+1} <= I_n is verified at every truncation degree
    (NotAChain otherwise); the stabilized subspace at each s represents
    the truncation of the intersection ideal.  The smaller truncations
    are column cuts of the degree-s_max rows (pi_s of the ideal equals
    pi_s of its s_max truncation).
    """
    K = chain.field
    full_rows = [chain.truncation(n, s_max) for n in range(len(chain))]
    layer_sizes = [len(paths_of_length(chain.quiver, d)) for d in range(s_max)]
    report = {"per_degree": [], "ok": True}
    for s in range(1, s_max + 1):
        cut = sum(layer_sizes[:s])
        rows_per_n = []
        for rows in full_rows:
            trimmed = [r[:cut] for r in rows]
            rows_per_n.append(echelon_basis(K, [r for r in trimmed if any(r)]))
        for n in range(len(chain) - 1):
            big, small = rows_per_n[n], rows_per_n[n + 1]
            for r in small:
                if not row_space_contains(K, big, r):
                    raise NotAChain(
                        f"I_{n + 2} exceeds I_{n + 1} at truncation {s}")
        dims = [cut - len(rows) for rows in rows_per_n]
        stable_from = len(dims) - 1
        while stable_from > 0 and dims[stable_from - 1] == dims[stable_from]:
            # dimensions equal and containment holds: equal subspaces
            stable_from -= 1
        stabilized = dims[-1]
        constant_tail = all(d == stabilized for d in dims[stable_from:])
        report["per_degree"].append({
            "s": s,
            "dims": dims,
            "stable_from": stable_from + 1,
            "stabilized_dim": stabilized,
            "eventually_constant": constant_tail,
        })
        report["ok"] = report["ok"] and constant_tail
    return report


# -- bouquet presentations of p-group algebras ---------------------------------

def _group_algebra_vectors(P, K):
    order = {g: i for i, g in enumerate(P.elements)}

    def as_vector(support):
        v = [0] * P.order
        for g, c in support.items():
            v[order[g]] = K.add(v[order[g]], c)
        return v

    return order, as_vector


def _radical_power_rows(P, K, smax):
    """Echelon bases of J(kP)^m for m = 0..smax (J = augmentation ideal)."""
    order, as_vector = _group_algebra_vectors(P, K)
    full = [[1 if i == j else 0 for j in range(P.order)] for i in range(P.order)]
    rows = [as_vector({g: 1, P.identity: K.neg(1)})
            for g in P.elements if g != P.identity]
    out = [full, echelon_basis(K, rows)]
    while len(out) <= smax:
        prev = out[-1]
        nxt = []
        for g in P.elements:
            if g == P.identity:
                continue
            for row in prev:
                prod = [0] * P.order
                for h, i in order.items():
                    if row[i]:
                        gh = g * h
                        prod[order[gh]] = K.add(prod[order[gh]], row[i])
                # (g - 1) * x = g*x - x
                vec = [K.sub(a, b) for a, b in zip(prod, row)]
                nxt.append(vec)
        out.append(echelon_basis(K, nxt))
    return out


def minimal_generators(P):
    """Greedy generating tuple projecting to a basis of P/Phi(P)."""
    _, hom, rank = frattini_quotient(P)
    phi = hom.kernel()
    gens = []
    current = phi
    for x in P.elements:
        if x in current.element_set:
            continue
        gens.append(x)
        current = Subgroup(P, tuple(gens) + tuple(phi.small_gens()))
        if current.order == P.order:
            break
    if len(gens) != rank:
        raise GeneratorsDoNotSpan("greedy generators do not match the rank")
    return tuple(gens)


def _bouquet_images(P, gens, quiver, space, K):
    """phi(path) for every path: loops map to 1 - g_i."""
    order, as_vector = _group_algebra_vectors(P, K)
    images = {trivial_path(0): as_vector({P.identity: 1})}
    # phi((i,) + w) = (1 - g_i) phi(w): extend on the left
    for d in range(1, space.s):
        for path in space.by_degree[d]:
            i = path[2][0]
            sub = (path[0], path[1], path[2][1:])
            prev = images[sub]
            g = gens[i]
            vec = [0] * P.order
            for h, idx in order.items():
                c = prev[idx]
                if c:
                    vec[idx] = K.add(vec[idx], c)
                    gh = g * h
                    vec[order[gh]] = K.sub(vec[order[gh]], c)
            images[path] = vec
    return images


def kernel_truncation_rows(P, gens, quiver, s, K):
    """Echelon rows of the truncation of ker(bouquet -> kP) + J^s."""
    space = _PathSpace(quiver, s)
    images = _bouquet_images(P, gens, quiver, space, K)
    rad = _radical_power_rows(P, K, s)
    red_rows = rad[s]
    reduced = []
    for q in space.paths:
        vec = list(images[q])
        for row in red_rows:
            pivot = next(i for i, x in enumerate(row) if x)
            if vec[pivot]:
                c = vec[pivot]
                vec = [K.sub(a, K.mul(c, b)) for a, b in zip(vec, row)]
        reduced.append(vec)
    rows = echelon_basis(K, Matrix(K, reduced).transpose().kernel_basis())
    return space, images, rad, rows


def group_algebra_presentation(P, s, K=None, gens=None):
    """Bouquet presentation of kP truncated at degree s.

    Loops map to 1 - g_i for a minimal generating tuple; returns
    (quiver, per-degree kernel bases, truncated algebra).  The truncated
    algebra is kQ/(ker + J^s) and must match kP/J(kP)^s dimension-wise.
    """
    primes = {q for q in range(2, P.order + 1)
              if P.order % q == 0 and _is_prime(q)}
    if len(primes) != 1:
        raise NotPGroup(f"order {P.order} is not a prime power")
    p = primes.pop()
    K = K or field(p)
    assert K.p == p, "field characteristic must match the group"
    gens = tuple(gens) if gens is not None else minimal_generators(P)
    quiver = Quiver(1, [(0, 0, f"x{i}") for i in range(len(gens))])
    space, images, rad, ideal_rows = kernel_truncation_rows(P, gens, quiver, s, K)
    # surjectivity degree by degree: phi(V_<=d) + J^(d+1) = kP
    for d in range(s):
        rows = [images[q] for t in range(d + 1) for q in space.by_degree[t]]
        rows += rad[min(d + 1, len(rad) - 1)]
        if Matrix(K, rows).rank() != P.order:
            raise GeneratorsDoNotSpan(
                f"bouquet map not surjective at degree {d}")
    kernel_per_degree = []
    for d in range(s):
        layer = space.by_degree[d]
        M = Matrix(K, [images[q] for q in layer]).transpose()
        kernel_per_degree.append(M.kernel_basis())
    algebra = TruncatedAlgebra(quiver, s, K, ideal_rows, space)
    expected = P.order - len(rad[s])
    assert algebra.dim == expected, "truncation must match kP/J^s"
    layer_dims = [len(rad[m]) - len(rad[m + 1]) for m in range(min(s, len(rad) - 1))]
    assert algebra.dims_by_degree() == layer_dims[:s] + [0] * (s - len(layer_dims))
    return quiver, kernel_per_degree, algebra


def dihedral_ideal_chain(n_min, n_max, K=None):
    """The chain I_n = ker(2-loop bouquet -> kD_(2^n)), n_min <= n <= n_max.

    Loops map to 1 - b and 1 - ab (two reflections), compatibly with the
    natural epimorphisms a -> a, b -> b, so the kernels form a descending
    chain on the nose and their intersection is the x^2 = y^2 = 0 ideal.
    """
    from .groups import dihedral as make_dihedral

    K = K or field(2)
    quiver = Quiver(1, [(0, 0, "x"), (0, 0, "y")])
    providers = []
    for n in range(n_min, n_max + 1):
        P = make_dihedral(2 ** n)
        a, b = P.generators
        gens = (b, a * b)

        def provider(s, P=P, gens=gens):
            return kernel_truncation_rows(P, gens, quiver, s, K)[3]

        providers.append(provider)
    return IdealChain(quiver, K, providers)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def radical_layer_dims(P, K, smax):
    """dim J^m / J^(m+1) of kP for m = 0..smax-1."""
    rad = _radical_power_rows(P, K, smax)
    return [len(rad[m]) - len(rad[m + 1]) for m in range(min(smax, len(rad) - 1))]


# -- the three tame algebras ---------------------------------------------------

def tame_algebra(index, s, K=None):
    """The three bounded quiver algebras arising from dihedral towers.

    1: two loops a, b with a^2 = b^2 = 0;
    2: loop a and a 2-cycle b1, b2 with b1 b2 = a^2 = 0;
    3: three vertices joined by two 2-cycles with a1 a2 = b1 b2 = 0.
    """
    assert s >= 2
    K = K or field(2)
    if index == 1:
        quiver = Quiver(1, [(0, 0, "a"), (0, 0, "b")])
        a, b = arrow_path(quiver, 0), arrow_path(quiver, 1)
        gens = [{compose(a, a): 1}, {compose(b, b): 1}]
    elif index == 2:
        quiver = Quiver(2, [(0, 0, "a"), (0, 1, "b1"), (1, 0, "b2")])
        a = arrow_path(quiver, 0)
        b1, b2 = arrow_path(quiver, 1), arrow_path(quiver, 2)
        gens = [{compose(b1, b2): 1}, {compose(a, a): 1}]
    elif index == 3:
        quiver = Quiver(3, [(0, 1, "b2"), (1, 0, "b1"),
                            (1, 2, "a1"), (2, 1, "a2")])
        b2, b1 = arrow_path(quiver, 0), arrow_path(quiver, 1)
        a1, a2 = arrow_path(quiver, 2), arrow_path(quiver, 3)
        gens = [{compose(a1, a2): 1}, {compose(b1, b2): 1}]
    else:
        raise BadIndex(f"tame algebra index must be 1, 2 or 3, not {index}")
    return truncated_quotient(quiver, gens, s, K)


def count_words_avoiding(quiver, forbidden, n):
    """Oracle: number of length-n paths avoiding the forbidden length-2
    subwords (for monomial relation sets)."""
    bad = set(forbidden)
    count = 0
    for p in paths_of_length(quiver, n):
        word = p[2]
        if any((word[i], word[i + 1]) in bad for i in range(len(word) - 1)):
            continue
        count += 1
    return count


# -- parsing -------------------------------------------------------------------

def parse_quiver_text(text):
    """Quiver file: first line `vertices: n`, then `label: src -> tgt`."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty quiver description")
    m = re.fullmatch(r"vertices\s*:\s*(\d+)", lines[0], flags=re.I)
    if not m:
        raise ParseError(f"bad vertices line: {lines[0]!r}")
    arrows = []
    for ln in lines[1:]:
        am = re.fullmatch(r"(\w+)\s*:\s*(\d+)\s*->\s*(\d+)", ln)
        if not am:
            raise ParseError(f"bad arrow line: {ln!r}")
        arrows.append((int(am.group(2)), int(am.group(3)), am.group(1)))
    return Quiver(int(m.group(1)), arrows)


def parse_path_combination(quiver, text, K):
    """Formal sum of path words: terms like `2*a*b + b*a` or `ab`."""
    out = {}
    for raw in re.split(r"\+", text.replace("-", "+-")):
        term = raw.strip()
        if not term:
            continue
        sign = 1
        if term.startswith("-"):
            sign = -1
            term = term[1:].strip()
        coeff = 1
        tokens = [t.strip() for t in term.split("*") if t.strip()]
        if tokens and tokens[0].isdigit():
            coeff = int(tokens[0])
            tokens = tokens[1:]
        if len(tokens) == 1 and "*" not in term and tokens[0] not in quiver.label_index:
            # single-character concatenation like "ab"
            tokens = list(tokens[0])
        path = None
        for lbl in reversed(tokens):
            if lbl not in quiver.label_index:
                raise ParseError(f"unknown arrow label {lbl!r}")
            ap = arrow_path(quiver, quiver.label_index[lbl])
            path = ap if path is None else compose(ap, path)
            if path is None:
                raise ParseError(f"arrows not composable in {term!r}")
        if path is None:
            raise ParseError(f"empty path term in {text!r}")
        c = K.scalar_from_int(sign * coeff)
        out[path] = K.add(out.get(path, 0), c)
    return {p: c for p, c in out.items() if c}
