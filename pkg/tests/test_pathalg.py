"""Tests for quivers and truncated completed path algebras."""

import pytest

from blockfusion.errors import (
    BadIndex,
    GeneratorNotInJSquared,
    GeneratorsDoNotSpan,
    NotAChain,
    NotPGroup,
    ParseError,
)
from blockfusion.ffield import field
from blockfusion.groups import cyclic, dihedral, named_group, symmetric
from blockfusion.pathalg import (
    IdealChain,
    Quiver,
    arrow_path,
    chain_limit_check,
    compose,
    count_words_avoiding,
    dihedral_ideal_chain,
    group_algebra_presentation,
    is_admissible,
    minimal_generators,
    parse_path_combination,
    parse_quiver_text,
    path_string,
    paths_of_length,
    radical_layer_dims,
    tame_algebra,
    truncated_quotient,
)

K2 = field(2)


def bouquet2():
    return Quiver(1, [(0, 0, "a"), (0, 0, "b")])


def test_quiver_and_paths():
    Q = Quiver(3, [(0, 1, "a"), (1, 2, "b")])
    assert len(paths_of_length(Q, 0)) == 3
    assert len(paths_of_length(Q, 1)) == 2
    assert len(paths_of_length(Q, 2)) == 1
    assert len(paths_of_length(Q, 3)) == 0
    a, b = arrow_path(Q, 0), arrow_path(Q, 1)
    assert compose(b, a) is not None
    assert compose(a, b) is None
    assert path_string(Q, compose(b, a)) == "ba"


def test_worked_example_basis_and_products():
    # 0 -a-> 1 -b-> 2, no relations, s = 3: basis {e0,e1,e2,a,b,ba},
    # b.a = ba and a.b = 0
    Q = Quiver(3, [(0, 1, "a"), (1, 2, "b")])
    A = truncated_quotient(Q, [], 3, K2)
    names = [path_string(Q, p) for p in A.basis_paths]
    assert names == ["e0", "e1", "e2", "a", "b", "ba"]
    a, b = arrow_path(Q, 0), arrow_path(Q, 1)
    va, vb = A.element({a: 1}), A.element({b: 1})
    ba = A.multiply(vb, va)
    assert [c for c in ba if c] == [1]
    assert A.space.paths[next(i for i, c in enumerate(ba) if c)] == compose(b, a)
    assert not any(A.multiply(va, vb))
    A.validate()


def test_single_vertex_no_arrows():
    Q = Quiver(1, [])
    A = truncated_quotient(Q, [], 5, K2)
    assert A.dim == 1


def test_bouquet_alternating_words():
    Q = bouquet2()
    a, b = arrow_path(Q, 0), arrow_path(Q, 1)
    gens = [{compose(a, a): 1}, {compose(b, b): 1}]
    A = truncated_quotient(Q, gens, 4, K2)
    assert A.dims_by_degree() == [1, 2, 2, 2]
    # oracle: words of length < 4 avoiding aa and bb as subwords
    for n in range(4):
        assert count_words_avoiding(Q, [(0, 0), (1, 1)], n) == \
            A.dims_by_degree()[n]


def test_generator_not_in_j_squared():
    Q = bouquet2()
    a = arrow_path(Q, 0)
    with pytest.raises(GeneratorNotInJSquared):
        truncated_quotient(Q, [{a: 1}], 3, K2)
    with pytest.raises(GeneratorNotInJSquared):
        truncated_quotient(Q, [{}], 3, K2)


def test_non_homogeneous_generator():
    # a^2 - b^3 is not homogeneous: leading-degree elimination applies
    Q = bouquet2()
    a, b = arrow_path(Q, 0), arrow_path(Q, 1)
    b3 = compose(b, compose(b, b))
    gens = [{compose(a, a): 1, b3: 1}]  # char 2: a^2 + b^3
    A = truncated_quotient(Q, gens, 4, K2)
    # in degree 2, a^2 is congruent to the degree-3 word b^3, so no
    # degree-2 path dies outright but the filtration sees the relation
    assert A.quotient_dim_at(3) == 1 + 2 + 3
    A.validate()


def test_is_admissible_cases():
    Q = bouquet2()
    a, b = arrow_path(Q, 0), arrow_path(Q, 1)
    alt = [{compose(a, a): 1}, {compose(b, b): 1}]
    assert is_admissible(Q, alt, 7, K2) is None
    deg2 = [{compose(x, y): 1}
            for x in (a, b) for y in (a, b)]
    assert is_admissible(Q, deg2, 6, K2) == 2
    L = Quiver(1, [(0, 0, "a")])
    la = arrow_path(L, 0)
    assert is_admissible(L, [{compose(la, la): 1}], 6, K2) == 2


def test_chain_limit_constant_and_jpowers():
    Q = bouquet2()
    a, b = arrow_path(Q, 0), arrow_path(Q, 1)
    gens = [{compose(a, a): 1}, {compose(b, b): 1}]
    const = IdealChain.from_generators(Q, K2, [gens, gens, gens])
    rep = chain_limit_check(const, 4)
    assert rep["ok"]
    assert all(e["stable_from"] == 1 for e in rep["per_degree"])
    # I_n = J^(n+1): stabilized algebra is kQ/J^s
    jn = []
    for n in range(1, 5):
        jn.append([{p: 1} for p in paths_of_length(Q, n + 1)])
    rep2 = chain_limit_check(IdealChain.from_generators(Q, K2, jn), 4)
    assert rep2["ok"]
    for e in rep2["per_degree"]:
        assert e["stabilized_dim"] == sum(2 ** d for d in range(e["s"]))


def test_chain_limit_not_a_chain():
    Q = bouquet2()
    a, b = arrow_path(Q, 0), arrow_path(Q, 1)
    g1 = [{compose(a, a): 1}]
    g2 = [{compose(a, a): 1}, {compose(b, b): 1}]  # bigger ideal after smaller
    with pytest.raises(NotAChain):
        chain_limit_check(IdealChain.from_generators(Q, K2, [g1, g2]), 4)


def test_dihedral_chain_stabilizes_to_tame_one():
    chain = dihedral_ideal_chain(3, 5, K2)
    rep = chain_limit_check(chain, 5)
    assert rep["ok"]
    for entry in rep["per_degree"]:
        s = entry["s"]
        assert entry["stabilized_dim"] == tame_algebra(1, max(s, 2), K2).quotient_dim_at(s)


def test_group_algebra_presentation_c2():
    q, kern, alg = group_algebra_presentation(cyclic(2), 3)
    assert len(q.arrows) == 1
    assert alg.dims_by_degree() == [1, 1, 0]
    # kernel contains a^2 at degree 2
    assert kern[2]


def test_group_algebra_presentation_v4():
    q, kern, alg = group_algebra_presentation(named_group("C2xC2"), 3)
    assert len(q.arrows) == 2
    assert alg.dims_by_degree() == [1, 2, 1]


def test_group_algebra_presentation_d8():
    q, kern, alg = group_algebra_presentation(dihedral(8), 5)
    assert alg.dims_by_degree() == [1, 2, 2, 2, 1]
    assert alg.dim == 8
    assert radical_layer_dims(dihedral(8), K2, 6) == [1, 2, 2, 2, 1, 0]


def test_presentation_rejects_non_p_group():
    with pytest.raises(NotPGroup):
        group_algebra_presentation(symmetric(3), 3)


def test_presentation_rejects_bad_generators():
    # a single generator cannot span J/J^2 of V4
    V4 = named_group("C2xC2")
    with pytest.raises((GeneratorsDoNotSpan, AssertionError)):
        group_algebra_presentation(V4, 3, gens=(V4.generators[0],))


def test_minimal_generators():
    assert len(minimal_generators(dihedral(16))) == 2
    assert len(minimal_generators(cyclic(8))) == 1


def test_tame_algebras():
    assert tame_algebra(1, 4).dims_by_degree() == [1, 2, 2, 2]
    assert tame_algebra(3, 2).dims_by_degree() == [3, 4]
    A2 = tame_algebra(2, 3)
    assert A2.dims_by_degree() == [2, 3, 3]
    # index 2 in degree 2: b1 b2 and a^2 die; b2 b1, a b2, b1 a survive
    names = [path_string(A2.quiver, p) for p in A2.basis_paths
             if len(p[2]) == 2]
    assert sorted(names) == ["a*b2", "b1*a", "b2*b1"]
    with pytest.raises(BadIndex):
        tame_algebra(4, 3)


def test_tame_oracle_degrees():
    forb = {1: [(0, 0), (1, 1)], 2: [(1, 2), (0, 0)], 3: [(2, 3), (1, 0)]}
    for idx in (1, 2, 3):
        A = tame_algebra(idx, 6)
        dims = A.dims_by_degree()
        oracle = [count_words_avoiding(A.quiver, forb[idx], n) for n in range(6)]
        assert dims == oracle


def test_quiver_parsing():
    Q = parse_quiver_text("vertices: 2\na: 0 -> 0\nb1: 0 -> 1\nb2: 1 -> 0\n")
    assert Q.num_vertices == 2 and len(Q.arrows) == 3
    with pytest.raises(ParseError):
        parse_quiver_text("nope")
    gens = parse_path_combination(Q, "b1*b2 + 1*a*a", K2)
    assert len(gens) == 2
    single = parse_path_combination(bouquet2(), "ab", K2)
    assert len(single) == 1
    with pytest.raises(ParseError):
        parse_path_combination(Q, "zz", K2)
    with pytest.raises(ParseError):
        parse_path_combination(Q, "b1*b1", K2)  # not composable


def test_degree_grading_invariant():
    # product of degree-i and degree-j basis paths lands in degree i+j
    A = tame_algebra(1, 5)
    for i, p in enumerate(A.basis_paths):
        vi = A.element({p: 1})
        for q in A.basis_paths:
            vq = A.element({q: 1})
            prod = A.multiply(vi, vq)
            degs = {len(A.space.paths[t][2])
                    for t, c in enumerate(prod) if c}
            assert degs <= {len(p[2]) + len(q[2])}
