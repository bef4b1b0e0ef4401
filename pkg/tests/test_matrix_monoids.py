import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import semifact as sf
from semifact.errors import DomainError
from semifact.matrix_monoids import _atom_shape
from semifact.semialgebras import Bounds

NAT = sf.parse_semialgebra("nat")
S23 = sf.parse_semialgebra("cyclic:2/3")
Q2 = sf.parse_semialgebra("conducted:2")


def M(S, text):
    return sf.parse_matrix(text, S)


def prod(S, factors, n=2):
    out = sf.identity(S, n)
    for f in factors:
        out = sf.mat_mul(out, f)
    return out


def test_constructor_validation():
    with pytest.raises(DomainError):
        sf.make_matrix(NAT, [[1, 0], [1, 1]])  # not upper triangular
    with pytest.raises(DomainError):
        sf.make_matrix(NAT, [[1, 2, 3], [0, 1]])  # ragged
    with pytest.raises(DomainError):
        M(NAT, "1,1/2;0,1")  # entry outside the semialgebra


def test_parse_format_roundtrip():
    a = M(Q2, "1,5/2;0,7/2")
    assert sf.parse_matrix(sf.format_matrix(a), Q2) == a
    assert sf.format_matrix(a) == "1,5/2;0,7/2"


def test_matmul_and_det():
    a = M(NAT, "1,2;0,3")
    b = M(NAT, "2,1;0,1")
    ab = sf.mat_mul(a, b)
    assert ab == M(NAT, "2,3;0,3")
    assert sf.det(ab) == Fraction(6) == sf.det(a) * sf.det(b)
    assert sf.is_regular(ab)
    assert not sf.is_regular(M(NAT, "0,1;0,1"))


def test_atom_shapes():
    assert _atom_shape(M(NAT, "1,1;0,1")) == ("add", 1, 2, Fraction(1))
    assert _atom_shape(M(NAT, "2,0;0,1")) == ("mult", 1, Fraction(2))
    assert _atom_shape(M(NAT, "2,1;0,1")) is None
    assert sf.is_matrix_atom(M(NAT, "1,1;0,1"))
    assert sf.is_matrix_atom(M(S23, "2/3,0;0,1"))
    assert not sf.is_matrix_atom(M(NAT, "1,2;0,1"))  # off-diag 2 is not an add atom
    assert not sf.is_matrix_atom(M(NAT, "4,0;0,1"))  # 4 is not a mult atom
    with pytest.raises(DomainError):
        sf.is_matrix_atom(M(NAT, "0,1;0,1"))


def test_left_divide_examples():
    u = M(NAT, "1,1;0,1")
    b = M(NAT, "1,2;0,2")
    c = sf.left_divide(u, b)
    assert c is not None and sf.mat_mul(u, c) == b
    d3 = M(NAT, "3,0;0,1")
    assert sf.left_divide(d3, b) is None  # 3 does not divide det 2
    assert sf.left_divide(u, M(NAT, "2,0;0,1")) is None  # would need entry -1
    with pytest.raises(DomainError):
        sf.left_divide(M(NAT, "2,3;0,3"), b)  # left factor must be an atom


def test_embeddings_are_homomorphisms():
    rng = random.Random(3)
    for _ in range(30):
        x, y = Fraction(rng.randrange(0, 9)), Fraction(rng.randrange(0, 9))
        ea = sf.embed_additive(NAT, x, 1, 2, 2)
        eb = sf.embed_additive(NAT, y, 1, 2, 2)
        assert sf.mat_mul(ea, eb) == sf.embed_additive(NAT, x + y, 1, 2, 2)
        if x and y:
            ma = sf.embed_multiplicative(NAT, x, 1, 2)
            mb = sf.embed_multiplicative(NAT, y, 1, 2)
            assert sf.mat_mul(ma, mb) == sf.embed_multiplicative(NAT, x * y, 1, 2)
    with pytest.raises(DomainError):
        sf.embed_additive(NAT, Fraction(1), 2, 1, 2)
    with pytest.raises(DomainError):
        sf.embed_multiplicative(NAT, Fraction(0), 1, 2)


def test_sigma_and_weight():
    ones3 = sf.make_matrix(NAT, [[1, 1, 1], [0, 1, 1], [0, 0, 1]])
    assert sf.sigma(ones3) == 3
    a = M(NAT, "1,2;0,2")
    assert sf.sigma(a) == 2
    assert sf.weight(a) == 3
    assert sf.weight(M(NAT, "1,0;0,12")) == 3  # 12 = 2*2*3
    assert sf.sigma(sf.identity(NAT, 2)) == 0


def test_rigid_factorizations_example():
    target = M(NAT, "1,2;0,2")
    res = sf.rigid_factorizations(target)
    assert res.complete
    assert sorted({f.length for f in res.items}) == [2, 3]
    seqs = {tuple(sf.format_matrix(f) for f in fac.factors) for fac in res.items}
    assert seqs == {
        ("1,1;0,1", "1,0;0,2"),
        ("1,0;0,2", "1,1;0,1", "1,1;0,1"),
    }
    for fac in res.items:
        assert prod(NAT, fac.factors) == target
        assert all(sf.is_matrix_atom(f) for f in fac.factors)


def test_rigid_identity_and_unit_triangular():
    res = sf.rigid_factorizations(sf.identity(NAT, 2))
    assert res.complete and len(res.items) == 1 and res.items[0].factors == ()

    res = sf.rigid_factorizations(M(NAT, "1,3;0,1"))
    assert res.complete and len(res.items) == 1
    assert res.items[0].length == 3

    res = sf.rigid_factorizations(M(NAT, "1,2;0,2"), restrict_unit_triangular=True)
    assert res.complete and res.items == []  # det 2 not reachable by transvections


def test_rigid_length_le_weight():
    rng = random.Random(11)
    for _ in range(12):
        a = sf.make_matrix(
            NAT,
            [[rng.randrange(1, 4), rng.randrange(0, 4)], [0, rng.randrange(1, 4)]],
        )
        res = sf.rigid_factorizations(a, Bounds(max_len=10, max_count=5000))
        if res.complete:
            w = sf.weight(a)
            for fac in res.items:
                assert fac.length <= w


def test_rigid_matches_additive_lengths():
    # the transvection embedding transfers length sets
    for x in (Fraction(3), Fraction(5)):
        lengths, ok = sf.rigid_length_set(sf.embed_additive(NAT, x, 1, 2, 2))
        ref, complete = sf.add_length_set(NAT, x)
        assert ok == complete and lengths == ref


def test_divides_up_to_permutation():
    u = M(NAT, "1,1;0,1")
    b = M(NAT, "1,2;0,2")
    assert sf.divides_up_to_permutation(u, b)
    assert not sf.divides_up_to_permutation(M(NAT, "3,0;0,1"), b)


def test_hfm_counterexample():
    for S in (NAT, Q2):
        for m in (2, 3, 4):
            A, long_f, short_f = sf.hfm_counterexample(S, m)
            assert long_f.length - short_f.length == m - 1
            assert prod(S, long_f.factors) == A == prod(S, short_f.factors)
            assert long_f.length <= sf.weight(A)
    with pytest.raises(DomainError):
        sf.hfm_counterexample(NAT, 1)


def test_apl_probe():
    got = sf.almost_prime_like_probe(M(S23, "1,2/3;0,1"))
    assert got is not None
    x, y = got
    assert sf.format_matrix(x) == "2/3,0;0,1"
    assert sf.format_matrix(y) == "1,1;0,1"
    assert sf.almost_prime_like_probe(M(NAT, "1,1;0,1")) is None


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(["1,1;0,1", "2,0;0,1", "1,0;0,3"]),
    st.integers(1, 3),
    st.integers(0, 3),
    st.integers(1, 3),
)
def test_left_divide_is_exact(atom_text, b11, b12, b22):
    a = sf.parse_matrix(atom_text, NAT)
    b = sf.make_matrix(NAT, [[b11, b12], [0, b22]])
    ab = sf.mat_mul(a, b)
    c = sf.left_divide(a, ab)
    assert c is not None and sf.mat_mul(a, c) == ab
