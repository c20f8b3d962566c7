import random

import pytest
from hypothesis import given, strategies as st

from fgdyn.automorphisms import (
    DilatationInfo,
    Endomorphism,
    IntMatrix,
    NotHyperbolicError,
    NotInverseError,
    abelianize,
    compose,
    compose_pairs,
    conjugate,
    determinant,
    dilatation_info,
    identity_pair,
    inner,
    matrix_mul,
    matrix_power,
    power,
    squarefree_part,
    verify_pair,
)
from fgdyn.words import identity, parse_word, reduce, standard_alphabet

F2 = standard_alphabet(2)
F4 = standard_alphabet(4)


def endo(alphabet, *images):
    return Endomorphism(alphabet, [parse_word(alphabet, t) for t in images])


def phi1():
    fwd = endo(F4, "a", "b a", "c a^2", "d c")
    bwd = endo(F4, "a", "b a^-1", "c a^-2", "d a^2 c^-1")
    return verify_pair(fwd, bwd)


def delta():
    return verify_pair(endo(F2, "a", "b a"), endo(F2, "a", "b a^-1"))


def sigma():
    e = endo(F2, "a^-1", "b^-1")
    return verify_pair(e, e)


def random_word(rng, alphabet, max_len=8):
    rank = alphabet.rank
    letters = [rng.choice([x for x in range(-rank, rank + 1) if x]) for _ in range(rng.randint(0, max_len))]
    return reduce(alphabet, letters)


class TestApply:
    def test_first_forward_step(self):
        assert str(phi1().apply(parse_word(F4, "b d^-1"))) == "b a c^-1 d^-1"

    def test_second_forward_step(self):
        got = phi1().apply(parse_word(F4, "b a c^-1 d^-1"))
        assert got == parse_word(F4, "b c^-1 c^-1 d^-1")

    def test_first_backward_step(self):
        assert str(phi1().apply_inverse(parse_word(F4, "b d^-1"))) == "b a^-1 c a^-2 d^-1"

    def test_identity_word(self):
        assert phi1().apply(identity(F4)).is_identity()

    @given(
        st.lists(st.integers(-4, 4).filter(bool), max_size=10),
        st.lists(st.integers(-4, 4).filter(bool), max_size=10),
    )
    def test_homomorphism_law(self, xs, ys):
        u, v = reduce(F4, xs), reduce(F4, ys)
        f = phi1().forward
        assert f.apply(u * v) == f.apply(u) * f.apply(v)

    def test_inverse_law_random(self):
        rng = random.Random(5)
        pair = phi1()
        for _ in range(100):
            g = random_word(rng, F4)
            assert pair.apply_inverse(pair.apply(g)) == g
            assert pair.apply(pair.apply_inverse(g)) == g


class TestVerifyPair:
    def test_valid_pair(self):
        phi1()  # does not raise

    def test_identity_pair(self):
        identity_pair(F4)

    def test_not_involution(self):
        e = endo(F2, "a", "b a")
        with pytest.raises(NotInverseError) as exc:
            verify_pair(e, e)
        assert exc.value.generator_name == "b"

    def test_error_names_first_failing_generator(self):
        fwd = endo(F4, "a", "b a", "c a^2", "d c")
        bad = endo(F4, "a", "b a^-1", "c a^-1", "d a^2 c^-1")
        with pytest.raises(NotInverseError) as exc:
            verify_pair(fwd, bad)
        assert exc.value.generator_name == "c"


class TestCompose:
    def test_inverse_pair_composes_to_identity(self):
        pair = phi1()
        assert compose(pair.forward, pair.backward) == Endomorphism.identity(F4)
        assert compose(pair.backward, pair.forward) == Endomorphism.identity(F4)

    def test_identity_neutral(self):
        e = endo(F2, "a b", "b")
        assert compose(Endomorphism.identity(F2), e) == e
        assert compose(e, Endomorphism.identity(F2)) == e

    def test_associative(self):
        e1 = endo(F2, "a", "b a")
        e2 = endo(F2, "a b", "b")
        e3 = endo(F2, "b", "a")
        assert compose(compose(e1, e2), e3) == compose(e1, compose(e2, e3))

    def test_order_of_application(self):
        e1 = endo(F2, "a", "b a")
        e2 = endo(F2, "b", "a")
        g = parse_word(F2, "b")
        assert compose(e1, e2).apply(g) == e1.apply(e2.apply(g))


class TestInner:
    def test_conjugation_image(self):
        pair = inner(parse_word(F4, "a"))
        assert str(pair.apply(parse_word(F4, "b"))) == "a b a^-1"

    def test_trivial_conjugator(self):
        assert inner(identity(F4)) == identity_pair(F4)

    def test_extensional_on_random_words(self):
        rng = random.Random(11)
        u = parse_word(F4, "b a^2")
        pair = inner(u)
        for _ in range(50):
            g = random_word(rng, F4)
            assert pair.apply(g) == u * g * u.inverse()

    def test_twist_composition_images(self):
        # conjugation by a^k composed with a twist power sends b to a^k b a^(n-k)
        for n in (1, 2, 3):
            for k in (-2, 0, 1, 3):
                tw = compose_pairs(inner(parse_word(F2, "a") ** k), power(delta(), n))
                assert tw.apply(parse_word(F2, "b")) == parse_word(F2, "a") ** k * parse_word(F2, "b") * parse_word(F2, "a") ** (n - k)


class TestConjugateAndPower:
    def test_conjugate_by_identity(self):
        pair = phi1()
        assert conjugate(pair, identity_pair(F4)) == pair

    def test_conjugate_of_inner(self):
        psi = phi1()
        u = parse_word(F4, "b a")
        assert conjugate(inner(u), psi) == inner(psi.apply(u))

    def test_sigma_conjugation_identity(self):
        sg = sigma()
        for n in [n for n in range(-3, 4) if n]:
            for k in range(-3, n + 4):
                lhs = conjugate(compose_pairs(inner(parse_word(F2, "a") ** k), power(delta(), n)), sg)
                rhs = compose_pairs(inner(parse_word(F2, "a") ** (n - k)), power(delta(), n))
                assert lhs == rhs, (n, k)

    def test_power_squared_image_of_d(self):
        got = power(phi1(), 2).apply(parse_word(F4, "d"))
        assert got == parse_word(F4, "d c c a^2")

    def test_power_negative_one_is_inverse(self):
        pair = phi1()
        assert power(pair, -1) == pair.inverse()

    def test_power_zero_is_identity(self):
        assert power(phi1(), 0) == identity_pair(F4)

    def test_twist_power_by_induction(self):
        d = delta()
        b = parse_word(F2, "b")
        a = parse_word(F2, "a")
        for n in range(11):
            assert power(d, n).apply(b) == b * a**n


class TestAbelianize:
    def test_phi1_matrix(self):
        m = abelianize(phi1().forward)
        assert m.entries == ((1, 1, 2, 0), (0, 1, 0, 0), (0, 0, 1, 1), (0, 0, 0, 1))

    def test_identity_matrix(self):
        assert abelianize(Endomorphism.identity(F4)) == IntMatrix.identity(4)

    def test_square_entry_matches_closed_form(self):
        # (1,4) entry of Ab(phi_1)^2 is (k+1)p(p-1)/2 = 2 at k=1, p=2
        m2 = matrix_mul(abelianize(phi1().forward), abelianize(phi1().forward))
        assert m2[0, 3] == 2

    def test_functorial_under_power(self):
        pair = phi1()
        m = abelianize(pair.forward)
        for p in range(9):
            assert abelianize(power(pair, p).forward) == matrix_power(m, p)

    def test_functorial_under_compose(self):
        e1 = endo(F2, "a b", "b")
        e2 = endo(F2, "b", "a b^-1")
        assert abelianize(compose(e1, e2)) == matrix_mul(abelianize(e1), abelianize(e2))


class TestMatrices:
    def test_power_zero(self):
        m = IntMatrix([[2, 1], [1, 1]])
        assert matrix_power(m, 0) == IntMatrix.identity(2)

    def test_closed_form_entries(self):
        for k in range(11):
            m = IntMatrix([[1, 1, k + 1, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
            for p in range(11):
                mp = matrix_power(m, p)
                assert mp[0, 1] == p
                assert mp[0, 2] == (k + 1) * p
                assert mp[0, 3] == (k + 1) * p * (p - 1) // 2
                assert mp[2, 3] == p

    def test_determinant_triangular(self):
        assert determinant(abelianize(phi1().forward)) == 1

    def test_determinant_general(self):
        assert determinant(IntMatrix([[2, 1], [1, 1]])) == 1
        assert determinant(IntMatrix([[1, 1], [1, 1]])) == 0
        assert determinant(IntMatrix([[0, 1], [1, 0]])) == -1
        assert determinant(IntMatrix([[0, 2, 1], [1, 0, 0], [0, 1, 1]])) == -1

    def test_huge_entries_exact(self):
        m = matrix_power(IntMatrix([[2, 1], [1, 1]]), 200)
        assert determinant(m) == 1  # no overflow, exact arithmetic


class TestDilatation:
    def test_golden_ratio_square(self):
        info = dilatation_info(IntMatrix([[2, 1], [1, 1]]))
        assert info == DilatationInfo(3, 5, 5)
        assert abs(info.value() - (3 + 5**0.5) / 2) < 1e-12

    def test_trace_four(self):
        info = dilatation_info(IntMatrix([[3, 1], [2, 1]]))
        assert (info.trace, info.discriminant, info.squarefree_part) == (4, 12, 3)

    def test_parabolic_rejected(self):
        with pytest.raises(NotHyperbolicError):
            dilatation_info(IntMatrix([[1, 1], [0, 1]]))

    def test_determinant_checked(self):
        with pytest.raises(ValueError):
            dilatation_info(IntMatrix([[3, 0], [0, 1]]))

    def test_squarefree_part(self):
        assert squarefree_part(12) == 3
        assert squarefree_part(5) == 5
        assert squarefree_part(36) == 1
        assert squarefree_part(396) == 11
