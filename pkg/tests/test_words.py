import random

import pytest
from hypothesis import given, strategies as st

from fgdyn.words import (
    Alphabet,
    AlphabetMismatchError,
    EmptyWordError,
    Word,
    WordSyntaxError,
    common_prefix_length,
    concat,
    cyclic_reduce,
    format_word,
    identity,
    invert,
    parse_word,
    primitive_root,
    reduce,
    standard_alphabet,
)

F2 = standard_alphabet(2)
F4 = standard_alphabet(4)


def naive_reduce(letters):
    """Oracle: repeatedly delete the first adjacent inverse pair."""
    out = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if out[i] == -out[i + 1]:
                del out[i : i + 2]
                changed = True
                break
    return out


def letters_strategy(rank, max_size=12):
    nonzero = st.integers(-rank, rank).filter(lambda x: x != 0)
    return st.lists(nonzero, max_size=max_size)


class TestAlphabet:
    def test_rank_one_rejected(self):
        with pytest.raises(ValueError):
            Alphabet(("a",))

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            Alphabet(("a", "a"))

    def test_bad_name_rejected(self):
        with pytest.raises(ValueError):
            Alphabet(("a", "x^2"))

    def test_multichar_names(self):
        ab = Alphabet(("x1", "x2"))
        assert str(parse_word(ab, "x1 x2^-2")) == "x1 x2^-2"


class TestReduce:
    def test_single_cancellation(self):
        assert reduce(F4, [1, 2, -2, 1]) == parse_word(F4, "a a")

    def test_identity(self):
        assert reduce(F4, []) == identity(F4)

    def test_cascading(self):
        # oracle check frozen: b a a^-1 a^-1 b^-1 -> b a^-1 b^-1
        assert naive_reduce([2, 1, -1, -1, -2]) == [2, -1, -2]
        assert reduce(F4, [2, 1, -1, -1, -2]) == parse_word(F4, "b a^-1 b^-1")

    def test_out_of_range_letter(self):
        with pytest.raises(AlphabetMismatchError):
            reduce(F2, [3])
        with pytest.raises(AlphabetMismatchError):
            reduce(F2, [0])

    @given(letters_strategy(2))
    def test_matches_naive_oracle(self, letters):
        assert list(reduce(F2, letters).letters()) == naive_reduce(letters)

    def test_exhaustive_short_words_rank2(self):
        alphabet = [1, -1, 2, -2]
        seqs = [[]]
        for _ in range(6):
            seqs = [s + [x] for s in seqs for x in alphabet]
            for s in seqs:
                assert list(reduce(F2, s).letters()) == naive_reduce(s)

    @given(letters_strategy(3))
    def test_idempotent(self, letters):
        w = reduce(standard_alphabet(3), letters)
        assert Word.from_letters(w.alphabet, w.letters()) == w


class TestConcat:
    def test_no_cancellation(self):
        assert format_word(parse_word(F4, "b") * parse_word(F4, "d^-1")) == "b d^-1"

    def test_full_cancellation(self):
        assert (parse_word(F4, "b a") * parse_word(F4, "a^-1 b^-1")).is_identity()

    def test_partial_cancellation(self):
        u = parse_word(F4, "b a^2")
        v = parse_word(F4, "a^-2 c^-1")
        assert format_word(u * v) == "b c^-1"

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatchError):
            concat(parse_word(F2, "a"), parse_word(F4, "a"))

    @given(letters_strategy(2), letters_strategy(2), letters_strategy(2))
    def test_associative(self, xs, ys, zs):
        u, v, w = (reduce(F2, ls) for ls in (xs, ys, zs))
        assert (u * v) * w == u * (v * w)

    @given(letters_strategy(2))
    def test_identity_element(self, xs):
        u = reduce(F2, xs)
        e = identity(F2)
        assert u * e == u
        assert e * u == u

    @given(letters_strategy(2), letters_strategy(2))
    def test_length_parity(self, xs, ys):
        u, v = reduce(F2, xs), reduce(F2, ys)
        w = u * v
        assert len(w) <= len(u) + len(v)
        assert (len(w) - len(u) - len(v)) % 2 == 0


class TestInvert:
    def test_frozen_example(self):
        assert format_word(invert(parse_word(F4, "d a^2 c^-1"))) == "c a^-2 d^-1"

    def test_identity(self):
        assert invert(identity(F4)) == identity(F4)

    def test_symmetric_form(self):
        assert format_word(invert(parse_word(F4, "b a^-1 b^-1"))) == "b a b^-1"

    @given(letters_strategy(2))
    def test_involutive_and_inverse(self, xs):
        u = reduce(F2, xs)
        assert invert(invert(u)) == u
        assert (u * invert(u)).is_identity()

    @given(letters_strategy(2), letters_strategy(2))
    def test_anti_homomorphism(self, xs, ys):
        u, v = reduce(F2, xs), reduce(F2, ys)
        assert invert(u * v) == invert(v) * invert(u)


class TestCyclicReduce:
    def test_conjugated_power(self):
        dec = cyclic_reduce(parse_word(F4, "b a^4 b^-1"))
        assert format_word(dec.conjugator) == "b"
        assert format_word(dec.core) == "a^4"

    def test_single_letter(self):
        dec = cyclic_reduce(parse_word(F4, "a"))
        assert dec.conjugator.is_identity()
        assert format_word(dec.core) == "a"

    def test_negative_core(self):
        dec = cyclic_reduce(parse_word(F4, "b a^-1 b^-1"))
        assert format_word(dec.conjugator) == "b"
        assert format_word(dec.core) == "a^-1"

    def test_identity_rejected(self):
        with pytest.raises(EmptyWordError):
            cyclic_reduce(identity(F4))

    @given(letters_strategy(2, max_size=10))
    def test_recomposition(self, xs):
        u = reduce(F2, xs)
        if u.is_identity():
            return
        w, c = cyclic_reduce(u)
        assert w * c * invert(w) == u
        assert not c.is_identity()
        assert c.first_letter() != -c.last_letter() or len(c) == 1


class TestPrimitiveRoot:
    def test_pure_power(self):
        root, power = primitive_root(parse_word(F4, "a^6"))
        assert format_word(root) == "a"
        assert power == 6

    def test_not_a_proper_power(self):
        root, power = primitive_root(parse_word(F4, "b a b^-1"))
        assert format_word(root) == "b a b^-1"
        assert power == 1

    def test_conjugated_power(self):
        root, power = primitive_root(parse_word(F4, "b a^4 b^-1"))
        assert format_word(root) == "b a b^-1"
        assert power == 4

    def test_identity_rejected(self):
        with pytest.raises(EmptyWordError):
            primitive_root(identity(F4))

    @given(letters_strategy(2, max_size=8), st.integers(1, 6))
    def test_power_compatibility(self, xs, m):
        u = reduce(F2, xs)
        if u.is_identity():
            return
        root_u, power_u = primitive_root(u)
        root_m, power_m = primitive_root(u**m)
        assert root_m == root_u
        assert power_m == power_u * m


class TestCommonPrefix:
    def test_frozen_example(self):
        u = parse_word(F4, "b a^-1 c^-1")
        v = parse_word(F4, "b a^-2 c^-1")
        assert common_prefix_length(u, v) == 2

    @given(letters_strategy(2))
    def test_self(self, xs):
        u = reduce(F2, xs)
        assert common_prefix_length(u, u) == len(u)

    def test_disjoint(self):
        assert common_prefix_length(parse_word(F2, "a"), parse_word(F2, "b")) == 0

    @given(letters_strategy(3, max_size=16), letters_strategy(3, max_size=16))
    def test_matches_letter_scan(self, xs, ys):
        F3 = standard_alphabet(3)
        u, v = reduce(F3, xs), reduce(F3, ys)
        lu, lv = list(u.letters()), list(v.letters())
        expected = 0
        for a, b in zip(lu, lv):
            if a != b:
                break
            expected += 1
        assert common_prefix_length(u, v) == expected


class TestGromovProductBound:
    def test_bound_on_random_words(self):
        # common prefix of g and g^infty is at least (|g|+1)/2
        rng = random.Random(20240801)
        for _ in range(1000):
            n = rng.randint(1, 12)
            letters = []
            for _ in range(n):
                choices = [x for x in (1, -1, 2, -2) if not letters or x != -letters[-1]]
                letters.append(rng.choice(choices))
            g = Word.from_letters(F2, letters)
            approx = g ** (4 * len(g) // max(len(g), 1) + 4)
            head = approx.prefix(4 * len(g))
            assert 2 * common_prefix_length(g, head) >= len(g) + 1


class TestTextFormat:
    def test_parse_exponent(self):
        assert len(parse_word(F4, "a^3")) == 3
        assert list(parse_word(F4, "a^3").letters()) == [1, 1, 1]

    def test_parse_three_letters(self):
        w = parse_word(F4, "b a^-1 b^-1")
        assert len(w) == 3

    def test_empty_is_identity(self):
        assert parse_word(F4, "").is_identity()
        assert format_word(identity(F4)) == ""

    def test_zero_exponent_vanishes(self):
        assert parse_word(F4, "a^0") == identity(F4)

    def test_unknown_symbol(self):
        with pytest.raises(WordSyntaxError):
            parse_word(F2, "q")

    def test_malformed_exponent(self):
        with pytest.raises(WordSyntaxError):
            parse_word(F2, "a^")
        with pytest.raises(WordSyntaxError):
            parse_word(F2, "a^x")

    @given(letters_strategy(4, max_size=20))
    def test_round_trip(self, xs):
        w = reduce(F4, xs)
        assert parse_word(F4, format_word(w)) == w

    def test_canonical_spelling(self):
        assert format_word(parse_word(F4, "a a a b^-1 b^-1")) == "a^3 b^-2"


class TestPrefixAndPower:
    def test_prefix_splits_runs(self):
        w = parse_word(F4, "a^5 b^2")
        assert format_word(w.prefix(6)) == "a^5 b"
        assert w.prefix(100) == w
        assert w.prefix(0).is_identity()

    @given(letters_strategy(2, max_size=6), st.integers(-5, 5))
    def test_power_matches_repeated_product(self, xs, m):
        u = reduce(F2, xs)
        expected = identity(F2)
        step = u if m >= 0 else invert(u)
        for _ in range(abs(m)):
            expected = expected * step
        assert u**m == expected


def test_words_random_law_battery():
    # 10^4 random words: reduction well-defined, concat/invert laws hold
    rng = random.Random(7)
    for _ in range(10_000):
        xs = [rng.choice((1, -1, 2, -2)) for _ in range(rng.randint(0, 10))]
        ys = [rng.choice((1, -1, 2, -2)) for _ in range(rng.randint(0, 10))]
        u = reduce(F2, xs)
        v = reduce(F2, ys)
        assert Word.from_letters(F2, u.letters()) == u
        assert invert(u * v) == invert(v) * invert(u)
        assert (u * invert(u)).is_identity()
