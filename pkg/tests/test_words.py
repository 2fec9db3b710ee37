import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apwords import (
    BINARY,
    Alphabet,
    AlphabetError,
    BoundsError,
    EmptyPatternError,
    FiniteWord,
    Segment,
    bar,
    concat,
    format_word,
    occurrences,
    parse_word,
    segment,
)
from conftest import bword, naive_occurrences

A2 = "1001101100011001001110011"


class TestAlphabet:
    def test_basic(self):
        a = Alphabet(("x", "y", "z"))
        assert len(a) == 3
        assert a.index("y") == 1
        assert a.label(2) == "z"
        assert list(a) == ["x", "y", "z"]

    def test_rejects_duplicates_and_empty(self):
        with pytest.raises(AlphabetError):
            Alphabet(("a", "a"))
        with pytest.raises(AlphabetError):
            Alphabet(())
        with pytest.raises(AlphabetError):
            Alphabet(("a", "b c"))

    def test_order_is_observable(self):
        assert Alphabet("01") != Alphabet("10")

    def test_unknown_symbol(self):
        with pytest.raises(AlphabetError):
            BINARY.index("2")


class TestFiniteWord:
    def test_empty_word_is_identity(self):
        empty = BINARY.word("")
        w = bword("10011")
        assert len(empty) == 0
        assert concat(empty, w) == w
        assert concat(w, empty) == w

    def test_round_trip(self):
        w = bword("10011")
        assert w.to_text() == "10011"
        assert len(w) == 5
        assert w[0] == "1"
        assert w[1:3].to_text() == "00"

    def test_multichar_labels(self):
        a = Alphabet(("lo", "hi"))
        w = FiniteWord.from_text(a, "lo hi hi")
        assert w.to_text() == "lo hi hi"
        assert len(w) == 3

    def test_immutable(self):
        w = bword("101")
        with pytest.raises(ValueError):
            w.data[0] = 0


class TestBar:
    def test_empty(self):
        assert bar(BINARY.word("")) == BINARY.word("")

    def test_a1(self):
        assert bar(bword("10011")).to_text() == "01100"

    def test_involution_on_a2(self):
        w = bword(A2)
        assert bar(bar(w)) == w

    def test_requires_binary(self):
        w = Alphabet("abc").word("abc")
        with pytest.raises(AlphabetError):
            bar(w)

    @given(st.text(alphabet="01", min_size=0, max_size=200))
    def test_involution_and_length(self, text):
        w = bword(text)
        assert len(bar(w)) == len(w)
        assert bar(bar(w)) == w

    def test_large_word(self):
        rng = np.random.default_rng(0)
        w = FiniteWord(BINARY, rng.integers(0, 2, 100_000))
        assert bar(bar(w)) == w
        assert len(bar(w)) == len(w)


class TestSegment:
    def test_validation(self):
        with pytest.raises(BoundsError):
            Segment(3, 2)
        with pytest.raises(BoundsError):
            Segment(-1, 2)
        assert Segment(2, 5).length == 4

    def test_finite_word(self):
        w = Alphabet("abc").word("abc")
        assert segment(w, Segment(1, 2)).to_text() == "bc"

    def test_out_of_range(self):
        with pytest.raises(BoundsError):
            segment(bword("101"), Segment(1, 3))

    def test_paper_source(self, family):
        src = family.source()
        assert segment(src, Segment(0, 0)).to_text() == "1"
        assert segment(src, Segment(10, 14)).to_text() == "10011"

    def test_split_concat(self):
        w = bword("1001101100")
        for i, j, k in [(0, 3, 9), (2, 2, 5), (1, 7, 8)]:
            whole = segment(w, Segment(i, k))
            left = segment(w, Segment(i, j))
            right = segment(w, Segment(j + 1, k))
            assert whole == concat(left, right)
            assert len(whole) == k - i + 1


class TestOccurrences:
    def test_a1a1(self):
        starts = occurrences(bword("10011"), bword("1001110011"))
        assert starts.tolist() == [0, 5]

    def test_a1_absent_in_complement_pair(self):
        # Exhaustive oracle agrees: bar(a_1)bar(a_1) has no a_1.
        x, w = bword("10011"), bword("0110001100")
        assert naive_occurrences(x, w) == []
        assert occurrences(x, w).tolist() == []

    def test_overlapping(self):
        a = Alphabet("ab")
        starts = occurrences(a.word("aa"), a.word("aaaa"))
        assert starts.tolist() == [0, 1, 2]

    def test_empty_pattern_rejected(self):
        with pytest.raises(EmptyPatternError):
            occurrences(BINARY.word(""), bword("1"))

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetError):
            occurrences(Alphabet("ab").word("a"), bword("101"))

    def test_exhaustive_small_words(self):
        # All binary words up to length 10, all patterns up to length 3.
        for n in range(1, 11):
            for bits in range(2**n):
                w = FiniteWord(
                    BINARY, [(bits >> i) & 1 for i in range(n)]
                )
                for m in range(1, 4):
                    for pbits in range(2**m):
                        x = FiniteWord(
                            BINARY, [(pbits >> i) & 1 for i in range(m)]
                        )
                        assert occurrences(x, w).tolist() == naive_occurrences(x, w)

    @given(
        st.text(alphabet="01", min_size=1, max_size=64),
        st.text(alphabet="01", min_size=1, max_size=6),
    )
    @settings(max_examples=300)
    def test_matches_naive_randomized(self, wtext, xtext):
        w, x = bword(wtext), bword(xtext)
        assert occurrences(x, w).tolist() == naive_occurrences(x, w)


class TestConcat:
    def test_examples(self):
        assert concat(BINARY.word(""), bword("1")).to_text() == "1"
        assert concat(bword("10011"), bword("01100")).to_text() == "1001101100"
        a = Alphabet("ab")
        assert concat(a.word("a"), a.word("b")).to_text() == "ab"

    def test_prefix_of_a2(self):
        assert A2.startswith("1001101100")

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetError):
            concat(bword("1"), Alphabet("ab").word("a"))


class TestSerialization:
    def test_header_round_trip(self):
        w = bword("10011")
        text = format_word(w)
        assert text == "alphabet: 0 1\n10011\n"
        assert parse_word(text) == w

    def test_multichar_round_trip(self):
        a = Alphabet(("lo", "hi"))
        w = FiniteWord.from_text(a, "hi lo hi")
        assert parse_word(format_word(w)) == w

    def test_inferred_alphabet(self):
        w = parse_word("0110")
        assert w.alphabet == BINARY
        assert w.to_text() == "0110"
