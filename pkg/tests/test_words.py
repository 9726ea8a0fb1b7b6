import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from palindromic.wordcore import Letter, RankError, Word, is_palindrome, reduce

letters = st.lists(st.tuples(st.integers(1, 4), st.sampled_from([1, -1])), max_size=30)


def test_reduce_cancels_adjacent_inverses():
    w = reduce([(1, 1), (2, 1), (2, -1), (1, -1), (3, 1)])
    assert str(w) == "a3"


def test_reduce_rank_check():
    with pytest.raises(RankError):
        reduce([(4, 1)], rank=3)


def test_parse_and_print_round_trip():
    w = Word.parse("a2 a1^-1 a2")
    assert str(w) == "a2 a1^-1 a2"
    assert Word.parse(str(w)) == w
    assert Word.parse("1") == Word()
    with pytest.raises(ValueError):
        Word.parse("b1")


def test_inverse_and_powers():
    w = Word.parse("a1 a2 a3^-1")
    assert w * w.inverse() == Word()
    assert len(w**3) == 9
    assert w**-1 == w.inverse()


def test_palindromes():
    assert is_palindrome(Word.parse("a2 a1 a2"))
    assert is_palindrome(Word())
    assert not is_palindrome(Word.parse("a1 a2"))


def test_exponent_sums():
    assert Word.parse("a1 a2 a1 a3^-1").exponent_sums(3) == [2, 1, -1]


@given(letters)
def test_reduce_is_idempotent(ls):
    w = reduce(ls)
    assert reduce(w.letters) == w
    assert all(not (a.index == b.index and a.sign == -b.sign) for a, b in zip(w.letters, w.letters[1:]))


@given(letters, letters)
@settings(max_examples=200)
def test_group_laws(a, b):
    u, v = reduce(a), reduce(b)
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert u.reverse().reverse() == u
    assert is_palindrome(u * u.reverse())


def test_letter_str():
    assert str(Letter(3, -1)) == "a3^-1"
