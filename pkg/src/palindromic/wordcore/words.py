"""Freely reduced words in the free group F_n on generators a_1, ..., a_n."""

from __future__ import annotations

import re
from typing import Iterable, NamedTuple


class RankError(ValueError):
    """A generator index lies outside the ambient rank."""


class Letter(NamedTuple):
    index: int
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)

    def __str__(self):
        return f"a{self.index}" if self.sign > 0 else f"a{self.index}^-1"


class Word:
    """A freely reduced word; construct through :func:`reduce` or :meth:`parse`."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters = _free_reduce(letters)

    @classmethod
    def generator(cls, i: int, sign: int = 1) -> "Word":
        return cls((Letter(i, sign),))

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse ``"a2 a1^-1 a2"``; the empty string or ``"1"`` is the identity."""
        letters = []
        for token in text.replace("*", " ").split():
            if token == "1":
                continue
            m = re.fullmatch(r"a(\d+)(?:\^(-?1))?", token)
            if m is None:
                raise ValueError(f"cannot parse letter {token!r}")
            letters.append(Letter(int(m.group(1)), int(m.group(2) or 1)))
        return cls(letters)

    def inverse(self) -> "Word":
        return Word(l.inverse() for l in reversed(self.letters))

    def reverse(self) -> "Word":
        return Word(reversed(self.letters))

    def max_index(self) -> int:
        return max((l.index for l in self.letters), default=0)

    def exponent_sums(self, n: int) -> list[int]:
        sums = [0] * n
        for l in self.letters:
            sums[l.index - 1] += l.sign
        return sums

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __str__(self):
        return " ".join(str(l) for l in self.letters) or "1"

    def __repr__(self):
        return f"Word({str(self)!r})"


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for l in letters:
        l = Letter(*l)
        if l.sign not in (1, -1) or l.index < 1:
            raise ValueError(f"bad letter {l!r}")
        if out and out[-1].index == l.index and out[-1].sign == -l.sign:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def reduce(letters: Iterable[Letter], rank: int | None = None) -> Word:
    """Return the freely reduced word spelled by ``letters``.

    When ``rank`` is given every letter must satisfy ``1 <= index <= rank``.
    """
    letters = [Letter(*l) for l in letters]
    if rank is not None:
        for l in letters:
            if not 1 <= l.index <= rank:
                raise RankError(f"letter {l} outside rank {rank}")
    return Word(letters)


def is_palindrome(w: Word) -> bool:
    return w.letters == w.letters[::-1]
