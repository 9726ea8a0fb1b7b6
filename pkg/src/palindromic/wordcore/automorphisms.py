"""Endomorphisms of F_n given by generator images.

``compose(f, g)`` is the map x -> f(g(x)): apply g first, then f.
"""

from __future__ import annotations

from typing import Sequence

from ..intmatrix import IntegerMatrix
from .words import Letter, RankError, Word, is_palindrome


class InvalidGeneratorPair(ValueError):
    pass


class Automorphism:
    __slots__ = ("rank", "images")

    def __init__(self, rank: int, images: Sequence[Word]):
        if rank < 1:
            raise ValueError("rank must be positive")
        if len(images) != rank:
            raise ValueError(f"expected {rank} images, got {len(images)}")
        for w in images:
            if w.max_index() > rank:
                raise RankError(f"image {w} exceeds rank {rank}")
        self.rank = rank
        self.images = tuple(images)

    @classmethod
    def identity(cls, n: int) -> "Automorphism":
        return cls(n, [Word.generator(i) for i in range(1, n + 1)])

    @classmethod
    def from_dict(cls, n: int, images: dict[int, str | Word]) -> "Automorphism":
        """Build from a partial map ``{i: image}``; unlisted generators are fixed."""
        out = []
        for i in range(1, n + 1):
            w = images.get(i, Word.generator(i))
            out.append(Word.parse(w) if isinstance(w, str) else w)
        return cls(n, out)

    def image(self, i: int) -> Word:
        return self.images[i - 1]

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.rank == other.rank and self.images == other.images

    def __hash__(self):
        return hash((self.rank, self.images))

    def __repr__(self):
        body = ", ".join(f"a{i} -> {w}" for i, w in enumerate(self.images, 1))
        return f"Automorphism({{{body}}})"


def _check_rank(f: Automorphism, n: int):
    if f.rank != n:
        raise RankError(f"rank mismatch: {f.rank} vs {n}")


def apply(f: Automorphism, w: Word) -> Word:
    if w.max_index() > f.rank:
        raise RankError(f"word {w} exceeds rank {f.rank}")
    letters: list[Letter] = []
    for l in w:
        img = f.images[l.index - 1]
        letters.extend(img.letters if l.sign > 0 else img.inverse().letters)
    return Word(letters)


def compose(f: Automorphism, g: Automorphism) -> Automorphism:
    """The map x -> f(g(x))."""
    _check_rank(g, f.rank)
    return Automorphism(f.rank, [apply(f, w) for w in g.images])


def product(factors: Sequence[Automorphism], n: int, left_first: bool = False) -> Automorphism:
    """Evaluate a written product f_1 f_2 ... f_k.

    By default the product means f_1 o f_2 o ... o f_k (rightmost acts first).
    With ``left_first`` the leftmost factor acts first.
    """
    result = Automorphism.identity(n)
    for f in factors:
        result = compose(f, result) if left_first else compose(result, f)
    return result


def power(f: Automorphism, k: int) -> Automorphism:
    if k < 0:
        raise ValueError("negative powers need an explicit inverse")
    return product([f] * k, f.rank)


def elementary_palindromic(i: int, j: int, n: int) -> Automorphism:
    """(a_i||a_j): a_i -> a_j a_i a_j, other generators fixed."""
    _check_pair(i, j, n)
    return Automorphism.from_dict(n, {i: Word([Letter(j), Letter(i), Letter(j)])})


def elementary_palindromic_inverse(i: int, j: int, n: int) -> Automorphism:
    _check_pair(i, j, n)
    return Automorphism.from_dict(n, {i: Word([Letter(j, -1), Letter(i), Letter(j, -1)])})


def symmetric_conjugation(i: int, j: int, n: int) -> Automorphism:
    """(a_i|a_j): a_i -> a_j^-1 a_i a_j, other generators fixed."""
    _check_pair(i, j, n)
    return Automorphism.from_dict(n, {i: Word([Letter(j, -1), Letter(i), Letter(j)])})


def symmetric_conjugation_inverse(i: int, j: int, n: int) -> Automorphism:
    _check_pair(i, j, n)
    return Automorphism.from_dict(n, {i: Word([Letter(j), Letter(i), Letter(j, -1)])})


def _check_pair(i, j, n):
    if not (1 <= i <= n and 1 <= j <= n):
        raise RankError(f"indices ({i}, {j}) outside rank {n}")
    if i == j:
        raise InvalidGeneratorPair(f"generator pair needs i != j, got {i}")


def sigma_n(n: int) -> Automorphism:
    return Automorphism(n, [Word.generator(i, -1) for i in range(1, n + 1)])


def sigma_ai(i: int, n: int) -> Automorphism:
    if not 1 <= i <= n:
        raise RankError(f"index {i} outside rank {n}")
    return Automorphism.from_dict(n, {i: Word.generator(i, -1)})


def permutation_automorphism(perm: Sequence[int]) -> Automorphism:
    """a_i -> a_{perm[i-1]}; ``perm`` lists images of 1..n (one-based)."""
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {list(perm)}")
    return Automorphism(n, [Word.generator(k) for k in perm])


def cycle_permutation(cycle: Sequence[int], n: int) -> Automorphism:
    """Permutation automorphism of the cycle a_{c0} -> a_{c1} -> ... -> a_{c0}."""
    perm = list(range(1, n + 1))
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        perm[a - 1] = b
    return permutation_automorphism(perm)


def is_palindromic_automorphism(f: Automorphism) -> bool:
    return all(is_palindrome(w) for w in f.images)


def verify_centralizes_sigma(f: Automorphism, n: int) -> bool:
    _check_rank(f, n)
    s = sigma_n(n)
    return compose(f, s) == compose(s, f)


def exponent_matrix(f: Automorphism) -> IntegerMatrix:
    """Column i holds the exponent sums of f(a_i); this is the image in GL_n(Z)."""
    cols = [w.exponent_sums(f.rank) for w in f.images]
    return IntegerMatrix(zip(*cols), f.rank)


def column_parity_ok(m: IntegerMatrix) -> bool:
    if not m.is_square():
        raise ValueError(f"column parity needs a square matrix, got {m.shape}")
    return all(sum(x % 2 for x in m.column(j)) == 1 for j in range(m.cols))
