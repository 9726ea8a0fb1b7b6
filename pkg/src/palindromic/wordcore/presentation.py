"""Presentation-level checks for the palindromic and symmetric automorphism groups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from ..homology import smith_normal_form
from ..intmatrix import IntegerMatrix, finite_order
from .automorphisms import (
    Automorphism,
    compose,
    cycle_permutation,
    elementary_palindromic,
    elementary_palindromic_inverse,
    exponent_matrix,
    is_palindromic_automorphism,
    power,
    product,
    sigma_ai,
    sigma_n,
    symmetric_conjugation,
    symmetric_conjugation_inverse,
)

EPA = "EPA"
PSA = "PSA"

# Reading of a written product f_1 f_2 ... f_k.
LEFT_FIRST = "left-first"  # f_1 acts first
RIGHT_FIRST = "right-first"  # f_k acts first, i.e. f_1 o ... o f_k
CONVENTIONS = (LEFT_FIRST, RIGHT_FIRST)

# A relator side is a tuple of (i, j, exponent) factors.
Factor = tuple[int, int, int]


def relator_instances(n: int, family: str) -> list[tuple[str, tuple[int, ...], tuple[Factor, ...], tuple[Factor, ...]]]:
    """All instances (name, indices, lhs, rhs) of the defining relators.

    The third EPA relator carries an inverse on its last right-hand factor;
    the PSA one does not.
    """
    if family not in (EPA, PSA):
        raise ValueError(f"unknown family {family!r}")
    out = []
    idx = range(1, n + 1)
    for i, j, k in itertools.permutations(idx, 3):
        out.append(("R1", (i, j, k), ((i, k, 1), (j, k, 1)), ((j, k, 1), (i, k, 1))))
    for i, j, k, l in itertools.permutations(idx, 4):
        out.append(("R2", (i, j, k, l), ((i, k, 1), (j, l, 1)), ((j, l, 1), (i, k, 1))))
    last = -1 if family == EPA else 1
    for i, j, k in itertools.permutations(idx, 3):
        out.append(("R3", (i, j, k), ((i, k, 1), (j, k, 1), (i, j, 1)), ((i, j, 1), (j, k, 1), (i, k, last))))
    return out


def _generator_maker(family: str) -> Callable[[int, int, int, int], Automorphism]:
    fwd, back = (
        (elementary_palindromic, elementary_palindromic_inverse)
        if family == EPA
        else (symmetric_conjugation, symmetric_conjugation_inverse)
    )

    def make(i, j, e, n):
        return fwd(i, j, n) if e > 0 else back(i, j, n)

    return make


def _evaluate(side, n, make, convention):
    return product([make(i, j, e, n) for i, j, e in side], n, left_first=convention == LEFT_FIRST)


@dataclass
class RelatorCheck:
    relator: str
    indices: tuple[int, ...]
    holds: dict[str, bool]


@dataclass
class RelatorReport:
    n: int
    family: str
    checks: list[RelatorCheck] = field(default_factory=list)
    # relators written for one family but evaluated on the other family's generators
    contrast: list[RelatorCheck] = field(default_factory=list)

    def conventions_satisfied(self) -> list[str]:
        return [c for c in CONVENTIONS if all(chk.holds[c] for chk in self.checks)]

    @property
    def passed(self) -> bool:
        return bool(self.conventions_satisfied())

    def failures(self, convention: str) -> list[RelatorCheck]:
        return [chk for chk in self.checks if not chk.holds[convention]]


def _check_all(n, relator_family, generator_family):
    make = _generator_maker(generator_family)
    checks = []
    for name, indices, lhs, rhs in relator_instances(n, relator_family):
        holds = {c: _evaluate(lhs, n, make, c) == _evaluate(rhs, n, make, c) for c in CONVENTIONS}
        checks.append(RelatorCheck(name, indices, holds))
    return checks


def verify_relators(n: int, family: str = EPA) -> RelatorReport:
    """Evaluate every relator instance as an equality of automorphisms.

    Each instance is tried under both readings of a written product. For
    n < 3 there are no instances and the report passes vacuously.
    """
    report = RelatorReport(n, family, _check_all(n, family, family))
    other = PSA if family == EPA else EPA
    report.contrast = [chk for chk in _check_all(n, other, family) if chk.relator == "R3"]
    return report


def abelianized_relation_matrix(n: int, family: str = EPA) -> IntegerMatrix:
    """Rows are exponent-sum vectors of lhs * rhs^-1 over the generators (a_i||a_j)."""
    gens = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    col = {g: k for k, g in enumerate(gens)}
    rows = []
    for _, _, lhs, rhs in relator_instances(n, family):
        row = [0] * len(gens)
        for i, j, e in lhs:
            row[col[i, j]] += e
        for i, j, e in rhs:
            row[col[i, j]] -= e
        rows.append(row)
    return IntegerMatrix(rows, len(gens))


def epa_abelianization_invariants(n: int, family: str = EPA) -> list[int]:
    """Cyclic decomposition of the abelianization, one entry per generator.

    Entry d > 1 stands for Z/d, 0 stands for Z; trivial factors are dropped.
    """
    if n < 1:
        raise ValueError("rank must be positive")
    m = abelianized_relation_matrix(n, family)
    factors = smith_normal_form(m).factors if m.rows else []
    return [d for d in factors if d != 1] + [0] * (m.cols - len(factors))


@dataclass
class WitnessReport:
    n: int
    p: int
    involutions: list[Automorphism]
    p_cycles: list[Automorphism]
    translations: list[Automorphism]
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _commute(fs):
    return all(compose(f, g) == compose(g, f) for f, g in itertools.combinations(fs, 2))


def _order(f: Automorphism, bound: int = 64) -> int | None:
    ident = Automorphism.identity(f.rank)
    g = f
    for k in range(1, bound + 1):
        if g == ident:
            return k
        g = compose(f, g)
    return None


def _free_abelian_rank(mats: list[IntegerMatrix]) -> int:
    """Rank of the lattice spanned by M - I; equals the rank of a group of unipotents
    I + N_k with pairwise products N_a N_b = 0."""
    if not mats:
        return 0
    n = mats[0].rows
    rows = [[x - int(i == j) for i, row in enumerate(m.entries) for j, x in enumerate(row)] for m in mats]
    return smith_normal_form(IntegerMatrix(rows, n * n)).rank


def witness_subgroups(n: int, p: int) -> WitnessReport:
    """Build the elementary abelian and free abelian witness subgroups and verify them.

    Involutions a_i -> a_i^-1 give (Z/2)^n; rotations of disjoint blocks of p
    generators give (Z/p)^[n/p]; the maps (a_i||a_n), i < n, give Z^(n-1).
    """
    invs = [sigma_ai(i, n) for i in range(1, n + 1)]
    cycles = [cycle_permutation(list(range(b * p + 1, b * p + p + 1)), n) for b in range(n // p)]
    trans = [elementary_palindromic(i, n, n) for i in range(1, n)]
    mats = [exponent_matrix(f) for f in trans]
    nil = [IntegerMatrix([[x - int(i == j) for j, x in enumerate(row)] for i, row in enumerate(m.entries)], n) for m in mats]
    square_zero = all((a @ b).is_zero() for a in nil for b in nil)
    checks = {
        "involutions commute": _commute(invs),
        "involutions have order 2": all(_order(f) == 2 for f in invs),
        "p-cycles commute": _commute(cycles),
        "p-cycles have order p": all(_order(f) == p for f in cycles),
        "translations commute": _commute(trans),
        "translations have infinite order": all(finite_order(m) is None for m in mats),
        "translations span Z^(n-1)": square_zero and _free_abelian_rank(mats) == len(trans),
        "all palindromic": all(is_palindromic_automorphism(f) for f in invs + cycles + trans),
    }
    return WitnessReport(n, p, invs, cycles, trans, checks)


@dataclass
class NormalizerReport:
    p: int
    m: int
    generators: list[Automorphism]
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def normalizer_generator(p: int, i: int, n: int) -> Automorphism:
    """(a_1||a_{p+i})(a_2||a_{p+i}) ... (a_p||a_{p+i}); the factors commute."""
    return product([elementary_palindromic(k, p + i, n) for k in range(1, p + 1)], n)


def verify_normalizer_generators(p: int, m: int) -> NormalizerReport:
    """Word-level checks on the free-group factor of the normalizer of P_n x <sigma_n>."""
    n = p + m
    rho = cycle_permutation(list(range(1, p + 1)), n)
    sig = sigma_n(n)
    sig_p = product([sigma_ai(k, n) for k in range(1, p + 1)], n)
    finite = [compose(power(rho, a), power(sig, b)) for a in range(p) for b in range(2)]
    gens = [normalizer_generator(p, i, n) for i in range(1, m + 1)]
    ident = Automorphism.identity(n)

    def conj_lands(g, x):
        # g x g^-1 = y  <=>  g o x = y o g
        return any(compose(g, x) == compose(y, g) for y in finite)

    checks = {
        "factors commute": all(
            product([elementary_palindromic(k, p + i, n) for k in range(1, p + 1)], n, left_first=True) == g
            for i, g in enumerate(gens, 1)
        ),
        "palindromic": all(is_palindromic_automorphism(g) for g in gens),
        "conjugates of rho and sigma_n land in <rho, sigma_n>": all(
            conj_lands(g, x) for g in gens for x in (rho, sig)
        ),
        "rho and sigma_n fix each generator under conjugation": all(
            compose(compose(x, g), power(x, order - 1)) == g for g in gens for x, order in ((rho, p), (sig, 2))
        ),
        "sigma_p inverts each generator": all(compose(compose(compose(sig_p, g), sig_p), g) == ident for g in gens),
    }
    if m >= 2:
        checks["generators do not commute"] = all(
            compose(g, h) != compose(h, g) for g, h in itertools.combinations(gens, 2)
        )
    return NormalizerReport(p, m, gens, checks)


def pi_a_generators(n: int) -> list[Automorphism]:
    """Standard generators of the palindromic automorphism group and their inverses."""
    gens = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                gens += [elementary_palindromic(i, j, n), elementary_palindromic_inverse(i, j, n)]
    gens += [sigma_ai(i, n) for i in range(1, n + 1)]
    if n >= 2:
        gens.append(cycle_permutation([1, 2], n))
        gens.append(cycle_permutation(list(range(1, n + 1)), n))
        gens.append(cycle_permutation(list(range(n, 0, -1)), n))
    return gens


def random_pi_a_product(n: int, rng, max_length: int = 20) -> tuple[Automorphism, list[int]]:
    """A product of 1..max_length random generators; returns it with the chosen indices."""
    gens = pi_a_generators(n)
    picks = [rng.randrange(len(gens)) for _ in range(rng.randint(1, max_length))]
    return product([gens[k] for k in picks], n), picks
