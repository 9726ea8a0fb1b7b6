"""Registry of published and derived expected values.

Every entry carries a ``source`` string.  ``published`` entries restate
counts and vanishing claims from the literature on palindromic automorphism
groups; ``derived`` entries were produced by the brute-force oracles in the
test suite and are frozen here as regression values.  The CLI and the
acceptance tests both read from this module, so a value lives in exactly one
place.
"""

from __future__ import annotations

from dataclasses import dataclass

PUBLISHED = "published"
DERIVED = "derived"


@dataclass(frozen=True)
class Expectation:
    value: object
    kind: str
    source: str


# f-vectors of the p-case quotient depend only on m = n - p.
P_CASE_F_VECTORS = {
    0: Expectation((1,), PUBLISHED, "p-case quotient for n = p is a single point"),
    1: Expectation((3, 2), PUBLISHED, "p-case quotient for n = p+1: 3 vertices and 2 edges"),
    2: Expectation((13, 28, 16), PUBLISHED, "p-case quotient for n = p+2: 13 vertices, 28 edges, 16 triangles"),
}

SIGMA_F_VECTORS = {
    1: Expectation((1,), DERIVED, "chain-orbit brute force"),
    2: Expectation((3, 2), DERIVED, "chain-orbit brute force"),
    3: Expectation((9, 18, 10), DERIVED, "chain-orbit brute force"),
}

# Euler characteristic of the contractible p-case quotients.
P_CASE_EULER = Expectation(1, PUBLISHED, "p-case quotients with m <= 2 are contractible")

# Which families the top-degree cohomology vanishing claim covers.
TOP_VANISHING = {
    "sigma": Expectation(
        {"coefficients": ("Q", 3, 5, 7), "min_n": 2},
        PUBLISHED,
        "top cohomology of the sigma-quotient vanishes over Q and F_p, p odd",
    ),
    "p_sigma": Expectation(
        {"coefficients": (3, 5, 7), "min_m": 1},
        PUBLISHED,
        "top cohomology of the p-case quotient vanishes with p-local coefficients",
    ),
}

ABELIANIZATION = {
    "EPA": Expectation("n(n-1) copies of Z/2", PUBLISHED, "elementary abelian 2-group of rank n(n-1), n >= 3"),
    "PSA": Expectation("free abelian of rank n(n-1)", PUBLISHED, "free abelian group of rank n(n-1)"),
}

FARRELL_RANGE = Expectation("p <= n <= 2p - 1", PUBLISHED, "a single conjugacy class of order-p subgroups")
FARRELL_MATCHES_SYMMETRIC_GROUP = Expectation(
    (0, 1, 2), PUBLISHED, "Farrell cohomology agrees with that of the symmetric group on p letters for m <= 2"
)


def sigma_dimension(n: int) -> int:
    """Maximal simplices of the sigma-quotient have dimension n - 1."""
    return n - 1


def p_case_dimension(p: int, n: int) -> int:
    return n - p


def expected_f_vector(kind: str, n: int, p: int | None = None) -> Expectation | None:
    if kind == "p_sigma":
        return P_CASE_F_VECTORS.get(n - p)
    return SIGMA_F_VECTORS.get(n)


def epa_invariants(n: int) -> list[int]:
    return [2] * (n * (n - 1))


def psa_invariants(n: int) -> list[int]:
    return [0] * (n * (n - 1))


def farrell_reference(p: int) -> dict[int, str | int]:
    """Z/p exactly at residues 0 mod 2(p-1)."""
    from .farrell import sigma_p_table

    return sigma_p_table(p)
