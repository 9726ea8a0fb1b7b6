"""Word algebra in F_n and automorphisms given by generator images."""

from .automorphisms import (
    Automorphism,
    InvalidGeneratorPair,
    apply,
    column_parity_ok,
    compose,
    cycle_permutation,
    elementary_palindromic,
    elementary_palindromic_inverse,
    exponent_matrix,
    is_palindromic_automorphism,
    permutation_automorphism,
    power,
    product,
    sigma_ai,
    sigma_n,
    symmetric_conjugation,
    verify_centralizes_sigma,
)
from .presentation import (
    CONVENTIONS,
    EPA,
    LEFT_FIRST,
    PSA,
    RIGHT_FIRST,
    epa_abelianization_invariants,
    normalizer_generator,
    verify_normalizer_generators,
    verify_relators,
    witness_subgroups,
)
from .words import Letter, RankError, Word, is_palindrome, reduce
