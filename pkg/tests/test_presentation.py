from palindromic.homology import smith_normal_form
from palindromic.wordcore import (
    EPA,
    LEFT_FIRST,
    PSA,
    RIGHT_FIRST,
    epa_abelianization_invariants,
    verify_normalizer_generators,
    verify_relators,
    witness_subgroups,
)
from palindromic.wordcore.presentation import abelianized_relation_matrix, relator_instances


def test_instance_counts():
    assert len(relator_instances(3, EPA)) == 12
    assert len(relator_instances(4, EPA)) == 24 + 24 + 24
    assert relator_instances(2, EPA) == []


def test_epa_relators_hold_left_first_only():
    for n in (3, 4):
        rep = verify_relators(n, EPA)
        assert rep.conventions_satisfied() == [LEFT_FIRST]
        assert rep.passed
        assert rep.failures(RIGHT_FIRST)
        assert all(c.relator == "R3" for c in rep.failures(RIGHT_FIRST))


def test_psa_relators_hold_both_ways():
    rep = verify_relators(3, PSA)
    assert set(rep.conventions_satisfied()) == {LEFT_FIRST, RIGHT_FIRST}


def test_wrong_third_relator_fails():
    rep = verify_relators(3, EPA)
    assert rep.contrast and all(not any(c.holds.values()) for c in rep.contrast)


def test_vacuous_small_rank():
    assert verify_relators(1, EPA).passed
    assert verify_relators(2, EPA).checks == []


def test_abelianization():
    for n in (3, 4):
        assert sorted(epa_abelianization_invariants(n, EPA)) == [2] * (n * (n - 1))
        assert epa_abelianization_invariants(n, PSA) == [0] * (n * (n - 1))
    # rank 2: no relators, the group is free on two generators
    assert epa_abelianization_invariants(2, EPA) == [0, 0]


def test_epa3_relation_matrix_smith_form():
    snf = smith_normal_form(abelianized_relation_matrix(3, EPA))
    assert [d for d in snf.factors if d != 1] == [2] * 6


def test_witness_subgroups():
    for n, p in [(3, 3), (5, 3), (6, 3), (5, 5)]:
        rep = witness_subgroups(n, p)
        assert rep.passed, rep.checks
        assert len(rep.involutions) == n
        assert len(rep.p_cycles) == n // p
        assert len(rep.translations) == n - 1


def test_normalizer_generators():
    for p, m in [(3, 1), (3, 2), (5, 2)]:
        rep = verify_normalizer_generators(p, m)
        assert rep.passed, rep.checks
        assert len(rep.generators) == m
