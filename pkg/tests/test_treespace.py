import itertools

import pytest

import oracles
from palindromic.treespace import (
    AdmissibleTree,
    InvalidCollapse,
    TreeError,
    automorphisms,
    canonical_form,
    collapse,
    collapse_with_map,
    double,
    enumerate_maximal_p_trees,
    enumerate_maximal_trees,
    forest_stabilizer,
    has_odd_edge_permutation,
    is_subforest,
    maximal_subforests,
    parse_tree,
    permutation_is_odd,
    subforests,
)

CLASS_COUNTS = {2: 1, 3: 1, 4: 2, 5: 3, 6: 6}


def star(n):
    """Basepoint leaf 0, centre 1, leaves 2..n+1 (only trivalent for n = 2)."""
    return AdmissibleTree(n + 2, tuple((1, v) for v in [0] + list(range(2, n + 2))), frozenset([0] + list(range(2, n + 2))))


def test_tree_validation():
    with pytest.raises(TreeError):
        AdmissibleTree(3, ((0, 1), (1, 2), (0, 2)), frozenset({0, 2}))
    with pytest.raises(TreeError):
        AdmissibleTree(3, ((0, 1), (1, 2)), frozenset({2}))
    with pytest.raises(TreeError):  # leaf 2 not attaching
        AdmissibleTree(3, ((0, 1), (1, 2)), frozenset({0}))


def test_rank_below_two_rejected():
    with pytest.raises(TreeError):
        enumerate_maximal_trees(1)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_maximal_tree_census_matches_networkx(n):
    trees = enumerate_maximal_trees(n)
    assert len(trees) == CLASS_COUNTS[n]
    ref = oracles.maximal_tree_classes(n, "prufer" if n <= 4 else "nonisomorphic")
    assert len(ref) == len(trees)
    assert sorted(len(automorphisms(t)) for t in trees) == sorted(oracles.pointed_automorphism_count(g) for g in ref)
    for t in trees:
        deg = t.valences()
        assert len(t.edges) == 2 * n - 1
        assert deg.count(1) == n + 1 and deg.count(3) == n - 1
        assert t.rank == n


def test_canonical_form_is_isomorphism_invariant():
    for t in enumerate_maximal_trees(5):
        perm = list(range(t.num_vertices))
        perm = [perm[0]] + perm[1:][::-1]
        relabelled = AdmissibleTree(
            t.num_vertices, tuple((perm[u], perm[v]) for u, v in t.edges), frozenset(perm[v] for v in t.attach), perm[t.basepoint]
        )
        assert canonical_form(relabelled) == canonical_form(t)


def test_parse_round_trip():
    for t in enumerate_maximal_trees(4) + enumerate_maximal_p_trees(3, 5):
        for s in subforests(t):
            labels = [int(k in s) for k in range(len(t.edges))]
            text = canonical_form(t, labels)
            back, back_labels = parse_tree(text)
            assert canonical_form(back, back_labels) == text
    with pytest.raises(ValueError):
        parse_tree("a(0:a(")
    with pytest.raises(ValueError):
        parse_tree("a(x)")


def test_subforests_match_brute_force():
    for t in enumerate_maximal_trees(4) + enumerate_maximal_p_trees(3, 5):
        assert sorted(map(sorted, subforests(t))) == sorted(map(sorted, oracles.brute_subforests(t)))


def test_maximal_subforests_are_maximal():
    t = enumerate_maximal_trees(3)[0]
    mx = maximal_subforests(t)
    for s in mx:
        assert all(not is_subforest(t, s | {e}) for e in range(len(t.edges)) if e not in s)


def test_invalid_collapse():
    t = enumerate_maximal_trees(2)[0]
    with pytest.raises(InvalidCollapse):
        collapse(t, range(len(t.edges)))


def test_collapse_preserves_rank_and_doubled_betti():
    for t in enumerate_maximal_trees(4) + enumerate_maximal_p_trees(3, 5) + enumerate_maximal_p_trees(5, 6):
        for s in subforests(t):
            q = collapse(t, s)
            assert q.rank == t.rank
            assert double(q).betti() == t.rank


def test_collapse_composes():
    for t in enumerate_maximal_trees(4):
        forests = subforests(t)
        for small, big in itertools.combinations(forests, 2):
            if not small < big:
                continue
            q, emap = collapse_with_map(t, small)
            rest = [emap[k] for k in big - small]
            assert canonical_form(collapse(q, rest)) == canonical_form(collapse(t, big))


def test_collapse_matches_networkx_contraction():
    for t in enumerate_maximal_p_trees(3, 5):
        for s in subforests(t):
            a = oracles.tree_graph(collapse(t, s))
            b = oracles._as_tree(oracles.contract(t, s), t.theta_edge_count)
            assert canonical_form(collapse(t, s)) == canonical_form(b)
            assert a.number_of_nodes() == b.num_vertices


def test_double_of_small_star():
    d = double(star(2))
    assert len(d.vertices) == 5 and len(d.edges) == 6 and d.betti() == 2
    for e in d.edges:
        assert d.involution[d.involution[e]] == e


def test_double_of_theta_point():
    (t,) = enumerate_maximal_p_trees(3, 3)
    d = double(t)
    assert d.betti() == 3
    assert d.rotation is not None


def test_p_tree_counts():
    assert len(enumerate_maximal_p_trees(3, 3)) == 1
    assert len(enumerate_maximal_p_trees(3, 4)) == 1
    assert len(enumerate_maximal_p_trees(3, 5)) == 2
    with pytest.raises(TreeError):
        enumerate_maximal_p_trees(3, 2)


def test_automorphism_orders_are_powers_of_two():
    for n in range(2, 7):
        for t in enumerate_maximal_trees(n):
            for g in automorphisms(t):
                o = g.order()
                assert o & (o - 1) == 0


def test_forest_stabilizer_and_parity():
    t = enumerate_maximal_trees(3)[0]
    # the two edges below the trivalent vertex furthest from the basepoint swap
    stab = forest_stabilizer(t, [])
    assert len(stab) == 2
    assert permutation_is_odd({0: 1, 1: 0})
    assert not permutation_is_odd({0: 1, 1: 2, 2: 0})


def test_degenerate_cubes_first_appear_in_rank_four():
    def degenerate(n):
        return sum(
            has_odd_edge_permutation(t, s) for t in enumerate_maximal_trees(n) for s in subforests(t) if len(s) == n - 1
        )

    assert degenerate(3) == 0
    assert degenerate(4) > 0
