import pytest

import oracles
from palindromic.homology import InternalConsistencyError
from palindromic.moduli import (
    QuotientComplex,
    build_complex,
    check_face_identities,
    enumerate_maximal_cubes,
    faces,
    greedy_collapsibility,
    p_sigma,
    sigma,
    stats,
    verify_free_faces,
)
from palindromic.treespace import TreeError


@pytest.mark.parametrize(
    "family, fv",
    [
        (sigma(1), [1]),
        (sigma(2), [3, 2]),
        (sigma(3), [9, 18, 10]),
        (p_sigma(3, 3), [1]),
        (p_sigma(3, 4), [3, 2]),
        (p_sigma(3, 5), [13, 28, 16]),
        (p_sigma(5, 7), [13, 28, 16]),
    ],
)
def test_f_vectors_against_brute_force(family, fv):
    q = build_complex(family)
    assert q.f_vector() == fv
    if family.p != 5:
        assert oracles.chain_orbit_f_vector(family.maximal_trees()) == fv


def test_sigma4_and_5_shapes():
    q4 = build_complex(sigma(4))
    assert q4.f_vector() == [33, 154, 224, 102]
    st = stats(q4)
    assert st.components == 1 and st.euler_characteristic == 1 and st.dimension == 3


def test_family_validation():
    with pytest.raises(TreeError):
        p_sigma(3, 2)
    with pytest.raises(TreeError):
        sigma(0)


def test_faces_of_an_edge():
    q = build_complex(sigma(2))
    c = q.cells[1][0]
    fs = faces(c)
    assert len(fs) == 2
    assert fs[0].dimension == 0 and fs[1].dimension == 0
    with pytest.raises(ValueError):
        faces(q.cells[0][0])


def test_face_identities_checked():
    bad = QuotientComplex.from_faces([[(), (), ()], [(0, 1), (1, 2), (0, 2)], [(0, 1, 2)]])
    with pytest.raises(InternalConsistencyError):
        check_face_identities(bad)


def test_parallel_build_is_identical(monkeypatch):
    serial = build_complex(sigma(3), workers=1)
    parallel = build_complex(sigma(3), workers=2)
    assert serial.keys == parallel.keys and serial.faces == parallel.faces
    monkeypatch.setenv("PALINDROMIC_WORKERS", "2")
    assert build_complex(p_sigma(3, 5)).keys == build_complex(p_sigma(3, 5), workers=1).keys


def test_collapsibility():
    for fam in (p_sigma(3, 3), p_sigma(3, 4), p_sigma(3, 5), sigma(2), sigma(3)):
        assert greedy_collapsibility(build_complex(fam))


def test_circle_is_not_collapsible():
    circle = QuotientComplex.from_faces([[()], [(0, 0)]])
    assert not greedy_collapsibility(circle)


def test_maximal_cubes_and_free_faces():
    for fam in (sigma(2), sigma(3), sigma(4), p_sigma(3, 4), p_sigma(3, 5)):
        rep = verify_free_faces(fam)
        assert rep.passed, [e for e in rep.entries if not e.passed]
    cubes = enumerate_maximal_cubes(sigma(4))
    assert any(c.degenerate for c in cubes)
    assert not any(c.degenerate for c in enumerate_maximal_cubes(sigma(3)))
