import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kahlerkit.chern import euler_characteristic
from kahlerkit.hodge import (
    BettiVector,
    HodgeDiamond,
    betti_from_diamond,
    complete_intersection_betti,
    curve_diamond,
    diamond_pn,
    genus_from_chern,
    hypersurface_betti,
    lefschetz_pattern_check,
    plane_curve_genus,
    validate_diamond,
)
from kahlerkit.projective import cw_homology_pn


@pytest.mark.parametrize("n", range(0, 7))
def test_diamond_pn(n):
    d = diamond_pn(n)
    for p in range(n + 1):
        for q in range(n + 1):
            assert d.h(p, q) == (1 if p == q else 0)
    assert validate_diamond(d) == []
    assert list(betti_from_diamond(d)) == [f for f, _ in cw_homology_pn(n)]


def test_betti_examples():
    assert tuple(betti_from_diamond(diamond_pn(2))) == (1, 0, 1, 0, 1)
    assert tuple(betti_from_diamond(curve_diamond(3))) == (1, 6, 1)
    only = HodgeDiamond.from_rows([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    assert tuple(betti_from_diamond(only)) == (1, 0, 0, 0, 0)


def test_violations():
    bad = HodgeDiamond.from_rows([[1, 1], [0, 1]])
    assert any("conjugation" in v for v in validate_diamond(bad))
    no_class = HodgeDiamond.from_rows([[1, 0], [0, 0]])
    assert any("Kahler class" in v for v in validate_diamond(no_class))
    assert validate_diamond(curve_diamond(2)) == []


def test_diamond_rows_layout():
    d = HodgeDiamond.from_rows([[1, 0, 0], [0, 20, 0], [0, 0, 1]])
    assert d.rows()[2] == [0, 20, 0]
    assert "20" in d.pretty()
    with pytest.raises(ValueError):
        HodgeDiamond(1, ((1, -1), (0, 1)))


@pytest.mark.parametrize(
    "n,d,expected",
    [(1, 3, (1, 2, 1)), (2, 4, (1, 0, 22, 0, 1)), (1, 1, (1, 0, 1)), (3, 3, (1, 0, 1, 10, 1, 0, 1))],
)
def test_hypersurface_betti(n, d, expected):
    assert tuple(hypersurface_betti(n, d)) == expected


@pytest.mark.parametrize(
    "m,degrees,expected",
    [(3, [2], (1, 0, 2, 0, 1)), (4, [2, 2], (1, 0, 6, 0, 1)), (2, [2], (1, 0, 1))],
)
def test_complete_intersection_betti(m, degrees, expected):
    b = complete_intersection_betti(m, degrees)
    assert tuple(b) == expected
    assert b.euler() == euler_characteristic(m, degrees)


def test_complete_intersection_errors():
    with pytest.raises(ValueError):
        complete_intersection_betti(2, [2, 2])


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("d", range(1, 7))
def test_middle_betti_parity(n, d):
    b = hypersurface_betti(n, d)
    mid = b[n]
    assert mid >= 0
    if n % 2:
        assert mid % 2 == 0


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("d", range(1, 7))
def test_lefschetz_pattern_for_hypersurfaces(n, d):
    bX = betti_from_diamond(diamond_pn(n + 1))
    assert lefschetz_pattern_check(bX, hypersurface_betti(n, d), n).passed


def test_lefschetz_examples():
    p3, k3 = betti_from_diamond(diamond_pn(3)), hypersurface_betti(2, 4)
    assert lefschetz_pattern_check(p3, k3, 2).passed
    p4, cubic3 = betti_from_diamond(diamond_pn(4)), hypersurface_betti(3, 3)
    assert lefschetz_pattern_check(p4, cubic3, 3).passed
    rep = lefschetz_pattern_check(p3, (2, 0, 22, 0, 1), 2)
    assert not rep.passed and rep.failures


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 8), st.lists(st.integers(1, 4), min_size=1, max_size=3))
def test_complete_intersections_have_no_b1(m, degrees):
    if m - len(degrees) < 2:
        return
    b = complete_intersection_betti(m, degrees)
    assert b[1] == 0
    assert all(b[i] == 0 for i in range(1, len(b), 2) if i != b.dim)


@pytest.mark.parametrize("d", range(1, 9))
def test_plane_curve_genus(d):
    assert plane_curve_genus(d) == genus_from_chern(d)
    assert tuple(hypersurface_betti(1, d)) == (1, 2 * plane_curve_genus(d), 1)


def test_plane_curve_genus_values():
    assert [plane_curve_genus(d) for d in (1, 2, 3, 5)] == [0, 0, 1, 6]


def test_betti_vector_validation():
    with pytest.raises(ValueError):
        BettiVector((1, 0))
    with pytest.raises(ValueError):
        BettiVector((1, -1, 1))
