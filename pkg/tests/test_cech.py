"""Cech cohomology tests.

Oracle: simplicial cohomology of the nerve, assembled here from scratch
(boundary matrices of the facet closure) and reduced with sympy.
"""

import json
from itertools import combinations

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors as sp_invariant_factors

from kahlerkit import cech
from kahlerkit.cech import CechComplex, InconsistentSheafData, Nerve, SheafData
from kahlerkit.linear import ONE, gauss, mat_mul


def oracle(facets):
    simp = set()
    for f in facets:
        for r in range(1, len(f) + 1):
            simp.update(combinations(sorted(f), r))
    levels = [sorted(s for s in simp if len(s) == k + 1) for k in range(max(len(s) for s in simp))]
    mats = []
    for k in range(len(levels) - 1):
        idx = {s: i for i, s in enumerate(levels[k])}
        M = sp.zeros(len(levels[k + 1]), len(levels[k]))
        for r, t in enumerate(levels[k + 1]):
            for j in range(len(t)):
                M[r, idx[t[:j] + t[j + 1:]]] += (-1) ** j
        mats.append(M)
    ranks = [M.rank() for M in mats]
    dims = []
    for k, level in enumerate(levels):
        out = ranks[k] if k < len(ranks) else 0
        inc = ranks[k - 1] if k else 0
        dims.append(len(level) - out - inc)
    torsion = [[]] + [[abs(int(x)) for x in sp_invariant_factors(M, domain=sp.ZZ) if abs(int(x)) > 1] for M in mats]
    return dims, torsion


TORUS = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)] + [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)]
RP2 = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1), (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]


def test_rp2_fixture_is_a_closed_surface():
    N = cech.minimal_rp2()
    for e in N[1]:
        assert sum(set(e) <= set(t) for t in N[2]) == 2
    assert N.euler_characteristic() == 1
    assert N.simplices == Nerve.from_facets(RP2).simplices


def test_torus_fixture():
    N = cech.minimal_torus()
    assert [len(x) for x in N.simplices] == [7, 21, 14]
    assert N.simplices == Nerve.from_facets(TORUS).simplices


@pytest.mark.parametrize(
    "nerve,facets,expected",
    [
        (cech.triangle_boundary(), [(0, 1), (1, 2), (0, 2)], [1, 1]),
        (cech.minimal_torus(), TORUS, [1, 2, 1]),
        (cech.minimal_rp2(), RP2, [1, 0, 0]),
        (Nerve.from_facets([(0, 1, 2, 3)]), [(0, 1, 2, 3)], [1, 0, 0, 0]),
    ],
)
def test_constant_sheaf_against_oracle(nerve, facets, expected):
    dims, torsion = oracle(facets)
    assert dims == expected
    assert cech.cohomology_dims(cech.constant_sheaf_complex(nerve)) == expected
    groups = cech.integer_cohomology(nerve)
    assert [g[0] for g in groups] == dims
    assert [g[1] for g in groups] == torsion


def test_rp2_integer_cohomology():
    assert cech.integer_cohomology(cech.minimal_rp2()) == [(1, []), (0, []), (0, [2])]


def test_triangle_coboundary_rank():
    c = cech.constant_sheaf_complex(cech.triangle_boundary())
    d0 = c.coboundary(0)
    assert len(d0) == 3 and len(d0[0]) == 3
    assert sp.Matrix([[int(x.re) for x in row] for row in d0]).rank() == 2


def test_point_and_two_points():
    point = Nerve([(0,)])
    c = CechComplex(point, SheafData({(0,): 1}))
    assert cech.cohomology_dims(c) == [1]
    assert c.coboundary(0) == []
    assert cech.cohomology_dims(cech.constant_sheaf_complex(Nerve([(0,), (1,)]))) == [2]


def test_higher_rank_constant_sheaf():
    assert cech.cohomology_dims(cech.constant_sheaf_complex(cech.minimal_torus(), 3)) == [3, 6, 3]


@pytest.mark.parametrize("nerve", [cech.triangle_boundary(), cech.minimal_torus(), cech.minimal_rp2()])
def test_dd_zero(nerve):
    c = cech.constant_sheaf_complex(nerve)
    for k in range(nerve.dimension - 1):
        prod = mat_mul(c.coboundary(k + 1), c.coboundary(k))
        assert all(not x for row in prod for x in row)


@pytest.mark.parametrize("nerve", [cech.triangle_boundary(), cech.minimal_torus(), cech.minimal_rp2()])
def test_subdivision_leaves_cohomology_unchanged(nerve):
    sub = cech.barycentric_subdivision(nerve)
    assert cech.cohomology_dims(cech.constant_sheaf_complex(sub)) == cech.cohomology_dims(
        cech.constant_sheaf_complex(nerve)
    )
    assert sub.euler_characteristic() == nerve.euler_characteristic()


def test_twisted_sheaf_on_circle():
    # a rank-one local system with monodromy -1 around the circle has no cohomology over Q
    N = cech.triangle_boundary()
    dims = {s: 1 for s in N.all_simplices()}
    res = {(t, f): [[ONE]] for t in N[1] for f in [(t[0],), (t[1],)]}
    res[((0, 2), (2,))] = [[gauss(-1)]]
    assert cech.cohomology_dims(CechComplex(N, SheafData(dims, res))) == [0, 0]


def test_inconsistent_restrictions_rejected():
    N = Nerve.from_facets([(0, 1, 2)])
    dims = {s: 1 for s in N.all_simplices()}
    res = {(t, f): [[ONE]] for t in N.all_simplices() if len(t) > 1 for f in cech._faces(t)}
    res[((0, 1, 2), (0, 1))] = [[gauss(2)]]
    with pytest.raises(InconsistentSheafData):
        CechComplex(N, SheafData(dims, res))


def test_missing_data_rejected():
    N = cech.triangle_boundary()
    with pytest.raises(InconsistentSheafData):
        CechComplex(N, SheafData({(0,): 1}))
    with pytest.raises(ValueError):
        Nerve([(0, 1)])
    with pytest.raises(ValueError):
        Nerve([(1, 0), (0,), (1,)])


def test_load_document(tmp_path):
    doc = {
        "nerve": [[0, 1], [1, 2], [0, 2]],
        "dims": {"0": 1, "1": 1, "2": 1, "0,1": 1, "1,2": 1, "0,2": 1},
        "restrictions": [
            {"simplex": [0, 1], "face": [0], "matrix": [[1]]},
            {"simplex": [0, 1], "face": [1], "matrix": [[1]]},
            {"simplex": [1, 2], "face": [1], "matrix": [[1]]},
            {"simplex": [1, 2], "face": [2], "matrix": [[1]]},
            {"simplex": [0, 2], "face": [0], "matrix": [["1"]]},
            {"simplex": [0, 2], "face": [2], "matrix": [["-1"]]},
        ],
    }
    p = tmp_path / "c.json"
    p.write_text(json.dumps(doc))
    _, c = cech.load_document(p)
    assert cech.cohomology_dims(c) == [0, 0]
    _, c = cech.load_document({"nerve": [[0, 1], [1, 2], [0, 2]], "constant": 2})
    assert cech.cohomology_dims(c) == [2, 2]


@st.composite
def random_complexes(draw):
    n = draw(st.integers(3, 6))
    all_tris = list(combinations(range(n), 3))
    all_edges = list(combinations(range(n), 2))
    facets = draw(st.lists(st.sampled_from(all_tris), max_size=6)) + draw(st.lists(st.sampled_from(all_edges), max_size=5))
    facets += [(v,) for v in range(n)]
    return facets


@settings(max_examples=40, deadline=None)
@given(random_complexes())
def test_random_complexes_against_oracle(facets):
    N = Nerve.from_facets(facets)
    dims, torsion = oracle(facets)
    assert cech.cohomology_dims(cech.constant_sheaf_complex(N)) == dims
    assert cech.integer_cohomology(N) == list(zip(dims, torsion))
    assert sum((-1) ** k * d for k, d in enumerate(dims)) == N.euler_characteristic()
