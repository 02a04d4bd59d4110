from math import prod

import pytest

from dbgraph import generators as gen
from dbgraph.graph_core import GraphInputError, build_graph
from dbgraph.regularity import (
    ArrayFormatError,
    DistanceBiregular,
    DistanceRegular,
    IntersectionArray,
    NotConnected,
    NotDistanceRegularized,
    NotRegularized,
    arr,
    class_arrays,
    classify,
    vertex_intersection_numbers,
)
from dbgraph.scalars import layer_sizes

from oracles import DRG_FIXTURES, FIXTURES, fixture, layers


EXPECTED = {
    "S(K4)": ("3,1,2;1,1,2", "2,2,1,1;1,1,2,2"),
    "S(Petersen)": ("3,1,2,1,2;1,1,1,1,2", "2,2,1,2,1,1;1,1,1,1,2,2"),
    "S(Heawood)": ("3,1,2,1,2,1;1,1,1,1,1,3", "2,2,1,2,1,2;1,1,1,1,1,2"),
    "biplane": ("7,3,4;1,3,4", "4,6,2,1;1,2,6,4"),
    "K2,3": ("3,1;1,3", "2,2;1,2"),
    "AG(2,3)": ("4,2,3;1,1,3", "3,3,2,1;1,1,3,3"),
    "grid3": ("2,3,1,3;1,1,1,2", "4,1,3,1;1,1,1,4"),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_known_arrays(name):
    cl = classify(fixture(name).graph)
    assert isinstance(cl, DistanceBiregular)
    ay, ayp = EXPECTED[name]
    col = fixture(name).coloring()
    got = (cl.arrayY, cl.arrayYp) if cl.coloring.side == col.side else (cl.arrayYp, cl.arrayY)
    assert got == (arr(ay), arr(ayp))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_all_fixtures_are_dbg_with_product_identities(name):
    gg = fixture(name)
    cl = classify(gg.graph)
    assert isinstance(cl, DistanceBiregular)
    a, ap = cl.arrayY, cl.arrayYp
    assert abs(a.D - ap.D) <= 1
    for x, other in ((a, ap), (ap, a)):
        for i in range(x.D):
            # c_i + b_i alternates between the two valencies
            assert x.ci(i) + x.bi(i) == (x.k if i % 2 == 0 else other.k)
        assert x.ci(x.D) == (x.k if x.D % 2 == 0 else other.k)
    ks = layer_sizes(a)
    assert sum(ks[0::2]) == len(cl.coloring.members(0))
    assert sum(ks[1::2]) == len(cl.coloring.members(1))
    assert ks == layers(gg.graph, cl.coloring.members(0))
    # pairs (x in Y, z in Y') at odd distance i, counted from both sides
    ksp = layer_sizes(ap)
    nY, nYp = len(cl.coloring.members(0)), len(cl.coloring.members(1))
    for i in range(1, min(a.D, ap.D) + 1, 2):
        assert nY * ks[i] == nYp * ksp[i]


@pytest.mark.parametrize("name", sorted(DRG_FIXTURES))
def test_bipartite_drgs(name):
    cl = classify(fixture(name).graph)
    assert isinstance(cl, DistanceRegular) and cl.bipartite


def test_petersen_is_drg():
    cl = classify(gen.petersen().graph)
    assert isinstance(cl, DistanceRegular)
    assert cl.array == arr("3,2;1,1") and not cl.bipartite


def test_complete_graph_drg():
    cl = classify(gen.complete(5).graph)
    assert cl.array == arr("4;1") and cl.a == (0, 3)


def test_paths_are_not_regularized():
    p3 = build_graph(3, [(0, 1), (1, 2)])
    # middle vertex is fine but leaves see a_i/b_i that vary
    assert isinstance(classify(p3), DistanceBiregular)
    p4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    cl = classify(p4)
    assert isinstance(cl, NotDistanceRegularized)
    w = cl.witness
    assert w.counts != w.counts_other


def test_p3_arrays():
    cl = classify(build_graph(3, [(0, 1), (1, 2)]))
    assert {str(cl.arrayY), str(cl.arrayYp)} == {"(1,1;1,1)", "(2;1)"}


def test_disconnected_and_trivial():
    assert isinstance(classify(build_graph(2, [])), NotConnected)
    assert isinstance(classify(build_graph(0, [])), NotConnected)
    with pytest.raises(GraphInputError):
        classify(build_graph(1, []))


def test_vertex_profile_of_k23_center():
    g = gen.complete_bipartite(2, 3).graph
    p = vertex_intersection_numbers(g, 0)
    assert not isinstance(p, NotRegularized)
    assert p.array() == arr("3,1;1,3")
    assert p.c[0] == 0 and p.eccentricity == 2


def test_class_arrays_follow_coloring():
    gg = gen.subdivision(gen.petersen())
    col = gg.coloring()
    a, ap = class_arrays(gg.graph, col)
    b, bp = class_arrays(gg.graph, col.swapped())
    assert (a, ap) == (bp, b)


@pytest.mark.parametrize("text", ["", "3,1;", "3,1;1", "0,1;1,2", "3,1;2,3", "3;1;2", "a;b"])
def test_bad_array_text(text):
    with pytest.raises(ArrayFormatError):
        IntersectionArray.parse(text)


def test_array_accessors_and_format():
    a = arr("(7,3,4;1,3,4)")
    assert str(a) == "(7,3,4;1,3,4)" and a.D == 3 and a.k == 7
    assert a.bi(3) == 0 and a.ci(0) == 0
    with pytest.raises(IndexError):
        a.bi(4)
    assert IntersectionArray.parse(str(a)) == a
