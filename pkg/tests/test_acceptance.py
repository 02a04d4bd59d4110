"""Acceptance criteria, one check per criterion.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly: ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dbgraph import generators as gen  # noqa: E402
from dbgraph.feasibility import dual_array, enumerate_families  # noqa: E402
from dbgraph.homogeneity import gamma_profile, homogeneity_verdict  # noqa: E402
from dbgraph.regularity import DistanceBiregular, arr, class_arrays, classify  # noqa: E402
from dbgraph.scalars import delta_sequence, layer_sizes, triple_counts, p_values, scalar_table  # noqa: E402
from dbgraph.search import ExhaustedNoGraph, Found, construct_from_arrays, realizes  # noqa: E402

from oracles import FIXTURES, fixture, fixture_dist, layers, triple_oracle, pi2i, rank_cells  # noqa: E402


def within(limit):
    def deco(fn):
        def wrapped():
            t0 = time.perf_counter()
            fn()
            elapsed = time.perf_counter() - t0
            assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
        wrapped.__name__ = fn.__name__
        wrapped.__doc__ = fn.__doc__
        return wrapped
    return deco


def oriented(cl, gg):
    """(arrayY, arrayYp) with the declared class as Y."""
    col = gg.coloring()
    return (cl.arrayY, cl.arrayYp) if cl.coloring.side == col.side else (cl.arrayYp, cl.arrayY)


@within(1.0)
def criterion_1():
    gg = gen.subdivision(gen.petersen())
    cl = classify(gg.graph)
    assert isinstance(cl, DistanceBiregular)
    assert oriented(cl, gg) == (arr("3,1,2,1,2;1,1,1,1,2"), arr("2,2,1,2,1,1;1,1,1,1,2,2"))
    col = gg.coloring()
    assert homogeneity_verdict(gg.graph, col, 0).two_Y_homogeneous is True
    assert homogeneity_verdict(gg.graph, col, 1).almost_2_Y_homogeneous is False


@within(5.0)
def criterion_2():
    gg = gen.subdivision(gen.heawood())
    cl = classify(gg.graph)
    x, r = oriented(cl, gg)
    assert x == arr("3,1,2,1,2,1;1,1,1,1,1,3")
    assert r == arr("2,2,1,2,1,2;1,1,1,1,1,2")
    col = gg.coloring()
    vx = homogeneity_verdict(gg.graph, col, 0)
    vr = homogeneity_verdict(gg.graph, col, 1)
    assert vx.two_Y_homogeneous is True
    assert vr.almost_2_Y_homogeneous is True and vr.two_Y_homogeneous is False
    assert delta_sequence(r, x) == {2: 0, 3: 0, 4: 0, 5: 2}


@within(1.0)
def criterion_3():
    gg = gen.biplane_2_8_4_3()
    cl = classify(gg.graph)
    p, b = oriented(cl, gg)
    assert p == arr("7,3,4;1,3,4")
    assert layer_sizes(p)[2] == 7 == p.k
    col = gg.coloring()
    assert homogeneity_verdict(gg.graph, col, 0).two_Y_homogeneous is True
    g2 = gamma_profile(gg.graph, col, 0, 2)
    p2ii, _ = p_values(p, b)
    assert g2.value == 1 == p.ci(2) * (p.bi(1) - 1) // p2ii[2]
    assert p.ci(2) * (p.bi(1) - 1) % p2ii[2] == 0
    assert delta_sequence(p, b) == {2: 0}
    assert dual_array(p) == b == arr("4,6,2,1;1,2,6,4")


@within(5.0)
def criterion_4_point_class_and_homogeneity():
    for n in (2, 3, 4, 5):
        gg = gen.grid_gq(n)
        cl = classify(gg.graph)
        assert isinstance(cl, DistanceBiregular)
        pts, _ = oriented(cl, gg)
        assert pts == arr(f"2,{n},1,{n};1,1,1,2")
        col = gg.coloring()
        for cls in (0, 1):
            v = homogeneity_verdict(gg.graph, col, cls)
            assert v.almost_2_Y_homogeneous is True
            assert all(v.arrays[0].ci(i) == 1 for i in range(1, 4))


@within(5.0)
def criterion_4_line_class_literal_array():
    for n in (2, 3, 4, 5):
        gg = gen.grid_gq(n)
        _, lines = oriented(classify(gg.graph), gg)
        assert lines == arr(f"{n + 1},1,{n},{n};1,1,1,{n + 1}"), f"n={n}: measured {lines}"


@within(30.0)
def criterion_5():
    checked = 0
    for name in FIXTURES:
        gg = fixture(name)
        col = gg.coloring()
        for cls in (0, 1):
            v = homogeneity_verdict(gg.graph, col, cls)
            a, ap = v.arrays
            deltas = delta_sequence(a, ap)
            assert all(d >= 0 for d in deltas.values()), (name, cls, deltas)
            if ap.k >= 3 and a.D >= 3:
                assert v.two_Y_homogeneous == all(d == 0 for d in deltas.values()), (name, cls)
                assert v.almost_2_Y_homogeneous == all(d == 0 for i, d in deltas.items() if i <= a.D - 2), (name, cls)
                checked += 1
    assert checked >= 10


def criterion_6():
    for name in FIXTURES:
        gg = fixture(name)
        g, d = gg.graph, fixture_dist(name)
        col = gg.coloring()
        a, ap = class_arrays(g, col)
        for cls, (x, xp) in enumerate(((a, ap), (ap, a))):
            Y = col.members(cls)
            t = scalar_table(x, xp)
            assert t.kY == layers(g, Y, d), name
            assert t.rank1 == rank_cells(g, Y, 1, d), name
            r2 = rank_cells(g, Y, 2, d)
            assert {c: v for c, v in t.rank2.items() if v} == r2, name
            assert t.p2ii == {i: r2.get((i, i), 0) for i in range(1, x.D + 1)}, name
            assert t.pi2i == {i: pi2i(g, Y, i, d) for i in range(1, x.D + 1)}, name
            for i in t.delta:
                assert triple_counts(x, xp, i) == triple_oracle(g, Y, i, d), (name, i)


@within(10.0)
def criterion_7():
    d3 = {c.arrayY for c in enumerate_families(3, 8)}
    assert arr("7,3,4;1,3,4") in d3
    for k in range(2, 9):
        assert arr(f"{k},1,{k - 1};1,1,2") in d3
    for D in range(3, 10):
        for c in enumerate_families(D, 8, include_rejected=True):
            if not c.accepted or c.partial:
                continue
            for x, y in ((c.arrayY, c.arrayYp), (c.arrayYp, c.arrayY)):
                assert not (y.ci(2) >= 3 and x.D >= 6), c.describe()


@within(60.0)
def criterion_8():
    k23 = construct_from_arrays(arr("3,1;1,3"), arr("2,2;1,2"), find_all=True)
    assert isinstance(k23, Found) and k23.exhausted and k23.solutions == 1
    assert not isinstance(k23, ExhaustedNoGraph)
    a, ap = arr("3,1,2,1,2;1,1,1,1,2"), arr("2,2,1,2,1,1;1,1,1,1,2,2")
    ps = construct_from_arrays(a, ap)
    assert isinstance(ps, Found) and ps.graph.graph.n == 25
    for out, x, y in ((k23, arr("3,1;1,3"), arr("2,2;1,2")), (ps, a, ap)):
        assert realizes(out.graph.graph, x, y)
        cl = classify(out.graph.graph)
        assert (cl.arrayY, cl.arrayYp) == (x, y)


CRITERIA = [
    ("1", "Petersen subdivision round trip", criterion_1),
    ("2", "Heawood subdivision arrays, verdicts and Delta", criterion_2),
    ("3", "biplane arrays, gamma_2, Delta_2 and dual", criterion_3),
    ("4a", "grid point arrays and almost-homogeneity of both classes", criterion_4_point_class_and_homogeneity),
    ("4b", "grid line class equals (n+1,1,n,n;1,1,1,n+1)", criterion_4_line_class_literal_array),
    ("5", "Delta criterion equals direct verdict on all fixtures", criterion_5),
    ("6", "formula tables equal brute-force counts on all fixtures", criterion_6),
    ("7", "enumerator containment and diameter bound", criterion_7),
    ("8", "search recovers K_{2,3} and the Petersen subdivision", criterion_8),
]


@pytest.mark.parametrize("num, title, fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn):
    fn()


def main() -> int:
    failed = 0
    for num, title, fn in CRITERIA:
        try:
            fn()
        except AssertionError as exc:
            failed += 1
            print(f"FAIL  criterion {num}: {title}  ({exc})")
        else:
            print(f"PASS  criterion {num}: {title}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
