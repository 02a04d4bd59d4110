"""Layered backtracking search for a graph realizing a pair of intersection arrays.

The root is vertex 0 (class Y).  Layer i holds the k_i vertices at distance i
from the root; edges only join consecutive layers.  Vertices of layer i pick
their b_i down-neighbours one after another.  Two symmetry rules prune the
tree: among candidate targets with identical current neighbourhoods (twins,
which includes all untouched vertices) only a prefix may be chosen.  Common
neighbour counts of same-class pairs are kept incrementally and capped by c_2
(resp. c'_2); once both vertices of a pair are complete their count must be 0
or exactly c_2.  Every complete candidate is re-classified from scratch.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Union

from .feasibility import FeasibilityReport, validate_pair
from .generators import GeneratedGraph
from .graph_core import build_graph
from .regularity import DistanceBiregular, DistanceRegular, IntersectionArray, classify
from .scalars import layer_sizes

DEFAULT_MAX_NODES = 10**7
DEFAULT_MAX_SECONDS = 60.0
DEFAULT_MAX_VERTICES = 64


@dataclass(frozen=True)
class Found:
    graph: GeneratedGraph
    nodes: int
    elapsed: float
    solutions: int = 1
    exhausted: bool = False


@dataclass(frozen=True)
class ExhaustedNoGraph:
    nodes: int
    elapsed: float


@dataclass(frozen=True)
class Timeout:
    elapsed: float
    nodes: int


@dataclass(frozen=True)
class InfeasibleArrays:
    report: FeasibilityReport


SearchOutcome = Union[Found, ExhaustedNoGraph, Timeout, InfeasibleArrays]


class _Stop(Exception):
    pass


def realizes(g, aY: IntersectionArray, aYp: IntersectionArray) -> bool:
    """Does classify(g) give exactly (aY, aYp) with vertex 0 in the Y class?"""
    cl = classify(g)
    if isinstance(cl, DistanceBiregular):
        return cl.arrayY == aY and cl.arrayYp == aYp
    if isinstance(cl, DistanceRegular):
        return cl.bipartite and cl.array == aY and aY == aYp
    return False


class _Search:
    def __init__(self, aY, aYp, max_nodes, max_seconds, find_all):
        self.aY, self.aYp = aY, aYp
        self.D = aY.D
        ks = layer_sizes(aY)
        self.layers: list[list[int]] = []
        start = 0
        for k in ks:
            self.layers.append(list(range(start, start + k)))
            start += k
        self.n = start
        self.layer_of = [i for i, L in enumerate(self.layers) for _ in L]
        self.cls = [i % 2 for i in self.layer_of]
        self.c2 = (aY.ci(2) if aY.D >= 2 else 0, aYp.ci(2) if aYp.D >= 2 else 0)
        self.degree = [aY.k if i % 2 == 0 else aYp.k for i in self.layer_of]
        self.adj: list[list[int]] = [[] for _ in range(self.n)]
        self.updeg = [0] * self.n
        self.cn = [[0] * self.n for _ in range(self.n)]
        self.max_nodes, self.max_seconds = max_nodes, max_seconds
        self.find_all = find_all
        self.nodes = 0
        self.t0 = time.monotonic()
        self.timed_out = False
        self.solutions = 0
        self.first: GeneratedGraph | None = None

    # --- bookkeeping -------------------------------------------------------
    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            self.timed_out = True
            raise _Stop
        if self.nodes % 1024 == 0 and time.monotonic() - self.t0 > self.max_seconds:
            self.timed_out = True
            raise _Stop

    def _complete(self, v: int) -> bool:
        return len(self.adj[v]) == self.degree[v]

    def _add_edge(self, u: int, w: int, log: list) -> bool:
        """Add u-w (u upper); update common-neighbour counts; False on overflow."""
        ok = True
        cu, cw = self.c2[self.cls[u]], self.c2[self.cls[w]]
        for t in self.adj[w]:
            self.cn[u][t] += 1
            self.cn[t][u] += 1
            log.append(("cn", u, t))
            if self.cn[u][t] > cu:
                ok = False
        for s in self.adj[u]:
            self.cn[w][s] += 1
            self.cn[s][w] += 1
            log.append(("cn", w, s))
            if self.cn[w][s] > cw:
                ok = False
        self.adj[u].append(w)
        self.adj[w].append(u)
        self.updeg[w] += 1
        log.append(("edge", u, w))
        return ok

    def _undo(self, log: list) -> None:
        for op, a, b in reversed(log):
            if op == "cn":
                self.cn[a][b] -= 1
                self.cn[b][a] -= 1
            else:
                self.adj[a].pop()
                self.adj[b].pop()
                self.updeg[b] -= 1
        log.clear()

    def _pairs_ok(self, v: int) -> bool:
        """v just became complete: complete same-class partners share 0 or exactly c_2 neighbours."""
        want = self.c2[self.cls[v]]
        row = self.cn[v]
        seen = set()
        for w in self.adj[v]:
            for t in self.adj[w]:
                if t != v and t not in seen:
                    seen.add(t)
                    if self._complete(t) and row[t] != want:
                        return False
        return True

    # --- search ------------------------------------------------------------
    def _choices(self, i: int, need: int):
        """Subsets of layer i+1 of size need, prefix-closed within twin groups."""
        cap = self.aY.ci(i + 1)
        groups: dict[tuple, list[int]] = {}
        for w in self.layers[i + 1]:
            if self.updeg[w] < cap:
                groups.setdefault(tuple(self.adj[w]), []).append(w)
        glist = list(groups.values())

        def rec(g: int, remaining: int, acc: list[int]):
            if remaining == 0:
                yield list(acc)
                return
            if g == len(glist):
                return
            members = glist[g]
            for m in range(min(len(members), remaining), -1, -1):
                acc.extend(members[:m])
                yield from rec(g + 1, remaining - m, acc)
                del acc[len(acc) - m :]

        yield from rec(0, need, [])

    def run(self) -> None:
        self._layer(0, 0)

    def _layer(self, i: int, idx: int) -> None:
        if i == self.D:
            self._leaf()
            return
        L = self.layers[i]
        if idx == len(L):
            self._layer(i + 1, 0)
            return
        u = L[idx]
        need = self.aY.bi(i)
        cap = self.aY.ci(i + 1)
        left = len(L) - idx - 1
        last = i + 1 == self.D
        for S in self._choices(i, need):
            self._tick()
            chosen = set(S)
            if any(cap - self.updeg[w] - (w in chosen) > left for w in self.layers[i + 1]):
                continue
            log: list = []
            ok = True
            for w in S:
                if not self._add_edge(u, w, log):
                    ok = False
                    break
            if ok:
                ok = self._pairs_ok(u)
            if ok and last:
                ok = all(self._pairs_ok(w) for w in S if self._complete(w))
            if ok:
                self._layer(i, idx + 1)
            self._undo(log)

    def _leaf(self) -> None:
        edges = [(u, w) for u in range(self.n) for w in self.adj[u] if u < w]
        g = build_graph(self.n, edges)
        if realizes(g, self.aY, self.aYp):
            self.solutions += 1
            if self.first is None:
                prov = f"search({self.aY}, {self.aYp})"
                self.first = GeneratedGraph(g, frozenset(v for v in range(self.n) if self.cls[v] == 0), prov)
            if not self.find_all:
                raise _Stop


def construct_from_arrays(
    aY: IntersectionArray,
    aYp: IntersectionArray,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_seconds: float = DEFAULT_MAX_SECONDS,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    find_all: bool = False,
) -> SearchOutcome:
    report = validate_pair(aY, aYp)
    if not report.feasible:
        return InfeasibleArrays(report)
    n = sum(layer_sizes(aY))
    if n > max_vertices:
        raise ValueError(f"{n} vertices exceeds the configured maximum of {max_vertices}")
    s = _Search(aY, aYp, max_nodes, max_seconds, find_all)
    try:
        s.run()
    except _Stop:
        pass
    elapsed = time.monotonic() - s.t0
    if s.first is not None:
        return Found(s.first, s.nodes, elapsed, s.solutions, exhausted=not s.timed_out and find_all)
    if s.timed_out:
        return Timeout(elapsed, s.nodes)
    return ExhaustedNoGraph(s.nodes, elapsed)
