"""Named example graphs, the subdivision operator and incidence graphs.

Vertex numbering:
  cycle(n)               0..n-1 around the cycle
  complete(n)            0..n-1
  complete_bipartite(m,n) part A = 0..m-1, part B = m..m+n-1
  petersen               outer pentagon 0..4, spokes i -- i+5, inner pentagram 5..9
  heawood                Fano points 0..6, lines {i, i+1, i+3} (mod 7) as 7..13
  biplane_2_8_4_3        points 1..8 as 0..7, the 14 blocks in listed order as 8..21
  grid_gq(n)             point x_ij as i*(n+1)+j, then lines L_0..L_n, then M_0..M_n
  subdivision(g)         original ids kept, edge-vertices appended in sorted edge order
  incidence_graph        points first, blocks after in the given order
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph_core import Coloring, Graph, GraphInputError, bipartition, build_graph

BIPLANE_BLOCKS: tuple[tuple[int, ...], ...] = (
    (1, 3, 7, 8), (1, 2, 4, 8), (2, 3, 5, 8), (3, 4, 6, 8), (4, 5, 7, 8), (1, 5, 6, 8),
    (2, 6, 7, 8), (1, 2, 3, 6), (1, 2, 5, 7), (1, 3, 4, 5), (1, 4, 6, 7), (2, 3, 4, 7),
    (2, 4, 5, 6), (3, 5, 6, 7),
)

FANO_LINES: tuple[tuple[int, ...], ...] = tuple(
    tuple(sorted(((i) % 7, (i + 1) % 7, (i + 3) % 7))) for i in range(7)
)


@dataclass(frozen=True)
class GeneratedGraph:
    graph: Graph
    declared_Y: frozenset[int]
    provenance: str

    def coloring(self) -> Coloring:
        """Bipartition labeled so that declared_Y is the Y class."""
        col = bipartition(self.graph)
        y = min(self.declared_Y)
        return col if col.side[y] == 0 else col.swapped()


def _gen(n: int, edges: Iterable[tuple[int, int]], declared: Iterable[int], prov: str) -> GeneratedGraph:
    return GeneratedGraph(build_graph(n, edges), frozenset(declared), prov)


def cycle(n: int) -> GeneratedGraph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    declared = range(0, n, 2) if n % 2 == 0 else range(n)
    return _gen(n, [(i, (i + 1) % n) for i in range(n)], declared, f"cycle({n})")


def complete(n: int) -> GeneratedGraph:
    if n < 3:
        raise ValueError(f"complete needs n >= 3, got {n}")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return _gen(n, edges, range(n), f"complete({n})")


def complete_bipartite(m: int, n: int) -> GeneratedGraph:
    if m < 1 or n < 1:
        raise ValueError(f"complete_bipartite needs m, n >= 1, got {m}, {n}")
    edges = [(i, m + j) for i in range(m) for j in range(n)]
    return _gen(m + n, edges, range(m), f"complete_bipartite({m},{n})")


def petersen() -> GeneratedGraph:
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((i, i + 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
    return _gen(10, edges, range(10), "petersen")


def incidence_graph(points: int, blocks: Sequence[Iterable[int]], provenance: str = "") -> GeneratedGraph:
    if points < 1:
        raise GraphInputError("need at least one point")
    edges = []
    for j, block in enumerate(blocks):
        members = set(block)
        if not members:
            raise GraphInputError(f"block {j} is empty")
        for p in sorted(members):
            if not 0 <= p < points:
                raise GraphInputError(f"block {j} contains point {p} outside 0..{points - 1}")
            edges.append((p, points + j))
    prov = provenance or f"incidence_graph({points} points, {len(blocks)} blocks)"
    return _gen(points + len(blocks), edges, range(points), prov)


def heawood() -> GeneratedGraph:
    return incidence_graph(7, FANO_LINES, "heawood")


def biplane_2_8_4_3() -> GeneratedGraph:
    blocks = [[p - 1 for p in blk] for blk in BIPLANE_BLOCKS]
    return incidence_graph(8, blocks, "biplane_2_8_4_3")


def grid_gq(n: int) -> GeneratedGraph:
    if n < 2:
        raise ValueError(f"grid_gq needs n >= 2, got {n}")
    s = n + 1
    blocks = [[i * s + j for j in range(s)] for i in range(s)]
    blocks += [[i * s + j for i in range(s)] for j in range(s)]
    return incidence_graph(s * s, blocks, f"grid_gq({n})")


def subdivision(g: Graph | GeneratedGraph) -> GeneratedGraph:
    prov = "subdivision"
    if isinstance(g, GeneratedGraph):
        prov = f"subdivision({g.provenance})"
        g = g.graph
    edges = []
    for idx, (u, v) in enumerate(g.edges()):
        e = g.n + idx
        edges += [(u, e), (e, v)]
    return _gen(g.n + g.m, edges, range(g.n) if g.n else [], prov)


GENERATORS = {
    "cycle": (cycle, 1),
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "petersen": (petersen, 0),
    "heawood": (heawood, 0),
    "biplane_2_8_4_3": (biplane_2_8_4_3, 0),
    "grid_gq": (grid_gq, 1),
}


def generate(name: str, *params: int) -> GeneratedGraph:
    if name not in GENERATORS:
        raise ValueError(f"unknown generator {name!r}; known: {', '.join(sorted(GENERATORS))}")
    fn, arity = GENERATORS[name]
    if len(params) != arity:
        raise ValueError(f"{name} takes {arity} parameter(s), got {len(params)}")
    return fn(*(int(p) for p in params))
