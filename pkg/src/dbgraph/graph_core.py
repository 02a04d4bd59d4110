"""Simple undirected graphs with precomputed distances, bipartitions and girth."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

UNREACHABLE = -1

Y = 0
YP = 1
CLASS_NAMES = ("Y", "Y'")


class GraphInputError(ValueError):
    """Malformed graph data (loops, bad vertex ids, unparsable text)."""


class NotConnectedError(ValueError):
    """An analysis that needs a connected graph got a disconnected one."""


class NotBipartiteError(ValueError):
    """The graph contains an odd cycle."""

    def __init__(self, u: int, v: int):
        super().__init__(f"edge ({u},{v}) closes an odd cycle")
        self.edge = (u, v)


def _bfs(adjacency: Sequence[Sequence[int]], source: int) -> list[int]:
    dist = [UNREACHABLE] * len(adjacency)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adjacency[u]:
            if dist[w] == UNREACHABLE:
                dist[w] = du
                queue.append(w)
    return dist


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    dist: tuple[tuple[int, ...], ...] = field(repr=False)

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u in range(self.n) for w in self.adjacency[u] if u < w]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @cached_property
    def is_connected(self) -> bool:
        return self.n == 0 or UNREACHABLE not in self.dist[0]

    def require_connected(self) -> None:
        if not self.is_connected:
            raise NotConnectedError("graph is not connected")

    def eccentricity(self, u: int) -> int:
        self.require_connected()
        return max(self.dist[u])

    @cached_property
    def diameter(self) -> int:
        self.require_connected()
        return max((max(row) for row in self.dist), default=0)

    @cached_property
    def _spheres(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        out = []
        for u in range(self.n):
            layers: list[list[int]] = [[] for _ in range(max(self.dist[u]) + 1)]
            for w, d in enumerate(self.dist[u]):
                if d != UNREACHABLE:
                    layers[d].append(w)
            out.append(tuple(tuple(layer) for layer in layers))
        return tuple(out)

    def sphere(self, u: int, i: int) -> tuple[int, ...]:
        """Vertices at distance exactly i from u (sorted)."""
        layers = self._spheres[u]
        if 0 <= i < len(layers):
            return layers[i]
        return ()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash(self.adjacency)


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise GraphInputError(f"negative vertex count {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"edge ({u},{v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphInputError(f"loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    adjacency = tuple(tuple(sorted(s)) for s in nbrs)
    dist = tuple(tuple(_bfs(adjacency, s)) for s in range(n))
    return Graph(n, adjacency, dist)


@dataclass(frozen=True)
class Coloring:
    """Bipartition; side[v] is Y (0) or YP (1). Vertex 0 is in Y unless swapped."""

    side: tuple[int, ...]
    k: tuple[int | None, int | None]
    D: tuple[int, int]

    @property
    def kY(self) -> int | None:
        return self.k[Y]

    @property
    def kYp(self) -> int | None:
        return self.k[YP]

    @property
    def DY(self) -> int:
        return self.D[Y]

    @property
    def DYp(self) -> int:
        return self.D[YP]

    @property
    def uniform(self) -> bool:
        return None not in self.k

    def members(self, cls: int) -> list[int]:
        return [v for v, s in enumerate(self.side) if s == cls]

    def swapped(self) -> Coloring:
        return Coloring(
            tuple(1 - s for s in self.side), (self.k[1], self.k[0]), (self.D[1], self.D[0])
        )


def bipartition(g: Graph) -> Coloring:
    g.require_connected()
    if g.n == 0:
        raise GraphInputError("empty graph")
    side = [-1] * g.n
    side[0] = Y
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if side[w] == -1:
                side[w] = 1 - side[u]
                queue.append(w)
            elif side[w] == side[u]:
                raise NotBipartiteError(min(u, w), max(u, w))
    ks: list[int | None] = []
    ds: list[int] = []
    for cls in (Y, YP):
        members = [v for v in range(g.n) if side[v] == cls]
        degrees = {g.degree(v) for v in members}
        ks.append(degrees.pop() if len(degrees) == 1 else None)
        eccs = {max(g.dist[v]) for v in members}
        # eccentricity is only meaningful per class when constant; report the max otherwise
        ds.append(max(eccs) if eccs else 0)
    return Coloring(tuple(side), (ks[0], ks[1]), (ds[0], ds[1]))


def is_bipartite(g: Graph) -> bool:
    try:
        bipartition(g)
    except NotBipartiteError:
        return False
    return True


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle, math.inf for forests."""
    best = math.inf
    for s in range(g.n):
        dist = [UNREACHABLE] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.adjacency[u]:
                if dist[w] == UNREACHABLE:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def format_graph(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" if c else "#" for c in comments]
    edges = g.edges()
    lines.append(f"{g.n} {len(edges)}")
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line.split())
    if not rows:
        raise GraphInputError("missing header line 'n m'")
    try:
        header = [int(t) for t in rows[0]]
        body = [tuple(int(t) for t in r) for r in rows[1:]]
    except ValueError as exc:
        raise GraphInputError(f"non-integer token: {exc}") from None
    if len(header) != 2:
        raise GraphInputError("header must be 'n m'")
    n, m = header
    if len(body) != m:
        raise GraphInputError(f"header announces {m} edges, found {len(body)}")
    for r in body:
        if len(r) != 2:
            raise GraphInputError(f"edge line must hold two ids, got {' '.join(map(str, r))}")
    return build_graph(n, body)


def read_graph(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GraphInputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def write_graph(g: Graph, path: str | Path, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(format_graph(g, comments))
