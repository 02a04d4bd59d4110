"""Distance-regularized vertices, intersection arrays and graph classification."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .graph_core import Coloring, Graph, GraphInputError, NotBipartiteError, bipartition


class ArrayFormatError(ValueError):
    pass


class InternalTheoremViolation(AssertionError):
    """A proven identity failed on concrete data; this means a bug somewhere."""


@dataclass(frozen=True)
class IntersectionArray:
    """(b_0, ..., b_{D-1}; c_1, ..., c_D) for one color class."""

    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        if len(self.b) != len(self.c) or not self.b:
            raise ArrayFormatError(
                f"b and c must be non-empty and of equal length, got {len(self.b)} and {len(self.c)}"
            )
        if any(x <= 0 for x in self.b + self.c):
            raise ArrayFormatError(f"entries must be positive: {self}")
        if self.c[0] != 1:
            raise ArrayFormatError(f"c_1 must be 1: {self}")

    @property
    def D(self) -> int:
        return len(self.b)

    @property
    def k(self) -> int:
        return self.b[0]

    def bi(self, i: int) -> int:
        """b_i for 0 <= i <= D, with b_D = 0."""
        if i == self.D:
            return 0
        if not 0 <= i < self.D:
            raise IndexError(f"b_{i} out of range for D={self.D}")
        return self.b[i]

    def ci(self, i: int) -> int:
        """c_i for 0 <= i <= D, with c_0 = 0."""
        if i == 0:
            return 0
        if not 1 <= i <= self.D:
            raise IndexError(f"c_{i} out of range for D={self.D}")
        return self.c[i - 1]

    @classmethod
    def parse(cls, text: str) -> IntersectionArray:
        s = text.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        parts = s.split(";")
        if len(parts) != 2:
            raise ArrayFormatError(f"expected 'b0,b1,...;c1,c2,...', got {text!r}")
        try:
            b = [int(t) for t in re.split(r"[,\s]+", parts[0].strip()) if t]
            c = [int(t) for t in re.split(r"[,\s]+", parts[1].strip()) if t]
        except ValueError:
            raise ArrayFormatError(f"non-integer entry in {text!r}") from None
        return cls(tuple(b), tuple(c))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.b)) + ";" + ",".join(map(str, self.c)) + ")"


def arr(text: str) -> IntersectionArray:
    return IntersectionArray.parse(text)


@dataclass(frozen=True)
class VertexProfile:
    vertex: int
    eccentricity: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]

    def array(self) -> IntersectionArray:
        D = self.eccentricity
        return IntersectionArray(self.b[:D], self.c[1 : D + 1])


@dataclass(frozen=True)
class NotRegularized:
    """y and y_other lie at distance i from vertex but see different (c, a, b) counts."""

    vertex: int
    i: int
    y: int
    y_other: int
    counts: tuple[int, int, int]
    counts_other: tuple[int, int, int]


@dataclass(frozen=True)
class DistanceRegular:
    array: IntersectionArray
    a: tuple[int, ...]

    @property
    def bipartite(self) -> bool:
        return not any(self.a)


@dataclass(frozen=True)
class DistanceBiregular:
    arrayY: IntersectionArray
    arrayYp: IntersectionArray
    coloring: Coloring


@dataclass(frozen=True)
class NotDistanceRegularized:
    witness: NotRegularized


@dataclass(frozen=True)
class NotConnected:
    pass


Classification = Union[DistanceRegular, DistanceBiregular, NotDistanceRegularized, NotConnected]


def vertex_intersection_numbers(g: Graph, x: int) -> VertexProfile | NotRegularized:
    g.require_connected()
    dx = g.dist[x]
    ecc = max(dx)
    a, b, c = [], [], []
    for i in range(ecc + 1):
        first: tuple[int, tuple[int, int, int]] | None = None
        for y in g.sphere(x, i):
            cnt = [0, 0, 0]
            for w in g.adjacency[y]:
                cnt[dx[w] - i + 1] += 1
            t = (cnt[0], cnt[1], cnt[2])
            if first is None:
                first = (y, t)
            elif t != first[1]:
                return NotRegularized(x, i, first[0], y, first[1], t)
        assert first is not None
        c.append(first[1][0])
        a.append(first[1][1])
        b.append(first[1][2])
    return VertexProfile(x, ecc, tuple(a), tuple(b), tuple(c))


def classify(g: Graph) -> Classification:
    if not g.is_connected or g.n == 0:
        return NotConnected()
    if g.n == 1:
        raise GraphInputError("a single vertex has no intersection array")
    profiles: list[VertexProfile] = []
    for x in range(g.n):
        p = vertex_intersection_numbers(g, x)
        if isinstance(p, NotRegularized):
            return NotDistanceRegularized(p)
        profiles.append(p)
    keys = {(p.a, p.b, p.c) for p in profiles}
    if len(keys) == 1:
        p = profiles[0]
        return DistanceRegular(p.array(), p.a[: p.eccentricity + 1])
    try:
        col = bipartition(g)
    except NotBipartiteError as exc:
        raise InternalTheoremViolation(
            f"regularized graph with {len(keys)} profiles is not bipartite: {exc}"
        ) from None
    by_class: list[set] = [set(), set()]
    for p in profiles:
        by_class[col.side[p.vertex]].add((p.a, p.b, p.c))
    if len(by_class[0]) != 1 or len(by_class[1]) != 1:
        raise InternalTheoremViolation("a color class carries more than one intersection array")
    for p in profiles:
        if any(p.a):
            raise InternalTheoremViolation(f"bipartite graph with a_i != 0 at vertex {p.vertex}")
    rep = [next(p for p in profiles if col.side[p.vertex] == cls) for cls in (0, 1)]
    return DistanceBiregular(rep[0].array(), rep[1].array(), col)


def class_arrays(g: Graph, col: Coloring) -> tuple[IntersectionArray, IntersectionArray]:
    """Arrays of the two classes of a bipartite distance-regularized graph, in col's labeling."""
    out = []
    for cls in (0, 1):
        x = col.side.index(cls)
        p = vertex_intersection_numbers(g, x)
        if isinstance(p, NotRegularized):
            raise ValueError(f"vertex {x} is not distance-regularized")
        out.append(p.array())
    return out[0], out[1]
