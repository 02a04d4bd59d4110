"""Direct counting of (almost) 2-Y-homogeneity, the Delta criterion, and equitable partitions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

from .graph_core import CLASS_NAMES, Coloring, Graph
from .regularity import (
    InternalTheoremViolation,
    IntersectionArray,
    NotRegularized,
    class_arrays,
    vertex_intersection_numbers,
)
from .scalars import delta_criterion_applies, delta_sequence

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    pass


class PreconditionError(ValueError):
    pass


class Status(str, Enum):
    CONSTANT = "ConstantValue"
    NON_CONSTANT = "NonConstant"
    VACUOUS = "VacuousEmptyDomain"


Triple = tuple[int, int, int, int]  # (x, y, z, observed count)


@dataclass(frozen=True)
class GammaProfile:
    i: int
    status: Status
    value: int | None
    witness: tuple[Triple, Triple] | None
    domain_size: int

    @property
    def constant(self) -> bool:
        """Vacuous domains count as constant."""
        return self.status is not Status.NON_CONSTANT


@dataclass(frozen=True)
class LevelScan:
    gamma: GammaProfile
    delta: GammaProfile
    pairs: int
    pairs_gamma_constant: int
    pairs_delta_constant: int


class _Tracker:
    def __init__(self) -> None:
        self.first: Triple | None = None
        self.other: Triple | None = None

    def see(self, t: Triple) -> None:
        if self.first is None:
            self.first = t
        elif self.other is None and t[3] != self.first[3]:
            self.other = t

    def profile(self, i: int, n: int) -> GammaProfile:
        if self.first is None:
            return GammaProfile(i, Status.VACUOUS, None, None, 0)
        if self.other is None:
            return GammaProfile(i, Status.CONSTANT, self.first[3], None, n)
        return GammaProfile(i, Status.NON_CONSTANT, None, (self.first, self.other), n)


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"more than {self.limit} triple inspections")


def _check_class(g: Graph, col: Coloring, cls: int, i: int | None = None) -> int:
    g.require_connected()
    if cls not in (0, 1):
        raise PreconditionError(f"class selector must be 0 (Y) or 1 (Y'), got {cls}")
    if col.k[cls] is None:
        raise PreconditionError(f"class {CLASS_NAMES[cls]} is not regular")
    D = col.D[cls]
    if i is not None and not 1 <= i <= D - 1:
        raise PreconditionError(f"level i={i} outside 1..D-1 = 1..{D - 1}")
    return D


def scan_level(g: Graph, col: Coloring, cls: int, i: int, budget: int | _Budget = DEFAULT_BUDGET) -> LevelScan:
    """One pass over (x, y, z) measuring gamma_i and delta_i."""
    _check_class(g, col, cls, i)
    bud = budget if isinstance(budget, _Budget) else _Budget(budget)
    dist = g.dist
    gam, dlt = _Tracker(), _Tracker()
    n = pairs = pg = pd = 0
    for x in col.members(cls):
        dx = dist[x]
        for y in g.sphere(x, 2):
            dy = dist[y]
            common = [w for w in g.adjacency[x] if dy[w] == 1]
            pair_g: set[int] = set()
            pair_d: set[int] = set()
            for z in g.sphere(x, i):
                if dy[z] != i:
                    continue
                bud.spend()
                dz = dist[z]
                gv = sum(1 for w in common if dz[w] == i - 1)
                dv = sum(1 for w in g.adjacency[z] if dx[w] == i - 1 and dy[w] == i - 1)
                gam.see((x, y, z, gv))
                dlt.see((x, y, z, dv))
                pair_g.add(gv)
                pair_d.add(dv)
                n += 1
            if pair_g:
                pairs += 1
                pg += len(pair_g) == 1
                pd += len(pair_d) == 1
    return LevelScan(gam.profile(i, n), dlt.profile(i, n), pairs, pg, pd)


def gamma_profile(g: Graph, col: Coloring, cls: int, i: int, budget: int = DEFAULT_BUDGET) -> GammaProfile:
    return scan_level(g, col, cls, i, budget).gamma


@dataclass
class HomogeneityVerdict:
    class_checked: str
    two_Y_homogeneous: bool
    almost_2_Y_homogeneous: bool
    gamma: dict[int, GammaProfile]
    delta_measured: dict[int, GammaProfile]
    delta_scalars: dict[int, int]
    criterion_applicable: bool
    criterion_consistent: bool | None
    arrays: tuple[IntersectionArray, IntersectionArray]
    pair_stats: dict[int, tuple[int, int, int]] = field(default_factory=dict)


def homogeneity_verdict(g: Graph, col: Coloring, cls: int, budget: int = DEFAULT_BUDGET) -> HomogeneityVerdict:
    D = _check_class(g, col, cls)
    try:
        arrays = class_arrays(g, col)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    a, ap = (arrays[0], arrays[1]) if cls == 0 else (arrays[1], arrays[0])
    bud = _Budget(budget)
    scans = {i: scan_level(g, col, cls, i, bud) for i in range(1, D)}
    two = all(s.gamma.constant for s in scans.values())
    almost = all(s.gamma.constant for i, s in scans.items() if i <= D - 2)
    deltas = delta_sequence(a, ap)
    applicable = delta_criterion_applies(a, ap)
    consistent: bool | None = None
    if applicable:
        pred_two = all(v == 0 for v in deltas.values())
        pred_almost = all(v == 0 for i, v in deltas.items() if i <= D - 2)
        if pred_two != two or pred_almost != almost:
            raise InternalTheoremViolation(
                f"class {CLASS_NAMES[cls]}: direct (two={two}, almost={almost}) vs "
                f"Delta criterion (two={pred_two}, almost={pred_almost}), Delta={deltas}"
            )
        consistent = True
    return HomogeneityVerdict(
        class_checked=CLASS_NAMES[cls],
        two_Y_homogeneous=two,
        almost_2_Y_homogeneous=almost,
        gamma={i: s.gamma for i, s in scans.items()},
        delta_measured={i: s.delta for i, s in scans.items()},
        delta_scalars=deltas,
        criterion_applicable=applicable,
        criterion_consistent=consistent,
        arrays=(a, ap),
        pair_stats={i: (s.pairs, s.pairs_gamma_constant, s.pairs_delta_constant) for i, s in scans.items()},
    )


Cell = tuple[int, int]


class EquitableCheck(NamedTuple):
    equitable: bool
    quotient: dict[tuple[Cell, Cell], int] | None
    witness: tuple[Cell, int, int] | None = None


def equitable_check(g: Graph, x: int, y: int) -> EquitableCheck:
    """Is {Gamma_{i,j}(x,y)} equitable?  Witness: (cell, v, v') with differing neighbour counts."""
    g.require_connected()
    if g.dist[x][y] != 2:
        raise PreconditionError(f"dist({x},{y}) = {g.dist[x][y]}, expected 2")
    dx, dy = g.dist[x], g.dist[y]
    cell_of = [(dx[v], dy[v]) for v in range(g.n)]
    rep: dict[Cell, tuple[int, Counter]] = {}
    for v in range(g.n):
        prof = Counter(cell_of[w] for w in g.adjacency[v])
        cell = cell_of[v]
        if cell not in rep:
            rep[cell] = (v, prof)
        elif rep[cell][1] != prof:
            return EquitableCheck(False, None, (cell, rep[cell][0], v))
    quotient = {(cell, other): n for cell, (_, prof) in sorted(rep.items()) for other, n in sorted(prof.items())}
    _check_cross_cells(g, x, quotient)
    return EquitableCheck(True, quotient, None)


def _check_cross_cells(g: Graph, x: int, quotient: dict[tuple[Cell, Cell], int]) -> None:
    """Vertices of Gamma_{i,i-2} have c_i - c_{i-2} neighbours in Gamma_{i-1,i-1}."""
    prof = vertex_intersection_numbers(g, x)
    if isinstance(prof, NotRegularized):
        return
    c = prof.c
    cells = {key[0] for key in quotient}
    for i in range(2, prof.eccentricity + 1):
        for cell in ((i, i - 2), (i - 2, i)):
            if cell not in cells:
                continue
            got = quotient.get((cell, (i - 1, i - 1)), 0)
            if got != c[i] - c[i - 2]:
                raise InternalTheoremViolation(
                    f"cell {cell}: {got} neighbours in ({i - 1},{i - 1}), expected c_{i}-c_{i - 2} = {c[i] - c[i - 2]}"
                )
