"""Exact scalars derived from a pair of intersection arrays (Y class first).

Conventions: b_D = 0 and c_0 = 0.  Every count is computed as a Fraction and
must come out as a non-negative integer, otherwise InfeasibleError is raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from .regularity import IntersectionArray


class InfeasibleError(ValueError):
    def __init__(self, check: str, index, value, detail: str = ""):
        self.check = check
        self.index = index
        self.value = value
        msg = f"{check} at index {index}: value {value}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NotApplicable(ValueError):
    pass


def count(check: str, index, value: Fraction | int) -> int:
    """Return value as int if it is a non-negative integer, else raise InfeasibleError."""
    v = Fraction(value)
    if v.denominator != 1:
        raise InfeasibleError(check, index, v, "not an integer")
    if v < 0:
        raise InfeasibleError(check, index, v, "negative")
    return int(v)


class _Pair:
    """Accessors b(i), c(i) for the Y array and bp(i), cp(i) for the Y' array."""

    def __init__(self, aY: IntersectionArray, aYp: IntersectionArray):
        self.a, self.ap = aY, aYp
        self.b, self.c = aY.bi, aY.ci
        self.bp, self.cp = aYp.bi, aYp.ci
        self.k, self.kp = aY.k, aYp.k
        self.D, self.Dp = aY.D, aYp.D

    def bs(self, lo: int, hi: int) -> int:
        return prod(self.b(j) for j in range(lo, hi + 1))

    def cs(self, lo: int, hi: int) -> int:
        return prod(self.c(j) for j in range(lo, hi + 1))

    def bps(self, lo: int, hi: int) -> int:
        return prod(self.bp(j) for j in range(lo, hi + 1))

    def cps(self, lo: int, hi: int) -> int:
        return prod(self.cp(j) for j in range(lo, hi + 1))


def layer_sizes(a: IntersectionArray) -> tuple[int, ...]:
    """k_0, ..., k_D with k_i = b_0...b_{i-1} / (c_1...c_i)."""
    out = []
    num = den = 1
    for i in range(a.D + 1):
        out.append(count("layer_size", i, Fraction(num, den)))
        if i < a.D:
            num *= a.bi(i)
            den *= a.ci(i + 1)
    return tuple(out)


def rank1_counts(aY: IntersectionArray, aYp: IntersectionArray) -> dict[tuple[int, int], int]:
    """Nonzero |Gamma_{i,j}(x,y)| for x in Y and y adjacent to x."""
    p = _Pair(aY, aYp)
    cells = {(0, 1): 1, (1, 0): 1}
    for i in range(1, p.D):
        cells[(i + 1, i)] = count("rank1", (i + 1, i), Fraction(p.bs(1, i), p.cps(1, i)))
    for i in range(1, p.Dp):
        if i > p.D:
            raise InfeasibleError("rank1", (i, i + 1), "-", f"needs D' <= D+1, D={p.D}, D'={p.Dp}")
        cells[(i, i + 1)] = count("rank1", (i, i + 1), Fraction(p.bps(1, i), p.cs(1, i)))
    for (i, j), v in cells.items():
        if v == 0:
            raise InfeasibleError("rank1", (i, j), v, "diagram cell must be nonempty")
    ks = layer_sizes(aY)
    for i in range(1, p.D + 1):
        total = cells.get((i, i - 1), 0) + cells.get((i, i + 1), 0)
        if total != ks[i]:
            raise InfeasibleError("rank1_sum", i, total, f"expected k_{i} = {ks[i]}")
    return cells


def _gamma_ii(p: _Pair, i: int) -> Fraction:
    k, b, c, D = p.k, p.b, p.c, p.D
    if i == 1:
        return Fraction(c(2))
    if i == 2:
        b2b3 = b(2) * b(3) if D >= 3 else 0
        return Fraction(k * b(1) - b2b3 - c(2), c(2))
    lead = Fraction(p.bs(2, i - 1), p.cs(1, i))
    if i <= D - 2:
        return lead * (k * b(1) - b(i) * b(i + 1) - c(i - 1) * c(i))
    if i == D - 1:
        return lead * (k * b(1) - c(D - 2) * c(D - 1))
    if i == D:
        return lead * (k * b(1) - c(D - 1) * c(D))
    raise IndexError(i)


def rank2_counts(aY: IntersectionArray, aYp: IntersectionArray) -> dict[tuple[int, int], int]:
    """|Gamma_{i,j}(x,y)| for x in Y, y at distance 2; zero cells are kept for j = i."""
    p = _Pair(aY, aYp)
    if p.D < 2:
        return {}
    cells: dict[tuple[int, int], int] = {(0, 2): 1, (2, 0): 1}
    for i in range(1, p.D + 1):
        if i >= 3:
            cells[(i, i - 2)] = count("rank2", (i, i - 2), Fraction(p.bs(2, i - 1), p.cs(1, i - 2)))
        cells[(i, i)] = count("rank2", (i, i), _gamma_ii(p, i))
        if i <= p.D - 2:
            cells[(i, i + 2)] = count("rank2", (i, i + 2), Fraction(p.bs(2, i + 1), p.cs(1, i)))
    ks = layer_sizes(aY)
    for i in range(p.D + 1):
        total = sum(cells.get((i, j), 0) for j in (i - 2, i, i + 2))
        if total != ks[i]:
            raise InfeasibleError("rank2_sum", i, total, f"expected k_{i} = {ks[i]}")
    return cells


def p_values(aY: IntersectionArray, aYp: IntersectionArray) -> tuple[dict[int, int], dict[int, int]]:
    """(p^2_{i,i}, p^i_{2,i}) for 1 <= i <= D."""
    r2 = rank2_counts(aY, aYp)
    ks = layer_sizes(aY)
    if aY.D < 2:
        return {}, {}
    p2ii = {i: r2[(i, i)] for i in range(1, aY.D + 1)}
    pi2i = {i: count("p_value", i, Fraction(ks[2] * p2ii[i], ks[i])) for i in p2ii}
    return p2ii, pi2i


def delta_range(aY: IntersectionArray, aYp: IntersectionArray) -> range:
    return range(2, min(aY.D - 1, aYp.D - 1) + 1)


def delta_sequence(aY: IntersectionArray, aYp: IntersectionArray) -> dict[int, int]:
    p = _Pair(aY, aYp)
    _, pi2i = p_values(aY, aYp)
    out = {}
    for i in delta_range(aY, aYp):
        if i % 2 == 0:
            head = (p.b(i - 1) - 1) * (p.c(i + 1) - 1)
        else:
            head = (p.bp(i - 1) - 1) * (p.cp(i + 1) - 1)
        out[i] = head - pi2i[i] * (p.cp(2) - 1)
    return out


def delta_criterion_applies(aY: IntersectionArray, aYp: IntersectionArray) -> bool:
    return aYp.k >= 3 and aY.D >= 3


def gamma_from_arrays(aY: IntersectionArray, aYp: IntersectionArray, i: int) -> int:
    p = _Pair(aY, aYp)
    if i == 1:
        return 1
    if not 2 <= i <= p.D - 1:
        raise IndexError(f"gamma_{i} is defined for 1 <= i <= D-1 = {p.D - 1}")
    if p.Dp == p.D - 1 and i == p.D - 1:
        return p.c(2)
    if p.kp < 3:
        raise NotApplicable(f"gamma_{i} from arrays needs k' >= 3, got {p.kp}")
    deltas = delta_sequence(aY, aYp)
    if deltas[i] != 0:
        raise NotApplicable(f"Delta_{i} = {deltas[i]} != 0")
    _, pi2i = p_values(aY, aYp)
    if pi2i[i] == 0:
        raise InfeasibleError("gamma", i, 0, "p^i_{2,i} = 0")
    if i % 2 == 0:
        num = p.c(i) * (p.b(i - 1) - 1)
    else:
        num = p.cp(i) * (p.bp(i - 1) - 1)
    return count("gamma", i, Fraction(num, pi2i[i]))


def triple_counts(aY: IntersectionArray, aYp: IntersectionArray, i: int) -> tuple[int, int, int]:
    """(t_minus, t_plus, t_pair) for x in Y, y in Gamma_2(x), w, u, v common neighbours."""
    p = _Pair(aY, aYp)
    if i not in delta_range(aY, aYp):
        raise IndexError(f"i={i} outside 2..min(D-1, D'-1)")
    ki = layer_sizes(aY)[i]
    base = p.k * p.b(1)
    if i % 2 == 0:
        ci, bi, bprev, cnext = p.c(i), p.b(i), p.b(i - 1), p.c(i + 1)
    else:
        ci, bi, bprev, cnext = p.cp(i), p.bp(i), p.bp(i - 1), p.cp(i + 1)
    t_minus = count("triple_counts", (i, "minus"), Fraction(ci * ki * (bprev - 1), base))
    t_plus = count("triple_counts", (i, "plus"), Fraction(bi * ki * (cnext - 1), base))
    t_pair = count("triple_counts", (i, "pair"), Fraction(ki * bi * ci, p.k * p.bp(1)))
    return t_minus, t_plus, t_pair


@dataclass
class ScalarTable:
    kY: tuple[int, ...]
    kYp: tuple[int, ...]
    rank1: dict[tuple[int, int], int]
    rank2: dict[tuple[int, int], int]
    p2ii: dict[int, int]
    pi2i: dict[int, int]
    delta: dict[int, int]
    delta_applicable: bool
    gamma: dict[int, int] = field(default_factory=dict)
    triples: dict[int, tuple[int, int, int]] = field(default_factory=dict)


def scalar_table(aY: IntersectionArray, aYp: IntersectionArray) -> ScalarTable:
    p2ii, pi2i = p_values(aY, aYp)
    deltas = delta_sequence(aY, aYp) if aYp.D >= 2 else {}
    applicable = delta_criterion_applies(aY, aYp)
    gamma = {1: 1}
    for i in range(2, aY.D):
        try:
            gamma[i] = gamma_from_arrays(aY, aYp, i)
        except NotApplicable:
            pass
    ei = {i: triple_counts(aY, aYp, i) for i in deltas}
    return ScalarTable(
        kY=layer_sizes(aY),
        kYp=layer_sizes(aYp),
        rank1=rank1_counts(aY, aYp),
        rank2=rank2_counts(aY, aYp),
        p2ii=p2ii,
        pi2i=pi2i,
        delta=deltas,
        delta_applicable=applicable,
        gamma=gamma,
        triples=ei,
    )
