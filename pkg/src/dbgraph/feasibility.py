"""Array-pair validation, dual arrays, cage-subdivision arrays and family enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Callable

from .regularity import IntersectionArray
from .scalars import (
    InfeasibleError,
    ScalarTable,
    delta_criterion_applies,
    delta_range,
    delta_sequence,
    layer_sizes,
    triple_counts,
    p_values,
    rank1_counts,
    rank2_counts,
    scalar_table,
)

SIDES = ("Y", "Y'")


def _valency(k: int, kp: int, i: int) -> int:
    return k if i % 2 == 0 else kp


def dual_array(aY: IntersectionArray) -> IntersectionArray:
    """The Y' array forced by the Y array."""
    D, k = aY.D, aY.k
    b, c = aY.bi, aY.ci
    kp = b(1) + c(1)
    # valency of the vertices at distance i from a Y' vertex
    val = lambda i: _valency(kp, k, i)  # noqa: E731
    cp = [0, 1]
    bp = [kp, val(1) - 1]
    if bp[1] < 0:
        raise InfeasibleError("dual_array", 1, bp[1], "negative b'_1")
    Dp = 1 if bp[1] == 0 else None
    i = 1
    while Dp is None and i <= D - 1:
        up = Fraction(prod(b(j) for j in range(1, i + 1)), prod(cp[1 : i + 1]))
        down = Fraction(prod(bp[1 : i + 1]), prod(c(j) for j in range(1, i + 1)))
        for name, v in (("|G_{i+1,i}|", up), ("|G_{i,i+1}|", down)):
            if v.denominator != 1 or v <= 0:
                raise InfeasibleError("dual_array", i, v, f"diagram count {name} must be a positive integer")
        nxt = c(i) + (c(i + 1) - cp[i]) * up / down
        if nxt.denominator != 1 or nxt < 1:
            raise InfeasibleError("dual_array", i + 1, nxt, "c'_{i+1} must be a positive integer")
        cp.append(int(nxt))
        bp.append(val(i + 1) - int(nxt))
        if bp[-1] < 0:
            raise InfeasibleError("dual_array", i + 1, bp[-1], "negative b'_{i+1}")
        if bp[-1] == 0:
            Dp = i + 1
        i += 1
    if Dp is None:
        Dp = D + 1
        cp.append(val(D + 1))
    if Dp < D - 1:
        raise InfeasibleError("dual_array", Dp, Dp, f"eccentricity D'={Dp} too small for D={D}")
    return IntersectionArray(tuple(bp[:Dp]), tuple(cp[1 : Dp + 1]))


@dataclass(frozen=True)
class Check:
    name: str
    side: str
    ok: bool
    detail: str = ""

    def mirrored(self) -> Check:
        side = {"Y": "Y'", "Y'": "Y"}.get(self.side, self.side)
        return Check(self.name, side, self.ok, self.detail)


@dataclass
class FeasibilityReport:
    checks: list[Check]
    derived: ScalarTable | None = None

    @property
    def feasible(self) -> bool:
        return all(ch.ok for ch in self.checks)

    @property
    def violations(self) -> list[Check]:
        return [ch for ch in self.checks if not ch.ok]

    @property
    def verdict(self) -> str:
        return "Feasible" if self.feasible else "Infeasible"

    def failed(self, name: str) -> bool:
        return any(ch.name == name and not ch.ok for ch in self.checks)


class _Collector:
    def __init__(self) -> None:
        self.checks: list[Check] = []

    def run(self, name: str, side: str, fn: Callable[[], list[str]]) -> None:
        """fn returns a list of failure descriptions; exceptions count as failures."""
        try:
            problems = fn()
        except InfeasibleError as exc:
            problems = [str(exc)]
        except (IndexError, ZeroDivisionError) as exc:
            problems = [f"undefined quantity: {exc}"]
        self.checks.append(Check(name, side, not problems, "; ".join(problems)))


def _side_checks(col: _Collector, a: IntersectionArray, ap: IntersectionArray, side: str) -> None:
    """Checks stated for the Y class, evaluated with (a, ap) in the Y role."""
    D, Dp, k, kp = a.D, ap.D, a.k, ap.k
    b, c, bp, cp = a.bi, a.ci, ap.bi, ap.ci

    def parity_sums() -> list[str]:
        out = []
        for i in range(D + 1):
            want = _valency(k, kp, i)
            if b(i) + c(i) != want:
                out.append(f"i={i}: c_i+b_i={c(i) + b(i)} != {want}")
        return out

    def valency_link() -> list[str]:
        if D == 1:
            return [] if c(1) == kp else [f"c_1={c(1)} != k'={kp} for D=1"]
        return [] if b(1) + c(1) == kp else [f"b_1+c_1={b(1) + c(1)} != k'={kp}"]

    def layer() -> list[str]:
        layer_sizes(a)
        return []

    def neighbour_bounds() -> list[str]:
        out = []
        for i in range(1, D):
            if i <= Dp and cp(i) > c(i + 1):
                out.append(f"c'_{i}={cp(i)} > c_{i + 1}={c(i + 1)}")
            if i - 1 <= Dp and b(i) > bp(i - 1):
                out.append(f"b_{i}={b(i)} > b'_{i - 1}={bp(i - 1)}")
        return out

    def closing_vs_branching() -> list[str]:
        out = []
        for i in range(1, D + 1):
            for j in range(0, D - i + 1):
                if (i + j) % 2 == 0 and c(i) > b(j):
                    out.append(f"c_{i}={c(i)} > b_{j}={b(j)}")
        return out

    def dual_c_order() -> list[str]:
        out = []
        for i in range(1, min(D - 1, Dp - 1) + 1):
            if (cp(i + 1) == c(i)) != (c(i + 1) == cp(i)):
                out.append(f"i={i}: c'_{i + 1}=c_{i} and c_{i + 1}=c'_{i} disagree")
            if (cp(i + 1) > c(i)) != (c(i + 1) > cp(i)):
                out.append(f"i={i}: c'_{i + 1}>c_{i} and c_{i + 1}>c'_{i} disagree")
        return out

    def diagram_counts() -> list[str]:
        rank1_counts(a, ap)
        rank2_counts(a, ap)
        p_values(a, ap)
        for i in delta_range(a, ap):
            triple_counts(a, ap, i)
        return []

    def delta_nonneg() -> list[str]:
        if not delta_criterion_applies(a, ap):
            return []
        return [f"Delta_{i}={v} < 0" for i, v in delta_sequence(a, ap).items() if v < 0]

    def dual() -> list[str]:
        d = dual_array(a)
        return [] if d == ap else [f"dual array {d} != {ap}"]

    def top_p_values() -> list[str]:
        if D < 2:
            return []
        p2ii, _ = p_values(a, ap)
        out = []
        if p2ii[D - 1] == 0:
            out.append(f"p^2_{{D-1,D-1}} = 0 at D-1={D - 1}")
        if D >= 3:
            # for odd D the vanishing also forces D' = D
            tail = (D % 2 == 0 and b(D - 1) == 1) or (D % 2 == 1 and Dp == D and bp(D - 1) == 1)
            if (p2ii[D] == 0) != tail:
                out.append(f"p^2_{{D,D}}={p2ii[D]} inconsistent with the tail condition")
        return out

    def interior_p() -> list[str]:
        # with k' >= 3 no interior p^2_{i,i} vanishes
        if kp < 3 or D < 4:
            return []
        p2ii, _ = p_values(a, ap)
        return [f"p^2_{{{i},{i}}} = 0 with k'={kp}" for i in range(2, D - 1) if p2ii[i] == 0]

    col.run("parity_sums", side, parity_sums)
    col.run("valency_link", side, valency_link)
    col.run("layer_size", side, layer)
    col.run("neighbour_bounds", side, neighbour_bounds)
    col.run("closing_vs_branching", side, closing_vs_branching)
    col.run("dual_c_order", side, dual_c_order)
    col.run("diagram_counts", side, diagram_counts)
    col.run("delta_nonnegative", side, delta_nonneg)
    col.run("dual_array", side, dual)
    col.run("top_p_values", side, top_p_values)
    col.run("interior_p", side, interior_p)


def validate_pair(aY: IntersectionArray, aYp: IntersectionArray) -> FeasibilityReport:
    col = _Collector()
    D, Dp = aY.D, aYp.D
    b, c, bp, cp = aY.bi, aY.ci, aYp.bi, aYp.ci

    def eccentricity() -> list[str]:
        out = []
        if abs(D - Dp) > 1:
            out.append(f"|D-D'| = |{D}-{Dp}| > 1")
        if D % 2 == 1 and Dp < D:
            out.append(f"D={D} odd but D'={Dp} < D")
        if Dp % 2 == 1 and D < Dp:
            out.append(f"D'={Dp} odd but D={D} < D'")
        return out

    def odd_products() -> list[str]:
        out = []
        for i in range(3, min(D, Dp) + 1, 2):
            lhs, rhs = prod(c(j) for j in range(1, i + 1)), prod(cp(j) for j in range(1, i + 1))
            if lhs != rhs:
                out.append(f"i={i}: c_1..c_i={lhs} != c'_1..c'_i={rhs}")
        return out

    def odd_branch_products() -> list[str]:
        out = []
        for i in range(3, min(D, Dp) + 1, 2):
            lhs, rhs = prod(b(j) for j in range(1, i)), prod(bp(j) for j in range(1, i))
            if lhs != rhs:
                out.append(f"i={i}: b_1..b_(i-1)={lhs} != b'_1..b'_(i-1)={rhs}")
        return out

    def edge_count_identity() -> list[str]:
        if D < 2 or Dp < 2:
            return []
        lhs, rhs = b(1) * (c(2) - 1), bp(1) * (cp(2) - 1)
        return [] if lhs == rhs else [f"b_1(c_2-1)={lhs} != b'_1(c'_2-1)={rhs}"]

    def vertex_counts() -> list[str]:
        kY, kYp = layer_sizes(aY), layer_sizes(aYp)
        nY, nYp = sum(kY[0::2]), sum(kY[1::2])
        mY, mYp = sum(kYp[1::2]), sum(kYp[0::2])
        out = []
        if nY != mY or nYp != mYp:
            out.append(f"class sizes ({nY},{nYp}) from Y array vs ({mY},{mYp}) from Y' array")
        if nY * aY.k != nYp * aYp.k:
            out.append(f"|Y|k={nY * aY.k} != |Y'|k'={nYp * aYp.k}")
        return out

    col.run("eccentricity", "pair", eccentricity)
    col.run("odd_path_products", "pair", odd_products)
    col.run("odd_branch_products", "pair", odd_branch_products)
    col.run("edge_count_identity", "pair", edge_count_identity)
    col.run("vertex_counts", "pair", vertex_counts)
    _side_checks(col, aY, aYp, "Y")
    _side_checks(col, aYp, aY, "Y'")
    report = FeasibilityReport(col.checks)
    if report.feasible:
        report.derived = scalar_table(aY, aYp)
    return report


def cage_subdivision_arrays(kappa: int, d: int, parity: str) -> tuple[IntersectionArray, IntersectionArray]:
    """Arrays of the original-vertex class X and edge-vertex class R of S(cage)."""
    if kappa < 2 or d < 1:
        raise ValueError("need kappa >= 2 and d >= 1")
    if parity == "odd":
        DX = 2 * d + 1
        bX = [kappa] + [1 if i % 2 else kappa - 1 for i in range(1, DX)]
        cX = [1] * (DX - 1) + [2]
        DR = 2 * d + 2
        bR = [2] + [kappa - 1 if i % 2 else 1 for i in range(1, DR)]
        bR[-1] = kappa - 2
        cR = [1] * (DR - 2) + [2, 2]
        if kappa == 2:
            # the subdivided odd cycle is an even cycle: both classes look alike
            return IntersectionArray(bX, cX), IntersectionArray(bX, cX)
    elif parity == "even":
        DX = DR = 2 * d
        bX = [kappa] + [1 if i % 2 else kappa - 1 for i in range(1, DX)]
        cX = [1] * (DX - 1) + [kappa]
        bR = [2] + [kappa - 1 if i % 2 else 1 for i in range(1, DR)]
        cR = [1] * (DR - 1) + [2]
    else:
        raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")
    return IntersectionArray(bX, cX), IntersectionArray(bR, cR)


FAMILY_TAGS = ("D3", "D4", "D5", "C2primeIs1Odd", "C2primeIs1Even", "C2primeIs2Prefix")


@dataclass
class FamilyCandidate:
    family: str
    params: dict[str, int]
    arrayY: IntersectionArray | None
    arrayYp: IntersectionArray | None = None
    prefix: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    partial: bool = False
    accepted: bool = True
    violations: list[Check] = field(default_factory=list)
    delta_zero: bool | None = None
    distance_regular: bool = False

    @property
    def sort_key(self) -> tuple:
        p = self.params
        return (p["k"], p["k'"], p.get("c", 1), FAMILY_TAGS.index(self.family))

    def describe(self) -> str:
        if self.arrayY is not None:
            return str(self.arrayY)
        b, c = self.prefix or ((), ())
        return "(" + ",".join(map(str, b)) + ",...;" + ",".join(map(str, c)) + ",...)"


def _div(num: int, den: int) -> int | None:
    if den == 0 or num % den:
        return None
    return num // den


def _chain(D: int, k: int, kp: int) -> IntersectionArray:
    b = [k] + [kp - 1 if i % 2 else k - 1 for i in range(1, D)]
    c = [1] * (D - 1) + [_valency(k, kp, D)]
    return IntersectionArray(b, c)


def _raw_candidates(D: int, k_max: int, kprime_max: int):
    """Yield (family, params, full array or None, prefix or None)."""
    for k in range(2, k_max + 1):
        for kp in range(2, kprime_max + 1):
            tag = "C2primeIs1Odd" if D % 2 else "C2primeIs1Even"
            yield tag, {"k": k, "k'": kp, "c": 1}, _chain(D, k, kp), None
        for c in range(2, k):
            b1 = _div(k - 1, c - 1)
            if b1 is None or b1 + 1 > kprime_max:
                continue
            kp = b1 + 1
            params = {"k": k, "k'": kp, "c": c}
            b_pre, c_pre = (k, b1, k - c), (1, c, c + 1)
            if D == 3:
                if c + 1 == kp:
                    yield "C2primeIs2Prefix", params, IntersectionArray(b_pre, c_pre), None
            elif D == 4:
                if b1 - c > 0:
                    yield "C2primeIs2Prefix", params, IntersectionArray(b_pre + (b1 - c,), c_pre + (k,)), None
            else:
                yield "C2primeIs2Prefix", params, None, (b_pre + (b1 - c,), c_pre)
    if D == 3:
        for k in range(3, k_max + 1):
            for c in range(2, k):
                if c + 1 <= kprime_max:
                    a = IntersectionArray((k, c, k - c), (1, c, c + 1))
                    yield "D3", {"k": k, "k'": c + 1, "c": c}, a, None
    if D in (4, 5):
        for k in range(3, k_max + 1):
            for kp in range(3, kprime_max + 1):
                for c in range(2, k):
                    cpr = _div((kp - 1) * (c - 1), k - 1)
                    if cpr is None:
                        continue
                    cpr += 1
                    g = _div((c - 1) * (cpr - 2), kp - 2)
                    if g is None:
                        continue
                    g += 1
                    c3 = _div(c * (cpr - 1), g)
                    if c3 is None:
                        continue
                    c3 += 1
                    b3 = kp - c3
                    params = {"k": k, "k'": kp, "c": c, "c'": cpr, "gamma": g, "c3": c3, "b3": b3}
                    if b3 < 1 or k - c < 1:
                        continue
                    if D == 4:
                        a = IntersectionArray((k, kp - 1, k - c, b3), (1, c, c3, k))
                        yield "D4", params, a, None
                        continue
                    num = k * (kp - 1) * (c - 1) - c * (b3 - 1) * (k - 1)
                    c4 = _div(num, (c - 1) * c3)
                    if c4 is None or c4 < 1 or k - c4 < 1:
                        continue
                    params.update({"c4": c4, "b4": k - c4})
                    a = IntersectionArray((k, kp - 1, k - c, b3, k - c4), (1, c, c3, c4, kp))
                    yield "D5", params, a, None


def _prefix_problems(b: tuple[int, ...], c: tuple[int, ...], k: int, kp: int) -> list[Check]:
    """Checks that make sense on a prefix (b_0..b_3; c_1..c_3) with c'_2 = 2."""
    out = []
    if any(x <= 0 for x in b + c):
        out.append(Check("positivity", "Y", False, f"non-positive entry in {b};{c}"))
    for i in range(1, len(c) + 1):
        if i < len(b) and b[i] + c[i - 1] != _valency(k, kp, i):
            out.append(Check("parity_sums", "Y", False, f"i={i}: c_i+b_i={b[i] + c[i - 1]}"))
    if b[1] * (c[1] - 1) != (k - 1) * (2 - 1):
        out.append(Check("edge_count_identity", "pair", False, "b_1(c_2-1) != b'_1(c'_2-1) with c'_2=2"))
    num = den = 1
    for i in range(len(c)):
        num *= b[i]
        den *= c[i]
        if num % den:
            out.append(Check("layer_size", "Y", False, f"k_{i + 1} = {Fraction(num, den)}"))
    return out


def enumerate_families(
    D: int, k_max: int, kprime_max: int | None = None, include_rejected: bool = False
) -> list[FamilyCandidate]:
    if D < 3:
        raise ValueError("families are listed for D >= 3")
    if k_max < 2 or (kprime_max is not None and kprime_max < 2):
        raise ValueError("bounds must be >= 2")
    kprime_max = k_max if kprime_max is None else kprime_max
    out: list[FamilyCandidate] = []
    seen: set[tuple] = set()
    for tag, params, a, prefix in _raw_candidates(D, k_max, kprime_max):
        if a is None:
            assert prefix is not None
            problems = _prefix_problems(prefix[0], prefix[1], params["k"], params["k'"])
            cand = FamilyCandidate(tag, params, None, prefix=prefix, partial=True,
                                   accepted=not problems, violations=problems)
        else:
            key = (tag, a)
            if key in seen:
                continue
            seen.add(key)
            try:
                ap = dual_array(a)
            except InfeasibleError as exc:
                cand = FamilyCandidate(tag, params, a, accepted=False,
                                       violations=[Check("dual_array", "Y", False, str(exc))])
            else:
                report = validate_pair(a, ap)
                cand = FamilyCandidate(tag, params, a, ap, accepted=report.feasible,
                                       violations=report.violations, distance_regular=(a == ap))
                if report.feasible and delta_criterion_applies(a, ap):
                    cand.delta_zero = all(v == 0 for v in delta_sequence(a, ap).values())
        if cand.accepted or include_rejected:
            out.append(cand)
    out.sort(key=lambda cd: cd.sort_key)
    return out
