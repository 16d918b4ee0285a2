"""Interval statistics, regularity criteria, dihedral bounds and scans.

The checks here compare independent routes to the same fact wherever the
theory offers one: degree-regularity of the Bruhat graph against the
average of the Poincare polynomial, against Booleanness of all upper
subintervals, and (in type A) against 3412/4231 pattern containment;
dihedral bound polynomials against their recursion, closed form and
generating function; coefficient sums against weighted path counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .coxeter import GroupTable, Interval
from .graph import (
    BruhatGraph,
    ReflectionOrder,
    build_graph,
    default_reflection_order,
)
from .poly import (
    IntPoly,
    ONE,
    Q,
    Q_PLUS_ONE,
    ZERO,
    average,
    coeffwise_leq,
    monomial,
    size,
    total,
)
from .rpoly import RContext

__all__ = [
    "poincare",
    "poincare_average",
    "dihedral_floor",
    "poincare_bounds_ok",
    "is_regular",
    "carrell_peterson_equal",
    "bruhat_poincare",
    "interval_shifted_sum",
    "is_bruhat_boolean",
    "regular_via_upper_boolean",
    "shifted_average_fires",
    "f_tilde_vector",
    "f_tilde",
    "out_degree",
    "p1_p2",
    "DeodharVerdict",
    "deodhar_check",
    "dihedral_poly",
    "dihedral_numbers",
    "dihedral_closed_form_ok",
    "dihedral_series",
    "jacobsthal",
    "fibonacci_poly",
    "pattern_contains",
    "is_singular",
    "is_boolean_interval",
    "is_dihedral_interval",
    "observation_sum",
    "FourWayVerdict",
    "four_way_regularity",
    "dihedral_bounds_ok",
    "conjecture_violation",
    "edge_size_tally",
    "IntervalReport",
    "interval_report",
]


# -- Poincare polynomials -------------------------------------------------------


def poincare(ctx: RContext, w: int) -> IntPoly:
    """Rank generating function of the lower interval of w."""
    g = ctx.group
    counts: dict[int, int] = {}
    for v in g.interval(g.identity, w).members:
        counts[g.length[v]] = counts.get(g.length[v], 0) + 1
    top = max(counts)
    return IntPoly(tuple(counts.get(i, 0) for i in range(top + 1)))


def poincare_average(ctx: RContext, w: int) -> Fraction:
    return average(poincare(ctx, w))


def dihedral_floor(n: int) -> IntPoly:
    """1 + 2(q + ... + q^(n-1)) + q^n, the rank profile of a dihedral poset."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    if n == 1:
        return Q_PLUS_ONE
    return IntPoly((1,) + (2,) * (n - 1) + (1,))


def poincare_bounds_ok(ctx: RContext, w: int) -> bool:
    """Dihedral floor <= Poincare polynomial <= (1+q)^length, coefficientwise."""
    n = ctx.group.length[w]
    if n < 1:
        return True
    p = poincare(ctx, w)
    return coeffwise_leq(dihedral_floor(n), p) and coeffwise_leq(p, Q_PLUS_ONE ** n)


# -- regularity ----------------------------------------------------------------


def is_regular(graph: BruhatGraph) -> bool:
    """Every vertex has total (undirected) degree equal to the interval length."""
    ell = graph.interval.ell
    return all(graph.degree(v) == ell for v in graph.interval.members)


def carrell_peterson_equal(ctx: RContext, w: int) -> tuple[Fraction, bool]:
    """Average of the Poincare polynomial against half the length of w."""
    avg = poincare_average(ctx, w)
    return avg, avg == Fraction(ctx.group.length[w], 2)


def interval_shifted_sum(ctx: RContext, u: int, w: int) -> IntPoly:
    """Sum of the shifted polynomials from u over the whole interval [u, w]."""
    out = ZERO
    for v in ctx.group.interval(u, w).members:
        out = out + ctx.shifted(u, v)
    return out


def bruhat_poincare(ctx: RContext, w: int) -> IntPoly:
    """Sum of the shifted polynomials of all v below w (lower-interval form)."""
    return interval_shifted_sum(ctx, ctx.group.identity, w)


def is_bruhat_boolean(ctx: RContext, u: int, w: int) -> bool:
    """Whether the interval's shifted sum is exactly (1+q)^length."""
    ell = ctx.group.length[w] - ctx.group.length[u]
    return interval_shifted_sum(ctx, u, w) == Q_PLUS_ONE ** ell


def regular_via_upper_boolean(ctx: RContext, u: int, w: int) -> bool:
    """Regularity criterion: every upper subinterval [v, w] is Bruhat-Boolean."""
    return all(is_bruhat_boolean(ctx, v, w)
               for v in ctx.group.interval(u, w).members)


def shifted_average_fires(ctx: RContext, w: int) -> tuple[Fraction, bool]:
    """Irregularity test from the average of the Bruhat-Poincare polynomial.

    Returns (average, fired). A fired test proves the lower interval
    irregular; a silent one proves nothing (the implication is one-way).
    """
    avg = average(bruhat_poincare(ctx, w))
    return avg, avg != Fraction(ctx.group.length[w], 2)


# -- coefficient counts for interval sums ---------------------------------------


def f_tilde_vector(ctx: RContext, u: int, w: int) -> tuple[int, ...]:
    """All coefficients of the interval's shifted sum, constant term first."""
    ell = ctx.group.length[w] - ctx.group.length[u]
    s = interval_shifted_sum(ctx, u, w)
    return tuple(s.coefficient(i) for i in range(ell + 1))


def f_tilde(ctx: RContext, u: int, w: int, i: int) -> int:
    ell = ctx.group.length[w] - ctx.group.length[u]
    if not 0 <= i <= ell:
        raise ValueError(f"coefficient index {i} outside 0..{ell}")
    return interval_shifted_sum(ctx, u, w).coefficient(i)


def out_degree(ctx: RContext, u: int, w: int) -> int:
    """Number of Bruhat edges from u staying inside [u, w]."""
    g = ctx.group
    count = 0
    for t in g.reflections:
        v = g.mul(u, t)
        if g.length[v] > g.length[u] and g.leq(v, w):
            count += 1
    return count


def p1_p2(ctx: RContext, graph: BruhatGraph, order: ReflectionOrder) -> tuple[int, int]:
    """Height excess over edges from the bottom, and increasing two-step paths.

    p1 sums (height - 1) over the edges leaving the bottom element; p2
    counts label-increasing paths of absolute length two from the bottom
    to anywhere in the interval. Their sum is asserted to match the q^2
    coefficient of the interval's shifted sum.
    """
    u, w = graph.interval.bottom, graph.interval.top
    p1 = sum(e.height - 1 for e in graph.out_edges[u])
    rank = order.rank
    p2 = 0
    for e1 in graph.out_edges[u]:
        for e2 in graph.out_edges[e1.target]:
            if rank[e2.reflection] > rank[e1.reflection]:
                p2 += 1
    ell = graph.interval.ell
    if ell >= 2 and p1 + p2 != f_tilde(ctx, u, w, 2):
        raise AssertionError("p1 + p2 must equal the q^2 coefficient of the interval sum")
    return p1, p2


@dataclass(frozen=True)
class DeodharVerdict:
    """Out-degree and two-step counts of one interval, with strictness flags.

    Two regularity notions are recorded. ``degree_regular`` asks every
    vertex of the induced Bruhat graph to have degree ell; it matches the
    classical picture on lower intervals but can fail on general intervals
    that are perfectly smooth otherwise. ``boolean_regular`` asks every
    upper subinterval to be Bruhat-Boolean; that is the notion under which
    the strictness of the out-degree inequality characterizes irregularity
    on every interval (the two notions coincide on lower intervals, which
    the tests check exhaustively).
    """

    ell: int
    f1: int
    f2: int
    f1_strict: bool
    f2_strict: bool
    degree_regular: bool
    boolean_regular: bool

    @property
    def f1_holds(self) -> bool:
        return self.f1 >= self.ell

    @property
    def f2_holds(self) -> bool:
        return self.f2 >= math.comb(self.ell, 2)

    @property
    def consistent(self) -> bool:
        # strict first inequality is equivalent to irregularity; a strict
        # second inequality may only happen on irregular intervals
        return (self.f1_strict == (not self.boolean_regular)) and (
            not self.f2_strict or not self.boolean_regular
        )


def deodhar_check(ctx: RContext, u: int, w: int,
                  graph: Optional[BruhatGraph] = None) -> DeodharVerdict:
    """Both degree inequalities for one interval, with strictness records."""
    g = ctx.group
    if graph is None:
        graph = build_graph(g, g.interval(u, w))
    ell = graph.interval.ell
    vec = f_tilde_vector(ctx, u, w)
    f1 = vec[1] if ell >= 1 else 0
    f2 = vec[2] if ell >= 2 else 0
    direct_out = out_degree(ctx, u, w)
    if f1 != direct_out:
        raise AssertionError("q coefficient of the interval sum must be the out-degree")
    return DeodharVerdict(
        ell=ell,
        f1=f1,
        f2=f2,
        f1_strict=f1 > ell,
        f2_strict=f2 > math.comb(ell, 2),
        degree_regular=is_regular(graph),
        boolean_regular=regular_via_upper_boolean(ctx, u, w),
    )


# -- dihedral bound polynomials ---------------------------------------------------


@lru_cache(maxsize=None)
def dihedral_poly(n: int) -> IntPoly:
    """d_0 = 1, d_1 = q, d_2 = q^2, then d_n = q d_{n-1} + (q+1) d_{n-2}."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n <= 2:
        return monomial(n)
    return Q * dihedral_poly(n - 1) + Q_PLUS_ONE * dihedral_poly(n - 2)


def dihedral_numbers(n: int) -> tuple[int, int]:
    """Size and total of the n-th dihedral polynomial."""
    d = dihedral_poly(n)
    return size(d), total(d)


def dihedral_closed_form_ok(n: int) -> bool:
    """Verify the closed forms multiplicatively, staying in integer arithmetic.

    (q+2) d_n = q((q+1)^n - (-1)^n) and
    (q+2)^2 d_n' = 2((q+1)^n - (-1)^n) + n q (q+2) (q+1)^(n-1).
    """
    if n == 0:
        return dihedral_poly(0) == ONE
    q_plus_2 = IntPoly((2, 1))
    core = Q_PLUS_ONE ** n - IntPoly(((-1) ** n,))
    d = dihedral_poly(n)
    first = q_plus_2 * d == Q * core
    second = (q_plus_2 ** 2) * d.derivative() == (
        2 * core + IntPoly((0, n)) * q_plus_2 * (Q_PLUS_ONE ** (n - 1))
    )
    return first and second


def dihedral_series(count: int) -> list[IntPoly]:
    """Expand (1 - (q+1) z^2) / ((1+z)(1 - (q+1) z)) as a power series in z.

    Generic term-by-term series division: solve sum c_n z^n * denominator
    = numerator. Coefficients are polynomials in q; the denominator has
    constant term 1 so the division is exact.
    """
    numerator = {0: ONE, 2: -1 * Q_PLUS_ONE}
    denominator = {0: ONE, 1: -1 * Q, 2: -1 * Q_PLUS_ONE}
    out: list[IntPoly] = []
    for n in range(count):
        acc = numerator.get(n, ZERO)
        for k, dk in denominator.items():
            if 1 <= k <= n:
                acc = acc - dk * out[n - k]
        out.append(acc)
    return out


def jacobsthal(n: int) -> int:
    """0, 1, 1, 3, 5, 11, ... with J_n = J_{n-1} + 2 J_{n-2}."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, b + 2 * a
    return a


@lru_cache(maxsize=None)
def fibonacci_poly(n: int) -> IntPoly:
    """F_0 = 1, F_1 = q, F_2 = q^2, then F_n = q F_{n-1} + F_{n-2}."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n <= 2:
        return monomial(n)
    return Q * fibonacci_poly(n - 1) + fibonacci_poly(n - 2)


def dihedral_bounds_ok(ctx: RContext, u: int, w: int) -> bool:
    """q^n <= shifted <= d_n and n q^(n-1) <= shifted' <= d_n' coefficientwise."""
    n = ctx.group.length[w] - ctx.group.length[u]
    if n < 1:
        return True
    f = ctx.shifted(u, w)
    fd = f.derivative()
    return (
        coeffwise_leq(monomial(n), f)
        and coeffwise_leq(f, dihedral_poly(n))
        and coeffwise_leq(monomial(n - 1, n), fd)
        and coeffwise_leq(fd, dihedral_poly(n).derivative())
    )


# -- pattern containment (type A) -------------------------------------------------

PATTERNS = ("3412", "4231")


def pattern_contains(perm: Sequence[int], pattern: str) -> bool:
    """Containment of 3412 or 4231, by the explicit index conditions."""
    if pattern not in PATTERNS:
        raise ValueError(f"pattern must be one of {PATTERNS}")
    n = len(perm)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for l in range(k + 1, n):
                    if pattern == "3412":
                        if perm[k] < perm[l] < perm[i] < perm[j]:
                            return True
                    else:
                        if perm[l] < perm[j] < perm[k] < perm[i]:
                            return True
    return False


def is_singular(perm: Sequence[int]) -> bool:
    """A permutation containing 3412 or 4231."""
    return pattern_contains(perm, "3412") or pattern_contains(perm, "4231")


# -- poset shape detectors ---------------------------------------------------------


def is_boolean_interval(group: GroupTable, interval: Interval) -> bool:
    """Poset-isomorphism test against the Boolean lattice of rank ell.

    Maps each member to its set of atoms below; the interval is Boolean
    exactly when this map is a rank-preserving order-isomorphism onto the
    full power set of the atoms.
    """
    ell = interval.ell
    if len(interval.members) != 2 ** ell:
        return False
    u = interval.bottom
    atoms = [v for v in interval.members if group.length[v] == group.length[u] + 1]
    if len(atoms) != ell:
        return False
    seen = set()
    for v in interval.members:
        below = frozenset(a for a in atoms if group.leq(a, v))
        if len(below) != group.length[v] - group.length[u]:
            return False
        if below in seen:
            return False
        seen.add(below)
    return len(seen) == 2 ** ell


def is_dihedral_interval(graph: BruhatGraph) -> bool:
    """Rank profile 1,2,...,2,1 with complete bipartite covering layers."""
    g = graph.group
    interval = graph.interval
    ell = interval.ell
    if len(interval.members) != max(2 * ell, 1):
        return False
    base = g.length[interval.bottom]
    layers: dict[int, list[int]] = {}
    for v in interval.members:
        layers.setdefault(g.length[v] - base, []).append(v)
    for r in range(ell + 1):
        expected = 1 if r in (0, ell) else 2
        if len(layers.get(r, ())) != expected:
            return False
    for r in range(ell):
        for v in layers[r]:
            covers = {e.target for e in graph.out_edges[v] if e.height == 1}
            if not set(layers[r + 1]) <= covers:
                return False
    return True


# -- group-wide facts ----------------------------------------------------------------


@dataclass(frozen=True)
class ObservationResult:
    sum_of_sizes: int
    expected: int
    sum_ok: bool
    poly_ok: bool

    @property
    def ok(self) -> bool:
        return self.sum_ok and self.poly_ok


def observation_sum(ctx: RContext) -> ObservationResult:
    """Sizes over the whole group sum to 2^length(w0), and the full
    Bruhat-Poincare polynomial is (1+q)^length(w0)."""
    g = ctx.group
    n = g.length[g.w0]
    s = sum(ctx.bruhat_size(g.identity, v) for v in g.elements())
    poly_ok = bruhat_poincare(ctx, g.w0) == Q_PLUS_ONE ** n
    return ObservationResult(s, 2 ** n, s == 2 ** n, poly_ok)


@dataclass(frozen=True)
class FourWayVerdict:
    w: int
    degree_regular: bool
    average_equal: bool
    upper_boolean: bool
    pattern_smooth: Optional[bool]  # None outside type A

    @property
    def agree(self) -> bool:
        votes = [self.degree_regular, self.average_equal, self.upper_boolean]
        if self.pattern_smooth is not None:
            votes.append(self.pattern_smooth)
        return all(votes) or not any(votes)


def four_way_regularity(ctx: RContext, w: int) -> FourWayVerdict:
    """All regularity criteria for the lower interval of w, side by side."""
    g = ctx.group
    graph = build_graph(g, g.interval(g.identity, w))
    _, avg_equal = carrell_peterson_equal(ctx, w)
    pattern: Optional[bool] = None
    if g.descriptor.family == "A":
        pattern = not is_singular(g.forms[w])
    return FourWayVerdict(
        w=w,
        degree_regular=is_regular(graph),
        average_equal=avg_equal,
        upper_boolean=regular_via_upper_boolean(ctx, g.identity, w),
        pattern_smooth=pattern,
    )


def conjecture_violation(ctx: RContext, u: int, w: int) -> Optional[dict]:
    """Check (1+q)^ell <= interval shifted sum; describe any failure."""
    ell = ctx.group.length[w] - ctx.group.length[u]
    s = interval_shifted_sum(ctx, u, w)
    bound = Q_PLUS_ONE ** ell
    if coeffwise_leq(bound, s):
        return None
    g = ctx.group
    return {
        "u": g.display(u),
        "w": g.display(w),
        "ell": ell,
        "interval_sum": s.text(),
        "lower_bound": bound.text(),
    }


@dataclass(frozen=True)
class EdgeSizeTally:
    edges: int
    equal: int
    strict: int
    equal_examples: tuple[tuple[str, str], ...]
    strict_examples: tuple[tuple[str, str], ...]


def edge_size_tally(ctx: RContext, max_examples: int = 5) -> EdgeSizeTally:
    """Across all Bruhat edges u -> v, compare the sizes of u and v.

    Monotonicity is asserted (never decreasing); the tally reports how
    often the size stays equal versus strictly grows, with a few examples
    of each. Descriptive only: the general strictness question is open.
    """
    g = ctx.group
    sizes = {v: ctx.bruhat_size(g.identity, v) for v in g.elements()}
    equal = strict = edges = 0
    equal_ex: list[tuple[str, str]] = []
    strict_ex: list[tuple[str, str]] = []
    for u in g.elements():
        for t in g.reflections:
            v = g.mul(u, t)
            if g.length[v] <= g.length[u]:
                continue
            edges += 1
            if sizes[u] > sizes[v]:
                raise AssertionError("size must not decrease along a Bruhat edge")
            if sizes[u] == sizes[v]:
                equal += 1
                if len(equal_ex) < max_examples:
                    equal_ex.append((g.display(u), g.display(v)))
            else:
                strict += 1
                if len(strict_ex) < max_examples:
                    strict_ex.append((g.display(u), g.display(v)))
    return EdgeSizeTally(edges, equal, strict, tuple(equal_ex), tuple(strict_ex))


# -- one-interval report ---------------------------------------------------------


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _poly_json(f: IntPoly) -> dict:
    return {"coeffs": [str(c) for c in f.coeffs], "text": f.text()}


@dataclass
class IntervalReport:
    group: str
    u: str
    w: str
    ell: int
    absolute_length: int
    r: IntPoly
    rtilde: IntPoly
    shifted: IntPoly
    gamma: dict[int, int]
    bruhat_size: int
    bruhat_total: int
    bruhat_average: Optional[Fraction]
    f_tilde: tuple[int, ...]
    p1: int
    p2: int
    degree_regular: bool
    upper_boolean_regular: bool
    bruhat_boolean: bool
    bounds_ok: bool
    is_lower: bool
    poincare: Optional[IntPoly] = None
    poincare_average: Optional[Fraction] = None
    average_criterion_equal: Optional[bool] = None
    shifted_average: Optional[Fraction] = None
    shifted_average_fired: Optional[bool] = None
    pattern_singular: Optional[bool] = None

    def to_json_dict(self) -> dict:
        out = {
            "group": self.group,
            "u": self.u,
            "w": self.w,
            "ell": self.ell,
            "absolute_length": self.absolute_length,
            "r": _poly_json(self.r),
            "rtilde": _poly_json(self.rtilde),
            "shifted_r": _poly_json(self.shifted),
            "gamma": {str(k): v for k, v in sorted(self.gamma.items())},
            "size": self.bruhat_size,
            "total": self.bruhat_total,
            "average": _frac_str(self.bruhat_average) if self.bruhat_average is not None else None,
            "f_tilde": {f"f{i}": v for i, v in enumerate(self.f_tilde)},
            "f1": self.f_tilde[1] if len(self.f_tilde) > 1 else 0,
            "f2": self.f_tilde[2] if len(self.f_tilde) > 2 else 0,
            "p1": self.p1,
            "p2": self.p2,
            "regularity": {
                "regular": self.degree_regular,
                "by_degrees": self.degree_regular,
                "by_upper_boolean": self.upper_boolean_regular,
            },
            "bruhat_boolean": self.bruhat_boolean,
            "dihedral_bounds_ok": self.bounds_ok,
        }
        if self.is_lower:
            assert self.poincare is not None and self.poincare_average is not None
            out["poincare"] = _poly_json(self.poincare)
            out["poincare_average"] = _frac_str(self.poincare_average)
            out["regularity"]["by_average"] = self.average_criterion_equal
            out["bruhat_poincare_average"] = _frac_str(self.shifted_average)
            out["regularity"]["average_criterion_fired"] = self.shifted_average_fired
        if self.pattern_singular is not None:
            out["regularity"]["by_pattern_smooth"] = not self.pattern_singular
        return out


def interval_report(ctx: RContext, u: int, w: int,
                    order: Optional[ReflectionOrder] = None) -> IntervalReport:
    """Everything this library knows about one interval, in one object."""
    g = ctx.group
    if order is None:
        order = default_reflection_order(g)
    graph = build_graph(g, g.interval(u, w))
    gamma = ctx.gamma_vector(u, w)
    shifted = ctx.shifted(u, w)
    avg = average(shifted) if shifted else None
    p1, p2 = p1_p2(ctx, graph, order)
    is_lower = u == g.identity
    report = IntervalReport(
        group=g.descriptor.spec_string(),
        u=g.display(u),
        w=g.display(w),
        ell=graph.interval.ell,
        absolute_length=gamma.absolute_length,
        r=ctx.r(u, w),
        rtilde=ctx.rtilde(u, w),
        shifted=shifted,
        gamma=gamma.as_dict(),
        bruhat_size=ctx.bruhat_size(u, w),
        bruhat_total=ctx.bruhat_total(u, w),
        bruhat_average=avg,
        f_tilde=f_tilde_vector(ctx, u, w),
        p1=p1,
        p2=p2,
        degree_regular=is_regular(graph),
        upper_boolean_regular=regular_via_upper_boolean(ctx, u, w),
        bruhat_boolean=is_bruhat_boolean(ctx, u, w),
        bounds_ok=dihedral_bounds_ok(ctx, u, w),
        is_lower=is_lower,
    )
    if is_lower:
        report.poincare = poincare(ctx, w)
        avg_p, eq = carrell_peterson_equal(ctx, w)
        report.poincare_average = avg_p
        report.average_criterion_equal = eq
        savg, fired = shifted_average_fires(ctx, w)
        report.shifted_average = savg
        report.shifted_average_fired = fired
        if g.descriptor.family == "A":
            report.pattern_singular = is_singular(g.forms[w])
    return report
