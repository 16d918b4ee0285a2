"""Bruhat graphs on intervals, reflection orders and weighted path counting.

The directed Bruhat graph has an edge x -> y whenever y = x*t for a
reflection t and the length goes up. Edges inside an interval [u, w] carry
a height h = (length difference + 1)/2; height 1 edges are the covering
("short") edges. A reflection order is a total order on the reflection set
whose restriction to every dihedral reflection subgroup is one of the two
natural chains; such orders are built here from reduced words of the
longest element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .coxeter import GroupTable, Interval
from .poly import IntPoly, Q, Q_PLUS_ONE, monomial

__all__ = [
    "BruhatEdge",
    "BruhatGraph",
    "BruhatPath",
    "ReflectionOrder",
    "OrderViolation",
    "ValidationResult",
    "InvalidWordError",
    "EnumerationCapError",
    "build_graph",
    "absolute_distance",
    "edge_weight",
    "path_weight",
    "reflection_order_from_word",
    "lex_min_w0_word",
    "lex_max_w0_word",
    "default_reflection_order",
    "distinct_reflection_orders",
    "dihedral_reflection_subgroups",
    "validate_reflection_order",
    "increasing_paths",
    "short_paths",
    "all_paths",
    "to_dot",
]

DEFAULT_PATH_CAP = 8


class InvalidWordError(ValueError):
    """A word that is not a reduced expression for the longest element."""


class EnumerationCapError(ValueError):
    """Interval too long for exhaustive path enumeration."""


@dataclass(frozen=True)
class BruhatEdge:
    source: int
    target: int
    reflection: int
    height: int

    @property
    def is_short(self) -> bool:
        return self.height == 1


@dataclass(frozen=True)
class BruhatPath:
    """A directed path in a Bruhat graph.

    ``vertices`` lists the visited element ids; ``labels`` the reflections,
    one per edge. The Coxeter length is the length difference between the
    endpoints, the absolute length is the number of edges.
    """

    vertices: tuple[int, ...]
    labels: tuple[int, ...]
    coxeter_length: int

    @property
    def absolute_length(self) -> int:
        return len(self.labels)


class BruhatGraph:
    """The Bruhat graph induced on one interval (immutable after build)."""

    def __init__(self, group: GroupTable, interval: Interval,
                 edges: Sequence[BruhatEdge]) -> None:
        self.group = group
        self.interval = interval
        self.edges: tuple[BruhatEdge, ...] = tuple(edges)
        out: dict[int, list[BruhatEdge]] = {v: [] for v in interval.members}
        inc: dict[int, list[BruhatEdge]] = {v: [] for v in interval.members}
        for e in self.edges:
            out[e.source].append(e)
            inc[e.target].append(e)
        self.out_edges = {v: tuple(es) for v, es in out.items()}
        self.in_edges = {v: tuple(es) for v, es in inc.items()}

    @property
    def num_vertices(self) -> int:
        return len(self.interval.members)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.out_edges[v]) + len(self.in_edges[v])


def build_graph(group: GroupTable, interval: Interval) -> BruhatGraph:
    """All edges x -> y with both ends in the interval and increasing length."""
    members = interval.member_set
    edges = []
    for x in interval.members:
        lx = group.length[x]
        for t in group.reflections:
            y = group.mul(x, t)
            ly = group.length[y]
            if ly > lx and y in members:
                diff = ly - lx
                if diff % 2 == 0:
                    raise AssertionError("Bruhat edges must have odd length difference")
                edges.append(BruhatEdge(x, y, t, (diff + 1) // 2))
    edges.sort(key=lambda e: (e.source, e.target))
    return BruhatGraph(group, interval, edges)


def absolute_distance(graph: BruhatGraph, u: int, w: int) -> int:
    """Directed BFS distance from u to w inside the graph."""
    if u == w:
        return 0
    dist = {u: 0}
    frontier = [u]
    while frontier:
        nxt = []
        for v in frontier:
            for e in graph.out_edges[v]:
                if e.target not in dist:
                    dist[e.target] = dist[v] + 1
                    if e.target == w:
                        return dist[e.target]
                    nxt.append(e.target)
        frontier = nxt
    raise AssertionError("no directed path between comparable interval endpoints")


def edge_weight(height: int) -> IntPoly:
    """(q+1)^(h-1) * q, the weight of an edge of height h >= 1."""
    if height < 1:
        raise ValueError("edge height must be >= 1")
    return Q_PLUS_ONE ** (height - 1) * Q


def path_weight(path: BruhatPath) -> IntPoly:
    """(q+1)^((ell-a)/2) * q^a for a path with lengths (ell, a)."""
    ell, a = path.coxeter_length, path.absolute_length
    return Q_PLUS_ONE ** ((ell - a) // 2) * monomial(a)


class ReflectionOrder:
    """A total order on the reflection set, held as a ranked sequence."""

    __slots__ = ("sequence", "rank")

    def __init__(self, sequence: Iterable[int]) -> None:
        self.sequence: tuple[int, ...] = tuple(sequence)
        if len(set(self.sequence)) != len(self.sequence):
            raise ValueError("reflection order contains repeats")
        self.rank: dict[int, int] = {t: i for i, t in enumerate(self.sequence)}

    def reversed(self) -> "ReflectionOrder":
        return ReflectionOrder(self.sequence[::-1])

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ReflectionOrder):
            return self.sequence == other.sequence
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.sequence)

    def __repr__(self) -> str:
        return f"ReflectionOrder({self.sequence})"


def reflection_order_from_word(group: GroupTable, word: Sequence[int]) -> ReflectionOrder:
    """Order the reflections by the inversion sequence of a reduced word.

    For a reduced word s_{i1} ... s_{iN} of the longest element, the k-th
    reflection is the prefix conjugate s_{i1}...s_{i(k-1)} s_{ik}
    s_{i(k-1)}...s_{i1}. The word is validated: each prefix must gain
    length, and the full product must be the longest element.
    """
    n_expected = group.length[group.w0]
    if len(word) != n_expected:
        raise InvalidWordError(
            f"word has {len(word)} letters; the longest element needs {n_expected}"
        )
    prefix = group.identity
    sequence = []
    for pos, s in enumerate(word):
        if not 0 <= s < group.num_generators:
            raise InvalidWordError(f"generator index {s} out of range at position {pos}")
        t = group.mul(group.mul(prefix, group.generator(s)), group.inv(prefix))
        sequence.append(t)
        nxt = group.right[prefix][s]
        if group.length[nxt] != group.length[prefix] + 1:
            raise InvalidWordError(f"word is not reduced at position {pos}")
        prefix = nxt
    if prefix != group.w0:
        raise InvalidWordError("word does not multiply to the longest element")
    if len(set(sequence)) != n_expected:
        raise AssertionError("inversion sequence of a reduced word must be distinct")
    return ReflectionOrder(sequence)


def lex_min_w0_word(group: GroupTable) -> tuple[int, ...]:
    """Lexicographically smallest reduced word of w0 (greedy left descents)."""
    return group.reduced_word(group.w0)


def lex_max_w0_word(group: GroupTable) -> tuple[int, ...]:
    """Greedy largest-left-descent reduced word of w0."""
    word = []
    cur = group.w0
    while cur != group.identity:
        s = max(group.left_descents(cur))
        word.append(s)
        cur = group.left[cur][s]
    return tuple(word)


def default_reflection_order(group: GroupTable) -> ReflectionOrder:
    return reflection_order_from_word(group, lex_min_w0_word(group))


def _reduced_words_of_w0(group: GroupTable, limit: int) -> Iterator[tuple[int, ...]]:
    """Depth-first enumeration of reduced words for w0, in lexicographic order."""
    yielded = 0

    def rec(cur: int, prefix: list[int]) -> Iterator[tuple[int, ...]]:
        nonlocal yielded
        if yielded >= limit:
            return
        if cur == group.identity:
            yielded += 1
            yield tuple(prefix)
            return
        for s in group.left_descents(cur):
            prefix.append(s)
            yield from rec(group.left[cur][s], prefix)
            prefix.pop()

    yield from rec(group.w0, [])


def distinct_reflection_orders(group: GroupTable, want: int = 3) -> list[ReflectionOrder]:
    """Up to ``want`` distinct valid reflection orders, deterministically.

    Dihedral groups admit exactly two reflection orders (the defining chain
    and its reverse), so fewer than ``want`` may be returned.
    """
    orders: list[ReflectionOrder] = []

    def add(o: ReflectionOrder) -> None:
        if o not in orders and len(orders) < want:
            orders.append(o)

    base = default_reflection_order(group)
    add(base)
    add(reflection_order_from_word(group, lex_max_w0_word(group)))
    add(base.reversed())
    if len(orders) < want:
        for word in _reduced_words_of_w0(group, limit=10000):
            add(reflection_order_from_word(group, word))
            if len(orders) >= want:
                break
    return orders


@dataclass(frozen=True)
class OrderViolation:
    reflections: tuple[int, ...]
    canonical_pair: tuple[int, int]
    chain: tuple[int, ...]
    ranks: tuple[int, ...]


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violations: tuple[OrderViolation, ...] = ()


def _subgroup_closure(group: GroupTable, generators: Sequence[int]) -> frozenset:
    seen = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for v in frontier:
            for g in generators:
                w = group.mul(v, g)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return frozenset(seen)


def dihedral_reflection_subgroups(group: GroupTable) -> list[frozenset]:
    """Subgroups generated by a pair of distinct reflections, deduplicated."""
    seen = set()
    out = []
    refl = group.reflections
    for i, t1 in enumerate(refl):
        for t2 in refl[i + 1:]:
            sub = _subgroup_closure(group, (t1, t2))
            if sub not in seen:
                seen.add(sub)
                out.append(sub)
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def _canonical_generator_pair(group: GroupTable, subgroup: frozenset) -> tuple[int, int]:
    """The two canonical generators of a dihedral reflection subgroup.

    A reflection t' of the subgroup is canonical when no other reflection t
    of the subgroup satisfies length(t * t') < length(t').
    """
    refl_in = sorted(t for t in group.reflections if t in subgroup)
    canonical = []
    for t_prime in refl_in:
        lp = group.length[t_prime]
        if not any(t != t_prime and group.length[group.mul(t, t_prime)] < lp
                   for t in refl_in):
            canonical.append(t_prime)
    if len(canonical) != 2:
        raise AssertionError(
            f"dihedral reflection subgroup must have 2 canonical generators, got {len(canonical)}"
        )
    return canonical[0], canonical[1]


def _dihedral_chain(group: GroupTable, r: int, s: int, count: int) -> tuple[int, ...]:
    """The alternating chain r, rsr, rsrsr, ..., srs, s of a dihedral pair."""
    rs = group.mul(r, s)
    chain = []
    p = group.identity
    for _ in range(count):
        chain.append(group.mul(p, r))
        p = group.mul(p, rs)
    return tuple(chain)


def validate_reflection_order(group: GroupTable,
                              order: ReflectionOrder) -> ValidationResult:
    """Check the dihedral chain condition on every dihedral reflection subgroup."""
    if set(order.sequence) != set(group.reflections):
        raise ValueError("order must rank exactly the reflections of the group")
    violations = []
    for subgroup in dihedral_reflection_subgroups(group):
        refl_in = tuple(sorted(t for t in group.reflections if t in subgroup))
        r, s = _canonical_generator_pair(group, subgroup)
        chain = _dihedral_chain(group, r, s, len(refl_in))
        if set(chain) != set(refl_in):
            raise AssertionError("dihedral chain must exhaust the subgroup reflections")
        ranks = tuple(order.rank[t] for t in chain)
        ascending = all(a < b for a, b in zip(ranks, ranks[1:]))
        descending = all(a > b for a, b in zip(ranks, ranks[1:]))
        if not (ascending or descending):
            violations.append(OrderViolation(refl_in, (r, s), chain, ranks))
    return ValidationResult(not violations, tuple(violations))


# -- path enumeration ---------------------------------------------------------


def increasing_paths(graph: BruhatGraph, u: int, w: int, order: ReflectionOrder,
                     short_only: bool = False) -> list[BruhatPath]:
    """All paths u -> ... -> w whose labels strictly increase in the order.

    Paths of absolute length 0 and 1 are increasing by convention. With
    ``short_only`` the search is restricted to covering edges, which yields
    increasing maximal chains. Results come out sorted lexicographically by
    label rank.
    """
    ell = graph.group.length[w] - graph.group.length[u]
    rank = order.rank
    results: list[BruhatPath] = []

    def dfs(v: int, last: int, vertices: list[int], labels: list[int]) -> None:
        if v == w:
            results.append(BruhatPath(tuple(vertices), tuple(labels), ell))
            return
        edges = sorted(graph.out_edges[v], key=lambda e: rank[e.reflection])
        for e in edges:
            r = rank[e.reflection]
            if r > last and (not short_only or e.height == 1):
                vertices.append(e.target)
                labels.append(e.reflection)
                dfs(e.target, r, vertices, labels)
                vertices.pop()
                labels.pop()

    dfs(u, -1, [u], [])
    return results


def short_paths(graph: BruhatGraph, u: int, w: int) -> list[BruhatPath]:
    """All saturated chains (paths of covering edges) from u to w."""
    ell = graph.group.length[w] - graph.group.length[u]
    results: list[BruhatPath] = []

    def dfs(v: int, vertices: list[int], labels: list[int]) -> None:
        if v == w:
            results.append(BruhatPath(tuple(vertices), tuple(labels), ell))
            return
        for e in graph.out_edges[v]:
            if e.height == 1:
                vertices.append(e.target)
                labels.append(e.reflection)
                dfs(e.target, vertices, labels)
                vertices.pop()
                labels.pop()

    dfs(u, [u], [])
    return results


def all_paths(graph: BruhatGraph, u: int, w: int,
              max_len: int = DEFAULT_PATH_CAP) -> Iterator[BruhatPath]:
    """Every directed path from u to w; capped by interval length."""
    ell = graph.group.length[w] - graph.group.length[u]
    if ell > max_len:
        raise EnumerationCapError(
            f"interval length {ell} exceeds the enumeration cap {max_len}"
        )

    def dfs(v: int, vertices: list[int], labels: list[int]) -> Iterator[BruhatPath]:
        if v == w:
            yield BruhatPath(tuple(vertices), tuple(labels), ell)
            return
        for e in graph.out_edges[v]:
            vertices.append(e.target)
            labels.append(e.reflection)
            yield from dfs(e.target, vertices, labels)
            vertices.pop()
            labels.pop()

    yield from dfs(u, [u], [])


def to_dot(graph: BruhatGraph, name: str = "bruhat") -> str:
    """Graphviz DOT rendering: deterministic order, long edges dashed."""
    g = graph.group
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for v in graph.interval.members:
        lines.append(f'  "{g.display(v)}" [label="{g.display(v)} ({g.length[v]})"];')
    for e in graph.edges:
        src, dst = g.display(e.source), g.display(e.target)
        if e.is_short:
            lines.append(f'  "{src}" -> "{dst}";')
        else:
            lines.append(f'  "{src}" -> "{dst}" [style=dashed, label="h={e.height}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
