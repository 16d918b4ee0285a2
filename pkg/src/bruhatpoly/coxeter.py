"""Finite Coxeter groups of type A and dihedral type, fully enumerated.

A :class:`GroupTable` holds one group: canonical forms, lengths, product
tables, the reflection set and Bruhat order queries. Type A rank n is the
symmetric group on n+1 letters (one-line permutation forms); the dihedral
group I2(m) of order 2m uses (rotation, flip) pairs. Tables are immutable
after construction; the Bruhat-order memo is append-only, so sharing a
table between worker processes (or rebuilding it per worker) gives
identical answers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

__all__ = [
    "CoxeterDescriptor",
    "GroupTable",
    "Interval",
    "SizeLimitError",
    "EmptyIntervalError",
    "enumerate_group",
]

DEFAULT_MAX_ORDER = 10**6


class SizeLimitError(ValueError):
    """The requested group is larger than the configured cap."""


class EmptyIntervalError(ValueError):
    """Raised when asked for [u, w] with u not below w in Bruhat order."""


@dataclass(frozen=True)
class CoxeterDescriptor:
    """Which finite Coxeter group to build.

    ``family`` is ``"A"`` (rank = number of generators, group S_{rank+1})
    or ``"I2"`` (param m >= 2, group of order 2m).
    """

    family: str
    param: int

    def __post_init__(self) -> None:
        if self.family == "A":
            if self.param < 1:
                raise ValueError("type A rank must be >= 1")
        elif self.family == "I2":
            if self.param < 2:
                raise ValueError("dihedral parameter must be >= 2")
        else:
            raise ValueError(f"unknown family {self.family!r} (expected 'A' or 'I2')")

    @property
    def num_generators(self) -> int:
        return self.param if self.family == "A" else 2

    def order(self) -> int:
        if self.family == "A":
            return math.factorial(self.param + 1)
        return 2 * self.param

    def coxeter_matrix(self) -> tuple[tuple[int, ...], ...]:
        n = self.num_generators
        if self.family == "A":
            return tuple(
                tuple(1 if i == j else (3 if abs(i - j) == 1 else 2) for j in range(n))
                for i in range(n)
            )
        m = self.param
        return ((1, m), (m, 1))

    def spec_string(self) -> str:
        return f"A{self.param}" if self.family == "A" else f"I2:{self.param}"

    @classmethod
    def parse(cls, text: str) -> "CoxeterDescriptor":
        """Parse "A3" or "I2:7" style group specs."""
        s = text.strip()
        if s.startswith("I2:"):
            try:
                return cls("I2", int(s[3:]))
            except ValueError as exc:
                raise ValueError(f"bad dihedral group spec {text!r}") from exc
        if s.startswith("A"):
            try:
                return cls("A", int(s[1:]))
            except ValueError as exc:
                raise ValueError(f"bad type A group spec {text!r}") from exc
        raise ValueError(f"unrecognized group spec {text!r} (expected e.g. 'A3' or 'I2:7')")


# -- canonical forms per family ---------------------------------------------
#
# Type A: one-line permutations of 1..n+1 as tuples.
# Dihedral: (k, flip) meaning rot^k if flip == 0 else rot^k * s1,
# where rot = s1*s2 has order m.


def _identity_form(desc: CoxeterDescriptor):
    if desc.family == "A":
        return tuple(range(1, desc.param + 2))
    return (0, 0)


def _generator_forms(desc: CoxeterDescriptor) -> list:
    if desc.family == "A":
        gens = []
        n = desc.param
        for i in range(n):
            form = list(range(1, n + 2))
            form[i], form[i + 1] = form[i + 1], form[i]
            gens.append(tuple(form))
        return gens
    m = desc.param
    return [(0, 1), (m - 1, 1)]


def _mul_forms(desc: CoxeterDescriptor, a, b):
    if desc.family == "A":
        return tuple(a[x - 1] for x in b)
    m = desc.param
    i, e = a
    j, d = b
    return ((i + (-j if e else j)) % m, e ^ d)


def _inv_form(desc: CoxeterDescriptor, a):
    if desc.family == "A":
        out = [0] * len(a)
        for pos, val in enumerate(a):
            out[val - 1] = pos + 1
        return tuple(out)
    k, flip = a
    return a if flip else ((-k) % desc.param, 0)


@dataclass(frozen=True)
class Interval:
    """A Bruhat interval [bottom, top]: member ids sorted by (length, form)."""

    bottom: int
    top: int
    ell: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "member_set", frozenset(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v: int) -> bool:
        return v in self.member_set


class GroupTable:
    """A fully enumerated finite Coxeter group.

    Elements are dense integer ids, assigned in (length, canonical form)
    order, so id 0 is the identity and the last id is the longest element.
    """

    def __init__(self, descriptor: CoxeterDescriptor, forms: Sequence) -> None:
        self.descriptor = descriptor
        self.forms: tuple = tuple(forms)
        self.index: dict = {f: i for i, f in enumerate(self.forms)}
        gens = _generator_forms(descriptor)
        self.num_generators = len(gens)

        inv_forms = [_inv_form(descriptor, f) for f in self.forms]
        self._inverse = tuple(self.index[f] for f in inv_forms)

        self.right = tuple(
            tuple(self.index[_mul_forms(descriptor, f, g)] for g in gens) for f in self.forms
        )
        self.left = tuple(
            tuple(self.index[_mul_forms(descriptor, g, f)] for g in gens) for f in self.forms
        )
        self.length = self._bfs_lengths()

        self.identity = self.index[_identity_form(descriptor)]
        self.w0 = self._find_longest()
        self.reflections = self._find_reflections()
        self.reflection_set = frozenset(self.reflections)
        self._first_descent = tuple(
            next((s for s in range(self.num_generators)
                  if self.length[self.right[v][s]] < self.length[v]), -1)
            for v in range(len(self.forms))
        )
        self._leq_memo: dict[tuple[int, int], bool] = {}

    # -- construction helpers ------------------------------------------------

    def _bfs_lengths(self) -> tuple[int, ...]:
        n = len(self.forms)
        length = [-1] * n
        start = self.index[_identity_form(self.descriptor)]
        length[start] = 0
        frontier = [start]
        dist = 0
        while frontier:
            dist += 1
            nxt = []
            for v in frontier:
                for s in range(self.num_generators):
                    w = self.right[v][s]
                    if length[w] < 0:
                        length[w] = dist
                        nxt.append(w)
            frontier = nxt
        if any(l < 0 for l in length):
            raise AssertionError("group not generated by its generators")
        return tuple(length)

    def _find_longest(self) -> int:
        top = max(self.length)
        longest = [v for v, l in enumerate(self.length) if l == top]
        if len(longest) != 1:
            raise AssertionError("finite Coxeter group must have a unique longest element")
        return longest[0]

    def _find_reflections(self) -> tuple[int, ...]:
        refl = set()
        for v in range(len(self.forms)):
            vi = self._inverse[v]
            for s in range(self.num_generators):
                refl.add(self.mul(self.mul(v, self.right[self.identity][s]), vi))
        out = tuple(sorted(refl))
        if len(out) != self.length[self.w0]:
            raise AssertionError("reflection count must equal the length of the longest element")
        for t in out:
            if self.mul(t, t) != self.identity:
                raise AssertionError("reflections must be involutions")
        return out

    # -- group structure -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.forms)

    def mul(self, a: int, b: int) -> int:
        return self.index[_mul_forms(self.descriptor, self.forms[a], self.forms[b])]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def generator(self, s: int) -> int:
        """Element id of the generator with index s (0-based)."""
        return self.right[self.identity][s]

    def elements(self) -> Iterator[int]:
        return iter(range(len(self.forms)))

    def right_descents(self, w: int) -> tuple[int, ...]:
        lw = self.length[w]
        return tuple(s for s in range(self.num_generators)
                     if self.length[self.right[w][s]] < lw)

    def left_descents(self, w: int) -> tuple[int, ...]:
        lw = self.length[w]
        return tuple(s for s in range(self.num_generators)
                     if self.length[self.left[w][s]] < lw)

    def descents(self, w: int, side: str = "right") -> tuple[int, ...]:
        if side == "right":
            return self.right_descents(w)
        if side == "left":
            return self.left_descents(w)
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")

    def first_right_descent(self, w: int) -> int:
        """Smallest-index right descent; -1 for the identity."""
        return self._first_descent[w]

    # -- Bruhat order ----------------------------------------------------------

    def leq(self, u: int, w: int) -> bool:
        """Bruhat order test, by the standard descent recursion (memoized).

        Pick s with ws < w; then u <= w iff (us <= ws) when s lowers u,
        else iff (u <= ws).
        """
        if u == w:
            return True
        if self.length[u] >= self.length[w]:
            return False
        memo = self._leq_memo
        key = (u, w)
        cached = memo.get(key)
        if cached is not None:
            return cached
        s = self._first_descent[w]
        ws = self.right[w][s]
        us = self.right[u][s]
        if self.length[us] < self.length[u]:
            res = self.leq(us, ws)
        else:
            res = self.leq(u, ws)
        memo[key] = res
        return res

    def interval(self, u: int, w: int) -> Interval:
        """The Bruhat interval [u, w]; raises EmptyIntervalError if u is not below w."""
        if not self.leq(u, w):
            raise EmptyIntervalError(
                f"[{self.display(u)}, {self.display(w)}] is empty: endpoints are not comparable"
            )
        lu, lw = self.length[u], self.length[w]
        members = tuple(
            v for v in range(len(self.forms))
            if lu <= self.length[v] <= lw and self.leq(u, v) and self.leq(v, w)
        )
        return Interval(u, w, lw - lu, members)

    def comparable_pairs(self) -> list[tuple[int, int]]:
        """All ordered pairs (u, w) with u <= w, in id order."""
        n = len(self.forms)
        return [(u, w) for u in range(n) for w in range(n) if self.leq(u, w)]

    # -- words and display -------------------------------------------------------

    def from_word(self, word: Sequence[int]) -> int:
        """Element obtained by multiplying generators left to right."""
        v = self.identity
        for s in word:
            if not 0 <= s < self.num_generators:
                raise ValueError(f"generator index {s} out of range")
            v = self.right[v][s]
        return v

    def reduced_word(self, v: int) -> tuple[int, ...]:
        """Lexicographically smallest reduced word (greedy left descents)."""
        word = []
        cur = v
        while cur != self.identity:
            s = min(self.left_descents(cur))
            word.append(s)
            cur = self.left[cur][s]
        return tuple(word)

    def display(self, v: int) -> str:
        """Human-readable canonical form: one-line for type A, word for I2."""
        form = self.forms[v]
        if self.descriptor.family == "A":
            if len(form) <= 9:
                return "".join(str(x) for x in form)
            return ",".join(str(x) for x in form)
        word = self.reduced_word(v)
        if not word:
            return "e"
        return "".join(f"s{s + 1}" for s in word)


def enumerate_group(descriptor: CoxeterDescriptor,
                    max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Enumerate the group by breadth-first closure under the generators.

    Elements are collected level by level (BFS depth equals Coxeter length)
    and then sorted by (length, canonical form) to fix the id assignment.
    """
    est = descriptor.order()
    if est > max_order:
        raise SizeLimitError(
            f"group {descriptor.spec_string()} has order {est}, above the cap {max_order}"
        )
    ident = _identity_form(descriptor)
    gens = _generator_forms(descriptor)
    lengths = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = _mul_forms(descriptor, f, g)
                if h not in lengths:
                    lengths[h] = lengths[f] + 1
                    nxt.append(h)
        frontier = nxt
    if len(lengths) != est:
        raise AssertionError(f"enumerated {len(lengths)} elements, expected {est}")
    forms = sorted(lengths, key=lambda f: (lengths[f], f))
    table = GroupTable(descriptor, forms)
    if tuple(lengths[f] for f in forms) != table.length:
        raise AssertionError("BFS lengths disagree with table lengths")
    return table
