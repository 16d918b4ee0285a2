"""The R-polynomial family on Bruhat intervals, via memoized descent recursions.

For a right descent s of w (so ws < w) and u <= w, all three families
satisfy the same two-branch recursion: when s also lowers u the pair drops
to (us, ws); otherwise the value is a fixed linear combination of the
values at (u, ws) and (us, ws). The three families differ only in the two
coefficient polynomials of the second branch:

    R:        (q-1) * R[u, ws]  +  q     * R[us, ws]
    R-tilde:   q    * Rt[u, ws] +  1     * Rt[us, ws]
    shifted:   q    * Rs[u, ws] + (q+1)  * Rs[us, ws]

The shifted family is R evaluated at q+1 computed natively; the classic
substitution is kept around as a cross-check. Path-enumeration oracles for
the nonneg families live here too.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .coxeter import GroupTable
from .graph import BruhatGraph, ReflectionOrder, increasing_paths, path_weight
from .poly import (
    BiPoly,
    IntPoly,
    ONE,
    Q,
    Q_MINUS_ONE,
    Q_PLUS_ONE,
    ZERO,
    monomial,
)

__all__ = [
    "RContext",
    "GammaVector",
    "reassemble_r",
    "gamma_form_text",
    "rtilde_via_paths",
    "shifted_r_via_weights",
    "save_snapshot",
    "load_snapshot",
    "snapshot_path",
]

_RULES = {
    "r": (Q_MINUS_ONE, Q),
    "rtilde": (Q, ONE),
    "shifted": (Q, Q_PLUS_ONE),
}


@dataclass(frozen=True)
class GammaVector:
    """Coefficients of the nonnegative R-polynomial of one interval.

    The support runs from the absolute length to the Coxeter length in
    steps of two; every entry is positive and the top entry is 1. Entries
    are (exponent, value) pairs in ascending exponent order.
    """

    absolute_length: int
    coxeter_length: int
    entries: tuple[tuple[int, int], ...]

    def coefficient(self, j: int) -> int:
        for e, v in self.entries:
            if e == j:
                return v
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)


class RContext:
    """Memoized R / R-tilde / shifted-R computation on one group.

    The memo tables are plain dicts keyed by id pairs; values are pure
    functions of the pair, so per-worker contexts recompute identical
    polynomials. ``descent_choice`` picks which right descent of w drives
    the recursion ("min" by default; results are descent-independent,
    which the tests verify by comparing against "max").
    """

    def __init__(self, group: GroupTable, descent_choice: str = "min") -> None:
        if descent_choice not in ("min", "max"):
            raise ValueError("descent_choice must be 'min' or 'max'")
        self.group = group
        self.descent_choice = descent_choice
        self._memo: dict[str, dict[tuple[int, int], IntPoly]] = {
            "r": {}, "rtilde": {}, "shifted": {}
        }
        self.hits = 0
        self.misses = 0

    def _descent(self, w: int) -> int:
        if self.descent_choice == "min":
            return self.group.first_right_descent(w)
        return max(self.group.right_descents(w))

    def _family(self, name: str, u: int, w: int) -> IntPoly:
        g = self.group
        if u == w:
            return ONE
        if not g.leq(u, w):
            return ZERO
        memo = self._memo[name]
        key = (u, w)
        cached = memo.get(key)
        if cached is not None:
            self.hits += 1
            return cached
        self.misses += 1
        low, high = _RULES[name]
        s = self._descent(w)
        ws = g.right[w][s]
        us = g.right[u][s]
        if g.length[us] < g.length[u]:
            value = self._family(name, us, ws)
        else:
            value = low * self._family(name, u, ws) + high * self._family(name, us, ws)
        memo[key] = value
        return value

    # -- the three families -------------------------------------------------

    def r(self, u: int, w: int) -> IntPoly:
        """Classic R-polynomial of [u, w] (0 when u is not below w)."""
        return self._family("r", u, w)

    def rtilde(self, u: int, w: int) -> IntPoly:
        """Nonnegative R-polynomial; monic of degree length(u, w)."""
        return self._family("rtilde", u, w)

    def shifted(self, u: int, w: int) -> IntPoly:
        """R evaluated at q+1, computed by its own native recursion."""
        return self._family("shifted", u, w)

    # -- derived data ---------------------------------------------------------

    def gamma_vector(self, u: int, w: int) -> GammaVector:
        """Support and coefficients of the nonnegative R-polynomial.

        Validates the structural facts: positive entries, step-two support,
        monic top coefficient.
        """
        g = self.group
        if not g.leq(u, w):
            raise ValueError("gamma vector requires comparable endpoints")
        rt = self.rtilde(u, w)
        ell = g.length[w] - g.length[u]
        entries = tuple((i, c) for i, c in enumerate(rt.coeffs) if c != 0)
        if not entries:
            raise AssertionError("nonzero interval must have a nonzero polynomial")
        a = entries[0][0]
        if rt.degree != ell or entries[-1][1] != 1:
            raise AssertionError("polynomial must be monic of degree length(u, w)")
        for e, v in entries:
            if v <= 0 or (e - a) % 2 != 0:
                raise AssertionError("support must step by two with positive entries")
        return GammaVector(a, ell, entries)

    def double_r(self, u: int, w: int) -> BiPoly:
        """Bivariate lift: sum of gamma_j * p^((ell-j)/2) * (q-1)^j."""
        gamma = self.gamma_vector(u, w)
        terms: dict[tuple[int, int], int] = {}
        for j, coeff in gamma.entries:
            p_exp = (gamma.coxeter_length - j) // 2
            expansion = Q_MINUS_ONE ** j
            for k, c in enumerate(expansion.coeffs):
                if c:
                    key = (p_exp, k)
                    terms[key] = terms.get(key, 0) + coeff * c
        return BiPoly(terms)

    def bruhat_size(self, u: int, w: int) -> int:
        """Shifted polynomial at 1; must equal R at 2 (both are computed)."""
        via_shift = self.shifted(u, w)(1)
        via_r = self.r(u, w)(2)
        if via_shift != via_r:
            raise AssertionError("the two size routes disagree")
        return via_shift

    def bruhat_total(self, u: int, w: int) -> int:
        """Derivative of the shifted polynomial at 1; must equal R' at 2."""
        via_shift = self.shifted(u, w).derivative()(1)
        via_r = self.r(u, w).derivative()(2)
        if via_shift != via_r:
            raise AssertionError("the two total routes disagree")
        return via_shift

    def is_edge(self, u: int, w: int) -> bool:
        """Direct Bruhat-graph edge test: w = u*t for a reflection, length up."""
        g = self.group
        if g.length[u] >= g.length[w]:
            return False
        return g.mul(g.inv(u), w) in g.reflection_set

    def characteristic_check(self, u: int, w: int) -> tuple[bool, bool]:
        """(is_vertex, is_edge) read off R at q=1, verified directly.

        R(1) is 1 exactly on the diagonal and R'(1) is 1 exactly on edges.
        """
        f = self.r(u, w)
        at_one = f(1)
        deriv_at_one = f.derivative()(1)
        if at_one not in (0, 1) or deriv_at_one not in (0, 1):
            raise AssertionError("characteristic values must be 0 or 1")
        is_vertex = at_one == 1
        is_edge = deriv_at_one == 1
        if is_vertex != (u == w) or is_edge != self.is_edge(u, w):
            raise AssertionError("characteristic values disagree with the direct tests")
        return is_vertex, is_edge

    def descent_transport(self, u: int, w: int) -> list[tuple[int, int, int]]:
        """Trace the descent walk used to reach a pair where s raises u.

        Returns (u, w, s) steps for the prefix of the recursion where the
        chosen descent of w also lowers u, so the R-polynomial is constant
        along the walk. Diagnostic only.
        """
        g = self.group
        steps = []
        cur_u, cur_w = u, w
        while cur_u != cur_w and g.leq(cur_u, cur_w):
            s = self._descent(cur_w)
            us = g.right[cur_u][s]
            if g.length[us] >= g.length[cur_u]:
                break
            steps.append((cur_u, cur_w, s))
            cur_u, cur_w = us, g.right[cur_w][s]
        return steps


def reassemble_r(gamma: GammaVector) -> IntPoly:
    """Rebuild R from its gamma vector: sum gamma_j q^((ell-j)/2) (q-1)^j."""
    out = ZERO
    for j, coeff in gamma.entries:
        out = out + monomial((gamma.coxeter_length - j) // 2, coeff) * (Q_MINUS_ONE ** j)
    return out


def gamma_form_text(gamma: GammaVector) -> str:
    """Render R in its factored shape, e.g. ``(q-1)^6 + 3*q*(q-1)^4 + q^2*(q-1)^2``."""
    if gamma.coxeter_length == 0:
        return "1"
    terms = []
    for j, coeff in reversed(gamma.entries):
        parts = []
        if coeff != 1:
            parts.append(str(coeff))
        q_exp = (gamma.coxeter_length - j) // 2
        if q_exp == 1:
            parts.append("q")
        elif q_exp > 1:
            parts.append(f"q^{q_exp}")
        if j == 1:
            parts.append("(q-1)")
        elif j > 1:
            parts.append(f"(q-1)^{j}")
        terms.append("*".join(parts) if parts else "1")
    return " + ".join(terms)


def rtilde_via_paths(graph: BruhatGraph, u: int, w: int,
                     order: ReflectionOrder) -> IntPoly:
    """Oracle: sum of q^(absolute length) over label-increasing paths."""
    out = ZERO
    for path in increasing_paths(graph, u, w, order):
        out = out + monomial(path.absolute_length)
    return out


def shifted_r_via_weights(graph: BruhatGraph, u: int, w: int,
                          order: ReflectionOrder) -> IntPoly:
    """Oracle: sum of path weights over label-increasing paths."""
    out = ZERO
    for path in increasing_paths(graph, u, w, order):
        out = out + path_weight(path)
    return out


# -- on-disk memo snapshots ----------------------------------------------------

SNAPSHOT_FORMAT = "bruhatpoly-cache-v1"
SNAPSHOT_ENV_VAR = "BRUHAT_CACHE_DIR"


def snapshot_path(group_spec: str) -> Optional[Path]:
    """Snapshot file for a group under BRUHAT_CACHE_DIR; None when unset."""
    root = os.environ.get(SNAPSHOT_ENV_VAR)
    if not root:
        return None
    return Path(root) / (group_spec.replace(":", "_") + ".json")


def _tables_payload(ctx: RContext) -> dict:
    out: dict[str, dict[str, list[str]]] = {}
    for name, memo in ctx._memo.items():
        table = {}
        for (u, w), f in sorted(memo.items()):
            table[f"{u}:{w}"] = [str(c) for c in f.coeffs]
        out[name] = table
    return out


def save_snapshot(ctx: RContext, path: Path) -> None:
    """Write the memo tables with a group header and payload checksum."""
    tables = _tables_payload(ctx)
    body = json.dumps(tables, sort_keys=True, separators=(",", ":"))
    checksum = hashlib.sha256(body.encode()).hexdigest()
    doc = {
        "format": SNAPSHOT_FORMAT,
        "group": ctx.group.descriptor.spec_string(),
        "checksum": checksum,
        "tables": tables,
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")


def load_snapshot(ctx: RContext, path: Path) -> bool:
    """Merge a snapshot into the context; False when missing or invalid."""
    path = Path(path)
    if not path.is_file():
        return False
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return False
    if doc.get("format") != SNAPSHOT_FORMAT:
        return False
    if doc.get("group") != ctx.group.descriptor.spec_string():
        return False
    tables = doc.get("tables")
    if not isinstance(tables, dict):
        return False
    body = json.dumps(tables, sort_keys=True, separators=(",", ":"))
    if hashlib.sha256(body.encode()).hexdigest() != doc.get("checksum"):
        return False
    try:
        for name, memo in ctx._memo.items():
            for key, coeffs in tables.get(name, {}).items():
                u_str, w_str = key.split(":")
                memo[(int(u_str), int(w_str))] = IntPoly(int(c) for c in coeffs)
    except (ValueError, TypeError):
        return False
    return True
