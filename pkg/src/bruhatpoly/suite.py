"""Named verification checks and conjecture scans, with optional workers.

Each check sweeps a deterministic scope (all intervals for small groups,
lower intervals once the group passes 48 elements) and reports one
pass/fail line. Heavy per-item sweeps can be spread over worker processes:
every worker rebuilds the group from its spec string, the item list is
chunked in a fixed order and results are concatenated in submission
order, so the output is identical for any worker count.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from . import analysis
from .coxeter import CoxeterDescriptor, GroupTable, enumerate_group
from .graph import (
    build_graph,
    distinct_reflection_orders,
    increasing_paths,
    short_paths,
)
from .rpoly import (
    RContext,
    load_snapshot,
    reassemble_r,
    rtilde_via_paths,
    save_snapshot,
    shifted_r_via_weights,
    snapshot_path,
)

__all__ = [
    "CHECK_NAMES",
    "CheckResult",
    "run_suite",
    "run_scan",
    "suite_text",
]

CHECK_NAMES = (
    "th1-monotone",
    "th1-odd",
    "th2",
    "th3",
    "th4-bounds",
    "el-unique",
    "oracle-eq",
    "cp-fourway",
    "obs-sum",
    "gen-func",
)

# groups up to this many elements get exhaustive all-interval scopes;
# larger ones fall back to lower intervals for the sum-based checks
SMALL_GROUP_LIMIT = 48

GEN_FUNC_DEPTH = 20


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    scope_size: int
    detail: str = ""


# -- per-process environment ------------------------------------------------------

_ENVS: dict[str, dict] = {}


def _environment(spec: str) -> dict:
    env = _ENVS.get(spec)
    if env is None:
        group = enumerate_group(CoxeterDescriptor.parse(spec))
        ctx = RContext(group)
        path = snapshot_path(spec)
        if path is not None:
            load_snapshot(ctx, path)
        env = {
            "group": group,
            "ctx": ctx,
            "orders": distinct_reflection_orders(group, want=3),
        }
        _ENVS[spec] = env
    return env


def save_environment_snapshot(spec: str) -> None:
    """Persist the current memo tables when BRUHAT_CACHE_DIR is configured."""
    env = _ENVS.get(spec)
    path = snapshot_path(spec)
    if env is not None and path is not None:
        save_snapshot(env["ctx"], path)


def _run_chunk(spec: str, task: str, chunk: list) -> list:
    env = _environment(spec)
    fn = _TASKS[task]
    return [fn(env, item) for item in chunk]


def _pmap(spec: str, task: str, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) < 2 * workers:
        env = _environment(spec)
        fn = _TASKS[task]
        return [fn(env, item) for item in items]
    chunk_count = workers * 4
    chunk_size = max(1, math.ceil(len(items) / chunk_count))
    chunks = [list(items[i:i + chunk_size]) for i in range(0, len(items), chunk_size)]
    _environment(spec)  # warm the parent before fork-based pools copy it
    results: list = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_chunk, spec, task, c) for c in chunks]
        for fut in futures:
            results.extend(fut.result())
    return results


# -- task functions (must stay module level for pickling) --------------------------


def _task_th4_pair(env: dict, pair: tuple[int, int]) -> bool:
    ctx: RContext = env["ctx"]
    u, w = pair
    ok = analysis.dihedral_bounds_ok(ctx, u, w)
    if ok and env["group"].descriptor.family == "I2":
        # in a dihedral group every interval is dihedral, so the upper
        # bound must be attained exactly
        n = env["group"].length[w] - env["group"].length[u]
        ok = ctx.shifted(u, w) == analysis.dihedral_poly(n)
    return ok


def _task_oracle_pair(env: dict, pair: tuple[int, int]) -> bool:
    group: GroupTable = env["group"]
    ctx: RContext = env["ctx"]
    u, w = pair
    graph = build_graph(group, group.interval(u, w))
    rt = ctx.rtilde(u, w)
    sh = ctx.shifted(u, w)
    for order in env["orders"]:
        if rtilde_via_paths(graph, u, w, order) != rt:
            return False
        if shifted_r_via_weights(graph, u, w, order) != sh:
            return False
    return reassemble_r(ctx.gamma_vector(u, w)) == ctx.r(u, w)


def _task_el_pair(env: dict, pair: tuple[int, int]) -> bool:
    group: GroupTable = env["group"]
    u, w = pair
    graph = build_graph(group, group.interval(u, w))
    chains = short_paths(graph, u, w)
    for order in env["orders"]:
        increasing = increasing_paths(graph, u, w, order, short_only=True)
        if len(increasing) != 1:
            return False
        ranks = tuple(order.rank[t] for t in increasing[0].labels)
        best = min(tuple(order.rank[t] for t in c.labels) for c in chains)
        if ranks != best:
            return False
    return True


def _task_fourway_w(env: dict, w: int) -> bool:
    return analysis.four_way_regularity(env["ctx"], w).agree


def _task_th2_w(env: dict, w: int) -> bool:
    ctx: RContext = env["ctx"]
    group: GroupTable = env["group"]
    _, fired = analysis.shifted_average_fires(ctx, w)
    if not fired:
        return True
    graph = build_graph(group, group.interval(group.identity, w))
    return not analysis.is_regular(graph)


def _task_deodhar_pair(env: dict, pair: tuple[int, int]) -> bool:
    verdict = analysis.deodhar_check(env["ctx"], pair[0], pair[1])
    return verdict.f1_holds and verdict.f2_holds and verdict.consistent


def _task_scan_pair(env: dict, pair: tuple[int, int]) -> Optional[dict]:
    return analysis.conjecture_violation(env["ctx"], pair[0], pair[1])


_TASKS: dict[str, Callable] = {
    "th4_pair": _task_th4_pair,
    "oracle_pair": _task_oracle_pair,
    "el_pair": _task_el_pair,
    "fourway_w": _task_fourway_w,
    "th2_w": _task_th2_w,
    "deodhar_pair": _task_deodhar_pair,
    "scan_pair": _task_scan_pair,
}


# -- scopes -------------------------------------------------------------------------


def _interval_scope(group: GroupTable,
                    max_interval_len: Optional[int] = None) -> list[tuple[int, int]]:
    """All comparable pairs for small groups, else lower intervals only."""
    if len(group) <= SMALL_GROUP_LIMIT:
        pairs = group.comparable_pairs()
    else:
        pairs = [(group.identity, w) for w in group.elements()]
    if max_interval_len is not None:
        pairs = [(u, w) for u, w in pairs
                 if group.length[w] - group.length[u] <= max_interval_len]
    return pairs


# -- checks -------------------------------------------------------------------------


def _check_th1(spec: str, workers: int) -> tuple[CheckResult, CheckResult]:
    env = _environment(spec)
    group: GroupTable = env["group"]
    ctx: RContext = env["ctx"]
    sizes = {v: ctx.bruhat_size(group.identity, v) for v in group.elements()}
    odd_ok = all(s % 2 == 1 for s in sizes.values())
    bad = 0
    pairs = 0
    for u in group.elements():
        for w in group.elements():
            if group.leq(u, w):
                pairs += 1
                if sizes[u] > sizes[w]:
                    bad += 1
    return (
        CheckResult("th1-monotone", bad == 0, pairs,
                    "sizes never decrease up the order" if bad == 0 else f"{bad} violations"),
        CheckResult("th1-odd", odd_ok, len(sizes), "every size is odd" if odd_ok else "even size found"),
    )


def _check_th2(spec: str, workers: int) -> CheckResult:
    group = _environment(spec)["group"]
    ws = list(group.elements())
    oks = _pmap(spec, "th2_w", ws, workers)
    return CheckResult("th2", all(oks), len(ws),
                       "fired averages all irregular" if all(oks) else "criterion misfired")


def _check_th3(spec: str, workers: int, cap: Optional[int] = None) -> CheckResult:
    group = _environment(spec)["group"]
    pairs = _interval_scope(group, cap)
    oks = _pmap(spec, "deodhar_pair", pairs, workers)
    return CheckResult("th3", all(oks), len(pairs),
                       "both degree inequalities hold" if all(oks) else "inequality failed")


def _check_th4(spec: str, workers: int, cap: Optional[int] = None) -> CheckResult:
    group = _environment(spec)["group"]
    pairs = group.comparable_pairs()
    if cap is not None:
        pairs = [(u, w) for u, w in pairs
                 if group.length[w] - group.length[u] <= cap]
    oks = _pmap(spec, "th4_pair", pairs, workers)
    return CheckResult("th4-bounds", all(oks), len(pairs),
                       "shifted polynomials inside dihedral bounds" if all(oks) else "bound failed")


def _check_el(spec: str, workers: int, cap: Optional[int] = None) -> CheckResult:
    group = _environment(spec)["group"]
    pairs = _interval_scope(group, cap)
    oks = _pmap(spec, "el_pair", pairs, workers)
    return CheckResult("el-unique", all(oks), len(pairs),
                       "unique lex-first increasing chain" if all(oks) else "uniqueness failed")


def _check_oracle(spec: str, workers: int, cap: Optional[int] = None) -> CheckResult:
    group = _environment(spec)["group"]
    pairs = _interval_scope(group, cap)
    oks = _pmap(spec, "oracle_pair", pairs, workers)
    return CheckResult("oracle-eq", all(oks), len(pairs),
                       "recursions match path enumeration" if all(oks) else "oracle mismatch")


def _check_fourway(spec: str, workers: int) -> CheckResult:
    group = _environment(spec)["group"]
    ws = list(group.elements())
    oks = _pmap(spec, "fourway_w", ws, workers)
    return CheckResult("cp-fourway", all(oks), len(ws),
                       "all regularity criteria agree" if all(oks) else "criteria disagree")


def _check_obs(spec: str, workers: int) -> CheckResult:
    result = analysis.observation_sum(_environment(spec)["ctx"])
    detail = f"sum of sizes = {result.sum_of_sizes} = 2^length(w0)"
    if not result.ok:
        detail = f"sum {result.sum_of_sizes} != expected {result.expected}"
    return CheckResult("obs-sum", result.ok, 1, detail)


def _check_gen_func(spec: str, workers: int) -> CheckResult:
    series = analysis.dihedral_series(GEN_FUNC_DEPTH + 1)
    ok = all(series[n] == analysis.dihedral_poly(n) for n in range(GEN_FUNC_DEPTH + 1))
    return CheckResult("gen-func", ok, GEN_FUNC_DEPTH + 1,
                       f"series matches recursion through n={GEN_FUNC_DEPTH}" if ok else "series mismatch")


def run_suite(spec: str, checks: Optional[Sequence[str]] = None,
              workers: int = 1,
              max_interval_len: Optional[int] = None) -> list[CheckResult]:
    """Run the named checks for one group, in the canonical order.

    ``max_interval_len`` caps the interval scopes of the sweep checks;
    capped runs are flagged as partial in the rendered output.
    """
    selected = tuple(checks) if checks else CHECK_NAMES
    unknown = [c for c in selected if c not in CHECK_NAMES]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}; available: {list(CHECK_NAMES)}")
    results: list[CheckResult] = []
    for name in CHECK_NAMES:
        if name not in selected:
            continue
        if name == "th1-monotone":
            mono, odd = _check_th1(spec, workers)
            results.append(mono)
            if "th1-odd" in selected:
                results.append(odd)
        elif name == "th1-odd":
            if "th1-monotone" not in selected:
                _, odd = _check_th1(spec, workers)
                results.append(odd)
        elif name == "th2":
            results.append(_check_th2(spec, workers))
        elif name == "th3":
            results.append(_check_th3(spec, workers, max_interval_len))
        elif name == "th4-bounds":
            results.append(_check_th4(spec, workers, max_interval_len))
        elif name == "el-unique":
            results.append(_check_el(spec, workers, max_interval_len))
        elif name == "oracle-eq":
            results.append(_check_oracle(spec, workers, max_interval_len))
        elif name == "cp-fourway":
            results.append(_check_fourway(spec, workers))
        elif name == "obs-sum":
            results.append(_check_obs(spec, workers))
        elif name == "gen-func":
            results.append(_check_gen_func(spec, workers))
    return results


def suite_text(spec: str, results: Sequence[CheckResult],
               max_interval_len: Optional[int] = None) -> str:
    header = f"group: {spec}"
    if max_interval_len is not None:
        header += f" (partial: intervals capped at length {max_interval_len})"
    lines = [header]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.name}: {status} (scope={r.scope_size}) {r.detail}")
    passed = sum(1 for r in results if r.passed)
    overall = "PASS" if passed == len(results) else "FAIL"
    lines.append(f"suite: {overall} ({passed}/{len(results)})")
    return "\n".join(lines) + "\n"


# -- conjecture scan -----------------------------------------------------------------


def run_scan(spec: str, workers: int = 1, sample: Optional[int] = None,
             seed: int = 0, max_interval_len: Optional[int] = None,
             extra_pairs: Sequence[tuple[int, int]] = (),
             exhaustive: bool = False) -> dict:
    """Scan interval sums against the (1+q)^ell floor and tally edge sizes.

    ``sample`` draws that many pairs deterministically (seeded) from the
    scope; ``extra_pairs`` are always included; ``exhaustive`` forces the
    all-pairs scope even for large groups. The result is JSON-ready with a
    stable ordering.
    """
    env = _environment(spec)
    group: GroupTable = env["group"]
    ctx: RContext = env["ctx"]
    pairs = group.comparable_pairs() if exhaustive else _interval_scope(group)
    if max_interval_len is not None:
        pairs = [(u, w) for u, w in pairs
                 if group.length[w] - group.length[u] <= max_interval_len]
    sampled = None
    if sample is not None and sample < len(pairs):
        rng = random.Random(seed)
        pairs = sorted(rng.sample(pairs, sample))
        sampled = {"size": sample, "seed": seed}
    for pair in extra_pairs:
        if pair not in pairs:
            pairs.append(pair)
    violations = [v for v in _pmap(spec, "scan_pair", pairs, workers) if v is not None]
    violations.sort(key=lambda v: (v["u"], v["w"]))
    tally = analysis.edge_size_tally(ctx)
    return {
        "group": spec,
        "intervals_checked": len(pairs),
        "sample": sampled,
        "violations": violations,
        "edge_tally": {
            "edges": tally.edges,
            "equal": tally.equal,
            "strict": tally.strict,
            "equal_examples": [list(x) for x in tally.equal_examples],
            "strict_examples": [list(x) for x in tally.strict_examples],
        },
    }
