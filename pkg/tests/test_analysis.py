import math
from fractions import Fraction

import pytest

from bruhatpoly import (
    IntPoly,
    build_graph,
    coeffwise_leq,
    default_reflection_order,
    increasing_paths,
    path_weight,
)
from bruhatpoly import analysis
from bruhatpoly.poly import ONE, Q, Q_PLUS_ONE, ZERO, monomial, size


def test_poincare_values(a3, a3_ctx, pid):
    assert analysis.poincare(a3_ctx, pid(a3, "3412")) == IntPoly((1, 3, 5, 4, 1))
    assert analysis.poincare(a3_ctx, a3.identity) == ONE
    assert analysis.poincare(a3_ctx, pid(a3, "4231")) == IntPoly((1, 3, 5, 6, 4, 1))


def test_poincare_at_minus_one(a3, a3_ctx):
    for w in a3.elements():
        value = analysis.poincare(a3_ctx, w)(-1)
        assert value == (1 if w == a3.identity else 0)


def test_poincare_bounds(a3, a3_ctx, i2_ctxs, pid):
    for w in a3.elements():
        assert analysis.poincare_bounds_ok(a3_ctx, w)
    ctx7 = i2_ctxs[7]
    w0 = ctx7.group.w0
    assert analysis.poincare(ctx7, w0) == analysis.dihedral_floor(7)
    # Boolean lower interval attains the ceiling
    assert analysis.poincare(a3_ctx, pid(a3, "2143")) == Q_PLUS_ONE ** 2


def test_regularity_of_figure_one(a3, a3_ctx, pid):
    w = pid(a3, "3412")
    graph = build_graph(a3, a3.interval(a3.identity, w))
    assert not analysis.is_regular(graph)
    heavy = sorted(a3.display(v) for v in graph.interval.members if graph.degree(v) == 5)
    assert heavy == ["1234", "1324"]
    others = [v for v in graph.interval.members if graph.degree(v) != 5]
    assert all(graph.degree(v) == 4 for v in others)


def test_full_group_interval_is_regular(a3, a4, i2_groups):
    for group in (a3, a4, i2_groups[7]):
        graph = build_graph(group, group.interval(group.identity, group.w0))
        assert analysis.is_regular(graph)


def test_short_intervals_are_regular(a3):
    for u, w in a3.comparable_pairs():
        if a3.length[w] - a3.length[u] <= 2:
            graph = build_graph(a3, a3.interval(u, w))
            assert analysis.is_regular(graph)


def test_carrell_peterson_values(a3, a3_ctx, pid):
    avg, eq = analysis.carrell_peterson_equal(a3_ctx, pid(a3, "3412"))
    assert avg == Fraction(29, 14) and not eq
    avg_e, eq_e = analysis.carrell_peterson_equal(a3_ctx, a3.identity)
    assert avg_e == 0 and eq_e
    avg2, eq2 = analysis.carrell_peterson_equal(a3_ctx, pid(a3, "4231"))
    assert avg2 == Fraction(52, 20) and not eq2


def test_bruhat_poincare_products(a3, a3_ctx, pid):
    # the 4231 identity from the worked example holds on the nose
    assert analysis.bruhat_poincare(a3_ctx, pid(a3, "4231")) == \
        (Q_PLUS_ONE ** 3) * IntPoly((1, 3, 1))
    # summing Table 1 shifted values over the 14-element interval gives
    # (1+q)(1+4q+4q^2+q^3); its average is exactly 2
    pb = analysis.bruhat_poincare(a3_ctx, pid(a3, "3412"))
    assert pb == Q_PLUS_ONE * IntPoly((1, 4, 4, 1))
    assert pb == IntPoly((1, 5, 8, 5, 1))
    from bruhatpoly.poly import average
    assert average(pb) == 2
    assert analysis.bruhat_poincare(a3_ctx, a3.w0) == Q_PLUS_ONE ** 6


def test_bruhat_poincare_dominates_poincare(a3, a3_ctx, a4, a4_ctx):
    for ctx in (a3_ctx, a4_ctx):
        for w in ctx.group.elements():
            p = analysis.poincare(ctx, w)
            pb = analysis.bruhat_poincare(ctx, w)
            assert coeffwise_leq(p, pb)
            assert pb(-1) == p(-1)


def test_splitting_identity_by_path_enumeration(a3, a3_ctx):
    # Bruhat-Poincare = Poincare + weights of long increasing paths
    order = default_reflection_order(a3)
    for w in a3.elements():
        graph = build_graph(a3, a3.interval(a3.identity, w))
        long_sum = ZERO
        for v in graph.interval.members:
            for path in increasing_paths(graph, a3.identity, v, order):
                if path.coxeter_length != path.absolute_length:
                    long_sum = long_sum + path_weight(path)
        expected = analysis.poincare(a3_ctx, w) + long_sum
        assert analysis.bruhat_poincare(a3_ctx, w) == expected


def test_bruhat_boolean_examples(a3, a3_ctx, i2_ctxs, pid):
    ctx3 = i2_ctxs[3]
    assert analysis.is_bruhat_boolean(ctx3, ctx3.group.identity, ctx3.group.w0)
    u = pid(a3, "2143")
    assert analysis.is_bruhat_boolean(a3_ctx, u, u)
    assert not analysis.is_bruhat_boolean(a3_ctx, a3.identity, pid(a3, "4231"))


def test_regular_via_upper_boolean(a3, a3_ctx, i2_ctxs, pid):
    assert not analysis.regular_via_upper_boolean(a3_ctx, a3.identity, pid(a3, "3412"))
    s1 = a3.generator(0)
    assert analysis.regular_via_upper_boolean(a3_ctx, a3.identity, s1)
    ctx7 = i2_ctxs[7]
    assert analysis.regular_via_upper_boolean(ctx7, ctx7.group.identity, ctx7.group.w0)


def test_degree_and_boolean_regularity_agree_on_lower_intervals(a3, a3_ctx):
    for w in a3.elements():
        graph = build_graph(a3, a3.interval(a3.identity, w))
        assert analysis.is_regular(graph) == \
            analysis.regular_via_upper_boolean(a3_ctx, a3.identity, w)


def test_regularity_notions_diverge_off_lower_intervals(a3, a3_ctx, pid):
    # [1324, 3421]: every upper subinterval is Bruhat-Boolean, yet the
    # induced graph has a degree-5 vertex. The two notions separate here,
    # and the out-degree of the bottom equals the length (no strictness).
    u, w = pid(a3, "1324"), pid(a3, "3421")
    graph = build_graph(a3, a3.interval(u, w))
    assert not analysis.is_regular(graph)
    assert analysis.regular_via_upper_boolean(a3_ctx, u, w)
    assert analysis.f_tilde(a3_ctx, u, w, 1) == 4 == graph.interval.ell
    assert analysis.interval_shifted_sum(a3_ctx, u, w) == Q_PLUS_ONE ** 4


def test_shifted_average_criterion(a3, a3_ctx, pid):
    # silent on both singular elements of S4: averages land exactly on l/2
    avg, fired = analysis.shifted_average_fires(a3_ctx, pid(a3, "3412"))
    assert avg == 2 and not fired
    avg_e, fired_e = analysis.shifted_average_fires(a3_ctx, a3.identity)
    assert not fired_e
    avg2, fired2 = analysis.shifted_average_fires(a3_ctx, pid(a3, "4231"))
    assert avg2 == Fraction(5, 2) and not fired2


def test_shifted_average_criterion_is_sound(a3, a3_ctx, a4, a4_ctx):
    fired_in_a4 = []
    for ctx in (a3_ctx, a4_ctx):
        group = ctx.group
        for w in group.elements():
            _, fired = analysis.shifted_average_fires(ctx, w)
            if fired:
                graph = build_graph(group, group.interval(group.identity, w))
                assert not analysis.is_regular(graph)
                if group is a4:
                    fired_in_a4.append(group.display(w))
    # the one-way test is silent on all of S4 but catches 10 of the 32
    # irregular lower intervals of the next symmetric group
    assert len(fired_in_a4) == 10
    assert "34512" in fired_in_a4


def test_f_tilde_values(a3, a3_ctx, pid):
    e = a3.identity
    w = pid(a3, "3412")
    assert analysis.f_tilde(a3_ctx, e, w, 0) == 1
    assert analysis.f_tilde(a3_ctx, e, w, 1) == 5
    # five increasing two-step paths land on the rank-two elements and a
    # sixth continues to the top, so the q^2 coefficient is 2 + 6
    assert analysis.f_tilde(a3_ctx, e, w, 2) == 8
    assert analysis.f_tilde_vector(a3_ctx, e, w) == (1, 5, 8, 5, 1)
    with pytest.raises(ValueError):
        analysis.f_tilde(a3_ctx, e, w, 9)


def test_f_tilde_zero_is_one_everywhere(a3, a3_ctx):
    for u, w in a3.comparable_pairs():
        assert analysis.f_tilde(a3_ctx, u, w, 0) == 1


def test_p1_p2_values(a3, a3_ctx, i2_ctxs, pid):
    order = default_reflection_order(a3)
    e = a3.identity
    graph = build_graph(a3, a3.interval(e, pid(a3, "3412")))
    assert analysis.p1_p2(a3_ctx, graph, order) == (2, 6)
    s1 = a3.generator(0)
    g1 = build_graph(a3, a3.interval(e, s1))
    assert analysis.p1_p2(a3_ctx, g1, order) == (0, 0)
    # Boolean square: a single increasing two-step chain
    sq = build_graph(a3, a3.interval(e, pid(a3, "2143")))
    assert analysis.p1_p2(a3_ctx, sq, order) == (0, 1)


def test_p1_p2_sum_is_order_invariant(a3, a3_ctx):
    from bruhatpoly import distinct_reflection_orders
    orders = distinct_reflection_orders(a3, want=3)
    for u, w in a3.comparable_pairs():
        graph = build_graph(a3, a3.interval(u, w))
        values = {analysis.p1_p2(a3_ctx, graph, o) for o in orders}
        # p1 never moves; p2 is order-invariant as well
        assert len(values) == 1


def test_deodhar_examples(a3, a3_ctx, i2_ctxs, pid):
    v = analysis.deodhar_check(a3_ctx, a3.identity, pid(a3, "3412"))
    assert v.f1 == 5 > 4 and v.f1_strict
    assert v.f2 == 8 > 6 and v.f2_strict
    assert not v.degree_regular and not v.boolean_regular
    assert v.consistent
    ctx5 = i2_ctxs[5]
    v5 = analysis.deodhar_check(ctx5, ctx5.group.identity, ctx5.group.w0)
    assert v5.f1 == 5 == v5.ell and not v5.f1_strict
    assert v5.boolean_regular and v5.consistent


def test_deodhar_on_boolean_intervals(a3, a3_ctx):
    found = 0
    for u, w in a3.comparable_pairs():
        interval = a3.interval(u, w)
        if analysis.is_boolean_interval(a3, interval):
            found += 1
            v = analysis.deodhar_check(a3_ctx, u, w)
            assert v.f1 == v.ell
            assert v.f2 == math.comb(v.ell, 2)
            assert v.boolean_regular
    assert found > 20


def test_deodhar_suite_all_s4(a3, a3_ctx):
    for u, w in a3.comparable_pairs():
        v = analysis.deodhar_check(a3_ctx, u, w)
        assert v.f1_holds and v.f2_holds and v.consistent


def test_dihedral_polys_table(i2_ctxs):
    expected = {
        0: ONE,
        1: Q,
        2: monomial(2),
        3: IntPoly((0, 1, 1, 1)),
        4: IntPoly((0, 0, 2, 2, 1)),
        5: IntPoly((0, 1, 2, 4, 3, 1)),
        6: IntPoly((0, 0, 3, 6, 7, 4, 1)),
        7: IntPoly((0, 1, 3, 9, 13, 11, 5, 1)),
        8: IntPoly((0, 0, 4, 12, 22, 24, 16, 6, 1)),
    }
    sizes = (1, 1, 1, 3, 5, 11, 21, 43, 85)
    totals = (0, 1, 2, 6, 14, 34, 78, 178, 398)
    for n, poly in expected.items():
        assert analysis.dihedral_poly(n) == poly
        s, t = analysis.dihedral_numbers(n)
        assert (s, t) == (sizes[n], totals[n])


def test_dihedral_closed_form(i2_ctxs):
    for n in range(0, 21):
        assert analysis.dihedral_closed_form_ok(n)


def test_dihedral_series_matches_recursion():
    series = analysis.dihedral_series(21)
    assert series[0] == ONE
    for n in range(21):
        assert series[n] == analysis.dihedral_poly(n)


def test_jacobsthal():
    assert [analysis.jacobsthal(n) for n in range(9)] == [0, 1, 1, 3, 5, 11, 21, 43, 85]
    for n in range(1, 21):
        assert analysis.dihedral_numbers(n)[0] == analysis.jacobsthal(n)
        assert analysis.jacobsthal(n) == (2 ** n - (-1) ** n) // 3
    # closed form for the totals
    for n in range(1, 15):
        assert 9 * analysis.dihedral_numbers(n)[1] == \
            2 * (2 ** n - (-1) ** n + 3 * n * 2 ** (n - 2))


def test_dihedral_upper_bound_attained(i2_ctxs):
    for m in (5, 10, 12):
        ctx = i2_ctxs[m]
        g = ctx.group
        for u, w in g.comparable_pairs():
            n = g.length[w] - g.length[u]
            assert ctx.shifted(u, w) == analysis.dihedral_poly(n)


def test_bounds_check(a3, a3_ctx):
    for u, w in a3.comparable_pairs():
        assert analysis.dihedral_bounds_ok(a3_ctx, u, w)


def test_boolean_intervals_attain_lower_bound(a3, a3_ctx):
    found = 0
    for u, w in a3.comparable_pairs():
        if analysis.is_boolean_interval(a3, a3.interval(u, w)):
            found += 1
            n = a3.length[w] - a3.length[u]
            assert a3_ctx.shifted(u, w) == monomial(n)
            assert a3_ctx.rtilde(u, w) == monomial(n)
    assert found > 20


def test_pattern_containment(a3, pid):
    assert analysis.pattern_contains((3, 4, 1, 2), "3412")
    assert analysis.pattern_contains((4, 2, 3, 1), "4231")
    assert not analysis.is_singular((1, 2, 3, 4))
    assert analysis.is_singular((3, 4, 1, 2))
    assert analysis.is_singular((4, 2, 3, 1))
    assert not analysis.is_singular((4, 3, 2, 1))
    with pytest.raises(ValueError):
        analysis.pattern_contains((1, 2, 3, 4), "1234")


def test_singularity_matches_irregularity(a3, a3_ctx):
    for w in a3.elements():
        graph = build_graph(a3, a3.interval(a3.identity, w))
        assert analysis.is_singular(a3.forms[w]) == (not analysis.is_regular(graph))


def test_four_way_agreement_s4(a3, a3_ctx):
    irregular = []
    for w in a3.elements():
        verdict = analysis.four_way_regularity(a3_ctx, w)
        assert verdict.agree
        if not verdict.degree_regular:
            irregular.append(a3.display(w))
    assert sorted(irregular) == ["3412", "4231"]


def test_boolean_interval_detector(a3, pid):
    e = a3.identity
    assert analysis.is_boolean_interval(a3, a3.interval(e, pid(a3, "2143")))
    assert analysis.is_boolean_interval(a3, a3.interval(e, e))
    assert not analysis.is_boolean_interval(a3, a3.interval(e, pid(a3, "3412")))
    assert not analysis.is_boolean_interval(a3, a3.interval(e, a3.w0))


def test_dihedral_interval_detector(a3, i2_groups, pid):
    m5 = i2_groups[5]
    g5 = build_graph(m5, m5.interval(m5.identity, m5.w0))
    assert analysis.is_dihedral_interval(g5)
    sq = build_graph(a3, a3.interval(a3.identity, pid(a3, "2143")))
    assert analysis.is_dihedral_interval(sq)  # rank 2: Boolean and dihedral agree
    g3412 = build_graph(a3, a3.interval(a3.identity, pid(a3, "3412")))
    assert not analysis.is_dihedral_interval(g3412)


def test_dihedral_combinatorial_invariance(a3, a3_ctx, i2_ctxs):
    # equal-length dihedral intervals carry one R-polynomial everywhere
    seen: dict[int, set] = {}
    for ctx in (a3_ctx, i2_ctxs[6], i2_ctxs[9]):
        group = ctx.group
        for u, w in group.comparable_pairs():
            n = group.length[w] - group.length[u]
            graph = build_graph(group, group.interval(u, w))
            if analysis.is_dihedral_interval(graph):
                seen.setdefault(n, set()).add(ctx.r(u, w).coeffs)
    assert seen
    for n, polys in seen.items():
        assert len(polys) == 1, f"length {n} dihedral intervals disagree"


def test_rank_three_boolean_from_commuting_generators():
    # three commuting generators span a Boolean cube; its shifted sum is
    # (1+q)^3 and its rank generating function hits the Poincare ceiling
    from bruhatpoly import CoxeterDescriptor, RContext, enumerate_group
    a5 = enumerate_group(CoxeterDescriptor("A", 5))
    ctx = RContext(a5)
    w = a5.index[(2, 1, 4, 3, 6, 5)]
    assert a5.length[w] == 3
    assert analysis.bruhat_poincare(ctx, w) == Q_PLUS_ONE ** 3
    assert analysis.poincare(ctx, w) == Q_PLUS_ONE ** 3
    assert analysis.is_boolean_interval(a5, a5.interval(a5.identity, w))


def test_length_three_edge_r_shape(a3, a3_ctx):
    # an edge with length gap three always carries q^3 - 2q^2 + 2q - 1
    found = 0
    for u, w in a3.comparable_pairs():
        if a3.length[w] - a3.length[u] == 3 and a3_ctx.is_edge(u, w):
            found += 1
            assert a3_ctx.r(u, w) == IntPoly((-1, 2, -2, 1))
    assert found > 0


def test_observation_sums(a1, a3, a3_ctx, i2_ctxs):
    from bruhatpoly import RContext
    assert analysis.observation_sum(a3_ctx).sum_of_sizes == 64
    assert analysis.observation_sum(a3_ctx).ok
    assert analysis.observation_sum(RContext(a1)).sum_of_sizes == 2
    r5 = analysis.observation_sum(i2_ctxs[5])
    assert r5.sum_of_sizes == 32 and r5.ok


def test_conjecture_scan_s4(a3, a3_ctx):
    for u, w in a3.comparable_pairs():
        assert analysis.conjecture_violation(a3_ctx, u, w) is None
    u = a3.generator(0)
    assert analysis.conjecture_violation(a3_ctx, u, u) is None


def test_edge_size_tally(a3, a3_ctx):
    tally = analysis.edge_size_tally(a3_ctx)
    assert tally.edges == tally.equal + tally.strict
    assert tally.edges == sum(a3.length)  # in-degree law over the full group
    assert tally.equal_examples and tally.strict_examples


def test_blanco_inequality(a3, a3_ctx, a4, a4_ctx):
    # lower nonneg polynomial shifted by the length gap stays below
    for ctx in (a3_ctx, a4_ctx):
        group = ctx.group
        e = group.identity
        for u, v in group.comparable_pairs():
            gap = group.length[v] - group.length[u]
            lhs = ctx.rtilde(e, u) * monomial(gap)
            assert coeffwise_leq(lhs, ctx.rtilde(e, v))


def test_brenti_chain_inequality(a3, a3_ctx):
    for u, v in a3.comparable_pairs():
        for x in a3.interval(u, v).members:
            gap = a3.length[v] - a3.length[x]
            lhs = monomial(gap) * a3_ctx.rtilde(u, x)
            assert coeffwise_leq(lhs, a3_ctx.rtilde(u, v))


def test_fibonacci_bounds(a3, a3_ctx, a4, a4_ctx):
    for group, ctx in ((a3, a3_ctx), (a4, a4_ctx)):
        for u, w in group.comparable_pairs():
            n = group.length[w] - group.length[u]
            rt = ctx.rtilde(u, w)
            assert coeffwise_leq(monomial(n), rt)
            assert coeffwise_leq(rt, analysis.fibonacci_poly(n))


def test_size_bounds_by_jacobsthal(a3, a3_ctx):
    # sizes and totals live between the Boolean floor and the dihedral
    # ceiling evaluated at 1
    for u, w in a3.comparable_pairs():
        n = a3.length[w] - a3.length[u]
        if n < 1:
            continue
        s = a3_ctx.bruhat_size(u, w)
        t = a3_ctx.bruhat_total(u, w)
        dn, dtot = analysis.dihedral_numbers(n)
        assert 1 <= s <= dn == analysis.jacobsthal(n)
        assert n <= t <= dtot


def test_size_from_gamma_vector(a3, a3_ctx, i2_ctxs):
    # size = sum of gamma_j * 2^((ell-j)/2); every summand except the top
    # one is even, which is why sizes are always odd
    for ctx in (a3_ctx, i2_ctxs[8]):
        for u, w in ctx.group.comparable_pairs():
            gamma = ctx.gamma_vector(u, w)
            expected = sum(c * 2 ** ((gamma.coxeter_length - j) // 2)
                           for j, c in gamma.entries)
            assert ctx.bruhat_size(u, w) == expected


def test_interval_report_contents(a3, a3_ctx, pid):
    report = analysis.interval_report(a3_ctx, a3.identity, pid(a3, "3412"))
    d = report.to_json_dict()
    assert d["size"] == 3
    assert d["f2"] == 8
    assert d["p1"] == 2 and d["p2"] == 6
    assert d["average"] == "3/1"
    assert d["poincare_average"] == "29/14"
    assert d["bruhat_poincare_average"] == "2/1"
    assert d["regularity"]["regular"] is False
    assert d["gamma"] == {"2": 1, "4": 1}
    assert d["r"]["coeffs"] == ["1", "-3", "4", "-3", "1"]
    trivial = analysis.interval_report(a3_ctx, a3.w0, a3.w0)
    td = trivial.to_json_dict()
    assert td["r"]["text"] == "1" and td["size"] == 1
