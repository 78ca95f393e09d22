import random
from math import comb

import pytest

from helpers import (
    dp_closed_walks,
    int_matrix_power_diag,
    path_adjacency,
    random_connected_graph,
    random_graph,
)
from latticewalks import graphs, walks
from latticewalks.errors import ResourceLimitError
from latticewalks.walks import (
    WalkTable,
    build_lattice,
    cartesian_walk_convolution,
    catalan,
    central_binomial,
    closed_form_walks,
    kronecker_walk_product,
    lattice_kind,
    lattice_walk_kinds,
    moment_coincidence_report,
    path_closed_walks,
    verify_binomial_identity,
    walk_count,
    walk_table,
)


def cat(m: int) -> int:
    # local Catalan, so frozen tables below do not lean on the library
    return comb(2 * m, m) // (m + 1)


class TestSmallCombinatorics:
    def test_central_binomial_values(self):
        assert [central_binomial(m) for m in range(6)] == [1, 2, 6, 20, 70, 252]

    def test_catalan_values(self):
        assert [catalan(m) for m in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            central_binomial(-1)
        with pytest.raises(ValueError):
            catalan(-2)


class TestPathClosedWalks:
    def test_matches_integer_matrix_power(self):
        for n in range(1, 7):
            adj = path_adjacency(n)
            for m in range(13):
                assert path_closed_walks(n, m) == int_matrix_power_diag(adj, 0, m)

    def test_four_vertex_path_is_odd_fibonacci(self):
        # endpoint return counts on the 4-path: 1, 1, 2, 5, 13, 34, 89
        got = [path_closed_walks(4, 2 * m) for m in range(7)]
        assert got == [1, 1, 2, 5, 13, 34, 89]

    def test_odd_lengths_vanish(self):
        assert all(path_closed_walks(5, m) == 0 for m in range(1, 12, 2))

    def test_validation(self):
        with pytest.raises(ValueError):
            path_closed_walks(0, 2)
        with pytest.raises(ValueError):
            path_closed_walks(3, -1)


class TestWalkCount:
    @pytest.mark.parametrize("kind,mmax", [
        ("z", 10), ("zplus", 10), ("zplus-at-1", 10),
        ("halfplane", 8), ("wedge", 8), ("quarterplane", 8),
        ("bcc3", 6), ("chamber3", 6),
    ])
    def test_matches_dp_oracle_on_lattices(self, kind, mmax):
        g, o = build_lattice(kind)
        for m in range(mmax + 1):
            assert walk_count(g, o, m) == dp_closed_walks(g, o, m)

    def test_matches_dp_oracle_on_random_graphs(self):
        rng = random.Random(20240817)
        for _ in range(25):
            g = random_graph(rng)
            for m in (0, 1, 2, 5, 8):
                assert walk_count(g, (0,), m) == dp_closed_walks(g, (0,), m)

    def test_budget_error_propagates(self):
        g, o = build_lattice("z2")
        with pytest.raises(ResourceLimitError):
            walk_count(g, o, 12, budget=4)

    def test_rejects_negative_length(self):
        g, o = build_lattice("z")
        with pytest.raises(ValueError):
            walk_count(g, o, -1)


class TestWalkTable:
    def test_indexing_and_bounds(self):
        g, o = build_lattice("z")
        t = walk_table(g, o, 6)
        assert t[0] == 1 and t[2] == 2 and t[6] == 20
        assert t.m_max == 6
        with pytest.raises(ValueError):
            t[7]

    def test_csv_layout(self):
        g, o = build_lattice("zplus")
        text = walk_table(g, o, 4).to_csv()
        assert text.splitlines()[0] == "m,count"
        assert text.splitlines()[1:] == ["0,1", "1,0", "2,1", "3,0", "4,2"]


class TestProductTheorems:
    def test_kronecker_multiplication_on_random_pairs(self):
        rng = random.Random(90125)
        for _ in range(30):
            g1, g2 = random_graph(rng, 2, 6), random_graph(rng, 2, 6)
            t1 = walk_table(g1, (0,), 8)
            t2 = walk_table(g2, (0,), 8)
            prod = graphs.kronecker(g1, g2)
            combined = kronecker_walk_product(t1, t2)
            for m in range(9):
                assert combined[m] == t1[m] * t2[m]
                assert walk_count(prod, (0, 0), m) == combined[m]

    def test_cartesian_convolution_on_random_pairs(self):
        rng = random.Random(65536)
        for _ in range(30):
            g1, g2 = random_graph(rng, 2, 6), random_graph(rng, 2, 6)
            t1 = walk_table(g1, (0,), 8)
            t2 = walk_table(g2, (0,), 8)
            prod = graphs.cartesian(g1, g2)
            for m in range(9):
                expected = sum(comb(m, j) * t1[j] * t2[m - j] for j in range(m + 1))
                assert cartesian_walk_convolution(t1, t2, m) == expected
                assert walk_count(prod, (0, 0), m) == expected

    def test_kronecker_component_count_of_connected_pairs(self):
        rng = random.Random(777)
        for _ in range(20):
            g1 = random_connected_graph(rng, 2, 6)
            g2 = random_connected_graph(rng, 2, 6)
            comps = graphs.connected_components(graphs.kronecker(g1, g2))
            assert len(comps) <= 2

    def test_single_vertex_factor_is_convolution_identity(self):
        g, o = build_lattice("zplus")
        t = walk_table(g, o, 8)
        unit = walk_table(graphs.path_graph(1), (0,), 8)
        for m in range(9):
            assert cartesian_walk_convolution(t, unit, m) == t[m]

    def test_table_range_mismatch_rejected(self):
        g, o = build_lattice("z")
        t1, t2 = walk_table(g, o, 4), walk_table(g, o, 6)
        with pytest.raises(ValueError):
            kronecker_walk_product(t1, t2)
        with pytest.raises(ValueError):
            cartesian_walk_convolution(t1, t2, 6)


class TestWalkCountProperties:
    def test_half_length_ball_is_sufficient(self):
        # a closed m-walk cannot leave the radius-(m//2) ball, so widening
        # the window must not change any count
        for kind in ("halfplane", "chamber3"):
            g, o = build_lattice(kind)
            for m in (4, 6, 8):
                small = graphs.ball(g, o, m // 2)
                wide = graphs.ball(g, o, m)
                assert dp_closed_walks(small, o, m) == dp_closed_walks(wide, o, m)
                assert walk_count(g, o, m) == dp_closed_walks(wide, o, m)

    def test_even_counts_never_decrease(self):
        rng = random.Random(2718281)
        graphs_to_try = [random_connected_graph(rng, 2, 7) for _ in range(10)]
        for g in graphs_to_try:
            t = walk_table(g, (0,), 10)
            evens = [t[m] for m in range(0, 11, 2)]
            assert all(a <= b for a, b in zip(evens, evens[1:]))

    def test_counts_are_nonnegative_ints(self):
        g, o = build_lattice("z3cartesian")
        t = walk_table(g, o, 8)
        assert all(isinstance(c, int) and c >= 0 for c in t.counts)


class TestLatticeRegistry:
    def test_registry_lists_every_kind(self):
        kinds = lattice_walk_kinds()
        assert kinds == ("z", "zplus", "zplus-at-1", "z2", "halfplane",
                         "wedge", "quarterplane", "zxzplus", "strip",
                         "diamond", "bcc3", "z3cartesian", "chamber3", "kkc3")

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown lattice kind"):
            lattice_kind("moebius")

    def test_parameter_validation(self):
        with pytest.raises(ValueError, match="requires parameter n"):
            build_lattice("strip")
        with pytest.raises(ValueError, match="requires parameter l"):
            build_lattice("diamond", k=3)
        with pytest.raises(ValueError, match="does not take"):
            build_lattice("z", n=5)
        with pytest.raises(ValueError, match="does not take"):
            closed_form_walks("wedge", 4, k=2)

    def test_dimensions(self):
        assert lattice_kind("z").dimension == 1
        assert lattice_kind("strip").dimension == 2
        assert lattice_kind("kkc3").dimension == 3


# frozen even-order tables; every entry recomputed here from first
# principles so the library closed forms are checked, not echoed
FROZEN_EVEN_TABLES = {
    "z": [comb(2 * h, h) for h in range(8)],
    "zplus": [cat(h) for h in range(8)],
    "zplus-at-1": [cat(h + 1) for h in range(8)],
    "z2": [comb(2 * h, h) ** 2 for h in range(6)],
    "halfplane": [cat(h) * comb(2 * h, h) for h in range(6)],
    "wedge": [cat(h) ** 2 for h in range(6)],
    "quarterplane": [sum(comb(2 * h, 2 * j) * cat(j) * cat(h - j)
                         for j in range(h + 1)) for h in range(6)],
    "zxzplus": [cat(h) * cat(h + 1) for h in range(6)],
    "bcc3": [comb(2 * h, h) ** 3 for h in range(5)],
    "z3cartesian": [sum(comb(2 * h, 2 * j) * comb(2 * j, j) ** 2
                        * comb(2 * h - 2 * j, h - j) for j in range(h + 1))
                    for h in range(5)],
    "chamber3": [sum(comb(2 * h, 2 * j) * cat(j) ** 2 * cat(h - j)
                     for j in range(h + 1)) for h in range(5)],
}


class TestClosedForms:
    def test_odd_lengths_are_zero(self):
        for kind in ("z", "wedge", "bcc3"):
            assert closed_form_walks(kind, 7) == 0

    @pytest.mark.parametrize("kind", sorted(FROZEN_EVEN_TABLES))
    def test_frozen_tables(self, kind):
        table = FROZEN_EVEN_TABLES[kind]
        got = [closed_form_walks(kind, 2 * h) for h in range(len(table))]
        assert got == table

    def test_first_values_pinned(self):
        # spot checks with the numbers written out, not derived
        assert [closed_form_walks("zxzplus", 2 * h) for h in range(5)] == \
            [1, 2, 10, 70, 588]
        assert [closed_form_walks("chamber3", 2 * h) for h in range(5)] == \
            [1, 2, 12, 120, 1610]
        assert closed_form_walks("halfplane", 4) == 12
        assert closed_form_walks("bcc3", 2) == 8

    def test_strip_and_diamond_factor_through_paths(self):
        for h in range(6):
            w3 = int_matrix_power_diag(path_adjacency(3), 0, 2 * h)
            assert closed_form_walks("strip", 2 * h, n=3) == comb(2 * h, h) * w3
        for h in range(5):
            w4 = int_matrix_power_diag(path_adjacency(4), 0, 2 * h)
            w5 = int_matrix_power_diag(path_adjacency(5), 0, 2 * h)
            assert closed_form_walks("diamond", 2 * h, k=4, l=5) == w4 * w5

    def test_negative_length_rejected(self):
        with pytest.raises(ValueError):
            closed_form_walks("z", -2)


class TestIdentityAndCoincidence:
    def test_binomial_identity_range(self):
        assert all(verify_binomial_identity(m) for m in range(31))

    def test_binomial_identity_value(self):
        lhs = sum(comb(20, 2 * k) * comb(2 * k, k) * comb(20 - 2 * k, 10 - k)
                  for k in range(11))
        assert lhs == comb(20, 10) ** 2 == 34134779536

    def test_chamber_and_triple_product_counts_coincide(self):
        g_a, o_a = build_lattice("kkc3")
        g_b, o_b = build_lattice("chamber3")
        rep = moment_coincidence_report(g_a, o_a, g_b, o_b, 10)
        assert rep.all_equal
        assert rep.mismatches() == ()
        assert [c for m, c, _ in rep.entries if m % 2 == 0] == \
            [1, 2, 12, 120, 1610, 25956]

    def test_mismatch_is_reported(self):
        g_a, o_a = build_lattice("halfplane")
        g_b, o_b = build_lattice("wedge")
        rep = moment_coincidence_report(g_a, o_a, g_b, o_b, 6)
        assert not rep.all_equal
        assert rep.mismatches()[0] == (2, 2, 1)  # first divergence at m = 2

    def test_diagonal_plane_component_counts(self):
        # counting on the product graph itself, not the folded lattice
        g = graphs.kronecker(graphs.integer_line(), graphs.integer_line())
        assert walk_count(g, (0, 0), 4) == 36
        assert walk_count(g, (0, 0), 6) == 400

    def test_degree_two_interior_witness(self):
        # the triple product has a unique interior degree-2 vertex; the
        # chamber lattice has at least two, so the graphs cannot be isomorphic
        g_a, o_a = build_lattice("kkc3")
        g_b, o_b = build_lattice("chamber3")
        hist_a = graphs.degree_histogram(graphs.ball(g_a, o_a, 6), 4)
        hist_b = graphs.degree_histogram(graphs.ball(g_b, o_b, 6), 4)
        assert hist_a.get(2, 0) == 1
        assert hist_b.get(2, 0) >= 2
