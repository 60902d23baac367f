import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import bruteforce as bf
from homreflect import (
    GraphError,
    cube_vertex,
    direction_colouring,
    edge_density,
    gen_complete,
    gen_cycle,
    gen_hypercube,
    gen_random,
    gen_set_graph,
    greedy_proper_colouring,
    make_graph,
    peel_min_degree,
    read_colouring,
    read_edge_list,
    validate_colouring,
    write_colouring,
    write_edge_list,
)

# Frozen by the naive generators/oracles before the build.
GOLDEN_RANDOM_30_HALF_42_EDGES = 235
H13_TO_C6_ISO = (0, 2, 4, 1, 5, 3)


def random_graph_strategy(max_n=8):
    @st.composite
    def build(draw):
        n = draw(st.integers(min_value=1, max_value=max_n))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        picks = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else []
        return make_graph(n, picks)
    return build()


class TestMakeGraph:
    def test_path_degrees(self):
        g = make_graph(3, [(0, 1), (1, 2)])
        assert g.degrees() == [1, 2, 1]

    def test_duplicate_edge_collapsed(self):
        g = make_graph(2, [(0, 1), (1, 0)])
        assert g.edge_count() == 1

    def test_self_loop_rejected(self):
        with pytest.raises(GraphError):
            make_graph(4, [(0, 0)])

    def test_out_of_range_rejected(self):
        with pytest.raises(GraphError):
            make_graph(3, [(0, 3)])

    @given(random_graph_strategy())
    @settings(max_examples=40, deadline=None)
    def test_adjacency_symmetric_loop_free(self, g):
        for u in range(g.n):
            assert u not in g.adj[u]
            for v in g.adj[u]:
                assert u in g.adj[v]


class TestHypercube:
    def test_q3_shape(self):
        g = gen_hypercube(3)
        assert g.n == 8
        assert g.edge_count() == 12
        assert set(g.degrees()) == {3}

    def test_q1_is_single_edge(self):
        g = gen_hypercube(1)
        assert (g.n, g.edge_count()) == (2, 1)

    def test_q4_bipartition_halves(self):
        g = gen_hypercube(4)
        assert g.n == 16 and g.edge_count() == 32
        parts = g.bipartition()
        assert {len(parts[0]), len(parts[1])} == {8}

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_regular_bipartite(self, d):
        g = gen_hypercube(d)
        assert set(g.degrees()) == {d}
        assert g.bipartition() is not None

    def test_dimension_range(self):
        with pytest.raises(GraphError):
            gen_hypercube(0)
        with pytest.raises(GraphError):
            gen_hypercube(21)

    def test_cube_vertex_labels(self):
        g = gen_hypercube(3)
        assert g.labels[cube_vertex("110")] == "110"


class TestSetGraph:
    def test_1_3_is_c6(self):
        g = gen_set_graph(1, 3)
        assert (g.n, g.edge_count()) == (6, 6)
        assert set(g.degrees()) == {2}
        assert bf.graphs_isomorphic(g, gen_cycle(6)) == H13_TO_C6_ISO

    def test_1_4(self):
        g = gen_set_graph(1, 4)
        parts = g.bipartition()
        assert {len(parts[0]), len(parts[1])} == {4}
        assert set(g.degrees()) == {3}
        assert g.edge_count() == 12

    def test_2_5(self):
        g = gen_set_graph(2, 5)
        parts = g.bipartition()
        assert {len(parts[0]), len(parts[1])} == {10}
        assert set(g.degrees()) == {3}
        # oracle recount of containment pairs
        count = sum(1 for i, s in enumerate(g.labels) if len(s) == 2
                    for t in g.labels if len(t) == 3 and s <= t)
        assert g.edge_count() == count

    def test_small_side_bound(self):
        with pytest.raises(GraphError):
            gen_set_graph(2, 4)


class TestRandom:
    def test_extreme_probabilities(self):
        assert gen_random(10, Fraction(0), 1).edge_count() == 0
        assert gen_random(10, Fraction(1), 1).edge_count() == 45

    def test_golden_edge_count(self):
        assert gen_random(30, Fraction(1, 2), 42).edge_count() == GOLDEN_RANDOM_30_HALF_42_EDGES

    def test_determinism_bit_for_bit(self):
        a = gen_random(25, Fraction(3, 7), 9)
        b = gen_random(25, Fraction(3, 7), 9)
        assert a.adj == b.adj

    def test_probability_range(self):
        with pytest.raises(GraphError):
            gen_random(5, Fraction(3, 2), 1)


class TestDensityAndPeel:
    def test_density_examples(self):
        assert edge_density(gen_complete(4)) == Fraction(3, 4)
        assert edge_density(make_graph(5, [])) == 0
        assert edge_density(gen_hypercube(3)) == Fraction(3, 8)

    def test_density_empty_graph_error(self):
        with pytest.raises(GraphError):
            edge_density(make_graph(0, []))

    def test_star_peels_away(self):
        star = make_graph(6, [(0, i) for i in range(1, 6)])
        assert peel_min_degree(star, 2).n == 0

    def test_cycle_survives(self):
        c5 = gen_cycle(5)
        out = peel_min_degree(c5, 2)
        assert out.n == 5 and out.edge_count() == 5

    def test_cascade(self):
        g = make_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])  # K4 minus an edge
        assert peel_min_degree(g, 3).n == 0

    @given(random_graph_strategy(), st.integers(min_value=1, max_value=4),
           st.integers(min_value=0, max_value=2 ** 30))
    @settings(max_examples=40, deadline=None)
    def test_postcondition_and_confluence(self, g, t, seed):
        out = peel_min_degree(g, t)
        if out.n:
            assert out.min_degree() >= t
        # random-order deletion reaches the same survivor set
        rng = random.Random(seed)
        deg = g.degrees()
        alive = set(range(g.n))
        while True:
            low = [v for v in alive if deg[v] < t]
            if not low:
                break
            v = rng.choice(low)
            alive.discard(v)
            for w in g.adj[v]:
                if w in alive:
                    deg[w] -= 1
        assert set(out.labels) == alive


class TestColourings:
    def test_triangle_needs_three(self):
        col = greedy_proper_colouring(gen_complete(3), 1)
        assert col.colour_count() == 3

    def test_star_needs_degree(self):
        star = make_graph(5, [(0, i) for i in range(1, 5)])
        col = greedy_proper_colouring(star, 3)
        assert col.colour_count() == 4

    @given(random_graph_strategy(), st.integers(min_value=0, max_value=2 ** 30))
    @settings(max_examples=40, deadline=None)
    def test_greedy_proper_and_bounded(self, g, seed):
        col = greedy_proper_colouring(g, seed)
        validate_colouring(g, col)
        if g.edge_count():
            assert col.colour_count() <= 2 * g.max_degree() - 1

    def test_direction_colour_classes(self):
        g, col = direction_colouring(3)
        classes = {}
        for e, c in col.colours.items():
            classes.setdefault(c, []).append(e)
        assert sorted(len(v) for v in classes.values()) == [4, 4, 4]
        assert col.proper

    def test_direction_single_edge(self):
        g, col = direction_colouring(1)
        assert col.colour_count() == 1

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_direction_every_cycle_colour_doubled(self, d):
        g, col = direction_colouring(d)
        for cyc in bf.simple_cycles(g):
            counts = {}
            for t in range(len(cyc)):
                c = col.of(cyc[t], cyc[(t + 1) % len(cyc)])
                counts[c] = counts.get(c, 0) + 1
            assert all(v >= 2 for v in counts.values())
            if len(cyc) == 4:
                assert sorted(counts.values()) == [2, 2]


class TestFileFormats:
    def test_edge_list_round_trip(self, tmp_path):
        g = gen_random(12, Fraction(2, 5), 4)
        path = tmp_path / "g.edges"
        write_edge_list(g, path)
        again = read_edge_list(path)
        assert again.n == g.n and again.adj == g.adj

    def test_edge_list_header_mismatch(self, tmp_path):
        path = tmp_path / "bad.edges"
        path.write_text("3 2\n0 1\n")
        with pytest.raises(GraphError):
            read_edge_list(path)

    def test_colouring_round_trip(self, tmp_path):
        g, col = direction_colouring(3)
        path = tmp_path / "c.colours"
        write_colouring(g, col, path)
        again = read_colouring(g, path)
        assert again.colours == col.colours
        assert again.proper

    def test_colouring_must_cover_edges(self, tmp_path):
        g = gen_cycle(4)
        path = tmp_path / "c.colours"
        path.write_text("0 1 0\n1 2 1\n")
        with pytest.raises(GraphError):
            read_colouring(g, path)
