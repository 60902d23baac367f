import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import bruteforce as bf
from homreflect import (
    CapabilityError,
    GraphError,
    check_final_inequality,
    check_reflection_inequality,
    count_cube_homomorphisms,
    cube_exponent_identity,
    cube_vertex,
    certify_reflective,
    enumerate_reflection_triples,
    gen_complete,
    gen_cycle,
    gen_hypercube,
    gen_random,
    hom_count,
    injective_hom_count,
    is_admissible,
    make_graph,
    noninjective_pair_bound,
    quotient_graph,
    sidorenko_check,
    supersaturation_experiment,
    turan_exponent,
)
from homreflect.homcount import _layered_count_numpy

# Frozen from the naive product-space oracle.
HOM_Q3_K4 = 2652


def connected_pattern(draw, max_n=6):
    n = draw(st.integers(min_value=2, max_value=max_n))
    edges = [(i, draw(st.integers(min_value=0, max_value=i - 1))) for i in range(1, n)]
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    extra = draw(st.lists(st.sampled_from(pairs), max_size=6))
    return make_graph(n, edges + extra)


@st.composite
def pattern_and_host(draw):
    h = connected_pattern(draw, max_n=5)
    n = draw(st.integers(min_value=1, max_value=5))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    g = make_graph(n, draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else [])
    return h, g


class TestQuotient:
    def test_collapses_parallel_edges(self):
        q3 = gen_hypercube(3)
        r = {cube_vertex("000"), cube_vertex("011")}
        q = quotient_graph(q3, r)
        assert q.n == 7
        assert q.edge_count() == 10  # two edge pairs merge

    def test_rejects_dependent_set(self):
        with pytest.raises(GraphError):
            quotient_graph(make_graph(2, [(0, 1)]), {0, 1})


class TestHomCount:
    def test_edge_into_path(self):
        assert hom_count(make_graph(2, [(0, 1)]), make_graph(3, [(0, 1), (1, 2)])) == 4

    def test_four_cycle_into_edge(self):
        assert hom_count(gen_cycle(4), make_graph(2, [(0, 1)])) == 2

    def test_cube_into_complete_bipartite(self):
        k44 = make_graph(8, [(i, 4 + j) for i in range(4) for j in range(4)])
        assert hom_count(gen_hypercube(3), k44) == 2 * 4 ** 8

    def test_cube_into_k22_oracle_confirmed(self):
        # small enough for the product-space oracle: 2 * 2^8 side-respecting maps
        k22 = make_graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
        q3 = gen_hypercube(3)
        assert hom_count(q3, k22) == 512 == bf.hom_count_naive(q3, k22)

    def test_cube_into_k4_frozen(self):
        assert hom_count(gen_hypercube(3), gen_complete(4)) == HOM_Q3_K4

    def test_singleton_constraint_is_noop(self):
        q3 = gen_hypercube(3)
        g = gen_random(7, Fraction(1, 2), 11)
        assert hom_count(q3, g, {0}) == hom_count(q3, g)

    @given(pattern_and_host())
    @settings(max_examples=40, deadline=None)
    def test_matches_naive_oracle(self, hg):
        h, g = hg
        assert hom_count(h, g) == bf.hom_count_naive(h, g)

    @given(pattern_and_host(), st.data())
    @settings(max_examples=40, deadline=None)
    def test_constrained_matches_naive_oracle(self, hg, data):
        h, g = hg
        independent = [(u, v) for u in range(h.n) for v in range(u + 1, h.n)
                       if v not in h.adj[u]]
        if not independent:
            return
        r = set(data.draw(st.sampled_from(independent)))
        assert hom_count(h, g, r) == bf.hom_count_naive(h, g, r)

    def test_numpy_and_python_paths_agree(self):
        q3 = gen_hypercube(3)
        g = gen_random(25, Fraction(2, 5), 8)
        parts = q3.bipartition()
        xs = sorted(parts[0])
        y_specs = [tuple(sorted(xs.index(w) for w in q3.adj[y])) for y in sorted(parts[1])]
        assert _layered_count_numpy(4, y_specs, g) == hom_count(q3, g)

    def test_monotone_under_constraint_growth(self):
        q3 = gen_hypercube(3)
        g = gen_random(9, Fraction(1, 2), 4)
        evens = sorted(v for v in range(8) if bin(v).count("1") % 2 == 0)
        small = {evens[0], evens[1]}
        for extra in (evens[2], evens[3]):
            big = small | {extra}
            assert hom_count(q3, g, small) >= hom_count(q3, g, big)
            small = big

    def test_pattern_cap(self):
        with pytest.raises(CapabilityError):
            hom_count(make_graph(17, []), gen_complete(2))


class TestInjective:
    def test_edge_into_triangle(self):
        assert injective_hom_count(make_graph(2, [(0, 1)]), gen_complete(3)) == 6

    def test_four_cycle_self(self):
        assert injective_hom_count(gen_cycle(4), gen_cycle(4)) == 8

    def test_cube_self_is_automorphism_count(self):
        q3 = gen_hypercube(3)
        assert injective_hom_count(q3, q3) == 48

    def test_complete_host_closed_form(self):
        q3 = gen_hypercube(3)
        for n in (8, 9, 10):
            assert injective_hom_count(q3, gen_complete(n)) == math.perm(n, 8)

    @given(pattern_and_host())
    @settings(max_examples=30, deadline=None)
    def test_matches_partition_moebius_oracle(self, hg):
        h, g = hg
        expect = bf.injective_by_partition_moebius(h, g, bf.hom_count_naive)
        assert injective_hom_count(h, g) == expect

    @given(pattern_and_host())
    @settings(max_examples=30, deadline=None)
    def test_hom_splits_into_injective_quotients(self, hg):
        h, g = hg
        total = 0
        for part in bf._partitions(list(range(h.n))):
            blocks = [sorted(b) for b in part if len(b) > 1]
            try:
                q = h
                mapping = list(range(h.n))
                for block in sorted(blocks):
                    current = sorted({mapping[v] for v in block})
                    q = quotient_graph(q, current)
                    rep = min(current)
                    removed = [v for v in current if v != rep]
                    mapping = [rep if old in current else old - sum(1 for r in removed if r < old)
                               for old in mapping]
            except GraphError:
                continue
            total += bf.injective_count_naive(q, g)
        assert total == hom_count(h, g)

    def test_caps(self):
        with pytest.raises(CapabilityError):
            injective_hom_count(make_graph(11, []), gen_complete(3))

    def test_noninjective_bounded_by_pair_sum(self):
        q3 = gen_hypercube(3)
        for seed in (1, 2, 3):
            g = gen_random(6, Fraction(1, 2), seed)
            total = hom_count(q3, g)
            injective = injective_hom_count(q3, g)
            assert total - injective <= noninjective_pair_bound(q3, g)


class TestCubeKernel:
    @pytest.mark.parametrize("n,seed", [(6, 1), (9, 2), (11, 3)])
    def test_agrees_with_generic_paths(self, n, seed):
        g = gen_random(n, Fraction(3, 5), seed)
        q3 = gen_hypercube(3)
        hom, inj = count_cube_homomorphisms(g)
        assert hom == hom_count(q3, g)
        assert inj == injective_hom_count(q3, g)

    def test_complete_host(self):
        hom, inj = count_cube_homomorphisms(gen_complete(9))
        assert inj == math.perm(9, 8)

    def test_empty_host(self):
        hom, inj = count_cube_homomorphisms(make_graph(10, []))
        assert (hom, inj) == (0, 0)


class TestSidorenko:
    def test_single_edge_equality(self):
        g = gen_random(9, Fraction(1, 2), 6)
        res = sidorenko_check(make_graph(2, [(0, 1)]), g)
        assert res.holds
        assert Fraction(res.hom) == res.bound  # 2e == p n^2 exactly

    def test_cube_in_complete(self):
        assert sidorenko_check(gen_hypercube(3), gen_complete(8)).holds

    def test_cube_in_random(self):
        g = gen_random(12, Fraction(1, 2), 7)
        res = sidorenko_check(gen_hypercube(3), g)
        assert res.holds
        assert res.margin >= 1.0


class TestReflectionInequality:
    def test_cube_host_worked_triple(self):
        q3 = gen_hypercube(3)
        triples = enumerate_reflection_triples(q3)
        r = frozenset({cube_vertex("000"), cube_vertex("011")})
        t = next(t for t in triples if is_admissible(q3, t, r))
        res = check_reflection_inequality(q3, q3, t, r)
        assert res.holds

    def test_degenerate_single_edge_host(self):
        q3 = gen_hypercube(3)
        k2 = make_graph(2, [(0, 1)])
        t = enumerate_reflection_triples(q3)[0]
        for r in _admissible_sets(q3, t):
            assert check_reflection_inequality(q3, k2, t, r).holds

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_exhaustive_sweep_random_host(self, seed):
        q3 = gen_hypercube(3)
        g = gen_random(10, Fraction(1, 2), seed)
        for t in enumerate_reflection_triples(q3):
            for r in _admissible_sets(q3, t):
                res = check_reflection_inequality(q3, g, t, r)
                assert res.holds_pair and res.holds_weak, (t, r)

    def test_inadmissible_rejected(self):
        q3 = gen_hypercube(3)
        t = enumerate_reflection_triples(q3)[0]
        bad = frozenset(t.side_a)
        if is_admissible(q3, t, bad):
            bad = frozenset({min(t.side_a)})
        with pytest.raises(GraphError):
            check_reflection_inequality(q3, q3, t, bad)


def _admissible_sets(h, triple):
    from itertools import combinations
    out = []
    for part in h.bipartition():
        part = sorted(part)
        for size in range(1, len(part) + 1):
            for c in combinations(part, size):
                if is_admissible(h, triple, frozenset(c)):
                    out.append(frozenset(c))
    return out


class TestFinalInequality:
    @pytest.mark.parametrize("seed", [3, 11])
    def test_searched_certificate_bounds_hold(self, seed):
        q3 = gen_hypercube(3)
        g = gen_random(9, Fraction(2, 3), seed)
        evens = sorted(v for v in range(8) if bin(v).count("1") % 2 == 0)
        cert = certify_reflective(q3, {evens[0], evens[1]}).certificate
        res = check_final_inequality(q3, g, cert)
        assert res.holds

    def test_zero_start_trivial(self):
        q3 = gen_hypercube(3)
        host = make_graph(3, [(0, 1)])  # plus an isolated vertex
        cert = certify_reflective(q3, {0, 3}).certificate
        assert check_final_inequality(q3, host, cert).holds

    def test_invalid_certificate_is_input_error(self):
        from homreflect import ReflectionCertificate
        q3 = gen_hypercube(3)
        cert = certify_reflective(q3, {0, 3}).certificate
        bad = ReflectionCertificate(cert.start, cert.side, cert.steps[:-1])
        with pytest.raises(GraphError):
            check_final_inequality(q3, q3, bad)


class TestExponent:
    def test_cube_value(self):
        assert turan_exponent(8, 12, 4) == Fraction(13, 8)

    def test_four_cycle_value(self):
        assert turan_exponent(4, 4, 2) == Fraction(3, 2)

    @pytest.mark.parametrize("d", range(3, 11))
    def test_cube_identity(self, d):
        general, closed = cube_exponent_identity(d)
        assert general == closed

    def test_tree_like_undefined(self):
        with pytest.raises(GraphError):
            turan_exponent(4, 2, 2)


class TestSupersaturation:
    def test_empty_density(self):
        rep = supersaturation_experiment(3, 20, Fraction(0), 1, 1)
        assert rep["trials"][0]["hom"] == 0

    def test_complete_density_closed_form(self):
        rep = supersaturation_experiment(3, 12, Fraction(1), 5, 1)
        assert rep["trials"][0]["injective"] == math.perm(12, 8)

    def test_threshold_fields(self):
        rep = supersaturation_experiment(3, 16, Fraction(7, 10), 2, 2)
        assert len(rep["trials"]) == 2
        for row in rep["trials"]:
            assert row["noninjective"] == row["hom"] - row["injective"]
        assert rep["benchmark"] == Fraction(16) ** 8 * Fraction(7, 10) ** 12

    def test_dimension_cap(self):
        with pytest.raises(CapabilityError):
            supersaturation_experiment(4, 20, Fraction(1, 2), 1, 1)
