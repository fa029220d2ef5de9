import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hassa import (
    GsetParseError,
    WeightedGraph,
    brute_force_maxcut,
    cut_value,
    generate_king,
    parse_gset,
    random_graph,
    read_gset,
    save_gset,
    toroidal_grid,
    write_gset,
)

from conftest import gset_path


class TestParse:
    def test_single_edge(self):
        g = parse_gset("2 1\n1 2 1\n")
        assert g == WeightedGraph(2, ((0, 1, 1),))

    def test_two_edges_with_negative_weight(self):
        g = parse_gset("3 2\n1 2 1\n2 3 -1\n")
        assert g.edges == ((0, 1, 1), (1, 2, -1))

    def test_reads_from_stream_and_tolerates_blank_lines(self):
        g = parse_gset(io.StringIO("\n3 1\n\n3 1 -2\n"))
        assert g.edges == ((0, 2, -2),)

    @pytest.mark.parametrize(
        "text,line",
        [
            ("", 0),
            ("3\n", 1),
            ("3 1\n1 4 1\n", 2),
            ("3 1\n0 2 1\n", 2),
            ("3 1\n2 2 1\n", 2),
            ("3 2\n1 2 1\n2 1 1\n", 3),
            ("3 1\n1 2 0\n", 2),
            ("3 1\n1 2 x\n", 2),
            ("3 1\n1 2\n", 2),
            ("3 2\n1 2 1\n", 2),
            ("3 1\n1 2 1\n2 3 1\n", 3),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(GsetParseError) as err:
            parse_gset(text)
        assert err.value.line_no == line
        assert f"line {line}" in str(err.value)

    def test_g11_fixture(self):
        path = gset_path("G11")
        if path is None:
            pytest.skip("G11 not available; put it in tests/data/gset or set GSET_DIR")
        g = read_gset(path)
        assert (g.n_vertices, g.n_edges) == (800, 1600)
        assert set(np.abs(g.edge_arrays[2])) == {1}


class TestWrite:
    def test_single_edge(self):
        assert write_gset(WeightedGraph(2, ((0, 1, 1),))) == "2 1\n1 2 1\n"

    def test_no_edges(self):
        assert write_gset(WeightedGraph(3)) == "3 0\n"

    def test_roundtrip_random_graphs(self):
        for seed in range(100):
            n = 2 + seed % 30
            g = random_graph(n, 3 * n, seed=seed, weights=(-3, -1, 1, 2))
            assert parse_gset(write_gset(g)) == g

    @settings(max_examples=50, deadline=None)
    @given(st.integers(3, 7), st.integers(3, 7), st.integers(0, 2**31))
    def test_roundtrip_king(self, rows, cols, seed):
        g = generate_king(rows, cols, seed)
        assert parse_gset(write_gset(g)) == g

    def test_file_roundtrip(self, tmp_path):
        g = toroidal_grid(3, 4, 2)
        save_gset(g, tmp_path / "t.txt")
        assert read_gset(tmp_path / "t.txt") == g


class TestGenerators:
    def test_king_800(self):
        g = generate_king(20, 40, 7)
        assert (g.n_vertices, g.n_edges) == (800, 3200)
        assert np.all(g.degrees() == 8)
        assert set(g.edge_arrays[2]) == {-1, 1}

    def test_king_3x3(self):
        g = generate_king(3, 3, 0)
        assert (g.n_vertices, g.n_edges) == (9, 36)
        assert np.all(g.degrees() == 8)

    def test_king_is_deterministic(self):
        assert generate_king(6, 9, 42) == generate_king(6, 9, 42)
        assert generate_king(6, 9, 42) != generate_king(6, 9, 43)

    def test_king_too_small(self):
        with pytest.raises(ValueError):
            generate_king(2, 5, 0)

    def test_king_weights_are_roughly_balanced(self):
        w = generate_king(20, 40, 1).edge_arrays[2]
        assert abs(w.mean()) < 0.1

    def test_torus(self):
        g = toroidal_grid(8, 100, 11)
        assert (g.n_vertices, g.n_edges) == (800, 1600)
        assert np.all(g.degrees() == 4)

    def test_random_graph_respects_degree_cap(self):
        g = random_graph(12, 30, seed=1, max_degree=4)
        assert g.degrees().max() <= 4


class TestBruteForce:
    def test_triangle(self):
        assert brute_force_maxcut(WeightedGraph(3, ((0, 1, 1), (1, 2, 1), (0, 2, 1))))[0] == 2

    def test_single_negative_edge(self):
        assert brute_force_maxcut(WeightedGraph(2, ((0, 1, -1),)))[0] == 0

    def test_path_of_four(self):
        assert brute_force_maxcut(WeightedGraph(4, ((0, 1, 1), (1, 2, 1), (2, 3, 1))))[0] == 3

    def test_returned_state_achieves_value(self):
        g = random_graph(11, 25, seed=4)
        best, state = brute_force_maxcut(g)
        assert cut_value(g, state) == best

    def test_dominates_random_states(self):
        rng = np.random.default_rng(9)
        for seed in range(10):
            g = random_graph(10, 18, seed=seed)
            best, _ = brute_force_maxcut(g)
            for _ in range(100):
                assert cut_value(g, rng.choice([-1, 1], size=10)) <= best

    def test_refuses_large_graphs(self):
        with pytest.raises(ValueError):
            brute_force_maxcut(WeightedGraph(30))
