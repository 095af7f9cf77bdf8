import pytest

from ad2pd.gen import random_sp
from ad2pd.graph import verify_decomposition
from ad2pd.rng import SplitMix64
from ad2pd.sp import (
    NotSeriesParallel,
    extract_decomposition,
    feasible_configs,
    parallel_combine,
    recognize_sp,
    series_combine,
    solve_sp,
)

from conftest import dcycle, digraph
from oracles import brute_force_configs, has_decomposition

DIAMOND = digraph((0, 1), (0, 2), (1, 3), (2, 3))
PATH4 = digraph((0, 1), (1, 2), (2, 3), (3, 4))


def _sp_samples(seed, count, max_ops):
    rng = SplitMix64(seed)
    for i in range(count):
        yield random_sp(rng.between(0, max_ops), rng, p_parallel=(0.5, 0.3, 0.2)[i % 3])


class TestRecognition:
    def test_single_arc(self):
        root = recognize_sp(digraph((0, 1)))
        assert root.kind == "leaf" and (root.source, root.sink) == (0, 1)

    def test_diamond(self):
        root = recognize_sp(DIAMOND)
        assert str(root) == "p(s(e,e),s(e,e))" and (root.source, root.sink) == (0, 3)

    def test_series_child_order(self):
        root = recognize_sp(digraph((0, 1), (1, 2)))
        assert root.kind == "series" and root.left.sink == root.right.source == 1

    @pytest.mark.parametrize("g", [
        dcycle(3),
        digraph((0, 1), (2, 1)),                    # two sources
        digraph((0, 1), (1, 2), (2, 3), (0, 2), (1, 3)),  # Wheatstone bridge
        digraph((0, 1), n=3),                        # isolated vertex
        digraph(n=1),
    ])
    def test_rejects(self, g):
        with pytest.raises(NotSeriesParallel):
            recognize_sp(g)

    def test_generator_output_is_sp(self):
        for g in _sp_samples(1, 100, 25):
            root = recognize_sp(g)
            assert sorted(root.arcs) == list(range(len(g.arcs)))


class TestCombine:
    def test_examples(self):
        assert series_combine({(1, 1, 1)}, {(1, 1, 1)}) == {(0, 0, 2), (1, 1, 0)}
        assert parallel_combine({(0, 0, 2)}, {(0, 0, 2)}) == set()
        assert parallel_combine({(1, 1, 1)}, {(1, 1, 0)}) == {(2, 2, 1)}

    def test_empty_sets(self):
        assert series_combine(set(), {(1, 1, 1)}) == set()
        assert parallel_combine({(1, 1, 1)}, set()) == set()

    def test_diamond_infeasible(self):
        root = recognize_sp(DIAMOND)
        pi = feasible_configs(root)
        assert pi[root] == [(1, 1, 2), (2, 2, 0)]
        assert solve_sp(DIAMOND) is None

    def test_path4(self):
        root = recognize_sp(PATH4)
        assert feasible_configs(root)[root] == [(0, 0, 0), (1, 1, 0)]


class TestAgainstBruteForce:
    def test_every_node(self):
        for g in _sp_samples(7, 60, 11):
            root = recognize_sp(g)
            pi = feasible_configs(root)
            for node in root.nodes():
                expect = brute_force_configs(g.arcs, node.arcs, node.source, node.sink)
                assert set(pi[node]) == expect, (str(node), node.arcs)

    def test_bounds_and_flag(self):
        for g in _sp_samples(11, 60, 20):
            root = recognize_sp(g)
            pi = feasible_configs(root)
            for node in root.nodes():
                out_s = sum(1 for e in node.arcs if g.arcs[e][0] == node.source)
                in_t = sum(1 for e in node.arcs if g.arcs[e][1] == node.sink)
                direct = any(g.arcs[e] == (node.source, node.sink) for e in node.arcs)
                for a, b, c in pi[node]:
                    assert 0 <= a <= out_s and 0 <= b <= in_t
                    assert (c == 1) == direct


class TestExtraction:
    def test_every_feasible_config_extracts(self):
        for g in _sp_samples(13, 60, 14):
            root = recognize_sp(g)
            pi = feasible_configs(root)
            for node in root.nodes():
                for cfg in pi[node]:
                    paths = extract_decomposition(g, node, cfg, pi)
                    used = [e for p in paths for e in p.members]
                    assert len(used) == len(set(used)) and set(used) <= set(node.arcs)
                    free = set(node.arcs) - set(used)
                    a = sum(1 for e in free if g.arcs[e][0] == node.source)
                    b = sum(1 for e in free if g.arcs[e][1] == node.sink)
                    # every free arc touches the source or the sink
                    assert all(node.source in g.arcs[e] or node.sink in g.arcs[e] for e in free)
                    assert (a, b) == cfg[:2]

    def test_infeasible_config_raises(self):
        root = recognize_sp(PATH4)
        pi = feasible_configs(root)
        with pytest.raises(ValueError, match="configuration not feasible"):
            extract_decomposition(PATH4, root, (0, 0, 2), pi)

    def test_solve_against_oracle(self):
        for g in _sp_samples(17, 80, 13):
            found = solve_sp(g)
            assert (found is not None) == has_decomposition(list(g.arcs), True)
            if found is not None:
                assert verify_decomposition(g, found) is None

    def test_refuses_parallel_arcs(self):
        with pytest.raises(NotSeriesParallel):
            solve_sp(digraph((0, 1), (0, 1)))
