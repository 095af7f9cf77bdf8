import itertools

import pytest

from ad2pd.conflict import build_conflict_graph
from ad2pd.exact import (
    BudgetExhausted,
    NoPartition,
    SearchBudget,
    solve_exact,
    solve_min_conflicts,
    solve_weighted,
)
from ad2pd.gen import random_graph
from ad2pd.graph import in_conflict, verify_decomposition
from ad2pd.matching import max_stable_set
from ad2pd.rng import SplitMix64

from conftest import dcycle, digraph, ucycle
from oracles import all_decompositions, has_decomposition, min_conflict_value


def _samples(seed, count, n_max=7):
    rng = SplitMix64(seed)
    for i in range(count):
        kind = i % 3
        yield random_graph(rng.between(3, n_max), 0.4, rng, directed=kind != 0, antiparallel=kind == 2)


class TestExact:
    def test_examples(self):
        assert solve_exact(dcycle(4)) is None
        assert solve_exact(dcycle(3)) is None
        assert len(solve_exact(dcycle(6))) == 3
        assert solve_exact(digraph(n=0)) == []

    def test_against_oracle(self):
        for g in _samples(31, 150):
            if len(g.members) > 14:
                continue
            found = solve_exact(g)
            assert (found is not None) == has_decomposition(list(g.members), g.directed)
            if found is not None:
                assert verify_decomposition(g, found) is None

    def test_agrees_with_stable_set(self):
        for g in _samples(33, 60):
            if len(g.members) % 2:
                continue
            h = build_conflict_graph(g)
            if len(h) > 40:
                continue
            s = max_stable_set(h, target=len(g.members) // 2)
            assert (solve_exact(g) is not None) == (len(s) == len(g.members) // 2)

    def test_budget(self):
        with pytest.raises(BudgetExhausted) as err:
            solve_exact(ucycle(20), SearchBudget(node_limit=3))
        assert err.value.nodes > 3


class TestWeighted:
    def test_against_brute_force(self):
        rng = SplitMix64(41)
        for g in _samples(43, 80, n_max=6):
            if len(g.members) > 12:
                continue
            h = build_conflict_graph(g)
            w = {p.key: float(rng.between(0, 9)) for p in h.paths}
            costs = [sum(w[tuple(sorted(pair))] for pair, _ in d)
                     for d in all_decompositions(list(g.members), g.directed)]
            found = solve_weighted(g, w)
            if not costs:
                assert found is None
            else:
                paths, cost = found
                assert cost == pytest.approx(min(costs))
                assert verify_decomposition(g, paths) is None
                assert sum(w[p.key] for p in paths) == pytest.approx(cost)

    def test_odd(self):
        assert solve_weighted(dcycle(5), {}) is None


class TestMinConflicts:
    def test_examples(self):
        assert solve_min_conflicts(dcycle(4))[1] == 1
        assert solve_min_conflicts(dcycle(6))[1] == 0
        assert solve_min_conflicts(digraph((0, 1), (1, 2)))[1] == 0

    def test_no_partition(self):
        with pytest.raises(NoPartition):
            solve_min_conflicts(dcycle(3))
        with pytest.raises(NoPartition):
            solve_min_conflicts(digraph((0, 1), (2, 3)))

    def test_against_oracle(self):
        for g in _samples(47, 90, n_max=6):
            if len(g.members) > 12:
                continue
            expect = min_conflict_value(list(g.members), g.directed)
            if expect is None:
                with pytest.raises(NoPartition):
                    solve_min_conflicts(g)
                continue
            paths, value = solve_min_conflicts(g)
            assert value == expect
            assert value == sum(in_conflict(p, q) for p, q in itertools.combinations(paths, 2))
            assert sorted(e for p in paths for e in p.members) == list(range(len(g.members)))
            assert (value == 0) == has_decomposition(list(g.members), g.directed)
