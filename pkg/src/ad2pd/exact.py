"""Exponential-time exact solvers used as ground truth.

All three searches share one shape: pick the uncovered member with the fewest
remaining candidate paths, try each candidate, recurse.  Path sets are Python
ints used as bitsets over the enumerated 2-paths.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .conflict import conflict_adjacency
from .graph import Decomposition, Graph, TwoPath, WeightMap, enumerate_two_paths


class BudgetExhausted(RuntimeError):
    def __init__(self, nodes: int, seconds: float):
        super().__init__(f"budget exhausted after {nodes} nodes, {seconds:.1f}s")
        self.nodes = nodes
        self.seconds = seconds


class NoPartition(ValueError):
    """The members cannot be split into 2-paths at all."""


@dataclass
class SearchBudget:
    node_limit: int | None = 10**8
    time_limit: float | None = 300.0

    def start(self) -> "_Meter":
        return _Meter(self)


class _Meter:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.t0 = time.monotonic()

    def tick(self) -> None:
        self.nodes += 1
        b = self.budget
        if b.node_limit is not None and self.nodes > b.node_limit:
            raise BudgetExhausted(self.nodes, time.monotonic() - self.t0)
        if b.time_limit is not None and self.nodes % 1024 == 0:
            elapsed = time.monotonic() - self.t0
            if elapsed > b.time_limit:
                raise BudgetExhausted(self.nodes, elapsed)


class _Instance:
    def __init__(self, g: Graph):
        self.g = g
        self.m = len(g.members)
        self.paths: list[TwoPath] = enumerate_two_paths(g)
        self.conflict = [0] * len(self.paths)
        for i, nbrs in enumerate(conflict_adjacency(self.paths)):
            mask = 1 << i
            for j in nbrs:
                mask |= 1 << j
            self.conflict[i] = mask
        self.by_member = [0] * self.m
        for i, p in enumerate(self.paths):
            self.by_member[p.first] |= 1 << i
            self.by_member[p.second] |= 1 << i

    def pick(self, uncovered: int, alive: int) -> tuple[int, int]:
        """(member, candidate mask) with the fewest live candidates."""
        best_e, best_mask, best_n = -1, 0, 1 << 62
        rest = uncovered
        while rest:
            e = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            mask = self.by_member[e] & alive
            k = mask.bit_count()
            if k < best_n:
                best_e, best_mask, best_n = e, mask, k
                if k <= 1:
                    break
        return best_e, best_mask


def _bits(mask: int):
    while mask:
        i = (mask & -mask).bit_length() - 1
        yield i
        mask &= mask - 1


def solve_exact(g: Graph, budget: SearchBudget | None = None) -> Decomposition | None:
    """A decomposition of ``g`` or None; raises BudgetExhausted."""
    inst = _Instance(g)
    if inst.m % 2:
        return None
    meter = (budget or SearchBudget()).start()
    chosen: list[int] = []

    def run(uncovered: int, alive: int) -> bool:
        meter.tick()
        if not uncovered:
            return True
        e, cands = inst.pick(uncovered, alive)
        for i in _bits(cands):
            p = inst.paths[i]
            chosen.append(i)
            if run(uncovered & ~(1 << p.first) & ~(1 << p.second), alive & ~inst.conflict[i]):
                return True
            chosen.pop()
        return False

    all_paths = (1 << len(inst.paths)) - 1
    if run((1 << inst.m) - 1, all_paths):
        return sorted(inst.paths[i] for i in chosen)
    return None


def solve_weighted(
    g: Graph, w: WeightMap, budget: SearchBudget | None = None
) -> tuple[Decomposition, float] | None:
    """Minimum-cost decomposition (missing weights are 0), or None."""
    inst = _Instance(g)
    if inst.m % 2:
        return None
    cost = [float(w.get(p.key, 0.0)) for p in inst.paths]
    meter = (budget or SearchBudget()).start()
    best: list = [None, float("inf")]
    chosen: list[int] = []

    def bound(uncovered: int, alive: int) -> float | None:
        total = 0.0
        for e in _bits(uncovered):
            mask = inst.by_member[e] & alive
            if not mask:
                return None
            total += min(cost[i] for i in _bits(mask)) / 2
        return total

    def run(uncovered: int, alive: int, spent: float) -> None:
        meter.tick()
        if not uncovered:
            if spent < best[1]:
                best[0], best[1] = list(chosen), spent
            return
        lb = bound(uncovered, alive)
        if lb is None or spent + lb >= best[1]:
            return
        e, cands = inst.pick(uncovered, alive)
        for i in sorted(_bits(cands), key=lambda i: (cost[i], i)):
            p = inst.paths[i]
            chosen.append(i)
            run(uncovered & ~(1 << p.first) & ~(1 << p.second), alive & ~inst.conflict[i], spent + cost[i])
            chosen.pop()

    run((1 << inst.m) - 1, (1 << len(inst.paths)) - 1, 0.0)
    if best[0] is None:
        return None
    return sorted(inst.paths[i] for i in best[0]), best[1]


def solve_min_conflicts(g: Graph, budget: SearchBudget | None = None) -> tuple[Decomposition, int]:
    """A partition into 2-paths with the fewest conflicting pairs.

    Raises NoPartition when no partition into 2-paths exists.
    """
    inst = _Instance(g)
    if inst.m % 2:
        raise NoPartition("odd number of members")
    # paths sharing a member are excluded outright, others only cost
    sharing = [inst.by_member[p.first] | inst.by_member[p.second] for p in inst.paths]
    meter = (budget or SearchBudget()).start()
    best: list = [None, 1 << 62]
    chosen: list[int] = []

    def run(uncovered: int, alive: int, taken: int, score: int) -> None:
        meter.tick()
        if score >= best[1]:
            return
        if not uncovered:
            best[0], best[1] = list(chosen), score
            return
        e, cands = inst.pick(uncovered, alive)
        if not cands:
            return
        scored = sorted(((inst.conflict[i] & taken).bit_count(), i) for i in _bits(cands))
        for extra, i in scored:
            if best[1] == 0:
                return
            p = inst.paths[i]
            chosen.append(i)
            run(
                uncovered & ~(1 << p.first) & ~(1 << p.second),
                alive & ~sharing[i],
                taken | (1 << i),
                score + extra,
            )
            chosen.pop()

    run((1 << inst.m) - 1, (1 << len(inst.paths)) - 1, 0, 0)
    if best[0] is None:
        raise NoPartition("no partition into 2-paths")
    return sorted(inst.paths[i] for i in best[0]), best[1]
