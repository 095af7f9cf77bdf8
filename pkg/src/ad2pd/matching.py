"""Perfect matching for the girth-5 fast path and exact stable-set search."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .conflict import ConflictGraph
from .graph import Decomposition, Graph, MultiGraph, TwoPath, WeightMap, make_two_path, shortest_cycle


class PreconditionError(ValueError):
    """A solver was called on an input outside its domain."""

    def __init__(self, message: str, evidence=None):
        super().__init__(message)
        self.evidence = evidence


def perfect_matching(g: MultiGraph) -> list[tuple[int, int]] | None:
    """Perfect matching of ``g`` as sorted vertex pairs, or None.

    Uses the blossom implementation from networkx (maximum cardinality); a
    matching is perfect iff it covers all ``g.n`` vertices.
    """
    if g.n % 2:
        return None
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(sorted({(min(u, v), max(u, v)) for u, v in g.edges}))
    m = nx.max_weight_matching(h, maxcardinality=True)
    if 2 * len(m) != g.n:
        return None
    return sorted((min(u, v), max(u, v)) for u, v in m)


def solve_girth5(g: Graph) -> Decomposition | None:
    """Decomposition via a perfect matching of the line graph, or None.

    At girth 5 or more any two 2-paths share at most one vertex unless they
    share a member, so every 2-path partition is conflict-free.
    """
    cycle = shortest_cycle(g)
    if cycle is not None and len(cycle) < 5:
        raise PreconditionError(f"girth {len(cycle)} < 5, cycle {cycle}", cycle)
    m = len(g.members)
    if m == 0:
        return []
    from .conflict import build_line_graph

    lg = build_line_graph(g)
    line = MultiGraph(m, tuple(p.members for p in lg.edges))
    pairs = perfect_matching(line)
    if pairs is None:
        return None
    out = []
    for e, f in pairs:
        p = make_two_path(g, e, f)
        assert p is not None
        out.append(p)
    return sorted(out)


@dataclass
class _Search:
    adj: list[int]  # neighbourhood bitmasks
    best: int = 0
    best_size: int = 0
    target: int | None = None
    use_cliques: bool = False

    def bound(self, cand: int) -> int:
        if not self.use_cliques:
            return cand.bit_count()
        # greedy clique cover of the candidate set
        count = 0
        rest = cand
        while rest:
            v = (rest & -rest).bit_length() - 1
            clique = 1 << v
            pool = rest & self.adj[v]
            while pool:
                u = (pool & -pool).bit_length() - 1
                clique |= 1 << u
                pool &= self.adj[u]
            rest &= ~clique
            count += 1
        return count

    def done(self) -> bool:
        return self.target is not None and self.best_size >= self.target

    def run(self, chosen: int, size: int, cand: int) -> None:
        if size > self.best_size:
            self.best, self.best_size = chosen, size
            if self.done():
                return
        if not cand or size + self.bound(cand) <= self.best_size:
            return
        # vertices with no candidate neighbours can always be taken
        v = _max_degree(cand, self.adj)
        if not (self.adj[v] & cand):
            free = cand
            self.run(chosen | free, size + free.bit_count(), 0)
            return
        self.run(chosen | (1 << v), size + 1, cand & ~self.adj[v] & ~(1 << v))
        if self.done():
            return
        self.run(chosen, size, cand & ~(1 << v))


def _max_degree(cand: int, adj: list[int]) -> int:
    best_v, best_d = -1, -1
    rest = cand
    while rest:
        v = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        d = (adj[v] & cand).bit_count()
        if d > best_d:
            best_v, best_d = v, d
    return best_v


def _bitmasks(h: ConflictGraph) -> list[int]:
    masks = []
    for nbrs in h.adj:
        m = 0
        for j in nbrs:
            m |= 1 << j
        masks.append(m)
    return masks


def _indices(mask: int) -> list[int]:
    out = []
    while mask:
        v = (mask & -mask).bit_length() - 1
        out.append(v)
        mask &= mask - 1
    return out


def max_stable_set(h: ConflictGraph, target: int | None = None, clique_bound: bool = False) -> list[TwoPath]:
    """A maximum stable set of ``h``; stops early once ``target`` is reached."""
    s = _Search(_bitmasks(h), target=target, use_cliques=clique_bound)
    s.run(0, 0, (1 << len(h.paths)) - 1)
    return [h.paths[i] for i in _indices(s.best)]


def max_weight_stable_set(h: ConflictGraph, w: WeightMap, required_size: int) -> tuple[list[TwoPath], float] | None:
    """Minimum-weight stable set of exactly ``required_size`` vertices, or None.

    Missing weights count as 0.
    """
    adj = _bitmasks(h)
    cost = [float(w.get(p.key, 0.0)) for p in h.paths]
    n = len(h.paths)
    best: list = [None, float("inf")]

    def lower(cand: int, need: int) -> float:
        vals = sorted(cost[i] for i in _indices(cand))
        return sum(vals[:need])

    def run(chosen: int, size: int, total: float, cand: int) -> None:
        if size == required_size:
            if total < best[1]:
                best[0], best[1] = chosen, total
            return
        need = required_size - size
        if cand.bit_count() < need:
            return
        if total + lower(cand, need) >= best[1]:
            return
        v = (cand & -cand).bit_length() - 1
        run(chosen | (1 << v), size + 1, total + cost[v], cand & ~adj[v] & ~(1 << v))
        run(chosen, size, total, cand & ~(1 << v))

    if required_size < 0 or required_size > n:
        return None
    run(0, 0, 0.0, (1 << n) - 1)
    if best[0] is None:
        return None
    return [h.paths[i] for i in _indices(best[0])], best[1]
