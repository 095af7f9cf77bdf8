"""Seeded instance generators."""

from __future__ import annotations

from .graph import Graph, MultiDigraph, MultiGraph, shortest_cycle
from .reduction import CnfFormula
from .rng import SplitMix64


def random_sp(ops: int, rng: SplitMix64, p_parallel: float = 0.5) -> MultiDigraph:
    """Simple SP-digraph with ``ops + 1`` arcs from random compositions.

    A parallel step whose two parts both contain the source-sink arc would
    create parallel arcs; it is turned into a series step instead.
    """

    def build(k: int):
        # returns (vertex count, arcs, has direct arc); source 0, sink 1
        if k == 0:
            return 2, [(0, 1)], True
        left_ops = rng.below(k)
        n1, a1, d1 = build(left_ops)
        n2, a2, d2 = build(k - 1 - left_ops)
        parallel = rng.random() < p_parallel and not (d1 and d2)
        if parallel:
            # child 2 keeps 0/1, inner vertices shifted past child 1
            shift = {0: 0, 1: 1}
            shift.update({v: v + n1 - 2 for v in range(2, n2)})
            arcs = a1 + [(shift[u], shift[v]) for u, v in a2]
            return n1 + n2 - 2, arcs, d1 or d2
        # series: sink of child 1 becomes a new inner vertex
        mid = n1 + n2 - 2
        m1 = {0: 0, 1: mid}
        m1.update({v: v for v in range(2, n1)})
        m2 = {0: mid, 1: 1}
        m2.update({v: v + n1 - 2 for v in range(2, n2)})
        arcs = [(m1[u], m1[v]) for u, v in a1] + [(m2[u], m2[v]) for u, v in a2]
        return n1 + n2 - 1, arcs, False

    n, arcs, _ = build(ops)
    return MultiDigraph(n, tuple(arcs))


def cycle(n: int, directed: bool = True) -> Graph:
    if n < 2:
        raise ValueError("cycle needs at least 2 vertices")
    arcs = tuple((i, (i + 1) % n) for i in range(n))
    return MultiDigraph(n, arcs) if directed else MultiGraph(n, arcs)


def random_graph(n: int, p: float, rng: SplitMix64, directed: bool = True, antiparallel: bool = False) -> Graph:
    """Each vertex pair becomes a member with probability ``p``; digraphs get
    a random orientation per pair.  With ``antiparallel`` every ordered pair
    of a digraph is drawn independently instead."""
    members = []
    if directed and antiparallel:
        for u in range(n):
            for v in range(n):
                if u != v and rng.random() < p:
                    members.append((u, v))
        return MultiDigraph(n, tuple(members))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                if directed and rng.below(2):
                    members.append((v, u))
                else:
                    members.append((u, v))
    return MultiDigraph(n, tuple(members)) if directed else MultiGraph(n, tuple(members))


def random_girth5(n: int, p: float, rng: SplitMix64, directed: bool = True, max_members: int | None = None) -> Graph:
    """Random graph with members on short cycles deleted until girth >= 5."""
    g = random_graph(n, p, rng, directed)
    members = list(g.members)
    while True:
        h = MultiDigraph(n, tuple(members)) if directed else MultiGraph(n, tuple(members))
        cyc = shortest_cycle(h)
        if (cyc is None or len(cyc) >= 5) and (max_members is None or len(members) <= max_members):
            return h
        if cyc is None or len(cyc) >= 5:
            members.pop(rng.below(len(members)))
            continue
        # drop a random member on the short cycle
        k = rng.below(len(cyc))
        a, b = cyc[k], cyc[(k + 1) % len(cyc)]
        idx = next(i for i, (u, v) in enumerate(members) if {u, v} == {a, b})
        members.pop(idx)


def random_3sat(n: int, m: int, rng: SplitMix64) -> CnfFormula:
    clauses = []
    for _ in range(m):
        vs = rng.sample(range(1, n + 1), 3)
        clauses.append(tuple(v if rng.below(2) else -v for v in vs))
    return CnfFormula(n, tuple(clauses))
