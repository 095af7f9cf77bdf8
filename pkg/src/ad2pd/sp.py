"""Series-parallel digraphs: recognition, feasible configurations and extraction.

A configuration (a, b, c) of a node with source s and sink t records how many
out-arcs of s (a) and in-arcs of t (b) are left free by a partial
decomposition, with c = 1 when the arc (s, t) exists and c = 2 when the
partial decomposition contains an s-t path of length 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .graph import Decomposition, MultiDigraph, TwoPath, make_two_path

Config = tuple[int, int, int]


class NotSeriesParallel(ValueError):
    pass


@dataclass(eq=False)
class SPNode:
    kind: str  # "leaf", "series" or "parallel"
    source: int
    sink: int
    arc: int | None = None
    left: "SPNode | None" = None
    right: "SPNode | None" = None
    arcs: tuple[int, ...] = field(default=(), repr=False)

    def __str__(self) -> str:
        if self.kind == "leaf":
            return "e"
        tag = "s" if self.kind == "series" else "p"
        return f"{tag}({self.left},{self.right})"

    def nodes(self) -> Iterator["SPNode"]:
        """Post-order traversal."""
        stack: list[tuple[SPNode, bool]] = [(self, False)]
        while stack:
            node, seen = stack.pop()
            if node.kind == "leaf" or seen:
                yield node
                continue
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))


def _leaf(d: MultiDigraph, i: int) -> SPNode:
    u, v = d.arcs[i]
    return SPNode("leaf", u, v, arc=i, arcs=(i,))


def _join(kind: str, a: SPNode, b: SPNode) -> SPNode:
    sink = b.sink if kind == "series" else a.sink
    return SPNode(kind, a.source, sink, left=a, right=b, arcs=tuple(sorted(a.arcs + b.arcs)))


def recognize_sp(d: MultiDigraph) -> SPNode:
    """SP-decomposition tree of ``d`` by repeated series/parallel reduction.

    Raises NotSeriesParallel when the reductions stall before a single
    source-to-sink arc remains.
    """
    if not d.arcs:
        raise NotSeriesParallel("no arcs")
    touched = {v for arc in d.arcs for v in arc}
    if len(touched) != d.n:
        raise NotSeriesParallel("isolated vertices")
    indeg = [0] * d.n
    outdeg = [0] * d.n
    for u, v in d.arcs:
        outdeg[u] += 1
        indeg[v] += 1
    sources = [v for v in range(d.n) if indeg[v] == 0]
    sinks = [v for v in range(d.n) if outdeg[v] == 0]
    if len(sources) != 1 or len(sinks) != 1:
        raise NotSeriesParallel(f"{len(sources)} sources and {len(sinks)} sinks")
    s, t = sources[0], sinks[0]

    # virtual edges: id -> node; adjacency keyed by endpoint
    edges: dict[int, SPNode] = {i: _leaf(d, i) for i in range(len(d.arcs))}
    out: list[set[int]] = [set() for _ in range(d.n)]
    inc: list[set[int]] = [set() for _ in range(d.n)]
    for i, (u, v) in enumerate(d.arcs):
        out[u].add(i)
        inc[v].add(i)
    next_id = len(d.arcs)

    def add(node: SPNode) -> None:
        nonlocal next_id
        edges[next_id] = node
        out[node.source].add(next_id)
        inc[node.sink].add(next_id)
        next_id += 1

    def remove(eid: int) -> SPNode:
        node = edges.pop(eid)
        out[node.source].discard(eid)
        inc[node.sink].discard(eid)
        return node

    changed = True
    while changed and len(edges) > 1:
        changed = False
        # parallel bundles
        for u in range(d.n):
            by_head: dict[int, list[int]] = {}
            for eid in sorted(out[u]):
                by_head.setdefault(edges[eid].sink, []).append(eid)
            for group in by_head.values():
                if len(group) > 1:
                    node = remove(group[0])
                    for eid in group[1:]:
                        node = _join("parallel", node, remove(eid))
                    add(node)
                    changed = True
        # series chains through inner vertices of in/out degree 1
        for w in range(d.n):
            if w in (s, t) or len(inc[w]) != 1 or len(out[w]) != 1:
                continue
            (e1,), (e2,) = inc[w], out[w]
            if edges[e1].source == w:
                continue
            add(_join("series", remove(e1), remove(e2)))
            changed = True
    if len(edges) != 1:
        raise NotSeriesParallel("reduction stalled")
    (root,) = edges.values()
    if (root.source, root.sink) != (s, t):
        raise NotSeriesParallel("reduction stalled")
    return root


# -- configuration algebra ----------------------------------------------------

# Each series row: (name, da, db, c, gap, c1, c2) where the result is
# (a1 - da, b2 - db, c), gap = b1 - a2, and c1/c2 are "1" or "not1".
SERIES_ROWS = (
    ("EE", 0, 0, 0, 0, "not1", "not1"),
    ("FE", 0, 0, 0, 1, "1", "not1"),
    ("EF", 0, 0, 0, -1, "not1", "1"),
    ("FF", 0, 0, 0, 0, "1", "1"),
    ("CE", 1, 0, 0, 0, "1", "not1"),
    ("CF", 1, 0, 0, -1, "1", "1"),
    ("EC", 0, 1, 0, 0, "not1", "1"),
    ("FC", 0, 1, 0, 1, "1", "1"),
    ("CC", 1, 1, 0, 0, "1", "1"),
    ("CC'", 1, 1, 2, 0, "1", "1"),
)


def _flag_ok(c: int, want: str) -> bool:
    return c == 1 if want == "1" else c != 1


def series_rows(f1: Config, f2: Config) -> Iterator[tuple[str, Config]]:
    """Every (row, result) obtainable from one pair of child configurations."""
    a1, b1, c1 = f1
    a2, b2, c2 = f2
    if abs(b1 - a2) > 1:
        return
    for name, da, db, c, gap, w1, w2 in SERIES_ROWS:
        if b1 - a2 != gap or not _flag_ok(c1, w1) or not _flag_ok(c2, w2):
            continue
        if name == "CC" and b1 <= 1:
            continue
        yield name, (a1 - da, b2 - db, c)


def series_combine(f1, f2) -> set[Config]:
    out: set[Config] = set()
    for x in f1:
        for y in f2:
            out.update(cfg for _, cfg in series_rows(x, y))
    return out


def parallel_combine(f1, f2) -> set[Config]:
    out: set[Config] = set()
    for a1, b1, c1 in f1:
        for a2, b2, c2 in f2:
            if c1 == 0 or c2 == 0:
                out.add((a1 + a2, b1 + b2, max(c1, c2)))
    return out


def feasible_configs(root: SPNode) -> dict[SPNode, list[Config]]:
    """Feasible configurations of every tree node, as sorted lists."""
    pi: dict[SPNode, list[Config]] = {}
    for node in root.nodes():
        if node.kind == "leaf":
            res = {(1, 1, 1)}
        elif node.kind == "series":
            res = series_combine(pi[node.left], pi[node.right])
        else:
            res = parallel_combine(pi[node.left], pi[node.right])
        pi[node] = sorted(res)
    return pi


def extract_decomposition(d: MultiDigraph, node: SPNode, target: Config, pi) -> Decomposition:
    """Partial decomposition of ``node``'s digraph realizing ``target``."""
    if target not in pi[node]:
        raise ValueError(f"configuration not feasible: {target}")
    if node.kind == "leaf":
        return []
    left, right = node.left, node.right
    if node.kind == "parallel":
        for x in pi[left]:
            for y in pi[right]:
                if (x[2] == 0 or y[2] == 0) and (x[0] + y[0], x[1] + y[1], max(x[2], y[2])) == target:
                    return extract_decomposition(d, left, x, pi) + extract_decomposition(d, right, y, pi)
        raise AssertionError("parallel children not found")
    for x in pi[left]:
        for y in pi[right]:
            for row, cfg in series_rows(x, y):
                if cfg == target:
                    return _series_join(d, node, row, x, y, pi)
    raise AssertionError("series children not found")


def _free(d: MultiDigraph, node: SPNode, paths: Decomposition) -> tuple[list[int], list[int]]:
    used = {e for p in paths for e in p.members}
    free = [e for e in node.arcs if e not in used]
    s_free = [e for e in free if d.arcs[e][0] == node.source]
    t_free = [e for e in free if d.arcs[e][1] == node.sink]
    return s_free, t_free


def _series_join(d, node, row, x, y, pi) -> Decomposition:
    left, right = node.left, node.right
    x1 = extract_decomposition(d, left, x, pi)
    x2 = extract_decomposition(d, right, y, pi)
    _, t1 = _free(d, left, x1)
    s2, _ = _free(d, right, x2)
    u1 = next((e for e in t1 if d.arcs[e][0] == left.source), None)
    u2 = next((e for e in s2 if d.arcs[e][1] == right.sink), None)
    # row letters: E = no arc, F = stays free, C = covered by a cross path
    left_covered = row[0] == "C"
    right_covered = row[1] == "C"
    t_star = [e for e in t1 if e != u1 or left_covered]
    s_star = [e for e in s2 if e != u2 or right_covered]
    assert len(t_star) == len(s_star), (row, t_star, s_star)
    pairs: list[tuple[int, int]] = []
    if row == "CC'":
        pairs.append((u1, u2))
        t_star.remove(u1)
        s_star.remove(u2)
    elif row == "CC":
        # u1 and u2 must not meet, else the result would be an s-t path
        t_star.remove(u1)
        s_star.remove(u2)
        pairs.append((u1, s_star.pop(0)))
        pairs.append((t_star.pop(0), u2))
    pairs.extend(zip(sorted(t_star), sorted(s_star)))
    cross = []
    for e, f in pairs:
        p = make_two_path(d, e, f)
        assert p is not None
        cross.append(p)
    return x1 + x2 + cross


def solve_sp(d: MultiDigraph) -> Decomposition | None:
    """Decomposition of a simple SP-digraph, or None when none exists."""
    if not d.is_simple():
        raise NotSeriesParallel("digraph has parallel arcs; use the exact solver")
    root = recognize_sp(d)
    pi = feasible_configs(root)
    for target in ((0, 0, 0), (0, 0, 2)):
        if target in pi[root]:
            return sorted(extract_decomposition(d, root, target, pi))
    return None
