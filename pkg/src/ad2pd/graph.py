"""Multigraphs, 2-paths, girth and certificate checking.

Graphs are immutable.  Arc/edge ids are positional, so a decomposition can be
written out as pairs of member ids and read back against the same file.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union


class ParseError(ValueError):
    """Malformed graph, decomposition or weight file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class MultiDigraph:
    n: int
    arcs: tuple[tuple[int, int], ...]

    directed = True

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple((int(u), int(v)) for u, v in self.arcs))
        for i, (u, v) in enumerate(self.arcs):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc {i} ({u},{v}) has a vertex outside [0, {self.n})")
            if u == v:
                raise ValueError(f"arc {i} is a self-loop at {u}")

    @property
    def members(self) -> tuple[tuple[int, int], ...]:
        return self.arcs

    def __len__(self) -> int:
        return len(self.arcs)

    def out_arcs(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, _) in enumerate(self.arcs):
            out[u].append(i)
        return out

    def in_arcs(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (_, v) in enumerate(self.arcs):
            inc[v].append(i)
        return inc

    def is_simple(self) -> bool:
        return len(set(self.arcs)) == len(self.arcs)

    def reversed(self) -> "MultiDigraph":
        return MultiDigraph(self.n, tuple((v, u) for u, v in self.arcs))


@dataclass(frozen=True)
class MultiGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    directed = False

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {i} ({u},{v}) has a vertex outside [0, {self.n})")
            if u == v:
                raise ValueError(f"edge {i} is a self-loop at {u}")

    @property
    def members(self) -> tuple[tuple[int, int], ...]:
        return self.edges

    def __len__(self) -> int:
        return len(self.edges)

    def incident(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return inc

    def is_simple(self) -> bool:
        return len({frozenset(e) for e in self.edges}) == len(self.edges)


Graph = Union[MultiGraph, MultiDigraph]


@dataclass(frozen=True, order=True)
class TwoPath:
    """The path x-y-z; ``first`` covers {x, y} and ``second`` covers {y, z}.

    Undirected paths are stored with ``first < second`` so that each unordered
    member pair has exactly one representation.
    """

    first: int
    second: int
    x: int
    y: int
    z: int

    @property
    def vertices(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    @property
    def members(self) -> tuple[int, int]:
        return (self.first, self.second)

    @property
    def key(self) -> tuple[int, int]:
        """Unordered member pair, the identity used by weight maps and files."""
        return (min(self.first, self.second), max(self.first, self.second))

    def __str__(self) -> str:
        return f"{self.x} {self.y} {self.z}"


Decomposition = list[TwoPath]
WeightMap = dict[tuple[int, int], float]


def underlying_graph(d: MultiDigraph) -> MultiGraph:
    return MultiGraph(d.n, d.arcs)


def undirected_path(p: TwoPath) -> TwoPath:
    """The same member pair viewed as an undirected 2-path."""
    if p.first < p.second:
        return p
    return TwoPath(p.second, p.first, p.z, p.y, p.x)


def make_two_path(g: Graph, e: int, f: int) -> TwoPath | None:
    """The 2-path formed by members ``e`` and ``f`` of ``g``, or None."""
    if e == f:
        return None
    a, b = g.members[e]
    c, d = g.members[f]
    if g.directed:
        if b == c and a != d:
            return TwoPath(e, f, a, b, d)
        if d == a and c != b:
            return TwoPath(f, e, c, d, b)
        return None
    shared = {a, b} & {c, d}
    if len(shared) != 1:
        return None
    (y,) = shared
    if e > f:
        e, f, a, b, c, d = f, e, c, d, a, b
    x = a if b == y else b
    z = c if d == y else d
    return TwoPath(e, f, x, y, z)


def enumerate_two_paths(g: Graph) -> list[TwoPath]:
    """All 2-paths of ``g``, sorted by member ids."""
    paths = []
    if g.directed:
        out = g.out_arcs()
        for e, (x, y) in enumerate(g.arcs):
            for f in out[y]:
                z = g.arcs[f][1]
                if z != x:
                    paths.append(TwoPath(e, f, x, y, z))
    else:
        for y, inc in enumerate(g.incident()):
            for i, e in enumerate(inc):
                for f in inc[i + 1:]:
                    p = make_two_path(g, e, f)
                    if p is not None and p.y == y:
                        paths.append(p)
    paths.sort()
    return paths


def in_conflict(p: TwoPath, q: TwoPath) -> bool:
    if set(p.members) & set(q.members):
        return True
    return len(set(p.vertices) & set(q.vertices)) >= 2


def shortest_cycle(g: Graph) -> list[int] | None:
    """Vertices of a shortest cycle of the underlying multigraph, or None.

    Two parallel members form a cycle of length 2.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.members):
        adj[u].append((v, i))
        adj[v].append((u, i))
    best: list[int] | None = None
    for root in range(g.n):
        if not adj[root]:
            continue
        dist = {root: 0}
        parent: dict[int, tuple[int, int]] = {}
        queue = deque([root])
        cutoff = len(best) if best else None
        while queue:
            u = queue.popleft()
            if cutoff is not None and 2 * dist[u] >= cutoff:
                break
            for v, eid in adj[u]:
                if u in parent and parent[u][1] == eid:
                    continue
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = (u, eid)
                    queue.append(v)
                    continue
                length = dist[u] + dist[v] + 1
                if best is not None and length >= len(best):
                    continue
                cycle = _close_cycle(parent, u, v)
                if cycle is not None and len(cycle) == length:
                    best = cycle
                    cutoff = length
    return best


def _close_cycle(parent, u, v):
    def chain(w):
        out = [w]
        while w in parent:
            w = parent[w][0]
            out.append(w)
        return out

    pu, pv = chain(u), chain(v)
    common = set(pu) & set(pv)
    # trim at the lowest common ancestor
    while len(pu) > 1 and pu[-2] in common:
        pu.pop()
    while len(pv) > 1 and pv[-2] in common:
        pv.pop()
    if pu[-1] != pv[-1] or set(pu[:-1]) & set(pv[:-1]):
        return None
    return pu + pv[-2::-1]


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle in the underlying multigraph; None if acyclic."""
    cycle = shortest_cycle(g)
    return None if cycle is None else len(cycle)


@dataclass(frozen=True)
class Violation:
    kind: str  # "non-path", "double-cover", "uncovered", "conflict"
    detail: str
    members: tuple[int, ...] = ()
    paths: tuple[TwoPath, ...] = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


def verify_decomposition(g: Graph, paths: Iterable[TwoPath]) -> Violation | None:
    """Check that ``paths`` is an almost-disjoint 2-path decomposition of ``g``.

    Returns None when valid, otherwise the first violation found (checked in
    the order: invalid path, member covered twice, member uncovered, conflict).
    """
    paths = list(paths)
    m = len(g.members)
    for p in paths:
        if not (0 <= p.first < m and 0 <= p.second < m):
            return Violation("non-path", f"member id out of range in {p.members}", p.members, (p,))
        actual = make_two_path(g, p.first, p.second)
        if actual is None:
            return Violation("non-path", f"members {p.members} do not form a 2-path", p.members, (p,))
        if actual.vertices not in (p.vertices, p.vertices[::-1]) or (
            g.directed and actual != p
        ):
            return Violation("non-path", f"{p} does not match members {p.members}", p.members, (p,))
    owner: dict[int, TwoPath] = {}
    for p in paths:
        for e in p.members:
            if e in owner:
                return Violation("double-cover", f"member {e} covered twice", (e,), (owner[e], p))
            owner[e] = p
    for e in range(m):
        if e not in owner:
            return Violation("uncovered", f"member {e} is not covered", (e,))
    by_pair: dict[frozenset, TwoPath] = {}
    for p in paths:
        x, y, z = p.vertices
        for pair in (frozenset((x, y)), frozenset((y, z)), frozenset((x, z))):
            other = by_pair.get(pair)
            if other is not None and other is not p:
                return Violation(
                    "conflict",
                    f"paths ({other}) and ({p}) share vertices {sorted(pair)}",
                    other.members + p.members,
                    (other, p),
                )
            by_pair[pair] = p
    return None


def decomposition_from_pairs(g: Graph, pairs: Iterable[tuple[int, int]]) -> Decomposition:
    """Rebuild TwoPaths from member-id pairs; raises ValueError for non-paths."""
    out = []
    for e, f in pairs:
        p = make_two_path(g, e, f)
        if p is None:
            raise ValueError(f"members {e} and {f} do not form a 2-path")
        out.append(p)
    return out


# -- text formats -------------------------------------------------------------


def _lines(text: str | bytes) -> Iterator[tuple[int, list[str]]]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def parse_graph(text: str | bytes) -> Graph:
    """Parse ``digraph <n>`` / ``graph <n>`` followed by one ``u v`` per line."""
    lines = _lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty input, expected 'digraph <n>' or 'graph <n>'") from None
    if len(header) != 2 or header[0] not in ("digraph", "graph"):
        raise ParseError(f"malformed header {' '.join(header)!r}", lineno)
    try:
        n = int(header[1])
    except ValueError:
        raise ParseError(f"vertex count {header[1]!r} is not an integer", lineno) from None
    if n < 0:
        raise ParseError("negative vertex count", lineno)
    members = []
    for lineno, tok in lines:
        if len(tok) != 2:
            raise ParseError(f"expected '<u> <v>', got {' '.join(tok)!r}", lineno)
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {' '.join(tok)!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range [0, {n})", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        members.append((u, v))
    if header[0] == "digraph":
        return MultiDigraph(n, tuple(members))
    return MultiGraph(n, tuple(members))


def parse_digraph(text: str | bytes) -> MultiDigraph:
    g = parse_graph(text)
    if not g.directed:
        raise ParseError("expected a 'digraph' header", 1)
    return g


def format_graph(g: Graph) -> str:
    head = "digraph" if g.directed else "graph"
    return "".join([f"{head} {g.n}\n"] + [f"{u} {v}\n" for u, v in g.members])


def parse_decomposition(text: str | bytes) -> list[tuple[int, int]]:
    pairs = []
    for lineno, tok in _lines(text):
        if len(tok) != 2:
            raise ParseError(f"expected '<member> <member>', got {' '.join(tok)!r}", lineno)
        try:
            pairs.append((int(tok[0]), int(tok[1])))
        except ValueError:
            raise ParseError("member ids must be integers", lineno) from None
    return pairs


def format_decomposition(paths: Sequence[TwoPath]) -> str:
    return "".join(f"{p.first} {p.second}\n" for p in paths)


def parse_weights(text: str | bytes) -> WeightMap:
    """Lines of ``<member> <member> <cost>``; pairs are unordered."""
    weights: WeightMap = {}
    for lineno, tok in _lines(text):
        if len(tok) != 3:
            raise ParseError(f"expected '<member> <member> <cost>', got {' '.join(tok)!r}", lineno)
        try:
            e, f, cost = int(tok[0]), int(tok[1]), float(tok[2])
        except ValueError:
            raise ParseError(f"malformed weight line {' '.join(tok)!r}", lineno) from None
        weights[(min(e, f), max(e, f))] = cost
    return weights
