"""Line graphs, conflict graphs, claws and forbidden-subgraph scanning."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .graph import Graph, MultiDigraph, MultiGraph, TwoPath, enumerate_two_paths


@dataclass(frozen=True)
class LineGraph:
    """Vertices are member ids; each 2-path is one edge between its two members."""

    vertices: tuple[int, ...]
    edges: tuple[TwoPath, ...]


@dataclass
class ConflictGraph:
    paths: list[TwoPath]
    adj: list[set[int]] = field(repr=False)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, nbrs in enumerate(self.adj) for j in sorted(nbrs) if i < j]

    def __len__(self) -> int:
        return len(self.paths)


def build_line_graph(g: Graph) -> LineGraph:
    return LineGraph(tuple(range(len(g.members))), tuple(enumerate_two_paths(g)))


def conflict_adjacency(paths: list[TwoPath]) -> list[set[int]]:
    """Two paths conflict iff they share an unordered vertex pair."""
    by_pair: dict[tuple[int, int], list[int]] = {}
    for i, p in enumerate(paths):
        x, y, z = p.vertices
        for u, v in ((x, y), (y, z), (x, z)):
            by_pair.setdefault((min(u, v), max(u, v)), []).append(i)
    adj: list[set[int]] = [set() for _ in paths]
    for group in by_pair.values():
        for i, j in itertools.combinations(group, 2):
            adj[i].add(j)
            adj[j].add(i)
    return adj


def build_conflict_graph(g: Graph) -> ConflictGraph:
    paths = enumerate_two_paths(g)
    return ConflictGraph(paths, conflict_adjacency(paths))


@dataclass(frozen=True)
class Claw:
    center: int
    leaves: tuple[int, int, int]


def find_claw(h: ConflictGraph) -> Claw | None:
    """An induced K_{1,3} in ``h`` (lowest indices first), or None if claw-free."""
    for v, nbrs in enumerate(h.adj):
        if len(nbrs) < 3:
            continue
        order = sorted(nbrs)
        for i, a in enumerate(order):
            rest = [b for b in order[i + 1:] if b not in h.adj[a]]
            for j, b in enumerate(rest):
                for c in rest[j + 1:]:
                    if c not in h.adj[b]:
                        return Claw(v, (a, b, c))
    return None


# -- forbidden-subgraph catalogs -----------------------------------------------
#
# Patterns live on the labelled vertices a, b, c (centre path a-b-c) and
# x, y, z (private vertices of the three leaf paths).  Each token names one
# edge/arc by its two endpoint letters.

UNDIRECTED_PATTERNS = {
    "1": "ab bc xa ya ac zb",
    "3": "ab bc xa ya ac cz",
    "4": "ab bc xa ay yc zb",
    "6": "ab bc xa ay yc cz",
    "7": "ab bc xa ac cy zb",
    "9": "ab bc xa ac cy cz",
    "19": "ab bc bx ya ac zb",
    "22": "ab bc bx ay yc zb",
}

DIRECTED_PATTERNS = {
    "1": "ab bc xa ya ac zb",
    "2": "ab bc xa ya ac bz zc",
    "3": "ab bc xa ca ay zb",
    "4": "ab bc xa ca ay bz zc",
    "5": "ab bc ax xb ya ac zb",
    "6": "ab bc ax xb ya ac bz zc",
    "7": "ab bc ax xb ca ay zb",
    "8": "ab bc ax xb ca ay bz zc",
    "9": "ab bc xa ya ac cz",
    "10": "ab bc xa ca ay cz",
    "11": "ab bc ax xb ya ac cz",
    "12": "ab bc ax xb ca ay cz",
    "13": "ab bc xa ay yc zb",
    "14": "ab bc xa ay yc bz zc",
    "15": "ab bc xa cy ya zb",
    "16": "ab bc xa cy ya bz zc",
    "17": "ab bc ax xb ay yc zb",
    "18": "ab bc ax xb ay yc bz zc",
    "19": "ab bc ax xb cy ya zb",
    "20": "ab bc ax xb cy ya bz zc",
    "21": "ab bc xa ay yc cz",
    "22": "ab bc xa cy ya cz",
    "23": "ab bc bx ya ac zb",
    "24": "ab bc bx ca ay zb",
    "25": "ab bc bx ya ac bz zc",
    "26": "ab bc bx ca ay bz zc",
    "27": "ab bc bx ya ac cz",
    "28": "ab bc bx ca ay cz",
    "29": "ab bc bx ya ac bz zc",
    "30": "ab bc bx ca ay bz zc",
    "31": "ab bc bx ay yc zb",
    "32": "ab bc bx cy ya zb",
}

# Claws whose leaf paths reuse an arc antiparallel to one of the centre arcs.
# The figure catalog only orients each undirected edge once, so it misses
# these on multidigraphs; they are closed under reversal already.
ANTIPARALLEL_PATTERNS = {
    "A1": "ab ay bc bz cb xa yc",
    "A2": "ab ay bc cb xa yc zc",
    "A3": "ab bc bz cb cy xa ya",
    "A4": "ab bc cb cy xa ya zc",
    "A5": "ab ax ay ba bc yc zb",
    "A6": "ab ax ay ba bc bz yc zc",
    "A7": "ab ax ay ba bc cz yc",
    "A8": "ab ax ba bc cy ya zb",
    "A9": "ab ax ba bc cy cz ya",
    "A10": "ab ax ay bc cb xb yc zc",
    "A11": "ab ay bc bx bz cb yc",
    "A12": "ab ay bc bx cb yc zc",
    "A13": "ab bc bx bz cb cy ya",
    "A14": "ab ay ba bc xb yc zb",
    "A15": "ab ay ba bc cz xb yc",
    "A16": "ab ba bc cy xb ya zb",
    "A17": "ab ba bc cy cz xb ya",
}

LABELS = "abcxyz"


@dataclass(frozen=True)
class Pattern:
    id: str
    edges: tuple[tuple[str, str], ...]
    directed: bool


def _parse_pattern(pid: str, text: str, directed: bool) -> Pattern:
    edges = tuple((tok[0], tok[1]) for tok in text.split())
    if not directed:
        edges = tuple(sorted(tuple(sorted(e)) for e in edges))
    return Pattern(pid, edges, directed)


def _canonical_form(p: Pattern) -> tuple:
    best = None
    for perm in itertools.permutations(range(6)):
        relabel = {LABELS[i]: perm[i] for i in range(6)}
        if p.directed:
            form = tuple(sorted((relabel[u], relabel[v]) for u, v in p.edges))
        else:
            form = tuple(sorted(tuple(sorted((relabel[u], relabel[v]))) for u, v in p.edges))
        if best is None or form < best:
            best = form
    return best


def _dedupe(patterns: list[Pattern]) -> list[Pattern]:
    seen = set()
    out = []
    for p in patterns:
        form = _canonical_form(p)
        if form not in seen:
            seen.add(form)
            out.append(p)
    return out


@lru_cache(maxsize=None)
def undirected_catalog() -> tuple[Pattern, ...]:
    """The undirected catalog with isomorphic duplicates removed."""
    pats = [_parse_pattern(k, v, False) for k, v in UNDIRECTED_PATTERNS.items()]
    return tuple(_dedupe(pats))


@lru_cache(maxsize=None)
def directed_catalog(include_antiparallel: bool = True) -> tuple[Pattern, ...]:
    """Base directed patterns, their all-arcs-reversed variants and (optionally) the
    antiparallel supplement, deduplicated by isomorphism."""
    pats = [_parse_pattern(k, v, True) for k, v in DIRECTED_PATTERNS.items()]
    pats += [
        Pattern(p.id + "r", tuple((v, u) for u, v in p.edges), True) for p in list(pats)
    ]
    if include_antiparallel:
        pats += [_parse_pattern(k, v, True) for k, v in ANTIPARALLEL_PATTERNS.items()]
    return tuple(_dedupe(pats))


@dataclass(frozen=True)
class ForbiddenWitness:
    pattern: str
    mapping: tuple[tuple[str, int], ...]

    def as_dict(self) -> dict[str, int]:
        return dict(self.mapping)

    def __str__(self) -> str:
        return f"pattern={self.pattern} map " + " ".join(f"{k}->{v}" for k, v in self.mapping)


def _host_adjacency(g: Graph):
    n = g.n
    succ: list[set[int]] = [set() for _ in range(n)]
    pred: list[set[int]] = [set() for _ in range(n)]
    for u, v in g.members:
        succ[u].add(v)
        pred[v].add(u)
        if not g.directed:
            succ[v].add(u)
            pred[u].add(v)
    return succ, pred


def _embed(p: Pattern, succ, pred, n) -> dict[str, int] | None:
    nbrs = {v: set() for v in LABELS}
    outdeg = dict.fromkeys(LABELS, 0)
    indeg = dict.fromkeys(LABELS, 0)
    for u, v in p.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
        outdeg[u] += 1
        indeg[v] += 1
    # connected order, highest degree first
    order = [max(LABELS, key=lambda v: (len(nbrs[v]), -LABELS.index(v)))]
    while len(order) < 6:
        frontier = [v for v in LABELS if v not in order and nbrs[v] & set(order)]
        order.append(max(frontier, key=lambda v: (len(nbrs[v] & set(order)), len(nbrs[v]))))
    edges = set(p.edges)

    def ok(label, host, mapping):
        if p.directed:
            if len(succ[host]) < outdeg[label] or len(pred[host]) < indeg[label]:
                return False
        elif len(succ[host]) < len(nbrs[label]):
            return False
        for other, h in mapping.items():
            if (label, other) in edges and h not in succ[host]:
                return False
            if (other, label) in edges and host not in succ[h]:
                return False
            if not p.directed and ((label, other) in edges or (other, label) in edges):
                if h not in succ[host]:
                    return False
        return True

    mapping: dict[str, int] = {}
    used: set[int] = set()

    def extend(k: int) -> bool:
        if k == 6:
            return True
        label = order[k]
        anchors = [mapping[o] for o in order[:k] if o in nbrs[label]]
        if anchors:
            h0 = anchors[0]
            cands = sorted(succ[h0] | pred[h0])
        else:
            cands = range(n)
        for host in cands:
            if host in used or not ok(label, host, mapping):
                continue
            mapping[label] = host
            used.add(host)
            if extend(k + 1):
                return True
            del mapping[label]
            used.discard(host)
        return False

    return dict(mapping) if extend(0) else None


def _scan(g: Graph, catalog) -> ForbiddenWitness | None:
    succ, pred = _host_adjacency(g)
    for p in catalog:
        found = _embed(p, succ, pred, g.n)
        if found is not None:
            return ForbiddenWitness(p.id, tuple((k, found[k]) for k in LABELS))
    return None


def scan_forbidden_undirected(g: MultiGraph) -> ForbiddenWitness | None:
    if g.directed:
        raise ValueError("expected an undirected graph")
    return _scan(g, undirected_catalog())


def scan_forbidden_directed(d: MultiDigraph, include_antiparallel: bool = True) -> ForbiddenWitness | None:
    if not d.directed:
        raise ValueError("expected a digraph")
    return _scan(d, directed_catalog(include_antiparallel))


def scan_forbidden(g: Graph) -> ForbiddenWitness | None:
    if g.directed:
        return scan_forbidden_directed(g)
    return scan_forbidden_undirected(g)


def pattern_graph(p: Pattern) -> Graph:
    """The pattern itself as a graph on vertices a..z -> 0..5."""
    idx = {v: i for i, v in enumerate(LABELS)}
    members = tuple((idx[u], idx[v]) for u, v in p.edges)
    return MultiDigraph(6, members) if p.directed else MultiGraph(6, members)
