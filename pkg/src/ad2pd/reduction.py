"""3-SAT to AD2PD reduction: gadgets, gluing and the certificate construction.

Vertex names inside a gadget are strings ("v1", "u2", "c1", ...).  A pair of
vertices that the gadget must keep apart ("enforced" pair) is realised by
default as a 2-arc path x -> h -> y through a private midpoint h; the literal
antiparallel encoding is available as ``enforcer="digon"`` but admits no
decomposition at all, because both arcs of a digon join the same two
vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import Decomposition, MultiDigraph, ParseError, TwoPath, make_two_path

PAIRS = ((1, 2), (1, 3), (2, 3))
# clause vertex p_l is glued to the u2 vertex of pair gadget PAIRS[l - 1]
PAIR_TO_P = {pair: f"p{i + 1}" for i, pair in enumerate(PAIRS)}


# -- formulas -----------------------------------------------------------------


@dataclass(frozen=True)
class CnfFormula:
    n: int
    clauses: tuple[tuple[int, int, int], ...]  # DIMACS literals, nonzero ints

    def __post_init__(self):
        for j, clause in enumerate(self.clauses, start=1):
            if len(clause) != 3:
                raise ValueError(f"clause {j} has {len(clause)} literals, expected 3")
            vars_ = [abs(x) for x in clause]
            if any(v < 1 or v > self.n for v in vars_):
                raise ValueError(f"clause {j} uses a variable outside 1..{self.n}")
            if len(set(vars_)) != 3:
                raise ValueError(f"clause {j} repeats a variable")

    def satisfied(self, assignment) -> bool:
        """``assignment[i]`` is the value of variable i (index 0 unused)."""
        return all(any(assignment[abs(x)] == (x > 0) for x in c) for c in self.clauses)

    def occurrences(self, var: int) -> list[tuple[int, int, bool]]:
        """(clause, position, positive) for each occurrence of ``var``."""
        out = []
        for j, clause in enumerate(self.clauses, start=1):
            for k, lit in enumerate(clause, start=1):
                if abs(lit) == var:
                    out.append((j, k, lit > 0))
        return out

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n} {len(self.clauses)}"]
        lines += [" ".join(str(x) for x in c) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs_cnf(text: str | bytes) -> CnfFormula:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = None
    expected = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c%":
            continue
        if line.startswith("p"):
            tok = line.split()
            if len(tok) != 4 or tok[1] != "cnf":
                raise ParseError(f"malformed problem line {line!r}", lineno)
            try:
                n, expected = int(tok[2]), int(tok[3])
            except ValueError:
                raise ParseError(f"malformed problem line {line!r}", lineno) from None
            continue
        if n is None:
            raise ParseError("clause before 'p cnf' line", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                _check_clause(current, n, lineno)
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        _check_clause(current, n, lineno)
        clauses.append(tuple(current))
    if n is None:
        raise ParseError("missing 'p cnf' line")
    if expected is not None and expected != len(clauses):
        raise ParseError(f"header announces {expected} clauses, found {len(clauses)}")
    return CnfFormula(n, tuple(clauses))


def _check_clause(lits, n, lineno):
    if len(lits) != 3:
        raise ParseError(f"clause has {len(lits)} literals, expected 3", lineno)
    if len({abs(x) for x in lits}) != 3:
        raise ParseError("repeated variable in clause", lineno)
    if any(abs(x) > n for x in lits):
        raise ParseError(f"variable out of range 1..{n}", lineno)


# -- gadgets ------------------------------------------------------------------


@dataclass
class Gadget:
    """Arcs over named local vertices."""

    vertices: list[str]
    arcs: list[tuple[str, str]]
    optional: list[tuple[str, str]] = field(default_factory=list)
    enforced: list[tuple[str, str]] = field(default_factory=list)
    enforcer_paths: list[tuple[str, str, str]] = field(default_factory=list)

    def digraph(self, remove=()) -> tuple[MultiDigraph, dict[str, int]]:
        """Standalone digraph of the gadget minus the arcs in ``remove``."""
        index = {name: i for i, name in enumerate(self.vertices)}
        drop = set(remove)
        arcs = tuple((index[u], index[v]) for u, v in self.arcs if (u, v) not in drop)
        return MultiDigraph(len(self.vertices), arcs), index


def _add_enforcers(g: Gadget, pairs, enforcer: str) -> None:
    for x, y in pairs:
        g.enforced.append((x, y))
        if enforcer == "digon":
            g.arcs += [(x, y), (y, x)]
        elif enforcer == "midpoint":
            h = f"h[{x}-{y}]"
            g.vertices.append(h)
            g.arcs += [(x, h), (h, y)]
            g.enforcer_paths.append((x, h, y))
        else:
            raise ValueError(f"unknown enforcer {enforcer!r}")


PAIR_VERTICES = ["v1", "v2", "v3", "v4", "v5", "w1", "w3", "w4", "w5",
                 "u1", "u2", "u3", "u4", "u5", "c1", "c2"]
PAIR_PLAIN = [("v2", "v3"), ("v3", "v4"), ("v4", "w3"), ("w3", "w4"),
              ("u1", "u2"), ("u2", "u3"), ("u3", "u4"), ("u4", "u5"),
              ("v2", "u4"), ("u4", "v4"), ("v4", "u2"), ("u2", "w4")]
PAIR_OPTIONAL = [("v1", "v2"), ("v4", "v5"), ("w1", "v4"), ("w4", "w5"), ("c1", "u2"), ("u2", "c2")]
# Enforced pairs, oriented tail -> midpoint -> head.  A midpoint path does not
# force its two arcs together the way a digon pair would, so the orientation
# matters: this one keeps the gadget without its optional arcs infeasible.
PAIR_ENFORCED = [("v1", "u4"), ("v2", "u3"), ("u4", "v3"), ("u2", "v3"), ("v5", "u4"),
                 ("u2", "w1"), ("w3", "u2"), ("u2", "w5"), ("u3", "w4"), ("w3", "u4"),
                 ("w3", "v3"), ("v5", "w1"), ("v3", "w1"), ("v5", "u2"), ("u4", "w1"),
                 ("v5", "w3")]

# M sets and the extra 2-paths covering the rest of the gadget, per case.
# "w2" is the same vertex as "v4".
PAIR_CASES = {
    "TT": ([("c1", "u2"), ("u2", "c2")],
           [("v1", "v2", "v3"), ("v3", "v4", "v5"), ("w1", "w2", "w3"), ("w3", "w4", "w5"),
            ("v2", "u4", "v4"), ("w2", "u2", "w4"), ("u1", "u2", "u3"), ("u3", "u4", "u5")]),
    "TF": ([("c1", "u2"), ("u2", "c2"), ("w1", "w2"), ("w4", "w5")],
           [("v1", "v2", "v3"), ("v3", "v4", "v5"), ("w2", "w3", "w4"), ("u1", "u2", "w4"),
            ("w2", "u2", "u3"), ("v2", "u4", "v4"), ("u3", "u4", "u5")]),
    "FT": ([("c1", "u2"), ("u2", "c2"), ("v1", "v2"), ("v4", "v5")],
           [("v2", "v3", "v4"), ("w1", "w2", "w3"), ("w3", "w4", "w5"), ("w2", "u2", "w4"),
            ("u1", "u2", "u3"), ("u3", "u4", "v4"), ("v2", "u4", "u5")]),
    "FF": ([("v1", "v2"), ("v4", "v5"), ("w1", "w2"), ("w4", "w5")],
           [("v2", "v3", "v4"), ("w2", "w3", "w4"), ("v2", "u4", "u5"), ("u3", "u4", "v4"),
            ("w2", "u2", "c2"), ("c1", "u2", "w4"), ("u1", "u2", "u3")]),
}


def _w2(name: str) -> str:
    return "v4" if name == "w2" else name


def pair_case_paths(case: str) -> tuple[list[tuple[str, str]], list[tuple[str, str, str]]]:
    """(M, listed 2-paths) for a case, with w2 written as v4."""
    m, paths = PAIR_CASES[case]
    return ([(_w2(a), _w2(b)) for a, b in m], [tuple(_w2(x) for x in p) for p in paths])


def build_pair_gadget(enforcer: str = "midpoint") -> Gadget:
    g = Gadget(list(PAIR_VERTICES), PAIR_PLAIN + PAIR_OPTIONAL, optional=list(PAIR_OPTIONAL))
    _add_enforcers(g, PAIR_ENFORCED, enforcer)
    return g


CLAUSE_VERTICES = ["c1", "c2", "u1", "u2", "v1", "v2", "p1", "p2", "p3"]
CLAUSE_PLAIN = [("u1", "c1"), ("u2", "c1"), ("c2", "v1"), ("c2", "v2")]
CLAUSE_OPTIONAL = [("c1", "p1"), ("c1", "p2"), ("c1", "p3"), ("p1", "c2"), ("p2", "c2"), ("p3", "c2")]
CLAUSE_ENFORCED = [("u1", "u2"), ("v1", "v2"), ("p1", "p2"), ("p2", "p3"), ("p1", "p3")]


def build_clause_gadget(enforcer: str = "midpoint") -> Gadget:
    g = Gadget(list(CLAUSE_VERTICES), CLAUSE_PLAIN + CLAUSE_OPTIONAL, optional=list(CLAUSE_OPTIONAL))
    _add_enforcers(g, CLAUSE_ENFORCED, enforcer)
    return g


def clause_removed_arcs(ell: int) -> list[tuple[str, str]]:
    return [("c1", f"p{ell}"), (f"p{ell}", "c2")]


def clause_paths(removed: int | None) -> list[tuple[str, str, str]]:
    """2-paths (without enforcers) covering the clause gadget, optionally
    with the two optional arcs at p_removed taken out."""
    if removed is None:
        a, b, mid = 1, 2, 3
    else:
        a, b = (i for i in (1, 2, 3) if i != removed)
        mid = None
    pa, pb = f"p{a}", f"p{b}"
    out = [("u1", "c1", pa), ("u2", "c1", pb), (pa, "c2", "v1"), (pb, "c2", "v2")]
    if mid is not None:
        out.append(("c1", f"p{mid}", "c2"))
    return out


@dataclass
class VariableGadget:
    var: int
    length: int
    # one entry per reserved subpath, in cycle order: (clause, pair, positive, position k)
    subpaths: list[tuple[int, tuple[int, int], bool, int]]


def build_variable_gadget(var: int, occurrences: list[tuple[int, int, bool]]) -> VariableGadget | None:
    """Cycle of 12 arcs per occurrence; None for an unused variable."""
    if not occurrences:
        return None
    subpaths = []
    for j, k, positive in occurrences:
        for k2 in (x for x in (1, 2, 3) if x != k):
            subpaths.append((j, (min(k, k2), max(k, k2)), positive, k))
    return VariableGadget(var, 12 * len(occurrences), subpaths)


# -- gluing -------------------------------------------------------------------


class _UnionFind:
    def __init__(self):
        self.parent: list[int] = []

    def make(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


@dataclass
class ReductionGraph:
    formula: CnfFormula
    digraph: MultiDigraph
    enforcer: str
    # (gadget key, local name) -> global vertex id; gadget keys are
    # ("var", i), ("pair", j, (k, k')) and ("clause", j)
    vertex_map: dict[tuple, int]
    variables: dict[int, VariableGadget]
    arc_index: dict[tuple[int, int], int]
    optional_arcs: dict[tuple, list[int]]
    reserved: dict[tuple, list[int]]  # (i, j, (k, k')) -> arc ids q1..q6

    def vertex(self, gadget: tuple, name: str) -> int:
        return self.vertex_map[(gadget, name)]

    def arc(self, u: int, v: int) -> int:
        return self.arc_index[(u, v)]

    def path(self, gadget: tuple, triple) -> TwoPath:
        x, y, z = (self.vertex(gadget, _w2(t)) for t in triple)
        p = make_two_path(self.digraph, self.arc(x, y), self.arc(y, z))
        assert p is not None
        return p

    def provenance_lines(self) -> list[str]:
        lines = []
        for (gadget, name), gid in sorted(self.vertex_map.items(), key=lambda kv: (kv[1], str(kv[0]))):
            lines.append(f"{_gadget_label(gadget)} {name} -> {gid}")
        return lines


def _gadget_label(key: tuple) -> str:
    if key[0] == "var":
        return f"var{key[1]}"
    if key[0] == "clause":
        return f"clause{key[1]}"
    return f"pair{key[1]}:{key[2][0]}{key[2][1]}"


def build_reduction(f: CnfFormula, enforcer: str = "midpoint") -> ReductionGraph:
    uf = _UnionFind()
    raw: dict[tuple, int] = {}
    raw_arcs: list[tuple[int, int]] = []

    def vid(gadget, name):
        key = (gadget, name)
        if key not in raw:
            raw[key] = uf.make()
        return raw[key]

    def add_gadget(gadget, g: Gadget):
        for name in g.vertices:
            vid(gadget, name)
        for u, v in g.arcs:
            raw_arcs.append((vid(gadget, u), vid(gadget, v)))

    variables: dict[int, VariableGadget] = {}
    for i in range(1, f.n + 1):
        vg = build_variable_gadget(i, f.occurrences(i))
        if vg is None:
            continue
        variables[i] = vg
        for t in range(vg.length):
            raw_arcs.append((vid(("var", i), f"q{t}"), vid(("var", i), f"q{(t + 1) % vg.length}")))

    for j, clause in enumerate(f.clauses, start=1):
        add_gadget(("clause", j), build_clause_gadget(enforcer))
        for pair in PAIRS:
            key = ("pair", j, pair)
            add_gadget(key, build_pair_gadget(enforcer))
            for name in ("c1", "c2"):
                uf.union(vid(key, name), vid(("clause", j), name))
            uf.union(vid(key, "u2"), vid(("clause", j), PAIR_TO_P[pair]))

    reserved_pos: dict[tuple, int] = {}
    for i, vg in variables.items():
        for r, (j, pair, positive, k) in enumerate(vg.subpaths):
            start = 6 * r
            reserved_pos[(i, j, pair)] = start
            chain = "v" if k == pair[0] else "w"
            shift = 0 if positive else 1
            for ell in range(1, 6):
                local = f"{chain}{ell}"
                local = _w2(local)
                q = f"q{(start + ell - 1 + shift) % vg.length}"
                uf.union(vid(("pair", j, pair), local), vid(("var", i), q))

    # compact ids in order of first appearance
    compact: dict[int, int] = {}
    vertex_map: dict[tuple, int] = {}
    for key, r in raw.items():
        root = uf.find(r)
        if root not in compact:
            compact[root] = len(compact)
        vertex_map[key] = compact[root]
    arcs: list[tuple[int, int]] = []
    arc_index: dict[tuple[int, int], int] = {}
    for u, v in raw_arcs:
        e = (compact[uf.find(u)], compact[uf.find(v)])
        if e not in arc_index:
            arc_index[e] = len(arcs)
            arcs.append(e)
    d = MultiDigraph(len(compact), tuple(arcs))

    optional = {}
    for j in range(1, len(f.clauses) + 1):
        for pair in PAIRS:
            key = ("pair", j, pair)
            optional[key] = [arc_index[(vertex_map[(key, u)], vertex_map[(key, v)])] for u, v in PAIR_OPTIONAL]
    reserved = {}
    for (i, j, pair), start in reserved_pos.items():
        length = variables[i].length
        qs = [vertex_map[(("var", i), f"q{(start + t) % length}")] for t in range(7)]
        reserved[(i, j, pair)] = [arc_index[(qs[t], qs[t + 1])] for t in range(6)]
    return ReductionGraph(f, d, enforcer, vertex_map, variables, arc_index, optional, reserved)


def decomposition_from_assignment(r: ReductionGraph, assignment) -> Decomposition | None:
    """The certificate decomposition for a satisfying assignment, else None.

    ``assignment[i]`` is the truth value of variable i; index 0 is ignored.
    """
    f = r.formula
    if not f.satisfied(assignment):
        return None
    chosen: dict[tuple[int, int], TwoPath] = {}

    def add(p: TwoPath):
        chosen.setdefault(p.key, p)

    for i, vg in r.variables.items():
        offset = 0 if assignment[i] else 1
        for t in range(offset, vg.length, 2):
            add(r.path(("var", i), (f"q{t}", f"q{(t + 1) % vg.length}", f"q{(t + 2) % vg.length}")))

    for j, clause in enumerate(f.clauses, start=1):
        value = {k: assignment[abs(lit)] == (lit > 0) for k, lit in enumerate(clause, start=1)}
        false_pairs = []
        for pair in PAIRS:
            key = ("pair", j, pair)
            case = ("T" if value[pair[0]] else "F") + ("T" if value[pair[1]] else "F")
            if case == "FF":
                false_pairs.append(pair)
            _, triples = pair_case_paths(case)
            for t in triples:
                add(r.path(key, t))
            for t in build_pair_gadget(r.enforcer).enforcer_paths:
                add(r.path(key, t))
        removed = int(PAIR_TO_P[false_pairs[0]][1]) if false_pairs else None
        for t in clause_paths(removed):
            add(r.path(("clause", j), t))
        for t in build_clause_gadget(r.enforcer).enforcer_paths:
            add(r.path(("clause", j), t))
    return sorted(chosen.values())


def satisfying_assignments(f: CnfFormula):
    """All satisfying assignments by enumeration (index 0 unused)."""
    for bits in itertools.product((False, True), repeat=f.n):
        a = (False,) + bits
        if f.satisfied(a):
            yield a
