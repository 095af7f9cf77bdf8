"""Strategy selection: the cheapest applicable solver for a given input."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .conflict import build_conflict_graph, find_claw
from .exact import BudgetExhausted, SearchBudget, solve_exact, solve_weighted
from .graph import Decomposition, Graph, WeightMap, girth, verify_decomposition
from .matching import PreconditionError, max_stable_set, max_weight_stable_set, solve_girth5
from .sp import NotSeriesParallel, recognize_sp, solve_sp

STRATEGIES = ("sp", "girth5", "clawfree-stable-set", "exact")


def sp_applicable(g: Graph) -> bool:
    if not g.directed or not g.members or not g.is_simple():
        return False
    try:
        recognize_sp(g)
    except NotSeriesParallel:
        return False
    return True


def girth5_applicable(g: Graph) -> bool:
    k = girth(g)
    return k is None or k >= 5


def choose_strategy(g: Graph, weighted: bool = False) -> str:
    if weighted:
        return "clawfree-stable-set" if find_claw(build_conflict_graph(g)) is None else "exact"
    if sp_applicable(g):
        return "sp"
    if girth5_applicable(g):
        return "girth5"
    if find_claw(build_conflict_graph(g)) is None:
        return "clawfree-stable-set"
    return "exact"


@dataclass
class SolveReport:
    verdict: str  # "feasible", "infeasible" or "budget-exhausted"
    strategy: str
    paths: Decomposition = field(default_factory=list)
    cost: float | None = None
    seconds: float = 0.0


def solve(g: Graph, strategy: str = "auto", budget: SearchBudget | None = None,
          weights: WeightMap | None = None) -> SolveReport:
    """Run one strategy (or pick one); raises PreconditionError when a forced
    strategy does not apply."""
    t0 = time.monotonic()
    weighted = weights is not None
    if strategy == "auto":
        strategy = choose_strategy(g, weighted)
    elif strategy == "clawfree":
        strategy = "clawfree-stable-set"
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if weighted and strategy not in ("clawfree-stable-set", "exact"):
        raise PreconditionError(f"strategy {strategy} does not take weights")

    paths: Decomposition | None = None
    cost = None
    try:
        if strategy == "sp":
            if not sp_applicable(g):
                raise PreconditionError("input is not a simple series-parallel digraph; use --strategy exact")
            paths = solve_sp(g)
        elif strategy == "girth5":
            paths = solve_girth5(g)
        elif strategy == "clawfree-stable-set":
            h = build_conflict_graph(g)
            claw = find_claw(h)
            if claw is not None:
                raise PreconditionError(f"conflict graph has a claw centred at ({h.paths[claw.center]})", claw)
            m = len(g.members)
            if m % 2:
                paths = None
            elif weighted:
                found = max_weight_stable_set(h, weights, m // 2)
                if found is not None:
                    paths, cost = sorted(found[0]), found[1]
            else:
                s = max_stable_set(h, target=m // 2)
                paths = sorted(s) if len(s) == m // 2 else None
        else:
            if weighted:
                found = solve_weighted(g, weights, budget)
                if found is not None:
                    paths, cost = found
            else:
                paths = solve_exact(g, budget)
    except BudgetExhausted:
        return SolveReport("budget-exhausted", strategy, seconds=time.monotonic() - t0)
    except NotSeriesParallel as exc:
        raise PreconditionError(str(exc)) from exc
    seconds = time.monotonic() - t0
    if paths is None:
        return SolveReport("infeasible", strategy, seconds=seconds)
    problem = verify_decomposition(g, paths)
    if problem is not None:
        raise AssertionError(f"{strategy} produced an invalid decomposition: {problem}")
    return SolveReport("feasible", strategy, paths, cost, seconds)
