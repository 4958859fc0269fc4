"""KS-coloring CNF construction and the solve-result surface.

Variable x_i (= i+1 in DIMACS numbering) means ray i is green.  Each triad
contributes an exactly-one constraint; each orthogonal pair an at-most-one
clause.  At-most-one clauses duplicated between a triad and its edges are
emitted once.  With selectors, every clause mentioning ray r additionally
carries the negated selector of r, so solving under assumptions on the
selectors decides colorability of any induced sub-pool and unsat cores are
ray-level.
"""

from __future__ import annotations

import json

from ..hypergraph import OrthoGraph
from . import engine

__all__ = ["CnfInstance", "SolveResult", "encode_ks", "sat_solve",
           "to_dimacs", "selector_sidecar"]


class CnfInstance:
    """Grouped CNF with optional per-ray selector variables."""

    __slots__ = ("var_count", "clauses", "selector_of_ray", "n_rays")

    def __init__(self, var_count, clauses, selector_of_ray=None, n_rays=0):
        self.var_count = var_count
        self.clauses = clauses
        self.selector_of_ray = selector_of_ray
        self.n_rays = n_rays

    def solver(self) -> "engine.Solver":
        s = engine.Solver()
        s.ensure_vars(self.var_count)
        for cl in self.clauses:
            s.add_clause(cl)
        return s

    def assumptions_for(self, ray_subset) -> list[int]:
        if self.selector_of_ray is None:
            raise ValueError("instance was built without selectors")
        return [self.selector_of_ray[r] for r in sorted(ray_subset)]

    def __repr__(self):
        sel = "with" if self.selector_of_ray else "without"
        return (f"CnfInstance(vars={self.var_count}, clauses={len(self.clauses)}, "
                f"{sel} selectors)")


class SolveResult:
    """status 'sat' carries a per-ray coloring; 'unsat' under assumptions
    carries a core of assumption literals."""

    __slots__ = ("status", "model", "core")

    def __init__(self, status, model=None, core=None):
        self.status = status
        self.model = model
        self.core = core

    def __repr__(self):
        return f"SolveResult({self.status})"


def encode_ks(g: OrthoGraph, with_selectors: bool = False) -> CnfInstance:
    n = g.n
    clauses: list[list[int]] = []
    amo_emitted: set[tuple[int, int]] = set()
    sel = None
    if with_selectors:
        sel = {r: n + 1 + r for r in range(n)}

    def guarded(lits, rays):
        if sel is None:
            return lits
        return lits + [-sel[r] for r in rays]

    for t in g.triads:
        i, j, k = t
        clauses.append(guarded([i + 1, j + 1, k + 1], t))
        for a, b in ((i, j), (i, k), (j, k)):
            clauses.append(guarded([-(a + 1), -(b + 1)], (a, b)))
            amo_emitted.add((a, b))
    for i, j in g.edges:
        if (i, j) not in amo_emitted:
            clauses.append(guarded([-(i + 1), -(j + 1)], (i, j)))
    var_count = n if sel is None else 2 * n
    return CnfInstance(var_count, clauses, selector_of_ray=sel, n_rays=n)


def sat_solve(f: CnfInstance, assumptions=(), solver: "engine.Solver" = None,
              conflict_budget: int = -1) -> SolveResult:
    """Complete decision of the CNF under the given assumption literals.

    A fresh solver is built unless one (already loaded with f) is passed in
    for incremental reuse.  With a nonnegative conflict budget the solver
    may return a distinguished 'unknown' (never used by default presets).
    """
    s = solver if solver is not None else f.solver()
    s.conflict_budget = conflict_budget
    res = s.solve(assumptions)
    if res is None:
        return SolveResult("unknown")
    if res:
        model = [s.model[i + 1] for i in range(f.n_rays)]
        return SolveResult("sat", model=model)
    return SolveResult("unsat", core=list(s.core) if s.core is not None else None)


def to_dimacs(f: CnfInstance) -> str:
    lines = [f"p cnf {f.var_count} {len(f.clauses)}"]
    for cl in f.clauses:
        lines.append(" ".join(str(l) for l in cl) + " 0")
    return "\n".join(lines) + "\n"


def selector_sidecar(f: CnfInstance) -> str:
    return json.dumps(
        {"selector_of_ray": {str(r): v for r, v in (f.selector_of_ray or {}).items()}},
        indent=1, sort_keys=True) + "\n"
