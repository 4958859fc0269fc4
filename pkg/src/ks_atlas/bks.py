"""Bipartite KS-uncolorability and minimum input-product search.

A pair (S_A, S_B) of basis subsets is B-KS uncolorable when no assignment
f(vector, basis) -> {0,1} satisfies completeness (exactly one green per
basis) and cross-party exclusion (no green Alice vector orthogonal to a
green Bob vector).  The assignment is contextual: the same vector may take
different values in different bases, and only cross-party orthogonality is
constrained.
"""

from __future__ import annotations

import itertools
import math
import random

from .hypergraph import OrthoGraph
from .satcore.engine import Solver

__all__ = ["BksInstance", "bks_check", "bks_search_min_product"]

try:
    from ks_atlas._core import min_hitting_set as _min_hitting_set_compiled
except ImportError:  # pragma: no cover
    _min_hitting_set_compiled = None

from .minimize import _min_hitting_set_py


class BksInstance:
    """Variable map for one (S_A, S_B) query over a fixed basis list."""

    def __init__(self, graph: OrthoGraph, s_a, s_b):
        self.graph = graph
        self.bases = list(graph.triads)
        self.s_a = tuple(sorted(s_a))
        self.s_b = tuple(sorted(s_b))
        if not self.s_a or not self.s_b:
            raise ValueError("both basis sets must be nonempty")
        for b in self.s_a + self.s_b:
            if not 0 <= b < len(self.bases):
                raise ValueError(f"basis index {b} out of range")
        self.var_of: dict[tuple[int, int], int] = {}
        n = 0
        for b in sorted(set(self.s_a) | set(self.s_b)):
            for u in self.bases[b]:
                n += 1
                self.var_of[(u, b)] = n
        self.var_count = n


def bks_check(pool_or_graph, s_a, s_b, solver: Solver | None = None) -> str:
    """Decide bipartite KS-colorability of (S_A, S_B); "uncolorable" iff the
    completeness + cross-party-exclusion formula is unsatisfiable."""
    graph = (pool_or_graph if isinstance(pool_or_graph, OrthoGraph)
             else OrthoGraph.from_pool(pool_or_graph))
    inst = BksInstance(graph, s_a, s_b)
    s = solver or Solver()
    s.ensure_vars(inst.var_count)
    bases = inst.bases
    for b in sorted(set(inst.s_a) | set(inst.s_b)):
        lits = [inst.var_of[(u, b)] for u in bases[b]]
        s.add_clause(lits)
        for x, y in itertools.combinations(lits, 2):
            s.add_clause([-x, -y])
    adj = graph.adjacency_masks()
    for ba in inst.s_a:
        for bb in inst.s_b:
            for u in bases[ba]:
                for v in bases[bb]:
                    if u != v and (adj[u] >> v) & 1:
                        s.add_clause([-inst.var_of[(u, ba)], -inst.var_of[(v, bb)]])
    res = s.solve()
    return "colorable" if res else "uncolorable"


def _blocked_families(graph: OrthoGraph, s_a) -> list[tuple[int, ...]] | None:
    """For fixed S_A, the family of basis sets that Bob must hit.

    For each Alice transversal (one green vector per Alice basis), collect
    the bases whose every vector conflicts with the choice: a basis shared
    with S_A conflicts when its chosen vector is orthogonal to another
    chosen vector; any other basis conflicts when all three vectors are
    orthogonal to some chosen vector.  (S_A, S_B) is uncolorable exactly
    when S_B hits every transversal's blocked set.  Returns None when some
    transversal blocks nothing (then no S_B works).
    """
    bases = graph.triads
    adj = graph.adjacency_masks()
    m = len(bases)
    fams: set[tuple[int, ...]] = set()
    choices = [bases[b] for b in s_a]
    for pick in itertools.product(*choices):
        nbhd = 0
        chosen_mask = 0
        for u in pick:
            nbhd |= adj[u]
            chosen_mask |= 1 << u
        blocked = []
        for b in range(m):
            if b in s_a:
                u = pick[s_a.index(b)]
                if nbhd >> u & 1:
                    blocked.append(b)
            else:
                if all((nbhd >> v) & 1 for v in bases[b]):
                    blocked.append(b)
        if not blocked:
            return None
        fams.add(tuple(blocked))
    return sorted(fams)


def bks_search_min_product(pool_or_graph, mode: str = "greedy",
                           trials: int = 500, seed: int = 0,
                           max_exhaustive_bases: int = 16) -> dict:
    """Minimum |S_A| x |S_B| over bipartite KS-uncolorable subset pairs.

    Exhaustive mode scans unordered pairs in nondecreasing product order:
    for every Alice side up to sqrt of the current bound, the smallest
    uncolorable Bob side is a minimum hitting set of the Alice transversals'
    blocked families.  Greedy mode restarts from random partitions and
    shrinks with add/remove/swap moves, returning an upper bound.
    """
    graph = (pool_or_graph if isinstance(pool_or_graph, OrthoGraph)
             else OrthoGraph.from_pool(pool_or_graph))
    m = len(graph.triads)
    if mode == "exhaustive":
        if m > max_exhaustive_bases:
            raise ValueError(
                f"exhaustive mode limited to {max_exhaustive_bases} bases, pool has {m}")
        return _search_exhaustive(graph)
    if mode == "greedy":
        return _search_greedy(graph, trials, seed)
    raise ValueError(f"unknown mode {mode!r}")


def _min_bob_size(graph: OrthoGraph, s_a, cap: int) -> tuple[int, list[int]] | None:
    fams = _blocked_families(graph, tuple(s_a))
    if fams is None:
        return None
    m = len(graph.triads)
    covers = [0] * m
    for f in fams:
        for b in f:
            covers[b] += 1
    if _min_hitting_set_compiled is not None and m <= 256:
        return _min_hitting_set_compiled(list(fams), m, 1, cap, covers)
    return _min_hitting_set_py(list(fams), m, 1, cap, covers)


def _search_exhaustive(graph: OrthoGraph) -> dict:
    m = len(graph.triads)
    best = None  # (product, s_a, s_b)
    tested = 0
    for a_size in range(1, m + 1):
        if best is not None and a_size * a_size >= best[0]:
            break
        for s_a in itertools.combinations(range(m), a_size):
            cap = m + 1 if best is None else (best[0] - 1) // a_size + 1
            tested += 1
            found = _min_bob_size(graph, s_a, min(cap, m + 1))
            if found is None:
                continue
            b_size, s_b = found
            product = a_size * b_size
            if best is None or product < best[0]:
                best = (product, list(s_a), list(s_b))
    if best is None:
        return {"status": "colorable", "exact": True, "alice_sides_tested": tested}
    product, s_a, s_b = best
    assert bks_check(graph, s_a, s_b) == "uncolorable"
    return {
        "product": product,
        "s_a": s_a,
        "s_b": s_b,
        "sizes": [len(s_a), len(s_b)],
        "exact": True,
        "alice_sides_tested": tested,
    }


def _search_greedy(graph: OrthoGraph, trials: int, seed: int) -> dict:
    m = len(graph.triads)
    rng = random.Random(seed)
    best = None

    def uncolorable(s_a, s_b):
        if not s_a or not s_b:
            return False
        return bks_check(graph, s_a, s_b) == "uncolorable"

    def shrink(s_a: set, s_b: set) -> bool:
        changed = False
        for side, other in ((s_a, s_b), (s_b, s_a)):
            for b in sorted(side, key=lambda _: rng.random()):
                if len(side) > 1:
                    if (uncolorable(side - {b}, other) if side is s_a
                            else uncolorable(other, side - {b})):
                        side.discard(b)
                        changed = True
        return changed

    for _ in range(trials):
        # both parties holding every basis is uncolorable exactly when the
        # set is KS-uncolorable (greens would form an independent
        # transversal), so shrinking from there always starts feasible
        s_a, s_b = set(range(m)), set(range(m))
        if not uncolorable(s_a, s_b):
            break
        while shrink(s_a, s_b):
            pass
        # swap pass: exchange one member for an unused basis when that opens
        # a further removal
        for _ in range(m):
            side = s_a if rng.random() < 0.5 else s_b
            unused = [c for c in range(m) if c not in s_a and c not in s_b]
            if not unused or len(side) <= 1:
                continue
            b = rng.choice(sorted(side))
            c = rng.choice(unused)
            trial_side = (side - {b}) | {c}
            pair = (trial_side, s_b) if side is s_a else (s_a, trial_side)
            if uncolorable(*pair):
                na, nb = (set(pair[0]), set(pair[1]))
                if shrink(na, nb) and len(na) * len(nb) < len(s_a) * len(s_b):
                    s_a, s_b = na, nb
        product = len(s_a) * len(s_b)
        if best is None or product < best[0]:
            best = (product, sorted(s_a), sorted(s_b))
    if best is None:
        return {"status": "no uncolorable pair found", "exact": False}
    product, s_a, s_b = best
    return {
        "product": product,
        "s_a": s_a,
        "s_b": s_b,
        "sizes": [len(s_a), len(s_b)],
        "exact": False,
    }
