"""Minimal KS subset discovery and exact pool-minimum certification.

All routines run on one selector-encoded CNF per pool and reuse one
incremental solver, so a deletion test is a single assumption-based solve.
The exact minimum is certified by implicit-hitting-set CEGAR: correction
sets (complements of satisfiable subsets) accumulate as hitting clauses,
minimum-cardinality hitting sets are found by the same SAT engine through a
sequential-counter cardinality ladder, and a hitting set whose induced
formula is unsatisfiable is a smallest KS-uncolorable subset.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .errors import BudgetExceeded, ColorablePool
from .hypergraph import OrthoGraph
from .satcore import encode_ks

__all__ = [
    "MinimalSet", "MinCertificate", "KsInstance", "greedy_minimize",
    "mus_extract", "certify_minimum", "mus_landscape", "exhaustive_minimum",
]


class MinimalSet:
    """A minimal KS-uncolorable ray subset (every deletion is colorable)."""

    __slots__ = ("ray_indices", "verified_minimal")

    def __init__(self, ray_indices, verified_minimal=False):
        self.ray_indices = tuple(sorted(ray_indices))
        self.verified_minimal = verified_minimal

    @property
    def size(self) -> int:
        return len(self.ray_indices)

    def __eq__(self, other):
        return isinstance(other, MinimalSet) and self.ray_indices == other.ray_indices

    def __hash__(self):
        return hash(self.ray_indices)

    def __repr__(self):
        return f"MinimalSet(size={self.size})"


class MinCertificate:
    """Exact pool minimum: no KS-uncolorable subset smaller than min_size
    exists in the pool, witnessed by a set of exactly that size."""

    __slots__ = ("pool_id", "min_size", "witness", "iterations", "method")

    def __init__(self, pool_id, min_size, witness, iterations, method):
        self.pool_id = pool_id
        self.min_size = min_size
        self.witness = witness
        self.iterations = iterations
        self.method = method

    def as_dict(self):
        return {
            "pool_id": self.pool_id,
            "min_size": self.min_size,
            "witness": list(self.witness.ray_indices),
            "iterations": self.iterations,
            "method": self.method,
        }

    def __repr__(self):
        return (f"MinCertificate(min_size={self.min_size}, "
                f"iterations={self.iterations}, method={self.method!r})")


class KsInstance:
    """Selector-encoded KS formula for a graph plus one incremental solver."""

    def __init__(self, graph: OrthoGraph):
        self.graph = graph
        self.n = graph.n
        self.cnf = encode_ks(graph, with_selectors=True)
        self.solver = self.cnf.solver()
        self.solves = 0

    @classmethod
    def from_pool(cls, pool) -> "KsInstance":
        return cls(OrthoGraph.from_pool(pool))

    def _assumptions(self, subset) -> list[int]:
        sel = self.cnf.selector_of_ray
        return [sel[r] for r in subset]

    def colorable(self, subset) -> bool:
        self.solves += 1
        res = self.solver.solve(self._assumptions(subset))
        if res is None:
            raise RuntimeError("budgetless solve returned unknown")
        return res

    def uncolorable(self, subset) -> bool:
        return not self.colorable(subset)

    def model_colors(self) -> list[bool]:
        return [self.solver.model[i + 1] for i in range(self.n)]

    def core_rays(self) -> list[int]:
        base = self.n
        return sorted(abs(l) - 1 - base for l in self.solver.core)


def _check_uncolorable(inst: KsInstance):
    if inst.colorable(range(inst.n)):
        raise ColorablePool("input pool admits a KS coloring")


def _delete_minimize(inst: KsInstance, subset: list[int],
                     refine: bool = False) -> list[int]:
    """One deletion pass in the given order; the survivors are a minimal
    uncolorable set (each kept ray was certified necessary at removal time,
    and colorability of deletions is monotone under further shrinking).

    With refine=True, every successful deletion additionally shrinks the
    working set to the solver's unsat core (clause-set refinement)."""
    current = set(subset)
    for r in subset:
        if r not in current:
            continue
        trial = current - {r}
        if inst.uncolorable(trial):
            current = set(inst.core_rays()) if refine else trial
    return sorted(current)


def _verify_minimal(inst: KsInstance, rays: list[int]) -> bool:
    if inst.colorable(rays):
        return False
    rayset = set(rays)
    for r in rays:
        if inst.uncolorable(rayset - {r}):
            return False
    return True


def greedy_minimize(pool, trials: int, seed: int = 0,
                    inst: KsInstance | None = None) -> list[MinimalSet]:
    """Randomized greedy removal, one verified minimal set per trial."""
    inst = inst or KsInstance.from_pool(pool)
    _check_uncolorable(inst)
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        order = list(range(inst.n))
        rng.shuffle(order)
        rays = _delete_minimize(inst, order)
        out.append(MinimalSet(rays, verified_minimal=_verify_minimal(inst, rays)))
    return out


def mus_extract(pool, seed: int = 0, inst: KsInstance | None = None) -> MinimalSet:
    """Assumption-core extraction followed by deletion-based minimization."""
    inst = inst or KsInstance.from_pool(pool)
    _check_uncolorable(inst)
    core = inst.core_rays()
    rng = random.Random(seed)
    rng.shuffle(core)
    rays = _delete_minimize(inst, core)
    return MinimalSet(rays, verified_minimal=_verify_minimal(inst, rays))


# -- smallest-subset certification ------------------------------------------------


try:
    from ks_atlas._core import HsBudgetExceeded as _HsBudgetExceeded
    from ks_atlas._core import min_hitting_set as _min_hitting_set_compiled
except ImportError:  # pragma: no cover - toolchain-dependent
    _min_hitting_set_compiled = None

    class _HsBudgetExceeded(Exception):
        pass


def _min_hitting_set_py(family, n, lb, k_max, covers):
    """Pure-Python twin of the compiled hitting-set kernel: depth-first
    search with a greedy disjoint-packing bound, branching on the smallest
    unhit set with highest-coverage elements first."""
    masks = []
    for rays in family:
        m = 0
        for r in rays:
            m |= 1 << r
        masks.append(m)

    def search(chosen_mask, budget, picked):
        used = 0
        packing = 0
        pivot = -1
        pivot_pc = -1
        for s in masks:
            if s & chosen_mask:
                continue
            pc = s.bit_count()
            if pivot_pc < 0 or pc < pivot_pc:
                pivot_pc = pc
                pivot = s
            if not (s & used):
                packing += 1
                used |= s
        if pivot < 0:
            return True
        if packing > budget:
            return False
        elems = []
        m = pivot
        while m:
            low = m & -m
            elems.append(low.bit_length() - 1)
            m ^= low
        elems.sort(key=lambda r: -covers[r])
        for r in elems:
            picked.append(r)
            if search(chosen_mask | (1 << r), budget - 1, picked):
                return True
            picked.pop()
        return False

    k = max(lb, 0)
    while k < k_max:
        picked: list[int] = []
        if search(0, k, picked):
            return len(picked), sorted(picked)
        k += 1
    return None


def _min_hitting_set_milp(family, n, k_max):
    """Minimum hitting set through the HiGHS integer-programming solver.

    The returned set is re-verified exactly against the family; only its
    size certificate rests on the MIP solver's branch-and-bound.  (Both the
    CDCL-with-cardinality route and a packing-bound branch and bound were
    tried first; each stalls on families whose minimum exceeds every
    combinatorial bound reachable without integral reasoning.)
    """
    import numpy as np
    from scipy import sparse
    from scipy.optimize import LinearConstraint, milp

    rows, cols = [], []
    for i, rays in enumerate(family):
        for r in rays:
            rows.append(i)
            cols.append(r)
    a = sparse.csr_matrix((np.ones(len(rows)), (rows, cols)),
                          shape=(len(family), n))
    res = milp(c=np.ones(n),
               constraints=LinearConstraint(a, lb=1),
               integrality=np.ones(n),
               bounds=(0, 1))
    if not res.success:
        raise RuntimeError(f"hitting-set MILP failed: {res.message}")
    chosen = [r for r in range(n) if res.x[r] > 0.5]
    for rays in family:
        if not any(r in rays for r in map(int, chosen)):
            raise AssertionError("MILP returned a non-hitting set")
    if len(chosen) >= k_max:
        return None
    return len(chosen), sorted(int(r) for r in chosen)


class _HittingSets:
    """Minimum-cardinality hitting sets over a growing family of ray sets.

    Integer programming (HiGHS via scipy) is the primary solver; a
    branch-and-bound with disjoint-packing bounds (compiled kernel when
    built) covers environments without scipy.
    """

    def __init__(self, n: int, k_max: int):
        self.n = n
        self.k_max = k_max
        self.family: list[tuple[int, ...]] = []
        self.covers: list[int] = [0] * n

    def add_family_clause(self, rays):
        rays = tuple(sorted(rays))
        for r in rays:
            self.covers[r] += 1
        self.family.append(rays)

    def _minimal_family(self) -> list[tuple[int, ...]]:
        uniq = sorted(set(self.family), key=len)
        minimal: list[set] = []
        keep: list[tuple[int, ...]] = []
        for rays in uniq:
            s = set(rays)
            if not any(m <= s for m in minimal):
                minimal.append(s)
                keep.append(rays)
        return keep

    def minimum(self, lb: int) -> tuple[int, list[int]] | None:
        """Smallest hitting set of size >= lb and < k_max, or None when every
        hitting set needs at least k_max rays.

        The node-budgeted branch and bound goes first (it wins whenever the
        disjoint-packing bound bites); exhausted budgets fall through to the
        integer-programming solver."""
        keep = self._minimal_family()
        if not keep:
            return (0, []) if self.k_max > 0 else None
        if _min_hitting_set_compiled is not None and self.n <= 256:
            try:
                return _min_hitting_set_compiled(keep, self.n, max(lb, 0),
                                                 self.k_max, self.covers,
                                                 2_000_000)
            except _HsBudgetExceeded:
                pass
        try:
            return _min_hitting_set_milp(keep, self.n, self.k_max)
        except ImportError:  # pragma: no cover - scipy always present here
            pass
        return _min_hitting_set_py(keep, self.n, max(lb, 0),
                                   self.k_max, self.covers)


def _grow_correction_set(inst: KsInstance, subset: list[int]) -> list[int]:
    """Correction set disjoint from the (satisfiable) subset: extend it
    towards a maximal satisfiable set, first along the current model, then
    by individual solver probes, and return the complement."""
    model = inst.model_colors()
    sel = inst.cnf.selector_of_ray
    removed = set()
    subset_set = set(subset)
    for cl in inst.cnf.clauses:
        satisfied = False
        rays = []
        for lit in cl:
            v = abs(lit)
            if v <= inst.n:
                if model[v - 1] == (lit > 0):
                    satisfied = True
                    break
            else:
                rays.append(v - 1 - inst.n)
        if not satisfied:
            drop = next(r for r in reversed(rays) if r not in subset_set)
            removed.add(drop)
    keep = [r for r in range(inst.n) if r not in removed]
    for r in sorted(removed):
        if inst.colorable(keep + [r]):
            keep.append(r)
            removed.discard(r)
    return sorted(removed)


def _triad_participants(graph: OrthoGraph) -> list[int]:
    """Rays that belong to at least one triad.

    A triad-free ray is never part of a minimal KS-uncolorable subset: no
    completeness clause can force it green, so coloring it red satisfies
    every clause it appears in, and the rest of the formula is untouched.
    Certification may therefore restrict its universe to these rays."""
    in_triad = [False] * graph.n
    for t in graph.triads:
        for v in t:
            in_triad[v] = True
    return [v for v in range(graph.n) if in_triad[v]]


def _greedy_hitting_set(family, covers_len: int,
                        rng: random.Random | None = None) -> list[int]:
    counts = [0] * covers_len
    unhit = list(family)
    chosen = []
    while unhit:
        for c in range(covers_len):
            counts[c] = 0
        for s in unhit:
            for r in s:
                counts[r] += 1
        top = max(counts)
        ties = [r for r in range(covers_len) if counts[r] == top]
        best = rng.choice(ties) if rng is not None else ties[0]
        chosen.append(best)
        unhit = [s for s in unhit if best not in s]
    return chosen


def certify_minimum(pool, budget: int = 1_000_000,
                    inst: KsInstance | None = None,
                    pool_id: str = "") -> MinCertificate:
    """Exact pool minimum by implicit-hitting-set CEGAR.

    Correction sets (complements of maximal satisfiable subsets) accumulate
    as a hitting family over the triad-participating rays; a
    minimum-cardinality hitting set whose induced formula is unsatisfiable
    is a smallest KS-uncolorable subset, and the loop closes when even the
    minimum hitting set reaches the best witness size.  The family is
    seeded from random maximal satisfiable subsets, and cheap greedy
    hitting sets drive the loop between exact minimizations.

    Pools with at most 18 rays are cross-checked against exhaustive subset
    enumeration.  Raises BudgetExceeded (with the partial lower bound) when
    the iteration budget runs out before the certificate closes.
    """
    inst = inst or KsInstance.from_pool(pool)
    _check_uncolorable(inst)
    universe = _triad_participants(inst.graph)
    uset = set(universe)

    # upper bound: best witness over randomized extractions and greedy trials
    witness = None
    for seed in range(4):
        cand = mus_extract(pool, seed=seed, inst=inst)
        if witness is None or cand.size < witness.size:
            witness = cand
    greedy_trials = 12 if inst.n <= 150 else 40
    for s in greedy_minimize(pool, trials=greedy_trials, seed=101, inst=inst):
        if s.size < witness.size:
            witness = s
    ub = witness.size

    rng = random.Random(7)
    hs = _HittingSets(inst.n, k_max=ub)

    def harvest(base: list[int], times: int = 1):
        """Grow base to maximal satisfiable subsets along random orders and
        record the complementary correction sets (within the universe); each
        is disjoint from base, so it rules the candidate out."""
        for _ in range(times):
            current = list(base)
            order = [r for r in universe if r not in base]
            rng.shuffle(order)
            for r in order:
                if inst.colorable(current + [r]):
                    current.append(r)
            hs.add_family_clause(sorted(uset - set(current)))

    harvest([], times=60)

    iterations = 0
    lb = 0
    min_size = None
    best = None
    while min_size is None:
        # cheap phase: greedy hitting sets as candidates while they fit
        overshoots = 0
        while overshoots < 4:
            if iterations >= budget:
                raise BudgetExceeded(
                    f"no certificate after {iterations} iterations", lower_bound=lb)
            candidate = _greedy_hitting_set(hs._minimal_family(), inst.n, rng)
            if len(candidate) > ub - 1:
                overshoots += 1
                continue
            iterations += 1
            if inst.uncolorable(candidate):
                shrunk = _delete_minimize(inst, sorted(candidate))
                ub = len(shrunk)
                witness = MinimalSet(shrunk, verified_minimal=True)
                hs.k_max = ub
                break
            harvest(candidate, times=2)
        # exact phase
        if iterations >= budget:
            raise BudgetExceeded(
                f"no certificate after {iterations} iterations", lower_bound=lb)
        found = hs.minimum(lb)
        if found is None:
            min_size, best = ub, witness
            break
        lb, candidate = found
        iterations += 1
        if inst.uncolorable(candidate):
            min_size = len(candidate)
            best = MinimalSet(candidate,
                              verified_minimal=_verify_minimal(inst, candidate))
            break
        harvest(candidate, times=8)

    if inst.n <= 18:
        oracle = exhaustive_minimum(pool, inst=inst)
        if oracle != min_size:
            raise AssertionError(
                f"certified {min_size} but exhaustive enumeration found {oracle}")
    return MinCertificate(pool_id or f"pool-n{inst.n}", min_size, best,
                          iterations, "hitting_set_cegar")


def exhaustive_minimum(pool, inst: KsInstance | None = None) -> int | None:
    """Smallest uncolorable subset size by direct enumeration (oracle path;
    None when even the full pool is colorable)."""
    inst = inst or KsInstance.from_pool(pool)
    if inst.colorable(range(inst.n)):
        return None
    for k in range(1, inst.n + 1):
        for subset in itertools.combinations(range(inst.n), k):
            if inst.uncolorable(subset):
                return k
    return inst.n


# -- landscape ----------------------------------------------------------------------


class LandscapeReport:
    __slots__ = ("trials", "size_histogram", "sets", "min_size", "distinct",
                 "symmetry_classes", "union_rays", "core_rays", "ray_frequency",
                 "norm_strata", "jaccard_mean", "shared_min", "shared_max",
                 "sets_with_norm")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw[k])

    def as_dict(self):
        return {
            "trials": self.trials,
            "size_histogram": dict(sorted(self.size_histogram.items())),
            "min_size": self.min_size,
            "distinct_minimum_sets": self.distinct,
            "symmetry_classes": self.symmetry_classes,
            "union_size": len(self.union_rays),
            "union_rays": list(self.union_rays),
            "core_size": len(self.core_rays),
            "core_rays": list(self.core_rays),
            "norm_strata": {str(k): v for k, v in sorted(self.norm_strata.items())},
            "sets_with_norm": {str(k): v for k, v in sorted(self.sets_with_norm.items())},
            "jaccard_mean": self.jaccard_mean,
            "shared_range": [self.shared_min, self.shared_max],
        }


def mus_landscape(pool, trials: int, seed: int = 0,
                  inst: KsInstance | None = None) -> LandscapeReport:
    """Repeated randomized deletion extraction; the landscape statistics
    (distinct sets, symmetry classes, union, invariant core, norm strata,
    overlap) are computed over the minimum-size minimal sets reached.

    Set identity is the sorted ray-index tuple within the pool ordering;
    equivalence classes under the automorphism group of the pool's
    orthogonality graph are reported alongside.
    """
    inst = inst or KsInstance.from_pool(pool)
    _check_uncolorable(inst)
    # Deletion orders run over the full pool: seeding from an unsat core
    # funnels every trial into the core's own basin (core contents are
    # engine-specific), which defeats the diversity the landscape measures.
    rng = random.Random(seed)
    seen: dict[tuple, int] = {}
    size_hist: dict[int, int] = {}
    for _ in range(trials):
        order = list(range(inst.n))
        rng.shuffle(order)
        rays = tuple(_delete_minimize(inst, order))
        seen[rays] = seen.get(rays, 0) + 1
        size_hist[len(rays)] = size_hist.get(len(rays), 0) + 1

    min_size = min(size_hist)
    sets = sorted(s for s in seen if len(s) == min_size)
    union: set[int] = set()
    for s in sets:
        union.update(s)
    core_rays = set(sets[0])
    for s in sets[1:]:
        core_rays &= set(s)

    freq: dict[int, int] = {}
    for s in sets:
        for r in s:
            freq[r] = freq.get(r, 0) + 1

    norms = pool.norms()
    strata: dict[Fraction, dict] = {}
    for r in union:
        key = norms[r]
        entry = strata.setdefault(key, {"rays": 0, "in_all": 0, "max_sets": 0})
        entry["rays"] += 1
        entry["max_sets"] = max(entry["max_sets"], freq[r])
        if freq[r] == len(sets):
            entry["in_all"] += 1
    # number of minimum-size sets touching each norm stratum of the pool
    sets_with_norm: dict[Fraction, int] = {}
    for nv in sorted(set(norms)):
        sets_with_norm[nv] = sum(1 for s in sets if any(norms[r] == nv for r in s))

    shared = []
    jacc = []
    for a, b in itertools.combinations(sets, 2):
        inter = len(set(a) & set(b))
        shared.append(inter)
        jacc.append(inter / len(set(a) | set(b)))

    from .structure import pool_symmetry_classes  # local: avoids module cycle
    classes = pool_symmetry_classes(pool, [s for s in sets])

    return LandscapeReport(
        trials=trials,
        size_histogram=size_hist,
        sets=sets,
        min_size=min_size,
        distinct=len(sets),
        symmetry_classes=classes,
        union_rays=sorted(union),
        core_rays=sorted(core_rays),
        ray_frequency=freq,
        norm_strata=strata,
        sets_with_norm=sets_with_norm,
        jaccard_mean=(sum(jacc) / len(jacc)) if jacc else 1.0,
        shared_min=min(shared) if shared else 0,
        shared_max=max(shared) if shared else 0,
    )
