"""Structural analyses: graph/hypergraph isomorphism, merge saturation,
critical bases, the rigidity Jacobian, and abstract-graph realizability."""

from __future__ import annotations

import itertools
import math
import random

import numpy as np

from .errors import ColorableInput, RankDeficientInput
from .hypergraph import OrthoGraph
from .satcore import encode_ks, sat_solve
from .satcore.engine import Solver

__all__ = [
    "IsoWitness", "RigidityReport", "graph_isomorphic", "merge_saturation",
    "critical_bases", "rigidity_nullspace", "realizability",
    "pool_symmetry_classes",
]


class IsoWitness:
    """Vertex bijection mapping edges onto edges; triad_preserving records
    whether it also maps triads onto triads."""

    __slots__ = ("bijection", "triad_preserving")

    def __init__(self, bijection, triad_preserving):
        self.bijection = tuple(bijection)
        self.triad_preserving = triad_preserving

    def __repr__(self):
        return f"IsoWitness(triad_preserving={self.triad_preserving})"


def _wl_colors(n, adj_sets, init, rounds=3):
    """Iterated neighborhood refinement; deterministic integer colors."""
    colors = list(init)
    for _ in range(rounds):
        sigs = []
        for v in range(n):
            neigh = sorted(colors[u] for u in adj_sets[v])
            sigs.append((colors[v], tuple(neigh)))
        table = {}
        for s in sorted(set(sigs)):
            table[s] = len(table)
        colors = [table[s] for s in sigs]
    return colors


def _find_isomorphism(n, adj1, adj2, col1, col2):
    """Backtracking search for a color-preserving graph isomorphism;
    candidate order favors vertices attached to the mapped prefix."""
    from collections import Counter
    if Counter(col1) != Counter(col2):
        return None
    deg1 = [len(adj1[v]) for v in range(n)]
    deg2 = [len(adj2[v]) for v in range(n)]

    order = []
    placed = [False] * n
    attach = [0] * n
    for _ in range(n):
        best, best_key = -1, None
        for v in range(n):
            if placed[v]:
                continue
            key = (attach[v], deg1[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        order.append(best)
        placed[best] = True
        for u in adj1[best]:
            attach[u] += 1

    mapping = [-1] * n
    used = [False] * n

    def extend(depth):
        if depth == n:
            return True
        u = order[depth]
        mapped_nb = [mapping[x] for x in adj1[u] if mapping[x] != -1]
        for w in range(n):
            if used[w] or col2[w] != col1[u] or deg2[w] != deg1[u]:
                continue
            ok = True
            for mw in mapped_nb:
                if mw not in adj2[w]:
                    ok = False
                    break
            if ok:
                # non-neighbors must stay non-neighbors
                cnt = sum(1 for x in adj2[w] if mapping_inv[x] != -1)
                if cnt != len(mapped_nb):
                    ok = False
            if not ok:
                continue
            mapping[u] = w
            mapping_inv[w] = u
            used[w] = True
            if extend(depth + 1):
                return True
            mapping[u] = -1
            mapping_inv[w] = -1
            used[w] = False
        return False

    mapping_inv = [-1] * n
    if extend(0):
        return list(mapping)
    return None


def graph_isomorphic(g1: OrthoGraph, g2: OrthoGraph,
                     check_triads: bool = False,
                     colors1=None, colors2=None) -> IsoWitness | None:
    """Complete isomorphism search with degree/neighborhood prefiltering.

    Returns a verified witness or None.  With check_triads the witness is
    additionally checked to map triads onto triads (automatic whenever the
    triad lists are exactly the triangles of the edge sets).
    """
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return None
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return None
    n = g1.n
    adj1 = [set() for _ in range(n)]
    adj2 = [set() for _ in range(n)]
    for i, j in g1.edges:
        adj1[i].add(j)
        adj1[j].add(i)
    for i, j in g2.edges:
        adj2[i].add(j)
        adj2[j].add(i)
    base1 = colors1 if colors1 is not None else [0] * n
    base2 = colors2 if colors2 is not None else [0] * n
    col1 = _wl_colors(n, adj1, base1)
    col2 = _wl_colors(n, adj2, base2)
    mapping = _find_isomorphism(n, adj1, adj2, col1, col2)
    if mapping is None:
        return None
    # verify edge bijection before returning
    e2 = set(g2.edges)
    for i, j in g1.edges:
        a, b = mapping[i], mapping[j]
        if (min(a, b), max(a, b)) not in e2:
            raise AssertionError("isomorphism witness fails edge check")
    triad_ok = True
    if check_triads:
        t2 = {tuple(sorted(t)) for t in g2.triads}
        t1_mapped = {tuple(sorted((mapping[a], mapping[b], mapping[c])))
                     for a, b, c in g1.triads}
        triad_ok = t1_mapped == t2 and len(g1.triads) == len(g2.triads)
    return IsoWitness(mapping, triad_ok)


def pool_symmetry_classes(pool, sets) -> int:
    """Number of equivalence classes of the given ray-index sets under the
    automorphism group of the pool's orthogonality graph (marked-graph
    isomorphism; an isomorphism of (pool, S) onto (pool, T) is exactly an
    automorphism carrying S to T)."""
    g = OrthoGraph.from_pool(pool) if not isinstance(pool, OrthoGraph) else pool
    n = g.n
    adj = [set() for _ in range(n)]
    for i, j in g.edges:
        adj[i].add(j)
        adj[j].add(i)

    def signature(s):
        marked = set(s)
        init = [1 if v in marked else 0 for v in range(n)]
        cols = _wl_colors(n, adj, init)
        return tuple(sorted(cols)), cols

    reps: list[tuple[tuple, list, set]] = []  # (signature, colors, set)
    classes = 0
    for s in sets:
        sig, cols = signature(s)
        found = False
        for rsig, rcols, rset in reps:
            if rsig != sig:
                continue
            if _find_isomorphism(n, adj, adj, cols, rcols) is not None:
                found = True
                break
        if not found:
            reps.append((sig, cols, set(s)))
            classes += 1
    return classes


# -- merges --------------------------------------------------------------------------


def merge_saturation(graph: OrthoGraph) -> tuple[int, int, list]:
    """Merge every non-orthogonal vertex pair and test KS colorability.

    A merge identifies v2 with v1: v1 inherits v2's incident edges, v2 is
    removed, and the triads are re-derived as the 3-cliques of the new edge
    set.  (Deleting v2 outright cannot be the intended reading: on a
    minimal KS set every deletion restores colorability, and minimal sets
    are observed to be merge-saturated.)

    Returns (total_merges, ks_preserving_count, failures)."""
    base = sat_solve(encode_ks(graph))
    if base.status != "unsat":
        raise ColorableInput("merge saturation requires a KS-uncolorable input")
    eset = set(graph.edges)
    adj = [set() for _ in range(graph.n)]
    for i, j in graph.edges:
        adj[i].add(j)
        adj[j].add(i)
    total = preserved = 0
    failures = []
    for v1 in range(graph.n):
        for v2 in range(v1 + 1, graph.n):
            if (v1, v2) in eset:
                continue
            total += 1
            keep = [v for v in range(graph.n) if v != v2]
            remap = {v: i for i, v in enumerate(keep)}
            medges = set()
            for i, j in graph.edges:
                a = v1 if i == v2 else i
                b = v1 if j == v2 else j
                if a == b:
                    continue
                medges.add((min(remap[a], remap[b]), max(remap[a], remap[b])))
            merged = OrthoGraph(len(keep), sorted(medges), (), validate=False)
            merged = OrthoGraph(len(keep), merged.edges, merged.triangles(),
                                validate=False)
            res = sat_solve(encode_ks(merged))
            if res.status == "unsat":
                preserved += 1
            else:
                failures.append((v1, v2))
    return total, preserved, failures


# -- critical bases ---------------------------------------------------------------------


def critical_bases(graph: OrthoGraph, kappa_cap: int = 3):
    """Essential bases and the critical number.

    A basis is essential when dropping its completeness clause (pair
    constraints stay) restores colorability; kappa is the smallest number of
    bases whose joint removal restores colorability, searched up to
    kappa_cap; subsets achieving it at size kappa are returned.
    """
    bases = list(graph.triads)
    m = len(bases)
    n = graph.n
    s = Solver()
    s.ensure_vars(n + m)
    for i, j in graph.edges:
        s.add_clause([-(i + 1), -(j + 1)])
    for b, (i, j, k) in enumerate(bases):
        s.add_clause([i + 1, j + 1, k + 1, -(n + 1 + b)])

    def colorable_without(dropped) -> bool:
        assume = [n + 1 + b for b in range(m) if b not in dropped]
        return bool(s.solve(assume))

    if colorable_without(set()):
        raise ColorableInput("critical bases require a KS-uncolorable input")

    essential = [b for b in range(m) if colorable_without({b})]
    from fractions import Fraction
    eta = Fraction(len(essential), m) if m else Fraction(0)

    kappa = None
    critical_subsets = []
    for k in range(1, kappa_cap + 1):
        for combo in itertools.combinations(range(m), k):
            if colorable_without(set(combo)):
                critical_subsets.append(combo)
        if critical_subsets:
            kappa = k
            break
    return {
        "basis_count": m,
        "essential_count": len(essential),
        "essential": essential,
        "eta": eta,
        "kappa": kappa,  # None means "> kappa_cap"
        "critical_subsets_at_kappa": critical_subsets,
        "subsets_tested_at_kappa": math.comb(m, kappa) if kappa else None,
    }


# -- rigidity ------------------------------------------------------------------------------


class RigidityReport:
    __slots__ = ("n", "constraint_count", "nullity", "expected", "status",
                 "singular_tail")

    def __init__(self, n, constraint_count, nullity, expected, status, singular_tail):
        self.n = n
        self.constraint_count = constraint_count
        self.nullity = nullity
        self.expected = expected
        self.status = status
        self.singular_tail = singular_tail

    def as_dict(self):
        return {
            "n": self.n,
            "constraint_count": self.constraint_count,
            "nullity": self.nullity,
            "expected": self.expected,
            "status": self.status,
            "singular_tail": [float(x) for x in self.singular_tail],
        }

    def __repr__(self):
        return f"RigidityReport(nullity={self.nullity}, expected={self.expected}, status={self.status!r})"


def _unit_embedding(rays) -> np.ndarray:
    vecs = np.array([[c.numeric() for c in r.coords] for r in rays], dtype=complex)
    norms = np.sqrt((vecs.conj() * vecs).sum(axis=1).real)
    return vecs / norms[:, None]


def rigidity_jacobian(rays, edges) -> tuple[np.ndarray, np.ndarray]:
    """Constraint Jacobian at the normalized floating embedding.

    Columns are the realified coordinates (Re then Im per entry, vector by
    vector); rows are one normalization constraint per vector plus the real
    and imaginary parts of each edge's Hermitian product."""
    u = _unit_embedding(rays)
    n = len(rays)
    cols = 6 * n
    rows = n + 2 * len(edges)
    jac = np.zeros((rows, cols))
    a, b = u.real, u.imag
    for i in range(n):
        jac[i, 6 * i:6 * i + 3] = 2 * a[i]
        jac[i, 6 * i + 3:6 * i + 6] = 2 * b[i]
    r = n
    for (i, j) in edges:
        # Re <v_i|v_j> and Im <v_i|v_j>
        jac[r, 6 * i:6 * i + 3] = a[j]
        jac[r, 6 * i + 3:6 * i + 6] = b[j]
        jac[r, 6 * j:6 * j + 3] = a[i]
        jac[r, 6 * j + 3:6 * j + 6] = b[i]
        jac[r + 1, 6 * i:6 * i + 3] = b[j]
        jac[r + 1, 6 * i + 3:6 * i + 6] = -a[j]
        jac[r + 1, 6 * j:6 * j + 3] = -b[i]
        jac[r + 1, 6 * j + 3:6 * j + 6] = a[i]
        r += 2
    return jac, u


def rigidity_nullspace(rays, edges=None, rel_threshold: float = 1e-8) -> RigidityReport:
    """Nullity of the constraint Jacobian versus the symmetry count n + 8.

    Real coordinate sets are embedded in C^3 as well, so the expected
    symmetry dimension is always n + 8."""
    rays = list(rays)
    n = len(rays)
    if edges is None:
        from .rays import hermitian_dot
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if hermitian_dot(rays[i], rays[j]).is_zero():
                    edges.append((i, j))
    jac, u = rigidity_jacobian(rays, edges)
    # the exact solution must satisfy the constraints at floating precision
    gram = u.conj() @ u.T
    worst = 0.0
    for i, j in edges:
        worst = max(worst, abs(gram[i, j]))
    for i in range(n):
        worst = max(worst, abs(gram[i, i] - 1.0))
    if worst > 1e-10:
        raise RankDeficientInput(f"embedding violates constraints by {worst:.2e}")
    sv = np.linalg.svd(jac, compute_uv=False)
    cutoff = rel_threshold * sv[0]
    rank = int((sv > cutoff).sum())
    nullity = jac.shape[1] - rank
    expected = n + 8
    if nullity == expected:
        status = "inf_rigid"
    elif nullity > expected:
        status = f"flex({nullity - expected})"
    else:
        status = f"anomalous({nullity - expected})"
    tail = sorted(sv)[:12]
    return RigidityReport(n, jac.shape[0], nullity, expected, status, tail)


# -- realizability ----------------------------------------------------------------------------


def realizability(g: OrthoGraph, restarts: int = 50, seed: int = 0,
                  tol: float = 1e-8) -> dict:
    """One-sided realizability test in R^3: parametrize rays by sphere
    angles and minimize the summed squared edge dot products by L-BFGS-B
    from random starts; 'realizable' requires final loss below tol."""
    from scipy.optimize import minimize as scipy_minimize

    n = g.n
    edges = np.array(g.edges, dtype=int).reshape(-1, 2)
    rng = random.Random(seed)

    def unpack(x):
        th, ph = x[:n], x[n:]
        st, ct = np.sin(th), np.cos(th)
        sp, cp = np.sin(ph), np.cos(ph)
        v = np.stack([st * cp, st * sp, ct], axis=1)
        return v, th, ph

    def loss_grad(x):
        v, th, ph = unpack(x)
        if len(edges) == 0:
            return 0.0, np.zeros_like(x)
        d = (v[edges[:, 0]] * v[edges[:, 1]]).sum(axis=1)
        loss = float((d * d).sum())
        gv = np.zeros_like(v)
        w = 2 * d
        np.add.at(gv, edges[:, 0], w[:, None] * v[edges[:, 1]])
        np.add.at(gv, edges[:, 1], w[:, None] * v[edges[:, 0]])
        st, ct = np.sin(th), np.cos(th)
        sp, cp = np.sin(ph), np.cos(ph)
        dth = np.stack([ct * cp, ct * sp, -st], axis=1)
        dph = np.stack([-st * sp, st * cp, np.zeros(n)], axis=1)
        grad = np.concatenate([(gv * dth).sum(axis=1), (gv * dph).sum(axis=1)])
        return loss, grad

    best = float("inf")
    for _ in range(restarts):
        x0 = np.array([rng.uniform(0, np.pi) for _ in range(n)] +
                      [rng.uniform(0, 2 * np.pi) for _ in range(n)])
        res = scipy_minimize(loss_grad, x0, jac=True, method="L-BFGS-B",
                             options={"maxiter": 500})
        best = min(best, float(res.fun))
        if best < tol:
            return {"status": "realizable", "loss": best}
    return {"status": "not_found", "loss": best}
