"""Cabello-Severini-Winter graph invariants.

alpha (classical bound): exact maximum independent set by branch and bound
with greedy clique-cover pruning. theta (quantum bound): Lovasz number by
alternating-direction splitting on the standard SDP, reported with a
certified primal/dual enclosure. alpha* (nonsignaling bound): fractional
packing over the maximal cliques by exact rational simplex.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .errors import ConvergenceFailure
from .hypergraph import OrthoGraph

__all__ = [
    "CswReport", "independence_number", "lovasz_theta", "fractional_packing",
    "maximal_cliques", "csw_report",
]


class CswReport:
    __slots__ = ("alpha", "alpha_witness", "theta", "theta_gap", "alpha_star")

    def __init__(self, alpha, alpha_witness, theta, theta_gap, alpha_star):
        self.alpha = alpha
        self.alpha_witness = alpha_witness
        self.theta = theta
        self.theta_gap = theta_gap
        self.alpha_star = alpha_star

    def as_dict(self):
        return {
            "alpha": self.alpha,
            "theta": self.theta,
            "theta_gap": self.theta_gap,
            "alpha_star_exact": str(self.alpha_star),
            "alpha_star": float(self.alpha_star),
            "theta_over_alpha": self.theta / self.alpha if self.alpha else None,
            "alpha_star_over_alpha": (float(self.alpha_star) / self.alpha
                                      if self.alpha else None),
        }


def csw_report(g: OrthoGraph, tol: float = 1e-4) -> CswReport:
    alpha, witness = independence_number(g)
    theta, gap = lovasz_theta(g, tol=tol, with_gap=True)
    alpha_star = fractional_packing(g, maximal_cliques(g))
    return CswReport(alpha, witness, theta, gap, alpha_star)


# -- independence number -----------------------------------------------------------


def independence_number(g: OrthoGraph) -> tuple[int, list[int]]:
    """Exact maximum independent set with a verified witness.

    Integer programming (HiGHS) is the primary route: the greedy
    clique-cover branch and bound below stalls on the larger sparse pools,
    whose cover bounds sit far above alpha.  The witness is always
    re-verified edge by edge, and the n <= 12 brute-force oracle in the
    test suite checks the optimum independently.
    """
    try:
        alpha, witness = _independence_milp(g)
    except ImportError:  # pragma: no cover - scipy always present here
        alpha, witness = _independence_bnb(g)
    adj = g.adjacency_masks()
    for v in witness:
        for u in witness:
            if u != v and (adj[v] >> u) & 1:
                raise AssertionError("independence witness has an edge")
    return alpha, witness


def _independence_milp(g: OrthoGraph) -> tuple[int, list[int]]:
    import numpy as np
    from scipy import sparse
    from scipy.optimize import LinearConstraint, milp

    n = g.n
    if not g.edges:
        return n, list(range(n))
    rows, cols, vals = [], [], []
    for k, (i, j) in enumerate(g.edges):
        rows += [k, k]
        cols += [i, j]
        vals += [1.0, 1.0]
    a = sparse.csr_matrix((vals, (rows, cols)), shape=(len(g.edges), n))
    res = milp(c=-np.ones(n),
               constraints=LinearConstraint(a, ub=1),
               integrality=np.ones(n),
               bounds=(0, 1))
    if not res.success:
        raise RuntimeError(f"independence MILP failed: {res.message}")
    witness = sorted(int(v) for v in range(n) if res.x[v] > 0.5)
    return len(witness), witness


def _independence_bnb(g: OrthoGraph) -> tuple[int, list[int]]:
    """Branch and bound with greedy clique-cover pruning (scipy-free path)."""
    n = g.n
    adj = g.adjacency_masks()
    order = sorted(range(n), key=lambda v: -bin(adj[v]).count("1"))
    pos = {v: i for i, v in enumerate(order)}
    adj_o = [0] * n
    for v in range(n):
        m = adj[v]
        om = 0
        while m:
            low = m & -m
            om |= 1 << pos[low.bit_length() - 1]
            m ^= low
        adj_o[pos[v]] = om

    best = [0, 0]  # size, mask (in reordered labels)

    def clique_cover_bound(cand: int) -> int:
        cliques = 0
        rest = cand
        while rest:
            v = (rest & -rest).bit_length() - 1
            clique = 1 << v
            rest ^= 1 << v
            grow = rest & adj_o[v]
            while grow:
                u = (grow & -grow).bit_length() - 1
                clique |= 1 << u
                rest ^= 1 << u
                grow &= adj_o[u]
            cliques += 1
        return cliques

    def expand(cur: int, cur_size: int, cand: int):
        if not cand:
            if cur_size > best[0]:
                best[0], best[1] = cur_size, cur
            return
        if cur_size + clique_cover_bound(cand) <= best[0]:
            return
        v = (cand & -cand).bit_length() - 1
        # branch: v in the set
        expand(cur | (1 << v), cur_size + 1, cand & ~adj_o[v] & ~(1 << v))
        # branch: v excluded
        if cur_size + clique_cover_bound(cand ^ (1 << v)) > best[0]:
            expand(cur, cur_size, cand ^ (1 << v))

    expand(0, 0, (1 << n) - 1)
    witness = []
    m = best[1]
    while m:
        low = m & -m
        witness.append(order[low.bit_length() - 1])
        m ^= low
    return best[0], sorted(witness)


# -- Lovasz theta ----------------------------------------------------------------------


def lovasz_theta(g: OrthoGraph, tol: float = 1e-4, max_iter: int = 50000,
                 with_gap: bool = False):
    """theta(G) by ADMM on: maximize <J, X>, tr X = 1, X_ij = 0 on edges,
    X⪰0.

    The reported value is the midpoint of a certified enclosure: a feasible
    primal X gives a lower bound, and any symmetric B with B_ij = 1 off the
    edge set bounds theta above by lambda_max(B) (the dual characterization),
    with B built from the running multipliers.  ConvergenceFailure when the
    enclosure stays wider than tol.
    """
    n = g.n
    if n == 0:
        raise ValueError("empty graph")
    if not g.edges:
        val = float(n)
        return (val, 0.0) if with_gap else val
    comps = _components(g)
    if len(comps) > 1:
        # theta is additive over disjoint unions; per-component solves also
        # converge much faster than the stacked problem
        total = 0.0
        total_gap = 0.0
        for comp in comps:
            sub = g.induced(comp)
            val, gap = lovasz_theta(sub, tol=tol / len(comps),
                                    max_iter=max_iter, with_gap=True)
            total += val
            total_gap += gap
        return (total, total_gap) if with_gap else total
    edges = np.array(g.edges, dtype=int)
    ei, ej = edges[:, 0], edges[:, 1]
    jmat = np.ones((n, n))
    rho = float(n) / 4.0
    relax = 1.6
    x = np.eye(n) / n
    z = x.copy()
    u = np.zeros((n, n))
    eye = np.eye(n)

    def project_affine(m):
        m = (m + m.T) / 2
        m[ei, ej] = 0.0
        m[ej, ei] = 0.0
        np.fill_diagonal(m, m.diagonal() + (1.0 - m.trace()) / n)
        return m

    def project_psd(m):
        w, v = np.linalg.eigh((m + m.T) / 2)
        w = np.clip(w, 0.0, None)
        return (v * w) @ v.T

    def bounds():
        # primal lower bound: zero the edge entries of the PSD iterate,
        # lift by its smallest eigenvalue, renormalize the trace
        zz = z.copy()
        zz[ei, ej] = 0.0
        zz[ej, ei] = 0.0
        zz = (zz + zz.T) / 2
        w = np.linalg.eigvalsh(zz)
        lift = max(0.0, -float(w[0]))
        den = float(zz.trace() + lift * n)
        lower = float(jmat.ravel() @ zz.ravel() + lift * n) / den if den > 0 else 0.0
        # dual upper bound: B = 1 off the edge set, edge entries from the
        # running multiplier (B_ij -> rho * u_ij at the KKT point); any such
        # B bounds theta by its largest eigenvalue
        b = np.ones((n, n))
        scaled = rho * u
        b[ei, ej] = scaled[ei, ej]
        b[ej, ei] = b[ei, ej]
        upper = float(np.linalg.eigvalsh((b + b.T) / 2)[-1])
        return lower, upper

    best_lower, best_upper = 0.0, float(n)
    check_every = 50
    for it in range(1, max_iter + 1):
        x = project_affine(z - u + jmat / rho)
        xr = relax * x + (1.0 - relax) * z
        z_new = project_psd(xr + u)
        u = u + xr - z_new
        z_prev, z = z, z_new
        if it % check_every == 0:
            lower, upper = bounds()
            best_lower = max(best_lower, lower)
            best_upper = min(best_upper, upper)
            if best_upper - best_lower <= tol:
                val = (best_upper + best_lower) / 2
                return (val, best_upper - best_lower) if with_gap else val
            # residual balancing keeps the two projections in step
            r_primal = float(np.linalg.norm(x - z))
            r_dual = rho * float(np.linalg.norm(z - z_prev))
            if r_primal > 10.0 * r_dual:
                rho *= 2.0
                u /= 2.0
            elif r_dual > 10.0 * r_primal:
                rho /= 2.0
                u *= 2.0
    if best_upper - best_lower <= tol:
        val = (best_upper + best_lower) / 2
        return (val, best_upper - best_lower) if with_gap else val
    raise ConvergenceFailure(
        f"theta enclosure {best_upper - best_lower:.2e} above tolerance {tol:g} "
        f"after {max_iter} iterations")


def _components(g: OrthoGraph) -> list[list[int]]:
    parent = list(range(g.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in g.edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values(), key=lambda c: (-len(c), c[0]))


# -- fractional packing -----------------------------------------------------------------


def maximal_cliques(g: OrthoGraph) -> list[tuple[int, ...]]:
    """All maximal cliques by Bron-Kerbosch with pivoting (size <= 3 here:
    a 4-clique would be four mutually orthogonal rays in dimension 3)."""
    n = g.n
    adj = g.adjacency_masks()
    out: list[tuple[int, ...]] = []

    def bk(r: int, p: int, x: int):
        if p == 0 and x == 0:
            clique = []
            m = r
            while m:
                low = m & -m
                clique.append(low.bit_length() - 1)
                m ^= low
            out.append(tuple(clique))
            return
        pux = p | x
        pivot = (pux & -pux).bit_length() - 1
        best = -1
        m = pux
        while m:
            low = m & -m
            v = low.bit_length() - 1
            deg = bin(p & adj[v]).count("1")
            if deg > best:
                best, pivot = deg, v
            m ^= low
        m = p & ~adj[pivot]
        while m:
            low = m & -m
            v = low.bit_length() - 1
            bk(r | low, p & adj[v], x & adj[v])
            p ^= low
            x |= low
            m ^= low

    bk(0, (1 << n) - 1, 0)
    return sorted(out)


def fractional_packing(g: OrthoGraph, cliques) -> Fraction:
    """Exact optimum of max sum(x) over x >= 0 with sum over each maximal
    clique at most 1, by rational simplex (Bland's rule, no cycling)."""
    n = g.n
    if not cliques:
        return Fraction(n)
    return _simplex_max_ones(n, [tuple(c) for c in cliques])


def _simplex_max_ones(n: int, rows: list[tuple[int, ...]]) -> Fraction:
    """max 1.x s.t. per-row sum(x_r) <= 1, x >= 0, with dense Fraction
    tableau; the all-slack basis is feasible so no phase-1 is needed."""
    m = len(rows)
    width = n + m + 1
    zero = Fraction(0)
    one = Fraction(1)
    tab = []
    for i, row in enumerate(rows):
        line = [zero] * width
        for r in row:
            line[r] = one
        line[n + i] = one
        line[-1] = one
        tab.append(line)
    obj = [-one] * n + [zero] * m + [zero]
    basis = [n + i for i in range(m)]

    while True:
        # Bland: entering = lowest index with negative reduced cost
        enter = -1
        for j in range(n + m):
            if obj[j] < 0:
                enter = j
                break
        if enter == -1:
            break
        leave = -1
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave == -1:
            raise ArithmeticError("packing LP unbounded; clique list invalid")
        piv = tab[leave][enter]
        row = tab[leave]
        if piv != 1:
            tab[leave] = row = [v / piv for v in row]
        for i in range(m):
            if i != leave:
                f = tab[i][enter]
                if f:
                    tab[i] = [a - f * b for a, b in zip(tab[i], row)]
        f = obj[enter]
        if f:
            obj = [a - f * b for a, b in zip(obj, row)]
        basis[leave] = enter

    return obj[-1]
