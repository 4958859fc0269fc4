"""Orthogonality graph/hypergraph structure: degrees, auxiliary rays,
components, adjacency spectrum and the Hoffman independence bound."""

from __future__ import annotations

import numpy as np

__all__ = ["OrthoGraph", "GraphProfile", "profile", "spectrum_and_hoffman"]


class OrthoGraph:
    """Vertices are rays; edges are orthogonal pairs; triads are the
    triangles (complete bases in dimension 3)."""

    __slots__ = ("n", "edges", "triads")

    def __init__(self, n: int, edges, triads, validate: bool = True):
        self.n = n
        self.edges = tuple(sorted(tuple(sorted(e)) for e in edges))
        self.triads = tuple(sorted(tuple(sorted(t)) for t in triads))
        if validate:
            eset = set(self.edges)
            if len(eset) != len(self.edges):
                raise ValueError("duplicate edges")
            for i, j in self.edges:
                if i == j or not (0 <= i < n and 0 <= j < n):
                    raise ValueError(f"bad edge ({i}, {j})")
            for t in self.triads:
                i, j, k = t
                if len({i, j, k}) != 3:
                    raise ValueError(f"degenerate triad {t}")
                for pair in ((i, j), (i, k), (j, k)):
                    if pair not in eset:
                        raise ValueError(f"triad {t} missing edge {pair}")

    @classmethod
    def from_pool(cls, pool) -> "OrthoGraph":
        return cls(len(pool.rays), pool.edges, pool.triads, validate=False)

    def adjacency_masks(self) -> list[int]:
        adj = [0] * self.n
        for i, j in self.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def induced(self, vertices) -> "OrthoGraph":
        """Subgraph on the given vertices, relabeled 0..k-1 in sorted order;
        triads are re-derived as triangles of the surviving edge set."""
        verts = sorted(vertices)
        remap = {v: i for i, v in enumerate(verts)}
        keep = set(verts)
        edges = [(remap[i], remap[j]) for i, j in self.edges if i in keep and j in keep]
        g = OrthoGraph(len(verts), edges, (), validate=False)
        return OrthoGraph(len(verts), edges, g.triangles(), validate=False)

    def triangles(self) -> list[tuple[int, int, int]]:
        adj = self.adjacency_masks()
        tris = []
        for i, j in self.edges:
            common = (adj[i] & adj[j]) >> (j + 1)
            k = j + 1
            while common:
                if common & 1:
                    tris.append((i, j, k))
                common >>= 1
                k += 1
        return tris

    def __repr__(self):
        return f"OrthoGraph(n={self.n}, edges={len(self.edges)}, triads={len(self.triads)})"


class GraphProfile:
    """Degree histogram plus basis/auxiliary/isolated accounting.

    A vertex with at least one edge but no triad membership is auxiliary; a
    vertex with no edges at all is reported separately as isolated.
    """

    __slots__ = ("n", "degree_histogram", "basis_count", "auxiliary_count",
                 "isolated_count", "component_sizes")

    def __init__(self, n, degree_histogram, basis_count, auxiliary_count,
                 isolated_count, component_sizes):
        self.n = n
        self.degree_histogram = degree_histogram
        self.basis_count = basis_count
        self.auxiliary_count = auxiliary_count
        self.isolated_count = isolated_count
        self.component_sizes = component_sizes

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "degree_histogram": dict(sorted(self.degree_histogram.items())),
            "basis_count": self.basis_count,
            "auxiliary_count": self.auxiliary_count,
            "isolated_count": self.isolated_count,
            "component_sizes": list(self.component_sizes),
        }

    def __repr__(self):
        return f"GraphProfile({self.as_dict()!r})"


def profile(g: OrthoGraph) -> GraphProfile:
    deg = g.degrees()
    hist: dict[int, int] = {}
    for d in deg:
        hist[d] = hist.get(d, 0) + 1
    in_triad = [False] * g.n
    for t in g.triads:
        for v in t:
            in_triad[v] = True
    auxiliary = sum(1 for v in range(g.n) if deg[v] > 0 and not in_triad[v])
    isolated = sum(1 for v in range(g.n) if deg[v] == 0)
    # connected components by union-find
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in g.edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri
    sizes: dict[int, int] = {}
    for v in range(g.n):
        r = find(v)
        sizes[r] = sizes.get(r, 0) + 1
    component_sizes = tuple(sorted(sizes.values(), reverse=True))
    return GraphProfile(g.n, hist, len(g.triads), auxiliary, isolated, component_sizes)


def spectrum_and_hoffman(g: OrthoGraph) -> tuple[float, float, float]:
    """Extreme adjacency eigenvalues and the Hoffman bound
    n * (-lambda_min) / (lambda_max - lambda_min); an edgeless graph has no
    spectral content and the bound is reported as n."""
    if g.n < 1:
        raise ValueError("empty graph")
    if not g.edges:
        return 0.0, 0.0, float(g.n)
    a = np.zeros((g.n, g.n))
    for i, j in g.edges:
        a[i, j] = a[j, i] = 1.0
    eig = np.linalg.eigvalsh(a)
    lam_min, lam_max = float(eig[0]), float(eig[-1])
    hoffman = g.n * (-lam_min) / (lam_max - lam_min)
    return lam_max, lam_min, hoffman
