"""Canonical pools, minimal sets, and mixed-alphabet constructions.

Everything here is deterministic (fixed seeds, fixed trial counts) so that
reports and the shipped data files are byte-reproducible.  Results are
memoized per process: several presets share the same islands.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .. import algebra as alg
from ..hypergraph import OrthoGraph
from ..minimize import KsInstance, _delete_minimize, greedy_minimize
from ..rays import RayPool, complete_pool, generate_pool
from .alphabets import named_alphabet, sqrt_in_cyclotomic

__all__ = [
    "island_pool", "island_minimal_set", "island_graph", "minimal_graph",
    "instance_for", "mixed_pool", "find_ck33", "ISLANDS",
]

# the six islands: alphabet name, completion flag, certified pool minimum
ISLANDS = {
    "integer": ("integer", False, 31),
    "peres": ("peres", False, 33),
    "eisenstein": ("eisenstein", False, 33),
    "zsqrtm2": ("zsqrtm2", False, 33),
    "heegner7": ("heegner:7", False, 43),
    "golden": ("golden", True, 52),
}

_MIN_SEED = 3
_MIN_TRIALS = {"default": 40, "golden": 60}


@lru_cache(maxsize=None)
def island_pool(name: str) -> RayPool:
    alphabet, completed, _ = ISLANDS[name]
    pool = generate_pool(named_alphabet(alphabet))
    if completed:
        pool = complete_pool(pool)
    return pool


@lru_cache(maxsize=None)
def instance_for(name: str) -> KsInstance:
    return KsInstance.from_pool(island_pool(name))


@lru_cache(maxsize=None)
def island_minimal_set(name: str) -> tuple[int, ...]:
    """Deterministic minimal KS set for the island: best of seeded greedy
    trials, ties broken by the sorted index tuple.

    Golden minimum-size sets occur with several orthogonality-graph types
    (121 to 126 edges, all infinitesimally rigid); the 122-edge type is the
    canonical representative here, matching the published merge count of
    1204 = C(52,2) - 122."""
    pool = island_pool(name)
    inst = instance_for(name)
    trials = _MIN_TRIALS["golden" if name == "golden" else "default"]
    sets = greedy_minimize(pool, trials=trials, seed=_MIN_SEED, inst=inst)
    best = min(s.size for s in sets)
    candidates = [tuple(s.ray_indices) for s in sets if s.size == best]
    if name == "golden":
        g = island_graph(name)
        with_edges = [c for c in candidates if len(g.induced(c).edges) == 122]
        if with_edges:
            candidates = with_edges
    return min(candidates)


@lru_cache(maxsize=None)
def island_graph(name: str) -> OrthoGraph:
    return OrthoGraph.from_pool(island_pool(name))


@lru_cache(maxsize=None)
def minimal_graph(name: str) -> OrthoGraph:
    return island_graph(name).induced(island_minimal_set(name))


@lru_cache(maxsize=None)
def find_ck33() -> tuple[int, ...]:
    """The 33-ray minimal set of the integer pool with the (76 pairs, 20
    triads) profile, reached by seeded randomized deletion; the first hit
    in the deterministic seed sweep is the canonical representative."""
    inst = instance_for("integer")
    g = island_graph("integer")
    rng = random.Random(17)
    for _ in range(2000):
        order = list(range(inst.n))
        rng.shuffle(order)
        rays = tuple(_delete_minimize(inst, order))
        if len(rays) != 33:
            continue
        sub = g.induced(rays)
        if len(sub.edges) == 76 and len(sub.triads) == 20:
            return rays
    raise RuntimeError("CK-33 profile not found in 2000 seeded extractions")


# -- mixed alphabets ---------------------------------------------------------------


def _alphabet_in_ring(ring, name: str):
    """Symbols of a basic named alphabet re-expressed in a larger ring."""
    one = ring.one()
    if name == "integer":
        gens = [ring.from_int(2)]
    elif name == "sqrt2":
        gens = [sqrt_in_cyclotomic(ring, 2) if ring.kind == "cyclotomic"
                else ring.gen()]
    elif name == "sqrt3":
        gens = [sqrt_in_cyclotomic(ring, 3) if ring.kind == "cyclotomic"
                else ring.gen()]
    elif name == "sqrt5":
        gens = [sqrt_in_cyclotomic(ring, 5) if ring.kind == "cyclotomic"
                else ring.gen()]
    elif name == "golden":
        if ring.kind == "cyclotomic":
            from fractions import Fraction
            gens = [(ring.one() + sqrt_in_cyclotomic(ring, 5)).scale(Fraction(1, 2))]
        else:
            gens = [ring.gen()]
    else:
        raise KeyError(name)
    from ..rays import Alphabet
    return Alphabet.from_generators(ring, gens)


_MIXED_RINGS = {
    ("integer", "sqrt2"): lambda: alg.quadratic_ring(2, "sqrt"),
    ("integer", "sqrt3"): lambda: alg.quadratic_ring(3, "sqrt"),
    ("integer", "sqrt5"): lambda: alg.quadratic_ring(5, "sqrt"),
    ("integer", "golden"): lambda: alg.quadratic_ring(5, "half"),
    ("sqrt2", "sqrt3"): lambda: alg.cyclotomic_ring(24),
    ("sqrt2", "golden"): lambda: alg.cyclotomic_ring(40),
}


@lru_cache(maxsize=None)
def mixed_pool(a: str, b: str) -> RayPool:
    """Union of the two alphabets' ray sets in a common ring, closed under
    cross products."""
    ring = _MIXED_RINGS[(a, b)]()
    pa = generate_pool(_alphabet_in_ring(ring, a))
    pb = generate_pool(_alphabet_in_ring(ring, b))
    seen = {}
    for r in list(pa.rays) + list(pb.rays):
        seen.setdefault(r.key(), r)
    rays = list(seen.values())
    prov = {r.key(): "raw" for r in rays}
    from ..rays import _build_pool
    pool = _build_pool(ring, rays, prov)
    return complete_pool(pool, max_iterations=12)
