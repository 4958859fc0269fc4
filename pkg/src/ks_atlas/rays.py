"""Alphabet-driven ray generation, canonicalization, and completion.

A ray is a one-dimensional subspace of K^3 stored as a canonical
unnormalized representative: real rings keep a primitive vector (joint
rational content cleared) whose first nonzero entry is positive; complex
rings divide by the first nonzero coordinate.  Pools are deduplicated,
sorted by the coordinate order (so pool files are byte-reproducible), and
carry the orthogonality edges and triads.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd

from .algebra import AlgNum, RingSpec, invert, parse_algnum, ring_make
from .errors import MixedRingError, NonTermination

__all__ = [
    "Alphabet",
    "Ray",
    "RayPool",
    "canonicalize",
    "generate_pool",
    "hermitian_dot",
    "complete_pool",
    "cross_ray",
    "pool_to_json",
    "pool_from_json",
]


class Alphabet:
    """A finite coordinate alphabet containing 0 and 1, with no duplicates.

    Two-symbol survey alphabets are negation-closed by construction (use
    from_generators); the roots-of-unity alphabets {0} union <zeta_n> are
    not closed under negation when n is odd, so closure is not enforced
    here.
    """

    __slots__ = ("ring", "symbols")

    def __init__(self, ring: RingSpec, symbols):
        self.ring = ring
        seen = {}
        for s in symbols:
            if s.ring != ring:
                raise MixedRingError("alphabet symbols must share the ring")
            if (s.nums, s.den) in seen:
                raise ValueError(f"duplicate alphabet symbol {s}")
            seen[(s.nums, s.den)] = s
        self.symbols = tuple(seen.values())
        keys = set(seen)
        zero, one = ring.zero(), ring.one()
        for required in (zero, one):
            if (required.nums, required.den) not in keys:
                raise ValueError("alphabet must contain 0 and 1")

    @classmethod
    def from_generators(cls, ring: RingSpec, generators) -> "Alphabet":
        syms = [ring.zero(), ring.one(), -ring.one()]
        for g in generators:
            syms.append(g)
            syms.append(-g)
        return cls(ring, syms)

    def __len__(self):
        return len(self.symbols)

    def __repr__(self):
        return f"Alphabet({self.ring!r}, {len(self.symbols)} symbols)"


class Ray:
    """Canonical projective representative: three coordinates in one ring."""

    __slots__ = ("ring", "coords")
    canonical = True

    def __init__(self, ring: RingSpec, coords: tuple[AlgNum, AlgNum, AlgNum]):
        self.ring = ring
        self.coords = coords

    @property
    def real_ring(self) -> bool:
        return self.ring.is_real

    def key(self):
        return tuple((c.nums, c.den) for c in self.coords)

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coords)

    def norm_sq(self):
        """Hermitian squared norm of the stored representative; Fraction when
        rational, else the exact AlgNum."""
        total = self.ring.zero()
        for c in self.coords:
            total = total + c * c.conjugate()
        if total.is_rational():
            return total.as_fraction()
        return total

    def serialize(self) -> list[str]:
        return [c.serialize() for c in self.coords]

    def __eq__(self, other):
        return isinstance(other, Ray) and self.ring == other.ring and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Ray({', '.join(str(c) for c in self.coords)})"


def _clear_content_real(ring: RingSpec, coords) -> tuple[AlgNum, ...]:
    # joint rational content over the 3 coordinates x basis dimension
    den_lcm = 1
    for c in coords:
        den_lcm = den_lcm * c.den // gcd(den_lcm, c.den)
    num_gcd = 0
    for c in coords:
        m = den_lcm // c.den
        for v in c.nums:
            if v:
                num_gcd = gcd(num_gcd, v * m)
    factor = Fraction(den_lcm, num_gcd)
    return tuple(c.scale(factor) for c in coords)


def canonicalize(coords, ring: RingSpec | None = None) -> Ray:
    """Deterministic canonical representative of the ray spanned by coords.

    Both real and complex rings first divide by the first nonzero
    coordinate, which quotients out the full scalar group of the field; real
    rings then clear the joint rational content, producing a primitive
    representative whose first nonzero entry is a positive rational.
    Scaling-invariant and idempotent; rejects the zero vector.
    """
    coords = tuple(coords)
    if ring is None:
        ring = coords[0].ring
    first = None
    for c in coords:
        if c.ring != ring:
            raise MixedRingError("ray coordinates must share the ring")
        if first is None and not c.is_zero():
            first = c
    if first is None:
        raise ValueError("cannot canonicalize the zero vector")
    inv = invert(first)
    scaled = tuple(c * inv for c in coords)
    if ring.is_real:
        return Ray(ring, _clear_content_real(ring, scaled))
    return Ray(ring, scaled)


def hermitian_dot(v: Ray, w: Ray) -> AlgNum:
    """Exact sum of conj(v_k) * w_k; orthogonality is its vanishing."""
    if v.ring != w.ring:
        raise MixedRingError("hermitian_dot requires a common ring")
    total = v.ring.zero()
    for a, b in zip(v.coords, w.coords):
        total = total + a.conjugate() * b
    return total


def cross_ray(v: Ray, w: Ray) -> Ray:
    """Canonical ray spanning the orthogonal complement of an orthogonal pair.

    Real rings use the ordinary cross product; complex rings use the vector
    of 2x2 cofactors of the row pair (conj v, conj w), its Hermitian
    analogue.
    """
    if v.ring.is_real:
        a, b = v.coords, w.coords
    else:
        a = tuple(c.conjugate() for c in v.coords)
        b = tuple(c.conjugate() for c in w.coords)
    u = (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
    return canonicalize(u, v.ring)


class RayPool:
    """Deduplicated, canonically ordered ray set with derived structure.

    edges are exactly the index pairs (i < j) with vanishing Hermitian dot;
    triads are the triangles of the orthogonality graph (every such triangle
    is a complete basis in dimension 3).
    """

    __slots__ = ("ring", "rays", "provenance", "edges", "triads",
                 "alphabet", "completion_rounds")

    def __init__(self, ring, rays, provenance, edges, triads,
                 alphabet=None, completion_rounds=None):
        self.ring = ring
        self.rays = tuple(rays)
        self.provenance = tuple(provenance)
        self.edges = tuple(edges)
        self.triads = tuple(triads)
        self.alphabet = alphabet
        self.completion_rounds = completion_rounds

    def __len__(self):
        return len(self.rays)

    @property
    def n(self):
        return len(self.rays)

    def adjacency_masks(self) -> list[int]:
        adj = [0] * len(self.rays)
        for i, j in self.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return adj

    def norms(self):
        return [r.norm_sq() for r in self.rays]

    def index_of(self, ray: Ray) -> int:
        try:
            return self._index()[ray.key()]
        except KeyError:
            raise KeyError(f"ray {ray!r} not in pool") from None

    def _index(self):
        return {r.key(): i for i, r in enumerate(self.rays)}

    def __repr__(self):
        return (f"RayPool(n={len(self.rays)}, edges={len(self.edges)}, "
                f"triads={len(self.triads)})")


def _edges_among(rays, conj_cache=None):
    n = len(rays)
    if conj_cache is None:
        conj_cache = [tuple(c.conjugate() for c in r.coords) for r in rays]
    edges = []
    for i in range(n):
        ci = conj_cache[i]
        for j in range(i + 1, n):
            cj = rays[j].coords
            s = ci[0] * cj[0] + ci[1] * cj[1] + ci[2] * cj[2]
            if s.is_zero():
                edges.append((i, j))
    return edges


def _triangles(n, edges):
    adj = [0] * n
    for i, j in edges:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    tris = []
    for i, j in edges:
        common = adj[i] & adj[j]
        common >>= j + 1
        k = j + 1
        while common:
            if common & 1:
                tris.append((i, j, k))
            common >>= 1
            k += 1
    return tris


def _build_pool(ring, ray_list, prov_map, alphabet=None, completion_rounds=None):
    order = sorted(range(len(ray_list)), key=lambda i: ray_list[i].sort_key())
    rays = [ray_list[i] for i in order]
    provenance = [prov_map[ray_list[i].key()] for i in order]
    edges = _edges_among(rays)
    triads = _triangles(len(rays), edges)
    return RayPool(ring, rays, provenance, edges, triads,
                   alphabet=alphabet, completion_rounds=completion_rounds)


def generate_pool(alphabet: Alphabet) -> RayPool:
    """All projectively distinct rays from alphabet^3, with structure."""
    ring = alphabet.ring
    symbols = alphabet.symbols
    inv_cache = {}
    for s in symbols:
        if not s.is_zero():
            inv_cache[(s.nums, s.den)] = invert(s)
    seen = {}
    real = ring.is_real
    for a in symbols:
        for b in symbols:
            for c in symbols:
                if a.is_zero() and b.is_zero() and c.is_zero():
                    continue
                first = a if not a.is_zero() else (b if not b.is_zero() else c)
                inv = inv_cache[(first.nums, first.den)]
                scaled = (a * inv, b * inv, c * inv)
                if real:
                    ray = Ray(ring, _clear_content_real(ring, scaled))
                else:
                    ray = Ray(ring, scaled)
                seen.setdefault(ray.key(), ray)
    rays = list(seen.values())
    prov = {r.key(): "raw" for r in rays}
    return _build_pool(ring, rays, prov, alphabet=alphabet)


def complete_pool(pool: RayPool, max_iterations: int = 10,
                  max_height: int = 10 ** 6) -> RayPool:
    """Fixpoint closure adding, per orthogonal pair, the canonical ray of the
    pair's orthogonal complement.  New rays are flagged "completed".

    Raises NonTermination if the pool fails to stabilize within the caps.
    """
    if max_iterations <= 0 or max_height <= 0:
        raise ValueError("caps must be positive")
    rays = list(pool.rays)
    prov = {r.key(): p for r, p in zip(pool.rays, pool.provenance)}
    conj_cache = [tuple(c.conjugate() for c in r.coords) for r in rays]
    edges = list(pool.edges)
    rounds = 0
    while True:
        new_rays = []
        index = {r.key(): None for r in rays}
        for i, j in edges:
            u = cross_ray(rays[i], rays[j])
            if u.key() not in index:
                d1 = hermitian_dot(rays[i], u)
                d2 = hermitian_dot(rays[j], u)
                if not (d1.is_zero() and d2.is_zero()):
                    raise AssertionError("completion produced a non-orthogonal ray")
                index[u.key()] = None
                new_rays.append(u)
        if not new_rays:
            break
        rounds += 1
        if rounds > max_iterations:
            raise NonTermination(
                f"completion exceeded {max_iterations} iterations")
        for r in new_rays:
            for c in r.coords:
                if any(abs(v) > max_height for v in c.nums) or c.den > max_height:
                    raise NonTermination(
                        f"completion exceeded coefficient height {max_height}")
        base = len(rays)
        for r in new_rays:
            prov[r.key()] = "completed"
            rays.append(r)
            conj_cache.append(tuple(c.conjugate() for c in r.coords))
        # incremental edges: new x all plus new x new
        for k in range(base, len(rays)):
            ck = conj_cache[k]
            for m in range(k):
                cm = rays[m].coords
                s = ck[0] * cm[0] + ck[1] * cm[1] + ck[2] * cm[2]
                if s.is_zero():
                    edges.append((min(k, m), max(k, m)))
    return _build_pool(pool.ring, rays, prov, alphabet=pool.alphabet,
                       completion_rounds=rounds)


# -- pool files ------------------------------------------------------------------


def _ring_descriptor(ring: RingSpec) -> dict:
    if ring.kind == "rational":
        return {"kind": "rational"}
    if ring.kind == "quadratic":
        return {"kind": "quadratic", "d": ring.d, "generator": ring.generator}
    return {"kind": "cyclotomic", "n": ring.n}


def pool_to_json(pool: RayPool) -> str:
    doc = {
        "format": "ks-atlas-pool/1",
        "ring": _ring_descriptor(pool.ring),
        "alphabet": ([s.serialize() for s in pool.alphabet.symbols]
                     if pool.alphabet is not None else None),
        "rays": [r.serialize() for r in pool.rays],
        "provenance": list(pool.provenance),
        "edges": [list(e) for e in pool.edges],
        "triads": [list(t) for t in pool.triads],
        "completion_rounds": pool.completion_rounds,
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def pool_from_json(text: str) -> RayPool:
    doc = json.loads(text)
    ring = ring_make(doc["ring"])
    rays = [Ray(ring, tuple(parse_algnum(ring, c) for c in coords))
            for coords in doc["rays"]]
    alphabet = None
    if doc.get("alphabet"):
        alphabet = Alphabet(ring, [parse_algnum(ring, s) for s in doc["alphabet"]])
    return RayPool(
        ring, rays, doc["provenance"],
        [tuple(e) for e in doc["edges"]],
        [tuple(t) for t in doc["triads"]],
        alphabet=alphabet,
        completion_rounds=doc.get("completion_rounds"),
    )
