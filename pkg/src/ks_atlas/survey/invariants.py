"""Arithmetic invariants of minimal sets: generator norm/trace and the
least common multiple N(S) of the squared norms of primitive
representatives (the denominator ring of the associated projections)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .. import algebra as alg
from ..errors import RingError
from ..rays import Ray

__all__ = ["arithmetic_invariants", "ring_primitive", "primitive_norm"]


def ring_primitive(ray: Ray) -> tuple[alg.AlgNum, ...]:
    """Primitive integral representative of the ray over its ring.

    Rational rings already store a content-cleared primitive.  Quadratic
    rings clear rational denominators and divide by a Euclidean ring gcd.
    Imaginary units all have unit modulus, so the norm is canonical there;
    real quadratic units scale the norm, so a fundamental-unit factor is
    chosen afterwards to make the norm rational (primitive_norm).
    """
    ring = ray.coords[0].ring
    if ring.degree == 1:
        return ray.coords
    if ring.degree != 2:
        raise RingError("ring-primitive representatives need degree <= 2")
    den = 1
    for c in ray.coords:
        den = den * c.den // gcd(den, c.den)
    ints = tuple(c.scale(den) for c in ray.coords)
    g = None
    for c in ints:
        if not c.is_zero():
            g = c if g is None else alg.quadratic_gcd(g, c)
    return tuple(c * alg.invert(g) for c in ints)


def _fundamental_unit(ring: alg.RingSpec) -> alg.AlgNum | None:
    if ring.kind != "quadratic" or ring.d < 0:
        return None
    units = {
        (2, "sqrt"): (1, 1),    # 1 + sqrt2
        (3, "sqrt"): (2, 1),    # 2 + sqrt3
        (5, "sqrt"): (2, 1),    # 2 + sqrt5 (unit of Z[sqrt5])
        (5, "half"): (0, 1),    # phi
    }
    key = (ring.d, ring.generator)
    if key in units:
        return ring.from_coeffs(units[key])
    return None


def primitive_norm(ray: Ray) -> Fraction:
    """Hermitian squared norm of the ring-primitive representative; real
    quadratic representatives are rescaled by a fundamental-unit power to
    the associate with rational (and smallest such) norm."""
    coords = ring_primitive(ray)
    ring = coords[0].ring

    def norm_of(cs):
        total = ring.zero()
        for c in cs:
            total = total + c * c.conjugate()
        return total

    total = norm_of(coords)
    if total.is_rational():
        return total.as_fraction()
    unit = _fundamental_unit(ring)
    if unit is not None:
        candidates = []
        for k in range(1, 4):
            for u in (unit, alg.invert(unit)):
                scaled = coords
                for _ in range(k):
                    scaled = tuple(c * u for c in scaled)
                t = norm_of(scaled)
                if t.is_rational():
                    candidates.append(t.as_fraction())
        if candidates:
            return min(candidates)
    raise RingError(f"norm of {ray!r} is irrational; N(S) unsupported")


def arithmetic_invariants(pool, minimal_set) -> dict:
    """Generator Galois invariants plus N(S) = lcm of the primitive squared
    norms over the minimal set (quadratic or rational rings only)."""
    ring = pool.ring
    if ring.degree > 2:
        raise RingError("arithmetic invariants require ring degree <= 2")
    gen = ring.gen()
    gi = alg.invariants(gen)
    norms = [primitive_norm(pool.rays[i]) for i in minimal_set]
    denoms = {n.denominator for n in norms}
    if denoms != {1}:
        raise RingError("primitive norms are not integral; N(S) unsupported")
    n_s = lcm(*[int(n) for n in norms]) if norms else 1
    return {
        "generator": gen.serialize(),
        "galois_norm": gi.galois_norm,
        "galois_trace": gi.galois_trace,
        "hermitian_norm_sq": gi.norm_sq if isinstance(gi.norm_sq, Fraction) else None,
        "N": n_s,
        "norm_values": sorted({int(n) for n in norms}),
    }
