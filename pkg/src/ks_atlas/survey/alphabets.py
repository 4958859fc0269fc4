"""Named coordinate alphabets and the rings they live in.

Biquadratic combinations (sqrt2 with sqrt3 or the golden ratio) are
represented inside cyclotomic rings: Q(zeta_24) contains sqrt2 and sqrt3,
Q(zeta_40) contains sqrt2 and sqrt5.  Each embedded surd is squared and
checked on construction.
"""

from __future__ import annotations

from fractions import Fraction

from .. import algebra as alg
from ..rays import Alphabet

__all__ = ["named_alphabet", "alphabet_names", "sqrt_in_cyclotomic"]


def sqrt_in_cyclotomic(ring: alg.RingSpec, d: int) -> alg.AlgNum:
    """sqrt(d) as an exact element of a cyclotomic ring that contains it."""
    n = ring.n
    if d == 2:
        assert n % 8 == 0
        k = n // 8
        val = ring.zeta(k) + ring.zeta(n - k)
    elif d == 3:
        assert n % 12 == 0
        k = n // 12
        val = ring.zeta(k) + ring.zeta(n - k)
    elif d == 5:
        assert n % 5 == 0
        k = n // 5
        val = (ring.zeta(k) + ring.zeta(4 * k % n)
               - ring.zeta(2 * k % n) - ring.zeta(3 * k % n))
    elif d == 6:
        val = sqrt_in_cyclotomic(ring, 2) * sqrt_in_cyclotomic(ring, 3)
    else:
        raise ValueError(f"no embedding rule for sqrt({d})")
    assert (val * val) == ring.from_int(d), f"sqrt({d}) embedding failed"
    return val


def _basic(ring, gens):
    return Alphabet.from_generators(ring, gens)


def _quad_sqrt(d):
    ring = alg.quadratic_ring(d, "sqrt")
    return _basic(ring, [ring.gen()])


def _builders():
    Q = alg.rational_ring()
    half = Fraction(1, 2)

    def integer():
        return _basic(Q, [Q.from_int(2)])

    def zero_one():
        return _basic(Q, [])

    def half_alpha():
        return _basic(Q, [Q.from_fraction(half)])

    def golden():
        ring = alg.quadratic_ring(5, "half")
        return _basic(ring, [ring.gen()])

    def golden_sq():
        ring = alg.quadratic_ring(5, "half")
        phi = ring.gen()
        return _basic(ring, [phi, phi * phi])

    def eisenstein():
        ring = alg.cyclotomic_ring(3)
        w = ring.gen()
        return _basic(ring, [w, w * w])

    def zsqrtm2():
        ring = alg.quadratic_ring(-2, "sqrt")
        return _basic(ring, [ring.gen()])

    def gaussian_basic():
        ring = alg.cyclotomic_ring(4)
        return _basic(ring, [ring.gen()])

    def gaussian():
        ring = alg.cyclotomic_ring(4)
        i = ring.gen()
        return _basic(ring, [i, ring.one() + i])

    def sqrt2_plus_2():
        ring = alg.quadratic_ring(2, "sqrt")
        return _basic(ring, [ring.gen(), ring.from_int(2)])

    def golden_plus_2():
        ring = alg.quadratic_ring(5, "half")
        return _basic(ring, [ring.gen(), ring.from_int(2)])

    def int_plus_3():
        return _basic(Q, [Q.from_int(2), Q.from_int(3)])

    def sqrt2_plus_golden():
        ring = alg.cyclotomic_ring(40)
        s2 = sqrt_in_cyclotomic(ring, 2)
        s5 = sqrt_in_cyclotomic(ring, 5)
        phi = (ring.one() + s5).scale(Fraction(1, 2))
        return _basic(ring, [s2, phi])

    return {
        "zero-one": zero_one,
        "integer": integer,
        "half": half_alpha,
        "peres": lambda: _quad_sqrt(2),
        "sqrt2": lambda: _quad_sqrt(2),
        "sqrt3": lambda: _quad_sqrt(3),
        "sqrt5": lambda: _quad_sqrt(5),
        "golden": golden,
        "golden-phi2": golden_sq,
        "eisenstein": eisenstein,
        "zsqrtm2": zsqrtm2,
        "gaussian-basic": gaussian_basic,
        "gaussian": gaussian,
        "sqrt2+2": sqrt2_plus_2,
        "golden+2": golden_plus_2,
        "integer+3": int_plus_3,
        "sqrt2+golden": sqrt2_plus_golden,
    }


_REGISTRY = _builders()


def named_alphabet(name: str) -> Alphabet:
    """Resolve an alphabet by registry name or parametric form.

    Parametric forms: "cyclotomic:<n>" for {0} union the n-th roots of
    unity, "heegner:<d>" for the ring-of-integers alphabet of Q(sqrt(-d)),
    and "sqrtd:<d>" for {0, +-1, +-sqrt(d)}.
    """
    if name in _REGISTRY:
        return _REGISTRY[name]()
    if ":" in name:
        kind, _, arg = name.partition(":")
        v = int(arg)
        if kind in ("cyclotomic", "roots"):
            ring = alg.cyclotomic_ring(v)
            return Alphabet(ring, [ring.zero()] + [ring.zeta(k) for k in range(v)])
        if kind == "heegner":
            if v == 1:
                return _REGISTRY["gaussian"]()
            if v == 2:
                return _REGISTRY["zsqrtm2"]()
            if v == 3:
                return _REGISTRY["eisenstein"]()
            ring = alg.quadratic_ring(-v, "half")
            a = ring.gen()
            return Alphabet.from_generators(ring, [a, alg.conjugate(a)])
        if kind == "sqrtd":
            return _quad_sqrt(v)
        if kind == "zsqrtmd":
            ring = alg.quadratic_ring(-v, "sqrt")
            return _basic(ring, [ring.gen()])
    raise KeyError(f"unknown alphabet {name!r}")


def alphabet_names() -> list[str]:
    return sorted(_REGISTRY) + ["cyclotomic:<n>", "heegner:<d>", "sqrtd:<d>", "zsqrtmd:<d>"]
