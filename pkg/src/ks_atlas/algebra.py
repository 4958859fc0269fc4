"""Exact arithmetic in the coordinate fields.

Three ring kinds cover every alphabet in the survey: the rationals,
quadratic fields Q(sqrt(d)) with either the sqrt(d) or the half-integer
(1+sqrt(d))/2 generator, and cyclotomic fields Q(zeta_n) with elements
reduced modulo the n-th cyclotomic polynomial.

Elements are coefficient vectors of arbitrary-precision rationals over the
canonical basis, stored internally as an integer numerator tuple plus a
single positive denominator (jointly reduced).  All operations are pure and
the values are immutable, so they can be shared freely.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import MixedRingError, RingError

__all__ = [
    "RingSpec",
    "AlgNum",
    "ring_make",
    "rational_ring",
    "quadratic_ring",
    "cyclotomic_ring",
    "cyclotomic_poly",
    "field_arith",
    "conjugate",
    "invert",
    "is_zero",
    "equals",
    "invariants",
    "Invariants",
    "quadratic_gcd",
]


def _is_squarefree(m: int) -> bool:
    m = abs(m)
    if m % 4 == 0:
        return False
    p = 3
    while p * p <= m:
        if m % (p * p) == 0:
            return False
        p += 2
    return True


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials (den monic); coefficients ascending."""
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            out[k - dn] = c
            for i, d in enumerate(den):
                num[k - dn + i] -= c * d
    while num and num[-1] == 0:
        num.pop()
    return out, num


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the n-th cyclotomic polynomial.

    Computed by exact division of x^n - 1 by the product of Phi_d over the
    proper divisors d of n.
    """
    if n < 1:
        raise RingError(f"cyclotomic order must be >= 1, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_poly(d)))
            if rem:
                raise AssertionError(f"non-exact division computing Phi_{n}")
    return tuple(poly)


def _euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


class RingSpec:
    """Immutable descriptor of a coefficient ring.

    kind is one of "rational", "quadratic", "cyclotomic".  Quadratic rings
    carry the squarefree integer d and the generator choice ("sqrt" for
    sqrt(d), "half" for (1+sqrt(d))/2); cyclotomic rings carry the order n.
    """

    __slots__ = (
        "kind", "d", "generator", "n", "degree", "is_real",
        "_sq_s", "_sq_t", "_red_rows", "_conj_rows", "_zeta_rows", "_minpoly",
    )

    def __init__(self, kind: str, d: int | None = None,
                 generator: str | None = None, n: int | None = None):
        self.kind = kind
        self.d = d
        self.generator = generator
        self.n = n
        if kind == "rational":
            self.degree = 1
            self.is_real = True
            self._sq_s = self._sq_t = None
            self._red_rows = self._conj_rows = self._zeta_rows = None
            self._minpoly = (0, 1)
        elif kind == "quadratic":
            if d is None or d in (0, 1) or not _is_squarefree(d):
                raise RingError(f"quadratic ring requires squarefree d not in {{0, 1}}, got {d}")
            if generator not in ("sqrt", "half"):
                raise RingError(f"unknown quadratic generator {generator!r}")
            if generator == "half" and d % 4 != 1:
                raise RingError(
                    f"half-integer generator (1+sqrt({d}))/2 requires d = 1 (mod 4)")
            self.degree = 2
            self.is_real = d > 0
            # g^2 = s + t*g
            if generator == "sqrt":
                self._sq_s, self._sq_t = d, 0
                self._minpoly = (-d, 0, 1)
            else:
                self._sq_s, self._sq_t = (d - 1) // 4, 1
                self._minpoly = (-(d - 1) // 4, -1, 1)
            self._red_rows = self._conj_rows = self._zeta_rows = None
        elif kind == "cyclotomic":
            if n is None or n < 1:
                raise RingError(f"cyclotomic ring requires n >= 1, got {n}")
            phi = cyclotomic_poly(n)
            deg = len(phi) - 1
            self.degree = deg
            self.is_real = n <= 2
            self._minpoly = phi
            # zeta^k reduced mod Phi_n, as integer rows, for k up to 2n
            rows: list[tuple[int, ...]] = []
            cur = [1] + [0] * (deg - 1)
            rows.append(tuple(cur))
            while len(rows) < 2 * n + 1:
                cur = [0] + cur
                if len(cur) > deg:
                    lead = cur.pop()
                    if lead:
                        for i in range(deg):
                            cur[i] -= lead * phi[i]
                rows.append(tuple(cur))
            self._zeta_rows = tuple(rows)
            self._red_rows = tuple(rows[deg:2 * deg - 1]) if deg > 1 else ()
            # conjugation: basis element zeta^k -> zeta^{(n-k) mod n}
            self._conj_rows = tuple(rows[(n - k) % n] for k in range(deg))
            if deg == 2:
                # quadratic fast path: zeta^2 = s + t*zeta
                self._sq_s, self._sq_t = rows[2][0], rows[2][1]
            else:
                self._sq_s = self._sq_t = None
        else:
            raise RingError(f"unknown ring kind {kind!r}")

    def _key(self):
        return (self.kind, self.d, self.generator, self.n)

    def __eq__(self, other):
        return isinstance(other, RingSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.kind == "rational":
            return "RingSpec(rational)"
        if self.kind == "quadratic":
            return f"RingSpec(quadratic, d={self.d}, generator={self.generator})"
        return f"RingSpec(cyclotomic, n={self.n})"

    @property
    def minimal_polynomial(self) -> tuple[int, ...]:
        """Ascending integer coefficients of the generator's minimal polynomial."""
        return self._minpoly

    # -- element constructors -------------------------------------------------

    def zero(self) -> AlgNum:
        return AlgNum(self, (0,) * self.degree, 1)

    def one(self) -> AlgNum:
        return AlgNum(self, (1,) + (0,) * (self.degree - 1), 1)

    def from_int(self, k: int) -> AlgNum:
        return AlgNum(self, (k,) + (0,) * (self.degree - 1), 1)

    def from_fraction(self, q: Fraction) -> AlgNum:
        q = Fraction(q)
        return AlgNum(self, (q.numerator,) + (0,) * (self.degree - 1), q.denominator)

    def from_coeffs(self, coeffs) -> AlgNum:
        """Element from an iterable of rationals over the canonical basis."""
        fr = [Fraction(c) for c in coeffs]
        if len(fr) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients, got {len(fr)}")
        den = 1
        for f in fr:
            den = den * f.denominator // gcd(den, f.denominator)
        nums = tuple(int(f * den) for f in fr)
        return AlgNum(self, nums, den)

    def gen(self) -> AlgNum:
        """The distinguished generator (sqrt(d), (1+sqrt(d))/2, or zeta_n)."""
        if self.kind == "rational":
            return self.one()
        if self.kind == "quadratic":
            return AlgNum(self, (0, 1), 1)
        return self.zeta(1)

    def zeta(self, k: int) -> AlgNum:
        """zeta_n^k reduced into the basis (cyclotomic rings only)."""
        if self.kind != "cyclotomic":
            raise RingError("zeta powers only exist in cyclotomic rings")
        return AlgNum(self, self._zeta_rows[k % self.n], 1)


@lru_cache(maxsize=None)
def _ring_cached(kind: str, d, generator, n) -> RingSpec:
    return RingSpec(kind, d=d, generator=generator, n=n)


def rational_ring() -> RingSpec:
    return _ring_cached("rational", None, None, None)


def quadratic_ring(d: int, generator: str = "sqrt") -> RingSpec:
    return _ring_cached("quadratic", d, generator, None)


def cyclotomic_ring(n: int) -> RingSpec:
    return _ring_cached("cyclotomic", None, None, n)


def ring_make(descriptor) -> RingSpec:
    """Build a RingSpec from a descriptor.

    Accepts a RingSpec (returned as-is), the string "rational", a dict like
    {"kind": "quadratic", "d": -7, "generator": "half"} or
    {"kind": "cyclotomic", "n": 6}, or a tuple ("quadratic", d, generator) /
    ("cyclotomic", n).
    """
    if isinstance(descriptor, RingSpec):
        return descriptor
    if descriptor == "rational":
        return rational_ring()
    if isinstance(descriptor, dict):
        kind = descriptor["kind"]
        if kind == "rational":
            return rational_ring()
        if kind == "quadratic":
            return quadratic_ring(int(descriptor["d"]), descriptor.get("generator", "sqrt"))
        if kind == "cyclotomic":
            return cyclotomic_ring(int(descriptor["n"]))
        raise RingError(f"unknown ring kind {kind!r}")
    if isinstance(descriptor, tuple):
        if descriptor[0] == "rational":
            return rational_ring()
        if descriptor[0] == "quadratic":
            return quadratic_ring(descriptor[1], descriptor[2] if len(descriptor) > 2 else "sqrt")
        if descriptor[0] == "cyclotomic":
            return cyclotomic_ring(descriptor[1])
    raise RingError(f"cannot interpret ring descriptor {descriptor!r}")


def _normalize(nums: tuple[int, ...], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = tuple(-v for v in nums)
        den = -den
    g = den
    for v in nums:
        if v:
            g = gcd(g, v)
            if g == 1:
                return nums, den
    if g > 1:
        nums = tuple(v // g for v in nums)
        den //= g
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    return nums, den


class AlgNum:
    """Exact element of a fixed ring: reduced rational coefficient vector.

    Equality, hashing and the total order all operate on the reduced vector,
    so values behave like ordinary immutable numbers.
    """

    __slots__ = ("ring", "nums", "den")

    def __init__(self, ring: RingSpec, nums: tuple[int, ...], den: int = 1,
                 _reduced: bool = False):
        self.ring = ring
        if _reduced:
            self.nums, self.den = nums, den
        else:
            self.nums, self.den = _normalize(tuple(nums), den)

    # -- basic protocol --------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self.den
        return tuple(Fraction(v, d) for v in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def _check(self, other: AlgNum):
        if self.ring != other.ring:
            raise MixedRingError(f"mixed rings: {self.ring!r} vs {other.ring!r}")

    def __eq__(self, other):
        if not isinstance(other, AlgNum):
            return NotImplemented
        return self.ring == other.ring and self.den == other.den and self.nums == other.nums

    def __hash__(self):
        return hash((self.nums, self.den))

    def sort_key(self) -> tuple:
        """Deterministic total order: lexicographic on (numerator, denominator)
        pairs of the reduced coefficient vector."""
        d = self.den
        out = []
        for v in self.nums:
            g = gcd(v, d) if v else d
            out.append((v // g, d // g))
        return tuple(out)

    def __lt__(self, other):
        self._check(other)
        return self.sort_key() < other.sort_key()

    # -- arithmetic -------------------------------------------------------------

    def __neg__(self):
        return AlgNum(self.ring, tuple(-v for v in self.nums), self.den, _reduced=True)

    def __add__(self, other):
        self._check(other)
        d1, d2 = self.den, other.den
        if d1 == d2:
            return AlgNum(self.ring, tuple(a + b for a, b in zip(self.nums, other.nums)), d1)
        g = gcd(d1, d2)
        m1, m2 = d2 // g, d1 // g
        return AlgNum(self.ring,
                      tuple(a * m1 + b * m2 for a, b in zip(self.nums, other.nums)),
                      d1 * m1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, AlgNum):
            return NotImplemented
        self._check(other)
        ring = self.ring
        a, b = self.nums, other.nums
        den = self.den * other.den
        deg = ring.degree
        if deg == 1:
            return AlgNum(ring, (a[0] * b[0],), den)
        if deg == 2:
            s, t = ring._sq_s, ring._sq_t
            cross = a[1] * b[1]
            c0 = a[0] * b[0] + s * cross
            c1 = a[0] * b[1] + a[1] * b[0] + t * cross
            return AlgNum(ring, (c0, c1), den)
        # cyclotomic convolution reduced mod Phi_n
        conv = [0] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = list(conv[:deg])
        rows = ring._red_rows
        for k in range(deg, 2 * deg - 1):
            ck = conv[k]
            if ck:
                row = rows[k - deg]
                for i in range(deg):
                    ri = row[i]
                    if ri:
                        out[i] += ck * ri
        return AlgNum(ring, tuple(out), den)

    def scale(self, q: Fraction | int) -> AlgNum:
        q = Fraction(q)
        return AlgNum(self.ring, tuple(v * q.numerator for v in self.nums),
                      self.den * q.denominator)

    def __truediv__(self, other):
        if not isinstance(other, AlgNum):
            return NotImplemented
        return self * invert(other)

    # -- field structure ----------------------------------------------------------

    def conjugate(self) -> AlgNum:
        """Complex conjugate: identity on real rings."""
        ring = self.ring
        if ring.is_real:
            return self
        if ring.kind == "quadratic":
            return self._galois_quadratic()
        deg = ring.degree
        out = [0] * deg
        for k, ck in enumerate(self.nums):
            if ck:
                row = ring._conj_rows[k]
                for i in range(deg):
                    ri = row[i]
                    if ri:
                        out[i] += ck * ri
        return AlgNum(ring, tuple(out), self.den)

    def _galois_quadratic(self) -> AlgNum:
        a, b = self.nums
        if self.ring.generator == "sqrt":
            return AlgNum(self.ring, (a, -b), self.den, _reduced=True)
        return AlgNum(self.ring, (a + b, -b), self.den)

    def galois_conjugate(self) -> AlgNum:
        """Nontrivial field automorphism for degree-2 rings (sends sqrt(d) to
        -sqrt(d), zeta to its conjugate root); identity on degree-1 rings."""
        ring = self.ring
        if ring.degree == 1:
            return self
        if ring.degree != 2:
            raise RingError("galois_conjugate requires ring degree <= 2")
        if ring.kind == "quadratic":
            return self._galois_quadratic()
        # degree-2 cyclotomic (n = 3, 4, 6): complex conjugation
        deg = ring.degree
        out = [0] * deg
        for k, ck in enumerate(self.nums):
            if ck:
                row = ring._conj_rows[k]
                for i in range(deg):
                    out[i] += ck * row[i]
        return AlgNum(ring, tuple(out), self.den)

    def sign(self) -> int:
        """Exact sign of a real element (-1, 0, +1)."""
        ring = self.ring
        if not ring.is_real:
            raise RingError("sign is only defined for real rings")
        if ring.degree == 1 or self.is_rational():
            v = self.nums[0]
            return (v > 0) - (v < 0)
        # a + b*g with g = sqrt(d) or (1+sqrt(d))/2 -> u + v*sqrt(d), scaled by
        # 2/den to stay integral
        a, b = self.nums
        if ring.generator == "sqrt":
            u, v = 2 * a, 2 * b
        else:
            u, v = 2 * a + b, b
        d = ring.d
        if v == 0:
            return (u > 0) - (u < 0)
        if u == 0:
            return (v > 0) - (v < 0)
        if u > 0 and v > 0:
            return 1
        if u < 0 and v < 0:
            return -1
        cmp = u * u - d * v * v  # sign of (u + v sqrt(d))(u - v sqrt(d))
        if u > 0:
            return 1 if cmp > 0 else -1
        return 1 if cmp < 0 else -1

    def abs_real(self) -> AlgNum:
        return -self if self.sign() < 0 else self

    def numeric(self) -> complex:
        """Double-precision value of the element (floating embedding)."""
        ring = self.ring
        if ring.kind == "rational" or ring.degree == 1:
            base = complex(self.nums[0] / self.den)
            if ring.kind == "cyclotomic" and ring.n == 2:
                pass  # zeta_2 already reduced into the rational part
            return base
        if ring.kind == "quadratic":
            root = complex(abs(ring.d)) ** 0.5 * (1j if ring.d < 0 else 1)
            g = root if ring.generator == "sqrt" else (1 + root) / 2
            return (self.nums[0] + self.nums[1] * g) / self.den
        import cmath
        zeta = cmath.exp(2j * cmath.pi / ring.n)
        total = 0j
        for k, c in enumerate(self.nums):
            if c:
                total += c * zeta ** k
        return total / self.den

    # -- printing -------------------------------------------------------------------

    def serialize(self) -> str:
        """Canonical text form `a/b + c/d*g + e/f*g^2 + ...` in lowest terms."""
        parts = []
        for k, f in enumerate(self.coeffs):
            base = f"{f.numerator}/{f.denominator}"
            if k == 0:
                parts.append(base)
            elif k == 1:
                parts.append(f"{base}*g")
            else:
                parts.append(f"{base}*g^{k}")
        return " + ".join(parts)

    def __repr__(self):
        return f"AlgNum({self.serialize()!r})"

    def __str__(self):
        return self.serialize()


def parse_algnum(ring: RingSpec, text: str) -> AlgNum:
    """Inverse of AlgNum.serialize for a known ring."""
    coeffs = [Fraction(0)] * ring.degree
    for part in text.split(" + "):
        part = part.strip()
        if "*" in part:
            frac, gpow = part.split("*")
            k = 1 if gpow == "g" else int(gpow.split("^")[1])
        else:
            frac, k = part, 0
        coeffs[k] = Fraction(frac)
    return ring.from_coeffs(coeffs)


# -- module-level operation surface ---------------------------------------------


def field_arith(a: AlgNum, b: AlgNum, op: str) -> AlgNum:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def conjugate(a: AlgNum) -> AlgNum:
    return a.conjugate()


def is_zero(a: AlgNum) -> bool:
    return a.is_zero()


def equals(a: AlgNum, b: AlgNum) -> bool:
    if a.ring != b.ring:
        raise MixedRingError("equals requires a common ring")
    return a == b


def invert(a: AlgNum) -> AlgNum:
    """Exact multiplicative inverse of a nonzero element."""
    if a.is_zero():
        raise ZeroDivisionError("cannot invert zero")
    ring = a.ring
    if ring.degree == 1 or a.is_rational():
        f = Fraction(a.nums[0], a.den)
        return ring.from_fraction(1 / f)
    if ring.degree == 2:
        sigma = a.galois_conjugate()
        norm = (a * sigma).as_fraction()
        return sigma.scale(1 / norm)
    # cyclotomic, degree > 2: extended Euclid of the coefficient polynomial
    # with Phi_n over the rationals
    phi = [Fraction(c) for c in ring._minpoly]
    poly = [Fraction(v, a.den) for v in a.nums]
    inv = _poly_modinv(poly, phi)
    return ring.from_coeffs(inv + [Fraction(0)] * (ring.degree - len(inv)))


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    while num and num[-1] == 0:
        num.pop()
    dn = len(den) - 1
    lead = den[-1]
    quo = [Fraction(0)] * max(0, len(num) - dn)
    while len(num) - 1 >= dn:
        k = len(num) - 1
        c = num[-1] / lead
        quo[k - dn] = c
        for i in range(dn + 1):
            num[k - dn + i] -= c * den[i]
        while num and num[-1] == 0:
            num.pop()
    return quo, num


def _poly_modinv(a: list[Fraction], mod: list[Fraction]) -> list[Fraction]:
    # extended Euclid: r0 = mod, r1 = a
    r0, r1 = list(mod), list(a)
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while True:
        while r1 and r1[-1] == 0:
            r1.pop()
        if not r1:
            raise ZeroDivisionError("element not invertible modulo Phi_n")
        if len(r1) == 1:
            c = r1[0]
            return [x / c for x in s1]
        q, r = _poly_divmod_frac(r0, r1)
        s_new = _poly_sub(s0, _poly_mul(q, s1))
        r0, r1 = r1, r
        s0, s1 = s1, s_new


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] -= v
    return out


class Invariants:
    """Hermitian and Galois invariants of an element."""

    __slots__ = ("norm_sq", "galois_norm", "galois_trace")

    def __init__(self, norm_sq, galois_norm, galois_trace):
        self.norm_sq = norm_sq
        self.galois_norm = galois_norm
        self.galois_trace = galois_trace

    def astuple(self):
        return (self.norm_sq, self.galois_norm, self.galois_trace)

    def __repr__(self):
        return (f"Invariants(norm_sq={self.norm_sq}, galois_norm={self.galois_norm}, "
                f"galois_trace={self.galois_trace})")


def hermitian_norm_sq(a: AlgNum):
    """a * conj(a); a Fraction when the product is rational, else the AlgNum."""
    prod = a * a.conjugate()
    if prod.is_rational():
        return prod.as_fraction()
    return prod


def invariants(a: AlgNum) -> Invariants:
    """(|a|^2, a*sigma(a), a+sigma(a)) for rings of degree <= 2."""
    if a.ring.degree > 2:
        raise RingError("Galois invariants require ring degree <= 2")
    sigma = a.galois_conjugate()
    gn = (a * sigma).as_fraction()
    gt = (a + sigma).as_fraction()
    return Invariants(hermitian_norm_sq(a), gn, gt)


def quadratic_gcd(a: AlgNum, b: AlgNum) -> AlgNum:
    """Euclidean gcd in the ring of integers of a norm-Euclidean quadratic
    field (used to reduce vectors to ring-primitive form).

    Inputs must be algebraic integers of the ring (integer coefficients over
    the canonical basis).  The quotient is chosen among the four integer
    roundings of the exact field quotient; the Euclidean function is the
    Hermitian norm for imaginary rings and |Galois norm| for real ones.
    Raises RingError when no rounding descends (non-Euclidean d)."""
    ring = a.ring
    if ring.degree != 2:
        raise RingError("quadratic_gcd is defined for degree-2 rings")

    def measure(v: AlgNum) -> Fraction:
        if ring.is_real:
            return abs((v * v.galois_conjugate()).as_fraction())
        return hermitian_norm_sq(v)

    x, y = a, b
    while not y.is_zero():
        q = x * invert(y)
        c0, c1 = q.coeffs
        best = None
        for q0 in (c0.__floor__(), c0.__ceil__()):
            for q1 in (c1.__floor__(), c1.__ceil__()):
                r = x - ring.from_coeffs([q0, q1]) * y
                rn = measure(r)
                if best is None or rn < best[0]:
                    best = (rn, r)
        if best[0] >= measure(y):
            raise RingError(f"ring for d={ring.d} is not norm-Euclidean")
        x, y = y, best[1]
    return x
