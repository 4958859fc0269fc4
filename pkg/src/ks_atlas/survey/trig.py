"""Sweep of the one-parameter family {0, +-1, +-cos t, +-sin t}.

Five angles admit exact arithmetic: arctan(1/2) and pi/6 and pi/4 live in
quadratic fields; arctan(1/phi) and arctan(1/sqrt2) need sqrt(2+phi) and
sqrt(3) alongside, so they are embedded in the cyclotomic fields Q(zeta_20)
and Q(zeta_24).  The remaining grid angles run in floating point with a
1e-12 orthogonality tolerance and are flagged inexact.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .. import algebra as alg
from ..hypergraph import OrthoGraph
from ..rays import Alphabet, complete_pool, generate_pool
from ..satcore import encode_ks, sat_solve
from .alphabets import sqrt_in_cyclotomic

__all__ = ["special_angles", "trig_sweep", "default_grid", "float_verdict"]


def _exact_alphabets():
    out = {}

    r5 = alg.quadratic_ring(5, "sqrt")
    s5 = r5.gen()
    fifth = Fraction(1, 5)
    out["arctan(1/2)"] = Alphabet.from_generators(
        r5, [s5.scale(2 * fifth), s5.scale(fifth)])  # cos, sin = 2/sqrt5, 1/sqrt5

    r3 = alg.quadratic_ring(3, "sqrt")
    out["pi/6"] = Alphabet.from_generators(
        r3, [r3.gen().scale(Fraction(1, 2)), r3.from_fraction(Fraction(1, 2))])

    # arctan(1/phi): cos = phi / sqrt(2+phi), sin = 1 / sqrt(2+phi) with
    # sqrt(2+phi) = 2 sin(2 pi / 5) = zeta20 - zeta20^9
    r20 = alg.cyclotomic_ring(20)
    root = r20.zeta(1) - r20.zeta(9)
    s5c = sqrt_in_cyclotomic(r20, 5)
    phi = (r20.one() + s5c).scale(Fraction(1, 2))
    assert (root * root) == (r20.from_int(2) + phi), "sqrt(2+phi) embedding failed"
    inv_root = alg.invert(root)
    out["arctan(1/phi)"] = Alphabet.from_generators(r20, [phi * inv_root, inv_root])

    # arctan(1/sqrt2): cos = sqrt2/sqrt3 = sqrt6/3, sin = 1/sqrt3 = sqrt3/3
    r24 = alg.cyclotomic_ring(24)
    s6 = sqrt_in_cyclotomic(r24, 6)
    s3 = sqrt_in_cyclotomic(r24, 3)
    third = Fraction(1, 3)
    out["arctan(1/sqrt2)"] = Alphabet.from_generators(
        r24, [s6.scale(third), s3.scale(third)])

    r2 = alg.quadratic_ring(2, "sqrt")
    out["pi/4"] = Alphabet.from_generators(r2, [r2.gen().scale(Fraction(1, 2))])
    return out


_SPECIAL = None


def special_angles() -> dict:
    global _SPECIAL
    if _SPECIAL is None:
        alphabets = _exact_alphabets()
        values = {
            "arctan(1/2)": math.atan(0.5),
            "pi/6": math.pi / 6,
            "arctan(1/phi)": math.atan(2 / (1 + math.sqrt(5))),
            "arctan(1/sqrt2)": math.atan(1 / math.sqrt(2)),
            "pi/4": math.pi / 4,
        }
        _SPECIAL = {name: (values[name], alphabets[name]) for name in alphabets}
    return _SPECIAL


def default_grid() -> list[tuple[str, float, bool]]:
    """164 angles spanning (0, pi/2]: 159 uniform floating angles (the
    uniform point at pi/4 is replaced by its exact twin) plus the five
    exact algebraic angles."""
    grid = []
    for k in range(1, 161):
        if k == 80:  # exactly pi/4; covered by the exact angle
            continue
        grid.append((f"grid:{k}/160", k * math.pi / 320, False))
    for name, (theta, _) in special_angles().items():
        grid.append((name, theta, True))
    return sorted(grid, key=lambda t: t[1])


def float_verdict(theta: float, tol: float = 1e-12) -> dict:
    """Floating-point pool and KS verdict for one angle (inexact path)."""
    import numpy as np
    symbols = np.array([0.0, 1.0, -1.0, math.cos(theta), -math.cos(theta),
                        math.sin(theta), -math.sin(theta)])
    seen = {}
    for a in symbols:
        for b in symbols:
            for c in symbols:
                v = np.array([a, b, c])
                norm = np.linalg.norm(v)
                if norm < 1e-9:
                    continue
                u = v / norm
                for k in range(3):
                    if abs(u[k]) > 1e-9:
                        if u[k] < 0:
                            u = -u
                        break
                key = tuple(np.round(u, 9))
                seen.setdefault(key, u)
    rays = list(seen.values())
    n = len(rays)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if abs(float(np.dot(rays[i], rays[j]))) < tol:
                edges.append((i, j))
    g = OrthoGraph(n, edges, (), validate=False)
    g = OrthoGraph(n, edges, g.triangles(), validate=False)
    res = sat_solve(encode_ks(g))
    return {"rays": n, "triads": len(g.triads),
            "ks_uncolorable": res.status == "unsat", "exact": False}


def exact_verdict(alphabet: Alphabet) -> dict:
    """Exact verdict on the completed pool (the golden-ratio angle is
    colorable raw and becomes uncolorable only under cross-product
    completion, like its parent island)."""
    pool = complete_pool(generate_pool(alphabet), max_iterations=12)
    g = OrthoGraph.from_pool(pool)
    res = sat_solve(encode_ks(g))
    return {"rays": len(pool), "pairs": len(pool.edges), "triads": len(pool.triads),
            "ks_uncolorable": res.status == "unsat", "exact": True}


def trig_sweep(grid=None) -> list[dict]:
    """KS verdicts across the angle grid; exact arithmetic at the five
    algebraic angles, floating orthogonality (tolerance 1e-12) elsewhere."""
    rows = []
    specials = special_angles()
    for name, theta, is_exact in (grid or default_grid()):
        if is_exact:
            row = exact_verdict(specials[name][1])
        else:
            row = float_verdict(theta)
        row["angle"] = name
        row["theta"] = theta
        rows.append(row)
    return rows
