"""Classification of primitive three-term zero-sums over the product set
{0, +-1, +-x, +-xbar, +-|x|^2} of a two-symbol alphabet.

Patterns are integer coefficient vectors (A, B, C, D) on the basis
(1, x, xbar, |x|^2) with |A|+|B|+|C|+|D| = 3 and at least one of B, C, D
nonzero.  Deduplication acts by: global sign; conjugation (swap x, xbar);
the alphabet symmetry x -> -x; multiplication or division by x and xbar
where the terms stay inside the product set; and the rescaling x -> 1/x,
which on patterns is (A,B,C,D) -> (D,C,B,A) after multiplying the identity
by |x|^2.
"""

from __future__ import annotations

import itertools

__all__ = ["CancellationPattern", "classify_cancellations"]


def _transforms(p):
    a, b, c, d = p
    yield (a, c, b, d)                      # conjugation
    yield (-a, -b, -c, -d)                  # global sign
    if b == 0 or c == 0:
        # x -> -x is an alphabet symmetry, but when x and xbar both occur
        # the relative sign carries algebraic content (Tr x = 1 vs -1), so
        # it applies only to single-species patterns
        yield (a, -b, -c, d)
    yield (d, c, b, a)                      # x -> 1/x (times |x|^2)
    if b == 0 and d == 0:
        yield (0, a, 0, c)                  # multiply by x
    if c == 0 and d == 0:
        yield (0, 0, a, b)                  # multiply by xbar
    if a == 0 and c == 0:
        yield (b, 0, d, 0)                  # divide by x
    if a == 0 and b == 0:
        yield (c, d, 0, 0)                  # divide by xbar


def _canonical(p):
    seen = {p}
    frontier = [p]
    while frontier:
        q = frontier.pop()
        for t in _transforms(q):
            if t not in seen:
                seen.add(t)
                frontier.append(t)
    return min(seen)


def _pretty(pattern):
    names = ["1", "x", "x~", "|x|^2"]
    parts = []
    for coeff, sym in zip(pattern, names):
        for _ in range(abs(coeff)):
            parts.append(("+" if coeff > 0 else "-") + sym)
    out = " ".join(parts)
    return out[1:] if out.startswith("+") else out


# Table of known rows: raw pattern -> (row label, constraint, island tags).
_ROWS = [
    ((2, -1, 0, 0), "1 + 1 - x", "x = 2", ["integer"]),
    ((2, 0, 0, -1), "1 + 1 - |x|^2", "|x|^2 = 2",
     ["peres", "zsqrtm2", "heegner7", "gaussian"]),
    ((1, 1, 0, -1), "1 + x - |x|^2", "|x|^2 = 1 + x", ["golden"]),
    ((1, 1, 1, 0), "1 + x + x~", "x + x~ = -1; x^2 + x + 1 = 0", ["eisenstein"]),
    ((1, -1, -1, 0), "1 - x - x~", "x + x~ = 1", ["colorable"]),
    ((-1, 0, 0, 2), "|x|^2 + |x|^2 - 1", "|x|^2 = 1/2", ["peres (rescaled)"]),
    ((0, 2, 0, -1), "x + x - |x|^2", "|x|^2 = 2x; x = 2", ["integer (rescaled)"]),
]


class CancellationPattern:
    __slots__ = ("pattern", "constraint", "solutions", "rows")

    def __init__(self, pattern, constraint, solutions, rows):
        self.pattern = pattern          # canonical (A, B, C, D)
        self.constraint = constraint
        self.solutions = solutions      # island tags, "colorable", or "none"
        self.rows = rows                # matching known-row labels

    def as_dict(self):
        return {
            "pattern": _pretty(self.pattern),
            "coefficients": list(self.pattern),
            "constraint": self.constraint,
            "solutions": self.solutions,
            "rows": self.rows,
        }

    def __repr__(self):
        return f"CancellationPattern({_pretty(self.pattern)} = 0: {self.solutions})"


def classify_cancellations() -> list[CancellationPattern]:
    """All equivalence classes of primitive three-term zero-sums, each
    carrying the known-row labels it contains and the island tags of its
    solutions ("none" when the constraint has no admissible solution)."""
    known = {}
    for raw, label, constraint, tags in _ROWS:
        canon = _canonical(raw)
        entry = known.setdefault(canon, {"labels": [], "constraint": constraint,
                                         "tags": []})
        entry["labels"].append(label)
        for t in tags:
            if t not in entry["tags"]:
                entry["tags"].append(t)

    classes = set()
    for combo in itertools.product(range(-3, 4), repeat=4):
        if sum(abs(v) for v in combo) != 3:
            continue
        if combo[1] == 0 and combo[2] == 0 and combo[3] == 0:
            continue  # no x involvement
        classes.add(_canonical(combo))

    out = []
    for canon in sorted(classes):
        if canon in known:
            k = known[canon]
            out.append(CancellationPattern(canon, k["constraint"], k["tags"],
                                           k["labels"]))
        else:
            out.append(CancellationPattern(canon, _constraint_text(canon),
                                           _solve_generic(canon), []))
    return out


def _constraint_text(p):
    terms = []
    for coeff, sym in zip(p, ("1", "x", "x~", "|x|^2")):
        if coeff:
            terms.append(f"{coeff:+d}*{sym}")
    return " ".join(terms) + " = 0"


def _solve_generic(p):
    """Admissible solutions outside the known rows: a real x not in
    {0, +-1}, or a unit-circle x (forced trace in [-2, 2])."""
    a, b, c, d = p
    sols = []
    bc = b + c
    if d == 0:
        if bc != 0 and (-a) % bc == 0:
            x = -a // bc
            if x not in (0, 1, -1):
                sols.append(f"x = {x} (real)")
        elif bc != 0:
            sols.append(f"x = {-a}/{bc} (real)")
    else:
        disc = bc * bc - 4 * d * a
        if disc > 0:
            sols.append("real quadratic root")
        elif disc == 0 and bc % (2 * d) == 0 and -bc // (2 * d) not in (0, 1, -1):
            sols.append("real double root")
    if b == c and b != 0 and d == 0:
        t2 = -a  # trace forced by a + b(x + xbar) = 0, scaled by b
        if abs(t2) <= 2 * abs(b):
            sols.append(f"unit-modulus pair, Tr x = {-a}/{b}")
    return sols if sols else ["none"]