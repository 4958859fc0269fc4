"""Survey presets: each runs one pipeline over a family of alphabets and
compares the outcome against the embedded expected values."""

from __future__ import annotations

from fractions import Fraction

from .. import algebra as alg
from ..bks import bks_search_min_product
from ..csw import fractional_packing, independence_number, lovasz_theta, maximal_cliques
from ..hypergraph import OrthoGraph, profile, spectrum_and_hoffman
from ..minimize import KsInstance, certify_minimum, greedy_minimize
from ..rays import complete_pool, generate_pool
from ..satcore import encode_ks, sat_solve
from ..structure import critical_bases, merge_saturation, rigidity_nullspace
from .alphabets import named_alphabet
from .islands import (ISLANDS, instance_for, island_graph, island_minimal_set,
                      island_pool, minimal_graph, mixed_pool)
from .report import SurveyReport, load_expected

__all__ = ["run_survey", "PRESETS"]


def _pool_row(name, pool, verdict=True):
    row = {"name": name, "rays": len(pool.rays), "pairs": len(pool.edges),
           "triads": len(pool.triads)}
    if verdict:
        res = sat_solve(encode_ks(OrthoGraph.from_pool(pool)))
        row["ks_uncolorable"] = res.status == "unsat"
    return row


def _greedy_min(pool, trials, seed, inst=None):
    inst = inst or KsInstance.from_pool(pool)
    sets = greedy_minimize(pool, trials=trials, seed=seed, inst=inst)
    return min(s.size for s in sets)


def _table1(report, seed, slow):
    names = ["zero-one", "peres", "integer", "sqrt3", "sqrt5", "golden", "half"]
    for name, expect in zip(names, load_expected("table1")["rows"]):
        pool = generate_pool(named_alphabet(name))
        row = _pool_row(name, pool)
        if row["ks_uncolorable"] and "min_size" in expect:
            cert = certify_minimum(pool, pool_id=name)
            row["min_size"] = cert.min_size
            row["bound"] = "exact"
        report.add_row(row, expect)


def _table2(report, seed, slow):
    for expect in load_expected("table2")["rows"]:
        name = expect["name"]
        pool = generate_pool(named_alphabet(name))
        row = _pool_row(name, pool)
        if row["ks_uncolorable"]:
            row["min_size"] = _greedy_min(pool, trials=200, seed=seed)
            row["bound"] = "upper"
        report.add_row(row, expect)


def _table3(report, seed, slow):
    data = load_expected("table3")
    bold = data["bold_rows"]
    for n in range(2, 31):
        pool = generate_pool(named_alphabet(f"cyclotomic:{n}"))
        row = _pool_row(f"n={n}", pool)
        expect = {"ks_uncolorable": n % 6 == 0}
        if str(n) in bold:
            expect.update(bold[str(n)])
        report.add_row(row, expect)


def _table4(report, seed, slow):
    for expect in load_expected("table4")["rows"]:
        name = expect["name"]
        pool = generate_pool(named_alphabet(name))
        row = _pool_row(name, pool)
        if row["ks_uncolorable"] and "min_size" in expect:
            cert = certify_minimum(pool, pool_id=name)
            row["min_size"] = cert.min_size
            row["bound"] = "exact"
        expect = {k: v for k, v in expect.items() if k != "erratum"}
        report.add_row(row, expect)


def _table5(report, seed, slow):
    for expect in load_expected("table5")["rows"]:
        name = expect["name"]
        pool = generate_pool(named_alphabet(name))
        row = _pool_row(name, pool)
        if row["ks_uncolorable"] and "min_size" in expect:
            want = expect["min_size"]
            if isinstance(want, dict):
                row["min_size"] = _greedy_min(pool, trials=60, seed=seed)
                row["bound"] = "upper"
            else:
                cert = certify_minimum(pool, pool_id=name)
                row["min_size"] = cert.min_size
                row["bound"] = "exact"
        report.add_row(row, expect)


def _abs_values(pool):
    """Distinct coordinate magnitudes: |c| for real rings, |c|^2 otherwise."""
    out = set()
    for r in pool.rays:
        for c in r.coords:
            if pool.ring.is_real:
                out.add(c.abs_real())
            else:
                prod = c * c.conjugate()
                out.add(prod)
    return out


def _has_two_one(alphabet) -> bool:
    nz = [s for s in alphabet.symbols if not s.is_zero()]
    for a in nz:
        for b in nz:
            if a == b.scale(2):
                return True
    return False


def _table6(report, seed, slow):
    for expect in load_expected("table6")["rows"]:
        name = expect["name"]
        alphabet = named_alphabet(name)
        raw = generate_pool(alphabet)
        completed = complete_pool(raw, max_iterations=12)
        res = sat_solve(encode_ks(OrthoGraph.from_pool(completed)))
        row = {
            "name": name,
            "raw_rays": len(raw.rays),
            "completed_rays": len(completed.rays),
            "completed_triads": len(completed.triads),
            "completion_rounds": completed.completion_rounds,
            "new_magnitudes": len(_abs_values(completed) - _abs_values(raw)),
            "has_two_one": _has_two_one(alphabet),
            "ks_uncolorable": res.status == "unsat",
        }
        if row["ks_uncolorable"]:
            row["min_size"] = _greedy_min(completed, trials=60, seed=seed)
            row["bound"] = "upper"
        report.add_row(row, expect)


def _mixed(report, seed, slow):
    pairs = [("integer", "sqrt2"), ("integer", "sqrt3"), ("integer", "sqrt5"),
             ("integer", "golden"), ("sqrt2", "sqrt3"), ("sqrt2", "golden")]
    for (a, b), expect in zip(pairs, load_expected("mixed")["rows"]):
        pool = mixed_pool(a, b)
        row = _pool_row(f"{a}+{b}", pool)
        row["name"] = expect["name"]
        if row["ks_uncolorable"]:
            row["min_size"] = _greedy_min(pool, trials=200, seed=seed)
            row["bound"] = "upper"
        report.add_row(row, expect)


def _csw(report, seed, slow):
    data = load_expected("csw")
    for expect in data["rows"]["minimized"]:
        name = expect["name"]
        g = minimal_graph(name)
        alpha, _ = independence_number(g)
        theta, gap = lovasz_theta(g, tol=1e-3, with_gap=True)
        alpha_star = fractional_packing(g, maximal_cliques(g))
        row = {"name": name, "scope": "minimized", "n": g.n, "alpha": alpha,
               "theta": theta, "theta_gap": gap, "alpha_star": float(alpha_star),
               "sandwich_ok": alpha <= theta + 1e-2 and theta <= float(alpha_star) + 1e-2}
        report.add_row(row, expect)
    for expect in data["rows"]["pools"]:
        name = expect["name"]
        g = island_graph(name)
        prof = profile(g)
        alpha, _ = independence_number(g)
        theta, gap = lovasz_theta(g, tol=5e-2 if g.n > 100 else 1e-3, with_gap=True)
        alpha_star = fractional_packing(g, maximal_cliques(g))
        lam_max, lam_min, hoffman = spectrum_and_hoffman(g)
        row = {"name": name, "scope": "pool", "n": g.n,
               "bases": prof.basis_count, "auxiliary": prof.auxiliary_count,
               "alpha": alpha, "theta": theta, "theta_gap": gap,
               "alpha_star": float(alpha_star),
               "lambda_max": lam_max, "lambda_min": lam_min, "hoffman": hoffman,
               "alpha_over_hoffman": alpha / hoffman,
               "spectrally_tight": alpha / hoffman < 1,
               "sandwich_ok": alpha <= theta + 1e-2 and theta <= float(alpha_star) + 1e-2}
        expect = dict(expect)
        expect["spectrally_tight"] = name in data["rows"]["spectrally_tight"]
        report.add_row(row, expect)


def _bpqs(report, seed, slow):
    for expect in load_expected("bpqs")["rows"]:
        name = expect["name"]
        g = minimal_graph(name)
        if expect["exact"]:
            res = bks_search_min_product(g, mode="exhaustive")
        else:
            res = bks_search_min_product(g, mode="greedy", trials=500, seed=seed)
        row = {"name": name, "bases": len(g.triads), "product": res.get("product"),
               "sizes": sorted(res.get("sizes", [])), "exact": res.get("exact"),
               "bound": "exact" if res.get("exact") else "upper"}
        report.add_row(row, {k: v for k, v in expect.items() if k != "sizes"}
                       | ({"sizes": sorted(expect["sizes"])} if "sizes" in expect else {}))


def _critical(report, seed, slow):
    for expect in load_expected("critical")["rows"]:
        name, scope = expect["name"], expect["scope"]
        g = minimal_graph(name) if scope == "minimized" else island_graph(name)
        out = critical_bases(g)
        row = {"name": name, "scope": scope, "bases": out["basis_count"],
               "essential": out["essential_count"],
               "eta": float(out["eta"]), "kappa": out["kappa"]}
        if out["kappa"] is not None and out["kappa"] > 1:
            row["critical_at_kappa"] = len(out["critical_subsets_at_kappa"])
            row["subsets_at_kappa"] = out["subsets_tested_at_kappa"]
        report.add_row(row, expect)


def _rigidity(report, seed, slow):
    for expect in load_expected("rigidity")["rows"]:
        name = expect["name"]
        pool = island_pool(name)
        rays = [pool.rays[i] for i in island_minimal_set(name)]
        rep = rigidity_nullspace(rays)
        row = {"name": name, "n": rep.n, "constraints": rep.constraint_count,
               "nullity": rep.nullity, "expected_symmetries": rep.expected,
               "status": rep.status}
        report.add_row(row, expect)


def _merges(report, seed, slow):
    for expect in load_expected("merges")["rows"]:
        name = expect["name"]
        g = minimal_graph(name)
        total, preserving, failures = merge_saturation(g)
        row = {"name": name, "merges": total, "preserving": preserving,
               "failures": len(failures)}
        report.add_row(row, expect)


def _heegner(report, seed, slow):
    _table5(report, seed, slow)


PRESETS = {
    "table1": _table1,
    "table2": _table2,
    "table3": _table3,
    "table4": _table4,
    "table5": _table5,
    "table6": _table6,
    "mixed": _mixed,
    "heegner": _heegner,
    "csw": _csw,
    "bpqs": _bpqs,
    "critical": _critical,
    "rigidity": _rigidity,
    "merges": _merges,
}


def run_survey(preset: str, seed: int = 0, slow: bool = False) -> SurveyReport:
    """Execute a preset pipeline and compare against the embedded expected
    values; per-row failures are recorded and the run continues.

    slow=True additionally certifies the golden pool minimum exactly in the
    table6 preset (paper-scale OCUS run)."""
    if preset not in PRESETS:
        raise KeyError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
    report = SurveyReport(preset, seed=seed)
    PRESETS[preset](report, seed, slow)
    if slow and preset == "table6":
        pool = island_pool("golden")
        cert = certify_minimum(pool, inst=instance_for("golden"), pool_id="golden")
        report.add_row({"name": "golden-ocus", "min_size": cert.min_size,
                        "iterations": cert.iterations, "bound": "exact"},
                       {"min_size": 52})
    return report
