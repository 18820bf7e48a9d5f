"""End-to-end acceptance checks, one test per criterion.

Each test appends a ``CRITERION k: PASS/FAIL`` line that is printed in the
terminal summary, then asserts.
"""

import json
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE
from rank1lab.cli import main
from rank1lab.cyclic_covers import eierlegende_wollmilchsau, ornithorynque
from rank1lab.cylinders import Residue, configuration_check, direction_decomposition, gt_residue
from rank1lab.degeneration import Verdict, pinch
from rank1lab.homology import homology_action, standard_form
from rank1lab.lyapunov import orbit_cocycle, random_walk_exponents, seed_averaged
from rank1lab.origami import (
    Stratum,
    canonical_form,
    enumerate_origamis,
    from_cycles,
    genus,
    l_origami,
    loads,
    stratum,
)
from rank1lab.search import SearchJob, run_search
from rank1lab.sl2z import act_word, cusps, orbit

pytestmark = pytest.mark.slow


def record(k, ok, detail):
    ACCEPTANCE.append(f"CRITERION {k}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def test_criterion_1_example_surfaces(tmp_path, capsys):
    rows = []
    ok = True
    for name, want in (("ew", (3, Stratum((1, 1, 1, 1)), 8)), ("orni", (4, Stratum((2, 2, 2)), 12))):
        out = tmp_path / f"{name}.json"
        t0 = time.perf_counter()
        code = main(["build", "--example", name, "--out", str(out)])
        o = loads(out.read_text())
        dt = time.perf_counter() - t0
        got = (genus(o), stratum(o), o.n)
        ok &= code == 0 and got == want and dt < 1.0
        rows.append(f"{name}: genus {got[0]}, {got[1]}, {got[2]} squares, {dt:.3f}s")
    capsys.readouterr()
    record(1, ok, "; ".join(rows))


def test_criterion_2_configuration_on_examples():
    t0 = time.perf_counter()
    ok, rows = True, []
    for name, o in (("ew", eierlegende_wollmilchsau()), ("orni", ornithorynque())):
        reps = [configuration_check(direction_decomposition(o, *c.direction)) for c in cusps(orbit(o))]
        ok &= all(r.passed for r in reps)
        rows.append(f"{name}: {sum(r.passed for r in reps)}/{len(reps)} cusps pass")
    dt = time.perf_counter() - t0
    record(2, ok and dt < 10, "; ".join(rows) + f"; {dt:.2f}s")


def test_criterion_3_genus_two_exclusion(tmp_path, cache_dir):
    job = SearchJob(
        strata=[(2,), (1, 1)], min_squares=3, max_squares=8,
        filters=["config", "pinch"], output_path=str(tmp_path / "g2.jsonl"),
    )
    summary = run_search(job)
    lam = []
    for o in summary["passing_origamis"]:
        est = random_walk_exponents(loads(json.dumps(o)), 10**6, 0)
        lam.append(est.exponents[1])
    ok = summary["passed"] == 0 or all(x > 0.25 for x in lam)
    record(3, ok, f"{summary['candidates']} orbits in H(2) and H(1,1), 3<=n<=8; {summary['passed']} pass the combinatorial filters")


def _multi_cylinder_origamis(s, n_values, count):
    out = []
    for n in n_values:
        seen = set()
        for o in enumerate_origamis(n, s):
            if o.key() in seen:
                continue
            orb = orbit(o)
            seen |= set(orb.index)
            for c in cusps(orb):
                d = direction_decomposition(o, *c.direction)
                if len(d) >= 2:
                    out.append((o, d))
                    break
            if len(out) == count:
                return out
    return out


def test_criterion_4_minimal_stratum_exclusion():
    cases = _multi_cylinder_origamis(Stratum((2,)), range(3, 9), 5)
    cases += _multi_cylinder_origamis(Stratum((4,)), range(5, 8), 5)
    assert len(cases) == 10
    infeasible = punctured = 0
    for o, d in cases:
        dc = pinch(o, d)
        infeasible += dc.verdict is Verdict.INFEASIBLE
        punctured += any(p.is_twice_punctured_sphere for p in dc.graph.vertices)
    record(
        4,
        infeasible == 10 and punctured == 10,
        f"{infeasible}/10 Infeasible; {punctured}/10 with a part having two poles and no zeros",
    )


def test_criterion_5_degenerate_spectra():
    rows, ok = [], True
    for name, o, g in (("ew", eierlegende_wollmilchsau(), 3), ("orni", ornithorynque(), 4)):
        t0 = time.perf_counter()
        est = seed_averaged(o, 10**6, range(4))
        worst = max(abs(x) for x in est.exponents[1:g])
        ok &= worst < 0.05
        rows.append(f"{name}: max|lambda_2..{g}| = {worst:.2e} ({time.perf_counter() - t0:.1f}s)")
    record(5, ok, "; ".join(rows))


def test_criterion_6_genus_two_exponents():
    l2 = random_walk_exponents(l_origami(), 10**6, 0).exponents[1]
    h11 = from_cycles("(1,2,3,4)", "(1,2)(3,4)", 4)
    assert stratum(h11) == Stratum((1, 1))
    m2 = random_walk_exponents(h11, 10**6, 0).exponents[1]
    ok = abs(l2 - 1 / 3) < 0.05 and abs(m2 - 1 / 2) < 0.05
    record(6, ok, f"L-origami lambda_2 = {l2:.4f} (1/3); H(1,1) 4 squares lambda_2 = {m2:.4f} (1/2)")


def test_criterion_7_structural_suites():
    checks = {}
    # symplecticity of every generator over every origami with n <= 6
    count = 0
    sym = True
    for n in range(1, 7):
        for o in enumerate_origamis(n):
            J = standard_form(genus(o))
            for g in "TtSs":
                M, _, _ = homology_action(o, g)
                sym &= bool(np.array_equal(M.T @ J @ M, J))
                count += 1
    checks[f"symplectic ({count} matrices)"] = sym

    ests = [random_walk_exponents(o, 200_000, 1) for o in (l_origami(), eierlegende_wollmilchsau())]
    checks["spectrum symmetry"] = all(
        abs(e.exponents[k] + e.exponents[-1 - k]) <= 3 * (e.stderr[k] + e.stderr[-1 - k]) + 1e-9
        for e in ests
        for k in range(len(e.exponents))
    )

    chern = True
    for n in range(3, 8):
        for o in enumerate_origamis(n)[::3]:
            g = genus(o)
            if g < 2:
                continue
            for q, p in ((1, 0), (0, 1), (1, 1)):
                parts = pinch(o, direction_decomposition(o, q, p)).graph.vertices
                # sum over parts of (2g' - 2 + poles) recovers 2g - 2
                chern &= sum(-pt.euler_char + pt.poles for pt in parts) == 2 * g - 2
                chern &= sum(sum(pt.zero_orders) for pt in parts) == 2 * g - 2
    checks["Chern bookkeeping"] = chern

    forms = enumerate_origamis(7)
    checks["canonical idempotence"] = all(canonical_form(c) == c for c in forms)
    checks["S^4 = id"] = all(canonical_form(act_word(c, "SSSS")) == c for c in forms)

    res = True
    c = Residue(1.5, -0.75)
    for s in (0.0, 0.4, -1.1):
        for t in (0.2, -0.9, 2.0):
            a = complex(gt_residue(gt_residue(c, s), t))
            b = complex(gt_residue(c, s + t))
            direct = 1.5 * np.exp(-(s + t)) - 0.75j * np.exp(s + t)
            res &= abs(a - b) < 1e-12 * max(1, abs(b)) and abs(b - direct) < 1e-12 * max(1, abs(direct))
    checks["residue flow"] = res

    record(7, all(checks.values()), "; ".join(f"{k}: {'ok' if v else 'FAILED'}" for k, v in checks.items()))


def test_criterion_8_bounded_genus_three_search(tmp_path, cache_dir):
    job = SearchJob(
        strata=[(1, 1, 1, 1)], min_squares=8, max_squares=8,
        filters=["config", "pinch"], output_path=str(tmp_path / "g3.jsonl"),
    )
    summary = run_search(job)
    passing = [canonical_form(loads(json.dumps(o))) for o in summary["passing_origamis"]]
    ok = summary["bounded_search"] and passing == [eierlegende_wollmilchsau()]
    record(
        8,
        ok,
        f"bounded search H(1,1,1,1), n=8: {summary['candidates']} orbits, "
        f"{len(passing)} passing ({'EW' if ok else passing})",
    )
