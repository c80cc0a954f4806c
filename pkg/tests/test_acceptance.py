"""Acceptance criteria 1-8, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also written to the terminal summary.
"""

import json
import subprocess
import sys
import time
from fractions import Fraction as Fr
from pathlib import Path

import jsonschema
import pytest

from conftest import ACCEPTANCE_LINES

from nokcert.bounds import abelian_hodge_cap, adjunction_eps_cap, debarre_min_mult, mu_floor_from_volume
from nokcert.certificates.engine import verify
from nokcert.certificates.report import REPORT_SCHEMA
from nokcert.certificates.oracle import numeric_crosscheck, shoelace_suite, vc_continuity_suite
from nokcert.certificates.scenario import builtin_names, load_builtin, load_scenario
from nokcert.cli import main
from nokcert.exact import ParamPolynomial, Polynomial, RationalInterval, Sign, sturm_root_count
from nokcert.piecewise import profile_dominance
from nokcert.slice_model import Surface, SurfaceCollapse, collapse_time

DATA = Path(__file__).parent / "data"
s = Polynomial.x()
T = ParamPolynomial.t()


@pytest.fixture
def criterion(request, capsys):
    """Yields a recorder; the PASS/FAIL line is printed when the test finishes."""
    state = {"label": request.node.name, "detail": ""}
    yield state
    failed = getattr(request.node, "rep_call", None)
    ok = failed is not None and failed.passed
    line = f"{'PASS' if ok else 'FAIL'}  {state['label']}  {state['detail']}".rstrip()
    ACCEPTANCE_LINES.append(line)
    with capsys.disabled():
        print("\n" + line)


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_1_case31(criterion):
    criterion["label"] = "criterion 1 (case 3.1)"
    r, dt = timed(lambda: verify(load_builtin("thm-main-case-3.1")))
    (br,) = r.branches
    assert br.volume == Fr(45, 32) * s**3
    assert r.holds
    assert r.sup_enclosure == (Fr(1215, 256), Fr(1215, 256)) and r.argmax == Fr(3, 2)
    assert r.margin_lower_bound == Fr(29, 3) - Fr(1215, 256) == Fr(3779, 768)
    criterion["detail"] = f"sup 1215/256, margin 3779/768, {dt:.3f}s"
    assert dt < 1


def test_criterion_2_case32(criterion):
    criterion["label"] = "criterion 2 (case 3.2)"
    r, dt = timed(lambda: verify(load_builtin("thm-main-case-3.2")))
    main_br, tail_br = r.branches
    assert main_br.volume == 4 * s**2 - Fr(32, 27) * s**3
    extra = tail_br.volume - main_br.volume
    assert extra == (17 * s - 30) ** 3 / 486 and extra(2) == Fr(32, 243)
    assert main_br.holds and tail_br.holds and r.holds
    lo, hi = r.sup_enclosure
    assert lo <= Fr(176, 27) + Fr(32, 243) == Fr(1616, 243) <= hi
    criterion["detail"] = f"sup in [{lo}, {hi}], {dt:.3f}s"
    assert dt < 1


def test_criterion_3_case33(criterion):
    criterion["label"] = "criterion 3 (case 3.3)"
    r, dt = timed(lambda: verify(load_builtin("thm-main-case-3.3")))
    (br,) = r.branches
    assert br.volume == ((6 - s) ** 3 - (6 - 2 * s) ** 3) / 6 + (2 - s / 3) ** 3 / 6
    # no root of the derivative on [2, 3], so the max sits at an end
    assert sturm_root_count(br.volume.derivative(), RationalInterval(2, 3)) == 0
    assert r.sup_enclosure == (Fr(788, 81), Fr(788, 81)) and r.argmax == 2
    assert r.holds and r.margin_lower_bound == Fr(17, 162)
    criterion["detail"] = f"sup 788/81 at eps = 2, margin 17/162, {dt:.3f}s"
    assert dt < 1


def test_criterion_4_corollary(criterion):
    criterion["label"] = "criterion 4 (corollary)"
    (r1, r2), dt = timed(lambda: (verify(load_builtin("cor-main-case-1")), verify(load_builtin("cor-main-case-2"))))
    (br,) = r2.branches
    assert br.volume == s**3 / 6 - (5 * s - 15) ** 3 / 6 + s**3 / 162
    for r in (r1, r2):
        lo, hi = r.sup_enclosure
        assert r.holds and lo <= hi and r.margin_lower_bound >= 1
    criterion["detail"] = (f"margins {r1.margin_lower_bound} and {r2.margin_lower_bound} "
                           f"(~{float(r2.margin_lower_bound):.4f}), {dt:.3f}s")
    assert dt < 2


def test_criterion_5_structural(criterion):
    criterion["label"] = "criterion 5 (structural)"
    vc = vc_continuity_suite(range(2, 11), 20, seed=5)
    sh = shoelace_suite(500, seed=5)
    assert vc.holds and vc.cases == 180
    assert sh.holds and sh.cases == 500
    worst = 0.0
    for name in builtin_names():
        sc = load_builtin(name)
        assert all(profile_dominance(br.profile) is Sign.POSITIVE for br in sc.branches), name
        cc = numeric_crosscheck(sc, 100, seed=5)
        assert cc.samples == 100 and cc.max_deviation <= 1e-9, name
        worst = max(worst, cc.max_deviation)
    criterion["detail"] = f"worst quadrature deviation {worst:.1e}"


def test_criterion_6_bounds(criterion):
    criterion["label"] = "criterion 6 (bound calculators)"
    assert debarre_min_mult(59, Fr(3, 2)) == 5
    assert debarre_min_mult(59, 2) == 4
    assert adjunction_eps_cap(T, 2) == 6 - T
    assert adjunction_eps_cap(T, 5) == 15 - 4 * T
    two = SurfaceCollapse((Surface(2, 6 - s, (6 - s) / 3), Surface(2, 2 * s, Polynomial())))
    assert collapse_time(two) == (24 + 8 * s) / 9
    assert collapse_time(SurfaceCollapse((Surface(2, 6 - s, (6 - s) / 3),))) == 8 - 4 * s / 3
    assert collapse_time(SurfaceCollapse((Surface(2, s, s / 3),))) == 4 * s / 3
    q, cap = abelian_hodge_cap(Fr(3, 2))
    assert q == 4 and cap == Fr(3, 2) ** 2 * Fr(8, 7) == Fr(18, 7) and cap < 4
    assert mu_floor_from_volume(59, 3) and mu_floor_from_volume(40, 3)
    criterion["detail"] = "q >= 5 and q >= 4, caps 6 - t and 15 - 4t, 18/7 < 4"


def test_criterion_7_negative_controls(criterion, tmp_path, capsys):
    criterion["label"] = "criterion 7 (negative controls)"
    for name in builtin_names():
        sc = load_builtin(name)
        lo, _ = verify(sc).sup_enclosure
        doc = dict(sc.document, threshold=str(lo))
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(doc))
        assert not verify(load_scenario(path)).holds
        assert main(["verify", "--scenario", str(path)]) == 1, name
    assert main(["verify", "--scenario", str(DATA / "case31-q3.json")]) == 1
    capsys.readouterr()
    criterion["detail"] = "threshold = sup fails for all five; q = 3 fails"


def test_criterion_8_end_to_end(criterion, tmp_path):
    criterion["label"] = "criterion 8 (end to end)"
    reports = []
    for k in range(2):
        rep = tmp_path / f"r{k}.json"
        t0 = time.perf_counter()
        proc = subprocess.run([sys.executable, "-m", "nokcert", "verify", "--all-builtin", "--report", str(rep)],
                              capture_output=True, text=True, cwd=tmp_path)
        dt = time.perf_counter() - t0
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert dt < 10
        reports.append(rep.read_bytes())
    jsonschema.validate(json.loads(reports[0]), REPORT_SCHEMA)
    assert reports[0] == reports[1]
    criterion["detail"] = f"exit 0, schema-valid, byte-identical, {dt:.2f}s"
