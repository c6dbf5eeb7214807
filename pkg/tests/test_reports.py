import shutil
import time
from fractions import Fraction

import pytest

from basesize.classdata import ClassDataError, qhat
from basesize.reports import (MONSTER_EXACT_INVOLUTIONS, PARABOLICS, SUITES, load_data,
                              run_suite)

from conftest import DATA

CLASSES = DATA / "classes"


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_every_suite_passes(suite):
    report = run_suite(suite)
    assert report.ok, report.render()
    assert all(case.total < 1 for case in report.cases)


def test_monster_suite_is_fast():
    t = time.perf_counter()
    run_suite("monster")
    assert time.perf_counter() - t < 1.0


def test_monster_largest_case():
    case = run_suite("monster").case("2.2E6(2):2")
    assert case.c == 2
    alpha, beta = case.contributions
    assert alpha.below == Fraction(1, 64) and alpha.value < alpha.below
    assert beta.below == Fraction(1, 4) and beta.value < beta.below
    data, _ = load_data()
    counts = data.subgroup("2.2E6(2):2", "M").counts
    assert counts["3A"] == 2773871493120 + 48820138278912
    assert counts["3B"] == 7594243732275200


def test_monster_exact_involution_cases_use_class_counts():
    report = run_suite("monster")
    for name in MONSTER_EXACT_INVOLUTIONS:
        beta = report.case(name).contributions[1]
        assert beta.terms[0].method == "exact"


def test_monster_exact_route_is_below_bound():
    for case in run_suite("monster").cases:
        if case.exact_qhat is not None:
            assert case.exact_qhat <= case.total < 1


def test_baby_parabolic_contributions():
    report = run_suite("baby-parabolics")
    assert [c.subgroup for c in report.cases] == list(PARABOLICS)
    for case in report.cases:
        alpha, beta, gamma = case.contributions
        assert alpha.terms[0].inputs[0].value == 38574303876218880
        assert alpha.value < Fraction(2, 3)
        assert beta.value < Fraction(1, 2 ** 19)
        assert gamma.value < Fraction(1, 2 ** 10)
        assert all(ch.holds for ch in case.checks)


def test_baby_nonparabolic_cases():
    report = run_suite("baby-nonparabolic")
    names = {c.subgroup for c in report.cases}
    assert {"O10-(2)", "SO7(3)", "Fi22:2", "F4(2)x2"} <= names
    o10 = report.case("O10-(2)")
    assert o10.contributions[0].value < Fraction(1, 2 ** 24)
    assert all(ch.holds for ch in o10.checks)


def test_exact_qhat_below_one_for_every_stored_subgroup_of_b():
    data, _ = load_data()
    t = data.table("B")
    for name in PARABOLICS + ("O10-(2)", "SO7(3)", "F4(2)x2", "Fi22:2"):
        s = data.subgroup(name, "B")
        labels = [x for x in ("2A", "2B", "2C", "2D", "3A", "3B") if x in s.counts]
        part = sum((Fraction(s.counts[x] ** 3, t.size(x) ** 2) for x in labels), Fraction(0))
        assert part < 1, name


def test_parabolic_suite_also_passes_with_printed_p2_count(tmp_path):
    # without the counts of P2 inside 2E6(2):2 nothing can overwrite the
    # printed order-3 value in B
    target = tmp_path / "classes"
    shutil.copytree(CLASSES, target)
    path = target / "l_maxes.cls"
    lines = path.read_text().splitlines()
    start = next(i for i, x in enumerate(lines) if x.startswith("subgroupdata P2 in"))
    path.write_text("\n".join(lines[:start]) + "\n")
    data, problems = load_data(target)
    assert data.subgroup("P2", "B").counts["3A"] == 58617495552
    assert not any("P2" in p.what for p in problems)
    report = run_suite("baby-parabolics", path=target)
    assert report.ok
    assert run_suite("baby-parabolics").case("P2").total < report.case("P2").total


def test_report_render_marks_results():
    text = run_suite("baby-parabolics").render(verbose=True)
    assert "ALL PASS: 4/4 cases" in text
    assert "P2 < B, c = 3: PASS" in text
    assert "data: |3A cap P2| in B" in text
    brief = run_suite("baby-parabolics").render(verbose=False)
    assert len(brief) < len(text)


def test_suite_fails_loudly_on_missing_data(tmp_path):
    target = tmp_path / "classes"
    shutil.copytree(CLASSES, target)
    (target / "monster.cls").unlink()
    with pytest.raises(ClassDataError):
        run_suite("monster", path=target)


def test_suite_reports_violated_inequality(tmp_path):
    # make every 2A element of B lie in P4, which breaks the gamma bound
    target = tmp_path / "classes"
    shutil.copytree(CLASSES, target)
    baby = target / "baby.cls"
    text = baby.read_text()
    block = "subgroupdata P4 in B order 259759622062080\ncount 2A 66616\n"
    assert block in text
    baby.write_text(text.replace(block, block.replace("66616", "13571955000")))
    report = run_suite("baby-parabolics", path=target)
    assert not report.ok
    assert report.case("P4").failures
    assert report.case("P1,6").holds
    assert "FAILURES" in report.render()


def test_qhat_from_report_data_matches_direct_evaluation():
    data, _ = load_data()
    case = run_suite("monster").case("Fi23")
    assert case.exact_qhat == qhat(data.table("M"), data.subgroup("Fi23", "M"), 2)
