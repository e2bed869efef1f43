from fractions import Fraction

from anomod._core.gradedring import standard_ring
from anomod._core.qseries import RATIONALS, QSeries
from anomod._core.result import EXIT_FAIL, EXIT_PASS, SuiteResult, to_python
from anomod._core.types import VerificationReport


def _report(check_id, status, residual_terms=0, **extra):
    return VerificationReport(check_id, f"identity of {check_id}", status, residual_terms, **extra)


def test_suite_result_summary_and_order():
    result = SuiteResult(
        [
            _report("p2-modularity", "pass"),
            _report("factorization[exp-half]", "fail", 3, euler_mode="exp-half"),
            _report("coeff-eqs-printed-sign", "info", 2),
            _report("alvarez-gaume-witten", "pass"),
        ]
    )

    assert [r.check_id for r in result.reports] == [
        "alvarez-gaume-witten",
        "coeff-eqs-printed-sign",
        "factorization[exp-half]",
        "p2-modularity",
    ]
    assert result.get_summary() == {"passed": 2, "failed": 1, "info": 1, "total": 4}
    assert [r.check_id for r in result.get_failures()] == ["factorization[exp-half]"]
    assert [r.check_id for r in result.get_findings()] == ["coeff-eqs-printed-sign"]
    assert not result.passed
    assert result.exit_code == EXIT_FAIL


def test_info_records_do_not_fail_a_run():
    result = SuiteResult([_report("agw", "pass"), _report("finding", "info", 5)])

    assert result.passed
    assert result.exit_code == EXIT_PASS


def test_document_structure():
    report = _report("agw", "pass", elapsed_ms=1.23456, residual_sample=("x",))
    document = SuiteResult([report]).to_document()

    assert document["summary"]["total"] == 1
    (entry,) = document["reports"]
    assert entry["check_id"] == "agw"
    assert entry["residual_sample"] == ["x"]
    assert entry["elapsed_ms"] == 1.235
    assert entry["euler_mode"] is None


def test_reports_carry_published_tags():
    assert _report("factorization[cosh-half]", "pass").paper_target == "theorem1"
    assert _report("factorization-so32", "pass").paper_target == "cor3"
    assert _report("quadratic-bridge", "pass").to_dict()["paper_target"] == "remark"
    assert _report("coeff-eqs-printed-sign", "info").paper_target == "coeff-eqs"
    assert _report("p2-modularity", "pass").paper_target == "p2-modularity"


def test_to_python_conversions():
    ring = standard_ring(12)
    c = ring.generator("c")

    assert to_python(Fraction(1, 24)) == "1/24"
    assert to_python(Fraction(4, 2)) == 2
    assert to_python(1 + 2j) == [1.0, 2.0]
    assert to_python(c / 2 - 1) == "-1 + 1/2*c"
    assert to_python(QSeries(RATIONALS, {0: 1, 1: Fraction(-1, 8)}, 4)) == {
        "q^(0/2)": 1,
        "q^(1/2)": "-1/8",
    }
    assert to_python({"a": (Fraction(1, 2),)}) == {"a": ["1/2"]}
