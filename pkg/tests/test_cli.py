"""Command-line behaviour: exit codes, report files and configuration flags."""

import json
import re

import pytest
from click.testing import CliRunner

from anomod.cli import cli


def _run(*args):
    return CliRunner().invoke(cli, list(args))


def _flat(output):
    return " ".join(output.split())


def test_verify_agw_passes():
    result = _run("verify", "agw")

    assert result.exit_code == 0, result.output
    assert "passed 1, failed 0, info 0, total 1" in _flat(result.output)


def test_verbose_mode_does_not_crash():
    result = _run("--verbose", "verify", "agw")

    assert result.exit_code == 0, result.output


def test_verify_json_report_file(tmp_path):
    out = tmp_path / "gs.json"

    result = _run("verify", "gs", "--xi", "trivial", "--format", "json", "--out", str(out))

    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text())
    (report,) = document["reports"]
    assert report["check_id"] == "green-schwarz"
    assert report["paper_target"] == "gs"
    assert report["status"] == "pass"
    assert report["ranks"] == "symbolic"
    assert report["xi_mode"] == "trivial"
    assert document["summary"] == {"passed": 1, "failed": 0, "info": 0, "total": 1}


@pytest.mark.parametrize(
    "tag, check_id",
    [
        ("theorem1", "factorization"),
        ("cor1", "factorization-shifted"),
        ("cor2", "factorization-single"),
        ("cor3", "factorization-so32"),
        ("remark", "quadratic-bridge"),
    ],
)
def test_verify_accepts_published_tags(tmp_path, tag, check_id):
    out = tmp_path / f"{tag}.json"

    result = _run("verify", tag, "--xi", "trivial", "--format", "json", "--out", str(out))

    assert result.exit_code == 0, result.output
    (report,) = json.loads(out.read_text())["reports"]
    assert report["check_id"] == check_id
    assert report["paper_target"] == tag


def test_json_report_is_reproducible(tmp_path):
    texts = []
    for name in ("first.json", "second.json"):
        out = tmp_path / name
        result = _run("verify", "agw", "--format", "json", "--out", str(out))
        assert result.exit_code == 0, result.output
        texts.append(re.sub(r'"elapsed_ms": [^,}\n]+', "", out.read_text()))

    assert texts[0] == texts[1]


def test_verify_text_report_file(tmp_path):
    out = tmp_path / "agw.txt"

    result = _run("verify", "agw", "--out", str(out))

    assert result.exit_code == 0, result.output
    assert "alvarez-gaume-witten" in out.read_text()


def test_unknown_target_exits_with_error():
    result = _run("verify", "bogus")

    assert result.exit_code == 2
    assert "Unknown verification target" in _flat(result.output)


def test_trivial_plane_bundle_targets_reject_generic_xi():
    result = _run("verify", "gs")

    assert result.exit_code == 2
    assert "--xi trivial" in _flat(result.output)


def test_malformed_ranks_exit_with_error():
    result = _run("verify", "agw", "--ranks", "m=4")

    assert result.exit_code == 2


def test_verify_with_yaml_suite(tmp_path):
    suite = tmp_path / "suite.yaml"
    suite.write_text("configs:\n  - xi: generic\n  - xi: trivial\n")
    out = tmp_path / "suite.json"

    result = _run(
        "verify", "agw", "--config", str(suite), "--format", "json", "--out", str(out)
    )

    assert result.exit_code == 0, result.output
    reports = json.loads(out.read_text())["reports"]
    assert [r["xi_mode"] for r in reports] == ["generic", "trivial"]


def test_verify_with_malformed_yaml_suite(tmp_path):
    suite = tmp_path / "suite.yaml"
    suite.write_text("configs:\n  - rank: 3\n")

    result = _run("verify", "agw", "--config", str(suite))

    assert result.exit_code == 2


def test_numeric_transforms_pass():
    result = _run("numeric", "transforms")

    assert result.exit_code == 0, result.output
    assert "theta-S" in result.output


def test_numeric_rejects_lower_half_plane():
    result = _run("numeric", "transforms", "--tau", "0,-1")

    assert result.exit_code == 2


def test_numeric_theta4_json(tmp_path):
    out = tmp_path / "theta4.json"

    result = _run("numeric", "theta4", "--format", "json", "--out", str(out))

    assert result.exit_code == 0, result.output
    identities = json.loads(out.read_text())["identities"]
    assert [i["name"] for i in identities] == ["delta1", "epsilon1", "delta2", "epsilon2"]
    assert all(i["status"] == "pass" for i in identities)


def test_expand_ahat_json(tmp_path):
    out = tmp_path / "ahat.json"

    result = _run("expand", "ahat", "--format", "json", "--out", str(out))

    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text())
    assert document["form"].startswith("1 - 1/24*p1T + 7/5760*p1T^2 - 1/1440*p2T")


def test_expand_theta1_needs_concrete_ranks():
    result = _run("expand", "theta1")

    assert result.exit_code == 2


def test_decompose_p2_is_exact():
    result = _run("decompose", "p2", "--q-order", "6")

    assert result.exit_code == 0, result.output
    assert "residual support" in result.output
