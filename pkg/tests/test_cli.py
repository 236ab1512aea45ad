import json
import subprocess

import pytest

from unicusp.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- analyze -------------------------------------------------------------------


def test_analyze_cuspidal_cubic_text(capsys):
    code, out, _ = run_cli(capsys, "analyze", "y^2*z - x^3")
    assert code == 0
    assert "degree 3, genus 0" in out
    assert "singular point (0 : 0 : 1) with multiplicity 2" in out
    assert "cusp multiplicity sequence (2,)" in out
    assert "verdict:" in out


def test_analyze_json_document(capsys):
    code, out, _ = run_cli(capsys, "analyze", "y^2*z - x^3", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["timing"] is None
    assert doc["name"] == "curve"
    assert doc["degree"] == 3 and doc["genus"] == 0
    assert doc["unicuspidal"] is True
    assert doc["cusp"] == [0, 0, 1]


def test_analyze_corpus_curve(capsys):
    code, out, _ = run_cli(capsys, "analyze", "corpus:cusp-quartic", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["name"] == "cusp-quartic"
    assert doc["degree"] == 4
    assert doc["genus"] == 1
    assert doc["verdict"] == "AMS"
    assert doc["multiplicity_sequence"] == [2, 2]


def test_analyze_smooth_curve(capsys):
    code, out, _ = run_cli(capsys, "analyze", "x^2 + y^2 - z^2")
    assert code == 0
    assert "smooth: no singular points" in out


def test_analyze_with_point(capsys):
    code, out, _ = run_cli(capsys, "analyze", "y^2*z - x^3", "--point", "0,0,1")
    assert code == 0
    assert "multiplicity at (0 : 0 : 1): 2" in out


def test_analyze_writes_dot_file(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys, "analyze", "y^2*z - x^3", "--dot", str(tmp_path)
    )
    assert code == 0
    dot = tmp_path / "resolution-curve.dot"
    assert dot.exists()
    assert dot.read_text().startswith("graph ")
    assert str(dot) in out


def test_analyze_parse_error_is_usage(capsys):
    code, _, err = run_cli(capsys, "analyze", "x +")
    assert code == 2
    assert "error:" in err and "cannot parse" in err


def test_analyze_unknown_corpus_name_is_usage(capsys):
    code, _, err = run_cli(capsys, "analyze", "corpus:lemniscate")
    assert code == 2
    assert "no corpus curve" in err


def test_analyze_bad_point_is_usage(capsys):
    code, _, err = run_cli(capsys, "analyze", "y^2*z - x^3", "--point", "1,2")
    assert code == 2
    assert "--point" in err


def test_bad_params_fragment_is_usage(capsys):
    code, _, err = run_cli(capsys, "analyze", "y^2*z - x^3", "--params", "q=1")
    assert code == 2
    assert "--params" in err
    code, _, err = run_cli(capsys, "analyze", "y^2*z - x^3", "--params", "c=1/0")
    assert code == 2
    assert "bad rational" in err


def test_params_reach_the_curve_builders(capsys):
    code, out, _ = run_cli(
        capsys, "analyze", "corpus:node-cubic", "--params", "c=2", "--json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["params"] == {"a": "1", "b": "1", "c": "2"}
    assert doc["degree"] == 3


def test_missing_subcommand_exits_two():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


def test_json_output_is_reproducible(capsys):
    _, first, _ = run_cli(capsys, "analyze", "x*z - y^2", "--json")
    _, second, _ = run_cli(capsys, "analyze", "x*z - y^2", "--json")
    assert first == second


def test_timing_flag(capsys):
    code, out, _ = run_cli(capsys, "analyze", "x*z - y^2", "--timing")
    assert code == 0
    assert "elapsed:" in out
    code, out, _ = run_cli(capsys, "analyze", "x*z - y^2", "--json", "--timing")
    doc = json.loads(out)
    assert isinstance(doc["timing"], float)


# -- intersect -----------------------------------------------------------------


def test_intersect_text_and_json(capsys):
    code, out, _ = run_cli(capsys, "intersect", "x*z - y^2", "x - z")
    assert code == 0
    assert "(1 : 1 : 1) with local number 1" in out
    assert "(1 : -1 : 1) with local number 1" in out
    assert "located 2 of 2 (residual 0)" in out

    code, out, _ = run_cli(capsys, "intersect", "x*z - y^2", "x", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["bezout_ok"] is True
    assert doc["fully_located"] is True
    assert doc["cycle"]["bezout"] == 2


def test_intersect_shared_component_is_domain_error(capsys):
    code, _, err = run_cli(capsys, "intersect", "x*y", "x*z")
    assert code == 1
    assert "component" in err


# -- resolve -------------------------------------------------------------------


def test_resolve_finds_the_point_itself(capsys):
    code, out, _ = run_cli(capsys, "resolve", "y^2*z - x^3")
    assert code == 0
    assert "resolved curve at (0 : 0 : 1) in 3 blowups" in out
    assert "delta 1" in out
    assert "strict transform square 3" in out
    assert "blowup 3:" in out


def test_resolve_with_explicit_point_and_dot(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys, "resolve", "y^2*z - x^3", "--point", "0,0,1", "--dot", str(tmp_path)
    )
    assert code == 0
    assert (tmp_path / "resolution-curve.dot").exists()


def test_resolve_needs_unique_point(capsys):
    code, _, err = run_cli(capsys, "resolve", "x*y*z")
    assert code == 1
    assert "exactly one singular point" in err


def test_resolve_at_node_is_domain_error(capsys):
    code, _, err = run_cli(capsys, "resolve", "x*y*z", "--point", "0,0,1")
    assert code == 1
    assert "branch" in err


# -- transform -----------------------------------------------------------------


def test_transform_with_builtin_involution(capsys):
    code, out, _ = run_cli(capsys, "transform", "corpus:contact-cubic", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["degree"] == 5
    assert len(doc["map"]) == 3


def test_transform_with_custom_map(capsys):
    code, out, _ = run_cli(
        capsys, "transform", "y^2*z - x^3", "--map", "y;x;z"
    )
    assert code == 0
    assert "degree 3" in out
    assert "x^2*z" in out


def test_transform_squaring_map(capsys):
    code, out, _ = run_cli(
        capsys,
        "transform",
        "corpus:weierstrass-cubic",
        "--map",
        "x*z; y*z + x^2; z^2",
        "--exceptional",
        "z",
        "--json",
    )
    assert code == 0
    assert json.loads(out)["degree"] == 4


def test_transform_map_needs_three_pieces(capsys):
    code, _, err = run_cli(capsys, "transform", "y^2*z - x^3", "--map", "x;y")
    assert code == 2
    assert "three" in err


def test_transform_of_exceptional_curve_is_domain_error(capsys):
    code, _, err = run_cli(capsys, "transform", "corpus:conic")
    assert code == 1
    assert "exceptional" in err


# -- fiber ---------------------------------------------------------------------


def test_fiber_off_case_finds_completion(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys,
        "fiber",
        "corpus:image-quintic",
        "--case",
        "off",
        "--json",
        "--dot",
        str(tmp_path),
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["budget"] == 1
    assert doc["strict_self_intersection"] == 3
    assert [c["kodaira"] for c in doc["completions"]] == ["I4*"]
    assert (tmp_path / "fiber-image-quintic-part.dot").exists()
    assert (tmp_path / "fiber-image-quintic-0-I4star.dot").exists()


def test_fiber_on_case_reports_no_completion(capsys):
    code, out, _ = run_cli(
        capsys, "fiber", "corpus:image-quintic", "--case", "on"
    )
    assert code == 0
    assert "no completion found" in out


def test_fiber_rejects_wrong_curve(capsys):
    code, _, err = run_cli(capsys, "fiber", "x*z - y^2", "--case", "off")
    assert code == 1
    assert "unicuspidal" in err


def test_fiber_rejects_tiny_resolution(capsys):
    # the cuspidal cubic resolves in three blowups: no budget is left
    code, _, err = run_cli(capsys, "fiber", "y^2*z - x^3", "--case", "off")
    assert code == 1
    assert "budget" in err


# -- verify-corpus -------------------------------------------------------------


def _write_corpus(tmp_path, doc):
    path = tmp_path / "corpus.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def test_verify_corpus_small_file(capsys, tmp_path):
    path = _write_corpus(
        tmp_path,
        {
            "schema": 1,
            "entries": [
                {
                    "name": "node-cubic",
                    "facts": [{"key": "degree", "value": 3}],
                }
            ],
            "pairs": [
                {"left": "line-x", "right": "line-y", "cycle": [["corner-z", 1]]}
            ],
        },
    )
    code, out, _ = run_cli(capsys, "verify-corpus", path)
    assert code == 0
    assert "ok   node-cubic [a=1,b=1,c=0] degree" in out
    assert "4 checks, 0 failures" in out


def test_verify_corpus_catches_corruption(capsys, tmp_path):
    path = _write_corpus(
        tmp_path,
        {
            "schema": 1,
            "entries": [
                {"name": "node-cubic", "facts": [{"key": "degree", "value": 4}]}
            ],
        },
    )
    code, out, _ = run_cli(capsys, "verify-corpus", path, "--json")
    assert code == 1
    doc = json.loads(out)
    assert doc["passed"] is False
    assert doc["failures"] == 2  # once per parameter point
    bad = [r for r in doc["results"] if not r["ok"]]
    assert bad and bad[0]["expected"] == "4" and bad[0]["got"] == "3"


def test_verify_corpus_empty_file_warns(capsys, caplog, tmp_path):
    path = _write_corpus(tmp_path, {"schema": 1, "entries": [], "pairs": []})
    code, out, _ = run_cli(capsys, "verify-corpus", path)
    assert code == 0
    assert "0 checks, 0 failures" in out
    assert any("no expectations" in rec.message for rec in caplog.records)


def test_verify_corpus_bad_file_is_usage_level(capsys, tmp_path):
    path = _write_corpus(tmp_path, {"schema": 99})
    code, _, err = run_cli(capsys, "verify-corpus", path)
    assert code == 1
    assert "schema" in err


def test_verify_corpus_seed_only(capsys, tmp_path):
    path = _write_corpus(tmp_path, {"schema": 1, "entries": [], "pairs": []})
    code, out, _ = run_cli(capsys, "verify-corpus", path, "--seed", "3", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["checks"] == 10 and doc["passed"] is True


def test_verify_corpus_builtin_full_run(capsys):
    code, out, _ = run_cli(capsys, "verify-corpus")
    assert code == 0
    assert ", 0 failures" in out


# -- the installed entry point --------------------------------------------------


def test_console_script_runs():
    proc = subprocess.run(
        ["unicusp", "analyze", "x*z - y^2", "--json"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["schema"] == 1 and doc["degree"] == 2
