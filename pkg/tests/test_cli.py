"""End-to-end command tests through main(argv)."""

import json

import pytest

from linfty.cli import main
from linfty.examples import builtin
from linfty.problemfile import dumps, from_example

MODEL_CP2_RECORDS = """\
dim 0 0 1
dim 1 0 1
dim 2 2 1
class h2_0 2 1@c
class h2_1 2 u1@v
dim 4 1 1
class h4_0 4 1@v
nil twisted 3
nil untwisted 3
wh twisted 1
wh untwisted 2
"""

MODEL_CP2_POINTED_RECORDS = """\
dim 0 2 1
class h0_0 0 u1@c
class h0_1 0 u2@v
dim 2 1 1
class h2_0 2 u1@v
nil twisted 1
nil untwisted 1
wh twisted 1
wh untwisted 1
"""

MODEL_CP2_COVER_RECORDS = """\
dim 2 2 1
class h2_0 2 1@c
class h2_1 2 u1@v
dim 4 1 1
class h4_0 4 1@v
nil twisted 1
nil untwisted 3
wh twisted 1
wh untwisted 2
"""

MODEL_S3Y_RECORDS = """\
dim 1 1 1
class h1_0 1 1@a
dim 2 2 1
class h2_0 2 1@b
class h2_1 2 1@r
dim 3 1 1
class h3_0 3 alpha@s
dim 6 1 1
class h6_0 6 1@s
nil twisted 3
nil untwisted 3
wh twisted 2
wh untwisted 1
bracket h1_0,h2_1 h3_0
"""


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc) + "\n", encoding="utf-8")
    return str(path)


def _builtin_doc(name):
    return json.loads(dumps(from_example(builtin(name))))


def test_validate_builtin_is_clean(capsys):
    assert main(["validate", "cp2"]) == 0
    assert capsys.readouterr().out == "ok\n"


def test_validate_reports_jacobi_witnesses(tmp_path, capsys):
    doc = {
        "format_version": "1",
        "target": {
            "basis": [["h", 0], ["e", 0], ["f", 0]],
            "max_arity": 2,
            "brackets": [
                [2, ["h", "e"], "e", "3"],
                [2, ["h", "f"], "f", "-2"],
                [2, ["e", "f"], "h", "1"],
            ],
        },
    }
    assert main(["validate", _write(tmp_path, "sl2.json", doc)]) == 2
    out = capsys.readouterr().out
    assert "problem: jacobi identity fails at n=3 on (h, e, f)" in out
    assert out.endswith("validation failed (1 problems)\n")


def test_validate_misses_nothing_on_a_shallow_corruption(tmp_path, capsys):
    # an extra bracket that only breaks identities past the checked depth
    doc = _builtin_doc("cp2")
    doc["target"]["brackets"].append([3, ["a", "a", "b"], "v", "1"])
    assert main(["validate", _write(tmp_path, "deep.json", doc)]) == 0
    assert capsys.readouterr().out == "ok\n"


def test_validate_reports_curved_mc(tmp_path, capsys):
    doc = _builtin_doc("cp2")
    doc["mc"] = [["u1", "a", "1"], ["u1", "b", "1"]]
    assert main(["validate", _write(tmp_path, "curved.json", doc)]) == 2
    out = capsys.readouterr().out
    assert "problem: mc curvature is nonzero on u2: c" in out


def test_validate_needs_some_section(tmp_path, capsys):
    assert main(["validate", _write(tmp_path, "e.json", {"format_version": "1"})]) == 2
    assert "nothing to validate" in capsys.readouterr().out


def test_model_records_are_frozen(capsys):
    assert main(["model", "cp2", "--format", "records"]) == 0
    assert capsys.readouterr().out == MODEL_CP2_RECORDS
    assert main(["model", "--pointed", "cp2", "--format", "records"]) == 0
    assert capsys.readouterr().out == MODEL_CP2_POINTED_RECORDS
    assert main(["model", "--cover", "cp2", "--format", "records"]) == 0
    assert capsys.readouterr().out == MODEL_CP2_COVER_RECORDS
    assert main(["model", "s3y", "--format", "records"]) == 0
    assert capsys.readouterr().out == MODEL_S3Y_RECORDS


def test_model_table_output(capsys):
    assert main(["model", "cp2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith(
        "model cp2-connected-sum: free, nonneg truncation, window [-2, 12]\n"
    )
    assert "nilpotency: twisted 3, untwisted 3" in out
    assert "whitehead: twisted 1, untwisted 2" in out
    assert out.endswith("all induced brackets vanish\n")

    assert main(["model", "s3y"]) == 0
    out = capsys.readouterr().out
    assert "whitehead: twisted 2, untwisted 1" in out
    assert "  [h1_0, h2_1] = h3_0\n" in out


def test_model_pointed_option_in_the_file(tmp_path, capsys):
    doc = _builtin_doc("cp2")
    doc["options"] = {"pointed": True}
    assert main(["model", _write(tmp_path, "p.json", doc),
                 "--format", "records"]) == 0
    assert capsys.readouterr().out == MODEL_CP2_POINTED_RECORDS


def test_model_exit_three_when_the_series_is_cut(tmp_path, capsys):
    doc = _builtin_doc("cp2")
    doc["options"] = {"j_max": 1}
    assert main(["model", _write(tmp_path, "cut.json", doc)]) == 3
    err = capsys.readouterr().err
    assert "bracket series still active at j_max=1" in err


def test_dualize_l2a_prints_one_line(capsys):
    assert main(["dualize", "--direction", "l2a", "s3y"]) == 0
    out = capsys.readouterr().out
    assert out == (
        "free algebra on: a^ (2), b^ (3), r^ (3), s^ (7)\n"
        "d(s^) = -1 a^ b^ r^\n"
    )
    assert main(["dualize", "--direction", "l2a", "s3y",
                 "--format", "records"]) == 0
    out = capsys.readouterr().out
    assert out == (
        "generator a^ 2\ngenerator b^ 3\ngenerator r^ 3\ngenerator s^ 7\n"
        "d s^ a^.b^.r^ -1\n"
    )


def test_dualize_a2l_recovers_the_table(tmp_path, capsys):
    doc = {
        "format_version": "1",
        "sullivan": {
            "generators": [["a^", 2], ["b^", 3], ["r^", 3], ["s^", 7]],
            "differential": {"s^": [[["a^", "b^", "r^"], "-1"]]},
        },
    }
    path = _write(tmp_path, "dual.json", doc)
    assert main(["dualize", "--direction", "a2l", path]) == 0
    out = capsys.readouterr().out
    assert out == (
        "bracket table on: a (1), b (2), r (2), s (6)\n"
        "  l3(a, b, r) = s\n"
    )
    assert main(["dualize", "--direction", "a2l", path,
                 "--format", "records"]) == 0
    out = capsys.readouterr().out
    assert out == (
        "basis a 1\nbasis b 2\nbasis r 2\nbasis s 6\n"
        "bracket 3 a,b,r s\n"
    )


def test_dualize_needs_its_section(tmp_path, capsys):
    path = _write(tmp_path, "e.json", {"format_version": "1"})
    assert main(["dualize", "--direction", "l2a", path]) == 4
    assert "needs a target table" in capsys.readouterr().err
    assert main(["dualize", "--direction", "a2l", path]) == 4
    assert "needs a sullivan section" in capsys.readouterr().err


def test_crosscheck_passes_and_counts(capsys):
    assert main(["crosscheck", "s3y"]) == 0
    assert capsys.readouterr().out == (
        "crosscheck passed: 128 brackets compared at arities [1, 2, 3]\n"
    )
    assert main(["crosscheck", "s3y", "--format", "records"]) == 0
    assert capsys.readouterr().out == (
        "compared 128\nmismatches 0\nmap_defects 0\njacobi_failures 0\n"
    )


def test_crosscheck_curved_map_exits_two(tmp_path, capsys):
    doc = _builtin_doc("cp2")
    doc["mc"] = [["u1", "a", "1"], ["u1", "b", "1"]]
    assert main(["crosscheck", _write(tmp_path, "c.json", doc)]) == 2
    assert "curvature is nonzero on u2" in capsys.readouterr().err


def test_window_resolution_order(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("LINFTY_WINDOW", "0:3")
    # the env window is too narrow for the map itself
    assert main(["crosscheck", "s3y"]) == 2
    assert "outside the window" in capsys.readouterr().err

    monkeypatch.setenv("LINFTY_WINDOW", "-2:10")
    assert main(["crosscheck", "s3y"]) == 0
    assert "passed" in capsys.readouterr().out

    # a window in the file beats the environment
    doc = _builtin_doc("s3y")
    doc["window"] = [-2, 10]
    path = _write(tmp_path, "w.json", doc)
    monkeypatch.setenv("LINFTY_WINDOW", "0:3")
    assert main(["crosscheck", path]) == 0
    assert "passed" in capsys.readouterr().out

    monkeypatch.setenv("LINFTY_WINDOW", "wide")
    assert main(["crosscheck", "s3y"]) == 4
    assert "must look like 'lo:hi'" in capsys.readouterr().err


def test_example_emits_canonical_bytes(tmp_path, capsys):
    want = dumps(from_example(builtin("s3y")))
    assert main(["example", "s3y"]) == 0
    assert capsys.readouterr().out == want

    target = tmp_path / "out.json"
    assert main(["example", "s3y", "--emit", str(target)]) == 0
    assert capsys.readouterr().out == "wrote %s\n" % target
    assert target.read_text(encoding="utf-8") == want


def test_example_rejects_unknown_names(capsys):
    assert main(["example", "torus"]) == 4
    assert "unknown example 'torus'" in capsys.readouterr().err


def test_unreadable_input_exits_four(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("{nope}", encoding="utf-8")
    assert main(["validate", str(broken)]) == 4
    assert "error:" in capsys.readouterr().err
    assert main(["validate", str(tmp_path / "absent.json")]) == 4
    assert "No such file" in capsys.readouterr().err
