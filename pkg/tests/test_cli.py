import json
import subprocess
import sys
from pathlib import Path

import pytest

from lconj.cli import bundled_example, main, parse_workspace
from lconj.errors import ParseError, SchemaError, ValidationError

S4_CONJUGATE_TABLE = """\
d: {e, (1 2)(3 4), (1 3)(2 4), (1 4)(2 3)}
c: {(3 4), (1 2), (1 3 2 4), (1 4 2 3)}
a: {(2 3), (1 2 4 3), (1 3 4 2), (1 4)}
l: {(2 3 4), (2 4 3), (1 2 3), (1 2 4), (1 3 2), (1 3 4), (1 4 2), (1 4 3)}
b: {(2 4), (1 2 3 4), (1 3), (1 4 3 2)}
"""

D16_NORMALIZER_TABLE = """\
1/2: {e, r^4, s, sr^4}
1/16: {r, r^2, r^3, r^5, r^6, r^7, sr, sr^2, sr^3, sr^5, sr^6, sr^7}
"""


@pytest.fixture
def files(tmp_path):
    out = {}
    for name in ("s4_conjugate", "d16_normalizer"):
        p = tmp_path / f"{name}.json"
        p.write_text(bundled_example(name))
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def edited(tmp_path, name, change):
    doc = json.loads(bundled_example(name))
    change(doc)
    p = tmp_path / "edited.json"
    p.write_text(json.dumps(doc))
    return str(p)


def test_validate_bundled(files, capsys):
    for path in files.values():
        code, out, err = run(capsys, "validate", "--in", path)
        assert code == 0 and err == ""
        assert "FAIL" not in out


def test_conjugate_golden(files, capsys):
    code, out, _ = run(capsys, "conjugate", "--in", files["s4_conjugate"], "--subject", "eta",
                       "--point", "p", "--ambient", "mu")
    assert code == 0 and out == S4_CONJUGATE_TABLE
    code, out2, _ = run(capsys, "conjugate", "--in", files["s4_conjugate"], "--subject", "eta",
                        "--point", "d@(1 2 3)")
    assert out2 == out


def test_normalizer_golden(files, capsys):
    for method in ("setproduct", "conjugacy"):
        code, out, _ = run(capsys, "normalizer", "--in", files["d16_normalizer"], "--subject", "eta",
                           "--method", method)
        assert code == 0 and out == D16_NORMALIZER_TABLE
    code, out, _ = run(capsys, "normalizer", "--in", files["d16_normalizer"], "--subject", "eta",
                       "--method", "both")
    assert code == 0 and out.endswith("setproduct == conjugacy\n")


def test_json_pairs_in_element_order(files, capsys):
    code, out, _ = run(capsys, "conjugate", "--in", files["d16_normalizer"], "--subject", "eta",
                       "--point", "1/12@r", "--format", "json")
    data = json.loads(out)
    ws = parse_workspace(bundled_example("d16_normalizer"))
    assert [x for x, _ in data["values"]] == list(ws.group.labels)
    assert dict(data["values"])["sr^2"] == "1/12"


def test_json_round_trip(files, capsys, tmp_path):
    _, out, _ = run(capsys, "conjugate", "--in", files["s4_conjugate"], "--subject", "eta",
                    "--point", "p", "--format", "json")
    pairs = json.loads(out)["values"]

    def add(doc):
        doc["lsubsets"]["conj"] = {"assign": [{"set": [x], "value": v} for x, v in pairs]}
    path = edited(tmp_path, "s4_conjugate", add)
    _, again, _ = run(capsys, "eval", "--in", path, "--subject", "conj", "--format", "json")
    assert json.loads(again)["values"] == pairs
    code, _, _ = run(capsys, "validate", "--in", path)
    assert code == 0


def test_eval_level_product_generated(files, capsys):
    f = files["d16_normalizer"]
    assert run(capsys, "eval", "--in", f, "--subject", "eta", "--at", "s r^0")[1] == "1/4\n"
    assert run(capsys, "level", "--in", f, "--subject", "eta", "--value", "1/4")[1] == "{e, s}\n"
    code, out, _ = run(capsys, "product", "--in", f, "--left", "eta", "--right", "eta", "--format", "json")
    assert code == 0 and dict(json.loads(out)["values"])["s"] == "1/4"
    code, out, _ = run(capsys, "generated", "--in", f, "--subject", "eta")
    assert code == 0 and out.startswith("1/4: {e, s}")


def test_is_normal_and_is_maximal(files, capsys):
    f = files["d16_normalizer"]
    assert run(capsys, "is-normal", "--in", f, "--subject", "eta")[1] == "false\n"
    assert run(capsys, "is-normal", "--in", f, "--subject", "mu")[1] == "true\n"
    code, _, err = run(capsys, "is-maximal", "--in", f, "--subject", "eta")
    assert code == 1 and "SearchSpaceTooLarge" in err


def test_is_maximal_small(tmp_path, capsys):
    doc = {
        "lattice": {"chain": ["0", "1", "2"]},
        "group": {"kind": "cyclic", "n": 2},
        "lsubsets": {"mu": {"default": "2"}, "eta": {"assign": [{"set": ["e"], "value": "2"}], "default": "1"},
                     "low": {"assign": [{"set": ["e"], "value": "2"}], "default": "0"}},
    }
    p = tmp_path / "c2.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "is-maximal", "--in", str(p), "--subject", "eta", "--format", "json")
    assert code == 0 and json.loads(out)["maximal"] is True
    assert run(capsys, "is-maximal", "--in", str(p), "--subject", "low")[1] == "false\n"


def test_overlapping_clauses(tmp_path, capsys):
    path = edited(tmp_path, "d16_normalizer",
                  lambda d: d["lsubsets"]["eta"]["assign"].append({"set": ["s"], "value": "1/2"}))
    code, out, err = run(capsys, "validate", "--in", path)
    assert code == 2 and out == ""
    assert err.startswith("error: /lsubsets/eta/assign/2:")


def test_schema_path(tmp_path, capsys):
    path = edited(tmp_path, "d16_normalizer", lambda d: d["group"].update(order="x"))
    code, _, err = run(capsys, "validate", "--in", path)
    assert code == 2 and "/group/order" in err


def test_unknown_labels_report_path(tmp_path, capsys):
    path = edited(tmp_path, "s4_conjugate", lambda d: d["points"]["p"].update(at="(1 5)"))
    code, _, err = run(capsys, "validate", "--in", path)
    assert code == 2 and err.startswith("error: /points/p:")


def test_missing_default(tmp_path):
    def drop(d):
        del d["lsubsets"]["eta"]["default"]
    with pytest.raises(SchemaError) as exc:
        parse_workspace(Path(edited(tmp_path, "d16_normalizer", drop)).read_text())
    assert exc.value.path == "/lsubsets/eta"


def test_flagged_predicate_failure(tmp_path, capsys):
    path = edited(tmp_path, "d16_normalizer", lambda d: d["lsubsets"]["eta"].update(normal_in="mu"))
    code, out, _ = run(capsys, "validate", "--in", path)
    assert code == 1 and "FAIL eta is normal in mu" in out


def test_bad_hom(tmp_path, capsys):
    def add(d):
        d["hom"] = {"target": {"kind": "cyclic", "n": 2}, "generator_images": {"r": "g", "s": "e"}}
    path = edited(tmp_path, "d16_normalizer", add)
    code, _, err = run(capsys, "validate", "--in", path)
    assert code == 0, err

    def bad(d):
        d["hom"] = {"target": {"kind": "cyclic", "n": 3}, "generator_images": {"r": "g", "s": "e"}}
    code, _, err = run(capsys, "validate", "--in", edited(tmp_path, "d16_normalizer", bad))
    assert code == 2 and err.startswith("error: /hom:")


def test_check_failures_exit_one(files, capsys):
    code, out, err = run(capsys, "conjugate", "--in", files["d16_normalizer"], "--subject", "eta",
                         "--point", "1@r", "--ambient", "mu")
    assert code == 1 and out == "" and "PointNotInAmbient" in err


def test_parse_errors(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{")
    assert run(capsys, "validate", "--in", str(p))[0] == 2
    assert run(capsys, "validate", "--in", str(tmp_path / "missing.json"))[0] == 2
    with pytest.raises(ParseError):
        parse_workspace("[")
    with pytest.raises(ValidationError):
        parse_workspace(bundled_example("d16_normalizer")).subset("nope")


def test_usage_error_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["conjugate"])
    assert exc.value.code == 2


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "T3.2", "--seeds", "3", "--seed-base", "10")
    data = json.loads(out)
    assert code == 0 and [r["verdict"] for r in data] == ["pass"] * 3
    assert data[0]["instance"].startswith("seed=10 ")
    code, out, _ = run(capsys, "verify", "--suite", "all", "--seeds", "0")
    assert code == 0 and json.loads(out) == []
    code, _, err = run(capsys, "verify", "--suite", "X", "--seeds", "1")
    assert code == 1 and "UnknownSuite" in err


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "lconj", "normalizer", "--in", files["d16_normalizer"],
                           "--subject", "eta"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == D16_NORMALIZER_TABLE
