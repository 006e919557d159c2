"""CLI surface: determinism, schemas, exit codes, formats."""
import json
import sys
from importlib import resources

import jsonschema
import pytest

from d4fine.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def load_schema(name):
    with resources.files("d4fine.schemas").joinpath(name).open() as fh:
        return json.load(fh)


class TestWeyl:
    def test_census_json_schema_and_values(self, capsys):
        code, out, _ = run_cli(capsys, "weyl", "--emit", "census")
        assert code == 0
        data = json.loads(out)
        jsonschema.validate(data, load_schema("census.json"))
        assert data["total"] == 1152
        by_order = {c["order"]: (c["count"], c["orbits"]) for c in data["classes"]}
        assert by_order[2] == (139, 7)
        assert by_order[12] == (96, 1)
        assert sum(c["count"] for c in data["classes"]) + 1 == 1152

    def test_table2_json_schema(self, capsys):
        code, out, _ = run_cli(capsys, "weyl", "--emit", "table2")
        assert code == 0
        data = json.loads(out)
        jsonschema.validate(data, load_schema("table2.json"))
        assert len(data["rows"]) == 25
        rows = {r["index"]: r for r in data["rows"]}
        assert rows[894] == {"index": 894, "order": 1, "rank": 4, "torsion": []}
        assert rows[259]["torsion"] == [2, 2, 2, 2]

    def test_truncated_generator_list(self, capsys):
        code, out, _ = run_cli(capsys, "weyl", "--emit", "elements",
                               "--generators", "s1")
        assert code == 0
        assert json.loads(out)["count"] == 2

    def test_unknown_generator_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "weyl", "--emit", "elements",
                               "--generators", "s9")
        assert code == 2
        assert "unknown generator" in err

    def test_determinism(self, capsys):
        _, out1, _ = run_cli(capsys, "weyl", "--emit", "table2")
        _, out2, _ = run_cli(capsys, "weyl", "--emit", "table2")
        assert out1 == out2

    def test_csv_and_md_render(self, capsys):
        code, out, _ = run_cli(capsys, "weyl", "--emit", "census",
                               "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "order,count,orbits"
        code, out, _ = run_cli(capsys, "weyl", "--emit", "census",
                               "--format", "md")
        assert code == 0
        assert out.startswith("| order | count | orbits |")


class TestGrading:
    def test_named_row_schema_and_values(self, capsys):
        code, out, _ = run_cli(capsys, "grading", "Q14")
        assert code == 0
        data = json.loads(out)
        jsonschema.validate(data, load_schema("grading.json"))
        assert data["group"] == {"rank": 0, "torsion": [3, 3, 3]}
        assert data["type"] == [24, 2]
        assert data["dim_identity"] == 0

    def test_p_family(self, capsys):
        code, out, _ = run_cli(capsys, "grading", "P2")
        assert code == 0
        data = json.loads(out)
        jsonschema.validate(data, load_schema("grading.json"))
        assert data["type"] == [14, 7]
        assert data["algebra"] == "so(q) para-hurwitz"

    def test_empty_custom_spec_gives_trivial_grading(self, capsys, tmp_path):
        path = tmp_path / "empty.json"
        path.write_text('{"name": "trivial"}')
        code, out, _ = run_cli(capsys, "grading", str(path))
        assert code == 0
        data = json.loads(out)
        assert data["n_components"] == 1
        assert data["type"][-1] == 1 and len(data["type"]) == 28

    def test_custom_spec_matches_named_row(self, capsys, tmp_path):
        # a file spelling out Q14's generators must agree with the named row
        from d4fine.gradings import TABLE1_SPECS
        spec = TABLE1_SPECS["Q14"]
        path = tmp_path / "q14.json"
        path.write_text(json.dumps(
            {"name": "custom",
             "tori": [list(t) for t in spec["tori"]],
             "params": [list(e) for e in spec["params"]],
             "lifts": [[j, list(t) if t is not None else None]
                       for j, t in spec["lifts"]]}))
        code, out, _ = run_cli(capsys, "grading", str(path))
        assert code == 0
        data = json.loads(out)
        jsonschema.validate(data, load_schema("grading.json"))
        code, out_named, _ = run_cli(capsys, "grading", "Q14")
        named = json.loads(out_named)
        named["name"] = "custom"
        assert data == named

    def test_malformed_spec_reports_location(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"tori": [[1, 2]]}')
        code, _, err = run_cli(capsys, "grading", str(path))
        assert code == 2
        assert "tori[0]" in err
        path.write_text('{"tori": [')
        code, _, err = run_cli(capsys, "grading", str(path))
        assert code == 2
        assert "line" in err

    def test_grading_determinism(self, capsys):
        _, out1, _ = run_cli(capsys, "grading", "Q9")
        _, out2, _ = run_cli(capsys, "grading", "Q9")
        assert out1 == out2

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "q14.json"
        code, out, _ = run_cli(capsys, "grading", "Q14", "--out", str(target))
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["name"] == "Q14"


class TestVerify:
    def test_subset_report_schema(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--only",
                               "isometry,census,stabilizer")
        assert code == 0
        data = json.loads(out)
        jsonschema.validate(data, load_schema("report.json"))
        assert data["exit_code"] == 0
        names = [c["name"] for c in data["checks"]]
        assert names == ["isometry-group", "conjugacy-census",
                         "stabilizer-anchors"]
        assert all(c["status"] == "pass" for c in data["checks"])

    def test_fault_injection_fails(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--only", "liealg",
                               "--inject-fault")
        assert code == 1
        data = json.loads(out)
        assert data["exit_code"] == 1
        assert data["checks"][0]["status"] == "fail"

    def test_unknown_suite_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--only", "nosuch")
        assert code == 2
        assert "unknown suite" in err

    def test_md_format(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--only", "isometry",
                               "--format", "md")
        assert code == 0
        assert out.startswith("| check | status |")


class TestUsage:
    def test_no_command(self, capsys):
        assert main([]) == 2

    def test_bad_choice(self, capsys):
        assert main(["weyl", "--emit", "nothing"]) == 2
