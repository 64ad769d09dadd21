import json

import pytest

from claro.cli import main


@pytest.fixture()
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return _run


def run_json(run, *argv):
    code, out, _ = run(*argv, "--format", "json")
    return code, json.loads(out)


def test_templates_stats(run):
    code, out, _ = run("templates", "stats")
    assert code == 0
    assert "93 base + 41 variants" in out


def test_templates_validate_json(run):
    code, payload = run_json(run, "templates", "validate")
    assert code == 0
    assert payload["ok"] is True
    assert payload["baseCount"] == 93 and payload["variantCount"] == 41


def test_templates_list_round_trips(run):
    code, out, _ = run("templates", "list")
    assert code == 0
    assert "1.Is there [EC1] for [EC2]?" in out.splitlines()


def test_suggest_starts_with(run):
    code, out, _ = run("suggest", "What type")
    assert code == 0
    assert [l.split(":")[0] for l in out.strip().splitlines()] == ["70", "70a", "71"]


def test_suggest_contains_includes_48(run):
    code, payload = run_json(run, "suggest", "Does", "--contains")
    assert code == 0
    assert {"8", "9", "48"} <= {s["ref"] for s in payload}


def test_chunk_json(run):
    code, payload = run_json(run, "chunk", "Do lions eat grass?")
    assert code == 0
    assert payload[0]["pattern"] == "PC1 EC1 PC1 EC2?"


def test_match_pipeline_recovers_template(run):
    code, out, _ = run("instantiate", "81", "--bind", "EC1=software",
                       "--bind", "PC1=can perform", "--bind", "EC2=spelling correction")
    assert code == 0
    text = out.strip()
    code, payload = run_json(run, "match", text)
    assert code == 0
    assert payload[0]["template"] == "81"


def test_instantiate_unknown_template(run):
    code, _, err = run("instantiate", "999", "--bind", "EC1=x")
    assert code == 2
    assert "unknown template" in err


def test_instantiate_missing_binding(run):
    code, _, err = run("instantiate", "81", "--bind", "EC1=x")
    assert code == 2
    assert "unbound slot" in err


def test_bad_bind_value_is_usage_error(run):
    code, _, err = run("instantiate", "81", "--bind", "oops")
    assert code == 1


def test_lint_json(run):
    code, payload = run_json(run, "lint", "Find all vegetarian pizzas.")
    assert code == 0
    assert payload[0]["kind"] == "imperative"
    assert payload[0]["rewrites"] == ["Which pizzas are vegetarian pizzas?"]


def test_coverage_set_a(run):
    code, out, _ = run("coverage", "setA", "--set", "claro", "--gold")
    assert code == 0
    assert out.splitlines()[0] == "20/24 valid matched (83%)"


def test_coverage_json_schema(run):
    code, payload = run_json(run, "coverage", "setB")
    assert code == 0
    assert (payload["valid"], payload["matched"]) == (15, 14)
    assert payload["percentRounded"] == 93
    assert all({"id", "outcome", "template"} <= set(r) for r in payload["results"])


def test_coverage_competitor(run):
    code, payload = run_json(run, "coverage", "setC", "--set", "bezerra")
    assert code == 0
    assert payload["matched"] == 4


def test_coverage_unknown_fixture(run):
    code, _, err = run("coverage", "nope.txt")
    assert code == 2


def test_mine_bundled(run):
    code, payload = run_json(run, "mine", "bundled")
    assert code == 0
    assert payload["count"] == 106


def test_unknown_subcommand_usage(run):
    code, _, _ = run("frobnicate")
    assert code == 1


def test_doc_lifecycle(run, tmp_path):
    path = str(tmp_path / "demo.cqd.xml")
    assert run("doc", "new", path, "--title", "Demo")[0] == 0
    code, out, _ = run("doc", "add", path, "Which software can perform spelling correction?",
                       "--template", "81", "--bind", "EC1=software",
                       "--bind", "PC1=can perform", "--bind", "EC2=spelling correction")
    assert code == 0
    assert run("doc", "add", path, "Do Androids Dream of Electric Sheep?")[0] == 0
    code, out, _ = run("doc", "list", path)
    assert code == 0
    assert "0: Which software can perform spelling correction?" in out
    assert "1: Do Androids Dream of Electric Sheep?" in out
    code, payload = run_json(run, "doc", "load", path)
    assert code == 0
    assert payload["questions"][0]["instantiations"][0]["template"] == "81"
    assert payload["questions"][1]["instantiations"] == []
    assert run("doc", "remove", path, "0")[0] == 0
    code, out, _ = run("doc", "list", path)
    assert "0: Do Androids Dream of Electric Sheep?" in out
    assert run("doc", "save", path)[0] == 0


def test_doc_add_rejects_wrong_bindings(run, tmp_path):
    path = str(tmp_path / "demo.cqd.xml")
    run("doc", "new", path, "--title", "Demo")
    code, _, err = run("doc", "add", path, "Is night day?",
                       "--template", "22", "--bind", "EC1=day", "--bind", "EC2=night")
    assert code == 2
    assert "bindings produce" in err


def test_custom_template_file(run, tmp_path, monkeypatch):
    custom = tmp_path / "mini.txt"
    custom.write_text("1.Is [EC1] [EC2]?\n", encoding="utf-8")
    monkeypatch.setenv("CLARO_TEMPLATES", str(custom))
    code, payload = run_json(run, "templates", "validate")
    assert code == 0
    assert payload["baseCount"] == 1


def test_coverage_csv(run):
    code, out, _ = run("coverage", "setC", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "id,outcome,template"
    assert "pizza1,exact,81" in lines
    assert lines[-1] == "matched,11,92%"


def test_csv_not_available_elsewhere(run):
    code, _, err = run("suggest", "Does", "--format", "csv")
    assert code == 1
    assert "csv" in err
