import json
import threading

import pytest
import requests

from claro.cli import main
from claro.dsl import load_shipped_templates
from claro.service import make_server


@pytest.fixture(scope="module")
def server(tmp_path_factory):
    docs = tmp_path_factory.mktemp("documents")
    srv = make_server(host="127.0.0.1", port=0, documents_dir=str(docs))
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{srv.server_address[1]}"
    yield base
    srv.shutdown()


def test_templates_endpoint(server):
    r = requests.get(f"{server}/templates")
    assert r.status_code == 200
    body = r.json()
    assert body["baseCount"] == 93 and body["variantCount"] == 41
    assert len(body["templates"]) == 134


def test_suggest_endpoint(server):
    r = requests.get(f"{server}/suggest", params={"q": "Does", "mode": "starts_with"})
    assert [s["ref"] for s in r.json()] == ["8", "9"]
    r = requests.get(f"{server}/suggest", params={"q": "Does", "mode": "contains"})
    assert {"8", "9", "48"} <= {s["ref"] for s in r.json()}


def test_suggest_bad_mode(server):
    r = requests.get(f"{server}/suggest", params={"q": "x", "mode": "fuzzy"})
    assert r.status_code == 400
    assert r.json()["code"] == "invalid-payload"


def test_match_endpoint(server):
    r = requests.post(f"{server}/match",
                      json={"text": "Which software can perform spelling correction?"})
    assert r.status_code == 200
    assert r.json()[0]["template"] == "81"


def test_match_gold_chunking_payload(server):
    r = requests.post(f"{server}/match",
                      json={"chunking": "Is (water)[EC1] (wet)[EC2]?"})
    assert any(m["template"] == "22" for m in r.json())


def test_chunk_and_lint_endpoints(server):
    r = requests.post(f"{server}/chunk", json={"text": "Do lions eat grass?"})
    assert r.json()[0]["pattern"] == "PC1 EC1 PC1 EC2?"
    r = requests.post(f"{server}/lint", json={"text": "Find all vegetarian pizzas."})
    assert r.json()[0]["kind"] == "imperative"


def test_instantiate_endpoint(server):
    r = requests.post(f"{server}/instantiate", json={
        "templateId": 81,
        "bindings": {"EC1": "software", "PC1": "can perform",
                     "EC2": "spelling correction"}})
    assert r.json() == {"template": "81",
                        "text": "Which software can perform spelling correction?"}


def test_instantiate_unknown_template(server):
    r = requests.post(f"{server}/instantiate",
                      json={"templateId": 999, "bindings": {}})
    assert r.status_code == 404
    assert r.json()["code"] == "unknown-template"


def test_invalid_payload(server):
    r = requests.post(f"{server}/match", data=b"not json",
                      headers={"Content-Type": "application/json"})
    assert r.status_code == 400


def test_unknown_route(server):
    assert requests.get(f"{server}/nope").status_code == 404


def test_document_crud_and_revisions(server):
    r = requests.post(f"{server}/documents", json={"title": "My CQs"})
    assert r.status_code == 201
    doc = r.json()
    doc_id, rev0 = doc["id"], doc["revision"]
    assert doc_id == "my-cqs"

    r = requests.post(f"{server}/documents/{doc_id}/questions", json={
        "text": "Which software can perform spelling correction?",
        "templateId": 81,
        "bindings": {"EC1": "software", "PC1": "can perform",
                     "EC2": "spelling correction"},
        "revision": rev0,
    })
    assert r.status_code == 200
    rev1 = r.json()["revision"]
    assert rev1 != rev0

    # free-form question without a template link
    r = requests.post(f"{server}/documents/{doc_id}/questions", json={
        "text": "Do Androids Dream of Electric Sheep?", "revision": rev1})
    assert r.status_code == 200
    body = r.json()
    assert body["questions"][1]["instantiations"] == []
    rev2 = body["revision"]

    # stale revision -> 409
    r = requests.post(f"{server}/documents/{doc_id}/questions", json={
        "text": "Is this stale?", "revision": rev0})
    assert r.status_code == 409
    assert r.json()["code"] == "stale-revision"

    # export XML
    r = requests.get(f"{server}/documents/{doc_id}/export")
    assert r.status_code == 200
    assert r.headers["Content-Type"].startswith("application/xml")
    assert 'templateId="81"' in r.text

    # delete a question
    r = requests.delete(f"{server}/documents/{doc_id}/questions/0",
                        params={"revision": rev2})
    assert r.status_code == 200
    assert len(r.json()["questions"]) == 1

    # listing and full GET
    r = requests.get(f"{server}/documents")
    assert any(d["id"] == doc_id for d in r.json())
    r = requests.get(f"{server}/documents/{doc_id}")
    assert r.json()["questions"][0]["text"] == "Do Androids Dream of Electric Sheep?"

    # replace document wholesale with revision check
    current = r.json()
    current["title"] = "Renamed"
    r = requests.put(f"{server}/documents/{doc_id}", json=current)
    assert r.status_code == 200
    assert r.json()["title"] == "Renamed"

    r = requests.delete(f"{server}/documents/{doc_id}")
    assert r.status_code == 200
    assert requests.get(f"{server}/documents/{doc_id}").status_code == 404


def test_delete_unknown_question(server):
    r = requests.post(f"{server}/documents", json={"title": "Tiny"})
    doc_id = r.json()["id"]
    r = requests.delete(f"{server}/documents/{doc_id}/questions/5")
    assert r.status_code == 404
    assert r.json()["code"] == "unknown-question"


def test_cors_preflight(server):
    r = requests.options(f"{server}/suggest")
    assert r.status_code == 204
    assert r.headers["Access-Control-Allow-Origin"] == "*"


@pytest.mark.parametrize("query,mode", [("Does", "starts_with"), ("What type", "contains")])
def test_service_matches_cli_bytes(server, capsys, query, mode):
    flags = ["suggest", query, "--format", "json"]
    if mode == "contains":
        flags.insert(2, "--contains")
    assert main(flags) == 0
    cli_out = capsys.readouterr().out
    r = requests.get(f"{server}/suggest", params={"q": query, "mode": mode})
    assert r.text == cli_out


def test_service_match_matches_cli_bytes(server, capsys):
    text = "What software can perform spelling correction?"
    assert main(["match", text, "--format", "json"]) == 0
    cli_out = capsys.readouterr().out
    r = requests.post(f"{server}/match", json={"text": text})
    assert r.text == cli_out


def test_put_requires_revision(server):
    r = requests.post(f"{server}/documents", json={"title": "Locked"})
    doc = r.json()
    payload = {"title": "Locked", "questions": []}
    r = requests.put(f"{server}/documents/{doc['id']}", json=payload)
    assert r.status_code == 400
    assert "revision" in r.json()["message"]
    payload["revision"] = "0" * 16
    r = requests.put(f"{server}/documents/{doc['id']}", json=payload)
    assert r.status_code == 409
    payload["revision"] = doc["revision"]
    assert requests.put(f"{server}/documents/{doc['id']}", json=payload).status_code == 200


def test_service_lint_matches_cli_bytes(server, capsys):
    text = "Find all vegetarian pizzas."
    assert main(["lint", text, "--format", "json"]) == 0
    cli_out = capsys.readouterr().out
    r = requests.post(f"{server}/lint", json={"text": text})
    assert r.text == cli_out


def test_service_chunk_matches_cli_bytes(server, capsys):
    text = "Do lions eat grass?"
    assert main(["chunk", text, "--format", "json"]) == 0
    cli_out = capsys.readouterr().out
    r = requests.post(f"{server}/chunk", json={"text": text})
    assert r.text == cli_out
