import os
from pathlib import Path

import pytest

import ontoquery

FIXTURES = Path(os.environ.get("ONTOQUERY_FIXTURE_DIR", Path(__file__).resolve().parents[2] / "fixtures"))
PE = "http://example.org/parasite-experiment#"


@pytest.fixture(scope="module")
def dep():
    return ontoquery.Deployment(str(FIXTURES / "deployment.conf"))


def test_datasets(dep):
    ids = [d["id"] for d in dep.datasets()]
    assert ids == ["strains", "transcriptome", "all"]


def test_suggest(dep):
    hits = dep.suggest("therap")
    assert [h["iri"] for h in hits] == [PE + "Drug"]
    assert hits[0]["match"] == "alt-label"


def test_lineage_query(dep):
    result = dep.query((FIXTURES / "fig2.rq").read_text())
    assert result["specific"]["rows"] == []
    samples = [row[1]["label"] for row in result["general"]["rows"]]
    assert samples == ["CloneID 10", "CloneID 12"]
    assert "?any_cell_cloning1" in dep.sparql((FIXTURES / "fig2.rq").read_text())


def test_gene_query_needs_both_datasets(dep):
    text = (FIXTURES / "fig4.rq").read_text()
    assert len(dep.query(text)["rows"]["rows"]) == 1
    assert dep.query(text, dataset="strains")["rows"]["rows"] == []


def test_errors(dep):
    with pytest.raises(ontoquery.OntoqueryError) as info:
        dep.query("SELECT ?x WHERE {")
    assert info.value.code == "grammar-error"
    with pytest.raises(ValueError):
        dep.suggest("")


def test_request_router(dep):
    status, body = dep.request("POST", "/sessions", body={"root": PE + "Gene"})
    assert status == 201
    sid = body["session"]
    status, body = dep.request("POST", f"/sessions/{sid}/steps",
                               body={"from": 0, "property": PE + "hasPrimer", "target": PE + "Primer"})
    assert status == 200 and len(body["query"]["nodes"]) == 2
    status, body = dep.request("POST", f"/sessions/{sid}/execute")
    assert status == 200 and body["row_count"] == 3
    status, body = dep.request("GET", "/sessions/missing")
    assert status == 404 and body["error"]["code"] == "session-not-found"
