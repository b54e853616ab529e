"""HTTP service tests: documents, pipeline statuses, search, translate, Q&A."""

import json
import os
import time

import pytest
from fastapi.testclient import TestClient

from scireader.service import ServiceConfig, create_app

from pdfgen import PaperSpec, paper_pdf

PAPER = PaperSpec(
    title="Dialog State Tracking with Graph Neural Networks",
    authors=["Carol Wang", "Ivan Novak"],
    abstract="We study dialog state tracking and report gains over strong baselines.",
    sections=[("1 Introduction", ["Machine translation and BLEU are discussed, see [1]."])],
    references=["[1] J. Smith. 2020. A Cited Paper. In Proceedings of TESTCONF."],
)

NO_REFS = PaperSpec(
    title="A Paper Without Any Reference Section",
    authors=["Alice Zhang"],
    abstract="This fixture has no reference list at all.",
    sections=[("1 Introduction", ["Some body text mentioning machine translation."])],
    references=[],
)


def wait_ready(client, doc_id, timeout=30.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        status = client.get(f"/v1/docs/{doc_id}").json()["status"]
        if status in ("ready", "degraded", "failed"):
            return status
        time.sleep(0.02)
    raise AssertionError("pipeline did not finish in time")


def upload(client, pdf_bytes, name="paper.pdf"):
    resp = client.post("/v1/docs", files={"file": (name, pdf_bytes, "application/pdf")})
    assert resp.status_code == 200, resp.text
    return resp.json()


@pytest.fixture()
def app_dir(tmp_path):
    return str(tmp_path / "data")


@pytest.fixture()
def client(app_dir):
    config = ServiceConfig(data_dir=app_dir, preload_corpus=True)
    with TestClient(create_app(config)) as c:
        yield c


# -- opening documents ---------------------------------------------------


def test_upload_reaches_ready(client):
    record = upload(client, paper_pdf(PAPER))
    assert record["status"] in ("parsing", "structuring", "annotating", "ready")
    assert wait_ready(client, record["id"]) == "ready"
    final = client.get(f"/v1/docs/{record['id']}").json()
    assert final["title"] == PAPER.title
    assert final["origin"] == "upload"


def test_idempotent_open_same_bytes(client, app_dir):
    pdf = paper_pdf(PAPER)
    first = upload(client, pdf)
    second = upload(client, pdf)
    assert first["id"] == second["id"]
    stored = [f for f in os.listdir(os.path.join(app_dir, "pdfs")) if f.endswith(".pdf")]
    assert len(stored) == 1


def test_upload_not_a_pdf(client):
    resp = client.post("/v1/docs", files={"file": ("x.pdf", b"hello", "application/pdf")})
    assert resp.status_code == 400
    assert resp.json()["code"] == "NotAPdf"


def test_upload_too_large(app_dir):
    config = ServiceConfig(data_dir=app_dir, max_upload_bytes=100)
    with TestClient(create_app(config)) as client:
        resp = client.post(
            "/v1/docs", files={"file": ("x.pdf", b"%PDF" + b"0" * 200, "application/pdf")}
        )
    assert resp.status_code == 413
    assert resp.json()["code"] == "TooLarge"


def test_open_by_url_file_scheme(client, tmp_path):
    path = tmp_path / "fixture.pdf"
    path.write_bytes(paper_pdf(PAPER))
    resp = client.post("/v1/docs", json={"url": path.as_uri()})
    assert resp.status_code == 200
    assert resp.json()["origin"] == "url"


def test_open_by_doi_fixture(app_dir, tmp_path):
    path = tmp_path / "fixture.pdf"
    path.write_bytes(paper_pdf(PAPER))
    config = ServiceConfig(data_dir=app_dir, doi_fixtures={"10.1234/test": path.as_uri()})
    with TestClient(create_app(config)) as client:
        ok = client.post("/v1/docs", json={"doi": "10.1234/test"})
        assert ok.status_code == 200
        assert ok.json()["origin"] == "doi"
        missing = client.post("/v1/docs", json={"doi": "10.9999/unknown"})
        assert missing.status_code == 404
        assert missing.json()["code"] == "DoiUnresolved"


def test_open_requires_one_source(client):
    resp = client.post("/v1/docs", json={"url": "x", "doi": "y"})
    assert resp.status_code == 400


def test_failed_parse_is_terminal_but_pdf_served(client):
    record = upload(client, b"%PDF-1.4 this is not really parseable")
    assert wait_ready(client, record["id"]) == "failed"
    body = client.get(f"/v1/docs/{record['id']}").json()
    assert body["error"]
    pdf = client.get(f"/v1/docs/{record['id']}/pdf")
    assert pdf.status_code == 200
    assert pdf.content.startswith(b"%PDF")
    structure = client.get(f"/v1/docs/{record['id']}/structure")
    assert structure.status_code == 409
    assert structure.json()["code"] == "NotReady"


# -- records management --------------------------------------------------


def test_listing_bookmark_delete(client):
    a = upload(client, paper_pdf(PAPER))
    b = upload(client, paper_pdf(NO_REFS))
    listing = client.get("/v1/docs").json()["docs"]
    assert {d["id"] for d in listing} == {a["id"], b["id"]}

    marked = client.post(f"/v1/docs/{a['id']}/bookmark", json={"bookmarked": True})
    assert marked.json()["bookmarked"] is True
    listing = client.get("/v1/docs").json()["docs"]
    assert next(d for d in listing if d["id"] == a["id"])["bookmarked"]

    wait_ready(client, a["id"])
    wait_ready(client, b["id"])
    resp = client.request("DELETE", "/v1/docs", json={"ids": [a["id"], b["id"]]})
    assert resp.status_code == 200
    assert client.get("/v1/docs").json()["docs"] == []
    assert client.get(f"/v1/docs/{a['id']}").status_code == 404


def test_delete_unknown_is_atomic(client):
    a = upload(client, paper_pdf(PAPER))
    resp = client.request("DELETE", "/v1/docs", json={"ids": [a["id"], "nope"]})
    assert resp.status_code == 404
    assert client.get(f"/v1/docs/{a['id']}").status_code == 200


def test_unknown_doc_404(client):
    resp = client.get("/v1/docs/ffffffffffffffff")
    assert resp.status_code == 404
    assert resp.json()["code"] == "UnknownDoc"


# -- bundles -------------------------------------------------------------


def test_ready_bundle_shape(client):
    record = upload(client, paper_pdf(PAPER))
    assert wait_ready(client, record["id"]) == "ready"
    bundle = client.get(f"/v1/docs/{record['id']}/bundle").json()
    assert bundle["status"] == "ready"
    assert bundle["structure"]["schema"] == "structured-doc/v1"
    assert bundle["spans"]["schema"] == "spans/v1"
    assert "match" in bundle and "extensions" in bundle
    assert bundle["structure"]["title"] == PAPER.title

    structure = client.get(f"/v1/docs/{record['id']}/structure").json()
    spans = client.get(f"/v1/docs/{record['id']}/spans").json()
    assert structure == bundle["structure"]
    assert spans == bundle["spans"]


def test_degraded_without_references_still_has_spans(client):
    record = upload(client, paper_pdf(NO_REFS))
    assert wait_ready(client, record["id"]) == "degraded"
    bundle = client.get(f"/v1/docs/{record['id']}/bundle").json()
    assert "NoReferenceSection" in bundle["reasons"]
    assert bundle["spans"] is not None
    assert bundle["structure"]["references"] == []


def test_bundle_matches_corpus_record(client):
    found = client.get("/v1/search", params={"q": "dialog state tracking graph"}).json()
    corpus_rec = found["results"][0]["record"]
    spec = PaperSpec(
        title=corpus_rec["title"],
        authors=corpus_rec["authors"],
        abstract=corpus_rec["abstract"],
        sections=[("1 Introduction", ["Body text for the matching fixture."])],
        references=["[1] J. Smith. 2020. A Cited Paper. In Proceedings of TESTCONF."],
    )
    record = upload(client, paper_pdf(spec))
    wait_ready(client, record["id"])
    bundle = client.get(f"/v1/docs/{record['id']}/bundle").json()
    matched = bundle["match"]["record"]
    assert matched is not None
    assert matched["id"] == corpus_rec["id"]
    assert bundle["extensions"]["author_works"]


# -- translation ---------------------------------------------------------


def test_translate_stub_hello(client):
    resp = client.post("/v1/translate", json={"text": "hello", "target": "zh"})
    assert resp.json()["text"] == "你好"
    assert resp.json()["cached"] is False
    again = client.post("/v1/translate", json={"text": "hello", "target": "zh"})
    assert again.json() == {"text": "你好", "provider": "stub", "cached": True}


def test_translate_empty_rejected(client):
    resp = client.post("/v1/translate", json={"text": "", "target": "zh"})
    assert resp.status_code == 400


def test_translate_too_long(client):
    resp = client.post("/v1/translate", json={"text": "x" * 5001, "target": "zh"})
    assert resp.status_code == 413
    assert resp.json()["code"] == "TextTooLong"


# -- search / authors / encyclopedia / qa --------------------------------


def test_search_endpoint(client):
    resp = client.get("/v1/search", params={"q": "dialog", "page_size": 5})
    body = resp.json()
    assert body["total"] > 0
    assert len(body["results"]) <= 5
    scores = [r["score"] for r in body["results"]]
    assert scores == sorted(scores, reverse=True)


def test_search_empty_query_code(client):
    resp = client.get("/v1/search")
    assert resp.status_code == 400
    assert resp.json()["code"] == "EmptyQuery"


def test_search_bad_page(client):
    resp = client.get("/v1/search", params={"q": "x", "page": 0})
    assert resp.status_code == 400


def test_author_works_endpoint(client):
    resp = client.get("/v1/authors/Alice Zhang/works")
    body = resp.json()
    assert len(body["works"]) == 4


def test_encyclopedia_endpoint(client):
    resp = client.get("/v1/encyclopedia", params={"term": "BLEU"})
    assert resp.json()["status"] == "exact"
    assert client.get("/v1/encyclopedia").status_code == 400


def test_qa_endpoint_multi_round(client):
    first = client.post("/v1/qa", json={"session_id": "s1", "text": "What is the deadline of ACL"})
    assert first.json()["kind"] == "attribute"
    second = client.post("/v1/qa", json={"session_id": "s1", "text": "Where is it held"})
    assert "Dublin" in second.json()["text"]


# -- durability ----------------------------------------------------------


def test_restart_preserves_records_and_bundles(app_dir):
    config = ServiceConfig(data_dir=app_dir, preload_corpus=True)
    with TestClient(create_app(config)) as client:
        record = upload(client, paper_pdf(PAPER))
        wait_ready(client, record["id"])
        listing_before = client.get("/v1/docs").json()
        bundle_before = client.get(f"/v1/docs/{record['id']}/bundle").content
        pdf_before = client.get(f"/v1/docs/{record['id']}/pdf").content
    with TestClient(create_app(ServiceConfig(data_dir=app_dir))) as client:
        assert client.get("/v1/docs").json() == listing_before
        assert client.get(f"/v1/docs/{record['id']}/bundle").content == bundle_before
        assert client.get(f"/v1/docs/{record['id']}/pdf").content == pdf_before


def test_config_file_and_env_overrides(tmp_path, monkeypatch):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"data_dir": str(tmp_path / "d"), "port": 9000}))
    monkeypatch.setenv("SCIREADER_PORT", "9100")
    config = ServiceConfig.load(str(cfg_path))
    assert config.data_dir == str(tmp_path / "d")
    assert config.port == 9100
    with pytest.raises(ValueError):
        cfg_path.write_text(json.dumps({"nope": 1}))
        ServiceConfig.load(str(cfg_path))
