"""HTTP API (/v1) tying the pipeline, search, translation, and Q&A together."""

from __future__ import annotations

import time

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from ..qa import QaBot
from ..scholar import (
    EmptyQuery,
    FixtureProvider,
    Query,
    ScholarStore,
    author_works,
    bundled_corpus_lines,
    encyclopedia,
    search,
)
from .config import ServiceConfig
from .errors import ApiError, BadRequest, NotAPdfUpload, NotReady, TooLarge
from .fetch import FixtureDoiResolver, LiveDoiResolver, fetch_pdf
from .pipeline import Pipeline
from .storage import DocRecord, DocStore
from .translate import StubProvider, TranslationService


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig.load()
    app = FastAPI(title="scireader", version="1.0")

    store = DocStore(config.data_dir)
    scholar = ScholarStore(f"{config.data_dir}/scholar")
    if config.preload_corpus and len(scholar) == 0:
        scholar.ingest(bundled_corpus_lines())
    pipeline = Pipeline(store, scholar)
    pipeline.resume_pending()

    app.state.config = config
    app.state.store = store
    app.state.scholar = scholar
    app.state.pipeline = pipeline
    app.state.qa_bot = QaBot()
    app.state.translator = TranslationService(
        [StubProvider()], config.translate_provider, config.translate_max_chars
    )
    app.state.encyclopedia = FixtureProvider()
    app.state.doi_resolver = (
        LiveDoiResolver() if config.live_doi else FixtureDoiResolver(config.doi_fixtures)
    )

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content=exc.to_json())

    # -- documents -------------------------------------------------------

    def _open_bytes(pdf_bytes: bytes, origin: str, detail: str) -> DocRecord:
        if len(pdf_bytes) > config.max_upload_bytes:
            raise TooLarge("upload exceeds %d bytes" % config.max_upload_bytes)
        if not pdf_bytes.startswith(b"%PDF"):
            raise NotAPdfUpload("payload does not start with a PDF header")
        doc_id = store.put_pdf(pdf_bytes)
        existing = store.maybe_get(doc_id)
        if existing is not None:
            return existing
        record = DocRecord(
            id=doc_id,
            origin=origin,
            origin_detail=detail,
            opened_at=time.time(),
            status="parsing",
        )
        store.upsert(record)
        pipeline.submit(doc_id)
        return record

    @app.post("/v1/docs")
    async def open_document(request: Request):
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("multipart/form-data"):
            form = await request.form()
            upload = form.get("file")
            if upload is None:
                raise BadRequest("multipart upload needs a 'file' part")
            data = await upload.read()
            record = _open_bytes(data, "upload", getattr(upload, "filename", "") or "")
        else:
            try:
                body = await request.json()
            except Exception:
                raise BadRequest("expected multipart upload or a JSON body")
            if not isinstance(body, dict) or len(body.keys() & {"url", "doi"}) != 1:
                raise BadRequest("provide exactly one of 'url' or 'doi'")
            if "url" in body:
                url = body["url"]
                data = fetch_pdf(url, config.max_upload_bytes, config.fetch_timeout)
                record = _open_bytes(data, "url", url)
            else:
                doi = body["doi"]
                url = app.state.doi_resolver.resolve(doi)
                data = fetch_pdf(url, config.max_upload_bytes, config.fetch_timeout)
                record = _open_bytes(data, "doi", doi)
        return record.to_json()

    @app.get("/v1/docs")
    def list_documents():
        return {"docs": [r.to_json() for r in store.listing()]}

    @app.get("/v1/docs/{doc_id}")
    def document_status(doc_id: str):
        return store.get(doc_id).to_json()

    @app.get("/v1/docs/{doc_id}/pdf")
    def document_pdf(doc_id: str):
        return Response(content=store.read_pdf(doc_id), media_type="application/pdf")

    def _artifact_or_409(doc_id: str, name: str):
        record = store.get(doc_id)
        payload = store.read_artifact(doc_id, name)
        if payload is None:
            raise NotReady(
                "artifact %r not available" % name,
                detail={"status": record.status, "reasons": list(record.reasons)},
            )
        return payload

    @app.get("/v1/docs/{doc_id}/structure")
    def document_structure(doc_id: str):
        return _artifact_or_409(doc_id, "structure")

    @app.get("/v1/docs/{doc_id}/spans")
    def document_spans(doc_id: str):
        return _artifact_or_409(doc_id, "spans")

    @app.get("/v1/docs/{doc_id}/bundle")
    def document_bundle(doc_id: str):
        record = store.get(doc_id)
        body = {
            "id": record.id,
            "status": record.status,
            "reasons": list(record.reasons),
            "title": record.title,
        }
        if record.status == "failed":
            body["error"] = record.error
            return body
        if record.status not in ("ready", "degraded"):
            return body
        structure = store.read_artifact(doc_id, "structure")
        spans = store.read_artifact(doc_id, "spans")
        match = store.read_artifact(doc_id, "match")
        body["structure"] = structure
        body["spans"] = spans
        body["match"] = match
        body["anchors"] = structure.get("anchors", []) if structure else []
        extensions = {}
        matched = (match or {}).get("record")
        if matched:
            snap = scholar.snapshot()
            extensions["resources"] = matched.get("resources", [])
            extensions["author_works"] = {
                name: [w.to_json() for w in author_works(name, snap)[:10]]
                for name in matched.get("authors", [])
            }
        body["extensions"] = extensions
        return body

    @app.post("/v1/docs/{doc_id}/bookmark")
    async def bookmark(doc_id: str, request: Request):
        body = await request.json()
        flag = bool(body.get("bookmarked", True))
        return store.update(doc_id, bookmarked=flag).to_json()

    @app.delete("/v1/docs")
    async def delete_documents(request: Request):
        body = await request.json()
        ids = body.get("ids")
        if not isinstance(ids, list) or not ids:
            raise BadRequest("provide a non-empty 'ids' list")
        store.delete(ids)
        return {"deleted": ids}

    # -- translation -----------------------------------------------------

    @app.post("/v1/translate")
    async def translate(request: Request):
        body = await request.json()
        result = app.state.translator.translate(
            text=body.get("text", ""),
            target=body.get("target", ""),
            source=body.get("source", "en"),
            provider=body.get("provider"),
        )
        return {"text": result.text, "provider": result.provider, "cached": result.cached}

    # -- search / extension data ----------------------------------------

    @app.get("/v1/search")
    def search_endpoint(
        q: str = "",
        year_from: int | None = None,
        year_to: int | None = None,
        venue: str | None = None,
        source: str | None = None,
        sort: str = "relevance",
        page: int = 1,
        page_size: int = 10,
    ):
        try:
            query = Query(
                keywords=q,
                year_from=year_from,
                year_to=year_to,
                venue=venue,
                source=source,
                sort=sort,
                page=page,
                page_size=page_size,
            )
            result = search(query, scholar.snapshot())
        except EmptyQuery as exc:
            raise ApiErrorWithCode("EmptyQuery", str(exc))
        except ValueError as exc:
            raise BadRequest(str(exc))
        return {
            "total": result.total,
            "page": result.page,
            "page_size": result.page_size,
            "results": [
                {"record": e.record.to_json(), "score": e.score} for e in result.entries
            ],
        }

    @app.get("/v1/authors/{name}/works")
    def author_works_endpoint(name: str):
        works = author_works(name, scholar.snapshot())
        return {"name": name, "works": [w.to_json() for w in works]}

    @app.get("/v1/encyclopedia")
    def encyclopedia_endpoint(term: str = ""):
        if not term.strip():
            raise BadRequest("term must be non-empty")
        answer = encyclopedia(term, app.state.encyclopedia)
        return {
            "status": answer.status,
            "entries": [
                {"title": e.title, "summary": e.summary, "url": e.url}
                for e in answer.entries
            ],
            "diagnostic": answer.diagnostic,
        }

    @app.post("/v1/qa")
    async def qa_endpoint(request: Request):
        body = await request.json()
        session_id = body.get("session_id")
        text = body.get("text", "")
        if not session_id or not text.strip():
            raise BadRequest("session_id and text are required")
        answer = app.state.qa_bot.ask(session_id, text)
        return {
            "text": answer.text,
            "payload": answer.payload,
            "confidence": answer.confidence,
            "kind": answer.kind,
            "language": answer.language,
        }

    return app


class ApiErrorWithCode(ApiError):
    status = 400

    def __init__(self, code: str, message: str, detail=None):
        super().__init__(message, detail)
        self.code = code
