"""Per-document enrichment pipeline: parse, structure, annotate, match.

Each document runs its stages sequentially on a worker thread; failures in
academic stages degrade the document instead of failing it, so the raw PDF
stays readable. Only an unparseable PDF is terminal-failed.
"""

from __future__ import annotations

import logging
import traceback
from concurrent.futures import ThreadPoolExecutor

from ..pdfparse import parse_document
from ..scholar import match_paper
from ..spans import annotate
from ..structure import build_structured_doc
from ..structure.classify import EmptyDocument
from .storage import DocStore

log = logging.getLogger(__name__)


class Pipeline:
    def __init__(self, store: DocStore, scholar_store, max_workers: int = 2):
        self.store = store
        self.scholar_store = scholar_store
        self._pool = ThreadPoolExecutor(max_workers=max_workers)
        self._futures: dict = {}

    def submit(self, doc_id: str):
        future = self._pool.submit(self._run, doc_id)
        self._futures[doc_id] = future
        return future

    def wait_all(self):
        for future in list(self._futures.values()):
            future.result()

    def resume_pending(self):
        """Re-enqueue documents interrupted before reaching a final status."""
        for rec in self.store.listing():
            if rec.status in ("parsing", "structuring", "annotating"):
                self.submit(rec.id)

    def shutdown(self):
        self._pool.shutdown(wait=True)

    # -- stages ----------------------------------------------------------

    def _run(self, doc_id: str):
        try:
            pdf = self.store.read_pdf(doc_id)
        except Exception:
            log.exception("pipeline: cannot read stored pdf %s", doc_id)
            return
        reasons: list = []
        try:
            doc = parse_document(pdf)
        except Exception as exc:
            self.store.update(doc_id, status="failed", error=_reason(exc))
            return

        self.store.update(doc_id, status="structuring")
        sdoc = None
        try:
            sdoc = build_structured_doc(doc)
        except EmptyDocument as exc:
            reasons.append(_reason(exc))
        except Exception as exc:  # never block reading on enrichment bugs
            log.debug("structure stage failed for %s\n%s", doc_id, traceback.format_exc())
            reasons.append(_reason(exc))

        self.store.update(doc_id, status="annotating")
        if sdoc is not None:
            self.store.write_artifact(doc_id, "structure", sdoc.to_json())
            if sdoc.title:
                self.store.update(doc_id, title=sdoc.title)
            if any(d.code == "no-reference-section" for d in sdoc.diagnostics):
                reasons.append("NoReferenceSection")
            try:
                bundle = annotate(doc, sdoc)
                self.store.write_artifact(doc_id, "spans", bundle.to_json())
            except Exception as exc:
                reasons.append(_reason(exc))
            try:
                result = match_paper(sdoc, self.scholar_store.snapshot())
                self.store.write_artifact(
                    doc_id,
                    "match",
                    {
                        "record": result.record.to_json() if result.record else None,
                        "score": result.score,
                        "candidates": [
                            {"record": rec.to_json(), "score": score}
                            for rec, score in result.candidates
                        ],
                    },
                )
            except Exception as exc:
                reasons.append(_reason(exc))

        if reasons:
            self.store.update(doc_id, status="degraded", reasons=tuple(reasons))
        else:
            self.store.update(doc_id, status="ready")


def _reason(exc: Exception) -> str:
    text = str(exc)
    name = type(exc).__name__
    return "%s: %s" % (name, text) if text else name
