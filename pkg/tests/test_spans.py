"""Tests for term tagging, citation/author detection, and localization."""

import pytest

from scireader.pdfparse import parse_document
from scireader.spans import (
    RangeOutOfBounds,
    SpanBundle,
    TermLexicon,
    annotate,
    detect_authors,
    detect_citations,
    localize,
    occurrences,
    tag_terms,
)
from scireader.structure import build_structured_doc
from scireader.structure.model import Reference, StructuredDoc

from pdfgen import PaperSpec, paper_pdf, simple_pdf
from reference_tagger import brute_force_tag


def sdoc_from_text(text, references=()):
    return StructuredDoc(
        title="",
        authors=[],
        header_text="",
        header_charmap=[],
        abstract="",
        abstract_range=(0, 0),
        sections=[],
        references=list(references),
        anchors=[],
        flat_text=text,
        charmap=[(1, 0, i) for i in range(len(text))],
    )


def refs(n, style="numbered"):
    return [
        Reference(index=i + 1, raw=f"[{i + 1}] X. Author{i}.", authors=[f"X. Author{i}"])
        for i in range(n)
    ]


# -- tag_terms -----------------------------------------------------------


def test_micro_document_single_match():
    lex = TermLexicon({"bleu": "Metric", "machine translation": "Task"})
    spans = tag_terms(sdoc_from_text("We evaluate BLEU on translation."), lex)
    assert [(s.surface, s.type) for s in spans] == [("BLEU", "Metric")]


def test_empty_lexicon_no_patterns():
    spans = tag_terms(sdoc_from_text("Nothing to find here."), TermLexicon({}))
    assert spans == []


def test_abbreviation_rule():
    lex = TermLexicon({"named entity recognition": "Task"})
    text = "We study named entity recognition (NER). Later NER is used again."
    spans = tag_terms(sdoc_from_text(text), lex)
    surfaces = [(s.surface, s.type) for s in spans]
    assert ("named entity recognition", "Task") in surfaces
    ners = [s for s in spans if s.surface == "NER"]
    assert len(ners) == 2
    assert all(s.type == "Task" for s in ners)


def test_longest_match_wins():
    lex = TermLexicon({"translation": "Generic", "machine translation": "Task"})
    spans = tag_terms(sdoc_from_text("We do machine translation now."), lex)
    assert [(s.surface, s.type) for s in spans] == [("machine translation", "Task")]


def test_metric_pattern_rule():
    spans = tag_terms(sdoc_from_text("We report the BLEU-score and F1 here."), TermLexicon({}))
    assert {(s.surface, s.type) for s in spans} == {
        ("BLEU-score", "Metric"),
        ("F1", "Metric"),
    }


def test_other_alias_accepted():
    lex = TermLexicon({"overfitting": "Other"})
    spans = tag_terms(sdoc_from_text("We observe overfitting."), lex)
    assert spans[0].type == "OtherScientificTerm"


def test_non_overlap_invariant():
    lex = TermLexicon.bundled()
    text = (
        "We evaluate machine translation with BLEU and F1-score on the "
        "SQuAD dataset using a neural network and named entity recognition (NER). "
        "NER helps information extraction; BERT embeddings and bert are reused."
    )
    spans = tag_terms(sdoc_from_text(text), lex)
    for a in spans:
        for b in spans:
            if a is not b:
                assert a.end <= b.start or b.end <= a.start


def test_agreement_with_brute_force():
    lex = TermLexicon.bundled()
    text = (
        "This paper studies machine translation and question answering. "
        "We train a convolutional neural network and report BLEU, F1 and "
        "ROUGE-score results on the WMT dataset. Named entity recognition (NER) "
        "is a classic task; NER systems use conditional random field models. "
        "Our approach beats the baseline on accuracy and mean reciprocal rank."
    )
    spans = tag_terms(sdoc_from_text(text), lex)
    got = [(s.start, s.end, s.surface, s.type) for s in spans]
    want = brute_force_tag(text, lex.entries)
    assert got == want


def test_context_sentence():
    lex = TermLexicon({"bleu": "Metric"})
    text = "First sentence. We evaluate BLEU here. Last sentence."
    (span,) = tag_terms(sdoc_from_text(text), lex)
    assert span.context == "We evaluate BLEU here."


# -- detect_citations ----------------------------------------------------


def test_numeric_citation_resolved():
    sdoc = sdoc_from_text("as shown in [3] before", references=refs(5))
    spans = detect_citations(sdoc)
    assert len(spans) == 1
    assert spans[0].target == 3
    assert spans[0].marker == "[3]"


def test_numeric_out_of_range_unresolved():
    sdoc = sdoc_from_text("as shown in [3]", references=refs(2))
    spans = detect_citations(sdoc)
    assert spans[0].target is None
    assert any(d.code == "citation-unresolved" for d in sdoc.diagnostics)


def test_author_year_resolved():
    ref = Reference(
        index=1,
        raw="J. Smith. 2020. A Paper.",
        authors=["J. Smith"],
        year=2020,
    )
    sdoc = sdoc_from_text("Following (Smith et al., 2020) we proceed.", [ref])
    spans = detect_citations(sdoc)
    assert len(spans) == 1
    assert spans[0].target == 1


def test_citation_list_and_range():
    sdoc = sdoc_from_text("see [1, 3-4] here", references=refs(5))
    spans = detect_citations(sdoc)
    assert sorted(s.target for s in spans) == [1, 3, 4]


def test_resolution_soundness():
    sdoc = sdoc_from_text(
        "see [1] and [2] and [9] and (Nobody et al., 1999)", references=refs(3)
    )
    for span in detect_citations(sdoc):
        if span.target is not None:
            assert 1 <= span.target <= len(sdoc.references)


# -- detect_authors / localization --------------------------------------


TEMPLATE = PaperSpec(
    title="Span Fixture Paper",
    authors=["Alice Zhang", "Bob Liu"],
    abstract="We study machine translation and BLEU.",
    sections=[
        (
            "1 Introduction",
            [
                "BERT is compared with BERT and bert in this text. "
                "As shown in [1], machine translation works."
            ],
        )
    ],
    references=["[1] J. Smith. 2020. A Cited Paper. In Proceedings of TESTCONF."],
)


def test_template_author_spans():
    doc = parse_document(paper_pdf(TEMPLATE))
    sdoc = build_structured_doc(doc)
    bundle = annotate(doc, sdoc)
    assert [a.name for a in bundle.authors] == ["Alice Zhang", "Bob Liu"]
    for a in bundle.authors:
        assert a.boxes


def test_no_authors_empty():
    spans = detect_authors(sdoc_from_text("whatever"))
    assert spans == []


def test_author_split_across_lines_two_boxes():
    pdf = simple_pdf(
        [
            [
                (72, 740, "A Large Enough Title Line", "Helvetica-Bold", 16),
                (72, 700, "Alice Zhang, Bob", "Helvetica", 11),
                (72, 688, "Liu", "Helvetica", 11),
                (72, 650, "Abstract", "Helvetica-Bold", 11),
                (72, 638, "Body text of the abstract.", "Helvetica", 10),
            ]
        ],
        size=12,
    )
    doc = parse_document(pdf)
    sdoc = build_structured_doc(doc)
    bundle = annotate(doc, sdoc)
    bob = [a for a in bundle.authors if a.name == "Bob Liu"]
    assert bob and len(bob[0].boxes) == 2


def test_localize_single_item():
    doc = parse_document(simple_pdf([[(72, 700, "Hello")]]))
    sdoc = build_structured_doc(doc)
    start = sdoc.flat_text.index("Hello")
    boxes = localize(start, start + 5, sdoc, doc)
    assert len(boxes) == 1
    page, bbox = boxes[0]
    assert page == 1
    item = doc.pages[0].items[0]
    assert bbox == pytest.approx(item.bbox)


def test_localize_sub_item_interpolation():
    doc = parse_document(simple_pdf([[(72, 700, "Hello world")]]))
    sdoc = build_structured_doc(doc)
    start = sdoc.flat_text.index("world")
    boxes = localize(start, start + 5, sdoc, doc)
    (page, bbox) = boxes[0]
    item = doc.pages[0].items[0]
    frac0 = sdoc.flat_text.index("world") / len("Hello world")
    expected_x0 = item.bbox[0] + (item.bbox[2] - item.bbox[0]) * 6 / 11
    assert bbox[0] == pytest.approx(expected_x0, abs=0.01)
    assert bbox[2] <= item.bbox[2] + 1e-6
    del frac0


def test_localize_zero_length():
    doc = parse_document(simple_pdf([[(72, 700, "Hello")]]))
    sdoc = build_structured_doc(doc)
    assert localize(1, 1, sdoc, doc) == []


def test_localize_out_of_bounds():
    doc = parse_document(simple_pdf([[(72, 700, "Hello")]]))
    sdoc = build_structured_doc(doc)
    with pytest.raises(RangeOutOfBounds):
        localize(0, len(sdoc.flat_text) + 5, sdoc, doc)


def test_localize_across_line_break_two_boxes():
    doc = parse_document(
        simple_pdf(
            [[(72, 700, "alpha beta gamma"), (72, 688, "delta epsilon")]]
        )
    )
    sdoc = build_structured_doc(doc)
    start = sdoc.flat_text.index("gamma")
    end = sdoc.flat_text.index("delta") + len("delta")
    boxes = localize(start, end, sdoc, doc)
    assert len(boxes) == 2


def test_localization_roundtrip_invariant():
    doc = parse_document(paper_pdf(TEMPLATE))
    sdoc = build_structured_doc(doc)
    bundle = annotate(doc, sdoc)
    all_spans = list(bundle.terms) + list(bundle.citations)
    assert all_spans
    for span in all_spans:
        assert span.boxes
        source_items = {
            sdoc.charmap[o][:2]
            for o in range(span.start, span.end)
            if not sdoc.flat_text[o].isspace()
        }
        for page, bbox in span.boxes:
            assert 1 <= page <= doc.page_count
            hit = False
            for sp, idx in source_items:
                if sp != page:
                    continue
                ib = doc.pages[sp - 1].items[idx].bbox
                if bbox[0] < ib[2] and ib[0] < bbox[2] and bbox[1] < ib[3] and ib[1] < bbox[3]:
                    hit = True
                    break
            assert hit


# -- occurrences ---------------------------------------------------------


def test_occurrences_in_order():
    lex = TermLexicon({"bert": "Method"})
    text = "BERT first. Then BERT again. Finally BERT."
    sdoc = sdoc_from_text(text)
    spans = tag_terms(sdoc, lex)
    found = occurrences("BERT", sdoc, spans)
    assert len(found) == 3
    assert found == sorted(found, key=lambda s: s.start)


def test_occurrences_absent():
    sdoc = sdoc_from_text("nothing")
    assert occurrences("BERT", sdoc, []) == []


def test_occurrences_case_variants():
    lex = TermLexicon({"bert": "Method"})
    text = "Bert is here and BERT is there."
    sdoc = sdoc_from_text(text)
    spans = tag_terms(sdoc, lex)
    found = occurrences("bert", sdoc, spans)
    assert [s.surface for s in found] == ["Bert", "BERT"]


def test_span_bundle_json_roundtrip():
    doc = parse_document(paper_pdf(TEMPLATE))
    sdoc = build_structured_doc(doc)
    bundle = annotate(doc, sdoc)
    data = bundle.to_json()
    assert data["schema"] == "spans/v1"
    back = SpanBundle.from_json(data)
    assert back == bundle
