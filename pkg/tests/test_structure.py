"""Tests for layout analysis, role classification, references, and anchors."""

import pytest
from hypothesis import given, strategies as st

from scireader.pdfparse import parse_document
from scireader.pdfparse.model import DocMeta
from scireader.structure import (
    EmptyDocument,
    NoReferenceSection,
    assemble_blocks,
    build_structured_doc,
    classify_structure,
    locate_anchors,
    parse_reference,
    segment_references,
)
from scireader.structure.model import RefLine, StructuredDoc

from pdfgen import PaperSpec, paper_pdf, simple_pdf


def _empty_sdoc(ref_lines):
    return StructuredDoc(
        title="t",
        authors=[],
        header_text="",
        header_charmap=[],
        abstract="",
        abstract_range=(0, 0),
        sections=[],
        references=[],
        anchors=[],
        flat_text="t",
        charmap=[(1, 0, 0)],
        reference_lines=ref_lines,
    )


TEMPLATE = PaperSpec(
    title="Test Paper",
    authors=["Alice Zhang", "Bob Liu"],
    abstract="We test.",
    sections=[
        ("1 Introduction", ["We study parsing of documents in this work."]),
        ("2 Method", ["Our method uses simple rules and a lexicon."]),
    ],
    references=[
        "[1] J. Smith and A. Lee. 2020. Span Parsing at Scale. In Proceedings of TESTCONF.",
        "[2] C. Wu. 2019. Another Paper Title. In Journal of Testing.",
    ],
)


# -- assemble_blocks -----------------------------------------------------


def test_two_column_reading_order():
    left = [(72, 700 - 14 * i, f"A{i + 1}") for i in range(5)]
    right = [(340, 700 - 14 * i, f"B{i + 1}") for i in range(5)]
    doc = parse_document(simple_pdf([left + right]))
    blocks = assemble_blocks(doc)
    seq = [ln.text for b in blocks for ln in b.lines]
    assert seq == [f"A{i + 1}" for i in range(5)] + [f"B{i + 1}" for i in range(5)]


def test_single_item_single_block():
    doc = parse_document(simple_pdf([[(72, 700, "only")]]))
    blocks = assemble_blocks(doc)
    assert len(blocks) == 1
    assert len(blocks[0].lines) == 1
    assert blocks[0].lines[0].text == "only"


def test_dehyphenation_across_lines():
    doc = parse_document(
        simple_pdf(
            [
                [
                    (72, 700, "We extract informa-"),
                    (72, 688, "tion from papers for tests."),
                ]
            ]
        )
    )
    sdoc = classify_structure(assemble_blocks(doc), doc.meta)
    assert "information" in sdoc.flat_text


def test_every_item_in_exactly_one_line():
    pdf = paper_pdf(TEMPLATE)
    doc = parse_document(pdf)
    blocks = assemble_blocks(doc)
    seen = set()
    for b in blocks:
        for ln in b.lines:
            for idx in ln.item_indices:
                key = (ln.page, idx)
                assert key not in seen
                seen.add(key)
    total = sum(len(p.items) for p in doc.pages)
    assert len(seen) == total


# -- classify_structure --------------------------------------------------


def test_template_fields():
    doc = parse_document(paper_pdf(TEMPLATE))
    sdoc = build_structured_doc(doc)
    assert sdoc.title == "Test Paper"
    assert [a.name for a in sdoc.authors] == ["Alice Zhang", "Bob Liu"]
    assert sdoc.abstract == "We test."
    headings = [s.heading for s in sdoc.sections if s.heading]
    assert headings == ["1 Introduction", "2 Method"]
    assert len(sdoc.references) == 2


def test_empty_document():
    doc = parse_document(simple_pdf([[]]))
    with pytest.raises(EmptyDocument):
        classify_structure(assemble_blocks(doc), doc.meta)


def test_adversarial_banner_title():
    spec = PaperSpec(
        title="Quiet Actual Title",
        authors=["Ann Author"],
        abstract="Abstract body here.",
        sections=[("1 Introduction", ["Some text for the body."])],
        banner="GRAND VENUE PROCEEDINGS BANNER 2022",
        meta_title="Quiet Actual Title",
    )
    pdf = _banner_larger_pdf(spec)
    doc = parse_document(pdf)
    sdoc = classify_structure(assemble_blocks(doc), doc.meta)
    assert sdoc.title == "Quiet Actual Title"


def _banner_larger_pdf(spec):
    """Banner drawn in a larger font than the real title."""
    import io

    from reportlab.lib.pagesizes import letter
    from reportlab.pdfgen import canvas

    buf = io.BytesIO()
    c = canvas.Canvas(buf, pagesize=letter)
    c.setTitle(spec.meta_title)
    y = letter[1] - 72
    c.setFont("Helvetica-Bold", 20)
    c.drawString(72, y, spec.banner)
    y -= 40
    c.setFont("Helvetica-Bold", 14)
    c.drawString(72, y, spec.title)
    y -= 24
    c.setFont("Helvetica", 11)
    c.drawString(72, y, ", ".join(spec.authors))
    y -= 30
    c.setFont("Helvetica-Bold", 11)
    c.drawString(72, y, "Abstract")
    y -= 14
    c.setFont("Helvetica", 10)
    c.drawString(72, y, spec.abstract)
    y -= 30
    c.setFont("Helvetica-Bold", 12)
    c.drawString(72, y, spec.sections[0][0])
    y -= 14
    c.setFont("Helvetica", 10)
    c.drawString(72, y, spec.sections[0][1][0])
    c.showPage()
    c.save()
    return buf.getvalue()


def test_charmap_total_and_sound():
    doc = parse_document(paper_pdf(TEMPLATE))
    sdoc = build_structured_doc(doc)
    assert len(sdoc.charmap) == len(sdoc.flat_text)
    for off, ch in enumerate(sdoc.flat_text):
        if ch.isspace():
            continue
        page, idx, intra = sdoc.charmap[off]
        item = doc.pages[page - 1].items[idx]
        assert ch in item.text


def test_text_conservation():
    from collections import Counter

    doc = parse_document(paper_pdf(TEMPLATE))
    sdoc = classify_structure(assemble_blocks(doc), doc.meta)
    source = Counter(c for p in doc.pages for i in p.items for c in i.text if not c.isspace())
    flat = Counter(c for c in sdoc.flat_text if not c.isspace())
    assert all(flat[c] <= source[c] for c in flat)


def test_header_footer_dropped():
    pages = []
    for p in range(3):
        pages.append(
            [
                (72, 770, "Running Header Journal"),
                (72, 700, f"Unique content line {p}"),
                (280, 40, str(p + 1)),
            ]
        )
    doc = parse_document(simple_pdf(pages))
    sdoc = classify_structure(assemble_blocks(doc), doc.meta)
    assert "Running Header Journal" not in sdoc.flat_text
    assert any(d.code == "furniture-dropped" for d in sdoc.diagnostics)


# -- segment_references --------------------------------------------------


def test_segment_bracket_numbered():
    sdoc = _empty_sdoc(
        [
            RefLine("[1] A. Apple. 2020. First Title. In VenueOne.", 72, 1),
            RefLine("[2] B. Berry. 2021. Second Title. In VenueTwo.", 72, 1),
            RefLine("[3] C. Cherry. 2022. Third Title. In VenueThree.", 72, 1),
        ]
    )
    raws = segment_references(sdoc)
    assert len(raws) == 3
    assert raws[0].startswith("[1]")


def test_segment_hanging_indent():
    sdoc = _empty_sdoc(
        [
            RefLine("Apple, A. (2020). First title spread over", 72, 1),
            RefLine("two lines here. VenueOne.", 86, 1),
            RefLine("Berry, B. (2021). Second title. VenueTwo.", 72, 1),
            RefLine("Cherry, C. (2022). Third title also on", 72, 1),
            RefLine("two lines. VenueThree.", 86, 1),
        ]
    )
    raws = segment_references(sdoc)
    assert len(raws) == 3
    assert raws[0].endswith("VenueOne.")


def test_segmentation_conservation():
    lines = [
        RefLine("[1] A. Apple. 2020. First Title. In VenueOne.", 72, 1),
        RefLine("continued text of the first entry.", 86, 1),
        RefLine("[2] B. Berry. 2021. Second Title. In VenueTwo.", 72, 1),
    ]
    sdoc = _empty_sdoc(lines)
    raws = segment_references(sdoc)
    assert " ".join(" ".join(raws).split()) == " ".join(
        " ".join(ln.text for ln in lines).split()
    )


def test_no_reference_section():
    with pytest.raises(NoReferenceSection):
        segment_references(_empty_sdoc([]))


# -- parse_reference -----------------------------------------------------


def test_parse_numbered_acl_style():
    ref = parse_reference(
        "[3] J. Smith and A. Lee. 2020. Span Parsing at Scale. "
        "In Proceedings of TESTCONF.",
        3,
    )
    assert ref.authors == ["J. Smith", "A. Lee"]
    assert ref.year == 2020
    assert ref.title == "Span Parsing at Scale"
    assert ref.venue == "Proceedings of TESTCONF"


def test_parse_degenerate():
    ref = parse_reference("xyzzy")
    assert ref.raw == "xyzzy"
    assert ref.authors == []
    assert ref.title is None and ref.venue is None
    assert ref.year is None and ref.doi is None


def test_parse_doi():
    ref = parse_reference(
        "B. Author. A Paper. https://doi.org/10.1145/1234567.8901234"
    )
    assert ref.doi == "10.1145/1234567.8901234"


def test_parse_author_year_style():
    ref = parse_reference(
        "Smith, J. and Lee, A. Dependency parsing revisited. "
        "In Proceedings of TESTCONF, 2018."
    )
    assert ref.year == 2018
    assert ref.venue == "Proceedings of TESTCONF"
    assert ref.title == "Dependency parsing revisited"


@given(st.text(min_size=1, max_size=200))
def test_parse_reference_total_and_idempotent(raw):
    ref = parse_reference(raw)
    assert ref.raw == raw
    again = parse_reference(ref.raw)
    assert again == ref


# -- locate_anchors ------------------------------------------------------


def test_caption_anchor():
    doc = parse_document(
        simple_pdf([[(72, 400, "Figure 2: Results overview.")]])
    )
    anchors = locate_anchors(doc)
    assert len(anchors) == 1
    assert anchors[0].kind == "figure"
    assert anchors[0].label == "Figure 2"
    assert anchors[0].page == 1


def test_no_captions():
    doc = parse_document(simple_pdf([[(72, 400, "No captions here.")]]))
    assert locate_anchors(doc) == []


def test_duplicate_caption_first_kept():
    doc = parse_document(
        simple_pdf(
            [
                [(72, 400, "Table 1: First occurrence.")],
                [(72, 400, "Table 1: Second occurrence.")],
            ]
        )
    )
    sdoc = _empty_sdoc([])
    anchors = locate_anchors(doc, sdoc)
    assert len(anchors) == 1
    assert anchors[0].page == 1
    assert any(d.code == "duplicate-anchor" for d in sdoc.diagnostics)


def test_structured_doc_json_roundtrip():
    doc = parse_document(paper_pdf(TEMPLATE))
    sdoc = build_structured_doc(doc)
    data = sdoc.to_json()
    assert data["schema"] == "structured-doc/v1"
    back = StructuredDoc.from_json(data)
    assert back.title == sdoc.title
    assert back.flat_text == sdoc.flat_text
    assert back.charmap == sdoc.charmap
    assert back.references == sdoc.references
