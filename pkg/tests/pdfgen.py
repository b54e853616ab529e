"""PDF fixture generation for tests, via reportlab (independent writer).

The parser under test never touches reportlab; expected geometry comes
from the placement parameters handed to the canvas here.
"""

from __future__ import annotations

import io

from reportlab.lib.pagesizes import letter
from reportlab.pdfgen import canvas

PAGE_W, PAGE_H = letter


def simple_pdf(lines_per_page, title=None, author=None, font="Helvetica", size=12):
    """Pages of (x, y, text) draw commands. Returns PDF bytes."""
    buf = io.BytesIO()
    c = canvas.Canvas(buf, pagesize=letter)
    if title:
        c.setTitle(title)
    if author:
        c.setAuthor(author)
    for lines in lines_per_page:
        for line in lines:
            x, y, text = line[:3]
            f = line[3] if len(line) > 3 else font
            s = line[4] if len(line) > 4 else size
            c.setFont(f, s)
            c.drawString(x, y, text)
        c.showPage()
    c.save()
    return buf.getvalue()


def outlined_pdf(entries, num_pages=3):
    """entries: list of (title, page_index_0based, level)."""
    buf = io.BytesIO()
    c = canvas.Canvas(buf, pagesize=letter)
    for i in range(num_pages):
        c.setFont("Helvetica", 12)
        c.drawString(72, 700, f"Page {i + 1}")
        c.bookmarkPage(f"p{i}")
        for title, page, level in entries:
            if page == i:
                c.addOutlineEntry(title, f"p{i}", level=level)
        c.showPage()
    c.save()
    return buf.getvalue()


class PaperSpec:
    """Declarative description of a synthetic paper PDF."""

    def __init__(
        self,
        title,
        authors,
        abstract,
        sections,
        references=(),
        captions=(),
        meta_title=None,
        two_column=False,
        banner=None,
    ):
        self.title = title
        self.authors = list(authors)
        self.abstract = abstract
        self.sections = list(sections)  # (heading, [paragraph, ...])
        self.references = list(references)  # raw strings
        self.captions = list(captions)  # (kind_label_text,) drawn as own lines
        self.meta_title = meta_title if meta_title is not None else title
        self.two_column = two_column
        self.banner = banner


def _wrap(text, font, size, max_width, measure):
    words = text.split()
    lines, cur = [], ""
    for w in words:
        cand = (cur + " " + w).strip()
        if measure(cand, font, size) <= max_width or not cur:
            cur = cand
        else:
            lines.append(cur)
            cur = w
    if cur:
        lines.append(cur)
    return lines


def paper_pdf(spec: PaperSpec) -> bytes:
    """Render a PaperSpec as a simple one- or two-column paper."""
    from reportlab.pdfbase.pdfmetrics import stringWidth

    buf = io.BytesIO()
    c = canvas.Canvas(buf, pagesize=letter)
    if spec.meta_title:
        c.setTitle(spec.meta_title)
    margin = 72.0
    body_size = 10.0
    leading = 12.0
    col_w = (PAGE_W - 2 * margin - 24) / 2 if spec.two_column else PAGE_W - 2 * margin
    col_x = [margin, margin + col_w + 24] if spec.two_column else [margin]

    y = PAGE_H - margin
    if spec.banner:
        c.setFont("Helvetica", 9)
        c.drawString(margin, y, spec.banner)
        y -= 24
    c.setFont("Helvetica-Bold", 16)
    for line in _wrap(spec.title, "Helvetica-Bold", 16, PAGE_W - 2 * margin, stringWidth):
        c.drawString(margin, y, line)
        y -= 20
    y -= 4
    c.setFont("Helvetica", 11)
    c.drawString(margin, y, ", ".join(spec.authors))
    y -= 24

    col = 0
    x = col_x[0]
    top_y = y

    def newline(dy=leading):
        nonlocal y, col, x, top_y
        y -= dy
        if y < margin:
            if spec.two_column and col == 0:
                col = 1
                x = col_x[1]
                y = top_y
            else:
                c.showPage()
                col = 0
                x = col_x[0]
                y = PAGE_H - margin
                top_y = y

    def emit_par(text, font="Helvetica", size=body_size, extra=0.0):
        nonlocal y
        c.setFont(font, size)
        for line in _wrap(text, font, size, col_w, stringWidth):
            c.setFont(font, size)
            c.drawString(x, y, line)
            newline()
        if extra:
            newline(extra)

    emit_par("Abstract", "Helvetica-Bold", 11)
    emit_par(spec.abstract, extra=6)
    for heading, paragraphs in spec.sections:
        emit_par(heading, "Helvetica-Bold", 12, extra=2)
        for par in paragraphs:
            emit_par(par, extra=6)
    for caption in spec.captions:
        emit_par(caption, "Helvetica", 9, extra=8)
    if spec.references:
        emit_par("References", "Helvetica-Bold", 12, extra=2)
        for ref in spec.references:
            emit_par(ref, size=9, extra=3)
    c.showPage()
    c.save()
    return buf.getvalue()
