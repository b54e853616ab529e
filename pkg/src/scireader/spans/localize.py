"""Resolve character ranges of the flattened text to page boxes."""

from __future__ import annotations

from ..pdfparse.model import ParsedPdf
from ..structure.model import CharSource, StructuredDoc
from .model import PageBox


class RangeOutOfBounds(Exception):
    pass


def _boxes_for_sources(
    doc: ParsedPdf, sources: list[CharSource]
) -> list[PageBox]:
    # contiguous runs within one text item -> interpolated sub-box
    raw: list[PageBox] = []
    run_start = 0
    for i in range(1, len(sources) + 1):
        boundary = (
            i == len(sources)
            or sources[i][:2] != sources[i - 1][:2]
            or sources[i][2] != sources[i - 1][2] + 1
        )
        if not boundary:
            continue
        page, item_idx, off0 = sources[run_start]
        off1 = sources[i - 1][2] + 1
        item = doc.pages[page - 1].items[item_idx]
        x0, y0, x1, y1 = item.bbox
        n = max(1, len(item.text))
        # character-proportional interpolation inside the item
        fx0 = x0 + (x1 - x0) * off0 / n
        fx1 = x0 + (x1 - x0) * off1 / n
        raw.append((page, (fx0, y0, fx1, y1)))
        run_start = i
    # merge fragments that sit on the same visual line of the same page
    merged: list[PageBox] = []
    for page, box in raw:
        if merged:
            mpage, mbox = merged[-1]
            same_line = (
                mpage == page
                and min(mbox[3], box[3]) - max(mbox[1], box[1])
                > 0.5 * min(mbox[3] - mbox[1], box[3] - box[1])
            )
            if same_line:
                merged[-1] = (
                    page,
                    (
                        min(mbox[0], box[0]),
                        min(mbox[1], box[1]),
                        max(mbox[2], box[2]),
                        max(mbox[3], box[3]),
                    ),
                )
                continue
        merged.append((page, box))
    return merged


def localize(
    start: int, end: int, sdoc: StructuredDoc, doc: ParsedPdf
) -> list[PageBox]:
    """Page boxes covering flat-text range [start, end); one box per line."""
    if start < 0 or end > len(sdoc.flat_text) or start > end:
        raise RangeOutOfBounds(f"[{start}, {end}) not within flattened text")
    if start == end:
        return []
    return _boxes_for_sources(doc, sdoc.charmap[start:end])


def localize_header(
    start: int, end: int, sdoc: StructuredDoc, doc: ParsedPdf
) -> list[PageBox]:
    """Like localize, but over the header region (title/author block)."""
    if start < 0 or end > len(sdoc.header_text) or start > end:
        raise RangeOutOfBounds(f"[{start}, {end}) not within header text")
    if start == end:
        return []
    return _boxes_for_sources(doc, sdoc.header_charmap[start:end])
