"""Layout analysis: text items -> lines -> columns -> blocks in reading order."""

from __future__ import annotations

import statistics
from dataclasses import dataclass

from ..pdfparse.model import Page, ParsedPdf, TextItem
from .model import Block, CharSource, Line


@dataclass
class LayoutConfig:
    line_join_factor: float = 0.4  # max vertical-center gap, in font sizes
    block_gap_factor: float = 1.8  # new block when line gap exceeds this x leading
    word_gap_factor: float = 0.25  # insert a space when x gap exceeds this x size
    segment_gap_factor: float = 2.0  # split a line at x gaps beyond this x size
    column_valley_ratio: float = 0.2  # bimodal histogram valley threshold
    repeat_band: float = 6.0  # y tolerance for header/footer repetition
    repeat_page_fraction: float = 0.6


def _item_center(item: TextItem) -> float:
    return (item.bbox[1] + item.bbox[3]) / 2.0


def _assemble_line(
    page: Page, indices: list[int], cfg: LayoutConfig
) -> Line:
    indices = sorted(indices, key=lambda i: page.items[i].bbox[0])
    items = [page.items[i] for i in indices]
    text_parts: list[str] = []
    sources: list[CharSource] = []
    prev_x1 = None
    for idx, item in zip(indices, items):
        if prev_x1 is not None:
            gap = item.bbox[0] - prev_x1
            if gap > cfg.word_gap_factor * max(item.font_size, 1.0) and (
                not text_parts or not text_parts[-1].endswith(" ")
            ):
                text_parts.append(" ")
                sources.append(sources[-1])
        for off, _ch in enumerate(item.text):
            sources.append((page.number, idx, off))
        text_parts.append(item.text)
        prev_x1 = item.bbox[2]
    text = "".join(text_parts)
    sizes = [i.font_size for i in items]
    return Line(
        page=page.number,
        items=items,
        item_indices=indices,
        text=text,
        sources=sources,
        x0=min(i.bbox[0] for i in items),
        y=statistics.fmean(_item_center(i) for i in items),
        font_size=max(sizes),
    )


def build_lines(page: Page, cfg: LayoutConfig) -> list[Line]:
    """Group a page's items into lines by vertical-center proximity."""
    order = sorted(range(len(page.items)), key=lambda i: (-_item_center(page.items[i]), page.items[i].bbox[0]))
    lines: list[list[int]] = []
    centers: list[float] = []
    for i in order:
        item = page.items[i]
        c = _item_center(item)
        tol = cfg.line_join_factor * max(item.font_size, 1.0)
        if lines and abs(centers[-1] - c) < tol:
            lines[-1].append(i)
            centers[-1] = (centers[-1] * (len(lines[-1]) - 1) + c) / len(lines[-1])
        else:
            lines.append([i])
            centers.append(c)
    out: list[Line] = []
    for group in lines:
        # split at gutter-sized horizontal gaps (e.g. across columns)
        group = sorted(group, key=lambda i: page.items[i].bbox[0])
        segment = [group[0]]
        for prev, nxt in zip(group, group[1:]):
            gap = page.items[nxt].bbox[0] - page.items[prev].bbox[2]
            limit = cfg.segment_gap_factor * max(page.items[nxt].font_size, 6.0)
            if gap > limit:
                out.append(_assemble_line(page, segment, cfg))
                segment = [nxt]
            else:
                segment.append(nxt)
        out.append(_assemble_line(page, segment, cfg))
    return out


def detect_columns(lines: list[Line], page_width: float, cfg: LayoutConfig) -> float | None:
    """Return the x split point for a two-column page, else None.

    Histogram of line-start midpoints; bimodal with a valley below
    `column_valley_ratio` of the smaller peak means two columns.
    """
    if len(lines) < 6:
        return None
    bins = 24
    hist = [0] * bins
    for ln in lines:
        b = min(bins - 1, max(0, int(ln.x0 / page_width * bins)))
        hist[b] += 1
    # find the two largest separated peaks
    peak1 = max(range(bins), key=lambda i: hist[i])
    candidates = [i for i in range(bins) if abs(i - peak1) >= 4]
    if not candidates:
        return None
    peak2 = max(candidates, key=lambda i: hist[i])
    if hist[peak2] < 2:
        return None
    lo, hi = sorted((peak1, peak2))
    valley = min(hist[lo + 1 : hi]) if hi - lo > 1 else hist[lo]
    if valley <= cfg.column_valley_ratio * min(hist[peak1], hist[peak2]):
        valley_bin = min(range(lo + 1, hi), key=lambda i: hist[i])
        return (valley_bin + 0.5) / bins * page_width
    return None


def _split_blocks(page_num: int, lines: list[Line], column: int, cfg: LayoutConfig) -> list[Block]:
    if not lines:
        return []
    gaps = [lines[i].y - lines[i + 1].y for i in range(len(lines) - 1)]
    positive = [g for g in gaps if g > 0.5]
    leading = statistics.median(positive) if positive else 12.0
    blocks: list[Block] = []
    current = [lines[0]]
    for prev, nxt in zip(lines, lines[1:]):
        if prev.y - nxt.y > cfg.block_gap_factor * leading:
            blocks.append(Block(page=page_num, lines=current, column=column))
            current = [nxt]
        else:
            current.append(nxt)
    blocks.append(Block(page=page_num, lines=current, column=column))
    return blocks


def assemble_blocks(doc: ParsedPdf, cfg: LayoutConfig | None = None) -> list[Block]:
    """Blocks in reading order; column-major on two-column pages."""
    cfg = cfg or LayoutConfig()
    out: list[Block] = []
    for page in doc.pages:
        if not page.items:
            continue
        lines = build_lines(page, cfg)
        split = detect_columns(lines, page.width, cfg)
        if split is None:
            ordered = sorted(lines, key=lambda ln: -ln.y)
            out.extend(_split_blocks(page.number, ordered, 0, cfg))
        else:
            # full-width lines (spanning the split) come first, in y order
            spanning = [ln for ln in lines if ln.x0 < split and ln.bbox[2] > split + 20]
            left = [ln for ln in lines if ln not in spanning and ln.x0 < split]
            right = [ln for ln in lines if ln not in spanning and ln.x0 >= split]
            for group, col in ((spanning, 0), (left, 0), (right, 1)):
                ordered = sorted(group, key=lambda ln: -ln.y)
                out.extend(_split_blocks(page.number, ordered, col, cfg))
    return out
