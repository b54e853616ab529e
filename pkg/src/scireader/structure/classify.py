"""Role classification: blocks -> StructuredDoc with flattened text + charmap."""

from __future__ import annotations

import re
from collections import Counter
from importlib import resources

from ..pdfparse.model import Diagnostic, DocMeta
from ..textutils import title_similarity
from .blocks import LayoutConfig
from .model import (
    AuthorMention,
    Block,
    CharSource,
    Line,
    RefLine,
    Section,
    StructuredDoc,
)


class EmptyDocument(Exception):
    pass


REFERENCE_HEADINGS = {"references", "bibliography", "参考文献"}
_NUMBERED_HEADING_RE = re.compile(r"^(\d+(?:\.\d+)*)[.\s]+\S")
_HEADING_WORDS = {
    "abstract",
    "introduction",
    "related work",
    "conclusion",
    "acknowledgments",
    "acknowledgements",
    "appendix",
} | REFERENCE_HEADINGS


def _load_lexicon() -> set[str]:
    with resources.files("scireader.data").joinpath("wordlist.txt").open(
        "r", encoding="utf-8"
    ) as f:
        return {w.strip() for w in f if w.strip()}


_LEXICON = _load_lexicon()
_TOKEN_RE = re.compile(r"[A-Za-z]+")


def _heading_key(text: str) -> str:
    t = text.strip().rstrip(":.").strip().lower()
    t = _NUMBERED_HEADING_RE.sub(lambda m: "", t) if _NUMBERED_HEADING_RE.match(t) else t
    return re.sub(r"^\d+(?:\.\d+)*[.\s]+", "", text.strip().rstrip(":.")).strip().lower()


def _is_bold(line: Line) -> bool:
    return any("bold" in i.font_name.lower() for i in line.items)


def _is_heading(line: Line, body_size: float) -> bool:
    text = line.text.strip()
    if not text or len(text) > 90:
        return False
    if _heading_key(text) in _HEADING_WORDS:
        return True
    if _NUMBERED_HEADING_RE.match(text) and (
        _is_bold(line) or line.font_size > body_size + 0.5
    ):
        return True
    return _is_bold(line) and line.font_size > body_size + 0.5


def _heading_level(text: str) -> int:
    m = _NUMBERED_HEADING_RE.match(text.strip())
    if m:
        return m.group(1).count(".") + 1
    return 1


def join_lines(
    lines: list[Line], vocab: set[str]
) -> tuple[str, list[CharSource]]:
    """Join layout lines into flowing text, de-hyphenating line breaks.

    A line-final hyphen is removed only when the joined token is a known
    word (document vocabulary or bundled lexicon); otherwise the hyphen
    is kept and the lines join without a space.
    """
    chars: list[str] = []
    sources: list[CharSource] = []
    for line in lines:
        text, src = line.text, line.sources
        if chars and chars[-1] == "-":
            prev_tail = "".join(chars).rsplit(" ", 1)[-1][:-1]
            next_head = text.split(" ", 1)[0] if text else ""
            next_head = _TOKEN_RE.match(next_head)
            joined = (prev_tail + next_head.group(0)).lower() if next_head else ""
            if joined and (joined in vocab or joined in _LEXICON):
                chars.pop()
                sources.pop()
            # no space either way: the break was intra-word
        elif chars:
            chars.append(" ")
            sources.append(sources[-1])
        chars.extend(text)
        sources.extend(src)
    return "".join(chars), sources


def _drop_repeated_furniture(
    blocks: list[Block], page_count: int, cfg: LayoutConfig
) -> tuple[list[tuple[Line, int]], list[Diagnostic]]:
    """Flatten blocks to (line, block index), dropping headers/footers."""
    diagnostics: list[Diagnostic] = []
    flat: list[tuple[Line, int]] = []
    for bi, block in enumerate(blocks):
        for line in block.lines:
            flat.append((line, bi))
    if page_count >= 2:
        groups: Counter = Counter()
        for line, _ in flat:
            key = (line.text.strip(), round(line.y / cfg.repeat_band))
            groups[key] += 1
        drop_keys = {
            key
            for key, count in groups.items()
            if key[0] and count / page_count >= cfg.repeat_page_fraction and count >= 2
        }
        if drop_keys:
            kept = []
            for line, bi in flat:
                key = (line.text.strip(), round(line.y / cfg.repeat_band))
                if key in drop_keys:
                    diagnostics.append(
                        Diagnostic("furniture-dropped", line.page, line.text.strip())
                    )
                else:
                    kept.append((line, bi))
            flat = kept
    return flat, diagnostics


def _find_title_cluster(
    page1_lines: list[Line], meta: DocMeta
) -> list[Line]:
    """Largest-font consecutive line cluster on page 1, with metadata tie-break."""
    if not page1_lines:
        return []
    # maximal runs of consecutive lines sharing a font size
    clusters: list[list[Line]] = []
    current = [page1_lines[0]]
    for prev, nxt in zip(page1_lines, page1_lines[1:]):
        if abs(nxt.font_size - prev.font_size) < 0.5 and nxt.page == prev.page:
            current.append(nxt)
        else:
            clusters.append(current)
            current = [nxt]
    clusters.append(current)
    clusters = [c for c in clusters if c[0].page == page1_lines[0].page]

    def cluster_text(c: list[Line]) -> str:
        return " ".join(ln.text for ln in c)

    if meta.title:
        similar = [
            c for c in clusters if title_similarity(cluster_text(c), meta.title) >= 0.7
        ]
        if similar:
            return max(similar, key=lambda c: c[0].font_size)
    max_size = max(c[0].font_size for c in clusters)
    top = [c for c in clusters if abs(c[0].font_size - max_size) < 0.5]
    return max(top, key=lambda c: c[0].y)  # topmost


_AUTHOR_SPLIT_RE = re.compile(r",|\band\b|;|，")


def _parse_authors(header_text: str) -> list[AuthorMention]:
    mentions = []
    pos = 0
    for part in _AUTHOR_SPLIT_RE.split(header_text):
        start = header_text.find(part, pos)
        name = part.strip()
        if name and not name.isdigit():
            s = start + (len(part) - len(part.lstrip()))
            mentions.append(AuthorMention(name=name, start=s, end=s + len(name)))
        pos = start + len(part)
    return mentions


def classify_structure(
    blocks: list[Block], meta: DocMeta, cfg: LayoutConfig | None = None
) -> StructuredDoc:
    """Assign roles and build the structured document with its charmap."""
    cfg = cfg or LayoutConfig()
    page_count = meta.page_count or (max((b.page for b in blocks), default=0))
    flat, diagnostics = _drop_repeated_furniture(blocks, page_count, cfg)
    flat = [(ln, bi) for ln, bi in flat if ln.text.strip()]
    if not flat:
        raise EmptyDocument("no text content")

    vocab = set()
    for line, _ in flat:
        vocab.update(t.lower() for t in _TOKEN_RE.findall(line.text))

    # body size: most common font size weighted by text length
    size_weight: Counter = Counter()
    for line, _ in flat:
        size_weight[round(line.font_size * 2) / 2] += len(line.text)
    body_size = size_weight.most_common(1)[0][0]

    first_page = flat[0][0].page
    page1_lines = [ln for ln, _ in flat if ln.page == first_page]
    title_cluster = _find_title_cluster(page1_lines, meta)
    title_ids = {id(ln) for ln in title_cluster}
    title_text, title_sources = join_lines(title_cluster, vocab)
    if not title_text:
        title_text = meta.title or "(untitled)"
        title_sources = [flat[0][0].sources[0]] * len(title_text)

    # walk remaining lines in reading order
    header_lines: list[Line] = []
    abstract_pars: list[list[Line]] = []
    body_events: list[tuple[str, list[Line]]] = []  # ("heading"|"par", lines)
    ref_lines: list[RefLine] = []
    mode = "authors" if title_cluster else "body"
    seen_title = not title_cluster
    current_par: list[Line] = []
    current_block = None

    def flush_par() -> None:
        nonlocal current_par
        if not current_par:
            return
        if mode == "abstract":
            abstract_pars.append(current_par)
        elif mode == "body":
            body_events.append(("par", current_par))
        current_par = []

    i = 0
    lines_seq = flat
    while i < len(lines_seq):
        line, bi = lines_seq[i]
        i += 1
        if id(line) in title_ids:
            seen_title = True
            current_block = bi
            continue
        if not seen_title:
            # furniture above the title (e.g. a venue banner): ignore
            current_block = bi
            continue
        if mode == "refs":
            if _is_heading(line, body_size) and _heading_key(line.text) not in REFERENCE_HEADINGS:
                mode = "body"
                # fall through to heading handling below
            else:
                ref_lines.append(RefLine(text=line.text, x0=line.x0, page=line.page))
                continue
        if mode == "authors":
            key = _heading_key(line.text)
            if (
                _is_heading(line, body_size)
                or len(header_lines) >= 3
                or line.page != first_page
            ):
                mode = "abstract" if key == "abstract" else "body"
                if key == "abstract":
                    continue
            else:
                header_lines.append(line)
                continue
        if _is_heading(line, body_size):
            flush_par()
            key = _heading_key(line.text)
            if key == "abstract":
                mode = "abstract"
                continue
            if key in REFERENCE_HEADINGS:
                mode = "refs"
                continue
            mode = "body"
            body_events.append(("heading", [line]))
            current_block = bi
            continue
        if bi != current_block:
            flush_par()
            current_block = bi
        current_par.append(line)
    flush_par()

    header_text, header_sources = join_lines(header_lines, vocab)
    authors = _parse_authors(header_text)

    # assemble flattened text: title ++ abstract ++ headings/paragraphs
    chars: list[str] = []
    sources: list[CharSource] = []

    def append(text: str, src: list[CharSource]) -> tuple[int, int]:
        start = len(chars)
        chars.extend(text)
        sources.extend(src)
        if chars:
            chars.append("\n")
            sources.append(sources[-1] if sources else (1, 0, 0))
        return (start, start + len(text))

    append(title_text, title_sources)
    abs_parts = [join_lines(par, vocab) for par in abstract_pars]
    abstract_text = " ".join(t for t, _ in abs_parts)
    abs_sources: list[CharSource] = []
    for j, (t, s) in enumerate(abs_parts):
        if j:
            abs_sources.append(abs_sources[-1])
        abs_sources.extend(s)
    abstract_range = append(abstract_text, abs_sources)

    sections: list[Section] = []
    for kind, ev_lines in body_events:
        text, src = join_lines(ev_lines, vocab)
        if kind == "heading":
            rng = append(text, src)
            sections.append(
                Section(
                    heading=text,
                    level=_heading_level(text),
                    heading_range=rng,
                )
            )
        else:
            rng = append(text, src)
            if not sections:
                sections.append(Section(heading="", level=0))
            sections[-1].paragraphs.append(text)
            sections[-1].paragraph_ranges.append(rng)

    flat_text = "".join(chars)
    return StructuredDoc(
        title=title_text,
        authors=authors,
        header_text=header_text,
        header_charmap=header_sources,
        abstract=abstract_text,
        abstract_range=abstract_range,
        sections=sections,
        references=[],
        anchors=[],
        flat_text=flat_text,
        charmap=sources,
        reference_lines=ref_lines,
        diagnostics=diagnostics,
    )
