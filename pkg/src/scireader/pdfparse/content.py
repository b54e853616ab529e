"""Content stream interpreter: emits one TextItem per show-text operator."""

from __future__ import annotations

from typing import Optional

from .document import PdfFile
from .errors import NotAPdf, UnsupportedFeature
from .fonts import FontDecoder, build_font_decoder
from .model import Diagnostic, TextItem
from .objects import Lexer, parse_object

Matrix = tuple[float, float, float, float, float, float]
IDENTITY: Matrix = (1.0, 0.0, 0.0, 1.0, 0.0, 0.0)


def mat_mul(m: Matrix, n: Matrix) -> Matrix:
    a, b, c, d, e, f = m
    a2, b2, c2, d2, e2, f2 = n
    return (
        a * a2 + b * c2,
        a * b2 + b * d2,
        c * a2 + d * c2,
        c * b2 + d * d2,
        e * a2 + f * c2 + e2,
        e * b2 + f * d2 + f2,
    )


def apply(m: Matrix, x: float, y: float) -> tuple[float, float]:
    a, b, c, d, e, f = m
    return (a * x + c * y + e, b * x + d * y + f)


class TextExtractor:
    """Runs a page's content stream and collects positioned text items."""

    def __init__(self, pdf: PdfFile, page: dict, page_number: int):
        self.pdf = pdf
        self.page = page
        self.page_number = page_number
        self.items: list[TextItem] = []
        self.diagnostics: list[Diagnostic] = []
        self._fonts: dict[str, FontDecoder] = {}

    def _font(self, res_name: str) -> FontDecoder:
        if res_name not in self._fonts:
            resources = self.pdf.resolve(self.page.get("Resources")) or {}
            font_dict = self.pdf.resolve(resources.get("Font")) or {}
            font_obj = font_dict.get(res_name)
            if font_obj is None:
                dec = FontDecoder(res_name)
            else:
                try:
                    dec = build_font_decoder(self.pdf, font_obj, res_name)
                except UnsupportedFeature as exc:
                    self.diagnostics.append(
                        Diagnostic("unsupported-font", self.page_number, str(exc))
                    )
                    dec = FontDecoder(res_name)
            self._fonts[res_name] = dec
        return self._fonts[res_name]

    def run(self, stream: bytes) -> None:
        lex = Lexer(stream, 0)
        stack: list = []
        ctm_stack: list[Matrix] = []
        ctm: Matrix = IDENTITY
        tm: Matrix = IDENTITY
        tlm: Matrix = IDENTITY
        font: Optional[FontDecoder] = None
        size = 0.0
        leading = 0.0
        char_spacing = 0.0
        word_spacing = 0.0
        hscale = 1.0
        n = len(stream)

        def next_line(ty: float) -> None:
            nonlocal tm, tlm
            tlm = mat_mul((1, 0, 0, 1, 0, ty), tlm)
            tm = tlm

        def show(raw: bytes) -> None:
            nonlocal tm
            if font is None or not isinstance(raw, bytes):
                return
            text_parts: list[str] = []
            width = 0.0
            for glyph_text, gw in font.decode(raw):
                text_parts.append(glyph_text)
                adv = gw / 1000.0 * size + char_spacing
                if not font.two_byte and glyph_text == " ":
                    adv += word_spacing
                width += adv * hscale
            text = "".join(text_parts)
            if not text:
                return
            self._emit(text, width, tm, ctm, font, size)
            tm = mat_mul((1, 0, 0, 1, width, 0), tm)

        while True:
            lex._skip_ws()
            if lex.pos >= n:
                break
            c = stream[lex.pos]
            if c in b"/(<[" or c in b"+-." or 0x30 <= c <= 0x39:
                try:
                    stack.append(parse_object(lex))
                except NotAPdf:
                    break
                continue
            op = lex.read_token().decode("latin-1", "replace")
            try:
                if op == "q":
                    ctm_stack.append(ctm)
                elif op == "Q":
                    ctm = ctm_stack.pop() if ctm_stack else IDENTITY
                elif op == "cm" and len(stack) >= 6:
                    ctm = mat_mul(tuple(float(v) for v in stack[-6:]), ctm)
                elif op == "BT":
                    tm = tlm = IDENTITY
                elif op == "ET":
                    pass
                elif op == "Tf" and len(stack) >= 2:
                    size = float(stack[-1])
                    font = self._font(str(stack[-2]))
                elif op == "Td" and len(stack) >= 2:
                    tlm = mat_mul((1, 0, 0, 1, float(stack[-2]), float(stack[-1])), tlm)
                    tm = tlm
                elif op == "TD" and len(stack) >= 2:
                    leading = -float(stack[-1])
                    tlm = mat_mul((1, 0, 0, 1, float(stack[-2]), float(stack[-1])), tlm)
                    tm = tlm
                elif op == "Tm" and len(stack) >= 6:
                    tm = tlm = tuple(float(v) for v in stack[-6:])
                elif op == "T*":
                    next_line(-leading)
                elif op == "TL":
                    leading = float(stack[-1])
                elif op == "Tc":
                    char_spacing = float(stack[-1])
                elif op == "Tw":
                    word_spacing = float(stack[-1])
                elif op == "Tz":
                    hscale = float(stack[-1]) / 100.0
                elif op == "Tj" and stack:
                    show(stack[-1])
                elif op == "'" and stack:
                    next_line(-leading)
                    show(stack[-1])
                elif op == '"' and len(stack) >= 3:
                    word_spacing = float(stack[-3])
                    char_spacing = float(stack[-2])
                    next_line(-leading)
                    show(stack[-1])
                elif op == "TJ" and stack and isinstance(stack[-1], list):
                    for element in stack[-1]:
                        if isinstance(element, bytes):
                            show(element)
                        elif isinstance(element, (int, float)):
                            tx = -float(element) / 1000.0 * size * hscale
                            tm = mat_mul((1, 0, 0, 1, tx, 0), tm)
                elif op == "BI":
                    # inline image: skip to EI
                    idx = stream.find(b"EI", lex.pos)
                    lex.pos = len(stream) if idx < 0 else idx + 2
            except (TypeError, ValueError, IndexError):
                self.diagnostics.append(
                    Diagnostic("bad-operator", self.page_number, op)
                )
            stack.clear()

        for dec in self._fonts.values():
            if dec.missing:
                self.diagnostics.append(
                    Diagnostic(
                        "unmapped-glyphs",
                        self.page_number,
                        f"{dec.name}: {dec.missing} code(s) without unicode mapping",
                    )
                )

    def _emit(
        self,
        text: str,
        width: float,
        tm: Matrix,
        ctm: Matrix,
        font: FontDecoder,
        size: float,
    ) -> None:
        trm = mat_mul(tm, ctm)
        y0 = font.descent * size
        y1 = font.ascent * size
        corners = [
            apply(trm, 0.0, y0),
            apply(trm, width, y0),
            apply(trm, 0.0, y1),
            apply(trm, width, y1),
        ]
        xs = [p[0] for p in corners]
        ys = [p[1] for p in corners]
        # effective size under the transform (uniform scale assumed for ranking)
        a, b, _, _, _, _ = trm
        scale = (a * a + b * b) ** 0.5
        self.items.append(
            TextItem(
                text=text,
                bbox=(min(xs), min(ys), max(xs), max(ys)),
                font_size=size * scale,
                font_name=font.name,
            )
        )
