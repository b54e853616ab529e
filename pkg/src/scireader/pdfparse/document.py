"""Cross-reference parsing and object access for a PDF file.

Supports classic xref tables and cross-reference streams (including
object streams), which together cover PDF 1.4-1.7 files as produced by
common scientific-paper toolchains.
"""

from __future__ import annotations

import re
from typing import Any, Optional

from .errors import EncryptedUnsupported, NotAPdf
from .filters import decode_stream
from .objects import Lexer, Name, Ref, parse_object

_STARTXREF_RE = re.compile(rb"startxref\s+(\d+)\s*%%EOF", re.S)
_OBJ_HEAD_RE = re.compile(rb"(\d+)\s+(\d+)\s+obj\b")


def decode_text_string(raw: bytes) -> str:
    """Decode a PDF text string (UTF-16BE with BOM, else PDFDocEncoding)."""
    if raw[:2] in (b"\xfe\xff", b"\xff\xfe"):
        try:
            return raw.decode("utf-16")
        except UnicodeDecodeError:
            return raw.decode("utf-16", "replace")
    return raw.decode("latin-1")


class PdfFile:
    """Random-access object store over raw PDF bytes."""

    def __init__(self, data: bytes):
        if not data.lstrip()[:5].startswith(b"%PDF-"):
            raise NotAPdf("missing %PDF header")
        self.data = data
        self.xref: dict[int, tuple] = {}  # objnum -> ("o", offset) | ("c", stmnum, idx)
        self.trailer: dict = {}
        self._cache: dict[int, Any] = {}
        self._objstm_cache: dict[int, list] = {}
        self._load_xref()
        if "Encrypt" in self.trailer:
            raise EncryptedUnsupported("document has an /Encrypt dictionary")

    # -- xref loading ---------------------------------------------------

    def _load_xref(self) -> None:
        tail = self.data[-2048:]
        m = None
        for m in _STARTXREF_RE.finditer(tail):
            pass
        if m is None:
            raise NotAPdf("startxref not found")
        offset = int(m.group(1))
        seen: set[int] = set()
        while offset and offset not in seen:
            seen.add(offset)
            offset = self._load_xref_section(offset)

    def _load_xref_section(self, offset: int) -> Optional[int]:
        if offset < 0 or offset >= len(self.data):
            raise NotAPdf("xref offset out of range")
        lex = Lexer(self.data, offset)
        if lex.peek_bytes(4) == b"xref":
            return self._load_classic_table(lex)
        return self._load_xref_stream(lex)

    def _load_classic_table(self, lex: Lexer) -> Optional[int]:
        lex.read_token()  # 'xref'
        while True:
            tok = lex.read_token()
            if tok == b"trailer":
                break
            try:
                start = int(tok)
                count = int(lex.read_token())
            except ValueError as exc:
                raise NotAPdf("malformed xref subsection") from exc
            for i in range(count):
                off = lex.read_token()
                gen = lex.read_token()
                kind = lex.read_token()
                if kind == b"n":
                    self.xref.setdefault(start + i, ("o", int(off)))
                elif kind != b"f":
                    raise NotAPdf("malformed xref entry")
        trailer = parse_object(lex)
        if not isinstance(trailer, dict):
            raise NotAPdf("malformed trailer")
        for k, v in trailer.items():
            self.trailer.setdefault(k, v)
        if "XRefStm" in trailer:  # hybrid-reference file
            self._load_xref_section(int(trailer["XRefStm"]))
        prev = trailer.get("Prev")
        return int(prev) if prev is not None else None

    def _load_xref_stream(self, lex: Lexer) -> Optional[int]:
        m = _OBJ_HEAD_RE.match(self.data, lex.pos) or _OBJ_HEAD_RE.match(
            self.data, Lexer(self.data, lex.pos).pos
        )
        stm_dict, raw = self._parse_stream_at(lex.pos)
        if str(stm_dict.get("Type", "")) != "XRef":
            raise NotAPdf("expected xref stream")
        data = decode_stream(raw, stm_dict, self.resolve)
        w = [int(x) for x in stm_dict["W"]]
        size = int(stm_dict["Size"])
        index = stm_dict.get("Index", [0, size])
        index = [int(x) for x in index]
        entry_len = sum(w)
        pos = 0

        def read_field(buf, width, default):
            if width == 0:
                return default
            return int.from_bytes(buf[:width], "big")

        for i in range(0, len(index), 2):
            start, count = index[i], index[i + 1]
            for j in range(count):
                entry = data[pos : pos + entry_len]
                pos += entry_len
                if len(entry) < entry_len:
                    raise NotAPdf("truncated xref stream")
                p = 0
                ftype = read_field(entry, w[0], 1)
                p += w[0]
                f2 = read_field(entry[p:], w[1], 0)
                p += w[1]
                f3 = read_field(entry[p:], w[2], 0)
                objnum = start + j
                if ftype == 1:
                    self.xref.setdefault(objnum, ("o", f2))
                elif ftype == 2:
                    self.xref.setdefault(objnum, ("c", f2, f3))
        for k, v in stm_dict.items():
            self.trailer.setdefault(k, v)
        prev = stm_dict.get("Prev")
        return int(prev) if prev is not None else None

    # -- object access --------------------------------------------------

    def _parse_stream_at(self, offset: int) -> tuple[dict, bytes]:
        """Parse `n g obj <<...>> stream...endstream` at offset; returns (dict, raw)."""
        m = _OBJ_HEAD_RE.match(self.data, offset)
        if not m:
            # tolerate leading whitespace
            lex = Lexer(self.data, offset)
            lex._skip_ws()
            m = _OBJ_HEAD_RE.match(self.data, lex.pos)
            if not m:
                raise NotAPdf("expected indirect object")
        lex = Lexer(self.data, m.end())
        obj = parse_object(lex)
        if not isinstance(obj, dict):
            raise NotAPdf("expected stream dictionary")
        lex._skip_ws()
        if self.data[lex.pos : lex.pos + 6] != b"stream":
            raise NotAPdf("expected stream keyword")
        pos = lex.pos + 6
        if self.data[pos : pos + 2] == b"\r\n":
            pos += 2
        elif self.data[pos : pos + 1] in (b"\n", b"\r"):
            pos += 1
        length = self.resolve(obj.get("Length"))
        if not isinstance(length, int):
            raise NotAPdf("stream /Length missing")
        return obj, self.data[pos : pos + length]

    def _load_object(self, num: int) -> Any:
        entry = self.xref.get(num)
        if entry is None:
            return None
        if entry[0] == "o":
            offset = entry[1]
            m = _OBJ_HEAD_RE.match(self.data, offset)
            if not m:
                lex = Lexer(self.data, offset)
                lex._skip_ws()
                m = _OBJ_HEAD_RE.match(self.data, lex.pos)
            if not m or int(m.group(1)) != num:
                raise NotAPdf(f"object {num} not found at xref offset")
            lex = Lexer(self.data, m.end())
            obj = parse_object(lex)
            if isinstance(obj, dict):
                lex._skip_ws()
                if self.data[lex.pos : lex.pos + 6] == b"stream":
                    return StreamObject(obj, self._stream_raw(obj, lex.pos + 6), self)
            return obj
        # compressed object inside an object stream
        _, stm_num, idx = entry
        objs = self._load_objstm(stm_num)
        if idx >= len(objs):
            raise NotAPdf("object stream index out of range")
        return objs[idx]

    def _stream_raw(self, stream_dict: dict, after_keyword: int) -> bytes:
        pos = after_keyword
        if self.data[pos : pos + 2] == b"\r\n":
            pos += 2
        elif self.data[pos : pos + 1] in (b"\n", b"\r"):
            pos += 1
        length = self.resolve(stream_dict.get("Length"))
        if not isinstance(length, int):
            raise NotAPdf("stream /Length missing")
        return self.data[pos : pos + length]

    def _load_objstm(self, num: int) -> list:
        if num in self._objstm_cache:
            return self._objstm_cache[num]
        stm = self.get_object(num)
        if not isinstance(stm, StreamObject) or str(stm.dict.get("Type", "")) != "ObjStm":
            raise NotAPdf(f"object {num} is not an object stream")
        data = stm.decoded()
        n = int(self.resolve(stm.dict["N"]))
        first = int(self.resolve(stm.dict["First"]))
        head = Lexer(data, 0)
        offsets = []
        for _ in range(n):
            onum = int(head.read_token())
            ooff = int(head.read_token())
            offsets.append((onum, ooff))
        objs = []
        for _, ooff in offsets:
            objs.append(parse_object(Lexer(data, first + ooff)))
        self._objstm_cache[num] = objs
        return objs

    def get_object(self, num: int) -> Any:
        if num not in self._cache:
            self._cache[num] = self._load_object(num)
        return self._cache[num]

    def resolve(self, obj: Any) -> Any:
        seen = 0
        while isinstance(obj, Ref):
            obj = self.get_object(obj.num)
            seen += 1
            if seen > 32:
                raise NotAPdf("reference cycle")
        return obj

    # -- document structure ---------------------------------------------

    def catalog(self) -> dict:
        root = self.resolve(self.trailer.get("Root"))
        if not isinstance(root, dict):
            raise NotAPdf("missing document catalog")
        return root

    def info(self) -> dict:
        info = self.resolve(self.trailer.get("Info"))
        return info if isinstance(info, dict) else {}

    def page_dicts(self) -> list[dict]:
        """Flatten the page tree, applying attribute inheritance."""
        catalog = self.catalog()
        pages_root = self.resolve(catalog.get("Pages"))
        if not isinstance(pages_root, dict):
            raise NotAPdf("missing page tree")
        out: list[dict] = []
        inheritable = ("Resources", "MediaBox", "CropBox", "Rotate")

        def walk(node: dict, inherited: dict, depth: int) -> None:
            if depth > 64:
                raise NotAPdf("page tree too deep")
            node_type = str(self.resolve(node.get("Type", "")))
            inh = dict(inherited)
            for key in inheritable:
                if key in node:
                    inh[key] = node[key]
            if node_type == "Page" or ("Kids" not in node and node_type != "Pages"):
                page = dict(node)
                for key in inheritable:
                    page.setdefault(key, inh.get(key))
                out.append(page)
                return
            kids = self.resolve(node.get("Kids")) or []
            for kid in kids:
                kid = self.resolve(kid)
                if isinstance(kid, dict):
                    walk(kid, inh, depth + 1)

        walk(pages_root, {}, 0)
        if not out:
            raise NotAPdf("document has no pages")
        return out

    def page_object_numbers(self) -> list[Optional[int]]:
        """Object number of each page, in page order (for dest resolution)."""
        catalog = self.catalog()
        pages_root = catalog.get("Pages")
        nums: list[Optional[int]] = []

        def walk(ref: Any, depth: int) -> None:
            if depth > 64:
                return
            node = self.resolve(ref)
            if not isinstance(node, dict):
                return
            node_type = str(self.resolve(node.get("Type", "")))
            if node_type == "Page" or ("Kids" not in node and node_type != "Pages"):
                nums.append(ref.num if isinstance(ref, Ref) else None)
                return
            for kid in self.resolve(node.get("Kids")) or []:
                walk(kid, depth + 1)

        walk(pages_root, 0)
        return nums

    def page_contents(self, page: dict) -> bytes:
        contents = self.resolve(page.get("Contents"))
        if contents is None:
            return b""
        if isinstance(contents, StreamObject):
            return contents.decoded()
        if isinstance(contents, list):
            parts = []
            for c in contents:
                c = self.resolve(c)
                if isinstance(c, StreamObject):
                    parts.append(c.decoded())
            return b"\n".join(parts)
        return b""


class StreamObject:
    """An indirect stream object with lazy filter decoding."""

    def __init__(self, stream_dict: dict, raw: bytes, pdf: PdfFile):
        self.dict = stream_dict
        self.raw = raw
        self._pdf = pdf
        self._decoded: Optional[bytes] = None

    def decoded(self) -> bytes:
        if self._decoded is None:
            self._decoded = decode_stream(self.raw, self.dict, self._pdf.resolve)
        return self._decoded

    def __repr__(self) -> str:
        return f"StreamObject({self.dict.get('Type')}, {len(self.raw)} bytes)"
