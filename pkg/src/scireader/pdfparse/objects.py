"""Tokenizer and object parser for the PDF syntax (COS objects).

Names are represented as `Name` (a str subclass), strings as raw bytes,
dictionaries as plain dicts keyed by the name without the leading slash,
and indirect references as `Ref` tuples.
"""

from __future__ import annotations

import re
from typing import Any, NamedTuple

from .errors import NotAPdf

WHITESPACE = b"\x00\t\n\x0c\r "
DELIMITERS = b"()<>[]{}/%"


class Name(str):
    """A PDF name object, e.g. /Type."""

    __slots__ = ()


class Ref(NamedTuple):
    num: int
    gen: int


class Lexer:
    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def _skip_ws(self) -> None:
        data, n = self.data, len(self.data)
        while self.pos < n:
            c = data[self.pos]
            if c in WHITESPACE:
                self.pos += 1
            elif c == 0x25:  # % comment to end of line
                while self.pos < n and data[self.pos] not in b"\r\n":
                    self.pos += 1
            else:
                return

    def peek_bytes(self, n: int) -> bytes:
        self._skip_ws()
        return self.data[self.pos : self.pos + n]

    def read_token(self) -> bytes:
        """Return the next regular token (not strings/dicts; raw word)."""
        self._skip_ws()
        data, n = self.data, len(self.data)
        if self.pos >= n:
            raise NotAPdf("unexpected end of data")
        c = data[self.pos]
        if c in DELIMITERS:
            if data[self.pos : self.pos + 2] in (b"<<", b">>"):
                self.pos += 2
                return data[self.pos - 2 : self.pos]
            self.pos += 1
            return bytes([c])
        start = self.pos
        while self.pos < n and data[self.pos] not in WHITESPACE and data[self.pos] not in DELIMITERS:
            self.pos += 1
        return data[start : self.pos]


_NUM_RE = re.compile(rb"^[+-]?(\d+\.?\d*|\.\d+)$")


def _parse_literal_string(lex: Lexer) -> bytes:
    # caller consumed "("
    data, n = lex.data, len(lex.data)
    out = bytearray()
    depth = 1
    while lex.pos < n:
        c = data[lex.pos]
        lex.pos += 1
        if c == 0x5C:  # backslash
            if lex.pos >= n:
                break
            e = data[lex.pos]
            lex.pos += 1
            if e in b"nrtbf":
                out += {0x6E: b"\n", 0x72: b"\r", 0x74: b"\t", 0x62: b"\b", 0x66: b"\f"}[e]
            elif e in b"()\\":
                out.append(e)
            elif e in b"01234567":
                oct_digits = bytes([e])
                while lex.pos < n and len(oct_digits) < 3 and data[lex.pos] in b"01234567":
                    oct_digits += bytes([data[lex.pos]])
                    lex.pos += 1
                out.append(int(oct_digits, 8) & 0xFF)
            elif e in b"\r\n":  # line continuation
                if e == 0x0D and lex.pos < n and data[lex.pos] == 0x0A:
                    lex.pos += 1
            else:
                out.append(e)
        elif c == 0x28:
            depth += 1
            out.append(c)
        elif c == 0x29:
            depth -= 1
            if depth == 0:
                return bytes(out)
            out.append(c)
        else:
            out.append(c)
    raise NotAPdf("unterminated string")


def _parse_hex_string(lex: Lexer) -> bytes:
    # caller consumed "<"
    data, n = lex.data, len(lex.data)
    digits = bytearray()
    while lex.pos < n:
        c = data[lex.pos]
        lex.pos += 1
        if c == 0x3E:  # >
            if len(digits) % 2:
                digits += b"0"
            return bytes.fromhex(digits.decode("ascii"))
        if c in b"0123456789abcdefABCDEF":
            digits.append(c)
        elif c in WHITESPACE:
            continue
        else:
            raise NotAPdf("bad hex string")
    raise NotAPdf("unterminated hex string")


def _parse_name(lex: Lexer) -> Name:
    # caller consumed "/"
    data, n = lex.data, len(lex.data)
    out = bytearray()
    while lex.pos < n:
        c = data[lex.pos]
        if c in WHITESPACE or c in DELIMITERS:
            break
        lex.pos += 1
        if c == 0x23 and lex.pos + 1 < n:  # #xx escape
            hexpair = data[lex.pos : lex.pos + 2]
            try:
                out.append(int(hexpair, 16))
                lex.pos += 2
                continue
            except ValueError:
                pass
        out.append(c)
    return Name(out.decode("latin-1"))


def parse_object(lex: Lexer) -> Any:
    """Parse the next object, resolving `n g R` into Ref."""
    lex._skip_ws()
    data, n = lex.data, len(lex.data)
    if lex.pos >= n:
        raise NotAPdf("unexpected end of data")
    c = data[lex.pos]
    if c == 0x2F:  # /
        lex.pos += 1
        return _parse_name(lex)
    if c == 0x28:  # (
        lex.pos += 1
        return _parse_literal_string(lex)
    if c == 0x3C:  # < or <<
        if data[lex.pos : lex.pos + 2] == b"<<":
            lex.pos += 2
            return _parse_dict_body(lex)
        lex.pos += 1
        return _parse_hex_string(lex)
    if c == 0x5B:  # [
        lex.pos += 1
        arr = []
        while True:
            lex._skip_ws()
            if lex.pos < n and data[lex.pos] == 0x5D:
                lex.pos += 1
                return arr
            arr.append(parse_object(lex))
    tok = lex.read_token()
    if tok == b"true":
        return True
    if tok == b"false":
        return False
    if tok == b"null":
        return None
    if _NUM_RE.match(tok):
        if b"." in tok:
            return float(tok)
        value = int(tok)
        # possible indirect reference: int int R
        save = lex.pos
        try:
            tok2 = lex.read_token()
            if _NUM_RE.match(tok2) and b"." not in tok2:
                tok3 = lex.read_token()
                if tok3 == b"R":
                    return Ref(value, int(tok2))
            lex.pos = save
        except NotAPdf:
            lex.pos = save
        return value
    raise NotAPdf(f"unexpected token {tok[:20]!r}")


def _parse_dict_body(lex: Lexer) -> dict:
    d: dict = {}
    while True:
        lex._skip_ws()
        if lex.data[lex.pos : lex.pos + 2] == b">>":
            lex.pos += 2
            return d
        key = parse_object(lex)
        if not isinstance(key, Name):
            raise NotAPdf("dict key is not a name")
        d[str(key)] = parse_object(lex)
