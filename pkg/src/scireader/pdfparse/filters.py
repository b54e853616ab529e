"""Stream filters: FlateDecode (with PNG/TIFF predictors) and ASCIIHexDecode."""

from __future__ import annotations

import base64
import zlib

from .errors import NotAPdf, UnsupportedFeature


def _apply_png_predictor(data: bytes, colors: int, bpc: int, columns: int) -> bytes:
    bpp = max(1, (colors * bpc) // 8)
    rowlen = (columns * colors * bpc + 7) // 8
    out = bytearray()
    prev = bytearray(rowlen)
    pos = 0
    while pos < len(data):
        ft = data[pos]
        pos += 1
        row = bytearray(data[pos : pos + rowlen])
        pos += rowlen
        if ft == 0:
            pass
        elif ft == 1:  # Sub
            for i in range(bpp, rowlen):
                row[i] = (row[i] + row[i - bpp]) & 0xFF
        elif ft == 2:  # Up
            for i in range(rowlen):
                row[i] = (row[i] + prev[i]) & 0xFF
        elif ft == 3:  # Average
            for i in range(rowlen):
                left = row[i - bpp] if i >= bpp else 0
                row[i] = (row[i] + (left + prev[i]) // 2) & 0xFF
        elif ft == 4:  # Paeth
            for i in range(rowlen):
                a = row[i - bpp] if i >= bpp else 0
                b = prev[i]
                c = prev[i - bpp] if i >= bpp else 0
                p = a + b - c
                pa, pb, pc = abs(p - a), abs(p - b), abs(p - c)
                pred = a if (pa <= pb and pa <= pc) else (b if pb <= pc else c)
                row[i] = (row[i] + pred) & 0xFF
        else:
            raise NotAPdf(f"bad PNG predictor filter type {ft}")
        out += row
        prev = row
    return bytes(out)


def _decode_flate(data: bytes, parms: dict | None) -> bytes:
    try:
        raw = zlib.decompress(data)
    except zlib.error as exc:
        raise NotAPdf(f"flate decode failed: {exc}") from exc
    if not parms:
        return raw
    predictor = int(parms.get("Predictor", 1) or 1)
    if predictor == 1:
        return raw
    colors = int(parms.get("Colors", 1) or 1)
    bpc = int(parms.get("BitsPerComponent", 8) or 8)
    columns = int(parms.get("Columns", 1) or 1)
    if predictor == 2:
        raise UnsupportedFeature("TIFF predictor")
    if 10 <= predictor <= 15:
        return _apply_png_predictor(raw, colors, bpc, columns)
    raise UnsupportedFeature(f"predictor {predictor}")


def _decode_asciihex(data: bytes) -> bytes:
    digits = bytearray()
    for b in data:
        if b == 0x3E:  # >
            break
        if b in b"0123456789abcdefABCDEF":
            digits.append(b)
        elif bytes([b]) in b"\x00\t\n\x0c\r ":
            continue
        else:
            raise NotAPdf("bad ASCIIHex data")
    if len(digits) % 2:
        digits += b"0"
    return bytes.fromhex(digits.decode("ascii"))


def decode_stream(data: bytes, stream_dict: dict, resolve) -> bytes:
    """Apply the stream's filter chain. `resolve` maps Refs to objects."""
    filters = resolve(stream_dict.get("Filter"))
    if filters is None:
        return data
    if not isinstance(filters, list):
        filters = [filters]
    parms = resolve(stream_dict.get("DecodeParms"))
    if parms is None:
        parms = [None] * len(filters)
    elif not isinstance(parms, list):
        parms = [parms]
    while len(parms) < len(filters):
        parms.append(None)
    for f, p in zip(filters, parms):
        fname = str(resolve(f))
        p = resolve(p)
        if fname in ("FlateDecode", "Fl"):
            data = _decode_flate(data, p)
        elif fname in ("ASCIIHexDecode", "AHx"):
            data = _decode_asciihex(data)
        elif fname in ("ASCII85Decode", "A85"):
            text = data.strip()
            if text.startswith(b"<~"):
                text = text[2:]
            end = text.find(b"~>")
            if end >= 0:
                text = text[:end]
            try:
                data = base64.a85decode(text, ignorechars=b" \t\n\r\x0c\x00")
            except ValueError as exc:
                raise NotAPdf(f"ascii85 decode failed: {exc}") from exc
        else:
            raise UnsupportedFeature(f"stream filter {fname}")
    return data
