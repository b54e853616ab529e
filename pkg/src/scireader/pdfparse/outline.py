"""Document outline (/Outlines) extraction."""

from __future__ import annotations

from typing import Any, Optional

from .document import PdfFile, decode_text_string
from .model import Diagnostic, OutlineNode
from .objects import Name, Ref


class _DestResolver:
    def __init__(self, pdf: PdfFile, page_count: int):
        self.pdf = pdf
        self.page_num_by_obj = {
            obj: i + 1 for i, obj in enumerate(pdf.page_object_numbers()) if obj is not None
        }
        self.page_count = page_count
        self._named: Optional[dict] = None

    def _named_dests(self) -> dict:
        if self._named is None:
            self._named = {}
            catalog = self.pdf.catalog()
            dests = self.pdf.resolve(catalog.get("Dests"))
            if isinstance(dests, dict):
                self._named.update(dests)
            names = self.pdf.resolve(catalog.get("Names"))
            if isinstance(names, dict):
                tree = self.pdf.resolve(names.get("Dests"))
                self._collect_name_tree(tree, self._named, 0)
        return self._named

    def _collect_name_tree(self, node: Any, out: dict, depth: int) -> None:
        if not isinstance(node, dict) or depth > 32:
            return
        names = self.pdf.resolve(node.get("Names"))
        if isinstance(names, list):
            for i in range(0, len(names) - 1, 2):
                key = self.pdf.resolve(names[i])
                if isinstance(key, bytes):
                    key = key.decode("latin-1")
                out[str(key)] = names[i + 1]
        for kid in self.pdf.resolve(node.get("Kids")) or []:
            self._collect_name_tree(self.pdf.resolve(kid), out, depth + 1)

    def resolve_dest(self, dest: Any) -> Optional[int]:
        """Resolve a destination to a 1-based page number, or None."""
        dest = self.pdf.resolve(dest)
        if isinstance(dest, (bytes, Name, str)):
            key = dest.decode("latin-1") if isinstance(dest, bytes) else str(dest)
            entry = self._named_dests().get(key)
            entry = self.pdf.resolve(entry)
            if isinstance(entry, dict):
                entry = self.pdf.resolve(entry.get("D"))
            dest = entry
        if isinstance(dest, dict):
            dest = self.pdf.resolve(dest.get("D"))
        if isinstance(dest, list) and dest:
            target = dest[0]
            if isinstance(target, Ref):
                return self.page_num_by_obj.get(target.num)
            if isinstance(target, int):  # page index form (remote dests)
                page = target + 1
                return page if 1 <= page <= self.page_count else None
        return None


def read_outline_tree(
    pdf: PdfFile, page_count: int, diagnostics: list[Diagnostic]
) -> list[OutlineNode]:
    catalog = pdf.catalog()
    outlines = pdf.resolve(catalog.get("Outlines"))
    if not isinstance(outlines, dict):
        return []
    resolver = _DestResolver(pdf, page_count)

    def walk(first: Any, depth: int) -> list[OutlineNode]:
        nodes: list[OutlineNode] = []
        seen: set[int] = set()
        item = first
        while item is not None and depth < 64:
            if isinstance(item, Ref):
                if item.num in seen:
                    break
                seen.add(item.num)
            entry = pdf.resolve(item)
            if not isinstance(entry, dict):
                break
            title_raw = pdf.resolve(entry.get("Title"))
            title = decode_text_string(title_raw) if isinstance(title_raw, bytes) else None
            dest = entry.get("Dest")
            if dest is None:
                action = pdf.resolve(entry.get("A"))
                if isinstance(action, dict) and str(pdf.resolve(action.get("S", ""))) == "GoTo":
                    dest = action.get("D")
            page = resolver.resolve_dest(dest) if dest is not None else None
            children = walk(entry.get("First"), depth + 1)
            if title is None:
                diagnostics.append(Diagnostic("outline-skipped", None, "entry without title"))
            elif dest is not None and page is None:
                diagnostics.append(
                    Diagnostic("outline-skipped", None, f"unresolvable target for {title!r}")
                )
                nodes.extend(children)  # keep valid descendants
            elif page is not None and not 1 <= page <= page_count:
                diagnostics.append(
                    Diagnostic("outline-skipped", None, f"target page {page} out of range")
                )
                nodes.extend(children)
            else:
                nodes.append(OutlineNode(title=title, page=page, children=children))
            item = entry.get("Next")
        return nodes

    return walk(outlines.get("First"), 0)
