"""Product/version extraction from service banners.

Grammar: ``Name[/version][ (comment)]`` with per-product special cases
(the SSH ident string carries its software after the protocol prefix).
Unparseable banners come back as None and are excluded from matching but
counted by the reports as unknown.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path


@dataclass(frozen=True)
class ProductVersion:
    product: str
    version: str | None
    raw_banner: str
    vendor: str | None = None

    @property
    def components(self) -> tuple[int, ...] | None:
        return parse_version(self.version) if self.version else None


def parse_version(text: str) -> tuple[int, ...] | None:
    """Dotted numeric components; trailing non-numeric suffixes of a
    component are dropped (``8.2p1`` -> (8, 2))."""
    parts: list[int] = []
    for piece in text.split("."):
        m = re.match(r"(\d+)", piece)
        if not m:
            break
        parts.append(int(m.group(1)))
        if m.group(1) != piece:
            break
    return tuple(parts) if parts else None


def load_product_table(path: str | Path | None = None) -> dict[str, str]:
    if path is None:
        text = resources.files("reconsys.data").joinpath("products.csv").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    table = {}
    for row in csv.reader(text.splitlines()):
        if not row or row[0].startswith("#"):
            continue
        token, product = row[0].strip().lower(), row[1].strip()
        table[token] = product
    return table


_NAME_VERSION = re.compile(r"^\s*([A-Za-z][A-Za-z0-9_. +-]*?)\s*/\s*([0-9][0-9A-Za-z.]*)")
_SSH_IDENT = re.compile(r"^SSH-[\d.]+-([A-Za-z][A-Za-z0-9_-]*?)[_-]([0-9][0-9A-Za-z.]*)", re.I)
_NAME_ONLY = re.compile(r"^\s*([A-Za-z][A-Za-z0-9_. -]*?)\s*(?:\(|$)")


class BannerParser:
    def __init__(self, table: dict[str, str] | None = None):
        self.table = table if table is not None else load_product_table()

    def canonical(self, name: str) -> str | None:
        return self.table.get(name.strip().lower())

    def parse(self, banner: str) -> ProductVersion | None:
        """Returns None (unknown) when no canonical product is recognized."""
        if not banner:
            return None
        m = _SSH_IDENT.match(banner)
        if m:
            product = self.canonical(m.group(1))
            if product:
                return ProductVersion(product, m.group(2), banner)
        m = _NAME_VERSION.match(banner)
        if m:
            product = self.canonical(m.group(1))
            if product:
                return ProductVersion(product, m.group(2), banner)
        m = _NAME_ONLY.match(banner)
        if m:
            product = self.canonical(m.group(1))
            if product:
                return ProductVersion(product, None, banner)
        return None


def parse_banner(banner: str, parser: BannerParser | None = None) -> ProductVersion | None:
    return (parser or _default_parser()).parse(banner)


_PARSER: BannerParser | None = None


def _default_parser() -> BannerParser:
    global _PARSER
    if _PARSER is None:
        _PARSER = BannerParser()
    return _PARSER
