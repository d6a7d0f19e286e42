"""Discover and load plain-text documents from a directory tree."""

from __future__ import annotations

import logging
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import CorpusError

log = logging.getLogger(__name__)

DEFAULT_EXTENSIONS = frozenset({".txt"})
DEFAULT_MAX_BYTES = 16 * 1024 * 1024

# C0 controls and DEL, minus the whitespace ones (\t \n \v \f \r)
_CONTROL_RE = re.compile(r"[\x00-\x08\x0e-\x1f\x7f]")


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    byte_len: int


@dataclass
class Corpus:
    root: Path
    documents: list[Document]
    load_warnings: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ids(self) -> list[str]:
        return [d.id for d in self.documents]

    def __len__(self) -> int:
        return len(self.documents)


def _walk(root: Path, extensions: frozenset[str]) -> list[Path]:
    found = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for name in filenames:
            path = Path(dirpath) / name
            if path.suffix.lower() in extensions and path.is_file():
                found.append(path)
    return found


def _read_one(path: Path, root: Path, encoding: str, lossy: bool,
              max_bytes: int) -> Document | tuple[str, str]:
    doc_id = path.relative_to(root).as_posix()
    try:
        size = path.stat().st_size
        if size > max_bytes:
            return doc_id, f"file size {size} exceeds cap of {max_bytes} bytes"
        raw = path.read_bytes()
    except OSError as exc:
        return doc_id, f"unreadable: {exc.strerror or exc}"

    try:
        text = raw.decode(encoding, errors="replace" if lossy else "strict")
    except UnicodeDecodeError as exc:
        return doc_id, f"not valid {encoding} at byte {exc.start}"

    if _CONTROL_RE.search(text):
        if not lossy:
            return doc_id, "contains control bytes (binary content?)"
        text = _CONTROL_RE.sub(" ", text)
    return Document(id=doc_id, text=text, byte_len=len(raw))


def load_corpus(root: str | os.PathLike, extensions: Iterable[str] = DEFAULT_EXTENSIONS,
                *, encoding: str = "utf-8", lossy: bool = False,
                max_bytes: int = DEFAULT_MAX_BYTES, threads: int = 1) -> Corpus:
    """Load every file under ``root`` whose suffix is in ``extensions``.

    Files that fail strict decoding (or contain raw control bytes) are
    skipped and recorded in ``load_warnings``; with ``lossy=True`` they are
    decoded with replacement characters instead. Documents come back sorted
    by their root-relative POSIX path whatever the walk order was.
    """
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"corpus root {str(root)!r} does not exist or is not a directory")
    if not os.access(root, os.R_OK | os.X_OK):
        raise CorpusError(f"corpus root {str(root)!r} is not readable")

    exts = frozenset(e if e.startswith(".") else "." + e for e in (x.lower() for x in extensions))
    paths = _walk(root, exts)

    def read(p: Path):
        return _read_one(p, root, encoding, lossy, max_bytes)

    if threads > 1 and len(paths) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(read, paths))
    else:
        results = [read(p) for p in paths]

    documents = sorted((r for r in results if isinstance(r, Document)), key=lambda d: d.id)
    warnings = sorted(r for r in results if not isinstance(r, Document))
    for doc_id, reason in warnings:
        log.warning("skipped %s: %s", doc_id, reason)

    if not documents:
        raise CorpusError(f"empty corpus: no loadable {sorted(exts)} files under {str(root)!r}")
    return Corpus(root=root, documents=documents, load_warnings=warnings)
