"""Story ingestion and tokenization.

A story file holds article lines, then one or more ``@highlight`` blocks
whose text forms the gold summary. Each non-blank article line is one
sentence; no sentence-boundary detection is done inside a line.
"""

from __future__ import annotations

import logging
import os
import unicodedata
from dataclasses import dataclass
from pathlib import Path

from .errors import CorpusIOError, EmptyArticleError, EmptyReferenceError

log = logging.getLogger(__name__)

HIGHLIGHT_MARKER = "@highlight"
APOSTROPHES = "'’"


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[str, ...]
    source_index: int
    text: str = ""


@dataclass(frozen=True)
class Document:
    id: str
    sentences: tuple[Sentence, ...]
    reference: tuple[str, ...]


def _normalize(text: str) -> str:
    # lower() can denormalize (e.g. U+0130), so renormalize after it
    return unicodedata.normalize("NFC", unicodedata.normalize("NFC", text).lower())


def _is_clitic_start(chunk: str, i: int) -> bool:
    return (
        chunk[i] in APOSTROPHES
        and i + 1 < len(chunk)
        and chunk[i + 1].isalpha()
    )


def _split_clitics(core: str) -> list[str]:
    """Break before every apostrophe that follows an alphanumeric and precedes a letter."""
    pieces = []
    start = 0
    for i in range(1, len(core)):
        if core[i - 1].isalnum() and _is_clitic_start(core, i):
            pieces.append(core[start:i])
            start = i
    pieces.append(core[start:])
    return pieces


def _tokenize_chunk(chunk: str) -> list[str]:
    n = len(chunk)
    lo = 0
    while lo < n and not chunk[lo].isalnum() and not _is_clitic_start(chunk, lo):
        lo += 1
    hi = n
    while hi > lo and not chunk[hi - 1].isalnum():
        hi -= 1
    lead = list(chunk[:lo])
    trail = list(chunk[hi:])
    core = chunk[lo:hi]
    return lead + (_split_clitics(core) if core else []) + trail


def tokenize(line: str) -> list[str]:
    """Lowercase ``line`` and split it into word and punctuation tokens.

    Rules, applied in order: NFC-normalize and lowercase; split on unicode
    whitespace; peel leading and trailing non-alphanumeric runs off each
    chunk as single-character tokens (an apostrophe directly followed by a
    letter stays attached, so ``'t`` survives re-tokenization); split the
    remaining core before clitic apostrophes, so ``don't`` becomes
    ``don`` + ``'t``.

    >>> tokenize("Don't stop, now!")
    ['don', "'t", 'stop', ',', 'now', '!']
    """
    tokens: list[str] = []
    for chunk in _normalize(line).split():
        tokens.extend(_tokenize_chunk(chunk))
    return tokens


def _parse_lines(raw: str) -> tuple[list[str], list[str]]:
    article: list[str] = []
    highlights: list[str] = []
    in_highlights = False
    for line in raw.splitlines():
        stripped = line.strip()
        if not stripped:
            continue
        if stripped == HIGHLIGHT_MARKER:
            in_highlights = True
            continue
        (highlights if in_highlights else article).append(stripped)
    return article, highlights


def parse_story(raw: str, id: str, *, require_reference: bool = True) -> Document:
    """Parse the contents of one story file.

    With ``require_reference=False`` a plain article without highlights is
    accepted and the reference is left empty; this is only meant for
    summarizing unseen text.
    """
    article, highlights = _parse_lines(raw)
    if not article:
        raise EmptyArticleError(f"{id}: no article lines")
    reference = tuple(tok for line in highlights for tok in tokenize(line))
    if require_reference and not reference:
        raise EmptyReferenceError(f"{id}: no highlight content")
    sentences = tuple(
        Sentence(tokens=tuple(tokenize(text)), source_index=i, text=text)
        for i, text in enumerate(article)
    )
    return Document(id=id, sentences=sentences, reference=reference)


def list_story_files(directory: str | os.PathLike) -> list[Path]:
    directory = Path(directory)
    try:
        entries = sorted(os.listdir(directory))
    except OSError as exc:
        raise CorpusIOError(f"cannot read corpus directory {directory}: {exc}") from exc
    return [directory / name for name in entries if (directory / name).is_file()]


def load_corpus(directory: str | os.PathLike, limit: int | None = None) -> list[Document]:
    """Load up to ``limit`` stories from ``directory`` in lexicographic filename order.

    Files that fail to decode or parse are logged and skipped; they do not
    count toward ``limit``.
    """
    documents: list[Document] = []
    for path in list_story_files(directory):
        if limit is not None and len(documents) >= limit:
            break
        try:
            raw = path.read_bytes().decode("utf-8")
            documents.append(parse_story(raw, path.stem))
        except (UnicodeDecodeError, EmptyArticleError, EmptyReferenceError, OSError) as exc:
            log.warning("skipping %s: %s", path, exc)
    return documents
