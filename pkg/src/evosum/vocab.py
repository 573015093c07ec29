"""Token vocabulary: a dense, first-occurrence-ordered token -> id mapping."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .corpus import Document


@dataclass(frozen=True)
class Vocabulary:
    entries: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {tok: i for i, tok in enumerate(self.entries)}
        if len(index) != len(self.entries):
            raise ValueError("duplicate tokens in vocabulary")
        object.__setattr__(self, "index", index)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    @property
    def size(self) -> int:
        return len(self.entries)


def build_vocabulary(documents: Iterable[Document], include_references: bool = True) -> Vocabulary:
    seen: dict[str, None] = {}
    for doc in documents:
        for sentence in doc.sentences:
            seen.update(dict.fromkeys(sentence.tokens))
        if include_references:
            seen.update(dict.fromkeys(doc.reference))
    return Vocabulary(tuple(seen))


def lookup(vocab: Vocabulary, token: str) -> int | None:
    return vocab.index.get(token)
