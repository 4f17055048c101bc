"""Labeled short-text corpora with dual-scale sentiment strength.

Every document carries a positive strength in 1..5 and a signed negative
strength in -5..-1.  The on-disk format is UTF-8 JSON-lines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional

__all__ = [
    "CorpusError",
    "PosStrength",
    "NegStrength",
    "LabeledDoc",
    "Corpus",
    "load_corpus",
    "save_corpus",
]


class CorpusError(ValueError):
    """Raised for malformed or invalid corpus records."""


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


@dataclass(frozen=True, order=True)
class PosStrength:
    value: int

    def __post_init__(self):
        if not _is_int(self.value) or not 1 <= self.value <= 5:
            raise CorpusError(f"positive strength must be an integer in 1..5, got {self.value!r}")

    def magnitude(self) -> int:
        return self.value


@dataclass(frozen=True, order=True)
class NegStrength:
    value: int

    def __post_init__(self):
        if not _is_int(self.value) or not -5 <= self.value <= -1:
            raise CorpusError(f"negative strength must be an integer in -5..-1, got {self.value!r}")

    def magnitude(self) -> int:
        return -self.value


@dataclass(frozen=True)
class LabeledDoc:
    """One annotated text.

    ``timestamp`` is kept as the original ISO-8601 string so that a
    load/save cycle is byte-stable.
    """

    id: str
    text: str
    pos: PosStrength
    neg: NegStrength
    timestamp: Optional[str] = None
    entity: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise CorpusError(f"document id must be a non-empty string, got {self.id!r}")
        if not isinstance(self.text, str) or not self.text.strip():
            raise CorpusError(f"document {self.id!r}: text is empty")
        if not isinstance(self.pos, PosStrength):
            object.__setattr__(self, "pos", PosStrength(self.pos))
        if not isinstance(self.neg, NegStrength):
            object.__setattr__(self, "neg", NegStrength(self.neg))
        if self.timestamp is not None and not isinstance(self.timestamp, str):
            raise CorpusError(f"document {self.id!r}: timestamp must be a string")
        if self.entity is not None and not isinstance(self.entity, str):
            raise CorpusError(f"document {self.id!r}: entity must be a string")

    def label(self, scale: str) -> int:
        """Class on ``scale`` as a magnitude in 1..5."""
        if scale == "positive":
            return self.pos.magnitude()
        if scale == "negative":
            return self.neg.magnitude()
        raise ValueError(f"unknown scale {scale!r}")

    def to_record(self) -> dict:
        rec = {"id": self.id, "text": self.text, "pos": self.pos.value, "neg": self.neg.value}
        if self.timestamp is not None:
            rec["timestamp"] = self.timestamp
        if self.entity is not None:
            rec["entity"] = self.entity
        return rec


@dataclass(frozen=True)
class Corpus:
    docs: tuple = field(default_factory=tuple)

    def __post_init__(self):
        docs = tuple(self.docs)
        object.__setattr__(self, "docs", docs)
        seen = set()
        for doc in docs:
            if doc.id in seen:
                raise CorpusError(f"duplicate document id {doc.id!r}")
            seen.add(doc.id)

    def __len__(self) -> int:
        return len(self.docs)

    def __iter__(self) -> Iterator[LabeledDoc]:
        return iter(self.docs)

    def __getitem__(self, i):
        return self.docs[i]

    def ids(self) -> list:
        return [d.id for d in self.docs]

    def subset(self, ids: Iterable[str]) -> "Corpus":
        """Documents whose id is in ``ids``, in corpus order."""
        keep = set(ids)
        return Corpus(tuple(d for d in self.docs if d.id in keep))

    def without(self, ids: Iterable[str]) -> "Corpus":
        drop = set(ids)
        return Corpus(tuple(d for d in self.docs if d.id not in drop))


_REQUIRED = ("id", "text", "pos", "neg")
_KNOWN = set(_REQUIRED) | {"timestamp", "entity"}


def _doc_from_record(rec, lineno: int) -> LabeledDoc:
    if not isinstance(rec, dict):
        raise CorpusError(f"line {lineno}: expected a JSON object")
    missing = [k for k in _REQUIRED if k not in rec]
    if missing:
        raise CorpusError(f"line {lineno}: missing keys {missing}")
    unknown = sorted(set(rec) - _KNOWN)
    if unknown:
        raise CorpusError(f"line {lineno}: unknown keys {unknown}")
    doc_id = rec["id"]
    try:
        return LabeledDoc(
            id=doc_id,
            text=rec["text"],
            pos=PosStrength(rec["pos"]),
            neg=NegStrength(rec["neg"]),
            timestamp=rec.get("timestamp"),
            entity=rec.get("entity"),
        )
    except CorpusError as exc:
        raise CorpusError(f"line {lineno} (id {doc_id!r}): {exc}") from None


def load_corpus(path) -> Corpus:
    """Read a JSON-lines corpus; blank lines are skipped."""
    path = Path(path)
    docs = []
    seen = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}: line {lineno}: malformed JSON ({exc.msg})") from None
            doc = _doc_from_record(rec, lineno)
            if doc.id in seen:
                raise CorpusError(
                    f"{path}: duplicate id {doc.id!r} on lines {seen[doc.id]} and {lineno}"
                )
            seen[doc.id] = lineno
            docs.append(doc)
    return Corpus(tuple(docs))


def save_corpus(corpus: Corpus, path) -> None:
    path = Path(path)
    try:
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            for doc in corpus:
                fh.write(json.dumps(doc.to_record(), ensure_ascii=False))
                fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write corpus to {path}: {exc}") from exc
