"""Text normalization for short informal messages.

Stage order is fixed: emoticons -> URLs/mentions -> lowercase ->
punctuation -> whitespace split -> optional stemming.  Emoticons are made
of punctuation, so they have to be captured first.
"""

from __future__ import annotations

import enum
import re
import unicodedata
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional

__all__ = [
    "EmoticonClass",
    "EmoticonMap",
    "PipelineConfig",
    "RESERVED_TOKENS",
    "default_emoticon_map",
    "load_emoticon_map",
    "replace_emoticons",
    "turkish_lower",
    "strip_punctuation",
    "suffix_strip",
    "tokenize",
    "count_emoticon_matches",
]


class EmoticonClass(enum.Enum):
    POSITIVE_EMO = "pos"
    NEGATIVE_EMO = "neg"
    OTHER_EMO = "other"

    @property
    def token(self) -> str:
        return f"__emo_{self.value}__"


RESERVED_TOKENS = frozenset(c.token for c in EmoticonClass)
_RESERVED_RE = re.compile(r"(__emo_(?:pos|neg|other)__)")
_URL_RE = re.compile(r"(?:https?://|www\.)\S*", re.IGNORECASE)


class EmoticonMap:
    """Emoticon literal -> class, matched longest-first at each position."""

    def __init__(self, entries: Mapping[str, EmoticonClass]):
        entries = dict(entries)
        for key, cls in entries.items():
            if not isinstance(key, str) or not key or any(ch.isspace() for ch in key):
                raise ValueError(f"invalid emoticon literal {key!r}")
            if not isinstance(cls, EmoticonClass):
                raise ValueError(f"emoticon {key!r}: class must be an EmoticonClass")
        self.entries: Dict[str, EmoticonClass] = entries
        self._lengths = sorted({len(k) for k in entries}, reverse=True)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, EmoticonMap) and self.entries == other.entries

    def match_at(self, text: str, i: int) -> Optional[str]:
        """Longest key starting at ``text[i]``, or None."""
        for n in self._lengths:
            cand = text[i:i + n]
            if len(cand) == n and cand in self.entries:
                return cand
        return None


def _parse_emoticon_lines(lines, source) -> EmoticonMap:
    classes = {"pos": EmoticonClass.POSITIVE_EMO,
               "neg": EmoticonClass.NEGATIVE_EMO,
               "other": EmoticonClass.OTHER_EMO}
    entries = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or parts[1].strip() not in classes:
            raise ValueError(f"{source}: line {lineno}: expected '<emoticon><TAB><pos|neg|other>'")
        key = parts[0]
        if key in entries:
            raise ValueError(f"{source}: line {lineno}: duplicate emoticon {key!r}")
        entries[key] = classes[parts[1].strip()]
    return EmoticonMap(entries)


def load_emoticon_map(path) -> EmoticonMap:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        return _parse_emoticon_lines(fh, path)


_DEFAULT_MAP: Optional[EmoticonMap] = None


def default_emoticon_map() -> EmoticonMap:
    global _DEFAULT_MAP
    if _DEFAULT_MAP is None:
        text = resources.files("opinionstrength.data").joinpath("emoticons.tsv").read_text("utf-8")
        _DEFAULT_MAP = _parse_emoticon_lines(text.splitlines(), "emoticons.tsv")
    return _DEFAULT_MAP


def _scan(text: str, emap: EmoticonMap):
    """Yield ('text', chunk) and ('emo', literal) pieces.

    URL spans are passed through untouched so that e.g. ``://`` inside a
    link never turns into an emoticon.
    """
    i, n = 0, len(text)
    buf_start = 0
    while i < n:
        if text[i] in "hHwW" and (i == 0 or text[i - 1].isspace()):
            m = _URL_RE.match(text, i)
            if m:
                i = m.end()
                continue
        lit = emap.match_at(text, i)
        if lit is not None:
            if buf_start < i:
                yield "text", text[buf_start:i]
            yield "emo", lit
            i += len(lit)
            buf_start = i
        else:
            i += 1
    if buf_start < n:
        yield "text", text[buf_start:]


def replace_emoticons(text: str, emap: Optional[EmoticonMap] = None) -> str:
    """Replace every maximal emoticon with its class token.

    Each token is followed by one space and preceded by one unless the
    output already ends in whitespace::

        >>> replace_emoticons("harika :)")
        'harika __emo_pos__ '
    """
    emap = default_emoticon_map() if emap is None else emap
    out: List[str] = []
    for kind, piece in _scan(text, emap):
        if kind == "text":
            out.append(piece)
            continue
        if out and not out[-1][-1:].isspace():
            out.append(" ")
        out.append(emap.entries[piece].token + " ")
    return "".join(out)


def count_emoticon_matches(text: str, emap: Optional[EmoticonMap] = None) -> int:
    emap = default_emoticon_map() if emap is None else emap
    return sum(1 for kind, _ in _scan(text, emap) if kind == "emo")


def turkish_lower(text: str) -> str:
    """Lowercase with the Turkish dotted/dotless I rules (I -> ı, İ -> i)."""
    return text.replace("I", "ı").replace("İ", "i").lower()


def strip_punctuation(text: str) -> str:
    """Turn every Unicode punctuation character into a space.

    Reserved emoticon tokens keep their underscores.
    """
    pieces = _RESERVED_RE.split(text)
    out = []
    for k, piece in enumerate(pieces):
        if k % 2:
            out.append(f" {piece} ")
        else:
            out.append("".join(" " if unicodedata.category(ch).startswith("P") else ch
                               for ch in piece))
    return "".join(out)


# Longest first; ties keep list order.
TURKISH_SUFFIXES = (
    "ler", "lar", "den", "dan",
    "im", "ım", "um", "üm", "de", "da",
    "e", "a", "i", "ı", "u", "ü",
)
_SUFFIXES_BY_LENGTH = sorted(TURKISH_SUFFIXES, key=len, reverse=True)
MIN_STEM = 3


def suffix_strip(token: str) -> str:
    """Remove one common Turkish inflectional suffix.

    The longest matching suffix is considered; if removing it would leave
    fewer than three characters the token comes back unchanged.
    """
    if token in RESERVED_TOKENS:
        return token
    for suf in _SUFFIXES_BY_LENGTH:
        if token.endswith(suf):
            stem = token[: -len(suf)]
            return stem if len(stem) >= MIN_STEM else token
    return token


_STEMMERS: Dict[str, Optional[Callable[[str], str]]] = {
    "none": None,
    "suffix_stripper": suffix_strip,
}


@dataclass(frozen=True)
class PipelineConfig:
    lowercase_mode: str = "turkish"
    strip_urls: bool = True
    strip_mentions: bool = True
    stemmer: str = "none"
    emoticon_map_path: Optional[str] = None

    def __post_init__(self):
        if self.lowercase_mode not in ("turkish", "simple"):
            raise ValueError(f"lowercase_mode must be 'turkish' or 'simple', got {self.lowercase_mode!r}")
        if self.stemmer not in _STEMMERS:
            raise ValueError(f"stemmer must be one of {sorted(_STEMMERS)}, got {self.stemmer!r}")

    def emoticon_map(self) -> EmoticonMap:
        if self.emoticon_map_path is None:
            return default_emoticon_map()
        return _cached_map(str(self.emoticon_map_path))

    def to_dict(self) -> dict:
        return {
            "lowercase_mode": self.lowercase_mode,
            "strip_urls": self.strip_urls,
            "strip_mentions": self.strip_mentions,
            "stemmer": self.stemmer,
            "emoticon_map_path": self.emoticon_map_path,
        }


_MAP_CACHE: Dict[str, EmoticonMap] = {}


def _cached_map(path: str) -> EmoticonMap:
    if path not in _MAP_CACHE:
        _MAP_CACHE[path] = load_emoticon_map(path)
    return _MAP_CACHE[path]


def tokenize(text: str, config: Optional[PipelineConfig] = None) -> List[str]:
    """Normalize ``text`` into a list of non-empty, whitespace-free tokens."""
    config = PipelineConfig() if config is None else config
    text = replace_emoticons(text, config.emoticon_map())

    words = text.split()
    if config.strip_urls:
        words = [w for w in words if not _URL_RE.match(w)]
    if config.strip_mentions:
        words = [w for w in words if not w.startswith("@")]
    text = " ".join(words)

    text = turkish_lower(text) if config.lowercase_mode == "turkish" else text.lower()
    tokens = strip_punctuation(text).split()

    stem = _STEMMERS[config.stemmer]
    if stem is not None:
        tokens = [stem(t) for t in tokens]
    return tokens
