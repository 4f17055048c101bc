"""Sentiment lexicons: loading, saving and automatic induction.

A word is a good predictor of class ``c`` when

    P(c | w) > 0.5 * p + 0.5 * P(c)

with document-level presence counts.  Selected words receive the class
value as their strength, signed by scale.  All comparisons use exact
rational arithmetic so boundary cases do not depend on float rounding.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

from .corpus import Corpus
from .preprocess import RESERVED_TOKENS, PipelineConfig, tokenize

__all__ = [
    "LexiconError",
    "Lexicon",
    "InductionConfig",
    "ClassStats",
    "SCALES",
    "CLASSES",
    "DEFAULT_NEGATION",
    "DEFAULT_BOOSTERS",
    "compute_stats",
    "select_words",
    "induce_lexicon",
    "load_lexicon",
    "save_lexicon",
    "dumps_lexicon",
    "sample_lexicon",
]

log = logging.getLogger(__name__)

SCALES = ("positive", "negative")
CLASSES = (1, 2, 3, 4, 5)

DEFAULT_NEGATION = frozenset({"değil", "hayır", "yok", "asla", "hiç"})
DEFAULT_BOOSTERS = frozenset({"çok", "fazla", "aşırı", "gerçekten", "oldukça", "en"})


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class Lexicon:
    entries: Mapping[str, int] = field(default_factory=dict)
    negation_words: FrozenSet[str] = frozenset()
    booster_words: FrozenSet[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "entries", dict(self.entries))
        object.__setattr__(self, "negation_words", frozenset(self.negation_words))
        object.__setattr__(self, "booster_words", frozenset(self.booster_words))
        for word, s in self.entries.items():
            _check_word(word)
            if not isinstance(s, int) or isinstance(s, bool) or s == 0 or abs(s) > 5:
                raise LexiconError(f"word {word!r}: strength must be in -5..-1 or 1..5, got {s!r}")
        for word in self.negation_words | self.booster_words:
            _check_word(word)
        overlap = (set(self.entries) & self.negation_words) | (set(self.entries) & self.booster_words) \
            | (self.negation_words & self.booster_words)
        if overlap:
            raise LexiconError(f"words listed in more than one group: {sorted(overlap)}")

    def __len__(self):
        return len(self.entries)

    def strength(self, word: str) -> Optional[int]:
        return self.entries.get(word)


def _check_word(word):
    if not isinstance(word, str) or not word or any(ch.isspace() for ch in word):
        raise LexiconError(f"invalid lexicon token {word!r}")


@dataclass(frozen=True)
class InductionConfig:
    p_pos: float = 0.8
    p_neg: float = 0.4
    min_df: int = 2

    def __post_init__(self):
        for name in ("p_pos", "p_neg"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")
        if not isinstance(self.min_df, int) or self.min_df < 1:
            raise ValueError(f"min_df must be an integer >= 1, got {self.min_df!r}")

    def p_for(self, scale: str) -> float:
        return self.p_pos if scale == "positive" else self.p_neg

    def to_dict(self) -> dict:
        return {"p_pos": self.p_pos, "p_neg": self.p_neg, "min_df": self.min_df}


@dataclass(frozen=True)
class ClassStats:
    """Document-presence counts for one scale."""

    scale: str
    n_docs: int
    doc_count: Dict[int, int]
    df: Dict[str, int]
    df_class: Dict[str, Dict[int, int]]

    def prior(self, c: int) -> Fraction:
        return Fraction(self.doc_count.get(c, 0), self.n_docs)

    def conditional(self, word: str, c: int) -> Fraction:
        return Fraction(self.df_class[word].get(c, 0), self.df[word])

    def threshold(self, c: int, p) -> Fraction:
        return Fraction(1, 2) * _exact(p) + Fraction(1, 2) * self.prior(c)

    def margin(self, word: str, c: int, p) -> Fraction:
        return self.conditional(word, c) - self.threshold(c, p)


def _exact(p) -> Fraction:
    # repr() gives the shortest decimal the user actually typed
    return p if isinstance(p, Fraction) else Fraction(repr(float(p)))


def compute_stats(corpus: Corpus, scale: str, config: Optional[PipelineConfig] = None,
                  tokenized: Optional[Iterable] = None) -> ClassStats:
    """Count, per class of ``scale``, the documents containing each word.

    ``tokenized`` may supply precomputed token lists aligned with the
    corpus to skip re-tokenization.
    """
    if scale not in SCALES:
        raise ValueError(f"unknown scale {scale!r}")
    if len(corpus) == 0:
        raise LexiconError("cannot compute class statistics on an empty corpus")
    if tokenized is None:
        tokenized = (tokenize(d.text, config) for d in corpus)
    doc_count: Counter = Counter()
    df: Counter = Counter()
    df_class: Dict[str, Counter] = defaultdict(Counter)
    for doc, tokens in zip(corpus, tokenized):
        c = doc.label(scale)
        doc_count[c] += 1
        for w in set(tokens):
            df[w] += 1
            df_class[w][c] += 1
    return ClassStats(
        scale=scale,
        n_docs=len(corpus),
        doc_count={c: doc_count.get(c, 0) for c in CLASSES},
        df=dict(df),
        df_class={w: dict(v) for w, v in df_class.items()},
    )


def select_words(stats: ClassStats, p, min_df: int = 1) -> Dict[int, set]:
    """Words passing the threshold for each class (a word may pass for several)."""
    selected: Dict[int, set] = {c: set() for c in CLASSES}
    p = _exact(p)
    # k/n > p/2 + n_c/(2N)  <=>  2 k N den(p) > n (num(p) N + den(p) n_c)
    num, den, N = p.numerator, p.denominator, stats.n_docs
    rhs = {c: num * N + den * stats.doc_count.get(c, 0) for c in CLASSES}
    lhs_scale = 2 * N * den
    for w, n in stats.df.items():
        if n < min_df:
            continue
        for c, k in stats.df_class[w].items():
            if lhs_scale * k > n * rhs[c]:
                selected[c].add(w)
    return selected


def _best_class(candidates: Iterable[Tuple[int, Fraction, int]]) -> int:
    """Pick among (class, margin, df(w,c)) triples.

    The largest margin P(c|w) - threshold wins, then the larger class
    document frequency, then the smaller class value.  Every class margin
    moves by the same -p/2, so the winner does not depend on p and the
    induced lexicon shrinks monotonically as p grows.
    """
    return min(candidates, key=lambda t: (-t[1], -t[2], t[0]))[0]


def _scale_assignments(stats: ClassStats, p, min_df: int, exclude) -> Dict[str, Tuple[int, Fraction]]:
    """word -> (class, winning margin) for one scale."""
    by_word: Dict[str, list] = defaultdict(list)
    thresholds = {c: stats.threshold(c, p) for c in CLASSES}
    for c, words in select_words(stats, p, min_df).items():
        for w in words:
            if w not in exclude:
                k = stats.df_class[w][c]
                by_word[w].append((c, Fraction(k, stats.df[w]) - thresholds[c], k))
    out = {}
    for w, cands in by_word.items():
        c = _best_class(cands)
        out[w] = (c, next(m for k, m, _ in cands if k == c))
    return out


def induce_lexicon(corpus: Corpus, config: Optional[InductionConfig] = None,
                   pipeline: Optional[PipelineConfig] = None,
                   negation_words: Iterable[str] = DEFAULT_NEGATION,
                   booster_words: Iterable[str] = DEFAULT_BOOSTERS,
                   tokenized: Optional[list] = None) -> Lexicon:
    """Build a lexicon from a labeled corpus.

    Both scales are induced independently; within a scale a word takes the
    class it clears by the widest margin.  A word selected on both scales
    keeps the one with the larger winning margin (ties go to positive).
    Negation and booster words come from the given seed lists and are
    never induced, and emoticon class tokens are never induced either.
    """
    config = InductionConfig() if config is None else config
    if tokenized is None:
        tokenized = [tokenize(d.text, pipeline) for d in corpus]
    negation_words = frozenset(negation_words)
    booster_words = frozenset(booster_words)
    exclude = RESERVED_TOKENS | negation_words | booster_words

    pos = _scale_assignments(compute_stats(corpus, "positive", tokenized=tokenized),
                             config.p_pos, config.min_df, exclude)
    neg = _scale_assignments(compute_stats(corpus, "negative", tokenized=tokenized),
                             config.p_neg, config.min_df, exclude)

    entries = {}
    for w in sorted(set(pos) | set(neg)):
        if w in pos and (w not in neg or pos[w][1] >= neg[w][1]):
            entries[w] = pos[w][0]
        else:
            entries[w] = -neg[w][0]
    if not entries:
        log.warning("lexicon induction selected no words (p_pos=%s, p_neg=%s, min_df=%s)",
                    config.p_pos, config.p_neg, config.min_df)
    return Lexicon(entries, negation_words, booster_words)


_SECTIONS = ("[words]", "[negation]", "[booster]")


def _parse_lexicon(lines, source) -> Lexicon:
    section = None
    entries: Dict[str, int] = {}
    groups = {"[negation]": set(), "[booster]": set()}
    where: Dict[str, int] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if line not in _SECTIONS:
                raise LexiconError(f"{source}: line {lineno}: unknown section {line}")
            section = line
            continue
        if section is None:
            raise LexiconError(f"{source}: line {lineno}: entry before any section header")
        if section == "[words]":
            parts = raw.rstrip("\r\n").split("\t")
            if len(parts) != 2:
                raise LexiconError(f"{source}: line {lineno}: expected '<word><TAB><strength>'")
            word = parts[0].strip()
            try:
                s = int(parts[1])
            except ValueError:
                raise LexiconError(f"{source}: line {lineno}: strength {parts[1]!r} is not an integer") from None
            if s == 0 or abs(s) > 5:
                raise LexiconError(f"{source}: line {lineno}: strength {s} outside -5..-1, 1..5")
            if word in where:
                raise LexiconError(f"{source}: line {lineno}: duplicate word {word!r} (first on line {where[word]})")
            entries[word] = s
        else:
            word = line
            if word in where:
                raise LexiconError(f"{source}: line {lineno}: duplicate word {word!r} (first on line {where[word]})")
            groups[section].add(word)
        where[word] = lineno
    return Lexicon(entries, groups["[negation]"], groups["[booster]"])


def load_lexicon(path) -> Lexicon:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        return _parse_lexicon(fh, path)


def dumps_lexicon(lexicon: Lexicon, header: Optional[Iterable[str]] = None) -> str:
    lines = [f"# {h}" for h in (header or ())]
    lines.append("[words]")
    lines.extend(f"{w}\t{lexicon.entries[w]}" for w in sorted(lexicon.entries))
    lines.append("[negation]")
    lines.extend(sorted(lexicon.negation_words))
    lines.append("[booster]")
    lines.extend(sorted(lexicon.booster_words))
    return "\n".join(lines) + "\n"


def save_lexicon(lexicon: Lexicon, path, header: Optional[Iterable[str]] = None) -> None:
    """Write ``lexicon`` with every section sorted, so output is deterministic."""
    path = Path(path)
    try:
        path.write_text(dumps_lexicon(lexicon, header), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write lexicon to {path}: {exc}") from exc


def sample_lexicon() -> Lexicon:
    """Small hand-written Turkish lexicon shipped with the package."""
    from importlib import resources
    text = resources.files("opinionstrength.data").joinpath("sample_lexicon.txt").read_text("utf-8")
    return _parse_lexicon(text.splitlines(), "sample_lexicon.txt")
