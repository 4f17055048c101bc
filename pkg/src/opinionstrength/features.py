"""Feature representations: bag-of-words, lexicon-filtered, grouped.

The grouped vector has 12 count dimensions.  Dims 1..5 count words of
positive strength 1..5, dims 6..10 count words of negative strength
-1..-5 (dim ``5 + |s|``), dim 11 counts negation words and dim 12
booster words.  Arrays here are 0-based, so dim ``d`` lives at ``d - 1``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .corpus import Corpus, NegStrength, PosStrength
from .lexicon import Lexicon
from .preprocess import PipelineConfig, tokenize

__all__ = [
    "MODES",
    "GROUPED_DIM",
    "FeatureError",
    "Vocabulary",
    "SparseVector",
    "FeaturizedDoc",
    "grouped_dim",
    "fit_vocabulary",
    "to_sparse",
    "to_grouped",
    "featurize_corpus",
    "featurize_tokens",
    "to_matrix",
    "feature_record",
]

MODES = ("bofw", "combination", "grouped")
GROUPED_DIM = 12
NEGATION_DIM = 11
BOOSTER_DIM = 12


class FeatureError(ValueError):
    pass


def grouped_dim(strength: int) -> int:
    """1-based grouped dimension for a signed strength."""
    if strength > 0:
        return strength
    return 5 - strength


class Vocabulary:
    """Ordered token -> index map."""

    def __init__(self, tokens: Iterable[str] = ()):
        self.index: Dict[str, int] = {}
        for t in tokens:
            if t in self.index:
                raise FeatureError(f"duplicate vocabulary token {t!r}")
            self.index[t] = len(self.index)

    def __len__(self):
        return len(self.index)

    def __contains__(self, token):
        return token in self.index

    def __eq__(self, other):
        return isinstance(other, Vocabulary) and list(self.index.items()) == list(other.index.items())

    def __repr__(self):
        return f"Vocabulary({len(self)} tokens)"

    def tokens(self) -> List[str]:
        return list(self.index)


@dataclass(frozen=True)
class SparseVector:
    indices: Tuple[int, ...] = ()
    counts: Tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.indices) != len(self.counts):
            raise FeatureError("indices and counts differ in length")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise FeatureError("sparse indices must be strictly increasing")
        if any(c < 1 for c in self.counts):
            raise FeatureError("sparse counts must be positive")

    def pairs(self) -> List[Tuple[int, int]]:
        return list(zip(self.indices, self.counts))

    def dense(self, dim: int) -> np.ndarray:
        out = np.zeros(dim, dtype=np.float64)
        if self.indices:
            out[list(self.indices)] = self.counts
        return out


@dataclass(frozen=True)
class FeaturizedDoc:
    id: str
    features: Union[SparseVector, np.ndarray]
    gold_pos: PosStrength
    gold_neg: NegStrength

    def label(self, scale: str) -> int:
        return self.gold_pos.magnitude() if scale == "positive" else self.gold_neg.magnitude()


def fit_vocabulary(tokenized_docs: Sequence[Sequence[str]],
                   restrict_to: Optional[Lexicon] = None) -> Vocabulary:
    """Index tokens in first-occurrence order.

    With ``restrict_to`` only words carrying a strength in the lexicon are
    kept; negation and booster words are left out.
    """
    if len(tokenized_docs) == 0:
        raise FeatureError("cannot fit a vocabulary on zero documents")
    seen: Dict[str, None] = {}
    for tokens in tokenized_docs:
        for t in tokens:
            if t not in seen and (restrict_to is None or t in restrict_to.entries):
                seen[t] = None
    if restrict_to is not None and not seen:
        raise FeatureError(
            "no lexicon word occurs in the documents; check that the lexicon "
            "was built with the same preprocessing as the corpus"
        )
    return Vocabulary(seen)


def to_sparse(tokens: Iterable[str], vocab: Vocabulary) -> SparseVector:
    counts = Counter(vocab.index[t] for t in tokens if t in vocab.index)
    idx = tuple(sorted(counts))
    return SparseVector(idx, tuple(counts[i] for i in idx))


def to_grouped(tokens: Iterable[str], lexicon: Lexicon) -> np.ndarray:
    vec = np.zeros(GROUPED_DIM, dtype=np.int64)
    for t in tokens:
        s = lexicon.entries.get(t)
        if s is not None:
            vec[grouped_dim(s) - 1] += 1
        elif t in lexicon.negation_words:
            vec[NEGATION_DIM - 1] += 1
        elif t in lexicon.booster_words:
            vec[BOOSTER_DIM - 1] += 1
    return vec


def featurize_tokens(tokens, mode: str, lexicon: Optional[Lexicon] = None,
                     vocab: Optional[Vocabulary] = None):
    if mode == "grouped":
        return to_grouped(tokens, lexicon)
    return to_sparse(tokens, vocab)


def featurize_corpus(corpus: Corpus, mode: str, lexicon: Optional[Lexicon] = None,
                     pipeline: Optional[PipelineConfig] = None,
                     vocab: Optional[Vocabulary] = None,
                     tokenized: Optional[list] = None):
    """Tokenize and project every document.

    Returns ``(docs, vocab)``.  ``vocab`` is None in grouped mode; in the
    sparse modes a vocabulary is fitted on ``corpus`` unless one is given.
    """
    if mode not in MODES:
        raise FeatureError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode in ("combination", "grouped") and lexicon is None:
        raise FeatureError(f"mode {mode!r} requires a lexicon")
    if mode == "bofw" and lexicon is not None:
        raise FeatureError("mode 'bofw' does not use a lexicon")
    if mode == "grouped" and vocab is not None:
        raise FeatureError("mode 'grouped' does not use a vocabulary")
    if tokenized is None:
        tokenized = [tokenize(d.text, pipeline) for d in corpus]
    if mode != "grouped" and vocab is None:
        vocab = fit_vocabulary(tokenized, lexicon if mode == "combination" else None)
    docs = [
        FeaturizedDoc(d.id, featurize_tokens(toks, mode, lexicon, vocab), d.pos, d.neg)
        for d, toks in zip(corpus, tokenized)
    ]
    return docs, vocab


def to_matrix(docs: Sequence[FeaturizedDoc], dim: int) -> np.ndarray:
    """Stack features into a dense (n_docs, dim) float array."""
    X = np.zeros((len(docs), dim), dtype=np.float64)
    for i, d in enumerate(docs):
        f = d.features
        if isinstance(f, SparseVector):
            if f.indices:
                X[i, list(f.indices)] = f.counts
        else:
            X[i] = f
    return X


def feature_record(doc: FeaturizedDoc, mode: str) -> str:
    """One JSON-lines record for the featurize export."""
    rec = {"id": doc.id, "mode": mode}
    if isinstance(doc.features, SparseVector):
        rec["idx"] = list(doc.features.indices)
        rec["cnt"] = list(doc.features.counts)
    else:
        rec["dims"] = [int(x) for x in doc.features]
    rec["pos"] = doc.gold_pos.value
    rec["neg"] = doc.gold_neg.value
    return json.dumps(rec, ensure_ascii=False)
