"""Synthetic labeled corpora for tests, demos and sanity checks."""

from __future__ import annotations

from datetime import datetime, timedelta, timezone
from importlib import resources

import numpy as np

from .corpus import Corpus, LabeledDoc, load_corpus
from .lexicon import Lexicon

__all__ = [
    "separable_corpus",
    "noisy_corpus",
    "noisy_lexicon",
    "turkish_sample",
    "skewed_corpus",
    "sample_corpus",
    "induction_fixture",
]

_FILLERS = ("bugün", "bir", "bu", "ve", "için", "şimdi")


def _word(prefix: str, c: int, j: int) -> str:
    # letters only so every preprocessing mode leaves them intact
    return f"{prefix}{'abcde'[c - 1]}{'abcdefghijklmnopqrstuvwxyz'[j]}"


def separable_corpus(n: int = 200, seed: int = 0, words_per_class: int = 4,
                     fillers_per_doc: int = 2) -> Corpus:
    """Each document holds exactly one word per scale whose class equals its label.

    Positive words look like ``posXY`` and negative words ``negXY``, where
    X encodes the class.  A few shared filler words pad every document.
    """
    rng = np.random.default_rng(seed)
    docs = []
    for i in range(n):
        p = int(rng.integers(1, 6))
        q = int(rng.integers(1, 6))
        words = [
            _word("pos", p, int(rng.integers(words_per_class))),
            _word("neg", q, int(rng.integers(words_per_class))),
        ]
        words += [_FILLERS[k] for k in rng.integers(len(_FILLERS), size=fillers_per_doc)]
        words = [words[k] for k in rng.permutation(len(words))]
        docs.append(LabeledDoc(f"s{i:04d}", " ".join(words), p, -q))
    return Corpus(tuple(docs))


def noisy_corpus(n: int = 300, seed: int = 0, words_per_class: int = 8,
                 distractor_ratio: int = 20, doc_length: int = 8,
                 on_class: float = 0.7) -> Corpus:
    """Label-correlated sentiment words buried in a large distractor vocabulary.

    Every document gets one or two sentiment words per scale.  Each is
    drawn from the document's class with probability ``on_class`` and
    otherwise from a neighbouring class.  ``doc_length`` distractors are
    added from a vocabulary ``distractor_ratio`` times the size of the
    sentiment vocabulary.
    """
    rng = np.random.default_rng(seed)
    n_sent = 2 * 5 * words_per_class
    distractors = [f"w{k}" for k in range(distractor_ratio * n_sent)]
    docs = []
    for i in range(n):
        labels = (int(rng.integers(1, 6)), int(rng.integers(1, 6)))
        words = []
        for prefix, c in zip(("pos", "neg"), labels):
            for _ in range(int(rng.integers(1, 3))):
                cls = c
                if rng.random() >= on_class:
                    cls = int(np.clip(c + rng.choice((-1, 1)), 1, 5))
                words.append(f"{prefix}{'abcde'[cls - 1]}{int(rng.integers(words_per_class))}")
        words += [distractors[k] for k in rng.integers(len(distractors), size=doc_length)]
        words = [words[k] for k in rng.permutation(len(words))]
        docs.append(LabeledDoc(f"n{i:04d}", " ".join(words), labels[0], -labels[1]))
    return Corpus(tuple(docs))


def noisy_lexicon(words_per_class: int = 8) -> Lexicon:
    """The sentiment words :func:`noisy_corpus` draws from, at their true strengths."""
    entries = {}
    for c in range(1, 6):
        for j in range(words_per_class):
            entries[f"pos{'abcde'[c - 1]}{j}"] = c
            entries[f"neg{'abcde'[c - 1]}{j}"] = -c
    return Lexicon(entries)


_POS_WORDS = {1: [], 2: ["hızlı", "ucuz", "teşekkürler"], 3: ["güzel", "iyi", "kaliteli", "memnun"],
              4: ["harika", "sevdim"], 5: ["mükemmel"]}
_NEG_WORDS = {1: [], 2: ["kötü", "pahalı", "sorun"], 3: ["yavaş", "bozuk", "çekmiyor"],
              4: ["işkence"], 5: ["berbat", "rezalet"]}
_TOPICS = ["internet", "paket", "fatura", "hat", "kampanya", "müşteri hizmetleri", "şebeke", "tarife"]
_GLUE = ["bugün", "yine", "ama", "bu", "ve", "artık", "her zaman"]


def turkish_sample(n: int = 90, seed: int = 7, days: int = 30,
                   entities=("Carrier-X", "Carrier-Y", "Carrier-Z")) -> Corpus:
    """Tweet-like Turkish messages about three carriers with timestamps."""
    rng = np.random.default_rng(seed)
    start = datetime(2015, 3, 1, tzinfo=timezone.utc)
    bias = {e: k for k, e in enumerate(entities)}
    docs = []
    for i in range(n):
        ent = entities[int(rng.integers(len(entities)))]
        shift = bias[ent] - 1
        p = int(np.clip(rng.integers(1, 6) - shift, 1, 5))
        q = int(np.clip(rng.integers(1, 6) + shift, 1, 5))
        words = [ent, _TOPICS[int(rng.integers(len(_TOPICS)))]]
        if _POS_WORDS[p]:
            words.append(_POS_WORDS[p][int(rng.integers(len(_POS_WORDS[p])))])
        if _NEG_WORDS[q]:
            if rng.random() < 0.3:
                words.append("çok")
            words.append(_NEG_WORDS[q][int(rng.integers(len(_NEG_WORDS[q])))])
        words.append(_GLUE[int(rng.integers(len(_GLUE)))])
        if p >= 4 and rng.random() < 0.5:
            words.append(":)")
        if q >= 4 and rng.random() < 0.5:
            words.append(":(")
        ts = start + timedelta(days=int(rng.integers(days)), minutes=int(rng.integers(24 * 60)))
        docs.append(LabeledDoc(f"tw{i:03d}", " ".join(words), p, -q,
                               ts.strftime("%Y-%m-%dT%H:%M:%SZ"), ent))
    return Corpus(tuple(docs))


def skewed_corpus(n: int = 100, seed: int = 0, mode_share: float = 0.7) -> Corpus:
    """Corpus whose labels sit on the scale minimum (1 / -1) with probability ``mode_share``.

    Mirrors the heavy class skew of real tweet data, where most messages
    carry little or no sentiment on a given scale.
    """
    base = turkish_sample(n, seed=seed)
    rng = np.random.default_rng(seed + 1)
    docs = []
    for d in base:
        p = 1 if rng.random() < mode_share else d.pos.value
        q = 1 if rng.random() < mode_share else d.neg.magnitude()
        docs.append(LabeledDoc(d.id, d.text, p, -q, d.timestamp, d.entity))
    return Corpus(tuple(docs))


def _packaged(name: str) -> Corpus:
    with resources.as_file(resources.files("opinionstrength.data").joinpath(name)) as path:
        return load_corpus(path)


def sample_corpus() -> Corpus:
    """The shipped tweet-like sample (frozen output of :func:`turkish_sample`)."""
    return _packaged("sample_corpus.jsonl")


def induction_fixture() -> Corpus:
    """The shipped 30-document corpus used for exact induction checks."""
    return _packaged("induction_fixture.jsonl")
