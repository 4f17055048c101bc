"""Fitted two-scale predictor that can be saved and applied to raw text."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from .corpus import Corpus
from .features import GROUPED_DIM, Vocabulary, featurize_corpus, featurize_tokens, to_matrix
from .lexicon import SCALES, InductionConfig, Lexicon, induce_lexicon
from .model import (LinearModel, MajorityModel, ModelError, TrainConfig, dumps_payload, fit_linear,
                    loads_payload, model_from_dict, model_to_dict, predict_many, train_majority)
from .preprocess import PipelineConfig, tokenize

__all__ = ["SentimentPredictor", "save_predictor", "load_predictor"]


@dataclass
class SentimentPredictor:
    mode: str
    pipeline: PipelineConfig
    lexicon: Optional[Lexicon]
    vocab: Optional[Vocabulary]
    models: Dict[str, Union[LinearModel, MajorityModel]]
    meta: Optional[dict] = None

    def __post_init__(self):
        for s in SCALES:
            m = self.models.get(s)
            if m is None:
                raise ModelError(f"missing {s} model")
            if isinstance(m, LinearModel):
                if m.mode != self.mode:
                    raise ModelError(f"{s} model was trained for mode {m.mode!r}, bundle says {self.mode!r}")
                if m.feature_dim != self.feature_dim:
                    raise ModelError(f"{s} model expects {m.feature_dim} features, bundle provides {self.feature_dim}")

    @property
    def feature_dim(self) -> int:
        return GROUPED_DIM if self.mode == "grouped" else len(self.vocab)

    @classmethod
    def fit(cls, corpus: Corpus, mode: str = "grouped", lexicon: Optional[Lexicon] = None,
            induction: Optional[InductionConfig] = None, train: Optional[TrainConfig] = None,
            pipeline: Optional[PipelineConfig] = None, meta: Optional[dict] = None) -> "SentimentPredictor":
        """Train both scale models on ``corpus``.

        In lexicon modes with no ``lexicon`` given, one is induced from
        ``corpus`` with ``induction``.
        """
        pipeline = PipelineConfig() if pipeline is None else pipeline
        train = TrainConfig() if train is None else train
        tokens = [tokenize(d.text, pipeline) for d in corpus]
        if mode != "bofw" and lexicon is None:
            lexicon = induce_lexicon(corpus, induction, tokenized=tokens)
        docs, vocab = featurize_corpus(corpus, mode, lexicon if mode != "bofw" else None,
                                       tokenized=tokens)
        dim = GROUPED_DIM if mode == "grouped" else len(vocab)
        X = to_matrix(docs, dim)
        models = {}
        for s in SCALES:
            y = np.array([d.label(s) for d in docs], dtype=np.int64)
            if len(np.unique(y)) < 2:
                models[s] = train_majority(docs, s)
            else:
                models[s] = fit_linear(X, y, s, train, mode)
        return cls(mode, pipeline, lexicon if mode != "bofw" else None, vocab, models, meta)

    def features(self, texts: List[str]) -> np.ndarray:
        feats = [featurize_tokens(tokenize(t, self.pipeline), self.mode, self.lexicon, self.vocab)
                 for t in texts]
        X = np.zeros((len(feats), self.feature_dim))
        for i, f in enumerate(feats):
            X[i] = f if isinstance(f, np.ndarray) else f.dense(self.feature_dim)
        return X

    def predict_texts(self, texts: List[str]) -> List[Tuple[int, int]]:
        """(positive strength, signed negative strength) per text."""
        if not texts:
            return []
        X = self.features(texts)
        pos = predict_many(self.models["positive"], X)
        neg = predict_many(self.models["negative"], X)
        return [(int(p), -int(n)) for p, n in zip(pos, neg)]

    def to_payload(self) -> dict:
        lex = None
        if self.lexicon is not None:
            lex = {
                "words": dict(sorted(self.lexicon.entries.items())),
                "negation": sorted(self.lexicon.negation_words),
                "booster": sorted(self.lexicon.booster_words),
            }
        return {
            "mode": self.mode,
            "pipeline": self.pipeline.to_dict(),
            "lexicon": lex,
            "vocabulary": self.vocab.tokens() if self.vocab is not None else None,
            "models": {s: model_to_dict(self.models[s]) for s in SCALES},
            "meta": self.meta,
        }

    @classmethod
    def from_payload(cls, doc: dict) -> "SentimentPredictor":
        try:
            lex = doc["lexicon"]
            lexicon = None if lex is None else Lexicon(lex["words"], lex["negation"], lex["booster"])
            vocab = None if doc["vocabulary"] is None else Vocabulary(doc["vocabulary"])
            models = {s: model_from_dict(doc["models"][s]) for s in SCALES}
            pipeline = PipelineConfig(**doc["pipeline"])
            return cls(doc["mode"], pipeline, lexicon, vocab, models, doc.get("meta"))
        except (KeyError, TypeError) as exc:
            raise ModelError(f"invalid predictor bundle: {exc}") from None


def save_predictor(predictor: SentimentPredictor, path) -> None:
    Path(path).write_text(dumps_payload("predictor", predictor.to_payload()), encoding="utf-8")


def load_predictor(path) -> SentimentPredictor:
    path = Path(path)
    return SentimentPredictor.from_payload(loads_payload(path.read_text(encoding="utf-8"), "predictor", path))
