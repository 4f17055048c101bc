"""Cross-validated evaluation of sentiment-strength classifiers.

Lexicon induction and vocabulary fitting only ever see the training
split of a fold.  Metrics are pooled over all held-out predictions
(micro average); per-fold values are reported alongside.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .corpus import Corpus
from .features import FeatureError, Vocabulary, featurize_corpus, to_matrix, GROUPED_DIM
from .lexicon import CLASSES, SCALES, InductionConfig, Lexicon, dumps_lexicon, induce_lexicon
from .model import ModelError, TrainConfig, fit_linear, predict_many, train_majority
from .preprocess import PipelineConfig, tokenize

__all__ = [
    "ConfigError",
    "FoldPlan",
    "ScaleReport",
    "EvalReport",
    "make_folds",
    "fold_split",
    "fold_lexicon",
    "within_one",
    "run_cv",
    "sweep_p",
    "rank_sweep",
    "sweep_csv",
    "results_table",
    "format_table",
]

log = logging.getLogger(__name__)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class FoldPlan:
    k: int
    assignments: Dict[str, int]
    seed: int
    stratify_scale: str

    def test_ids(self, fold: int) -> List[str]:
        return [i for i, f in self.assignments.items() if f == fold]

    def sizes(self) -> List[int]:
        return [sum(1 for f in self.assignments.values() if f == j) for j in range(self.k)]


def make_folds(corpus: Corpus, k: int = 10, seed: int = 0,
               stratify_scale: str = "positive") -> FoldPlan:
    """Stratified fold assignment.

    Documents of each class (in class order) are shuffled with a seeded
    generator, the class lists are concatenated and the result is dealt
    round-robin.  Continuing the deal across classes keeps fold sizes
    within one of each other.
    """
    if k < 2:
        raise ConfigError(f"k must be >= 2, got {k}")
    if stratify_scale not in SCALES:
        raise ConfigError(f"unknown stratification scale {stratify_scale!r}")
    if len(corpus) < k:
        raise ConfigError(f"cannot make {k} folds from {len(corpus)} documents")
    rng = np.random.default_rng(seed)
    order: List[str] = []
    for c in CLASSES:
        ids = [d.id for d in corpus if d.label(stratify_scale) == c]
        order.extend(ids[i] for i in rng.permutation(len(ids)))
    assignments = {doc_id: pos % k for pos, doc_id in enumerate(order)}
    # keep corpus order in the mapping for stable serialization
    assignments = {d.id: assignments[d.id] for d in corpus}
    return FoldPlan(k, assignments, seed, stratify_scale)


def fold_split(corpus: Corpus, plan: FoldPlan, fold: int) -> Tuple[Corpus, Corpus]:
    """(train, test) for ``fold``; documents unknown to the plan are ignored."""
    test = set(plan.test_ids(fold))
    train_docs = tuple(d for d in corpus if d.id in plan.assignments and d.id not in test)
    test_docs = tuple(d for d in corpus if d.id in test)
    return Corpus(train_docs), Corpus(test_docs)


def fold_lexicon(corpus: Corpus, plan: FoldPlan, fold: int,
                 induction: Optional[InductionConfig] = None,
                 pipeline: Optional[PipelineConfig] = None) -> Lexicon:
    """Lexicon induced from the training split of one fold."""
    train, _ = fold_split(corpus, plan, fold)
    return induce_lexicon(train, induction, pipeline)


def within_one(pred: int, gold: int) -> bool:
    return abs(pred - gold) <= 1


@dataclass
class ScaleReport:
    exact_accuracy: float
    within_one_accuracy: float
    confusion: List[List[int]]
    per_fold: List[dict]

    @classmethod
    def from_predictions(cls, folds: Sequence[Tuple[np.ndarray, np.ndarray]]) -> "ScaleReport":
        confusion = np.zeros((5, 5), dtype=np.int64)
        per_fold = []
        for j, (gold, pred) in enumerate(folds):
            np.add.at(confusion, (gold - 1, pred - 1), 1)
            n = len(gold)
            per_fold.append({
                "fold": j,
                "n": n,
                "exact": float(np.mean(gold == pred)) if n else 0.0,
                "within_one": float(np.mean(np.abs(gold - pred) <= 1)) if n else 0.0,
            })
        exact, w1 = _accuracies(confusion)
        return cls(exact, w1, confusion.tolist(), per_fold)

    def to_dict(self) -> dict:
        return {
            "exact_accuracy": self.exact_accuracy,
            "within_one_accuracy": self.within_one_accuracy,
            "confusion": self.confusion,
            "per_fold": self.per_fold,
        }


def _accuracies(confusion) -> Tuple[float, float]:
    m = np.asarray(confusion)
    total = m.sum()
    if total == 0:
        return 0.0, 0.0
    i, j = np.indices(m.shape)
    return float(np.trace(m) / total), float(m[np.abs(i - j) <= 1].sum() / total)


@dataclass
class EvalReport:
    config: dict
    scales: Dict[str, ScaleReport]
    lexicon_sizes: List[Optional[int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "scales": {s: r.to_dict() for s, r in self.scales.items()},
            "lexicon_sizes": self.lexicon_sizes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def exact(self, scale: str) -> float:
        return self.scales[scale].exact_accuracy

    def within(self, scale: str) -> float:
        return self.scales[scale].within_one_accuracy


def _validate(mode, lexicon_source, manual_lexicon, classifier):
    if classifier not in ("linear", "majority"):
        raise ConfigError(f"unknown classifier {classifier!r}")
    if classifier == "majority":
        if lexicon_source is not None:
            raise ConfigError("the majority baseline does not use a lexicon")
        return
    if mode not in ("bofw", "combination", "grouped"):
        raise ConfigError(f"unknown mode {mode!r}")
    if mode == "bofw":
        if lexicon_source is not None:
            raise ConfigError("mode 'bofw' ignores lexicons; drop the lexicon source")
        return
    if lexicon_source not in ("manual", "auto"):
        raise ConfigError(f"mode {mode!r} needs lexicon source 'manual' or 'auto'")
    if lexicon_source == "manual" and manual_lexicon is None:
        raise ConfigError("lexicon source 'manual' requires a lexicon")


@dataclass(frozen=True)
class _FoldJob:
    corpus: Corpus
    tokens: Dict[str, list]
    plan: FoldPlan
    fold: int
    mode: Optional[str]
    lexicon_source: Optional[str]
    manual_lexicon: Optional[Lexicon]
    induction: InductionConfig
    train: TrainConfig
    classifier: str


def _run_fold(job: _FoldJob):
    train, test = fold_split(job.corpus, job.plan, job.fold)
    gold = {s: np.array([d.label(s) for d in test], dtype=np.int64) for s in SCALES}
    if job.classifier == "majority":
        train_docs = [_Labels(d) for d in train]
        preds = {s: np.full(len(test), train_majority(train_docs, s).predicted_class)
                 for s in SCALES}
        return gold, preds, None

    train_tok = [job.tokens[d.id] for d in train]
    test_tok = [job.tokens[d.id] for d in test]
    lexicon = None
    if job.lexicon_source == "auto":
        lexicon = induce_lexicon(train, job.induction, tokenized=train_tok)
    elif job.lexicon_source == "manual":
        lexicon = job.manual_lexicon

    try:
        train_docs, vocab = featurize_corpus(train, job.mode, lexicon, tokenized=train_tok)
    except FeatureError as exc:
        log.warning("fold %d: %s; training on an empty vocabulary", job.fold, exc)
        vocab = Vocabulary()
        train_docs, _ = featurize_corpus(train, job.mode, lexicon, vocab=vocab, tokenized=train_tok)
    test_docs, _ = featurize_corpus(test, job.mode, lexicon, vocab=vocab, tokenized=test_tok)
    dim = GROUPED_DIM if job.mode == "grouped" else len(vocab)
    X_train = to_matrix(train_docs, dim)
    X_test = to_matrix(test_docs, dim)

    preds = {}
    for s in SCALES:
        y = np.array([d.label(s) for d in train_docs], dtype=np.int64)
        if len(np.unique(y)) < 2:
            log.warning("fold %d: single %s class in training split; using majority model", job.fold, s)
            model = train_majority(train_docs, s)
        else:
            model = fit_linear(X_train, y, s, job.train, job.mode)
        preds[s] = predict_many(model, X_test) if len(test_docs) else np.zeros(0, dtype=np.int64)
    return gold, preds, (len(lexicon) if lexicon is not None else None)


class _Labels:
    """Label-only stand-in so the majority baseline skips featurization."""

    def __init__(self, doc):
        self._doc = doc

    def label(self, scale):
        return self._doc.label(scale)


def _lexicon_digest(lexicon: Optional[Lexicon]) -> Optional[str]:
    if lexicon is None:
        return None
    return hashlib.sha256(dumps_lexicon(lexicon).encode("utf-8")).hexdigest()[:16]


def run_cv(corpus: Corpus, plan: FoldPlan, mode: Optional[str] = "grouped",
           lexicon_source: Optional[str] = "auto",
           induction: Optional[InductionConfig] = None,
           train: Optional[TrainConfig] = None,
           pipeline: Optional[PipelineConfig] = None,
           manual_lexicon: Optional[Lexicon] = None,
           classifier: str = "linear",
           jobs: int = 1) -> EvalReport:
    """k-fold cross-validation of one configuration on both scales."""
    induction = InductionConfig() if induction is None else induction
    train = TrainConfig() if train is None else train
    pipeline = PipelineConfig() if pipeline is None else pipeline
    if classifier == "majority":
        mode, lexicon_source = None, None
    _validate(mode, lexicon_source, manual_lexicon, classifier)
    if len(corpus) == 0:
        raise ConfigError("cannot evaluate on an empty corpus")

    tokens = {d.id: tokenize(d.text, pipeline) for d in corpus} if classifier == "linear" else {}
    fold_jobs = [
        _FoldJob(corpus, tokens, plan, j, mode, lexicon_source,
                 manual_lexicon if lexicon_source == "manual" else None,
                 induction, train, classifier)
        for j in range(plan.k)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_fold, fold_jobs))
    else:
        results = [_run_fold(j) for j in fold_jobs]

    scales = {
        s: ScaleReport.from_predictions([(g[s], p[s]) for g, p, _ in results]) for s in SCALES
    }
    config = {
        "classifier": classifier,
        "mode": mode,
        "lexicon_source": lexicon_source,
        "lexicon_digest": _lexicon_digest(manual_lexicon) if lexicon_source == "manual" else None,
        "induction": induction.to_dict() if lexicon_source == "auto" else None,
        "train": train.to_dict() if classifier == "linear" else None,
        "pipeline": pipeline.to_dict(),
        "k": plan.k,
        "seed": plan.seed,
        "stratify_scale": plan.stratify_scale,
        "n_docs": len(plan.assignments),
    }
    return EvalReport(config, scales, [r[2] for r in results])


def sweep_p(corpus: Corpus, plan: FoldPlan, grid: Sequence[Tuple[float, float]],
            mode: str = "grouped", min_df: int = 2, **kwargs) -> List[Tuple[Tuple[float, float], EvalReport]]:
    """Run auto-induced cross-validation for every (p_pos, p_neg) pair."""
    if not grid:
        raise ConfigError("the p grid is empty")
    out = []
    for p_pos, p_neg in grid:
        induction = InductionConfig(p_pos=p_pos, p_neg=p_neg, min_df=min_df)
        out.append(((p_pos, p_neg),
                    run_cv(corpus, plan, mode, "auto", induction=induction, **kwargs)))
    return out


def rank_sweep(results, scale: str):
    """Sweep results best-first by within-one accuracy, then exact accuracy."""
    order = sorted(range(len(results)),
                   key=lambda i: (-results[i][1].within(scale), -results[i][1].exact(scale), i))
    return [results[i] for i in order]


def sweep_csv(results) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["config", "scale", "exact", "within_one"])
    for (p_pos, p_neg), report in results:
        for s in SCALES:
            w.writerow([f"p_pos={p_pos} p_neg={p_neg}", s,
                        repr(report.exact(s)), repr(report.within(s))])
    return buf.getvalue()


TABLE_ROWS = (
    ("Baseline", "", dict(classifier="majority")),
    ("BofW", "", dict(mode="bofw", lexicon_source=None)),
    ("Combination", "Manual", dict(mode="combination", lexicon_source="manual")),
    ("Combination", "Auto", dict(mode="combination", lexicon_source="auto")),
    ("Grouped", "Manual", dict(mode="grouped", lexicon_source="manual")),
    ("Grouped", "Auto", dict(mode="grouped", lexicon_source="auto")),
)


def results_table(corpus: Corpus, plan: FoldPlan, manual_lexicon: Optional[Lexicon] = None,
                **kwargs) -> List[Tuple[str, EvalReport]]:
    """Every comparison row; rows needing a manual lexicon are skipped without one."""
    rows = []
    for name, source, opts in TABLE_ROWS:
        if opts.get("lexicon_source") == "manual" and manual_lexicon is None:
            continue
        label = f"{name} {source}".strip()
        rows.append((label, run_cv(corpus, plan, manual_lexicon=manual_lexicon, **opts, **kwargs)))
    return rows


def format_table(rows: Sequence[Tuple[str, EvalReport]]) -> str:
    lines = [f"{'Algorithm':<20} {'P. Acc':>8} {'P. Acc±1':>9} {'N. Acc':>8} {'N. Acc±1':>9}"]
    for label, r in rows:
        lines.append(
            f"{label:<20} {100 * r.exact('positive'):7.2f}% {100 * r.within('positive'):8.2f}% "
            f"{100 * r.exact('negative'):7.2f}% {100 * r.within('negative'):8.2f}%"
        )
    return "\n".join(lines) + "\n"
