"""Dual-scale sentiment strength detection for short informal texts.

Automatic lexicon induction, grouped opinion features, lexicon-filtered
and bag-of-words baselines, and a cross-validation harness reporting
exact and within-one accuracy on the positive (1..5) and negative
(-1..-5) scales.
"""

__version__ = "0.1.0"

from .corpus import Corpus, LabeledDoc, NegStrength, PosStrength, load_corpus, save_corpus
from .preprocess import PipelineConfig, replace_emoticons, suffix_strip, tokenize
from .lexicon import (InductionConfig, Lexicon, compute_stats, induce_lexicon, load_lexicon,
                      save_lexicon, select_words)
from .features import fit_vocabulary, featurize_corpus, to_grouped, to_sparse
from .model import TrainConfig, predict, train_linear, train_majority, load_model, save_model
from .evaluate import make_folds, run_cv, sweep_p, within_one
from .predictor import SentimentPredictor, load_predictor, save_predictor
from .timeline import aggregate
