"""Command-line interface.

Subcommands: induce, featurize, train, evaluate, predict, timeline.
Settings come from defaults, then an optional flat ``key = value`` config
file, then command-line flags.  Exit codes: 0 success, 1 internal
failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from .corpus import Corpus, CorpusError, load_corpus
from .evaluate import (ConfigError, format_table, make_folds, results_table, rank_sweep, run_cv,
                       sweep_csv, sweep_p)
from .features import FeatureError, featurize_corpus, feature_record
from .lexicon import (CLASSES, SCALES, InductionConfig, LexiconError, compute_stats, dumps_lexicon,
                      induce_lexicon, load_lexicon, select_words)
from .model import ModelError, TrainConfig
from .predictor import SentimentPredictor, load_predictor, save_predictor
from .preprocess import PipelineConfig, tokenize
from .timeline import TimelineError, aggregate, timeline_csv

log = logging.getLogger("opinionstrength")

USAGE_ERRORS = (ConfigError, CorpusError, LexiconError, ModelError, FeatureError, TimelineError,
                OSError, UnicodeDecodeError, ValueError)


@dataclasses.dataclass
class RunConfig:
    corpus: Optional[str] = None
    mode: str = "grouped"
    lexicon_source: Optional[str] = None
    lexicon: Optional[str] = None
    classifier: str = "linear"
    p_pos: float = 0.8
    p_neg: float = 0.4
    min_df: int = 2
    p_grid: Optional[str] = None
    k: int = 10
    seed: int = 0
    stratify: str = "positive"
    epochs: int = 200
    learning_rate: float = 0.1
    l2: float = 1e-3
    loss: str = "hinge"
    batch_size: int = 32
    lowercase: str = "turkish"
    stemmer: str = "none"
    emoticons: Optional[str] = None
    keep_urls: bool = False
    keep_mentions: bool = False
    source: str = "gold"
    model: Optional[str] = None
    input: Optional[str] = None
    jobs: int = 1
    out: Optional[str] = None

    # fields that never change results stay out of the fingerprint
    _UNTRACKED = ("jobs", "out")

    def fingerprint(self) -> dict:
        d = dataclasses.asdict(self)
        for k in self._UNTRACKED:
            d.pop(k)
        return d

    def pipeline(self) -> PipelineConfig:
        return PipelineConfig(lowercase_mode=self.lowercase, strip_urls=not self.keep_urls,
                              strip_mentions=not self.keep_mentions, stemmer=self.stemmer,
                              emoticon_map_path=self.emoticons)

    def induction(self) -> InductionConfig:
        return InductionConfig(self.p_pos, self.p_neg, self.min_df)

    def train(self) -> TrainConfig:
        return TrainConfig(self.epochs, self.learning_rate, self.l2, self.seed, self.loss,
                           self.batch_size)

    def grid(self) -> List[Tuple[float, float]]:
        points = []
        for item in self.p_grid.split(","):
            item = item.strip()
            if not item:
                continue
            a, _, b = item.partition(":")
            points.append((float(a), float(b or a)))
        return points

    def validate(self, command: str) -> None:
        modes = ("bofw", "combination", "grouped") + (("table",) if command == "evaluate" else ())
        if self.mode not in modes:
            raise ConfigError(f"--mode must be one of {modes}")
        if self.lexicon_source not in (None, "manual", "auto"):
            raise ConfigError("--lexicon-source must be 'manual' or 'auto'")
        if self.mode == "bofw" and (self.lexicon_source is not None or self.lexicon is not None):
            raise ConfigError("--mode bofw does not use a lexicon; remove --lexicon-source/--lexicon")
        if self.lexicon_source == "manual" and self.lexicon is None:
            raise ConfigError("--lexicon-source manual requires --lexicon")
        if self.lexicon_source == "auto" and self.lexicon is not None and command != "evaluate":
            raise ConfigError("--lexicon-source auto conflicts with --lexicon")
        if self.classifier not in ("linear", "majority"):
            raise ConfigError("--classifier must be 'linear' or 'majority'")
        if self.classifier == "majority" and self.lexicon_source is not None:
            raise ConfigError("the majority baseline does not use a lexicon")
        if self.mode == "table" and self.lexicon_source is not None:
            raise ConfigError("--mode table runs every lexicon source; drop --lexicon-source")
        if self.p_grid is not None:
            if command != "evaluate":
                raise ConfigError("--p-grid only applies to evaluate")
            if self.mode not in ("combination", "grouped") or self.lexicon_source == "manual":
                raise ConfigError("--p-grid needs a lexicon mode with automatic induction")
            if not self.grid():
                raise ConfigError("--p-grid is empty")
        if self.source not in ("gold", "predicted"):
            raise ConfigError("--source must be 'gold' or 'predicted'")
        if command == "timeline" and self.source == "predicted" and self.model is None:
            raise ConfigError("--source predicted requires --model")
        if command in ("induce", "featurize", "train", "evaluate", "timeline") and self.corpus is None:
            raise ConfigError("--corpus is required")
        if command == "predict" and self.model is None:
            raise ConfigError("--model is required")
        if command == "train" and self.out is None:
            raise ConfigError("train requires --out for the model bundle")
        if self.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        # constructing the component configs validates their ranges
        try:
            self.pipeline(), self.induction(), self.train()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if command != "evaluate":
            if self.mode in ("combination", "grouped") and self.lexicon_source is None:
                self.lexicon_source = "manual" if self.lexicon else "auto"

    def resolved_source(self) -> Optional[str]:
        if self.mode == "bofw":
            return None
        if self.lexicon_source is not None:
            return self.lexicon_source
        return "manual" if self.lexicon else "auto"


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}


def _coerce(name: str, value):
    f = _FIELDS[name]
    default = f.default
    if isinstance(value, str):
        if value.lower() in ("none", "null", ""):
            return None
        if isinstance(default, bool):
            if value.lower() in ("1", "true", "yes", "on"):
                return True
            if value.lower() in ("0", "false", "no", "off"):
                return False
            raise ConfigError(f"{name}: expected a boolean, got {value!r}")
        try:
            if isinstance(default, int):
                return int(value)
            if isinstance(default, float):
                return float(value)
        except ValueError:
            raise ConfigError(f"{name}: cannot parse {value!r}") from None
    return value


def read_config_file(path) -> dict:
    """Flat ``key = value`` (or ``key: value``) file; ``#`` starts a comment line."""
    out = {}
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            sep = "=" if "=" in line else ":"
            key, found, value = line.partition(sep)
            key = key.strip().replace("-", "_")
            if not found or key not in _FIELDS:
                raise ConfigError(f"{path}: line {lineno}: unknown setting {key!r}")
            out[key] = _coerce(key, value.strip())
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    a = common.add_argument
    a("--config", help="flat key = value settings file; flags override it")
    a("--corpus", help="JSON-lines labeled corpus")
    a("--mode", help="bofw | combination | grouped (evaluate also accepts 'table')")
    a("--lexicon-source", dest="lexicon_source", help="manual | auto")
    a("--lexicon", help="manual lexicon file")
    a("--classifier", help="linear | majority")
    a("--p-pos", dest="p_pos", type=float)
    a("--p-neg", dest="p_neg", type=float)
    a("--min-df", dest="min_df", type=int)
    a("--p-grid", dest="p_grid", help="comma list of p or p_pos:p_neg points (evaluate)")
    a("--k", type=int, help="number of cross-validation folds")
    a("--seed", type=int)
    a("--stratify", help="positive | negative")
    a("--epochs", type=int)
    a("--learning-rate", dest="learning_rate", type=float)
    a("--l2", type=float)
    a("--loss", help="hinge | logistic")
    a("--batch-size", dest="batch_size", type=int)
    a("--lowercase", help="turkish | simple")
    a("--stemmer", help="none | suffix_stripper")
    a("--emoticons", help="emoticon map file")
    a("--keep-urls", dest="keep_urls", action="store_true")
    a("--keep-mentions", dest="keep_mentions", action="store_true")
    a("--source", help="gold | predicted (timeline)")
    a("--model", help="predictor bundle written by 'train'")
    a("--input", help="text lines or JSON-lines file (predict); stdin when omitted")
    a("--jobs", type=int)
    a("--out", help="output path; stdout when omitted")
    a("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="opinionstrength",
                                     description="Dual-scale sentiment strength detection.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("induce", "induce a lexicon from a labeled corpus"),
        ("featurize", "export feature vectors as JSON-lines"),
        ("train", "fit both scale models and save a predictor bundle"),
        ("evaluate", "cross-validate one configuration, a p sweep, or the full table"),
        ("predict", "predict (pos, neg) strengths for new texts"),
        ("timeline", "per-entity daily sentiment CSV"),
    ):
        sub.add_parser(name, parents=[common], help=help_, argument_default=argparse.SUPPRESS)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if getattr(args, "config", None):
        values.update(read_config_file(args.config))
    for key, value in vars(args).items():
        if key in _FIELDS:
            values[key] = value
    cfg = RunConfig(**values)
    cfg.validate(args.command)
    return cfg


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _sidecar(out: Optional[str], suffix: str, payload: dict) -> None:
    if out is not None:
        Path(out + suffix).write_text(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n",
                                      encoding="utf-8")


def _fingerprint_json(cfg: RunConfig) -> str:
    return json.dumps(cfg.fingerprint(), sort_keys=True, ensure_ascii=False)


def _lexicon_for(cfg: RunConfig, corpus: Corpus):
    if cfg.mode == "bofw":
        return None
    if cfg.lexicon_source == "manual":
        return load_lexicon(cfg.lexicon)
    return induce_lexicon(corpus, cfg.induction(), cfg.pipeline())


def cmd_induce(cfg: RunConfig) -> int:
    corpus = load_corpus(cfg.corpus)
    pipeline = cfg.pipeline()
    lexicon = induce_lexicon(corpus, cfg.induction(), pipeline)
    tokens = [tokenize(d.text, pipeline) for d in corpus]
    stats = {}
    for s in SCALES:
        st = compute_stats(corpus, s, tokenized=tokens)
        sel = select_words(st, cfg.induction().p_for(s), cfg.min_df)
        stats[s] = {
            "prior": {str(c): float(st.prior(c)) for c in CLASSES},
            "selected": {str(c): len(sel[c]) for c in CLASSES},
            "assigned": {str(c): sum(1 for v in lexicon.entries.values()
                                     if v == (c if s == "positive" else -c)) for c in CLASSES},
        }
    _emit(dumps_lexicon(lexicon, header=[f"config: {_fingerprint_json(cfg)}"]), cfg.out)
    _sidecar(cfg.out, ".stats.json", {"config": cfg.fingerprint(), "n_docs": len(corpus),
                                      "n_entries": len(lexicon), "scales": stats})
    return 0


def cmd_featurize(cfg: RunConfig) -> int:
    corpus = load_corpus(cfg.corpus)
    lexicon = _lexicon_for(cfg, corpus)
    docs, vocab = featurize_corpus(corpus, cfg.mode, lexicon, cfg.pipeline())
    _emit("".join(feature_record(d, cfg.mode) + "\n" for d in docs), cfg.out)
    _sidecar(cfg.out, ".config.json", {
        "config": cfg.fingerprint(),
        "vocabulary": vocab.tokens() if vocab is not None else None,
    })
    return 0


def cmd_train(cfg: RunConfig) -> int:
    corpus = load_corpus(cfg.corpus)
    lexicon = _lexicon_for(cfg, corpus)
    predictor = SentimentPredictor.fit(corpus, cfg.mode, lexicon, cfg.induction(), cfg.train(),
                                       cfg.pipeline(), meta={"config": cfg.fingerprint()})
    save_predictor(predictor, cfg.out)
    return 0


def cmd_evaluate(cfg: RunConfig) -> int:
    corpus = load_corpus(cfg.corpus)
    plan = make_folds(corpus, cfg.k, cfg.seed, cfg.stratify)
    common = dict(train=cfg.train(), pipeline=cfg.pipeline(), jobs=cfg.jobs)
    manual = load_lexicon(cfg.lexicon) if cfg.lexicon else None
    doc = {"run_config": cfg.fingerprint()}
    csv_text = None
    if cfg.p_grid is not None:
        results = sweep_p(corpus, plan, cfg.grid(), cfg.mode, cfg.min_df, **common)
        rows = [(f"p_pos={a} p_neg={b}", r) for (a, b), r in results]
        label = dict(zip([id(r) for _, r in results], [lbl for lbl, _ in rows]))
        doc["ranking"] = {s: [label[id(r)] for _, r in rank_sweep(results, s)] for s in SCALES}
        csv_text = sweep_csv(results)
    elif cfg.mode == "table":
        rows = results_table(corpus, plan, manual, induction=cfg.induction(), **common)
    else:
        if cfg.classifier == "majority":
            rows = [("Baseline", run_cv(corpus, plan, classifier="majority", **common))]
        else:
            source = cfg.resolved_source()
            rows = [(f"{cfg.mode} {source or ''}".strip(),
                     run_cv(corpus, plan, cfg.mode, source, cfg.induction(),
                            manual_lexicon=manual if source == "manual" else None, **common))]
    doc["reports"] = [{"label": lbl, **r.to_dict()} for lbl, r in rows]
    text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    table = format_table(rows)
    if cfg.out is None:
        sys.stdout.write(text)
        sys.stderr.write(table)
    else:
        Path(cfg.out).write_text(text, encoding="utf-8")
        if csv_text is not None:
            Path(cfg.out + ".csv").write_text(csv_text, encoding="utf-8")
        sys.stdout.write(table)
    return 0


def _read_inputs(path: Optional[str]) -> List[Tuple[str, str]]:
    if path is None:
        data = sys.stdin.buffer.read()
    else:
        data = Path(path).read_bytes()
    text = data.decode("utf-8")
    if "\x00" in text:
        raise ValueError(f"{path or '<stdin>'}: input looks binary")
    lines = [ln for ln in text.splitlines()]
    items = []
    json_mode = None
    for n, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        if json_mode is None:
            json_mode = line.lstrip().startswith("{")
        if json_mode:
            try:
                rec = json.loads(line)
                items.append((str(rec["id"]), rec["text"]))
            except (json.JSONDecodeError, KeyError, TypeError):
                raise ValueError(f"{path or '<stdin>'}: line {n}: expected a JSON object with id and text") from None
        else:
            items.append((str(n), line))
    return items


def cmd_predict(cfg: RunConfig) -> int:
    predictor = load_predictor(cfg.model)
    items = _read_inputs(cfg.input)
    preds = predictor.predict_texts([t for _, t in items])
    _emit("".join(f"{i}\t{p}\t{q}\n" for (i, _), (p, q) in zip(items, preds)), cfg.out)
    _sidecar(cfg.out, ".config.json", {"config": cfg.fingerprint(), "model_meta": predictor.meta})
    return 0


def cmd_timeline(cfg: RunConfig) -> int:
    corpus = load_corpus(cfg.corpus)
    predictions = None
    if cfg.source == "predicted":
        predictor = load_predictor(cfg.model)
        pairs = predictor.predict_texts([d.text for d in corpus])
        predictions = {d.id: pq for d, pq in zip(corpus, pairs)}
    points = aggregate(corpus, cfg.source, predictions)
    _emit(timeline_csv(points), cfg.out)
    _sidecar(cfg.out, ".config.json", {"config": cfg.fingerprint()})
    return 0


COMMANDS = {
    "induce": cmd_induce,
    "featurize": cmd_featurize,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "predict": cmd_predict,
    "timeline": cmd_timeline,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](cfg)
    except USAGE_ERRORS as exc:
        print(f"opinionstrength {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        log.exception("internal failure")
        print(f"opinionstrength {args.command}: internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
