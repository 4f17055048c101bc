"""
Inducing a strength lexicon
===========================

A word enters class c of a scale when the share of its documents
labelled c clears ``0.5 * p + 0.5 * prior(c)``.  Raising ``p`` can only
remove entries.
"""

from opinionstrength.lexicon import InductionConfig, compute_stats, dumps_lexicon, induce_lexicon
from opinionstrength.synthetic import sample_corpus

corpus = sample_corpus()
print(len(corpus), "documents")

stats = compute_stats(corpus, "positive")
for c in range(1, 6):
    print(f"prior({c}) = {float(stats.prior(c)):.3f}")

# how often does 'harika' show up per positive class?
print("harika:", stats.df["harika"], "docs,", dict(stats.df_class["harika"]))

lexicon = induce_lexicon(corpus, InductionConfig(p_pos=0.8, p_neg=0.4, min_df=2))
print(dumps_lexicon(lexicon))

# stricter thresholds give nested, smaller lexicons
for p in (0.0, 0.4, 0.8, 1.0):
    print(p, len(induce_lexicon(corpus, InductionConfig(p, p, 2))))
