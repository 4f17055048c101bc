"""
Comparing representations with cross-validation
===============================================

A noisy synthetic corpus hides 80 sentiment words among 1600
distractors.  The lexicon-based representations should beat plain
bag-of-words, and grouping should help most.
"""

from opinionstrength.evaluate import format_table, make_folds, results_table, run_cv
from opinionstrength.lexicon import InductionConfig
from opinionstrength.synthetic import noisy_corpus, noisy_lexicon

corpus = noisy_corpus(300, seed=0)
plan = make_folds(corpus, k=10, seed=0)
print("fold sizes", plan.sizes())

rows = results_table(corpus, plan, noisy_lexicon(), induction=InductionConfig(0.8, 0.8, 2))
print(format_table(rows))

# one report in detail
report = run_cv(corpus, plan, "grouped", "auto", InductionConfig(0.8, 0.8, 2))
print("positive confusion (rows = gold):")
for row in report.scales["positive"].confusion:
    print(" ", row)
print("lexicon size per fold:", report.lexicon_sizes)
