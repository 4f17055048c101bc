"""
Three document representations
==============================

``bofw`` counts every vocabulary word, ``combination`` only the lexicon
words, and ``grouped`` folds lexicon words into 10 strength bins plus a
negation and a booster count.
"""

import numpy as np

from opinionstrength.features import featurize_corpus, to_grouped
from opinionstrength.lexicon import sample_lexicon
from opinionstrength.preprocess import tokenize
from opinionstrength.synthetic import sample_corpus

lexicon = sample_lexicon()
text = "Çok güzel ve iyi paket ama pahalı, işkence değil :)"
tokens = tokenize(text)
print(tokens)

vec = to_grouped(tokens, lexicon)
labels = ["+1", "+2", "+3", "+4", "+5", "-1", "-2", "-3", "-4", "-5", "neg", "boost"]
print(dict(zip(labels, vec.tolist())))

corpus = sample_corpus()
for mode in ("bofw", "combination", "grouped"):
    docs, vocab = featurize_corpus(corpus, mode, None if mode == "bofw" else lexicon)
    dim = 12 if vocab is None else len(vocab)
    print(f"{mode:12s} dim={dim}")

# a grouped matrix is small and dense
docs, _ = featurize_corpus(corpus, "grouped", lexicon)
X = np.stack([d.features for d in docs])
print(X.shape, "nonzero per column:", (X > 0).sum(axis=0).tolist())
