"""
Sentiment over time per carrier
===============================

Train on the sample, predict every message, then average the two
scales per carrier and day.  The gold timeline is shown next to it.
"""

from opinionstrength.predictor import SentimentPredictor
from opinionstrength.synthetic import sample_corpus
from opinionstrength.timeline import aggregate, timeline_csv

corpus = sample_corpus()
predictor = SentimentPredictor.fit(corpus, mode="grouped")

print(predictor.predict_texts(["harika bir kampanya :)", "internet berbat, çok yavaş"]))

predicted = dict(zip(corpus.ids(), predictor.predict_texts([d.text for d in corpus])))
gold = aggregate(corpus)
pred = aggregate(corpus, "predicted", predicted)

print(timeline_csv(pred[:8]))

# net sentiment per carrier over the whole month
for entity in sorted({p.entity for p in gold}):
    g = [p.net for p in gold if p.entity == entity]
    q = [p.net for p in pred if p.entity == entity]
    print(f"{entity}: gold net {sum(g) / len(g):+.2f}, predicted net {sum(q) / len(q):+.2f}")
