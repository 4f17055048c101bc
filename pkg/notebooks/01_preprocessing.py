"""
Cleaning tweet text
===================

Emoticons become class tokens before punctuation is stripped, so ``:)``
survives as ``__emo_pos__``.  Turkish casing keeps the dotted/dotless i
distinction that plain ``str.lower`` loses.
"""

from opinionstrength.preprocess import (PipelineConfig, count_emoticon_matches, replace_emoticons,
                                        suffix_strip, tokenize, turkish_lower)

tweet = "@operator İnternet yine ÇOK yavaş :( http://t.co/abc ama fiyatı güzel :)"

# step by step
print(replace_emoticons(tweet))
print(count_emoticon_matches(tweet), "emoticons")
print(turkish_lower("IŞIK İYİ"), "vs", "IŞIK İYİ".lower())

# the whole pipeline with defaults: urls and mentions dropped
print(tokenize(tweet))

# keep urls, simple lowercasing, strip common suffixes
cfg = PipelineConfig(lowercase_mode="simple", strip_urls=False, stemmer="suffix_stripper")
print(tokenize(tweet, cfg))

for word in ("evlerde", "kitaplar", "evde"):
    print(word, "->", suffix_strip(word))
