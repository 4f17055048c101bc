from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from opinionstrength.corpus import Corpus, LabeledDoc
from opinionstrength.lexicon import (ClassStats, InductionConfig, Lexicon, LexiconError, _best_class,
                                     compute_stats, dumps_lexicon, induce_lexicon, load_lexicon,
                                     sample_lexicon, save_lexicon, select_words)
from opinionstrength.preprocess import RESERVED_TOKENS, tokenize
from opinionstrength.synthetic import induction_fixture, turkish_sample

from oracles import brute_force_lexicon


def test_stats_hand_count(four_docs):
    st_ = compute_stats(four_docs, "positive")
    assert st_.df["iyi"] == 3
    assert st_.df_class["iyi"] == {4: 2, 2: 1}
    assert st_.conditional("iyi", 4) == Fraction(2, 3)
    assert st_.prior(4) == Fraction(1, 2)
    assert sum(st_.doc_count.values()) == 4
    assert "berbat" not in st_.df


def test_stats_negative_uses_magnitude(four_docs):
    st_ = compute_stats(four_docs, "negative")
    assert st_.doc_count == {1: 1, 2: 1, 3: 2, 4: 0, 5: 0}
    assert st_.conditional("yavaş", 3) == 1


def test_stats_presence_not_frequency():
    c = Corpus((LabeledDoc("a", "iyi iyi iyi", 3, -1), LabeledDoc("b", "hat", 1, -1)))
    assert compute_stats(c, "positive").df["iyi"] == 1


def test_single_class_prior():
    c = Corpus(tuple(LabeledDoc(str(i), "x", 2, -1) for i in range(3)))
    st_ = compute_stats(c, "positive")
    assert st_.prior(2) == 1 and all(st_.prior(k) == 0 for k in (1, 3, 4, 5))


def test_stats_empty_corpus():
    with pytest.raises(LexiconError):
        compute_stats(Corpus(()), "positive")


def _stats_with(pcw_num, pcw_den, prior_num, prior_den):
    n_docs = prior_den
    return ClassStats("positive", n_docs, {1: prior_num, 2: n_docs - prior_num, 3: 0, 4: 0, 5: 0},
                      {"w": pcw_den}, {"w": {1: pcw_num, 2: pcw_den - pcw_num}})


def test_select_above_threshold():
    # P(c|w)=0.35, p=0.4, P(c)=0.2 -> threshold 0.3
    assert "w" in select_words(_stats_with(7, 20, 1, 5), 0.4)[1]


def test_select_strict_boundary():
    # P(c|w)=0.30 equals the threshold exactly
    assert "w" not in select_words(_stats_with(6, 20, 1, 5), 0.4)[1]


def test_select_min_df():
    stats = _stats_with(7, 20, 1, 5)
    assert "w" not in select_words(stats, 0.4, min_df=21)[1]


def test_select_matches_brute_force_on_20_docs():
    corpus = turkish_sample(20, seed=3)
    toks = [tokenize(d.text) for d in corpus]
    stats = compute_stats(corpus, "positive")
    sel = select_words(stats, 0.8)
    for c in range(1, 6):
        n_c = sum(d.pos.value == c for d in corpus)
        expected = set()
        for w in {t for ts in toks for t in ts}:
            df = sum(w in ts for ts in toks)
            df_c = sum(w in ts and d.pos.value == c for ts, d in zip(toks, corpus))
            if Fraction(df_c, df) > Fraction(4, 10) + Fraction(n_c, 2 * len(corpus)):
                expected.add(w)
        assert sel[c] == expected


def test_tie_break_chain():
    # equal margins: larger df(w,c) wins, then the smaller class
    assert _best_class([(3, Fraction(1, 10), 3), (4, Fraction(1, 10), 5)]) == 4
    assert _best_class([(4, Fraction(1, 2), 4), (2, Fraction(1, 2), 4)]) == 2
    assert _best_class([(5, Fraction(1, 3), 9), (1, Fraction(2, 3), 1)]) == 1


def test_widest_margin_beats_highest_probability():
    # class 4: P(4|w)=3/6 with prior 9/15 -> margin 1/5 - p/2
    # class 5: P(5|w)=2/6 with prior 2/15 -> margin 4/15 - p/2
    docs = [LabeledDoc(f"a{i}", "w", 4, -1) for i in range(3)]
    docs += [LabeledDoc(f"b{i}", "w", 5, -1) for i in range(2)]
    docs += [LabeledDoc("c0", "w", 1, -1)]
    docs += [LabeledDoc(f"d{i}", "z", 4, -1) for i in range(6)]
    docs += [LabeledDoc(f"e{i}", "z", 1, -1) for i in range(3)]
    for p in (0.0, 0.2, 0.5):
        lex = induce_lexicon(Corpus(tuple(docs)), InductionConfig(p, 1.0, 1))
        assert lex.entries["w"] == 5


def test_single_class_word_gets_that_strength():
    docs = [LabeledDoc(f"a{i}", "mükemmel hat", 5, -1) for i in range(3)]
    docs += [LabeledDoc(f"b{i}", "hat paket", k, -1) for i, k in enumerate((1, 2, 3, 4, 1, 2))]
    lex = induce_lexicon(Corpus(tuple(docs)))
    assert lex.entries["mükemmel"] == 5


def test_berbat_only_in_worst_negative_docs():
    docs = [LabeledDoc(f"x{i}", "berbat hat", 1 + i % 5, -5) for i in range(4)]
    docs += [LabeledDoc(f"y{i}", "hat paket", 1 + i % 5, -(1 + i % 4)) for i in range(12)]
    lex = induce_lexicon(Corpus(tuple(docs)))
    assert lex.entries["berbat"] == -5


def test_cross_scale_margin_and_tie():
    # "w" is in every doc of pos class 5 and neg class 5 -> identical margins
    # when p_pos == p_neg and priors match; the positive scale wins the tie.
    docs = [LabeledDoc(f"a{i}", "w", 5, -5) for i in range(2)]
    docs += [LabeledDoc(f"b{i}", "z", 1, -1) for i in range(2)]
    lex = induce_lexicon(Corpus(tuple(docs)), InductionConfig(0.5, 0.5, 1))
    assert lex.entries["w"] == 5
    # a stricter positive threshold shrinks the positive margin
    lex = induce_lexicon(Corpus(tuple(docs)), InductionConfig(0.9, 0.5, 1))
    assert lex.entries["w"] == -5


def test_seed_words_and_emoticons_never_induced():
    docs = [LabeledDoc(f"a{i}", "çok değil :) süper", 5, -1) for i in range(3)]
    docs += [LabeledDoc(f"b{i}", "hat", 1, -1) for i in range(3)]
    lex = induce_lexicon(Corpus(tuple(docs)))
    assert lex.entries == {"süper": 5, "hat": 1}
    assert "çok" in lex.booster_words and "değil" in lex.negation_words


def test_empty_selection_warns(caplog):
    docs = [LabeledDoc(f"a{i}", "hat", 1 + i % 5, -1) for i in range(5)]
    lex = induce_lexicon(Corpus(tuple(docs)), InductionConfig(1.0, 1.0, 2))
    assert len(lex) == 0
    assert "no words" in caplog.text


@pytest.mark.parametrize("p", [0.0, 0.2, 0.4, 0.6, 0.8, 1.0])
def test_oracle_equivalence_fixture(p):
    corpus = induction_fixture()
    toks = [tokenize(d.text) for d in corpus]
    cfg = InductionConfig(p, p, 2)
    lex = induce_lexicon(corpus, cfg)
    exclude = RESERVED_TOKENS | lex.negation_words | lex.booster_words
    expected = brute_force_lexicon([(d.pos.value, d.neg.value) for d in corpus], toks, p, p, 2, exclude)
    assert lex.entries == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.floats(0, 1), st.floats(0, 1), st.integers(1, 3))
def test_oracle_equivalence_random(seed, p_pos, p_neg, min_df):
    corpus = turkish_sample(25, seed=seed)
    toks = [tokenize(d.text) for d in corpus]
    lex = induce_lexicon(corpus, InductionConfig(p_pos, p_neg, min_df))
    exclude = RESERVED_TOKENS | lex.negation_words | lex.booster_words
    labels = [(d.pos.value, d.neg.value) for d in corpus]
    assert lex.entries == brute_force_lexicon(labels, toks, p_pos, p_neg, min_df, exclude)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.floats(0, 1), st.floats(0, 1))
def test_threshold_monotonicity(seed, a, b):
    p1, p2 = sorted((a, b))
    stats = compute_stats(turkish_sample(30, seed=seed), "negative")
    s1, s2 = select_words(stats, p1), select_words(stats, p2)
    assert all(s2[c] <= s1[c] for c in range(1, 6))


def test_scale_purity_and_determinism():
    corpus = turkish_sample(60, seed=5)
    lex = induce_lexicon(corpus)
    for stats, sign in ((compute_stats(corpus, "positive"), 1), (compute_stats(corpus, "negative"), -1)):
        sel = select_words(stats, 0.8 if sign > 0 else 0.4, 2)
        chosen = {w for ws in sel.values() for w in ws}
        for w, s in lex.entries.items():
            if (s > 0) == (sign > 0):
                assert w in chosen
    assert dumps_lexicon(lex) == dumps_lexicon(induce_lexicon(corpus))


def test_load_sample_words(tmp_path):
    p = tmp_path / "lex.txt"
    p.write_text("[words]\ngüzel\t3\nişkence\t-4\n[negation]\ndeğil\n[booster]\nçok\n", encoding="utf-8")
    lex = load_lexicon(p)
    assert lex.entries == {"güzel": 3, "işkence": -4}
    assert lex.negation_words == {"değil"} and lex.booster_words == {"çok"}


@pytest.mark.parametrize("body, msg", [
    ("[words]\nkelime\t0\n", "line 2"),
    ("[words]\nkelime\t6\n", "line 2"),
    ("[words]\niyi\t3\niyi\t2\n", "duplicate"),
    ("[words]\niyi\t3\n[booster]\niyi\n", "duplicate"),
    ("iyi\t3\n", "section"),
    ("[words]\niyi 3\n", "TAB"),
])
def test_load_errors(tmp_path, body, msg):
    p = tmp_path / "bad.txt"
    p.write_text(body, encoding="utf-8")
    with pytest.raises(LexiconError, match=msg):
        load_lexicon(p)


def test_lexicon_group_overlap_rejected():
    with pytest.raises(LexiconError):
        Lexicon({"çok": 2}, booster_words={"çok"})


def test_save_empty_has_only_headers(tmp_path):
    p = tmp_path / "e.txt"
    save_lexicon(Lexicon(), p)
    assert p.read_text(encoding="utf-8") == "[words]\n[negation]\n[booster]\n"


def test_round_trip_and_byte_stability(tmp_path):
    lex = induce_lexicon(turkish_sample(60, seed=1))
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    save_lexicon(lex, a)
    save_lexicon(lex, b)
    assert a.read_bytes() == b.read_bytes()
    assert load_lexicon(a) == lex


def test_sample_lexicon_ships():
    lex = sample_lexicon()
    assert lex.entries["güzel"] == 3 and lex.entries["işkence"] == -4
    assert lex.entries["__emo_pos__"] == 2 and lex.entries["__emo_neg__"] == -2
