import json

import pytest
from hypothesis import given, settings, strategies as st

from opinionstrength.corpus import (Corpus, CorpusError, LabeledDoc, NegStrength, PosStrength,
                                    load_corpus, save_corpus)


def write_lines(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_load_single_line(tmp_path):
    p = write_lines(tmp_path / "c.jsonl", ['{"id":"t1","text":"hat yok","pos":1,"neg":-4}'])
    corpus = load_corpus(p)
    doc = corpus[0]
    assert (doc.id, doc.text, doc.pos, doc.neg) == ("t1", "hat yok", PosStrength(1), NegStrength(-4))
    assert doc.neg.magnitude() == 4


def test_out_of_range_pos_names_id(tmp_path):
    p = write_lines(tmp_path / "c.jsonl", ['{"id":"bad","text":"x","pos":6,"neg":-1}'])
    with pytest.raises(CorpusError, match="bad"):
        load_corpus(p)


@pytest.mark.parametrize("neg", [0, -6, 2, 1.5, True])
def test_negative_range(tmp_path, neg):
    p = write_lines(tmp_path / "c.jsonl", [json.dumps({"id": "n", "text": "x", "pos": 1, "neg": neg})])
    with pytest.raises(CorpusError):
        load_corpus(p)


def test_three_lines_keep_order(tmp_path):
    lines = [json.dumps({"id": i, "text": f"t {i}", "pos": 2, "neg": -2}) for i in ("z", "a", "m")]
    corpus = load_corpus(write_lines(tmp_path / "c.jsonl", lines))
    assert corpus.ids() == ["z", "a", "m"]


def test_malformed_json_names_line(tmp_path):
    p = write_lines(tmp_path / "c.jsonl", ['{"id":"a","text":"x","pos":1,"neg":-1}', '{oops'])
    with pytest.raises(CorpusError, match="line 2"):
        load_corpus(p)


def test_duplicate_id(tmp_path):
    rec = '{"id":"dup","text":"x","pos":1,"neg":-1}'
    with pytest.raises(CorpusError, match="dup"):
        load_corpus(write_lines(tmp_path / "c.jsonl", [rec, rec]))


def test_blank_text_rejected():
    with pytest.raises(CorpusError):
        LabeledDoc("x", "   ", 1, -1)


def test_empty_corpus_round_trip(tmp_path):
    p = tmp_path / "e.jsonl"
    save_corpus(Corpus(()), p)
    assert p.read_bytes() == b""
    assert len(load_corpus(p)) == 0


def test_unicode_preserved(tmp_path):
    p = tmp_path / "u.jsonl"
    save_corpus(Corpus((LabeledDoc("u", "çok pahalı", 1, -3, "2015-03-01T10:00:00Z", "Carrier-X"),)), p)
    assert "çok pahalı" in p.read_text(encoding="utf-8")
    assert load_corpus(p)[0].text == "çok pahalı"


texts = st.text(min_size=1, max_size=40).filter(lambda s: s.strip())
docs = st.builds(
    lambda i, t, p, n, ts, e: LabeledDoc(f"d{i}", t, p, n, ts, e),
    st.integers(0, 10_000), texts, st.integers(1, 5), st.integers(-5, -1),
    st.one_of(st.none(), st.just("2015-03-02T08:00:00+03:00")),
    st.one_of(st.none(), st.sampled_from(["Carrier-X", "Carrier-Y"])),
)


@settings(max_examples=60, deadline=None)
@given(st.lists(docs, max_size=10, unique_by=lambda d: d.id))
def test_round_trip_property(tmp_path_factory, ds):
    c = Corpus(tuple(ds))
    p = tmp_path_factory.mktemp("rt") / "c.jsonl"
    save_corpus(c, p)
    assert load_corpus(p) == c
