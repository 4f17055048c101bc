"""Independent brute-force reference implementations used by the tests.

Nothing here calls the package's induction or matching code.
"""

from decimal import Decimal


def _pscale(p):
    """p as integer numerator over 10**q."""
    d = Decimal(repr(float(p)))
    q = max(0, -d.as_tuple().exponent)
    return int(d * 10 ** q), 10 ** q


def brute_force_lexicon(docs, tokens, p_pos, p_neg, min_df, exclude=()):
    """Return word -> signed strength by enumerating every (word, class) pair.

    ``docs`` is a list of (pos, neg_signed) label pairs, ``tokens`` the
    aligned token lists.
    """
    n = len(docs)
    vocab = sorted({t for toks in tokens for t in toks} - set(exclude))
    best = {}
    for scale, p in (("positive", p_pos), ("negative", p_neg)):
        P, Q = _pscale(p)
        labels = [a if scale == "positive" else -b for a, b in docs]
        for w in vocab:
            has = [w in set(toks) for toks in tokens]
            df = sum(has)
            if df < min_df:
                continue
            cands = []
            for c in range(1, 6):
                n_c = sum(1 for y in labels if y == c)
                df_c = sum(1 for y, h in zip(labels, has) if h and y == c)
                # df_c/df > p/2 + n_c/(2n)  <=>  2 n Q df_c > P n df + Q n_c df
                num = 2 * n * Q * df_c - P * n * df - Q * n_c * df
                den = 2 * n * Q * df
                if num > 0:
                    cands.append((c, df_c, num, den))
            if not cands:
                continue
            # widest margin num/den (den shared within a word), then df_c, then smaller class
            cands.sort(key=lambda t: (-t[2], -t[1], t[0]))
            c, _, num, den = cands[0]
            best.setdefault(w, {})[scale] = (c, num, den)
    out = {}
    for w, per in best.items():
        if "positive" in per and "negative" in per:
            cp, n1, d1 = per["positive"]
            cn, n2, d2 = per["negative"]
            out[w] = cp if n1 * d2 >= n2 * d1 else -cn
        elif "positive" in per:
            out[w] = per["positive"][0]
        else:
            out[w] = -per["negative"][0]
    return out


def brute_force_longest_match(text, keys):
    """List of matched emoticon literals, scanning left to right."""
    out = []
    i = 0
    while i < len(text):
        hits = [k for k in keys if text.startswith(k, i)]
        if hits:
            k = max(hits, key=len)
            out.append(k)
            i += len(k)
        else:
            i += 1
    return out
