"""Brute-force BPE reference: recount every pair from scratch each step."""

from collections import Counter


def oracle_merges(tokens, target, unit="bytes"):
    if unit == "bytes":
        words = [[bytes([b]) for b in t.encode("utf-8")] for t in tokens if t]
    else:
        words = [[c.encode("utf-8") for c in t] for t in tokens if t]
    merges = []
    for _ in range(target):
        counts = Counter()
        for w in words:
            for i in range(len(w) - 1):
                counts[(w[i], w[i + 1])] += 1
        if not counts:
            break
        top = max(counts.values())
        if top < 2:
            break
        best = min(p for p, c in counts.items() if c == top)
        merges.append(best)
        new_words = []
        for w in words:
            out, i = [], 0
            while i < len(w):
                if i + 1 < len(w) and (w[i], w[i + 1]) == best:
                    out.append(w[i] + w[i + 1])
                    i += 2
                else:
                    out.append(w[i])
                    i += 1
            new_words.append(out)
        words = new_words
    return merges


def oracle_encode_word(word_units, merges):
    """Apply merges in rank order, one whole pass per merge."""
    syms = list(word_units)
    for a, b in merges:
        out, i = [], 0
        while i < len(syms):
            if i + 1 < len(syms) and syms[i] == a and syms[i + 1] == b:
                out.append(a + b)
                i += 2
            else:
                out.append(syms[i])
                i += 1
        syms = out
    return syms
