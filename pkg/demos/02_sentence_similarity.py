"""
Three ways to compare a Spanish and an English sentence
=======================================================

Greedy association lets every word pick its best partner on the other side.
Optimal alignment forces a one-to-one matching. Aggregation compares the two
mean vectors. Words missing from a vocabulary are dropped and counted.
"""

from pathlib import Path

from clsts import BilingualSpace, TranslationPairSet, load_embeddings, load_pairs, score_pair, train_matrix

DATA = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "golden" / "inputs"

es = load_embeddings(DATA / "es.vec", lang="es")
en = load_embeddings(DATA / "en.vec", lang="en")
pairs = TranslationPairSet.resolve(load_pairs(DATA / "train_pairs.tsv"), es, en)
bi = BilingualSpace(es, en, train_matrix(es, en, pairs))

examples = [
    ("el gato y el perro", "the cat and the dog"),
    ("el gato y el perro", "the dog and the cat"),
    ("el gato gato gato", "the cat and the dog"),
    ("la luna sobre el mar", "bread and milk"),
]
for s, t in examples:
    row = [f"{m:>9}={score_pair(bi, s, t, m).value:+.3f}" for m in ("gr-assoc", "opt-align", "aggreg")]
    print(f"{s!r:24} vs {t!r:24}", *row)

# the third pair shows the difference: greedy lets all three "gato" copies
# match "cat", the alignment can use it only once

r = score_pair(bi, "el gato", "the cat", "opt-align")
print("out-of-vocabulary tokens:", r.oov_source, "source,", r.oov_target, "target")
