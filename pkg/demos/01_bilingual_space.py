"""
Learning a translation matrix
=============================

Two toy 5-d embedding spaces, Spanish and English, where the Spanish vectors
are a linear image of the English ones plus a little noise. We fit the matrix
that maps Spanish into English from 20 word pairs, then check that held-out
Spanish words land next to their English translations.
"""

from pathlib import Path

import numpy as np

from clsts import (
    AdamOptions,
    BilingualSpace,
    TranslationPairSet,
    evaluate_matrix,
    load_embeddings,
    load_pairs,
    map_vector,
    nearest_neighbors,
    train_matrix,
)

DATA = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "golden" / "inputs"

es = load_embeddings(DATA / "es.vec", lang="es")
en = load_embeddings(DATA / "en.vec", lang="en")
print(f"{len(es)} Spanish and {len(en)} English words, dim {es.dim}")

train = TranslationPairSet.resolve(load_pairs(DATA / "train_pairs.tsv"), es, en)
test = TranslationPairSet.resolve(load_pairs(DATA / "test_pairs.tsv"), es, en)

# closed form first
ls = train_matrix(es, en, train, "least-squares")
print("least squares, mean squared residual per pair:", ls.train_loss)

# minibatch Adam gets close to the same optimum
adam = train_matrix(es, en, train, "adam", AdamOptions(seed=42))
print("adam, mean squared residual per pair:", adam.train_loss)
print("max entry difference:", np.max(np.abs(ls.m - adam.m)))

bi = BilingualSpace(es, en, adam)
print("held-out precision:", evaluate_matrix(bi, test, [1, 5]))

for word in ("dia", "mar", "calle"):
    v = map_vector(bi, es.vectors[es.index_of(word)])
    print(word, "->", [(w, round(c, 3)) for w, c in nearest_neighbors(en, v, 3)])
