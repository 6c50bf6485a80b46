"""
Correlating with human similarity judgements
============================================

An STS file holds sentence pairs with a gold score from 0 to 5. We score each
pair and report the Pearson correlation, once per similarity method, and
compare a learned matrix with the untrained identity map.
"""

from pathlib import Path

import numpy as np

from clsts import (
    BilingualSpace,
    TranslationMatrix,
    TranslationPairSet,
    evaluate_sts,
    load_embeddings,
    load_pairs,
    load_sts_dataset,
    train_matrix,
)

DATA = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "golden" / "inputs"

es = load_embeddings(DATA / "es.vec", lang="es")
en = load_embeddings(DATA / "en.vec", lang="en")
ds = load_sts_dataset(DATA / "sts.tsv")
pairs = TranslationPairSet.resolve(load_pairs(DATA / "train_pairs.tsv"), es, en)

learned = BilingualSpace(es, en, train_matrix(es, en, pairs))
untrained = BilingualSpace(es, en, TranslationMatrix(np.eye(en.dim, es.dim)))

print(f"{len(ds)} pairs")
for method in ("gr-assoc", "opt-align", "aggreg"):
    print(f"{method:>9}  learned {evaluate_sts(learned, ds, method):+.4f}"
          f"   identity {evaluate_sts(untrained, ds, method):+.4f}")
