"""
Mining parallel sentences from comparable documents
===================================================

Every Spanish sentence is scored against every English sentence. Ranking
all candidates lets us measure average precision against gold links, and a
threshold tau turns the ranking into a list of extracted pairs.
"""

from pathlib import Path

from clsts import (
    BilingualSpace,
    ComparablePair,
    MiningConfig,
    TranslationPairSet,
    average_precision,
    load_embeddings,
    load_pairs,
    mine_parallel,
    recall_at_precision,
    train_matrix,
)

DATA = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "golden" / "inputs"

es = load_embeddings(DATA / "es.vec", lang="es")
en = load_embeddings(DATA / "en.vec", lang="en")
pairs = TranslationPairSet.resolve(load_pairs(DATA / "train_pairs.tsv"), es, en)
bi = BilingualSpace(es, en, train_matrix(es, en, pairs))

doc_s = tuple((DATA / "doc_es.txt").read_text(encoding="utf-8").splitlines())
doc_t = tuple((DATA / "doc_en.txt").read_text(encoding="utf-8").splitlines())
gold = frozenset(
    tuple(int(x) for x in line.split("\t"))
    for line in (DATA / "mining_gold.tsv").read_text().splitlines()
)
cp = ComparablePair(doc_s, doc_t, gold)

result = mine_parallel(bi, cp, MiningConfig(tau=0.9))
ranked = result.candidates
print(f"{len(ranked)} candidates, {len(gold)} gold links")
print("AP", average_precision(ranked))
print("R@90", recall_at_precision(ranked, 0.9), " R@80", recall_at_precision(ranked, 0.8))

print("\ntop of the ranking:")
for i, j, score, is_gold in ranked.items[:6]:
    print(f"  {score:.3f} {'*' if is_gold else ' '} {doc_s[i]!r} / {doc_t[j]!r}")

print("\nextracted at tau=0.9:", [(i, j) for i, j, _ in result.emitted])
