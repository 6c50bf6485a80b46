"""
Finding the source of translated text
=====================================

A Spanish document contains three sentences translated from an English
source. Both sides are cut into overlapping windows of sentences, each
suspicious window retrieves its most similar source windows, and we measure
how many of the plagiarised characters are covered by a correct hit.
"""

from pathlib import Path

from clsts import (
    BilingualSpace,
    GoldCase,
    TranslationPairSet,
    char_recall_at_k,
    load_embeddings,
    load_pairs,
    rank_fragments,
    segment_document,
    train_matrix,
)

DATA = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "golden" / "inputs"

es = load_embeddings(DATA / "es.vec", lang="es")
en = load_embeddings(DATA / "en.vec", lang="en")
pairs = TranslationPairSet.resolve(load_pairs(DATA / "train_pairs.tsv"), es, en)
bi = BilingualSpace(es, en, train_matrix(es, en, pairs))

susp = segment_document((DATA / "suspicious.txt").read_text(encoding="utf-8"), window=2, doc_id="suspicious")
sources = [
    segment_document((DATA / name).read_text(encoding="utf-8"), window=2, doc_id=name)
    for name in ("source_a.txt", "source_b.txt")
]
print(len(susp.fragments), "suspicious fragments,", sum(len(d.fragments) for d in sources), "source fragments")

hits = rank_fragments(bi, susp, sources, "opt-align", k=3)
for frag in susp.fragments:
    best = hits[(frag.char_start, frag.char_end)][0]
    print(f"  {frag.text!r:50} -> {best.doc_id}#{best.fragment_index} ({best.score:.3f})")

s0, s1, doc, r0, r1 = (DATA / "plagiarism_gold.tsv").read_text().split("\t")
gold = [GoldCase(int(s0), int(s1), doc, int(r0), int(r1))]
for k in (1, 2, 3):
    print(f"R@{k}", round(char_recall_at_k(hits, gold, k), 4))
