"""Build the golden end-to-end fixture.

    python tests/fixtures/golden/make_golden.py              # rewrite inputs only
    python tests/fixtures/golden/make_golden.py --regenerate # also rewrite expected outputs

Inputs are a toy English/Spanish pair of 5-d spaces where the Spanish vectors
are a fixed linear image of the English ones plus small noise, so a learned
matrix translates most words correctly. Expected outputs are the stdout of
each pipeline step plus the matrix and mining files it writes.
"""

from __future__ import annotations

import argparse
import io
from pathlib import Path

import numpy as np

HERE = Path(__file__).resolve().parent
INPUTS = HERE / "inputs"
EXPECTED = HERE / "expected"

LEXICON = [
    ("cat", "gato"), ("dog", "perro"), ("house", "casa"), ("water", "agua"), ("tree", "arbol"),
    ("sun", "sol"), ("moon", "luna"), ("city", "ciudad"), ("river", "rio"), ("book", "libro"),
    ("car", "coche"), ("road", "camino"), ("king", "rey"), ("queen", "reina"), ("child", "nino"),
    ("bread", "pan"), ("milk", "leche"), ("school", "escuela"), ("friend", "amigo"), ("night", "noche"),
    ("day", "dia"), ("sea", "mar"), ("bird", "pajaro"), ("fish", "pez"), ("fire", "fuego"),
    ("door", "puerta"), ("window", "ventana"), ("table", "mesa"), ("garden", "jardin"), ("street", "calle"),
]
EN = [e for e, _ in LEXICON]
ES = {e: s for e, s in LEXICON}

STS = [
    ("gato perro casa", "cat dog house", 5.0),
    ("agua arbol sol", "water tree moon", 3.4),
    ("ciudad rio", "city river", 5.0),
    ("libro coche", "book street", 2.5),
    ("rey reina nino", "dog fish fire", 0.2),
    ("pan leche", "bread milk", 4.8),
    ("escuela amigo noche", "school friend day", 3.5),
    ("mar pajaro", "door window", 0.0),
    ("puerta ventana mesa", "door window table garden", 4.2),
    ("jardin calle", "garden", 2.8),
]

DOC_T = [
    "the cat and the dog live in the house",
    "the river runs through the city",
    "a king and a queen",
    "the sun and the moon",
    "bread and milk for the child",
    "fire by the window at night",
    "a fish in the sea",
]
DOC_S = [
    "el rey y la reina",
    "el pajaro en el jardin",
    "el gato y el perro viven en la casa",
    "pan y leche para el nino",
    "un libro en la mesa",
    "el rio cruza la ciudad",
]
GOLD_MINING = [(0, 2), (2, 0), (3, 4), (5, 1)]

SOURCE_A = [
    "the king reads a book",
    "the car on the road",
    "the bird sings in the garden",
    "water from the river",
    "the child walks to school",
    "a friend at the door",
]
SOURCE_B = [
    "the moon over the sea",
    "a fish and a bird",
    "fire in the street",
    "bread on the table",
    "the queen and the king",
    "a tree by the house",
]
SUSPICIOUS = [
    "la luna y el sol",
    "el perro en la calle",
    "el pajaro canta en el jardin",
    "agua del rio",
    "el nino camina a la escuela",
    "un arbol en la ciudad",
]
# suspicious sentences 2..4 translate SOURCE_A sentences 2..4
PLAG_SUSP = (2, 5)
PLAG_SRC = (2, 5)

PIPELINE = [
    ["train-mapping", "--src-emb", "{in}/es.vec", "--tgt-emb", "{in}/en.vec", "--pairs", "{in}/train_pairs.tsv",
     "--out", "{out}/matrix.txt", "--train-method", "adam", "--seed", "42", "--src-lang", "es", "--tgt-lang", "en"],
    ["eval-mapping", "--src-emb", "{in}/es.vec", "--tgt-emb", "{in}/en.vec", "--matrix", "{out}/matrix.txt",
     "--test-pairs", "{in}/test_pairs.tsv", "--ranks", "1,5"],
    ["eval-sts", "--src-emb", "{in}/es.vec", "--tgt-emb", "{in}/en.vec", "--matrix", "{out}/matrix.txt",
     "--dataset", "{in}/sts.tsv", "--method", "opt-align"],
    ["mine", "--src-emb", "{in}/es.vec", "--tgt-emb", "{in}/en.vec", "--matrix", "{out}/matrix.txt",
     "--doc-s", "{in}/doc_es.txt", "--doc-t", "{in}/doc_en.txt", "--gold", "{in}/mining_gold.tsv",
     "--tau", "0.5", "--out", "{out}/mined.tsv"],
    ["plagiarism", "--src-emb", "{in}/es.vec", "--tgt-emb", "{in}/en.vec", "--matrix", "{out}/matrix.txt",
     "--suspicious", "{in}/suspicious.txt", "--sources", "{in}/source_a.txt", "{in}/source_b.txt",
     "--gold", "{in}/plagiarism_gold.tsv", "--window", "2", "--stride", "1", "--ks", "1,2,5"],
]
OUTPUT_FILES = ("matrix.txt", "mined.tsv")


def _span(lines: list[str], a: int, b: int) -> tuple[int, int]:
    starts = np.cumsum([0] + [len(x) + 1 for x in lines])
    return int(starts[a]), int(starts[b - 1] + len(lines[b - 1]))


def write_inputs(dest: Path = INPUTS) -> None:
    from clsts.embeddings import EmbeddingSpace, save_embeddings

    dest.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(2016)
    en = rng.normal(size=(len(EN), 5))
    mix = rng.normal(size=(5, 5)) + 2 * np.eye(5)
    es = en @ mix.T + rng.normal(scale=0.01, size=en.shape)
    save_embeddings(EmbeddingSpace("en", tuple(EN), np.round(en, 6)), dest / "en.vec")
    save_embeddings(EmbeddingSpace("es", tuple(ES[w] for w in EN), np.round(es, 6)), dest / "es.vec")

    pairs = [f"{ES[w]}\t{w}\n" for w in EN]
    (dest / "train_pairs.tsv").write_text("".join(pairs[:20]), encoding="utf-8")
    (dest / "test_pairs.tsv").write_text("".join(pairs[20:]), encoding="utf-8")
    (dest / "sts.tsv").write_text("".join(f"{a}\t{b}\t{g}\n" for a, b, g in STS), encoding="utf-8")
    (dest / "doc_es.txt").write_text("\n".join(DOC_S) + "\n", encoding="utf-8")
    (dest / "doc_en.txt").write_text("\n".join(DOC_T) + "\n", encoding="utf-8")
    (dest / "mining_gold.tsv").write_text("".join(f"{i}\t{j}\n" for i, j in GOLD_MINING), encoding="utf-8")
    (dest / "source_a.txt").write_text("\n".join(SOURCE_A) + "\n", encoding="utf-8")
    (dest / "source_b.txt").write_text("\n".join(SOURCE_B) + "\n", encoding="utf-8")
    (dest / "suspicious.txt").write_text("\n".join(SUSPICIOUS) + "\n", encoding="utf-8")
    s0, s1 = _span(SUSPICIOUS, *PLAG_SUSP)
    r0, r1 = _span(SOURCE_A, *PLAG_SRC)
    (dest / "plagiarism_gold.tsv").write_text(f"{s0}\t{s1}\tsource_a.txt\t{r0}\t{r1}\n", encoding="utf-8")


def run_pipeline(out_dir: Path, in_dir: Path = INPUTS) -> dict[str, str]:
    """Run every step; return stdout per step keyed ``NN-subcommand``."""
    from clsts.cli import main

    out_dir.mkdir(parents=True, exist_ok=True)
    transcripts = {}
    for n, step in enumerate(PIPELINE, start=1):
        argv = [a.replace("{in}", str(in_dir)).replace("{out}", str(out_dir)) for a in step]
        buf = io.StringIO()
        code = main(argv, out=buf)
        if code != 0:
            raise RuntimeError(f"step {step[0]} exited with {code}")
        transcripts[f"{n:02d}-{step[0]}"] = buf.getvalue()
    return transcripts


def regenerate() -> None:
    transcripts = run_pipeline(EXPECTED)
    for name, text in transcripts.items():
        (EXPECTED / f"{name}.stdout").write_text(text, encoding="utf-8")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--regenerate", action="store_true", help="also rewrite expected outputs")
    ns = ap.parse_args()
    write_inputs()
    if ns.regenerate:
        regenerate()
