"""Command-line front end.

Subcommands: train-mapping, eval-mapping, score, eval-sts, mine, plagiarism,
ablate-pairs. Values from ``--config FILE.json`` override built-in defaults
and are themselves overridden by explicit flags. Metrics print with 4
decimals, scores with 6.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .apps import ComparablePair, GoldCase, MiningConfig, char_recall_at_k, mine_parallel, rank_fragments, segment_document
from .embeddings import load_embeddings
from .errors import ClstsError, EmptyInputError
from .evalkit import average_precision, evaluate_sts, load_sts_dataset, recall_at_precision
from .mapper import (
    AdamOptions,
    BilingualSpace,
    TranslationMatrix,
    TranslationPairSet,
    evaluate_matrix,
    load_matrix,
    load_pairs,
    save_matrix,
    train_matrix,
)
from .scorer import SimilarityMethod, score_pairs

log = logging.getLogger("clsts")

SUBCOMMANDS = ("train-mapping", "eval-mapping", "score", "eval-sts", "mine", "plagiarism", "ablate-pairs")


class InputMissing(ClstsError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("expected positive integers")
    return values


def _add_space_args(p: argparse.ArgumentParser, matrix: str | None = "optional") -> None:
    g = p.add_argument_group("embedding spaces")
    g.add_argument("--src-emb", required=True, help="source-language embedding file")
    g.add_argument("--tgt-emb", required=True, help="target-language embedding file")
    g.add_argument("--format", default="auto", choices=["auto", "word2vec-text", "glove-text"])
    g.add_argument("--max-vocab", type=int, default=None)
    g.add_argument("--src-lang", default="")
    g.add_argument("--tgt-lang", default="")
    if matrix == "required":
        g.add_argument("--matrix", required=True, help="translation matrix file")
    elif matrix == "optional":
        g.add_argument("--matrix", default=None, help="translation matrix file (identity if omitted)")


def _add_method_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", default="opt-align", choices=[m.value for m in SimilarityMethod])
    p.add_argument("--jobs", type=int, default=1, help="worker threads for batch scoring")


def _add_train_args(p: argparse.ArgumentParser) -> None:
    d = AdamOptions()
    p.add_argument("--train-method", default="least-squares", choices=["least-squares", "adam"])
    p.add_argument("--lr", type=float, default=d.lr)
    p.add_argument("--lr-schedule", default=d.schedule, choices=["linear", "constant"])
    p.add_argument("--batch-size", type=int, default=d.batch_size)
    p.add_argument("--epochs", type=int, default=d.epochs)
    p.add_argument("--seed", type=int, default=42)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clsts", description="Cross-lingual semantic textual similarity toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    parser.add_argument("--config", default=None, help="JSON file of option defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train-mapping", help="learn a translation matrix from word pairs")
    _add_space_args(p, matrix=None)
    p.add_argument("--pairs", required=True, help="source<TAB>target training pairs")
    p.add_argument("--out", required=True, help="where to write the matrix")
    p.add_argument("--limit", type=int, default=None, help="use only the first N usable pairs")
    _add_train_args(p)

    p = sub.add_parser("eval-mapping", help="precision@k of a translation matrix")
    _add_space_args(p, matrix="required")
    p.add_argument("--test-pairs", required=True)
    p.add_argument("--ranks", type=_int_list, default=[1, 5])

    p = sub.add_parser("ablate-pairs", help="translation quality (and STS) against training-set size")
    _add_space_args(p, matrix=None)
    p.add_argument("--train-pairs", required=True)
    p.add_argument("--test-pairs", required=True)
    p.add_argument("--sizes", type=_int_list, default=[1000, 2000, 3000, 4000])
    p.add_argument("--ranks", type=_int_list, default=[1, 5])
    p.add_argument("--sts", default=None, help="optional STS dataset scored at each size")
    _add_train_args(p)
    _add_method_arg(p)

    p = sub.add_parser("score", help="score sentence pairs")
    _add_space_args(p)
    _add_method_arg(p)
    p.add_argument("--text-s", default=None)
    p.add_argument("--text-t", default=None)
    p.add_argument("--pairs-file", default=None, help="TSV whose first two columns are the texts")

    p = sub.add_parser("eval-sts", help="Pearson correlation on an STS dataset")
    _add_space_args(p)
    _add_method_arg(p)
    p.add_argument("--dataset", required=True)

    p = sub.add_parser("mine", help="parallel sentences from a comparable document pair")
    _add_space_args(p)
    _add_method_arg(p)
    p.add_argument("--doc-s", required=True, help="source document, one sentence per line")
    p.add_argument("--doc-t", required=True, help="target document, one sentence per line")
    p.add_argument("--gold", default=None, help="index_s<TAB>index_t gold alignments")
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--out", default=None, help="write index_s<TAB>index_t<TAB>score lines here")

    p = sub.add_parser("plagiarism", help="character-level recall of source-fragment retrieval")
    _add_space_args(p)
    _add_method_arg(p)
    p.add_argument("--suspicious", required=True, help="suspicious document (source language)")
    p.add_argument("--sources", required=True, nargs="+", help="source documents (target language)")
    p.add_argument("--gold", required=True, help="plagiarism cases file")
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--ks", type=_int_list, default=[1, 5, 10, 20])
    return parser


# argument names that hold input paths, checked before any work starts
_INPUTS = (
    "src_emb", "tgt_emb", "matrix", "pairs", "test_pairs", "train_pairs", "sts",
    "pairs_file", "dataset", "doc_s", "doc_t", "gold", "suspicious",
)


def _validate_inputs(args: argparse.Namespace) -> None:
    for name in _INPUTS:
        value = getattr(args, name, None)
        if value is not None and not Path(value).is_file():
            raise InputMissing(f"file not found: {value}")
    for value in getattr(args, "sources", None) or []:
        if not Path(value).is_file():
            raise InputMissing(f"file not found: {value}")


def _load_spaces(args):
    src = load_embeddings(args.src_emb, args.format, args.max_vocab, lang=args.src_lang)
    tgt = load_embeddings(args.tgt_emb, args.format, args.max_vocab, lang=args.tgt_lang)
    return src, tgt


def _bilingual(args) -> BilingualSpace:
    src, tgt = _load_spaces(args)
    if args.matrix is not None:
        tm = load_matrix(args.matrix)
    else:
        tm = TranslationMatrix(np.eye(tgt.dim, src.dim), src.lang, tgt.lang, 0.0, "identity")
    return BilingualSpace(src, tgt, tm)


def _adam_opts(args) -> AdamOptions:
    return AdamOptions(
        lr=args.lr, batch_size=args.batch_size, epochs=args.epochs, seed=args.seed, schedule=args.lr_schedule
    )


def _read_lines(path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [ln.rstrip("\r\n") for ln in fh]


def cmd_train_mapping(args, out) -> int:
    src, tgt = _load_spaces(args)
    pairs = TranslationPairSet.resolve(load_pairs(args.pairs), src, tgt)
    if args.limit is not None:
        pairs = pairs.head(args.limit)
    tm = train_matrix(src, tgt, pairs, args.train_method, _adam_opts(args))
    save_matrix(tm, args.out)
    print(f"pairs_used {pairs.n}", file=out)
    print(f"pairs_dropped {pairs.dropped}", file=out)
    print(f"train_loss {tm.train_loss:.6e}", file=out)
    return 0


def cmd_eval_mapping(args, out) -> int:
    bi = _bilingual(args)
    test = TranslationPairSet.resolve(load_pairs(args.test_pairs), bi.source, bi.target)
    if test.dropped:
        log.warning("%d test pairs dropped at lookup", test.dropped)
    for k, p in evaluate_matrix(bi, test, args.ranks).items():
        print(f"P@{k} {p:.4f}", file=out)
    return 0


def cmd_ablate_pairs(args, out) -> int:
    src, tgt = _load_spaces(args)
    train = TranslationPairSet.resolve(load_pairs(args.train_pairs), src, tgt)
    test = TranslationPairSet.resolve(load_pairs(args.test_pairs), src, tgt)
    ds = load_sts_dataset(args.sts) if args.sts else None
    header = ["size", "pairs_used"] + [f"P@{k}" for k in args.ranks]
    if ds is not None:
        header.append(f"pearson[{args.method}]")
    print("\t".join(header), file=out)
    for size in args.sizes:
        subset = train.head(size)
        tm = train_matrix(src, tgt, subset, args.train_method, _adam_opts(args))
        bi = BilingualSpace(src, tgt, tm)
        row = [str(size), str(subset.n)]
        row += [f"{p:.4f}" for p in evaluate_matrix(bi, test, args.ranks).values()]
        if ds is not None:
            row.append(f"{evaluate_sts(bi, ds, args.method, jobs=args.jobs):.4f}")
        print("\t".join(row), file=out)
    return 0


def cmd_score(args, out) -> int:
    if args.pairs_file is not None:
        pairs = []
        for lineno, line in enumerate(_read_lines(args.pairs_file), start=1):
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) < 2:
                raise ClstsError(f"{args.pairs_file}: line {lineno}: expected at least 2 tab-separated fields")
            pairs.append((fields[0], fields[1]))
    elif args.text_s is not None and args.text_t is not None:
        pairs = [(args.text_s, args.text_t)]
    else:
        raise ClstsError("give either --pairs-file or both --text-s and --text-t")
    bi = _bilingual(args)
    for k, res in enumerate(score_pairs(bi, pairs, args.method, jobs=args.jobs)):
        if isinstance(res, EmptyInputError):
            print(f"{args.method}\tNA", file=out)
            print(f"pair {k}: {res}", file=sys.stderr)
        else:
            print(f"{args.method}\t{res.value:.6f}", file=out)
    return 0


def cmd_eval_sts(args, out) -> int:
    bi = _bilingual(args)
    ds = load_sts_dataset(args.dataset)
    rho = evaluate_sts(bi, ds, args.method, jobs=args.jobs)
    print(f"pearson {rho:.4f}", file=out)
    return 0


def _load_gold_alignments(path) -> frozenset[tuple[int, int]]:
    gold = set()
    for lineno, line in enumerate(_read_lines(path), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        try:
            i, j = int(fields[0]), int(fields[1])
        except (ValueError, IndexError):
            raise ClstsError(f"{path}: line {lineno}: expected index_s<TAB>index_t") from None
        gold.add((i, j))
    return frozenset(gold)


def _sentences(path) -> tuple[str, ...]:
    return tuple(_read_lines(path))


def cmd_mine(args, out) -> int:
    bi = _bilingual(args)
    gold = _load_gold_alignments(args.gold) if args.gold else None
    cp = ComparablePair(_sentences(args.doc_s), _sentences(args.doc_t), gold)
    result = mine_parallel(bi, cp, MiningConfig(args.tau, args.method))
    if result.emitted is not None:
        rows = result.emitted
    else:
        rows = tuple((i, j, sc) for i, j, sc, _ in result.candidates.items)
    lines = [f"{i}\t{j}\t{sc:.6f}\n" for i, j, sc in rows]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.writelines(lines)
    if gold is not None:
        ranked = result.candidates
        print(f"AP {average_precision(ranked):.4f}", file=out)
        print(f"R@90 {recall_at_precision(ranked, 0.9):.4f}", file=out)
        print(f"R@80 {recall_at_precision(ranked, 0.8):.4f}", file=out)
    elif not args.out:
        out.writelines(lines)
    return 0


def _load_gold_cases(path) -> list[GoldCase]:
    cases = []
    for lineno, line in enumerate(_read_lines(path), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        f = line.split("\t")
        try:
            cases.append(GoldCase(int(f[0]), int(f[1]), f[2], int(f[3]), int(f[4])))
        except (ValueError, IndexError):
            raise ClstsError(
                f"{path}: line {lineno}: expected susp_start<TAB>susp_end<TAB>source_doc_id<TAB>src_start<TAB>src_end"
            ) from None
    return cases


def cmd_plagiarism(args, out) -> int:
    bi = _bilingual(args)
    text = Path(args.suspicious).read_text(encoding="utf-8")
    susp = segment_document(text, args.window, args.stride, doc_id=Path(args.suspicious).name)
    sources = [
        segment_document(Path(p).read_text(encoding="utf-8"), args.window, args.stride, doc_id=Path(p).name)
        for p in args.sources
    ]
    gold = _load_gold_cases(args.gold)
    retrievals = rank_fragments(bi, susp, sources, args.method, max(args.ks))
    for k in args.ks:
        print(f"R@{k} {char_recall_at_k(retrievals, gold, k):.4f}", file=out)
    return 0


COMMANDS = {
    "train-mapping": cmd_train_mapping,
    "eval-mapping": cmd_eval_mapping,
    "ablate-pairs": cmd_ablate_pairs,
    "score": cmd_score,
    "eval-sts": cmd_eval_sts,
    "mine": cmd_mine,
    "plagiarism": cmd_plagiarism,
}


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    if known.config is None:
        return
    with open(known.config, encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ClstsError(f"{known.config}: config must be a JSON object")
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for sp in subparsers.choices.values():
        dests = {a.dest for a in sp._actions}
        relevant = {k: v for k, v in cfg.items() if k in dests}
        for action in sp._actions:
            if action.dest in relevant:
                action.required = False
        sp.set_defaults(**relevant)


def main(argv: Sequence[str] | None = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except (OSError, ValueError, ClstsError) as exc:
        print(f"clsts: error: {exc}", file=sys.stderr)
        return 1
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        _validate_inputs(args)
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return COMMANDS[args.command](args, out)
    except (ClstsError, OSError) as exc:
        print(f"clsts: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
