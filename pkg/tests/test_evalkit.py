import logging
import statistics

import numpy as np
import pytest

from clsts.embeddings import EmbeddingSpace
from clsts.errors import DomainError, ParseError
from clsts.evalkit import (
    RankedCandidates,
    StsDataset,
    average_precision,
    evaluate_sts,
    load_sts_dataset,
    pearson,
    recall_at_precision,
)
from clsts.mapper import BilingualSpace


def ap_from_definition(labels):
    labels = np.asarray(labels, dtype=bool)
    ranks = np.flatnonzero(labels) + 1
    return float(np.mean([np.sum(labels[:r]) / r for r in ranks]))


def rap_from_definition(labels, p):
    labels = [bool(b) for b in labels]
    pos = sum(labels)
    recalls = [sum(labels[:i]) / pos for i in range(1, len(labels) + 1) if sum(labels[:i]) / i >= p]
    return max(recalls, default=0.0)


# --- loading ---------------------------------------------------------------


def test_load_sts_dataset(tmp_path):
    p = tmp_path / "sts.tsv"
    p.write_text("el perro\tthe dog\t4.5\n\nun gato\ta cat\t0\n", encoding="utf-8")
    ds = load_sts_dataset(p)
    assert ds.pairs == (("el perro", "the dog", 4.5), ("un gato", "a cat", 0.0))
    assert len(ds) == 2 and ds.name == str(p)


@pytest.mark.parametrize("line", ["a\tb\t5.5", "a\tb", "a\tb\tgood", "a\tb\t-0.1"])
def test_load_sts_rejects(tmp_path, line):
    p = tmp_path / "sts.tsv"
    p.write_text("x\ty\t1\n" + line + "\n", encoding="utf-8")
    with pytest.raises(ParseError, match="line 2"):
        load_sts_dataset(p)


# --- pearson ---------------------------------------------------------------


def test_pearson_examples():
    assert pearson([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0, abs=1e-12)
    assert pearson([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0, abs=1e-12)
    assert pearson([1, 2, 3], [1, 3, 2]) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("x, y", [([1, 1, 1], [1, 2, 3]), ([1, 2, 3], [0.1] * 3), ([1], [2]), ([1, 2], [1, 2, 3])])
def test_pearson_degenerate(x, y):
    with pytest.raises(DomainError):
        pearson(x, y)


def test_pearson_affine_invariance_and_oracle():
    rng = np.random.default_rng(0)
    for _ in range(500):
        n = int(rng.integers(2, 40))
        x, y = rng.normal(size=n), rng.normal(size=n)
        r = pearson(x, y)
        assert r == pytest.approx(statistics.correlation(list(x), list(y)), abs=1e-9)
        a, c = rng.uniform(0.1, 10), rng.uniform(-5, 5)
        assert pearson(a * x + c, y) == pytest.approx(r, abs=1e-9)
        assert pearson(-a * x + c, y) == pytest.approx(-r, abs=1e-9)
        assert -1.0 <= r <= 1.0


# --- ranking metrics -------------------------------------------------------


def test_ap_examples():
    assert average_precision([True, True, False]) == 1.0
    assert average_precision([False, True]) == 0.5
    assert average_precision([True, False, True]) == pytest.approx(5 / 6, abs=1e-15)


def test_rap_examples():
    assert recall_at_precision([True, True, False], 0.9) == 1.0
    assert recall_at_precision([False, True], 0.9) == 0.0
    assert recall_at_precision([True, False, True], 0.6) == 1.0


def test_metrics_need_positives():
    with pytest.raises(DomainError):
        average_precision([False, False])
    with pytest.raises(DomainError):
        recall_at_precision([False], 0.5)
    with pytest.raises(DomainError):
        recall_at_precision([True], 0.0)


def test_ranked_candidates_sort_is_stable():
    rc = RankedCandidates.from_unsorted([(0, 0, 0.5, False), (0, 1, 0.9, True), (1, 0, 0.5, True)])
    assert [it[:2] for it in rc.items] == [(0, 1), (0, 0), (1, 0)]
    assert rc.labels == [True, False, True]
    assert average_precision(rc) == pytest.approx(5 / 6)


def test_metrics_match_definitions_random():
    rng = np.random.default_rng(1)
    for _ in range(500):
        n = int(rng.integers(1, 30))
        labels = list(rng.random(n) < rng.uniform(0.1, 0.9))
        if not any(labels):
            labels[int(rng.integers(n))] = True
        assert average_precision(labels) == pytest.approx(ap_from_definition(labels), abs=1e-12)
        prev = 1.0
        for p in (0.5, 0.7, 0.8, 0.9, 1.0):
            r = recall_at_precision(labels, p)
            assert r == pytest.approx(rap_from_definition(labels, p), abs=1e-12)
            assert r <= prev
            prev = r
        ap = average_precision(labels)
        first_neg = labels.index(False) if False in labels else n
        all_pos_first = not any(labels[first_neg:])
        assert (ap == 1.0) == all_pos_first


# --- end-to-end sts --------------------------------------------------------


@pytest.fixture
def word_space():
    space = EmbeddingSpace.from_pairs([("a", [1, 0]), ("b", [0, 1]), ("c", [1, 1])])
    return BilingualSpace.identity(space)


def test_evaluate_sts_two_pairs(word_space):
    ds = StsDataset((("a", "a", 5.0), ("a", "b", 0.0)), "two")
    assert evaluate_sts(word_space, ds, "aggreg") == pytest.approx(1.0, abs=1e-12)


def test_evaluate_sts_constant_predictions(word_space):
    ds = StsDataset((("a", "a", 5.0), ("b", "b", 1.0), ("c", "c", 3.0)), "flat")
    with pytest.raises(DomainError, match="zero variance"):
        evaluate_sts(word_space, ds)


def test_evaluate_sts_unscoreable(word_space, caplog):
    ds = StsDataset((("a", "a", 5.0), ("zz", "a", 1.0), ("a", "b", 0.0)), "oov")
    with caplog.at_level(logging.WARNING):
        r = evaluate_sts(word_space, ds, "opt-align")
    assert "unscoreable" in caplog.text
    assert r == pytest.approx(pearson([1.0, 0.0, 0.0], [5.0, 1.0, 0.0]), abs=1e-12)
    with pytest.raises(DomainError, match="unscoreable"):
        evaluate_sts(word_space, StsDataset((("zz", "a", 1.0), ("a", "qq", 2.0)), "none"))
    with pytest.raises(DomainError):
        evaluate_sts(word_space, StsDataset((), "empty"))
