from __future__ import annotations

import math

import numpy as np
import pytest

from clsts.embeddings import EmbeddingSpace
from clsts.mapper import BilingualSpace, TranslationMatrix, TranslationPairSet


@pytest.fixture
def tiny_space():
    return EmbeddingSpace.from_pairs([("cat", [1, 0, 0]), ("dog", [0, 1, 0])], lang="en")


@pytest.fixture
def tiny_identity(tiny_space):
    return BilingualSpace.identity(tiny_space)


def realize_similarities(sim, source_words=None, target_words=None) -> BilingualSpace:
    """Identity-mapped bilingual space whose word cosines equal ``sim`` exactly.

    Targets are orthonormal basis vectors; source word i is row i of ``sim``
    completed to unit length along its own extra axis.
    """
    sim = np.asarray(sim, dtype=float)
    n_s, n_t = sim.shape
    dim = n_t + n_s
    source_words = source_words or [f"s{i}" for i in range(n_s)]
    target_words = target_words or [f"t{j}" for j in range(n_t)]
    tgt = np.zeros((n_t, dim))
    tgt[:, :n_t] = np.eye(n_t)
    src = np.zeros((n_s, dim))
    for i, row in enumerate(sim):
        src[i, :n_t] = row
        src[i, n_t + i] = math.sqrt(max(0.0, 1.0 - float(row @ row)))
    source = EmbeddingSpace("xx", tuple(source_words), src)
    target = EmbeddingSpace("yy", tuple(target_words), tgt)
    return BilingualSpace(source, target, TranslationMatrix(np.eye(dim), "xx", "yy"))


def random_space(rng, n_words, dim, prefix="w", lang=""):
    words = tuple(f"{prefix}{i}" for i in range(n_words))
    return EmbeddingSpace(lang, words, rng.normal(size=(n_words, dim)))


def random_bilingual(rng, n_src=12, n_tgt=12, d_s=5, d_t=4) -> BilingualSpace:
    src = random_space(rng, n_src, d_s, "s", "xx")
    tgt = random_space(rng, n_tgt, d_t, "t", "yy")
    return BilingualSpace(src, tgt, TranslationMatrix(rng.normal(size=(d_t, d_s)), "xx", "yy"))


def exact_linear_fixture(seed=0, dim=4, n_train=50, n_test=200):
    """Source unit vectors s_i, targets t_i = M* s_i for a fixed random invertible M*."""
    rng = np.random.default_rng(seed)
    m_true = rng.normal(size=(dim, dim))
    assert abs(np.linalg.det(m_true)) > 1e-3
    n = n_train + n_test
    s = rng.normal(size=(n, dim))
    s /= np.linalg.norm(s, axis=1, keepdims=True)
    t = s @ m_true.T
    src = EmbeddingSpace("src", tuple(f"s{i}" for i in range(n)), s)
    tgt = EmbeddingSpace("tgt", tuple(f"t{i}" for i in range(n)), t)
    words = [(f"s{i}", f"t{i}") for i in range(n)]
    train = TranslationPairSet.resolve(words[:n_train], src, tgt)
    test = TranslationPairSet.resolve(words[n_train:], src, tgt)
    return src, tgt, train, test, m_true


# acceptance criteria outcomes, echoed once more at the end of the run
ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
