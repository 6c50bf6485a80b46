"""Unsupervised cross-lingual semantic textual similarity over linearly mapped word embeddings."""

__version__ = "0.1.0"

from .assignment import AssignmentResult, solve_max_assignment
from .embeddings import EmbeddingSpace, load_embeddings, lookup, nearest_neighbors, save_embeddings
from .errors import (
    ClstsError,
    DomainError,
    EmptyInputError,
    FormatError,
    OptimizationDivergedError,
    ParseError,
)
from .mapper import (
    AdamOptions,
    BilingualSpace,
    TranslationMatrix,
    TranslationPairSet,
    evaluate_matrix,
    load_matrix,
    load_pairs,
    map_vector,
    save_matrix,
    train_matrix,
)
from .scorer import (
    SentenceScore,
    SimilarityMethod,
    aggregation,
    greedy_association,
    optimal_alignment,
    score_pair,
    score_pairs,
    word_sim,
)
from .textprep import TokenBag, to_token_bag, tokenize
from .evalkit import (
    RankedCandidates,
    StsDataset,
    average_precision,
    evaluate_sts,
    load_sts_dataset,
    pearson,
    recall_at_precision,
)
from .apps import (
    ComparablePair,
    Fragment,
    FragmentedDoc,
    GoldCase,
    Hit,
    MiningConfig,
    MiningResult,
    char_recall_at_k,
    mine_parallel,
    rank_fragments,
    segment_document,
)
