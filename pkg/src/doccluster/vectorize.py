"""Vocabulary construction, log-tf * log-idf weighting and L2 normalisation."""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np
import scipy.sparse as sp

from .errors import ContractViolation, VocabularyError, ZeroVectorError
from .preprocess import TokenStream

SMOOTH_TF = "smooth"
PAPER_LITERAL = "paper-literal"
TF_MODES = (SMOOTH_TF, PAPER_LITERAL)


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    doc_freq: tuple[int, ...]
    n_docs: int
    min_df: int = 1
    index_of: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index_of", {t: i for i, t in enumerate(self.terms)})

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index_of


@dataclass(frozen=True)
class WeightedVector:
    """Sparse nonnegative vector; indices strictly increasing, no zero weights."""

    doc_id: str
    indices: tuple[int, ...]
    weights: tuple[float, ...]
    norm_applied: bool = False

    def __post_init__(self):
        if len(self.indices) != len(self.weights):
            raise ContractViolation("indices and weights differ in length")

    @classmethod
    def from_dense(cls, doc_id: str, dense: Sequence[float] | np.ndarray,
                   norm_applied: bool = False) -> "WeightedVector":
        arr = np.asarray(dense, dtype=float)
        nz = np.flatnonzero(arr > 0)
        return cls(doc_id, tuple(int(i) for i in nz), tuple(float(x) for x in arr[nz]), norm_applied)

    @classmethod
    def from_mapping(cls, doc_id: str, mapping: dict[int, float],
                     norm_applied: bool = False) -> "WeightedVector":
        items = sorted((i, w) for i, w in mapping.items() if w > 0)
        return cls(doc_id, tuple(i for i, _ in items), tuple(float(w) for _, w in items), norm_applied)

    def __len__(self) -> int:
        return len(self.indices)

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.indices, self.weights))

    def to_dense(self, size: int) -> np.ndarray:
        out = np.zeros(size)
        out[list(self.indices)] = self.weights
        return out

    def l2_norm(self) -> float:
        return math.sqrt(math.fsum(w * w for w in self.weights))


@dataclass
class TermDocMatrix:
    vocabulary: Vocabulary
    rows: list[WeightedVector]
    empty_docs: list[str]
    _csr: sp.csr_matrix | None = field(default=None, init=False, repr=False, compare=False)

    @property
    def doc_ids(self) -> list[str]:
        return [r.doc_id for r in self.rows]

    def __len__(self) -> int:
        return len(self.rows)

    def to_csr(self) -> sp.csr_matrix:
        """Rows as a CSR matrix (cached; treat as read-only)."""
        if self._csr is None:
            indptr = np.zeros(len(self.rows) + 1, dtype=np.int64)
            indptr[1:] = np.cumsum([len(r) for r in self.rows])
            indices = np.fromiter((i for r in self.rows for i in r.indices), dtype=np.int64,
                                  count=int(indptr[-1]))
            data = np.fromiter((w for r in self.rows for w in r.weights), dtype=float,
                               count=int(indptr[-1]))
            self._csr = sp.csr_matrix((data, indices, indptr),
                                      shape=(len(self.rows), len(self.vocabulary)))
        return self._csr

    def dump(self, fh: TextIO) -> None:
        """Write ``doc_id<TAB>index:weight,...`` lines, weights at 9 significant digits."""
        for row in self.rows:
            entries = ",".join(f"{i}:{w:.9g}" for i, w in zip(row.indices, row.weights))
            fh.write(f"{row.doc_id}\t{entries}\n")


def build_vocabulary(streams: Sequence[TokenStream], min_df: int = 2) -> Vocabulary:
    """Keep terms that occur in at least ``min_df`` documents."""
    if min_df < 1:
        raise ContractViolation(f"min_df must be >= 1, got {min_df}")
    df: Counter[str] = Counter()
    for s in streams:
        df.update(set(s.tokens))
    kept = sorted(t for t, n in df.items() if n >= min_df)
    if not kept:
        raise VocabularyError(f"vocabulary empty; lower min_df (currently {min_df})")
    return Vocabulary(tuple(kept), tuple(df[t] for t in kept), len(streams), min_df)


def tf_idf_weight(tf: int, n_docs: int, doc_freq: int, mode: str = SMOOTH_TF) -> float:
    if n_docs < 1 or not 1 <= doc_freq <= n_docs:
        raise ContractViolation(f"need 1 <= doc_freq <= n_docs, got doc_freq={doc_freq}, n_docs={n_docs}")
    if tf < 0:
        raise ContractViolation(f"negative term frequency {tf}")
    if tf == 0:
        return 0.0
    idf = math.log10(n_docs / doc_freq)
    if mode == SMOOTH_TF:
        return (1.0 + math.log10(tf)) * idf
    if mode == PAPER_LITERAL:
        return math.log10(tf) * idf
    raise ContractViolation(f"unknown tf mode {mode!r}; expected one of {TF_MODES}")


def unit_normalize(v: WeightedVector) -> WeightedVector:
    norm = v.l2_norm()
    if norm == 0.0:
        raise ZeroVectorError(f"cannot normalize zero vector ({v.doc_id})")
    return WeightedVector(v.doc_id, v.indices, tuple(w / norm for w in v.weights), True)


def _weigh(stream: TokenStream, vocab: Vocabulary, mode: str) -> WeightedVector:
    counts = Counter(t for t in stream.tokens if t in vocab.index_of)
    entries = {}
    for term, tf in counts.items():
        i = vocab.index_of[term]
        w = tf_idf_weight(tf, vocab.n_docs, vocab.doc_freq[i], mode)
        if w > 0:
            entries[i] = w
    return WeightedVector.from_mapping(stream.doc_id, entries)


def vectorize_corpus(streams: Sequence[TokenStream], vocab: Vocabulary, mode: str = SMOOTH_TF,
                     threads: int = 1) -> TermDocMatrix:
    """One unit-normalised row per document; all-zero documents go to ``empty_docs``."""
    if mode not in TF_MODES:
        raise ContractViolation(f"unknown tf mode {mode!r}; expected one of {TF_MODES}")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            raw = list(pool.map(lambda s: _weigh(s, vocab, mode), streams))
    else:
        raw = [_weigh(s, vocab, mode) for s in streams]

    rows, empty = [], []
    for v in raw:
        if len(v) == 0:
            empty.append(v.doc_id)
        else:
            rows.append(unit_normalize(v))
    return TermDocMatrix(vocab, rows, empty)


def build_matrix(streams: Sequence[TokenStream], min_df: int = 2, mode: str = SMOOTH_TF,
                 threads: int = 1) -> TermDocMatrix:
    return vectorize_corpus(streams, build_vocabulary(streams, min_df), mode, threads)


def matrix_from_vectors(vectors: Iterable[WeightedVector], size: int) -> TermDocMatrix:
    """Wrap prebuilt (already normalised) vectors, mostly for tests and demos."""
    rows = list(vectors)
    vocab = Vocabulary(tuple(f"t{i}" for i in range(size)), tuple([1] * size), max(len(rows), 1))
    return TermDocMatrix(vocab, rows, [])
