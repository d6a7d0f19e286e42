"""Similarity-maximising K-means over unit-normalised document vectors.

Each round assigns every document to its most similar centroid (ties go to
the lowest cluster id) and then replaces each centroid by the normalised
arithmetic mean of its members. The loop stops on the first assignment
pass that moves no document.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np
import scipy.sparse as sp

from .errors import ClusteringError
from .similarity import MeasureKind, l2_normalize_rows, similarity_matrix
from .vectorize import TermDocMatrix, WeightedVector


class Init(enum.Enum):
    FIRST_K = "firstk"
    PLUS_PLUS = "plusplus"

    @classmethod
    def parse(cls, value: "str | Init") -> "Init":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ClusteringError(f"unknown init method {value!r}") from None


@dataclass(frozen=True)
class KMeansConfig:
    k: int
    measure: MeasureKind = MeasureKind.COSINE
    seed: int = 0
    max_iterations: int = 100
    init: Init = Init.PLUS_PLUS
    threads: int = 1
    # independent seeded restarts; the run with the highest objective wins
    n_init: int = 10

    def __post_init__(self):
        object.__setattr__(self, "measure", MeasureKind.parse(self.measure))
        object.__setattr__(self, "init", Init.parse(self.init))
        if self.k < 1:
            raise ClusteringError(f"k must be >= 1, got {self.k}")
        if self.max_iterations < 1:
            raise ClusteringError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.n_init < 1:
            raise ClusteringError(f"n_init must be >= 1, got {self.n_init}")
        if self.seed < 0:
            raise ClusteringError(f"seed must be a nonnegative integer, got {self.seed}")


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    changed_docs: int
    objective: float
    # objective of the previous assignment against the same centroids
    objective_before: float | None


@dataclass(frozen=True)
class ClusterModel:
    k: int
    measure: MeasureKind
    centroids: tuple[WeightedVector, ...]
    assignment: tuple[int, ...]
    iterations_run: int
    converged: bool
    doc_ids: tuple[str, ...]
    n_terms: int
    log: tuple[IterationRecord, ...]
    restart: int = 0

    @property
    def objective_trace(self) -> tuple[float, ...]:
        return tuple(r.objective for r in self.log)

    @property
    def objective(self) -> float:
        return self.log[-1].objective

    def centroid_matrix(self) -> np.ndarray:
        return np.vstack([c.to_dense(self.n_terms) for c in self.centroids])

    def members(self, cluster: int) -> list[str]:
        return [d for d, c in zip(self.doc_ids, self.assignment) if c == cluster]

    def sizes(self) -> list[int]:
        return np.bincount(np.asarray(self.assignment, dtype=int), minlength=self.k).tolist()


def _as_dense(centroids, n_terms: int) -> np.ndarray:
    if isinstance(centroids, np.ndarray):
        return np.atleast_2d(centroids)
    return np.vstack([c.to_dense(n_terms) for c in centroids])


def _to_vectors(dense: np.ndarray) -> tuple[WeightedVector, ...]:
    return tuple(WeightedVector.from_dense(f"centroid{j}", row, norm_applied=True)
                 for j, row in enumerate(dense))


def _similarities(X: sp.csr_matrix, C: np.ndarray, measure: MeasureKind, threads: int) -> np.ndarray:
    n = X.shape[0]
    if threads <= 1 or n < 2 * threads:
        return similarity_matrix(measure, X, C)
    bounds = np.linspace(0, n, threads + 1).astype(int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda ab: similarity_matrix(measure, X[ab[0]:ab[1]], C),
                         zip(bounds[:-1], bounds[1:]))
        return np.vstack(list(parts))


def _distinct_groups(matrix: TermDocMatrix) -> np.ndarray:
    keys: dict = {}
    return np.array([keys.setdefault((r.indices, r.weights), len(keys)) for r in matrix.rows])


def _restart_rng(seed: int, restart: int) -> np.random.Generator:
    return np.random.default_rng([seed, restart])


def init_centroids(matrix: TermDocMatrix, config: KMeansConfig, restart: int = 0) -> list[WeightedVector]:
    """Seed centroids for one restart (restart 0 is what a single run uses)."""
    X = matrix.to_csr()
    idx = _init_indices(matrix, config, _restart_rng(config.seed, restart))
    return list(_to_vectors(X[idx].toarray()))


def _init_indices(matrix: TermDocMatrix, config: KMeansConfig, rng: np.random.Generator) -> list[int]:
    n, k = len(matrix), config.k
    if k > n:
        raise ClusteringError(f"k={k} exceeds the number of clusterable documents ({n})")
    groups = _distinct_groups(matrix)
    n_distinct = int(groups.max()) + 1
    if n_distinct < k:
        raise ClusteringError(
            f"only {n_distinct} distinct document vectors for k={k} "
            f"({n - n_distinct} duplicate rows)")
    if config.init is Init.FIRST_K:
        return list(range(k))

    # similarity-adapted k-means++: candidates are drawn with weight
    # 1 - (best similarity to a chosen seed); the candidate that most lowers
    # the total remaining weight is kept
    X = matrix.to_csr()
    n_trials = 2 + int(np.log(k))
    chosen = [int(rng.integers(n))]
    covered = groups == groups[chosen[0]]
    best = similarity_matrix(config.measure, X, X[chosen[0]].toarray())[:, 0]
    while len(chosen) < k:
        w = np.clip(1.0 - best, 0.0, None)
        w[covered] = 0.0
        total = w.sum()
        if total <= 0:
            idx = int(np.flatnonzero(~covered)[0])
            sims = similarity_matrix(config.measure, X, X[idx].toarray())[:, 0]
        else:
            cum = np.cumsum(w)
            draws = np.searchsorted(cum, rng.random(n_trials) * cum[-1], side="right")
            candidates = [_nonzero_at_or_before(w, int(i)) for i in draws]
            trial = similarity_matrix(config.measure, X, X[candidates].toarray())
            potential = np.clip(1.0 - np.maximum(best[:, None], trial), 0.0, None).sum(axis=0)
            pick = int(np.argmin(potential))
            idx, sims = candidates[pick], trial[:, pick]
        chosen.append(idx)
        covered |= groups == groups[idx]
        best = np.maximum(best, sims)
    return chosen


def _nonzero_at_or_before(w: np.ndarray, i: int) -> int:
    i = min(i, len(w) - 1)
    while w[i] == 0:
        i -= 1
    return i


def assign(matrix: TermDocMatrix, centroids, measure: MeasureKind | str, threads: int = 1) -> np.ndarray:
    """Index of the most similar centroid for every row (lowest id on ties)."""
    measure = MeasureKind.parse(measure)
    S = _similarities(matrix.to_csr(), _as_dense(centroids, len(matrix.vocabulary)), measure, threads)
    return np.argmax(S, axis=1)


def _update_dense(X: sp.csr_matrix, labels: np.ndarray, k: int, own_sim: np.ndarray) -> np.ndarray:
    C = np.zeros((k, X.shape[1]))
    empties = []
    for j in range(k):
        members = np.flatnonzero(labels == j)
        if members.size == 0:
            empties.append(j)
            continue
        C[j] = np.asarray(X[members].sum(axis=0)).ravel() / members.size
    if empties:
        # reseed each empty cluster with the worst-served document
        order = np.lexsort((np.arange(len(own_sim)), own_sim))
        for j, doc in zip(empties, order):
            C[j] = X[doc].toarray().ravel()
    return l2_normalize_rows(C)


def update_centroids(matrix: TermDocMatrix, assignment: Sequence[int], k: int,
                     own_similarity: np.ndarray | None = None,
                     measure: MeasureKind | str = MeasureKind.COSINE) -> list[WeightedVector]:
    """Normalised member means; empty clusters are reseeded deterministically.

    An empty cluster takes the document with the lowest similarity to the
    centroid of its own cluster (lowest index on ties). ``own_similarity``
    supplies those values; when omitted they are measured against the new
    member means using ``measure``.
    """
    X = matrix.to_csr()
    labels = np.asarray(assignment, dtype=int)
    if labels.shape != (X.shape[0],) or labels.min(initial=0) < 0 or labels.max(initial=0) >= k:
        raise ClusteringError("assignment must map every row to a cluster id < k")
    if own_similarity is None:
        means = np.zeros((k, X.shape[1]))
        for j in np.unique(labels):
            means[j] = np.asarray(X[labels == j].sum(axis=0)).ravel()
        live = np.unique(labels)
        means[live] = l2_normalize_rows(means[live])
        S = similarity_matrix(MeasureKind.parse(measure), X, means)
        own_similarity = S[np.arange(len(labels)), labels]
    return list(_to_vectors(_update_dense(X, labels, k, np.asarray(own_similarity))))


def run_kmeans(matrix: TermDocMatrix, config: KMeansConfig) -> ClusterModel:
    """Cluster ``matrix``; with k-means++ seeding keep the best of ``n_init`` restarts."""
    restarts = config.n_init if config.init is Init.PLUS_PLUS else 1
    best = None
    for r in range(restarts):
        idx = _init_indices(matrix, config, _restart_rng(config.seed, r))
        model = _lloyd(matrix, config, idx, r)
        if best is None or model.objective > best.objective:
            best = model
    return best


def _lloyd(matrix: TermDocMatrix, config: KMeansConfig, seeds: list[int], restart: int) -> ClusterModel:
    X = matrix.to_csr()
    n = X.shape[0]
    rows = np.arange(n)
    C = X[seeds].toarray()

    labels = None
    log: list[IterationRecord] = []
    converged = False
    rounds = 0
    for it in range(1, config.max_iterations + 1):
        S = _similarities(X, C, config.measure, config.threads)
        new = np.argmax(S, axis=1)
        objective = float(S[rows, new].sum())
        if labels is None:
            log.append(IterationRecord(it, n, objective, None))
        else:
            changed = int(np.count_nonzero(new != labels))
            log.append(IterationRecord(it, changed, objective, float(S[rows, labels].sum())))
            if changed == 0:
                converged = True
                break
        labels = new
        rounds += 1
        C = _update_dense(X, labels, config.k, S[rows, labels])

    return ClusterModel(
        k=config.k,
        measure=config.measure,
        centroids=_to_vectors(C),
        assignment=tuple(int(x) for x in labels),
        iterations_run=rounds,
        converged=converged,
        doc_ids=tuple(matrix.doc_ids),
        n_terms=X.shape[1],
        log=tuple(log),
        restart=restart,
    )


def write_iteration_log(model: ClusterModel, fh: TextIO) -> None:
    for rec in model.log:
        fh.write(f"{rec.iteration}\t{rec.changed_docs}\t{rec.objective:.9g}\n")
