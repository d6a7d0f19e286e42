"""Cosine and fuzzy (sigma-count Jaccard) similarity between weighted vectors.

A unit-normalised TF-IDF vector has every component in (0, 1], so it can be
read directly as a fuzzy set over the vocabulary: intersection is the
pointwise minimum, union the pointwise maximum, and the cardinality of a
fuzzy set is the sum of its memberships (its sigma-count).

The scalar functions walk the two sorted index lists in step and accumulate
in increasing index order, which makes them bitwise symmetric. The batch
functions compute the same quantities for a whole CSR matrix against dense
centroids and are what the clustering loop uses.
"""

from __future__ import annotations

import enum

import numpy as np
import scipy.sparse as sp

from .errors import ContractViolation, ZeroVectorError
from .vectorize import WeightedVector


class MeasureKind(enum.Enum):
    COSINE = "cosine"
    FUZZY = "fuzzy"

    @property
    def label(self) -> str:
        return {"cosine": "Cosine Measure", "fuzzy": "Fuzzy"}[self.value]

    @classmethod
    def parse(cls, value: "str | MeasureKind") -> "MeasureKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ContractViolation(f"unknown similarity measure {value!r}") from None


def _merged(a: WeightedVector, b: WeightedVector):
    """Yield (weight_a, weight_b) over the union of supports, in index order."""
    ia, ib = a.indices, b.indices
    wa, wb = a.weights, b.weights
    i = j = 0
    while i < len(ia) and j < len(ib):
        if ia[i] == ib[j]:
            yield wa[i], wb[j]
            i += 1
            j += 1
        elif ia[i] < ib[j]:
            yield wa[i], 0.0
            i += 1
        else:
            yield 0.0, wb[j]
            j += 1
    for k in range(i, len(ia)):
        yield wa[k], 0.0
    for k in range(j, len(ib)):
        yield 0.0, wb[k]


def cosine_similarity(a: WeightedVector, b: WeightedVector) -> float:
    dot = 0.0
    for x, y in _merged(a, b):
        dot += x * y
    na, nb = a.l2_norm(), b.l2_norm()
    if na == 0.0 or nb == 0.0:
        raise ZeroVectorError("cosine similarity of a zero vector is undefined")
    return dot / (na * nb)


def fuzzy_similarity(a: WeightedVector, b: WeightedVector) -> float:
    inter = union = 0.0
    for x, y in _merged(a, b):
        if x < y:
            inter += x
            union += y
        else:
            inter += y
            union += x
    if union == 0.0:
        raise ZeroVectorError("fuzzy similarity of two empty vectors is undefined")
    return inter / union


def similarity(kind: MeasureKind | str, a: WeightedVector, b: WeightedVector) -> float:
    kind = MeasureKind.parse(kind)
    if kind is MeasureKind.COSINE:
        return cosine_similarity(a, b)
    return fuzzy_similarity(a, b)


def similarity_matrix(kind: MeasureKind | str, docs: sp.csr_matrix, centroids: np.ndarray) -> np.ndarray:
    """Similarities of every row of ``docs`` to every row of dense ``centroids``.

    Rows of both arguments must be unit-normalised and nonnegative. Returns
    an ``(n_docs, n_centroids)`` array. The fuzzy path uses
    ``sum(max) = sum(a) + sum(b) - sum(min)`` so only the overlap of each
    document's support with the centroid needs visiting.
    """
    kind = MeasureKind.parse(kind)
    centroids = np.atleast_2d(np.asarray(centroids, dtype=float))
    if kind is MeasureKind.COSINE:
        return np.asarray(docs @ centroids.T)

    n = docs.shape[0]
    out = np.empty((n, centroids.shape[0]))
    if n == 0:
        return out
    starts = docs.indptr[:-1]
    if np.any(np.diff(docs.indptr) == 0):
        raise ZeroVectorError("document matrix has an empty row")
    row_mass = np.add.reduceat(docs.data, starts)
    for j, c in enumerate(centroids):
        inter = np.add.reduceat(np.minimum(docs.data, c[docs.indices]), starts)
        union = row_mass + c.sum() - inter
        out[:, j] = inter / union
    return out


def l2_normalize_rows(dense: np.ndarray) -> np.ndarray:
    norms = np.sqrt((dense * dense).sum(axis=1))
    if np.any(norms == 0):
        raise ZeroVectorError("cannot normalize zero vector")
    return dense / norms[:, None]

