"""Seeded synthetic corpora with known topic labels, plus cluster purity."""

from __future__ import annotations

import os
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import numpy as np

from .errors import ContractViolation, DocClusterError
from .kmeans import ClusterModel

DOCS_DIR = "docs"
LABELS_FILE = "labels.tsv"
_WORDS_PER_LINE = 16


@dataclass(frozen=True)
class SynthSpec:
    n_topics: int = 5
    docs_per_topic: int = 200
    vocab_per_topic: int = 150
    shared_vocab: int = 100
    doc_length: int = 120
    overlap: float = 0.0
    seed: int = 0
    zipf: bool = True

    def __post_init__(self):
        for name in ("n_topics", "docs_per_topic", "vocab_per_topic", "doc_length"):
            if getattr(self, name) < 1:
                raise ContractViolation(f"{name} must be >= 1")
        if self.shared_vocab < 0:
            raise ContractViolation("shared_vocab must be >= 0")
        if not 0.0 <= self.overlap <= 1.0:
            raise ContractViolation(f"overlap must lie in [0, 1], got {self.overlap}")
        if self.overlap > 0 and self.shared_vocab == 0:
            raise ContractViolation("overlap > 0 needs a nonempty shared vocabulary")


@dataclass(frozen=True)
class GeneratedCorpus:
    docs_dir: Path
    labels_path: Path
    labels: dict[str, int]


def topic_word(topic: int, rank: int) -> str:
    # trailing digits keep every suffix-stripping rule from touching the word
    return f"k{topic}w{rank:04d}"


def shared_word(rank: int) -> str:
    return f"sw{rank:04d}"


def _rank_probs(n: int, zipf: bool) -> np.ndarray:
    p = 1.0 / np.arange(1, n + 1) if zipf else np.ones(n)
    return p / p.sum()


def generate(spec: SynthSpec, out_dir: str | os.PathLike) -> GeneratedCorpus:
    """Write ``docs/t{topic}_d{n}.txt`` files and ``labels.tsv`` under ``out_dir``.

    Labels sit beside, never inside, the document directory.
    """
    out = Path(out_dir)
    docs_dir = out / DOCS_DIR
    try:
        docs_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise DocClusterError(f"cannot create {str(docs_dir)!r}: {exc.strerror}") from None
    if not os.access(docs_dir, os.W_OK):
        raise DocClusterError(f"output directory {str(docs_dir)!r} is not writable")

    rng = np.random.default_rng(spec.seed)
    topic_p = _rank_probs(spec.vocab_per_topic, spec.zipf)
    shared_p = _rank_probs(spec.shared_vocab, spec.zipf) if spec.shared_vocab else None
    shared = [shared_word(r) for r in range(spec.shared_vocab)]

    labels = {}
    for t in range(spec.n_topics):
        vocab = [topic_word(t, r) for r in range(spec.vocab_per_topic)]
        for d in range(spec.docs_per_topic):
            from_shared = rng.random(spec.doc_length) < spec.overlap
            own = rng.choice(spec.vocab_per_topic, size=spec.doc_length, p=topic_p)
            common = rng.choice(spec.shared_vocab, size=spec.doc_length, p=shared_p) if shared else own
            words = [shared[c] if s else vocab[o] for s, o, c in zip(from_shared, own, common)]
            doc_id = f"t{t}_d{d:04d}.txt"
            lines = [" ".join(words[i:i + _WORDS_PER_LINE]) for i in range(0, len(words), _WORDS_PER_LINE)]
            (docs_dir / doc_id).write_text("\n".join(lines) + "\n", encoding="utf-8")
            labels[doc_id] = t

    labels_path = out / LABELS_FILE
    labels_path.write_text("".join(f"{d}\t{t}\n" for d, t in sorted(labels.items())), encoding="utf-8")
    return GeneratedCorpus(docs_dir, labels_path, labels)


def read_labels(path: str | os.PathLike) -> dict[str, int]:
    labels = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                doc_id, topic = line.split("\t")
                labels[doc_id] = int(topic)
            except ValueError:
                raise DocClusterError(f"{path}:{lineno}: expected doc_id<TAB>topic_index") from None
    return labels


def purity(assignment: ClusterModel | Mapping[str, int], labels: Mapping[str, int]) -> float:
    """Fraction of documents that share their cluster's majority topic.

    ``assignment`` is a fitted model or a plain ``doc_id -> cluster`` mapping.
    """
    if isinstance(assignment, ClusterModel):
        pairs = list(zip(assignment.doc_ids, assignment.assignment))
    else:
        pairs = list(assignment.items())
    if not pairs:
        raise ContractViolation("purity of an empty clustering is undefined")
    by_cluster: dict[int, Counter] = defaultdict(Counter)
    for doc_id, cluster in pairs:
        if doc_id not in labels:
            raise DocClusterError(f"no ground-truth label for document {doc_id!r}")
        by_cluster[cluster][labels[doc_id]] += 1
    return sum(c.most_common(1)[0][1] for c in by_cluster.values()) / len(pairs)
