"""K-means document clustering under cosine and fuzzy similarity."""

__version__ = "0.1.0"

from .corpus_io import Corpus, Document, load_corpus
from .errors import DocClusterError
from .kmeans import ClusterModel, Init, KMeansConfig, run_kmeans
from .preprocess import (TokenStream, load_stem_rules, load_stopwords, preprocess_corpus,
                         preprocess_document)
from .similarity import MeasureKind, cosine_similarity, fuzzy_similarity, similarity
from .synth import SynthSpec, generate, purity, read_labels
from .vectorize import TermDocMatrix, Vocabulary, WeightedVector, build_matrix, build_vocabulary

__all__ = [
    "ClusterModel", "Corpus", "DocClusterError", "Document", "Init", "KMeansConfig", "MeasureKind",
    "SynthSpec", "TermDocMatrix", "TokenStream", "Vocabulary", "WeightedVector", "build_matrix",
    "build_vocabulary", "cosine_similarity", "fuzzy_similarity", "generate", "load_corpus",
    "load_stem_rules", "load_stopwords", "preprocess_corpus", "preprocess_document", "purity", "read_labels",
    "run_kmeans", "similarity",
]
