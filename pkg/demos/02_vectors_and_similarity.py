"""Weight a tiny corpus with TF-IDF and compare documents under both measures."""

import numpy as np

from doccluster import TokenStream, build_matrix, cosine_similarity, fuzzy_similarity
from doccluster.similarity import similarity_matrix

docs = {
    "apples.txt": "apple orchard apple harvest cider",
    "cider.txt": "cider apple press cider",
    "engines.txt": "engine piston engine fuel",
    "cars.txt": "engine fuel wheel road",
}
streams = [TokenStream(d, tuple(t.split())) for d, t in docs.items()]

# with four documents a term in all of them would get idf 0; min_df=1 keeps singletons
m = build_matrix(streams, min_df=1)
print("vocabulary:", list(m.vocabulary.terms))
for row in m.rows:
    print(f"{row.doc_id:12s}", {m.vocabulary.terms[i]: round(w, 3) for i, w in zip(row.indices, row.weights)})

print("\npairwise similarity (cosine / fuzzy)")
for a in m.rows:
    cells = [f"{cosine_similarity(a, b):.3f}/{fuzzy_similarity(a, b):.3f}" for b in m.rows]
    print(f"{a.doc_id:12s}", "  ".join(cells))

# the batch path used by clustering gives the same numbers
X = m.to_csr()
dense = X.toarray()
print("\nbatch fuzzy matches scalar:",
      np.allclose(similarity_matrix("fuzzy", X, dense),
                  [[fuzzy_similarity(a, b) for b in m.rows] for a in m.rows]))

# the paper-literal weight gives tf=1 terms weight 0
lit = build_matrix(streams, min_df=1, mode="paper-literal")
print("paper-literal rows:", lit.doc_ids, "dropped as empty:", lit.empty_docs)
