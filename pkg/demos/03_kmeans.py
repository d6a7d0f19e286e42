"""Cluster a generated corpus with both measures and look inside the fitted model."""

import tempfile

from doccluster import KMeansConfig, SynthSpec, build_matrix, generate, load_corpus, preprocess_corpus, purity, run_kmeans

with tempfile.TemporaryDirectory() as tmp:
    gen = generate(SynthSpec(n_topics=4, docs_per_topic=50, overlap=0.3, seed=3), tmp)
    matrix = build_matrix(preprocess_corpus(load_corpus(gen.docs_dir)))
    print(f"{len(matrix)} documents, {len(matrix.vocabulary)} terms")

    for measure in ("cosine", "fuzzy"):
        model = run_kmeans(matrix, KMeansConfig(k=4, measure=measure, seed=1))
        print(f"\n{measure}: converged={model.converged} rounds={model.iterations_run} "
              f"(restart {model.restart} won)")
        print("  objective per pass:", [round(x, 2) for x in model.objective_trace])
        print("  cluster sizes:", model.sizes())
        print("  purity:", purity(model, gen.labels))

    # first-k seeding is deterministic and needs no restarts
    firstk = run_kmeans(matrix, KMeansConfig(k=4, init="firstk"))
    print("\nfirst-k seeding purity:", purity(firstk, gen.labels))
