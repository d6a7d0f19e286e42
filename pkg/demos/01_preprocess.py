"""Turn raw text into stemmed tokens with the builtin stopword list and stem rules."""

from doccluster import Document, load_stem_rules, load_stopwords, preprocess_document
from doccluster.preprocess import filter_text, remove_stopwords, stem, tokenize

stops = load_stopwords()
rules = load_stem_rules()
print(f"{len(stops.words)} stopwords, {len(rules.rules)} stem rules")

text = "The miners WAS digging; the diggers' shovels were relational, hopefully!"

# each stage on its own
filtered = filter_text(text)
tokens = tokenize(filtered)
kept = remove_stopwords(tokens, stops)
print("filtered :", filtered)
print("tokens   :", tokens)
print("no stops :", kept)
print("stemmed  :", stem(kept, rules))

# stopwords go before stemming, so "was" never turns into "wa"
print("'was' alone ->", preprocess_document(Document("x", "was", 3), stops, rules).tokens)
print("stem_word('was') would give", rules.stem_word("was"))

for w in ["running", "hopping", "relational", "happiness", "ponies", "caresses", "agreed"]:
    print(f"  {w:12s} -> {rules.stem_word(w)}")
