"""Text normalisation: filter -> tokenize -> stopword removal -> stemming.

Stopwords are removed *before* stemming. Stemming first would turn a
stopword such as ``was`` into a non-stopword stub (``wa``) that survives
into the vocabulary.
"""

from __future__ import annotations

import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Sequence

from .corpus_io import Corpus, Document
from .errors import RuleFileError

_NON_ALNUM = re.compile(r"[\W_]+")
_TERM = re.compile(r"[^\W_]+")


@dataclass(frozen=True)
class StopwordList:
    words: frozenset[str]
    source: str = "builtin"

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class StemRule:
    suffix: str
    replacement: str
    min_stem_len: int

    def matches(self, word: str) -> bool:
        return word.endswith(self.suffix) and len(word) - len(self.suffix) >= self.min_stem_len

    def apply(self, word: str) -> str:
        return word[: len(word) - len(self.suffix)] + self.replacement


@dataclass(frozen=True)
class StemRuleSet:
    """Ordered suffix rules, longest suffix first.

    A rule either shortens the word or (replacement == suffix) pins it, so
    repeated application terminates; :meth:`stem_word` runs the rules to a
    fixed point, which makes stemming idempotent for any valid rule file.
    """

    rules: tuple[StemRule, ...]
    source: str = "builtin"
    _by_suffix: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        ordered = tuple(sorted(self.rules, key=lambda r: -len(r.suffix)))
        object.__setattr__(self, "rules", ordered)
        for rule in ordered:
            _check_rule(rule, self.source)
            self._by_suffix.setdefault(rule.suffix, []).append(rule)
        object.__setattr__(self, "_lengths",
                           sorted({len(r.suffix) for r in ordered}, reverse=True))

    def __len__(self) -> int:
        return len(self.rules)

    def first_match(self, word: str) -> StemRule | None:
        for n in self._lengths:
            if n > len(word):
                continue
            for rule in self._by_suffix.get(word[-n:], ()):
                if rule.matches(word):
                    return rule
        return None

    def stem_word(self, word: str) -> str:
        try:
            return self._cache[word]
        except KeyError:
            pass
        out = word
        while True:
            rule = self.first_match(out)
            if rule is None or rule.replacement == rule.suffix:
                break
            out = rule.apply(out)
        self._cache[word] = out
        return out


def _check_rule(rule: StemRule, source: str) -> None:
    if not rule.suffix or not _TERM.fullmatch(rule.suffix) or rule.suffix != rule.suffix.lower():
        raise RuleFileError(f"{source}: bad suffix {rule.suffix!r}")
    if rule.replacement and not _TERM.fullmatch(rule.replacement):
        raise RuleFileError(f"{source}: bad replacement {rule.replacement!r}")
    if not (len(rule.replacement) < len(rule.suffix) or rule.replacement == rule.suffix):
        raise RuleFileError(
            f"{source}: rule {rule.suffix!r} -> {rule.replacement!r} must shorten the word "
            "or keep the suffix unchanged")
    if rule.min_stem_len < 0:
        raise RuleFileError(f"{source}: negative min_stem_len in rule {rule.suffix!r}")


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].rstrip("\r\n")
        if line.strip():
            yield lineno, line


def parse_stopwords(text: str, source: str = "builtin") -> StopwordList:
    words = set()
    for lineno, line in _content_lines(text):
        word = line.strip().lower()
        if not _TERM.fullmatch(word):
            raise RuleFileError(f"{source}:{lineno}: stopword {word!r} contains punctuation or spaces")
        words.add(word)
    return StopwordList(frozenset(words), source)


def parse_stem_rules(text: str, source: str = "builtin") -> StemRuleSet:
    rules = []
    for lineno, line in _content_lines(text):
        parts = line.strip(" ").split("\t")
        if len(parts) != 3:
            raise RuleFileError(f"{source}:{lineno}: expected suffix<TAB>replacement<TAB>min_stem_len")
        suffix, replacement, min_len = parts
        try:
            min_stem_len = int(min_len)
        except ValueError:
            raise RuleFileError(f"{source}:{lineno}: min_stem_len {min_len!r} is not an integer") from None
        rules.append(StemRule(suffix.strip(), replacement.strip(), min_stem_len))
    return StemRuleSet(tuple(rules), source)


def load_stopwords(path: str | os.PathLike | None = None) -> StopwordList:
    if path is None:
        text = resources.files("doccluster").joinpath("data/stopwords.txt").read_text("utf-8")
        return parse_stopwords(text, "builtin")
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_stopwords(fh.read(), str(path))
    except OSError as exc:
        raise RuleFileError(f"cannot read stopword file {str(path)!r}: {exc.strerror}") from None


def load_stem_rules(path: str | os.PathLike | None = None) -> StemRuleSet:
    if path is None:
        text = resources.files("doccluster").joinpath("data/stem_rules.txt").read_text("utf-8")
        return parse_stem_rules(text, "builtin")
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_stem_rules(fh.read(), str(path))
    except OSError as exc:
        raise RuleFileError(f"cannot read stem rule file {str(path)!r}: {exc.strerror}") from None


@dataclass(frozen=True)
class TokenStream:
    doc_id: str
    tokens: tuple[str, ...]


def filter_text(text: str) -> str:
    """Lowercase and replace every run of non-alphanumerics with one space."""
    return _NON_ALNUM.sub(" ", text.lower()).strip()


def tokenize(text: str) -> list[str]:
    return text.split()


def remove_stopwords(tokens: Sequence[str], stops: StopwordList) -> list[str]:
    return [t for t in tokens if t not in stops.words]


def stem(tokens: Sequence[str], rules: StemRuleSet) -> list[str]:
    return [rules.stem_word(t) for t in tokens]


def preprocess_text(text: str, stops: StopwordList, rules: StemRuleSet) -> list[str]:
    tokens = stem(remove_stopwords(tokenize(filter_text(text)), stops), rules)
    # a stem can collide with a stopword ("cans" -> "can"); drop those too
    return [t for t in tokens if t not in stops.words]


def preprocess_document(doc: Document, stops: StopwordList, rules: StemRuleSet) -> TokenStream:
    return TokenStream(doc.id, tuple(preprocess_text(doc.text, stops, rules)))


def preprocess_corpus(corpus: Corpus, stops: StopwordList | None = None,
                      rules: StemRuleSet | None = None, threads: int = 1) -> list[TokenStream]:
    stops = stops if stops is not None else load_stopwords()
    rules = rules if rules is not None else load_stem_rules()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda d: preprocess_document(d, stops, rules), corpus.documents))
    return [preprocess_document(d, stops, rules) for d in corpus.documents]
