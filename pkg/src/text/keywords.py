"""
Keyword Extraction
Tokenization, corpus document frequencies and top-k TF-IDF keyword profiles
"""

import logging
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from sklearn.feature_extraction.text import CountVectorizer, TfidfTransformer

from ..data.records import Document

logger = logging.getLogger(__name__)

# Runs of Unicode letters/digits; underscore is excluded from \w on purpose
WORD_PATTERN = re.compile(r'[^\W_]+', re.UNICODE)

DEFAULT_USER_KEYWORDS = 200
DEFAULT_DOC_KEYWORDS = 90


def tokenize(text: str) -> List[str]:
    """
    Lowercased alphanumeric word tokens; punctuation is dropped

    Args:
        text: Raw text

    Returns:
        Tokens in reading order
    """
    if not text:
        return []
    return WORD_PATTERN.findall(text.lower())


@dataclass(frozen=True)
class CorpusStats:
    """Document frequencies of a corpus snapshot"""
    doc_count: int
    doc_freq: Mapping[str, int]
    _idf: Mapping[str, float] = field(default_factory=dict, repr=False, compare=False)

    def idf(self, term: str) -> float:
        """Smoothed inverse document frequency ln((1+N)/(1+df)) + 1"""
        cached = self._idf.get(term)
        if cached is not None:
            return cached
        df = self.doc_freq.get(term, 0)
        return math.log((1 + self.doc_count) / (1 + df)) + 1.0


@dataclass(frozen=True)
class KeywordProfile:
    """Top-k keywords of a user history or a document"""
    owner: str
    terms: Tuple[Tuple[str, float], ...]

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def words(self) -> List[str]:
        return [term for term, _ in self.terms]


def build_corpus_stats(docs: Iterable[Document], day: Optional[int] = None) -> CorpusStats:
    """
    Document frequencies over the documents published up to ``day``

    Args:
        docs: Documents
        day: Inclusive cut-off; None keeps every document

    Returns:
        CorpusStats
    """
    texts = [doc.text for doc in docs if day is None or doc.day <= day]
    if not texts:
        raise ValueError(f"empty corpus (no documents up to day {day})")

    vectorizer = CountVectorizer(
        tokenizer=tokenize, lowercase=False, token_pattern=None, binary=True
    )
    try:
        counts = vectorizer.fit_transform(texts)
    except ValueError:
        # Every document tokenized to nothing
        logger.warning(f"Corpus of {len(texts)} documents has an empty vocabulary")
        return CorpusStats(doc_count=len(texts), doc_freq={})

    vocabulary = vectorizer.get_feature_names_out()
    df = np.asarray(counts.sum(axis=0)).ravel()
    idf = TfidfTransformer(smooth_idf=True).fit(counts).idf_

    stats = CorpusStats(
        doc_count=len(texts),
        doc_freq={term: int(count) for term, count in zip(vocabulary, df)},
        _idf={term: float(value) for term, value in zip(vocabulary, idf)}
    )
    logger.debug(f"Corpus stats: {stats.doc_count} documents, {len(vocabulary)} terms")
    return stats


def tfidf_topk(
    tokens: Sequence[str],
    stats: CorpusStats,
    k: int,
    owner: str = ''
) -> KeywordProfile:
    """
    Top-k terms by raw term count times smoothed idf

    Args:
        tokens: Token stream
        stats: Corpus statistics
        k: Number of keywords to keep
        owner: User or document id recorded on the profile

    Returns:
        KeywordProfile sorted by score descending, ties by term
    """
    return topk_from_counts(Counter(tokens), stats, k, owner=owner)


def topk_from_counts(
    tf: Mapping[str, int],
    stats: CorpusStats,
    k: int,
    owner: str = ''
) -> KeywordProfile:
    """Top-k terms of precomputed raw term counts (same ranking as tfidf_topk)"""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")

    scored = [(term, count * stats.idf(term)) for term, count in tf.items()]
    scored.sort(key=lambda item: (-item[1], item[0]))
    return KeywordProfile(owner=owner, terms=tuple(scored[:k]))


def user_profile(
    history: Iterable[Document],
    stats: CorpusStats,
    m: int = DEFAULT_USER_KEYWORDS,
    owner: str = ''
) -> KeywordProfile:
    """
    Long-term interest profile over a user's whole reading history

    Args:
        history: Documents the user responded to up to the current day
        stats: Corpus statistics of the same day
        m: Number of keywords
        owner: User id

    Returns:
        KeywordProfile (empty for a cold user)
    """
    tokens: List[str] = []
    for doc in history:
        tokens.extend(tokenize(doc.text))
    if not tokens:
        return KeywordProfile(owner=owner, terms=())
    return tfidf_topk(tokens, stats, m, owner=owner)


def document_profile(
    doc: Document,
    stats: CorpusStats,
    n: int = DEFAULT_DOC_KEYWORDS
) -> KeywordProfile:
    """Keyword profile of a single document"""
    return tfidf_topk(tokenize(doc.text), stats, n, owner=doc.id)


def document_profiles(
    docs: Iterable[Document],
    stats: CorpusStats,
    n: int = DEFAULT_DOC_KEYWORDS
) -> Dict[str, KeywordProfile]:
    """Keyword profiles of several documents keyed by id"""
    return {doc.id: document_profile(doc, stats, n) for doc in docs}
