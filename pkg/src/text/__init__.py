"""Text Features Module"""
from .keywords import (
    CorpusStats, KeywordProfile,
    tokenize, build_corpus_stats, tfidf_topk, topk_from_counts, user_profile,
    document_profile, document_profiles,
    DEFAULT_USER_KEYWORDS, DEFAULT_DOC_KEYWORDS
)
from .embeddings import EmbeddingTable, load_embeddings, embed_profile

__all__ = [
    'CorpusStats', 'KeywordProfile',
    'tokenize', 'build_corpus_stats', 'tfidf_topk', 'topk_from_counts', 'user_profile',
    'document_profile', 'document_profiles',
    'DEFAULT_USER_KEYWORDS', 'DEFAULT_DOC_KEYWORDS',
    'EmbeddingTable', 'load_embeddings', 'embed_profile'
]
