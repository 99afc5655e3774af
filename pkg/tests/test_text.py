"""
Tests for tokenization, TF-IDF keyword profiles and embedding lookup
"""

import math

import numpy as np
import pytest

from src.data import Document
from src.exceptions import DataError
from src.text import (
    EmbeddingTable, build_corpus_stats, document_profile, embed_profile, load_embeddings,
    tfidf_topk, tokenize, topk_from_counts, user_profile
)


@pytest.fixture
def corpus():
    return [
        Document('d1', 'alice', 0, 'Apple banana apple.'),
        Document('d2', 'bob', 0, 'banana cherry'),
        Document('d3', 'alice', 1, 'cherry delta, echo!'),
        Document('d4', 'carol', 2, 'fox fox fox apple'),
    ]


class TestTokenize:

    def test_lowercases_and_drops_punctuation(self):
        assert tokenize("Hello, World! it's 2024_x") == ['hello', 'world', 'it', 's', '2024', 'x']

    def test_mixed_scripts_match_character_scan(self):
        text = "Café naïve_test, МОСКВА 2024! 東京タワー and ΑΘΗΝΑ; ١٢٣ ok🙂done -- x_y"
        lowered = text.lower()
        expected, current = [], ''
        for ch in lowered:
            if ch.isalnum():
                current += ch
            elif current:
                expected.append(current)
                current = ''
        if current:
            expected.append(current)
        assert tokenize(text) == expected
        assert tokenize(text) == ['café', 'naïve', 'test', 'москва', '2024', '東京タワー', 'and',
                                  'αθηνα', '١٢٣', 'ok', 'done', 'x', 'y']

    def test_empty(self):
        assert tokenize('') == []
        assert tokenize('...!!') == []


class TestCorpusStats:

    def test_day_cutoff(self, corpus):
        stats = build_corpus_stats(corpus, day=0)
        assert stats.doc_count == 2
        assert stats.doc_freq['banana'] == 2
        assert 'delta' not in stats.doc_freq

    def test_smoothed_idf(self, corpus):
        stats = build_corpus_stats(corpus)
        # apple appears in 2 of 4 documents
        assert stats.idf('apple') == pytest.approx(math.log(5 / 3) + 1.0)
        # unseen terms get the df = 0 value
        assert stats.idf('zebra') == pytest.approx(math.log(5) + 1.0)

    def test_empty_corpus(self, corpus):
        with pytest.raises(ValueError):
            build_corpus_stats(corpus, day=-1)


class TestKeywordProfiles:

    def test_topk_scores_and_order(self, corpus):
        stats = build_corpus_stats(corpus)
        profile = tfidf_topk(tokenize('apple apple banana fox'), stats, k=2, owner='x')
        assert profile.owner == 'x'
        assert len(profile) == 2
        words = profile.words
        scores = dict(profile.terms)
        assert words[0] == 'apple'
        assert scores['apple'] == pytest.approx(2 * stats.idf('apple'))
        assert words[1] in ('banana', 'fox')

    def test_ties_break_by_term(self, corpus):
        stats = build_corpus_stats(corpus)
        # cherry and banana both have df 2 and count 1
        profile = tfidf_topk(['cherry', 'banana'], stats, k=2)
        assert profile.words == ['banana', 'cherry']

    def test_counts_and_tokens_agree(self, corpus):
        stats = build_corpus_stats(corpus)
        tokens = tokenize('fox apple fox echo delta delta')
        counts = {'fox': 2, 'apple': 1, 'echo': 1, 'delta': 2}
        assert tfidf_topk(tokens, stats, 3) == topk_from_counts(counts, stats, 3)

    def test_invalid_k(self, corpus):
        stats = build_corpus_stats(corpus)
        with pytest.raises(ValueError):
            tfidf_topk(['apple'], stats, 0)

    def test_user_profile_over_history(self, corpus):
        stats = build_corpus_stats(corpus)
        profile = user_profile(corpus[:2], stats, m=10, owner='u')
        assert set(profile.words) == {'apple', 'banana', 'cherry'}
        assert profile.words[0] == 'apple'

    def test_cold_user(self, corpus):
        stats = build_corpus_stats(corpus)
        assert len(user_profile([], stats, owner='u')) == 0

    def test_document_profile(self, corpus):
        stats = build_corpus_stats(corpus)
        profile = document_profile(corpus[3], stats, n=1)
        assert profile.owner == 'd4'
        assert profile.words == ['fox']


class TestEmbeddings:

    def test_embed_skips_unknown_words(self, corpus, tiny_embeddings):
        stats = build_corpus_stats(corpus)
        profile = tfidf_topk(['apple', 'zebra', 'fox'], stats, k=3)
        matrix = embed_profile(profile, tiny_embeddings)
        known = [w for w in profile.words if w in tiny_embeddings]
        assert matrix.shape == (2, 4)
        np.testing.assert_array_equal(matrix[0], tiny_embeddings.vectors[known[0]])

    def test_all_unknown_is_cold(self, corpus, tiny_embeddings):
        stats = build_corpus_stats(corpus)
        profile = tfidf_topk(['zebra'], stats, k=1)
        assert embed_profile(profile, tiny_embeddings).shape == (0, 4)

    def test_vectors_are_read_only(self, tiny_embeddings):
        with pytest.raises(ValueError):
            tiny_embeddings.vectors['apple'][0] = 1.0

    def test_load_with_header(self, tmp_path):
        path = tmp_path / 'embeddings.txt'
        path.write_text("2 3\napple 1 2 3\nbanana 0.5 0 -1\n", encoding='utf-8')
        table = load_embeddings(path)
        assert table.dim == 3
        np.testing.assert_allclose(table.vectors['banana'], [0.5, 0.0, -1.0])

    def test_load_without_header(self, tmp_path):
        path = tmp_path / 'embeddings.txt'
        path.write_text("apple 1 2\nbanana 3 4\n", encoding='utf-8')
        assert len(load_embeddings(path)) == 2

    def test_inconsistent_dimension(self, tmp_path):
        path = tmp_path / 'embeddings.txt'
        path.write_text("apple 1 2\nbanana 3 4 5\n", encoding='utf-8')
        with pytest.raises(DataError):
            load_embeddings(path)

    def test_empty_table(self):
        with pytest.raises(DataError):
            EmbeddingTable.from_dict({})
