"""Synthetic corpus generator: coverage, labels, episodes, determinism."""

import pytest

from neurallog.core import Label
from neurallog.ingest import WindowSpec, sliding_windows
from neurallog.parsers import WILDCARD
from neurallog.synth import SynthCorpus, synth_corpus


def small():
    return synth_corpus(n_messages=600, n_normal_templates=12,
                        n_episodes=3, episode_len=10, seed=1)


class TestShape:
    def test_counts_and_line_numbers(self):
        corpus = small()
        assert isinstance(corpus, SynthCorpus)
        assert len(corpus.records) == 600
        assert [r.line_no for r in corpus.records] == list(range(1, 601))

    def test_timestamps_increase_by_one(self):
        ts = [r.timestamp for r in small().records]
        assert ts == list(range(ts[0], ts[0] + 600))

    def test_every_template_used(self):
        corpus = small()
        used = set(corpus.gt_assignment.values())
        assert used == {t.id for t in corpus.gt_templates}
        assert set(range(12)) <= used

    def test_assignment_covers_every_line(self):
        corpus = small()
        assert set(corpus.gt_assignment) == {r.line_no for r in corpus.records}

    def test_supports_match_assignment_tallies(self):
        corpus = small()
        for t in corpus.gt_templates:
            n = sum(1 for tid in corpus.gt_assignment.values() if tid == t.id)
            assert t.support == n
        assert sum(t.support for t in corpus.gt_templates) == 600


class TestContent:
    def test_template_keywords_appear_in_messages(self):
        corpus = small()
        by_id = {t.id: t for t in corpus.gt_templates}
        for r in corpus.records[:100]:
            template = by_id[corpus.gt_assignment[r.line_no]]
            words = r.content.split()
            assert len(words) == len(template.tokens)
            for got, want in zip(words, template.tokens):
                if want != WILDCARD:
                    assert got == want

    def test_parameter_slots_vary(self):
        corpus = small()
        by_tid = {}
        for r in corpus.records:
            by_tid.setdefault(corpus.gt_assignment[r.line_no], set()).add(r.content)
        assert any(len(contents) > 1 for contents in by_tid.values())

    def test_anomalous_records_are_error_verbosity(self):
        for r in small().records:
            if r.label is Label.ANOMALOUS:
                assert r.verbosity == "ERROR"
            else:
                assert r.verbosity == "INFO"


class TestEpisodes:
    def test_anomaly_count(self):
        corpus = small()
        assert sum(r.label is Label.ANOMALOUS for r in corpus.records) == 30

    def test_anomalies_are_contiguous_runs(self):
        corpus = small()
        marks = [r.label is Label.ANOMALOUS for r in corpus.records]
        runs = []
        i = 0
        while i < len(marks):
            if marks[i]:
                j = i
                while j < len(marks) and marks[j]:
                    j += 1
                runs.append(j - i)
                i = j
            else:
                i += 1
        assert runs == [10, 10, 10]

    def test_default_corpus_window_anomaly_share(self):
        corpus = synth_corpus()
        assert len(corpus.records) == 10000
        windows = sliding_windows(corpus.records, WindowSpec(length=20, step=1))
        share = sum(w.label is Label.ANOMALOUS for w in windows) / len(windows)
        assert 0.04 <= share <= 0.07

    def test_no_episodes_all_normal(self):
        corpus = synth_corpus(n_messages=300, n_normal_templates=10, n_episodes=0)
        assert all(r.label is Label.NORMAL for r in corpus.records)
        assert all(t.id < 10 for t in corpus.gt_templates)

    def test_overlapping_episodes_rejected(self):
        with pytest.raises(ValueError, match="overlap"):
            synth_corpus(n_messages=100, n_normal_templates=5,
                         n_episodes=5, episode_len=11)

    def test_episode_len_validation(self):
        with pytest.raises(ValueError):
            synth_corpus(n_messages=100, n_normal_templates=5,
                         n_episodes=1, episode_len=0)


class TestValidationAndDeterminism:
    def test_too_many_templates(self):
        with pytest.raises(ValueError):
            synth_corpus(n_messages=100, n_normal_templates=1000)

    def test_too_few_messages(self):
        with pytest.raises(ValueError):
            synth_corpus(n_messages=5, n_normal_templates=10, n_episodes=0)

    def test_same_seed_identical(self):
        a = synth_corpus(n_messages=400, n_normal_templates=8, seed=3,
                         n_episodes=2, episode_len=8)
        b = synth_corpus(n_messages=400, n_normal_templates=8, seed=3,
                         n_episodes=2, episode_len=8)
        assert a == b

    def test_different_seed_differs(self):
        a = synth_corpus(n_messages=400, n_normal_templates=8, seed=3,
                         n_episodes=2, episode_len=8)
        b = synth_corpus(n_messages=400, n_normal_templates=8, seed=4,
                         n_episodes=2, episode_len=8)
        assert a.records != b.records
