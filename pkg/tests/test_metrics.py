"""Metrics tests: formula oracles first, then engine self-scan goldens."""

from __future__ import annotations

import random
from fractions import Fraction
from importlib import resources

import pytest

from dispatchkit.metrics import (
    REFERENCE_ROWS,
    CorpusEntry,
    CorpusFormatError,
    EmptyCorpusError,
    choice_ratio,
    corpus_of,
    degree_of_specialization,
    dispatch_ratio,
    metrics_report,
    parse_corpus,
    render_corpus,
    render_table,
)


def _entries(sizes: dict, nspec=0) -> list:
    out = []
    for name, m in sizes.items():
        out.extend(CorpusEntry(name, 2, min(nspec, 2)) for _ in range(m))
    return out


def _naive_dr(corpus) -> Fraction:
    return Fraction(len(corpus), len({e.function for e in corpus}))


def _naive_cr(corpus) -> Fraction:
    names = [e.function for e in corpus]
    return Fraction(sum(names.count(n) ** 2 for n in set(names)), len(names))


class TestFormulas:
    def test_dr_example(self):
        corpus = _entries({"f": 3, "g": 1})
        assert dispatch_ratio(corpus) == Fraction(2)
        assert dispatch_ratio(corpus) == _naive_dr(corpus)

    def test_dr_single(self):
        corpus = _entries({"f": 1})
        assert dispatch_ratio(corpus) == Fraction(1)

    def test_cr_example(self):
        corpus = _entries({"f": 3, "g": 1})
        assert choice_ratio(corpus) == Fraction(10, 4) == Fraction(5, 2)
        assert choice_ratio(corpus) == _naive_cr(corpus)

    def test_cr_single(self):
        assert choice_ratio(_entries({"f": 1})) == Fraction(1)

    def test_cr_uniform_identity(self):
        for k in (1, 2, 5, 9):
            for m in (1, 3, 7):
                corpus = _entries({f"f{i}": m for i in range(k)})
                assert choice_ratio(corpus) == Fraction(m)

    def test_dos_example(self):
        corpus = [CorpusEntry("f", 3, s) for s in (2, 1, 0, 1)]
        assert degree_of_specialization(corpus) == Fraction(1)

    def test_dos_unspecialized(self):
        corpus = [CorpusEntry("f", 3, 0), CorpusEntry("g", 1, 0)]
        assert degree_of_specialization(corpus) == Fraction(0)

    def test_empty_corpus(self):
        for fn in (dispatch_ratio, choice_ratio, degree_of_specialization,
                   metrics_report):
            with pytest.raises(EmptyCorpusError):
                fn([])

    def test_entry_validation(self):
        with pytest.raises(ValueError):
            CorpusEntry("f", 2, 3)
        with pytest.raises(ValueError):
            CorpusEntry("f", -1, 0)


class TestProperties:
    def test_cr_at_least_dr_fuzzed(self):
        rng = random.Random(93001)
        for _ in range(1000):
            corpus = []
            for i in range(rng.randint(1, 20)):
                for _ in range(rng.randint(1, 12)):
                    np_ = rng.randint(0, 5)
                    corpus.append(CorpusEntry(
                        f"f{i}", np_, rng.randint(0, np_),
                        rng.random() < 0.3))
            r = metrics_report(corpus)
            assert r.cr >= r.dr >= 1

    def test_permutation_invariance(self):
        rng = random.Random(93002)
        corpus = [CorpusEntry(f"f{rng.randint(0, 5)}", 3, rng.randint(0, 3))
                  for _ in range(40)]
        base = metrics_report(corpus)
        for _ in range(10):
            rng.shuffle(corpus)
            assert metrics_report(corpus) == base


class TestPersistence:
    def test_round_trip(self):
        corpus = [CorpusEntry("f", 2, 2), CorpusEntry("f", 1, 1),
                  CorpusEntry("g", 3, 0, True)]
        assert parse_corpus(render_corpus(corpus)) == corpus

    def test_blank_and_comment_lines(self):
        text = "# header\n\nf\t2\t1\t0\n"
        assert parse_corpus(text) == [CorpusEntry("f", 2, 1)]

    def test_error_names_line(self):
        with pytest.raises(CorpusFormatError) as exc:
            parse_corpus("f\t2\t1\t0\nbroken line\n")
        assert exc.value.lineno == 2
        assert "line 2" in str(exc.value)

    def test_error_kinds(self):
        with pytest.raises(CorpusFormatError):
            parse_corpus("f\tx\t1\t0\n")
        with pytest.raises(CorpusFormatError):
            parse_corpus("f\t2\t1\t2\n")
        with pytest.raises(CorpusFormatError) as exc:
            parse_corpus("f\t1\t2\t0\n")
        assert exc.value.lineno == 1

    def test_empty_text_parses_to_empty(self):
        assert parse_corpus("") == []


class TestSampleCorpus:
    def _load(self):
        text = resources.files("dispatchkit").joinpath(
            "data/sample_corpus.tsv").read_text()
        return parse_corpus(text)

    def test_hand_computed_values(self):
        report = metrics_report(self._load())
        assert report.dr == Fraction(2)
        assert report.cr == Fraction(5, 2)
        assert report.dos == Fraction(1)
        assert (report.functions, report.methods) == (2, 4)
        assert report.cells() == ("2.00", "2.50", "1.00")


class TestSelfScan:
    def test_prelude_golden(self):
        from dispatchkit.runtime import Runtime
        corpus = corpus_of(Runtime().functions)
        report = metrics_report(corpus)
        assert (report.functions, report.methods) == (8, 15)
        assert report.cells() == ("1.88", "2.20", "1.00")

    def test_export_then_reload_matches_live(self):
        from dispatchkit.runtime import Runtime
        for rule in ("trailing-drop", "all-drop", "apl", "drop-size1"):
            corpus = corpus_of(Runtime(index_rule=rule).functions)
            reloaded = parse_corpus(render_corpus(corpus))
            assert metrics_report(reloaded) == metrics_report(corpus)


class TestRendering:
    def test_table_layout(self):
        report = metrics_report(_entries({"f": 3, "g": 1}, nspec=1))
        rows = [("sample", report.cells()), ("Julia", REFERENCE_ROWS["Julia"])]
        table = render_table(rows)
        lines = table.splitlines()
        assert lines[0].split() == ["corpus", "DR", "CR", "DoS"]
        assert lines[1].split() == ["sample", "2.00", "2.50", "1.00"]
        assert lines[2].split() == ["Julia", "5.86", "51.44", "1.54"]
        # deterministic byte-for-byte
        assert table == render_table(rows)
