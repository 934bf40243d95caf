"""Sentence/paragraph splitting and citing-text-span extraction."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbjsumm.corpus import CitingJudgment
from cbjsumm.errors import NoCitations, NoMatch
from cbjsumm.segmenter import (
    SegmenterConfig,
    collect_citances,
    default_config,
    extract_citing_text_spans,
    load_abbreviations,
    split_paragraphs,
    split_sentences,
)


@pytest.fixture(scope="module")
def cfg():
    return default_config()


class TestSplitSentences:
    def test_two_plain_sentences(self, cfg):
        sentences = split_sentences("The appeal fails. It is dismissed.", cfg)
        assert [s.text for s in sentences] == ["The appeal fails.", "It is dismissed."]
        assert [s.index for s in sentences] == [0, 1]
        assert [s.word_count for s in sentences] == [3, 3]

    def test_abbreviation_suppression(self, cfg):
        sentences = split_sentences("See Sec. 302 IPC. The charge stands.", cfg)
        assert [s.text for s in sentences] == ["See Sec. 302 IPC.", "The charge stands."]

    def test_empty_input(self, cfg):
        assert split_sentences("", cfg) == []
        assert split_sentences("   \n\t ", cfg) == []

    def test_initials_do_not_split(self, cfg):
        sentences = split_sentences("Counsel K. A. Rao appeared for the state. He was heard.", cfg)
        assert len(sentences) == 2
        assert sentences[0].text.startswith("Counsel K. A. Rao")

    def test_versus_abbreviation(self, cfg):
        sentences = split_sentences("Reliance on State v. Mohan is misplaced. We reject it.", cfg)
        assert len(sentences) == 2

    def test_question_and_exclamation(self, cfg):
        sentences = split_sentences("Was the notice served? It was not! The order falls.", cfg)
        assert [s.text for s in sentences] == [
            "Was the notice served?",
            "It was not!",
            "The order falls.",
        ]

    def test_short_fragment_merges_backward(self, cfg):
        sentences = split_sentences("The appeal is allowed with costs. So ordered.", cfg)
        assert [s.text for s in sentences] == ["The appeal is allowed with costs. So ordered."]

    def test_leading_short_fragment_merges_forward(self, cfg):
        sentences = split_sentences("Order reserved. The parties filed written submissions today.", cfg)
        assert len(sentences) == 1
        assert sentences[0].text.startswith("Order reserved.")

    def test_internal_newlines_normalize_to_spaces(self, cfg):
        sentences = split_sentences("The court\nheard the parties. The order\nwas reserved.", cfg)
        assert [s.text for s in sentences] == [
            "The court heard the parties.",
            "The order was reserved.",
        ]

    def test_word_counts_match_whitespace_tokens(self, cfg):
        for sentence in split_sentences("One two three four. Five six seven eight.", cfg):
            assert sentence.word_count == len(sentence.text.split())

    def test_join_preserves_normalized_text(self, cfg):
        text = "The Tribunal erred in law. See Sec. 12 of the Act. The appeal succeeds."
        sentences = split_sentences(text, cfg)
        assert " ".join(s.text for s in sentences) == " ".join(text.split())

    def test_min_words_config(self):
        cfg1 = SegmenterConfig(abbreviations=frozenset(), min_sentence_words=1)
        sentences = split_sentences("Yes. It is so.", cfg1)
        assert [s.text for s in sentences] == ["Yes.", "It is so."]

    def test_min_words_validation(self):
        with pytest.raises(ValueError):
            SegmenterConfig(abbreviations=frozenset(), min_sentence_words=0)

    @settings(max_examples=200, deadline=None)
    @given(
        st.text(
            alphabet=st.sampled_from(list("abcdefgh ABCDEFGH.?! \n\t'()123")),
            max_size=120,
        )
    )
    def test_idempotent_on_arbitrary_text(self, text):
        cfg = default_config()
        once = split_sentences(text, cfg)
        again = split_sentences(" ".join(s.text for s in once), cfg)
        assert [s.text for s in again] == [s.text for s in once]


class TestSplitParagraphs:
    def test_single_blank_line(self):
        assert split_paragraphs("A.\n\nB.") == ["A.", "B."]

    def test_blank_line_runs_collapse(self):
        assert split_paragraphs("A.\n\n\n\nB.") == ["A.", "B."]

    def test_no_blank_line_is_one_paragraph(self):
        assert split_paragraphs("A.\nB.\nC.") == ["A.\nB.\nC."]

    def test_blank_lines_with_spaces(self):
        assert split_paragraphs("A.\n   \nB.") == ["A.", "B."]

    def test_empty_paragraphs_dropped(self):
        assert split_paragraphs("\n\nA.\n\n\n\n") == ["A."]


def _citing(doc_id: str, *paragraphs: str) -> CitingJudgment:
    return CitingJudgment(doc_id=doc_id, raw_text="\n\n".join(paragraphs))


THREE_PARAGRAPHS = (
    "The first paragraph discusses procedure and nothing else of note.",
    "In Alpha v State the court held that stale grounds vitiate detention. "
    "That principle binds us squarely.",
    "Costs shall follow the event in the usual course.",
)


class TestExtractCitingTextSpans:
    def test_single_matching_paragraph(self, cfg):
        doc = _citing("d1", *THREE_PARAGRAPHS)
        spans = extract_citing_text_spans(doc, ["Alpha v State"], cfg)
        assert len(spans) == 1
        assert spans[0].paragraph_text == THREE_PARAGRAPHS[1]
        assert [c.text for c in spans[0].citances] == [
            s.text for s in split_sentences(THREE_PARAGRAPHS[1], cfg)
        ]
        assert spans[0].source_doc == "d1"

    def test_no_match_raises(self, cfg):
        doc = _citing("d1", *THREE_PARAGRAPHS)
        with pytest.raises(NoMatch):
            extract_citing_text_spans(doc, ["Zulu v Nobody"], cfg)

    def test_two_matching_paragraphs_in_order(self, cfg):
        doc = _citing(
            "d1",
            "Alpha v State opened the door to this argument long ago.",
            "Nothing relevant appears in this middle paragraph.",
            "The ruling in Alpha v State was later affirmed by a larger bench.",
        )
        spans = extract_citing_text_spans(doc, ["Alpha v State"], cfg)
        assert len(spans) == 2
        assert spans[0].paragraph_text.startswith("Alpha v State opened")
        assert spans[1].paragraph_text.startswith("The ruling")

    def test_matching_is_case_insensitive_and_whitespace_normalized(self, cfg):
        doc = _citing("d1", "the case of ALPHA   v\nSTATE controls the outcome here.")
        spans = extract_citing_text_spans(doc, ["Alpha v State"], cfg)
        assert len(spans) == 1

    def test_duplicate_paragraphs_deduplicated(self, cfg):
        para = "Alpha v State held that stale grounds vitiate the detention order."
        doc = _citing("d1", para, para)
        spans = extract_citing_text_spans(doc, ["Alpha v State"], cfg)
        assert len(spans) == 1

    def test_alias_patterns(self, cfg):
        doc = _citing("d1", "The decision reported as AIR 1980 SC 123 covers the point.")
        spans = extract_citing_text_spans(doc, ["Alpha v State", "AIR 1980 SC 123"], cfg)
        assert len(spans) == 1

    def test_empty_patterns_rejected(self, cfg):
        with pytest.raises(ValueError):
            extract_citing_text_spans(_citing("d1", "text"), [], cfg)


class TestCollectCitances:
    def test_global_indices(self, cfg):
        doc1 = _citing(
            "d1",
            "Alpha v State held three things. First the grounds must be proximate. "
            "Second the material must be relevant.",
        )
        doc2 = _citing("d2", "Alpha v State binds this bench on the stale grounds point.")
        spans = extract_citing_text_spans(doc1, ["Alpha v State"], cfg)
        spans += extract_citing_text_spans(doc2, ["Alpha v State"], cfg)
        corpus = collect_citances(spans)
        assert corpus.size == sum(len(s.citances) for s in spans)
        assert [c.index for c in corpus.citances] == list(range(corpus.size))

    def test_empty_spans_raise(self):
        with pytest.raises(NoCitations):
            collect_citances([])

    def test_duplicate_citances_retained(self, cfg):
        para = "Alpha v State held that stale grounds vitiate the detention order made later."
        doc1 = _citing("d1", para)
        doc2 = _citing("d2", para)
        spans = extract_citing_text_spans(doc1, ["Alpha v State"], cfg)
        spans += extract_citing_text_spans(doc2, ["Alpha v State"], cfg)
        corpus = collect_citances(spans)
        assert corpus.size == 2
        assert corpus.citances[0].text == corpus.citances[1].text
        assert corpus.provenance[0].doc_id == "d1"
        assert corpus.provenance[1].doc_id == "d2"

    def test_provenance_points_to_source_paragraph(self, cfg):
        doc = _citing(
            "d1",
            "Alpha v State is distinguishable on facts. The detention here is recent.",
            "Alpha v State was affirmed recently by the larger constitution bench.",
        )
        spans = extract_citing_text_spans(doc, ["Alpha v State"], cfg)
        corpus = collect_citances(spans)
        for citance, prov in zip(corpus.citances, corpus.provenance):
            span = spans[prov.span]
            assert prov.doc_id == span.source_doc
            assert citance.text in " ".join(span.paragraph_text.split())

    def test_span_ordinals_per_document(self, cfg):
        doc = _citing(
            "d1",
            "Alpha v State settles the first point raised before us.",
            "Alpha v State also answers the second point against the appellant.",
        )
        spans = extract_citing_text_spans(doc, ["Alpha v State"], cfg)
        corpus = collect_citances(spans)
        assert {p.span for p in corpus.provenance} == {0, 1}


class TestAbbreviationFile:
    def test_load_from_file(self, tmp_path):
        path = tmp_path / "abbr.txt"
        path.write_text("No.\nSec.\n# comment\n\nOrs.\n", encoding="utf-8")
        abbrs = load_abbreviations(path)
        assert abbrs == {"no", "sec", "ors"}

    def test_custom_list_controls_splitting(self):
        bare = SegmenterConfig(abbreviations=frozenset(), min_sentence_words=1)
        withsec = SegmenterConfig(abbreviations=frozenset({"sec"}), min_sentence_words=1)
        text = "Apply Sec. 5 now. Then stop."
        assert len(split_sentences(text, bare)) == 3
        assert len(split_sentences(text, withsec)) == 2
