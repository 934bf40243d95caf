"""
Sentence segmentation and citance extraction
============================================

Legal prose is full of abbreviations ("Sec.", "No.", "v.", initials of
judges) that defeat a naive period splitter.  This walk-through shows the
rule-based splitter on judgment-style text, then extracts the paragraphs
of a citing judgment that mention a target case.
"""

from cbjsumm import CitingJudgment
from cbjsumm.segmenter import (
    collect_citances,
    default_config,
    extract_citing_text_spans,
    split_paragraphs,
    split_sentences,
)

cfg = default_config()

passage = (
    "The appellant was convicted under Sec. 302 I.P.C. by the Sessions Court. "
    "Hon'ble K. A. Rao J. heard the appeal at length. "
    "Reliance on State v. Mohan is misplaced. "
    "The conviction is set aside. So ordered."
)

print("input:")
print(f"  {passage}\n")
print("sentences:")
for sentence in split_sentences(passage, cfg):
    print(f"  [{sentence.index}] ({sentence.word_count:2d} words) {sentence.text}")

# "Sec." and the judge's initials never split; the trailing two-word
# fragment "So ordered." merged into its neighbour.

print()

citing_text = """The present batch of appeals concerns preventive detention orders.

In Alpha v State the apex court held that stale incidents cannot ground a
fresh order of detention. The detaining authority must show proximate and
relevant material. That ratio governs the present facts.

Parliament later amended the statute, but the amendment is prospective.

We respectfully follow Alpha v State and quash the impugned orders."""

print(f"paragraphs in the citing judgment: {len(split_paragraphs(citing_text))}")

doc = CitingJudgment(doc_id="cite_001", raw_text=citing_text)
spans = extract_citing_text_spans(doc, ["Alpha v State"], cfg)
print(f"citing-text-spans matching the target: {len(spans)}")

corpus = collect_citances(spans)
print(f"citances collected: {corpus.size}")
for citance, provenance in zip(corpus.citances, corpus.provenance):
    print(f"  [{citance.index}] ({provenance.doc_id}, span {provenance.span}) {citance.text}")
