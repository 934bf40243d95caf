"""
Evaluating summaries: ROUGE and macro aggregation
=================================================

ROUGE-1/2/L on a worked pair of sentences, then the aggregation used for
reporting: per-case averaging over references first, then mean and
sample standard deviation across cases (ROUGE shown as percentages).
"""

from cbjsumm.evaluation import (
    format_report,
    macro_aggregate,
    report_to_json,
    rouge_l,
    rouge_n,
    tokenize,
)

reference = "the court held the appeal"
system = "the court dismissed the appeal"

print(f"reference: {reference!r}")
print(f"system:    {system!r}")
print(f"tokens:    {tokenize(system)}\n")

for label, value in [
    ("ROUGE-1", rouge_n(system, reference, 1)),
    ("ROUGE-2", rouge_n(system, reference, 2)),
    ("ROUGE-L", rouge_l(system, reference)),
]:
    print(f"{label}: P={value.precision:.4f} R={value.recall:.4f} F={value.f1:.4f}")

# four of five unigrams overlap (F=0.8); only two of four bigrams do
# (F=0.5); the longest common subsequence "the court the appeal" gives
# ROUGE-L the same 0.8.

print("\nmacro aggregation over three cases (second case has two references):")
per_case = [
    ("case_one", [{"rouge1": 0.52, "rouge2": 0.19, "rougeL": 0.54}]),
    ("case_two", [
        {"rouge1": 0.48, "rouge2": 0.16, "rougeL": 0.50},
        {"rouge1": 0.56, "rouge2": 0.22, "rougeL": 0.58},
    ]),
    ("case_three", [{"rouge1": 0.61, "rouge2": 0.25, "rougeL": 0.63}]),
]
report = macro_aggregate(per_case, method="cd")
print(format_report(report))
print("\nas JSON:")
print(report_to_json(report))
