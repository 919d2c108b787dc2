"""How many sentences must a reviewer check?
=============================================

A walk through the closed-form side of the toolkit: Wald half-widths for a
high-quality and a low-quality translation, the sample-size solver, and a
small-job scorecard where the finite-population correction matters.
"""

from tqesample import (
    ConversionConstants,
    convert_sentences,
    fpc_interval,
    required_sample_size,
    sentences_from_words,
    wald_delta,
    wald_interval,
)

constants = ConversionConstants()  # 17 words/sentence, 15 sentences/page

# ---------------------------------------------------------------------------
# A high-quality job: about one error per page, i.e. density p = 1/15 ~ 0.07.
p = 0.07
print("high-quality translation, error density p = 0.07")
print(f"{'sentences':>10} {'pages':>8} {'half-width':>11}  interval")
for n in (1, 15, 150, 625, 2500):
    est = wald_interval(p, n)
    pages = n / constants.sentences_per_page
    print(
        f"{n:>10} {pages:>8.1f} {est.delta:>11.3f}  "
        f"[{est.lower:.3f}, {est.upper:.3f}]{'  (clamped)' if est.clamped else ''}"
    )

# Checking one page leaves the estimate almost meaningless; the interval only
# tightens to +/-0.02 somewhere between 150 and 2500 sentences. The solver
# pins it down exactly:
for target in (0.02, 0.01):
    res = required_sample_size(p, target)
    volume = convert_sentences(res.recommended, constants)
    print(
        f"\ntarget half-width {target}: check {res.recommended} sentences "
        f"(exact {res.exact:.1f}) = {volume.words:,.0f} words = {volume.pages:.1f} pages"
    )

# ---------------------------------------------------------------------------
# A low-quality job: one error every five sentences.
print("\nlow-quality translation, error density p = 0.2")
one_page = wald_interval(0.2, 15)
print(
    f"one page (15 sentences): 0.2 ± {one_page.delta:.3f} — anywhere in "
    f"[{one_page.lower:.3f}, {one_page.upper:.3f}], useless for a verdict"
)

# ---------------------------------------------------------------------------
# A small job, where the sample is a big share of the whole: a 1000-word job,
# 400 words reviewed, 2 minor errors found. Plain Wald would overstate the
# uncertainty; the finite-population correction shrinks it.
job_words, sample_words, errors = 1000, 400, 2
n = sentences_from_words(sample_words, constants)
N = sentences_from_words(job_words, constants)
density = errors / n
est = fpc_interval(density, n, N)
print(f"\nscorecard: {errors} errors in {sample_words} of {job_words} words")
print(f"  observed density {density:.3f} ± {est.delta:.3f}")
print(f"  95% interval [{est.lower:.3f}, {est.upper:.3f}] (lower bound clamped at 0)")
print(f"  without the correction the half-width would be {wald_delta(density, n):.3f}")
if est.small_sample:
    print("  note: fewer than 5 expected errors in the sample; treat as indicative")
