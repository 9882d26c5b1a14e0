"""
Random Property Suite

Generates seeded random connected band words and randomly stabilized catalog
annuli, then checks the transform and invariant properties on every case:
- words: SQP output, accounting, Seifert form on the mapped basis, Alexander
  polynomial, signature, linking matrix, Seifert/Burau agreement, idempotence
- input invariants: Alexander symmetry under t -> 1/t, |Delta(1)| = 1 for knots,
  mirror Alexander polynomial and signature
- annuli: Markov reduction recovers a valence-2 word with the same framing,
  component count and component Alexander polynomials
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from sqpbraid import (
    BandLetter,
    BandWord,
    Catalog,
    alexander_cross_check,
    closure_summary,
    component_alexander,
    framing,
    markov_reduce,
    parse_band_word,
    render_band_word,
    rudolph_transform,
    seifert_form,
    signature,
    stabilize,
    verify_preservation,
)
from sqpbraid.base import load_settings
from sqpbraid.errors import SqpBraidError
from sqpbraid.invariants import alexander_from_seifert, normalize_or_zero

logger = logging.getLogger(__name__)


@dataclass
class CaseResult:
    """Outcome of one corpus case."""
    kind: str
    index: int
    word: str
    failures: list = field(default_factory=list)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return not self.failures and self.error is None


@dataclass
class CorpusReport:
    """Aggregated corpus outcome, cases in generation order."""
    seed: int
    results: list = field(default_factory=list)

    @property
    def word_cases(self) -> list[CaseResult]:
        return [r for r in self.results if r.kind == "word"]

    @property
    def annulus_cases(self) -> list[CaseResult]:
        return [r for r in self.results if r.kind == "annulus"]

    @property
    def failed(self) -> list[CaseResult]:
        return [r for r in self.results if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "words": len(self.word_cases),
            "annuli": len(self.annulus_cases),
            "passed": len(self.results) - len(self.failed),
            "failed": [
                {"kind": r.kind, "index": r.index, "word": r.word, "failures": r.failures, "error": r.error}
                for r in self.failed
            ],
        }


# ============================================================================
# Case checks (module level so worker processes can pickle them)
# ============================================================================

def check_word(index: int, text: str, companion: str) -> CaseResult:
    """Transform one word and check every preserved property."""
    word = parse_band_word(text)
    result = CaseResult("word", index, text)
    try:
        entry = Catalog().get(companion)
        output, certificate = rudolph_transform(word, entry)
        report = verify_preservation(word, output, certificate)
        result.failures.extend(report.failures())

        agree, seifert_side, burau_side = alexander_cross_check(word)
        if not agree:
            result.failures.append(f"alexander_routes ({seifert_side} != {burau_side})")
        result.failures.extend(_input_invariant_failures(word))

        again, repeat = rudolph_transform(output, entry)
        if again != output or not repeat.is_empty:
            result.failures.append("idempotence")
    except SqpBraidError as e:
        result.error = f"{type(e).__name__}: {e}"
    return result


def _input_invariant_failures(word: BandWord) -> list[str]:
    failures = []
    V = seifert_form(word)
    delta = alexander_from_seifert(V)
    if normalize_or_zero(delta.invert_variable()) != delta:
        failures.append("alexander_symmetry")
    if closure_summary(word).components == 1 and abs(delta.evaluate(1)) != 1:
        failures.append("knot_unit")

    image = word.mirror()
    V_image = seifert_form(image)
    if alexander_from_seifert(V_image) != normalize_or_zero(delta.invert_variable()):
        failures.append("mirror_alexander")
    if signature(V_image) != -signature(V):
        failures.append("mirror_signature")
    return failures


def _component_polynomials(word: BandWord) -> list[str]:
    components = closure_summary(word).components
    return [component_alexander(word, label).render() for label in range(1, components + 1)]


def check_annulus(index: int, text: str, original: str) -> CaseResult:
    """Reduce a stabilized annulus and compare it with the word it came from."""
    word = parse_band_word(text)
    source = parse_band_word(original)
    result = CaseResult("annulus", index, text)
    try:
        reduced = markov_reduce(word).word
        if len(reduced.letters) != reduced.strands:
            result.failures.append("valence")
        if framing(reduced) != framing(source):
            result.failures.append("framing")
        if closure_summary(reduced).components != closure_summary(source).components:
            result.failures.append("components")
        if sorted(_component_polynomials(reduced)) != sorted(_component_polynomials(source)):
            result.failures.append("component_alexander")
    except SqpBraidError as e:
        result.error = f"{type(e).__name__}: {e}"
    return result


def _run_case(case: tuple) -> CaseResult:
    kind, index, text, extra = case
    if kind == "word":
        return check_word(index, text, extra)
    return check_annulus(index, text, extra)


# ============================================================================
# Runner
# ============================================================================

class CorpusRunner:
    """
    Seeded case generator and executor; parameters default to the `corpus`
    section of the settings.
    """

    def __init__(
        self,
        seed: Optional[int] = None,
        words: Optional[int] = None,
        annuli: Optional[int] = None,
        settings: Optional[dict] = None,
    ):
        settings = settings or load_settings()
        self.params = settings["corpus"]
        self.companion = settings["catalog"]["default_companion"]
        self.seed = self.params["seed"] if seed is None else seed
        self.words = self.params["words"] if words is None else words
        self.annuli = self.params["annuli"] if annuli is None else annuli

    def random_word(self, rng: random.Random) -> BandWord:
        """Connected word: a random spanning tree of bands plus extra letters, shuffled."""
        strands = rng.randint(self.params["min_strands"], self.params["max_strands"])
        pairs = [(rng.randint(1, s - 1), s) for s in range(2, strands + 1)]
        extra = rng.randint(0, self.params["max_letters"] - len(pairs))
        for _ in range(extra):
            i, j = rng.sample(range(1, strands + 1), 2)
            pairs.append((min(i, j), max(i, j)))
        rng.shuffle(pairs)
        p = self.params["negative_probability"]
        letters = tuple(BandLetter(i, j, -1 if rng.random() < p else 1) for i, j in pairs)
        return BandWord(strands, letters)

    def random_stabilization(self, rng: random.Random, word: BandWord) -> BandWord:
        for _ in range(rng.randint(1, self.params["max_stabilizations"])):
            word = stabilize(
                word,
                strand=rng.randint(1, word.strands + 1),
                partner=rng.randint(1, word.strands),
                position=rng.randint(1, len(word.letters) + 1),
            )
        return word

    def cases(self) -> list[tuple]:
        """All cases in generation order; identical for identical seeds."""
        rng = random.Random(self.seed)
        cases = []
        for index in range(self.words):
            cases.append(("word", index, render_band_word(self.random_word(rng)), self.companion))

        catalog = Catalog()
        sources = [catalog.get(name).word for name in sorted(catalog.builtin)]
        for index in range(self.annuli):
            source = sources[index % len(sources)]
            stabilized = self.random_stabilization(rng, source)
            cases.append(("annulus", index, render_band_word(stabilized), render_band_word(source)))
        return cases

    def run(self, jobs: int = 1) -> CorpusReport:
        """Check every case; results keep generation order for any job count."""
        cases = self.cases()
        logger.debug("Running %d corpus cases with %d job(s)", len(cases), jobs)
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_run_case, cases))
        else:
            results = [_run_case(case) for case in cases]
        for result in results:
            if not result.passed:
                logger.debug("Case %s %d failed: %s %s", result.kind, result.index, result.failures, result.error)
        return CorpusReport(seed=self.seed, results=results)


def run_corpus(seed: Optional[int] = None, words: Optional[int] = None, annuli: Optional[int] = None, jobs: int = 1) -> CorpusReport:
    """Run the property suite with settings defaults for anything not given."""
    return CorpusRunner(seed=seed, words=words, annuli=annuli).run(jobs=jobs)
