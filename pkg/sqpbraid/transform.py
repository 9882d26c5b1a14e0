"""
Negative Band Replacement

Turns any band word with a connected canonical surface into a strongly
quasipositive word by replacing each negative letter with a cut-open
zero-framed annulus and a closing band. Letters are replaced last-first so the
positions of the earlier negatives never move. Every run produces a
TransformCertificate that is enough to replay the steps, carry a cycle basis of
the input over to the output and name the satellite companions.
"""

import logging
from functools import lru_cache
from typing import Optional, Sequence, Union

from pydantic import BaseModel, Field

from .annulus import AnnulusEntry, Catalog, cut_annulus, markov_reduce
from .band_words import (
    BandLetter,
    BandWord,
    closure_summary,
    is_strongly_quasipositive,
    negative_positions,
    parse_band_word,
)
from .base import load_settings
from .errors import (
    AnnulusError,
    CertificateMismatch,
    CompanionArityError,
    InvalidAnnulus,
    NoSuchLetter,
    NotNegative,
)
from .fence import (
    BandTraversal,
    BasisCycle,
    CycleBasis,
    cycle_basis,
    framing,
    require_connected,
    seifert_form,
    seifert_matrix,
    surface_stats,
    tree_path,
)
from .invariants import alexander_from_seifert, linking_matrix, signature

logger = logging.getLogger(__name__)

Companions = Union[AnnulusEntry, Sequence[AnnulusEntry], None]


class ReplacementStep(BaseModel):
    """One negative letter replaced by a cut-open annulus block."""
    replaced_position: int = Field(description="1-based position of the negative letter")
    p: int = Field(description="Lower strand of the replaced letter")
    q: int = Field(description="Upper strand of the replaced letter")
    annulus: str = Field(description="Catalog name of the companion annulus")
    n_A: int = Field(description="Strand count of the reduced annulus word")
    strands_before: int
    letters_before: int
    strand_remap: dict[str, int] = Field(
        default_factory=dict, description="Moved strands only; unlisted strands keep their index"
    )
    inserted_block: list[str] = Field(default_factory=list)

    def remap(self, strand: int) -> int:
        return self.strand_remap.get(str(strand), strand)

    def block_letters(self) -> tuple[BandLetter, ...]:
        return parse_band_word(f"strands: {self.q + self.n_A}\n{' '.join(self.inserted_block)}").letters

    def remap_position(self, position: int) -> int:
        """Output position of a surviving letter."""
        if position == self.replaced_position:
            raise ValueError(f"letter {position} was replaced")
        return position if position < self.replaced_position else position + self.n_A


class TransformCertificate(BaseModel):
    """Record of a full transform run."""
    input_strands: int
    input_letters: int
    output_strands: int
    output_letters: int
    steps: list[ReplacementStep] = Field(default_factory=list)
    companions: list[str] = Field(default_factory=list, description="Companion names in execution order")
    basis_map: dict[str, str] = Field(
        default_factory=dict, description="Input chord index -> output cycle path"
    )

    @property
    def is_empty(self) -> bool:
        return not self.steps


class PreservationReport(BaseModel):
    """One flag per invariant the transform must preserve."""
    sqp: bool
    strands: bool
    letters: bool
    b1: bool
    components: bool
    connected: bool
    seifert_form: bool
    alexander: bool
    signature: bool
    linking_matrix: bool

    @property
    def ok(self) -> bool:
        return all(self.model_dump().values())

    def failures(self) -> list[str]:
        return [name for name, passed in self.model_dump().items() if not passed]


# ============================================================================
# Single replacement
# ============================================================================

@lru_cache(maxsize=64)
def _open_annulus(word: BandWord) -> BandWord:
    if not is_strongly_quasipositive(word):
        raise InvalidAnnulus("companion annulus has negative letters")
    try:
        value = framing(word)
        if value != 0:
            raise InvalidAnnulus(f"companion annulus has framing {value}")
        return cut_annulus(markov_reduce(word))
    except AnnulusError as e:
        raise InvalidAnnulus(f"companion annulus rejected: {e}") from e


def apply_step(word: BandWord, step: ReplacementStep) -> BandWord:
    """Replay a recorded step on the word it was recorded against."""
    if word.strands != step.strands_before or len(word.letters) != step.letters_before:
        raise CertificateMismatch(
            f"step at letter {step.replaced_position} expects {step.strands_before} strands and "
            f"{step.letters_before} letters, got {word.strands} and {len(word.letters)}"
        )
    if step.replaced_position > len(word.letters):
        raise CertificateMismatch(f"no letter at position {step.replaced_position}")
    g = word.letter(step.replaced_position)
    if g.positive or (g.lower, g.upper) != (step.p, step.q):
        raise CertificateMismatch(
            f"letter {step.replaced_position} is {g}, expected a({step.p},{step.q})^-1"
        )

    letters: list[BandLetter] = []
    for position, letter in enumerate(word.letters, start=1):
        if position == step.replaced_position:
            letters.extend(step.block_letters())
        else:
            letters.append(BandLetter(step.remap(letter.lower), step.remap(letter.upper), letter.sign))
    return BandWord(word.strands + step.n_A, tuple(letters))


def replace_one(word: BandWord, g_pos: int, annulus: AnnulusEntry) -> tuple[BandWord, ReplacementStep]:
    """Replace the negative letter at g_pos by the opened annulus and a closing band."""
    if not 1 <= g_pos <= len(word.letters):
        raise NoSuchLetter(f"letter position {g_pos} outside 1..{len(word.letters)}")
    g = word.letter(g_pos)
    if g.positive:
        raise NotNegative(f"letter {g_pos} {g} is positive")

    opened = _open_annulus(annulus.word)
    n_A = opened.strands - 1
    p, q = g.lower, g.upper
    block = [letter.shifted(p - 1) for letter in opened.letters]
    block.append(BandLetter(p + 1, q + n_A))

    step = ReplacementStep(
        replaced_position=g_pos,
        p=p,
        q=q,
        annulus=annulus.name,
        n_A=n_A,
        strands_before=word.strands,
        letters_before=len(word.letters),
        strand_remap={str(x): x + n_A for x in range(p + 1, word.strands + 1)},
        inserted_block=[letter.render() for letter in block],
    )
    logger.debug(
        "Replacing letter %d %s with %s (n_A = %d)", g_pos, g, annulus.name, n_A
    )
    return apply_step(word, step), step


# ============================================================================
# Full transform
# ============================================================================

def _resolve_companions(companions: Companions, count: int) -> list[AnnulusEntry]:
    if companions is None:
        if count == 0:
            return []
        companions = Catalog().get(load_settings()["catalog"]["default_companion"])
    if isinstance(companions, AnnulusEntry):
        return [companions] * count
    companions = list(companions)
    if len(companions) != count:
        raise CompanionArityError(count, len(companions))
    return companions


def rudolph_transform(word: BandWord, companions: Companions = None) -> tuple[BandWord, TransformCertificate]:
    """Replace every negative letter, last first; returns the SQP word and its certificate.

    `companions` is a single entry used at every negative letter or one entry per
    negative letter in order of appearance.
    """
    require_connected(word)
    negatives = negative_positions(word)
    assigned = _resolve_companions(companions, len(negatives))

    current = word
    steps: list[ReplacementStep] = []
    for site in range(len(negatives), 0, -1):
        position = negative_positions(current)[site - 1]
        current, step = replace_one(current, position, assigned[site - 1])
        steps.append(step)

    certificate = TransformCertificate(
        input_strands=word.strands,
        input_letters=len(word.letters),
        output_strands=current.strands,
        output_letters=len(current.letters),
        steps=steps,
        companions=[step.annulus for step in steps],
    )
    basis = cycle_basis(word)
    mapped = map_basis(certificate, basis)
    certificate.basis_map = {
        str(source.chord): target.render()
        for source, target in zip(basis.cycles, mapped.cycles)
    }
    logger.debug(
        "Transformed %d-strand word with %d replacement(s) into %d strands",
        word.strands, len(steps), current.strands,
    )
    return current, certificate


def replay(word: BandWord, certificate: TransformCertificate) -> BandWord:
    """Rebuild the output word from the input word and a certificate."""
    for step in certificate.steps:
        word = apply_step(word, step)
    return word


# ============================================================================
# Basis transport
# ============================================================================

def _block_path(step: ReplacementStep) -> tuple[BandTraversal, ...]:
    """Traversals from p to q + n_A through the inserted block, in output positions."""
    block = BandWord(step.q + step.n_A, step.block_letters())
    inner = tree_path(block, range(1, step.n_A + 1), step.p, step.p + 1)
    offset = step.replaced_position - 1
    path = [BandTraversal(t.letter + offset, t.direction) for t in inner]
    path.append(BandTraversal(step.replaced_position + step.n_A, 1))
    return tuple(path)


def _carry(traversals: tuple[BandTraversal, ...], step: ReplacementStep) -> tuple[BandTraversal, ...]:
    carried: list[BandTraversal] = []
    for t in traversals:
        if t.letter != step.replaced_position:
            carried.append(BandTraversal(step.remap_position(t.letter), t.direction))
            continue
        path = _block_path(step)
        if t.direction == -1:
            path = tuple(BandTraversal(s.letter, -s.direction) for s in reversed(path))
        carried.extend(path)
    return tuple(carried)


def _chord_position(chord: int, step: ReplacementStep) -> int:
    if chord == step.replaced_position:
        return step.replaced_position + step.n_A
    return step.remap_position(chord)


def _rotate_to_chord(traversals: tuple[BandTraversal, ...], chord: int) -> tuple[BandTraversal, ...]:
    start = next(
        (m for m, t in enumerate(traversals) if t.letter == chord and t.direction == 1), 0
    )
    return traversals[start:] + traversals[:start]


def map_basis(certificate: TransformCertificate, basis: CycleBasis, word: Optional[BandWord] = None) -> CycleBasis:
    """Carry a cycle basis of the input word to the output word.

    Surviving letters keep their tree or chord role; a replaced letter's role
    passes to the closing band and its traversals are rerouted through the block.
    When `word` is given the steps are replayed against it first.
    """
    if word is not None:
        if (word.strands, len(word.letters)) != (certificate.input_strands, certificate.input_letters):
            raise CertificateMismatch(
                f"certificate describes {certificate.input_strands} strands and "
                f"{certificate.input_letters} letters, word has {word.strands} and {len(word.letters)}"
            )
        replay(word, certificate)

    expected = certificate.input_letters - certificate.input_strands + 1
    if len(basis) != expected:
        raise CertificateMismatch(f"basis has {len(basis)} cycles, certificate input has b1 = {expected}")
    for cycle in basis.cycles:
        for t in cycle.traversals:
            if not 1 <= t.letter <= certificate.input_letters:
                raise CertificateMismatch(
                    f"cycle {cycle.chord} uses letter {t.letter} outside 1..{certificate.input_letters}"
                )

    cycles = list(basis.cycles)
    tree = set(basis.tree)
    for step in certificate.steps:
        g = step.replaced_position
        block = set(range(g, g + step.n_A))
        new_tree = {_chord_position(k, step) for k in tree} | block
        cycles = [
            BasisCycle(
                _chord_position(cycle.chord, step),
                _rotate_to_chord(_carry(cycle.traversals, step), _chord_position(cycle.chord, step)),
            )
            for cycle in cycles
        ]
        tree = new_tree
    return CycleBasis(tuple(cycles), frozenset(tree))


# ============================================================================
# Bookkeeping
# ============================================================================

def satellite_trace(certificate: TransformCertificate) -> list[str]:
    """Companions in order of appearance of the replaced letters."""
    return list(reversed(certificate.companions))


def strand_map(certificate: TransformCertificate) -> dict[int, int]:
    """Output index of every input strand after all remaps."""
    mapping = {strand: strand for strand in range(1, certificate.input_strands + 1)}
    for step in certificate.steps:
        mapping = {source: step.remap(target) for source, target in mapping.items()}
    return mapping


def companion_warnings(companions: Sequence[AnnulusEntry]) -> list[str]:
    """Warn for companions whose core polynomial is not 1."""
    warnings = []
    seen = set()
    for entry in companions:
        if entry.name in seen:
            continue
        seen.add(entry.name)
        if entry.core_alexander is not None and entry.core_alexander != "1":
            warnings.append(
                f"companion {entry.name} has core Alexander polynomial {entry.core_alexander}; "
                f"the satellite is not a concordance when the core polynomial differs from 1"
            )
    return warnings


def _aligned_linking(word: BandWord, output: BandWord, certificate: TransformCertificate) -> bool:
    before = linking_matrix(word)
    after = linking_matrix(output)
    if before.components != after.components:
        return False
    labels_in = closure_summary(word).labels
    labels_out = closure_summary(output).labels
    component_map: dict[int, int] = {}
    for source, target in strand_map(certificate).items():
        a, b = labels_in[source - 1], labels_out[target - 1]
        if component_map.setdefault(a, b) != b:
            return False
    if sorted(component_map.values()) != list(range(1, after.components + 1)):
        return False
    return all(
        before.entries[a - 1][b - 1] == after.entries[component_map[a] - 1][component_map[b] - 1]
        for a in component_map for b in component_map
    )


def verify_preservation(word: BandWord, output: BandWord, certificate: TransformCertificate) -> PreservationReport:
    """Recompute every preserved invariant on both words."""
    added = sum(step.n_A for step in certificate.steps)
    stats_in, stats_out = surface_stats(word), surface_stats(output)

    basis = cycle_basis(word)
    V_in = seifert_matrix(word, basis)
    V_mapped = seifert_matrix(output, map_basis(certificate, basis, word))
    V_out = seifert_form(output)

    return PreservationReport(
        sqp=is_strongly_quasipositive(output),
        strands=output.strands == word.strands + added,
        letters=len(output.letters) == len(word.letters) + added,
        b1=stats_out.b1 == stats_in.b1,
        components=stats_out.boundary_components == stats_in.boundary_components,
        connected=stats_out.connected,
        seifert_form=V_mapped.entries == V_in.entries,
        alexander=alexander_from_seifert(V_out) == alexander_from_seifert(V_in),
        signature=signature(V_out) == signature(V_in),
        linking_matrix=_aligned_linking(word, output, certificate),
    )
