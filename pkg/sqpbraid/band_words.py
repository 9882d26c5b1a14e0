"""
Band-Generator Words

Band words, their text grammar, the Artin expansion, the closure permutation
and the strong-quasipositivity predicate.

A letter a(i,j) is a band joining strands i and j that passes in front of the
strands strictly between them. Its Artin expansion is

    a(i,j)^e = (s_i s_{i+1} ... s_{j-2}) s_{j-1}^e (s_i ... s_{j-2})^-1

so a(i,i+1) = s_i. The first letter of a word is the bottom band of the fence
diagram and the first factor of the braid. Strand indices are 1-based.
"""

import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator

from .errors import IndexViolation, ParseError

HEADER_RE = re.compile(r"strands\s*:\s*(\d+)\s*$")
LETTER_RE = re.compile(r"a\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)(\s*\^\s*-\s*1)?")


@dataclass(frozen=True, order=True)
class BandLetter:
    """Signed band generator a(lower, upper)^sign."""
    lower: int
    upper: int
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if not 1 <= self.lower < self.upper:
            raise IndexViolation(f"a({self.lower},{self.upper}) needs 1 <= lower < upper")

    @property
    def positive(self) -> bool:
        return self.sign == 1

    def inverse(self) -> "BandLetter":
        return replace(self, sign=-self.sign)

    def shifted(self, offset: int) -> "BandLetter":
        """Same band moved `offset` strands to the right."""
        return replace(self, lower=self.lower + offset, upper=self.upper + offset)

    def render(self) -> str:
        suffix = "^-1" if self.sign == -1 else ""
        return f"a({self.lower},{self.upper}){suffix}"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class BandWord:
    """Ordered band letters on a fixed number of strands."""
    strands: int
    letters: tuple[BandLetter, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise IndexViolation(f"strand count must be positive, got {self.strands}")
        object.__setattr__(self, "letters", tuple(self.letters))
        for k, letter in enumerate(self.letters, start=1):
            if letter.upper > self.strands:
                raise IndexViolation(
                    f"letter {k} {letter} exceeds {self.strands} strands"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[BandLetter]:
        return iter(self.letters)

    def letter(self, position: int) -> BandLetter:
        """Letter at a 1-based position."""
        if not 1 <= position <= len(self.letters):
            raise IndexError(f"letter position {position} outside 1..{len(self.letters)}")
        return self.letters[position - 1]

    def reverse_signs(self) -> "BandWord":
        """Reverse every sign, keeping the endpoints.

        Only a mirror image when every band joins adjacent strands: the
        conjugating generators of a longer band keep their signs.
        """
        return BandWord(self.strands, tuple(letter.inverse() for letter in self.letters))

    def mirror(self) -> "BandWord":
        """Word whose closure is the mirror image of this word's closure.

        Strands are flipped (i -> n + 1 - i) and signs reversed. The flip is
        conjugation by the half twist, which carries the conjugators of
        a(i,j) to the inverse conjugators of a(n+1-j, n+1-i).
        """
        n = self.strands
        return BandWord(n, tuple(
            BandLetter(n + 1 - letter.upper, n + 1 - letter.lower, -letter.sign)
            for letter in self.letters
        ))

    def __str__(self) -> str:
        return render_band_word(self)


@dataclass(frozen=True)
class ArtinLetter:
    """Signed Artin generator s_generator^sign."""
    generator: int
    sign: int = 1

    def render(self) -> str:
        return f"s{self.generator}" + ("^-1" if self.sign == -1 else "")

    def token(self) -> str:
        """Compact form; capital letter for the inverse."""
        prefix = "s" if self.sign == 1 else "S"
        return f"{prefix}{self.generator}"


@dataclass(frozen=True)
class ArtinWord:
    """Word in the Artin generators s_1 .. s_{strands-1}."""
    strands: int
    letters: tuple[ArtinLetter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for letter in self.letters:
            if not 1 <= letter.generator <= self.strands - 1:
                raise IndexViolation(
                    f"generator s{letter.generator} outside 1..{self.strands - 1}"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def render(self) -> str:
        return " ".join(letter.render() for letter in self.letters)

    def compact(self) -> str:
        return " ".join(letter.token() for letter in self.letters)

    def as_list(self) -> list[int]:
        """Signed generator indices, e.g. [1, 2, -1]."""
        return [letter.generator * letter.sign for letter in self.letters]


@dataclass(frozen=True)
class ClosureSummary:
    """Components of the braid closure and the strand partition."""
    components: int
    labels: tuple[int, ...] = field(default=())

    @property
    def strand_partition(self) -> dict[int, int]:
        """Map strand index -> component label (1..m)."""
        return {strand: label for strand, label in enumerate(self.labels, start=1)}

    def strands_of(self, label: int) -> tuple[int, ...]:
        return tuple(s for s, lab in enumerate(self.labels, start=1) if lab == label)


# ============================================================================
# Text grammar
# ============================================================================

def parse_band_word(text: str) -> BandWord:
    """Parse the band-word file format.

    strands: N
    a(i,j) a(k,l)^-1 ...

    Lines starting with '#' are comments. Letters may span several lines.
    """
    strands = None
    letters: list[BandLetter] = []

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.rstrip()
        stripped = line.lstrip()
        if not stripped or stripped.startswith("#"):
            continue

        if strands is None:
            match = HEADER_RE.match(stripped)
            if not match:
                raise ParseError("expected header 'strands: N'", line_no, len(line) - len(stripped) + 1)
            strands = int(match.group(1))
            if strands < 1:
                raise IndexViolation("strand count must be at least 1", line_no)
            continue

        pos = 0
        while pos < len(line):
            if line[pos].isspace():
                pos += 1
                continue
            match = LETTER_RE.match(line, pos)
            if not match:
                raise ParseError(f"unexpected text {line[pos:pos + 12]!r}", line_no, pos + 1)
            lower, upper = int(match.group(1)), int(match.group(2))
            sign = -1 if match.group(3) else 1
            if not 1 <= lower < upper:
                raise IndexViolation(f"a({lower},{upper}) needs 1 <= lower < upper", line_no, pos + 1)
            if upper > strands:
                raise IndexViolation(f"a({lower},{upper}) exceeds {strands} strands", line_no, pos + 1)
            letters.append(BandLetter(lower, upper, sign))
            pos = match.end()

    if strands is None:
        raise ParseError("missing header 'strands: N'")

    return BandWord(strands, tuple(letters))


def render_band_word(word: BandWord) -> str:
    """Canonical text form; parse_band_word inverts it."""
    header = f"strands: {word.strands}\n"
    return header + " ".join(letter.render() for letter in word.letters)


def band_word(strands: int, letters: Iterable[tuple]) -> BandWord:
    """Build a word from (lower, upper) or (lower, upper, sign) tuples."""
    return BandWord(strands, tuple(BandLetter(*fields) for fields in letters))


# ============================================================================
# Artin expansion and closure
# ============================================================================

def expand_letter(letter: BandLetter) -> tuple[ArtinLetter, ...]:
    """Artin expansion of one band letter, length 2(upper - lower) - 1."""
    conjugator = [ArtinLetter(g, 1) for g in range(letter.lower, letter.upper - 1)]
    middle = ArtinLetter(letter.upper - 1, letter.sign)
    undo = [ArtinLetter(g, -1) for g in reversed(range(letter.lower, letter.upper - 1))]
    return tuple(conjugator) + (middle,) + tuple(undo)


def artin_expand(word: BandWord) -> ArtinWord:
    """Concatenate the per-letter Artin expansions."""
    letters: list[ArtinLetter] = []
    for letter in word.letters:
        letters.extend(expand_letter(letter))
    return ArtinWord(word.strands, tuple(letters))


def _track_positions(strands: int, swaps: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Apply position swaps in order; returns end position of every start strand."""
    occupant = list(range(strands + 1))
    for a, b in swaps:
        occupant[a], occupant[b] = occupant[b], occupant[a]
    end_position = [0] * (strands + 1)
    for position in range(1, strands + 1):
        end_position[occupant[position]] = position
    return tuple(end_position[1:])


def closure_permutation(word: BandWord) -> tuple[int, ...]:
    """Product of the transpositions (lower upper) in letter order.

    Entry s-1 is the top position reached by the strand that starts at s.
    """
    return _track_positions(word.strands, ((l.lower, l.upper) for l in word.letters))


def artin_permutation(word: ArtinWord) -> tuple[int, ...]:
    """Permutation of an Artin word in the same convention as closure_permutation."""
    return _track_positions(word.strands, ((l.generator, l.generator + 1) for l in word.letters))


def permutation_cycles(permutation: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Cycles of a 1-based permutation, ordered by their smallest element."""
    seen: set[int] = set()
    cycles = []
    for start in range(1, len(permutation) + 1):
        if start in seen:
            continue
        cycle = []
        current = start
        while current not in seen:
            seen.add(current)
            cycle.append(current)
            current = permutation[current - 1]
        cycles.append(tuple(cycle))
    return cycles


def summarize_permutation(permutation: tuple[int, ...]) -> ClosureSummary:
    """Component labels 1..m in order of each cycle's smallest strand."""
    labels = [0] * len(permutation)
    cycles = permutation_cycles(permutation)
    for label, cycle in enumerate(cycles, start=1):
        for strand in cycle:
            labels[strand - 1] = label
    return ClosureSummary(components=len(cycles), labels=tuple(labels))


def closure_summary(word: BandWord) -> ClosureSummary:
    """Closure components and strand partition; independent of the signs."""
    return summarize_permutation(closure_permutation(word))


# ============================================================================
# Quasipositivity
# ============================================================================

def is_strongly_quasipositive(word: BandWord) -> bool:
    """True iff every letter is positive."""
    return all(letter.positive for letter in word.letters)


def negative_positions(word: BandWord) -> list[int]:
    """1-based positions of the negative letters, in word order."""
    return [k for k, letter in enumerate(word.letters, start=1) if not letter.positive]
