"""
Companion Annuli

Validation of strongly quasipositive zero-framed annulus words, Markov
reduction to valence-2 form, the cut-open construction and the on-disk catalog
of named annuli.
"""

import contextlib
import json
import logging
import os
import re
import tempfile
import threading
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from .band_words import (
    BandLetter,
    BandWord,
    is_strongly_quasipositive,
    negative_positions,
    parse_band_word,
)
from .base import catalog_dir, load_settings, validate_document
from .errors import (
    AnnulusError,
    IsolatedStrand,
    NonZeroFraming,
    NotAnAnnulus,
    NotSQP,
    PreconditionViolated,
    SqpBraidError,
    StoreIOError,
    UnknownEntry,
    ValidationFailed,
)
from .fence import framing, surface_stats
from .invariants import component_alexander

logger = logging.getLogger(__name__)

ENTRY_SCHEMA = "annulus_entry.schema.json"
NAME_RE = re.compile(r"^[A-Za-z0-9_.-]+$")

# One writer at a time across every Catalog instance in the process
_STORE_LOCK = threading.Lock()


class AnnulusEntry(BaseModel):
    """A named strongly quasipositive zero-framed annulus word."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str
    word: BandWord
    declared_core: str = Field(default="", description="Claimed knot type of the annulus core")
    provenance: str = Field(default="", description="Where the word came from")
    core_alexander: Optional[str] = Field(
        default=None, description="Normalized Alexander polynomial of one boundary component"
    )

    @property
    def strands(self) -> int:
        return self.word.strands

    def to_document(self) -> dict:
        """Catalog store document."""
        return {
            "name": self.name,
            "declared_core": self.declared_core,
            "strands": self.word.strands,
            "word": " ".join(letter.render() for letter in self.word.letters),
            "provenance": self.provenance,
        }

    @classmethod
    def from_document(cls, document: dict) -> "AnnulusEntry":
        word = parse_band_word(f"strands: {document['strands']}\n{document['word']}")
        return cls(
            name=document["name"],
            word=word,
            declared_core=document.get("declared_core", ""),
            provenance=document.get("provenance", ""),
        )


@dataclass(frozen=True)
class ReducedAnnulus:
    """Annulus word in which every strand meets exactly two bands."""
    word: BandWord
    removed: int = 0

    @property
    def n_A(self) -> int:
        return self.word.strands


# ============================================================================
# Validation
# ============================================================================

def _require_annulus_surface(word: BandWord) -> None:
    stats = surface_stats(word)
    if stats.surface_components != 1 or stats.b1 != 1:
        raise NotAnAnnulus(
            f"expected a connected surface with b1 = 1, got "
            f"{stats.surface_components} component(s) and b1 = {stats.b1}"
        )


def validate_annulus(
    word: BandWord,
    name: str = "unnamed",
    declared_core: str = "",
    provenance: str = "",
) -> AnnulusEntry:
    """Check the word is an SQP zero-framed annulus and record its core polynomial."""
    if not is_strongly_quasipositive(word):
        raise NotSQP(f"negative letters at positions {negative_positions(word)}")
    _require_annulus_surface(word)
    value = framing(word)
    if value != 0:
        raise NonZeroFraming(value)

    try:
        core = component_alexander(word, 1).render()
    except SqpBraidError as e:
        logger.warning("Could not compute core polynomial of %s: %s", name, e)
        core = None

    return AnnulusEntry(
        name=name,
        word=word,
        declared_core=declared_core,
        provenance=provenance,
        core_alexander=core,
    )


# ============================================================================
# Markov reduction and the cut-open word
# ============================================================================

def _valences(word: BandWord) -> Counter:
    valence = Counter({strand: 0 for strand in range(1, word.strands + 1)})
    for letter in word.letters:
        valence[letter.lower] += 1
        valence[letter.upper] += 1
    return valence


def _drop_strand(index: int, strand: int) -> int:
    return index - 1 if index > strand else index


def markov_reduce(word: BandWord) -> ReducedAnnulus:
    """Destabilize leaf strands, smallest index first, until every valence is 2."""
    valence = _valences(word)
    isolated = [strand for strand in sorted(valence) if valence[strand] == 0]
    if isolated:
        raise IsolatedStrand(isolated[0])
    _require_annulus_surface(word)

    removed = 0
    while True:
        valence = _valences(word)
        leaves = [strand for strand in sorted(valence) if valence[strand] == 1]
        if not leaves:
            break
        k = leaves[0]
        position = next(
            pos for pos, letter in enumerate(word.letters)
            if k in (letter.lower, letter.upper)
        )
        logger.debug("Destabilizing strand %d (letter %d %s)", k, position + 1, word.letters[position])
        letters = tuple(
            BandLetter(_drop_strand(l.lower, k), _drop_strand(l.upper, k), l.sign)
            for pos, l in enumerate(word.letters) if pos != position
        )
        word = BandWord(word.strands - 1, letters)
        removed += 1

    return ReducedAnnulus(word, removed)


def stabilize(word: BandWord, strand: int, partner: int, position: int) -> BandWord:
    """Insert a new strand at index `strand` joined to `partner` by one positive band.

    `partner` is a strand of the input word and `position` the 1-based position of
    the new band in the output word. Inverse of one markov_reduce step.
    """
    if not 1 <= strand <= word.strands + 1:
        raise ValueError(f"new strand {strand} outside 1..{word.strands + 1}")
    if not 1 <= partner <= word.strands:
        raise ValueError(f"partner {partner} outside 1..{word.strands}")
    if not 1 <= position <= len(word.letters) + 1:
        raise ValueError(f"position {position} outside 1..{len(word.letters) + 1}")

    def lift(index: int) -> int:
        return index + 1 if index >= strand else index

    letters = [BandLetter(lift(l.lower), lift(l.upper), l.sign) for l in word.letters]
    mate = lift(partner)
    letters.insert(position - 1, BandLetter(min(strand, mate), max(strand, mate), 1))
    return BandWord(word.strands + 1, tuple(letters))


def cut_annulus(reduced: ReducedAnnulus) -> BandWord:
    """Open the annulus into a disc word on one more strand."""
    word = reduced.word
    valence = _valences(word)
    off = {strand: v for strand, v in valence.items() if v != 2}
    if off or len(word.letters) != word.strands:
        raise PreconditionViolated(f"not a valence-2 annulus word (valences {dict(off)})")
    first_strand = [pos for pos, letter in enumerate(word.letters) if letter.lower == 1]
    if len(first_strand) != 2:
        raise PreconditionViolated(f"expected two letters a(1,j), found {len(first_strand)}")

    first, second = first_strand
    letters = []
    for pos, letter in enumerate(word.letters):
        if pos == first:
            letters.append(BandLetter(2, letter.upper + 1, letter.sign))
        elif pos == second:
            letters.append(BandLetter(1, letter.upper + 1, letter.sign))
        else:
            letters.append(letter.shifted(1))
    return BandWord(word.strands + 1, tuple(letters))


def reduce_entry(entry: AnnulusEntry) -> ReducedAnnulus:
    """Markov-reduce a catalog entry's word."""
    return markov_reduce(entry.word)


# ============================================================================
# Catalog
# ============================================================================

class Catalog:
    """
    Named companion annuli: built-in entries from the settings plus a directory
    store holding one `<name>.json` document per user entry.
    """

    def __init__(self, store: Optional[Path] = None):
        self.store = catalog_dir(store)
        self._builtin: Optional[dict[str, AnnulusEntry]] = None

    @property
    def builtin(self) -> dict[str, AnnulusEntry]:
        if self._builtin is None:
            entries = {}
            for name, fields in load_settings()["catalog"]["builtin"].items():
                word = parse_band_word(f"strands: {fields['strands']}\n{fields['word']}")
                entries[name] = validate_annulus(
                    word, name, fields.get("declared_core", ""), fields.get("provenance", "")
                )
            self._builtin = entries
        return self._builtin

    def _path(self, name: str) -> Path:
        return self.store / f"{name}.json"

    def _read(self, path: Path) -> AnnulusEntry:
        try:
            document = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise StoreIOError(f"cannot read {path}: {e}") from e
        valid, errors = validate_document(document, ENTRY_SCHEMA)
        if not valid:
            raise StoreIOError(f"{path} does not match the entry schema: {'; '.join(errors)}")
        if document["name"] != path.stem:
            raise StoreIOError(f"{path} holds entry '{document['name']}'; names must match file names")
        entry = AnnulusEntry.from_document(document)
        try:
            return validate_annulus(entry.word, entry.name, entry.declared_core, entry.provenance)
        except AnnulusError as e:
            raise ValidationFailed(f"stored entry '{entry.name}' is invalid", e) from e

    def get(self, name: str) -> AnnulusEntry:
        if name in self.builtin:
            return self.builtin[name]
        if not NAME_RE.match(name):
            raise UnknownEntry(name)
        path = self._path(name)
        if not path.exists():
            raise UnknownEntry(name)
        return self._read(path)

    def list(self) -> list[str]:
        names = set(self.builtin)
        if self.store.is_dir():
            for path in sorted(self.store.glob("*.json")):
                try:
                    document = json.loads(path.read_text())
                except (OSError, json.JSONDecodeError) as e:
                    logger.warning("Skipping unreadable catalog document %s: %s", path, e)
                    continue
                if not validate_document(document, ENTRY_SCHEMA)[0]:
                    logger.warning("Skipping %s: does not match the entry schema", path)
                    continue
                if document["name"] != path.stem:
                    logger.warning("Skipping %s: holds entry '%s'", path, document["name"])
                    continue
                names.add(document["name"])
        return sorted(names)

    def add(self, entry: AnnulusEntry, overwrite: bool = False) -> AnnulusEntry:
        """Validate and store an entry; returns the validated entry."""
        if not NAME_RE.match(entry.name):
            raise ValidationFailed(f"invalid annulus name '{entry.name}'")
        if entry.name in self.builtin:
            raise ValidationFailed(f"'{entry.name}' is a built-in entry")
        try:
            validated = validate_annulus(entry.word, entry.name, entry.declared_core, entry.provenance)
        except AnnulusError as e:
            raise ValidationFailed(f"annulus '{entry.name}' rejected", e) from e

        document = validated.to_document()
        valid, errors = validate_document(document, ENTRY_SCHEMA)
        if not valid:
            raise ValidationFailed(f"entry document invalid: {'; '.join(errors)}")

        path = self._path(entry.name)
        with _STORE_LOCK:
            if path.exists() and not overwrite:
                raise ValidationFailed(f"entry '{entry.name}' already exists")
            try:
                self.store.mkdir(parents=True, exist_ok=True)
                fd, tmp_name = tempfile.mkstemp(dir=self.store, suffix=".tmp")
            except OSError as e:
                raise StoreIOError(f"cannot write {path}: {e}") from e
            try:
                with os.fdopen(fd, "w") as f:
                    json.dump(document, f, indent=2, sort_keys=True)
                os.replace(tmp_name, path)
            except BaseException as e:
                with contextlib.suppress(FileNotFoundError):
                    os.unlink(tmp_name)
                if isinstance(e, OSError):
                    raise StoreIOError(f"cannot write {path}: {e}") from e
                raise
        logger.debug("Stored annulus %s at %s", entry.name, path)
        return validated


def catalog_get(name: str, store: Optional[Path] = None) -> AnnulusEntry:
    return Catalog(store).get(name)


def catalog_list(store: Optional[Path] = None) -> list[str]:
    return Catalog(store).list()


def catalog_add(entry: AnnulusEntry, store: Optional[Path] = None, overwrite: bool = False) -> AnnulusEntry:
    return Catalog(store).add(entry, overwrite=overwrite)
