"""
Unit tests for annulus validation, Markov reduction, cutting and the catalog.
"""

import json

import jsonschema
import pytest

from conftest import CUT_INPUT, CUT_OUTPUT, TREFOIL_ANNULUS, word
from sqpbraid import (
    AnnulusEntry,
    Catalog,
    ReducedAnnulus,
    band_word,
    catalog_add,
    catalog_get,
    catalog_list,
    cut_annulus,
    framing,
    is_strongly_quasipositive,
    markov_reduce,
    stabilize,
    surface_stats,
    validate_annulus,
)
from sqpbraid.errors import (
    IsolatedStrand,
    NonZeroFraming,
    NotAnAnnulus,
    NotSQP,
    PreconditionViolated,
    StoreIOError,
    UnknownEntry,
    ValidationFailed,
)


def rotations(letters: str) -> set[str]:
    tokens = letters.split()
    return {" ".join(tokens[k:] + tokens[:k]) for k in range(len(tokens))}


def letters_of(w) -> str:
    return " ".join(letter.render() for letter in w.letters)


class TestValidateAnnulus:
    """Tests for the zero-framed SQP annulus conditions."""

    def test_trefoil_annulus_is_valid(self, trefoil_annulus):
        entry = validate_annulus(trefoil_annulus, "trefoil_T23", "T(2,3)")
        assert entry.name == "trefoil_T23"
        assert entry.strands == 6
        assert entry.core_alexander == "1 - t + t^2"

    def test_hopf_band_framing(self, hopf_band):
        with pytest.raises(NonZeroFraming) as excinfo:
            validate_annulus(hopf_band)
        assert excinfo.value.framing == -1
        assert excinfo.value.exit_code == 5

    def test_disc(self):
        with pytest.raises(NotAnAnnulus):
            validate_annulus(band_word(2, [(1, 2)]))

    def test_disconnected(self):
        with pytest.raises(NotAnAnnulus):
            validate_annulus(band_word(4, [(1, 2), (1, 2), (3, 4)]))

    def test_negative_letter(self, figure_eight):
        with pytest.raises(NotSQP, match=r"\[2, 4\]"):
            validate_annulus(figure_eight)

    def test_document_shape(self, trefoil_annulus, entry_schema):
        document = validate_annulus(trefoil_annulus, "trefoil_T23", "T(2,3)", "fence drawing").to_document()
        jsonschema.validate(document, entry_schema)
        assert document["word"] == TREFOIL_ANNULUS
        assert AnnulusEntry.from_document(document).word == trefoil_annulus


class TestMarkovReduce:
    """Tests for destabilization to valence-2 form."""

    def test_already_reduced(self, trefoil_annulus):
        reduced = markov_reduce(trefoil_annulus)
        assert reduced.word == trefoil_annulus
        assert reduced.removed == 0

    def test_one_stabilization(self, trefoil_annulus):
        extended = word(7, TREFOIL_ANNULUS + " a(6,7)")
        reduced = markov_reduce(extended)
        assert reduced.word == trefoil_annulus
        assert reduced.removed == 1

    def test_two_stabilizations(self, trefoil_annulus):
        extended = word(8, TREFOIL_ANNULUS + " a(6,7) a(7,8)")
        assert markov_reduce(extended).word == trefoil_annulus

    def test_leaf_in_the_middle(self, trefoil_annulus):
        stabilized = stabilize(trefoil_annulus, strand=3, partner=5, position=2)
        assert stabilized.strands == 7
        assert markov_reduce(stabilized).word == trefoil_annulus

    def test_isolated_strand(self, trefoil_annulus):
        with pytest.raises(IsolatedStrand) as excinfo:
            markov_reduce(word(7, TREFOIL_ANNULUS))
        assert excinfo.value.strand == 7

    def test_not_an_annulus(self, trefoil):
        with pytest.raises(NotAnAnnulus):
            markov_reduce(trefoil)

    def test_preserves_framing(self, trefoil_annulus):
        stabilized = stabilize(stabilize(trefoil_annulus, 1, 4, 7), 8, 2, 1)
        reduced = markov_reduce(stabilized).word
        assert len(reduced.letters) == reduced.strands
        assert framing(reduced) == framing(stabilized) == 0


class TestStabilize:
    """Tests for the inverse Markov move."""

    def test_new_strand_at_end(self, trefoil_annulus):
        stabilized = stabilize(trefoil_annulus, strand=7, partner=6, position=7)
        assert stabilized == word(7, TREFOIL_ANNULUS + " a(6,7)")

    def test_out_of_range(self, trefoil_annulus):
        with pytest.raises(ValueError):
            stabilize(trefoil_annulus, strand=9, partner=1, position=1)
        with pytest.raises(ValueError):
            stabilize(trefoil_annulus, strand=1, partner=7, position=1)
        with pytest.raises(ValueError):
            stabilize(trefoil_annulus, strand=1, partner=1, position=9)


class TestCutAnnulus:
    """Tests for the cut-open disc word."""

    def test_rotated_input(self):
        cut = cut_annulus(ReducedAnnulus(word(6, CUT_INPUT)))
        assert letters_of(cut) == "a(2,5) a(3,6) a(5,7) a(4,6) a(1,4) a(3,7)"
        assert letters_of(cut) in rotations(CUT_OUTPUT)

    def test_trefoil_annulus(self, trefoil_annulus):
        cut = cut_annulus(markov_reduce(trefoil_annulus))
        assert letters_of(cut) == CUT_OUTPUT

    def test_result_is_a_disc(self, trefoil_annulus):
        cut = cut_annulus(markov_reduce(trefoil_annulus))
        stats = surface_stats(cut)
        assert cut.strands == 7
        assert len(cut) == 6
        assert stats.connected
        assert stats.b1 == 0
        assert is_strongly_quasipositive(cut)

    def test_unreduced_input(self, trefoil_annulus):
        with pytest.raises(PreconditionViolated):
            cut_annulus(ReducedAnnulus(word(7, TREFOIL_ANNULUS + " a(6,7)")))

    def test_wrong_valence(self, trefoil):
        with pytest.raises(PreconditionViolated):
            cut_annulus(ReducedAnnulus(trefoil))

    def test_two_strand_annulus(self):
        cut = cut_annulus(ReducedAnnulus(band_word(2, [(1, 2), (1, 2)])))
        assert letters_of(cut) == "a(2,3) a(1,3)"


class TestCatalog:
    """Tests for the built-in and stored catalog entries."""

    def test_builtin_entry(self, store, trefoil_annulus):
        entry = catalog_get("trefoil_T23")
        assert entry.word == trefoil_annulus
        assert entry.declared_core == "T(2,3)"

    def test_fresh_store_lists_builtin(self, store):
        assert catalog_list() == ["trefoil_T23"]

    def test_unknown_entry(self, store):
        with pytest.raises(UnknownEntry) as excinfo:
            catalog_get("whitehead_double")
        assert excinfo.value.exit_code == 3

    def test_reject_nonzero_framing(self, store, hopf_band):
        with pytest.raises(ValidationFailed) as excinfo:
            catalog_add(AnnulusEntry(name="hopf", word=hopf_band))
        assert isinstance(excinfo.value.cause, NonZeroFraming)
        assert not store.exists() or not any(store.iterdir())

    def test_add_and_get(self, store, trefoil_annulus, entry_schema):
        stabilized = stabilize(trefoil_annulus, 7, 6, 7)
        stored = catalog_add(AnnulusEntry(name="trefoil_long", word=stabilized, declared_core="T(2,3)"))
        assert stored.core_alexander == "1 - t + t^2"
        assert catalog_list() == ["trefoil_T23", "trefoil_long"]
        assert catalog_get("trefoil_long").word == stabilized
        jsonschema.validate(json.loads((store / "trefoil_long.json").read_text()), entry_schema)

    def test_no_silent_overwrite(self, store, trefoil_annulus):
        entry = AnnulusEntry(name="copy", word=trefoil_annulus)
        catalog_add(entry)
        with pytest.raises(ValidationFailed, match="already exists"):
            catalog_add(entry)
        assert catalog_add(entry, overwrite=True).name == "copy"

    def test_builtin_is_protected(self, store, trefoil_annulus):
        with pytest.raises(ValidationFailed, match="built-in"):
            catalog_add(AnnulusEntry(name="trefoil_T23", word=trefoil_annulus), overwrite=True)

    def test_bad_name(self, store, trefoil_annulus):
        with pytest.raises(ValidationFailed, match="invalid annulus name"):
            catalog_add(AnnulusEntry(name="../escape", word=trefoil_annulus))

    def test_corrupt_document(self, store):
        store.mkdir(parents=True)
        (store / "broken.json").write_text("{not json")
        assert catalog_list() == ["trefoil_T23"]
        with pytest.raises(StoreIOError):
            catalog_get("broken")

    def test_explicit_store_path(self, tmp_path, trefoil_annulus):
        catalog = Catalog(tmp_path / "elsewhere")
        catalog.add(AnnulusEntry(name="local", word=trefoil_annulus))
        assert (tmp_path / "elsewhere" / "local.json").exists()
        assert "local" in catalog.list()

    @pytest.mark.parametrize("failure,expected", [
        (OSError("disk full"), StoreIOError),
        (TypeError("not serializable"), TypeError),
    ])
    def test_failed_write_leaves_no_temp_file(self, store, trefoil_annulus, monkeypatch, failure, expected):
        def broken_dump(*args, **kwargs):
            raise failure

        monkeypatch.setattr("sqpbraid.annulus.json.dump", broken_dump)
        with pytest.raises(expected):
            catalog_add(AnnulusEntry(name="copy", word=trefoil_annulus))
        assert list(store.iterdir()) == []

    def test_document_name_must_match_file_name(self, store, trefoil_annulus):
        catalog_add(AnnulusEntry(name="other", word=trefoil_annulus))
        (store / "other.json").rename(store / "renamed.json")
        assert catalog_list() == ["trefoil_T23"]
        with pytest.raises(StoreIOError, match="names must match"):
            catalog_get("renamed")
        with pytest.raises(UnknownEntry):
            catalog_get("other")
