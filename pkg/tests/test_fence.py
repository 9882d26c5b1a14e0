"""
Unit tests for fence surfaces, cycle bases and Seifert matrices.
"""

import pytest

from conftest import word
from sqpbraid import (
    BandWord,
    antisymmetry_defect,
    band_word,
    cycle_basis,
    framing,
    seifert_form,
    seifert_graph,
    stabilize,
    surface_stats,
)
from sqpbraid.errors import DisconnectedSurface, NotAnAnnulus
from sqpbraid.fence import BandTraversal, BasisCycle, disk_segments, spanning_tree


class TestSeifertGraph:
    """Tests for the Seifert multigraph and surface counts."""

    def test_valences_of_reduced_annulus(self, trefoil_annulus):
        graph = seifert_graph(trefoil_annulus)
        assert graph.edge_count == 6
        assert set(graph.valences().values()) == {2}
        assert graph.component_count() == 1

    def test_trefoil_annulus_stats(self, trefoil_annulus):
        stats = surface_stats(trefoil_annulus)
        assert stats.euler == 0
        assert stats.b1 == 1
        assert stats.boundary_components == 2
        assert stats.genus_if_connected == 0

    def test_trefoil_stats(self, trefoil):
        stats = surface_stats(trefoil)
        assert stats.b1 == 2
        assert stats.genus_if_connected == 1

    def test_disconnected_surface(self):
        stats = surface_stats(band_word(3, [(1, 2)]))
        assert stats.surface_components == 2
        assert not stats.connected
        assert stats.genus_if_connected is None

    def test_disc(self):
        stats = surface_stats(band_word(2, [(1, 2)]))
        assert stats.b1 == 0
        assert stats.genus_if_connected == 0


class TestCycleBasis:
    """Tests for the spanning tree and chord cycles."""

    def test_closing_letters_are_chords(self):
        w = band_word(3, [(1, 2), (2, 3), (1, 3), (1, 2)])
        assert spanning_tree(w) == frozenset({1, 2})

    def test_tree_is_first_seen(self, replacement_input):
        assert spanning_tree(replacement_input) == frozenset({1, 2})

    def test_trefoil_cycles(self, trefoil):
        basis = cycle_basis(trefoil)
        assert basis.chords == (2, 3)
        assert [cycle.render() for cycle in basis.cycles] == ["+2 -1", "+3 -1"]

    def test_long_tree_path(self, trefoil_annulus):
        basis = cycle_basis(trefoil_annulus)
        assert basis.chords == (6,)
        cycle = basis.cycles[0]
        assert cycle.traversals[0] == BandTraversal(6, 1)
        assert sorted(cycle.letters()) == [1, 2, 3, 4, 5, 6]

    def test_disc_has_empty_basis(self):
        assert len(cycle_basis(band_word(2, [(1, 2)]))) == 0

    def test_disconnected_raises(self):
        with pytest.raises(DisconnectedSurface):
            cycle_basis(band_word(3, [(1, 2)]))

    def test_segments_follow_the_cycle(self, trefoil):
        cycle = cycle_basis(trefoil).cycles[0]
        segments = disk_segments(trefoil, cycle)
        assert [(s.strand, s.start_letter, s.end_letter) for s in segments] == [(2, 2, 1), (1, 1, 2)]

    def test_open_cycle_rejected(self, hopf_band):
        with pytest.raises(ValueError, match="not closed"):
            disk_segments(hopf_band, BasisCycle(1, (BandTraversal(1, 1),)))


class TestSeifertMatrix:
    """Calibration values of the Seifert pairing."""

    def test_hopf_band(self, hopf_band):
        assert seifert_form(hopf_band).as_lists() == [[-1]]

    def test_negative_hopf_band(self, hopf_band):
        assert seifert_form(hopf_band.mirror()).as_lists() == [[1]]

    def test_trefoil(self, trefoil):
        assert seifert_form(trefoil).as_lists() == [[-1, -1], [0, -1]]

    def test_figure_eight(self, figure_eight):
        assert seifert_form(figure_eight).as_lists() == [[-1, 1], [0, 1]]

    def test_replacement_input(self, replacement_input):
        assert seifert_form(replacement_input).as_lists() == [[0, 0], [1, 0]]

    def test_trefoil_annulus(self, trefoil_annulus):
        assert seifert_form(trefoil_annulus).as_lists() == [[0]]

    def test_empty_word(self):
        V = seifert_form(BandWord(1))
        assert V.size == 0
        assert V.as_lists() == []

    def test_antisymmetry_defect_is_intersection_form(self, trefoil, figure_eight):
        assert antisymmetry_defect(seifert_form(trefoil)) == [[0, -1], [1, 0]]
        assert antisymmetry_defect(seifert_form(figure_eight)) == [[0, 1], [-1, 0]]

    def test_stabilization_keeps_entries(self, trefoil):
        stabilized = stabilize(trefoil, strand=1, partner=1, position=1)
        assert stabilized == word(3, "a(1,2) a(2,3) a(2,3) a(2,3)")
        assert seifert_form(stabilized).as_lists() == seifert_form(trefoil).as_lists()

    def test_to_dict(self, trefoil):
        document = seifert_form(trefoil).to_dict()
        assert document["entries"] == [[-1, -1], [0, -1]]
        assert document["basis"] == [{"chord": 2, "path": "+2 -1"}, {"chord": 3, "path": "+3 -1"}]


class TestFraming:
    """Tests for annulus framing."""

    def test_zero_framed_annulus(self, trefoil_annulus):
        assert framing(trefoil_annulus) == 0

    def test_hopf_band_framing(self, hopf_band):
        assert framing(hopf_band) == -1

    def test_disc_is_not_an_annulus(self):
        with pytest.raises(NotAnAnnulus):
            framing(band_word(2, [(1, 2)]))

    def test_genus_one_is_not_an_annulus(self, trefoil):
        with pytest.raises(NotAnAnnulus):
            framing(trefoil)
