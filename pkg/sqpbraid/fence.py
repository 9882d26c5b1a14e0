"""
Fence Surfaces

The canonical Seifert surface of a band word: one disk per strand, one
half-twisted band per letter stacked by letter order. This module builds the
Seifert multigraph, the Euler/Betti counts, a deterministic cycle basis and the
integer Seifert matrix of push-off linking numbers.

Seifert pairing (lane model). Disks are seen edge-on as the vertical strands,
each with positive normal pointing right. Bands run in front of the strands they
skip. Each basis curve is drawn on its own lane; the push-off c+ runs next to c
on the positive side, and on a band it sits above c at the lower endpoint, so
after the half twist it sits below c at the upper endpoint. Crossings between c_a+
and c_b in the diagram are

  * one per shared band traversal, inside the half twist, with sign
    -sign(letter) * d_a * d_b;
  * a band of c_a+ passing over a disk lane of c_b on a strand s with
    lower < s <= upper, sign d * e;
  * a band of c_b passing over a disk lane of c_a+ on a strand s with
    lower <= s < upper, sign d * e;

where d is +1 when the band is traversed from lower to upper strand and e is +1
when the disk lane runs upwards. lk(c_a+, c_b) is half the signed sum.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Optional

import networkx as nx
from networkx.utils import UnionFind

from .band_words import BandWord, closure_summary
from .errors import DisconnectedSurface, NotAnAnnulus


@dataclass(frozen=True)
class SeifertGraph:
    """One vertex per strand, one signed edge per letter keyed by its height."""
    strands: int
    graph: nx.MultiGraph

    @property
    def edge_count(self) -> int:
        return self.graph.number_of_edges()

    def valence(self, strand: int) -> int:
        return self.graph.degree(strand)

    def valences(self) -> dict[int, int]:
        return {strand: self.graph.degree(strand) for strand in range(1, self.strands + 1)}

    def component_count(self) -> int:
        return nx.number_connected_components(self.graph)


@dataclass(frozen=True)
class SurfaceStats:
    """Euler characteristic, Betti number and boundary count of the fence surface."""
    b1: int
    surface_components: int
    euler: int
    boundary_components: int
    genus_if_connected: Optional[int]

    @property
    def connected(self) -> bool:
        return self.surface_components == 1


@dataclass(frozen=True)
class BandTraversal:
    """A basis curve crossing band `letter`; direction +1 runs lower -> upper."""
    letter: int
    direction: int

    def render(self) -> str:
        return f"{'+' if self.direction == 1 else '-'}{self.letter}"


@dataclass(frozen=True)
class DiskSegment:
    """Part of a basis curve on one disk, between two band attachments."""
    strand: int
    start_letter: int
    end_letter: int

    @property
    def direction(self) -> int:
        if self.end_letter == self.start_letter:
            return 0
        return 1 if self.end_letter > self.start_letter else -1


@dataclass(frozen=True)
class BasisCycle:
    """Closed curve on the fence surface, stored as its band traversals."""
    chord: int
    traversals: tuple[BandTraversal, ...]

    def letters(self) -> tuple[int, ...]:
        return tuple(t.letter for t in self.traversals)

    def render(self) -> str:
        return " ".join(t.render() for t in self.traversals)


@dataclass(frozen=True)
class CycleBasis:
    """Ordered basis of H1 of a connected fence surface, one cycle per chord."""
    cycles: tuple[BasisCycle, ...]
    tree: frozenset[int]

    def __len__(self) -> int:
        return len(self.cycles)

    @property
    def chords(self) -> tuple[int, ...]:
        return tuple(cycle.chord for cycle in self.cycles)

    def describe(self) -> list[dict]:
        return [{"chord": c.chord, "path": c.render()} for c in self.cycles]


@dataclass(frozen=True)
class SeifertMatrix:
    """V[a][b] = lk(c_a+, c_b) on a fixed cycle basis."""
    entries: tuple[tuple[int, ...], ...]
    basis: CycleBasis

    @property
    def size(self) -> int:
        return len(self.entries)

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def transpose(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.entries)) if self.entries else ()

    def to_dict(self) -> dict:
        return {"entries": self.as_lists(), "basis": self.basis.describe()}


# ============================================================================
# Graph and counts
# ============================================================================

def seifert_graph(word: BandWord) -> SeifertGraph:
    """Seifert multigraph of the canonical surface."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(1, word.strands + 1))
    for k, letter in enumerate(word.letters, start=1):
        graph.add_edge(letter.lower, letter.upper, key=k, height=k, sign=letter.sign)
    return SeifertGraph(word.strands, graph)


def surface_stats(word: BandWord) -> SurfaceStats:
    """Betti number, Euler characteristic, boundary count and genus."""
    components = seifert_graph(word).component_count()
    euler = word.strands - len(word.letters)
    b1 = len(word.letters) - word.strands + components
    boundary = closure_summary(word).components
    genus = None
    if components == 1:
        genus = (2 - euler - boundary) // 2
    return SurfaceStats(
        b1=b1,
        surface_components=components,
        euler=euler,
        boundary_components=boundary,
        genus_if_connected=genus,
    )


def require_connected(word: BandWord) -> None:
    components = seifert_graph(word).component_count()
    if components != 1:
        raise DisconnectedSurface(f"canonical surface has {components} components")


# ============================================================================
# Cycle basis
# ============================================================================

def spanning_tree(word: BandWord) -> frozenset[int]:
    """Tree letters chosen by union-find in word order (first seen wins)."""
    forest = UnionFind(range(1, word.strands + 1))
    tree = set()
    for k, letter in enumerate(word.letters, start=1):
        if forest[letter.lower] != forest[letter.upper]:
            forest.union(letter.lower, letter.upper)
            tree.add(k)
    return frozenset(tree)


def tree_path(word: BandWord, letters, source: int, target: int) -> tuple[BandTraversal, ...]:
    """Traversals along the unique path from source to target through `letters`."""
    tree = nx.Graph()
    tree.add_nodes_from(range(1, word.strands + 1))
    for k in letters:
        letter = word.letter(k)
        tree.add_edge(letter.lower, letter.upper, letter=k)
    nodes = nx.shortest_path(tree, source, target)
    path = []
    for u, v in zip(nodes, nodes[1:]):
        k = tree[u][v]["letter"]
        path.append(BandTraversal(k, 1 if u == word.letter(k).lower else -1))
    return tuple(path)


def cycle_basis(word: BandWord) -> CycleBasis:
    """One cycle per chord: the chord lower -> upper, then the tree path back."""
    require_connected(word)
    tree = spanning_tree(word)
    cycles = []
    for k, letter in enumerate(word.letters, start=1):
        if k in tree:
            continue
        back = tree_path(word, tree, letter.upper, letter.lower)
        cycles.append(BasisCycle(k, (BandTraversal(k, 1),) + back))
    return CycleBasis(tuple(cycles), tree)


# ============================================================================
# Seifert matrix
# ============================================================================

def _endpoints(word: BandWord, traversal: BandTraversal) -> tuple[int, int]:
    letter = word.letter(traversal.letter)
    if traversal.direction == 1:
        return letter.lower, letter.upper
    return letter.upper, letter.lower


def disk_segments(word: BandWord, cycle: BasisCycle) -> list[DiskSegment]:
    """Disk lanes of a closed cycle, one per visit to a strand."""
    segments = []
    steps = cycle.traversals
    for m, traversal in enumerate(steps):
        following = steps[(m + 1) % len(steps)]
        arrive = _endpoints(word, traversal)[1]
        depart = _endpoints(word, following)[0]
        if arrive != depart:
            raise ValueError(
                f"cycle {cycle.render()} is not closed: band {traversal.letter} "
                f"ends on strand {arrive}, band {following.letter} starts on {depart}"
            )
        segments.append(DiskSegment(arrive, traversal.letter, following.letter))
    return segments


def _pushed_height(word: BandWord, letter_index: int, strand: int) -> int:
    # push-off sits above the curve at a band's lower end, below it at the upper end
    offset = 1 if word.letter(letter_index).lower == strand else -1
    return 3 * letter_index + offset


def _pushoff_linking(word: BandWord, pushed: BasisCycle, curve: BasisCycle) -> int:
    """lk(pushed+, curve) by counting diagram crossings."""
    total = 0

    pushed_flow = Counter()
    for t in pushed.traversals:
        pushed_flow[t.letter] += t.direction
    curve_flow = Counter()
    for t in curve.traversals:
        curve_flow[t.letter] += t.direction
    for k, flow in pushed_flow.items():
        if k in curve_flow:
            total += -word.letter(k).sign * flow * curve_flow[k]

    curve_segments = disk_segments(word, curve)
    for t in pushed.traversals:
        band = word.letter(t.letter)
        for seg in curve_segments:
            if not band.lower < seg.strand <= band.upper:
                continue
            height = 3 * t.letter - (1 if seg.strand == band.upper else 0)
            lo, hi = sorted((3 * seg.start_letter, 3 * seg.end_letter))
            if lo < height < hi:
                total += t.direction * seg.direction

    pushed_segments = disk_segments(word, pushed)
    for t in curve.traversals:
        band = word.letter(t.letter)
        for seg in pushed_segments:
            if not band.lower <= seg.strand < band.upper:
                continue
            lo, hi = sorted((
                _pushed_height(word, seg.start_letter, seg.strand),
                _pushed_height(word, seg.end_letter, seg.strand),
            ))
            if lo < 3 * t.letter < hi:
                total += t.direction * seg.direction

    if total % 2:
        raise ArithmeticError(
            f"odd crossing sum {total} between cycles {pushed.chord} and {curve.chord}"
        )
    return total // 2


def seifert_matrix(word: BandWord, basis: CycleBasis) -> SeifertMatrix:
    """Integer Seifert matrix of the canonical surface on `basis`."""
    require_connected(word)
    cycles = basis.cycles
    entries = tuple(
        tuple(_pushoff_linking(word, a, b) for b in cycles)
        for a in cycles
    )
    return SeifertMatrix(entries, basis)


def seifert_form(word: BandWord) -> SeifertMatrix:
    """Seifert matrix on the word's own cycle basis."""
    return seifert_matrix(word, cycle_basis(word))


def antisymmetry_defect(matrix: SeifertMatrix) -> list[list[int]]:
    """V - V^T, the intersection form of the basis cycles."""
    size = matrix.size
    return [
        [matrix.entries[a][b] - matrix.entries[b][a] for b in range(size)]
        for a in range(size)
    ]


def framing(word: BandWord) -> int:
    """Framing of an annulus word: its single Seifert matrix entry."""
    stats = surface_stats(word)
    if stats.surface_components != 1 or stats.b1 != 1:
        raise NotAnAnnulus(
            f"expected a connected surface with b1 = 1, got "
            f"{stats.surface_components} component(s) and b1 = {stats.b1}"
        )
    return seifert_form(word).entries[0][0]
