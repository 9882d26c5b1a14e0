"""
sqpbraid

Band-generator braid words, their canonical Seifert surfaces and invariants,
and the replacement of negative bands by cut-open zero-framed annuli that makes
any word strongly quasipositive without changing its Seifert form.
"""

from pathlib import Path
from typing import Optional

from .annulus import (
    AnnulusEntry,
    Catalog,
    ReducedAnnulus,
    catalog_add,
    catalog_get,
    catalog_list,
    cut_annulus,
    markov_reduce,
    stabilize,
    validate_annulus,
)
from .band_words import (
    ArtinLetter,
    ArtinWord,
    BandLetter,
    BandWord,
    ClosureSummary,
    artin_expand,
    band_word,
    closure_permutation,
    closure_summary,
    is_strongly_quasipositive,
    negative_positions,
    parse_band_word,
    render_band_word,
)
from .errors import SqpBraidError
from .fence import (
    CycleBasis,
    SeifertMatrix,
    SurfaceStats,
    antisymmetry_defect,
    cycle_basis,
    framing,
    seifert_form,
    seifert_graph,
    seifert_matrix,
    surface_stats,
)
from .invariants import (
    LaurentPoly,
    LinkingMatrix,
    alexander_cross_check,
    alexander_from_burau,
    alexander_from_seifert,
    burau_reduced,
    component_alexander,
    extract_component,
    link_determinant,
    linking_matrix,
    normalize,
    signature,
)
from .transform import (
    PreservationReport,
    ReplacementStep,
    TransformCertificate,
    map_basis,
    replace_one,
    rudolph_transform,
    satellite_trace,
    strand_map,
    verify_preservation,
)

__version__ = "1.0.0"


def resolve_companions(names: list[str], store: Optional[Path] = None) -> list[AnnulusEntry]:
    """Look up companion annuli by catalog name, in the given order."""
    catalog = Catalog(store)
    return [catalog.get(name) for name in names]


__all__ = [
    "AnnulusEntry",
    "ArtinLetter",
    "ArtinWord",
    "BandLetter",
    "BandWord",
    "Catalog",
    "ClosureSummary",
    "CycleBasis",
    "LaurentPoly",
    "LinkingMatrix",
    "PreservationReport",
    "ReducedAnnulus",
    "ReplacementStep",
    "SeifertMatrix",
    "SqpBraidError",
    "SurfaceStats",
    "TransformCertificate",
    "alexander_cross_check",
    "alexander_from_burau",
    "alexander_from_seifert",
    "antisymmetry_defect",
    "artin_expand",
    "band_word",
    "burau_reduced",
    "catalog_add",
    "catalog_get",
    "catalog_list",
    "closure_permutation",
    "closure_summary",
    "component_alexander",
    "cut_annulus",
    "cycle_basis",
    "extract_component",
    "framing",
    "is_strongly_quasipositive",
    "link_determinant",
    "linking_matrix",
    "map_basis",
    "markov_reduce",
    "negative_positions",
    "normalize",
    "parse_band_word",
    "render_band_word",
    "replace_one",
    "resolve_companions",
    "rudolph_transform",
    "satellite_trace",
    "seifert_form",
    "seifert_graph",
    "seifert_matrix",
    "signature",
    "stabilize",
    "strand_map",
    "surface_stats",
    "validate_annulus",
    "verify_preservation",
]
