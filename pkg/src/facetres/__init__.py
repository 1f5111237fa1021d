"""Facet ideals of simplicial forests: combinatorics, Koszul-homology Betti
numbers, and the closed forms that avoid computing homology."""

from .complex import (
    SimplicialComplex,
    adjacent_faces,
    build_complex,
    components,
    diameter,
    dimension,
    distance,
    find_leafless_subcomplex,
    free_vertices,
    from_masks,
    has_intersection_property,
    irredundant_proper_chains,
    is_chain,
    is_connected,
    is_connected_codim1,
    is_face,
    is_forest,
    is_irredundant_chain,
    is_leaf,
    is_pure,
    is_quasi_forest,
    is_quasi_tree,
    is_tree,
    leaf_order,
    leaves,
    link,
    star,
    universal_set,
)
from .errors import *  # noqa: F401,F403
from .fileformat import parse_complex, read_complex, serialize_complex
from .forest import (
    Bouquet,
    attach_facet_linear,
    bouquet_cycle,
    classify_linear_tree,
    distance_property_check,
    enumerate_bouquets,
    find_main_order,
    has_alternating_sum_property,
    linear_strand_betti,
    linear_tree_total_betti,
    max_bouquet_family,
    pd_1dim,
    pick_stems,
    recursive_betti,
    reg_1dim,
    second_betti_formula,
    strand_sums,
    structural_counts,
    valid_bouquet_family,
    valid_with_stems,
)
from .generate import generate
from .ideal import (
    SqfIdeal,
    colon_by,
    facet_ideal,
    find_linear_quotient_order,
    ideal,
    is_linear_quotient_order,
    minimalize,
    quotient_complex,
)
from .koszul import (
    BettiTable,
    KoszulChain,
    betti_number,
    betti_table,
    class_product_nonzero,
    homology_dims,
    is_boundary,
    is_cycle,
    is_linear_resolution,
    koszul_differential,
    lcm_lattice,
    make_chain,
    monomial_cycle,
    monomial_cycle_basis,
    monomial_cycle_report,
    reg_pd,
    verify_linear_generation,
    wedge,
)
from .linalg import GF, QQ, FieldSpec

__version__ = "0.1.0"
