"""Feedback delay network analysis toolkit."""

from ._fdnkit import (
    Block,
    BlockDecomposition,
    BlockReport,
    FdnSystem,
    UnilosslessReport,
    adjacency,
    allpass_fdn,
    charpoly_oracle,
    cohn_is_unimodular,
    comb_filter_eval,
    conjugate_involutory,
    decompose,
    delay_matrix_eval,
    diagonal_conjugate,
    expm,
    generalized_charpoly,
    io_gain_transform,
    is_irreducible,
    is_lossless_poly,
    is_self_inversive,
    is_unilossless,
    poly_roots,
    principal_minor,
    random_unilossless,
    random_unitary,
    region_boundary,
    region_point_lossless,
    render_ir,
    rotate_feedback,
    schroeder,
    sdn_even,
    sdn_householder,
    statespace_poles,
    system_order,
    transfer_eval,
    unitary_similarity_certificate,
    zeros_poly,
)

__all__ = [
    "Block",
    "BlockDecomposition",
    "BlockReport",
    "FdnSystem",
    "UnilosslessReport",
    "adjacency",
    "allpass_fdn",
    "charpoly_oracle",
    "cohn_is_unimodular",
    "comb_filter_eval",
    "conjugate_involutory",
    "decompose",
    "delay_matrix_eval",
    "diagonal_conjugate",
    "expm",
    "generalized_charpoly",
    "io_gain_transform",
    "is_irreducible",
    "is_lossless_poly",
    "is_self_inversive",
    "is_unilossless",
    "poly_roots",
    "principal_minor",
    "random_unilossless",
    "random_unitary",
    "region_boundary",
    "region_point_lossless",
    "render_ir",
    "rotate_feedback",
    "schroeder",
    "sdn_even",
    "sdn_householder",
    "statespace_poles",
    "system_order",
    "transfer_eval",
    "unitary_similarity_certificate",
    "zeros_poly",
]

__version__ = "0.1.0"
