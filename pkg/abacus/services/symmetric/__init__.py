"""Symmetric powers of the qubit space and their stellar picture."""

from abacus.services.symmetric.sym_space import (
    HomogeneousPoly,
    SymBasisVector,
    SymVector,
    apply_symmetrizer,
    basis_convert,
    embed_sym,
    inner_product,
    su2_induced,
    sym_dim,
    sym_ladder,
    symmetrizer,
)

from abacus.services.symmetric.stellar import (
    StarConfiguration,
    StellarPoint,
    directional_derivative,
    poly_from_stars,
    stars_from_poly,
    tilde_ops,
)
