"""
Operator construction: sparse operator values, fermionic (CAR) ladders and truncated bosonic (CCR) ladders.
"""

from abacus.services.operators.sparse import (
    BasisDescriptor,
    SparseComplexOperator,
    anticommutator,
    commutator,
    export_matrix_market,
    identity_on,
    kron_chain,
    max_abs,
)

from abacus.services.operators.car_clifford import (
    CliffordGenerators,
    FermionLadder,
    clifford_generators,
    fermion_ladder_from_clifford,
    fermion_ladder_jordan_wigner,
    ladder_span_rank,
    verify_car,
    verify_clifford,
)

from abacus.services.operators.fock_ccr import (
    BosonLadder,
    FockCutoff,
    OccupationBasis,
    boson_ladder,
    compare_representations,
    intertwiner,
    multimode_diff_ladder,
    position_derivative_rep,
    verify_ccr,
)
