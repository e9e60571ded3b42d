from abacus.services.tape.graded_tape import (
    AbacusVector,
    GradedVector,
    append_blank,
    apply_gate,
    graded_inner,
    symmetrize_tape,
)
