"""
Sparse operator values, bases and the operator cache.
"""
import io

import numpy as np
import pytest
import scipy.io

from abacus.core.errors import BudgetExceeded, ShapeMismatch
from abacus.services.cache import cache_stats, cached_operator, clear_caches, key_tuple
from abacus.services.operators.sparse import (
    BasisDescriptor,
    SparseComplexOperator,
    anticommutator,
    commutator,
    ensure_nnz_budget,
    export_matrix_market,
    identity_on,
    kron_chain,
    max_abs,
)


def test_on_rejects_wrong_shape():
    with pytest.raises(ShapeMismatch):
        SparseComplexOperator.on(np.eye(3), BasisDescriptor.qubits(1))


def test_adjoint_swaps_bases():
    op = SparseComplexOperator.on(
        np.ones((2, 3)), BasisDescriptor.sym(1), BasisDescriptor.sym(2)
    )
    assert op.H.shape == (3, 2)
    assert op.H.row_basis == BasisDescriptor.sym(2)
    assert op.H.col_basis == BasisDescriptor.sym(1)


def test_algebra_on_operators():
    basis = BasisDescriptor.qubits(1)
    x = SparseComplexOperator.on([[0, 1], [1, 0]], basis)
    z = SparseComplexOperator.on([[1, 0], [0, -1]], basis)

    assert max_abs(anticommutator(x, z)) == 0.0
    assert np.allclose(commutator(x, z).toarray(), [[0, -2], [2, 0]])
    assert np.allclose((x @ x).toarray(), np.eye(2))
    assert np.allclose((x * 2j / 2).toarray(), [[0, 1j], [1j, 0]])
    assert np.allclose(x @ np.array([1, 0]), [0, 1])


def test_add_rejects_shape_mismatch():
    a = identity_on(BasisDescriptor.qubits(1))
    b = identity_on(BasisDescriptor.qubits(2))
    with pytest.raises(ShapeMismatch):
        a + b


def test_kron_chain_puts_last_factor_rightmost():
    a = np.array([[0, 1], [0, 0]])
    eye = np.eye(2)
    out = kron_chain([a, eye]).toarray()
    assert np.allclose(out, np.kron(a, eye))
    assert kron_chain([]).shape == (1, 1)


@pytest.mark.parametrize(
    "basis, index, label",
    [
        (BasisDescriptor.qubits(3), 5, "101"),
        (BasisDescriptor.occupation(2, 3), 6, "|1,2>"),
        (BasisDescriptor.sym(3), 1, "e~{2,1}"),
        (BasisDescriptor.sym(2, "e"), 2, "e{0,2}"),
        (BasisDescriptor.tensor(0), 0, "vac"),
    ],
)
def test_basis_labels(basis, index, label):
    assert basis.label(index) == label


def test_empty_grade_descriptor():
    assert BasisDescriptor.sym(-1).dim == 0


def test_nnz_budget(override_settings):
    override_settings(NNZ_BUDGET=10)
    ensure_nnz_budget(10, "fits")
    with pytest.raises(BudgetExceeded):
        ensure_nnz_budget(11, "too big")


def test_matrix_market_export_round_trip():
    op = SparseComplexOperator.on([[0, 1j], [2, 0]], BasisDescriptor.qubits(1))
    buf = io.BytesIO()
    export_matrix_market(op, buf, "sample")
    text = buf.getvalue().decode()
    assert "complex" in text
    assert "operator: sample" in text
    buf.seek(0)
    back = scipy.io.mmread(buf)
    assert np.allclose(back.toarray(), op.toarray())


def test_cached_operator_counts_hits_and_misses():
    calls = []

    @cached_operator(namespace="test-square", key_builder=lambda n: key_tuple("sq", n))
    def square(n):
        calls.append(n)
        return n * n

    assert square(3) == 9
    assert square(3) == 9
    assert calls == [3]
    stats = cache_stats()["test-square"]
    assert stats["hits"] == 1
    assert stats["misses"] == 1
    assert stats["size"] == 1

    clear_caches()
    assert square(3) == 9
    assert calls == [3, 3]
