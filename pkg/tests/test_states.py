import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slocckit.ketparse import parse_state
from slocckit.states import (
    ArityError,
    LocalOperatorSet,
    QubitSplit,
    SingularOperatorError,
    StateVector,
    ZeroStateError,
    apply_local_operators,
    coefficient_matrix,
    det_products,
    identity_operators,
    permute_qubits,
    product_state,
    random_invertible_local_ops,
    state_from_coefficient_matrix,
    tensor_product,
)


class TestStateVector:
    def test_zero_state_rejected(self):
        with pytest.raises(ZeroStateError):
            StateVector.from_scalars([0, 0])

    def test_exactness_detection(self):
        assert StateVector.from_scalars([1, 0]).is_exact
        assert not StateVector.from_scalars([1.0, 0.0]).is_exact

    def test_amplitudes_read_only(self):
        s = StateVector.from_scalars([1, 0])
        with pytest.raises(ValueError):
            s.amplitudes[0] = 2.0

    def test_scaled_keeps_exactness(self):
        s = StateVector.from_scalars([1, 2]).scaled(3)
        assert s.is_exact and s.exact[1] == 6


class TestApplyLocalOperators:
    def test_identity(self):
        s = parse_state("|0000> + |1111>")
        out = apply_local_operators(s, identity_operators(4))
        assert np.allclose(out.amplitudes, s.amplitudes)

    def test_scalar_operator(self):
        s = parse_state("|0000> + |1111>")
        ops = LocalOperatorSet.from_matrices(
            [[[2, 0], [0, 2]]] + [[[1, 0], [0, 1]]] * 3
        )
        out = apply_local_operators(s, ops)
        assert np.allclose(out.amplitudes, 2 * s.amplitudes)
        assert out.is_exact and out.exact[0] == 2

    def test_bit_flip_on_first_qubit(self):
        s = parse_state("|00>")
        ops = LocalOperatorSet.from_matrices([[[0, 1], [1, 0]], [[1, 0], [0, 1]]])
        out = apply_local_operators(s, ops)
        assert out.amplitudes[int("10", 2)] == 1
        assert np.count_nonzero(out.amplitudes) == 1

    def test_arity_mismatch(self):
        with pytest.raises(ArityError):
            apply_local_operators(parse_state("|00>"), identity_operators(4))

    def test_singular_operator_rejected(self):
        with pytest.raises(SingularOperatorError):
            LocalOperatorSet.from_matrices([[[1, 1], [1, 1]]])

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000))
    def test_coefficient_matrix_transform_rule(self, seed):
        # C(ops psi) = Delta1 C(psi) Delta2 within 1e-10 relative error
        rng = np.random.default_rng(seed)
        amps = rng.normal(size=16) + 1j * rng.normal(size=16)
        s = StateVector(4, amps)
        ops = random_invertible_local_ops(4, seed)
        split = QubitSplit.default(4)
        lhs = coefficient_matrix(apply_local_operators(s, ops), split).data
        delta1 = np.kron(ops.ops[0], ops.ops[1])
        delta2 = np.kron(ops.ops[2], ops.ops[3]).T
        rhs = delta1 @ coefficient_matrix(s, split).data @ delta2
        assert np.linalg.norm(lhs - rhs) <= 1e-10 * np.linalg.norm(rhs)


class TestCoefficientMatrix:
    def test_basis_state(self):
        cm = coefficient_matrix(parse_state("|0000>"))
        assert cm.data[0, 0] == 1 and np.count_nonzero(cm.data) == 1

    def test_two_basis_states(self):
        cm = coefficient_matrix(parse_state("|0000> + |1111>"))
        assert cm.data[0, 0] == 1 and cm.data[3, 3] == 1
        assert np.count_nonzero(cm.data) == 2

    def test_custom_split_bookkeeping(self):
        cm = coefficient_matrix(parse_state("|0110>"), QubitSplit((1, 3), (2, 4)))
        # row bits q1 q3 = 0,1 -> 1; column bits q2 q4 = 1,0 -> 2
        assert cm.data[1, 2] == 1 and np.count_nonzero(cm.data) == 1

    def test_exact_mirror_propagates(self):
        cm = coefficient_matrix(parse_state("1/2|0000> + |1111>"))
        assert cm.exact is not None
        assert complex(cm.exact[0][0]) == 0.5

    def test_bijective_reindexing(self):
        rng = np.random.default_rng(5)
        s = StateVector(4, rng.normal(size=16) + 1j * rng.normal(size=16))
        for split in (QubitSplit.default(4), QubitSplit((2, 4), (1, 3))):
            back = state_from_coefficient_matrix(coefficient_matrix(s, split), split)
            assert np.array_equal(back.amplitudes, s.amplitudes)

    def test_invalid_split(self):
        with pytest.raises(ArityError):
            QubitSplit((1, 2), (2, 3))
        with pytest.raises(ArityError):
            coefficient_matrix(parse_state("|00>"), QubitSplit.default(4))


class TestDetProducts:
    def test_identity(self):
        g, h = det_products(identity_operators(4), QubitSplit.default(4))
        assert g == 1 and h == 1

    def test_diagonal_on_row_qubit(self):
        ops = LocalOperatorSet.from_matrices(
            [[[2, 0], [0, 1]]] + [[[1, 0], [0, 1]]] * 3
        )
        g, h = det_products(ops, QubitSplit.default(4))
        assert g == 2 and h == 1

    @given(st.integers(min_value=0, max_value=5_000))
    def test_g_times_h_is_total_determinant_product(self, seed):
        ops = random_invertible_local_ops(4, seed)
        g, h = det_products(ops, QubitSplit.default(4))
        assert g * h == pytest.approx(np.prod(ops.dets))


class TestRandomOps:
    def test_deterministic_per_seed(self):
        a = random_invertible_local_ops(4, 123)
        b = random_invertible_local_ops(4, 123)
        for x, y in zip(a.ops, b.ops):
            assert np.array_equal(x, y)

    def test_seed_changes_output(self):
        a = random_invertible_local_ops(4, 1)
        b = random_invertible_local_ops(4, 2)
        assert any(not np.array_equal(x, y) for x, y in zip(a.ops, b.ops))

    def test_determinant_floor_many_samples(self):
        for seed in range(250):
            ops = random_invertible_local_ops(4, seed)
            assert all(abs(d) >= 1e-3 for d in ops.dets)

    def test_condition_cap_respected(self):
        from slocckit.states import _cond_2x2

        for seed in range(50):
            ops = random_invertible_local_ops(4, seed, condition_cap=10.0)
            assert all(_cond_2x2(m) <= 10.0 for m in ops.ops)


class TestProductHelpers:
    def test_tensor_and_permute(self):
        epr = parse_state("|00> + |11>")
        zero2 = parse_state("|00>")
        s = product_state(4, [((1, 3), epr), ((2, 4), zero2)])
        # EPR on qubits 1 and 3: |0000> + |1010>
        assert s.amplitudes[0] == 1 and s.amplitudes[int("1010", 2)] == 1
        assert np.count_nonzero(s.amplitudes) == 2
        assert s.is_exact

    def test_permute_is_inverse_consistent(self):
        rng = np.random.default_rng(4)
        s = StateVector(4, rng.normal(size=16) + 1j * rng.normal(size=16))
        perm = [3, 1, 4, 2]
        inverse = [perm.index(q) + 1 for q in range(1, 5)]
        back = permute_qubits(permute_qubits(s, perm), inverse)
        assert np.allclose(back.amplitudes, s.amplitudes)

    def test_tensor_product_exact(self):
        a = parse_state("|0> + |1>")
        b = parse_state("|1>")
        t = tensor_product(a, b)
        assert t.num_qubits == 2
        assert t.exact[1] == 1 and t.exact[3] == 1
