import pytest
from hypothesis import given, settings, strategies as st

from meshct import golden
from meshct.matrices import (LabeledIntMatrix, NonzeroDiagonal, NotGammaAction,
                             OrbitPartitionSpec, cartan_identity_suite, fold_matrix,
                             fz_mutate, is_admissible, is_gamma_action, is_skew_symmetrizable,
                             uw_factors)

L10 = ["0_1", "1_1", "2_1", "3_1", "4_1", "0_2", "1_2", "2_2", "3_2", "4_2"]
PART10 = OrbitPartitionSpec([["0_1"], ["1_1", "2_1"], ["3_1", "4_1"],
                             ["0_2"], ["1_2", "2_2"], ["3_2", "4_2"]])


@pytest.fixture(scope="module")
def Bt():
    return golden.fixture_matrix("b3_B_tilde_principal.csv")


@pytest.fixture(scope="module")
def Bo():
    return golden.fixture_matrix("b3_B_principal.csv")


def zero_diag_matrices(max_n=8):
    def build(n):
        return st.lists(st.integers(-5, 5), min_size=n * n, max_size=n * n).map(
            lambda xs: [[0 if i == j else xs[i * n + j] for j in range(n)] for i in range(n)])
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(build(n), st.integers(0, n - 1)))


def test_fixture_labels(Bt, Bo):
    assert Bt.row_labels == L10
    assert Bo.row_labels == ["0_1", "{1,2}_1", "{3,4}_1", "0_2", "{1,2}_2", "{3,4}_2"]


def test_gamma_action(Bt):
    assert is_gamma_action(Bt, PART10)
    I = LabeledIntMatrix.identity(["a", "b"])
    assert is_gamma_action(I, OrbitPartitionSpec([["a", "b"]]))
    bad = LabeledIntMatrix.square(["a", "b"], [[0, 1], [0, 0]])
    assert not is_gamma_action(bad, OrbitPartitionSpec([["a", "b"]]))


def test_fold(Bt, Bo):
    F = fold_matrix(Bt, PART10)
    assert F == Bo
    assert F["{1,2}_1", "0_1"] == 2
    assert F["{1,2}_1", "0_2"] == -2
    assert fold_matrix(Bt, OrbitPartitionSpec.trivial(L10)) == Bt
    bad = LabeledIntMatrix.square(["a", "b"], [[0, 1], [0, 0]])
    with pytest.raises(NotGammaAction):
        fold_matrix(bad, OrbitPartitionSpec([["a", "b"]]))


def test_fold_is_multiplicative(Bt):
    C = Bt @ Bt
    assert fold_matrix(C, PART10) == fold_matrix(Bt, PART10) @ fold_matrix(Bt, PART10)
    S = Bt + Bt.transpose()
    assert fold_matrix(S, PART10) == fold_matrix(Bt, PART10) + fold_matrix(Bt.transpose(), PART10)


def test_fold_relabeling_invariance(Bt):
    # relabel by γ̂ simultaneously: the fold is unchanged
    perm = [PART10.gamma(l) for l in L10]
    idx = [L10.index(p) for p in perm]
    entries = [[Bt.entries[i][j] for j in idx] for i in idx]
    moved = LabeledIntMatrix.square(L10, entries)
    assert fold_matrix(moved, PART10) == fold_matrix(Bt, PART10)


def test_mutation_at_orbit(Bo):
    mu = fz_mutate(Bo, "{1,2}_1")
    assert mu.entries[0] == [0, 1, -1, -1, 0, 0]
    assert mu == golden.fixture_matrix("b3_mu2_B_principal.csv")
    assert fz_mutate(mu, "{1,2}_1") == Bo
    assert fz_mutate(Bo, 1) == mu


def test_zero_matrix_mutation():
    Z = LabeledIntMatrix.square(["a", "b"], [[0, 0], [0, 0]])
    assert fz_mutate(Z, "a") == Z


def test_nonzero_diagonal():
    A = LabeledIntMatrix.square(["a", "b"], [[1, 0], [0, 0]])
    with pytest.raises(NonzeroDiagonal):
        fz_mutate(A, "a")
    with pytest.raises(NonzeroDiagonal):
        uw_factors(A, "a")


def test_uw_for_fixture(Bo):
    U, W = uw_factors(Bo, "{1,2}_1")
    assert U.entries[1] == [0, -1, 1, 2, 0, 0]
    assert [row[1] for row in W.entries] == [0, -1, 1, 1, 0, 0]
    assert U == golden.fixture_matrix("b3_U.csv")
    assert W == golden.fixture_matrix("b3_W.csv")
    I = LabeledIntMatrix.identity(Bo.row_labels)
    assert U @ U == I and W @ W == I
    assert W @ Bo @ U == fz_mutate(Bo, "{1,2}_1")


def test_u_is_w_transpose_for_skew_symmetric(Bt):
    for k in L10:
        U, W = uw_factors(Bt, k)
        assert U == W.transpose()


@settings(max_examples=1000, deadline=None)
@given(zero_diag_matrices())
def test_fz_involution_and_wau(data):
    a, k = data
    A = LabeledIntMatrix.square([f"x{i}" for i in range(len(a))], a)
    mu = fz_mutate(A, k)
    assert fz_mutate(mu, k) == A
    U, W = uw_factors(A, k)
    assert W @ A @ U == mu
    I = LabeledIntMatrix.identity(A.row_labels)
    assert U @ U == I and W @ W == I


def test_admissibility(Bt):
    assert is_admissible(Bt, PART10)
    S = LabeledIntMatrix.square(["a", "b"], [[0, 2], [-2, 0]])
    assert is_admissible(S, OrbitPartitionSpec.trivial(["a", "b"]))
    M = LabeledIntMatrix(["r"], ["a", "b"], [[1, -1]])
    assert not is_admissible(M, OrbitPartitionSpec([["r"], ["a", "b"]]))


def test_skew_symmetrizer(Bo):
    D = is_skew_symmetrizable(Bo)
    assert D == [2, 1, 1, 2, 1, 1]
    n = len(D)
    DB = [[D[i] * Bo.entries[i][j] for j in range(n)] for i in range(n)]
    assert all(DB[i][j] == -DB[j][i] for i in range(n) for j in range(n))
    S = LabeledIntMatrix.square(["a", "b"], [[0, 1], [-1, 0]])
    assert is_skew_symmetrizable(S) == [1, 1]
    assert is_skew_symmetrizable(LabeledIntMatrix.square(["a", "b"], [[0, 1], [1, 0]])) is None


def test_csv_and_json_roundtrip(Bo):
    assert LabeledIntMatrix.from_csv(Bo.to_csv()) == Bo
    assert LabeledIntMatrix.from_json(Bo.to_json()) == Bo
    assert Bo.to_csv() == golden.fixture_text("b3_B_principal.csv")


def test_identity_suite_gating():
    # a 2-cycle whose unfolded matrix is not admissible: gated identities are skipped
    labels = ["p", "a", "b"]
    C = LabeledIntMatrix.identity(labels)
    B = LabeledIntMatrix.square(labels, [[0, 1, -1], [-1, 0, 0], [1, 0, 0]])
    part = OrbitPartitionSpec([["p"], ["a", "b"]])
    mutated = {"direction": "a", "C_tilde": C, "B_tilde": B, "partition": part,
               "nonprojective": ["a", "b"]}
    res = cartan_identity_suite(C, C, B, part, ["a", "b"], mutated)
    status = {r.name: r.status for r in res}
    assert status["G* = U G W"] == "skipped"
    assert status["B°* = mu(B°)"] == "skipped"
    assert status["R~ = C~^-t"] == "pass"
