import json

import numpy as np
import pytest

from coherekit import (
    DensityMatrix,
    InvalidChannelError,
    InvalidStateError,
    KrausChannel,
    PureState,
    SchemaError,
    apply_channel,
    channel_branches,
    conjugate_channel,
    conjugate_state,
    dephase,
    density_from_json,
    density_to_json,
    direct_sum,
    fidelity,
    imag_part,
    is_incoherent,
    kraus_from_json,
    kraus_to_json,
    random_density,
    random_diag_unitary,
    random_incoherent_channel,
    random_pure,
    real_part,
    trace_norm,
    von_neumann_entropy,
)

PLUS = np.full((2, 2), 0.5)


def test_density_accepts_plus_state():
    rho = DensityMatrix(PLUS)
    assert rho.dim == 2
    assert np.allclose(rho.data, PLUS)


def test_density_rejects_bad_trace():
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.diag([0.9, 0.3]))


def test_density_rejects_non_hermitian():
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.array([[0.5, 0.4], [0.1, 0.5]]))


def test_density_rejects_negative_eigenvalue():
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.array([[0.2, 0.45], [0.45, 0.8]]))


def test_density_rejects_nonfinite():
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_density_rejects_nonsquare():
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.ones((2, 3)) / 6.0)


def test_pure_state_normalization_and_density():
    psi = PureState(np.array([1.0, 1.0j]) / np.sqrt(2.0))
    rho = psi.to_density()
    assert rho.dim == 2
    assert abs(rho.data[0, 1] - (-0.5j)) < 1e-15


def test_pure_state_rejects_unnormalized():
    with pytest.raises(InvalidStateError):
        PureState(np.array([1.0, 1.0]))


def test_conjugation_is_entrywise():
    rho = random_density(3, None, seed=5)
    conj = conjugate_state(rho)
    assert np.array_equal(conj.data, rho.data.conj())


def test_conjugation_involution_bitwise():
    for seed in range(20):
        rho = random_density(4, None, seed=seed)
        back = conjugate_state(conjugate_state(rho))
        assert np.array_equal(back.data, rho.data)


def test_real_imag_reassembly():
    rho = random_density(3, 2, seed=11)
    re = real_part(rho)
    im = imag_part(rho)
    assert np.abs(re.data.imag).max() == 0.0
    # imaginary part is a real antisymmetric matrix, not a state
    assert np.allclose(im, -im.T)
    assert np.allclose(re.data + 1j * im, rho.data, atol=1e-15)


def test_real_part_equals_half_sum_with_conjugate():
    rho = random_density(4, None, seed=8)
    conj = conjugate_state(rho)
    half = 0.5 * rho.data + 0.5 * conj.data
    assert np.array_equal(real_part(rho).data, half)


def test_spectrum_invariant_under_conjugation():
    rho = random_density(5, 3, seed=21)
    a = np.linalg.eigvalsh(rho.data)
    b = np.linalg.eigvalsh(conjugate_state(rho).data)
    assert np.abs(a - b).max() < 1e-12
    assert abs(von_neumann_entropy(rho) - von_neumann_entropy(conjugate_state(rho))) < 1e-12


def test_dephase_zeroes_offdiagonals():
    rho = random_density(3, None, seed=2)
    diag = dephase(rho)
    off = diag.data - np.diag(np.diag(diag.data))
    assert np.abs(off).max() == 0.0
    assert np.allclose(np.diag(diag.data), np.diag(rho.data))


def test_direct_sum_block_structure():
    a = random_density(2, None, seed=3)
    b = random_density(3, None, seed=4)
    s = direct_sum(0.25, a, b)
    assert s.dim == 5
    assert np.allclose(s.data[:2, :2], 0.25 * a.data)
    assert np.allclose(s.data[2:, 2:], 0.75 * b.data)
    assert np.abs(s.data[:2, 2:]).max() == 0.0


def test_von_neumann_entropy_values():
    assert von_neumann_entropy(DensityMatrix(np.diag([1.0, 0.0]))) == 0.0
    assert abs(von_neumann_entropy(DensityMatrix(np.eye(2) / 2)) - 1.0) < 1e-12
    assert abs(von_neumann_entropy(DensityMatrix(np.eye(4) / 4)) - 2.0) < 1e-12


def test_trace_norm_of_difference():
    a = np.diag([1.0, 0.0])
    b = np.diag([0.0, 1.0])
    assert abs(trace_norm(a - b) - 2.0) < 1e-12


def test_fidelity_basic_properties():
    rho = random_density(3, None, seed=6)
    sig = random_density(3, 2, seed=7)
    assert abs(fidelity(rho, rho) - 1.0) < 1e-9
    assert abs(fidelity(rho, sig) - fidelity(sig, rho)) < 1e-8
    psi = random_pure(3, seed=9)
    phi = random_pure(3, seed=10)
    overlap = abs(np.vdot(psi.amplitudes, phi.amplitudes))
    assert abs(fidelity(psi.to_density(), phi.to_density()) - overlap) < 1e-10


def test_fidelity_on_singular_state_stays_clean():
    # rank-deficient inputs exercise the eigenvalue noise floor
    rho = random_density(4, 1, seed=13)
    f = fidelity(rho, rho)
    assert f <= 1.0
    assert 1.0 - f < 1e-12


def test_kraus_channel_requires_trace_preservation():
    k = np.array([[1.0, 0.0], [0.0, 0.5]])
    with pytest.raises(InvalidChannelError):
        KrausChannel([k], kind="channel")


def test_kraus_operation_kind_allows_subnormalized():
    k = np.array([[1.0, 0.0], [0.0, 0.5]])
    op = KrausChannel([k], kind="operation")
    assert op.kind == "operation"


def test_apply_channel_dephasing():
    z = np.diag([1.0, -1.0])
    phi = KrausChannel(
        [np.sqrt(0.5) * np.eye(2), np.sqrt(0.5) * z], kind="channel"
    )
    rho = DensityMatrix(PLUS)
    out = apply_channel(phi, rho)
    assert np.allclose(out.data, np.eye(2) / 2)


def test_channel_branches_prune_zero_probability():
    z = np.diag([1.0, -1.0])
    phi = KrausChannel([np.eye(2) * 1.0, 0.0 * z], kind="operation")
    branches = channel_branches(phi, DensityMatrix(PLUS))
    assert len(branches) == 1
    p, out = branches[0]
    assert abs(p - 1.0) < 1e-12
    assert np.allclose(out.data, PLUS)


def test_random_incoherent_channel_is_trace_preserving_and_incoherent():
    rng = np.random.default_rng(0)
    for _ in range(60):
        d = int(rng.integers(2, 5))
        branches = int(rng.integers(1, 5))
        seed = int(rng.integers(0, 2**31))
        phi = random_incoherent_channel(d, branches, seed)
        total = sum(k.conj().T @ k for k in phi.kraus)
        assert np.abs(total - np.eye(d)).max() < 1e-9
        assert is_incoherent(phi)
        rho = dephase(random_density(d, None, seed=seed ^ 1))
        out = apply_channel(phi, rho)
        off = out.data - np.diag(np.diag(out.data))
        assert np.abs(off).max() < 1e-12


def test_random_diag_unitary_preserves_moduli():
    u = random_diag_unitary(3, seed=4)
    rho = random_density(3, None, seed=4)
    out = apply_channel(u, rho)
    assert np.allclose(np.abs(out.data), np.abs(rho.data), atol=1e-14)


def test_is_incoherent_rejects_hadamard():
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    assert not is_incoherent(KrausChannel([h], kind="channel"))


def test_conjugate_channel_identity():
    # conjugating input and output undoes channel conjugation
    rho = random_density(3, None, seed=15)
    phi = random_incoherent_channel(3, 2, seed=16)
    lhs = apply_channel(conjugate_channel(phi), rho)
    rhs = conjugate_state(apply_channel(phi, conjugate_state(rho)))
    assert np.abs(lhs.data - rhs.data).max() < 1e-12


def test_density_json_roundtrip():
    rho = random_density(3, 2, seed=17)
    text = density_to_json(rho)
    back = density_from_json(text)
    assert np.allclose(back.data, rho.data, atol=1e-15)
    payload = json.loads(text)
    assert sorted(payload) == ["dim", "im", "re"]


def test_density_json_rejects_bad_schema():
    with pytest.raises(SchemaError):
        density_from_json('{"dim": 2, "re": [[1, 0], [0, 0]]}')
    with pytest.raises(SchemaError):
        density_from_json("[1, 2, 3]")
    with pytest.raises(SchemaError):
        density_from_json(
            '{"dim": 2, "re": [[1, 0], [0, "x"]], "im": [[0, 0], [0, 0]]}'
        )


def test_density_json_rejects_nan():
    with pytest.raises(SchemaError):
        density_from_json(
            '{"dim": 2, "re": [[NaN, 0], [0, 1]], "im": [[0, 0], [0, 0]]}'
        )


def test_kraus_json_roundtrip():
    phi = random_incoherent_channel(2, 2, seed=19)
    back = kraus_from_json(kraus_to_json(phi))
    assert back.kind == phi.kind
    assert len(back.kraus) == len(phi.kraus)
    for a, b in zip(back.kraus, phi.kraus):
        assert np.allclose(a, b, atol=1e-15)
