import json
import math

import numpy as np
import pytest

import coherekit as ck

# fixed two-mode state; the measure values below were frozen from it
G2 = ck.random_gaussian_state(2, seed=77)


def test_omega_and_conjugation_matrices():
    om = ck.omega(2)
    assert om.shape == (4, 4)
    assert np.array_equal(om, -om.T)
    assert np.array_equal(om @ om, -np.eye(4))
    o_mat = ck.conjugation_matrix(2)
    assert np.array_equal(o_mat, np.diag([1.0, -1.0, 1.0, -1.0]))
    # conjugation anticommutes with the symplectic form
    assert np.array_equal(o_mat @ om @ o_mat, -om)


def test_state_validation():
    with pytest.raises(ck.InvalidStateError):
        ck.GaussianState([0.0, 0.0], 0.5 * np.eye(2))  # uncertainty violation
    with pytest.raises(ck.InvalidStateError):
        ck.GaussianState([0.0], np.eye(2))
    with pytest.raises(ck.InvalidStateError):
        ck.GaussianState([0.0, 0.0], np.array([[1.0, 0.5], [0.0, 1.0]]))
    vac = ck.GaussianState([0.0, 0.0], np.eye(2))
    with pytest.raises(AttributeError):
        vac.mean = np.zeros(2)


def test_channel_validation():
    with pytest.raises(ck.InvalidChannelError):
        # pure attenuation with no added noise is not CP
        ck.GaussianChannel([0.0, 0.0], 0.5 * np.eye(2), np.zeros((2, 2)))
    ok = ck.GaussianChannel([0.0, 0.0], 0.5 * np.eye(2), np.eye(2))
    assert ok.modes == 1


def test_g_function_values_and_domain():
    assert ck.g_function(1.0) == 0.0
    assert abs(ck.g_function(3.0) - 2.0) < 1e-12
    x = 2.0
    expect = 1.5 * math.log2(1.5) - 0.5 * math.log2(0.5)
    assert abs(ck.g_function(x) - expect) < 1e-12
    assert ck.g_function(1.0 - 5e-9) == 0.0
    with pytest.raises(ValueError):
        ck.g_function(0.9)
    arr = ck.g_function(np.array([1.0, 3.0]))
    assert arr.shape == (2,)


def test_symplectic_eigenvalues_of_thermal_and_squeezed():
    nus = np.array([1.2, 2.5, 4.0])
    th = ck.thermal_state(nus)
    got = np.sort(ck.symplectic_eigenvalues(th.cov))
    assert np.abs(got - nus).max() < 1e-10
    # squeezing does not change the symplectic spectrum of the vacuum
    sq = ck.squeezed_state(0.7)
    got = ck.symplectic_eigenvalues(sq.cov)
    assert np.abs(got - 1.0).max() < 1e-9


def test_random_state_normal_form_certificate():
    state, m_mat = ck.random_gaussian_state_with_form(3, seed=5)
    assert ck.williamson_check(state.cov, m_mat)
    nus = ck.symplectic_eigenvalues(state.cov)
    diag = m_mat @ state.cov @ m_mat.T
    assert np.abs(np.diag(diag) - np.repeat(np.sort(nus), 2)).max() < 1e-7


def test_frozen_two_mode_values():
    nus = np.sort(ck.symplectic_eigenvalues(G2.cov))
    assert np.abs(nus - np.array([1.10704631, 4.08613279])).max() < 1e-6
    assert abs(ck.c_gr(G2) - 1.7180667466017794) < 1e-9
    rep = ck.gr_real_gap(G2)
    assert abs(rep.gap - 0.7884368206129673) < 1e-9
    assert abs(rep.thermal_bracket - 0.6512460144701526) < 1e-9
    assert abs(rep.entropy_bracket - 0.13719080614281465) < 1e-9
    assert abs(rep.gap - (rep.thermal_bracket + rep.entropy_bracket)) < 1e-15


def test_c_gr_vanishes_exactly_on_thermal_states():
    th = ck.thermal_state([1.0, 2.7])
    assert ck.c_gr(th) == 0.0
    assert ck.is_thermal(th)
    assert not ck.is_thermal(ck.coherent_state(1.0))


def test_c_gr_of_coherent_state():
    # pure displaced vacuum: reference entropy only
    alpha = 1.0 + 0.5j
    expect = ck.g_function(1.0 + 2.0 * abs(alpha) ** 2)
    assert abs(ck.c_gr(ck.coherent_state(alpha)) - expect) < 1e-12


def test_conjugation_flips_momentum():
    conj = ck.conjugate_gaussian(G2)
    o_mat = ck.conjugation_matrix(2)
    assert np.array_equal(conj.mean, o_mat @ G2.mean)
    assert ck.c_gr(conj) == ck.c_gr(G2)
    back = ck.conjugate_gaussian(conj)
    assert np.array_equal(back.mean, G2.mean)
    assert np.array_equal(back.cov, G2.cov)


def test_real_projection_fixed_points_and_gap_split():
    proj = ck.real_projection(G2)
    assert ck.is_real_gaussian(proj, tol=0.0)
    again = ck.real_projection(proj)
    assert np.array_equal(again.mean, proj.mean)
    assert np.array_equal(again.cov, proj.cov)
    # projection is the even mixture with the conjugate
    mix = ck.boxplus(0.5, G2, ck.conjugate_gaussian(G2))
    assert np.array_equal(mix.mean, proj.mean)
    assert np.array_equal(mix.cov, proj.cov)
    rep = ck.gr_real_gap(G2)
    assert rep.gap >= 0.0
    assert rep.thermal_bracket >= 0.0
    assert rep.entropy_bracket >= 0.0
    direct = ck.c_gr(G2) - ck.c_gr(proj)
    assert abs(rep.gap - direct) < 1e-9


def test_real_state_has_zero_gap_exactly():
    real = ck.real_projection(ck.random_gaussian_state(3, seed=9))
    rep = ck.gr_real_gap(real)
    assert rep.gap == 0.0
    assert rep.thermal_bracket == 0.0
    assert rep.entropy_bracket == 0.0


def test_boxplus_validation():
    with pytest.raises(ValueError):
        ck.boxplus(0.0, G2, G2)
    with pytest.raises(ValueError):
        ck.boxplus(0.5, G2, ck.coherent_state(0.0))
    probs = np.array([0.2, 0.3, 0.5])
    states = [ck.random_gaussian_state(1, seed=s) for s in range(3)]
    combo = ck.boxplus_many(probs, states)
    manual = sum(p * s.cov for p, s in zip(probs, states))
    assert np.allclose(combo.cov, manual)
    with pytest.raises(ValueError):
        ck.boxplus_many([0.5, 0.6], states[:2])


def test_coherent_gap_closed_form_and_purely_imaginary_case():
    for alpha in (0.3 + 0.4j, -1.0 + 0.2j, 0.9j):
        rep = ck.gr_real_gap(ck.coherent_state(alpha))
        assert abs(rep.gap - ck.gap_coherent_closed_form(alpha)) < 1e-9
    assert abs(ck.gr_real_gap(ck.coherent_state(1j)).gap - 2.0) < 1e-9
    assert abs(ck.gap_coherent_closed_form(1j) - 2.0) < 1e-12
    # real coherent states are fixed by the projection
    assert ck.gr_real_gap(ck.coherent_state(0.8)).gap == 0.0


def test_squeezed_gap_pipeline_matches_spectral_closed_form():
    rng = np.random.default_rng(3)
    for _ in range(25):
        zeta = rng.uniform(0.05, 1.2) * np.exp(2j * np.pi * rng.random())
        rep = ck.gr_real_gap(ck.squeezed_state(zeta))
        assert abs(rep.gap - ck.gap_squeezed_closed_form(zeta)) < 1e-9


def test_squeezed_paper_formula_is_literal_and_differs():
    zeta = 1.0j  # theta = pi/2, r = 1
    det = 1.0 + math.sinh(2.0) ** 2
    assert abs(ck.gap_squeezed_paper_formula(zeta) - ck.g_function(det)) < 1e-12
    assert abs(ck.gap_squeezed_closed_form(zeta) - ck.g_function(math.sqrt(det))) < 1e-12
    # the two printed forms disagree off the real axis; the gap pipeline
    # follows the spectral one
    assert ck.gap_squeezed_paper_formula(zeta) > ck.gap_squeezed_closed_form(zeta) + 1.0
    assert abs(ck.gap_squeezed_paper_formula(0.5) - ck.gap_squeezed_closed_form(0.5)) < 1e-15


def test_channel_action_and_conjugation_identity():
    phi = ck.random_gaussian_channel(2, seed=21)
    out = ck.apply_gaussian_channel(phi, G2)
    assert np.allclose(out.mean, phi.t_mat @ G2.mean + phi.b)
    conj_phi = ck.conjugate_gaussian_channel(phi)
    lhs = ck.apply_gaussian_channel(conj_phi, ck.conjugate_gaussian(G2))
    rhs = ck.conjugate_gaussian(out)
    assert np.abs(lhs.mean - rhs.mean).max() < 1e-10
    assert np.abs(lhs.cov - rhs.cov).max() < 1e-10


def test_incoherent_channel_maps_thermal_to_thermal():
    for seed in range(10):
        phi = ck.random_incoherent_gaussian_channel(2, seed=seed)
        for nus in ([1.0, 1.0], [2.0, 3.5]):
            out = ck.apply_gaussian_channel(phi, ck.thermal_state(nus))
            assert ck.is_thermal(out)
        report = ck.probe_incoherent_gaussian(phi)
        assert report.failures == 0


def test_probe_flags_a_coherence_creating_channel():
    theta = 0.3
    rot = np.array(
        [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
    )
    squeeze = np.diag([1.4, 1.0 / 1.4])
    t_mat = rot @ squeeze
    phi = ck.GaussianChannel([0.0, 0.0], t_mat, 1.5 * np.eye(2))
    report = ck.probe_incoherent_gaussian(phi)
    assert report.failures > 0


def test_supermajorization_helpers():
    assert ck.supermajorize_slack([1.0, 4.0], [1.0, 4.0]) == 0.0
    assert ck.weak_supermajorize([2.0, 4.0], [1.0, 4.0])
    assert not ck.weak_supermajorize([0.5, 9.0], [1.0, 4.0])
    with pytest.raises(ValueError):
        ck.supermajorize_slack([1.0], [1.0, 2.0])


def test_projection_lowers_thermal_parameters():
    # dropping the momentum means can only lower per-mode photon numbers
    for seed in range(8):
        state = ck.random_gaussian_state(2, seed=seed)
        proj = ck.real_projection(state)
        assert (ck.thermal_spectrum(proj) <= ck.thermal_spectrum(state) + 1e-12).all()
        assert ck.weak_supermajorize(
            ck.thermal_spectrum(state), ck.thermal_spectrum(proj), tol=1e-12
        )


def test_gaussian_json_roundtrip():
    text = ck.gaussian_to_json(G2)
    back = ck.gaussian_from_json(text)
    assert back.modes == 2
    assert np.allclose(back.mean, G2.mean, atol=1e-15)
    assert np.allclose(back.cov, G2.cov, atol=1e-15)
    payload = json.loads(text)
    assert sorted(payload) == ["cov", "mean", "modes"]
    with pytest.raises(ck.SchemaError):
        ck.gaussian_from_json('{"modes": 1, "mean": [0, 0]}')


def test_gaussian_channel_json_roundtrip():
    phi = ck.random_incoherent_gaussian_channel(2, seed=4)
    back = ck.gaussian_channel_from_json(ck.gaussian_channel_to_json(phi))
    assert np.allclose(back.t_mat, phi.t_mat, atol=1e-15)
    assert np.allclose(back.n_mat, phi.n_mat, atol=1e-15)
    assert np.allclose(back.b, phi.b, atol=1e-15)
