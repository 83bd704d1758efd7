import numpy as np
import pytest

import coherekit as ck

# fixed mixed qubit drawn once; measure values below were frozen from it
R2 = ck.random_density(2, None, seed=314)
R2_RE = np.array(
    [[0.442299002355, -0.280826784409], [-0.280826784409, 0.557700997645]]
)
R2_IM = np.array([[0.0, 0.277614924057], [-0.277614924057, 0.0]])

PLUS = ck.DensityMatrix(np.full((2, 2), 0.5))


def test_frozen_state_matches_its_snapshot():
    assert np.abs(R2.data.real - R2_RE).max() < 1e-12
    assert np.abs(R2.data.imag - R2_IM).max() < 1e-12


def test_l1_frozen_value():
    assert abs(ck.c_l1(R2) - 0.7897689001234129) < 1e-12


def test_rel_ent_frozen_value():
    assert abs(ck.c_rel_ent(R2) - 0.5184600017986082) < 1e-12


def test_tsallis_frozen_values():
    assert abs(ck.c_tsallis(R2, 0.5) - 0.3892380064960266) < 1e-12
    assert abs(ck.c_tsallis(R2, 2.0) - 0.27627449312620866) < 1e-12
    assert abs(ck.c_tsallis(R2, 0.0) - 0.39000319383712867) < 1e-12


def test_l1_known_extremes():
    assert ck.c_l1(PLUS) == 1.0
    assert ck.c_l1(ck.DensityMatrix(np.diag([0.2, 0.8]))) == 0.0
    for d in (3, 4, 5):
        psi = ck.PureState(np.ones(d) / np.sqrt(d))
        assert abs(ck.c_l1(psi.to_density()) - (d - 1)) < 1e-12


def test_rel_ent_known_values():
    # dephased plus state is maximally mixed, so the gap is one full bit
    assert abs(ck.c_rel_ent(PLUS) - 1.0) < 1e-12
    d = 4
    psi = ck.PureState(np.ones(d) / np.sqrt(d)).to_density()
    assert abs(ck.c_rel_ent(psi) - 2.0) < 1e-12
    assert ck.c_rel_ent(ck.DensityMatrix(np.eye(3) / 3)) == 0.0


def test_tsallis_known_values_on_plus():
    # rho is idempotent, so rho**alpha = rho and the sum telescopes
    assert abs(ck.c_tsallis(PLUS, 2.0) - (np.sqrt(2.0) - 1.0)) < 1e-12
    assert abs(ck.c_tsallis(PLUS, 0.5) - 1.0) < 1e-12
    assert abs(ck.c_tsallis(PLUS, 0.0) - 1.0) < 1e-12


def test_tsallis_vanishes_on_diagonal_states():
    rho = ck.DensityMatrix(np.diag([0.1, 0.3, 0.6]))
    for alpha in (0.0, 0.3, 0.5, 0.9, 1.5, 2.0):
        assert abs(ck.c_tsallis(rho, alpha)) < 1e-12


def test_tsallis_alpha_validation():
    with pytest.raises(ValueError):
        ck.c_tsallis(R2, 1.0)
    with pytest.raises(ValueError):
        ck.c_tsallis(R2, 2.5)
    with pytest.raises(ValueError):
        ck.c_tsallis(R2, -0.1)


def test_tsallis_alpha_zero_is_small_alpha_limit():
    # state with an exactly-zero eigenvalue so the limit is clean
    rho = ck.random_density(3, 2, seed=99)
    base = ck.c_tsallis(rho, 0.0)
    prev = None
    for alpha in (1e-2, 1e-3, 1e-4):
        diff = abs(ck.c_tsallis(rho, alpha) - base)
        if prev is not None:
            assert diff < prev
        prev = diff
    assert prev < 1e-3


def test_measures_nonnegative_and_zero_iff_diagonal():
    rng = np.random.default_rng(42)
    for _ in range(50):
        rho = ck.random_density(int(rng.integers(2, 6)), None, int(rng.integers(2**31)))
        assert ck.c_l1(rho) > 0.0
        assert ck.c_rel_ent(rho) > -1e-12
        assert ck.c_tsallis(rho, 0.5) > -1e-12
        assert ck.c_tsallis(rho, 2.0) > -1e-12


def test_conjugation_invariance_exact():
    for seed in range(25):
        rho = ck.random_density(4, None, seed=seed)
        conj = ck.conjugate_state(rho)
        assert ck.c_l1(rho) == ck.c_l1(conj)
        assert ck.c_rel_ent(rho) == ck.c_rel_ent(conj)
        assert ck.c_tsallis(rho, 0.5) == ck.c_tsallis(conj, 0.5)
        assert ck.c_tsallis(rho, 2.0) == ck.c_tsallis(conj, 2.0)


def test_bloch_state_and_l1():
    rho = ck.bloch_state(0.3, 0.4, 0.0)
    assert abs(rho.data[0, 0] - 0.5) < 1e-15
    assert abs(rho.data[0, 1] - (0.15 - 0.2j)) < 1e-15
    assert abs(ck.c_l1(rho) - 0.5) < 1e-15


def test_l1_real_gap_closed_form_matches_direct():
    rng = np.random.default_rng(7)
    for _ in range(200):
        rho = ck.random_density(int(rng.integers(2, 5)), None, int(rng.integers(2**31)))
        direct = ck.c_l1(rho) - ck.c_l1(ck.real_part(rho))
        closed = ck.l1_real_gap_closed_form(rho)
        assert abs(direct - closed) < 1e-12
        assert closed >= -1e-15


def test_bloch_gap_matches_sqrt_formula():
    rng = np.random.default_rng(8)
    for _ in range(400):
        vec = rng.standard_normal(3)
        vec *= rng.random() / max(np.linalg.norm(vec), 1e-12)
        x, y, z = vec
        rho = ck.bloch_state(x, y, z)
        direct = ck.c_l1(rho) - ck.c_l1(ck.real_part(rho))
        closed = np.sqrt(x * x + y * y) - abs(x)
        assert abs(direct - closed) < 1e-12
        assert abs(ck.bloch_gap_l1(x, y) - closed) < 1e-12


def test_bloch_gap_l1_grid_symmetry():
    # gap depends on the off-diagonal only; z drops out
    assert abs(ck.bloch_gap_l1(0.3, 0.4) - ck.bloch_gap_l1(-0.3, -0.4)) < 1e-15
    assert ck.bloch_gap_l1(0.5, 0.0) == 0.0
    assert abs(ck.bloch_gap_l1(0.0, 0.5) - 0.5) < 1e-15


def test_concave_fn_registry():
    shannon = ck.concave_fn("shannon")
    assert shannon is ck.SHANNON
    one_minus = ck.concave_fn("onemax")
    assert one_minus is ck.ONE_MINUS_MAX
    with pytest.raises(ValueError):
        ck.concave_fn("nope")
    w = np.array([0.5, 0.5])
    assert abs(ck.SHANNON(w) - 1.0) < 1e-12
    assert abs(ck.ONE_MINUS_MAX(w) - 0.5) < 1e-12
    assert ck.SHANNON(np.array([1.0, 0.0])) == 0.0


def test_convex_roof_pure_values():
    psi = ck.PureState(np.ones(2) / np.sqrt(2.0))
    assert abs(ck.c_convex_roof_pure(psi, ck.SHANNON) - 1.0) < 1e-12
    assert abs(ck.c_convex_roof_pure(psi, ck.ONE_MINUS_MAX) - 0.5) < 1e-12
    basis = ck.PureState(np.array([1.0, 0.0]))
    assert ck.c_convex_roof_pure(basis, ck.SHANNON) == 0.0


def test_parse_measure_strings():
    assert ck.parse_measure("l1").kind == "l1"
    assert ck.parse_measure("tsallis:0.5").alpha == 0.5
    assert ck.parse_measure("roofpure:shannon").f_id == "shannon"
    assert ck.parse_measure("tsallis:2").label() == "tsallis:2"
    with pytest.raises(ValueError):
        ck.parse_measure("tsallis:1")
    with pytest.raises(ValueError):
        ck.parse_measure("entropy")
    with pytest.raises(ValueError):
        ck.parse_measure("tsallis:abc")


def test_default_measures_cover_both_families():
    labels = {mid.label() for mid in ck.DEFAULT_MEASURES}
    assert {"l1", "relent", "tsallis:0.5", "tsallis:2"} <= labels
    assert {"robustness", "weight", "tracenorm", "geometric"} <= labels
    closed = {mid.label() for mid in ck.CLOSED_MEASURES}
    opt = {mid.label() for mid in ck.OPT_MEASURES}
    assert closed.isdisjoint(opt)


def test_evaluate_routes_closed_measures():
    val = ck.evaluate(ck.parse_measure("l1"), R2)
    assert val == ck.c_l1(R2)
    full = ck.evaluate_full(ck.parse_measure("relent"), R2)
    assert full.value == ck.c_rel_ent(R2)
    assert full.certificate.size == 0


def test_real_gap_matches_manual_difference():
    gap = ck.real_gap(ck.parse_measure("l1"), R2)
    manual = ck.c_l1(R2) - ck.c_l1(ck.real_part(R2))
    assert gap == manual
    assert gap >= 0.0


def test_symmetrized_value_on_real_state_is_plain_value():
    rho = ck.DensityMatrix(np.array([[0.6, 0.2], [0.2, 0.4]]))
    mid = ck.parse_measure("l1")
    assert ck.symmetrized_value(mid, rho) == ck.evaluate(mid, rho)


def test_evaluate_many_matches_scalar_loop():
    rhos = [ck.random_density(3, None, seed=s) for s in range(6)]
    mid = ck.parse_measure("tsallis:2")
    batch = ck.evaluate_many(mid, rhos)
    single = np.array([ck.evaluate(mid, rho) for rho in rhos])
    assert np.array_equal(batch, single)
