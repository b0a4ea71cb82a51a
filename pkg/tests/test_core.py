import math

import numpy as np
import pytest

from sglab.core import (
    Bra,
    Ket,
    NonsenseProductError,
    NormalizationError,
    Operator,
    dagger,
    dirac,
    identity,
    nminus,
    nplus,
    norm,
    probability,
    rotation,
    sn,
    sx,
    sy,
    sz,
    time_ev,
    xm,
    xp,
    ym,
    yp,
    zm,
    zp,
)

RSQRT2 = 1 / math.sqrt(2)


def test_basis_ket_amplitudes():
    assert np.allclose(zp.amp, [1, 0])
    assert np.allclose(zm.amp, [0, 1])
    assert np.allclose(xp.amp, [RSQRT2, RSQRT2])
    assert np.allclose(xm.amp, [RSQRT2, -RSQRT2])
    assert np.allclose(yp.amp, [RSQRT2, 1j * RSQRT2])
    assert np.allclose(ym.amp, [RSQRT2, -1j * RSQRT2])


def test_named_kets_are_nplus_nminus_special_cases():
    pairs = [
        (xp, nplus(math.pi / 2, 0.0)),
        (xm, nminus(math.pi / 2, 0.0)),
        (yp, nplus(math.pi / 2, math.pi / 2)),
        (ym, nminus(math.pi / 2, math.pi / 2)),
        (zp, nplus(0.0, 0.0)),
    ]
    for named, general in pairs:
        assert np.allclose(named.amp, general.amp, atol=1e-12)
    # nminus(0, 0) = (0, -1): the same ray as zm up to a global phase
    assert abs(abs(dagger(zm) * nminus(0.0, 0.0)) - 1.0) < 1e-12


def test_named_kets_normalized_and_orthogonal():
    for plus, minus in ((xp, xm), (yp, ym), (zp, zm)):
        assert math.isclose(norm(plus), 1.0, abs_tol=1e-12)
        assert math.isclose(norm(minus), 1.0, abs_tol=1e-12)
        assert abs(dagger(plus) * minus) < 1e-12


def test_ket_rejects_bad_shapes_and_values():
    with pytest.raises(ValueError):
        Ket([1.0])
    with pytest.raises(ValueError):
        Ket([1.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        Ket([math.inf, 0.0])
    with pytest.raises(ValueError):
        Ket([math.nan, 0.0])
    with pytest.raises(ValueError):
        Operator([[1, 0], [0, 1], [0, 0]])


def test_values_are_frozen():
    with pytest.raises(ValueError):
        zp.amp[0] = 2.0
    with pytest.raises(ValueError):
        sx.m[0, 0] = 5.0


def test_dirac_product_sorts():
    # every meaningful pairing lands in the right sort
    assert isinstance(dirac(2.0, 3.0), complex)
    assert isinstance(dirac(2.0, zp), Ket)
    assert isinstance(dirac(2.0, dagger(zp)), Bra)
    assert isinstance(dirac(2.0, sx), Operator)
    assert isinstance(dirac(zp, 2.0), Ket)
    assert isinstance(dirac(zp, dagger(zm)), Operator)
    assert isinstance(dirac(dagger(zp), 2.0), Bra)
    assert isinstance(dirac(dagger(zp), zm), complex)
    assert isinstance(dirac(dagger(zp), sx), Bra)
    assert isinstance(dirac(sx, 2.0), Operator)
    assert isinstance(dirac(sx, zp), Ket)
    assert isinstance(dirac(sx, sy), Operator)


def test_nonsense_products_are_rejected():
    cases = [
        (zp, zm, "Ket", "Ket"),
        (zp, sx, "Ket", "Operator"),
        (dagger(zp), dagger(zm), "Bra", "Bra"),
        (sx, dagger(zp), "Operator", "Bra"),
    ]
    for left, right, ls, rs in cases:
        with pytest.raises(NonsenseProductError) as err:
            dirac(left, right)
        assert err.value.left_sort == ls
        assert err.value.right_sort == rs
        assert ls in str(err.value) and rs in str(err.value)
    with pytest.raises(NonsenseProductError):
        zp * zm  # the operator form dispatches to the same check


def test_star_operator_matches_dirac():
    assert np.allclose((sx * zp).amp, dirac(sx, zp).amp)
    assert np.allclose((2 * zp).amp, [2, 0])
    assert np.allclose((zp * 2).amp, [2, 0])
    assert np.allclose((np.float64(0.5) * sx).m, sx.m / 2)


def test_inner_product_value():
    # <ym|xp> = (1 + i)/2, computed by hand from the amplitude table
    assert abs(dagger(ym) * xp - (0.5 + 0.5j)) < 1e-12


def test_outer_product_matrix():
    op = zp * dagger(zm)
    assert np.allclose(op.m, [[0, 1], [0, 0]])


def test_pauli_actions():
    assert np.allclose((sx * zp).amp, zm.amp)
    assert np.allclose((sz * zm).amp, (-zm).amp)
    assert np.allclose((sy * zp).amp, (1j * zm).amp)


def test_operators_equal_outer_product_differences():
    rng = np.random.default_rng(7)
    table = [(sx, xp, xm), (sy, yp, ym), (sz, zp, zm)]
    for op, plus, minus in table:
        built = plus * dagger(plus) - minus * dagger(minus)
        assert np.abs(op.m - built.m).max() < 1e-12
    for _ in range(25):
        theta = rng.uniform(0, math.pi)
        phi = rng.uniform(0, 2 * math.pi)
        plus, minus = nplus(theta, phi), nminus(theta, phi)
        built = plus * dagger(plus) - minus * dagger(minus)
        assert np.abs(sn(theta, phi).m - built.m).max() < 1e-12


def test_sn_eigenstates():
    rng = np.random.default_rng(11)
    for _ in range(25):
        theta = rng.uniform(0, math.pi)
        phi = rng.uniform(0, 2 * math.pi)
        plus, minus = nplus(theta, phi), nminus(theta, phi)
        assert np.abs((sn(theta, phi) * plus).amp - plus.amp).max() < 1e-12
        assert np.abs((sn(theta, phi) * minus).amp + minus.amp).max() < 1e-12


def test_associativity_spot_checks():
    left = (dagger(xp) * sy) * zm
    right = dagger(xp) * (sy * zm)
    assert abs(left - right) < 1e-12
    assert np.allclose(((sx * sy) * zp).amp, (sx * (sy * zp)).amp)
    assert np.allclose(((zp * dagger(zm)) * zm).amp, (zp * (dagger(zm) * zm)).amp)


def test_dagger_rules():
    assert dagger(1 + 2j) == 1 - 2j
    assert np.allclose(dagger(dagger(yp)).amp, yp.amp)
    assert np.allclose(dagger(sy).m, sy.m)  # Hermitian
    a = Operator([[1 + 1j, 2], [0, 3j]])
    b = Operator([[0, 1j], [1, 1]])
    assert np.abs(dagger(a * b).m - (dagger(b) * dagger(a)).m).max() < 1e-12
    assert np.abs(dagger(a * yp).amp - (dagger(yp) * dagger(a)).amp).max() < 1e-12


def test_probability_known_values():
    assert math.isclose(probability(zp, zp), 1.0, abs_tol=1e-12)
    assert math.isclose(probability(zm, zp), 0.0, abs_tol=1e-12)
    assert math.isclose(probability(xp, zp), 0.5, abs_tol=1e-12)
    assert math.isclose(probability(ym, xp), 0.5, abs_tol=1e-12)


def test_probability_cosine_law():
    rng = np.random.default_rng(13)
    for _ in range(50):
        theta = rng.uniform(0, math.pi)
        phi = rng.uniform(0, 2 * math.pi)
        expected = math.cos(theta / 2) ** 2
        assert abs(probability(nplus(theta, phi), zp) - expected) < 1e-12


def test_probability_requires_normalized_kets():
    stretched = Ket([2.0, 0.0])
    with pytest.raises(NormalizationError):
        probability(stretched, zp)
    with pytest.raises(NormalizationError):
        probability(zp, stretched)
    with pytest.raises(TypeError):
        probability(dagger(zp), zp)
    # a hair inside the gate is fine
    probability(Ket([1.0 + 5e-7, 0.0]), zp)


def test_rotation_spinor_periodicity():
    for theta, phi in ((0.0, 0.0), (math.pi / 2, 0.0), (1.1, 2.2)):
        full_turn = rotation(theta, phi, 2 * math.pi)
        assert np.abs(full_turn.m + identity.m).max() < 1e-12
        double_turn = rotation(theta, phi, 4 * math.pi)
        assert np.abs(double_turn.m - identity.m).max() < 1e-12


def test_rotation_carries_zp_around_y_to_xp():
    quarter = rotation(math.pi / 2, math.pi / 2, math.pi / 2)
    assert np.abs((quarter * zp).amp - xp.amp).max() < 1e-12


def test_rotation_is_unitary():
    rng = np.random.default_rng(17)
    for _ in range(25):
        u = rotation(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi),
                     rng.uniform(-10, 10)).m
        assert np.abs(u @ u.conj().T - np.eye(2)).max() < 1e-12


def _exact_step(dt: float, h: np.ndarray, amp: np.ndarray) -> np.ndarray:
    # independent propagator route: diagonalize instead of solving
    w, v = np.linalg.eigh(h)
    return v @ (np.exp(-1j * dt * w) * (v.conj().T @ amp))


def test_time_ev_flips_spin_at_half_period():
    # exp(-i t sx) sends |z+> to (-i)|z-> at t = pi/2; 100 Cayley steps
    dt = math.pi / 200
    psi = zp
    for _ in range(100):
        psi = time_ev(dt, sx, psi)
    assert abs(probability(zm, psi) - 1.0) < 5e-5


def test_time_ev_matches_exact_propagator():
    h = Operator([[0.3, 0.5 - 0.2j], [0.5 + 0.2j, -0.7]])
    dt, steps = 0.01, 200
    psi = yp
    exact = yp.amp
    for _ in range(steps):
        psi = time_ev(dt, h, psi)
        exact = _exact_step(dt, h.m, exact)
    assert np.abs(psi.amp - exact).max() < 1e-5


def test_time_ev_preserves_norm_exactly():
    psi = xp
    drift = 0.0
    for _ in range(500):
        psi = time_ev(0.05, sy, psi)
        drift = max(drift, abs(norm(psi) - 1.0))
    assert drift < 1e-13


def test_time_ev_is_second_order():
    # halving dt must cut the end-state error by about 4
    h = Operator([[1.0, 0.4j], [-0.4j, -0.5]])
    total = 2.0

    def end_error(steps: int) -> float:
        dt = total / steps
        psi, exact = zp, zp.amp
        for _ in range(steps):
            psi = time_ev(dt, h, psi)
        exact = _exact_step(total, h.m, exact)
        return float(np.abs(psi.amp - exact).max())

    ratio = end_error(100) / end_error(200)
    assert 3.5 < ratio < 4.5


def test_time_ev_rejects_bad_input():
    with pytest.raises(ValueError):
        time_ev(0.0, sx, zp)
    with pytest.raises(ValueError):
        time_ev(-0.1, sx, zp)
    with pytest.raises(ValueError):
        time_ev(math.nan, sx, zp)
    with pytest.raises(ValueError):
        time_ev(0.1, Operator([[0, 1], [0, 0]]), zp)
    with pytest.raises(TypeError):
        time_ev(0.1, sx, dagger(zp))


def test_norm_and_repr():
    assert math.isclose(norm(2 * zp), 2.0, abs_tol=1e-12)
    assert math.isclose(norm(dagger(yp)), 1.0, abs_tol=1e-12)
    with pytest.raises(TypeError):
        norm(sx)
    assert "Ket[" in repr(zp)
    assert "Bra[" in repr(dagger(zp))
    assert "Operator" in repr(sx)
