import numpy as np
import pytest

from sta_phase.algorithms.ga_core import (GAMMA0, GAMMA1, GAMMA3, I, ISIGMA1,
                                          ISIGMA3, ONE, SIGMA1, SIGMA2,
                                          SIGMA3, Multivector, allclose,
                                          random_multivector)
from sta_phase.algorithms.rotor import (EulerAngles, Rotor, boost_rotor,
                                        check_rotor, compose_rotors,
                                        euler_from_spatial, euler_rotor,
                                        exp_bivector, normalize_rotor,
                                        random_rotor, rotate,
                                        split_boost_rotation)
from sta_phase.errors import (ContractViolationError, DecompositionError,
                              DomainError)


def test_exp_bivector_examples():
    assert allclose(exp_bivector(-np.pi / 2 * ISIGMA3), -ISIGMA3)
    assert allclose(exp_bivector(Multivector()), ONE)
    b = 0.8
    L = exp_bivector(-b / 2 * SIGMA3)
    assert allclose(L * GAMMA0 * ~L, np.cosh(b) * GAMMA0 - np.sinh(b) * GAMMA3)


def test_exp_bivector_series_branch_is_unitary():
    # B^2 has a pseudoscalar part, so the power series is used
    B = 0.7 * SIGMA1 + 0.3 * ISIGMA1
    R = exp_bivector(B)
    assert allclose(R * ~R, ONE, atol=1e-10)
    assert allclose(exp_bivector(B) * exp_bivector(-B), ONE, atol=1e-10)


@pytest.mark.parametrize('bad', [GAMMA1, ONE, I, SIGMA1 + GAMMA0])
def test_exp_bivector_rejects_non_bivectors(bad):
    with pytest.raises(DomainError):
        exp_bivector(bad)


def test_euler_rotor_examples():
    assert allclose(euler_rotor(EulerAngles(0, 0, 0)), ONE)
    R = euler_rotor((np.pi / 2, 0, 0))
    assert allclose(rotate(SIGMA2, R), -SIGMA1, atol=1e-12)


def test_boost_rotor():
    assert allclose(boost_rotor((0, 0, 0)), ONE)
    b = 1.3
    L = boost_rotor((0, 0, b))
    assert allclose(L * GAMMA0 * ~L, np.cosh(b) * GAMMA0 - np.sinh(b) * GAMMA3)
    with pytest.raises(DomainError):
        boost_rotor((0, np.nan, 0))


def test_rotate():
    rng = np.random.default_rng(10)
    c = random_multivector(rng)
    assert allclose(rotate(c, ONE), c)
    U = euler_rotor((0.3, 1.1, -0.4))
    assert allclose(rotate(GAMMA0, U), GAMMA0)
    with pytest.raises(ContractViolationError):
        rotate(c, 2.0 * ONE)


def test_check_rotor():
    check_rotor(random_rotor(np.random.default_rng(11)))
    with pytest.raises(ContractViolationError):
        check_rotor(GAMMA1)
    with pytest.raises(ContractViolationError):
        Rotor(SIGMA1 + ONE)


def test_normalize_and_compose():
    R = random_rotor(np.random.default_rng(12))
    assert allclose(normalize_rotor(3.0 * R), R)
    assert allclose(compose_rotors(R, ~R), ONE, atol=1e-10)


def test_split_boost_rotation_pure_cases():
    U = euler_rotor((0.4, 0.9, 1.7))
    L, U2 = split_boost_rotation(U)
    assert allclose(L, ONE) and allclose(U2, U)
    L0 = boost_rotor((0.3, -0.6, 1.0))
    L, U2 = split_boost_rotation(L0)
    assert allclose(L, L0) and allclose(U2, ONE)


def test_split_boost_rotation_round_trip():
    rng = np.random.default_rng(13)
    for _ in range(200):
        L0 = boost_rotor(rng.uniform(-1.5, 1.5, 3))
        U0 = euler_rotor((rng.uniform(-np.pi, np.pi), rng.uniform(0, np.pi),
                          rng.uniform(-np.pi, np.pi)))
        L, U = split_boost_rotation(L0 * U0)
        assert allclose(L, L0, atol=1e-10)
        assert allclose(U, U0, atol=1e-10)


def test_split_boost_rotation_rejects_odd_input():
    with pytest.raises(DecompositionError):
        split_boost_rotation(GAMMA1)


def test_euler_from_spatial_identity():
    assert euler_from_spatial(ONE) == (0.0, 0.0, 0.0)


@pytest.mark.parametrize('alpha', [0.3, -1.2, 1.5])
def test_euler_from_spatial_gimbal_lock(alpha):
    angles = euler_from_spatial(exp_bivector(-alpha * ISIGMA3))
    assert angles.theta == pytest.approx(0.0, abs=1e-12)
    assert angles.phi == 0.0
    assert angles.chi == pytest.approx(2 * alpha)


def test_euler_from_spatial_round_trip():
    rng = np.random.default_rng(14)
    for _ in range(200):
        angles = (rng.uniform(-np.pi, np.pi), rng.uniform(0.01, np.pi - 0.01),
                  rng.uniform(-np.pi, np.pi))
        U = euler_rotor(angles)
        found, sign = euler_from_spatial(U, return_sign=True)
        assert 0 <= found.theta <= np.pi
        assert -np.pi < found.phi <= np.pi and -np.pi < found.chi <= np.pi
        assert allclose(euler_rotor(found), sign * U, atol=1e-10)
        assert found.theta == pytest.approx(angles[1], abs=1e-9)


def test_euler_from_spatial_rejects_boosts():
    with pytest.raises(DomainError):
        euler_from_spatial(boost_rotor((0.5, 0, 0)))


def test_rotate_preserves_inner_products():
    rng = np.random.default_rng(31)
    for _ in range(50):
        R = random_rotor(rng, max_rapidity=1.0)
        a = Multivector.vector(rng.standard_normal(4))
        b = Multivector.vector(rng.standard_normal(4))
        before = (a | b).scalar_part
        after = (rotate(a, R) | rotate(b, R)).scalar_part
        assert after == pytest.approx(before, rel=1e-9, abs=1e-9)


def test_composed_rotors_stay_normalized():
    rng = np.random.default_rng(32)
    for _ in range(20):
        rotors = [random_rotor(rng, max_rapidity=1.0) for _ in range(4)]
        R = compose_rotors(*rotors)
        assert allclose(R * ~R, ONE, atol=1e-9)
        assert check_rotor(R) is not None
