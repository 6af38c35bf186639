import numpy as np
import pytest

from sta_phase.algorithms.ga_core import (GAMMA, GAMMA0, I, ISIGMA3, ONE,
                                          PRODUCT_SIGN, SIGMA3, allclose,
                                          random_multivector)
from sta_phase.algorithms.phase import (hermitian_dynamic_density,
                                        rotor_dynamic_rate)
from sta_phase.algorithms.rotor import boost_rotor, euler_rotor, random_rotor
from sta_phase.algorithms.spinor import kinematics_at, polar_decompose
from sta_phase.errors import ContractViolationError, DegenerateSpinorError
from sta_phase.tools import matrix_bridge as mb
from sta_phase.tools import scenarios


def _random_spinor(rng):
    return random_multivector(rng, grades=(0, 2, 4))


def test_gamma_matrices_obey_metric():
    metric = np.diag([1.0, -1.0, -1.0, -1.0])
    for mu in range(4):
        for nu in range(4):
            anti = (mb.GAMMA_HAT[mu] @ mb.GAMMA_HAT[nu]
                    + mb.GAMMA_HAT[nu] @ mb.GAMMA_HAT[mu])
            assert np.allclose(anti, 2 * metric[mu, nu] * mb.IDENTITY4)
    assert np.allclose(mb.GAMMA5_HAT @ mb.GAMMA5_HAT, mb.IDENTITY4)
    for g in mb.GAMMA_HAT:
        assert np.allclose(mb.GAMMA5_HAT @ g, -(g @ mb.GAMMA5_HAT))


def test_blade_matrices_match_structure_constants():
    assert mb.structure_constant_mismatch() < 1e-12
    flipped = PRODUCT_SIGN.copy()
    flipped[3, 5] = -flipped[3, 5]
    assert mb.structure_constant_mismatch(flipped) > 1.0
    assert np.allclose(mb.PSEUDOSCALAR_MATRIX, 1j * mb.GAMMA5_HAT)


def test_identity_spinor_maps_to_first_basis_vector():
    assert np.allclose(mb.to_matrix_spinor(ONE), [1, 0, 0, 0])
    assert allclose(mb.from_matrix_spinor([1, 0, 0, 0]), ONE)


def test_spinor_map_is_a_bijection():
    rng = np.random.default_rng(30)
    for _ in range(50):
        psi = _random_spinor(rng)
        assert allclose(mb.from_matrix_spinor(mb.to_matrix_spinor(psi)), psi,
                        atol=1e-12)
        Psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        assert np.allclose(mb.to_matrix_spinor(mb.from_matrix_spinor(Psi)),
                           Psi)


def test_from_matrix_spinor_rejects_bad_shape():
    with pytest.raises(IndexError):
        mb.from_matrix_spinor(np.zeros(3))


def test_operator_contracts():
    rng = np.random.default_rng(31)
    for _ in range(50):
        psi = _random_spinor(rng)
        Psi = mb.to_matrix_spinor(psi)
        assert np.allclose(1j * Psi, mb.to_matrix_spinor(psi * ISIGMA3))
        assert np.allclose(mb.GAMMA5_HAT @ Psi,
                           mb.to_matrix_spinor(psi * SIGMA3))
        assert np.allclose(1j * mb.GAMMA5_HAT @ Psi,
                           mb.to_matrix_spinor(I * psi))
        for g, g_hat in zip(GAMMA, mb.GAMMA_HAT):
            assert np.allclose(g_hat @ Psi,
                               mb.to_matrix_spinor(g * psi * GAMMA0))


def test_amplitudes_agree():
    rng = np.random.default_rng(32)
    for _ in range(50):
        psi, phi = _random_spinor(rng), _random_spinor(rng)
        Psi, Phi = mb.to_matrix_spinor(psi), mb.to_matrix_spinor(phi)
        assert np.allclose(mb.amplitude_hermitian(psi, phi),
                           mb.matrix_amplitude_hermitian(Psi, Phi))
        assert np.allclose(mb.amplitude_dirac(psi, phi),
                           mb.matrix_amplitude_dirac(Psi, Phi))


def test_density_and_chiral_invariants():
    rng = np.random.default_rng(33)
    for _ in range(50):
        psi = _random_spinor(rng)
        p = polar_decompose(psi)
        rho, beta = mb.matrix_chiral_invariants(mb.to_matrix_spinor(psi))
        assert rho == pytest.approx(p.rho, rel=1e-10)
        assert beta == pytest.approx(p.beta, abs=1e-10)


def test_hermitian_density_is_varrho():
    traj = scenarios.boosted_precession(0.7, np.pi / 3, 1.0)
    k = kinematics_at(traj, 0.8)
    Psi = mb.to_matrix_spinor(k.psi)
    assert np.vdot(Psi, Psi).real == pytest.approx(k.varrho, rel=1e-10)


def test_chiral_transform_shifts_beta():
    rng = np.random.default_rng(34)
    R = random_rotor(rng, max_rapidity=1.0)
    psi = 2.0 * R
    Psi = mb.chiral_transform(mb.to_matrix_spinor(psi), 0.9)
    rho, beta = mb.matrix_chiral_invariants(Psi)
    assert rho == pytest.approx(4.0)
    assert beta == pytest.approx(0.9)
    assert np.allclose(mb.extract_matrix_rotor(Psi), mb.to_matrix_spinor(R))


def test_extract_matrix_rotor_degenerate():
    with pytest.raises(DegenerateSpinorError):
        mb.extract_matrix_rotor(np.zeros(4, dtype=complex))


def test_matrix_phase_rate_matches_rotor_rate():
    traj = scenarios.precession_loop(np.pi / 3, 1.0, chi_rate=0.4)
    for t in (0.2, 1.3, 4.0):
        R, R_dot = traj.rotor(t), traj.rotor_derivative(t)
        rate = mb.matrix_phase_rate(mb.to_matrix_spinor(R),
                                    mb.to_matrix_spinor(R_dot))
        assert rate == pytest.approx(rotor_dynamic_rate(R, R_dot), abs=1e-10)
    with pytest.raises(ContractViolationError):
        mb.matrix_phase_rate(2 * mb.to_matrix_spinor(ONE), np.zeros(4))


def test_standard_rate_matches_hermitian_density():
    rng = np.random.default_rng(35)
    traj = scenarios.random_custom_euler(rng)
    for t in (0.25, 0.75):
        k = kinematics_at(traj, t)
        standard = mb.standard_dynamic_rate(k.psi, k.psi_dot)
        density = hermitian_dynamic_density(k.psi, k.psi_dot)
        assert standard * k.varrho == pytest.approx(density, abs=1e-10)


@pytest.mark.parametrize('sign', scenarios.SIGNS)
def test_rest_plane_wave_solves_dirac_equation(sign):
    field = scenarios.PlaneWaveField(1.3, (0, 0, 0), sign)
    for x in ((0, 0, 0, 0), (0.4, -0.2, 0.9, 0.1)):
        assert mb.dirac_residual(field, None, 1.0, 1.3, x).max_abs() < 1e-12


def test_off_shell_residual_equals_detuning():
    field = scenarios.PlaneWaveField(1.0, (0, 0, 0), 'electron', detuning=0.1)
    residual = mb.dirac_residual(field, None, 1.0, 1.0, (0.3, 0, 0, 0))
    assert residual.norm() == pytest.approx(0.1, rel=1e-10)


def test_dirac_amplitude_is_lorentz_invariant():
    rng = np.random.default_rng(41)
    for _ in range(20):
        psi, phi = _random_spinor(rng), _random_spinor(rng)
        L = random_rotor(rng, max_rapidity=1.5)
        assert np.allclose(mb.amplitude_dirac(L * psi, L * phi),
                           mb.amplitude_dirac(psi, phi), atol=1e-9)


def test_hermitian_amplitude_is_frame_dependent():
    rng = np.random.default_rng(42)
    psi, phi = _random_spinor(rng), _random_spinor(rng)
    L = boost_rotor([0.7, -0.3, 0.4])
    boosted = mb.amplitude_hermitian(L * psi, L * phi)
    assert not np.allclose(boosted, mb.amplitude_hermitian(psi, phi),
                           atol=1e-3)
    # rotations fix gamma_0
    U = euler_rotor((0.4, 1.1, -0.7))
    assert np.allclose(mb.amplitude_hermitian(U * psi, U * phi),
                       mb.amplitude_hermitian(psi, phi), atol=1e-10)


def test_chiral_transforms_compose_additively():
    rng = np.random.default_rng(43)
    Psi = mb.to_matrix_spinor(_random_spinor(rng))
    for a, b in ((0.3, 0.9), (-1.2, 2.5), (np.pi, np.pi)):
        twice = mb.chiral_transform(mb.chiral_transform(Psi, a), b)
        assert np.allclose(twice, mb.chiral_transform(Psi, a + b),
                           atol=1e-12)
    assert np.allclose(mb.chiral_transform(Psi, 0.0), Psi)
