import numpy as np
import pytest

from sta_phase.algorithms.ga_core import (
    GAMMA0, GAMMA1, GAMMA2, GAMMA3, I, ISIGMA1, ISIGMA3, ONE, PRODUCT_INDEX,
    PRODUCT_SIGN, SIGMA1, SIGMA2, SIGMA3, Multivector, allclose, as_rows,
    batch_grade, batch_product, batch_reversion, batch_scalar_product,
    blade_product, cayley_table, format_cayley_table, geometric_product,
    grade_projection, hermitian_adjoint, inner_product, outer_product,
    pauli_view, random_multivector, relative_vector, reversion, scalar_part)
from sta_phase.errors import DomainError


def test_generators_square_to_metric():
    assert allclose(GAMMA0 * GAMMA0, ONE)
    for g in (GAMMA1, GAMMA2, GAMMA3):
        assert allclose(g * g, -ONE)
    assert allclose(I * I, -ONE)


def test_pauli_relations():
    assert allclose(SIGMA1 * SIGMA2, -(SIGMA2 * SIGMA1))
    assert allclose(I * SIGMA1, SIGMA2 * SIGMA3)
    assert allclose(SIGMA1 * SIGMA2 * SIGMA3, I)
    for s in (SIGMA1, SIGMA2, SIGMA3):
        assert allclose(s * s, ONE)
    # I sigma_3 = -gamma1 gamma2
    assert allclose(ISIGMA3, -(GAMMA1 * GAMMA2))


def test_blade_product_sign():
    assert blade_product(0b0010, 0b0001) == (0b0011, -1.0)
    assert blade_product(0b0001, 0b0010) == (0b0011, 1.0)
    assert blade_product(0b1111, 0b1111) == (0, -1.0)
    assert PRODUCT_INDEX.shape == (16, 16)
    assert set(np.unique(PRODUCT_SIGN)) == {-1.0, 1.0}


def test_associativity_random():
    rng = np.random.default_rng(1)
    for _ in range(50):
        a, b, c = (random_multivector(rng) for _ in range(3))
        assert allclose((a * b) * c, a * (b * c), atol=1e-10)


def test_inner_product_examples():
    assert allclose(inner_product(SIGMA1, SIGMA2), 0 * ONE)
    assert allclose(inner_product(SIGMA3, SIGMA3), ONE)
    assert allclose(inner_product(ISIGMA3, ISIGMA3), -ONE)
    # scalars contribute nothing
    assert allclose(inner_product(ONE, GAMMA1), Multivector())


def test_vector_inner_product_is_symmetric_part():
    rng = np.random.default_rng(2)
    a = Multivector.vector(rng.standard_normal(4))
    b = Multivector.vector(rng.standard_normal(4))
    assert allclose(a | b, 0.5 * (a * b + b * a))


def test_outer_product_examples():
    assert allclose(outer_product(SIGMA1, 2 * SIGMA1), Multivector())
    assert allclose(SIGMA1 ^ SIGMA2, SIGMA1 * SIGMA2)
    assert allclose(SIGMA1 ^ ISIGMA1, I)
    assert allclose(SIGMA1 ^ (SIGMA2 * SIGMA3), SIGMA1 * SIGMA2 * SIGMA3)
    assert allclose(ONE ^ SIGMA2, SIGMA2)
    assert allclose(GAMMA0 ^ GAMMA1, GAMMA0 * GAMMA1)
    assert allclose(GAMMA0 ^ (3 * GAMMA0), Multivector())
    rng = np.random.default_rng(3)
    a = Multivector.vector(rng.standard_normal(4))
    b = Multivector.vector(rng.standard_normal(4))
    assert allclose((a ^ b) + (b ^ a), Multivector())


def test_outer_product_of_relative_vectors():
    rng = np.random.default_rng(13)
    for _ in range(20):
        a = relative_vector(rng.standard_normal(3))
        b = relative_vector(rng.standard_normal(3))
        c = relative_vector(rng.standard_normal(3))
        assert allclose(a ^ b, 0.5 * (a * b - b * a))
        assert allclose((a ^ b) + (b ^ a), Multivector())
        # triple wedge is the volume times I
        volume = np.linalg.det(np.array([pauli_view(x).vector
                                         for x in (a, b, c)]))
        assert allclose((a ^ b) ^ c, volume * I, atol=1e-10)


def test_grade_projection():
    c = ONE + SIGMA1 + I
    assert allclose(grade_projection(c, 0), ONE)
    assert allclose(grade_projection(GAMMA0 * GAMMA1 * GAMMA2 * GAMMA3, 4), I)
    rng = np.random.default_rng(4)
    W = grade_projection(random_multivector(rng), 2)
    S = grade_projection(random_multivector(rng), 2)
    assert allclose(grade_projection(W * S, 2), 0.5 * (W * S - S * W))


@pytest.mark.parametrize('k', [-1, 5, 1.5, True])
def test_grade_projection_rejects_bad_grade(k):
    with pytest.raises(DomainError):
        grade_projection(ONE, k)


def test_reversion():
    assert allclose(reversion(SIGMA1 * SIGMA2), SIGMA2 * SIGMA1)
    assert allclose(~I, I)
    assert allclose(~ISIGMA1, -ISIGMA1)
    rng = np.random.default_rng(5)
    a, b = random_multivector(rng), random_multivector(rng)
    assert allclose(~(a * b), ~b * ~a)


def test_hermitian_adjoint():
    assert allclose(hermitian_adjoint(ONE), ONE)
    assert allclose(hermitian_adjoint(GAMMA1), -GAMMA1)
    rng = np.random.default_rng(6)
    psi = random_multivector(rng)
    assert allclose(hermitian_adjoint(hermitian_adjoint(psi)), psi)


def test_pauli_view():
    assert np.allclose(pauli_view(GAMMA1 * GAMMA0).vector, [1, 0, 0])
    view = pauli_view(GAMMA0 * GAMMA1 * GAMMA2 * GAMMA3)
    assert view.trivector == pytest.approx(1.0)
    assert np.allclose(view.vector, 0) and np.allclose(view.bivector, 0)
    assert pauli_view(ONE).scalar == 1.0
    rng = np.random.default_rng(7)
    psi = random_multivector(rng, grades=(0, 2, 4))
    assert allclose(pauli_view(psi).to_multivector(), psi)
    # relative-space reversion is the Hermitian adjoint, not the STA reverse
    assert allclose(pauli_view(psi).reversion().to_multivector(),
                    hermitian_adjoint(psi))
    assert pauli_view(I).reversion().trivector == pytest.approx(-1.0)
    assert allclose(~I, I)
    assert not allclose(pauli_view(I).reversion().to_multivector(), ~I)


def test_pauli_view_rejects_odd():
    with pytest.raises(DomainError):
        pauli_view(GAMMA1)


def test_relative_vector():
    assert allclose(relative_vector([1, 2, 3]), SIGMA1 + 2 * SIGMA2
                    + 3 * SIGMA3)


def test_scalar_arithmetic():
    c = 2.0 + SIGMA1
    assert scalar_part(c) == 2.0
    assert allclose(c - 2.0, SIGMA1)
    assert allclose(3.0 - SIGMA1, 3.0 * ONE - SIGMA1)
    assert allclose(np.float64(2.0) * SIGMA1, SIGMA1 + SIGMA1)
    assert allclose(SIGMA1 / 2, 0.5 * SIGMA1)


def test_value_is_read_only():
    c = Multivector.blade(3)
    with pytest.raises(ValueError):
        c.value[0] = 1.0


def test_wrong_length_rejected():
    with pytest.raises(ValueError):
        Multivector(np.zeros(8))


def test_cayley_table_entries():
    table = cayley_table()
    assert table[0b0001][0b0001] == '+e0'
    assert table[0b0010][0b0010] == '-e0'
    assert table[0b1111][0b1111] == '-e0'
    assert table[0b0010][0b0001] == '-e3'
    text = format_cayley_table()
    lines = text.splitlines()
    assert len(lines) == 16
    assert all(len(line.split()) == 16 for line in lines)


def test_sign_table_override():
    flipped = PRODUCT_SIGN.copy()
    flipped[1, 1] = -flipped[1, 1]
    assert allclose(geometric_product(GAMMA0, GAMMA0, sign_table=flipped),
                    -ONE)
    assert cayley_table(flipped)[1][1] == '-e0'


def test_batch_product_matches_multivector_product():
    rng = np.random.default_rng(17)
    A = [random_multivector(rng) for _ in range(5)]
    B = [random_multivector(rng) for _ in range(5)]
    rows = batch_product(np.array([a.value for a in A]),
                         np.array([b.value for b in B]))
    for row, a, b in zip(rows, A, B):
        assert allclose(Multivector(row), a * b)
    # a single multivector broadcasts over the rows
    left = batch_product(SIGMA1, np.array([b.value for b in B]))
    assert allclose(Multivector(left[3]), SIGMA1 * B[3])
    assert np.allclose(batch_reversion(rows)[2], (~(A[2] * B[2])).value)
    assert np.allclose(batch_grade(rows, 2)[1],
                       grade_projection(A[1] * B[1], 2).value)
    assert batch_scalar_product(np.array([a.value for a in A]),
                                np.array([b.value for b in B]))[4] == \
        pytest.approx(scalar_part(A[4] * B[4]))


def test_batch_product_rejects_bad_shapes():
    with pytest.raises(DomainError):
        batch_product(np.zeros((3, 16)), np.zeros((2, 16)))
    with pytest.raises(DomainError):
        as_rows(np.zeros((3, 8)))
