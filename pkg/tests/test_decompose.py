from __future__ import annotations

import pytest

from reinhardt.composition import Composition, InvalidComposition, SignVector, composition_to_sign_vector
from reinhardt.decompose import decompose, generators, has_trivial_decomposition, reconstruct
from reinhardt.poly import IntPolynomial, cyclotomic

from conftest import enumerated

PAIRS = {15: (3, 5), 21: (3, 7), 33: (3, 11), 35: (5, 7)}


def padded(poly: IntPolynomial, n: int) -> SignVector:
    return SignVector(list(poly.coeffs) + [0] * (n - len(poly.coeffs)))


def test_worked_example_n15():
    G1, G2 = generators(3, 5)
    F = IntPolynomial([0, 1, -1]) * G1 + cyclotomic(3).subs_power(1, -1) * G2
    assert F == IntPolynomial([1, 0, 0, -1, 1]) * G1
    d = decompose(padded(F, 15), 3, 5)
    assert reconstruct(d.f1, d.f2, 3, 5) == F
    assert d.f1 == IntPolynomial([1, 0, 0, -1, 1]) and d.f2.is_zero() and d.trivial


def test_generator_itself_is_trivial():
    G1, _ = generators(3, 5)
    d = decompose(padded(G1, 15), 3, 5)
    assert d.f1 == IntPolynomial([1]) and d.f2.is_zero() and d.trivial


def test_has_trivial_examples():
    c = Composition((3, 1, 1) * 3)
    assert has_trivial_decomposition(c, 5, 3).q_side
    sides = has_trivial_decomposition(Composition([1] * 15), 3, 5)
    assert sides.p_side and sides.q_side


@pytest.mark.parametrize("n", sorted(PAIRS))
def test_dichotomy_and_reconstruction(n):
    p, q = PAIRS[n]
    for parts in enumerated(n).compositions:
        c = Composition(parts)
        F = composition_to_sign_vector(c).polynomial()
        for a, b in ((p, q), (q, p)):
            assert has_trivial_decomposition(c, a, b).either
            d = decompose(c, a, b)
            assert reconstruct(d.f1, d.f2, a, b) == F
            assert all(x in (-1, 0, 1) for x in d.f1.coeffs + d.f2.coeffs)
            assert d.f1.degree < b and d.f2.degree < a


def test_rejects_bad_inputs():
    with pytest.raises(InvalidComposition):
        decompose(Composition([4, 4, 1, 3, 3]), 3, 5)
    with pytest.raises(ValueError):
        decompose(Composition([1] * 15), 3, 7)
    with pytest.raises(ValueError):
        decompose(Composition([1] * 9), 3, 3)
    with pytest.raises(InvalidComposition):
        has_trivial_decomposition(Composition([4, 4, 1, 3, 3]), 3, 5)
