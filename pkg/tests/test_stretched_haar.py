import math

import numpy as np
import pytest
import scipy.linalg
from numpy.testing import assert_allclose

from ruelle.laurent import LaurentPoly, evaluate, make, rotate
from ruelle.stretched_haar import (continuous_eigenbasis, cycle_eigenfunction, doubling_cycles,
                                   fejer_h, root_of_unity, stretched_haar_filter)
from ruelle.transfer import fixed_space, lawton_matrix, ruelle_apply

import oracles

SQ = 1 / math.sqrt(2)
ODD = [1, 3, 5, 7, 9, 15]


def test_filter_family():
    assert stretched_haar_filter(1).m0 == make(0, [SQ, SQ])
    F = stretched_haar_filter(9)
    assert F.N == 2 and F.m0.support == (0, 9)
    assert F.m0.coeff(0) == SQ == F.m0.coeff(9)


@pytest.mark.parametrize("p", [2, 0, -3])
def test_filter_rejects_even_or_nonpositive(p):
    with pytest.raises(ValueError):
        stretched_haar_filter(p)
    with pytest.raises(ValueError):
        fejer_h(p)
    with pytest.raises(ValueError):
        doubling_cycles(p)


def test_fejer_small_cases():
    assert fejer_h(1) == make(0, [1])
    h3 = fejer_h(3)
    assert h3.support == (-2, 2)
    assert_allclose(h3.coeffs, np.array([1, 2, 3, 2, 1]) / 9, atol=1e-15)


@pytest.mark.parametrize("p", [3, 5, 9])
def test_fejer_coefficients_are_box_overlaps(p):
    # Fourier coefficients of Per|phi_hat|^2 are <phi, phi(. - k)> for phi = chi_(0,p)/p
    h = fejer_h(p)
    for k in range(-p, p + 1):
        assert abs(h.coeff(k) - oracles.box_overlap(p, k)) < 1e-13


def test_fejer_closed_form(rng):
    p = 9
    t = rng.uniform(0.05, 2 * np.pi - 0.05, 100)
    ref = np.array([oracles.fejer_closed(p, x) for x in t])
    assert_allclose(evaluate(fejer_h(p), t).real, ref, atol=1e-10)
    assert np.max(np.abs(evaluate(fejer_h(p), t).imag)) < 1e-12


def test_cycles_examples():
    assert doubling_cycles(9).cycles == ((0,), (1, 2, 4, 8, 7, 5), (3, 6))
    assert doubling_cycles(9).to_json_obj() == {"p": 9, "cycles": [[0], [1, 2, 4, 5, 7, 8], [3, 6]]}
    assert doubling_cycles(1).cycles == ((0,),)
    assert doubling_cycles(3).cycles == ((0,), (1, 2))


@pytest.mark.parametrize("p", range(1, 100, 2))
def test_cycles_partition(p):
    dec = doubling_cycles(p)
    flat = [k for c in dec.cycles for k in c]
    assert sorted(flat) == list(range(p))
    for c in dec.cycles:
        assert {2 * k % p for k in c} == set(c)
        # iteration order from the smallest element
        assert c[0] == min(c)
        assert all(c[i + 1] == 2 * c[i] % p for i in range(len(c) - 1))
    assert [sorted(c) for c in dec.cycles] == oracles.orbits_bruteforce(p)


def test_cycle_eigenfunction_examples():
    p = 9
    O1, O2, O3 = doubling_cycles(p).cycles
    assert cycle_eigenfunction(p, O1).allclose(fejer_h(9), 1e-15)
    x = np.linspace(0, 2 * np.pi, 512, endpoint=False)
    x = x[np.abs(np.sin(3 * x / 2)) > 1e-3]
    got = evaluate(cycle_eigenfunction(p, O1) + cycle_eigenfunction(p, O3), x)
    ref = np.sin(9 * x / 2) ** 2 / (9 * np.sin(3 * x / 2) ** 2)
    assert np.max(np.abs(got - ref)) <= 1e-10
    total = sum((cycle_eigenfunction(p, O) for O in (O1, O2, O3)), LaurentPoly.zero())
    assert total.allclose(make(0, [1]), 1e-12)


def test_cycle_eigenfunction_rejects_open_set():
    with pytest.raises(ValueError):
        cycle_eigenfunction(9, [1, 2])


def test_union_of_cycles_is_accepted():
    assert cycle_eigenfunction(9, [0, 3, 6]).allclose(
        cycle_eigenfunction(9, [0]) + cycle_eigenfunction(9, [3, 6]), 1e-15)


@pytest.mark.parametrize("p", ODD)
def test_cycle_eigenfunctions_are_fixed(p):
    F = stretched_haar_filter(p)
    for c in doubling_cycles(p).cycles:
        h = cycle_eigenfunction(p, c)
        assert ruelle_apply(F, F, h).allclose(h, 1e-11)


@pytest.mark.parametrize("p", ODD)
def test_rotations_of_fejer_sum_to_one(p):
    total = sum((rotate(fejer_h(p), root_of_unity(p, k)) for k in range(p)), LaurentPoly.zero())
    assert total.allclose(make(0, [1]), 1e-12)


@pytest.mark.parametrize("p", [3, 5, 7, 9, 15])
def test_zero_sets(p):
    # h_O vanishes at z = rho**(-l), l not in O, i.e. at theta = 2*pi*l/p
    for c in doubling_cycles(p).cycles:
        h = cycle_eigenfunction(p, c)
        for l in range(p):
            val = evaluate(h, 2 * np.pi * l / p)
            if l in c:
                assert abs(val - 1) < 1e-10
            else:
                assert abs(val) <= 1e-10


def _angles(A, B):
    return scipy.linalg.subspace_angles(A, B)


@pytest.mark.parametrize("p", [1, 3, 5, 7, 9])
def test_basis_spans_fixed_space(p):
    fs = fixed_space(lawton_matrix(stretched_haar_filter(p)), 1, 1e-9)
    B = np.column_stack([b.window(-p, p) for b in continuous_eigenbasis(p)])
    assert B.shape[1] == fs.dim == len(doubling_cycles(p))
    assert np.max(_angles(B, fs.vectors)) <= 1e-7


def test_eigenbasis_small_cases():
    (only,) = continuous_eigenbasis(1)
    assert only.allclose(make(0, [1]), 1e-15)
    assert len(continuous_eigenbasis(3)) == 2


def test_p9_basis_matches_closed_forms():
    x = np.linspace(0, 2 * np.pi, 512, endpoint=False)
    x = x[np.abs(np.sin(3 * x / 2)) > 1e-3]
    closed = np.column_stack([
        np.ones_like(x),
        np.sin(9 * x / 2) ** 2 / (9 * np.sin(3 * x / 2) ** 2),
        np.sin(9 * x / 2) ** 2 / (81 * np.sin(x / 2) ** 2),
    ])
    ours = np.column_stack([evaluate(b, x) for b in continuous_eigenbasis(9)])
    # same column space on the sample grid
    assert np.max(_angles(closed, ours)) < 1e-8


@pytest.mark.parametrize("p", range(11, 26, 2))
def test_dimension_equals_cycle_count_beyond_p9(p):
    fs = fixed_space(lawton_matrix(stretched_haar_filter(p)), 1, 1e-9)
    assert fs.dim == len(oracles.orbits_bruteforce(p))
