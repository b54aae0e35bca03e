import io
from itertools import product

import pytest
from hypothesis import given, strategies as st

from collatz_sufficiency.arith import t_step
from collatz_sufficiency.parity import (
    bit_complement,
    discrete_derivative,
    h_mk_mod,
    h_preimage,
    h_table,
    mk_map,
    omega_mod,
    omega_table,
    parity_vector,
    phi_mod,
)


@pytest.mark.parametrize("n", range(1, 9))
def test_phi_inverts_parity_vector_by_exhaustive_search(n):
    # oracle: scan all residues for the one with the requested parities
    by_bits = {}
    for x in range(1 << n):
        by_bits.setdefault(parity_vector(x, n), []).append(x)
    assert all(len(v) == 1 for v in by_bits.values())
    for bits in product((0, 1), repeat=n):
        assert phi_mod(bits) == by_bits[bits][0]


@given(st.integers(-10 ** 9, 10 ** 9), st.integers(1, 30))
def test_parity_vector_depends_on_residue_only(x, n):
    assert parity_vector(x, n) == parity_vector(x % (1 << n) + (5 << n), n)


@given(st.integers(1, 10 ** 9), st.integers(1, 30))
def test_parity_vector_matches_orbit(x, n):
    y, bits = x, []
    for _ in range(n):
        bits.append(y & 1)
        y = t_step(y)
    assert parity_vector(x, n) == tuple(bits)


def test_bit_maps():
    assert bit_complement((1, 0, 0, 1)) == (0, 1, 1, 0)
    assert discrete_derivative((1, 1, 0, 1)) == (0, 1, 1)
    assert mk_map((1, 1, 0, 1), 3) == (0, 0)
    with pytest.raises(ValueError):
        mk_map((1, 0), 3)
    with pytest.raises(ValueError):
        mk_map((1, 0, 1), 1)


@pytest.mark.parametrize("n", range(1, 11))
def test_omega_is_parity_flipping_involution(n):
    t = omega_table(n)
    assert t.is_involution()
    assert all((x ^ t(x)) & 1 for x in range(1 << n))


@pytest.mark.parametrize("n", range(2, 10))
def test_omega_swaps_branches(n):
    # T(Omega(x)) and Omega(T(x)) agree mod 2^(n-1)
    low = 1 << (n - 1)
    for x in range(1 << n):
        assert t_step(omega_mod(x, n)) % low == omega_mod(t_step(x), n - 1)


def test_omega_named_values():
    assert omega_mod(1, 4) == 2
    assert omega_mod(3, 4) == 12
    assert omega_mod(0, 5) == 31


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 6) for k in range(2, 5)])
def test_h_fibers_have_equal_size(n, k):
    fibers = h_table(n, k).fibers()
    assert sorted(fibers) == list(range(1 << n))
    assert {len(v) for v in fibers.values()} == {1 << (k - 1)}


@pytest.mark.parametrize("n,k", [(2, 2), (3, 2), (3, 3), (4, 2), (4, 4)])
def test_h_commutes_with_t(n, k):
    src = n + k - 1
    for x in range(1 << (src + 1)):
        # the parity vector mod 2^(src+1) fixes T(x) mod 2^src
        left = h_mk_mod(t_step(x), n, k) if n > 0 else 0
        right = h_mk_mod(x, n + 1, k)
        assert t_step(right) % (1 << n) == left


def test_h_two_is_blind_to_omega():
    for n in range(2, 9):
        t = omega_table(n)
        assert all(h_mk_mod(x, n - 1, 2) == h_mk_mod(t(x), n - 1, 2) for x in range(1 << n))


def test_h_preimage_small():
    assert h_preimage([2], 2, 2) == [3, 4]
    assert h_preimage([1], 2, 2) == [5, 6]
    assert h_preimage([3, 4], 3, 2) == [7, 8, 9, 10]


def test_csv_export():
    buf = io.StringIO()
    omega_table(2).write_csv(buf)
    assert buf.getvalue().splitlines() == ["input,output", "0,3", "1,2", "2,1", "3,0"]
