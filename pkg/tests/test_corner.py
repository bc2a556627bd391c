import itertools
import random

import pytest

from hcstd.coeff import DomainSpec
from hcstd.corner import (INFINITE, WHOLE_RING, HighestCorner, NotFinite,
                          Staircase, highest_corner, is_zero_dimensional,
                          leading_ideal, minimalize_monomials,
                          staircase_std_stats, truncation_bound, vdim)
from hcstd.parse import parse_polynomial
from hcstd.ring import DegreeBound, MonomialBound, OrderSpec

from oracles import ref_highest_corner, ref_min_monomial, ref_vdim

DS2 = OrderSpec("ds", ("x", "y"))
DS3 = OrderSpec("ds", ("x", "y", "z"))
Q = DomainSpec(0)


def S(monomials, order=DS2):
    return Staircase.from_monomials(monomials, order)


# -- minimalization -----------------------------------------------------------


def test_minimalize():
    out = minimalize_monomials([(2, 0), (2, 1), (0, 3), (4, 4), (2, 0)])
    assert sorted(out) == [(0, 3), (2, 0)]


def test_leading_ideal_from_basis():
    f = parse_polynomial("x+y2", Q, DS2)
    g = parse_polynomial("y3", Q, DS2)
    st = leading_ideal([f, g])
    assert sorted(st.gens) == [(0, 3), (1, 0)]


# -- finiteness and dimension -------------------------------------------------


def test_zero_dimensional_basic():
    assert is_zero_dimensional(S([(2, 0), (0, 3)]))
    assert not is_zero_dimensional(S([(1, 1)]))
    assert not is_zero_dimensional(S([(2, 0)]))
    assert is_zero_dimensional(S([(0, 0)]))          # unit ideal


def test_vdim_examples():
    assert vdim(S([(2, 0), (0, 3)])) == 6
    assert vdim(S([(2, 0), (1, 1), (0, 4)])) == 5
    assert vdim(S([(2, 0, 0), (0, 2, 0), (0, 0, 2)], DS3)) == 8
    assert vdim(S([(1, 1)])) is INFINITE


def test_highest_corner_examples():
    assert highest_corner(S([(2, 0), (0, 3)])).monomial == (1, 2)
    assert highest_corner(S([(2, 0), (1, 1), (0, 4)])).monomial == (0, 3)
    assert highest_corner(S([(0, 0)])).whole_ring
    with pytest.raises(NotFinite):
        highest_corner(S([(1, 1)]))


def test_against_bruteforce_random():
    rng = random.Random(5)
    kinds = (("ds", None), ("Ds", None), ("ws", (2, 1, 3)))
    for _ in range(150):
        n = rng.choice((2, 3))
        kind, weights = rng.choice(kinds)
        if weights is not None:
            weights = weights[:n]
        order = OrderSpec(kind, ("x", "y", "z")[:n], weights)
        gens = []
        for i in range(n):                    # pure powers keep it finite
            e = [0] * n
            e[i] = rng.randint(1, 5)
            gens.append(tuple(e))
        for _ in range(rng.randint(0, 3)):    # extra mixed monomials
            gens.append(tuple(rng.randint(0, 4) for _ in range(n)))
        st = Staircase.from_monomials(gens, order)
        want_vdim = ref_vdim(gens, n)
        assert vdim(st) == want_vdim
        want_hc = ref_highest_corner(gens, n, kind, weights)
        got = highest_corner(st)
        assert got.monomial == want_hc
        # staircase membership is divisibility against minimal gens
        count, hc, maxdeg = staircase_std_stats(st.gens, order)
        assert count == want_vdim
        if want_hc is not None:
            assert maxdeg == max(
                sum(m) for m in _ref_std(gens, n))


def _ref_std(gens, n):
    from oracles import ref_std_monomials
    return ref_std_monomials(gens, n)


def test_non_zero_dim_random():
    rng = random.Random(8)
    for _ in range(60):
        n = rng.choice((2, 3))
        # omit the pure power in one axis: never zero-dimensional unless
        # a generator hits (0,...,0)
        gens = [tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(3)]
        gens = [g for g in gens if any(g)]
        skip = rng.randrange(n)
        gens = [g for g in gens
                if not all(e == 0 for j, e in enumerate(g) if j != skip)]
        st = Staircase.from_monomials(gens, OrderSpec("ds", "xyz"[:n]))
        assert ref_vdim(gens, n) is None
        assert vdim(st) is INFINITE
        with pytest.raises(NotFinite):
            highest_corner(st)


# -- truncation bound derivation ----------------------------------------------


def test_truncation_bound_ds_monomial():
    # ds sharpening: keep monomials >= x_n * HC
    hc = HighestCorner((24, 0, 7))
    b = truncation_bound(hc, DS3)
    assert isinstance(b, MonomialBound)
    assert b.monomial == (24, 0, 8)


def test_truncation_bound_Ds_degree():
    order = OrderSpec("Ds", ("x", "y"))
    hc = HighestCorner((1, 2))
    b = truncation_bound(hc, order)
    assert isinstance(b, DegreeBound)
    assert b.degree == 4


def test_truncation_bound_ws_degree():
    order = OrderSpec("ws", ("x", "y"), (1, 1))
    st = Staircase.from_monomials([(2, 0), (0, 3)], order)
    hc = highest_corner(st)
    b = truncation_bound(hc, order, st)
    assert isinstance(b, DegreeBound)
    assert b.degree == 4


def test_truncation_bound_whole_ring():
    from hcstd.ring import NoBound
    assert truncation_bound(WHOLE_RING, DS3) is NoBound


def test_truncation_bound_correct_region_random():
    # every standard monomial must survive the bound: nothing the final
    # basis needs may be cut away
    rng = random.Random(13)
    for _ in range(80):
        n = rng.choice((2, 3))
        order = OrderSpec(rng.choice(("ds", "Ds")), "xyz"[:n])
        gens = []
        for i in range(n):
            e = [0] * n
            e[i] = rng.randint(1, 4)
            gens.append(tuple(e))
        for _ in range(rng.randint(0, 2)):
            gens.append(tuple(rng.randint(0, 3) for _ in range(n)))
        st = Staircase.from_monomials(gens, order)
        hc = highest_corner(st)
        if hc.whole_ring:
            continue
        bound = truncation_bound(hc, order, st)
        std = _ref_std([g for g in st.gens], n)
        for m in std:
            if isinstance(bound, DegreeBound):
                assert sum(m) <= bound.degree
            else:
                assert order.encode(m) >= order.encode(bound.monomial)
