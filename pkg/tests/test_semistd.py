import pytest

from hcstd.coeff import (MAX_CHAR, DomainSpec, SpecializationFailure,
                         SpecializationPoint, is_prime)
from hcstd.corner import INFINITE, highest_corner
from hcstd.parse import format_polynomial, parse_polynomial
from hcstd.ring import IdealPresentation, NoBound, OrderSpec, jacobian_ideal
from hcstd.semistd import (FIXED_PRIMES, AlgorithmConfig, ExhaustedRetries,
                           NotZeroDimensional, choose_specialization,
                           exact_basis, hc_std, milnor, specialize_ideal,
                           tjurina)

Q = DomainSpec(0)
QT = DomainSpec(0, ("t",))
F5 = DomainSpec(5)
F7 = DomainSpec(7)
F5T = DomainSpec(5, ("t",))
DS1 = OrderSpec("ds", ("x",))
DS2 = OrderSpec("ds", ("x", "y"))


def ideal(dom, order, *texts):
    return IdealPresentation(dom, order,
                             tuple(parse_polynomial(t, dom, order)
                                   for t in texts))


def basis_strings(sb):
    return [format_polynomial(g) for g in sb]


# -- choosing the residue field ------------------------------------------------


def test_choose_first_attempt_defaults():
    assert choose_specialization(Q, 0) == SpecializationPoint(32003, None)
    assert choose_specialization(QT, 0) == SpecializationPoint(32003, (1,))


def test_choose_walks_the_fixed_primes():
    for k in range(1, len(FIXED_PRIMES)):
        assert choose_specialization(Q, k).prime == FIXED_PRIMES[k]


def test_choose_seeded_primes_after_the_list():
    seen = {choose_specialization(Q, k).prime for k in range(12)}
    assert len(seen) == 12                      # never repeats
    for p in seen:
        assert is_prime(p) and p < MAX_CHAR
    # deterministic in the seed
    assert (choose_specialization(Q, 9, seed=5)
            == choose_specialization(Q, 9, seed=5))
    assert (choose_specialization(Q, 9, seed=5)
            != choose_specialization(Q, 9, seed=6))


def test_choose_points_never_repeat():
    pts = [choose_specialization(QT, k).point for k in range(8)]
    assert pts[0] == (1,)
    assert len(set(pts)) == 8
    assert all(len(p) == 1 for p in pts)


def test_choose_override_first_attempt_only():
    ov = SpecializationPoint(101, None)
    assert choose_specialization(Q, 0, user_override=ov).prime == 101
    # later attempts return to the fixed walk, skipping nothing used
    assert choose_specialization(Q, 1, user_override=ov).prime == 32003
    ovt = SpecializationPoint(101, (3,))
    assert choose_specialization(QT, 0, user_override=ovt) \
        == SpecializationPoint(101, (3,))


def test_choose_override_validation():
    with pytest.raises(ValueError):
        choose_specialization(Q, 0, user_override=SpecializationPoint(15, None))
    with pytest.raises(ValueError):
        choose_specialization(
            Q, 0, user_override=SpecializationPoint(MAX_CHAR + 1, None))
    with pytest.raises(ValueError):
        choose_specialization(
            QT, 0, user_override=SpecializationPoint(101, (1, 2)))


def test_choose_nothing_to_specialize():
    assert choose_specialization(F7, 0) == SpecializationPoint(None, None)
    assert choose_specialization(F7, 3) == SpecializationPoint(None, None)


def test_choose_point_only_for_fpt():
    pt = choose_specialization(F5T, 0)
    assert pt.prime is None and pt.point == (1,)


def test_choose_exhausted():
    with pytest.raises(ExhaustedRetries):
        choose_specialization(Q, 3, max_attempts=2)
    with pytest.raises(ValueError):
        choose_specialization(Q, -1)


# -- specializing an ideal -----------------------------------------------------


def test_specialize_drops_terms_and_generators():
    S = ideal(Q, DS2, "5x-x2", "y")
    Sp = specialize_ideal(S, SpecializationPoint(5, None))
    assert Sp.domain == F5
    assert basis_strings(Sp.gens) == ["4*x^2", "y"]    # -1 = 4 mod 5
    # a generator that dies entirely is dropped
    S2 = ideal(Q, DS2, "5x+5y")
    assert specialize_ideal(S2, SpecializationPoint(5, None)).gens == ()


def test_specialize_fraction_coefficient():
    S = ideal(Q, DS2, "x/2")
    Sp = specialize_ideal(S, SpecializationPoint(5, None))
    assert basis_strings(Sp.gens) == ["3*x"]    # 1/2 = 3 mod 5


def test_specialize_failure_propagates():
    S = ideal(Q, DS2, "x/5", "y")
    with pytest.raises(SpecializationFailure):
        specialize_ideal(S, SpecializationPoint(5, None))
    St = ideal(QT, DS2, "1/(t-1)*x", "y")
    with pytest.raises(SpecializationFailure):
        specialize_ideal(St, SpecializationPoint(32003, (1,)))


# -- the full pipeline ---------------------------------------------------------


def test_engineered_bad_prime_then_retry():
    # I = (x(5-x), y) = (x, y) locally, d0 = 1; mod 5 the first lead
    # degenerates to x^2, dp = 2 — the mismatch forces a retry
    S = ideal(Q, DS2, "5x-x2", "y")
    rep = hc_std(S, AlgorithmConfig(prime=5))
    assert [a.outcome for a in rep.points_tried] == ["dimension_mismatch", "ok"]
    assert rep.points_tried[0].point == SpecializationPoint(5, None)
    assert rep.points_tried[0].dp == 2
    assert rep.points_tried[0].d0 == 1
    assert rep.points_tried[1].point == SpecializationPoint(32003, None)
    assert rep.d0 == rep.dp == 1 and rep.vdim == 1
    assert not rep.fallback
    assert basis_strings(rep.basis) == ["x", "y"]
    # verified runs: the reported corner is the corner of the result
    assert rep.hc == highest_corner(rep.staircase)


def test_engineered_bad_prime_exhausts_budget():
    S = ideal(Q, DS2, "5x-x2", "y")
    rep = hc_std(S, AlgorithmConfig(prime=5, max_retries=0))
    assert [a.outcome for a in rep.points_tried] == ["dimension_mismatch"]
    assert rep.fallback
    assert rep.dp is None and rep.hc is None
    assert rep.bound is NoBound
    assert rep.d0 == 1
    assert basis_strings(rep.basis) == ["x", "y"]


def test_modular_ideal_not_zero_dimensional():
    # mod 5 the lead of y-5x degenerates and the ideal collapses to (y),
    # which is positive-dimensional; over Q it is (x - y/5, y^2), d0 = 2
    S = ideal(Q, DS2, "y-5x", "x*y")
    rep = hc_std(S, AlgorithmConfig(prime=5))
    assert [a.outcome for a in rep.points_tried] \
        == ["modular_not_zero_dimensional", "ok"]
    assert rep.points_tried[0].dp is INFINITE
    assert rep.d0 == rep.dp == 2


def test_mismatch_with_bigger_modular_dimension():
    # at p = 5 the lead of 5x-x^3 sinks to x^3: dp = vdim(x^3, y) = 3,
    # while over Q the ideal is (x, y) with d0 = 1
    S = ideal(Q, DS2, "5x-x3", "y")
    rep = hc_std(S, AlgorithmConfig(prime=5))
    assert [a.outcome for a in rep.points_tried] == ["dimension_mismatch", "ok"]
    assert rep.points_tried[0].dp == 3
    assert rep.points_tried[0].d0 == 1
    assert rep.d0 == rep.dp == 1


def test_prime_field_direct_path():
    S = ideal(F7, DS2, "x2+y3", "y4")
    rep = hc_std(S)
    assert rep.points_tried == ()
    assert not rep.fallback
    assert rep.d0 == rep.dp == 8                 # vdim(x^2, y^4)
    assert rep.hc.monomial == (1, 3)
    assert basis_strings(rep.basis) == ["x^2+y^3", "y^4"]


def test_no_truncate_goes_straight_to_honest_run():
    S = ideal(Q, DS2, "5x-x2", "y")
    rep = hc_std(S, AlgorithmConfig(truncate=False))
    assert rep.fallback
    assert rep.points_tried == ()
    assert rep.dp is None and rep.hc is None
    assert rep.d0 == 1


def test_param_field_pipeline():
    S = ideal(QT, DS2, "t*x2+x3", "y2-t*y3")
    rep = hc_std(S)
    assert [a.outcome for a in rep.points_tried] == ["ok"]
    assert rep.points_tried[0].point == SpecializationPoint(32003, (1,))
    assert rep.d0 == rep.dp == 4
    assert [g.lm() for g in rep.basis] == [(2, 0), (0, 2)]


def test_probe_cap_falls_back_to_honest_modular_run():
    # the corner sits at degree 199, past the default probe cap, so the
    # probe's unbounded branch must carry the attempt
    S = ideal(Q, DS1, "x200+x201")
    rep = hc_std(S)
    assert rep.d0 == rep.dp == 200
    assert rep.hc.monomial == (199,)
    assert not rep.fallback


def test_certificate_retry_path():
    # corner y^8 has degree 8 > initial trial degree 7: the first
    # certificate fails and the probe must re-run deeper
    S = ideal(Q, DS2, "x2-y5", "x*y4")
    rep = hc_std(S)
    assert rep.d0 == rep.dp == 13
    assert rep.hc.monomial == (0, 8)
    assert [g.lm() for g in rep.basis] == [(2, 0), (1, 4), (0, 9)]
    assert exact_basis(S).elements == rep.basis.elements


def test_not_zero_dimensional_raises():
    S = ideal(Q, DS2, "x*y")
    with pytest.raises(NotZeroDimensional):
        hc_std(S, AlgorithmConfig(max_retries=1))
    with pytest.raises(NotZeroDimensional):
        hc_std(S, AlgorithmConfig(truncate=False))


def test_semicontinuity_on_small_primes():
    # d0 <= dp at every prime; strict exactly at the engineered p = 5
    S = ideal(Q, DS2, "5x-x2", "y")
    for p in (2, 3, 5, 7, 11, 13):
        rep = hc_std(S, AlgorithmConfig(prime=p, max_retries=0))
        if p == 5:
            assert rep.fallback
            assert rep.points_tried[0].dp == 2
            assert rep.points_tried[0].d0 == 1
        else:
            assert not rep.fallback
            assert rep.d0 == rep.dp == 1


def test_milnor_and_tjurina():
    F = parse_polynomial("x3+y3", Q, DS2)
    assert milnor(F) == 4                        # (3-1)(3-1)
    assert tjurina(F) == 4                       # quasihomogeneous
    assert milnor(parse_polynomial("x3+y4", Q, DS2)) == 6


def test_exact_basis_matches_pipeline():
    S = ideal(Q, DS2, "x2+y3+x*y2", "y4-x3")
    rep = hc_std(S)
    assert rep.d0 == rep.dp
    assert exact_basis(S).elements == rep.basis.elements


def test_report_is_deterministic():
    S = ideal(Q, DS2, "x2+y3+x*y2", "y4-x3")
    r1 = hc_std(S)
    r2 = hc_std(S)
    assert r1.basis.elements == r2.basis.elements
    assert r1.points_tried == r2.points_tried
    assert (r1.d0, r1.dp, r1.hc) == (r2.d0, r2.dp, r2.hc)


def test_timings_are_recorded():
    S = ideal(Q, DS2, "x2", "y2")
    rep = hc_std(S)
    assert set(rep.timings_ms) == {"probe", "bound", "main", "verify"}
    assert rep.timings_ms["probe"] > 0
    assert rep.timings_ms["main"] > 0
