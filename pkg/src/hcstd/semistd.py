"""The semicontinuity-driven standard basis algorithm.

Pipeline for an ideal over Q or over a rational-function field: pick a
residue field (a prime, a parameter point, or both), compute the
specialized standard basis there, read off its dimension dp and highest
corner, derive a truncation bound from the corner, run the
characteristic-0 computation under that bound, and accept iff the
truncated dimension d0 equals dp.  Semicontinuity makes d0 <= dp
automatic and equality a proof that the truncation lost nothing; a
mismatch means the specialization was unlucky, so another point is
tried, and after the retry budget the computation falls back to an
honest untruncated run.

The modular probe itself is adaptively self-truncating: it runs with a
trial degree bound D and accepts when the resulting corner m satisfies
(D+1)*min_w >= wdeg(m) + max_w + 1.  That inequality certifies the
bounded result equals the unbounded one: were some degree-(D+1) monomial
q outside the ideal, q/x_i would be a standard monomial of degree D,
forcing the corner's weighted degree within max_w of wdeg(q) and
contradicting the inequality.  Failing the test, D grows and the probe
repeats; past a cap it falls back to an honest unbounded run.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .coeff import (MAX_CHAR, DomainSpec, Scalar, SpecializationFailure,
                    SpecializationPoint, clear_denominators, is_prime,
                    specialization_target, specialize_scalar)
from .corner import (INFINITE, WHOLE_RING, HighestCorner, NotFinite,
                     Staircase, highest_corner, leading_ideal,
                     staircase_is_zero_dimensional, staircase_std_stats,
                     truncation_bound, vdim)
from .mora import StandardBasis, standard_basis
from .ring import (DegreeBound, IdealPresentation, NoBound, OrderSpec,
                   Polynomial, jacobian_ideal)


class NotZeroDimensional(Exception):
    """The characteristic-0 ideal is not zero-dimensional."""


class ExhaustedRetries(Exception):
    """choose_specialization was asked for attempts past the maximum."""


FIXED_PRIMES = (32003, 320039, 1000003, 2147483629, 7, 65537)

_POINT_RANGE = 50  # later parameter points drawn uniformly from [-50, 50]


# ---------------------------------------------------------------------------
# Configuration and reporting.
# ---------------------------------------------------------------------------


@dataclass
class AlgorithmConfig:
    seed: int = 100
    max_retries: int = 5
    prime: int | None = None           # user override for attempt 0
    point: tuple | None = None         # user override for attempt 0
    timeout: float | None = None       # overall wall-clock budget, seconds
    truncate: bool = True              # False: straight to the honest run
    pair_first: str = "order_min"      # pair-selection strategy
    probe_degree_cap: int = 192        # adaptive probe gives up past this


@dataclass(frozen=True)
class AttemptRecord:
    point: SpecializationPoint
    outcome: str                       # ok | specialization_failed |
                                       # modular_not_zero_dimensional |
                                       # dimension_mismatch
    dp: object = None                  # int, INFINITE, or None
    d0: int | None = None


@dataclass(frozen=True)
class AlgorithmReport:
    basis: StandardBasis
    staircase: Staircase
    d0: int
    dp: int | None
    hc: HighestCorner | None           # modular corner that drove the bound
    bound: object
    points_tried: tuple
    fallback: bool
    timings_ms: dict

    @property
    def vdim(self) -> int:
        return self.d0


# ---------------------------------------------------------------------------
# Specialization choices.
# ---------------------------------------------------------------------------


def _next_prime(start: int, used) -> int:
    c = start | 1
    while True:
        if c >= MAX_CHAR:
            c = 100003
        if c not in used and is_prime(c):
            return c
        c += 2


def choose_specialization(domain: DomainSpec, attempt: int, seed: int = 100,
                          user_override: SpecializationPoint | None = None,
                          max_attempts: int | None = None) -> SpecializationPoint:
    """Deterministic residue-field choice for the given attempt number.

    Attempt 0 honors the user override, defaulting to p = 32003 and the
    all-ones parameter point.  Later attempts walk a fixed prime list and
    then seeded pseudo-random primes / integer points, never repeating an
    earlier choice.
    """
    if attempt < 0:
        raise ValueError("attempt must be nonnegative")
    if max_attempts is not None and attempt > max_attempts:
        raise ExhaustedRetries(f"attempt {attempt} exceeds {max_attempts}")
    needs_prime = domain.char == 0
    needs_point = domain.has_params
    if not needs_prime and not needs_point:
        return SpecializationPoint()
    if user_override is not None and user_override.prime is not None:
        if not is_prime(user_override.prime) or user_override.prime >= MAX_CHAR:
            raise ValueError(f"override prime {user_override.prime} is not a "
                             f"prime below 2^31")
    if user_override is not None and user_override.point is not None \
            and len(user_override.point) != domain.npar:
        raise ValueError("override point has wrong arity")
    s = domain.npar
    prng = random.Random(1_000_003 * seed + 12345)
    trng = random.Random(1_000_003 * seed + 54321)
    prime = None
    point = None
    used_p = set()
    used_t = set()
    for k in range(attempt + 1):
        if needs_prime:
            if k == 0:
                prime = (user_override.prime
                         if user_override and user_override.prime is not None
                         else 32003)
            else:
                prime = next((q for q in FIXED_PRIMES if q not in used_p), None)
                if prime is None:
                    prime = _next_prime(prng.randrange(100_003, MAX_CHAR - 1),
                                        used_p)
            used_p.add(prime)
        if needs_point:
            if k == 0:
                point = (tuple(user_override.point)
                         if user_override and user_override.point is not None
                         else (1,) * s)
            else:
                point = (1,) * s
                while point in used_t:
                    point = tuple(trng.randint(-_POINT_RANGE, _POINT_RANGE)
                                  for _ in range(s))
            used_t.add(point)
    return SpecializationPoint(prime if needs_prime else None,
                               point if needs_point else None)


def specialize_ideal(S: IdealPresentation,
                     pt: SpecializationPoint) -> IdealPresentation:
    """Map every generator into the residue field at pt, dropping the
    generators (and terms) that vanish.  SpecializationFailure propagates
    from any coefficient whose denominator dies at pt."""
    target = specialization_target(S.domain, pt)
    gens = []
    for g in S.gens:
        keys = []
        coeffs = []
        for k, c in zip(g.keys, g.coeffs):
            v = specialize_scalar(Scalar(S.domain, c), pt).val
            if v:
                keys.append(k)
                coeffs.append(v)
        if keys:
            gens.append(Polynomial(target, S.order, keys, coeffs))
    return IdealPresentation(target, S.order, tuple(gens))


def _cleared(S: IdealPresentation) -> IdealPresentation:
    """Each generator scaled by a unit so its coefficients lie in the base
    ring (Z or a polynomial ring) — the form specialization expects."""
    gens = []
    for g in S.nonzero_gens():
        scs = clear_denominators([Scalar(S.domain, c) for c in g.coeffs])
        gens.append(Polynomial(S.domain, S.order, g.keys,
                               [sc.val for sc in scs]))
    return IdealPresentation(S.domain, S.order, tuple(gens))


# ---------------------------------------------------------------------------
# The adaptive self-certifying probe.
# ---------------------------------------------------------------------------


def _order_weights(order: OrderSpec):
    if order.kind == "ws":
        return min(order.weights), max(order.weights)
    return 1, 1


def _certified_std(S: IdealPresentation, config: AlgorithmConfig, remaining,
                   tail_reduce: bool):
    """Standard basis of S over its own field via adaptive truncation.

    Returns (basis, dim, corner, staircase); dim is INFINITE (with corner
    None) when the ideal turns out not to be zero-dimensional, which only
    the honest unbounded fallback can detect.
    """
    order = S.order
    gens = S.nonzero_gens()
    if not gens:
        return None, INFINITE, None, None
    minw, maxw = _order_weights(order)
    D = max(2, max(g.deg() for g in gens) + 2)
    while D <= config.probe_degree_cap:
        sb = standard_basis(S, DegreeBound(D), deadline_s=remaining(),
                            pair_first=config.pair_first,
                            tail_reduce=tail_reduce)
        st = leading_ideal(sb)
        count, hc, _ = staircase_std_stats(st.gens, order)
        if hc is None:
            return sb, 0, WHOLE_RING, st       # unit ideal, always exact
        whc = order.wdeg(hc)
        if (D + 1) * minw >= whc + maxw + 1:
            return sb, count, HighestCorner(hc), st
        needed = -(-(whc + maxw + 1) // minw) - 1
        D = max(needed, D + D // 2 + 1)
    sb = standard_basis(S, NoBound, deadline_s=remaining(),
                        pair_first=config.pair_first, tail_reduce=tail_reduce)
    st = leading_ideal(sb)
    if not staircase_is_zero_dimensional(st.gens, order.n):
        return sb, INFINITE, None, st
    count, hc, _ = staircase_std_stats(st.gens, order)
    return sb, count, (WHOLE_RING if hc is None else HighestCorner(hc)), st


def exact_basis(S: IdealPresentation, config: AlgorithmConfig | None = None
                ) -> StandardBasis:
    """Certified standard basis of S over its own coefficient field,
    using adaptive truncation internally (provably exact) with an honest
    unbounded fallback."""
    config = config or AlgorithmConfig()
    deadline = _wall_deadline(config)
    sb, _, _, _ = _certified_std(S, config, deadline, tail_reduce=True)
    if sb is None:
        raise ValueError("cannot compute a basis of the zero ideal")
    return sb


def _wall_deadline(config: AlgorithmConfig):
    if config.timeout is None:
        return lambda: None
    at = time.monotonic() + config.timeout
    return lambda: max(at - time.monotonic(), 0.001)


# ---------------------------------------------------------------------------
# The main algorithm.
# ---------------------------------------------------------------------------


def hc_std(S: IdealPresentation, config: AlgorithmConfig | None = None
           ) -> AlgorithmReport:
    """Standard basis of a zero-dimensional ideal with modular-corner
    truncation and dimension verification; see the module docstring.

    Raises NotZeroDimensional when the (fallback) characteristic-0 result
    is not zero-dimensional.
    """
    config = config or AlgorithmConfig()
    remaining = _wall_deadline(config)
    timings = {"probe": 0.0, "bound": 0.0, "main": 0.0, "verify": 0.0}
    dom = S.domain
    order = S.order

    def _report(sb, st, d0, dp, hc, bound, tried, fallback):
        return AlgorithmReport(sb, st, d0, dp, hc, bound, tuple(tried),
                               fallback, timings)

    specializable = dom.char == 0 or dom.has_params
    if not specializable:
        # Already over a prime field: the residue field is the field
        # itself, so the "modular" computation is the final answer.
        t0 = time.perf_counter()
        sb, count, hc, st = _certified_std(S, config, remaining,
                                           tail_reduce=True)
        timings["main"] += (time.perf_counter() - t0) * 1000.0
        if sb is None or count is INFINITE:
            raise NotZeroDimensional("ideal is not zero-dimensional")
        return _report(sb, st, count, count, hc, sb.bound, (), False)

    if not config.truncate:
        t0 = time.perf_counter()
        sb = standard_basis(S, NoBound, deadline_s=remaining(),
                            pair_first=config.pair_first)
        timings["main"] += (time.perf_counter() - t0) * 1000.0
        st = leading_ideal(sb)
        v = vdim(st)
        if v is INFINITE:
            raise NotZeroDimensional("ideal is not zero-dimensional")
        return _report(sb, st, v, None, None, NoBound, (), True)

    S1 = _cleared(S)
    override = None
    if config.prime is not None or config.point is not None:
        override = SpecializationPoint(config.prime, config.point)
    tried = []
    for attempt in range(config.max_retries + 1):
        pt = choose_specialization(dom, attempt, config.seed, override,
                                   max_attempts=config.max_retries)
        t0 = time.perf_counter()
        try:
            Sp = specialize_ideal(S1, pt)
        except SpecializationFailure:
            timings["probe"] += (time.perf_counter() - t0) * 1000.0
            tried.append(AttemptRecord(pt, "specialization_failed"))
            continue
        _, dp, hc_p, st_p = _certified_std(Sp, config, remaining,
                                           tail_reduce=False)
        timings["probe"] += (time.perf_counter() - t0) * 1000.0
        if dp is INFINITE:
            tried.append(AttemptRecord(pt, "modular_not_zero_dimensional",
                                       INFINITE))
            continue
        t0 = time.perf_counter()
        bound = (NoBound if hc_p.whole_ring
                 else truncation_bound(hc_p, order, st_p))
        timings["bound"] += (time.perf_counter() - t0) * 1000.0
        t0 = time.perf_counter()
        sb = standard_basis(S, bound, deadline_s=remaining(),
                            pair_first=config.pair_first)
        timings["main"] += (time.perf_counter() - t0) * 1000.0
        t0 = time.perf_counter()
        st0 = leading_ideal(sb)
        d0 = vdim(st0)
        timings["verify"] += (time.perf_counter() - t0) * 1000.0
        if d0 == dp:
            tried.append(AttemptRecord(pt, "ok", dp, d0))
            return _report(sb, st0, d0, dp, hc_p, bound, tried, False)
        tried.append(AttemptRecord(pt, "dimension_mismatch", dp,
                                   None if d0 is INFINITE else d0))
    # Step 8: honest untruncated fallback.
    t0 = time.perf_counter()
    sb = standard_basis(S, NoBound, deadline_s=remaining(),
                        pair_first=config.pair_first)
    timings["main"] += (time.perf_counter() - t0) * 1000.0
    st = leading_ideal(sb)
    v = vdim(st)
    if v is INFINITE:
        raise NotZeroDimensional("ideal is not zero-dimensional")
    return _report(sb, st, v, None, None, NoBound, tried, True)


def milnor(F: Polynomial, config: AlgorithmConfig | None = None) -> int:
    """Dimension of the Jacobian ideal's quotient (isolated singularity)."""
    return hc_std(jacobian_ideal(F, include_f=False), config).d0


def tjurina(F: Polynomial, config: AlgorithmConfig | None = None) -> int:
    """Like milnor but with F itself adjoined to the Jacobian ideal."""
    return hc_std(jacobian_ideal(F, include_f=True), config).d0
