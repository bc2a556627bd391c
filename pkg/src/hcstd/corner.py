"""Staircases of leading ideals: dimension counts, the highest corner,
and the truncation bounds derived from it.

The highest corner of a zero-dimensional ideal is the order-smallest
monomial outside the leading ideal.  Everything order-below it lies in
the ideal, which is what licenses cutting deep terms away during a
standard basis computation; this module derives the actual cut:

* ds ordering:  drop monomials strictly below x_n * corner;
* Ds ordering:  drop monomials of total degree > deg(corner) + 1;
* ws ordering:  drop monomials of total degree > max standard-monomial
                degree + 1 (the least degree bound that is provably
                inside the ideal).

Monomial bounds are sharper than degree bounds but only valid for ds,
where the order refines total degree with a reverse-lexicographic tie
on the last variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .ring import (DegreeBound, MonomialBound, NoBound, OrderSpec,
                   monomial_divides)

INFINITE = math.inf


class NotFinite(Exception):
    """Raised when an operation needs a zero-dimensional staircase."""


# ---------------------------------------------------------------------------
# Low-level helpers on plain generator collections (no Staircase object),
# shared with the basis kernel.
# ---------------------------------------------------------------------------


def minimalize_monomials(monomials):
    """Keep only the divisibility-minimal monomials (staircase corners)."""
    ms = list(dict.fromkeys(monomials))
    return [m for m in ms
            if not any(o != m and monomial_divides(o, m) for o in ms)]


def staircase_is_zero_dimensional(gens, n: int) -> bool:
    """True iff every variable has a pure power among the generators
    (the unit ideal counts: no standard monomials at all)."""
    gens = list(gens)
    if any(not any(g) for g in gens):
        return True
    for i in range(n):
        if not any(g[i] and all(g[j] == 0 for j in range(n) if j != i)
                   for g in gens):
            return False
    return bool(gens)


def _pure_power_box(gens, n: int):
    """Per-variable exclusive bounds b_i (x_i^{b_i} in the ideal)."""
    box = [None] * n
    for g in gens:
        for i in range(n):
            if g[i] and all(g[j] == 0 for j in range(n) if j != i):
                if box[i] is None or g[i] < box[i]:
                    box[i] = g[i]
    return box


def staircase_std_stats(gens, order: OrderSpec):
    """Scan the standard monomials of a zero-dimensional staircase.

    Returns (count, corner_exps_or_None, max_total_degree).  The corner
    is None exactly when there are no standard monomials (unit ideal).
    Membership in the staircase ideal is propagated cell-by-cell through
    the pure-power box, so the scan is linear in the box volume.
    """
    n = order.n
    gens = list(gens)
    if any(not any(g) for g in gens):
        return 0, None, 0          # unit ideal: no standard monomials
    box = _pure_power_box(gens, n)
    if any(b is None for b in box):
        raise NotFinite("staircase has no pure power in some variable")
    genset = {g for g in gens if all(g[i] < box[i] for i in range(n))}
    strides = [0] * n
    acc = 1
    for i in range(n - 1, -1, -1):
        strides[i] = acc
        acc *= box[i]
    total = acc
    inside = bytearray(total)
    count = 0
    maxdeg = -1
    hc = None
    hc_key = None
    encode = order.encode
    idx = 0
    for m in product(*(range(b) for b in box)):
        if m in genset:
            inside[idx] = 1
        else:
            for i in range(n):
                if m[i] and inside[idx - strides[i]]:
                    inside[idx] = 1
                    break
        if not inside[idx]:
            count += 1
            d = sum(m)
            if d > maxdeg:
                maxdeg = d
            k = encode(m)
            if hc_key is None or k < hc_key:
                hc_key, hc = k, m
        idx += 1
    return count, hc, maxdeg


def staircase_min_std_monomial(gens, order: OrderSpec):
    """Order-smallest standard monomial; None for the unit ideal."""
    _, hc, _ = staircase_std_stats(gens, order)
    return hc


# ---------------------------------------------------------------------------
# Public types.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Staircase:
    """Minimal monomial generators of a leading ideal."""

    order: OrderSpec
    gens: tuple

    @classmethod
    def from_monomials(cls, monomials, order: OrderSpec) -> "Staircase":
        minimal = minimalize_monomials(monomials)
        return cls(order, tuple(sorted(minimal, key=order.encode,
                                       reverse=True)))

    @property
    def n(self) -> int:
        return self.order.n

    def contains(self, monomial) -> bool:
        """Whether the monomial lies in the staircase (leading) ideal."""
        return any(monomial_divides(g, monomial) for g in self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)


@dataclass(frozen=True)
class HighestCorner:
    """The order-smallest standard monomial, or the whole-ring marker
    (monomial None) when there are no standard monomials at all."""

    monomial: tuple | None

    @property
    def whole_ring(self) -> bool:
        return self.monomial is None


WHOLE_RING = HighestCorner(None)


# ---------------------------------------------------------------------------
# Public operations.
# ---------------------------------------------------------------------------


def leading_ideal(G, order: OrderSpec | None = None) -> Staircase:
    """Staircase generated by the leading monomials of a basis."""
    elements = list(G)
    if not elements:
        raise ValueError("leading ideal of an empty basis")
    if order is None:
        order = getattr(G, "order", None) or elements[0].order
    lms = [g.lm() for g in elements if not g.is_zero()]
    if not lms:
        raise ValueError("leading ideal needs a nonzero element")
    return Staircase.from_monomials(lms, order)


def is_zero_dimensional(st: Staircase) -> bool:
    return staircase_is_zero_dimensional(st.gens, st.n)


def vdim(st: Staircase):
    """Number of standard monomials, or INFINITE."""
    if not is_zero_dimensional(st):
        return INFINITE
    count, _, _ = staircase_std_stats(st.gens, st.order)
    return count


def highest_corner(st: Staircase, order: OrderSpec | None = None) -> HighestCorner:
    """The highest corner of a zero-dimensional staircase (raises
    NotFinite otherwise); WHOLE_RING when the ideal is everything."""
    order = order or st.order
    if not staircase_is_zero_dimensional(st.gens, order.n):
        raise NotFinite("highest corner requires a zero-dimensional ideal")
    _, hc, _ = staircase_std_stats(st.gens, order)
    return WHOLE_RING if hc is None else HighestCorner(hc)


def truncation_bound(hc: HighestCorner, order: OrderSpec,
                     st: Staircase | None = None):
    """The term cut justified by a highest corner.

    ds gets the sharp monomial cut (drop below x_n * corner); Ds gets the
    degree cut deg(corner)+1; ws gets the least total-degree cut d such
    that every monomial of degree >= d is weighted-below the corner,
    found as 1 + the largest standard-monomial total degree.  With the
    whole-ring marker there is nothing to anchor a cut: NoBound.
    """
    if hc.whole_ring:
        return NoBound
    m = hc.monomial
    if order.kind == "ds":
        n = order.n
        shifted = m[:n - 1] + (m[n - 1] + 1,)
        return MonomialBound(shifted)
    if order.kind == "Ds":
        return DegreeBound(sum(m) + 1)
    if st is None:
        raise ValueError("the ws bound needs the staircase")
    _, _, maxdeg = staircase_std_stats(st.gens, order)
    return DegreeBound(maxdeg + 1)
