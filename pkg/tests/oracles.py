"""Slow, independent reference implementations.

Every nontrivial expected value frozen into the test suite was computed
by one of these brute-force routines (or checked against it in a
property loop).  They share no code with the package internals: ordering
comparison works directly on exponent vectors, staircase enumeration
walks the whole bounding box, and polynomial arithmetic uses plain
dict-of-Fraction maps.
"""

import itertools
from fractions import Fraction
from functools import cmp_to_key


# -- monomial orderings ------------------------------------------------------


def ref_compare(kind, a, b, weights=None):
    """1 if a > b under the ordering, -1 if a < b, 0 if equal."""
    if kind == "ws":
        da = sum(w * e for w, e in zip(weights, a))
        db = sum(w * e for w, e in zip(weights, b))
    else:
        da, db = sum(a), sum(b)
    if da != db:
        return 1 if da < db else -1          # local: smaller degree is bigger
    diff = [x - y for x, y in zip(a, b)]
    if not any(diff):
        return 0
    if kind == "Ds":
        first = next(d for d in diff if d)
        return 1 if first > 0 else -1        # lex tie-break
    last = next(d for d in reversed(diff) if d)
    return 1 if last < 0 else -1             # reverse-lex tie-break


def ref_sort_key(kind, weights=None):
    return cmp_to_key(lambda a, b: ref_compare(kind, a, b, weights))


def ref_min_monomial(monomials, kind, weights=None):
    return min(monomials, key=ref_sort_key(kind, weights))


# -- staircases --------------------------------------------------------------


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def ref_std_monomials(gens, n):
    """All monomials outside the staircase ideal, or None when there are
    infinitely many.  Enumerates the box below the minimal pure powers."""
    gens = list(gens)
    caps = []
    for i in range(n):
        pure = [g[i] for g in gens
                if all(e == 0 for j, e in enumerate(g) if j != i)]
        if not pure:
            # no pure power in x_i: x_i^k is standard for every k unless
            # the unit monomial generates everything
            if any(not any(g) for g in gens):
                return []
            return None
        caps.append(min(pure))
    out = []
    for exps in itertools.product(*(range(c) for c in caps)):
        if not any(divides(g, exps) for g in gens):
            out.append(exps)
    return out


def ref_vdim(gens, n):
    std = ref_std_monomials(gens, n)
    return None if std is None else len(std)


def ref_highest_corner(gens, n, kind, weights=None):
    """Order-smallest standard monomial; None when the staircase is not
    zero-dimensional or has no standard monomials."""
    std = ref_std_monomials(gens, n)
    if not std:
        return None
    return ref_min_monomial(std, kind, weights)


# -- dense rational polynomial arithmetic ------------------------------------


def dpoly(pairs):
    """dict monomial -> Fraction, zeros dropped."""
    out = {}
    for m, c in pairs:
        c = Fraction(c) + out.get(m, 0)
        if c:
            out[m] = c
        elif m in out:
            del out[m]
    return out


def dadd(f, g):
    return dpoly(list(f.items()) + list(g.items()))


def dscale(f, c, shift=None):
    c = Fraction(c)
    if not c:
        return {}
    n = None if shift is None else len(shift)
    return {m if shift is None else tuple(x + y for x, y in zip(m, shift)): v * c
            for m, v in f.items()}


def dmul(f, g):
    out = {}
    for mf, cf in f.items():
        for mg, cg in g.items():
            m = tuple(x + y for x, y in zip(mf, mg))
            c = out.get(m, Fraction(0)) + cf * cg
            if c:
                out[m] = c
            elif m in out:
                del out[m]
    return out


def as_dpoly(poly):
    """Package polynomial -> dict of Fraction (characteristic 0 only)."""
    return {t.monomial: Fraction(t.coefficient.val) for t in poly.terms}
