"""Weak normal forms and standard bases for local orderings.

The normal form is the ecart-driven one: among the reducers whose leading
monomial divides the working lead, pick one of minimal ecart, and when
even that reducer has bigger ecart than the remainder, remember the
remainder itself as a future reducer before using it.  That last twist is
what makes head reduction terminate under a local ordering, where naive
division can descend forever.

Coefficient handling is split per domain:

* F_p       exact field steps on machine ints, reducers kept monic;
* Q         fraction-free integer steps with content stripped as we go,
            so no Fraction churn in the hot loop;
* K(t,..)   the same fraction-free scheme with parameter polynomials as
            the integer-like coefficients.

Truncation (a bound from the corner module) is applied after the
s-polynomial and after every reduction step.  A bounded run computes a
standard basis of the ideal generated by the input plus the monomials
just beyond the bound; those boundary monomials are appended to the
returned basis, so its leading ideal and dimension data speak about that
enlarged ideal.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .coeff import (DomainSpec, RatFun, rp_abs_lead, rp_const, rp_divexact,
                    rp_gcd, rp_int_content, rp_is_zero, rp_lcm, rp_mul,
                    rp_neg, rp_sub, rp_zero)
from .ring import (EXP_CAP, DegreeBound, ExponentOverflow, IdealPresentation,
                   MonomialBound, NoBound, NoBoundType, OrderSpec, Polynomial,
                   bound_cut, monomial_divides, monomial_lcm, truncate_poly)


class NonFinite(Exception):
    """Tail reduction needs a zero-dimensional ideal to terminate."""


class ComputationTimeout(Exception):
    """The configured deadline expired inside the basis computation."""


_SAFE_EXP = 1 << 18  # internal headroom above EXP_CAP before keys corrupt


# ---------------------------------------------------------------------------
# Coefficient kernels.  A kernel polynomial is a list of (key, coeff) pairs
# in strictly descending key order; coefficients are exact ring elements
# (ints for F_p and Q, parameter-polynomial tuples for K(t,..)).
# ---------------------------------------------------------------------------


class _FpArith:
    """Exact arithmetic in F_p; normalized terms are monic."""

    kind = "fp"

    def __init__(self, p: int):
        self.p = p

    def normalize(self, terms):
        lc = terms[0][1]
        if lc == 1:
            return terms
        p = self.p
        inv = pow(lc, p - 2, p)
        return [(k, c * inv % p) for k, c in terms]

    def _merge(self, h, g, delta, cutkey, gkeep):
        """h - lc(h)/lc(g) * x^delta * g; h[0] and shifted g[0] cancel."""
        p = self.p
        c = h[0][1] * pow(g[0][1], p - 2, p) % p
        out = []
        push = out.append
        i, j = 1, 1
        lh, lg = len(h), len(g)
        while i < lh and j < lg:
            kh = h[i][0]
            kg = g[j][0] + delta
            if kh > kg:
                push(h[i]); i += 1
            elif kh < kg:
                if kg >= cutkey and (gkeep is None or gkeep[j]):
                    v = -c * g[j][1] % p
                    if v:
                        push((kg, v))
                j += 1
            else:
                v = (h[i][1] - c * g[j][1]) % p
                if v:
                    push((kh, v))
                i += 1; j += 1
        if i < lh:
            out.extend(h[i:])
        while j < lg:
            kg = g[j][0] + delta
            if kg < cutkey:
                break
            if gkeep is None or gkeep[j]:
                v = -c * g[j][1] % p
                if v:
                    push((kg, v))
            j += 1
        return out

    def reduce_step(self, h, g, delta, cutkey, gkeep=None):
        return self._merge(h, g, delta, cutkey, gkeep)

    def cancel_at(self, h, pos, g, delta, cutkey, gkeep=None):
        """Cancel the term h[pos] against x^delta * g, keeping h[:pos]."""
        return h[:pos] + self._merge(h[pos:], g, delta, cutkey, gkeep)

    def spoly_terms(self, f, df, g, dg, cutkey, fkeep=None, gkeep=None):
        p = self.p
        c = f[0][1] * pow(g[0][1], p - 2, p) % p
        out = []
        push = out.append
        i = j = 1
        lf, lg = len(f), len(g)
        while i < lf and j < lg:
            kf = f[i][0] + df
            kg = g[j][0] + dg
            if kf > kg:
                if kf < cutkey:
                    return out
                if fkeep is None or fkeep[i]:
                    push((kf, f[i][1]))
                i += 1
            elif kf < kg:
                if kg >= cutkey and (gkeep is None or gkeep[j]):
                    v = -c * g[j][1] % p
                    if v:
                        push((kg, v))
                j += 1
            else:
                if kf < cutkey:
                    return out
                if (fkeep is None or fkeep[i]) and (gkeep is None or gkeep[j]):
                    v = (f[i][1] - c * g[j][1]) % p
                    if v:
                        push((kf, v))
                i += 1; j += 1
        while i < lf:
            kf = f[i][0] + df
            if kf < cutkey:
                break
            if fkeep is None or fkeep[i]:
                push((kf, f[i][1]))
            i += 1
        while j < lg:
            kg = g[j][0] + dg
            if kg < cutkey:
                break
            if gkeep is None or gkeep[j]:
                v = -c * g[j][1] % p
                if v:
                    push((kg, v))
            j += 1
        return out

    def to_raw_coeff(self, c):
        return c

    def unit_one(self):
        return 1


class _QArith:
    """Fraction-free integer arithmetic with content stripping."""

    kind = "q"
    p = 0

    def normalize(self, terms):
        g = 0
        for _, c in terms:
            g = math.gcd(g, c)
            if g == 1:
                break
        if terms[0][1] < 0:
            g = -g
        if g == 1:
            return terms
        return [(k, c // g) for k, c in terms]

    def _merge(self, h, g, delta, cutkey, gkeep):
        """a*h - b*x^delta*g with a = lc(g)/d, b = lc(h)/d, d = gcd of lcs.

        The leading terms cancel by construction; the h side is scaled by
        a throughout, so callers must rescale anything they held back.
        """
        lh_c, lg_c = h[0][1], g[0][1]
        d = math.gcd(lh_c, lg_c)
        a = lg_c // d
        b = lh_c // d
        if a < 0:
            a, b = -a, -b
        out = []
        push = out.append
        i, j = 1, 1
        lh, lg = len(h), len(g)
        while i < lh and j < lg:
            kh = h[i][0]
            kg = g[j][0] + delta
            if kh > kg:
                push((kh, a * h[i][1])); i += 1
            elif kh < kg:
                if kg >= cutkey and (gkeep is None or gkeep[j]):
                    push((kg, -b * g[j][1]))
                j += 1
            else:
                v = a * h[i][1] - b * g[j][1]
                if v:
                    push((kh, v))
                i += 1; j += 1
        while i < lh:
            push((h[i][0], a * h[i][1])); i += 1
        while j < lg:
            kg = g[j][0] + delta
            if kg < cutkey:
                break
            if gkeep is None or gkeep[j]:
                push((kg, -b * g[j][1]))
            j += 1
        return out, a

    def reduce_step(self, h, g, delta, cutkey, gkeep=None):
        out, _ = self._merge(h, g, delta, cutkey, gkeep)
        return self.normalize(out) if out else out

    def cancel_at(self, h, pos, g, delta, cutkey, gkeep=None):
        out, a = self._merge(h[pos:], g, delta, cutkey, gkeep)
        whole = [(k, a * c) for k, c in h[:pos]] + out
        return self.normalize(whole) if whole else whole

    def spoly_terms(self, f, df, g, dg, cutkey, fkeep=None, gkeep=None):
        lf_c, lg_c = f[0][1], g[0][1]
        d = math.gcd(lf_c, lg_c)
        a = lg_c // d
        b = lf_c // d
        out = []
        push = out.append
        i = j = 1
        lf, lg = len(f), len(g)
        while i < lf and j < lg:
            kf = f[i][0] + df
            kg = g[j][0] + dg
            if kf > kg:
                if kf < cutkey:
                    return self.normalize(out) if out else out
                if fkeep is None or fkeep[i]:
                    push((kf, a * f[i][1]))
                i += 1
            elif kf < kg:
                if kg >= cutkey and (gkeep is None or gkeep[j]):
                    push((kg, -b * g[j][1]))
                j += 1
            else:
                if kf < cutkey:
                    return self.normalize(out) if out else out
                if (fkeep is None or fkeep[i]) and (gkeep is None or gkeep[j]):
                    v = a * f[i][1] - b * g[j][1]
                    if v:
                        push((kf, v))
                i += 1; j += 1
        while i < lf:
            kf = f[i][0] + df
            if kf < cutkey:
                break
            if fkeep is None or fkeep[i]:
                push((kf, a * f[i][1]))
            i += 1
        while j < lg:
            kg = g[j][0] + dg
            if kg < cutkey:
                break
            if gkeep is None or gkeep[j]:
                push((kg, -b * g[j][1]))
            j += 1
        return self.normalize(out) if out else out

    def to_raw_coeff(self, c):
        return Fraction(c)

    def unit_one(self):
        return 1


class _RfArith:
    """Fraction-free steps over Z[t..] or F_p[t..] coefficients."""

    kind = "rf"

    def __init__(self, p: int, s: int):
        self.p = p
        self.s = s
        self.one = rp_const(1, s)

    def normalize(self, terms):
        p, s = self.p, self.s
        g = rp_zero(s)
        for _, c in terms:
            g = rp_gcd(g, c, p, s)
        if p == 0 and rp_abs_lead(terms[0][1], s) < 0:
            g = rp_neg(g, p, s)
        if g == self.one:
            return terms
        return [(k, rp_divexact(c, g, p, s)) for k, c in terms]

    def _strip_int(self, terms):
        """Cheap partial normalization: integer content only (char 0)."""
        if self.p or not terms:
            return terms
        s = self.s
        ig = 0
        for _, c in terms:
            ig = math.gcd(ig, rp_int_content(c, s))
            if ig == 1:
                return terms
        if ig > 1:
            terms = [(k, _rp_div_int(c, ig, s)) for k, c in terms]
        return terms

    def _merge(self, h, g, delta, cutkey, gkeep):
        p, s = self.p, self.s
        lh_c, lg_c = h[0][1], g[0][1]
        d = rp_gcd(lh_c, lg_c, p, s)
        a = rp_divexact(lg_c, d, p, s)
        b = rp_divexact(lh_c, d, p, s)
        scale_h = a != self.one
        out = []
        push = out.append
        i, j = 1, 1
        lh, lg = len(h), len(g)
        while i < lh and j < lg:
            kh = h[i][0]
            kg = g[j][0] + delta
            if kh > kg:
                push((kh, rp_mul(a, h[i][1], p, s) if scale_h else h[i][1]))
                i += 1
            elif kh < kg:
                if kg >= cutkey and (gkeep is None or gkeep[j]):
                    push((kg, rp_neg(rp_mul(b, g[j][1], p, s), p, s)))
                j += 1
            else:
                va = rp_mul(a, h[i][1], p, s) if scale_h else h[i][1]
                v = rp_sub(va, rp_mul(b, g[j][1], p, s), p, s)
                if not rp_is_zero(v):
                    push((kh, v))
                i += 1; j += 1
        while i < lh:
            push((h[i][0], rp_mul(a, h[i][1], p, s) if scale_h else h[i][1]))
            i += 1
        while j < lg:
            kg = g[j][0] + delta
            if kg < cutkey:
                break
            if gkeep is None or gkeep[j]:
                push((kg, rp_neg(rp_mul(b, g[j][1], p, s), p, s)))
            j += 1
        return out, a

    def reduce_step(self, h, g, delta, cutkey, gkeep=None):
        out, _ = self._merge(h, g, delta, cutkey, gkeep)
        return self._strip_int(out)

    def cancel_at(self, h, pos, g, delta, cutkey, gkeep=None):
        p, s = self.p, self.s
        out, a = self._merge(h[pos:], g, delta, cutkey, gkeep)
        scale = a != self.one
        whole = [(k, rp_mul(a, c, p, s) if scale else c)
                 for k, c in h[:pos]] + out
        return self._strip_int(whole)

    def spoly_terms(self, f, df, g, dg, cutkey, fkeep=None, gkeep=None):
        p, s = self.p, self.s
        lf_c, lg_c = f[0][1], g[0][1]
        d = rp_gcd(lf_c, lg_c, p, s)
        a = rp_divexact(lg_c, d, p, s)
        b = rp_divexact(lf_c, d, p, s)
        out = []
        push = out.append
        i = j = 1
        lf, lg = len(f), len(g)
        while i < lf and j < lg:
            kf = f[i][0] + df
            kg = g[j][0] + dg
            if kf > kg:
                if kf < cutkey:
                    return self._strip_int(out)
                if fkeep is None or fkeep[i]:
                    push((kf, rp_mul(a, f[i][1], p, s)))
                i += 1
            elif kf < kg:
                if kg >= cutkey and (gkeep is None or gkeep[j]):
                    push((kg, rp_neg(rp_mul(b, g[j][1], p, s), p, s)))
                j += 1
            else:
                if kf < cutkey:
                    return self._strip_int(out)
                if (fkeep is None or fkeep[i]) and (gkeep is None or gkeep[j]):
                    v = rp_sub(rp_mul(a, f[i][1], p, s),
                               rp_mul(b, g[j][1], p, s), p, s)
                    if not rp_is_zero(v):
                        push((kf, v))
                i += 1; j += 1
        while i < lf:
            kf = f[i][0] + df
            if kf < cutkey:
                break
            if fkeep is None or fkeep[i]:
                push((kf, rp_mul(a, f[i][1], p, s)))
            i += 1
        while j < lg:
            kg = g[j][0] + dg
            if kg < cutkey:
                break
            if gkeep is None or gkeep[j]:
                push((kg, rp_neg(rp_mul(b, g[j][1], p, s), p, s)))
            j += 1
        return self._strip_int(out)

    def to_raw_coeff(self, c):
        return RatFun(c, self.one, self.p, self.s, _normalized=self.p == 0)

    def unit_one(self):
        return self.one


def _rp_div_int(a, n, s):
    if s == 0:
        return a // n
    return tuple(_rp_div_int(c, n, s - 1) for c in a)


def _arith_for(dom: DomainSpec):
    if dom.params:
        return _RfArith(dom.char, dom.npar)
    if dom.char:
        return _FpArith(dom.char)
    return _QArith()


# ---------------------------------------------------------------------------
# Kernel <-> Polynomial conversion.
# ---------------------------------------------------------------------------


def _to_kernel(f: Polynomial, arith, cutkey, maxdeg):
    """Kernel term list for f: denominators cleared, bound applied."""
    if arith.kind == "fp":
        raw = list(zip(f.keys, f.coeffs))
    elif arith.kind == "q":
        lcm = 1
        for c in f.coeffs:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        raw = [(k, int(c * lcm)) for k, c in zip(f.keys, f.coeffs)]
    else:
        p, s = arith.p, arith.s
        lcm = arith.one
        for c in f.coeffs:
            lcm = rp_lcm(lcm, c.den, p, s)
        raw = [(k, rp_mul(c.num, rp_divexact(lcm, c.den, p, s), p, s))
               for k, c in zip(f.keys, f.coeffs)]
    if cutkey:
        raw = [t for t in raw if t[0] >= cutkey]
    if maxdeg is not None:
        dec = f.order.decode
        raw = [t for t in raw if sum(dec(t[0])) <= maxdeg]
    return raw


def _from_kernel(terms, dom: DomainSpec, order: OrderSpec, arith,
                 monic: bool) -> Polynomial:
    if not terms:
        return Polynomial.zero(dom, order)
    keys = tuple(k for k, _ in terms)
    coeffs = tuple(arith.to_raw_coeff(c) for _, c in terms)
    f = Polynomial(dom, order, keys, coeffs)
    return f.monic() if monic else f


# ---------------------------------------------------------------------------
# Reducer records and the weak normal form.
# ---------------------------------------------------------------------------


class _Red:
    __slots__ = ("key", "exps", "lmdeg", "deg", "ecart", "terms", "maxe",
                 "degs", "idx")

    def __init__(self, terms, order: OrderSpec, idx: int):
        self.terms = terms
        self.idx = idx
        self.key = terms[0][0]
        self.exps = order.decode(self.key)
        self.lmdeg = sum(self.exps)
        self.deg = _terms_deg(terms, order)
        self.ecart = self.deg - self.lmdeg
        maxe = 0
        dec = order.decode
        for k, _ in terms:
            m = max(dec(k))
            if m > maxe:
                maxe = m
        self.maxe = maxe
        self.degs = None  # per-term total degrees, built on demand (ws cut)

    def term_degs(self, order):
        if self.degs is None:
            dec = order.decode
            self.degs = [sum(dec(k)) for k, _ in self.terms]
        return self.degs


def _terms_deg(terms, order: OrderSpec) -> int:
    """Max total degree over a kernel term list."""
    if order.kind != "ws":
        return order.key_deg(terms[-1][0])
    dec = order.decode
    return max(sum(dec(k)) for k, _ in terms)


class _Deadline:
    __slots__ = ("at",)

    def __init__(self, seconds):
        self.at = time.monotonic() + seconds if seconds is not None else None

    def check(self):
        if self.at is not None and time.monotonic() > self.at:
            raise ComputationTimeout("computation exceeded its time budget")


def _weak_nf_kernel(h, reducers, order: OrderSpec, arith, cutkey, maxdeg,
                    deadline):
    """Mora head reduction of the kernel terms h by the reducer list.

    Returns the (possibly empty) irreducible-head remainder.  The first
    argument comes back unchanged (same object) when its head is already
    irreducible, which callers use to preserve the input's scaling.
    """
    T = list(reducers)
    nlocal = 0
    cut = cutkey or 0
    while h:
        deadline.check()
        lmk = h[0][0]
        lme = order.decode(lmk)
        lmdeg = sum(lme)
        best = None
        bkey = None
        for red in T:
            if red.key < lmk or red.lmdeg > lmdeg:
                continue
            re = red.exps
            ok = True
            for a, b in zip(re, lme):
                if a > b:
                    ok = False
                    break
            if ok:
                rkey = (red.ecart, red.key, red.idx)
                if best is None or rkey < bkey:
                    best, bkey = red, rkey
        if best is None:
            return h
        eh = _terms_deg(h, order) - lmdeg
        if best.ecart > eh:
            T.append(_Red(h, order, 10 ** 9 + nlocal))
            nlocal += 1
        if lmdeg - best.lmdeg + best.maxe >= _SAFE_EXP:
            raise ExponentOverflow("reduction exceeds exponent headroom")
        delta = lmk - best.key
        if maxdeg is None:
            h = arith.reduce_step(h, best.terms, delta, cut)
        else:
            limit = maxdeg - (lmdeg - best.lmdeg)
            keep = [dg <= limit for dg in best.term_degs(order)]
            h = arith.reduce_step(h, best.terms, delta, cut, keep)
    return h


def _head_nf_bounded(h, reducers, order: OrderSpec, arith, cutkey, maxdeg,
                     deadline):
    """Head reduction for bounded runs, without the ecart discipline.

    Under a truncation bound the reachable monomials form a finite set
    and every cancellation strictly lowers the lead, so plain repeated
    elimination terminates on its own; no intermediate result ever needs
    to join the reducer set.  That matters over Q and k(t..): the ecart
    rule parks partially reduced elements as extra reducers, and chains
    of reductions by those carry their coefficient growth forward
    multiplicatively.  Preferring short reducers keeps the work close to
    a Gaussian-elimination profile instead.
    """
    cut = cutkey or 0
    while h:
        deadline.check()
        lmk = h[0][0]
        lme = order.decode(lmk)
        lmdeg = sum(lme)
        best = None
        bkey = None
        for red in reducers:
            if red.key < lmk or red.lmdeg > lmdeg:
                continue
            re = red.exps
            ok = True
            for a, b in zip(re, lme):
                if a > b:
                    ok = False
                    break
            if ok:
                rkey = (len(red.terms), red.idx)
                if best is None or rkey < bkey:
                    best, bkey = red, rkey
        if best is None:
            return h
        if lmdeg - best.lmdeg + best.maxe >= _SAFE_EXP:
            raise ExponentOverflow("reduction exceeds exponent headroom")
        delta = lmk - best.key
        if maxdeg is None:
            h = arith.reduce_step(h, best.terms, delta, cut)
        else:
            limit = maxdeg - (lmdeg - best.lmdeg)
            keep = [dg <= limit for dg in best.term_degs(order)]
            h = arith.reduce_step(h, best.terms, delta, cut, keep)
    return h


def _interreduce_tail(terms, reducers, order: OrderSpec, arith, cutkey,
                      maxdeg, deadline):
    """Cancel every tail term whose monomial lies in the leading ideal of
    the reducer list (bounded runs only).

    The reducer list may include the element itself: canceling a tail
    term against one's own lead just multiplies by a unit.  Termination:
    each cancellation replaces one monomial of the finite bounded
    universe by strictly order-smaller ones, a well-founded descent.
    Returns the input list object unchanged when nothing fires.
    """
    cut = cutkey or 0
    h = terms
    pos = 1
    while pos < len(h):
        deadline.check()
        k = h[pos][0]
        e = order.decode(k)
        edeg = sum(e)
        best = None
        bkey = None
        for red in reducers:
            if red.key < k or red.lmdeg > edeg:
                continue
            re = red.exps
            ok = True
            for a, b in zip(re, e):
                if a > b:
                    ok = False
                    break
            if ok:
                rkey = (len(red.terms), red.idx)
                if best is None or rkey < bkey:
                    best, bkey = red, rkey
        if best is None or edeg - best.lmdeg + best.maxe >= _SAFE_EXP:
            pos += 1
            continue
        delta = k - best.key
        if maxdeg is None:
            h = arith.cancel_at(h, pos, best.terms, delta, cut)
        else:
            limit = maxdeg - (edeg - best.lmdeg)
            keep = [dg <= limit for dg in best.term_degs(order)]
            h = arith.cancel_at(h, pos, best.terms, delta, cut, keep)
    return h


def _spoly_kernel(f: _Red, g: _Red, order: OrderSpec, arith, cutkey, maxdeg):
    lcm = monomial_lcm(f.exps, g.exps)
    if any(e >= EXP_CAP for e in lcm):
        raise ExponentOverflow("pair lcm exceeds the exponent cap")
    klcm = order.encode(lcm)
    df = klcm - f.key
    dg = klcm - g.key
    cut = cutkey or 0
    if maxdeg is None:
        return arith.spoly_terms(f.terms, df, g.terms, dg, cut)
    dlcm = sum(lcm)
    fkeep = [d <= maxdeg - (dlcm - f.lmdeg) for d in f.term_degs(order)]
    gkeep = [d <= maxdeg - (dlcm - g.lmdeg) for d in g.term_degs(order)]
    return arith.spoly_terms(f.terms, df, g.terms, dg, cut, fkeep, gkeep)


# ---------------------------------------------------------------------------
# The standard basis loop.  Pair bookkeeping follows Gebauer-Moeller; the
# product criterion is deliberately absent (unsound for local orderings).
# ---------------------------------------------------------------------------


def _kernel_std(gens, order: OrderSpec, arith, cutkey, maxdeg, deadline,
                pair_first: str):
    G = []
    pairs = []           # heap entries (sortkey, i, j)
    alive = {}           # (i, j) -> lcm exps
    sign = 1 if pair_first == "order_min" else -1
    key_one = order.key_one
    # Echelon discipline for bounded runs: reduce the tail of every
    # stored element against all current leads, both when it arrives and
    # when a later lead can hit it.  Leads never change, so pair
    # bookkeeping is untouched, the generated ideal is preserved by
    # these row operations, and whether a set is a standard basis
    # depends only on (ideal, leads) — the rewrites are sound.  Over Q
    # and k(t..) they keep coefficients near Gaussian-elimination size,
    # where the raw loop can compound the size of partially reduced
    # elements exponentially; over F_p they keep tails short, which is
    # what dominates dense truncated runs.  Termination needs the bound:
    # in the truncated ring the monomial universe is finite and every
    # head cancellation strictly lowers the lead, while the unbounded
    # loop must fall back to the ecart rule.
    bounded = cutkey is not None or maxdeg is not None
    echelon = bounded
    unit_found = []

    def insert(terms):
        if unit_found:
            return
        terms = arith.normalize(terms)
        s = len(G)
        if terms[0][0] == key_one:
            # The lead is a unit of the local ring: the ideal is the
            # whole ring and {1} is a standard basis of it.  Everything
            # else, pairs included, is redundant from here on.
            G[:] = [_Red([(key_one, arith.unit_one())], order, s)]
            pairs.clear()
            alive.clear()
            unit_found.append(True)
            return
        red = _Red(terms, order, s)
        if echelon:
            nt = _interreduce_tail(red.terms, G + [red], order, arith,
                                   cutkey, maxdeg, deadline)
            if nt is not red.terms:
                red = _Red(arith.normalize(nt), order, s)
        lcms = [monomial_lcm(other.exps, red.exps) for other in G]
        keep = []
        for i in range(s):
            li = lcms[i]
            drop = False
            for j in range(s):
                if j == i:
                    continue
                lj = lcms[j]
                if lj == li:
                    if j < i:
                        drop = True   # equal lcm: keep the lowest index
                        break
                elif monomial_divides(lj, li):
                    drop = True       # a strictly smaller lcm exists
                    break
            if not drop:
                keep.append(i)
        for (i, j), lcm_old in list(alive.items()):
            if monomial_divides(red.exps, lcm_old) \
                    and lcms[i] != lcm_old and lcms[j] != lcm_old:
                del alive[(i, j)]     # chain criterion
        for i in keep:
            alive[(i, s)] = lcms[i]
            heapq.heappush(pairs, (sign * order.encode(lcms[i]), i, s))
        G.append(red)
        if echelon:
            for t in range(s):
                old = G[t]
                nt = _interreduce_tail(old.terms, [red], order, arith,
                                       cutkey, maxdeg, deadline)
                if nt is not old.terms:
                    G[t] = _Red(arith.normalize(nt), order, old.idx)

    for terms in gens:
        insert(terms)
    while pairs:
        deadline.check()
        _, i, j = heapq.heappop(pairs)
        if (i, j) not in alive:
            continue
        del alive[(i, j)]
        s = _spoly_kernel(G[i], G[j], order, arith, cutkey, maxdeg)
        if not s:
            continue
        if echelon:
            h = _head_nf_bounded(s, G, order, arith, cutkey, maxdeg, deadline)
        else:
            h = _weak_nf_kernel(s, G, order, arith, cutkey, maxdeg, deadline)
        if h:
            insert(h)
    return G


# ---------------------------------------------------------------------------
# Boundary monomials of a truncation bound.
# ---------------------------------------------------------------------------


def _monomials_of_degree(n, d):
    """All exponent tuples of total degree d."""
    if n == 1:
        yield (d,)
        return
    for e in range(d + 1):
        for rest in _monomials_of_degree(n - 1, d - e):
            yield (e,) + rest


def bound_boundary_monomials(bound, order: OrderSpec):
    """Minimal generators of the monomial ideal a bounded run implicitly
    joins to its input; empty for NoBound.

    For a degree bound d these are all monomials of degree d + 1.  For a
    monomial bound N (dropping everything order-smaller than N) the
    minimal generators live in total degrees deg N and deg N + 1: any
    deeper monomial is automatically below N and has a parent that
    already is.
    """
    if isinstance(bound, NoBoundType):
        return []
    n = order.n
    if isinstance(bound, DegreeBound):
        return sorted(_monomials_of_degree(n, bound.degree + 1),
                      key=order.encode, reverse=True)
    if isinstance(bound, MonomialBound):
        if order.kind == "ws":
            raise ValueError("monomial bounds require a degree ordering")
        kN = order.encode(bound.monomial)
        D = sum(bound.monomial)
        out = []
        for d in (D, D + 1):
            for m in _monomials_of_degree(n, d):
                if order.encode(m) >= kN:
                    continue
                minimal = True
                for i in range(n):
                    if m[i]:
                        parent = m[:i] + (m[i] - 1,) + m[i + 1:]
                        if order.encode(parent) < kN:
                            minimal = False
                            break
                if minimal:
                    out.append(m)
        return sorted(out, key=order.encode, reverse=True)
    raise TypeError(f"not a truncation bound: {bound!r}")


# ---------------------------------------------------------------------------
# Public surface.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StandardBasis:
    """A standard basis with its ordering and provenance flags."""

    elements: tuple
    domain: DomainSpec
    order: OrderSpec
    bound: object = NoBound
    reduced: bool = False

    def leading_monomials(self):
        return tuple(g.lm() for g in self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    """S-polynomial (m/lm f) * f - (lc f / lc g) * (m/lm g) * g."""
    if f.is_zero() or g.is_zero():
        raise ValueError("s-polynomial needs nonzero polynomials")
    from .ring import monomial_div, poly_mul_term

    m = monomial_lcm(f.lm(), g.lm())
    left = poly_mul_term(f, f.domain.raw_one(), monomial_div(m, f.lm()))
    ratio = f.domain.raw_div(f.lc().val, g.lc().val)
    right = poly_mul_term(g, ratio, monomial_div(m, g.lm()))
    return left - right


def mora_weak_nf(f: Polynomial, G, bound=NoBound, *,
                 deadline_s=None) -> Polynomial:
    """Weak normal form of f against the polynomials in G.

    Head reduction only: the result is zero or has a lead not divisible
    by any lead of G.  When f's own head is already irreducible, f comes
    back unchanged apart from truncation; otherwise the remainder is
    normalized monic (a weak normal form is only defined up to a unit).
    """
    reducers = [g for g in G if not g.is_zero()]
    if f.is_zero() or not reducers:
        return truncate_poly(f, bound)
    order, dom = f.order, f.domain
    arith = _arith_for(dom)
    cutkey, maxdeg = bound_cut(bound, order)
    kf = _to_kernel(f, arith, cutkey, maxdeg)
    if not kf:
        return Polynomial.zero(dom, order)
    kred = [_Red(arith.normalize(_to_kernel(g, arith, None, None)), order, i)
            for i, g in enumerate(reducers)]
    deadline = _Deadline(deadline_s)
    bounded = cutkey is not None or maxdeg is not None
    nf = _head_nf_bounded if bounded else _weak_nf_kernel
    h = nf(kf, kred, order, arith, cutkey, maxdeg, deadline)
    if h is kf:
        return truncate_poly(f, bound)
    return _from_kernel(h, dom, order, arith, monic=True)


def standard_basis(S, bound=NoBound, *, deadline_s=None,
                   pair_first="order_min", tail_reduce=True) -> StandardBasis:
    """Standard basis of the ideal generated by S, plus the monomials
    just beyond the bound when one is given.

    The result is minimal and monic; when its leading ideal is
    zero-dimensional it is also fully tail-reduced (the canonical form),
    which the `reduced` flag reports.
    """
    if isinstance(S, IdealPresentation):
        dom, order, gens = S.domain, S.order, S.nonzero_gens()
    else:
        gens = tuple(g for g in S if not g.is_zero())
        if not gens:
            raise ValueError("cannot infer the ring of an empty generator list")
        dom, order = gens[0].domain, gens[0].order
    arith = _arith_for(dom)
    cutkey, maxdeg = bound_cut(bound, order)
    kgens = [_to_kernel(g, arith, cutkey, maxdeg) for g in gens]
    kgens = [g for g in kgens if g]
    kgens.sort(key=lambda t: tuple(-k for k, _ in t))   # canonical input order
    deadline = _Deadline(deadline_s)
    G = _kernel_std(kgens, order, arith, cutkey, maxdeg, deadline, pair_first)
    return _assemble(G, dom, order, arith, bound, bound, deadline, tail_reduce)


def reduce_basis(sb: StandardBasis, *, deadline_s=None) -> StandardBasis:
    """Canonical form of a standard basis: minimal, monic, tails fully
    reduced.  Raises NonFinite unless the leading ideal is
    zero-dimensional (otherwise tail reduction need not terminate)."""
    from .corner import staircase_is_zero_dimensional

    order = sb.order
    arith = _arith_for(sb.domain)
    lms = [g.lm() for g in sb.elements if not g.is_zero()]
    minimal = {m for m in lms
               if not any(o != m and monomial_divides(o, m) for o in lms)}
    if not staircase_is_zero_dimensional(minimal, order.n):
        raise NonFinite("reduction requires a zero-dimensional leading ideal")
    chosen = {}
    for g in sb.elements:
        m = g.lm()
        if m in minimal and m not in chosen:
            chosen[m] = arith.normalize(_to_kernel(g, arith, None, None))
    G = [_Red(t, order, i) for i, t in enumerate(chosen.values())]
    deadline = _Deadline(deadline_s)
    return _assemble(G, sb.domain, sb.order, arith, NoBound, sb.bound,
                     deadline, True)


def _assemble(G, dom, order, arith, boundary_bound, bound_flag, deadline,
              tail_reduce):
    """Minimalize, adjoin boundary monomials, tail-reduce, make monic."""
    picked = {}
    for red in G:
        if red.exps not in picked:
            picked[red.exps] = red.terms
    comp = list(picked.keys())
    comp_min = [m for m in comp
                if not any(o != m and monomial_divides(o, m) for o in comp)]
    boundary = [m for m in bound_boundary_monomials(boundary_bound, order)
                if not any(monomial_divides(c, m) for c in comp_min)]
    minimal = sorted(comp_min + boundary, key=order.encode, reverse=True)
    one = arith.unit_one()
    elems = {m: picked.get(m) or [(order.encode(m), one)] for m in minimal}

    from .corner import (staircase_is_zero_dimensional,
                         staircase_min_std_monomial)

    zero_dim = bool(minimal) and staircase_is_zero_dimensional(minimal, order.n)
    reduced = False
    if tail_reduce and zero_dim:
        hc = staircase_min_std_monomial(minimal, order)
        # Unit ideal: no standard monomials at all, every tail term is
        # droppable, so use a cut above the largest possible key.
        hc_key = order.key_one + 1 if hc is None else order.encode(hc)
        allred = [_Red(elems[m], order, i) for i, m in enumerate(minimal)]
        elems = {m: _tail_reduce(elems[m], allred, order, arith, hc_key,
                                 deadline)
                 for m in minimal}
        reduced = True
    polys = tuple(_from_kernel(elems[m], dom, order, arith, monic=True)
                  for m in minimal)
    return StandardBasis(polys, dom, order, bound_flag, reduced)


def _tail_reduce(terms, reducers, order, arith, hc_key, deadline):
    """Fully reduce the tail of one element against the basis.

    Tail monomials inside the leading ideal are canceled; monomials
    order-below the highest corner are simply dropped (they lie in the
    ideal).  Termination: only finitely many monomials sit at or above
    the corner, and every step replaces a term by strictly smaller ones.
    """
    h = [terms[0]] + [t for t in terms[1:] if t[0] >= hc_key]
    pos = 1
    while pos < len(h):
        deadline.check()
        k = h[pos][0]
        e = order.decode(k)
        edeg = sum(e)
        best = None
        bkey = None
        for red in reducers:
            if red.key < k or red.lmdeg > edeg:
                continue
            if monomial_divides(red.exps, e):
                rkey = (red.key, red.idx)
                if best is None or rkey < bkey:
                    best, bkey = red, rkey
        if best is None:
            pos += 1
            continue
        h = arith.cancel_at(h, pos, best.terms, k - best.key, hc_key)
    return arith.normalize(h)
