"""Localized polynomial rings: local orderings, monomials, polynomials.

Monomials are plain exponent tuples.  Each ordering packs an exponent
vector into a single integer key such that key comparison agrees with the
monomial ordering (bigger key = bigger monomial); polynomials store terms
sorted by descending key, so the leading term is terms[0] and order
comparisons in hot loops are single int comparisons.

Supported orderings (all local: 1 > x_i for every variable):

* ds  negative degree ordering, ties broken reverse-lex
        deg a < deg b => a > b; equal degree: a > b iff the last nonzero
        entry of a-b is negative.
* Ds  negative degree ordering, ties broken lex
        equal degree: a > b iff the first nonzero entry of a-b is positive.
* ws  negative weighted degree ordering (positive integer weights),
        ties broken exactly as in ds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .coeff import DomainSpec, Scalar

EXP_CAP = 1 << 15          # per-variable exponent cap
_EXPBITS = 20
_EXPBIAS = 1 << 19
_EXPMASK = (1 << _EXPBITS) - 1
_DEGBIAS = 1 << 31


class ExponentOverflow(OverflowError):
    """An exponent exceeded the per-variable cap during multiplication."""


ORDER_KINDS = ("ds", "Ds", "ws")


class OrderSpec:
    """A local monomial ordering on named variables x_1 > ... > x_n."""

    __slots__ = ("kind", "names", "weights", "n", "_key0", "_degshift")

    def __init__(self, kind: str, names, weights=None):
        if kind not in ORDER_KINDS:
            raise ValueError(f"unsupported ordering {kind!r} (expected ds, Ds, or ws)")
        names = tuple(names)
        if not names or len(set(names)) != len(names):
            raise ValueError("variable names must be nonempty and distinct")
        if kind == "ws":
            if weights is None:
                raise ValueError("ws ordering requires weights")
            weights = tuple(int(w) for w in weights)
            if len(weights) != len(names) or any(w < 1 for w in weights):
                raise ValueError("ws weights must be positive, one per variable")
            if max(weights) >= (1 << 12):
                raise ValueError("ws weights must be < 4096")
        else:
            if weights is not None:
                raise ValueError(f"{kind} ordering takes no weights")
            weights = None
        self.kind = kind
        self.names = names
        self.weights = weights
        self.n = len(names)
        self._degshift = _EXPBITS * self.n
        self._key0 = self.encode((0,) * self.n)

    def wdeg(self, exps) -> int:
        """The ordering's degree function (weighted for ws, total otherwise)."""
        if self.weights is None:
            return sum(exps)
        return sum(w * e for w, e in zip(self.weights, exps))

    def encode(self, exps) -> int:
        """Pack an exponent vector into an order key."""
        n = self.n
        if len(exps) != n:
            raise ValueError("exponent vector of wrong length")
        key = 0
        if self.kind == "Ds":
            deg = 0
            for i, e in enumerate(exps):
                if e < 0 or e >= EXP_CAP:
                    raise ExponentOverflow(f"exponent {e} out of range")
                deg += e
                key |= e << (_EXPBITS * (n - 1 - i))
        else:
            deg = 0
            ws = self.weights
            for i, e in enumerate(exps):
                if e < 0 or e >= EXP_CAP:
                    raise ExponentOverflow(f"exponent {e} out of range")
                deg += e if ws is None else ws[i] * e
                key |= (_EXPBIAS - e) << (_EXPBITS * i)
        return ((_DEGBIAS - deg) << self._degshift) | key

    def decode(self, key: int) -> tuple:
        n = self.n
        if self.kind == "Ds":
            return tuple((key >> (_EXPBITS * (n - 1 - i))) & _EXPMASK for i in range(n))
        return tuple(_EXPBIAS - ((key >> (_EXPBITS * i)) & _EXPMASK) for i in range(n))

    def key_deg(self, key: int) -> int:
        """The (weighted) degree stored in a key's top field."""
        return _DEGBIAS - (key >> self._degshift)

    def key_mul(self, k1: int, k2: int) -> int:
        """Key of the product of two monomials (exact for in-cap exponents)."""
        return k1 + k2 - self._key0

    @property
    def key_one(self) -> int:
        return self._key0

    def sort_terms(self, pairs):
        """Sort (exps, coeff) pairs into descending order."""
        return sorted(pairs, key=lambda t: self.encode(t[0]), reverse=True)

    def __eq__(self, other):
        return (isinstance(other, OrderSpec) and self.kind == other.kind
                and self.names == other.names and self.weights == other.weights)

    def __hash__(self):
        return hash((self.kind, self.names, self.weights))

    def __repr__(self):
        if self.weights:
            return f"OrderSpec({self.kind}, {self.names}, weights={self.weights})"
        return f"OrderSpec({self.kind}, {self.names})"


def compare_monomials(a, b, order: OrderSpec) -> int:
    """-1, 0, or 1 as a <, ==, > b under the ordering."""
    ka, kb = order.encode(a), order.encode(b)
    return (ka > kb) - (ka < kb)


# -- monomial helpers (exponent tuples) -------------------------------------


def monomial_mul(a, b):
    out = tuple(x + y for x, y in zip(a, b))
    if any(e >= EXP_CAP for e in out):
        raise ExponentOverflow(f"product exponents {out} exceed cap {EXP_CAP}")
    return out


def monomial_divides(a, b) -> bool:
    """True when a divides b (componentwise <=)."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a, b):
    """a / b, assuming b divides a."""
    out = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in out):
        raise ValueError(f"{b} does not divide {a}")
    return out


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


# -- truncation bounds -------------------------------------------------------


class NoBoundType:
    """No truncation."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NoBound"


NoBound = NoBoundType()


@dataclass(frozen=True)
class DegreeBound:
    """Drop terms of total degree strictly greater than `degree`."""

    degree: int


@dataclass(frozen=True)
class MonomialBound:
    """Drop terms whose monomial is strictly smaller than `monomial`."""

    monomial: tuple


def bound_cut(bound, order: OrderSpec):
    """Resolve a bound to (cut_key, max_total_degree); terms survive when
    key >= cut_key (if set) and total degree <= max_total_degree (if set)."""
    if bound is NoBound or isinstance(bound, NoBoundType):
        return None, None
    if isinstance(bound, MonomialBound):
        return order.encode(bound.monomial), None
    if isinstance(bound, DegreeBound):
        d = bound.degree
        if d < 0:
            raise ValueError("degree bound must be nonnegative")
        if order.kind == "ws":
            return None, d
        if d >= EXP_CAP:
            return None, d
        corner = (0,) * (order.n - 1) + (d,)
        return order.encode(corner), None
    raise TypeError(f"not a truncation bound: {bound!r}")


# -- polynomials -------------------------------------------------------------


class Term(NamedTuple):
    coefficient: Scalar
    monomial: tuple


class Polynomial:
    """Sparse polynomial with terms in strictly descending order."""

    __slots__ = ("domain", "order", "keys", "coeffs")

    def __init__(self, domain: DomainSpec, order: OrderSpec, keys, coeffs):
        self.domain = domain
        self.order = order
        self.keys = tuple(keys)
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, domain, order):
        return cls(domain, order, (), ())

    @classmethod
    def from_dict(cls, domain, order, d):
        """Build from {exponent-tuple: raw coefficient or Scalar}."""
        merged = {}
        for exps, c in d.items():
            if isinstance(c, Scalar):
                c = c.val
            key = order.encode(tuple(exps))
            if key in merged:
                merged[key] = domain.raw_add(merged[key], c)
            else:
                merged[key] = c
        items = sorted(((k, c) for k, c in merged.items()
                        if not domain.raw_is_zero(c)), reverse=True)
        return cls(domain, order, [k for k, _ in items], [c for _, c in items])

    @classmethod
    def constant(cls, domain, order, c):
        if isinstance(c, Scalar):
            c = c.val
        if domain.raw_is_zero(c):
            return cls.zero(domain, order)
        return cls(domain, order, (order.key_one,), (c,))

    def is_zero(self) -> bool:
        return not self.keys

    def __bool__(self):
        return bool(self.keys)

    def __len__(self):
        return len(self.keys)

    @property
    def terms(self):
        dec = self.order.decode
        dom = self.domain
        return tuple(Term(Scalar(dom, c), dec(k)) for k, c in zip(self.keys, self.coeffs))

    def lm(self) -> tuple:
        """Leading monomial (largest under the local ordering)."""
        if not self.keys:
            raise ValueError("zero polynomial has no leading monomial")
        return self.order.decode(self.keys[0])

    def lc(self) -> Scalar:
        if not self.keys:
            raise ValueError("zero polynomial has no leading coefficient")
        return Scalar(self.domain, self.coeffs[0])

    def lt(self) -> Term:
        return Term(self.lc(), self.lm())

    def deg(self) -> int:
        """Max total degree over terms (-1 for zero)."""
        if not self.keys:
            return -1
        if self.order.kind != "ws":
            # keys descend, (weighted=total) degree ascends: last term is max
            return self.order.key_deg(self.keys[-1])
        dec = self.order.decode
        return max(sum(dec(k)) for k in self.keys)

    def ecart(self) -> int:
        """deg(f) - deg(lm(f)), the classical reduction control number."""
        if not self.keys:
            raise ValueError("zero polynomial has no ecart")
        return self.deg() - sum(self.order.decode(self.keys[0]))

    def map_coeffs(self, fn, domain=None):
        """Apply fn to every raw coefficient (must not produce zeros)."""
        dom = domain or self.domain
        return Polynomial(dom, self.order, self.keys, [fn(c) for c in self.coeffs])

    def scale(self, c: Scalar):
        if self.domain.raw_is_zero(c.val if isinstance(c, Scalar) else c):
            return Polynomial.zero(self.domain, self.order)
        raw = c.val if isinstance(c, Scalar) else c
        mul = self.domain.raw_mul
        return Polynomial(self.domain, self.order, self.keys, [mul(x, raw) for x in self.coeffs])

    def monic(self):
        if not self.keys:
            return self
        lc = self.coeffs[0]
        one = self.domain.raw_one()
        if lc == one:
            return self
        div = self.domain.raw_div
        return Polynomial(self.domain, self.order, self.keys,
                          [div(c, lc) for c in self.coeffs])

    def __neg__(self):
        neg = self.domain.raw_neg
        return Polynomial(self.domain, self.order, self.keys, [neg(c) for c in self.coeffs])

    def __add__(self, other):
        return poly_add(self, other)

    def __sub__(self, other):
        return poly_add(self, -other)

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.domain == other.domain
                and self.order == other.order and self.keys == other.keys
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.domain, self.order, self.keys, self.coeffs))

    def __str__(self):
        from .parse import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"<poly {self}>"


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    """Merge-add keeping descending key order."""
    if f.domain != g.domain or f.order != g.order:
        raise ValueError("polynomial ring mismatch")
    dom = f.domain
    add, is_zero = dom.raw_add, dom.raw_is_zero
    fk, fc, gk, gc = f.keys, f.coeffs, g.keys, g.coeffs
    i = j = 0
    keys, coeffs = [], []
    while i < len(fk) and j < len(gk):
        if fk[i] > gk[j]:
            keys.append(fk[i]); coeffs.append(fc[i]); i += 1
        elif fk[i] < gk[j]:
            keys.append(gk[j]); coeffs.append(gc[j]); j += 1
        else:
            c = add(fc[i], gc[j])
            if not is_zero(c):
                keys.append(fk[i]); coeffs.append(c)
            i += 1; j += 1
    keys.extend(fk[i:]); coeffs.extend(fc[i:])
    keys.extend(gk[j:]); coeffs.extend(gc[j:])
    return Polynomial(dom, f.order, keys, coeffs)


def poly_mul_term(f: Polynomial, coeff, mono) -> Polynomial:
    """Multiply by a single term coeff * x^mono."""
    dom, order = f.domain, f.order
    raw = coeff.val if isinstance(coeff, Scalar) else coeff
    if dom.raw_is_zero(raw) or f.is_zero():
        return Polynomial.zero(dom, order)
    mono = tuple(mono)
    dec = order.decode
    delta = order.encode(mono) - order.key_one
    keys = [k + delta for k in f.keys]
    # the cap check must look at every term: orderings disagree on extremes
    for k in keys:
        if any(e >= EXP_CAP or e < 0 for e in dec(k)):
            raise ExponentOverflow("term multiplication exceeds exponent cap")
    mul = dom.raw_mul
    return Polynomial(dom, order, keys, [mul(c, raw) for c in f.coeffs])


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    """Full product, for expression evaluation and tests (not a hot path)."""
    if f.domain != g.domain or f.order != g.order:
        raise ValueError("polynomial ring mismatch")
    dom, order = f.domain, f.order
    if f.is_zero() or g.is_zero():
        return Polynomial.zero(dom, order)
    add, mul, is_zero = dom.raw_add, dom.raw_mul, dom.raw_is_zero
    k0 = order.key_one
    acc = {}
    for kf, cf in zip(f.keys, f.coeffs):
        for kg, cg in zip(g.keys, g.coeffs):
            k = kf + kg - k0
            v = mul(cf, cg)
            if k in acc:
                acc[k] = add(acc[k], v)
            else:
                acc[k] = v
    dec = order.decode
    items = sorted(((k, c) for k, c in acc.items() if not is_zero(c)), reverse=True)
    for k, _ in items:
        if any(e >= EXP_CAP or e < 0 for e in dec(k)):
            raise ExponentOverflow("product exceeds exponent cap")
    return Polynomial(dom, order, [k for k, _ in items], [c for _, c in items])


def poly_pow(f: Polynomial, k: int) -> Polynomial:
    if k < 0:
        raise ValueError("negative polynomial power")
    out = Polynomial.constant(f.domain, f.order, f.domain.raw_one())
    base = f
    while k:
        if k & 1:
            out = poly_mul(out, base)
        k >>= 1
        if k:
            base = poly_mul(base, base)
    return out


def truncate_poly(f: Polynomial, bound) -> Polynomial:
    """Drop the terms excluded by the bound; NoBound returns f unchanged."""
    cutkey, maxdeg = bound_cut(bound, f.order)
    if cutkey is None and maxdeg is None:
        return f
    keys, coeffs = [], []
    dec = f.order.decode
    for k, c in zip(f.keys, f.coeffs):
        if cutkey is not None and k < cutkey:
            break  # keys descend: everything after is smaller still
        if maxdeg is not None and sum(dec(k)) > maxdeg:
            continue
        keys.append(k); coeffs.append(c)
    if len(keys) == len(f.keys):
        return f
    return Polynomial(f.domain, f.order, keys, coeffs)


@dataclass(frozen=True)
class IdealPresentation:
    """A finite generating set in a fixed localized ring."""

    domain: DomainSpec
    order: OrderSpec
    gens: tuple

    def __post_init__(self):
        for g in self.gens:
            if g.domain != self.domain or g.order != self.order:
                raise ValueError("generator ring mismatch")

    def nonzero_gens(self):
        return tuple(g for g in self.gens if not g.is_zero())


def poly_derivative(f: Polynomial, i: int) -> Polynomial:
    """Partial derivative with respect to the i-th variable."""
    dom, order = f.domain, f.order
    dec = order.decode
    out = {}
    for k, c in zip(f.keys, f.coeffs):
        exps = dec(k)
        e = exps[i]
        if e == 0:
            continue
        dc = dom.raw_mul(c, dom.raw_from_int(e))
        if dom.raw_is_zero(dc):
            continue
        out[exps[:i] + (e - 1,) + exps[i + 1:]] = dc
    return Polynomial.from_dict(dom, order, out)


def jacobian_ideal(f: Polynomial, include_f: bool = False) -> IdealPresentation:
    """The ideal of all partial derivatives, optionally including f itself."""
    gens = [poly_derivative(f, i) for i in range(f.order.n)]
    if include_f:
        gens.append(f)
    return IdealPresentation(f.domain, f.order, tuple(gens))
