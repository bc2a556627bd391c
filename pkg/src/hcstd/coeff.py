"""Coefficient domains: Q, prime fields F_p, and rational function fields.

A DomainSpec names the field the polynomial coefficients live in:

* characteristic 0, no parameters      -> Q          (values: Fraction)
* characteristic p, no parameters      -> F_p        (values: int in [0, p))
* characteristic 0, parameters (t,..)  -> Q(t,..)    (values: RatFun)
* characteristic p, parameters (t,..)  -> F_p(t,..)  (values: RatFun)

Rational functions keep numerator and denominator as polynomials with
integer (resp. F_p) coefficients, gcd-reduced with no common content and
a sign/lead normalized denominator, so equal values have equal
representations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class SpecializationFailure(Exception):
    """A denominator vanishes at the chosen specialization point/prime."""


MAX_CHAR = 1 << 31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the 2^31 cap on p."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# Parameter polynomials.
#
# Recursive dense representation built from nested tuples, immutable all the
# way down.  With s parameters a polynomial is:
#     s == 0:  a plain int
#     s >= 1:  a tuple c where c[k] is the coefficient of t1^k, itself a
#              polynomial in the remaining s-1 parameters.  Trailing zero
#              coefficients are stripped; the zero polynomial is ().
# Coefficients are ints; char p > 0 keeps them reduced into [0, p).
# ---------------------------------------------------------------------------


def rp_zero(s):
    return 0 if s == 0 else ()


def rp_is_zero(a):
    return a == 0 or a == ()


def rp_const(c, s, p=0):
    if p:
        c %= p
    if s == 0:
        return c
    if c == 0:
        return ()
    return (rp_const(c, s - 1),)


def _strip(coeffs):
    n = len(coeffs)
    while n and rp_is_zero(coeffs[n - 1]):
        n -= 1
    return tuple(coeffs[:n])


def rp_add(a, b, p, s):
    if s == 0:
        return (a + b) % p if p else a + b
    if not a:
        return b
    if not b:
        return a
    la, lb = len(a), len(b)
    if la < lb:
        a, b, la, lb = b, a, lb, la
    out = list(a)
    for i in range(lb):
        out[i] = rp_add(out[i], b[i], p, s - 1)
    return _strip(out)


def rp_neg(a, p, s):
    if s == 0:
        return (-a) % p if p else -a
    return tuple(rp_neg(c, p, s - 1) for c in a)


def rp_sub(a, b, p, s):
    return rp_add(a, rp_neg(b, p, s), p, s)


def rp_mul(a, b, p, s):
    if s == 0:
        return a * b % p if p else a * b
    if not a or not b:
        return ()
    out = [rp_zero(s - 1)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if rp_is_zero(ca):
            continue
        for j, cb in enumerate(b):
            if rp_is_zero(cb):
                continue
            out[i + j] = rp_add(out[i + j], rp_mul(ca, cb, p, s - 1), p, s - 1)
    return _strip(out)


def rp_scale_int(a, c, p, s):
    """Multiply by an integer constant."""
    if p:
        c %= p
    if c == 0:
        return rp_zero(s)
    if s == 0:
        return a * c % p if p else a * c
    return _strip([rp_scale_int(x, c, p, s - 1) for x in a])


def rp_pow(a, k, p, s):
    out = rp_const(1, s)
    for _ in range(k):
        out = rp_mul(out, a, p, s)
    return out


def rp_degree(a):
    """Degree in the outermost parameter (-1 for the zero polynomial)."""
    if isinstance(a, int):
        return 0 if a else -1
    return len(a) - 1


def rp_total_deg(a, s):
    if rp_is_zero(a):
        return -1
    if s == 0:
        return 0
    return max(i + rp_total_deg(c, s - 1) for i, c in enumerate(a) if not rp_is_zero(c))


def rp_eval(a, point, p, s):
    """Evaluate at an integer point (tuple of length s); plain int result."""
    if s == 0:
        return a % p if p else a
    acc = 0
    x = point[0]
    for c in reversed(a):
        acc = acc * x + rp_eval(c, point[1:], p, s - 1)
        if p:
            acc %= p
    return acc


def rp_abs_lead(a, s) -> int:
    """The innermost leading integer coefficient (lex-leading, t1 > t2 > ...)."""
    while s > 0:
        a = a[-1]
        s -= 1
    return a


def rp_int_content(a, s) -> int:
    """Gcd of all integer coefficients (characteristic 0 only); 0 for zero."""
    if s == 0:
        return abs(a)
    g = 0
    for c in a:
        g = math.gcd(g, rp_int_content(c, s - 1))
        if g == 1:
            return 1
    return g


def rp_divexact(a, b, p, s):
    """Exact division a / b; raises ArithmeticError if not exact."""
    if rp_is_zero(b):
        raise ZeroDivisionError("rp_divexact by zero")
    if rp_is_zero(a):
        return rp_zero(s)
    if s == 0:
        if p:
            return a * pow(b, p - 2, p) % p
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division")
        return q
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        raise ArithmeticError("inexact division: degree too small")
    lcb = b[-1]
    rem = list(a)
    q = [rp_zero(s - 1)] * (da - db + 1)
    for k in range(da, db - 1, -1):
        ck = rem[k]
        if rp_is_zero(ck):
            continue
        c = rp_divexact(ck, lcb, p, s - 1)
        q[k - db] = c
        for j in range(db + 1):
            rem[k - db + j] = rp_sub(rem[k - db + j], rp_mul(c, b[j], p, s - 1), p, s - 1)
    if any(not rp_is_zero(c) for c in rem):
        raise ArithmeticError("inexact polynomial division")
    return _strip(q)


def rp_prem(a, b, p, s):
    """Pseudo-remainder of a by b in the outermost parameter."""
    db = len(b) - 1
    lcb = b[-1]
    r = a
    while not rp_is_zero(r) and len(r) - 1 >= db:
        dr = len(r) - 1
        lcr = r[-1]
        # r := lcb * r - lcr * t^(dr-db) * b   (drops the degree-dr term)
        shifted = tuple([rp_zero(s - 1)] * (dr - db)) + tuple(
            rp_mul(lcr, c, p, s - 1) for c in b
        )
        r = rp_sub(rp_mul_ground(r, lcb, p, s), shifted, p, s)
    return r


def rp_mul_ground(a, g, p, s):
    """Multiply an s-parameter polynomial by an (s-1)-parameter coefficient."""
    if rp_is_zero(g):
        return rp_zero(s)
    return _strip([rp_mul(c, g, p, s - 1) for c in a])


def rp_content(a, p, s):
    """Content of a w.r.t. the outermost parameter: an (s-1)-level gcd."""
    g = rp_zero(s - 1)
    for c in a:
        g = rp_gcd(g, c, p, s - 1)
    return g


def rp_primitive(a, p, s):
    if rp_is_zero(a):
        return a
    cont = rp_content(a, p, s)
    return _strip([rp_divexact(c, cont, p, s - 1) for c in a])


def _rp_normalize_gcd(g, p, s):
    if rp_is_zero(g):
        return g
    lead = rp_abs_lead(g, s)
    if p:
        if lead != 1:
            g = rp_scale_int(g, pow(lead, p - 2, p), p, s)
    elif lead < 0:
        g = rp_neg(g, p, s)
    return g


def rp_gcd(a, b, p, s):
    """Gcd over Z[t1..ts] (full content included) or F_p[t1..ts] (lead 1)."""
    if rp_is_zero(a):
        return _rp_normalize_gcd(b, p, s)
    if rp_is_zero(b):
        return _rp_normalize_gcd(a, p, s)
    if s == 0:
        return math.gcd(a, b) if not p else 1
    if p and s == 1:
        # Euclid over the field F_p.
        x, y = a, b
        while not rp_is_zero(y):
            x, y = y, _rp_uni_rem(x, y, p)
        return _rp_normalize_gcd(x, p, 1)
    ca, cb = rp_content(a, p, s), rp_content(b, p, s)
    cg = rp_gcd(ca, cb, p, s - 1)
    x = _strip([rp_divexact(c, ca, p, s - 1) for c in a])
    y = _strip([rp_divexact(c, cb, p, s - 1) for c in b])
    if len(x) < len(y):
        x, y = y, x
    while not rp_is_zero(y):
        r = rp_prem(x, y, p, s)
        x, y = y, rp_primitive(r, p, s) if not rp_is_zero(r) else r
    return _rp_normalize_gcd(rp_mul_ground(x, cg, p, s), p, s)


def _rp_uni_rem(a, b, p):
    """Remainder of univariate division over F_p (s == 1)."""
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    r = list(a)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv % p
        if c:
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - c * b[j]) % p
    return _strip(r)


def rp_lcm(a, b, p, s):
    if rp_is_zero(a) or rp_is_zero(b):
        return rp_zero(s)
    g = rp_gcd(a, b, p, s)
    return _rp_normalize_gcd(rp_divexact(rp_mul(a, b, p, s), g, p, s), p, s)


def rp_from_terms(terms, s, p=0):
    """Build from {exponent-tuple: int}; exponent tuples have length s."""
    if s == 0:
        c = sum(terms.values())
        return c % p if p else c
    if not terms:
        return ()
    top = max(e[0] for e in terms)
    slices = [{} for _ in range(top + 1)]
    for e, c in terms.items():
        sub = slices[e[0]]
        sub[e[1:]] = sub.get(e[1:], 0) + c
    return _strip([rp_from_terms(sl, s - 1, p) for sl in slices])


def rp_to_terms(a, s):
    """Inverse of rp_from_terms: {exponent-tuple: int} with nonzero values."""
    if s == 0:
        return {(): a} if a else {}
    out = {}
    for i, c in enumerate(a):
        for e, v in rp_to_terms(c, s - 1).items():
            out[(i,) + e] = v
    return out


def rp_mod(a, p, s):
    """Reduce integer coefficients of a characteristic-0 polynomial mod p."""
    if s == 0:
        return a % p
    return _strip([rp_mod(c, p, s - 1) for c in a])


# ---------------------------------------------------------------------------
# Rational functions.
# ---------------------------------------------------------------------------


class RatFun:
    """num/den of parameter polynomials, canonically reduced."""

    __slots__ = ("num", "den", "char", "npar")

    def __init__(self, num, den, char, npar, _normalized=False):
        if not _normalized:
            num, den = _rf_normalize(num, den, char, npar)
        self.num = num
        self.den = den
        self.char = char
        self.npar = npar

    @staticmethod
    def const(c: int, char: int, npar: int) -> "RatFun":
        return RatFun(rp_const(c, npar, char), rp_const(1, npar), char, npar,
                      _normalized=char == 0 or c % char != 0 or c == 0)

    @staticmethod
    def from_fraction(q: Fraction, npar: int) -> "RatFun":
        return RatFun(rp_const(q.numerator, npar), rp_const(q.denominator, npar), 0, npar)

    def is_zero(self) -> bool:
        return rp_is_zero(self.num)

    def is_one(self) -> bool:
        return self.num == rp_const(1, self.npar) and self.den == rp_const(1, self.npar)

    def __add__(self, other):
        p, s = self.char, self.npar
        n = rp_add(rp_mul(self.num, other.den, p, s), rp_mul(other.num, self.den, p, s), p, s)
        return RatFun(n, rp_mul(self.den, other.den, p, s), p, s)

    def __sub__(self, other):
        p, s = self.char, self.npar
        n = rp_sub(rp_mul(self.num, other.den, p, s), rp_mul(other.num, self.den, p, s), p, s)
        return RatFun(n, rp_mul(self.den, other.den, p, s), p, s)

    def __mul__(self, other):
        p, s = self.char, self.npar
        return RatFun(rp_mul(self.num, other.num, p, s), rp_mul(self.den, other.den, p, s), p, s)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("rational function division by zero")
        p, s = self.char, self.npar
        return RatFun(rp_mul(self.num, other.den, p, s), rp_mul(self.den, other.num, p, s), p, s)

    def __neg__(self):
        return RatFun(rp_neg(self.num, self.char, self.npar), self.den, self.char,
                      self.npar, _normalized=self.char == 0)

    def __eq__(self, other):
        return (isinstance(other, RatFun) and self.char == other.char
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.char, self.num, self.den))

    def __repr__(self):
        return f"RatFun({self.num!r}/{self.den!r}, char={self.char})"


def _rf_normalize(num, den, p, s):
    if rp_is_zero(den):
        raise ZeroDivisionError("rational function with zero denominator")
    if rp_is_zero(num):
        return rp_zero(s), rp_const(1, s)
    g = rp_gcd(num, den, p, s)
    num = rp_divexact(num, g, p, s)
    den = rp_divexact(den, g, p, s)
    lead = rp_abs_lead(den, s)
    if p:
        if lead != 1:
            inv = pow(lead, p - 2, p)
            num = rp_scale_int(num, inv, p, s)
            den = rp_scale_int(den, inv, p, s)
    elif lead < 0:
        num = rp_neg(num, p, s)
        den = rp_neg(den, p, s)
    return num, den


# ---------------------------------------------------------------------------
# Domains and scalars.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DomainSpec:
    """The coefficient field: characteristic plus ordered parameter names."""

    char: int = 0
    params: tuple = ()

    def __post_init__(self):
        if self.char != 0:
            if self.char >= MAX_CHAR or not is_prime(self.char):
                raise ValueError(f"characteristic must be 0 or a prime < 2^31: {self.char}")
        if len(set(self.params)) != len(self.params):
            raise ValueError("duplicate parameter names")

    @property
    def npar(self) -> int:
        return len(self.params)

    @property
    def has_params(self) -> bool:
        return bool(self.params)

    def describe(self) -> str:
        if self.params:
            return f"{self.char},({','.join(self.params)})"
        return str(self.char)

    # raw coefficient values: Fraction | int | RatFun ---------------------

    def raw_zero(self):
        if self.params:
            return RatFun.const(0, self.char, self.npar)
        return Fraction(0) if self.char == 0 else 0

    def raw_one(self):
        if self.params:
            return RatFun.const(1, self.char, self.npar)
        return Fraction(1) if self.char == 0 else 1

    def raw_from_int(self, n: int):
        if self.params:
            return RatFun.const(n, self.char, self.npar)
        return Fraction(n) if self.char == 0 else n % self.char

    def raw_from_fraction(self, q: Fraction):
        if self.char == 0:
            return RatFun.from_fraction(q, self.npar) if self.params else q
        d = q.denominator % self.char
        if d == 0:
            raise ZeroDivisionError(f"denominator {q.denominator} vanishes mod {self.char}")
        v = q.numerator * pow(d, self.char - 2, self.char) % self.char
        return RatFun.const(v, self.char, self.npar) if self.params else v

    def raw_is_zero(self, v) -> bool:
        if self.params:
            return v.is_zero()
        return v == 0

    def raw_add(self, a, b):
        return (a + b) % self.char if self.char and not self.params else a + b

    def raw_sub(self, a, b):
        return (a - b) % self.char if self.char and not self.params else a - b

    def raw_mul(self, a, b):
        return a * b % self.char if self.char and not self.params else a * b

    def raw_neg(self, a):
        return -a % self.char if self.char and not self.params else -a

    def raw_div(self, a, b):
        if self.params:
            return a / b
        if self.char:
            if b % self.char == 0:
                raise ZeroDivisionError("division by zero in prime field")
            return a * pow(b, self.char - 2, self.char) % self.char
        return a / b

    def raw_param(self, i: int):
        """The i-th parameter as a rational function."""
        e = tuple(1 if j == i else 0 for j in range(self.npar))
        return RatFun(rp_from_terms({e: 1}, self.npar, self.char), rp_const(1, self.npar),
                      self.char, self.npar, _normalized=True)

    def zero(self) -> "Scalar":
        return Scalar(self, self.raw_zero())

    def one(self) -> "Scalar":
        return Scalar(self, self.raw_one())

    def from_int(self, n: int) -> "Scalar":
        return Scalar(self, self.raw_from_int(n))

    def from_fraction(self, q: Fraction) -> "Scalar":
        return Scalar(self, self.raw_from_fraction(q))


class Scalar:
    """A field element tagged with its domain."""

    __slots__ = ("dom", "val")

    def __init__(self, dom: DomainSpec, val):
        self.dom = dom
        self.val = val

    def is_zero(self) -> bool:
        return self.dom.raw_is_zero(self.val)

    def __bool__(self):
        return not self.is_zero()

    def _check(self, other):
        if self.dom != other.dom:
            raise ValueError(f"domain mismatch: {self.dom} vs {other.dom}")

    def __add__(self, other):
        self._check(other)
        return Scalar(self.dom, self.dom.raw_add(self.val, other.val))

    def __sub__(self, other):
        self._check(other)
        return Scalar(self.dom, self.dom.raw_sub(self.val, other.val))

    def __mul__(self, other):
        self._check(other)
        return Scalar(self.dom, self.dom.raw_mul(self.val, other.val))

    def __truediv__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(self.dom, self.dom.raw_div(self.val, other.val))

    def __neg__(self):
        return Scalar(self.dom, self.dom.raw_neg(self.val))

    def __eq__(self, other):
        return isinstance(other, Scalar) and self.dom == other.dom and self.val == other.val

    def __hash__(self):
        return hash((self.dom, self.val))

    def __repr__(self):
        return f"Scalar({self.val!r})"


def scalar_arith(op: str, a: Scalar, b: Scalar) -> Scalar:
    """Field arithmetic dispatch: op in {add, sub, mul, div, neg}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    raise ValueError(f"unknown scalar op {op!r}")


# ---------------------------------------------------------------------------
# Denominator clearing and specialization.
# ---------------------------------------------------------------------------


def clear_denominators(scalars) -> list:
    """Scale a nonempty list of scalars by one unit so all lie in the base
    ring (Z, Z[t..], or F_p[t..]) with no common content.  Returns the new
    scalar list; the multiplier is a unit of the field, so ideals are
    unchanged when this is applied to a polynomial's coefficients."""
    scalars = list(scalars)
    if not scalars:
        return scalars
    dom = scalars[0].dom
    if not dom.params:
        if dom.char:
            return scalars
        lcmd = 1
        for sc in scalars:
            lcmd = lcmd * sc.val.denominator // math.gcd(lcmd, sc.val.denominator)
        ints = [sc.val.numerator * (lcmd // sc.val.denominator) for sc in scalars]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if g == 0:
            return scalars
        for v in ints:
            if v:
                if v < 0:
                    g = -g
                break
        return [Scalar(dom, Fraction(v // g)) for v in ints]
    p, s = dom.char, dom.npar
    lcmd = rp_const(1, s)
    for sc in scalars:
        lcmd = rp_lcm(lcmd, sc.val.den, p, s)
    nums = [rp_mul(sc.val.num, rp_divexact(lcmd, sc.val.den, p, s), p, s) for sc in scalars]
    g = rp_zero(s)
    for v in nums:
        g = rp_gcd(g, v, p, s)
    if rp_is_zero(g):
        return scalars
    for v in nums:
        if not rp_is_zero(v):
            if p == 0 and rp_abs_lead(v, s) < 0:
                g = rp_neg(g, p, s)
            break
    one = rp_const(1, s)
    return [Scalar(dom, RatFun(rp_divexact(v, g, p, s), one, p, s, _normalized=p == 0))
            for v in nums]


@dataclass(frozen=True)
class SpecializationPoint:
    """A maximal ideal of the base ring: an optional prime and an optional
    integer parameter point, depending on what the domain requires."""

    prime: int | None = None
    point: tuple | None = None

    def describe(self) -> str:
        bits = []
        if self.prime is not None:
            bits.append(f"p={self.prime}")
        if self.point is not None:
            bits.append("t=(" + ",".join(str(v) for v in self.point) + ")")
        return " ".join(bits) if bits else "trivial"


def specialization_target(dom: DomainSpec, pt: SpecializationPoint) -> DomainSpec:
    """The residue field: always a prime field here."""
    if dom.char:
        return DomainSpec(dom.char)
    if pt.prime is None:
        raise ValueError("characteristic-0 specialization requires a prime")
    return DomainSpec(pt.prime)


def specialize_scalar(sc: Scalar, pt: SpecializationPoint) -> Scalar:
    """Apply the residue map at pt; raises SpecializationFailure when the
    denominator lands on zero."""
    dom = sc.dom
    target = specialization_target(dom, pt)
    p = target.char
    if not dom.params:
        if dom.char:
            return Scalar(target, sc.val)
        q = sc.val
        if q.denominator % p == 0:
            raise SpecializationFailure(f"denominator {q.denominator} divisible by {p}")
        return Scalar(target, q.numerator * pow(q.denominator % p, p - 2, p) % p)
    if pt.point is None or len(pt.point) != dom.npar:
        raise ValueError("parameter point of wrong arity")
    rf = sc.val
    if dom.char == 0:
        n = rp_eval(rf.num, pt.point, 0, dom.npar)
        d = rp_eval(rf.den, pt.point, 0, dom.npar)
        if d == 0:
            raise SpecializationFailure(f"denominator vanishes at point {pt.point}")
        q = Fraction(n, d)
        if q.denominator % p == 0:
            raise SpecializationFailure(f"denominator {q.denominator} divisible by {p}")
        return Scalar(target, q.numerator * pow(q.denominator % p, p - 2, p) % p)
    n = rp_eval(rf.num, pt.point, p, dom.npar)
    d = rp_eval(rf.den, pt.point, p, dom.npar)
    if d == 0:
        raise SpecializationFailure(f"denominator vanishes at point {pt.point} mod {p}")
    return Scalar(target, n * pow(d, p - 2, p) % p)
