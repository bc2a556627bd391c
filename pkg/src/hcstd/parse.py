"""Text syntax for polynomials: parser and canonical printer.

Input accepts the usual computer-algebra shorthand: `^` powers, optional
`*`, rational coefficients `a/b`, parenthesized parameter coefficients
like `(t^2+1)`, and, when every variable and parameter name is a single
letter, implicit powers (`x3y3` means `x^3*y^3`).

Output is always explicit: every product gets `*`, every power gets `^`,
terms in descending order under the ring's ordering.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import DomainSpec, RatFun, Scalar, rp_const, rp_from_terms, rp_to_terms
from .ring import OrderSpec, Polynomial, poly_add, poly_mul, poly_pow


class ParseError(ValueError):
    """Syntax error with a position (0-based offset into the text)."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.message = message
        self.pos = pos


# -- lexer -------------------------------------------------------------------

_SYMBOLS = "+-*/^()"


def _tokenize(text: str, names):
    """Yield (kind, value, pos); kind in {num, pvar, sym, end}.

    `pvar` tokens carry (name, exponent) pairs: the implicit-power
    shorthand is resolved here when all names are single letters.
    """
    single = all(len(nm) == 1 for nm in names)
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            toks.append(("sym", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            if single:
                if ch not in names:
                    raise ParseError(f"unknown name {ch!r}", i)
                j = i + 1
                e = 1
                if j < n and text[j].isdigit():
                    k = j
                    while k < n and text[k].isdigit():
                        k += 1
                    e = int(text[j:k])
                    j = k
                toks.append(("pvar", (ch, e), i))
                i = j
                continue
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word not in names:
                raise ParseError(f"unknown name {word!r}", i)
            toks.append(("pvar", (word, 1), i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(("end", None, n))
    return toks


# -- recursive-descent expression parser -------------------------------------


class _ExprParser:
    def __init__(self, toks, domain: DomainSpec, order: OrderSpec):
        self.toks = toks
        self.i = 0
        self.dom = domain
        self.order = order

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_end(self):
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("trailing input after expression", pos)

    def parse(self) -> Polynomial:
        f = self.expr()
        self.expect_end()
        return f

    def expr(self) -> Polynomial:
        kind, val, _ = self.peek()
        negate = False
        if kind == "sym" and val in "+-":
            self.next()
            negate = val == "-"
        f = self.term()
        if negate:
            f = -f
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in "+-":
                self.next()
                g = self.term()
                f = poly_add(f, -g if val == "-" else g)
            else:
                return f

    def term(self) -> Polynomial:
        f = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "sym" and val in "*/":
                self.next()
                g = self.factor()
                if val == "*":
                    f = poly_mul(f, g)
                else:
                    f = self._divide(f, g, pos)
            elif kind == "pvar" or (kind == "sym" and val == "("):
                f = poly_mul(f, self.factor())  # implicit multiplication
            else:
                return f

    def _divide(self, f, g, pos):
        if g.is_zero():
            raise ParseError("division by zero", pos)
        if len(g) != 1 or any(g.lm()):
            raise ParseError("division only by nonzero constants", pos)
        inv = self.dom.raw_div(self.dom.raw_one(), g.coeffs[0])
        return f.scale(Scalar(self.dom, inv))

    def factor(self) -> Polynomial:
        kind, val, pos = self.peek()
        if kind == "sym" and val == "-":
            self.next()
            return -self.factor()
        base = self.primary()
        kind, val, _ = self.peek()
        if kind == "sym" and val == "^":
            self.next()
            kind, e, pos = self.next()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer", pos)
            return poly_pow(base, e)
        return base

    def primary(self) -> Polynomial:
        kind, val, pos = self.next()
        if kind == "num":
            return Polynomial.constant(self.dom, self.order, self.dom.raw_from_int(val))
        if kind == "pvar":
            name, e = val
            return self._name_power(name, e, pos)
        if kind == "sym" and val == "(":
            f = self.expr()
            kind, val, pos = self.next()
            if not (kind == "sym" and val == ")"):
                raise ParseError("expected ')'", pos)
            return f
        raise ParseError("expected a number, name, or '('", pos)

    def _name_power(self, name, e, pos) -> Polynomial:
        order, dom = self.order, self.dom
        if name in order.names:
            i = order.names.index(name)
            exps = tuple(e if j == i else 0 for j in range(order.n))
            return Polynomial.from_dict(dom, order, {exps: dom.raw_one()})
        if name in dom.params:
            i = dom.params.index(name)
            exps = tuple(e if j == i else 0 for j in range(dom.npar))
            num = rp_from_terms({exps: 1}, dom.npar, dom.char)
            rf = RatFun(num, rp_const(1, dom.npar), dom.char, dom.npar, _normalized=True)
            return Polynomial.constant(dom, order, rf)
        raise ParseError(f"name {name!r} is neither a variable nor a parameter", pos)


def parse_polynomial(text: str, domain: DomainSpec, order: OrderSpec) -> Polynomial:
    """Parse one polynomial expression over the given ring."""
    names = set(order.names) | set(domain.params)
    toks = _tokenize(text, names)
    return _ExprParser(toks, domain, order).parse()


# -- printer -----------------------------------------------------------------


def format_monomial(exps, names) -> str:
    parts = []
    for e, nm in zip(exps, names):
        if e == 1:
            parts.append(nm)
        elif e > 1:
            parts.append(f"{nm}^{e}")
    return "*".join(parts) if parts else "1"


def _format_param_poly(rep, params, char) -> str:
    """Render a parameter polynomial (nested-tuple rep) like t^2+3*t."""
    terms = rp_to_terms(rep, len(params))
    if not terms:
        return "0"
    keys = sorted(terms, reverse=True)  # descending lex on exponent tuples
    parts = []
    for e in keys:
        c = terms[e]
        mono = format_monomial(e, params)
        if mono == "1":
            piece = str(c)
        elif c == 1:
            piece = mono
        elif c == -1:
            piece = f"-{mono}"
        else:
            piece = f"{c}*{mono}"
        parts.append(piece)
    out = parts[0]
    for piece in parts[1:]:
        out += piece if piece.startswith("-") else "+" + piece
    return out


def format_scalar(s: Scalar) -> str:
    """Canonical coefficient text; parenthesized when it contains a sum,
    a parameter, or a fraction bar, so `coeff*mono` re-parses exactly."""
    dom = s.dom
    if not dom.params:
        return str(s.val)  # int or Fraction('a/b')
    rf = s.val
    num = _format_param_poly(rf.num, dom.params, dom.char)
    den = _format_param_poly(rf.den, dom.params, dom.char)
    if den == "1":
        if num.lstrip("-").isdigit():
            return num
        return f"({num})"
    return f"({num})/({den})"


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    names = f.order.names
    parts = []
    for term in f.terms:
        c, m = term.coefficient, term.monomial
        cs = format_scalar(c)
        ms = format_monomial(m, names)
        if ms == "1":
            piece = cs
        elif cs == "1":
            piece = ms
        elif cs == "-1":
            piece = f"-{ms}"
        else:
            piece = f"{cs}*{ms}"
        parts.append(piece)
    out = parts[0]
    for piece in parts[1:]:
        out += piece if piece.startswith("-") else "+" + piece
    return out
