"""Built-in example corpus for the benchmark harness and tests.

Examples 1-3 and 5-7 are fixed session texts (three singularities over Q
and three one-parameter families over Q(t), each studied through its
Jacobian ideal or Tjurina-style ideal).  Examples 4 and 8 are pseudo-
random dense instances: five generators, each a random linear
combination of *all* monomials of the stated degrees over four
variables, with coefficients drawn uniformly from [-99,99] without 0 by
an owned seeded PRNG.  The random instances are structurally faithful
but not bit-identical to any external system's generator, so their
numeric invariants are computed, never assumed.
"""

from __future__ import annotations

import random

_FIXED = {
    1: """\
ring R = 0,(x,y,z),ds;
poly F = x3y3+x5y2+2x2y5+x2y2z3+xy7+z9+y13+x25;
ideal I = jacob(F),F;
""",
    2: """\
ring R = 0,(x,y,z),ds;
poly F = xyz*(x+y+z)^2+(x+y+z)^3+x15+y15+z15;
ideal I = jacob(F);
""",
    3: """\
ring R = 0,(x,y,z),ds;
poly F = x8y6+x10y5+x8y7+2x7y8+x7y6z2+x16+x6y10+y18+z20;
ideal I = jacob(F);
""",
    5: """\
ring R = (0,t),(x,y,z),ds;
poly F = y10+t2*x7y7+x15+x9y6+2t*x6y9+x6y6z3+x5y11+z21;
ideal I = jacob(F);
""",
    6: """\
ring R = (0,t),(x,y,z),ds;
poly F = xyz*(x+y+z)^2+(x+y+z)^3+t*(x15+y15+z15);
ideal I = jacob(F);
""",
    7: """\
ring R = (0,t),(x,y,z),ds;
poly F = x8y6+x10y5+x8y7+2x7y8+x7y6z2+x16+x6y10+t*y18+t2*z20;
ideal I = jacob(F);
""",
}

_VARS4 = ("x", "y", "z", "w")


def _monomials(n: int, d: int):
    """Exponent tuples of total degree d, lexicographically descending."""
    if n == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in _monomials(n - 1, d - e):
            yield (e,) + rest


def _mono_text(exps) -> str:
    bits = []
    for v, e in zip(_VARS4, exps):
        if e == 1:
            bits.append(v)
        elif e > 1:
            bits.append(f"{v}{e}")
    return "".join(bits) or "1"


def _coeff(rng: random.Random) -> int:
    c = rng.randint(-99, 98)
    return c + 1 if c >= 0 else c


def _random_combination(rng, degrees, param_degrees=()) -> str:
    terms = []
    for d in degrees:
        for m in _monomials(4, d):
            terms.append(f"{_coeff(rng)}*{_mono_text(m)}")
    for d in param_degrees:
        for m in _monomials(4, d):
            terms.append(f"{_coeff(rng)}*t*{_mono_text(m)}")
    return "+".join(terms).replace("+-", "-")


def _random_session(seed: int, degrees, param_degrees, header: str) -> str:
    rng = random.Random(seed)
    gens = [_random_combination(rng, degrees, param_degrees)
            for _ in range(5)]
    body = ",\n  ".join(gens)
    return f"{header}\nideal I = {body};\n"


def example_session(i: int, seed: int = 100) -> str:
    """Session text for built-in example i (1..8)."""
    if i in _FIXED:
        return _FIXED[i]
    if i == 4:
        return _random_session(seed, (5, 7, 10), (),
                               "ring R = 0,(x,y,z,w),ds;")
    if i == 8:
        return _random_session(seed, (5, 7), (9,),
                               "ring R = (0,t),(x,y,z,w),ds;")
    raise ValueError(f"no built-in example {i}; choose 1..8")


EXAMPLE_NUMBERS = (1, 2, 3, 4, 5, 6, 7, 8)
