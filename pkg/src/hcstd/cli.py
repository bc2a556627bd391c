"""Command-line front end.

A *session file* declares one local ring, named polynomials, and named
ideals, in a compact algebraic syntax::

    ring R  = 0,(x,y,z),ds;          // or (0,t),(x,y,z),ds; or 32003,...
    poly F  = x3y3+x5y2+2x2y5+z9;    // implicit powers and products
    ideal I = jacob(F),F;            // partials of F, then F itself
    std(I);                          // optional: default command/target

Subcommands: ``std``/``run`` (full truncation pipeline), ``hc`` and
``vdim`` (corner / vector-space dimension of the quotient), ``milnor``
and ``tjurina`` (Jacobian-ideal dimensions of a polynomial), ``bench``
(timing table over the built-in examples).

Exit codes: 0 success, 1 mathematical failure (e.g. the ideal is not
zero-dimensional, or a timeout), 2 parse or configuration error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field

from .coeff import DomainSpec, SpecializationFailure
from .corner import INFINITE, highest_corner, vdim as staircase_vdim
from .examples import EXAMPLE_NUMBERS, example_session
from .mora import ComputationTimeout, NonFinite
from .parse import (ParseError, format_monomial, format_polynomial,
                    parse_polynomial)
from .ring import IdealPresentation, OrderSpec, Polynomial, jacobian_ideal
from .semistd import (AlgorithmConfig, AlgorithmReport, ExhaustedRetries,
                      NotZeroDimensional, hc_std)

IDEAL_COMMANDS = ("std", "hc", "vdim", "run")
POLY_COMMANDS = ("milnor", "tjurina")


@dataclass
class Session:
    domain: DomainSpec = None
    order: OrderSpec = None
    ring_name: str = None
    polys: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    command: str = None
    target: str = None


_RING_RE = re.compile(r"ring\s+(\w+)\s*=\s*(.+)", re.S)
_POLY_RE = re.compile(r"poly\s+(\w+)\s*=\s*(.+)", re.S)
_IDEAL_RE = re.compile(r"ideal\s+(\w+)\s*=\s*(.+)", re.S)
_CMD_RE = re.compile(r"(std|hc|vdim|run|milnor|tjurina)\s*\(\s*(\w+)\s*\)\s*$")
_JACOB_RE = re.compile(r"jacob\s*\(\s*(\w+)\s*\)\s*$")


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("//", 1)[0] for line in text.splitlines())


def _split_top(text: str, sep: str = ","):
    """Split on sep outside parentheses."""
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _parse_ring_spec(spec: str, pos: int):
    parts = _split_top(spec)
    if len(parts) != 3:
        raise ParseError("ring spec must be <char>,(<vars>),<ordering>", pos)
    charpart, varpart, ordpart = parts
    params = ()
    if charpart.startswith("("):
        inner = _split_top(charpart.strip("() "))
        charpart = inner[0]
        params = tuple(nm.strip() for nm in inner[1:])
    try:
        char = int(charpart)
    except ValueError:
        raise ParseError(f"bad characteristic {charpart!r}", pos) from None
    if not (varpart.startswith("(") and varpart.endswith(")")):
        raise ParseError("variables must be parenthesized: (x,y,z)", pos)
    names = tuple(nm.strip() for nm in varpart[1:-1].split(","))
    weights = None
    m = re.fullmatch(r"(\w+)(?:\(([^)]*)\))?", ordpart)
    if not m:
        raise ParseError(f"bad ordering {ordpart!r}", pos)
    kind = m.group(1)
    if m.group(2) is not None:
        try:
            weights = tuple(int(w) for w in m.group(2).split(","))
        except ValueError:
            raise ParseError(f"bad weights {m.group(2)!r}", pos) from None
    try:
        domain = DomainSpec(char, params)
        order = OrderSpec(kind, names, weights)
    except ValueError as e:
        raise ParseError(str(e), pos) from None
    return domain, order


def parse_session(text: str) -> Session:
    """Parse a session file; raises ParseError with a text offset."""
    clean = _strip_comments(text)
    sess = Session()
    offset = 0
    for stmt in clean.split(";"):
        pos = offset
        offset += len(stmt) + 1
        stmt = stmt.strip()
        if not stmt:
            continue
        m = _RING_RE.fullmatch(stmt)
        if m:
            if sess.domain is not None:
                raise ParseError("only one ring per session", pos)
            sess.ring_name = m.group(1)
            sess.domain, sess.order = _parse_ring_spec(m.group(2), pos)
            continue
        if sess.domain is None:
            raise ParseError("ring must be declared first", pos)
        m = _POLY_RE.fullmatch(stmt)
        if m:
            name, expr = m.group(1), m.group(2)
            if name in sess.polys or name in sess.ideals:
                raise ParseError(f"duplicate name {name!r}", pos)
            sess.polys[name] = parse_polynomial(expr, sess.domain, sess.order)
            continue
        m = _IDEAL_RE.fullmatch(stmt)
        if m:
            name, body = m.group(1), m.group(2)
            if name in sess.polys or name in sess.ideals:
                raise ParseError(f"duplicate name {name!r}", pos)
            gens = []
            for item in _split_top(body):
                jm = _JACOB_RE.fullmatch(item)
                if jm:
                    fname = jm.group(1)
                    if fname not in sess.polys:
                        raise ParseError(f"unknown polynomial {fname!r}", pos)
                    gens.extend(jacobian_ideal(sess.polys[fname]).gens)
                elif item in sess.polys:
                    gens.append(sess.polys[item])
                else:
                    gens.append(parse_polynomial(item, sess.domain,
                                                 sess.order))
            sess.ideals[name] = IdealPresentation(sess.domain, sess.order,
                                                  tuple(gens))
            continue
        m = _CMD_RE.fullmatch(stmt)
        if m:
            sess.command, sess.target = m.group(1), m.group(2)
            continue
        raise ParseError(f"unsupported statement {stmt.split()[0]!r}", pos)
    if sess.domain is None:
        raise ParseError("session declares no ring", 0)
    return sess


# ---------------------------------------------------------------------------
# Reports.
# ---------------------------------------------------------------------------


class ConfigError(ValueError):
    """Bad flags or a missing target: exit code 2."""


def _target_ideal(sess: Session, opts) -> IdealPresentation:
    name = getattr(opts, "target", None) or \
        (sess.target if sess.command in IDEAL_COMMANDS else None)
    if name is None:
        if not sess.ideals:
            raise ConfigError("session defines no ideal")
        name = next(reversed(sess.ideals))
    if name not in sess.ideals:
        raise ConfigError(f"no ideal named {name!r} in session")
    return sess.ideals[name]


def _target_poly(sess: Session, opts) -> Polynomial:
    name = getattr(opts, "target", None) or \
        (sess.target if sess.command in POLY_COMMANDS else None)
    if name is None:
        if not sess.polys:
            raise ConfigError("session defines no polynomial")
        name = next(reversed(sess.polys))
    if name not in sess.polys:
        raise ConfigError(f"no polynomial named {name!r} in session")
    return sess.polys[name]


def _config(opts) -> AlgorithmConfig:
    point = None
    if getattr(opts, "point", None):
        try:
            point = tuple(int(v) for v in opts.point.split(","))
        except ValueError:
            raise ConfigError(f"bad --point {opts.point!r}") from None
    return AlgorithmConfig(seed=opts.seed, max_retries=opts.max_retries,
                           prime=opts.prime, point=point,
                           timeout=opts.timeout,
                           truncate=not opts.no_truncate)


def _mono_str(monomial, order) -> str:
    return format_monomial(monomial, order.names)


def _corner_str(hc, order):
    if hc is None:
        return None
    if hc.whole_ring:
        return "1"
    return _mono_str(hc.monomial, order)


def _attempt_json(rec):
    def dim(v):
        if v is None:
            return None
        return "infinite" if v is INFINITE else v
    return {"point": rec.point.describe(), "outcome": rec.outcome,
            "dp": dim(rec.dp), "d0": dim(rec.d0)}


def report_json(cmd: str, report: AlgorithmReport, order: OrderSpec,
                timings: bool) -> str:
    # For the direct `hc` query the corner of the result is the answer;
    # for the pipeline commands `hc` reports the corner that drove the
    # truncation (null when the run fell back to no truncation).
    if cmd == "hc":
        corner = _corner_str(highest_corner(report.staircase), order)
    else:
        corner = _corner_str(report.hc, order)
    obj = {
        "command": cmd,
        "basis": [format_polynomial(g) for g in report.basis],
        "leading_ideal": [_mono_str(m, order) for m in report.staircase],
        "hc": corner,
        "vdim": report.d0,
        "d0": report.d0,
        "dp": report.dp,
        "points_tried": [_attempt_json(r) for r in report.points_tried],
        "fallback": report.fallback,
    }
    if timings:
        obj["timings_ms"] = {k: round(v, 3)
                             for k, v in report.timings_ms.items()}
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def report_text(cmd: str, report: AlgorithmReport, order: OrderSpec,
                timings: bool) -> str:
    lines = []
    if cmd in ("vdim", "milnor", "tjurina"):
        lines.append(str(report.d0))
    else:
        lines.append(f"// standard basis ({len(report.basis)} elements):")
        for i, g in enumerate(report.basis):
            lines.append(f"  [{i + 1}] {format_polynomial(g)}")
        stair = ",".join(_mono_str(m, order) for m in report.staircase)
        lines.append(f"// leading ideal: {stair}")
        own = _corner_str(highest_corner(report.staircase), order)
        lines.append(f"// highest corner: {own}")
        lines.append(f"// vdim: {report.d0}")
        if report.dp is not None:
            lines.append(f"// modular dimension dp: {report.dp}")
        if report.points_tried:
            for rec in report.points_tried:
                lines.append(f"// tried {rec.point.describe()}: {rec.outcome}")
        if report.fallback:
            lines.append("// fallback: computed without truncation")
    if timings:
        t = report.timings_ms
        lines.append("// timings_ms: " + ", ".join(
            f"{k}={t[k]:.1f}" for k in ("probe", "bound", "main", "verify")))
    return "\n".join(lines) + "\n"


def run_command(session: Session, cmd: str, opts) -> str:
    """Execute one subcommand against a parsed session, returning the
    report text (JSON when opts.json)."""
    config = _config(opts)
    if cmd in POLY_COMMANDS:
        F = _target_poly(session, opts)
        ideal = jacobian_ideal(F, include_f=(cmd == "tjurina"))
    else:
        ideal = _target_ideal(session, opts)
    report = hc_std(ideal, config)
    fmt = report_json if opts.json else report_text
    return fmt(cmd, report, session.order, opts.timings)


# ---------------------------------------------------------------------------
# Benchmarks.
# ---------------------------------------------------------------------------


def _bench_one(ideal: IdealPresentation, config: AlgorithmConfig):
    t0 = time.perf_counter()
    try:
        hc_std(ideal, config)
    except ComputationTimeout:
        return None
    return (time.perf_counter() - t0) * 1000.0


def bench(opts) -> str:
    if opts.examples == "all":
        nums = EXAMPLE_NUMBERS
    else:
        try:
            nums = tuple(int(v) for v in opts.examples.split(","))
        except ValueError:
            raise ConfigError(f"bad --examples {opts.examples!r}") from None
        for i in nums:
            if i not in EXAMPLE_NUMBERS:
                raise ConfigError(f"no example {i}; choose from 1..8")
    rows = ["example,truncated_ms,untruncated_ms,speedup"]
    for i in nums:
        sess = parse_session(example_session(i, opts.seed))
        ideal = sess.ideals[next(reversed(sess.ideals))]
        base = _config(opts)
        base.timeout = opts.timeout
        trunc = _bench_one(ideal, base)
        plain = AlgorithmConfig(seed=base.seed, max_retries=base.max_retries,
                                prime=base.prime, point=base.point,
                                timeout=opts.timeout, truncate=False)
        untrunc = _bench_one(ideal, plain)
        if trunc is None:
            rows.append(f"{i},TIMEOUT,TIMEOUT,")
            continue
        if untrunc is None:
            cap = (opts.timeout or 0) * 1000.0
            spd = f">{cap / trunc:.1f}" if trunc > 0 and cap else ""
            rows.append(f"{i},{trunc:.1f},TIMEOUT,{spd}")
        else:
            rows.append(f"{i},{trunc:.1f},{untrunc:.1f},"
                        f"{untrunc / trunc:.1f}")
    return "\n".join(rows) + "\n"


# ---------------------------------------------------------------------------
# Entry point.
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=None,
                        help="prime for the first specialization attempt")
    common.add_argument("--point", default=None,
                        help="parameter point, e.g. 1,-2 (first attempt)")
    common.add_argument("--seed", type=int, default=100,
                        help="seed for retry primes/points (default 100)")
    common.add_argument("--max-retries", type=int, default=5)
    common.add_argument("--no-truncate", action="store_true",
                        help="skip the modular probe; plain computation")
    common.add_argument("--json", action="store_true")
    common.add_argument("--timings", action="store_true",
                        help="include per-phase timings in the report")
    common.add_argument("--timeout", type=float, default=None,
                        help="wall-clock budget in seconds")
    common.add_argument("--target", default=None,
                        help="name of the ideal/polynomial to use")
    p = argparse.ArgumentParser(
        prog="hcstd",
        description="standard bases in local rings via modular highest-"
                    "corner truncation")
    sub = p.add_subparsers(dest="cmd", required=True)
    for name, desc in (
            ("run", "full pipeline: probe, truncate, verify"),
            ("std", "standard basis (same pipeline as run)"),
            ("hc", "highest corner of the leading ideal"),
            ("vdim", "dimension of the local quotient ring"),
            ("milnor", "Milnor number of a polynomial"),
            ("tjurina", "Tjurina number of a polynomial")):
        sp = sub.add_parser(name, parents=[common], help=desc)
        sp.add_argument("session", help="session file path, or - for stdin")
    bp = sub.add_parser("bench", parents=[common],
                        help="CSV timing table over the built-in examples")
    bp.add_argument("--examples", default="all",
                    help="comma-separated example numbers, or 'all'")
    return p


def main(argv=None) -> int:
    opts = _build_parser().parse_args(argv)
    try:
        if opts.cmd == "bench":
            sys.stdout.write(bench(opts))
            return 0
        text = (sys.stdin.read() if opts.session == "-"
                else open(opts.session, encoding="utf-8").read())
        session = parse_session(text)
        sys.stdout.write(run_command(session, opts.cmd, opts))
        return 0
    except (ParseError, ConfigError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (NotZeroDimensional, NonFinite, ComputationTimeout,
            ExhaustedRetries, SpecializationFailure) as e:
        print(f"failed: {e.__class__.__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
