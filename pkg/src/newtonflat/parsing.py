"""Expression language for defining functions and curve jets.

Grammar (positions in errors are 0-based offsets into the whole input)::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' factor) | ('/' factor))*      divisor must be a nonzero constant
    factor  := '-' factor | power
    power   := primary ('^' INT)*
    primary := NUMBER | 'i' | 'z' INT | 'w' | 'conj(' expr ')' | 'Re(' expr ')'
             | 'Im(' expr ')' | '|' expr '|' '^' EVEN | '(' expr ')'

An optional first line ``# n=<int> T=<int> [complete] [w] [tail=z1:factorial:1[:start]]``
fixes the number of z variables, the truncation order and what is known
above it.  Without ``T`` the input is an exact polynomial germ.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeOverflow, DimensionMismatch, ExprSyntaxError, NonRealExpression, NotAHypersurface
from .gaussian import GaussianRational, gq
from .hermitian import ConjPoly, HermitianJet, degree_of
from .tails import CoefficientRule

MAX_DEGREE = 400
OPERAND = ("number", "variable", "'i'", "'('", "'|'", "'conj('", "'Re('", "'Im('", "'-'")

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()|,=]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # num, name, op, end
    text: str
    pos: int


def tokenize(text: str, start: int = 0, end: int | None = None) -> list:
    end = len(text) if end is None else end
    out = []
    i = start
    while i < end:
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i, end)
        if not m or m.end() == i:
            raise ExprSyntaxError(f"unexpected character {text[i]!r}", i)
        kind = m.lastgroup
        tok_start = m.start(kind)
        out.append(Token(kind, m.group(kind), tok_start))
        i = m.end()
    out.append(Token("end", "", end))
    return out


class _Parser:
    def __init__(self, tokens, var_index, nvars, allow_conj=True):
        self.toks = tokens
        self.k = 0
        self.var_index = var_index
        self.nvars = nvars
        self.allow_conj = allow_conj

    @property
    def cur(self) -> Token:
        return self.toks[self.k]

    def take(self) -> Token:
        t = self.toks[self.k]
        self.k += 1
        return t

    def is_op(self, s) -> bool:
        return self.cur.kind == "op" and self.cur.text == s

    def expect_op(self, s):
        if not self.is_op(s):
            raise ExprSyntaxError(f"expected {s!r}", self.cur.pos, (f"'{s}'",))
        return self.take()

    def const(self, c) -> ConjPoly:
        return ConjPoly.constant(self.nvars, c)

    def parse(self) -> ConjPoly:
        v = self.expr()
        if self.cur.kind != "end":
            raise ExprSyntaxError(f"unexpected {self.cur.text!r}", self.cur.pos, ("operator", "end of input"))
        return v

    def expr(self) -> ConjPoly:
        v = self.term()
        while self.is_op("+") or self.is_op("-"):
            op = self.take().text
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self) -> ConjPoly:
        v = self.factor()
        while self.is_op("*") or self.is_op("/"):
            op = self.take().text
            pos = self.cur.pos
            rhs = self.factor()
            if op == "*":
                v = v * rhs
            else:
                if not rhs.is_constant():
                    raise ExprSyntaxError("division by a non-constant", pos, ("constant",))
                c = rhs.constant_term()
                if not c:
                    raise ExprSyntaxError("division by zero", pos, ("nonzero constant",))
                v = v.scale(c.inverse())
        return v

    def factor(self) -> ConjPoly:
        if self.is_op("-"):
            self.take()
            return -self.factor()
        return self.power()

    def exponent(self) -> tuple[int, int]:
        t = self.cur
        if t.kind != "num" or "." in t.text:
            raise ExprSyntaxError("expected a nonnegative integer exponent", t.pos, ("integer",))
        self.take()
        return int(t.text), t.pos

    def power(self) -> ConjPoly:
        v = self.primary()
        while self.is_op("^"):
            self.take()
            e, pos = self.exponent()
            if v.degree() * e > MAX_DEGREE:
                raise DegreeOverflow(f"power at position {pos} exceeds degree {MAX_DEGREE}")
            v = v ** e
        return v

    def primary(self) -> ConjPoly:
        t = self.cur
        if t.kind == "num":
            self.take()
            return self.const(Fraction(t.text))
        if t.kind == "name":
            name = t.text
            if name == "i":
                self.take()
                return self.const(gq(0, 1))
            if name in ("conj", "Re", "Im"):
                if not self.allow_conj:
                    raise ExprSyntaxError(f"{name} is not allowed here", t.pos, ("holomorphic term",))
                self.take()
                self.expect_op("(")
                inner = self.expr()
                self.expect_op(")")
                if name == "conj":
                    return inner.conj()
                if name == "Re":
                    return (inner + inner.conj()).scale(Fraction(1, 2))
                return (inner - inner.conj()).scale(gq(0, Fraction(-1, 2)))
            if name in self.var_index:
                self.take()
                return ConjPoly.variable(self.nvars, self.var_index[name])
            raise ExprSyntaxError(f"unknown name {name!r}", t.pos, OPERAND)
        if t.kind == "op" and t.text == "(":
            self.take()
            v = self.expr()
            self.expect_op(")")
            return v
        if t.kind == "op" and t.text == "|":
            if not self.allow_conj:
                raise ExprSyntaxError("|.| is not allowed here", t.pos, ("holomorphic term",))
            self.take()
            inner = self.expr()
            self.expect_op("|")
            self.expect_op("^")
            e, pos = self.exponent()
            if e == 0 or e % 2:
                raise ExprSyntaxError("the exponent of |.| must be a positive even integer", pos, ("even integer",))
            if 2 * inner.degree() * e > 2 * MAX_DEGREE:
                raise DegreeOverflow(f"power at position {pos} exceeds degree {MAX_DEGREE}")
            return (inner * inner.conj()) ** (e // 2)
        if t.kind == "end":
            raise ExprSyntaxError("unexpected end of input", t.pos, OPERAND)
        raise ExprSyntaxError(f"unexpected {t.text!r}", t.pos, OPERAND)


# directive ------------------------------------------------------------------

@dataclass(frozen=True)
class Directive:
    n: int | None = None
    T: int | None = None
    complete: bool = False
    tails: tuple = ()  # (z index 1-based, kind, param, start, position)
    w: bool = False  # declare w even when every w term cancelled


def _parse_directive(line: str, offset: int) -> Directive:
    n = T = None
    complete = has_w = False
    tails = []
    for m in re.finditer(r"\S+", line[1:]):
        word, pos = m.group(), offset + 1 + m.start()
        if word.startswith("n="):
            if not word[2:].isdigit() or int(word[2:]) < 0:
                raise ExprSyntaxError("bad n= value", pos + 2, ("integer",))
            n = int(word[2:])
        elif word.startswith("T="):
            if not word[2:].isdigit() or int(word[2:]) < 1:
                raise ExprSyntaxError("bad T= value", pos + 2, ("positive integer",))
            T = int(word[2:])
        elif word == "complete":
            complete = True
        elif word == "w":
            has_w = True
        elif word.startswith("tail="):
            parts = word[5:].split(":")
            ok = len(parts) in (3, 4) and re.fullmatch(r"z\d+", parts[0]) and parts[1] in ("geometric", "factorial", "polynomial")
            if not ok:
                raise ExprSyntaxError("bad tail rule (use tail=zK:kind:param[:start])", pos + 5, ("zK:kind:param",))
            try:
                param = Fraction(parts[2])
                start = int(parts[3]) if len(parts) == 4 else None
                CoefficientRule(parts[1], param, int(parts[0][1:]) - 1, start)
            except ValueError as exc:
                raise ExprSyntaxError(f"bad tail parameter ({exc})", pos + 5, ("rational",)) from None
            tails.append((int(parts[0][1:]), parts[1], param, start, pos))
        else:
            raise ExprSyntaxError(f"unknown directive {word!r}", pos, ("n=", "T=", "complete", "tail=", "w"))
    return Directive(n, T, complete, tuple(tails), has_w)


# defining functions -----------------------------------------------------------

@dataclass(frozen=True)
class DefiningFunction:
    nvars: int  # number of z variables
    has_w: bool
    jet: HermitianJet
    source_text: str

    @property
    def names(self) -> list:
        return variable_names(self.nvars, self.has_w)

    @property
    def w_index(self) -> int | None:
        return self.nvars if self.has_w else None


def variable_names(n: int, has_w: bool) -> list:
    return [f"z{k}" for k in range(1, n + 1)] + (["w"] if has_w else [])


def parse(text: str, truncation: int | None = None) -> DefiningFunction:
    """Parse a defining function; ``truncation`` overrides a ``T=`` directive."""
    body_start = 0
    directive = Directive()
    stripped = text.lstrip()
    lead = len(text) - len(stripped)
    if stripped.startswith("#"):
        nl = text.find("\n", lead)
        line_end = len(text) if nl < 0 else nl
        directive = _parse_directive(text[lead:line_end], lead)
        body_start = line_end
    toks = tokenize(text, body_start)
    max_z = 0
    has_w = directive.w
    for t in toks:
        if t.kind == "name":
            if re.fullmatch(r"z\d+", t.text):
                k = int(t.text[1:])
                if k < 1:
                    raise ExprSyntaxError("variables are numbered from z1", t.pos, ("z1",))
                max_z = max(max_z, k)
            elif t.text == "w":
                has_w = True
    n = directive.n if directive.n is not None else max_z
    if max_z > n:
        bad = next(t for t in toks if t.kind == "name" and re.fullmatch(r"z\d+", t.text) and int(t.text[1:]) > n)
        raise ExprSyntaxError(f"{bad.text} exceeds n={n}", bad.pos, (f"z1..z{n}",))
    if n == 0 and not has_w:
        n = 1
    names = variable_names(n, has_w)
    index = {name: i for i, name in enumerate(names)}
    poly = _Parser(toks, index, len(names)).parse()
    if not poly.is_hermitian():
        raise NonRealExpression("expression is not real-valued (wrap holomorphic terms in Re/Im or |.|^2)")
    T = truncation if truncation is not None else directive.T
    deg = poly.degree()
    if T is None:
        if directive.tails:
            raise ExprSyntaxError("tail rules need T=", 0, ("T=",))
        return DefiningFunction(n, has_w, HermitianJet(len(names), dict(poly.terms), max(1, deg), ()), text)
    if deg > T:
        raise DegreeOverflow(f"expression has degree {deg} > T={T}")
    tail = None
    if directive.complete:
        tail = ()
    if directive.tails:
        rules = []
        for k, kind, param, start, _ in directive.tails:
            if k > n:
                raise DimensionMismatch(f"tail on z{k} but n={n}")
            rules.append(CoefficientRule(kind, param, k - 1, start))
        tail = tuple(rules)
    try:
        jet = HermitianJet(len(names), dict(poly.terms), T, tail)
    except ValueError as exc:  # a tail rule contradicting the stored terms, or a repeated rule
        raise ExprSyntaxError(str(exc), directive.tails[0][4] if directive.tails else 0, ("tail=",)) from None
    return DefiningFunction(n, has_w, jet, text)


def parse_holomorphic(text: str, var: str = "t", offset: int = 0, end: int | None = None) -> dict:
    """Univariate holomorphic polynomial ``degree -> coefficient``."""
    toks = tokenize(text, offset, end)
    poly = _Parser(toks, {var: 0}, 1, allow_conj=False).parse()
    return {a[0]: c for (a, b), c in poly.terms.items()}


_CURVE = re.compile(r"\s*(?:gamma\s*=\s*)?\(")


def parse_curve(text: str, kind: str = "full"):
    """``gamma = (t^2, t^3, -(t^16+t^18+t^20)) valid 40``; without ``valid`` the curve is exact."""
    from .curves import CurveJet, BadCurve

    m = _CURVE.match(text)
    if not m:
        raise ExprSyntaxError("expected '(' starting the curve components", len(text) - len(text.lstrip()), ("'('",))
    depth = 0
    pieces = []
    start = m.end()
    i = start
    close = None
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            if depth == 0:
                pieces.append((start, i))
                close = i
                break
            depth -= 1
        elif ch == "," and depth == 0:
            pieces.append((start, i))
            start = i + 1
        i += 1
    if close is None:
        raise ExprSyntaxError("unterminated curve", len(text), ("')'",))
    comps = [parse_holomorphic(text, "t", a, b) for a, b in pieces]
    rest = text[close + 1:]
    validity = None
    if rest.strip():
        mv = re.fullmatch(r"\s*valid\s+(\d+)\s*", rest)
        if not mv:
            pos = close + 1 + (len(rest) - len(rest.lstrip()))
            raise ExprSyntaxError("expected 'valid <int>' or end", pos, ("valid",))
        validity = int(mv.group(1))
    for p in comps:
        if 0 in p:
            raise BadCurve("curve components must vanish at t=0")
    c = CurveJet(tuple(comps), validity, kind)
    if not c.is_good():
        raise BadCurve(f"not a good parametrization: every exponent is divisible by {c.exponent_gcd()}")
    return c


# printing ------------------------------------------------------------------------

def _num(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _gauss(c: GaussianRational) -> str:
    if not c.im:
        return _num(c.re)
    if not c.re:
        return _imag(c.im)
    sign = "-" if c.im < 0 else "+"
    return f"{_num(c.re)} {sign} {_imag(abs(c.im))}"


def _imag(x: Fraction) -> str:
    if abs(x) == 1:
        return "i" if x > 0 else "-i"
    return f"{_num(x)}*i"


def _mono(alpha, beta, names) -> str:
    parts = []
    for k, e in enumerate(alpha):
        if e:
            parts.append(names[k] if e == 1 else f"{names[k]}^{e}")
    for k, e in enumerate(beta):
        if e:
            parts.append(f"conj({names[k]})" if e == 1 else f"conj({names[k]})^{e}")
    return "*".join(parts)


def print_poly(terms: dict, names) -> str:
    """Plain sum of ``coefficient*monomial`` terms (no reality folding), highest degree first."""
    out = []
    for (a, b), c in sorted(terms.items(), key=lambda kv: (-degree_of(kv[0]), kv[0])):
        mono = _mono(a, b, names)
        neg = not c.im and c.re < 0
        coef = _gauss(-c if neg else c)
        if c.im and c.re:
            coef = f"({coef})"
        body = mono if coef == "1" and mono else coef if not mono else f"{coef}*{mono}"
        out.append(("- " if neg else "+ ") + body)
    if not out:
        return "0"
    text = " ".join(out)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def print_jet(jet: HermitianJet, has_w: bool = False) -> str:
    """Text that :func:`parse` maps back to exactly ``jet`` (directive included)."""
    n = jet.nvars - (1 if has_w else 0)
    names = variable_names(n, has_w)
    head = [f"n={n}", f"T={jet.truncation}"]
    if has_w and not any(a[-1] or b[-1] for a, b in jet.coeffs):
        head.append("w")
    if jet.tail == ():
        head.append("complete")
    for rule in jet.tail or ():
        s = f"tail=z{rule.var + 1}:{rule.kind}:{rule.param}"
        if rule.start is not None:
            s += f":{rule.start}"
        head.append(s)
    terms = []
    for (a, b), c in sorted(jet.coeffs.items(), key=lambda kv: (degree_of(kv[0]), kv[0]), reverse=True):
        if (a, b) < (b, a):
            continue
        mono = _mono(a, b, names)
        if a == b or c.is_real():
            x = c.re if a == b else 2 * c.re
            neg, x = x < 0, abs(x)
            body = mono if a == b else f"Re({mono})"
            coef = _num(x)
            text = coef if not mono else body if coef == "1" else f"{coef}*{body}"
        else:
            neg, text = False, f"2*Re(({_gauss(c)})*{mono})"
        terms.append((neg, text))
    terms.reverse()
    body = ""
    for k, (neg, text) in enumerate(terms):
        if k == 0:
            body = f"-{text}" if neg else text
        else:
            body += f" - {text}" if neg else f" + {text}"
    body = body or "0"
    return "# " + " ".join(head) + "\n" + body + "\n"


# form recognition ------------------------------------------------------------------

GENERAL = "General"
STANDARD = "Standard"
MODEL = "Model"


def _divisible_by_imw_squared(Q: dict) -> bool:
    """``Q(w, wbar)`` (dict ``(p, q) -> c``) lies in the ideal ``(w - wbar)^2``."""
    diag: dict = {}
    deriv: dict = {}
    for (p, q), c in Q.items():
        diag[p + q] = diag.get(p + q, gq(0)) + c
        if p:
            deriv[p + q - 1] = deriv.get(p + q - 1, gq(0)) + c * p
    return all(not v for v in diag.values()) and all(not v for v in deriv.values())


def recognize_form(F: DefiningFunction) -> str:
    """``Model``, ``Standard`` or ``General`` at the level of the stored jet."""
    jet = F.jet
    n = jet.nvars
    if not any(degree_of(k) == 1 for k in jet.coeffs):
        raise NotAHypersurface("the gradient of the defining function vanishes at 0")
    if not F.has_w:
        return GENERAL
    k = n - 1
    zero = (0,) * n
    e = tuple(1 if j == k else 0 for j in range(n))
    if jet.coeffs.get((e, zero)) != gq(1) or jet.coeffs.get((zero, e)) != gq(1):
        return GENERAL
    by_z: dict = {}
    for (a, b), c in jet.coeffs.items():
        za, zb = a[:k] + (0,), b[:k] + (0,)
        by_z.setdefault((za, zb), {})[(a[k], b[k])] = c
    model = True
    for (za, zb), Q in by_z.items():
        zdeg = sum(za) + sum(zb)
        if zdeg == 0:
            rest = {pq: c for pq, c in Q.items() if pq not in ((1, 0), (0, 1))}
            if (0, 0) in rest:
                return GENERAL
            if rest:
                model = False
                if not _divisible_by_imw_squared({pq: c for pq, c in rest.items() if sum(pq) >= 2}):
                    return GENERAL
            continue
        if zdeg == 1 and (0, 0) in Q:
            return GENERAL
        lin_w, lin_wb = Q.get((1, 0)), Q.get((0, 1))
        if lin_w or lin_wb:
            model = False
            if lin_w is None or lin_wb is None or lin_w != -lin_wb:
                return GENERAL
        higher = {pq: c for pq, c in Q.items() if sum(pq) >= 2}
        if higher:
            model = False
            if not _divisible_by_imw_squared(higher):
                return GENERAL
    return MODEL if model else STANDARD


__all__ = [
    "Token", "tokenize", "Directive", "DefiningFunction", "parse", "parse_curve",
    "parse_holomorphic", "print_jet", "recognize_form", "variable_names",
    "GENERAL", "STANDARD", "MODEL",
]
