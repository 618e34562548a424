"""Abstract syntax, parser and canonical printer for the identity language.

Grammar (whitespace-insensitive)::

    identity := expr ("==" expr | "===" expr "mod" INT)
    expr     := term (("+" | "-") term)*
    term     := factor (("*" | "/") factor)*
    factor   := atom ("^" ["-"] INT)?
    atom     := INT | "q" ("^" INT)? | "f" INT | "psi" ("(" "q" ("^" INT)? ")")?
              | "theta" "(" ["-"] "q" ("^" INT)? "," ["-"] "q" ("^" INT)? ")"
              | "RD" "(" INT "," INT "|" [INT] "n" ["+" INT] ")"
              | "auxA" | "auxB" | "dissectA" | "(" expr ")"

``fK`` is the Euler product f_K, ``psi(q^k)`` is psi with q replaced by q^k,
``theta(a, b)`` is Ramanujan's f(a, b), ``RD(l,t|mn+r)`` is the series
``sum RD^(l,t)(m n + r) q^n``, ``auxA`` is f_1^2, ``auxB`` is psi(q) psi(q^3)
and ``dissectA`` is the factor ``a`` of the 5-dissection of f_1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import ParseError, UnknownSymbol
from ..special import ThetaSpec


@dataclass(frozen=True)
class Expr:
    pos: int | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Int(Expr):
    value: int


@dataclass(frozen=True)
class QPow(Expr):
    exp: int


@dataclass(frozen=True)
class Eta(Expr):
    k: int


@dataclass(frozen=True)
class Psi(Expr):
    k: int = 1


@dataclass(frozen=True)
class Theta(Expr):
    spec: ThetaSpec


@dataclass(frozen=True)
class DissectA(Expr):
    pass


@dataclass(frozen=True)
class RD(Expr):
    ell: int
    t: int
    m: int
    r: int


@dataclass(frozen=True)
class AuxA(Expr):
    pass


@dataclass(frozen=True)
class AuxB(Expr):
    pass


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exp: int


ATOMS = (Int, QPow, Eta, Psi, Theta, DissectA, RD, AuxA, AuxB)


@dataclass(frozen=True)
class Identity:
    lhs: Expr
    rhs: Expr
    modulus: int | None = None


# -- printing -----------------------------------------------------------------

_SUM, _PRODUCT, _POWER, _ATOM = 1, 2, 3, 4


def _level(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return _SUM
    if isinstance(e, (Mul, Div)):
        return _PRODUCT
    if isinstance(e, Pow):
        return _POWER
    return _ATOM


def _q(sign: int, exp: int) -> str:
    body = "q" if exp == 1 else f"q^{exp}"
    return body if sign > 0 else "-" + body


def _wrap(e: Expr, need: int) -> str:
    text = to_text(e)
    return f"({text})" if _level(e) < need else text


def to_text(e: Expr) -> str:
    """Canonical text; ``parse_expr(to_text(e)) == e``."""
    if isinstance(e, Int):
        return str(e.value)
    if isinstance(e, QPow):
        return _q(1, e.exp)
    if isinstance(e, Eta):
        return f"f{e.k}"
    if isinstance(e, Psi):
        return "psi" if e.k == 1 else f"psi({_q(1, e.k)})"
    if isinstance(e, Theta):
        s = e.spec
        return f"theta({_q(s.a_sign, s.a_exp)}, {_q(s.b_sign, s.b_exp)})"
    if isinstance(e, DissectA):
        return "dissectA"
    if isinstance(e, RD):
        return f"RD({e.ell},{e.t}|{e.m}n+{e.r})"
    if isinstance(e, AuxA):
        return "auxA"
    if isinstance(e, AuxB):
        return "auxB"
    if isinstance(e, (Add, Sub)):
        op = " + " if isinstance(e, Add) else " - "
        return _wrap(e.left, _SUM) + op + _wrap(e.right, _PRODUCT)
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        return _wrap(e.left, _PRODUCT) + op + _wrap(e.right, _POWER)
    if isinstance(e, Pow):
        # a bare q would swallow the exponent into the atom
        base = f"({to_text(e.base)})" if isinstance(e.base, QPow) else _wrap(e.base, _ATOM)
        return f"{base}^{e.exp}"
    raise TypeError(f"not an expression node: {e!r}")


def identity_text(ident: Identity) -> str:
    if ident.modulus is None:
        return f"{to_text(ident.lhs)} == {to_text(ident.rhs)}"
    return f"{to_text(ident.lhs)} === {to_text(ident.rhs)} mod {ident.modulus}"


# -- lexing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(===|==|[-+*/^(),|])|(\d+)|([A-Za-z_][A-Za-z0-9_]*))")


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "int", "name", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    while True:
        while i < len(text) and text[i].isspace():
            i += 1
        if i >= len(text):
            break
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {text[i]!r}", *_line_col(text, i))
        op, num, name = m.groups()
        start = m.start(m.lastindex)
        if op:
            tokens.append(Token("op", op, start))
        elif num:
            tokens.append(Token("int", num, start))
        else:
            tokens.append(Token("name", name, start))
        i = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


# -- parsing ------------------------------------------------------------------

_ETA = re.compile(r"f(\d+)$")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Token | None = None, cls=ParseError):
        tok = tok or self.tok
        return cls(msg, *_line_col(self.text, tok.pos))

    def accept(self, text: str) -> Token | None:
        if self.tok.kind in ("op", "name") and self.tok.text == text:
            tok = self.tok
            self.i += 1
            return tok
        return None

    def expect(self, text: str) -> Token:
        tok = self.accept(text)
        if tok is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return tok

    def integer(self) -> int:
        if self.tok.kind != "int":
            found = self.tok.text or "end of input"
            raise self.error(f"expected an integer, found {found!r}")
        value = int(self.tok.text)
        self.i += 1
        return value

    def signed_integer(self) -> int:
        return -self.integer() if self.accept("-") else self.integer()

    def finish(self):
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")

    # grammar rules
    def identity(self) -> Identity:
        lhs = self.expr()
        if self.accept("==="):
            rhs = self.expr()
            self.expect("mod")
            mod_tok = self.tok
            m = self.integer()
            if m < 2:
                raise self.error("modulus must be >= 2", mod_tok)
            ident = Identity(lhs, rhs, m)
        elif self.accept("=="):
            ident = Identity(lhs, self.expr())
        else:
            raise self.error("expected '==' or '==='")
        self.finish()
        return ident

    def expr(self) -> Expr:
        node = self.term()
        while True:
            tok = self.accept("+") or self.accept("-")
            if tok is None:
                return node
            cls = Add if tok.text == "+" else Sub
            node = cls(node, self.term(), pos=tok.pos)

    def term(self) -> Expr:
        node = self.factor()
        while True:
            tok = self.accept("*") or self.accept("/")
            if tok is None:
                return node
            cls = Mul if tok.text == "*" else Div
            node = cls(node, self.factor(), pos=tok.pos)

    def factor(self) -> Expr:
        node = self.atom()
        tok = self.accept("^")
        if tok is not None:
            node = Pow(node, self.signed_integer(), pos=tok.pos)
        return node

    def q_power(self) -> int:
        self.expect("q")
        return self.integer() if self.accept("^") else 1

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "int":
            return Int(self.integer(), pos=tok.pos)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind != "name":
            found = tok.text or "end of input"
            raise self.error(f"expected an atom, found {found!r}")
        name = tok.text
        if name == "q":
            self.i += 1
            exp = self.integer() if self.accept("^") else 1
            return QPow(exp, pos=tok.pos)
        self.i += 1
        m = _ETA.match(name)
        if m:
            k = int(m.group(1))
            if k < 1:
                raise self.error(f"unknown symbol {name!r}", tok, UnknownSymbol)
            return Eta(k, pos=tok.pos)
        if name == "psi":
            if self.accept("("):
                k = self.q_power()
                self.expect(")")
                return Psi(k, pos=tok.pos)
            return Psi(1, pos=tok.pos)
        if name == "theta":
            self.expect("(")
            a_sign = -1 if self.accept("-") else 1
            a_exp = self.q_power()
            self.expect(",")
            b_sign = -1 if self.accept("-") else 1
            b_exp = self.q_power()
            self.expect(")")
            try:
                spec = ThetaSpec(a_sign, a_exp, b_sign, b_exp)
            except ValueError as exc:
                raise self.error(str(exc), tok) from None
            return Theta(spec, pos=tok.pos)
        if name == "RD":
            self.expect("(")
            ell = self.integer()
            self.expect(",")
            t = self.integer()
            self.expect("|")
            m = self.integer() if self.tok.kind == "int" else 1
            self.expect("n")
            r = self.integer() if self.accept("+") else 0
            self.expect(")")
            if ell < 2 or t < 2 or m < 1 or r >= m:
                raise self.error("RD needs ell, t >= 2, m >= 1 and 0 <= r < m", tok)
            return RD(ell, t, m, r, pos=tok.pos)
        simple = {"auxA": AuxA, "auxB": AuxB, "dissectA": DissectA}
        if name in simple:
            return simple[name](pos=tok.pos)
        raise self.error(f"unknown symbol {name!r}", tok, UnknownSymbol)


def parse_identity(text: str) -> Identity:
    return _Parser(text).identity()


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    node = p.expr()
    p.finish()
    return node


def walk(e: Expr):
    """Pre-order traversal of an expression tree."""
    yield e
    for child in ("left", "right", "base"):
        sub = getattr(e, child, None)
        if isinstance(sub, Expr):
            yield from walk(sub)
