"""Expression grammar and canonical printer for the CLI.

Grammar (usual precedence; functions bind tighter than operators)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | atom
    atom    := integer | 'eps' '^' '(' rational ')' | 'alpha' '(' rational ')'
             | 'O' '(' rational ')' | chi | piece | 'quat' '(' expr ';' expr ';' expr ';' expr ')'
             | 'i' | 'j' | 'k' | func '(' expr ')' | '(' expr ')'
    func    := 'sqrt' | 'abs' | 'conj' | 'normsq'
    chi     := 'chi' '{' 'm' '=' integer ';' 'T' '=' list [';' 'N' '=' integer]
               [';' 'in' '=' list] [';' 'out' '=' list] '}'
    piece   := 'piece' '[' chi ':' expr (';' chi ':' expr)* ']'

Rationals are written with '/'; in expression position this is ordinary
division, which computes the same exact value.  ``O(q)`` denotes zero known
only up to order q, so truncated values have a faithful textual form.
Printing emits canonical forms only, and ``parse(print(v)) == v`` holds for
every canonical real value.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .gennum import (
    INF,
    GenNumber,
    PuiseuxSeries,
    abs_sq,
    alpha,
    chi,
    conj,
    from_scalar,
    gen_abs,
    piecewise,
    sqrt,
    zero,
)
from .indexsets import IndexSet, make_periodic
from .quaternion import GenQuaternion, norm_sq, q_i, q_j, q_k, qconj
from .scalars import GaussianRational

_PUNCT = ("+", "-", "*", "/", "^", "(", ")", "[", "]", "{", "}", ";", ":", "=", ",")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []  # (kind, value, offset)
        i, n = 0, len(text)
        while i < n:
            c = text[i]
            if c.isspace():
                i += 1
                continue
            if c.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.toks.append(("int", text[i:j], i))
                i = j
                continue
            if c.isalpha() or c == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(("name", text[i:j], i))
                i = j
                continue
            if c in _PUNCT:
                self.toks.append((c, c, i))
                i += 1
                continue
            raise ParseError(f"unexpected character {c!r}", i)
        self.toks.append(("eof", "", n))
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.pos]

    def next(self) -> tuple[str, str, int]:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        k, v, off = self.peek()
        if k != kind or (value is not None and v != value):
            want = value if value is not None else kind
            raise ParseError(f"unexpected token {v or k!r}", off, (want,))
        return self.next()

    def accept(self, kind: str, value: str | None = None) -> bool:
        k, v, _ = self.peek()
        if k == kind and (value is None or v == value):
            self.next()
            return True
        return False


_FUNCS = ("sqrt", "abs", "conj", "normsq")


class _Parser:
    def __init__(self, text: str):
        self.toks = _Tokens(text)

    def parse(self):
        v = self.expr()
        k, tok, off = self.toks.peek()
        if k != "eof":
            raise ParseError(f"trailing input {tok!r}", off, ("end of input",))
        return v

    # -- precedence levels -------------------------------------------------

    def expr(self):
        v = self.term()
        while True:
            if self.toks.accept("+"):
                v = v + self.term()
            elif self.toks.accept("-"):
                v = v - self.term()
            else:
                return v

    def term(self):
        v = self.unary()
        while True:
            if self.toks.accept("*"):
                v = v * self.unary()
            elif self.toks.accept("/"):
                v = v / self.unary()
            else:
                return v

    def unary(self):
        if self.toks.accept("-"):
            return -self.unary()
        return self.atom()

    # -- atoms ---------------------------------------------------------------

    def rational(self) -> Fraction:
        sign = 1
        if self.toks.accept("-"):
            sign = -1
        num = int(self.toks.expect("int")[1])
        if self.toks.accept("/"):
            den = int(self.toks.expect("int")[1])
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    def int_list(self) -> list[int]:
        self.toks.expect("[")
        out = []
        if not self.toks.accept("]"):
            out.append(int(self.toks.expect("int")[1]))
            while self.toks.accept(","):
                out.append(int(self.toks.expect("int")[1]))
            self.toks.expect("]")
        return out

    def chi_literal(self) -> IndexSet:
        self.toks.expect("{")
        self.toks.expect("name", "m")
        self.toks.expect("=")
        modulus = int(self.toks.expect("int")[1])
        self.toks.expect(";")
        self.toks.expect("name", "T")
        self.toks.expect("=")
        residues = self.int_list()
        threshold, ins, outs = 0, [], []
        if self.toks.accept(";"):
            self.toks.expect("name", "N")
            self.toks.expect("=")
            threshold = int(self.toks.expect("int")[1])
            if self.toks.accept(";"):
                self.toks.expect("name", "in")
                self.toks.expect("=")
                ins = self.int_list()
                if self.toks.accept(";"):
                    self.toks.expect("name", "out")
                    self.toks.expect("=")
                    outs = self.int_list()
        self.toks.expect("}")
        return make_periodic(modulus, residues, threshold, ins, outs)

    def atom(self):
        k, v, off = self.toks.peek()
        if k == "int":
            self.toks.next()
            return from_scalar(int(v))
        if k == "(":
            self.toks.next()
            value = self.expr()
            self.toks.expect(")")
            return value
        if k == "name":
            self.toks.next()
            if v == "eps":
                self.toks.expect("^")
                self.toks.expect("(")
                q = self.rational()
                self.toks.expect(")")
                return alpha(q)
            if v in ("alpha", "O"):
                self.toks.expect("(")
                q = self.rational()
                self.toks.expect(")")
                if v == "alpha":
                    return alpha(q)
                return piecewise([(make_periodic(1, {0}), PuiseuxSeries((), q))])
            if v == "chi":
                return chi(self.chi_literal())
            if v == "piece":
                return self.piece_literal(off)
            if v == "quat":
                self.toks.expect("(")
                comps = [self.expr()]
                for _ in range(3):
                    self.toks.expect(";")
                    comps.append(self.expr())
                self.toks.expect(")")
                if not all(isinstance(c, GenNumber) for c in comps):
                    raise ParseError("quaternion components must be scalars", off)
                return GenQuaternion(*comps)
            if v == "i":
                return q_i()
            if v == "j":
                return q_j()
            if v == "k":
                return q_k()
            if v in _FUNCS:
                self.toks.expect("(")
                arg = self.expr()
                self.toks.expect(")")
                return self.apply_func(v, arg, off)
            raise ParseError(f"unknown name {v!r}", off,
                             ("eps", "alpha", "chi", "quat", "piece", *_FUNCS))
        raise ParseError(f"unexpected token {v or k!r}", off,
                         ("integer", "name", "(", "-"))

    def piece_literal(self, off: int):
        self.toks.expect("[")
        parts: list[tuple[IndexSet, GenNumber]] = []
        while True:
            self.toks.expect("name", "chi")
            region = self.chi_literal()
            self.toks.expect(":")
            value = self.expr()
            if not isinstance(value, GenNumber):
                raise ParseError("piece values must be scalars", off)
            parts.append((region, value))
            if not self.toks.accept(";"):
                break
        self.toks.expect("]")
        union = parts[0][0]
        for r, _ in parts[1:]:
            if not union.is_disjoint(r):
                raise ParseError("piece regions overlap", off)
            union = union | r
        if not union.is_full():
            raise ParseError("piece regions do not cover the naturals", off)
        total = zero()
        for r, v in parts:
            total = total + chi(r) * v
        return total

    def apply_func(self, name: str, arg, off: int):
        if name == "conj":
            return qconj(arg) if isinstance(arg, GenQuaternion) else conj(arg)
        if name == "normsq":
            return norm_sq(arg) if isinstance(arg, GenQuaternion) else abs_sq(arg)
        if isinstance(arg, GenQuaternion):
            raise ParseError(f"{name} applies to scalars only", off)
        return sqrt(arg) if name == "sqrt" else gen_abs(arg)


def parse_expr(text: str):
    """Parse and evaluate an expression to a GenNumber or GenQuaternion."""
    return _Parser(text).parse()


def parse_gennum(text: str) -> GenNumber:
    v = parse_expr(text)
    if not isinstance(v, GenNumber):
        raise ParseError("expected a scalar expression", 0)
    return v


# ---------------------------------------------------------------------------
# canonical printing
# ---------------------------------------------------------------------------


def format_indexset(s: IndexSet) -> str:
    body = f"m={s.modulus};T={sorted(s.residues)};N={s.threshold}"
    if s.exceptions_in:
        body += f";in={sorted(s.exceptions_in)}"
    return ("chi{" + body + "}").replace(" ", "")


def _coeff_str(c) -> str:
    if isinstance(c, GaussianRational):
        raise ValueError("complex coefficients have no textual form; use JSON")
    return str(c)


def format_series(s: PuiseuxSeries) -> str:
    parts: list[str] = []
    for q, c in s.terms:
        mag = abs(c)
        if q == 0:
            body = _coeff_str(mag)
        elif mag == 1:
            body = f"eps^({q})"
        else:
            body = f"{_coeff_str(mag)}*eps^({q})"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    if s.order != INF:
        parts.append(f"+ O({s.order})" if parts else f"O({s.order})")
    return " ".join(parts) if parts else "0"


def format_gennum(x: GenNumber) -> str:
    if len(x.pieces) == 1:
        return format_series(x.pieces[0][1])
    ones = [r for r, s in x.pieces
            if s.is_exact() and s.terms == ((Fraction(0), Fraction(1)),)]
    zeros = [r for r, s in x.pieces if s.is_exact_zero()]
    if len(ones) + len(zeros) == len(x.pieces) and len(ones) == 1:
        return format_indexset(ones[0])
    body = "; ".join(f"{format_indexset(r)}: {format_series(s)}"
                     for r, s in x.pieces)
    return f"piece[{body}]"


def format_quat(x: GenQuaternion) -> str:
    return "quat(" + "; ".join(format_gennum(c) for c in x.components()) + ")"


def format_value(v) -> str:
    if isinstance(v, GenQuaternion):
        return format_quat(v)
    return format_gennum(v)
