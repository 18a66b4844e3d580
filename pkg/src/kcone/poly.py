"""Homogeneous polynomials over Q and a small parser for them.

Exponent vectors are plain tuples of ints. Monomials of a fixed degree are
listed in graded reverse lexicographic order, largest first, with the ring's
declared variable order (first variable biggest).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import NonHomogeneousError, PolynomialSyntaxError, UnknownVariableError

Exponent = Tuple[int, ...]


def grevlex_key(e: Exponent) -> Tuple:
    return (sum(e), tuple(-a for a in reversed(e)))


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> Tuple[Exponent, ...]:
    """All exponent vectors of total degree ``degree``, grevlex-descending."""
    if degree < 0:
        return ()
    out: List[Exponent] = []

    def rec(prefix: List[int], left: int, k: int) -> None:
        if k == nvars - 1:
            out.append(tuple(prefix + [left]))
            return
        for a in range(left, -1, -1):
            rec(prefix + [a], left - a, k + 1)

    if nvars == 0:
        return ((),) if degree == 0 else ()
    rec([], degree, 0)
    out.sort(key=grevlex_key, reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> Dict[Exponent, int]:
    return {e: i for i, e in enumerate(monomials(nvars, degree))}


def num_monomials(nvars: int, degree: int) -> int:
    if degree < 0:
        return 0
    from math import comb

    return comb(degree + nvars - 1, nvars - 1)


def add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class RingContext:
    """Standard-graded polynomial ring Q[x_0, ..., x_N]."""

    names: Tuple[str, ...]

    def __post_init__(self):
        if len(self.names) < 2:
            raise ValueError("a graded ring needs at least two variables")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"variable names must be unique: {self.names}")
        for n in self.names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise ValueError(f"invalid variable name {n!r}")

    @classmethod
    def of(cls, *names: str) -> "RingContext":
        if len(names) == 1 and not isinstance(names[0], str):
            names = tuple(names[0])
        return cls(tuple(names))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def variable(self, i: int) -> "HPoly":
        e = [0] * self.nvars
        e[i] = 1
        return HPoly(self, 1, {tuple(e): Fraction(1)})

    def monomial(self, e: Sequence[int], coeff=1) -> "HPoly":
        e = tuple(e)
        return HPoly(self, sum(e), {e: Fraction(coeff)})

    def format_monomial(self, e: Exponent) -> str:
        parts = []
        for name, a in zip(self.names, e):
            if a == 1:
                parts.append(name)
            elif a > 1:
                parts.append(f"{name}^{a}")
        return "*".join(parts) or "1"


class HPoly:
    """A homogeneous polynomial with rational coefficients.

    The zero polynomial is allowed and keeps whatever degree it was built in.
    """

    __slots__ = ("ring", "degree", "terms")

    def __init__(self, ring: RingContext, degree: int, terms: Mapping[Exponent, object]):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        clean: Dict[Exponent, Fraction] = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != ring.nvars:
                raise ValueError(f"exponent {e} does not match {ring.nvars} variables")
            q = Fraction(c)
            if not q:
                continue
            if sum(e) != degree:
                raise NonHomogeneousError(f"monomial {ring.format_monomial(e)} is not of degree {degree}")
            clean[e] = q
        self.ring = ring
        self.degree = degree
        self.terms = dict(sorted(clean.items(), key=lambda kv: grevlex_key(kv[0]), reverse=True))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HPoly):
            return NotImplemented
        if self.ring != other.ring:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, self.degree, tuple(self.terms.items())))

    def _check(self, other: "HPoly") -> None:
        if self.ring != other.ring:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "HPoly") -> "HPoly":
        self._check(other)
        if not other:
            return self
        if not self:
            return other
        if self.degree != other.degree:
            raise NonHomogeneousError(f"cannot add forms of degrees {self.degree} and {other.degree}")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return HPoly(self.ring, self.degree, terms)

    def __neg__(self) -> "HPoly":
        return HPoly(self.ring, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "HPoly") -> "HPoly":
        return self + (-other)

    def __mul__(self, other) -> "HPoly":
        if isinstance(other, HPoly):
            self._check(other)
            terms: Dict[Exponent, Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = add_exp(e1, e2)
                    terms[e] = terms.get(e, 0) + c1 * c2
            return HPoly(self.ring, self.degree + other.degree, terms)
        q = Fraction(other)
        return HPoly(self.ring, self.degree, {e: c * q for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "HPoly":
        if k < 0:
            raise ValueError("negative power")
        out = HPoly(self.ring, 0, {(0,) * self.ring.nvars: 1})
        for _ in range(k):
            out = out * self
        return out

    def diff(self, i: int) -> "HPoly":
        """Partial derivative with respect to variable ``i``."""
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                terms[tuple(f)] = c * e[i]
        return HPoly(self.ring, max(self.degree - 1, 0), terms)

    def gradient(self) -> List["HPoly"]:
        return [self.diff(i) for i in range(self.ring.nvars)]

    def evaluate(self, point: Sequence[object]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, a in zip(point, e):
                if a:
                    v *= Fraction(x) ** a
            total += v
        return total

    def linear_substitution(self, matrix: Sequence[Sequence[object]]) -> "HPoly":
        """Substitute x_i -> sum_j matrix[i][j] x_j."""
        ring = self.ring
        images = [
            HPoly(ring, 1, {tuple(int(k == j) for k in range(ring.nvars)): matrix[i][j] for j in range(ring.nvars)})
            for i in range(ring.nvars)
        ]
        out = HPoly(ring, self.degree, {})
        for e, c in self.terms.items():
            term = HPoly(ring, 0, {(0,) * ring.nvars: c})
            for img, a in zip(images, e):
                if a:
                    term = term * img**a
            out = out + term
        return out

    def __repr__(self) -> str:
        return f"HPoly({str(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            mono = self.ring.format_monomial(e)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


# --- parser -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")

_Poly = Dict[Exponent, Fraction]


class _Parser:
    def __init__(self, text: str, ring: RingContext):
        self.text = text
        self.ring = ring
        self.index = {n: i for i, n in enumerate(ring.names)}
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                col = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
                raise PolynomialSyntaxError(f"unexpected character {text[col]!r}", col)
            start = m.start(m.lastindex)
            if m.group(1):
                self.tokens.append(("num", m.group(1), start))
            elif m.group(2):
                self.tokens.append(("var", m.group(2), start))
            else:
                op = "^" if m.group(3) == "**" else m.group(3)
                self.tokens.append(("op", op, start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value:
            raise PolynomialSyntaxError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def parse(self) -> _Poly:
        if not self.tokens:
            raise PolynomialSyntaxError("empty polynomial", 0)
        p = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise PolynomialSyntaxError(f"unexpected {v!r}", pos)
        return p

    def expr(self) -> _Poly:
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            _, op, _ = self.take()
            rhs = self.term()
            acc = _padd(acc, rhs if op == "+" else _pscale(rhs, -1))
        return acc

    def _starts_factor(self) -> bool:
        kind, v, _ = self.peek()
        return kind in ("num", "var") or v == "("

    def term(self) -> _Poly:
        acc = self.unary()
        while True:
            kind, v, pos = self.peek()
            if kind == "op" and v == "*":
                self.take()
                acc = _pmul(acc, self.unary())
            elif kind == "op" and v == "/":
                self.take()
                den = self.unary()
                if not den or any(sum(e) for e in den) or len(den) != 1:
                    raise PolynomialSyntaxError("division only by a nonzero constant", pos)
                acc = _pscale(acc, 1 / next(iter(den.values())))
            elif self._starts_factor():
                acc = _pmul(acc, self.unary())
            else:
                return acc

    def unary(self) -> _Poly:
        kind, v, _ = self.peek()
        if kind == "op" and v in ("+", "-"):
            self.take()
            inner = self.unary()
            return inner if v == "+" else _pscale(inner, -1)
        return self.power()

    def power(self) -> _Poly:
        base = self.atom()
        kind, v, pos = self.peek()
        if kind == "op" and v == "^":
            self.take()
            kind, v, pos = self.take()
            if kind != "num":
                raise PolynomialSyntaxError("exponent must be a nonnegative integer", pos)
            out = {(0,) * self.ring.nvars: Fraction(1)}
            for _ in range(int(v)):
                out = _pmul(out, base)
            return out
        return base

    def atom(self) -> _Poly:
        kind, v, pos = self.take()
        n = self.ring.nvars
        if kind == "num":
            return {(0,) * n: Fraction(int(v))}
        if kind == "var":
            if v not in self.index:
                raise UnknownVariableError(f"unknown variable {v!r} (ring variables: {', '.join(self.ring.names)})", pos)
            e = [0] * n
            e[self.index[v]] = 1
            return {tuple(e): Fraction(1)}
        if v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise PolynomialSyntaxError(f"unexpected {v or 'end of input'!r}", pos)


def _padd(a: _Poly, b: _Poly) -> _Poly:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _pscale(a: _Poly, q) -> _Poly:
    q = Fraction(q)
    return {e: c * q for e, c in a.items() if c * q}


def _pmul(a: _Poly, b: _Poly) -> _Poly:
    out: _Poly = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = add_exp(e1, e2)
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def parse_homogeneous(text: str, ring: RingContext) -> HPoly:
    """Parse ``text`` as a homogeneous form in ``ring``.

    >>> R = RingContext.of("x", "y", "z")
    >>> parse_homogeneous("x*y - z^2", R).degree
    2
    """
    terms = _Parser(text, ring).parse()
    if not terms:
        raise PolynomialSyntaxError("polynomial is zero", 0)
    degrees = sorted({sum(e) for e in terms})
    if len(degrees) > 1:
        raise NonHomogeneousError(f"polynomial is not homogeneous: terms of degrees {degrees}")
    return HPoly(ring, degrees[0], terms)


def poly_from_terms(ring: RingContext, terms: Iterable[Tuple[object, Sequence[int]]]) -> HPoly:
    t = {}
    for c, e in terms:
        e = tuple(e)
        t[e] = t.get(e, 0) + Fraction(c)
    degs = {sum(e) for e, c in t.items() if c}
    if len(degs) > 1:
        raise NonHomogeneousError("terms of mixed degrees")
    return HPoly(ring, degs.pop() if degs else 0, t)
