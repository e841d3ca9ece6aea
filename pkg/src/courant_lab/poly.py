"""Exact multivariate polynomial arithmetic over the rationals.

ScalarPoly is the function ring of every coordinate patch in this package:
polynomials in the declared variables with Fraction coefficients, kept in
normal form (no zero terms).  All geometry modules reduce their identities
to equality of ScalarPoly normal forms, so there is no floating point
anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

Exponents = Tuple[int, ...]
Rational = Union[int, Fraction]


class PolyError(ValueError):
    pass


class PolySyntaxError(PolyError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariableError(PolyError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown variable '{name}' (at position {position})")
        self.name = name
        self.position = position


class VariableMismatchError(PolyError):
    pass


def _as_fraction(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise PolyError(f"not an exact rational: {value!r}")


class ScalarPoly:
    """A multivariate polynomial over Q in a fixed ordered variable list.

    Terms are stored as a map from exponent tuples to nonzero Fractions.
    Instances are immutable by convention; every operation returns a new
    normal-form polynomial.
    """

    __slots__ = ("vars", "_terms")

    def __init__(self, vars: Iterable[str], terms: Dict[Exponents, Rational] | None = None):
        self.vars: Tuple[str, ...] = tuple(vars)
        clean: Dict[Exponents, Fraction] = {}
        if terms:
            width = len(self.vars)
            for exps, coeff in terms.items():
                if len(exps) != width:
                    raise PolyError(f"exponent tuple {exps} does not match {width} variables")
                if any(e < 0 for e in exps):
                    raise PolyError(f"negative exponent in {exps}")
                frac = _as_fraction(coeff)
                if frac != 0:
                    clean[tuple(exps)] = frac
        self._terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars: Iterable[str]) -> "ScalarPoly":
        return cls(vars)

    @classmethod
    def const(cls, vars: Iterable[str], value: Rational) -> "ScalarPoly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): _as_fraction(value)})

    @classmethod
    def one(cls, vars: Iterable[str]) -> "ScalarPoly":
        return cls.const(vars, 1)

    @classmethod
    def var(cls, vars: Iterable[str], name: str) -> "ScalarPoly":
        vars = tuple(vars)
        if name not in vars:
            raise UnknownVariableError(name, 0)
        exps = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {exps: Fraction(1)})

    # -- inspection ---------------------------------------------------

    @property
    def terms(self) -> Dict[Exponents, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolyError(f"not a constant polynomial: {self}")
        return self._terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self) -> int:
        if not self._terms:
            return 0
        return max(sum(exps) for exps in self._terms)

    def uses(self, name: str) -> bool:
        i = self._index(name)
        return any(exps[i] > 0 for exps in self._terms)

    def _index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownVariableError(name, 0) from None

    # -- ring operations ----------------------------------------------

    def _coerce(self, other: Union["ScalarPoly", Rational]) -> "ScalarPoly":
        if isinstance(other, ScalarPoly):
            if other.vars != self.vars:
                raise VariableMismatchError(
                    f"variable lists differ: {self.vars} vs {other.vars}")
            return other
        return ScalarPoly.const(self.vars, other)

    def __add__(self, other: Union["ScalarPoly", Rational]) -> "ScalarPoly":
        other = self._coerce(other)
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        return ScalarPoly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "ScalarPoly":
        return ScalarPoly(self.vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Union["ScalarPoly", Rational]) -> "ScalarPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Rational) -> "ScalarPoly":
        return self._coerce(other) - self

    def __mul__(self, other: Union["ScalarPoly", Rational]) -> "ScalarPoly":
        other = self._coerce(other)
        terms: Dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return ScalarPoly(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ScalarPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise PolyError(f"exponent must be a nonnegative integer: {exponent!r}")
        result = ScalarPoly.one(self.vars)
        for _ in range(exponent):
            result = result * self
        return result

    def __truediv__(self, other: Rational) -> "ScalarPoly":
        frac = _as_fraction(other)
        if frac == 0:
            raise PolyError("division by zero")
        return self * (Fraction(1) / frac)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ScalarPoly.const(self.vars, other)
        if not isinstance(other, ScalarPoly):
            return NotImplemented
        return self.vars == other.vars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self._terms.items())))

    # -- calculus -----------------------------------------------------

    def partial(self, name: str) -> "ScalarPoly":
        """Formal partial derivative with respect to one variable."""
        i = self._index(name)
        terms: Dict[Exponents, Fraction] = {}
        for exps, coeff in self._terms.items():
            if exps[i] == 0:
                continue
            lowered = list(exps)
            lowered[i] -= 1
            key = tuple(lowered)
            terms[key] = terms.get(key, Fraction(0)) + coeff * exps[i]
        return ScalarPoly(self.vars, terms)

    def extend(self, new_vars: Iterable[str]) -> "ScalarPoly":
        """Reinterpret the polynomial over a larger variable list.

        Every variable of self must occur in new_vars; exponents move to
        the matching positions.
        """
        new_vars = tuple(new_vars)
        positions = []
        for name in self.vars:
            if name not in new_vars:
                raise UnknownVariableError(name, 0)
            positions.append(new_vars.index(name))
        terms: Dict[Exponents, Fraction] = {}
        for exps, coeff in self._terms.items():
            widened = [0] * len(new_vars)
            for pos, e in zip(positions, exps):
                widened[pos] = e
            terms[tuple(widened)] = coeff
        return ScalarPoly(new_vars, terms)

    # -- printing -----------------------------------------------------

    def _sorted_terms(self):
        # graded-lexicographic, leading term first
        return sorted(self._terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps, coeff in self._sorted_terms():
            factors = []
            for name, e in zip(self.vars, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = _fraction_str(abs(coeff))
            elif abs(coeff) == 1:
                body = "*".join(factors)
            else:
                body = _fraction_str(abs(coeff)) + "*" + "*".join(factors)
            pieces.append(("-" if coeff < 0 else "+", body))
        sign, body = pieces[0]
        if sign == "-" and "^" in body.split("*", 1)[0]:
            # '-x^2' would reparse as (-x)^2; force an explicit coefficient
            body = "1*" + body
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"ScalarPoly({self})"


def _fraction_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# -- parser -----------------------------------------------------------
#
# poly     := term (('+'|'-') term)*
# term     := factor ('*' factor)*
# factor   := atom ('^' uint)?
# atom     := rational | ident | '(' poly ')' | '-' atom
# rational := int ('/' uint)?
# ident    := letter (letter|digit)*
#
# Whitespace is insignificant.  '/' is only legal inside a rational
# literal; dividing by anything else is rejected.


class _Parser:
    def __init__(self, text: str, vars: Tuple[str, ...]):
        self.text = text
        self.vars = vars
        self.pos = 0

    def error(self, message: str) -> PolySyntaxError:
        return PolySyntaxError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def parse(self) -> ScalarPoly:
        result = self.parse_poly()
        if self.peek():
            raise self.error(f"unexpected character {self.peek()!r}")
        return result

    def parse_poly(self) -> ScalarPoly:
        result = self.parse_term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.take()
                result = result + self.parse_term()
            elif ch == "-":
                self.take()
                result = result - self.parse_term()
            else:
                return result

    def parse_term(self) -> ScalarPoly:
        result = self.parse_factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.take()
                result = result * self.parse_factor()
            elif ch == "/":
                raise self.error("division is only allowed inside a rational constant")
            else:
                return result

    def parse_factor(self) -> ScalarPoly:
        atom = self.parse_atom()
        if self.peek() == "^":
            self.take()
            return atom ** self.parse_uint()
        return atom

    def parse_atom(self) -> ScalarPoly:
        ch = self.peek()
        if ch == "-":
            self.take()
            return -self.parse_atom()
        if ch == "(":
            self.take()
            inner = self.parse_poly()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.take()
            return inner
        if ch.isdigit():
            return self.parse_rational()
        if ch.isalpha():
            return self.parse_ident()
        if ch == "":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected character {ch!r}")

    def parse_uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an unsigned integer")
        return int(self.text[start:self.pos])

    def parse_rational(self) -> ScalarPoly:
        numerator = self.parse_uint()
        if self.peek() == "/":
            self.take()
            denominator = self.parse_uint()
            if denominator == 0:
                raise self.error("division by zero")
            return ScalarPoly.const(self.vars, Fraction(numerator, denominator))
        return ScalarPoly.const(self.vars, numerator)

    def parse_ident(self) -> ScalarPoly:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalnum():
            self.pos += 1
        name = self.text[start:self.pos]
        if name not in self.vars:
            raise UnknownVariableError(name, start)
        return ScalarPoly.var(self.vars, name)


def parse_poly(text: str, vars: Iterable[str]) -> ScalarPoly:
    """Parse text into a normal-form polynomial over the given variables."""
    return _Parser(text, tuple(vars)).parse()
