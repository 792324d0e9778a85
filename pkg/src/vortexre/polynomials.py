"""Sparse multivariate polynomials over the rationals.

Polynomials are dicts mapping exponent tuples to nonzero ``Rational``
coefficients, attached to a ``PolynomialRing`` that fixes the variable
names and the monomial order.  The heavy term-map operations live in
``vortexre._kernels`` (compiled when available, pure Python otherwise).
"""

from __future__ import annotations

import math
import re

from vortexre import _kernels
from vortexre.rationals import Rational, rational


class MonomialOrder:
    """A monomial order: lex, degrevlex, or a block elimination order.

    The elimination order compares the leading block of variables by
    degrevlex first and breaks ties by degrevlex on the remaining
    block, so the first `block` variables are eliminated.  `priority`
    optionally permutes variables (indices listed from most to least
    significant) before the comparison.
    """

    __slots__ = ("kind", "block", "priority")

    def __init__(self, kind, block=0, priority=None):
        if kind not in ("lex", "degrevlex", "elim"):
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.block = block
        self.priority = tuple(priority) if priority is not None else None

    @classmethod
    def lex(cls, priority=None):
        return cls("lex", priority=priority)

    @classmethod
    def degrevlex(cls, priority=None):
        return cls("degrevlex", priority=priority)

    @classmethod
    def elimination(cls, block, priority=None):
        """Order that eliminates the first `block` variables."""
        if block < 1:
            raise ValueError("elimination block must be >= 1")
        return cls("elim", block=block, priority=priority)

    @property
    def spec(self):
        return (self.kind, self.block, self.priority)

    def key(self, monomial):
        return _kernels.order_key(self.spec, monomial)

    def compare(self, a, b):
        return _kernels.compare(self.spec, a, b)

    def __eq__(self, other):
        if not isinstance(other, MonomialOrder):
            return NotImplemented
        return self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        if self.kind == "elim":
            return f"MonomialOrder.elimination({self.block})"
        return f"MonomialOrder.{self.kind}()"


class PolynomialRing:
    """Rational polynomial ring with named variables and a monomial order."""

    __slots__ = ("variables", "order", "_index")

    def __init__(self, variables, order=None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.order = order if order is not None else MonomialOrder.degrevlex()
        self._index = {name: i for i, name in enumerate(self.variables)}

    @property
    def nvars(self):
        return len(self.variables)

    def with_order(self, order):
        """Same variables, different monomial order."""
        return PolynomialRing(self.variables, order)

    def zero(self):
        return MultiPoly(self, {})

    def one(self):
        return MultiPoly(self, {(0,) * self.nvars: rational(1)})

    def constant(self, c):
        c = c if isinstance(c, Rational) else rational(c)
        if not c:
            return self.zero()
        return MultiPoly(self, {(0,) * self.nvars: c})

    def variable(self, name):
        e = [0] * self.nvars
        e[self._index[name]] = 1
        return MultiPoly(self, {tuple(e): rational(1)})

    def gens(self):
        return tuple(self.variable(name) for name in self.variables)

    def monomial(self, exponents, coeff=1):
        exponents = tuple(exponents)
        if len(exponents) != self.nvars:
            raise ValueError("exponent tuple has wrong length")
        c = coeff if isinstance(coeff, Rational) else rational(coeff)
        if not c:
            return self.zero()
        return MultiPoly(self, {exponents: c})

    def from_terms(self, terms):
        """Wrap a {exponents: coefficient} dict; drops explicit zeros."""
        clean = {}
        for m, c in terms.items():
            c = c if isinstance(c, Rational) else rational(c)
            if c:
                clean[tuple(m)] = c
        return MultiPoly(self, clean)

    def parse(self, text):
        """Parse the text form produced by ``MultiPoly.__str__``."""
        return _Parser(self, text).parse()

    def __eq__(self, other):
        if not isinstance(other, PolynomialRing):
            return NotImplemented
        return self.variables == other.variables and self.order == other.order

    def __hash__(self):
        return hash((self.variables, self.order))

    def __repr__(self):
        return f"PolynomialRing({list(self.variables)}, {self.order!r})"


class MultiPoly:
    """A polynomial in a ``PolynomialRing``.  Immutable by convention."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- basic queries -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        if not self.terms:
            return True
        zero = (0,) * self.ring.nvars
        return len(self.terms) == 1 and zero in self.terms

    def constant_value(self):
        """Coefficient of the constant monomial (exact)."""
        return self.terms.get((0,) * self.ring.nvars, rational(0))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(_kernels.monomial_degree(m) for m in self.terms)

    def degree_in(self, name):
        i = self.ring._index[name]
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def coefficient(self, exponents):
        return self.terms.get(tuple(exponents), rational(0))

    def monomials(self):
        """Exponent tuples in descending ring order."""
        key = self.ring.order.key
        return sorted(self.terms, key=key, reverse=True)

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return _kernels.leading_monomial(self.terms, self.ring.order.spec)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def leading_term(self):
        m = self.leading_monomial()
        return m, self.terms[m]

    def variables_used(self):
        """Names of variables appearing with positive exponent."""
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(self.ring.variables[i])
        return used

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.ring.variables != self.ring.variables:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (int, Rational)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return MultiPoly(self.ring, _kernels.terms_add(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, _kernels.terms_neg(self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return MultiPoly(
            self.ring, _kernels.terms_add(self.terms, _kernels.terms_neg(other.terms))
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = other if isinstance(other, Rational) else rational(other)
            return MultiPoly(self.ring, _kernels.terms_scale(self.terms, c))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return MultiPoly(self.ring, _kernels.terms_mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            c = other if isinstance(other, Rational) else rational(other)
            return self * (rational(1) / c)
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = self.ring.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring.variables == other.ring.variables and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    # -- calculus and evaluation ---------------------------------------

    def derivative(self, name):
        i = self.ring._index[name]
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                key = m[:i] + (e - 1,) + m[i + 1:]
                out[key] = out.get(key, rational(0)) + c * e
        return MultiPoly(self.ring, {m: c for m, c in out.items() if c})

    def evaluate(self, values):
        """Exact value given a Rational (or int) for every used variable."""
        vals = {self.ring._index[k]: rational(v) for k, v in values.items()}
        acc = rational(0)
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    term = term * vals[i] ** e
            acc = acc + term
        return acc

    def evaluate_float(self, values):
        vals = {self.ring._index[k]: float(v) for k, v in values.items()}
        acc = 0.0
        for m, c in self.terms.items():
            term = float(c)
            for i, e in enumerate(m):
                if e:
                    term *= vals[i] ** e
            acc += term
        return acc

    def substitute(self, mapping):
        """Substitute polynomials (or constants) for variables by name."""
        ring = self.ring
        subs = {}
        for name, val in mapping.items():
            i = ring._index[name]
            subs[i] = val if isinstance(val, MultiPoly) else ring.constant(val)
        power_cache = {}

        def power(i, e):
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = subs[i] ** e
            return power_cache[key]

        acc = ring.zero()
        for m, c in self.terms.items():
            rest = list(m)
            factor = None
            for i in subs:
                e = m[i]
                if e:
                    rest[i] = 0
                    p = power(i, e)
                    factor = p if factor is None else factor * p
            term = ring.monomial(tuple(rest), c)
            acc = acc + (term if factor is None else term * factor)
        return acc

    # -- normalization -------------------------------------------------

    def monic(self):
        if not self.terms:
            return self
        return self * (rational(1) / self.leading_coefficient())

    def content(self):
        """Positive rational c with self/c integral, primitive; 0 for 0."""
        if not self.terms:
            return rational(0)
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = math.gcd(num_gcd, int(c.numerator))
            d = int(c.denominator)
            den_lcm = den_lcm // math.gcd(den_lcm, d) * d
        return rational(num_gcd, den_lcm)

    def primitive_part(self):
        """(content-free polynomial with positive leading coefficient, unit).

        Returns (primitive, unit) with self == unit * primitive and unit a
        rational scalar.
        """
        if not self.terms:
            return self, rational(1)
        unit = self.content()
        if self.leading_coefficient() < 0:
            unit = -unit
        return self * (rational(1) / unit), unit

    # -- text form -----------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in self.monomials():
            c = self.terms[m]
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(self.ring.variables[i])
                elif e > 1:
                    factors.append(f"{self.ring.variables[i]}^{e}")
            mag = c if c > 0 else -c
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"<MultiPoly {self}>"


def exact_divide(p, f):
    """p / f when f divides p exactly, else None."""
    if f.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    spec = p.ring.order.spec
    flm = _kernels.leading_monomial(f.terms, spec)
    flc = f.terms[flm]
    work = dict(p.terms)
    quotient = {}
    while work:
        m = _kernels.leading_monomial(work, spec)
        shift = _kernels.monomial_div(m, flm)
        if shift is None:
            return None
        c = work[m] / flc
        quotient[shift] = c
        _kernels.terms_iadd_scaled(work, f.terms, -c, shift)
    return MultiPoly(p.ring, quotient)


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()]))"
)


class _Parser:
    """Recursive-descent parser for the polynomial text form.

    Grammar: expr := term (('+'|'-') term)*; term := factor (('*'|'/')
    factor)*; factor := ('-'|'+')* base ('^' int)?; base := int | name |
    '(' expr ')'.  Division requires a constant divisor.
    """

    def __init__(self, ring, text):
        self.ring = ring
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text):
        tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                if text[pos:].strip():
                    raise ValueError(f"bad character in polynomial: {text[pos:]!r}")
                break
            if m.group("int") is not None:
                tokens.append(("int", int(m.group("int"))))
            elif m.group("name") is not None:
                tokens.append(("name", m.group("name")))
            else:
                op = m.group("op")
                tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
        tokens.append(("end", None))
        return tokens

    def _peek(self):
        return self.tokens[self.pos]

    def _next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        poly = self._expr()
        if self._peek()[0] != "end":
            raise ValueError(f"trailing input after polynomial: {self._peek()!r}")
        return poly

    def _expr(self):
        acc = self._term()
        while self._peek() == ("op", "+") or self._peek() == ("op", "-"):
            _, op = self._next()
            rhs = self._term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _term(self):
        acc = self._factor()
        while self._peek() == ("op", "*") or self._peek() == ("op", "/"):
            _, op = self._next()
            rhs = self._factor()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant():
                    raise ValueError("division by a non-constant polynomial")
                acc = acc / rhs.constant_value()
        return acc

    def _factor(self):
        sign = 1
        while self._peek() == ("op", "-") or self._peek() == ("op", "+"):
            _, op = self._next()
            if op == "-":
                sign = -sign
        base = self._base()
        if self._peek() == ("op", "^"):
            self._next()
            kind, value = self._next()
            if kind != "int":
                raise ValueError("exponent must be a non-negative integer")
            base = base ** value
        return base if sign > 0 else -base

    def _base(self):
        kind, value = self._next()
        if kind == "int":
            return self.ring.constant(value)
        if kind == "name":
            if value not in self.ring._index:
                raise ValueError(f"unknown variable {value!r}")
            return self.ring.variable(value)
        if (kind, value) == ("op", "("):
            inner = self._expr()
            if self._next() != ("op", ")"):
                raise ValueError("unbalanced parenthesis")
            return inner
        raise ValueError(f"unexpected token {value!r}")
