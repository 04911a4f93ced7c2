"""Sparse multivariate polynomials over an exact field.

A ``PolyRing`` fixes an ordered tuple of variable names and a coefficient
field; a ``MultiPoly`` is a map from exponent vectors to nonzero field
scalars.  Values are immutable after construction and all operations are
pure, so sharing between threads is safe.

The text grammar accepted by :meth:`PolyRing.parse` is the one used by every
file format in the package: variables are identifiers, the operators are
``+ - * ^`` with nonnegative integer exponents, scalar literals are integers
or fractions ``a/b``, and multiplication is always explicit (``x*y``, never
``xy`` or ``2x``).
"""

from __future__ import annotations

import re

from .errors import InputError


class UnknownVariableError(InputError):
    pass


class MultiPoly:
    """Element of ``PolyRing``; ``terms`` maps exponent tuples to scalars."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: "PolyRing", terms: dict):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if not ring.field.is_zero(c)}

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        zero = (0,) * len(self.ring.variables)
        return all(e == zero for e in self.terms)

    def constant_value(self):
        """The scalar value of a constant polynomial."""
        zero = (0,) * len(self.ring.variables)
        if not all(e == zero for e in self.terms):
            raise ValueError("polynomial is not constant")
        return self.terms.get(zero, self.ring.field.zero())

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def _check_ring(self, other):
        if self.ring is not other.ring and self.ring != other.ring:
            raise ValueError("polynomials from different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        self._check_ring(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                terms[e] = terms[e] + c
            else:
                terms[e] = c
        return MultiPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        self._check_ring(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in terms:
                    terms[e] = terms[e] + c
                else:
                    terms[e] = c
        return MultiPoly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c) -> "MultiPoly":
        return MultiPoly(self.ring, {e: c * v for e, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.ring), tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def partial(self, var: str) -> "MultiPoly":
        """Formal partial derivative with respect to ``var``.

        In characteristic p the factor ``exponent mod p`` annihilates terms
        whose exponent is a multiple of p.
        """
        try:
            i = self.ring.variables.index(var)
        except ValueError:
            raise UnknownVariableError(f"{var!r} is not a variable of {self.ring}")
        field = self.ring.field
        terms: dict = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            factor = field.from_int(e[i])
            if field.is_zero(factor):
                continue
            e2 = e[:i] + (e[i] - 1,) + e[i + 1 :]
            nc = c * factor
            if e2 in terms:
                terms[e2] = terms[e2] + nc
            else:
                terms[e2] = nc
        return MultiPoly(self.ring, terms)

    def evaluate(self, values: dict, target):
        """Evaluate in a commutative ring.

        ``values`` maps every variable that occurs in the polynomial to an
        element of the target ring; ``target`` is a ring descriptor providing
        ``zero()``, ``one()`` and ``embed_scalar()`` for the coefficients.
        """
        power_cache: dict = {}

        def var_power(i, n):
            key = (i, n)
            if key not in power_cache:
                name = self.ring.variables[i]
                if name not in values:
                    raise UnknownVariableError(f"no value given for {name!r}")
                if n == 1:
                    power_cache[key] = values[name]
                else:
                    power_cache[key] = var_power(i, n - 1) * values[name]
            return power_cache[key]

        acc = target.zero()
        for e, c in self.terms.items():
            term = target.embed_scalar(c)
            for i, n in enumerate(e):
                if n:
                    term = term * var_power(i, n)
            acc = acc + term
        return acc

    def __str__(self):
        return self.ring.format(self)

    def __repr__(self):
        return f"MultiPoly({self.ring.format(self)})"


class PolyRing:
    """Polynomial ring descriptor: ordered variables over an exact field."""

    has_zero_divisors = False

    def __init__(self, field, variables):
        self.field = field
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise InputError("duplicate variable names")
        self._zero_exp = (0,) * len(self.variables)

    # -- ring descriptor protocol ------------------------------------

    def zero(self) -> MultiPoly:
        return MultiPoly(self, {})

    def one(self) -> MultiPoly:
        return MultiPoly(self, {self._zero_exp: self.field.one()})

    def from_int(self, n: int) -> MultiPoly:
        return MultiPoly(self, {self._zero_exp: self.field.from_int(n)})

    def from_scalar(self, c) -> MultiPoly:
        return MultiPoly(self, {self._zero_exp: c})

    # coefficients live in self.field, so embedding a scalar is a constant
    embed_scalar = from_scalar

    def is_zero(self, p: MultiPoly) -> bool:
        return p.is_zero()

    def var(self, name: str) -> MultiPoly:
        i = self.variables.index(name)
        e = tuple(1 if j == i else 0 for j in range(len(self.variables)))
        return MultiPoly(self, {e: self.field.one()})

    def monomial(self, exponents, coeff=None) -> MultiPoly:
        if coeff is None:
            coeff = self.field.one()
        return MultiPoly(self, {tuple(exponents): coeff})

    def exact_div(self, a: MultiPoly, b: MultiPoly) -> MultiPoly:
        return exact_div(a, b)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.variables == self.variables
        )

    def __hash__(self):
        return hash((self.field, self.variables))

    def __repr__(self):
        return f"{self.field!r}[{', '.join(self.variables)}]"

    # -- text form ----------------------------------------------------

    def parse(self, text: str) -> MultiPoly:
        return _Parser(self, text).parse()

    def format(self, p: MultiPoly) -> str:
        if not p.terms:
            return "0"
        field = self.field
        parts = []
        for e in sorted(p.terms, reverse=True):
            c = p.terms[e]
            factors = [
                name if n == 1 else f"{name}^{n}"
                for name, n in zip(self.variables, e)
                if n
            ]
            cs = field.format_scalar(c)
            negative = cs.startswith("-")
            if negative:
                cs = cs[1:]
            if not factors:
                body = cs
            elif cs == "1":
                body = "*".join(factors)
            else:
                body = "*".join([cs] + factors)
            if not parts:
                parts.append(("-" if negative else "") + body)
            else:
                parts.append(("- " if negative else "+ ") + body)
        return " ".join(parts)


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^/()]))"
)


class _Parser:
    """Recursive-descent parser for the shared polynomial grammar."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        tokens = []
        i = 0
        while i < len(text):
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise InputError(f"bad character {text[i:]!r} in polynomial {text!r}")
            if m.lastgroup == "int":
                tokens.append(("int", int(m.group("int"))))
            elif m.lastgroup == "name":
                tokens.append(("name", m.group("name")))
            else:
                tokens.append(("op", m.group("op")))
            i = m.end()
        return tokens

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _next(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def parse(self) -> MultiPoly:
        result = self._expr()
        if self.pos != len(self.tokens):
            kind, val = self._peek()
            raise InputError(
                f"unexpected {val!r} in {self.text!r}"
                " (implicit multiplication is not allowed)"
            )
        return result

    def _expr(self) -> MultiPoly:
        kind, val = self._peek()
        if (kind, val) == ("op", "-"):
            self._next()
            acc = -self._term()
        else:
            acc = self._term()
        while True:
            kind, val = self._peek()
            if (kind, val) == ("op", "+"):
                self._next()
                acc = acc + self._term()
            elif (kind, val) == ("op", "-"):
                self._next()
                acc = acc - self._term()
            else:
                return acc

    def _term(self) -> MultiPoly:
        acc = self._factor()
        while self._peek() == ("op", "*"):
            self._next()
            acc = acc * self._factor()
        return acc

    def _factor(self) -> MultiPoly:
        kind, val = self._peek()
        if (kind, val) == ("op", "-"):
            self._next()
            return -self._factor()
        base = self._atom()
        if self._peek() == ("op", "^"):
            self._next()
            kind, val = self._next()
            if kind != "int":
                raise InputError(f"exponent must be an integer in {self.text!r}")
            base = base**val
        return base

    def _atom(self) -> MultiPoly:
        kind, val = self._next()
        if kind == "int":
            # a lone '/' after an integer is a fraction literal a/b
            if self._peek() == ("op", "/"):
                self._next()
                dkind, dval = self._next()
                if dkind != "int":
                    raise InputError(f"bad fraction literal in {self.text!r}")
                return self.ring.from_scalar(self.ring.field.from_fraction(val, dval))
            return self.ring.from_int(val)
        if kind == "name":
            if val not in self.ring.variables:
                raise UnknownVariableError(
                    f"unknown variable {val!r} (ring has {list(self.ring.variables)})"
                )
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            inner = self._expr()
            if self._next() != ("op", ")"):
                raise InputError(f"unbalanced parentheses in {self.text!r}")
            return inner
        raise InputError(f"unexpected token in polynomial {self.text!r}")


def exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Divide a by b when the division is exact, else raise ValueError.

    Repeated cancellation of lex-leading terms; coefficients live in a
    field so each leading division is a scalar division.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = a.ring
    if a.is_zero():
        return ring.zero()
    lead_b = max(b.terms)
    cb = b.terms[lead_b]
    quotient: dict = {}
    rest = a
    while not rest.is_zero():
        lead_r = max(rest.terms)
        diff = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(d < 0 for d in diff):
            raise ValueError("polynomial division is not exact")
        c = rest.terms[lead_r] / cb
        quotient[diff] = c
        rest = rest - ring.monomial(diff, c) * b
    return MultiPoly(ring, quotient)
