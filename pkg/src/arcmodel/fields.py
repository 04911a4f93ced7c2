"""Exact coefficient fields: arbitrary-precision rationals and prime fields.

Rationals are plain ``fractions.Fraction`` values (always stored in lowest
terms with positive denominator).  Prime-field scalars are immutable
``PrimeFieldElement`` wrappers with value in ``[0, p)``.  A field object is a
lightweight descriptor that constructs, parses and formats scalars; the
scalars themselves do arithmetic through operator overloading.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError

_MAX_PRIME = 2**31


class PrimeFieldElement:
    """A residue modulo a prime, hashable and immutable."""

    __slots__ = ("p", "value")

    def __init__(self, p: int, value: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("PrimeFieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return PrimeFieldElement(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.p, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.p, self.value - other.value)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.p, other.value - self.value)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.p, self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return PrimeFieldElement(self.p, self.value * pow(other.value, -1, self.p))

    def __neg__(self):
        return PrimeFieldElement(self.p, -self.value)

    def __pow__(self, n: int):
        if n < 0:
            return (self.__class__(self.p, 1) / self) ** (-n)
        return PrimeFieldElement(self.p, pow(self.value, n, self.p))

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}"


class RationalField:
    """The field of rationals; scalars are ``Fraction`` instances."""

    characteristic = 0
    is_finite = False
    has_zero_divisors = False

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, num: int, den: int) -> Fraction:
        return Fraction(num, den)

    def invert(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a) -> bool:
        return a == 0

    def embed_scalar(self, c):
        return c

    def exact_div(self, a, b):
        return a / b

    def parse_scalar(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational literal {text!r}") from exc

    def format_scalar(self, a: Fraction) -> str:
        return str(a)

    def sample_set(self):
        """Small default pool for random coefficient draws."""
        return [Fraction(n) for n in range(-3, 4)]

    def spec(self) -> dict:
        return {"type": "rational"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The finite field of a prime order p < 2**31."""

    is_finite = True
    has_zero_divisors = False

    def __init__(self, p: int):
        if p < 2 or p >= _MAX_PRIME:
            raise InputError(f"prime modulus out of range: {p}")
        if any(p % q == 0 for q in range(2, min(p, 1 + int(p**0.5) + 1)) if q < p):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def zero(self) -> PrimeFieldElement:
        return PrimeFieldElement(self.p, 0)

    def one(self) -> PrimeFieldElement:
        return PrimeFieldElement(self.p, 1)

    def from_int(self, n: int) -> PrimeFieldElement:
        return PrimeFieldElement(self.p, n)

    def from_fraction(self, num: int, den: int) -> PrimeFieldElement:
        if den % self.p == 0:
            raise InputError(f"denominator {den} not invertible mod {self.p}")
        return PrimeFieldElement(self.p, num * pow(den, -1, self.p))

    def invert(self, a: PrimeFieldElement) -> PrimeFieldElement:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return PrimeFieldElement(self.p, pow(a.value, -1, self.p))

    def is_zero(self, a) -> bool:
        return not a

    def embed_scalar(self, c):
        return c

    def exact_div(self, a, b):
        return a / b

    def elements(self):
        return [PrimeFieldElement(self.p, v) for v in range(self.p)]

    def parse_scalar(self, text: str) -> PrimeFieldElement:
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            try:
                return self.from_fraction(int(num), int(den))
            except ValueError as exc:
                raise InputError(f"bad scalar literal {text!r}") from exc
        try:
            return self.from_int(int(text))
        except ValueError as exc:
            raise InputError(f"bad scalar literal {text!r}") from exc

    def format_scalar(self, a: PrimeFieldElement) -> str:
        return str(a.value)

    def sample_set(self):
        return self.elements()

    def spec(self) -> dict:
        return {"type": "prime", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def field_from_spec(spec) -> RationalField | PrimeField:
    """Build a field from {"type": "rational"} or {"type": "prime", "p": 5}.

    The string shorthands "rational" and "p=5" are accepted as well.
    """
    if isinstance(spec, str):
        s = spec.strip().lower()
        if s in ("rational", "q", "qq"):
            return RationalField()
        if s.startswith("p="):
            try:
                return PrimeField(int(s[2:]))
            except ValueError as exc:
                raise InputError(f"bad field spec {spec!r}") from exc
        raise InputError(f"bad field spec {spec!r}")
    if not isinstance(spec, dict) or "type" not in spec:
        raise InputError(f"bad field spec {spec!r}")
    if spec["type"] == "rational":
        return RationalField()
    if spec["type"] == "prime":
        if "p" not in spec:
            raise InputError("prime field spec needs p")
        return PrimeField(int(spec["p"]))
    raise InputError(f"unknown field type {spec['type']!r}")
