"""Univariate polynomials and truncated power series in t over a ring.

Both types are parametrized by a coefficient-ring descriptor (a field,
``PolyRing``, ``TestRing``, ...).  ``UniPoly`` is exact with normalized
trailing zeros; ``TruncSeries`` carries an explicit precision N, meaning the
coefficients of ``t^0 .. t^(N-1)`` are trusted and nothing beyond is claimed.
Arithmetic on series never reports more precision than the minimum of the
operands' precisions.
"""

from __future__ import annotations

from .errors import InputError, MathError


class NonMonicDivisorError(InputError):
    pass


class PrecisionInsufficientError(MathError):
    pass


class UniPoly:
    """Dense univariate polynomial; coeffs[i] is the coefficient of t^i."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        coeffs = list(coeffs)
        while coeffs and ring.is_zero(coeffs[-1]):
            coeffs.pop()
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, ring):
        return cls(ring, [])

    @classmethod
    def one(cls, ring):
        return cls(ring, [ring.one()])

    @classmethod
    def t_power(cls, ring, d: int):
        return cls(ring, [ring.zero()] * d + [ring.one()])

    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one()

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero()

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.ring, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.ring, [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self):
        return UniPoly(self.ring, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return UniPoly.zero(self.ring)
        out = [self.ring.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if self.ring.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.ring, out)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = UniPoly.one(self.ring)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ring), self.coeffs))

    def scale(self, c):
        return UniPoly(self.ring, [c * a for a in self.coeffs])

    def shift(self, d: int) -> "UniPoly":
        """Multiply by t^d (d >= 0) or drop the d lowest coefficients (d < 0)."""
        if d >= 0:
            return UniPoly(self.ring, [self.ring.zero()] * d + list(self.coeffs))
        return UniPoly(self.ring, self.coeffs[-d:])

    def divmod_monic(self, q: "UniPoly"):
        """Euclidean division by a monic divisor, exact over any ring.

        Returns (quotient, remainder) with f = q*quotient + remainder and
        deg(remainder) < deg(q).
        """
        if not q.is_monic():
            raise NonMonicDivisorError("divisor must be monic")
        d = q.degree()
        rem = list(self.coeffs)
        if len(rem) <= d:
            return UniPoly.zero(self.ring), self
        quot = [self.ring.zero()] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if self.ring.is_zero(c):
                continue
            quot[i - d] = c
            for j, b in enumerate(q.coeffs):
                rem[i - d + j] = rem[i - d + j] - c * b
        return UniPoly(self.ring, quot), UniPoly(self.ring, rem[:d])

    def exact_div(self, q: "UniPoly") -> "UniPoly":
        """Exact division in R[t] over an integral domain R.

        Each step divides leading coefficients exactly in R; raises
        ValueError if the division does not come out even.
        """
        if q.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return UniPoly.zero(self.ring)
        d = q.degree()
        lead = q.coeffs[-1]
        rem = self
        quot = [self.ring.zero()] * (self.degree() - d + 1)
        while not rem.is_zero():
            k = rem.degree() - d
            if k < 0:
                raise ValueError("polynomial division is not exact")
            c = self.ring.exact_div(rem.coeffs[-1], lead)
            quot[k] = c
            rem = rem - q.shift(k).scale(c)
        return UniPoly(self.ring, quot)

    def evaluate(self, x, target=None):
        """Horner evaluation at a point of the coefficient ring (or of a
        target ring that the coefficients embed into via embed_scalar)."""
        ring = target if target is not None else self.ring
        acc = ring.zero()
        embed = (lambda c: c) if target is None else target.embed_scalar
        for c in reversed(self.coeffs):
            acc = acc * x + embed(c)
        return acc

    def to_series(self, precision: int) -> "TruncSeries":
        return TruncSeries(self.ring, self.coeffs[:precision], precision)

    def map_coeffs(self, fn, ring=None):
        return UniPoly(ring if ring is not None else self.ring, [fn(c) for c in self.coeffs])

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if self.ring.is_zero(c):
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"({c})*t")
            else:
                parts.append(f"({c})*t^{i}")
        return " + ".join(parts)

    def __repr__(self):
        return f"UniPoly({self})"


class TruncSeries:
    """Power series in t known through t^(precision-1)."""

    __slots__ = ("ring", "coeffs", "precision")

    def __init__(self, ring, coeffs, precision: int):
        if precision < 1:
            raise InputError("series precision must be >= 1")
        coeffs = list(coeffs)[:precision]
        coeffs += [ring.zero()] * (precision - len(coeffs))
        self.ring = ring
        self.coeffs = tuple(coeffs)
        self.precision = precision

    @classmethod
    def zero(cls, ring, precision):
        return cls(ring, [], precision)

    @classmethod
    def one(cls, ring, precision):
        return cls(ring, [ring.one()], precision)

    def coeff(self, i: int):
        if i >= self.precision:
            raise PrecisionInsufficientError(
                f"coefficient {i} beyond series precision {self.precision}"
            )
        return self.coeffs[i]

    def order(self):
        """Index of the first nonzero coefficient, or None when the series
        vanishes through its precision."""
        for i, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                return i
        return None

    def is_zero(self) -> bool:
        return self.order() is None

    def truncate(self, precision: int) -> "TruncSeries":
        if precision > self.precision:
            raise PrecisionInsufficientError(
                f"cannot extend precision {self.precision} to {precision}"
            )
        return TruncSeries(self.ring, self.coeffs[:precision], precision)

    def __add__(self, other):
        n = min(self.precision, other.precision)
        return TruncSeries(
            self.ring, [self.coeffs[i] + other.coeffs[i] for i in range(n)], n
        )

    def __sub__(self, other):
        n = min(self.precision, other.precision)
        return TruncSeries(
            self.ring, [self.coeffs[i] - other.coeffs[i] for i in range(n)], n
        )

    def __neg__(self):
        return TruncSeries(self.ring, [-c for c in self.coeffs], self.precision)

    def __mul__(self, other):
        n = min(self.precision, other.precision)
        out = [self.ring.zero()] * n
        for i in range(n):
            a = self.coeffs[i]
            if self.ring.is_zero(a):
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if not self.ring.is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(self.ring, out, n)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = TruncSeries.one(self.ring, self.precision)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c):
        return TruncSeries(self.ring, [c * a for a in self.coeffs], self.precision)

    def shift(self, d: int) -> "TruncSeries":
        """t^d * self for d >= 0; for d < 0 drop low coefficients.

        Dropping low coefficients reduces the trusted precision by |d|;
        multiplying by t^d keeps the precision (high coefficients fall off
        the end of the window).
        """
        if d >= 0:
            coeffs = [self.ring.zero()] * d + list(self.coeffs)
            return TruncSeries(self.ring, coeffs[: self.precision], self.precision)
        if self.precision + d < 1:
            raise PrecisionInsufficientError("shift consumes the whole window")
        return TruncSeries(self.ring, self.coeffs[-d:], self.precision + d)

    def invert(self) -> "TruncSeries":
        """Multiplicative inverse; the constant term must be a unit."""
        c0 = self.coeffs[0]
        inv0 = self.ring.invert(c0)
        out = [inv0] + [self.ring.zero()] * (self.precision - 1)
        for n in range(1, self.precision):
            acc = self.ring.zero()
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * out[n - k]
            out[n] = -(inv0 * acc)
        return TruncSeries(self.ring, out, self.precision)

    def eq_mod(self, other: "TruncSeries", precision: int) -> bool:
        if precision > min(self.precision, other.precision):
            raise PrecisionInsufficientError(
                f"cannot compare through t^{precision} at available precision"
            )
        return all(
            self.ring.is_zero(self.coeffs[i] - other.coeffs[i])
            for i in range(precision)
        )

    def is_zero_mod(self, precision: int) -> bool:
        if precision > self.precision:
            raise PrecisionInsufficientError(
                f"cannot test vanishing through t^{precision} at precision {self.precision}"
            )
        return all(self.ring.is_zero(c) for c in self.coeffs[:precision])

    def to_unipoly(self) -> UniPoly:
        """Forget the truncation and read the stored window as a polynomial."""
        return UniPoly(self.ring, self.coeffs)

    def map_coeffs(self, fn, ring=None):
        return TruncSeries(
            ring if ring is not None else self.ring,
            [fn(c) for c in self.coeffs],
            self.precision,
        )

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.precision == other.precision
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.ring), self.precision, self.coeffs))

    def __str__(self):
        body = UniPoly(self.ring, self.coeffs).__str__()
        return f"{body} + O(t^{self.precision})"

    def __repr__(self):
        return f"TruncSeries({self})"


class UniPolyRing:
    """Ring descriptor for UniPoly over a coefficient ring."""

    def __init__(self, coeff_ring):
        self.coeff_ring = coeff_ring

    @property
    def has_zero_divisors(self):
        return self.coeff_ring.has_zero_divisors

    def zero(self):
        return UniPoly.zero(self.coeff_ring)

    def one(self):
        return UniPoly.one(self.coeff_ring)

    def t(self):
        return UniPoly.t_power(self.coeff_ring, 1)

    def from_int(self, n: int):
        return UniPoly(self.coeff_ring, [self.coeff_ring.from_int(n)])

    def embed_scalar(self, c):
        return UniPoly(self.coeff_ring, [self.coeff_ring.embed_scalar(c)])

    def is_zero(self, p: UniPoly) -> bool:
        return p.is_zero()

    def exact_div(self, a: UniPoly, b: UniPoly) -> UniPoly:
        return a.exact_div(b)

    def __eq__(self, other):
        return isinstance(other, UniPolyRing) and other.coeff_ring == self.coeff_ring

    def __hash__(self):
        return hash(("unipoly", self.coeff_ring))

    def __repr__(self):
        return f"{self.coeff_ring!r}[t]"


class SeriesRing:
    """Ring descriptor for TruncSeries at a fixed precision."""

    has_zero_divisors = True  # t^N = 0 in the truncation

    def __init__(self, coeff_ring, precision: int):
        self.coeff_ring = coeff_ring
        self.precision = precision

    def zero(self):
        return TruncSeries.zero(self.coeff_ring, self.precision)

    def one(self):
        return TruncSeries.one(self.coeff_ring, self.precision)

    def t(self):
        return TruncSeries(
            self.coeff_ring, [self.coeff_ring.zero(), self.coeff_ring.one()], self.precision
        )

    def from_int(self, n: int):
        return TruncSeries(self.coeff_ring, [self.coeff_ring.from_int(n)], self.precision)

    def embed_scalar(self, c):
        return TruncSeries(self.coeff_ring, [self.coeff_ring.embed_scalar(c)], self.precision)

    def is_zero(self, s: TruncSeries) -> bool:
        return s.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, SeriesRing)
            and other.coeff_ring == self.coeff_ring
            and other.precision == self.precision
        )

    def __hash__(self):
        return hash(("series", self.coeff_ring, self.precision))

    def __repr__(self):
        return f"{self.coeff_ring!r}[[t]]/t^{self.precision}"
