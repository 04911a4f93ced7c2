"""Square matrices over a commutative ring: determinant and adjugate.

Determinants dispatch on size and coefficient ring:

* up to 4x4 -- Laplace cofactor expansion with memoization on column
  subsets, valid over any commutative ring;
* larger, over an integral domain -- fraction-free (Bareiss) elimination
  with exact divisions;
* larger, over a ring with zero divisors -- the entries are promoted to
  fresh polynomial unknowns, the generic determinant is computed once by
  fraction-free elimination over an integral domain, and the actual entries
  are substituted back in.

The adjugate is the transposed cofactor matrix, so M * adjugate(M) =
det(M) * I holds entrywise over any commutative ring.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .fields import RationalField
from .multipoly import PolyRing

_LAPLACE_MAX = 4


class NonSquareError(InputError):
    pass


class RingMatrix:
    """Immutable matrix with entries in a commutative ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, entries):
        entries = [list(row) for row in entries]
        self.ring = ring
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        if any(len(row) != self.cols for row in entries):
            raise InputError("ragged matrix")
        self.entries = tuple(tuple(row) for row in entries)

    @classmethod
    def identity(cls, ring, n: int):
        return cls(
            ring,
            [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)],
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "RingMatrix":
        return RingMatrix(
            self.ring,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def __mul__(self, other: "RingMatrix") -> "RingMatrix":
        if self.cols != other.rows:
            raise InputError("matrix dimensions do not match")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = self.ring.zero()
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return RingMatrix(self.ring, out)

    def mul_vector(self, vec):
        if self.cols != len(vec):
            raise InputError("matrix/vector dimensions do not match")
        out = []
        for i in range(self.rows):
            acc = self.ring.zero()
            for k in range(self.cols):
                acc = acc + self.entries[i][k] * vec[k]
            out.append(acc)
        return out

    def scale(self, c) -> "RingMatrix":
        return RingMatrix(
            self.ring, [[c * e for e in row] for row in self.entries]
        )

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def _require_square(self):
        if self.rows != self.cols:
            raise NonSquareError(f"matrix is {self.rows}x{self.cols}, not square")

    def det(self):
        self._require_square()
        n = self.rows
        if n == 0:
            return self.ring.one()
        if n <= _LAPLACE_MAX:
            return _det_laplace(self)
        if getattr(self.ring, "has_zero_divisors", True):
            return _det_promoted(self)
        return _det_bareiss(self)

    def adjugate(self) -> "RingMatrix":
        """Transposed cofactor matrix; for 1x1 matrices this is [[1]]."""
        self._require_square()
        n = self.rows
        if n == 0:
            raise NonSquareError("adjugate of an empty matrix")
        if n == 1:
            return RingMatrix(self.ring, [[self.ring.one()]])
        cof = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = RingMatrix(
                    self.ring,
                    [
                        [self.entries[a][b] for b in range(n) if b != j]
                        for a in range(n)
                        if a != i
                    ],
                )
                c = minor.det()
                if (i + j) % 2:
                    c = -c
                row.append(c)
            cof.append(row)
        return RingMatrix(self.ring, cof).transpose()

    def __repr__(self):
        body = "; ".join(
            ", ".join(str(e) for e in row) for row in self.entries
        )
        return f"RingMatrix[{body}]"


def _det_laplace(m: RingMatrix):
    """Cofactor expansion along rows, memoized on the active column set."""
    n = m.rows
    cache: dict = {}

    def go(i: int, cols: tuple) -> object:
        if i == n:
            return m.ring.one()
        key = cols
        if key in cache:
            return cache[key]
        acc = m.ring.zero()
        for pos, c in enumerate(cols):
            entry = m.entries[i][c]
            if m.ring.is_zero(entry):
                continue
            sub = go(i + 1, cols[:pos] + cols[pos + 1 :])
            term = entry * sub
            if pos % 2:
                term = -term
            acc = acc + term
        cache[key] = acc
        return acc

    return go(0, tuple(range(n)))


def _det_bareiss(m: RingMatrix):
    """Fraction-free elimination; needs exact division in the ring."""
    ring = m.ring
    n = m.rows
    a = [list(row) for row in m.entries]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if ring.is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not ring.is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = ring.exact_div(num, prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def _det_promoted(m: RingMatrix):
    """Generic determinant over fresh unknowns, then substitution.

    The generic matrix lives over an integral domain, so Bareiss applies;
    its determinant has integer coefficients, which every ring can embed
    through from_int.
    """
    n = m.rows
    names = [f"m_{i}_{j}" for i in range(n) for j in range(n)]
    generic_ring = PolyRing(RationalField(), names)
    generic = RingMatrix(
        generic_ring,
        [[generic_ring.var(f"m_{i}_{j}") for j in range(n)] for i in range(n)],
    )
    generic_det = _det_bareiss(generic)
    values = {
        f"m_{i}_{j}": m.entries[i][j] for i in range(n) for j in range(n)
    }
    target = _IntEmbedding(m.ring)
    return generic_det.evaluate(values, target)


class _IntEmbedding:
    """Evaluation target that embeds integer coefficients into a ring."""

    def __init__(self, ring):
        self.ring = ring

    def zero(self):
        return self.ring.zero()

    def one(self):
        return self.ring.one()

    def embed_scalar(self, c: Fraction):
        if c.denominator != 1:
            raise ValueError("generic determinant coefficient is not integral")
        return self.ring.from_int(c.numerator)


def field_matrix_rank(field, entries) -> int:
    """Rank of a matrix with field entries, by exact Gaussian elimination."""
    a = [list(row) for row in entries]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    row = 0
    for col in range(cols):
        pivot = None
        for i in range(row, rows):
            if not field.is_zero(a[i][col]):
                pivot = i
                break
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        inv = field.invert(a[row][col])
        a[row] = [inv * e for e in a[row]]
        for i in range(rows):
            if i != row and not field.is_zero(a[i][col]):
                factor = a[i][col]
                a[i] = [e - factor * f for e, f in zip(a[i], a[row])]
        row += 1
        rank += 1
        if row == rows:
            break
    return rank
