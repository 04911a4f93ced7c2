"""Local k-algebras with nilpotent maximal ideal, on a monomial basis.

A ``TestRing`` is k[e1..eg]/I where I is a monomial ideal containing every
monomial of a stated total degree c, so the maximal ideal m = (e1..eg) is
nilpotent and normal forms are plain basis lookups (no Groebner machinery).
The degenerate case with no generators is the field k itself, which keeps
the downstream algorithms uniform: a field is the c = 1 layer of every
nilpotent computation.

Elements are stored as coordinate maps on the standard monomials.  An
element is a unit exactly when its constant coordinate is nonzero, and unit
inversion is the finite geometric series cut off by nilpotency.
"""

from __future__ import annotations

from itertools import product

from .errors import InputError, MathError
from .multipoly import PolyRing


class NotAUnitError(MathError):
    pass


def _scalar_key(c):
    """Order field scalars: residue value, or numerator/denominator pair."""
    if hasattr(c, "value"):
        return (c.value, 1)
    return (c.numerator, c.denominator)


class TestRing:
    """k[e1..eg] modulo a monomial ideal with nilpotent maximal ideal."""

    __test__ = False  # not a pytest suite, despite the domain name
    has_zero_divisors = None  # set per instance

    def __init__(self, field, generators, nilpotency: int, relations=()):
        if nilpotency < 1:
            raise InputError("nilpotency bound must be >= 1")
        self.field = field
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise InputError("duplicate generator names")
        self.nilpotency_bound = nilpotency
        g = len(self.generators)

        rel_exps = []
        if relations:
            # relations are extra monomials, parsed in the generator ring
            rel_ring = PolyRing(field, self.generators)
            for rel in relations:
                poly = rel_ring.parse(rel) if isinstance(rel, str) else rel
                if len(poly.terms) != 1:
                    raise InputError(f"relation {rel!r} is not a monomial")
                (exp,) = poly.terms
                if sum(exp) == 0:
                    raise InputError("the unit monomial cannot be a relation")
                rel_exps.append(exp)
        self._relations = tuple(rel_exps)

        basis = []
        for exp in product(range(nilpotency), repeat=g):
            if sum(exp) >= nilpotency:
                continue
            if any(all(a >= b for a, b in zip(exp, rel)) for rel in rel_exps):
                continue
            basis.append(exp)
        basis.sort(key=lambda e: (sum(e), e))
        self.standard_monomials = tuple(basis)
        self._standard_set = frozenset(basis)
        self._zero_exp = (0,) * g
        if self._zero_exp not in self._standard_set:
            raise InputError("ideal contains 1; quotient is the zero ring")
        # least c with m^c = 0 (monomial ideal: m^j is spanned by the
        # standard monomials of degree >= j)
        self.nilpotency_class = 1 + max((sum(e) for e in basis), default=0)
        self.has_zero_divisors = self.nilpotency_class > 1

    # -- ring descriptor protocol --------------------------------------

    def zero(self) -> "TestRingElement":
        return TestRingElement(self, {})

    def one(self) -> "TestRingElement":
        return TestRingElement(self, {self._zero_exp: self.field.one()})

    def from_int(self, n: int) -> "TestRingElement":
        return TestRingElement(self, {self._zero_exp: self.field.from_int(n)})

    def embed_scalar(self, c) -> "TestRingElement":
        return TestRingElement(self, {self._zero_exp: c})

    def is_zero(self, a: "TestRingElement") -> bool:
        return not a.coords

    def invert(self, a: "TestRingElement") -> "TestRingElement":
        return invert_unit(a)

    def generator(self, name: str) -> "TestRingElement":
        i = self.generators.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(self.generators)))
        return TestRingElement(self, {exp: self.field.one()})

    def monomial(self, exp, coeff=None) -> "TestRingElement":
        coeff = coeff if coeff is not None else self.field.one()
        return TestRingElement(self, {tuple(exp): coeff})

    def maximal_ideal_basis(self):
        """Standard monomials of positive degree, in the canonical order."""
        return tuple(e for e in self.standard_monomials if sum(e) > 0)

    def iter_maximal_ideal(self):
        """All elements of m (requires a finite coefficient field)."""
        if not self.field.is_finite:
            raise InputError("cannot enumerate the maximal ideal over an infinite field")
        basis = self.maximal_ideal_basis()
        scalars = self.field.elements()
        for coords in product(scalars, repeat=len(basis)):
            yield TestRingElement(
                self, {e: c for e, c in zip(basis, coords) if not self.field.is_zero(c)}
            )

    def maximal_ideal_size(self) -> int:
        if not self.field.is_finite:
            raise InputError("maximal ideal is infinite over an infinite field")
        return self.field.p ** len(self.maximal_ideal_basis())

    # -- text form ------------------------------------------------------

    def parse_element(self, text: str) -> "TestRingElement":
        ring = PolyRing(self.field, self.generators)
        poly = ring.parse(text)
        coords = {}
        for exp, c in poly.terms.items():
            exp = self._reduce_exp(exp)
            if exp is None:
                continue
            coords[exp] = coords.get(exp, self.field.zero()) + c
        return TestRingElement(self, coords)

    def format_element(self, a: "TestRingElement") -> str:
        ring = PolyRing(self.field, self.generators)
        from .multipoly import MultiPoly

        return ring.format(MultiPoly(ring, dict(a.coords)))

    def _reduce_exp(self, exp):
        """Normal form of a monomial: itself if standard, else zero (None)."""
        return exp if exp in self._standard_set else None

    def spec(self) -> dict:
        d = {"generators": list(self.generators), "nilpotency": self.nilpotency_bound}
        if self._relations:
            rel_ring = PolyRing(self.field, self.generators)
            d["relations"] = [
                rel_ring.format(rel_ring.monomial(e)) for e in self._relations
            ]
        return d

    def __eq__(self, other):
        return (
            isinstance(other, TestRing)
            and other.field == self.field
            and other.generators == self.generators
            and other.standard_monomials == self.standard_monomials
        )

    def __hash__(self):
        return hash((self.field, self.generators, self.standard_monomials))

    def __repr__(self):
        if not self.generators:
            return f"{self.field!r}"
        gens = ",".join(self.generators)
        return f"{self.field!r}[{gens}]/(m^{self.nilpotency_bound}-type ideal)"


def make_test_ring(field, spec: dict) -> TestRing:
    """Build a test ring from {"generators": [...], "nilpotency": c,
    "relations": [...]} (relations optional)."""
    if not isinstance(spec, dict):
        raise InputError("test ring spec must be an object")
    try:
        gens = list(spec["generators"])
        nil = int(spec["nilpotency"])
    except KeyError as exc:
        raise InputError(f"test ring spec missing {exc}") from exc
    return TestRing(field, gens, nil, spec.get("relations", ()))


class TestRingElement:
    """Coordinates on the standard-monomial basis; immutable."""

    __test__ = False
    __slots__ = ("ring", "coords")

    def __init__(self, ring: TestRing, coords: dict):
        field = ring.field
        self.ring = ring
        self.coords = {
            e: c for e, c in coords.items() if not field.is_zero(c)
        }

    def constant_coordinate(self):
        return self.coords.get(self.ring._zero_exp, self.ring.field.zero())

    def is_unit(self) -> bool:
        return not self.ring.field.is_zero(self.constant_coordinate())

    def in_maximal_ideal(self) -> bool:
        return not self.is_unit()

    def nilpotent_part(self) -> "TestRingElement":
        return TestRingElement(
            self.ring,
            {e: c for e, c in self.coords.items() if sum(e) > 0},
        )

    def min_degree(self):
        """Least total degree in the support (None for the zero element)."""
        if not self.coords:
            return None
        return min(sum(e) for e in self.coords)

    def coordinate(self, exp):
        return self.coords.get(tuple(exp), self.ring.field.zero())

    def _check(self, other):
        if isinstance(other, int):
            return self.ring.from_int(other)
        if not isinstance(other, TestRingElement) or other.ring != self.ring:
            raise ValueError("elements of different test rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        coords = dict(self.coords)
        for e, c in other.coords.items():
            coords[e] = coords.get(e, self.ring.field.zero()) + c
        return TestRingElement(self.ring, coords)

    __radd__ = __add__

    def __neg__(self):
        return TestRingElement(self.ring, {e: -c for e, c in self.coords.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        ring = self.ring
        coords: dict = {}
        for e1, c1 in self.coords.items():
            for e2, c2 in other.coords.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                e = ring._reduce_exp(e)
                if e is None:
                    continue
                c = c1 * c2
                coords[e] = coords.get(e, ring.field.zero()) + c
        return TestRingElement(ring, coords)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self.ring.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, TestRingElement):
            return self.ring == other.ring and self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ring), tuple(sorted(self.coords.items()))))

    def key(self):
        """Canonical sortable form (used to order enumeration output)."""
        return tuple((e, _scalar_key(self.coords[e])) for e in sorted(self.coords))

    def __str__(self):
        return self.ring.format_element(self)

    def __repr__(self):
        return f"TestRingElement({self})"


def invert_unit(a: TestRingElement) -> TestRingElement:
    """Inverse of a unit via the geometric series, cut off by nilpotency.

    With a = a0 + nu (a0 the constant coordinate, nu nilpotent),
    a^-1 = a0^-1 * sum_{i < c} (-nu/a0)^i.
    """
    ring = a.ring
    a0 = a.constant_coordinate()
    if ring.field.is_zero(a0):
        raise NotAUnitError("constant coordinate is zero")
    inv0 = ring.field.invert(a0)
    nu = a.nilpotent_part()
    step = nu.__neg__().__mul__(ring.embed_scalar(inv0))  # -nu/a0
    acc = ring.one()
    power = ring.one()
    for _ in range(1, ring.nilpotency_class):
        power = power * step
        if not power.coords:
            break
        acc = acc + power
    return acc * ring.embed_scalar(inv0)
