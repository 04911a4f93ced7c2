"""Varieties, arcs, minor selection and complete-intersection reduction.

An affine variety is given by named ambient variables and defining
polynomials over an exact field; an arc is one truncated t-series per
ambient variable.  The operations here validate arc membership, measure
vanishing orders along an arc, search Jacobian minors for the eliminated
variable set of minimal order, and replace an overdetermined equation set
by random k-combinations cutting a complete intersection that still
contains the arc (with a certificate instead of elimination theory: a
finite minor order along the arc).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .errors import InputError, MathError
from .matrices import RingMatrix
from .multipoly import MultiPoly, PolyRing
from .series import SeriesRing, TruncSeries

DEFAULT_MINOR_CAP = 5000
DEFAULT_MAX_TRIALS = 24


class DimensionMismatchError(InputError):
    pass


class NoFiniteMinorError(MathError):
    """Every candidate minor vanishes along the arc to the available
    precision: the arc is not visibly outside the singular locus."""


class SearchCapExceededError(MathError):
    pass


class ReductionFailedError(MathError):
    def __init__(self, message, best_d=None):
        super().__init__(message)
        self.best_d = best_d


class Variety:
    """Affine variety: ambient variable names and defining equations."""

    def __init__(self, field_, variables, equations, codim=None):
        self.field = field_
        self.ring = PolyRing(field_, variables)
        eqs = []
        for eq in equations:
            poly = self.ring.parse(eq) if isinstance(eq, str) else eq
            if poly.is_zero():
                raise InputError("defining equations must be nonzero")
            eqs.append(poly)
        if not eqs:
            raise InputError("a variety needs at least one equation")
        self.equations = tuple(eqs)
        self.codim = len(eqs) if codim is None else int(codim)
        if not 1 <= self.codim <= len(self.ring.variables):
            raise InputError(f"codimension {self.codim} out of range")

    @property
    def variables(self):
        return self.ring.variables

    def is_complete_intersection(self) -> bool:
        return len(self.equations) == self.codim

    def jacobian_row(self, eq_index: int):
        eq = self.equations[eq_index]
        return [eq.partial(v) for v in self.variables]

    def scale_equation(self, eq_index: int, c) -> "Variety":
        eqs = list(self.equations)
        eqs[eq_index] = eqs[eq_index].scale(c)
        return Variety(self.field, self.variables, eqs, self.codim)

    def __repr__(self):
        eqs = ", ".join(str(e) for e in self.equations)
        return f"Variety({eqs} in {self.ring!r})"


class Arc:
    """A tuple of truncated t-series over k, one per ambient variable."""

    def __init__(self, components: dict, precision: int):
        if precision < 1:
            raise InputError("arc precision must be >= 1")
        self.precision = precision
        self.components = dict(components)
        for name, s in self.components.items():
            if not isinstance(s, TruncSeries):
                raise InputError(f"component {name!r} is not a series")
            if s.precision < precision:
                raise InputError(f"component {name!r} has precision below the arc's")
            if s.precision > precision:
                self.components[name] = s.truncate(precision)

    def component(self, name: str) -> TruncSeries:
        return self.components[name]

    def names(self):
        return tuple(self.components)

    def __repr__(self):
        body = ", ".join(f"{n}={s}" for n, s in self.components.items())
        return f"Arc({body})"


@dataclass(frozen=True)
class MembershipReport:
    passed: bool
    orders: tuple  # (equation text, order or None) per equation
    precision: int

    def __str__(self):
        rows = [
            f"  ord({eq}) = {'>=%d' % self.precision if o is None else o}"
            for eq, o in self.orders
        ]
        verdict = "PASS" if self.passed else "FAIL"
        return "\n".join([f"membership {verdict} at precision {self.precision}"] + rows)


@dataclass(frozen=True)
class MinorSelection:
    """Chosen eliminated variables and the order of their Jacobian minor."""

    eliminated: tuple  # variable names, in ambient order
    d: int
    minor_order_table: tuple = field(default=(), compare=False)

    def kept(self, variety: Variety):
        return tuple(v for v in variety.variables if v not in self.eliminated)


def _series_environment(variety: Variety, arc: Arc):
    if set(arc.components) != set(variety.variables):
        raise DimensionMismatchError(
            f"arc components {sorted(arc.components)} do not match ambient"
            f" variables {sorted(variety.variables)}"
        )
    target = SeriesRing(variety.field, arc.precision)
    return target, dict(arc.components)


def ord_along_arc(g: MultiPoly, variety: Variety, arc: Arc):
    """Order of vanishing of g along the arc: the first index with nonzero
    t-coefficient of g(arc), or None when g(arc) = 0 through the precision."""
    target, values = _series_environment(variety, arc)
    return g.evaluate(values, target).order()


def check_arc(variety: Variety, arc: Arc) -> MembershipReport:
    """Report ord(p_i(arc)) per equation; PASS iff all vanish through the
    arc precision."""
    target, values = _series_environment(variety, arc)
    orders = []
    for eq in variety.equations:
        o = eq.evaluate(values, target).order()
        orders.append((str(eq), o))
    return MembershipReport(
        passed=all(o is None for _, o in orders),
        orders=tuple(orders),
        precision=arc.precision,
    )


def select_minor(
    variety: Variety,
    arc: Arc,
    cap: int = DEFAULT_MINOR_CAP,
    forced: tuple | None = None,
) -> MinorSelection:
    """Search r-subsets of ambient variables for the Jacobian minor of
    minimal finite order along the arc.

    Ties are broken by lexicographic comparison of the subsets' sorted
    variable names.  ``forced`` short-circuits the search with a
    user-supplied eliminated set.
    """
    if not variety.is_complete_intersection():
        raise InputError(
            "minor selection needs a complete intersection"
            f" ({len(variety.equations)} equations, codim {variety.codim})"
        )
    r = variety.codim
    names = variety.variables
    target, values = _series_environment(variety, arc)

    # evaluate the full Jacobian along the arc once
    jac = [
        [eq.partial(v).evaluate(values, target) for v in names]
        for eq in variety.equations
    ]
    series_ring = target

    if forced is not None:
        forced = tuple(forced)
        if len(forced) != r or any(v not in names for v in forced):
            raise InputError(f"--minor must name {r} distinct ambient variables")
        subsets = [tuple(i for i, v in enumerate(names) if v in forced)]
        if len(subsets[0]) != r:
            raise InputError("--minor contains repeated variables")
    else:
        total = comb(len(names), r)
        if total > cap:
            raise SearchCapExceededError(
                f"{total} candidate minors exceed the cap {cap};"
                " pass an explicit eliminated set"
            )
        subsets = list(combinations(range(len(names)), r))

    best = None
    table = []
    for subset in subsets:
        m = RingMatrix(series_ring, [[jac[i][j] for j in subset] for i in range(r)])
        o = m.det().order()
        subset_names = tuple(names[j] for j in subset)
        table.append((subset_names, o))
        if o is None:
            continue
        key = (o, tuple(sorted(subset_names)))
        if best is None or key < best[0]:
            best = (key, subset_names, o)
    if best is None:
        raise NoFiniteMinorError(
            f"every {r}x{r} Jacobian minor vanishes along the arc through"
            f" t^{arc.precision}"
        )
    return MinorSelection(eliminated=best[1], d=best[2], minor_order_table=tuple(table))


def minor_determinant(variety: Variety, eliminated) -> MultiPoly:
    """The chosen Jacobian minor as a polynomial on the ambient space."""
    r = variety.codim
    cols = [v for v in variety.variables if v in eliminated]
    if len(cols) != r:
        raise InputError("eliminated set does not match the codimension")
    m = RingMatrix(
        variety.ring,
        [[variety.equations[i].partial(v) for v in cols] for i in range(r)],
    )
    return m.det()


@dataclass(frozen=True)
class ReductionReport:
    trials: int
    d: int
    eliminated: tuple
    coefficients: tuple  # the r x s matrix of drawn combination coefficients
    membership: MembershipReport


def reduce_to_complete_intersection(
    variety: Variety,
    arc: Arc,
    seed: int,
    max_trials: int = DEFAULT_MAX_TRIALS,
    cap: int = DEFAULT_MINOR_CAP,
):
    """Replace s > r equations by r random k-combinations F_i = sum a_ij f_j
    containing the arc, certified by (a) arc membership of every F_i and
    (b) a finite minimal Jacobian minor order along the arc.

    The draw is an explicit seeded generator, so identical seeds replay the
    identical reduction.  With s = r the reduction is the identity (the
    certificate is still computed).
    """
    r = variety.codim
    s = len(variety.equations)
    if s < r:
        raise InputError(f"{s} equations cannot cut codimension {r}")
    if s == r:
        sel = select_minor(variety, arc, cap=cap)
        report = ReductionReport(
            trials=0,
            d=sel.d,
            eliminated=sel.eliminated,
            coefficients=tuple(
                tuple("1" if i == j else "0" for j in range(s)) for i in range(r)
            ),
            membership=check_arc(variety, arc),
        )
        return variety, sel, report

    rng = random.Random(seed)
    sample = variety.field.sample_set()
    best_d = None
    for trial in range(1, max_trials + 1):
        coeffs = [[rng.choice(sample) for _ in range(s)] for _ in range(r)]
        combos = []
        degenerate = False
        for i in range(r):
            acc = variety.ring.zero()
            for j, f in enumerate(variety.equations):
                acc = acc + f.scale(coeffs[i][j])
            if acc.is_zero():
                degenerate = True
                break
            combos.append(acc)
        if degenerate:
            continue
        try:
            reduced = Variety(variety.field, variety.variables, combos, r)
        except InputError:
            continue
        membership = check_arc(reduced, arc)
        if not membership.passed:
            # cannot happen when the arc lies on the input variety, but the
            # certificate is checked rather than assumed
            continue
        try:
            sel = select_minor(reduced, arc, cap=cap)
        except NoFiniteMinorError:
            continue
        if best_d is None or sel.d < best_d:
            best_d = sel.d
        report = ReductionReport(
            trials=trial,
            d=sel.d,
            eliminated=sel.eliminated,
            coefficients=tuple(
                tuple(variety.field.format_scalar(c) for c in row) for row in coeffs
            ),
            membership=membership,
        )
        return reduced, sel, report
    raise ReductionFailedError(
        f"no certified reduction after {max_trials} trials"
        + ("" if best_d is None else f" (best minor order seen: {best_d})"),
        best_d=best_d,
    )
