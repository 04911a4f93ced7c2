"""Jet-space presentations and higher-derivation machinery.

Order-m jets of X are presented on variables ``v_j`` (the t^j-coefficient
slot of the ambient variable v, j = 0..m) with one generator per defining
equation and level: the level-l generator is the t^l-coefficient of
p(sum_j v_j t^j).  These coefficient polynomials obey the graded Leibniz
rule level by level, which keeps the presentation correct over every
characteristic; the single total derivative D with D(v_j) = v_{j+1}
reproduces them up to factorials (D applied to the level-l generator gives
(l+1) times the level-(l+1) one), which is an equivalent generating set
only in characteristic zero.

``hs_universal_check`` certifies at desk scale that A-points of the
presentation correspond exactly to ring maps into A[t]/(t^{m+1}) under the
coefficient correspondence, by enumerating both sides independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import BudgetError, InputError
from .geometry import Variety
from .multipoly import MultiPoly, PolyRing
from .series import SeriesRing, TruncSeries, UniPoly, UniPolyRing

DEFAULT_ENUM_BUDGET = 10**8


class BudgetExceededError(BudgetError):
    pass


def jet_variable(base: str, level: int) -> str:
    return f"{base}_{level}"


def jet_ring(field, base_names, order: int) -> PolyRing:
    names = [jet_variable(v, j) for v in base_names for j in range(order + 1)]
    return PolyRing(field, names)


@dataclass(frozen=True)
class JetPresentation:
    order: int
    base_variables: tuple
    ring: PolyRing
    generators: tuple  # generators[i][l] = level-l generator of equation i

    def generators_at_level(self, level: int):
        return tuple(gens[level] for gens in self.generators)

    def all_generators(self):
        return tuple(g for gens in self.generators for g in gens)

    def variables(self):
        return self.ring.variables


def jet_presentation(variety: Variety, order: int) -> JetPresentation:
    """Present the order-m jets of the variety.

    The level-l generator of equation p is the t^l-coefficient of p
    evaluated at the generic truncated arc sum_j v_j t^j.
    """
    if order < 0:
        raise InputError("jet order must be >= 0")
    ring = jet_ring(variety.field, variety.variables, order)
    poly_t = UniPolyRing(ring)
    generic = {
        v: UniPoly(ring, [ring.var(jet_variable(v, j)) for j in range(order + 1)])
        for v in variety.variables
    }
    generators = []
    for eq in variety.equations:
        expanded = eq.evaluate(generic, poly_t)
        generators.append(tuple(expanded.coeff(l) for l in range(order + 1)))
    return JetPresentation(
        order=order,
        base_variables=tuple(variety.variables),
        ring=ring,
        generators=tuple(generators),
    )


def total_derivative(g: MultiPoly, base_names) -> MultiPoly:
    """The derivation with D(v_j) = v_{j+1}, extended by the Leibniz rule.

    Input lives in a jet ring of some order; the result lives in the jet
    ring one level higher.  Constants map to zero.
    """
    src = g.ring
    # find the current order from the ring's variable list
    order = -1
    for name in src.variables:
        base, _, lvl = name.rpartition("_")
        if base in base_names and lvl.isdigit():
            order = max(order, int(lvl))
    if order < 0:
        raise InputError("polynomial does not live in a jet ring of the given bases")
    dst = jet_ring(src.field, base_names, order + 1)
    out = dst.zero()
    for name in src.variables:
        base, _, lvl = name.rpartition("_")
        partial = g.partial(name)
        if partial.is_zero():
            continue
        lifted = _transport(partial, dst)
        out = out + lifted * dst.var(jet_variable(base, int(lvl) + 1))
    return out


def transport_to_jet_ring(g: MultiPoly, ring: PolyRing) -> MultiPoly:
    """Reindex a polynomial into a larger jet ring with the same names."""
    return _transport(g, ring)


def _transport(g: MultiPoly, dst: PolyRing) -> MultiPoly:
    index = {v: dst.variables.index(v) for v in g.ring.variables}
    width = len(dst.variables)
    terms = {}
    for e, c in g.terms.items():
        ne = [0] * width
        for i, n in enumerate(e):
            if n:
                ne[index[g.ring.variables[i]]] = n
        terms[tuple(ne)] = c
    return MultiPoly(dst, terms)


@dataclass(frozen=True)
class HSReport:
    order: int
    presentation_points: int
    substitution_points: int
    bijection: bool
    evaluations: int


def hs_universal_check(
    variety: Variety, order: int, ring, budget: int = DEFAULT_ENUM_BUDGET
) -> HSReport:
    """Certify the coefficient correspondence between presentation points
    and truncated-arc ring maps over a finite test ring.

    Both finite sets are enumerated independently -- one against the jet
    presentation generators, one by direct series arithmetic in
    A[t]/(t^{m+1}) -- and compared elementwise under the reindexing
    v_j <-> t^j-coefficient.
    """
    if ring.field != variety.field:
        raise InputError("test ring and variety base fields differ")
    if not ring.field.is_finite:
        raise InputError("universal check needs a finite coefficient field")

    pres = jet_presentation(variety, order)
    elements = _ring_elements(ring)
    nvars = len(variety.variables)
    total = len(elements) ** (nvars * (order + 1))
    evaluations = 0

    # side 1: DFS over levels, pruning with the level-l generators
    side1 = []

    def dfs(level, values):
        nonlocal evaluations
        if level > order:
            side1.append(_point_key(variety, values, order))
            return
        for combo in product(elements, repeat=nvars):
            vals = dict(values)
            for v, a in zip(variety.variables, combo):
                vals[jet_variable(v, level)] = a
            evaluations += 1
            if evaluations > budget:
                raise BudgetExceededError(
                    f"enumeration exceeded budget {budget} (space {total})"
                )
            ok = all(
                ring.is_zero(gen.evaluate(vals, ring))
                for gen in pres.generators_at_level(level)
            )
            if ok:
                dfs(level + 1, vals)

    dfs(0, {})

    # side 2: ring maps by direct substitution into A[t]/(t^{m+1})
    side2 = []

    def dfs2(level, coeffs):
        nonlocal evaluations
        if level > order:
            side2.append(
                tuple(tuple(coeffs[v][j].key() for j in range(order + 1)) for v in variety.variables)
            )
            return
        for combo in product(elements, repeat=nvars):
            vals = {v: coeffs[v] + [a] for v, a in zip(variety.variables, combo)}
            evaluations += 1
            if evaluations > budget:
                raise BudgetExceededError(
                    f"enumeration exceeded budget {budget} (space {total})"
                )
            target = SeriesRing(ring, level + 1)
            series = {
                v: TruncSeries(ring, vals[v], level + 1) for v in variety.variables
            }
            ok = all(
                eq.evaluate(series, target).is_zero() for eq in variety.equations
            )
            if ok:
                dfs2(level + 1, vals)

    dfs2(0, {v: [] for v in variety.variables})

    return HSReport(
        order=order,
        presentation_points=len(side1),
        substitution_points=len(side2),
        bijection=sorted(side1) == sorted(side2),
        evaluations=evaluations,
    )


def _ring_elements(ring):
    """All elements of a finite test ring, unit part included."""
    from .testrings import TestRingElement

    basis = ring.standard_monomials
    scalars = ring.field.elements()
    out = []
    for coords in product(scalars, repeat=len(basis)):
        out.append(
            TestRingElement(
                ring,
                {e: c for e, c in zip(basis, coords) if not ring.field.is_zero(c)},
            )
        )
    return out


def _point_key(variety: Variety, values: dict, order: int):
    return tuple(
        tuple(values[jet_variable(v, j)].key() for j in range(order + 1))
        for v in variety.variables
    )
