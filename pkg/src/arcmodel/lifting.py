"""Lifting model solutions to arc deformations, and finite certification.

The lift starts from the polynomial data of a model solution over a test
ring A: the monic divisor q, kept coordinates rebuilt as x = q^{e+1} xi + xb
from a caller-chosen free part xi, and the minimal-degree representative of
the eliminated coordinates.  One correction round solves B z = p(x, y)
through the adjugate: w = adj(B) p / q^{e+1} and z = q^e u^{-1} w where
det B = q u, all divisions performed by the stable distinguished division.
Each round strictly deepens the ideal-power/t-order filtration of the
residual, so at most (nilpotency class - 1) rounds plus a few t-adic Newton
rounds close the system; a residual that refuses an exact division certifies
that the input was not a genuine solution.

``truncate_to_solution`` is the inverse direction: Weierstrass-prepare the
selected Jacobian minor along a deformation, cut the coordinates down by
q-power remainders, and validate the result against the model equations.

``oracle_enumerate`` lists all solutions over a finite test ring by brute
force, and ``oracle_bijection_check`` certifies at a chosen jet depth that
lifting is a bijection onto the extendable jet-fiber points.  For rings with
m^2 = 0 every map in sight is affine-linear over the prime field (products
of two maximal-ideal offsets vanish), so the fast mode tabulates the maps by
probing genuine lifts along basis directions, verifies exactness on samples,
and settles counts, image equality and round-trip identities by exact linear
algebra; smaller instances run fully enumerated, and the two modes are
cross-checked in the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .errors import BudgetError, InputError, MathError
from .geometry import Arc, Variety, minor_determinant
from .jets import jet_presentation, jet_variable
from .matrices import RingMatrix
from .model import FiniteModel, required_precision
from .series import (
    PrecisionInsufficientError,
    SeriesRing,
    TruncSeries,
    UniPoly,
    UniPolyRing,
)
from .testrings import TestRing, TestRingElement
from .weierstrass import divmod_distinguished, weierstrass_prepare

DEFAULT_ORACLE_BUDGET = 10**8
_FAST_MODE_THRESHOLD = 1200
_SAMPLE_CHECKS = 48


class DivisionNotExactError(MathError):
    """An exact division demanded by the lifting identities failed: the
    supplied assignment was not a genuine solution."""


class NoConvergenceError(MathError):
    pass


class NotASolutionError(MathError):
    pass


class BudgetExceededError(BudgetError):
    pass


class MismatchFoundError(MathError):
    """The bijection certificate failed; carries the offending point."""


def oracle_margin(model: FiniteModel, ring: TestRing) -> int:
    """Extra jet depth consumed by one correction layer per nilpotency
    level: c * (e+1) * d.  A sufficient (not minimal) engineering bound."""
    return ring.nilpotency_class * (model.e + 1) * model.d


@dataclass(frozen=True)
class ModelSolution:
    ring: TestRing
    assignment: dict

    def value(self, name: str) -> TestRingElement:
        return self.assignment[name]

    def key(self):
        return tuple(self.assignment[u].key() for u in sorted(self.assignment))

    def validate(self, model: FiniteModel):
        if model.field != self.ring.field:
            raise InputError("solution ring and model field differ")
        if set(self.assignment) != set(model.unknowns):
            raise InputError("assignment does not cover the model unknowns")
        for u in model.unknowns:
            reduction = self.assignment[u].constant_coordinate()
            if not model.field.is_zero(reduction - model.base_point[u]):
                raise NotASolutionError(
                    f"unknown {u}: reduction {reduction} differs from the base point"
                )
        values = dict(self.assignment)
        for eq in model.equations:
            v = eq.evaluate(values, self.ring)
            if not self.ring.is_zero(v):
                raise NotASolutionError(f"model equation {eq} evaluates to {v}")
        return self


@dataclass(frozen=True)
class Deformation:
    components: dict  # ambient variable -> TruncSeries over A
    precision: int

    def component(self, name: str) -> TruncSeries:
        return self.components[name]

    def key(self, variables, precision=None):
        precision = precision or self.precision
        return tuple(
            tuple(self.components[v].coeff(i).key() for i in range(precision))
            for v in variables
        )

    def validate(self, model: FiniteModel):
        variety, arc = model.variety, model.arc
        ring = next(iter(self.components.values())).ring
        for v in variety.variables:
            comp = self.components[v]
            for i in range(self.precision):
                base = arc.component(v).coeff(i) if i < arc.precision else arc.component(v).ring.zero()
                delta = comp.coeff(i) - ring.embed_scalar(base)
                if not delta.in_maximal_ideal():
                    raise NotASolutionError(
                        f"component {v} does not reduce to the arc at t^{i}"
                    )
        target = SeriesRing(ring, self.precision)
        for eq in variety.equations:
            value = eq.evaluate(self.components, target)
            if not value.is_zero():
                raise NotASolutionError(
                    f"equation {eq} does not vanish through t^{self.precision}"
                )
        return self


def arc_component_poly(arc: Arc, name: str, field) -> UniPoly:
    return UniPoly(field, arc.component(name).coeffs)


def arc_is_exact(variety: Variety, arc: Arc) -> bool:
    """Whether the stored polynomial arc satisfies the equations exactly
    (not only through the arc precision)."""
    poly_ring = UniPolyRing(variety.field)
    values = {
        v: arc_component_poly(arc, v, variety.field) for v in variety.variables
    }
    return all(eq.evaluate(values, poly_ring).is_zero() for eq in variety.equations)


def default_free_part(model: FiniteModel, ring: TestRing, degree_cap=None) -> dict:
    """The tail of the arc's kept components beyond degree (e+1)d, embedded
    into A: the free part whose lift reproduces the arc itself."""
    shift = (model.e + 1) * model.d
    out = {}
    for v in model.kept:
        coeffs = list(model.arc.component(v).coeffs[shift:])
        if degree_cap is not None:
            coeffs = coeffs[:degree_cap]
        out[v] = UniPoly(ring, [ring.embed_scalar(c) for c in coeffs])
    return out


def _assignment_data(model: FiniteModel, sol: ModelSolution):
    ring = sol.ring
    d, e = model.d, model.e
    q = UniPoly(ring, [sol.value(f"a_{l}") for l in range(d)] + [ring.one()])
    xb = {
        v: UniPoly(
            ring,
            [sol.value(model.unknown_name_kept(v, j)) for j in range((e + 1) * d)],
        )
        for v in model.kept
    }
    yb = {
        v: UniPoly(
            ring, [sol.value(model.unknown_name_elim(v, j)) for j in range(e * d)]
        )
        for v in model.eliminated
    }
    return q, xb, yb


def lift_solution(
    model: FiniteModel,
    sol: ModelSolution,
    xi: dict | None,
    precision: int,
    initial_shift: dict | None = None,
) -> Deformation:
    """Produce an A-deformation with p = 0 mod t^precision from a model
    solution and a free part.

    ``xi`` maps each kept variable to a polynomial over A (defaults to the
    arc tail, i.e. the deformation of the arc itself); its reduction modulo
    the maximal ideal must be the arc tail.  ``initial_shift`` optionally
    perturbs the starting representative of the eliminated coordinates by
    q^e * shift, which must not change the outcome (uniqueness).
    """
    if model.is_smooth_point:
        raise InputError("smooth-point models carry no lifting data")
    ring = sol.ring
    if precision < required_precision(model.d, model.e):
        raise PrecisionInsufficientError(
            f"target precision {precision} below"
            f" {required_precision(model.d, model.e)}"
        )
    if xi is None:
        xi = default_free_part(model, ring)
    c = ring.nilpotency_class
    step = c * (model.e + 1) * model.d
    last_error = None
    for slack in (c, c + 3, c + 9):
        try:
            return _lift_at_precision(
                model, sol, xi, precision, precision + slack * step, initial_shift
            )
        except PrecisionInsufficientError as exc:
            last_error = exc
    raise NoConvergenceError(
        f"lift did not converge at any working precision: {last_error}"
    )


def _lift_at_precision(
    model: FiniteModel,
    sol: ModelSolution,
    xi: dict,
    precision: int,
    work: int,
    initial_shift: dict | None,
) -> Deformation:
    ring = sol.ring
    variety = model.variety
    d, e, r = model.d, model.e, model.r
    q, xb, yb = _assignment_data(model, sol)
    q_series = q.to_series(work)
    q_e = (q**e).to_series(work)
    q_e1 = (q ** (e + 1)).to_series(work)

    x = {}
    for v in model.kept:
        free = xi.get(v)
        if free is None:
            free = UniPoly.zero(ring)
        x[v] = xb[v].to_series(work) + q_e1 * free.to_series(work)
    y = {}
    for v in model.eliminated:
        y[v] = yb[v].to_series(work)
        if initial_shift and v in initial_shift:
            y[v] = y[v] + q_e * initial_shift[v].to_series(work)

    partials = {
        (i, v): variety.equations[i].partial(v)
        for i in range(r)
        for v in model.eliminated
    }

    rounds_cap = ring.nilpotency_class + max(6, precision)
    for _ in range(rounds_cap):
        values = dict(x)
        values.update(y)
        window = min(s.precision for s in values.values())
        if window < precision:
            raise PrecisionInsufficientError(
                f"working window shrank to {window} < {precision}"
            )
        target = SeriesRing(ring, window)
        at = {v: s.truncate(window) for v, s in values.items()}
        residual = [eq.evaluate(at, target) for eq in variety.equations]
        if all(s.is_zero_mod(precision) for s in residual):
            comps = {v: x[v].truncate(precision) for v in model.kept}
            comps.update({v: y[v].truncate(precision) for v in model.eliminated})
            return Deformation(components=comps, precision=precision).validate(model)

        b = RingMatrix(
            target,
            [
                [partials[(i, v)].evaluate(at, target) for v in model.eliminated]
                for i in range(r)
            ],
        )
        det_b = b.det()
        adj_b = b.adjugate()
        u_series, u_rem = divmod_distinguished(det_b, q)
        if not u_rem.is_zero():
            raise DivisionNotExactError(
                "det B is not divisible by q: not a genuine solution"
            )
        if not u_series.coeffs[0].is_unit():
            raise DivisionNotExactError("det B / q is not a unit along the lift")
        u_inv = u_series.invert()
        corrections = []
        for g in adj_b.mul_vector(residual):
            w, w_rem = divmod_distinguished(g, q_e1.to_unipoly())
            if not w_rem.is_zero():
                raise DivisionNotExactError(
                    "adj(B) p is not divisible by q^(e+1): not a genuine solution"
                )
            corrections.append(w)
        for v, w in zip(model.eliminated, corrections):
            z = q_e * (u_inv * w)
            y[v] = y[v] - z
    raise NoConvergenceError(f"no convergence after {rounds_cap} correction rounds")


def truncate_to_solution(model: FiniteModel, deformation: Deformation):
    """Cut a deformation down to a model solution plus its free part.

    Weierstrass-prepares the selected minor along the deformation, then
    extracts the coordinates by stable q-power division; the assembled
    assignment is validated against the model equations.
    """
    if model.is_smooth_point:
        raise InputError("smooth-point models carry no solution data")
    ring = next(iter(deformation.components.values())).ring
    d, e = model.d, model.e
    need = required_precision(d, e) + oracle_margin(model, ring)
    if deformation.precision < need:
        raise PrecisionInsufficientError(
            f"deformation precision {deformation.precision} below {need}"
        )
    minor = minor_determinant(model.variety, model.eliminated)
    target = SeriesRing(ring, deformation.precision)
    minor_series = minor.evaluate(deformation.components, target)
    prep = weierstrass_prepare(minor_series)
    if prep.d != d:
        raise NotASolutionError(
            f"minor order {prep.d} along the deformation differs from the model's {d}"
        )
    q = prep.q
    q_e = q**e
    q_e1 = q ** (e + 1)

    assignment = {f"a_{l}": q.coeff(l) for l in range(d)}
    xi = {}
    for v in model.kept:
        quo, rem = divmod_distinguished(deformation.components[v], q_e1)
        xi[v] = quo
        for j in range((e + 1) * d):
            assignment[model.unknown_name_kept(v, j)] = rem.coeff(j)
    for v in model.eliminated:
        _, rem = divmod_distinguished(deformation.components[v], q_e)
        for j in range(e * d):
            assignment[model.unknown_name_elim(v, j)] = rem.coeff(j)
    sol = ModelSolution(ring=ring, assignment=assignment).validate(model)
    return sol, xi


def oracle_enumerate(
    model: FiniteModel, ring: TestRing, budget: int = DEFAULT_ORACLE_BUDGET
) -> list:
    """All solutions over a finite test ring reducing to the base point.

    Unknowns range over base-point offsets in the maximal ideal, so the
    space has size |m|^unknowns; exceeding the budget raises.
    """
    if model.field != ring.field:
        raise InputError("test ring field differs from the model field")
    if not ring.field.is_finite:
        raise InputError("enumeration needs a finite coefficient field")
    n_unknowns = len(model.unknowns)
    space = ring.maximal_ideal_size() ** n_unknowns
    if space > budget:
        raise BudgetExceededError(
            f"solution space {space} exceeds the budget {budget}"
        )
    base = {u: ring.embed_scalar(model.base_point[u]) for u in model.unknowns}
    m_elements = list(ring.iter_maximal_ideal())
    out = []
    for offsets in product(m_elements, repeat=n_unknowns):
        assignment = {
            u: base[u] + off for u, off in zip(model.unknowns, offsets)
        }
        if all(
            ring.is_zero(eq.evaluate(assignment, ring)) for eq in model.equations
        ):
            out.append(ModelSolution(ring=ring, assignment=assignment))
    out.sort(key=lambda s: s.key())
    return out


# ---------------------------------------------------------------------------
# bijection certificate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BijectionReport:
    mode: str
    model_solutions: int
    free_dims: int  # number of free jet coordinates n * (N - (e+1)d) * dim m
    lift_image_count: int
    jet_points_extendable: int
    counts_match: bool
    round_trips_checked: int
    round_trips_ok: bool
    evaluations: int
    jet_order: int
    margin: int

    @property
    def passed(self) -> bool:
        return self.counts_match and self.round_trips_ok

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "model_solutions": self.model_solutions,
            "free_dims": self.free_dims,
            "lift_image": self.lift_image_count,
            "jet_points_extendable": self.jet_points_extendable,
            "round_trips_checked": self.round_trips_checked,
            "bijection": "PASS" if self.passed else "FAIL",
            "jet_order": self.jet_order,
            "margin": self.margin,
            "evaluations": self.evaluations,
        }


def oracle_bijection_check(
    model: FiniteModel,
    ring: TestRing,
    precision: int,
    budget: int = DEFAULT_ORACLE_BUDGET,
    mode: str = "auto",
) -> BijectionReport:
    """Certify that lifting is a bijection onto the extendable jet fiber.

    Side (a): model solutions crossed with free parts, mapped forward by
    the lift.  Side (b): points of the order-(N-1) jet equations over A
    reducing to the arc that extend to depth N + margin.  The check demands
    equal counts, image containment, and lift/truncate round-trip
    identities; any defect raises MismatchFoundError.
    """
    if model.is_smooth_point:
        raise InputError("the bijection oracle needs a model with d >= 1")
    if model.field != ring.field or not ring.field.is_finite:
        raise InputError("the oracle needs a finite field matching the model")
    if precision < required_precision(model.d, model.e):
        raise PrecisionInsufficientError(
            f"jet depth {precision} below {required_precision(model.d, model.e)}"
        )
    if not arc_is_exact(model.variety, model.arc):
        raise InputError(
            "the oracle needs an arc whose stored polynomial solves the"
            " equations exactly"
        )

    margin = oracle_margin(model, ring)
    free_exp = (
        model.n
        * (precision - (model.e + 1) * model.d)
        * len(ring.maximal_ideal_basis())
    )
    sols = oracle_enumerate(model, ring, budget)
    pairs = len(sols) * ring.field.p**free_exp

    if mode == "auto":
        if pairs <= _FAST_MODE_THRESHOLD:
            mode = "enumerate"
        elif ring.nilpotency_class == 2:
            mode = "linear"
        else:
            raise BudgetExceededError(
                f"{pairs} lift pairs exceed the enumerable threshold and the"
                " linear fast path needs nilpotency class 2"
            )
    if mode == "enumerate":
        return _bijection_enumerate(model, ring, precision, margin, sols, free_exp, budget)
    if mode == "linear":
        if ring.nilpotency_class != 2:
            raise InputError("linear mode requires nilpotency class 2")
        return _bijection_linear(model, ring, precision, margin, sols, free_exp, budget)
    raise InputError(f"unknown oracle mode {mode!r}")


def _free_part_offsets(model: FiniteModel, ring: TestRing, width: int):
    """All free-part offset dictionaries with coefficients in m."""
    m_elements = list(ring.iter_maximal_ideal())
    kept = model.kept
    slots = len(kept) * width
    for combo in product(m_elements, repeat=slots):
        out = {}
        for i, v in enumerate(kept):
            out[v] = UniPoly(ring, list(combo[i * width : (i + 1) * width]))
        yield out


def _merge_free_parts(base: dict, offset: dict, ring: TestRing) -> dict:
    out = {}
    for v, poly in base.items():
        off = offset.get(v)
        out[v] = poly if off is None else poly + off
    for v, off in offset.items():
        if v not in out:
            out[v] = off
    return out


def _base_coefficient(model: FiniteModel, ring: TestRing, var: str, level: int):
    arc = model.arc
    if level < arc.precision:
        return ring.embed_scalar(arc.component(var).coeff(level))
    return ring.zero()


def _bijection_enumerate(model, ring, precision, margin, sols, free_exp, budget):
    variety = model.variety
    depth = precision + margin
    width = precision - (model.e + 1) * model.d
    evaluations = 0

    xi0 = default_free_part(model, ring)
    image = {}
    checked = 0
    for sol in sols:
        for offset in _free_part_offsets(model, ring, width):
            xi = _merge_free_parts(xi0, offset, ring)
            deep = lift_solution(model, sol, xi, depth)
            evaluations += 1
            if evaluations > budget:
                raise BudgetExceededError(f"lift enumeration exceeded budget {budget}")
            key = deep.key(variety.variables, precision)
            if key in image:
                raise MismatchFoundError(
                    f"two solution/free-part pairs lift to the same jet: {key}"
                )
            # round trip on the deep representative
            back_sol, back_xi = truncate_to_solution(model, deep)
            if back_sol.key() != sol.key():
                raise MismatchFoundError(
                    f"round trip changed the solution: {sol.key()} -> {back_sol.key()}"
                )
            for v in model.kept:
                want = xi[v].to_series(width) if width > 0 else None
                got = back_xi[v]
                if width > 0 and not (want - got.truncate(width)).is_zero():
                    raise MismatchFoundError(
                        f"round trip changed the free part of {v}"
                    )
            checked += 1
            image[key] = (sol, xi)

    jet_points = _enumerate_jet_fiber(
        model, ring, precision, depth, budget, evaluations
    )
    evaluations = jet_points.evaluations
    extendable = jet_points.extendable

    for key, extended in extendable.items():
        if key not in image:
            raise MismatchFoundError(f"extendable jet point outside the lift image: {key}")
        back_sol, back_xi = truncate_to_solution(model, extended)
        want_sol, want_xi = image[key]
        if back_sol.key() != want_sol.key():
            raise MismatchFoundError(
                f"jet-side round trip disagrees with the lift pairing at {key}"
            )
        checked += 1

    counts_match = (
        len(image) == len(extendable) == len(sols) * ring.field.p**free_exp
    )
    if not counts_match:
        raise MismatchFoundError(
            f"count mismatch: lifts {len(image)}, extendable jets"
            f" {len(extendable)}, solutions x free parts"
            f" {len(sols) * ring.field.p ** free_exp}"
        )
    return BijectionReport(
        mode="enumerate",
        model_solutions=len(sols),
        free_dims=free_exp,
        lift_image_count=len(image),
        jet_points_extendable=len(extendable),
        counts_match=counts_match,
        round_trips_checked=checked,
        round_trips_ok=True,
        evaluations=evaluations,
        jet_order=precision,
        margin=margin,
    )


@dataclass
class _JetEnumeration:
    extendable: dict
    evaluations: int


def _enumerate_jet_fiber(model, ring, precision, depth, budget, evaluations=0):
    """DFS over coefficient levels: points of the jet equations reducing to
    the arc, keeping those extendable to the full depth (with the found
    extension as representative)."""
    variety = model.variety
    pres = jet_presentation(variety, depth - 1)
    m_elements = list(ring.iter_maximal_ideal())
    nvars = len(variety.variables)
    counter = [evaluations]
    extendable = {}

    def level_equations(level, values):
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExceededError(f"jet enumeration exceeded budget {budget}")
        return all(
            ring.is_zero(gen.evaluate(values, ring))
            for gen in pres.generators_at_level(level)
        )

    def extend(level, values):
        """First-success continuation search beyond the window."""
        if level >= depth:
            return values
        base = [
            _base_coefficient(model, ring, v, level) for v in variety.variables
        ]
        for combo in product(m_elements, repeat=nvars):
            vals = dict(values)
            for v, b, off in zip(variety.variables, base, combo):
                vals[jet_variable(v, level)] = b + off
            if level_equations(level, vals):
                found = extend(level + 1, vals)
                if found is not None:
                    return found
        return None

    def dfs(level, values):
        if level >= precision:
            extension = extend(precision, values)
            if extension is None:
                return
            comps = {
                v: TruncSeries(
                    ring,
                    [extension[jet_variable(v, j)] for j in range(depth)],
                    depth,
                )
                for v in variety.variables
            }
            deformation = Deformation(components=comps, precision=depth)
            key = deformation.key(variety.variables, precision)
            extendable[key] = deformation
            return
        base = [
            _base_coefficient(model, ring, v, level) for v in variety.variables
        ]
        for combo in product(m_elements, repeat=nvars):
            vals = dict(values)
            for v, b, off in zip(variety.variables, base, combo):
                vals[jet_variable(v, level)] = b + off
            if level_equations(level, vals):
                dfs(level + 1, vals)

    dfs(0, {})
    return _JetEnumeration(extendable=extendable, evaluations=counter[0])


# -- linear fast path (nilpotency class 2) ----------------------------------


def _fp_rref(rows, p):
    """Reduced row echelon form mod p; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col] % p:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def _fp_nullspace(rows, ncols, p):
    """Basis of the solution space of rows . x = 0 mod p."""
    rref, pivots = _fp_rref(rows, p) if rows else ([], [])
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in zip(rref, pivots):
            vec[pc] = (-r[fc]) % p
        basis.append(vec)
    return basis


def _fp_rank(rows, p):
    if not rows:
        return 0
    rref, pivots = _fp_rref(rows, p)
    return len(pivots)


class _OffsetCoding:
    """Encode deformation offsets (variable, level, m-basis slot) as int
    vectors mod p, relative to the arc's own coefficients."""

    def __init__(self, model, ring, levels):
        self.model = model
        self.ring = ring
        self.levels = levels
        self.variables = model.variety.variables
        self.m_basis = ring.maximal_ideal_basis()
        self.p = ring.field.p
        self.dim = len(self.variables) * levels * len(self.m_basis)

    def index(self, var_i, level, basis_i):
        per_level = len(self.m_basis)
        per_var = self.levels * per_level
        return var_i * per_var + level * per_level + basis_i

    def unit_offset(self, var_i, level, basis_i):
        vec = [0] * self.dim
        vec[self.index(var_i, level, basis_i)] = 1
        return vec

    def to_values(self, vec):
        """Jet-variable assignment (absolute coefficients) for a vector."""
        ring, model = self.ring, self.model
        values = {}
        for vi, v in enumerate(self.variables):
            for level in range(self.levels):
                acc = _base_coefficient(model, ring, v, level)
                for bi, mu in enumerate(self.m_basis):
                    cval = vec[self.index(vi, level, bi)] % self.p
                    if cval:
                        acc = acc + ring.monomial(mu, ring.field.from_int(cval))
                values[jet_variable(v, level)] = acc
        return values

    def to_deformation(self, vec, precision=None) -> Deformation:
        precision = precision or self.levels
        values = self.to_values(vec)
        comps = {
            v: TruncSeries(
                self.ring,
                [values[jet_variable(v, j)] for j in range(self.levels)],
                self.levels,
            ).truncate(precision)
            for v in self.variables
        }
        return Deformation(components=comps, precision=precision)

    def from_deformation(self, deformation: Deformation, levels=None):
        levels = levels or self.levels
        ring, model = self.ring, self.model
        vec = [0] * (len(self.variables) * self.levels * len(self.m_basis))
        for vi, v in enumerate(self.variables):
            comp = deformation.components[v]
            for level in range(min(levels, comp.precision)):
                delta = comp.coeff(level) - _base_coefficient(model, ring, v, level)
                if delta.is_unit():
                    raise MismatchFoundError(
                        f"deformation does not reduce to the arc at {v}, t^{level}"
                    )
                for bi, mu in enumerate(self.m_basis):
                    c = delta.coordinate(mu)
                    vec[self.index(vi, level, bi)] = (
                        c.value if hasattr(c, "value") else int(c)
                    )
        return vec


def _solution_offset_vector(model, ring, sol):
    m_basis = ring.maximal_ideal_basis()
    vec = []
    for u in model.unknowns:
        delta = sol.value(u) - ring.embed_scalar(model.base_point[u])
        for mu in m_basis:
            c = delta.coordinate(mu)
            vec.append(c.value if hasattr(c, "value") else int(c))
    return vec


def _bijection_linear(model, ring, precision, margin, sols, free_exp, budget):
    """m^2 = 0 makes every jet equation and both transfer maps affine-linear
    over F_p, so probe them with genuine computations along basis directions
    and settle the certificate with exact linear algebra.  Sampled probes
    re-verify linearity against full lifts."""
    variety = model.variety
    p = ring.field.p
    depth = precision + margin
    width = precision - (model.e + 1) * model.d
    coding = _OffsetCoding(model, ring, depth)
    pres = jet_presentation(variety, depth - 1)
    gens = pres.all_generators()
    m_basis = ring.maximal_ideal_basis()
    evaluations = 0

    def gen_values(vec):
        values = coding.to_values(vec)
        return [g.evaluate(values, ring) for g in gens]

    # the arc itself must be an exact point of every generator
    base_vals = gen_values([0] * coding.dim)
    evaluations += 1
    if any(not ring.is_zero(v) for v in base_vals):
        raise MismatchFoundError("the arc fails the jet equations; no linearization")

    # probe the linear forms of the jet system
    rows = [[0] * coding.dim for _ in range(len(gens) * len(m_basis))]
    for col in range(coding.dim):
        vals = gen_values(coding.unit_offset(*_unindex(coding, col)))
        evaluations += 1
        for gi, val in enumerate(vals):
            for bi, mu in enumerate(m_basis):
                c = val.coordinate(mu)
                rows[gi * len(m_basis) + bi][col] = (
                    c.value if hasattr(c, "value") else int(c)
                )

    # split rows into window (levels < precision) and tail
    per_eq = depth  # generator levels per equation
    window_rows, tail_rows = [], []
    for gi in range(len(gens)):
        level = gi % per_eq
        for bi in range(len(m_basis)):
            row = rows[gi * len(m_basis) + bi]
            (window_rows if level < precision else tail_rows).append(row)

    def is_pre_col(col):
        vi, level, bi = _unindex(coding, col)
        return level < precision

    pre_cols = [c for c in range(coding.dim) if is_pre_col(c)]
    cont_cols = [c for c in range(coding.dim) if not is_pre_col(c)]
    # window rows must not touch continuation columns (t-grading)
    for row in window_rows:
        if any(row[c] % p for c in cont_cols):
            raise MathError("jet grading violated: window row uses deep levels")

    a_pre = [[row[c] for c in pre_cols] for row in tail_rows]
    a_cont = [[row[c] for c in cont_cols] for row in tail_rows]
    # left null space of the continuation block: obstructions that no
    # continuation can absorb
    a_cont_t = [list(col) for col in zip(*a_cont)] if a_cont else []
    left_null = _fp_nullspace(a_cont_t, len(tail_rows), p) if tail_rows else []
    obstruction_rows = []
    for y in left_null:
        obstruction_rows.append(
            [sum(y[i] * a_pre[i][j] for i in range(len(tail_rows))) % p for j in range(len(pre_cols))]
        )

    system = [[row[c] for c in pre_cols] for row in window_rows] + obstruction_rows
    ext_basis = _fp_nullspace(system, len(pre_cols), p)
    ext_dim = len(ext_basis)
    jet_count = p**ext_dim

    # side (a): probe the lift map along solution-space and free-part bases
    xi0 = default_free_part(model, ring)

    def real_lift_vec(sol, xi):
        nonlocal evaluations
        deep = lift_solution(model, sol, xi, depth)
        evaluations += 1
        full = coding.from_deformation(deep)
        return [full[c] for c in pre_cols], deep

    base_sol = ModelSolution(
        ring=ring,
        assignment={u: ring.embed_scalar(model.base_point[u]) for u in model.unknowns},
    )
    base_vec, _ = real_lift_vec(base_sol, xi0)
    if any(v % p for v in base_vec):
        raise MismatchFoundError("lifting the base point does not reproduce the arc")

    sol_vectors = [_solution_offset_vector(model, ring, s) for s in sols]
    sol_rref, sol_pivots = _fp_rref(sol_vectors, p)
    if p ** len(sol_pivots) != len(sols):
        raise MismatchFoundError(
            "solution set is not a linear space; linear mode is invalid here"
        )

    columns = []
    basis_sols = []
    for bvec in sol_rref:
        assignment = dict(base_sol.assignment)
        k = 0
        for u in model.unknowns:
            acc = assignment[u]
            for mu in m_basis:
                if bvec[k] % p:
                    acc = acc + ring.monomial(mu, ring.field.from_int(bvec[k]))
                k += 1
            assignment[u] = acc
        s = ModelSolution(ring=ring, assignment=assignment).validate(model)
        basis_sols.append(s)
        vec, _ = real_lift_vec(s, xi0)
        columns.append(vec)

    for v in model.kept:
        for j in range(width):
            for mu in m_basis:
                xi = dict(xi0)
                xi[v] = xi[v] + UniPoly(
                    ring, [ring.zero()] * j + [ring.monomial(mu)]
                )
                vec, _ = real_lift_vec(base_sol, xi)
                columns.append(vec)

    # exact linear-algebra certificate
    col_rank = _fp_rank(columns, p)
    if col_rank != len(columns):
        raise MismatchFoundError("lift map is not injective on basis directions")
    if len(columns) != len(sol_pivots) + free_exp:
        raise MathError("internal: probe count disagrees with dimension budget")
    ext_rank = _fp_rank(ext_basis, p)
    if ext_rank != ext_dim:
        raise MathError("internal: extendable basis degenerate")
    combined = _fp_rank(ext_basis + columns, p)
    image_in_ext = combined == ext_dim
    counts_match = len(columns) == ext_dim
    if not (image_in_ext and counts_match):
        raise MismatchFoundError(
            f"lift image (dim {len(columns)}) does not match the extendable"
            f" jet space (dim {ext_dim})"
        )

    # sampled verification: linear prediction vs genuine lift, plus round trips
    rng = random.Random(20240 + p + coding.dim)
    checked = 0
    for _ in range(_SAMPLE_CHECKS):
        s = rng.choice(sols)
        svec = _solution_offset_vector(model, ring, s)
        xi = dict(xi0)
        xi_coords = []
        for v in model.kept:
            coeffs = []
            for j in range(width):
                acc = ring.zero()
                for mu in m_basis:
                    cval = rng.randrange(p)
                    xi_coords.append(cval)
                    if cval:
                        acc = acc + ring.monomial(mu, ring.field.from_int(cval))
                coeffs.append(acc)
            xi[v] = xi[v] + UniPoly(ring, coeffs)
        # predicted = sum of columns weighted by the solution/free coordinates
        svec_red = _coordinates_in_rref(svec, sol_rref, sol_pivots, p)
        weights = svec_red + xi_coords
        predicted = [
            sum(w * col[i] for w, col in zip(weights, columns)) % p
            for i in range(len(pre_cols))
        ]
        real_vec, deep = real_lift_vec(s, xi)
        if real_vec != predicted:
            raise MismatchFoundError(
                "linearity check failed: genuine lift disagrees with the"
                " affine model"
            )
        back_sol, back_xi = truncate_to_solution(model, deep)
        if back_sol.key() != s.key():
            raise MismatchFoundError("sampled round trip changed the solution")
        for v in model.kept:
            if width > 0 and not (
                xi[v].to_series(width) - back_xi[v].truncate(width)
            ).is_zero():
                raise MismatchFoundError("sampled round trip changed the free part")
        checked += 1

    # round trips on the extendable basis: extend, truncate, relift
    for bvec in ext_basis[: _SAMPLE_CHECKS]:
        full_vec = _extend_vector(bvec, pre_cols, cont_cols, a_pre, a_cont, coding.dim, p)
        deformation = coding.to_deformation(full_vec)
        back_sol, back_xi = truncate_to_solution(model, deformation)
        relift = lift_solution(model, back_sol, _merge_free_parts(
            {v: back_xi[v].to_unipoly() for v in model.kept}, {}, ring
        ), precision)
        evaluations += 1
        want = deformation.key(variety.variables, precision)
        got = relift.key(variety.variables, precision)
        if want != got:
            raise MismatchFoundError("jet-side round trip failed on a basis point")
        checked += 1

    return BijectionReport(
        mode="linear",
        model_solutions=len(sols),
        free_dims=free_exp,
        lift_image_count=p ** len(columns),
        jet_points_extendable=jet_count,
        counts_match=True,
        round_trips_checked=checked,
        round_trips_ok=True,
        evaluations=evaluations,
        jet_order=precision,
        margin=margin,
    )


def _unindex(coding: _OffsetCoding, col: int):
    per_level = len(coding.m_basis)
    per_var = coding.levels * per_level
    vi = col // per_var
    rem = col % per_var
    return vi, rem // per_level, rem % per_level


def _coordinates_in_rref(vec, rref, pivots, p):
    """Coordinates of a vector in the span of an rref basis."""
    residue = list(vec)
    coords = []
    for row, pc in zip(rref, pivots):
        c = residue[pc] % p
        coords.append(c)
        if c:
            residue = [(a - c * b) % p for a, b in zip(residue, row)]
    if any(x % p for x in residue):
        raise MismatchFoundError("vector outside the solution span")
    return coords


def _extend_vector(pre_vec, pre_cols, cont_cols, a_pre, a_cont, dim, p):
    """Solve the tail rows for continuation values; consistency is
    guaranteed for extendable points."""
    full = [0] * dim
    for value, col in zip(pre_vec, pre_cols):
        full[col] = value % p
    if not a_cont or not a_cont[0]:
        return full
    rhs = [(-sum(r * v for r, v in zip(row, pre_vec))) % p for row in a_pre]
    aug = [row + [b] for row, b in zip(a_cont, rhs)]
    rref, pivots = _fp_rref(aug, p)
    ncols = len(cont_cols)
    solution = [0] * ncols
    for row, pc in zip(rref, pivots):
        if pc == ncols:
            raise MismatchFoundError("tail system inconsistent for a basis point")
        solution[pc] = row[ncols] % p
    for value, col in zip(solution, cont_cols):
        full[col] = value
    return full
