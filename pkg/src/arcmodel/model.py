"""The finite polynomial model of an arc's formal neighborhood.

Given a complete intersection X (r equations in n + r ambient variables),
an arc on X, and an eliminated-variable selection whose Jacobian minor has
order d >= 1 along the arc, the builder introduces

* a monic degree-d divisor  q = t^d + a_{d-1} t^{d-1} + ... + a_0,
* kept coordinates  xb_v = sum_j xb_{v,j} t^j  of degree < (e+1)d,
* eliminated coordinates  yb_v = sum_j yb_{v,j} t^j  of degree < ed,

with every coefficient a fresh unknown, and extracts three equation
families over k by remainder coefficients:

* det B mod q                (d equations),
* p(xb, yb) mod q^e          (e*d per eliminated equation),
* adj(B) p(xb, yb) mod q^(e+1)  ((e+1)*d per equation),

where B is the eliminated-columns Jacobian evaluated at (xb, yb).  The
marked base point substitutes q = t^d and the truncated arc coefficients,
and is verified to satisfy every equation.  Counts: d(e+1)n + edr + d
unknowns and d + edr + (e+1)dr equations; for e = 1 these are d(2n+r+1)
and d(1+3r).

A selection with d = 0 is the smooth case: the model degenerates to a
single reduced point and is returned as a distinguished empty model.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, MathError
from .geometry import Arc, MinorSelection, Variety
from .matrices import RingMatrix, field_matrix_rank
from .multipoly import MultiPoly, PolyRing
from .series import UniPoly, UniPolyRing
from .testrings import TestRing, TestRingElement
from .weierstrass import divmod_distinguished


def required_precision(d: int, e: int) -> int:
    return 2 * d * (e + 1) + 2


def unknown_count(n: int, r: int, d: int, e: int) -> int:
    return d * (e + 1) * n + e * d * r + d


def equation_count(r: int, d: int, e: int) -> int:
    return d + e * d * r + (e + 1) * d * r


class FiniteModel:
    """Presentation of the finite-dimensional factor at the marked point."""

    def __init__(
        self,
        variety: Variety,
        arc: Arc,
        selection: MinorSelection,
        e: int,
        unknowns,
        equations,
        base_point,
    ):
        self.variety = variety
        self.arc = arc
        self.selection = selection
        self.e = e
        self.unknowns = tuple(unknowns)
        self.equations = tuple(equations)
        self.base_point = dict(base_point)
        self.field = variety.field
        self.unknown_ring = (
            PolyRing(self.field, self.unknowns) if self.unknowns else None
        )

    @property
    def d(self) -> int:
        return self.selection.d

    @property
    def is_smooth_point(self) -> bool:
        return self.d == 0

    @property
    def kept(self):
        return self.selection.kept(self.variety)

    @property
    def eliminated(self):
        return self.selection.eliminated

    @property
    def n(self) -> int:
        return len(self.kept)

    @property
    def r(self) -> int:
        return self.variety.codim

    def counts(self):
        return len(self.unknowns), len(self.equations)

    def unknown_name_q(self, l: int) -> str:
        return f"a_{l}"

    def unknown_name_kept(self, var: str, j: int) -> str:
        return f"xb_{var}_{j}"

    def unknown_name_elim(self, var: str, j: int) -> str:
        return f"yb_{var}_{j}"

    def evaluate_at(self, assignment: dict, ring) -> list:
        """Evaluate every model equation at ring values for the unknowns."""
        return [eq.evaluate(assignment, ring) for eq in self.equations]

    def base_satisfied(self) -> bool:
        values = {u: self.base_point[u] for u in self.unknowns}
        return all(
            self.field.is_zero(eq.evaluate(values, self.field))
            for eq in self.equations
        )

    def __repr__(self):
        u, q = self.counts()
        return f"FiniteModel(d={self.d}, e={self.e}, unknowns={u}, equations={q})"


def build_model(
    variety: Variety, arc: Arc, selection: MinorSelection, e: int = 1
) -> FiniteModel:
    """Construct the model; see the module docstring for the recipe."""
    if e < 1:
        raise InputError("e must be a positive integer")
    if not variety.is_complete_intersection():
        raise InputError("model building needs a complete intersection")
    d = selection.d
    if d == 0:
        return FiniteModel(variety, arc, selection, e, (), (), {})
    if arc.precision < required_precision(d, e):
        from .series import PrecisionInsufficientError

        raise PrecisionInsufficientError(
            f"arc precision {arc.precision} below required"
            f" {required_precision(d, e)} for d={d}, e={e}"
        )

    kept = selection.kept(variety)
    eliminated = selection.eliminated
    r = variety.codim

    model = FiniteModel(variety, arc, selection, e, (), (), {})
    names = [model.unknown_name_q(l) for l in range(d)]
    for v in kept:
        names += [model.unknown_name_kept(v, j) for j in range((e + 1) * d)]
    for v in eliminated:
        names += [model.unknown_name_elim(v, j) for j in range(e * d)]

    ring_u = PolyRing(variety.field, names)
    poly_t = UniPolyRing(ring_u)

    q = UniPoly(
        ring_u, [ring_u.var(f"a_{l}") for l in range(d)] + [ring_u.one()]
    )
    substitution = {}
    for v in kept:
        substitution[v] = UniPoly(
            ring_u, [ring_u.var(model.unknown_name_kept(v, j)) for j in range((e + 1) * d)]
        )
    for v in eliminated:
        substitution[v] = UniPoly(
            ring_u, [ring_u.var(model.unknown_name_elim(v, j)) for j in range(e * d)]
        )

    p_vec = [eq.evaluate(substitution, poly_t) for eq in variety.equations]
    b = RingMatrix(
        poly_t,
        [
            [variety.equations[i].partial(v).evaluate(substitution, poly_t) for v in eliminated]
            for i in range(r)
        ],
    )
    det_b = b.det()
    adj_b = b.adjugate()

    equations = []
    # family 1: det B mod q, coefficient slots t^0 .. t^(d-1)
    _, rem = det_b.divmod_monic(q)
    equations += [rem.coeff(l) for l in range(d)]
    # family 2: p mod q^e, slots t^0 .. t^(ed-1) per equation
    q_e = q**e
    for i in range(r):
        _, rem = p_vec[i].divmod_monic(q_e)
        equations += [rem.coeff(l) for l in range(e * d)]
    # family 3: adj(B) p mod q^(e+1), slots t^0 .. t^((e+1)d-1) per equation
    q_e1 = q ** (e + 1)
    adj_p = adj_b.mul_vector(p_vec)
    for i in range(r):
        _, rem = adj_p[i].divmod_monic(q_e1)
        equations += [rem.coeff(l) for l in range((e + 1) * d)]

    base_point = {f"a_{l}": variety.field.zero() for l in range(d)}
    for v in kept:
        comp = arc.component(v)
        for j in range((e + 1) * d):
            base_point[model.unknown_name_kept(v, j)] = comp.coeff(j)
    for v in eliminated:
        comp = arc.component(v)
        for j in range(e * d):
            base_point[model.unknown_name_elim(v, j)] = comp.coeff(j)

    result = FiniteModel(variety, arc, selection, e, names, equations, base_point)
    nu, nq = result.counts()
    if nu != unknown_count(result.n, r, d, e) or nq != equation_count(r, d, e):
        raise MathError("internal count mismatch in model construction")
    if not result.base_satisfied():
        raise MathError(
            "base point fails the model equations; the arc data is inconsistent"
        )
    return result


@dataclass(frozen=True)
class ModelDiagnostics:
    jacobian_rank_at_base: int
    tangent_dim: int
    dim_lower_bound: int | None
    dim_upper_bound: int | None

    def bounds(self):
        return (self.dim_lower_bound, self.dim_upper_bound)


def model_diagnostics(model: FiniteModel) -> ModelDiagnostics:
    """Tangent-space data at the base point plus the closed-form dimension
    bounds (only stated for e = 1; reported as None otherwise)."""
    if model.is_smooth_point:
        return ModelDiagnostics(0, 0, 0, 0)
    field_ = model.field
    values = {u: model.base_point[u] for u in model.unknowns}
    jac = [
        [eq.partial(u).evaluate(values, field_) for u in model.unknowns]
        for eq in model.equations
    ]
    rank = field_matrix_rank(field_, jac) if model.equations else 0
    tangent = len(model.unknowns) - rank
    if model.e == 1:
        n, r, d = model.n, model.r, model.d
        lower = d * (2 * n - 2 * r)
        upper = d * (2 * n + r + 1)
    else:
        lower = upper = None
    return ModelDiagnostics(rank, tangent, lower, upper)


@dataclass(frozen=True)
class MembershipEquivalenceReport:
    """Outcome of checking both readings of the divisibility condition."""

    congruence_form: bool  # p = 0 mod q^e and adj(B) p = 0 mod q^(e+1)
    division_form: bool  # explicit p = q^e B v with v from adjugate data
    agree: bool
    detail: str = ""


def _assignment_series(model: FiniteModel, assignment: dict, ring: TestRing, prec: int):
    """Materialize q, coordinates and the Jacobian data over a test ring."""
    d, e = model.d, model.e

    def val(name) -> TestRingElement:
        try:
            return assignment[name]
        except KeyError:
            raise InputError(f"assignment missing unknown {name!r}")

    q = UniPoly(ring, [val(f"a_{l}") for l in range(d)] + [ring.one()])
    coords = {}
    for v in model.kept:
        coords[v] = UniPoly(
            ring, [val(model.unknown_name_kept(v, j)) for j in range((e + 1) * d)]
        )
    for v in model.eliminated:
        coords[v] = UniPoly(
            ring, [val(model.unknown_name_elim(v, j)) for j in range(e * d)]
        )
    return q, coords


def check_membership_equivalence(
    model: FiniteModel, assignment: dict, ring: TestRing, precision: int
) -> MembershipEquivalenceReport:
    """Evaluate a candidate unknown assignment over a test ring two ways.

    The congruence form asks for p = 0 mod q^e together with
    adj(B) p = 0 mod q^(e+1); the division form attempts to exhibit
    p = q^e B v explicitly, solving for v with the adjugate and a unit
    inversion in A[t]/(q), and verifies the product.  The two verdicts must
    coincide; ``agree`` reports whether they do.
    """
    d, e, r = model.d, model.e, model.r
    poly_a = UniPolyRing(ring)
    q, coords = _assignment_series(model, assignment, ring, precision)
    variety = model.variety

    p_vals = [eq.evaluate(coords, poly_a) for eq in variety.equations]
    b = RingMatrix(
        poly_a,
        [
            [variety.equations[i].partial(v).evaluate(coords, poly_a) for v in model.eliminated]
            for i in range(r)
        ],
    )
    det_b = b.det()
    adj_b = b.adjugate()
    q_e = q**e
    q_e1 = q ** (e + 1)

    # congruence form
    cong = all(p.divmod_monic(q_e)[1].is_zero() for p in p_vals) and all(
        gp.divmod_monic(q_e1)[1].is_zero() for gp in adj_b.mul_vector(p_vals)
    )

    # division form: needs det B = q * (unit); failing preconditions reject
    division = False
    detail = ""
    quot, rem = det_b.divmod_monic(q)
    if not rem.is_zero():
        detail = "det B is not divisible by q"
    elif quot.is_zero() or not quot.coeffs[0].is_unit():
        detail = "det B / q is not a unit"
    else:
        ok = all(p.divmod_monic(q_e)[1].is_zero() for p in p_vals)
        adj_p = adj_b.mul_vector(p_vals)
        ws = []
        if ok:
            for gp in adj_p:
                w, w_rem = gp.divmod_monic(q_e1)
                if not w_rem.is_zero():
                    ok = False
                    detail = "adjugate image is not divisible by q^(e+1)"
                    break
                ws.append(w)
        if ok:
            u_inv = _invert_mod_q(quot, q, ring)
            v = [(u_inv * w).divmod_monic(q)[1] for w in ws]
            recon = [q_e * bv for bv in b.mul_vector(v)]
            division = all(
                (p - rc).divmod_monic(q_e1)[1].is_zero()
                for p, rc in zip(p_vals, recon)
            )
            if not division:
                detail = "explicit division failed to reproduce p"
    return MembershipEquivalenceReport(
        congruence_form=cong,
        division_form=division,
        agree=cong == division,
        detail=detail,
    )


def _invert_mod_q(u: UniPoly, q: UniPoly, ring: TestRing) -> UniPoly:
    """Inverse of a unit of A[t]/(q): geometric series in the nilpotent part.

    A[t]/(q) is itself local with nilpotent maximal ideal (m, t), since
    t^d = -(q - t^d) mod q has coefficients in m.
    """
    u = u.divmod_monic(q)[1]
    c0 = u.coeff(0)
    if not c0.is_unit():
        raise MathError("not a unit in A[t]/(q)")
    inv0 = ring.invert(c0)
    # nu = 1 - u/u0, nilpotent mod q
    one = UniPoly.one(ring)
    nu = (one - u.scale(inv0)).divmod_monic(q)[1]
    acc = one
    power = one
    cap = ring.nilpotency_class * max(q.degree(), 1) * 2 + 2
    for _ in range(cap):
        power = (power * nu).divmod_monic(q)[1]
        if power.is_zero():
            break
        acc = (acc + power).divmod_monic(q)[1]
    else:
        raise MathError("unit inversion mod q did not terminate")
    return acc.scale(inv0).divmod_monic(q)[1]
