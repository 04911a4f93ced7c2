"""Weierstrass preparation and division over nilpotent local rings.

For a series f over a test ring A whose coefficient of t^d is the first one
outside the maximal ideal m, preparation produces the unique monic q of
degree d with lower coefficients in m and a unit series u with f = q*u.

The algorithm is the nilpotency induction itself: start from the exact
answer modulo m (where q = t^d on the nose), then repair one m-power layer
per round.  Each round is a single series division by the current unit, so
the whole preparation terminates after at most c - 1 rounds where m^c = 0.

``divmod_distinguished`` is the companion primitive for everything "mod q^j"
over a test ring at finite t-precision: division of a truncated series by a
monic polynomial congruent to a t-power modulo m.  It iterates the fixed
point Q <- shift(v - (P - t^D)Q, D), which stabilizes after c rounds; the
quotient loses c*D coefficients of trusted precision, the remainder is exact
once enough precision is available.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MathError
from .series import PrecisionInsufficientError, TruncSeries, UniPoly


class AllCoefficientsNilpotentError(MathError):
    """Every coefficient in the window lies in m: either the arc sits in the
    singular locus to the available precision, or the precision is too low."""


@dataclass(frozen=True)
class WeierstrassFactorization:
    q: UniPoly
    u: TruncSeries
    d: int

    def reconstruct(self) -> TruncSeries:
        return self.q.to_series(self.u.precision) * self.u


def _unit_index(f: TruncSeries):
    """First coefficient index whose constant coordinate is nonzero."""
    ring = f.ring
    for i, c in enumerate(f.coeffs):
        if _is_ring_unit(ring, c):
            return i
    return None


def _is_ring_unit(ring, c) -> bool:
    if hasattr(c, "is_unit"):
        return c.is_unit()
    return not ring.is_zero(c)  # field coefficient


def weierstrass_prepare(f: TruncSeries) -> WeierstrassFactorization:
    """Factor f = q * u through the precision of f.

    q is monic of degree d with all lower coefficients in m; u is a unit
    series reported at the full input precision.
    """
    ring = f.ring
    n = f.precision
    d = _unit_index(f)
    if d is None:
        raise AllCoefficientsNilpotentError(
            f"no unit coefficient below t^{n}; cannot prepare"
        )
    if n < d + 1:
        raise PrecisionInsufficientError(f"need precision at least {d + 1}")

    layers = getattr(ring, "nilpotency_class", 1)
    q = UniPoly.t_power(ring, d)
    u = f.shift(-d) if d else f
    u = TruncSeries(u.ring, u.coeffs, n)  # pad back to full precision
    for _ in range(layers - 1):
        residual = f - q.to_series(n) * u
        if residual.is_zero():
            break
        g = residual * u.invert()
        delta_q = UniPoly(ring, g.coeffs[:d])
        delta_u = g.shift(-d) if d else g
        delta_u = TruncSeries(ring, delta_u.coeffs, n) * u
        q = q + delta_q
        u = u + delta_u
    else:
        residual = f - q.to_series(n) * u
        if not residual.is_zero():
            raise MathError("preparation failed to close; inconsistent ring data")
    return WeierstrassFactorization(q=q, u=u, d=d)


def _distinguished_degree(p: UniPoly) -> int:
    """Degree check for divisors: monic, lower coefficients all in m."""
    if not p.is_monic():
        from .series import NonMonicDivisorError

        raise NonMonicDivisorError("divisor must be monic")
    d = p.degree()
    for c in p.coeffs[:d]:
        if _is_ring_unit(p.ring, c) and not p.ring.is_zero(c):
            raise MathError(
                "divisor is not congruent to a t-power modulo the maximal ideal"
            )
    return d


def divmod_distinguished(v: TruncSeries, p: UniPoly):
    """Stable (quotient, remainder) of a truncated series by a distinguished
    monic polynomial: v = p * quotient + remainder through the quotient's
    precision, deg(remainder) < deg(p).

    Iterating Q <- shift(v - (p - t^D)*Q, -D) loses D coefficients per round
    and needs one round per nilpotency layer, so the quotient comes back at
    v.precision - c*D and the call raises when the remainder window itself
    would be compromised.
    """
    ring = v.ring
    d = _distinguished_degree(p)
    layers = getattr(ring, "nilpotency_class", 1)
    if d == 0:
        return v, UniPoly.zero(ring)
    out_prec = v.precision - layers * d
    if out_prec < d:
        raise PrecisionInsufficientError(
            f"series precision {v.precision} cannot absorb division by a"
            f" degree-{d} divisor at nilpotency class {layers}"
        )
    lower = UniPoly(ring, p.coeffs[:d])  # p - t^d, coefficients in m
    q_approx = v.shift(-d)
    for _ in range(layers - 1):
        correction = lower.to_series(v.precision) * q_approx
        q_approx = (v - correction).shift(-d)
    remainder_series = v - lower.to_series(v.precision) * q_approx
    rem = UniPoly(ring, remainder_series.coeffs[:d])
    quotient = q_approx.truncate(out_prec)
    return quotient, rem
