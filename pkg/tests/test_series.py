import random

import pytest

from arcmodel.fields import PrimeField, RationalField
from arcmodel.multipoly import PolyRing
from arcmodel.series import (
    NonMonicDivisorError,
    PrecisionInsufficientError,
    TruncSeries,
    UniPoly,
)


def _t_poly(ring, *ints):
    return UniPoly(ring, [ring.from_int(n) for n in ints])


def test_divmod_monic_t_square_by_t(qq):
    f = UniPoly(qq, [qq.zero(), qq.zero(), qq.one()])  # t^2
    q = UniPoly.t_power(qq, 1)
    quo, rem = f.divmod_monic(q)
    assert quo == UniPoly.t_power(qq, 1)
    assert rem.is_zero()


def test_divmod_monic_synthetic_division(qq):
    # t^2 + 1 divided by t - alpha: quotient t + alpha, remainder alpha^2 + 1
    ring = PolyRing(qq, ["alpha"])
    alpha = ring.var("alpha")
    f = UniPoly(ring, [ring.one(), ring.zero(), ring.one()])
    q = UniPoly(ring, [-alpha, ring.one()])
    quo, rem = f.divmod_monic(q)
    assert quo == UniPoly(ring, [alpha, ring.one()])
    assert rem == UniPoly(ring, [alpha * alpha + ring.one()])


def test_divmod_monic_short_dividend(qq):
    # beta*t + beta*x0 by (t - alpha)^2: degree too low, identity remainder
    ring = PolyRing(qq, ["alpha", "beta", "x0"])
    alpha, beta, x0 = (ring.var(v) for v in ("alpha", "beta", "x0"))
    f = UniPoly(ring, [beta * x0, beta])
    q = UniPoly(ring, [-alpha, ring.one()]) ** 2
    quo, rem = f.divmod_monic(q)
    assert quo.is_zero()
    assert rem == f


def test_divmod_requires_monic(qq):
    f = _t_poly(qq, 1, 1)
    q = _t_poly(qq, 1, 2)
    with pytest.raises(NonMonicDivisorError):
        f.divmod_monic(q)


@pytest.mark.parametrize("field", [RationalField(), PrimeField(7)])
def test_divmod_reconstruction_random(field):
    rng = random.Random(17)
    for _ in range(1000):
        deg_q = rng.randrange(1, 4)
        q = UniPoly(
            field,
            [field.from_int(rng.randrange(-4, 5)) for _ in range(deg_q)]
            + [field.one()],
        )
        f = UniPoly(
            field,
            [field.from_int(rng.randrange(-4, 5)) for _ in range(rng.randrange(8))],
        )
        quo, rem = f.divmod_monic(q)
        assert q * quo + rem == f
        assert rem.degree() < q.degree()


def test_exact_div_unipoly(qq):
    ring = PolyRing(qq, ["a"])
    a = ring.var("a")
    f = UniPoly(ring, [a, ring.one()])  # t + a
    g = UniPoly(ring, [ring.one(), a])  # a*t + 1
    prod = f * g
    assert prod.exact_div(f) == g
    assert prod.exact_div(g) == f
    with pytest.raises(ValueError):
        (prod + UniPoly.one(ring)).exact_div(f)


def test_series_precision_is_min_of_operands(qq):
    a = TruncSeries(qq, [qq.one()] * 6, 6)
    b = TruncSeries(qq, [qq.one()] * 4, 4)
    assert (a + b).precision == 4
    assert (a * b).precision == 4
    assert (a - b).precision == 4


def test_series_shift_precision(qq):
    a = TruncSeries(qq, [qq.from_int(n) for n in (1, 2, 3)], 6)
    up = a.shift(2)
    assert up.precision == 6 and up.coeffs[2] == qq.one()
    down = a.shift(-1)
    assert down.precision == 5
    assert down.coeffs[0] == qq.from_int(2)


def test_series_order(qq):
    s = TruncSeries(qq, [qq.zero(), qq.zero(), qq.from_int(3)], 5)
    assert s.order() == 2
    assert TruncSeries.zero(qq, 5).order() is None
    assert TruncSeries.one(qq, 5).order() == 0


def test_series_inversion(f5):
    rng = random.Random(3)
    for _ in range(50):
        coeffs = [f5.from_int(rng.randrange(1, 5))] + [
            f5.from_int(rng.randrange(5)) for _ in range(5)
        ]
        s = TruncSeries(f5, coeffs, 6)
        assert (s * s.invert() - TruncSeries.one(f5, 6)).is_zero()


def test_series_coeff_beyond_precision_raises(qq):
    s = TruncSeries(qq, [qq.one()], 3)
    with pytest.raises(PrecisionInsufficientError):
        s.coeff(3)
    with pytest.raises(PrecisionInsufficientError):
        s.truncate(4)
