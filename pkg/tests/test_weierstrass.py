import random

import pytest

from arcmodel.fields import PrimeField, RationalField
from arcmodel.series import PrecisionInsufficientError, TruncSeries, UniPoly
from arcmodel.testrings import TestRing, TestRingElement
from arcmodel.weierstrass import (
    AllCoefficientsNilpotentError,
    divmod_distinguished,
    weierstrass_prepare,
)


def _series(ring, coeffs, precision):
    return TruncSeries(ring, coeffs, precision)


def test_prepare_over_a_field(qq):
    ring = TestRing(qq, [], 1)
    # t^2 + t^3 -> q = t^2, u = 1 + t
    f = _series(ring, [ring.zero(), ring.zero(), ring.one(), ring.one()], 8)
    w = weierstrass_prepare(f)
    assert w.d == 2
    assert w.q == UniPoly.t_power(ring, 2)
    assert w.u.coeffs[:2] == (ring.one(), ring.one())
    assert (w.reconstruct() - f).is_zero()


def test_prepare_eps_square_example(qq):
    # over Q[e]/(e^2): e + t + e*t + t^2 = (t + e)(1 + t)
    ring = TestRing(qq, ["e"], 2)
    e, one = ring.generator("e"), ring.one()
    f = _series(ring, [e, one + e, one], 8)
    w = weierstrass_prepare(f)
    assert w.d == 1
    assert w.q == UniPoly(ring, [e, one])
    # u agrees with 1 + t through the guaranteed window N - d
    assert w.u.coeffs[:7] == (one, one) + (ring.zero(),) * 5
    assert (w.reconstruct() - f).is_zero()


def test_prepare_eps_plus_t(qq):
    ring = TestRing(qq, ["e"], 2)
    e, one = ring.generator("e"), ring.one()
    f = _series(ring, [e, one], 6)
    w = weierstrass_prepare(f)
    assert w.q == UniPoly(ring, [e, one])
    assert (w.reconstruct() - f).is_zero()


def test_prepare_rejects_all_nilpotent(qq):
    ring = TestRing(qq, ["e"], 2)
    e = ring.generator("e")
    f = _series(ring, [e, e], 6)
    with pytest.raises(AllCoefficientsNilpotentError):
        weierstrass_prepare(f)


def _random_element(rng, ring, unit=None):
    coords = {}
    for mono in ring.standard_monomials:
        coords[mono] = ring.field.from_int(rng.randrange(ring.field.p))
    zero_exp = (0,) * len(ring.generators)
    if unit is True:
        coords[zero_exp] = ring.field.from_int(rng.randrange(1, ring.field.p))
    elif unit is False:
        coords[zero_exp] = ring.field.zero()
    return TestRingElement(ring, coords)


def _random_prepared_input(rng, ring, precision):
    """t^d * unit plus nilpotent noise below and around."""
    d = rng.randrange(0, 3)
    coeffs = [_random_element(rng, ring, unit=False) for _ in range(precision)]
    coeffs[d] = _random_element(rng, ring, unit=True)
    for i in range(d + 1, precision):
        coeffs[i] = _random_element(rng, ring)
    return _series(ring, coeffs, precision), d


def test_randomized_reconstruction_and_uniqueness():
    rng = random.Random(2024)
    count = 0
    for p in (2, 3, 5):
        field = PrimeField(p)
        for c in (1, 2, 3, 4):
            ring = TestRing(field, ["e"] if c > 1 else [], c)
            for _ in range(90):
                f, d = _random_prepared_input(rng, ring, 10)
                w = weierstrass_prepare(f)
                assert w.d == d
                assert (w.reconstruct() - f).is_zero()
                # uniqueness: multiplying by a random unit keeps q
                v_coeffs = [_random_element(rng, ring, unit=True)] + [
                    _random_element(rng, ring) for _ in range(9)
                ]
                v = _series(ring, v_coeffs, 10)
                w2 = weierstrass_prepare(f * v)
                assert w2.q == w.q if (v - TruncSeries.one(ring, 10)).is_zero() else True
                assert w2.d == d
                # preparing twice is stable
                assert weierstrass_prepare(f).q == w.q
                count += 1
    assert count >= 1000


def test_unit_perturbation_preserves_q():
    rng = random.Random(77)
    field = PrimeField(5)
    ring = TestRing(field, ["e"], 3)
    for _ in range(200):
        f, d = _random_prepared_input(rng, ring, 12)
        v_coeffs = [_random_element(rng, ring, unit=True)] + [
            _random_element(rng, ring) for _ in range(11)
        ]
        v = _series(ring, v_coeffs, 12)
        assert weierstrass_prepare(f * v).q == weierstrass_prepare(f).q


def test_degree_stable_under_deformation(qq):
    # the degree is read off modulo the maximal ideal, so any deformation
    # of the same base series has the same d
    rng = random.Random(13)
    field = PrimeField(3)
    ring = TestRing(field, ["e"], 2)
    e = ring.generator("e")
    base = [ring.zero(), ring.zero(), ring.one(), ring.from_int(2)]
    f0 = _series(ring, base, 8)
    d0 = weierstrass_prepare(f0).d
    for _ in range(50):
        noise = [
            e * ring.from_int(rng.randrange(3)) for _ in range(8)
        ]
        f = f0 + _series(ring, noise, 8)
        assert weierstrass_prepare(f).d == d0


def test_divmod_distinguished_roundtrip():
    rng = random.Random(5)
    field = PrimeField(3)
    for c in (1, 2, 3):
        ring = TestRing(field, ["e"] if c > 1 else [], c)
        for _ in range(120):
            d = rng.randrange(1, 3)
            lower = [_random_element(rng, ring, unit=False) for _ in range(d)]
            p = UniPoly(ring, lower + [ring.one()])
            prec = 12
            v_coeffs = [_random_element(rng, ring) for _ in range(prec)]
            v = _series(ring, v_coeffs, prec)
            quo, rem = divmod_distinguished(v, p)
            back = p.to_series(quo.precision) * quo + rem.to_series(quo.precision)
            assert (v.truncate(quo.precision) - back).is_zero()
            assert rem.degree() < d


def test_divmod_distinguished_exact_remainder():
    # built as p*Q + R, the division recovers R exactly
    rng = random.Random(6)
    field = PrimeField(2)
    ring = TestRing(field, ["e"], 2)
    e = ring.generator("e")
    for _ in range(120):
        d = rng.randrange(1, 3)
        p = UniPoly(ring, [e * ring.from_int(rng.randrange(2)) for _ in range(d)] + [ring.one()])
        q_poly = UniPoly(ring, [_random_element(rng, ring) for _ in range(5)])
        r_poly = UniPoly(ring, [_random_element(rng, ring) for _ in range(d)])
        v = (p * q_poly + r_poly).to_series(14)
        quo, rem = divmod_distinguished(v, p)
        assert rem == r_poly
        assert (quo - q_poly.to_series(quo.precision)).is_zero()


def test_divmod_distinguished_precision_guard(qq):
    ring = TestRing(qq, ["e"], 4)
    p = UniPoly(ring, [ring.generator("e"), ring.zero(), ring.one()])
    v = TruncSeries(ring, [ring.one()] * 6, 6)
    with pytest.raises(PrecisionInsufficientError):
        divmod_distinguished(v, p)  # 6 < (4+1)*2
