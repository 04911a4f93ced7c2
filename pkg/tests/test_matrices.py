import random

import pytest

from arcmodel.fields import PrimeField, RationalField
from arcmodel.matrices import NonSquareError, RingMatrix, field_matrix_rank
from arcmodel.multipoly import PolyRing
from arcmodel.series import TruncSeries, SeriesRing
from arcmodel.testrings import TestRing


def _random_matrix(rng, ring, n, coeff_pool):
    return RingMatrix(
        ring, [[coeff_pool(rng) for _ in range(n)] for _ in range(n)]
    )


def test_det_identity_and_1x1(qq):
    ring = PolyRing(qq, ["x"])
    m = RingMatrix(ring, [[ring.var("x")]])
    assert m.det() == ring.var("x")
    eye = RingMatrix.identity(qq, 2)
    assert eye.det() == qq.one()


def test_det_2x2_symbolic(qq):
    ring = PolyRing(qq, ["x", "y"])
    m = RingMatrix(ring, [[ring.var("y"), ring.var("x")], [ring.one(), ring.one()]])
    assert m.det() == ring.parse("y - x")


def test_adjugate_1x1_and_2x2(qq):
    ring = PolyRing(qq, ["a", "b", "c", "d"])
    m1 = RingMatrix(ring, [[ring.parse("a*b + c")]])
    assert m1.adjugate().entries == ((ring.one(),),)
    a, b, c, d = (ring.var(v) for v in "abcd")
    m2 = RingMatrix(ring, [[a, b], [c, d]])
    adj = m2.adjugate()
    assert adj.entries == ((d, -b), (-c, a))


def test_adjugate_multiply_back_f7():
    f7 = PrimeField(7)
    rng = random.Random(5)
    for _ in range(30):
        m = _random_matrix(rng, f7, 3, lambda r: f7.from_int(r.randrange(7)))
        det = m.det()
        prod = m * m.adjugate()
        eye = RingMatrix.identity(f7, 3)
        assert prod == eye.scale(det)


def test_nonsquare_rejected(qq):
    m = RingMatrix(qq, [[qq.one(), qq.zero()]])
    with pytest.raises(NonSquareError):
        m.det()
    with pytest.raises(NonSquareError):
        m.adjugate()


def test_det_multiplicative_random():
    f7 = PrimeField(7)
    rng = random.Random(23)
    for _ in range(100):
        n = rng.randrange(1, 5)
        a = _random_matrix(rng, f7, n, lambda r: f7.from_int(r.randrange(7)))
        b = _random_matrix(rng, f7, n, lambda r: f7.from_int(r.randrange(7)))
        assert (a * b).det() == a.det() * b.det()


def test_bareiss_matches_laplace(qq):
    # 5x5 and 6x6 use fraction-free elimination over an integral domain;
    # compare against the generic-promotion route, which only uses
    # ring additions and multiplications
    rng = random.Random(41)
    from arcmodel.matrices import _det_laplace, _det_promoted

    for n in (5, 6):
        m = _random_matrix(
            rng, qq, n, lambda r: qq.from_fraction(r.randrange(-6, 7), r.randrange(1, 4))
        )
        assert m.det() == _det_promoted(m)


def test_det_over_test_ring_promotion(qq):
    # zero divisors force the promotion path for 5x5
    ring = TestRing(qq, ["e"], 2)
    e = ring.generator("e")
    rng = random.Random(9)

    def pool(r):
        return ring.from_int(r.randrange(-3, 4)) + e * ring.from_int(r.randrange(-3, 4))

    from arcmodel.matrices import _det_laplace

    m = _random_matrix(rng, ring, 5, pool)
    assert m.det() == _det_laplace(m)  # Laplace is valid over any ring
    prod = m * m.adjugate()
    assert prod == RingMatrix.identity(ring, 5).scale(m.det())


def test_det_over_series_ring(qq):
    sring = SeriesRing(qq, 5)
    t = sring.t()
    m = RingMatrix(sring, [[t, sring.one()], [sring.one(), t]])
    expected = t * t - sring.one()
    assert (m.det() - expected).is_zero()


def test_field_matrix_rank(qq):
    rows = [
        [qq.from_int(1), qq.from_int(2)],
        [qq.from_int(2), qq.from_int(4)],
        [qq.from_int(0), qq.from_int(1)],
    ]
    assert field_matrix_rank(qq, rows) == 2
    assert field_matrix_rank(qq, [[qq.zero()]]) == 0
