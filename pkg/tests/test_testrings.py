import pytest

from arcmodel.errors import InputError
from arcmodel.fields import PrimeField
from arcmodel.testrings import NotAUnitError, TestRing, invert_unit, make_test_ring


def test_standard_monomials_single_generator(qq):
    ring = TestRing(qq, ["e"], 3)
    assert ring.standard_monomials == ((0,), (1,), (2,))
    assert ring.nilpotency_class == 3
    assert ring.has_zero_divisors


def test_standard_monomials_with_relations(qq):
    ring = TestRing(qq, ["e1", "e2"], 3, relations=["e1^2", "e1*e2"])
    # remaining basis: 1, e1, e2, e2^2 (ordered by degree, then exponents)
    assert ring.standard_monomials == ((0, 0), (0, 1), (1, 0), (0, 2))
    e1, e2 = ring.generator("e1"), ring.generator("e2")
    assert ring.is_zero(e1 * e1)
    assert ring.is_zero(e1 * e2)
    assert not ring.is_zero(e2 * e2)
    assert ring.nilpotency_class == 3


def test_field_as_trivial_test_ring(f2):
    ring = TestRing(f2, [], 1)
    assert ring.standard_monomials == ((),)
    assert ring.nilpotency_class == 1
    assert not ring.has_zero_divisors
    assert ring.one().is_unit()


def test_multiplication_truncates(qq):
    ring = TestRing(qq, ["e"], 2)
    e = ring.generator("e")
    assert ring.is_zero(e * e)
    a = ring.one() + e
    assert a * a == ring.one() + e + e


def test_invert_unit_examples(qq):
    ring = TestRing(qq, ["e"], 2)
    e = ring.generator("e")
    assert invert_unit(ring.one()) == ring.one()
    assert invert_unit(ring.one() + e) == ring.one() - e


def test_invert_unit_f3_cubed():
    f3 = PrimeField(3)
    ring = TestRing(f3, ["e"], 3)
    a = ring.from_int(2) + ring.generator("e")
    assert a * invert_unit(a) == ring.one()


def test_invert_non_unit_raises(qq):
    ring = TestRing(qq, ["e"], 2)
    with pytest.raises(NotAUnitError):
        invert_unit(ring.generator("e"))


def test_invert_random_multiply_back(f5):
    import random

    rng = random.Random(31)
    ring = TestRing(f5, ["e1", "e2"], 3)
    for _ in range(200):
        coords = {
            mono: f5.from_int(rng.randrange(5)) for mono in ring.standard_monomials
        }
        coords[(0, 0)] = f5.from_int(rng.randrange(1, 5))
        from arcmodel.testrings import TestRingElement

        a = TestRingElement(ring, coords)
        assert a * invert_unit(a) == ring.one()


def test_parse_and_format_elements(qq):
    ring = TestRing(qq, ["e1", "e2"], 3)
    a = ring.parse_element("1 + 2*e1 + e1*e2")
    assert a.constant_coordinate() == qq.one()
    assert ring.parse_element(ring.format_element(a)) == a
    # nonstandard monomials reduce to zero
    assert ring.is_zero(ring.parse_element("e1^3"))


def test_maximal_ideal_enumeration(f2):
    ring = TestRing(f2, ["e"], 2)
    elements = list(ring.iter_maximal_ideal())
    assert len(elements) == 2 == ring.maximal_ideal_size()
    assert all(not a.is_unit() for a in elements)


def test_spec_roundtrip(f2):
    spec = {"generators": ["e1", "e2"], "nilpotency": 3, "relations": ["e1*e2"]}
    ring = make_test_ring(f2, spec)
    again = make_test_ring(f2, ring.spec())
    assert ring == again


def test_bad_specs(qq):
    with pytest.raises(InputError):
        make_test_ring(qq, {"generators": ["e"]})
    with pytest.raises(InputError):
        TestRing(qq, ["e"], 0)
    with pytest.raises(InputError):
        TestRing(qq, ["e", "e"], 2)
