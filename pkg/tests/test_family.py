"""Short intervals, quadratic families, and the discriminant identity."""

import random

import pytest

from fqprimes.family import (
    QuadraticFamily,
    ShortInterval,
    check_admissible,
    enumerate_interval,
    specialize,
    verify_discriminant_identity,
)
from fqprimes.field import Field
from fqprimes.poly import Poly, discriminant

F3 = Field(3)
F5 = Field(5)
F7 = Field(7)


def lit(F, text):
    return Poly.from_literal(F, text)


def make_family(F, f="1", g="0,1", center="0,0,1", m=0):
    return QuadraticFamily(
        lit(F, f), lit(F, g), ShortInterval(lit(F, center), m)
    )


# -- ShortInterval ----------------------------------------------------------------

def test_interval_size_and_membership():
    I = ShortInterval(lit(F3, "0,0,1"), 0)
    members = list(I.members())
    assert I.size == 3 and len(members) == 3
    assert [h.literal() for h in members] == ["0,0,1", "1,0,1", "2,0,1"]
    assert all(h.is_monic and h.degree == 2 for h in members)
    assert list(enumerate_interval(I)) == members


def test_interval_tuples_odometer_order():
    I = ShortInterval(lit(F3, "0,0,1"), 1)
    tuples = list(I.tuples())
    assert len(tuples) == 9
    assert tuples[:4] == [(0, 0), (1, 0), (2, 0), (0, 1)]  # A_0 fastest
    assert len(set(tuples)) == 9


def test_interval_blocks_concatenate():
    I = ShortInterval(lit(F5, "0,0,0,1"), 1)
    whole = list(I.tuples())
    blocked = []
    for b in range(5):
        block = list(I.tuples(block=b))
        assert all(A[-1] == b for A in block)
        blocked.extend(block)
    assert blocked == whole
    with pytest.raises(ValueError):
        list(I.tuples(block=5))


def test_interval_member_construction():
    I = ShortInterval(lit(F5, "0,0,1"), 1)
    h = I.member((3, 2))
    assert h == lit(F5, "3,2,1")
    with pytest.raises(ValueError):
        I.member((1,))


def test_interval_rejections():
    with pytest.raises(ValueError, match="monic"):
        ShortInterval(lit(F3, "0,0,2"), 0)
    with pytest.raises(ValueError, match="exceed"):
        ShortInterval(lit(F3, "0,1"), 1)  # degree 1 center with m = 1
    with pytest.raises(ValueError, match=">= 0"):
        ShortInterval(lit(F3, "0,0,1"), -1)


# -- admissibility ------------------------------------------------------------------

def test_admissible_documented_family_is_clean():
    assert check_admissible(lit(F3, "1"), lit(F3, "0,1"),
                            lit(F3, "0,0,1"), 0) == []


@pytest.mark.parametrize(
    "f, g, center, m, label",
    [
        ("", "0,1", "0,0,1", 0, "f_zero"),
        ("1", "", "0,0,1", 0, "g_zero"),
        ("0,1", "0,0,1", "0,0,1", 0, "not_coprime"),
        ("1", "0,2", "0,0,1", 0, "g_not_monic"),
        ("0,0,1", "0,1", "0,0,1", 0, "deg_order"),
        ("0,1", "0,0,0,1", "0,0,1", 0, "fg_square"),
        ("1", "0,1", "0,1", 1, "p_degree"),
    ],
)
def test_admissibility_labels_trigger(f, g, center, m, label):
    F = F3
    labels = check_admissible(lit(F, f), lit(F, g), lit(F, center), m)
    assert label in labels


def test_admissibility_q_even():
    F2 = Field(2)
    labels = check_admissible(lit(F2, "1"), lit(F2, "0,1"),
                              lit(F2, "0,0,1"), 0)
    assert labels == ["q_even"]


def test_family_constructor_enforces_admissibility():
    with pytest.raises(ValueError, match="not admissible"):
        QuadraticFamily(lit(F3, "0,1"), lit(F3, "0,1"),
                        ShortInterval(lit(F3, "0,0,1"), 0))


# -- specialization ------------------------------------------------------------------

def test_family_degree_and_specializations():
    fam = make_family(F3)
    assert fam.n == 1 + 2 * 2  # deg g + 2 deg center
    specs = list(fam.specializations())
    assert len(specs) == 3
    for A, FA in specs:
        assert FA.degree == fam.n and FA.is_monic
        assert FA == fam.specialize(A)
        assert FA == specialize(fam, A)
        # direct check: f + g * h^2
        h = fam.interval.member(A)
        assert FA == fam.f + fam.g * h * h
    assert fam.f_tilde() == fam.specialize((0,))


def test_family_worked_instance_values():
    """F_a = t^5 + 2a t^3 + a^2 t + 1 over F_3."""
    fam = make_family(F3)
    expected = {
        0: "1,0,0,0,0,1",
        1: "1,1,0,2,0,1",
        2: "1,1,0,1,0,1",  # 2a = 4 = 1, a^2 = 4 = 1 mod 3
    }
    for a, text in expected.items():
        assert fam.specialize((a,)).literal() == text


def test_family_mixed_fields_rejected():
    with pytest.raises(TypeError):
        QuadraticFamily(lit(F3, "1"), lit(F5, "0,1"),
                        ShortInterval(lit(F5, "0,0,1"), 0))


# -- discriminant identity (the 100-random-partials criterion) ------------------------

FAMILY_SHAPES = [
    ("1", "0,1", "0,0,1", 0),
    ("2", "0,1", "0,0,1", 0),
    ("1", "0,1", "0,0,0,1", 1),
    ("1,1", "0,0,1", "0,0,0,1", 2),
    ("1,1", "0,0,1", "0,0,0,0,1", 1),
]


@pytest.mark.parametrize("q", [3, 5, 7])
def test_discriminant_identity_100_random_partials(q):
    F = Field(q)
    rng = random.Random(q)
    for f, g, center, m in FAMILY_SHAPES:
        fam = make_family(F, f, g, center, m)
        assert verify_discriminant_identity(fam, (0,) * m)
        for _ in range(100 // len(FAMILY_SHAPES)):
            partial = tuple(rng.randrange(q) for _ in range(m))
            assert verify_discriminant_identity(fam, partial)


def test_discriminant_identity_wrong_arity_rejected():
    fam = make_family(F3, center="0,0,0,1", m=1)
    with pytest.raises(ValueError, match="1 fixed"):
        verify_discriminant_identity(fam, (0, 0))


def test_discriminant_identity_against_direct_discriminant():
    """The identity's -4fg equals the actual quadratic discriminant in a_0.

    Specializing everything but a_0, F(a_0) = g a_0^2 + B a_0 + C is a genuine
    quadratic in a_0, so B^2 - 4gC evaluated by polynomial arithmetic must
    agree with the classical b^2 - 4ac shape computed from three sample
    evaluations; cross-check via exact interpolation at a_0 in {0, 1, 2}.
    """
    F = F5
    fam = make_family(F, "1,1", "0,0,1", "0,0,0,0,1", 1)
    partial = (3,)
    # collect F(a_0) for a_0 = 0, 1, 2 and solve for the quadratic coefficients
    values = [fam.specialize((a0,) + partial) for a0 in (0, 1, 2)]
    two_inv = F.inv(2)
    # c = F(0); a = (F(1) + F(-1) - 2F(0))/2 ... use 0,1,2 instead:
    c = values[0]
    # F(1) = a + b + c ; F(2) = 4a + 2b + c
    a = (values[2] - values[1].scaled(2) + c).scaled(two_inv)
    b = values[1] - a - c
    assert a == fam.g  # leading quadratic coefficient is g
    disc_direct = b * b - Poly.constant(F, F.scalar(4)) * a * c
    minus4fg = -(Poly.constant(F, F.scalar(4)) * fam.f * fam.g)
    assert disc_direct == minus4fg
    assert verify_discriminant_identity(fam, partial)
