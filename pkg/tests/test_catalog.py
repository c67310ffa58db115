import random
from fractions import Fraction

import pytest
from conftest import entry

from quadmaps import catalog
from quadmaps import matrix as mx
from quadmaps.errors import (
    InexactLambda,
    InnerEnergyNotConstant,
    InnerNotHarmonic,
    LambdaOutOfRange,
    UnknownName,
)
from quadmaps.quadmap import Verdict, classify
from quadmaps.scalar import FLOAT


@pytest.mark.parametrize("name", catalog.names())
def test_expected_verdicts(name):
    e = entry(name)
    assert classify(e.map).verdict is e.expected


@pytest.mark.parametrize("name,dims", [
    ("complex_squaring", (1, 1)),
    ("hopf", (3, 2)),
    ("phi4", (3, 4)),
    ("phi5", (3, 5)),
    ("phi6", (3, 6)),
    ("phi7", (3, 7)),
    ("phi8", (3, 8)),
    ("veronese", (2, 4)),
    ("F_lambda(0)", (7, 5)),
    ("lift(phi7)", (3, 8)),
    ("lift(veronese)", (2, 5)),
])
def test_dimensions(name, dims):
    q = entry(name).map
    assert (q.m, q.n) == dims


def test_aliases():
    assert catalog.get("phi2").name == "hopf"
    assert catalog.get("φ5").name == "phi5"
    assert catalog.get("F_LAMBDA(1/2)").map.name == "F_lambda(1/2)"


def test_unknown_name():
    with pytest.raises(UnknownName) as info:
        catalog.get("phi3")
    assert "phi3" in str(info.value)
    assert isinstance(info.value, KeyError)


def test_quaternion_product_is_orthogonal_multiplication():
    rng = random.Random(1)
    for _ in range(20):
        z = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]
        w = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]
        p = catalog.quaternion_product(z, w)
        assert sum(c * c for c in p) == sum(c * c for c in z) * sum(c * c for c in w)
    i, j = (0, 1, 0, 0), (0, 0, 1, 0)
    assert catalog.quaternion_product(i, j) == (0, 0, 0, 1)
    assert catalog.quaternion_product(j, i) == (0, 0, 0, -1)


def test_f_lambda_exact_arguments():
    assert catalog.f_lambda("1/2").name == "F_lambda(1/2)"
    assert catalog.f_lambda(Fraction(0)).s_scalar == 3
    assert catalog.f_lambda(Fraction(1, 3)).s_scalar == Fraction(7, 3)
    with pytest.raises(InexactLambda):
        catalog.f_lambda(0.5)
    with pytest.raises(InexactLambda):
        catalog.f_lambda(Fraction(1, 5))  # sqrt(8/5) is irrational
    with pytest.raises(LambdaOutOfRange):
        catalog.f_lambda(1)


def test_f_lambda_float():
    q = catalog.f_lambda(0.3, FLOAT)
    assert q.s_scalar == pytest.approx(2.4)
    assert classify(q).verdict is Verdict.NEITHER


def test_lift_requires_harmonic(f_half):
    with pytest.raises(InnerNotHarmonic):
        catalog.lift(f_half)


def test_lift_requires_constant_energy():
    from conftest import split_map
    # split_map is not harmonic either; the harmonic check fires first
    with pytest.raises((InnerNotHarmonic, InnerEnergyNotConstant)):
        catalog.lift(split_map())


def test_lift_structure(hopf):
    lifted = catalog.lift(hopf)
    assert lifted.name == "lift(hopf)"
    assert lifted.s_scalar == 2
    last = mx.scalar_multiple_of_identity(lifted.matrices[-1], lifted.backend)
    assert last * last == Fraction(1, 2)


def test_pad_and_rotation():
    lifted = entry("lift(hopf)").map
    rot = catalog.plane_rotation(5, 3, 4, Fraction(4, 5), Fraction(3, 5))
    padded = catalog.pad(lifted, 1, rot)
    assert padded.n == 4
    assert classify(padded).verdict is Verdict.PROPER_BIHARMONIC


def test_random_orthogonal_is_orthogonal():
    rng = random.Random(5)
    for size in (2, 4, 6, 8):
        q = catalog.random_orthogonal(rng, size, rotations=3)
        assert mx.is_orthogonal(q)


def test_random_instance_keeps_verdict():
    for seed in range(3):
        q = catalog.random_instance(seed, "lift(phi4)")
        assert classify(q).verdict is Verdict.PROPER_BIHARMONIC


def test_random_instance_bad_scramble():
    with pytest.raises(ValueError):
        catalog.random_instance(0, "hopf", scramble="sideways")
