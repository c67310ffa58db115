from fractions import Fraction

import pytest
from conftest import entry, split_map

from quadmaps import catalog
from quadmaps import matrix as mx
from quadmaps.errors import NotInClaimedSphere, NotProperBiharmonic, RadiusBelowBound
from quadmaps.quadmap import Verdict, classify, transform
from quadmaps.scalar import SQRT2, SQRT3, Surd
from quadmaps.structure import (
    factorize,
    hypersphere_analysis,
    laplacian_norm_check,
    locate_hypersphere,
    verify_trace_identity,
)


@pytest.mark.parametrize("name", ["hopf", "veronese", "F_lambda(0)", "F_lambda(1/2)"])
def test_trace_identity(name):
    assert verify_trace_identity(entry(name).map) == 0


def test_trace_identity_non_scalar_s():
    assert verify_trace_identity(split_map()) == 0


@pytest.mark.parametrize("name,norm_sq,norm", [
    ("F_lambda(0)", 128, 8 * SQRT2),
    ("lift(hopf)", 32, 4 * SQRT2),
    ("lift(veronese)", 18, 3 * SQRT2),
])
def test_laplacian_norm(name, norm_sq, norm):
    cert = laplacian_norm_check(entry(name).map)
    assert cert.holds
    assert cert.norm_sq == norm_sq == cert.expected
    assert cert.norm == norm


def test_laplacian_norm_needs_proper(hopf):
    with pytest.raises(NotProperBiharmonic):
        laplacian_norm_check(hopf)


def test_locate_hypersphere_f_half(f_half):
    loc = locate_hypersphere(f_half)
    assert loc.affine_offset == -12
    assert loc.radius_sq == Fraction(1, 4)
    assert loc.unit_normal_direction == (-12, 0, 0, 0, 0, -4 * SQRT3)


def test_locate_hypersphere_f0(f0):
    loc = locate_hypersphere(f0)
    assert loc.radius_sq == Fraction(1, 2)
    assert loc.affine_offset == -8
    assert loc.center == (Fraction(1, 2), 0, 0, 0, 0, Fraction(1, 2))


def test_locate_hypersphere_none(hopf):
    assert locate_hypersphere(hopf) is None
    assert locate_hypersphere(split_map()) is None


@pytest.mark.parametrize("name", ["F_lambda(0)", "lift(hopf)", "lift(phi6)", "lift(veronese)"])
def test_factorize(name):
    q = entry(name).map
    fac = factorize(q)
    assert fac.radius_sq == Fraction(1, 2)
    assert fac.last_component_constant == SQRT2 / 2
    assert fac.psi_harmonic
    assert fac.psi.radius_sq == Fraction(1, 2)
    assert fac.psi_energy_density == Fraction(q.m + 1, 2)
    assert mx.is_orthogonal(fac.rotation)
    assert catalog.lift(fac.psi).equals(fac.rotated)
    assert transform(catalog.lift(fac.psi), v=mx.transpose(fac.rotation)).equals(q)


def test_factorize_needs_proper(f_half):
    with pytest.raises(NotProperBiharmonic):
        factorize(f_half)


def test_relift_of_psi_is_proper(f0):
    psi = factorize(f0).psi
    assert classify(catalog.lift(psi)).verdict is Verdict.PROPER_BIHARMONIC


def test_hypersphere_case1():
    report = hypersphere_analysis(entry("lift(hopf)").map, Fraction(1, 2))
    assert report.case == 1
    assert report.psi_harmonic


def _tilted():
    rot = catalog.plane_rotation(5, 3, 4, Fraction(4, 5), Fraction(3, 5))
    return catalog.pad(entry("lift(hopf)").map, 1, rot)


def test_hypersphere_case2():
    q = _tilted()
    report = hypersphere_analysis(q, Fraction(41, 50))
    assert report.case == 2
    assert report.small_sphere_radius_sq == Fraction(1, 2)
    assert report.center == (0, 0, 0, 2 * SQRT2 / 5, 3 * SQRT2 / 10)
    assert report.non_full_witness is not None
    assert report.psi_harmonic
    combo = mx.zeros(q.size, q.size)
    for w, a in zip(report.non_full_witness, q.matrices):
        combo = mx.add(combo, mx.scale(w, a))
    assert all(v == 0 for row in combo for v in row)


def test_hypersphere_wrong_claim():
    with pytest.raises(NotInClaimedSphere):
        hypersphere_analysis(_tilted(), Fraction(1, 4))


def test_hypersphere_radius_below_bound_is_unreachable():
    # no proper biharmonic map has a last component 3/4, so the claim fails first
    q = entry("lift(hopf)").map
    with pytest.raises((NotInClaimedSphere, RadiusBelowBound)):
        hypersphere_analysis(q, Fraction(7, 16))


def test_hypersphere_alignment():
    q = _tilted()
    # sends the constant direction (0, 0, 0, 4/5, 3/5) to e_5
    align = catalog.plane_rotation(5, 3, 4, Fraction(3, 5), Fraction(4, 5))
    report = hypersphere_analysis(q, Fraction(1, 2), alignment=align)
    assert report.case == 1


def test_surd_center_components():
    loc = locate_hypersphere(entry("lift(veronese)").map)
    assert loc.radius_sq == Fraction(1, 2)
    assert all(isinstance(c, Surd) for c in loc.center)
