from fractions import Fraction

import pytest
from conftest import entry, split_map

from quadmaps import matrix as mx
from quadmaps import quadmap as qm
from quadmaps.catalog import plane_rotation, random_instance
from quadmaps.errors import (
    ConditionViolated,
    ConstantMap,
    DimensionMismatch,
    NotOrthogonal,
    NotSpherical,
    NotSymmetric,
    PathDisagreement,
    QuadMapError,
)
from quadmaps.poly import HomoPoly
from quadmaps.quadmap import (
    QuadraticSphericalMap,
    Verdict,
    check_spherical_gray_toth,
    check_spherical_polynomial,
    classify,
    energy_density,
    diagonal_sextic_residuals,
    s_diagonal_residuals,
    symmetrize,
    tension_field,
    transform,
)
from quadmaps.scalar import FLOAT, SQRT2, Surd

SQUARING = [[[1, 0], [0, -1]], [[0, 1], [1, 0]]]


def test_complex_squaring_values():
    q = QuadraticSphericalMap(SQUARING)
    assert (q.m, q.n, q.size) == (1, 1, 2)
    assert q.s == ((2, 0), (0, 2))
    assert q.laplacian == (0, 0)
    assert q.components.evaluate([3, 4]) == (-7, 24)


def test_not_spherical_names_monomial():
    with pytest.raises(NotSpherical) as info:
        QuadraticSphericalMap([[[1, 0], [0, 0]], [[0, 0], [0, 1]]])
    assert info.value.monomial == (2, 2)
    assert info.value.coefficient == -2


def test_not_symmetric():
    with pytest.raises(NotSymmetric):
        QuadraticSphericalMap([[[1, 0], [0, -1]], [[0, 2], [0, 0]]])
    q = symmetrize([[[1, 0], [0, -1]], [[0, 2], [0, 0]]])
    assert q.matrices[1] == ((0, 1), (1, 0))


def test_constant_map_rejected():
    with pytest.raises(ConstantMap):
        QuadraticSphericalMap([[[1, 0], [0, 1]]])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        QuadraticSphericalMap([[[1, 0], [0, 1]], [[1]]])
    with pytest.raises(DimensionMismatch):
        QuadraticSphericalMap([])


def test_polynomial_certificate_on_radius():
    h = SQRT2 / 2
    mats = [[[h, 0], [0, -h]], [[0, h], [h, 0]]]
    assert not check_spherical_polynomial(mats)
    assert check_spherical_polynomial(mats, radius_sq=Fraction(1, 2))


def test_energy_density_scalar(hopf):
    e = energy_density(hopf)
    assert e.is_constant and e.constant == 4
    assert e.poly.degree == 2
    assert e.poly == HomoPoly.norm_sq(4).scale(4)


def test_energy_density_nonconstant():
    q = split_map()
    e = energy_density(q)
    assert not e.is_constant
    assert e.poly([1, 0, 0]) == 2
    assert e.poly([0, 1, 0]) == 1


@pytest.mark.parametrize("name,verdict,energy", [
    ("complex_squaring", Verdict.HARMONIC, 2),
    ("hopf", Verdict.HARMONIC, 4),
    ("phi5", Verdict.HARMONIC, 4),
    ("veronese", Verdict.HARMONIC, 3),
    ("F_lambda(0)", Verdict.PROPER_BIHARMONIC, 4),
    ("F_lambda(1/2)", Verdict.NEITHER, 2),
    ("lift(hopf)", Verdict.PROPER_BIHARMONIC, 2),
])
def test_classify_known(name, verdict, energy):
    c = classify(entry(name).map)
    assert c.verdict is verdict
    assert c.energy_density == energy
    assert c.certified


def test_classify_split_map_is_neither():
    c = classify(split_map())
    assert c.verdict is Verdict.NEITHER
    assert not c.s_is_scalar
    assert c.energy_density is None


def test_paths_separately(f0):
    assert classify(f0, "criterion").verdict is Verdict.PROPER_BIHARMONIC
    assert classify(f0, "direct").verdict is Verdict.PROPER_BIHARMONIC


def test_path_disagreement(monkeypatch, f0):
    bogus = qm.tension_field(f0)
    monkeypatch.setattr(qm, "homogenized_bitension", lambda qmap: bogus)
    with pytest.raises(PathDisagreement):
        classify(f0)


def test_classify_requires_unit_sphere():
    h = SQRT2 / 2
    q = QuadraticSphericalMap([[[h, 0], [0, -h]], [[0, h], [h, 0]]], radius_sq=Fraction(1, 2))
    with pytest.raises(QuadMapError):
        classify(q)


def test_float_backend_is_not_certified(f_half):
    c = classify(f_half.to_float())
    assert c.verdict is Verdict.NEITHER
    assert not c.certified
    assert any("non-certified" in line for line in c.evidence)
    assert c.energy_density == pytest.approx(2.0)


def test_tension_vanishes_for_harmonic(hopf):
    assert tension_field(hopf).is_zero()
    assert tension_field(hopf).degree == 4


def test_tension_is_tangent(f_half):
    # <tau, F> = 0 on the sphere, checked at rational points of S^7
    tau = tension_field(f_half)
    for x in ([1, 0, 0, 0, 0, 0, 0, 0], [Fraction(3, 5), 0, Fraction(4, 5), 0, 0, 0, 0, 0]):
        f = f_half.components.evaluate(x)
        t = tau.evaluate(x)
        assert sum((a * b for a, b in zip(f, t)), Surd(0)) == 0


def test_bitension_closed_form(f_half):
    result = qm.bitension_field(f_half)
    assert result.alpha == 2
    # alpha = 2, m = 7: (-8(2 - 3), 32(2 - 3)(2 - 5))
    assert (result.lap_coeff, result.phi_coeff) == (8, 96)


def test_transform_preserves_verdict(f0):
    rot = plane_rotation(8, 0, 5, Fraction(3, 5), Fraction(4, 5))
    v = plane_rotation(6, 1, 5, Fraction(5, 13), Fraction(12, 13))
    moved = transform(f0, u=rot, v=v)
    assert classify(moved).verdict is Verdict.PROPER_BIHARMONIC
    assert not moved.equals(f0)


def test_transform_rejects_non_orthogonal(hopf):
    with pytest.raises(NotOrthogonal):
        transform(hopf, u=[[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def test_transform_b_breaking_sphericity(hopf):
    with pytest.raises(NotSpherical):
        transform(hopf, b=[[2, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_random_instance_deterministic():
    a = random_instance(3, "F_lambda(1/2)")
    b = random_instance(3, "F_lambda(1/2)")
    assert a.equals(b)
    assert a.name == "random(3,F_lambda(1/2),both)"


def test_gray_toth_accepts_catalog(hopf, f0):
    assert check_spherical_gray_toth(hopf).ok
    data = qm.gray_toth_vectors(f0)
    assert all(mx.dot(a, a) == 1 for a in data.a)


def test_gray_toth_reports_relation():
    data = check_spherical_gray_toth([[[1, 0], [0, 0]], [[0, 0], [0, 1]]])
    assert not data.ok
    assert {v.relation for v in data.violations} == {3}


def test_gray_toth_vectors_raise():
    q = QuadraticSphericalMap([[[1, 0], [0, 0]], [[0, 0], [0, 1]]], validate=False)
    with pytest.raises(ConditionViolated) as info:
        qm.gray_toth_vectors(q)
    assert info.value.relation == 3


def test_s_diagonal_from_coefficient_vectors(f_half):
    assert all(r == 0 for r in s_diagonal_residuals(f_half))
    assert all(r == 0 for r in s_diagonal_residuals(split_map()))


def test_diagonal_sextic_on_split_map():
    rows = diagonal_sextic_residuals(split_map())
    assert rows and all(got == want for _, _, got, want in rows)


def test_float_map_roundtrip_values(hopf):
    fl = hopf.to_float()
    assert fl.backend is FLOAT
    assert classify(fl).verdict is Verdict.HARMONIC
