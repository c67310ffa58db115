"""Quadratic maps between spheres and the quantities attached to them.

A map is given by symmetric matrices ``A_1, ..., A_{n+1}`` of order ``m+1``
with ``F(x) = (x^t A_1 x, ..., x^t A_{n+1} x)`` and ``|F(x)|^2 = |x|^4``.
All identities that only hold on the unit sphere are multiplied through by
powers of ``|x|^2`` so they become polynomial identities on ``R^{m+1}``;
checking them then reduces to checking coefficients.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from typing import Sequence

from . import matrix as mx
from .errors import (
    ConditionViolated,
    ConstantMap,
    DimensionMismatch,
    NotSpherical,
    NotSymmetric,
    PathDisagreement,
    QuadMapError,
)
from .poly import HomoPoly, HomoPolyVec, quad_from_matrix
from .scalar import EXACT, Backend

__all__ = [
    "QuadraticSphericalMap",
    "Verdict",
    "Classification",
    "SphericityCertificate",
    "GrayTothData",
    "GrayTothViolation",
    "EnergyDensity",
    "BitensionResult",
    "symmetrize",
    "check_spherical_polynomial",
    "check_spherical_gray_toth",
    "gray_toth_vectors",
    "s_matrix",
    "laplacian_f",
    "energy_density",
    "tension_field",
    "bitension_field",
    "homogenized_bitension",
    "classify",
    "transform",
    "diagonal_sextic_residuals",
    "s_diagonal_residuals",
    "s_eigenvalues",
]


@dataclass(frozen=True)
class SphericityCertificate:
    """Outcome of expanding ``|F|^2 - r^2 |x|^4``.

    ``remainder`` is the degree-4 difference; it is zero exactly when the map
    is spherical.  ``monomial``/``coefficient`` name its first surviving term.
    """

    spherical: bool
    remainder: HomoPoly
    monomial: tuple | None = None
    coefficient: object = None

    def __bool__(self):
        return self.spherical


def _sphericity_remainder(matrices, radius_sq, backend: Backend) -> HomoPoly:
    size = len(matrices[0])
    total = HomoPoly.zero(size, 4)
    for a in matrices:
        q = quad_from_matrix(a, backend)
        total = total + q * q
    norm = HomoPoly.norm_sq(size, backend.one())
    return total - (norm * norm).scale(backend.coerce(radius_sq))


def check_spherical_polynomial(map_or_matrices, radius_sq=1, backend: Backend | None = None
                               ) -> SphericityCertificate:
    """Certify ``sum_i (x^t A_i x)^2 == r^2 |x|^4`` as a polynomial identity."""
    if isinstance(map_or_matrices, QuadraticSphericalMap):
        matrices = map_or_matrices.matrices
        backend = backend or map_or_matrices.backend
        radius_sq = map_or_matrices.radius_sq
    else:
        backend = backend or EXACT
        matrices = tuple(mx.as_matrix(a, backend) for a in map_or_matrices)
    rem = _sphericity_remainder(matrices, radius_sq, backend)
    for mono, coeff in rem.items():
        if not backend.is_zero(coeff):
            return SphericityCertificate(False, rem, mono, coeff)
    return SphericityCertificate(True, rem)


class QuadraticSphericalMap:
    """A validated quadratic map ``S^m -> S^n(r)`` (``r = 1`` unless stated).

    Construction checks symmetry, sphericity and non-constancy; instances are
    immutable afterwards.  Derived quantities are cached on first access.
    """

    def __init__(self, matrices: Sequence[Sequence[Sequence]], backend: Backend = EXACT, *,
                 radius_sq=1, name: str | None = None, validate: bool = True):
        if not matrices:
            raise DimensionMismatch("a quadratic map needs at least one matrix")
        mats = tuple(mx.as_matrix(a, backend) for a in matrices)
        size = len(mats[0])
        for a in mats:
            if len(a) != size or any(len(row) != size for row in a):
                raise DimensionMismatch("all matrices must be square of one common order")
        self._matrices = mats
        self.backend = backend
        self.radius_sq = backend.coerce(radius_sq)
        self.name = name
        if validate:
            self._validate()

    def _validate(self) -> None:
        for idx, a in enumerate(self._matrices):
            if not mx.is_symmetric(a, self.backend):
                raise NotSymmetric(f"matrix A_{idx + 1} is not symmetric; use symmetrize()")
        cert = check_spherical_polynomial(self)
        if not cert:
            raise NotSpherical(
                f"|F|^2 - {self.radius_sq}|x|^4 has nonzero coefficient {cert.coefficient} "
                f"at monomial {format_monomial(cert.monomial)}",
                remainder=cert.remainder, monomial=cert.monomial, coefficient=cert.coefficient)
        if all(mx.scalar_multiple_of_identity(a, self.backend) is not None for a in self._matrices):
            raise ConstantMap("every A_i is a multiple of the identity, so the map is constant")
        if __debug__:
            # 8 tr S + |lap F|^2 = 4(m+1)(m+3) r^2 holds for every spherical map
            lap = self.laplacian
            residual = (8 * mx.trace(self.s) + mx.dot(lap, lap)
                        - 4 * (self.m + 1) * (self.m + 3) * self.radius_sq)
            assert self.backend.is_zero(residual), f"trace identity residual {residual}"

    # shape ------------------------------------------------------------

    @property
    def matrices(self) -> tuple:
        return self._matrices

    @property
    def m(self) -> int:
        return len(self._matrices[0]) - 1

    @property
    def n(self) -> int:
        return len(self._matrices) - 1

    @property
    def size(self) -> int:
        return len(self._matrices[0])

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<QuadraticSphericalMap{label} S^{self.m} -> S^{self.n}, {self.backend.name}>"

    def __eq__(self, other):
        if not isinstance(other, QuadraticSphericalMap):
            return NotImplemented
        return (self.backend == other.backend and self.radius_sq == other.radius_sq
                and self._matrices == other._matrices)

    __hash__ = None

    def equals(self, other: QuadraticSphericalMap) -> bool:
        """Backend-aware equality (tolerant in float mode)."""
        return (self.m, self.n) == (other.m, other.n) and all(
            mx.matrices_equal(a, b, self.backend) for a, b in zip(self.matrices, other.matrices))

    # cached derived data ----------------------------------------------

    @cached_property
    def components(self) -> HomoPolyVec:
        return HomoPolyVec(quad_from_matrix(a, self.backend) for a in self._matrices)

    @cached_property
    def s(self) -> mx.Matrix:
        total = mx.matmul(self._matrices[0], self._matrices[0])
        for a in self._matrices[1:]:
            total = mx.add(total, mx.matmul(a, a))
        return total

    @cached_property
    def traces(self) -> tuple:
        return tuple(mx.trace(a) for a in self._matrices)

    @cached_property
    def laplacian(self) -> tuple:
        return tuple(-2 * t for t in self.traces)

    @cached_property
    def s_scalar(self):
        """alpha when S = alpha * I, otherwise None."""
        return mx.scalar_multiple_of_identity(self.s, self.backend)

    def is_harmonic_criterion(self) -> bool:
        return all(self.backend.is_zero(v) for v in self.laplacian)

    def to_float(self, tol: float | None = None) -> QuadraticSphericalMap:
        from .scalar import FLOAT
        backend = FLOAT if tol is None else Backend(exact=False, tol=tol)
        return QuadraticSphericalMap(
            [[[float(v) for v in row] for row in a] for a in self._matrices], backend,
            radius_sq=float(self.radius_sq), name=self.name)


def format_monomial(mono) -> str:
    if mono is None:
        return "-"
    parts = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(mono) if e]
    return "*".join(parts) if parts else "1"


def symmetrize(raw_matrices, backend: Backend = EXACT, *, radius_sq=1, name=None
               ) -> QuadraticSphericalMap:
    """Replace each A_i by (A_i + A_i^t)/2 and validate the result."""
    mats = [mx.symmetrize(mx.as_matrix(a, backend)) for a in raw_matrices]
    return QuadraticSphericalMap(mats, backend, radius_sq=radius_sq, name=name)


# Gray-Toth coefficient vectors ---------------------------------------


@dataclass(frozen=True)
class GrayTothViolation:
    relation: int
    indices: tuple
    residual: object


@dataclass(frozen=True)
class GrayTothData:
    """Diagonal vectors a_i and off-diagonal vectors a_ij (i < j).

    ``F(x) = sum a_i (x^i)^2 + sum_{i<j} a_ij x^i x^j``; ``violations`` lists
    every failed sphericity relation, empty for spherical maps.
    """

    a: tuple
    a_off: dict
    violations: tuple = ()

    def off(self, i: int, j: int):
        return self.a_off[(i, j) if i < j else (j, i)]

    @property
    def ok(self) -> bool:
        return not self.violations


def _gray_toth_raw(matrices) -> tuple[tuple, dict]:
    size = len(matrices[0])
    a = tuple(tuple(mat[i][i] for mat in matrices) for i in range(size))
    a_off = {(i, j): tuple(2 * mat[i][j] for mat in matrices)
             for i in range(size) for j in range(i + 1, size)}
    return a, a_off


def _gray_toth_violations(a, a_off, backend: Backend, radius_sq=1) -> list[GrayTothViolation]:
    size = len(a)
    dot = mx.dot

    def off(i, j):
        return a_off[(i, j) if i < j else (j, i)]

    out = []

    def expect(value, target, relation, idx):
        if not backend.eq(value, target):
            out.append(GrayTothViolation(relation, idx, value - target))

    r2 = backend.coerce(radius_sq)
    for i in range(size):
        expect(dot(a[i], a[i]), r2, 1, (i,))
    for i, j in permutations(range(size), 2):
        expect(dot(a[i], off(i, j)), 0, 2, (i, j))
    for i, j in combinations(range(size), 2):
        expect(dot(off(i, j), off(i, j)) + 2 * dot(a[i], a[j]), 2 * r2, 3, (i, j))
    for i in range(size):
        for j, k in combinations([t for t in range(size) if t != i], 2):
            expect(dot(a[i], off(j, k)) + dot(off(i, j), off(i, k)), 0, 4, (i, j, k))
    for i, j, k, l in combinations(range(size), 4):
        value = dot(off(i, j), off(k, l)) + dot(off(i, k), off(j, l)) + dot(off(i, l), off(j, k))
        expect(value, 0, 5, (i, j, k, l))
    return out


def check_spherical_gray_toth(map_or_matrices, backend: Backend | None = None) -> GrayTothData:
    """Evaluate the five inner-product relations; never raises on failure."""
    radius_sq = 1
    if isinstance(map_or_matrices, QuadraticSphericalMap):
        matrices = map_or_matrices.matrices
        backend = backend or map_or_matrices.backend
        radius_sq = map_or_matrices.radius_sq
    else:
        backend = backend or EXACT
        matrices = tuple(mx.as_matrix(a, backend) for a in map_or_matrices)
    for idx, mat in enumerate(matrices):
        if not mx.is_symmetric(mat, backend):
            raise NotSymmetric(f"matrix A_{idx + 1} is not symmetric")
    a, a_off = _gray_toth_raw(matrices)
    return GrayTothData(a, a_off, tuple(_gray_toth_violations(a, a_off, backend, radius_sq)))


def gray_toth_vectors(qmap: QuadraticSphericalMap) -> GrayTothData:
    """Coefficient vectors of a validated map; a failed relation is an internal error."""
    data = check_spherical_gray_toth(qmap)
    if data.violations:
        bad = data.violations[0]
        raise ConditionViolated(
            f"relation {bad.relation} fails at indices {bad.indices} (residual {bad.residual})",
            relation=bad.relation, indices=bad.indices)
    return data


# differential quantities ----------------------------------------------


def s_matrix(qmap: QuadraticSphericalMap) -> mx.Matrix:
    return qmap.s


def laplacian_f(qmap: QuadraticSphericalMap) -> tuple:
    """Euclidean Laplacian (geometer's sign) of F: -2 (tr A_1, ..., tr A_{n+1})."""
    return qmap.laplacian


def s_eigenvalues(qmap: QuadraticSphericalMap):
    return mx.float_eigenvalues(qmap.s)


@dataclass(frozen=True)
class EnergyDensity:
    """``poly`` restricts on S^m to e = |d phi|^2 / 2; ``constant`` is set iff S is scalar."""

    poly: HomoPoly
    constant: object = None

    @property
    def is_constant(self) -> bool:
        return self.constant is not None


def energy_density(qmap: QuadraticSphericalMap) -> EnergyDensity:
    b = qmap.backend
    q = quad_from_matrix(qmap.s, b)
    norm = HomoPoly.norm_sq(qmap.size, b.one())
    poly = q.scale(b.coerce(2)) - norm.scale(b.coerce(2))
    alpha = qmap.s_scalar
    return EnergyDensity(poly, None if alpha is None else 2 * (alpha - 1))


def _norm(qmap):
    return HomoPoly.norm_sq(qmap.size, qmap.backend.one())


def tension_field(qmap: QuadraticSphericalMap) -> HomoPolyVec:
    """Degree-4 representative of the tension field.

    ``-|x|^4 lap(F) + (4 x^t S x - 2(m+3)|x|^2) F(x)``, equal to the tension on S^m.
    """
    b = qmap.backend
    m = qmap.m
    norm = _norm(qmap)
    norm2 = norm * norm
    weight = quad_from_matrix(qmap.s, b).scale(b.coerce(4)) - norm.scale(b.coerce(2 * (m + 3)))
    comps = []
    for lap, f in zip(qmap.laplacian, qmap.components):
        comps.append(norm2.scale(-lap) + weight * f)
    return HomoPolyVec(comps)


def homogenized_bitension(qmap: QuadraticSphericalMap) -> HomoPolyVec:
    """Degree-6 polynomial vector whose restriction to S^m is the bitension field.

    Component i:
    ``-4|x|^4((m+5)|x|^2 - 4Q) tr A_i + 4((m+3)(m+5)|x|^4 - 6(m+5)|x|^2 Q + 8Q^2) F_i
    + 32|x|^4 x^t A_i S x`` with ``Q = x^t S x``.
    """
    b = qmap.backend
    m = qmap.m
    c = b.coerce
    norm = _norm(qmap)
    norm2 = norm * norm
    q = quad_from_matrix(qmap.s, b)
    p1 = norm2 * (norm.scale(c(m + 5)) - q.scale(c(4)))
    p2 = (norm2.scale(c((m + 3) * (m + 5))) - (norm * q).scale(c(6 * (m + 5)))
          + (q * q).scale(c(8)))
    comps = []
    for a, tr, f in zip(qmap.matrices, qmap.traces, qmap.components):
        g = quad_from_matrix(mx.symmetrize(mx.matmul(a, qmap.s)), b)
        comp = p1.scale(-4 * tr) + (p2 * f).scale(c(4)) + (norm2 * g).scale(c(32))
        comps.append(comp)
    return HomoPolyVec(comps)


@dataclass(frozen=True)
class BitensionResult:
    """The degree-6 representative, plus closed-form data when S = alpha I.

    With scalar S the bitension is ``lap_coeff * lap(F) + phi_coeff * Phi``.
    """

    homogenized: HomoPolyVec
    alpha: object = None
    lap_coeff: object = None
    phi_coeff: object = None

    @property
    def has_closed_form(self) -> bool:
        return self.alpha is not None

    def closed_form_at(self, laplacian, phi_value) -> tuple:
        return tuple(self.lap_coeff * lap + self.phi_coeff * y
                     for lap, y in zip(laplacian, phi_value))


def closed_form_coefficients(alpha, m: int):
    shift5 = alpha - Fraction(m + 5, 4)
    shift3 = alpha - Fraction(m + 3, 2)
    return -8 * shift5, 32 * shift5 * shift3


def bitension_field(qmap: QuadraticSphericalMap) -> BitensionResult:
    hom = homogenized_bitension(qmap)
    alpha = qmap.s_scalar
    if alpha is None:
        return BitensionResult(hom)
    if not qmap.backend.exact:
        alpha = float(alpha)
        lap_c = -8 * (alpha - (m5 := (qmap.m + 5) / 4))
        phi_c = 32 * (alpha - m5) * (alpha - (qmap.m + 3) / 2)
        return BitensionResult(hom, alpha, lap_c, phi_c)
    lap_c, phi_c = closed_form_coefficients(alpha, qmap.m)
    return BitensionResult(hom, alpha, lap_c, phi_c)


# classification ------------------------------------------------------


class Verdict(enum.Enum):
    HARMONIC = "Harmonic"
    PROPER_BIHARMONIC = "ProperBiharmonic"
    NEITHER = "Neither"

    def __str__(self):
        return self.value


class Path(enum.Enum):
    CRITERION = "criterion"
    DIRECT = "direct"
    BOTH = "both"


@dataclass
class Classification:
    verdict: Verdict
    energy_density: object
    s_scalar: object
    laplacian: tuple
    certified: bool
    path: Path
    evidence: list = field(default_factory=list)

    @property
    def s_is_scalar(self) -> bool:
        return self.s_scalar is not None


def _criterion_verdict(qmap: QuadraticSphericalMap, evidence: list) -> Verdict:
    b = qmap.backend
    if qmap.is_harmonic_criterion():
        evidence.append("criterion: lap(F) = 0")
        return Verdict.HARMONIC
    target = Fraction(qmap.m + 5, 4)
    alpha = qmap.s_scalar
    if alpha is not None and b.eq(alpha, b.coerce(target)):
        evidence.append(f"criterion: lap(F) != 0 and S = ((m+5)/4) I = {target} I")
        return Verdict.PROPER_BIHARMONIC
    if alpha is None:
        evidence.append("criterion: lap(F) != 0 and S is not scalar")
    else:
        evidence.append(f"criterion: lap(F) != 0 and S = {alpha} I != ((m+5)/4) I")
    return Verdict.NEITHER


def _direct_verdict(qmap: QuadraticSphericalMap, evidence: list) -> Verdict:
    b = qmap.backend
    tau = tension_field(qmap)
    if tau.is_zero(b):
        evidence.append("direct: degree-4 tension polynomial vanishes identically")
        return Verdict.HARMONIC
    hit = tau.first_nonzero(b)
    evidence.append(f"direct: tension component {hit[0] + 1} has coefficient {hit[2]} "
                    f"at {format_monomial(hit[1])}")
    tau2 = homogenized_bitension(qmap)
    if tau2.is_zero(b):
        evidence.append("direct: degree-6 bitension polynomial vanishes identically")
        return Verdict.PROPER_BIHARMONIC
    hit = tau2.first_nonzero(b)
    evidence.append(f"direct: bitension component {hit[0] + 1} has coefficient {hit[2]} "
                    f"at {format_monomial(hit[1])}")
    return Verdict.NEITHER


def classify(qmap: QuadraticSphericalMap, path: Path | str = Path.BOTH) -> Classification:
    """Harmonic / ProperBiharmonic / Neither via the trace-and-S criterion,
    the polynomial identities, or both (which must agree)."""
    path = Path(path)
    if qmap.radius_sq != 1:
        raise QuadMapError("classification is defined for maps into the unit sphere")
    evidence: list[str] = []
    verdicts = {}
    if path in (Path.CRITERION, Path.BOTH):
        verdicts[Path.CRITERION] = _criterion_verdict(qmap, evidence)
    if path in (Path.DIRECT, Path.BOTH):
        verdicts[Path.DIRECT] = _direct_verdict(qmap, evidence)
    values = set(verdicts.values())
    if len(values) > 1:
        raise PathDisagreement(
            f"criterion path says {verdicts[Path.CRITERION]}, direct path says "
            f"{verdicts[Path.DIRECT]} for {qmap!r}")
    verdict = values.pop()
    energy = energy_density(qmap).constant
    if not qmap.backend.exact:
        evidence.append("float backend: verdict is non-certified")
    return Classification(verdict, energy, qmap.s_scalar, qmap.laplacian,
                          qmap.backend.exact, path, evidence)


# isometries ----------------------------------------------------------


def transform(qmap: QuadraticSphericalMap, u=None, v=None, b=None) -> QuadraticSphericalMap:
    """The map ``x -> V B F(U x)``; U and V orthogonal, B symmetric positive definite.

    Sphericity of the result is re-certified, so a B that breaks it raises
    :class:`NotSpherical`.
    """
    be = qmap.backend
    size, count = qmap.size, qmap.n + 1
    u = mx.identity(size, be) if u is None else mx.as_matrix(u, be)
    v = mx.identity(count, be) if v is None else mx.as_matrix(v, be)
    if len(u) != size:
        raise DimensionMismatch(f"U must be {size}x{size}")
    if len(v) != count:
        raise DimensionMismatch(f"V must be {count}x{count}")
    mx.require_orthogonal(u, be, "U")
    mx.require_orthogonal(v, be, "V")
    mix = v
    if b is not None:
        b = mx.as_matrix(b, be)
        if len(b) != count or not mx.is_symmetric(b, be):
            raise NotSymmetric("B must be a symmetric matrix of the codomain dimension")
        if mx.float_eigenvalues(b)[0] <= 0:
            raise QuadMapError("B must be positive definite")
        mix = mx.matmul(v, b)
    ut = mx.transpose(u)
    conj = [mx.matmul(ut, mx.matmul(a, u)) for a in qmap.matrices]
    new = []
    for k in range(count):
        acc = mx.zeros(size, size, be)
        for l in range(count):
            if mix[k][l]:
                acc = mx.add(acc, mx.scale(mix[k][l], conj[l]))
        new.append(acc)
    return QuadraticSphericalMap(new, be, radius_sq=qmap.radius_sq, name=qmap.name)


# cross-checks ---------------------------------------------------------


def s_diagonal_residuals(qmap: QuadraticSphericalMap) -> list:
    """S_kk - (|a_k|^2 + 1/4 sum_{i != k} |a_ik|^2) for every k (all zero)."""
    data = check_spherical_gray_toth(qmap)
    out = []
    for k in range(qmap.size):
        value = mx.dot(data.a[k], data.a[k])
        for i in range(qmap.size):
            if i != k:
                off = data.off(i, k)
                value = value + mx.dot(off, off) / 4
        out.append(qmap.s[k][k] - value)
    return out


def diagonal_sextic_residuals(qmap: QuadraticSphericalMap, bitension: HomoPolyVec | None = None) -> list:
    """Compare the (x^k)^6 coefficients of the degree-6 bitension with
    ``4(5 + m - 4 s_k)(a^i_k (3 + m - 2 s_k) - tr A_i)``.

    Only meaningful when S is diagonal; returns ``(i, k, extracted, predicted)``.
    """
    s = qmap.s
    b = qmap.backend
    size = qmap.size
    for i in range(size):
        for j in range(size):
            if i != j and not b.is_zero(s[i][j]):
                raise QuadMapError("S is not diagonal")
    tau2 = bitension if bitension is not None else homogenized_bitension(qmap)
    m = qmap.m
    out = []
    for i, (a, tr, comp) in enumerate(zip(qmap.matrices, qmap.traces, tau2)):
        for k in range(size):
            mono = tuple(6 if t == k else 0 for t in range(size))
            sk = s[k][k]
            predicted = 4 * (5 + m - 4 * sk) * (a[k][k] * (3 + m - 2 * sk) - tr)
            out.append((i, k, comp.coefficient_of(mono), predicted))
    return out
