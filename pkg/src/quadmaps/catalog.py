"""Named quadratic maps and the constructions that produce new ones.

Toth's normal forms phi_n are transcribed term by term; phi_8 and the
Veronese map come from the classical construction (an orthonormal basis of
traceless symmetric matrices, rescaled to be spherical).  ``F_lambda`` is
built from quaternion multiplication.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import matrix as mx
from .errors import (
    InexactLambda,
    InexactValue,
    InnerEnergyNotConstant,
    InnerNotHarmonic,
    LambdaOutOfRange,
    UnknownName,
)
from .quadmap import QuadraticSphericalMap, Verdict, transform
from .scalar import EXACT, SQRT2, SQRT3, Backend, Surd, parse_rational

__all__ = [
    "CatalogEntry",
    "get",
    "names",
    "lift",
    "pad",
    "random_instance",
    "random_orthogonal",
    "signed_permutation",
    "plane_rotation",
    "f_lambda",
    "quaternion_product",
    "TOTH_NAMES",
]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    map: QuadraticSphericalMap
    expected: Verdict
    provenance: str


def _from_terms(size: int, terms: dict, backend: Backend) -> list[list]:
    """Symmetric matrix of ``sum c * x^i x^j`` with 1-based (i, j) keys."""
    zero = backend.zero()
    a = [[zero] * size for _ in range(size)]
    for (i, j), c in terms.items():
        c = backend.coerce(c)
        i, j = i - 1, j - 1
        if i == j:
            a[i][i] = a[i][i] + c
        else:
            half = c / 2
            a[i][j] = a[i][j] + half
            a[j][i] = a[j][i] + half
    return a


def _build(size, polys, backend, name, radius_sq=1) -> QuadraticSphericalMap:
    return QuadraticSphericalMap([_from_terms(size, p, backend) for p in polys], backend,
                                 radius_sq=radius_sq, name=name)


def _complex_squaring(backend):
    return _build(2, [{(1, 1): 1, (2, 2): -1}, {(1, 2): 2}], backend, "complex_squaring")


def _hopf(backend):
    return _build(4, [
        {(1, 1): 1, (2, 2): 1, (3, 3): -1, (4, 4): -1},
        {(1, 3): 2, (2, 4): -2},
        {(1, 4): 2, (2, 3): 2},
    ], backend, "hopf")


def _phi4(backend):
    return _build(4, [
        {(1, 1): 1, (2, 2): 1, (3, 3): -1, (4, 4): -1},
        {(1, 3): 2},
        {(1, 4): 2},
        {(2, 3): 2},
        {(2, 4): 2},
    ], backend, "phi4")


def _phi5(backend):
    r2 = _root(SQRT2, backend)
    return _build(4, [
        {(1, 1): 1, (2, 2): -1},
        {(3, 3): 1, (4, 4): -1},
        {(1, 2): 2},
        {(1, 3): r2, (2, 4): r2},
        {(2, 3): r2, (1, 4): -r2},
        {(3, 4): 2},
    ], backend, "phi5")


def _phi6(backend):
    r2 = _root(SQRT2, backend)
    r3 = _root(SQRT3, backend)
    h = r2 / 2  # 1/sqrt2
    return _build(4, [
        {(1, 1): h, (2, 2): h, (3, 3): -h, (4, 4): -h},
        {(1, 1): h, (2, 2): -h},
        {(3, 3): h, (4, 4): -h},
        {(1, 2): r2},
        {(1, 3): r3, (2, 4): r3},
        {(2, 3): r3, (1, 4): -r3},
        {(3, 4): r2},
    ], backend, "phi6")


def _phi7(backend):
    r2 = _root(SQRT2, backend)
    return _build(4, [
        {(1, 1): 1, (2, 2): -1},
        {(3, 3): 1, (4, 4): -1},
        {(1, 2): 2},
        {(1, 3): r2},
        {(1, 4): r2},
        {(2, 3): r2},
        {(2, 4): r2},
        {(3, 4): 2},
    ], backend, "phi7")


def _traceless_eigenmap(size: int, backend: Backend, name: str) -> QuadraticSphericalMap:
    """x -> c * (x^t B x)_B over an orthonormal basis B of traceless symmetric matrices.

    Sum_B (x^t B x)^2 = |x x^t - |x|^2 I/size|^2 = (1 - 1/size)|x|^4, so
    c^2 = size/(size-1) makes the map spherical.
    """
    if size == 3:
        c2 = Fraction(3, 2)
    elif size == 4:
        c2 = Fraction(4, 3)
    else:
        raise ValueError("only sizes 3 and 4 have coefficients in Q(sqrt2, sqrt3)")
    c = backend.sqrt(backend.coerce(c2))
    half_sqrt2 = backend.sqrt(backend.coerce(Fraction(1, 2)))
    polys = []
    # off-diagonal basis (E_ij + E_ji)/sqrt2 gives sqrt2 x^i x^j
    for i in range(1, size + 1):
        for j in range(i + 1, size + 1):
            polys.append({(i, j): c * _root(SQRT2, backend)})
    if size == 3:
        polys.append({(1, 1): c * half_sqrt2, (2, 2): -c * half_sqrt2})
        w = c / backend.sqrt(backend.coerce(6))
        polys.append({(1, 1): w, (2, 2): w, (3, 3): -2 * w})
    else:
        polys.append({(1, 1): c * half_sqrt2, (2, 2): -c * half_sqrt2})
        polys.append({(3, 3): c * half_sqrt2, (4, 4): -c * half_sqrt2})
        w = c / 2
        polys.append({(1, 1): w, (2, 2): w, (3, 3): -w, (4, 4): -w})
    return _build(size, polys, backend, name)


def _veronese(backend):
    return _traceless_eigenmap(3, backend, "veronese")


def _phi8(backend):
    return _traceless_eigenmap(4, backend, "phi8")


def _root(value: Surd, backend: Backend):
    return value if backend.exact else float(value)


# quaternions ---------------------------------------------------------

# e_a * e_b = sign * e_c for the basis 1, i, j, k
_QUAT_TABLE = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion_product(z, w) -> tuple:
    out = [0, 0, 0, 0]
    for (a, b), (sign, c) in _QUAT_TABLE.items():
        out[c] = out[c] + sign * z[a] * w[b]
    return tuple(out)


def _quaternion_bilinear_forms() -> list[dict]:
    """For each output component c, the z^a w^b terms of (z*w)_c on R^8 = (z, w)."""
    forms = [dict() for _ in range(4)]
    for (a, b), (sign, c) in _QUAT_TABLE.items():
        forms[c][(a + 1, 4 + b + 1)] = sign
    return forms


def _coerce_lambda(lam, backend: Backend):
    if backend.exact:
        if isinstance(lam, float):
            raise InexactLambda("exact mode needs a rational lambda, not a float")
        lam = parse_rational(lam) if isinstance(lam, str) else Fraction(lam)
        if not 0 <= lam < 1:
            raise LambdaOutOfRange(f"lambda = {lam} is outside [0, 1)")
        return Surd(lam)
    lam = float(parse_rational(lam)) if isinstance(lam, str) else float(lam)
    if not 0 <= lam < 1:
        raise LambdaOutOfRange(f"lambda = {lam} is outside [0, 1)")
    return lam


def f_lambda(lam, backend: Backend = EXACT) -> QuadraticSphericalMap:
    """(|z|^2 + lam|w|^2, sqrt(2(1-lam)) z*w, sqrt(1-lam^2)|w|^2) on S^7 -> S^5."""
    lam_v = _coerce_lambda(lam, backend)
    try:
        mult = backend.sqrt(2 * (1 - lam_v))
        last = backend.sqrt(1 - lam_v * lam_v)
    except InexactValue as exc:
        raise InexactLambda(f"lambda = {lam} needs square roots outside Q(√2,√3); "
                            "use the float backend") from exc
    polys = [{**{(i, i): 1 for i in range(1, 5)}, **{(i, i): lam_v for i in range(5, 9)}}]
    for form in _quaternion_bilinear_forms():
        polys.append({key: mult * sign for key, sign in form.items()})
    polys.append({(i, i): last for i in range(5, 9)})
    label = f"F_lambda({lam_v})" if backend.exact else f"F_lambda({lam_v!r})"
    return _build(8, polys, backend, label)


# constructions -------------------------------------------------------


def lift(inner: QuadraticSphericalMap, name: str | None = None) -> QuadraticSphericalMap:
    """(psi / sqrt2, 1/sqrt2) for a harmonic psi with constant energy density.

    A unit-sphere ``inner`` is rescaled by 1/sqrt2 first; an ``inner`` that
    already lands in the sphere of radius 1/sqrt2 is used as is.
    """
    be = inner.backend
    if not inner.is_harmonic_criterion():
        raise InnerNotHarmonic(f"{inner!r} has nonzero traces, so it is not harmonic")
    if inner.s_scalar is None:
        raise InnerEnergyNotConstant(f"{inner!r} has non-scalar S")
    half = be.coerce(Fraction(1, 2))
    inv_sqrt2 = be.sqrt(half)
    if be.eq(inner.radius_sq, 1):
        mats = [mx.scale(inv_sqrt2, a) for a in inner.matrices]
    elif be.eq(inner.radius_sq, half):
        mats = list(inner.matrices)
    else:
        raise InnerNotHarmonic(f"inner map must land in S(1) or S(1/√2), got r^2 = {inner.radius_sq}")
    mats.append(mx.scale(inv_sqrt2, mx.identity(inner.size, be)))
    label = name or (f"lift({inner.name})" if inner.name else None)
    return QuadraticSphericalMap(mats, be, name=label)


def pad(qmap: QuadraticSphericalMap, extra_zero_components: int, rotation=None
        ) -> QuadraticSphericalMap:
    """Append zero components, then optionally apply a codomain rotation."""
    be = qmap.backend
    if extra_zero_components < 0:
        raise ValueError("extra_zero_components must be >= 0")
    mats = list(qmap.matrices) + [mx.zeros(qmap.size, qmap.size, be)] * extra_zero_components
    label = qmap.name if not extra_zero_components else f"pad({qmap.name},{extra_zero_components})"
    padded = QuadraticSphericalMap(mats, be, radius_sq=qmap.radius_sq, name=label)
    if rotation is None:
        return padded
    return transform(padded, v=rotation)


# exact pseudo-random orthogonal matrices ------------------------------

PYTHAGOREAN = ((3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25))


def signed_permutation(perm, signs, backend: Backend = EXACT):
    size = len(perm)
    zero, one = backend.zero(), backend.one()
    rows = [[zero] * size for _ in range(size)]
    for i, (p, s) in enumerate(zip(perm, signs)):
        rows[i][p] = one if s > 0 else -one
    return tuple(tuple(r) for r in rows)


def plane_rotation(size: int, i: int, j: int, cos, sin, backend: Backend = EXACT):
    rows = [list(r) for r in mx.identity(size, backend)]
    c, s = backend.coerce(cos), backend.coerce(sin)
    rows[i][i] = c
    rows[j][j] = c
    rows[i][j] = -s
    rows[j][i] = s
    return tuple(tuple(r) for r in rows)


def random_orthogonal(rng: random.Random, size: int, rotations: int = 1,
                      backend: Backend = EXACT):
    """Signed permutation followed by Pythagorean-triple plane rotations."""
    perm = list(range(size))
    rng.shuffle(perm)
    signs = [rng.choice((1, -1)) for _ in range(size)]
    out = signed_permutation(perm, signs, backend)
    if size < 2:
        return out
    for _ in range(rotations):
        a, b, c = rng.choice(PYTHAGOREAN)
        i, j = rng.sample(range(size), 2)
        rot = plane_rotation(size, i, j, Fraction(a, c), Fraction(b, c), backend)
        out = mx.matmul(rot, out)
    return out


def random_instance(seed: int, base: str | QuadraticSphericalMap, scramble: str = "both",
                    rotations: int = 1, backend: Backend = EXACT) -> QuadraticSphericalMap:
    """Deterministic exact isometric scramble of a catalog map."""
    if scramble not in ("domain", "codomain", "both"):
        raise ValueError(f"scramble must be domain, codomain or both, not {scramble!r}")
    qmap = get(base, backend).map if isinstance(base, str) else base
    rng = random.Random(f"{seed}:{qmap.name}:{scramble}")
    u = v = None
    if scramble in ("domain", "both"):
        u = random_orthogonal(rng, qmap.size, rotations, qmap.backend)
    if scramble in ("codomain", "both"):
        v = random_orthogonal(rng, qmap.n + 1, rotations, qmap.backend)
    out = transform(qmap, u, v)
    out.name = f"random({seed},{qmap.name},{scramble})"
    return out


# registry ------------------------------------------------------------

_TOTH_PROV = "Toth's normal forms of full quadratic harmonic maps S^3 -> S^n"

_BASE: dict[str, tuple[Callable[[Backend], QuadraticSphericalMap], Verdict, str]] = {
    "complex_squaring": (_complex_squaring, Verdict.HARMONIC, "z -> z^2 on S^1"),
    "hopf": (_hopf, Verdict.HARMONIC, _TOTH_PROV + " (n = 2, Hopf map)"),
    "phi4": (_phi4, Verdict.HARMONIC, _TOTH_PROV + " (n = 4)"),
    "phi5": (_phi5, Verdict.HARMONIC, _TOTH_PROV + " (n = 5)"),
    "phi6": (_phi6, Verdict.HARMONIC, _TOTH_PROV + " (n = 6)"),
    "phi7": (_phi7, Verdict.HARMONIC, _TOTH_PROV + " (n = 7)"),
    "phi8": (_phi8, Verdict.HARMONIC,
             "classical standard minimal immersion S^3 -> S^8 (quadratic spherical harmonics)"),
    "veronese": (_veronese, Verdict.HARMONIC, "classical Veronese map S^2 -> S^4"),
}

_ALIASES = {"phi2": "hopf", "φ2": "hopf", "φ₂": "hopf"}
_ALIASES.update({f"φ{k}": f"phi{k}" for k in (4, 5, 6, 7, 8)})
_ALIASES.update({f"φ{'₀₁₂₃₄₅₆₇₈'[k]}": f"phi{k}" for k in (4, 5, 6, 7, 8)})

TOTH_NAMES = ("hopf", "phi4", "phi5", "phi6", "phi7", "phi8")

_FLAMBDA_RE = re.compile(r"^F_lambda\((.+)\)$", re.IGNORECASE)
_LIFT_RE = re.compile(r"^lift\((.+)\)$")


def names() -> list[str]:
    """Stable identifiers, including representative parametrized entries."""
    out = list(_BASE)
    out += ["F_lambda(0)", "F_lambda(1/2)"]
    out += [f"lift({n})" for n in (*TOTH_NAMES, "veronese")]
    return out


def get(name: str, backend: Backend = EXACT) -> CatalogEntry:
    key = name.strip()
    key = _ALIASES.get(key, key)
    if key in _BASE:
        builder, verdict, prov = _BASE[key]
        return CatalogEntry(key, builder(backend), verdict, prov)
    match = _FLAMBDA_RE.match(key)
    if match:
        arg = match.group(1).strip()
        if backend.exact:
            lam = arg
        else:
            try:
                lam = float(parse_rational(arg))
            except ValueError:
                lam = float(arg)
        qmap = f_lambda(lam, backend)
        lam_value = float(qmap.matrices[0][7][7])
        verdict = Verdict.PROPER_BIHARMONIC if lam_value == 0 else Verdict.NEITHER
        canonical = qmap.name
        return CatalogEntry(canonical, qmap, verdict,
                            "quaternion family F_lambda from orthogonal multiplication")
    match = _LIFT_RE.match(key)
    if match:
        inner = get(match.group(1), backend)
        qmap = lift(inner.map, name=f"lift({inner.name})")
        return CatalogEntry(qmap.name, qmap, Verdict.PROPER_BIHARMONIC,
                            f"(psi/√2, 1/√2) over {inner.name}")
    raise UnknownName(f"unknown catalog name {name!r}; known: {', '.join(names())}")
