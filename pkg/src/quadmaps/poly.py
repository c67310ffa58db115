"""Sparse homogeneous polynomials in ``nvars`` variables and vectors of them.

Monomials are exponent tuples.  Every polynomial has a fixed degree and
only stores monomials of that degree, so "vanishes on the unit sphere" and
"all coefficients are zero" coincide.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from itertools import combinations_with_replacement

from .errors import DegreeMismatch, DimensionMismatch, NotSymmetric
from .scalar import EXACT, Backend

Monomial = tuple[int, ...]


def monomials(nvars: int, degree: int) -> list[Monomial]:
    """All monomials of the given degree in graded-lex (descending) order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for v in combo:
            exps[v] += 1
        out.append(tuple(exps))
    return sorted(out, reverse=True)


def unit_monomial(nvars: int, exponents: Mapping[int, int]) -> Monomial:
    exps = [0] * nvars
    for var, power in exponents.items():
        exps[var] = power
    return tuple(exps)


class HomoPoly:
    """A homogeneous polynomial with a fixed degree.

    Zero coefficients are never stored.  In float mode only exact 0.0 is
    dropped; tolerance-based zero tests go through :meth:`is_zero`.
    """

    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars: int, degree: int, terms: Mapping[Monomial, object] | None = None):
        self.nvars = nvars
        self.degree = degree
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if len(mono) != nvars:
                    raise DimensionMismatch(f"monomial {mono} has {len(mono)} exponents, expected {nvars}")
                if sum(mono) != degree:
                    raise DegreeMismatch(f"monomial {mono} has degree {sum(mono)}, expected {degree}")
                if coeff:
                    clean[tuple(mono)] = coeff
        self.terms = clean

    @classmethod
    def _trusted(cls, nvars, degree, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.degree = degree
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, nvars: int, degree: int) -> HomoPoly:
        return cls._trusted(nvars, degree, {})

    @classmethod
    def constant(cls, nvars: int, value) -> HomoPoly:
        return cls(nvars, 0, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int, one=1) -> HomoPoly:
        return cls(nvars, 1, {unit_monomial(nvars, {index: 1}): one})

    @classmethod
    def norm_sq(cls, nvars: int, one=1) -> HomoPoly:
        """|x|^2."""
        return cls._trusted(nvars, 2, {unit_monomial(nvars, {i: 2}): one for i in range(nvars)})

    # ring operations --------------------------------------------------

    def _check(self, other: HomoPoly, same_degree: bool = True) -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")
        if same_degree and self.degree != other.degree:
            # a zero polynomial of either degree still has a definite degree
            raise DegreeMismatch(f"cannot add degree {self.degree} and degree {other.degree}")

    def __add__(self, other: HomoPoly) -> HomoPoly:
        self._check(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            if mono in terms:
                value = terms[mono] + coeff
                if value:
                    terms[mono] = value
                else:
                    del terms[mono]
            else:
                terms[mono] = coeff
        return HomoPoly._trusted(self.nvars, self.degree, terms)

    def __neg__(self) -> HomoPoly:
        return HomoPoly._trusted(self.nvars, self.degree, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: HomoPoly) -> HomoPoly:
        return self + (-other)

    def scale(self, c) -> HomoPoly:
        if not c:
            return HomoPoly.zero(self.nvars, self.degree)
        terms = {}
        for mono, coeff in self.terms.items():
            value = coeff * c
            if value:
                terms[mono] = value
        return HomoPoly._trusted(self.nvars, self.degree, terms)

    def __mul__(self, other):
        if not isinstance(other, HomoPoly):
            return self.scale(other)
        self._check(other, same_degree=False)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                prod = c1 * c2
                if mono in terms:
                    terms[mono] = terms[mono] + prod
                else:
                    terms[mono] = prod
        terms = {m: c for m, c in terms.items() if c}
        return HomoPoly._trusted(self.nvars, self.degree + other.degree, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, exponent: int) -> HomoPoly:
        result = HomoPoly.constant(self.nvars, 1)
        for _ in range(exponent):
            result = result * self
        return result

    # inspection -------------------------------------------------------

    def coefficient_of(self, mono: Sequence[int]):
        mono = tuple(mono)
        if len(mono) != self.nvars:
            raise DimensionMismatch(f"monomial {mono} has {len(mono)} exponents, expected {self.nvars}")
        if sum(mono) != self.degree:
            raise DegreeMismatch(f"monomial {mono} has degree {sum(mono)}, polynomial has degree {self.degree}")
        return self.terms.get(mono, 0)

    def is_zero(self, backend: Backend = EXACT) -> bool:
        if backend.exact:
            return not self.terms
        return all(backend.is_zero(c) for c in self.terms.values())

    def items(self) -> list[tuple[Monomial, object]]:
        """Terms in graded-lex (descending) order."""
        return sorted(self.terms.items(), reverse=True)

    def leading_term(self):
        items = self.items()
        return items[0] if items else None

    def __call__(self, x: Sequence):
        return self.evaluate(x)

    def evaluate(self, x: Sequence):
        if len(x) != self.nvars:
            raise DimensionMismatch(f"point has {len(x)} coordinates, expected {self.nvars}")
        total = 0
        for mono, coeff in self.terms.items():
            term = coeff
            for xi, e in zip(x, mono):
                if e:
                    term = term * xi ** e
            total = total + term
        return total

    def map_coefficients(self, fn) -> HomoPoly:
        return HomoPoly(self.nvars, self.degree, {m: fn(c) for m, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, HomoPoly):
            return NotImplemented
        return (self.nvars, self.degree) == (other.nvars, other.degree) and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        return f"HomoPoly(nvars={self.nvars}, degree={self.degree}, terms={len(self.terms)})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.items():
            vars_ = "*".join(
                f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(mono) if e)
            parts.append(f"({coeff})" + (f"*{vars_}" if vars_ else ""))
        return " + ".join(parts)


def poly_mul(p: HomoPoly, q: HomoPoly) -> HomoPoly:
    return p * q


def coefficient_of(p: HomoPoly, mono: Sequence[int]):
    return p.coefficient_of(mono)


def quad_from_matrix(a: Sequence[Sequence], backend: Backend = EXACT) -> HomoPoly:
    """X^t A X as a degree-2 polynomial; A must be symmetric."""
    size = len(a)
    if any(len(row) != size for row in a):
        raise DimensionMismatch("matrix is not square")
    terms = {}
    for i in range(size):
        if a[i][i]:
            terms[unit_monomial(size, {i: 2})] = a[i][i]
        for j in range(i + 1, size):
            if not backend.eq(a[i][j], a[j][i]):
                raise NotSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")
            if a[i][j]:
                terms[unit_monomial(size, {i: 1, j: 1})] = 2 * a[i][j]
    return HomoPoly(size, 2, terms)


class HomoPolyVec:
    """A vector of homogeneous polynomials of one common degree."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[HomoPoly]):
        comps = tuple(components)
        if not comps:
            raise DimensionMismatch("a polynomial vector needs at least one component")
        nvars, degree = comps[0].nvars, comps[0].degree
        for c in comps:
            if c.nvars != nvars:
                raise DimensionMismatch("components live in different variable counts")
            if c.degree != degree:
                raise DegreeMismatch("components have different degrees")
        self.components = comps

    @property
    def dim(self) -> int:
        return len(self.components)

    @property
    def degree(self) -> int:
        return self.components[0].degree

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    def __getitem__(self, index: int) -> HomoPoly:
        return self.components[index]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __add__(self, other: HomoPolyVec) -> HomoPolyVec:
        if self.dim != other.dim:
            raise DimensionMismatch(f"vector sizes {self.dim} and {other.dim}")
        return HomoPolyVec(a + b for a, b in zip(self, other))

    def __sub__(self, other: HomoPolyVec) -> HomoPolyVec:
        if self.dim != other.dim:
            raise DimensionMismatch(f"vector sizes {self.dim} and {other.dim}")
        return HomoPolyVec(a - b for a, b in zip(self, other))

    def __neg__(self):
        return HomoPolyVec(-a for a in self)

    def __mul__(self, other):
        # scalar or scalar polynomial, applied componentwise
        return HomoPolyVec(c * other for c in self)

    __rmul__ = __mul__

    def is_zero(self, backend: Backend = EXACT) -> bool:
        return all(c.is_zero(backend) for c in self)

    def evaluate(self, x: Sequence) -> tuple:
        return tuple(c.evaluate(x) for c in self)

    def first_nonzero(self, backend: Backend = EXACT):
        """(component index, monomial, coefficient) of the first surviving term, or None."""
        for idx, comp in enumerate(self):
            for mono, coeff in comp.items():
                if not backend.is_zero(coeff):
                    return idx, mono, coeff
        return None

    def __eq__(self, other):
        if not isinstance(other, HomoPolyVec):
            return NotImplemented
        return self.components == other.components

    __hash__ = None

    def __repr__(self):
        return f"HomoPolyVec(dim={self.dim}, degree={self.degree}, nvars={self.nvars})"


def is_zero_vec(v: HomoPolyVec, backend: Backend = EXACT) -> bool:
    return v.is_zero(backend)


def eval_vec(v: HomoPolyVec, x: Sequence) -> tuple:
    if len(x) != v.nvars:
        raise DimensionMismatch(f"point has {len(x)} coordinates, expected {v.nvars}")
    return v.evaluate(x)


def constant_vec(nvars: int, values: Sequence) -> HomoPolyVec:
    return HomoPolyVec(HomoPoly.constant(nvars, v) for v in values)
