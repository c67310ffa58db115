"""Small dense matrix helpers over an arbitrary scalar backend.

Matrices are tuples of row tuples.  Sizes here never exceed ~10, so plain
nested loops are the right tool; numpy is reserved for float eigenvalues.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, NotOrthogonal
from .scalar import EXACT, Backend

Matrix = tuple[tuple, ...]


def as_matrix(rows: Sequence[Sequence], backend: Backend = EXACT) -> Matrix:
    out = tuple(tuple(backend.coerce(v) for v in row) for row in rows)
    size = len(out[0]) if out else 0
    if any(len(row) != size for row in out):
        raise DimensionMismatch("ragged matrix rows")
    return out


def identity(size: int, backend: Backend = EXACT) -> Matrix:
    zero, one = backend.zero(), backend.one()
    return tuple(tuple(one if i == j else zero for j in range(size)) for i in range(size))


def zeros(rows: int, cols: int, backend: Backend = EXACT) -> Matrix:
    zero = backend.zero()
    return tuple(tuple(zero for _ in range(cols)) for _ in range(rows))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = transpose(b)
    return tuple(tuple(_dot(row, col) for col in bt) for row in a)


def _dot(u, v):
    total = u[0] * v[0]
    for x, y in zip(u[1:], v[1:]):
        if x and y:
            total = total + x * y
    return total


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def trace(a: Matrix):
    total = a[0][0]
    for i in range(1, len(a)):
        total = total + a[i][i]
    return total


def matvec(a: Matrix, v: Sequence) -> tuple:
    return tuple(_dot(row, v) for row in a)


def dot(u: Sequence, v: Sequence):
    return _dot(u, v)


def quad_value(a: Matrix, x: Sequence):
    """X^t A X."""
    return dot(x, matvec(a, x))


def is_symmetric(a: Matrix, backend: Backend = EXACT) -> bool:
    n = len(a)
    return all(backend.eq(a[i][j], a[j][i]) for i in range(n) for j in range(i + 1, n))


def symmetrize(a: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple((a[i][j] + a[j][i]) / 2 for j in range(n)) for i in range(n))


def matrices_equal(a: Matrix, b: Matrix, backend: Backend = EXACT) -> bool:
    return len(a) == len(b) and all(
        backend.eq(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def scalar_multiple_of_identity(a: Matrix, backend: Backend = EXACT):
    """Return c when a == c*I, else None."""
    c = a[0][0]
    n = len(a)
    for i in range(n):
        for j in range(n):
            target = c if i == j else 0
            if not backend.eq(a[i][j], target):
                return None
    return c


def is_orthogonal(u: Matrix, backend: Backend = EXACT) -> bool:
    n = len(u)
    if any(len(row) != n for row in u):
        return False
    return matrices_equal(matmul(transpose(u), u), identity(n, backend), backend)


def require_orthogonal(u: Matrix, backend: Backend = EXACT, what: str = "matrix") -> None:
    if not is_orthogonal(u, backend):
        raise NotOrthogonal(f"{what} is not orthogonal (U^t U != I)")


def householder(v: Sequence, target: Sequence, backend: Backend = EXACT) -> Matrix:
    """Reflection H = I - 2 w w^t / (w^t w), w = v - target, with H v = target.

    Requires |v| == |target|.  Returns the identity when v == target.
    """
    size = len(v)
    w = tuple(a - b for a, b in zip(v, target))
    ww = dot(w, w)
    if backend.is_zero(ww):
        return identity(size, backend)
    factor = backend.coerce(2) / ww
    one, zero = backend.one(), backend.zero()
    return tuple(
        tuple((one if i == j else zero) - factor * w[i] * w[j] for j in range(size))
        for i in range(size)
    )


def to_numpy(a: Matrix) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in a], dtype=float)


def float_eigenvalues(a: Matrix) -> np.ndarray:
    """Eigenvalues of the float image of a symmetric matrix, ascending."""
    return np.linalg.eigvalsh(to_numpy(a))
