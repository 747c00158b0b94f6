"""Exact rational linear algebra on numpy object arrays.

Matrices and vectors are ``numpy.ndarray`` with ``dtype=object`` holding
``fractions.Fraction`` entries. Nothing here ever touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DegenerateGram, FormatError, SingularMatrix

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def Q(x) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def parse_rational(s: str) -> Fraction:
    m = _RATIONAL_RE.match(s)
    if m is None:
        raise FormatError(f"not a rational: {s!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise FormatError(f"zero denominator: {s!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q) -> str:
    # Fraction.__str__ already gives "p" or "p/q" in lowest terms with the sign on p
    return str(Q(q))


def as_matrix(rows) -> np.ndarray:
    a = np.array(rows, dtype=object)
    if a.ndim != 2:
        if a.ndim == 1 and a.size == 0:
            return np.empty((0, 0), dtype=object)
        raise ValueError("expected a 2-d array")
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = Q(v)
    return out


def as_vector(v) -> np.ndarray:
    a = np.array(v, dtype=object).reshape(-1)
    out = np.empty(a.shape, dtype=object)
    for i, x in enumerate(a):
        out[i] = Q(x)
    return out


def zeros(*shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def rref(M) -> tuple[np.ndarray, list[int], int]:
    """Reduced row echelon form over Q.

    Returns ``(R, pivots, rank)`` where ``pivots`` lists the pivot columns.
    """
    R = as_matrix(M).copy()
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = R[r:, c]
        nz = [i for i, x in enumerate(col) if x != 0]
        if not nz:
            continue
        p = r + nz[0]
        if p != r:
            R[[r, p]] = R[[p, r]]
        R[r] = R[r] / R[r, c]
        others = [i for i in range(nrows) if i != r and R[i, c] != 0]
        if others:
            R[others] -= np.outer(R[others, c], R[r])
        pivots.append(c)
        r += 1
    return R, pivots, len(pivots)


def _distinct_rows(M: np.ndarray) -> np.ndarray:
    # drop zero rows and rows proportional to an earlier one; the row space is unchanged
    seen = set()
    keep = []
    for i, row in enumerate(M):
        lead = next((x for x in row if x != 0), None)
        if lead is None:
            continue
        key = tuple(x / lead for x in row)
        if key not in seen:
            seen.add(key)
            keep.append(i)
    return M[keep] if keep else M[:0]


def nullspace(M) -> list[np.ndarray]:
    """Rational basis of ``{x : M x = 0}``, one vector per free column."""
    A = as_matrix(M)
    ncols = A.shape[1]
    R, pivots, _ = rref(_distinct_rows(A))
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = Fraction(1)
        for row, p in enumerate(pivots):
            v[p] = -R[row, f]
        basis.append(v)
    return basis


def rank(M) -> int:
    A = as_matrix(M)
    if A.size == 0:
        return 0
    return rref(_distinct_rows(A))[2]


def solve_linear(M, b) -> np.ndarray | None:
    """Some exact solution of ``M x = b`` with free variables zeroed, or None."""
    A = as_matrix(M)
    rhs = as_vector(b)
    if rhs.shape[0] != A.shape[0]:
        raise ValueError("right-hand side length does not match row count")
    ncols = A.shape[1]
    aug = np.concatenate([A, rhs.reshape(-1, 1)], axis=1)
    R, pivots, _ = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = zeros(ncols)
    for row, p in enumerate(pivots):
        x[p] = R[row, ncols]
    return x


def solve_unique(M, b) -> np.ndarray:
    """Solve a square nonsingular system; raises SingularMatrix otherwise."""
    A = as_matrix(M)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("solve_unique needs a square matrix")
    aug = np.concatenate([A, as_vector(b).reshape(-1, 1)], axis=1)
    R, pivots, rk = rref(aug)
    if pivots[:n] != list(range(n)) or rk != n:
        raise SingularMatrix("matrix is singular")
    return R[:, n].copy()


def inverse(M) -> np.ndarray:
    A = as_matrix(M)
    n = A.shape[0]
    R, pivots, _ = rref(np.concatenate([A, identity(n)], axis=1))
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return R[:, n:].copy()


def gram_project(
    basis: Sequence[np.ndarray],
    v,
    ip: Callable[[np.ndarray, np.ndarray], Fraction],
) -> tuple[np.ndarray, np.ndarray]:
    """Project ``v`` onto ``span(basis)`` along the ``ip``-orthogonal complement.

    Raises DegenerateGram when the basis Gram matrix is singular, which can
    happen for indefinite forms.
    """
    v = as_vector(v)
    if not basis:
        return zeros(0), zeros(len(v))
    G = as_matrix([[ip(a, b) for b in basis] for a in basis])
    rhs = [ip(a, v) for a in basis]
    try:
        coeffs = solve_unique(G, rhs)
    except SingularMatrix:
        raise DegenerateGram("Gram matrix of the basis is singular") from None
    return coeffs, combine(coeffs, basis, len(v))


def combine(coeffs: Iterable, vectors: Sequence[np.ndarray], length: int | None = None):
    """Exact linear combination ``sum(c_i * v_i)``."""
    out = None
    for c, vec in zip(coeffs, vectors):
        if c == 0:
            continue
        out = c * vec if out is None else out + c * vec
    if out is None:
        shape = vectors[0].shape if vectors else (length,)
        return zeros(*shape)
    return out


def is_zero(a: np.ndarray) -> bool:
    return all(x == 0 for x in np.asarray(a).flat)
