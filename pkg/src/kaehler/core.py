"""Hermitian and para-Hermitian structures on R^m and rank-4 tensors over them.

Tensors are dense ``numpy`` object arrays of shape ``(m, m, m, m)`` with
Fraction entries, indexed 0-based internally; every file format and report
uses 1-based indices. A matrix ``J`` acts on basis vectors by columns:
``J e_x = sum_a J[a, x] e_a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable

import numpy as np

from .errors import BadDimension, BadThetaSymmetry, BianchiViolation, SymmetryConflict
from .linalg import Q, zeros

COMPLEX = "complex"
PARA = "para"
KINDS = (COMPLEX, PARA)


@dataclass(frozen=True)
class Structure:
    """Standard (para-)Hermitian structure ``(R^m, g0, J)``.

    ``sigma`` is +1 for the complex kind and -1 for the para kind; it is the
    sign in ``J* theta = sigma theta`` and in the Kaehler identity.
    """

    m: int
    kind: str = COMPLEX

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not isinstance(self.m, int) or self.m < 4 or self.m % 2:
            raise BadDimension(f"dimension must be even and >= 4, got {self.m}")

    @property
    def mbar(self) -> int:
        return self.m // 2

    @property
    def sigma(self) -> int:
        return 1 if self.kind == COMPLEX else -1

    @cached_property
    def eps(self) -> tuple[int, ...]:
        if self.kind == COMPLEX:
            return (1,) * self.m
        # 1-based even index -> +1, odd -> -1
        return tuple(1 if (i + 1) % 2 == 0 else -1 for i in range(self.m))

    @cached_property
    def g0(self) -> np.ndarray:
        g = zeros(self.m, self.m)
        for i, e in enumerate(self.eps):
            g[i, i] = Fraction(e)
        return g

    @cached_property
    def J(self) -> np.ndarray:
        J = zeros(self.m, self.m)
        for k in range(self.mbar):
            a, b = 2 * k, 2 * k + 1
            J[b, a] = Fraction(1)
            J[a, b] = Fraction(-1) if self.kind == COMPLEX else Fraction(1)
        return J

    @cached_property
    def weights(self) -> np.ndarray:
        """``eps_i eps_j eps_k eps_l`` as a rank-4 integer array."""
        e = np.array(self.eps, dtype=object)
        return np.einsum("i,j,k,l->ijkl", e, e, e, e)


def standard_structure(m: int, kind: str = COMPLEX) -> Structure:
    return Structure(m, kind)


# -- tensor plumbing ---------------------------------------------------------


def zero_tensor(m: int) -> np.ndarray:
    return zeros(m, m, m, m)


def act(T: np.ndarray, M: np.ndarray, slot: int) -> np.ndarray:
    """Feed ``M x`` instead of ``x`` into ``slot``: ``T(.., Mx, ..)``."""
    out = np.tensordot(M, T, axes=([0], [slot]))
    return np.moveaxis(out, 0, slot)


def act_all(T: np.ndarray, M: np.ndarray, slots: Iterable[int]) -> np.ndarray:
    for s in slots:
        T = act(T, M, s)
    return T


def reindex(T: np.ndarray, src: str, dst: str) -> np.ndarray:
    """Return ``R`` with ``R[dst] = T[src]``, e.g. ``reindex(T, 'yzxw', 'xyzw')``."""
    return T.transpose([src.index(ch) for ch in dst])


def tensors_equal(A: np.ndarray, B: np.ndarray) -> bool:
    return A.shape == B.shape and bool(np.all(A == B))


def first_nonzero(T: np.ndarray):
    """Lexicographically first nonzero entry as ``(index, value)``, or None."""
    for idx in product(*(range(n) for n in T.shape)):
        if T[idx] != 0:
            return idx, T[idx]
    return None


def symmetry_defects(A: np.ndarray) -> dict[str, np.ndarray]:
    """The three curvature-symmetry residuals; all vanish for a curvature tensor."""
    return {
        "antisymmetry": A + reindex(A, "yxzw", "xyzw"),
        "pair_symmetry": A - reindex(A, "zwxy", "xyzw"),
        "bianchi": A + reindex(A, "yzxw", "xyzw") + reindex(A, "zxyw", "xyzw"),
    }


def is_curvature_tensor(A: np.ndarray) -> bool:
    return all(not np.any(d != 0) for d in symmetry_defects(A).values())


def tensor_ip(A: np.ndarray, B: np.ndarray, S: Structure) -> Fraction:
    """Signature-weighted full contraction ``sum eps_i eps_j eps_k eps_l A_ijkl B_ijkl``."""
    if A.shape != B.shape:
        raise ValueError("tensors have different shapes")
    return Fraction(np.sum(S.weights * A * B))


# -- curvature models --------------------------------------------------------


def _orbit(idx: tuple[int, int, int, int]):
    """The ``Z2``-orbit of an index quadruple with the sign picked up on the way."""
    x, y, z, w = idx
    for (a, b, c, d), s in (
        ((x, y, z, w), 1),
        ((y, x, z, w), -1),
        ((x, y, w, z), -1),
        ((y, x, w, z), 1),
    ):
        yield (a, b, c, d), s
        yield (c, d, a, b), s


def orbit_representative(idx: tuple[int, int, int, int]) -> tuple[tuple[int, int, int, int], int]:
    """Lexicographically least member of the orbit and its sign relative to ``idx``."""
    return min(_orbit(idx))


@dataclass(eq=False)
class CurvatureModel:
    structure: Structure
    A: np.ndarray
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        m = self.structure.m
        if self.A.shape != (m, m, m, m):
            raise ValueError(f"tensor shape {self.A.shape} does not match m={m}")
        if self.validate:
            defects = symmetry_defects(self.A)
            for name in ("antisymmetry", "pair_symmetry"):
                hit = first_nonzero(defects[name])
                if hit is not None:
                    raise SymmetryConflict(f"{name} fails at {_one_based(hit[0])}")
            hit = first_nonzero(defects["bianchi"])
            if hit is not None:
                raise BianchiViolation(f"first Bianchi identity fails at {_one_based(hit[0])}")

    @property
    def m(self) -> int:
        return self.structure.m

    def __eq__(self, other):
        if not isinstance(other, CurvatureModel):
            return NotImplemented
        return self.structure == other.structure and tensors_equal(self.A, other.A)

    def component(self, i: int, j: int, k: int, l: int) -> Fraction:
        """1-based component lookup."""
        return self.A[i - 1, j - 1, k - 1, l - 1]


def _one_based(idx) -> tuple[int, ...]:
    return tuple(int(i) + 1 for i in idx)


def model_from_components(S: Structure, entries: Iterable, validate: bool = True) -> CurvatureModel:
    """Build a model from sparse 1-based ``(i, j, k, l, value)`` entries.

    Each listed entry is propagated over its ``Z2`` orbit; unlisted orbits are
    zero. Raises SymmetryConflict when listed entries disagree and
    BianchiViolation when the completed tensor fails the cyclic identity
    (unless ``validate`` is false).
    """
    m = S.m
    A = zero_tensor(m)
    assigned: dict[tuple[int, int, int, int], Fraction] = {}
    for entry in entries:
        *idx, value = entry
        value = Q(value)
        if len(idx) != 4 or not all(1 <= int(i) <= m for i in idx):
            raise ValueError(f"index {tuple(idx)} out of range 1..{m}")
        base = tuple(int(i) - 1 for i in idx)
        for target, s in _orbit(base):
            v = s * value
            old = assigned.get(target)
            if old is not None and old != v:
                raise SymmetryConflict(
                    f"entry {_one_based(target)} forced to both {old} and {v}"
                )
            assigned[target] = v
    for target, v in assigned.items():
        A[target] = v
    return CurvatureModel(S, A, validate=validate)


def sparse_components(A: np.ndarray) -> list[tuple[tuple[int, int, int, int], Fraction]]:
    """One 1-based representative per nonzero orbit, in lexicographic order."""
    seen = set()
    out = []
    for idx in product(range(A.shape[0]), repeat=4):
        if A[idx] == 0:
            continue
        rep, _ = orbit_representative(idx)
        if rep in seen:
            continue
        seen.add(rep)
        out.append((_one_based(rep), A[rep]))
    out.sort()
    return out


class PairCoords:
    """Coordinates on tensors with ``A(x,y,z,w) = -A(y,x,z,w) = A(z,w,x,y)``.

    One coordinate per unordered pair of strictly increasing index pairs. The
    first Bianchi identity is *not* built in; it is imposed as a constraint.
    """

    def __init__(self, m: int):
        self.m = m
        self.pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
        n = len(self.pairs)
        self.keys = [(p, q) for p in range(n) for q in range(p, n)]
        self._pos = {k: t for t, k in enumerate(self.keys)}
        self._pair_pos = {p: t for t, p in enumerate(self.pairs)}

    def __len__(self):
        return len(self.keys)

    def locate(self, i: int, j: int, k: int, l: int):
        """``(coordinate, sign)`` with ``A[i,j,k,l] = sign * x[coordinate]``, or None."""
        if i == j or k == l:
            return None
        s = 1
        if i > j:
            i, j, s = j, i, -s
        if k > l:
            k, l, s = l, k, -s
        p, q = self._pair_pos[(i, j)], self._pair_pos[(k, l)]
        if p > q:
            p, q = q, p
        return self._pos[(p, q)], s

    def to_coords(self, A: np.ndarray) -> np.ndarray:
        out = np.empty(len(self.keys), dtype=object)
        for t, (p, q) in enumerate(self.keys):
            (i, j), (k, l) = self.pairs[p], self.pairs[q]
            out[t] = A[i, j, k, l]
        return out

    def from_coords(self, x) -> np.ndarray:
        A = zero_tensor(self.m)
        for t, (p, q) in enumerate(self.keys):
            v = x[t]
            if v == 0:
                continue
            (i, j), (k, l) = self.pairs[p], self.pairs[q]
            for target, s in _orbit((i, j, k, l)):
                A[target] = s * v
        return A

    def weights(self, S: Structure) -> np.ndarray:
        """Diagonal of ``tensor_ip`` in these coordinates."""
        out = np.empty(len(self.keys), dtype=object)
        for t, (p, q) in enumerate(self.keys):
            (i, j), (k, l) = self.pairs[p], self.pairs[q]
            mult = 4 if p == q else 8
            out[t] = Fraction(mult * S.eps[i] * S.eps[j] * S.eps[k] * S.eps[l])
        return out

    def constraint_row(self, terms) -> np.ndarray:
        """Row of the linear form ``sum c * A[idx]`` over ``(c, idx)`` terms."""
        row = zeros(len(self.keys))
        for c, idx in terms:
            hit = self.locate(*idx)
            if hit is not None:
                row[hit[0]] += c * hit[1]
        return row


@lru_cache(maxsize=None)
def pair_coords(m: int) -> PairCoords:
    return PairCoords(m)


# -- symmetric bilinear forms and Theta tensors ------------------------------


def is_symmetric(theta: np.ndarray) -> bool:
    return bool(np.all(theta == theta.T))


def pullback2(theta: np.ndarray, M: np.ndarray) -> np.ndarray:
    """``(M* theta)(x, y) = theta(Mx, My)``."""
    return M.T.dot(theta).dot(M)


def in_eigenspace(theta: np.ndarray, S: Structure) -> bool:
    """True when ``J* theta = sigma theta`` (S^2_+ for complex, S^2_- for para)."""
    return bool(np.all(pullback2(theta, S.J) == S.sigma * theta))


def require_eigenspace(theta: np.ndarray, S: Structure) -> None:
    if not is_symmetric(theta):
        raise BadThetaSymmetry("bilinear form is not symmetric")
    if not in_eigenspace(theta, S):
        label = "J-invariant" if S.kind == COMPLEX else "J-anti-invariant"
        raise BadThetaSymmetry(f"bilinear form is not {label}")


@dataclass(eq=False)
class ThetaTensor:
    """Quadratic coefficient of a realizing metric.

    ``entries[i, j, k, l]``: ``(i, j)`` are metric-direction slots, ``(k, l)``
    coordinate slots, so ``g_ij = g0_ij + sum_kl entries[i,j,k,l] u_k u_l``.
    """

    structure: Structure
    entries: np.ndarray
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        m = self.structure.m
        T = self.entries
        if T.shape != (m, m, m, m):
            raise ValueError(f"theta shape {T.shape} does not match m={m}")
        if self.validate:
            if np.any(T != reindex(T, "jikl", "ijkl")) or np.any(T != reindex(T, "ijlk", "ijkl")):
                raise BadThetaSymmetry("theta must be symmetric in both index pairs")
            JJ = act_all(T, self.structure.J, (0, 1))
            if np.any(JJ != self.structure.sigma * T):
                raise BadThetaSymmetry("metric slots are not in the kind's J-eigenspace")

    @property
    def m(self) -> int:
        return self.structure.m

    def __eq__(self, other):
        if not isinstance(other, ThetaTensor):
            return NotImplemented
        return self.structure == other.structure and tensors_equal(self.entries, other.entries)

    def __add__(self, other: "ThetaTensor") -> "ThetaTensor":
        return ThetaTensor(self.structure, self.entries + other.entries, validate=False)

    def __rmul__(self, c) -> "ThetaTensor":
        return ThetaTensor(self.structure, Q(c) * self.entries, validate=False)

    def __neg__(self) -> "ThetaTensor":
        return ThetaTensor(self.structure, -self.entries, validate=False)


def theta_from_components(S: Structure, entries: Iterable) -> ThetaTensor:
    """Sparse 1-based ``(i, j, k, l, value)`` entries, completed by pair symmetry."""
    m = S.m
    T = zero_tensor(m)
    assigned = {}
    for entry in entries:
        *idx, value = entry
        value = Q(value)
        if len(idx) != 4 or not all(1 <= int(i) <= m for i in idx):
            raise ValueError(f"index {tuple(idx)} out of range 1..{m}")
        i, j, k, l = (int(t) - 1 for t in idx)
        for target in {(i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k)}:
            old = assigned.get(target)
            if old is not None and old != value:
                raise SymmetryConflict(f"theta entry {_one_based(target)} given twice")
            assigned[target] = value
    for target, v in assigned.items():
        T[target] = v
    return ThetaTensor(S, T)


def theta_components(T: np.ndarray) -> list[tuple[tuple[int, int, int, int], Fraction]]:
    out = []
    for idx in product(range(T.shape[0]), repeat=4):
        i, j, k, l = idx
        if i <= j and k <= l and T[idx] != 0:
            out.append((_one_based(idx), T[idx]))
    return out


def sym_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``(a (x) b)[i,j,k,l] = a[i,j] b[k,l]`` for two bilinear forms."""
    return np.multiply.outer(a, b)


def covector_square(m: int, coeffs: dict[int, int]) -> np.ndarray:
    """``v (x) v`` for the covector ``v = sum c_i e^i`` with 1-based keys."""
    v = zeros(m)
    for i, c in coeffs.items():
        v[i - 1] = Q(c)
    return np.multiply.outer(v, v)
