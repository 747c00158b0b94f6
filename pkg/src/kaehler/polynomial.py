"""Sparse multivariate polynomials and truncated power series over Q.

Terms are stored as ``{exponent tuple: Fraction}``. ``TruncSeries`` drops
every monomial whose total degree exceeds its truncation degree ``D``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

from .errors import NotAUnit
from .linalg import Q


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of exactly the given total degree, in lex-descending order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Q(c)
                if c != 0:
                    if len(e) != nvars:
                        raise ValueError("exponent length does not match variable count")
                    self.terms[tuple(e)] = c

    # construction helpers
    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def _new(self, terms: dict) -> "Poly":
        p = Poly.__new__(Poly)
        p.nvars = self.nvars
        p.terms = terms
        return p

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.constant(self.nvars, other)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exp) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        return self == self._coerce(other)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"{type(self).__name__}({self.to_string()})"

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            mono = "*".join(f"u{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"({self.terms[e]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def _add_terms(self, other: "Poly", sign: int) -> dict:
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + sign * c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return out

    def __add__(self, other):
        return self._new(self._add_terms(self._coerce(other), 1))

    __radd__ = __add__

    def __sub__(self, other):
        return self._new(self._add_terms(self._coerce(other), -1))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def _mul_terms(self, other: "Poly", cap: int | None) -> dict:
        out: dict = {}
        if not self.terms or not other.terms:
            return out
        b_items = sorted(((sum(e), e, c) for e, c in other.terms.items()))
        for ea, ca in self.terms.items():
            da = sum(ea)
            for db, eb, cb in b_items:
                if cap is not None and da + db > cap:
                    break
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e, 0) + ca * cb
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return out

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Q(other)
            if c == 0:
                return self._new({})
            return self._new({e: c * v for e, v in self.terms.items()})
        return self._new(self._mul_terms(other, None))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self._coerce(1)
        for _ in range(n):
            out = out * self
        return out

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1 :]
                out[e2] = c * k
        return self._new(out)

    def __call__(self, point: Iterable) -> Fraction:
        point = [Q(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            total += v
        return total

    def homogeneous_part(self, d: int) -> "Poly":
        return self._new({e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, D: int) -> "Poly":
        return self._new({e: c for e, c in self.terms.items() if sum(e) <= D})


class TruncSeries(Poly):
    """Multivariate power series known through total degree ``D``."""

    __slots__ = ("D",)

    def __init__(self, nvars: int, D: int, terms=None):
        super().__init__(nvars, terms)
        self.D = D
        self.terms = {e: c for e, c in self.terms.items() if sum(e) <= D}

    @classmethod
    def from_poly(cls, p: Poly, D: int) -> "TruncSeries":
        return cls(p.nvars, D, p.terms)

    @classmethod
    def constant(cls, nvars: int, c, D: int = 0) -> "TruncSeries":
        return cls(nvars, D, {(0,) * nvars: c})

    def _new(self, terms: dict, D: int | None = None) -> "TruncSeries":
        s = TruncSeries.__new__(TruncSeries)
        s.nvars = self.nvars
        s.D = self.D if D is None else D
        s.terms = terms if D is None else {e: c for e, c in terms.items() if sum(e) <= D}
        return s

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, Poly):
            return TruncSeries.from_poly(other, self.D)
        return TruncSeries(self.nvars, self.D, {(0,) * self.nvars: other})

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.nvars == other.nvars and self.D == other.D and self.terms == other.terms
        return super().__eq__(other)

    __hash__ = Poly.__hash__

    def __add__(self, other):
        other = self._coerce(other)
        D = min(self.D, other.D)
        return self._new(self._add_terms(other, 1), D)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        D = min(self.D, other.D)
        return self._new(self._add_terms(other, -1), D)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Q(other)
            return self._new({e: c * v for e, v in self.terms.items()} if c else {})
        other = self._coerce(other)
        # a factor with no constant term lets the product stay exact one degree further
        D = min(self.D + other.valuation, other.D + self.valuation)
        return self._new(self._mul_terms(other, D), D)

    __rmul__ = __mul__

    @property
    def valuation(self) -> int:
        """Lowest total degree present (``D + 1`` for the zero series)."""
        return min((sum(e) for e in self.terms), default=self.D + 1)

    def diff(self, i: int) -> "TruncSeries":
        out = Poly.diff(self, i)
        return self._new(out.terms, self.D - 1)

    def with_degree(self, D: int) -> "TruncSeries":
        if D > self.D:
            raise ValueError("cannot extend a truncated series")
        return self._new(dict(self.terms), D)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def to_poly(self) -> Poly:
        return Poly(self.nvars, self.terms)


def series_invert_unit(s: TruncSeries) -> TruncSeries:
    """Multiplicative inverse through degree ``s.D``; raises NotAUnit on zero constant term."""
    c0 = s.constant_term()
    if c0 == 0:
        raise NotAUnit("series has zero constant term")
    inv0 = 1 / c0
    # s = c0 (1 - r) with r of positive valuation; 1/s = inv0 * sum r^k
    r = TruncSeries(s.nvars, s.D, {e: -c * inv0 for e, c in s.terms.items() if any(e)})
    out = TruncSeries.constant(s.nvars, inv0, s.D)
    power = TruncSeries.constant(s.nvars, 1, s.D)
    for _ in range(s.D):
        power = (power * r).with_degree(s.D)
        if power.is_zero():
            break
        out = out + inv0 * power
    return out
