"""Chern classes in the truncated ring Z[h]/(h^{m+1}).

``h`` is the hyperplane class of P^m, normalized so that h^m integrates to 1.
Subvarieties are smooth complete intersections; their classes are pulled
back from the ambient ring and integrated by multiplying with the class of
the subvariety, ``(d_1 ... d_k) h^k``, and reading off the h^m coefficient.

The Euler characteristic uses the Gauss-Bonnet-Chern theorem (the top Chern
number equals chi).  It is a classical fact used here as a supplement.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from .linear import ZERO, GaussianRational, gauss


@dataclass(frozen=True, eq=False)
class CohClass:
    """Integer polynomial in h, truncated above degree ``m``."""

    m: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("truncation degree must be nonnegative")
        c = tuple(int(x) for x in self.coeffs[: self.m + 1])
        object.__setattr__(self, "coeffs", c + (0,) * (self.m + 1 - len(c)))

    @classmethod
    def of(cls, m: int, coeffs: Sequence[int]) -> "CohClass":
        return cls(m, tuple(coeffs))

    @classmethod
    def unit(cls, m: int) -> "CohClass":
        return cls(m, (1,))

    @classmethod
    def h_power(cls, m: int, k: int, scale: int = 1) -> "CohClass":
        return cls(m, (0,) * k + (scale,))

    def _check(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        if other.m != self.m:
            raise ValueError(f"truncation mismatch: {self.m} vs {other.m}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return CohClass(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = self._check(other)
        return CohClass(self.m, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CohClass(self.m, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CohClass(self.m, tuple(other * a for a in self.coeffs))
        other = self._check(other)
        out = [0] * (self.m + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(self.m + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return CohClass(self.m, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = CohClass.unit(self.m)
        for _ in range(e):
            out = out * self
        return out

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i <= self.m else 0

    def __eq__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def integrate(self) -> int:
        """Degree on P^m: the coefficient of h^m."""
        return self.coeffs[self.m]

    def __str__(self):
        parts = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mono = "" if i == 0 else ("h" if i == 1 else f"h^{i}")
            if mono and abs(a) == 1:
                body = mono
            else:
                body = f"{abs(a)}{mono}"
            parts.append(("- " if a < 0 else "+ ") + body)
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


class ChernSeries(CohClass):
    """Total Chern class: a CohClass with constant term 1."""

    def __post_init__(self):
        super().__post_init__()
        if self.coeffs[0] != 1:
            raise ValueError("a total Chern class has constant term 1")

    @classmethod
    def from_class(cls, c: CohClass) -> "ChernSeries":
        return cls(c.m, c.coeffs)

    @classmethod
    def line(cls, m: int, d: int) -> "ChernSeries":
        """c(O(d)) = 1 + d h."""
        return cls(m, (1, d))


def whitney_product(a: ChernSeries, b: ChernSeries) -> ChernSeries:
    """Total Chern class of a direct sum."""
    if a.m != b.m:
        raise ValueError(f"truncation mismatch: {a.m} vs {b.m}")
    return ChernSeries.from_class(CohClass.__mul__(a, b))


def series_inverse(a: CohClass) -> ChernSeries:
    """Multiplicative inverse of a series with constant term 1."""
    if a[0] != 1:
        raise ValueError("only series with constant term 1 are invertible over Z")
    out = [1] + [0] * a.m
    for k in range(1, a.m + 1):
        out[k] = -sum(a[j] * out[k - j] for j in range(1, k + 1))
    return ChernSeries(a.m, tuple(out))


def chern_pn(n: int) -> ChernSeries:
    """c(P^n) = (1 + h)^{n+1}, from the Euler sequence by Whitney."""
    if n < 1:
        raise ValueError("n must be at least 1")
    c = ChernSeries.unit(n)
    for _ in range(n + 1):
        c = whitney_product(c, ChernSeries.line(n, 1))
    return ChernSeries.from_class(c)


def _check_degrees(m: int, degrees: Sequence[int]):
    if m < 1:
        raise ValueError("ambient dimension must be at least 1")
    if any(int(d) < 1 for d in degrees):
        raise ValueError("degrees must be positive")
    if len(degrees) > m:
        raise ValueError(f"{len(degrees)} hypersurfaces exceed ambient dimension {m}")


def chern_complete_intersection(m: int, degrees: Sequence[int]) -> ChernSeries:
    """c(T_Y) for Y = H_{d_1} cap ... cap H_{d_k} in P^m, as a class pulled back from P^m.

    The normal bundle is the sum of the O(d_j)|_Y, so the normal sequence gives
    c(T_Y) = (1+h)^{m+1} / prod (1 + d_j h).
    """
    _check_degrees(m, degrees)
    c = chern_pn(m)
    for d in degrees:
        c = whitney_product(c, series_inverse(ChernSeries.line(m, int(d))))
    return c


def canonical_degree(m: int, degrees: Sequence[int]) -> int:
    """K_Y = O(e)|_Y with e = sum d_j - m - 1."""
    _check_degrees(m, degrees)
    return sum(int(d) for d in degrees) - m - 1


def fundamental_class(m: int, degrees: Sequence[int]) -> CohClass:
    """[Y] = (d_1 ... d_k) h^k in H*(P^m)."""
    return CohClass.h_power(m, len(degrees), prod(int(d) for d in degrees))


def euler_characteristic(m: int, degrees: Sequence[int]) -> int:
    """Topological Euler characteristic of a smooth complete intersection."""
    _check_degrees(m, degrees)
    return (chern_complete_intersection(m, degrees) * fundamental_class(m, degrees)).integrate()


def chern_forms_from_matrix(B) -> list[GaussianRational]:
    """Coefficients of det(I + tB): [P_1(B), ..., P_r(B)].

    Uses the Faddeev-LeVerrier recursion, exact over Q(i).
    """
    rows = [[gauss(x) for x in row] for row in B]
    r = len(rows)
    if any(len(row) != r for row in rows):
        raise ValueError("matrix must be square")
    if r == 0:
        return []
    # det(tI - B) = t^r + c_1 t^{r-1} + ... ; det(I + tB) has coefficients (-1)^k c_k
    M = [[ZERO] * r for _ in range(r)]
    c_prev = gauss(1)
    out = []
    for k in range(1, r + 1):
        for i in range(r):
            M[i][i] = M[i][i] + c_prev
        M = [[sum((rows[i][l] * M[l][j] for l in range(r)), ZERO) for j in range(r)] for i in range(r)]
        c_prev = -sum((M[i][i] for i in range(r)), ZERO) / k
        out.append(c_prev if k % 2 == 0 else -c_prev)
    return out
