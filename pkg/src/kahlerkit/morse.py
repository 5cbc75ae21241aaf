"""Morse polynomials, the Morse inequalities, and the distance function on a round sphere."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in t, coefficients c_0..c_N with trailing zeros removed."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def of(cls, coeffs: Iterable[int]) -> "IntPolynomial":
        return cls(tuple(coeffs))

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        k = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self[i] + other[i] for i in range(k)))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        k = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self[i] - other[i] for i in range(k)))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def __call__(self, t):
        return sum(c * t**i for i, c in enumerate(self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            body = mono if mono and abs(c) == 1 else f"{abs(c)}{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


ONE_PLUS_T = IntPolynomial((1, 1))


@dataclass(frozen=True)
class MorseProfile:
    """Multiset of Morse indices of the critical points of a Morse function."""

    indices: tuple[int, ...] = ()

    def __post_init__(self):
        idx = tuple(sorted(int(i) for i in self.indices))
        if any(i < 0 for i in idx):
            raise ValueError("Morse indices are nonnegative")
        object.__setattr__(self, "indices", idx)

    def counts(self) -> dict[int, int]:
        return dict(Counter(self.indices))


def morse_polynomial(p: MorseProfile) -> IntPolynomial:
    if not p.indices:
        return IntPolynomial()
    c = [0] * (max(p.indices) + 1)
    for i in p.indices:
        c[i] += 1
    return IntPolynomial(tuple(c))


def divide_one_plus_t(D: IntPolynomial) -> tuple[IntPolynomial, int]:
    """Synthetic division from the constant term: D = Q (1 + t) + r t^N with N = deg D.

    D is divisible by (1 + t) exactly when r = 0.
    """
    N = D.degree
    if N < 1:
        return IntPolynomial(), D[0]
    q = [D[0]]
    for i in range(1, N):
        q.append(D[i] - q[-1])
    return IntPolynomial(tuple(q)), D[N] - q[-1]


def morse_inequality_check(M: IntPolynomial, P: IntPolynomial) -> IntPolynomial | None:
    """Q with M - P = Q (1 + t) and nonnegative coefficients, or None if there is none."""
    Q, rem = divide_one_plus_t(M - P)
    if rem != 0 or any(c < 0 for c in Q.coeffs):
        return None
    return Q


@dataclass
class InequalityReport:
    passed: bool
    first_violation: str | None = None
    checked: int = 0
    notes: list[str] = field(default_factory=list)


def weak_inequalities(M: IntPolynomial, P: IntPolynomial) -> InequalityReport:
    """b_k <= mu_k for every k, and the alternating partial sums

    sum_{j<=k} (-1)^{k-j} b_j <= sum_{j<=k} (-1)^{k-j} mu_j,

    reporting the first one that fails.
    """
    top = max(M.degree, P.degree, 0)
    checked = 0
    for k in range(top + 1):
        checked += 1
        if P[k] > M[k]:
            return InequalityReport(False, f"b_{k}={P[k]} > mu_{k}={M[k]}", checked)
    for k in range(top + 1):
        checked += 1
        sb = sum((-1) ** (k - j) * P[j] for j in range(k + 1))
        sm = sum((-1) ** (k - j) * M[j] for j in range(k + 1))
        if sb > sm:
            return InequalityReport(False, f"alternating sum up to {k}: {sb} > {sm}", checked)
    return InequalityReport(True, None, checked)


@dataclass
class CriticalPoint:
    point: np.ndarray
    index: int
    hessian_eigenvalues: list[float]


def sphere_distance_critical_points(center: Sequence[float], radius: float, q: Sequence[float]) -> list[CriticalPoint]:
    """Critical points of L_q(p) = |p - q|^2 on the sphere |p - center| = radius.

    Critical points are where p - q is normal to the sphere, i.e. the two
    points on the line through the center and q.  At such p write
    xi = q - p (a normal vector); the Hessian of L_q / 2 is I - A_xi, and for
    outward unit normal nu the shape operator is A_xi = -(<xi, nu>/radius) I.
    """
    c = np.asarray(center, dtype=float)
    qv = np.asarray(q, dtype=float)
    if c.shape != qv.shape or c.ndim != 1 or len(c) < 2:
        raise ValueError("center and q must be points of the same R^{m+1}, m >= 1")
    if radius <= 0:
        raise ValueError("radius must be positive")
    v = qv - c
    dist = float(np.linalg.norm(v))
    if dist < 1e-12 * max(1.0, radius):
        raise ValueError("q at the center: every point is critical, L_q is not a Morse function")
    m = len(c) - 1
    u = v / dist
    out = []
    for s in (1.0, -1.0):
        nu = s * u
        p = c + radius * nu
        xi = qv - p
        a = -float(np.dot(xi, nu)) / radius
        eig = [1.0 - a] * m
        if any(abs(e) < 1e-12 for e in eig):
            raise ValueError("q is a focal point: degenerate critical point")
        out.append(CriticalPoint(p, sum(e < 0 for e in eig), eig))
    return out


def sphere_distance_morse(center: Sequence[float], radius: float, q: Sequence[float]) -> MorseProfile:
    return MorseProfile(tuple(cp.index for cp in sphere_distance_critical_points(center, radius, q)))


def sphere_betti(m: int) -> IntPolynomial:
    return IntPolynomial((1,) + (0,) * (m - 1) + (1,)) if m > 0 else IntPolynomial((2,))
