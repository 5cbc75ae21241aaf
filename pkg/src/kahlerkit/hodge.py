"""Hodge diamonds and Betti numbers of projective space and complete intersections.

For smooth complete intersections only the Betti numbers are produced: the
Lefschetz hyperplane pattern fixes every b_i away from the middle degree and
the Euler characteristic (from :mod:`kahlerkit.chern`) fixes the middle one.
Middle Hodge numbers are not computed.  Ranks only, torsion is not tracked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .chern import euler_characteristic


@dataclass(frozen=True)
class HodgeDiamond:
    """``grid[p][q] = h^{p,q}``."""

    n: int
    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("dimension must be nonnegative")
        g = tuple(tuple(int(x) for x in row) for row in self.grid)
        if len(g) != self.n + 1 or any(len(row) != self.n + 1 for row in g):
            raise ValueError(f"grid must be {self.n + 1}x{self.n + 1}")
        if any(x < 0 for row in g for x in row):
            raise ValueError("Hodge numbers are nonnegative")
        object.__setattr__(self, "grid", g)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "HodgeDiamond":
        return cls(len(rows) - 1, tuple(tuple(r) for r in rows))

    def h(self, p: int, q: int) -> int:
        if 0 <= p <= self.n and 0 <= q <= self.n:
            return self.grid[p][q]
        return 0

    def rows(self) -> list[list[int]]:
        """Diamond rows from top (h^{n,n}) to bottom (h^{0,0}); row k holds p+q = 2n-k."""
        out = []
        for s in range(2 * self.n, -1, -1):
            out.append([self.h(p, s - p) for p in range(self.n, -1, -1) if 0 <= s - p <= self.n])
        return out

    def pretty(self) -> str:
        rows = self.rows()
        cells = [[str(x) for x in row] for row in rows]
        w = max(len(c) for row in cells for c in row)
        lines = []
        for row in cells:
            body = "   ".join(c.center(w) for c in row)
            pad = (self.n + 1 - len(row)) * (w + 3) // 2
            lines.append(" " * pad + body)
        return "\n".join(lines)

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.grid]


@dataclass(frozen=True)
class BettiVector:
    values: tuple[int, ...]

    def __post_init__(self):
        v = tuple(int(x) for x in self.values)
        if len(v) % 2 != 1:
            raise ValueError("a Betti vector of a compact complex manifold has odd length 2n+1")
        if any(x < 0 for x in v):
            raise ValueError("Betti numbers are nonnegative")
        object.__setattr__(self, "values", v)

    @property
    def dim(self) -> int:
        return (len(self.values) - 1) // 2

    def __getitem__(self, i: int) -> int:
        return self.values[i] if 0 <= i < len(self.values) else 0

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def euler(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.values))


def diamond_pn(n: int) -> HodgeDiamond:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return HodgeDiamond(n, tuple(tuple(int(p == q) for q in range(n + 1)) for p in range(n + 1)))


def curve_diamond(g: int) -> HodgeDiamond:
    """Compact Riemann surface of genus g."""
    return HodgeDiamond(1, ((1, g), (g, 1)))


def betti_from_diamond(d: HodgeDiamond) -> BettiVector:
    return BettiVector(tuple(sum(d.h(p, k - p) for p in range(k + 1)) for k in range(2 * d.n + 1)))


def validate_diamond(d: HodgeDiamond) -> list[str]:
    """Violations of the symmetries every compact Kahler manifold satisfies."""
    out = []
    n = d.n
    for p in range(n + 1):
        for q in range(p + 1, n + 1):
            if d.h(p, q) != d.h(q, p):
                out.append(f"conjugation symmetry: h^{{{p},{q}}}={d.h(p, q)} != h^{{{q},{p}}}={d.h(q, p)}")
    for p in range(n + 1):
        for q in range(n + 1):
            if (p, q) < (n - p, n - q) and d.h(p, q) != d.h(n - p, n - q):
                out.append(
                    f"Serre duality: h^{{{p},{q}}}={d.h(p, q)} != h^{{{n - p},{n - q}}}={d.h(n - p, n - q)}"
                )
    b = betti_from_diamond(d)
    for k in range(1, 2 * n + 1, 2):
        if b[k] % 2:
            out.append(f"odd Betti number b_{k}={b[k]} is not even")
    for p in range(n + 1):
        if d.h(p, p) < 1:
            out.append(f"Kahler class: h^{{{p},{p}}}=0, expected >= 1")
    return out


def complete_intersection_betti(m: int, degrees: Sequence[int]) -> BettiVector:
    """Betti numbers of a smooth complete intersection in P^m."""
    n = m - len(degrees)
    if n < 1:
        raise ValueError(f"complete intersection has dimension {n}, need at least 1")
    chi = euler_characteristic(m, degrees)
    rest = [0 if i % 2 else 1 for i in range(2 * n + 1)]
    rest[n] = 0
    middle = (-1) ** n * (chi - sum((-1) ** i * b for i, b in enumerate(rest)))
    if middle < 0:
        raise ValueError(f"negative middle Betti number {middle} (chi={chi})")
    rest[n] = middle
    return BettiVector(tuple(rest))


def hypersurface_betti(n: int, d: int) -> BettiVector:
    """Betti numbers of a smooth degree-d hypersurface of dimension n in P^{n+1}."""
    return complete_intersection_betti(n + 1, [d])


@dataclass
class LefschetzReport:
    nY: int
    passed: bool
    failures: list[str] = field(default_factory=list)


def lefschetz_pattern_check(bX: Sequence[int], bY: Sequence[int], nY: int) -> LefschetzReport:
    """Compare ranks against the hyperplane theorem for Y a hyperplane-type section of X.

    With dim X = nY + 1 the restriction H^i(X) -> H^i(Y) is an isomorphism
    for i < nY and injective for i = nY, so ranks must agree below nY and
    b_nY(X) <= b_nY(Y).
    """
    bX, bY = list(bX), list(bY)
    fails = []
    for i in range(nY + 1):
        x = bX[i] if i < len(bX) else 0
        y = bY[i] if i < len(bY) else 0
        if i < nY and x != y:
            fails.append(f"b_{i}: {x} != {y} (restriction should be an isomorphism)")
        if i == nY and x > y:
            fails.append(f"b_{i}: {x} > {y} (restriction should be injective)")
    return LefschetzReport(nY, not fails, fails)


def plane_curve_genus(d: int) -> int:
    if d < 1:
        raise ValueError("degree must be positive")
    return (d - 1) * (d - 2) // 2


def genus_from_chern(d: int) -> int:
    """Genus of a smooth plane curve of degree d from chi = 2 - 2g."""
    chi = euler_characteristic(2, [d])
    return (2 - chi) // 2
