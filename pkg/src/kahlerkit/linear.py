"""Exact scalars and exact linear algebra.

Everything symbolic in the package runs on :class:`GaussianRational`, an
element ``a + b*i`` of Q(i) with :class:`fractions.Fraction` parts.  Matrices
are plain lists of rows; entries are coerced on the way in.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "GaussianRational",
    "gauss",
    "I",
    "ZERO",
    "ONE",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "mat_mul",
    "smith_normal_form",
    "invariant_factors",
    "cochain_groups",
]


_SCALAR_TOKEN = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(\*?i)?")


class GaussianRational:
    """An exact complex number ``re + im*i`` with rational parts.

    Instances are immutable and hashable; equality against ``int`` and
    ``Fraction`` works when the imaginary part is zero.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Rational | int = 0, im: Rational | int = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # construction -------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse strings such as ``"3"``, ``"-1/2"``, ``"2i"``, ``"1/2-3/4i"``."""
        s = text.replace(" ", "").replace("j", "i")
        if not s:
            raise ValueError("empty scalar")
        re_part = Fraction(0)
        im_part = Fraction(0)
        pos = 0
        while pos < len(s):
            m = _SCALAR_TOKEN.match(s, pos)
            if m is None or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse scalar {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            value = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(3):
                im_part += sign * value
            else:
                re_part += sign * value
            pos = m.end()
        return cls._raw(re_part, im_part)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        c, d = other.re, other.im
        if not d:
            if not c:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussianRational._raw(self.re / c, self.im / c)
        den = c * c + d * d
        a, b = self.re, self.im
        return GaussianRational._raw((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return ONE / (self ** (-exponent))
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        """``z * conj(z)`` as a rational."""
        return self.re * self.re + self.im * self.im

    # comparison ---------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return not self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{_imag_str(abs(self.im))}"


def _imag_str(x: Fraction) -> str:
    if x == 1:
        return "i"
    if x == -1:
        return "-i"
    return f"{x}i"


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational._raw(Fraction(x), Fraction(0))
    if isinstance(x, Rational):
        return GaussianRational._raw(Fraction(x), Fraction(0))
    return NotImplemented


def gauss(x) -> GaussianRational:
    """Coerce ints, Fractions, strings and Gaussian rationals to Q(i)."""
    if isinstance(x, str):
        return GaussianRational.parse(x)
    g = _coerce(x)
    if g is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")
    return g


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


# --------------------------------------------------------------------------
# field linear algebra


def _as_rows(M: Iterable[Sequence]) -> list[list[GaussianRational]]:
    return [[gauss(x) for x in row] for row in M]


def _all_real(rows) -> bool:
    return all(not x.im for row in rows for x in row)


def rref(M: Iterable[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q(i).

    Returns ``(rows, pivots)`` where ``pivots`` lists the pivot column of each
    nonzero row.  Purely real input is eliminated over Q with Fractions.
    """
    rows = _as_rows(M)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if _all_real(rows):
        work = [[x.re for x in row] for row in rows]
        red, pivots = _rref_generic(work, ncols)
        return [[GaussianRational._raw(x, Fraction(0)) for x in row] for row in red], pivots
    return _rref_generic(rows, ncols)


def _rref_generic(work, ncols):
    pivots: list[int] = []
    r = 0
    nrows = len(work)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if work[i][c]), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        piv = work[r][c]
        if piv != 1:
            work[r] = [x / piv for x in work[r]]
        prow = work[r]
        for i in range(nrows):
            if i != r:
                f = work[i][c]
                if f:
                    work[i] = [x - f * y for x, y in zip(work[i], prow)]
        pivots.append(c)
        r += 1
    return work[:r], pivots


def rank(M: Iterable[Sequence]) -> int:
    """Rank over Q(i)."""
    rows = list(M)
    if not rows:
        return 0
    return len(rref(rows)[1])


def kernel_basis(M: Iterable[Sequence], ncols: int | None = None) -> list[list[GaussianRational]]:
    """A basis of ``{v : M v = 0}``.

    ``ncols`` is required when ``M`` has no rows.
    """
    rows = list(M)
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for a matrix with no rows")
        ncols = len(rows[0])
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(M: Iterable[Sequence], rhs: Sequence) -> list[GaussianRational]:
    """One solution ``x`` of ``M x = rhs``; raises ``ValueError`` if none exists."""
    rows = _as_rows(M)
    b = [gauss(x) for x in rhs]
    if len(rows) != len(b):
        raise ValueError("right-hand side length does not match row count")
    ncols = len(rows[0]) if rows else 0
    aug = [row + [bi] for row, bi in zip(rows, b)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    x = [ZERO] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]):
    """Product of two matrices given as row lists (entries of any ring type)."""
    if not A:
        return []
    inner = len(B)
    if len(A[0]) != inner:
        raise ValueError("shape mismatch in matrix product")
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(ncols):
            acc = 0
            for k in range(inner):
                a = row[k]
                if a:
                    acc = acc + a * B[k][j]
            new.append(acc)
        out.append(new)
    return out


# --------------------------------------------------------------------------
# integer linear algebra


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Sequence[Sequence[int]]):
    """Smith normal form of an integer matrix.

    Returns ``(U, D, V)`` with ``U @ M @ V == D``, ``U`` and ``V`` unimodular,
    ``D`` diagonal with nonnegative entries and ``D[i][i] | D[i+1][i+1]``.
    Pivots are chosen by smallest absolute value to keep entries small.
    """
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        clean = False
            if not clean:
                # a remainder smaller than the pivot survived; bring it up
                i_best = min((i for i in range(t, m) if A[i][t]), key=lambda i: abs(A[i][t]))
                j_best = min((j for j in range(t, n) if A[t][j]), key=lambda j: abs(A[t][j]))
                if abs(A[i_best][t]) <= abs(A[t][j_best]):
                    swap_rows(t, i_best)
                else:
                    swap_cols(t, j_best)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return U, A, V


def invariant_factors(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, in order."""
    _, D, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def cochain_groups(dims: Sequence[int], maps: Sequence[Sequence[Sequence[int]]]):
    """Integer cohomology of a cochain complex ``C^0 -> C^1 -> ... -> C^N``.

    ``maps[k]`` is the integer matrix of ``C^k -> C^{k+1}`` (``dims[k+1]`` rows,
    ``dims[k]`` columns).  Returns one ``(free_rank, torsion)`` pair per degree,
    where ``torsion`` lists the invariant factors greater than one.
    """
    if len(maps) != max(len(dims) - 1, 0):
        raise ValueError("need exactly one map between consecutive degrees")
    factors = []
    for k, M in enumerate(maps):
        if M and len(M) != dims[k + 1]:
            raise ValueError(f"map {k} has {len(M)} rows, expected {dims[k + 1]}")
        factors.append(invariant_factors(M) if M and dims[k] else [])
    groups = []
    for k, d in enumerate(dims):
        rank_out = len(factors[k]) if k < len(factors) else 0
        incoming = factors[k - 1] if k > 0 else []
        free = d - rank_out - len(incoming)
        groups.append((free, [f for f in incoming if f > 1]))
    return groups
