"""Line bundles on P^n and the Fubini-Study metric.

The symbolic part (twists, section counts, CW homology, the Lefschetz map on
the cohomology ring) is exact.  The metric part works in binary64.

Normalization: the Fubini-Study form is ``(i/2pi) d dbar log(1 + |w|^2)`` in
an affine chart, so that it integrates to 1 over a line.  Some references
drop the ``1/pi``; with that convention every number below is off by ``pi``.
A point of the chart ``U_i`` has homogeneous coordinates with ``z_i = 1`` and
the remaining coordinates, in order, equal to ``w``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb, pi

import numpy as np

from .chern import CohClass
from .linear import cochain_groups

CHART_EPS = 1e-10


@dataclass(frozen=True)
class LineBundleClass:
    """The class of O(k) in Pic(P^n) = Z."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ambient dimension must be at least 1")

    def tensor(self, other: "LineBundleClass") -> "LineBundleClass":
        if other.n != self.n:
            raise ValueError(f"ambient mismatch: P^{self.n} vs P^{other.n}")
        return LineBundleClass(self.n, self.k + other.k)

    __matmul__ = tensor

    def dual(self) -> "LineBundleClass":
        return LineBundleClass(self.n, -self.k)

    def h0(self) -> int:
        return h0_dim(self.n, self.k)

    def __str__(self):
        return f"O({self.k}) on P^{self.n}"


def tensor(a: LineBundleClass, b: LineBundleClass) -> LineBundleClass:
    return a.tensor(b)


def dual(a: LineBundleClass) -> LineBundleClass:
    return a.dual()


def h0_dim(n: int, k: int) -> int:
    """Dimension of the space of global sections of O(k) on P^n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return comb(n + k, n) if k >= 0 else 0


def homogeneous_monomials(n: int, k: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree-k monomials in z_0..z_n."""
    if k < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(n + 1), k):
        e = [0] * (n + 1)
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


def divisor_class(n: int, components) -> LineBundleClass:
    """O(D) for D = sum a_i H_i with deg H_i = d_i."""
    total = 0
    for d, a in components:
        if d < 1:
            raise ValueError("hypersurface degrees must be positive")
        total += a * d
    return LineBundleClass(n, total)


def cw_homology_pn(n: int) -> list[tuple[int, list[int]]]:
    """Integral homology of P^n from its CW structure, one cell per even dimension.

    Returned as ``(free_rank, torsion)`` per degree 0..2n.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    dims = [1 if i % 2 == 0 else 0 for i in range(2 * n + 1)]
    # cellular boundaries go from a cell to one of dimension one lower, which is empty
    maps = [[[0] * dims[i] for _ in range(dims[i + 1])] for i in range(2 * n)]
    return cochain_groups(dims, maps)


def hard_lefschetz_ring(n: int, k: int) -> bool:
    """Whether multiplication by h^{n-k} maps H^k(P^n) bijectively onto H^{2n-k}(P^n)."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if k % 2:
        # H^k = H^{2n-k} = 0
        return True
    source = CohClass.h_power(n, k // 2)
    image = source * CohClass.h_power(n, n - k)
    target = CohClass.h_power(n, (2 * n - k) // 2)
    return image == target


# --------------------------------------------------------------------------
# charts


@dataclass(frozen=True)
class ChartPoint:
    i: int
    w: tuple[complex, ...]

    def __post_init__(self):
        w = tuple(complex(x) for x in self.w)
        if not all(np.isfinite(x.real) and np.isfinite(x.imag) for x in w):
            raise ValueError("chart coordinates must be finite")
        if not 0 <= self.i <= len(w):
            raise ValueError(f"chart index {self.i} out of range for P^{len(w)}")
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return len(self.w)

    def homogeneous(self) -> np.ndarray:
        w = list(self.w)
        return np.array(w[: self.i] + [1.0] + w[self.i:], dtype=complex)

    def in_chart(self, j: int) -> bool:
        return abs(self.homogeneous()[j]) > CHART_EPS

    def to_chart(self, j: int) -> "ChartPoint":
        z = self.homogeneous()
        if abs(z[j]) <= CHART_EPS:
            raise ValueError(f"point is not in chart U_{j}")
        z = z / z[j]
        return ChartPoint(j, tuple(np.delete(z, j)))

    @classmethod
    def from_homogeneous(cls, z, i: int) -> "ChartPoint":
        z = np.asarray(z, dtype=complex)
        if abs(z[i]) <= CHART_EPS:
            raise ValueError(f"point is not in chart U_{i}")
        z = z / z[i]
        return cls(i, tuple(np.delete(z, i)))


def cocycle_eval(bundle: LineBundleClass, i: int, j: int, p: ChartPoint) -> complex:
    """Transition function phi_ij = (z_j / z_i)^k of O(k) at p."""
    if p.n != bundle.n:
        raise ValueError("point and bundle live on different P^n")
    z = p.homogeneous()
    if abs(z[i]) <= CHART_EPS or abs(z[j]) <= CHART_EPS:
        raise ValueError(f"point is not in U_{i} and U_{j}")
    if i == j:
        return 1 + 0j
    return complex((z[j] / z[i]) ** bundle.k)


def o1_metric(p: ChartPoint, chart: int | None = None) -> float:
    """Weight h_i = |z_i|^2 / |z|^2 of the standard metric on O(1) in chart i."""
    z = p.homogeneous()
    i = p.i if chart is None else chart
    if abs(z[i]) <= CHART_EPS:
        raise ValueError(f"point is not in chart U_{i}")
    return float(abs(z[i]) ** 2 / np.vdot(z, z).real)


def fubini_study_matrix(p: ChartPoint) -> np.ndarray:
    """Matrix h with omega_FS = (i/2) sum h_ab dw_a ^ dwbar_b at p."""
    w = np.asarray(p.w, dtype=complex)
    s = 1.0 + np.vdot(w, w).real
    return (np.eye(len(w)) / s - np.outer(w.conj(), w) / s**2) / pi


def _fd_ddbar(f, w: np.ndarray, step: float) -> np.ndarray:
    """Central-difference matrix of d_a dbar_b f for a real function f of w."""
    n = len(w)
    x0 = np.concatenate([w.real, w.imag])

    def g(x):
        return f(x[:n] + 1j * x[n:])

    E = np.eye(2 * n) * step
    H = np.empty((2 * n, 2 * n))
    for a in range(2 * n):
        for b in range(a, 2 * n):
            v = (g(x0 + E[a] + E[b]) - g(x0 + E[a] - E[b]) - g(x0 - E[a] + E[b]) + g(x0 - E[a] - E[b])) / (
                4 * step * step
            )
            H[a, b] = H[b, a] = v
    xx, yy, xy = H[:n, :n], H[n:, n:], H[:n, n:]
    return 0.25 * (xx + yy + 1j * (xy - xy.T))


@dataclass
class FSReport:
    positive: bool
    eigenvalues: list[float]
    closed_residual: float
    closed: bool

    @property
    def passed(self) -> bool:
        return self.positive and self.closed


def fs_checks(p: ChartPoint, step: float = 1e-4, tol: float = 1e-5) -> FSReport:
    """Positivity and closedness of omega_FS at p.

    For a (1,1)-form with coefficients h_ab, d omega = 0 means
    d h_ab / d w_c is symmetric in (a, c) and d h_ab / d wbar_c is symmetric
    in (b, c).  Those are estimated by central differences.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    w = np.asarray(p.w, dtype=complex)
    n = len(w)
    eig = np.linalg.eigvalsh(fubini_study_matrix(p))

    def h_at(v):
        return fubini_study_matrix(ChartPoint(p.i, tuple(v)))

    dw, dwb = [], []
    for c in range(n):
        e = np.zeros(n, dtype=complex)
        e[c] = step
        hx = (h_at(w + e) - h_at(w - e)) / (2 * step)
        hy = (h_at(w + 1j * e) - h_at(w - 1j * e)) / (2 * step)
        dw.append(0.5 * (hx - 1j * hy))
        dwb.append(0.5 * (hx + 1j * hy))
    resid = 0.0
    for a in range(n):
        for b in range(n):
            for c in range(n):
                resid = max(resid, abs(dw[c][a, b] - dw[a][c, b]), abs(dwb[c][a, b] - dwb[b][a, c]))
    return FSReport(bool(np.all(eig > 0)), [float(x) for x in eig], float(resid), bool(resid <= tol))


@dataclass
class CurvatureReport:
    max_error: float
    passed: bool
    twist: int = 1
    numeric: np.ndarray | None = field(default=None, repr=False)


def chern_curvature_check(p: ChartPoint, step: float = 1e-4, tol: float = 1e-6, twist: int = 1) -> CurvatureReport:
    """Compare (i/2pi) F of the metric h^twist on O(twist) with twist * omega_FS.

    F = dbar d log h; its (i/2)-coefficient matrix is -(1/pi) d_a dbar_b log h,
    obtained here by finite differences and never from the closed form.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    i = p.i

    def log_h(v):
        z = ChartPoint(i, tuple(v)).homogeneous()
        return twist * np.log(abs(z[i]) ** 2 / np.vdot(z, z).real)

    numeric = -_fd_ddbar(log_h, np.asarray(p.w, dtype=complex), step) / pi
    err = float(np.max(np.abs(numeric - twist * fubini_study_matrix(p)))) if p.n else 0.0
    return CurvatureReport(err, err <= tol, twist, numeric)


# --------------------------------------------------------------------------
# integral over a line


def _radial(t):
    # after r = tan t the P^1 integrand (1/pi) * 2 pi r dr / (1 + r^2)^2 becomes 2 sin t cos t dt
    return 2.0 * np.sin(t) * np.cos(t)


def _gauss_legendre(f, a: float, b: float, order: int) -> float:
    x, wts = np.polynomial.legendre.leggauss(order)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return float(half * np.dot(wts, f(mid + half * x)))


def adaptive_gauss_legendre(f, a: float, b: float, tol: float, order: int = 8, max_depth: int = 40) -> float:
    """Adaptive bisection driven by the difference of two Gauss-Legendre orders."""
    if tol <= 0:
        raise ValueError("tol must be positive")

    def rec(lo, hi, tol_, depth):
        coarse = _gauss_legendre(f, lo, hi, order)
        fine = _gauss_legendre(f, lo, hi, 2 * order)
        if abs(fine - coarse) <= tol_:
            return fine
        if depth >= max_depth:
            raise ArithmeticError("quadrature failed to converge")
        m = 0.5 * (lo + hi)
        return rec(lo, m, tol_ / 2, depth + 1) + rec(m, hi, tol_ / 2, depth + 1)

    return rec(a, b, tol, 0)


def fs_integral_p1(tol: float = 1e-10, radius: float | None = None) -> float:
    """(1/pi) * integral of (1 + x^2 + y^2)^{-2} over the plane, or over a disc of the given radius.

    This is the area of P^1 under omega_FS (the complement of the chart is a point).
    """
    upper = pi / 2 if radius is None else float(np.arctan(radius))
    return adaptive_gauss_legendre(_radial, 0.0, upper, tol)


def fs_integral_p1_fixed(panels: int, order: int = 2) -> float:
    """Composite Gauss-Legendre with equal panels, for convergence studies."""
    edges = np.linspace(0.0, pi / 2, panels + 1)
    return sum(_gauss_legendre(_radial, lo, hi, order) for lo, hi in zip(edges[:-1], edges[1:]))


def random_chart_points(n: int, count: int, rng: np.random.Generator | None = None, chart: int = 0) -> list[ChartPoint]:
    """Uniform samples from the unit polydisc of a chart."""
    rng = np.random.default_rng(0) if rng is None else rng
    out = []
    for _ in range(count):
        r = np.sqrt(rng.uniform(0, 1, n))
        theta = rng.uniform(0, 2 * pi, n)
        out.append(ChartPoint(chart, tuple(r * np.exp(1j * theta))))
    return out
