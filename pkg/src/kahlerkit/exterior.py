"""The complexified exterior algebra of C^n with its (p, q) bigrading.

A basis monomial is ``dz_I ^ dzbar_J`` with ``I`` and ``J`` increasing tuples
of 1-based indices; it is stored as the key ``(I, J)``.  Generators are
ordered ``dz_1 < ... < dz_n < dzbar_1 < ... < dzbar_n`` and every product is
brought to that order with the sign of the sorting permutation.

Metric normalization: the real coframe ``dx_1, dy_1, ..., dx_n, dy_n`` is
orthonormal, so ``<dz_k, dz_k> = 2`` and ``vol = dx_1 ^ dy_1 ^ ... ^ dx_n ^ dy_n``.
The Hodge star is the C-linear extension of the real star, characterised by
``a ^ *conj(b) = (a, b) vol``.  All other metric operators (``Lambda``, the
contractions) are derived from these two facts, never hard-coded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Mapping

from .linear import ONE, ZERO, GaussianRational, I, gauss, kernel_basis, rank, solve

Key = tuple[tuple[int, ...], tuple[int, ...]]

__all__ = [
    "ExtForm",
    "Key",
    "basis",
    "wedge",
    "conj",
    "inner",
    "hodge_star",
    "hodge_star_inverse",
    "lefschetz_L",
    "lefschetz_dual",
    "counting_H",
    "creation",
    "annihilation",
    "anticommutation_failures",
    "kahler_form",
    "volume_form",
    "primitive_decompose",
    "operator_matrix",
    "SL2Report",
    "verify_sl2",
    "hard_lefschetz_check",
]


class ExtForm:
    """An element of the exterior algebra of (C^n)*, tensored with C.

    ``terms`` maps keys ``(I, J)`` to nonzero :class:`GaussianRational`
    coefficients.  Treat instances as immutable.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[Key, object] | None = None):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        clean: dict[Key, GaussianRational] = {}
        for (I_, J_), c in (terms or {}).items():
            I_, J_ = tuple(I_), tuple(J_)
            for idx in (I_, J_):
                if list(idx) != sorted(set(idx)) or any(not 1 <= x <= dim for x in idx):
                    raise ValueError(f"invalid multi-index {idx} for dimension {dim}")
            c = gauss(c)
            if c:
                clean[(I_, J_)] = c
        self.dim = dim
        self.terms = clean

    @classmethod
    def _make(cls, dim: int, terms: dict[Key, GaussianRational]) -> "ExtForm":
        obj = object.__new__(cls)
        obj.dim = dim
        obj.terms = terms
        return obj

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "ExtForm":
        return cls._make(n, {})

    @classmethod
    def one(cls, n: int) -> "ExtForm":
        return cls._make(n, {((), ()): ONE})

    @classmethod
    def monomial(cls, n: int, I_: Iterable[int] = (), J_: Iterable[int] = (), coeff=1) -> "ExtForm":
        """``coeff * dz_I ^ dzbar_J``; unsorted indices are sorted with sign."""
        gens = [i - 1 for i in I_] + [n + j - 1 for j in J_]
        if any(not 0 <= g < 2 * n for g in gens):
            raise ValueError("index out of range")
        sign, key = _sort_gens(n, tuple(gens))
        if not sign:
            return cls.zero(n)
        return cls._make(n, {key: gauss(coeff) * sign}) if coeff else cls.zero(n)

    @classmethod
    def dz(cls, n: int, k: int) -> "ExtForm":
        return cls.monomial(n, (k,), ())

    @classmethod
    def dzbar(cls, n: int, k: int) -> "ExtForm":
        return cls.monomial(n, (), (k,))

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "ExtForm"):
        if not isinstance(other, ExtForm):
            raise TypeError("expected an ExtForm")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if not isinstance(other, ExtForm):
            return NotImplemented
        self._check(other)
        return ExtForm._make(self.dim, _accumulate(self.terms, other.terms, ONE))

    def __sub__(self, other):
        if not isinstance(other, ExtForm):
            return NotImplemented
        self._check(other)
        return ExtForm._make(self.dim, _accumulate(self.terms, other.terms, -ONE))

    def __neg__(self):
        return ExtForm._make(self.dim, {k: -c for k, c in self.terms.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, ExtForm):
            return NotImplemented
        s = gauss(scalar)
        if not s:
            return ExtForm.zero(self.dim)
        return ExtForm._make(self.dim, {k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (ONE / gauss(scalar))

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, ExtForm):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # grading ------------------------------------------------------------

    def degrees(self) -> set[int]:
        return {len(I_) + len(J_) for I_, J_ in self.terms}

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(len(I_), len(J_)) for I_, J_ in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError(f"form is not homogeneous (degrees {sorted(degs)})")
        return degs.pop() if degs else 0

    def component(self, k: int) -> "ExtForm":
        """The degree-``k`` part."""
        return ExtForm._make(self.dim, {key: c for key, c in self.terms.items() if len(key[0]) + len(key[1]) == k})

    def coefficient(self, I_=(), J_=()) -> GaussianRational:
        return self.terms.get((tuple(I_), tuple(J_)), ZERO)

    def __repr__(self):
        return f"ExtForm({self.dim}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (I_, J_), c in sorted(self.terms.items(), key=lambda kv: _key_order(kv[0])):
            mono = "^".join([f"dz{i}" for i in I_] + [f"dzb{j}" for j in J_]) or "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def _accumulate(a: Mapping, b: Mapping, scale) -> dict:
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, ZERO) + c * scale
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _key_order(key: Key):
    I_, J_ = key
    return (len(I_) + len(J_), -len(I_), I_, J_)


# --------------------------------------------------------------------------
# bases and signs


@lru_cache(maxsize=None)
def basis(n: int, k: int | None = None) -> tuple[Key, ...]:
    """Basis keys of degree ``k`` (all degrees when ``k`` is None), ordered by
    degree, then decreasing holomorphic degree, then lexicographically."""
    if k is None:
        return tuple(key for d in range(2 * n + 1) for key in basis(n, d))
    idx = range(1, n + 1)
    out = []
    for p in range(min(k, n), -1, -1):
        q = k - p
        if q > n:
            continue
        for I_ in combinations(idx, p):
            for J_ in combinations(idx, q):
                out.append((I_, J_))
    return tuple(out)


def _gens(n: int, key: Key) -> tuple[int, ...]:
    I_, J_ = key
    return tuple(i - 1 for i in I_) + tuple(n + j - 1 for j in J_)


@lru_cache(maxsize=None)
def _sort_gens(n: int, gens: tuple[int, ...]) -> tuple[int, Key]:
    """Sign of sorting ``gens`` into canonical order and the resulting key.
    Sign 0 when a generator repeats."""
    if len(set(gens)) != len(gens):
        return 0, ((), ())
    inversions = sum(1 for a in range(len(gens)) for b in range(a + 1, len(gens)) if gens[a] > gens[b])
    ordered = sorted(gens)
    key = (tuple(g + 1 for g in ordered if g < n), tuple(g - n + 1 for g in ordered if g >= n))
    return (-1) ** inversions, key


@lru_cache(maxsize=None)
def _wedge_basis(n: int, a: Key, b: Key) -> tuple[int, Key]:
    return _sort_gens(n, _gens(n, a) + _gens(n, b))


def _complement(idx: tuple[int, ...], n: int) -> tuple[int, ...]:
    s = set(idx)
    return tuple(i for i in range(1, n + 1) if i not in s)


# --------------------------------------------------------------------------
# algebra operations


def wedge(a: ExtForm, b: ExtForm) -> ExtForm:
    """Exterior product ``a ^ b``."""
    a._check(b)
    n = a.dim
    out: dict[Key, GaussianRational] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            sign, key = _wedge_basis(n, ka, kb)
            if not sign:
                continue
            v = out.get(key, ZERO) + (ca * cb if sign > 0 else -(ca * cb))
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return ExtForm._make(n, out)


@lru_cache(maxsize=None)
def _conj_basis(n: int, key: Key) -> tuple[int, Key]:
    # conj(dz_I ^ dzbar_J) = dzbar_I ^ dz_J
    I_, J_ = key
    return _sort_gens(n, tuple(n + i - 1 for i in I_) + tuple(j - 1 for j in J_))


def conj(a: ExtForm) -> ExtForm:
    """Complex conjugation (antilinear, sends dz_k to dzbar_k)."""
    n = a.dim
    out = {}
    for key, c in a.terms.items():
        sign, new = _conj_basis(n, key)
        out[new] = c.conjugate() * sign
    return ExtForm._make(n, out)


def _one_form_pairing(n: int, g: int, h: int) -> int:
    # bilinear extension of the real metric: <dz_k, dzbar_k> = 2, <dz_k, dz_l> = 0
    if g < n <= h or h < n <= g:
        return 2 if g % n == h % n else 0
    return 0


@lru_cache(maxsize=None)
def _bilinear_basis(n: int, a: Key, b: Key) -> int:
    """C-bilinear pairing ``<a, b>`` of two basis monomials: the determinant of
    the matrix of 1-form pairings."""
    ga, gb = _gens(n, a), _gens(n, b)
    if len(ga) != len(gb):
        return 0
    # each row has at most one nonzero entry, so the determinant is a
    # signed product over a matching
    perm = []
    value = 1
    for g in ga:
        hits = [(s, _one_form_pairing(n, g, h)) for s, h in enumerate(gb)]
        hits = [(s, v) for s, v in hits if v]
        if len(hits) != 1:
            return 0
        perm.append(hits[0][0])
        value *= hits[0][1]
    if len(set(perm)) != len(perm):
        return 0
    inversions = sum(1 for x in range(len(perm)) for y in range(x + 1, len(perm)) if perm[x] > perm[y])
    return value * (-1) ** inversions


@lru_cache(maxsize=None)
def _norm_sq(n: int, key: Key) -> int:
    # (a, a) = <a, conj a>; the monomial basis is orthogonal
    sign, ckey = _conj_basis(n, key)
    return sign * _bilinear_basis(n, key, ckey)


def inner(a: ExtForm, b: ExtForm) -> GaussianRational:
    """Hermitian inner product, linear in ``a`` and antilinear in ``b``."""
    a._check(b)
    total = ZERO
    for key, c in a.terms.items():
        d = b.terms.get(key)
        if d is not None:
            total = total + c * d.conjugate() * _norm_sq(a.dim, key)
    return total


@lru_cache(maxsize=None)
def _volume(n: int) -> ExtForm:
    # dx_k ^ dy_k = (i/2) dz_k ^ dzbar_k
    vol = ExtForm.one(n)
    for k in range(1, n + 1):
        vol = wedge(vol, ExtForm.monomial(n, (k,), (k,), I / 2))
    return vol


def volume_form(n: int) -> ExtForm:
    """The Riemannian volume form ``dx_1 ^ dy_1 ^ ... ^ dx_n ^ dy_n``."""
    return _volume(n)


@lru_cache(maxsize=None)
def kahler_form(n: int) -> ExtForm:
    """The standard fundamental form ``(i/2) sum_k dz_k ^ dzbar_k``."""
    out = ExtForm.zero(n)
    for k in range(1, n + 1):
        out = out + ExtForm.monomial(n, (k,), (k,), I / 2)
    return out


@lru_cache(maxsize=None)
def _star_basis(n: int, key: Key) -> tuple[GaussianRational, Key]:
    """``*key`` as ``coeff * key'``, solved from ``a ^ *key = <a, key> vol``."""
    I_, J_ = key
    top = (tuple(range(1, n + 1)), tuple(range(1, n + 1)))
    vol_coef = _volume(n).coefficient(*top)
    # the only basis monomial pairing nontrivially with key is (J, I); its
    # wedge-complement is where *key lives
    partner = (J_, I_)
    target = (_complement(J_, n), _complement(I_, n))
    pairing = _bilinear_basis(n, partner, key)
    sign, k2 = _wedge_basis(n, partner, target)
    assert sign and k2 == top and pairing
    return vol_coef * pairing / sign, target


def hodge_star(a: ExtForm) -> ExtForm:
    """C-linear Hodge star, mapping bidegree (p, q) to (n - q, n - p)."""
    n = a.dim
    out = {}
    for key, c in a.terms.items():
        coef, new = _star_basis(n, key)
        out[new] = c * coef
    return ExtForm._make(n, out)


def hodge_star_inverse(a: ExtForm) -> ExtForm:
    """Inverse of :func:`hodge_star`, computed from the basis table."""
    n = a.dim
    out = {}
    for (A, B), c in a.terms.items():
        src = (_complement(B, n), _complement(A, n))
        coef, tgt = _star_basis(n, src)
        assert tgt == (A, B)
        out[src] = c / coef
    return ExtForm._make(n, out)


def lefschetz_L(a: ExtForm) -> ExtForm:
    """``L(a) = omega ^ a``."""
    return wedge(kahler_form(a.dim), a)


def lefschetz_dual(a: ExtForm) -> ExtForm:
    """``Lambda = *^-1 L *``, the adjoint of ``L``."""
    return hodge_star_inverse(lefschetz_L(hodge_star(a)))


def counting_H(a: ExtForm) -> ExtForm:
    """Scale the degree-``k`` part by ``k - n``."""
    n = a.dim
    out = {}
    for key, c in a.terms.items():
        w = len(key[0]) + len(key[1]) - n
        if w:
            out[key] = c * w
    return ExtForm._make(n, out)


@lru_cache(maxsize=None)
def _contract_basis(n: int, k: int, bar: bool, key: Key) -> tuple[GaussianRational, Key] | None:
    # adjoint of e_k: (e_k a, b) = (a, i_k b) on the orthogonal monomial basis
    gen = (k - 1) + (n if bar else 0)
    gens = _gens(n, key)
    if gen not in gens:
        return None
    rest = tuple(g for g in gens if g != gen)
    _, src = _sort_gens(n, rest)
    sign, tgt = _sort_gens(n, (gen,) + rest)
    assert tgt == key
    # (e_k src, key) = sign * |key|^2, hence i_k key = sign * |key|^2 / |src|^2 * src
    return GaussianRational(Fraction(sign * _norm_sq(n, key), _norm_sq(n, src))), src


def creation(a: ExtForm, k: int, bar: bool = False) -> ExtForm:
    """``e_k(a) = dz_k ^ a`` (or ``dzbar_k ^ a`` when ``bar``)."""
    n = a.dim
    if not 1 <= k <= n:
        raise ValueError(f"index {k} out of range 1..{n}")
    gen = ExtForm.dzbar(n, k) if bar else ExtForm.dz(n, k)
    return wedge(gen, a)


def annihilation(a: ExtForm, k: int, bar: bool = False) -> ExtForm:
    """Pointwise adjoint of :func:`creation` under :func:`inner`."""
    n = a.dim
    if not 1 <= k <= n:
        raise ValueError(f"index {k} out of range 1..{n}")
    out: dict[Key, GaussianRational] = {}
    for key, c in a.terms.items():
        hit = _contract_basis(n, k, bar, key)
        if hit is not None:
            coef, src = hit
            out[src] = c * coef
    return ExtForm._make(n, out)


def anticommutation_failures(n: int) -> list[str]:
    """Check ``e i' + i' e`` for every creation ``e`` and annihilation ``i'`` on every basis monomial.

    The anticommutator is ``2`` when both refer to the same generator
    (``e_k`` with ``i_k``, or ``ebar_k`` with ``ibar_k``) and ``0`` otherwise.
    Returns a description of each failure.
    """
    out = []
    for key in basis(n):
        a = ExtForm._make(n, {key: ONE})
        for k in range(1, n + 1):
            for bar_e in (False, True):
                for l in range(1, n + 1):
                    for bar_i in (False, True):
                        got = creation(annihilation(a, l, bar_i), k, bar_e) + annihilation(creation(a, k, bar_e), l, bar_i)
                        want = a * 2 if (k, bar_e) == (l, bar_i) else ExtForm.zero(n)
                        if got != want:
                            e = ("ebar" if bar_e else "e") + str(k)
                            i = ("ibar" if bar_i else "i") + str(l)
                            out.append(f"{e}{i}+{i}{e} on {key}")
    return out


# --------------------------------------------------------------------------
# linear-algebra views


def operator_matrix(op: Callable[[ExtForm], ExtForm], n: int, k_in: int, k_out: int):
    """Matrix (rows indexed by ``basis(n, k_out)``) of ``op`` on degree ``k_in``."""
    src = basis(n, k_in)
    dst = basis(n, k_out)
    index = {key: r for r, key in enumerate(dst)}
    M = [[ZERO] * len(src) for _ in dst]
    for col, key in enumerate(src):
        image = op(ExtForm._make(n, {key: ONE}))
        for k2, c in image.terms.items():
            if k2 not in index:
                raise ValueError(f"operator left degree {k_out}")
            M[index[k2]][col] = c
    return M


def _vector(a: ExtForm, k: int) -> list[GaussianRational]:
    return [a.terms.get(key, ZERO) for key in basis(a.dim, k)]


def _from_vector(n: int, k: int, v) -> ExtForm:
    return ExtForm._make(n, {key: c for key, c in zip(basis(n, k), v) if c})


@lru_cache(maxsize=None)
def _primitive_basis(n: int, d: int) -> tuple[ExtForm, ...]:
    """Basis of the primitive forms ``P^d = ker(Lambda)`` in degree ``d``."""
    if d < 0 or d > 2 * n:
        return ()
    size = len(basis(n, d))
    if d < 2:
        return tuple(_from_vector(n, d, v) for v in _identity_rows(size))
    M = operator_matrix(lefschetz_dual, n, d, d - 2)
    return tuple(_from_vector(n, d, v) for v in kernel_basis(M, size))


def _identity_rows(size):
    return [[ONE if i == j else ZERO for j in range(size)] for i in range(size)]


def _power(op, a, j):
    for _ in range(j):
        a = op(a)
    return a


def primitive_decompose(a: ExtForm) -> list[tuple[int, ExtForm]]:
    """Lefschetz decomposition ``a = sum_j L^j beta_j`` with ``beta_j`` primitive.

    Only nonzero components are returned, sorted by ``j``.  The coefficients
    are found by solving one exact linear system against the spanning set
    ``{L^j p : p in basis(P^{k-2j})}``, which is a basis of degree ``k``.
    """
    if not a.is_homogeneous():
        raise ValueError("primitive_decompose needs a homogeneous form")
    n, k = a.dim, a.degree
    if not a:
        return []
    columns = []  # (j, primitive basis element, L^j of it as a vector)
    # L^j is injective on P^d exactly when d + j <= n, and zero beyond
    for j in range(max(0, k - n), k // 2 + 1):
        for p in _primitive_basis(n, k - 2 * j):
            columns.append((j, p, _vector(_power(lefschetz_L, p, j), k)))
    size = len(basis(n, k))
    if len(columns) != size:
        raise ArithmeticError(f"Lefschetz spanning set has {len(columns)} vectors, expected {size}")
    M = [[col[2][r] for col in columns] for r in range(size)]
    x = solve(M, _vector(a, k))
    parts: dict[int, ExtForm] = {}
    for coeff, (j, p, _) in zip(x, columns):
        if coeff:
            parts[j] = parts.get(j, ExtForm.zero(n)) + p * coeff
    return sorted((j, b) for j, b in parts.items() if b)


# --------------------------------------------------------------------------
# sl(2) and hard Lefschetz


@dataclass
class SL2Report:
    n: int
    checked: int
    failures: dict[str, list[Key]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not any(self.failures.values())

    def relation_passed(self, name: str) -> bool:
        return not self.failures.get(name)


SL2_RELATIONS = ("[H,L]=2L", "[H,Lambda]=-2Lambda", "[L,Lambda]=H")


def verify_sl2(n: int) -> SL2Report:
    """Check the three sl(2) commutation relations on every basis monomial."""
    if n < 1:
        raise ValueError("n must be at least 1")
    L, Lam, H = lefschetz_L, lefschetz_dual, counting_H
    report = SL2Report(n=n, checked=0, failures={name: [] for name in SL2_RELATIONS})
    for key in basis(n):
        a = ExtForm._make(n, {key: ONE})
        La, Λa, Ha = L(a), Lam(a), H(a)
        checks = {
            "[H,L]=2L": H(La) - L(Ha) == La * 2,
            "[H,Lambda]=-2Lambda": H(Λa) - Lam(Ha) == Λa * (-2),
            "[L,Lambda]=H": L(Λa) - Lam(La) == Ha,
        }
        for name, ok in checks.items():
            if not ok:
                report.failures[name].append(key)
        report.checked += 1
    return report


def hard_lefschetz_check(n: int, k: int) -> bool:
    """Whether ``L^(n-k)`` maps degree ``k`` bijectively onto degree ``2n - k``."""
    if k > n or k < 0:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    dim_k = comb(2 * n, k)
    if dim_k != comb(2 * n, 2 * n - k):
        return False
    M = operator_matrix(lambda a: _power(lefschetz_L, a, n - k), n, k, 2 * n - k)
    return rank(M) == dim_k
