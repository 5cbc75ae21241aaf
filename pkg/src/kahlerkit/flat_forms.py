"""(p, q)-forms with polynomial coefficients on flat C^n.

A :class:`PolyForm` is a finite sum of terms ``c * z^a * zbar^b * dz_I ^ dzbar_J``
stored under the key ``(a, b, (I, J))``.  Pointwise operators (star, L,
Lambda, the creation/annihilation operators) act on the exterior factor
only; ``del`` and ``delbar`` differentiate the polynomial factor.

Formal adjoints are computed two ways: through the Hodge star
(``del* = -* delbar *``) and through the operator algebra
(``del* = -sum_k dbar_k i_k``), which lets the test-suite compare them.
The L^2 pairing is never integrated; on flat space the adjoint of ``d/dz_k``
is ``-d/dzbar_k`` and that rule is used directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Iterator, Mapping

from . import exterior as ext
from .exterior import ExtForm, Key
from .linear import ONE, ZERO, GaussianRational, I, gauss

Exps = tuple[int, ...]
TermKey = tuple[Exps, Exps, Key]

__all__ = [
    "PolyForm",
    "del_",
    "delbar",
    "d",
    "del_star",
    "delbar_star",
    "d_star",
    "del_star_algebraic",
    "delbar_star_algebraic",
    "laplacians",
    "creation_annihilation",
    "lift",
    "L",
    "Lambda",
    "H",
    "star",
    "KahlerReport",
    "kahler_identity_check",
    "monomial_forms",
]


class PolyForm:
    """A differential form on C^n with polynomial coefficients in z, zbar."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[TermKey, object] | None = None):
        clean: dict[TermKey, GaussianRational] = {}
        for (a, b, key), c in (terms or {}).items():
            a, b = tuple(a), tuple(b)
            if len(a) != dim or len(b) != dim or min(a + b, default=0) < 0:
                raise ValueError(f"bad exponent vectors {a}, {b} for dimension {dim}")
            ExtForm(dim, {key: 1})  # validates the multi-indices
            c = gauss(c)
            if c:
                clean[(a, b, (tuple(key[0]), tuple(key[1])))] = c
        self.dim = dim
        self.terms = clean

    @classmethod
    def _make(cls, dim: int, terms: dict) -> "PolyForm":
        obj = object.__new__(cls)
        obj.dim = dim
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, n: int) -> "PolyForm":
        return cls._make(n, {})

    @classmethod
    def monomial(cls, n: int, z_exp: Iterable[int] = None, zbar_exp: Iterable[int] = None,
                 I_: Iterable[int] = (), J_: Iterable[int] = (), coeff=1) -> "PolyForm":
        """``coeff * z^z_exp * zbar^zbar_exp * dz_I ^ dzbar_J``."""
        a = tuple(z_exp) if z_exp is not None else (0,) * n
        b = tuple(zbar_exp) if zbar_exp is not None else (0,) * n
        form = ExtForm.monomial(n, I_, J_, coeff)
        return cls(n, {(a, b, key): c for key, c in form.terms.items()})

    @classmethod
    def from_ext(cls, form: ExtForm) -> "PolyForm":
        """Constant-coefficient form."""
        zero = (0,) * form.dim
        return cls._make(form.dim, {(zero, zero, key): c for key, c in form.terms.items()})

    @classmethod
    def coordinate(cls, n: int, k: int, bar: bool = False) -> "PolyForm":
        """The function ``z_k`` (or ``zbar_k``)."""
        e = tuple(int(i == k - 1) for i in range(n))
        zero = (0,) * n
        return cls.monomial(n, zero if bar else e, e if bar else zero)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        _same_dim(self, other)
        return PolyForm._make(self.dim, _combine(self.terms, other.terms, ONE))

    def __sub__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        _same_dim(self, other)
        return PolyForm._make(self.dim, _combine(self.terms, other.terms, -ONE))

    def __neg__(self):
        return PolyForm._make(self.dim, {k: -c for k, c in self.terms.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, (PolyForm, ExtForm)):
            return NotImplemented
        s = gauss(scalar)
        if not s:
            return PolyForm.zero(self.dim)
        return PolyForm._make(self.dim, {k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(len(k[0]), len(k[1])) for _, _, k in self.terms}

    def __repr__(self):
        return f"PolyForm({self.dim}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b, (I_, J_)), c in sorted(self.terms.items()):
            poly = "*".join(
                [f"z{i + 1}^{e}" if e > 1 else f"z{i + 1}" for i, e in enumerate(a) if e]
                + [f"zb{i + 1}^{e}" if e > 1 else f"zb{i + 1}" for i, e in enumerate(b) if e]
            )
            mono = "^".join([f"dz{i}" for i in I_] + [f"dzb{j}" for j in J_])
            body = "*".join(x for x in (poly, mono) if x) or "1"
            parts.append(f"({c})*{body}")
        return " + ".join(parts)


def _same_dim(a: PolyForm, b: PolyForm):
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def _combine(a: Mapping, b: Mapping, scale) -> dict:
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, ZERO) + c * scale
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _add_into(out: dict, key, value):
    v = out.get(key)
    v = value if v is None else v + value
    if v:
        out[key] = v
    else:
        out.pop(key, None)


# --------------------------------------------------------------------------
# pointwise operators, lifted from the exterior module


def lift(op: Callable[[ExtForm], ExtForm]) -> Callable[[PolyForm], PolyForm]:
    """Apply a C-linear pointwise operator to the exterior factor of each term."""
    table: dict[tuple[int, Key], tuple] = {}

    def lifted(a: PolyForm) -> PolyForm:
        n = a.dim
        out: dict = {}
        for (za, zb, key), c in a.terms.items():
            image = table.get((n, key))
            if image is None:
                image = tuple(op(ExtForm._make(n, {key: ONE})).terms.items())
                table[(n, key)] = image
            for k2, c2 in image:
                _add_into(out, (za, zb, k2), c * c2)
        return PolyForm._make(n, out)

    lifted.__name__ = getattr(op, "__name__", "lifted")
    return lifted


star = lift(ext.hodge_star)
star_inverse = lift(ext.hodge_star_inverse)
L = lift(ext.lefschetz_L)
Lambda = lift(ext.lefschetz_dual)
H = lift(ext.counting_H)


@lru_cache(maxsize=None)
def _creation_op(k: int, bar: bool):
    return lift(lambda f: ext.creation(f, k, bar))


@lru_cache(maxsize=None)
def _annihilation_op(k: int, bar: bool):
    return lift(lambda f: ext.annihilation(f, k, bar))


_WHICH = {"e": (False, False), "ebar": (True, False), "i": (False, True), "ibar": (True, True)}


def creation_annihilation(k: int, which: str, a: PolyForm) -> PolyForm:
    """``e_k``, ``ebar_k`` (wedge with dz_k, dzbar_k) or their adjoints ``i_k``, ``ibar_k``."""
    if which not in _WHICH:
        raise ValueError(f"which must be one of {sorted(_WHICH)}")
    if not 1 <= k <= a.dim:
        raise ValueError(f"index {k} out of range 1..{a.dim}")
    bar, adjoint = _WHICH[which]
    op = _annihilation_op(k, bar) if adjoint else _creation_op(k, bar)
    return op(a)


# --------------------------------------------------------------------------
# coefficient derivatives and the Dolbeault operators


def partial(a: PolyForm, k: int, bar: bool = False) -> PolyForm:
    """Differentiate coefficients by ``z_k`` (or ``zbar_k``); the form part is untouched."""
    out: dict = {}
    idx = k - 1
    for (za, zb, key), c in a.terms.items():
        exps = zb if bar else za
        e = exps[idx]
        if not e:
            continue
        lowered = exps[:idx] + (e - 1,) + exps[idx + 1:]
        new = (za, lowered, key) if bar else (lowered, zb, key)
        _add_into(out, new, c * e)
    return PolyForm._make(a.dim, out)


def del_(a: PolyForm) -> PolyForm:
    """``del = sum_k e_k d/dz_k``; raises bidegree by (1, 0)."""
    out = PolyForm.zero(a.dim)
    for k in range(1, a.dim + 1):
        out = out + _creation_op(k, False)(partial(a, k))
    return out


def delbar(a: PolyForm) -> PolyForm:
    """``delbar = sum_k ebar_k d/dzbar_k``; raises bidegree by (0, 1)."""
    out = PolyForm.zero(a.dim)
    for k in range(1, a.dim + 1):
        out = out + _creation_op(k, True)(partial(a, k, bar=True))
    return out


def d(a: PolyForm) -> PolyForm:
    return del_(a) + delbar(a)


def del_star(a: PolyForm) -> PolyForm:
    """``del* = -* delbar *``."""
    return -star(delbar(star(a)))


def delbar_star(a: PolyForm) -> PolyForm:
    """``delbar* = -* del *``."""
    return -star(del_(star(a)))


def d_star(a: PolyForm) -> PolyForm:
    """``d* = -* d *`` (real dimension is even)."""
    return -star(d(star(a)))


def del_star_algebraic(a: PolyForm) -> PolyForm:
    """``del* = -sum_k d/dzbar_k i_k``, from the adjoint rule for coefficient derivatives."""
    out = PolyForm.zero(a.dim)
    for k in range(1, a.dim + 1):
        out = out - partial(_annihilation_op(k, False)(a), k, bar=True)
    return out


def delbar_star_algebraic(a: PolyForm) -> PolyForm:
    """``delbar* = -sum_k d/dz_k ibar_k``."""
    out = PolyForm.zero(a.dim)
    for k in range(1, a.dim + 1):
        out = out - partial(_annihilation_op(k, True)(a), k)
    return out


def laplacians(a: PolyForm) -> tuple[PolyForm, PolyForm, PolyForm]:
    """``(Delta, Delta_del, Delta_delbar)`` with ``Delta = d d* + d* d``,
    ``Delta_del = del del* + del* del`` and likewise for delbar."""
    full = d(d_star(a)) + d_star(d(a))
    holo = del_(del_star(a)) + del_star(del_(a))
    anti = delbar(delbar_star(a)) + delbar_star(delbar(a))
    return full, holo, anti


# --------------------------------------------------------------------------
# Kahler identities


def _commutator(A, B):
    return lambda a: A(B(a)) - B(A(a))


KAHLER_IDENTITIES = (
    "[L,del]=0",
    "[L,delbar]=0",
    "[Lambda,del*]=0",
    "[Lambda,delbar*]=0",
    "[Lambda,delbar]=-i del*",
    "[Lambda,del]=i delbar*",
    "[delbar*,L]=i del",
    "[del*,L]=-i delbar",
)


@dataclass
class KahlerReport:
    form: PolyForm
    identities: dict[str, bool] = field(default_factory=dict)
    laplacian_relation: bool = True

    @property
    def passed(self) -> bool:
        return all(self.identities.values()) and self.laplacian_relation

    def failures(self) -> list[str]:
        bad = [name for name, ok in self.identities.items() if not ok]
        if not self.laplacian_relation:
            bad.append("Delta=2Delta_del=2Delta_delbar")
        return bad


def kahler_identity_check(a: PolyForm, laplacian: bool = True) -> KahlerReport:
    """Evaluate both sides of every Kahler identity on ``a`` exactly."""
    zero = PolyForm.zero(a.dim)
    lhs_rhs = {
        "[L,del]=0": (_commutator(L, del_)(a), zero),
        "[L,delbar]=0": (_commutator(L, delbar)(a), zero),
        "[Lambda,del*]=0": (_commutator(Lambda, del_star)(a), zero),
        "[Lambda,delbar*]=0": (_commutator(Lambda, delbar_star)(a), zero),
        "[Lambda,delbar]=-i del*": (_commutator(Lambda, delbar)(a), del_star(a) * (-I)),
        "[Lambda,del]=i delbar*": (_commutator(Lambda, del_)(a), delbar_star(a) * I),
        "[delbar*,L]=i del": (_commutator(delbar_star, L)(a), del_(a) * I),
        "[del*,L]=-i delbar": (_commutator(del_star, L)(a), delbar(a) * (-I)),
    }
    report = KahlerReport(form=a, identities={name: lhs == rhs for name, (lhs, rhs) in lhs_rhs.items()})
    if laplacian:
        full, holo, anti = laplacians(a)
        report.laplacian_relation = full == holo * 2 and full == anti * 2
    return report


def _exponent_vectors(n: int, max_degree: int) -> Iterator[tuple[Exps, Exps]]:
    for total in range(max_degree + 1):
        for exps in product(range(total + 1), repeat=2 * n):
            if sum(exps) == total:
                yield exps[:n], exps[n:]


def monomial_forms(n: int, max_degree: int) -> Iterator[PolyForm]:
    """Every ``z^a zbar^b dz_I ^ dzbar_J`` with ``|a| + |b| <= max_degree``."""
    for a, b in _exponent_vectors(n, max_degree):
        for key in ext.basis(n):
            yield PolyForm._make(n, {(a, b, key): ONE})
