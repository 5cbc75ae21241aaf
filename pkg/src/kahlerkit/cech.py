"""Cech cohomology of sheaf data on a finite cover.

A cover is given abstractly by its nerve (the index tuples whose
intersections are nonempty) plus, per tuple, the dimension of the section
space and, per codimension-one face, a restriction matrix.  Nothing here can
check that the cover is *good* (contractible intersections); when comparing
with the cohomology of a space that is the caller's responsibility.

Cochains of degree ``k`` are ordered lexicographically by their strictly
increasing index tuples, and blocks within a tuple by section coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .linear import ONE, ZERO, GaussianRational, cochain_groups, gauss, mat_mul, rank

Simplex = tuple[int, ...]

__all__ = [
    "InconsistentSheafData",
    "Nerve",
    "SheafData",
    "CechComplex",
    "coboundary",
    "cohomology_dims",
    "constant_sheaf_complex",
    "integer_cohomology",
    "barycentric_subdivision",
    "triangle_boundary",
    "minimal_torus",
    "minimal_rp2",
    "load_document",
]


class InconsistentSheafData(ValueError):
    """Sheaf data that cannot define a cochain complex on the given nerve."""


class Nerve:
    """Downward-closed family of strictly increasing index tuples."""

    def __init__(self, simplices: Iterable[Sequence[int]], size: int | None = None):
        found: set[Simplex] = set()
        for s in simplices:
            t = tuple(int(x) for x in s)
            if not t:
                raise ValueError("empty tuple in nerve")
            if list(t) != sorted(set(t)):
                raise ValueError(f"indices must be strictly increasing: {t}")
            found.add(t)
        for t in found:
            for face in _faces(t):
                if face not in found:
                    raise ValueError(f"nerve is not downward closed: {face} missing below {t}")
        vertices = sorted({x for t in found for x in t})
        if vertices and vertices[0] < 0:
            raise ValueError("indices must be nonnegative")
        self.size = size if size is not None else (vertices[-1] + 1 if vertices else 0)
        if vertices and vertices[-1] >= self.size:
            raise ValueError("index exceeds cover size")
        top = max((len(t) for t in found), default=0)
        self.simplices: list[list[Simplex]] = [sorted(t for t in found if len(t) == k + 1) for k in range(top)]

    @classmethod
    def from_facets(cls, facets: Iterable[Sequence[int]], size: int | None = None) -> "Nerve":
        """Close a list of maximal tuples downward."""
        out: set[Simplex] = set()
        for f in facets:
            f = tuple(sorted(set(int(x) for x in f)))
            for r in range(1, len(f) + 1):
                out.update(combinations(f, r))
        return cls(out, size)

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def __getitem__(self, k: int) -> list[Simplex]:
        return self.simplices[k] if 0 <= k < len(self.simplices) else []

    def all_simplices(self) -> list[Simplex]:
        return [s for level in self.simplices for s in level]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(level) for k, level in enumerate(self.simplices))

    def __repr__(self):
        return f"Nerve(size={self.size}, counts={[len(level) for level in self.simplices]})"


def _faces(t: Simplex) -> list[Simplex]:
    if len(t) == 1:
        return []
    return [t[:j] + t[j + 1:] for j in range(len(t))]


@dataclass
class SheafData:
    """Section dimensions per tuple and restriction matrices per face inclusion.

    ``restrictions[(simplex, face)]`` maps sections over ``face`` (the larger
    open set) to sections over ``simplex``: ``dims[simplex]`` rows and
    ``dims[face]`` columns.
    """

    dims: dict[Simplex, int]
    restrictions: dict[tuple[Simplex, Simplex], list[list[GaussianRational]]] = field(default_factory=dict)


class CechComplex:
    """The Cech cochain complex of ``sheaf`` over ``nerve``.

    Construction assembles every coboundary matrix and verifies that
    consecutive coboundaries compose to zero.
    """

    def __init__(self, nerve: Nerve, sheaf: SheafData):
        self.nerve = nerve
        self.sheaf = sheaf
        for s in nerve.all_simplices():
            dim = sheaf.dims.get(s)
            if dim is None or dim < 0:
                raise InconsistentSheafData(f"missing or negative dimension for {s}")
        self._offsets = []
        for level in nerve.simplices:
            off, pos = {}, 0
            for s in level:
                off[s] = pos
                pos += sheaf.dims[s]
            self._offsets.append((off, pos))
        self._deltas = [self._assemble(k) for k in range(max(nerve.dimension, 0))]
        for k in range(len(self._deltas) - 1):
            prod = mat_mul(self._deltas[k + 1], self._deltas[k])
            if any(x for row in prod for x in row):
                raise InconsistentSheafData(
                    f"delta^{k + 1} o delta^{k} != 0: restriction maps do not compose consistently"
                )

    def cochain_dim(self, k: int) -> int:
        return self._offsets[k][1] if 0 <= k < len(self._offsets) else 0

    def _assemble(self, k: int):
        src_off, src_dim = self._offsets[k]
        dst_off, dst_dim = self._offsets[k + 1]
        M = [[ZERO] * src_dim for _ in range(dst_dim)]
        for tau in self.nerve[k + 1]:
            for j, face in enumerate(_faces(tau)):
                block = self.sheaf.restrictions.get((tau, face))
                rows, cols = self.sheaf.dims[tau], self.sheaf.dims[face]
                if block is None:
                    if rows and cols:
                        raise InconsistentSheafData(f"missing restriction {face} -> {tau}")
                    continue
                if len(block) != rows or any(len(r) != cols for r in block):
                    raise InconsistentSheafData(f"restriction {face} -> {tau} should be {rows}x{cols}")
                sign = -1 if j % 2 else 1
                r0, c0 = dst_off[tau], src_off[face]
                for r in range(rows):
                    for c in range(cols):
                        x = block[r][c]
                        if x:
                            M[r0 + r][c0 + c] = M[r0 + r][c0 + c] + (x if sign > 0 else -x)
        return M

    def coboundary(self, k: int):
        """Matrix of ``delta^k : C^k -> C^{k+1}`` (list of rows)."""
        if k < 0:
            raise ValueError("degree must be nonnegative")
        if k < len(self._deltas):
            return [list(r) for r in self._deltas[k]]
        return [[] for _ in range(self.cochain_dim(k + 1))]


def coboundary(c: CechComplex, k: int):
    return c.coboundary(k)


def cohomology_dims(c: CechComplex) -> list[int]:
    """``dim H^k = dim ker delta^k - rank delta^{k-1}`` for each degree with cochains."""
    top = c.nerve.dimension
    ranks = [rank(c._deltas[k]) if k < len(c._deltas) else 0 for k in range(top + 1)]
    return [c.cochain_dim(k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(top + 1)]


def constant_sheaf_complex(nerve: Nerve, rank_: int = 1) -> CechComplex:
    """Locally constant sheaf of the given rank: identity restrictions everywhere."""
    if rank_ < 0:
        raise ValueError("rank must be nonnegative")
    ident = [[ONE if i == j else ZERO for j in range(rank_)] for i in range(rank_)]
    dims = {s: rank_ for s in nerve.all_simplices()}
    restrictions = {(t, f): ident for t in nerve.all_simplices() for f in _faces(t)}
    return CechComplex(nerve, SheafData(dims, restrictions))


def _integer_coboundaries(nerve: Nerve) -> list[list[list[int]]]:
    maps = []
    for k in range(nerve.dimension):
        index = {s: i for i, s in enumerate(nerve[k])}
        M = [[0] * len(nerve[k]) for _ in nerve[k + 1]]
        for r, tau in enumerate(nerve[k + 1]):
            for j, face in enumerate(_faces(tau)):
                M[r][index[face]] += (-1) ** j
        maps.append(M)
    return maps


def integer_cohomology(nerve: Nerve) -> list[tuple[int, list[int]]]:
    """Cohomology with Z coefficients as ``(free_rank, torsion_factors)`` per degree."""
    dims = [len(level) for level in nerve.simplices]
    return cochain_groups(dims, _integer_coboundaries(nerve))


def barycentric_subdivision(nerve: Nerve) -> Nerve:
    """Nerve of the barycentric subdivision: vertices are simplices, tuples are flags."""
    labels = {s: i for i, s in enumerate(nerve.all_simplices())}
    # every flag refines to a full one growing by one vertex per step
    flags: list[Simplex] = []

    def extend(chain: list[Simplex]):
        last = chain[-1]
        bigger = [s for s in nerve[len(last)] if set(last) < set(s)]
        if not bigger:
            flags.append(tuple(labels[s] for s in chain))
        for s in bigger:
            extend(chain + [s])

    for v in nerve[0]:
        extend([v])
    return Nerve.from_facets(flags, len(labels))


# --------------------------------------------------------------------------
# standard nerves


def triangle_boundary() -> Nerve:
    """Nerve of a cover of the circle by three arcs."""
    return Nerve.from_facets([(0, 1), (1, 2), (0, 2)])


def minimal_torus() -> Nerve:
    """The 7-vertex triangulation of the torus (vertex-star cover nerve)."""
    facets = []
    for i in range(7):
        facets.append((i, (i + 1) % 7, (i + 3) % 7))
        facets.append((i, (i + 2) % 7, (i + 3) % 7))
    return Nerve.from_facets(facets)


def minimal_rp2() -> Nerve:
    """The 6-vertex triangulation of the real projective plane."""
    facets = [
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
        (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
    ]
    return Nerve.from_facets(facets)


# --------------------------------------------------------------------------
# input documents


def _parse_tuple(x) -> Simplex:
    if isinstance(x, str):
        return tuple(int(p) for p in x.replace("(", "").replace(")", "").split(",") if p.strip())
    return tuple(int(p) for p in x)


def load_document(doc: Mapping | str | Path) -> tuple[Nerve, CechComplex]:
    """Build a complex from a JSON document (or path to one).

    Fields: ``nerve`` (list of tuples, closed downward automatically),
    optional ``size``; then either ``constant: <rank>`` or ``dims`` (object
    mapping ``"i,j,..."`` to a dimension) plus ``restrictions`` (list of
    ``{"simplex": [...], "face": [...], "matrix": [[...], ...]}``).  Matrix
    entries may be integers or strings such as ``"1/2"`` or ``"2-i"``.
    """
    if isinstance(doc, (str, Path)):
        doc = json.loads(Path(doc).read_text())
    if "nerve" not in doc:
        raise ValueError("document needs a 'nerve' field")
    nerve = Nerve.from_facets([_parse_tuple(t) for t in doc["nerve"]], doc.get("size"))
    if "constant" in doc:
        return nerve, constant_sheaf_complex(nerve, int(doc["constant"]))
    if "dims" not in doc:
        raise ValueError("document needs either 'constant' or 'dims'")
    dims = {_parse_tuple(k): int(v) for k, v in doc["dims"].items()}
    restrictions = {}
    for entry in doc.get("restrictions", []):
        key = (_parse_tuple(entry["simplex"]), _parse_tuple(entry["face"]))
        restrictions[key] = [[gauss(x) for x in row] for row in entry["matrix"]]
    return nerve, CechComplex(nerve, SheafData(dims, restrictions))
