"""Exact sparse linear algebra over the rationals.

Scalars are Python ``int`` or ``fractions.Fraction``; both are exact and
compare/multiply freely.  Matrices are immutable sparse maps
``(row, col) -> nonzero scalar``.  Rank, kernel and image are computed by
fraction-free integer elimination: every row is scaled to a primitive
integer vector and row operations ``r <- p*r - q*pivot`` are followed by
dividing out the row content, which keeps coefficients small.

Pivoting is deterministic: rows are inserted in index order and each row
is reduced against existing pivots by increasing column index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Scalar = "int | Fraction"
Vector = Dict[int, object]  # sparse: index -> nonzero scalar


class LinAlgError(ValueError):
    pass


class CompositionNonzero(LinAlgError):
    """Raised when two maps that should compose to zero do not."""


class NotASubcomplex(LinAlgError):
    pass


def _canon(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _clean(vec: Mapping[int, object]) -> Vector:
    return {k: _canon(v) for k, v in vec.items() if v != 0}


@dataclass(frozen=True, eq=False)
class RatMatrix:
    """Immutable sparse matrix over Q."""

    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], object] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry {(r, c)} outside {self.rows}x{self.cols}")
            if v != 0:
                clean[(r, c)] = _canon(v)
        object.__setattr__(self, "entries", clean)

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]], cols: Optional[int] = None) -> "RatMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        ent = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise LinAlgError("ragged dense matrix")
            for j, v in enumerate(row):
                if v != 0:
                    ent[(i, j)] = Fraction(v)
        return cls(rows, cols, ent)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, object]]) -> "RatMatrix":
        ent = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v != 0:
                    ent[(i, j)] = v
        return cls(rows, len(columns), ent)

    @classmethod
    def from_rows(cls, cols: int, rows: Sequence[Mapping[int, object]]) -> "RatMatrix":
        ent = {}
        for i, row in enumerate(rows):
            for j, v in row.items():
                if v != 0:
                    ent[(i, j)] = v
        return cls(len(rows), cols, ent)

    # -- views -------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def nnz(self) -> int:
        return len(self.entries)

    def row_dicts(self) -> List[Vector]:
        out: List[Vector] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def col_dicts(self) -> List[Vector]:
        out: List[Vector] = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def to_dense(self) -> List[List[object]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    # -- arithmetic --------------------------------------------------------

    def apply(self, vec: Mapping[int, object]) -> Vector:
        cols = self._cols_cache()
        out: Dict[int, object] = {}
        for j, x in vec.items():
            if x == 0:
                continue
            for i, v in cols[j].items():
                out[i] = out.get(i, 0) + v * x
        return _clean(out)

    def _cols_cache(self) -> List[Vector]:
        cache = self.__dict__.get("_cols")
        if cache is None:
            cache = self.col_dicts()
            object.__setattr__(self, "_cols", cache)
        return cache

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise LinAlgError(f"shape mismatch {self.shape} @ {other.shape}")
        ent: Dict[Tuple[int, int], object] = {}
        for j, col in enumerate(other._cols_cache()):
            for i, v in self.apply(col).items():
                ent[(i, j)] = v
        return RatMatrix(self.rows, other.cols, ent)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise LinAlgError("shape mismatch")
        ent = dict(self.entries)
        for k, v in other.entries.items():
            ent[k] = ent.get(k, 0) + v
        return RatMatrix(self.rows, self.cols, ent)

    def scale(self, c) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, {k: v * c for k, v in self.entries.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)


# ---------------------------------------------------------------------------
# integer elimination


def _primitive(vec: Mapping[int, object]) -> Dict[int, int]:
    """Scale a rational vector to a primitive integer vector, leading entry > 0."""
    if not vec:
        return {}
    den = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    if den == 1:
        ivec = {k: int(v) for k, v in vec.items()}
    else:
        ivec = {k: int(v * den) for k, v in vec.items()}
    g = reduce(gcd, ivec.values())
    lead = ivec[min(ivec)]
    if lead < 0:
        g = -g
    if g != 1:
        ivec = {k: v // g for k, v in ivec.items()}
    return ivec


class _Echelon:
    """Incremental row echelon form over Z with optional combination tracking.

    Each stored row has a distinct leading column.  When ``track`` is set
    every stored row also carries its expression ``{input_index: coeff}``
    in terms of the inserted vectors, scaled consistently.
    """

    __slots__ = ("pivots", "track", "combos")

    def __init__(self, track: bool = False):
        self.pivots: Dict[int, Dict[int, int]] = {}
        self.track = track
        self.combos: Dict[int, Dict[int, Fraction]] = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, vec: Mapping[int, object], combo: Optional[Dict[int, object]] = None):
        """Reduce ``vec`` against the stored rows.

        Returns ``(remainder, scale, combo)`` where ``scale * vec - sum(...)``
        equals the remainder; ``combo`` tracks the same relation when asked.
        """
        row = _primitive(vec)
        # track row = mult * vec + combination of stored rows
        mult = Fraction(1)
        if row:
            k0 = next(iter(row))
            mult = Fraction(row[k0]) / Fraction(vec[k0])
        if self.track:
            combo = {k: v * mult for k, v in (combo or {}).items()}
        pivots = self.pivots
        done = -1
        while row:
            cands = [c for c in row if c > done and c in pivots]
            if not cands:
                break
            c = min(cands)
            prow = pivots[c]
            p = prow[c]
            q = row[c]
            g = gcd(p, q)
            a, b = p // g, q // g
            new = {k: a * v for k, v in row.items()} if a != 1 else dict(row)
            for k, v in prow.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            if self.track:
                pc = self.combos[c]
                combo = {k: a * v for k, v in combo.items()}
                for k, v in pc.items():
                    nv = combo.get(k, 0) - b * v
                    if nv:
                        combo[k] = nv
                    else:
                        combo.pop(k, None)
            mult *= a
            if new:
                cg = reduce(gcd, new.values())
                if cg != 1:
                    new = {k: v // cg for k, v in new.items()}
                    mult /= cg
                    if self.track:
                        combo = {k: v / cg for k, v in combo.items()}
            row = new
            done = c
        return row, mult, combo

    def insert(self, vec: Mapping[int, object], tag: Optional[int] = None) -> bool:
        """Insert a vector; returns True when it was independent."""
        combo = {tag: Fraction(1)} if self.track else None
        row, _, combo = self.reduce(vec, combo)
        if not row:
            return False
        lead = min(row)
        if row[lead] < 0:
            row = {k: -v for k, v in row.items()}
            if self.track:
                combo = {k: -v for k, v in combo.items()}
        self.pivots[lead] = row
        if self.track:
            self.combos[lead] = combo
        return True


def _components(rows: List[Vector]) -> List[List[int]]:
    """Group row indices into blocks that share no column."""
    parent: Dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: Dict[int, int] = {}
    for i, row in enumerate(rows):
        parent[i] = i
        for c in row:
            j = owner.get(c)
            if j is None:
                owner[c] = i
            else:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: Dict[int, List[int]] = {}
    for i, row in enumerate(rows):
        if row:
            groups.setdefault(find(i), []).append(i)
    return [groups[k] for k in sorted(groups)]


def rank(m: RatMatrix) -> int:
    """Exact rank over Q."""
    if not m.entries:
        return 0
    # eliminate along the shorter side
    rows = m.row_dicts() if m.rows <= m.cols else m.col_dicts()
    total = 0
    for block in _components(rows):
        ech = _Echelon()
        for i in block:
            ech.insert(rows[i])
        total += len(ech)
    return total


def _rref(rows: Iterable[Mapping[int, object]]) -> Dict[int, Dict[int, Fraction]]:
    """Reduced row echelon form keyed by pivot column, pivot entries 1."""
    ech = _Echelon()
    for r in rows:
        ech.insert(r)
    piv = {c: {k: Fraction(v) for k, v in row.items()} for c, row in ech.pivots.items()}
    order = sorted(piv, reverse=True)
    for c in order:
        row = piv[c]
        lead = row[c]
        if lead != 1:
            row = {k: v / lead for k, v in row.items()}
            piv[c] = row
        for c2 in order:
            if c2 >= c:
                continue
            other = piv[c2]
            f = other.get(c)
            if f:
                for k, v in row.items():
                    nv = other.get(k, 0) - f * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
    return piv


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of Q^ambient_dim given by a linearly independent basis."""

    ambient_dim: int
    basis: Tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(_clean(v) for v in self.basis))

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Mapping[int, object]]) -> "Subspace":
        """Subspace spanned by ``vectors``; keeps an independent subfamily in order."""
        ech = _Echelon()
        keep = []
        for v in vectors:
            v = _clean(v)
            if v and ech.insert(v):
                keep.append(v)
        return cls(ambient_dim, tuple(keep))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple({i: 1} for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def _ech(self) -> _Echelon:
        ech = self.__dict__.get("_echelon")
        if ech is None:
            ech = _Echelon(track=True)
            for i, v in enumerate(self.basis):
                ech.insert(v, tag=i)
            object.__setattr__(self, "_echelon", ech)
        return ech

    def contains(self, vec: Mapping[int, object]) -> bool:
        vec = _clean(vec)
        if not vec:
            return True
        row, _, _ = self._ech().reduce(vec, {})
        return not row

    def coordinates(self, vec: Mapping[int, object]) -> Optional[Dict[int, Fraction]]:
        """Coefficients of ``vec`` in ``self.basis``, or None if outside."""
        vec = _clean(vec)
        if not vec:
            return {}
        ech = self._ech()
        row, mult, combo = ech.reduce(vec, {})
        if row:
            return None
        # mult*vec = sum over consumed rows; combo holds -(that sum) in input tags
        return {k: _canon(-v / mult) for k, v in combo.items() if v}

    def rref(self) -> Dict[int, Dict[int, Fraction]]:
        cache = self.__dict__.get("_rref")
        if cache is None:
            cache = _rref(self.basis)
            object.__setattr__(self, "_rref", cache)
        return cache

    def complement_columns(self) -> List[int]:
        """Standard basis indices spanning a complement (non-pivot columns)."""
        piv = self.rref()
        return [j for j in range(self.ambient_dim) if j not in piv]

    def reduce_mod(self, vec: Mapping[int, object]) -> Vector:
        """Canonical representative of ``vec`` modulo this subspace.

        The result is supported on :meth:`complement_columns`.
        """
        piv = self.rref()
        out = dict(_clean(vec))
        for c in sorted(piv):
            f = out.get(c)
            if f:
                for k, v in piv[c].items():
                    nv = out.get(k, 0) - f * v
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return _clean(out)

    def matrix(self) -> RatMatrix:
        """Basis vectors as columns."""
        return RatMatrix.from_columns(self.ambient_dim, list(self.basis))


def kernel_basis(m: RatMatrix) -> Subspace:
    piv = _rref(m.row_dicts())
    free = [j for j in range(m.cols) if j not in piv]
    basis = []
    for f in free:
        v: Dict[int, object] = {f: 1}
        for c, row in piv.items():
            x = row.get(f)
            if x:
                v[c] = -x
        basis.append(v)
    return Subspace(m.cols, tuple(basis))


def image_basis(m: RatMatrix) -> Subspace:
    """Column space, spanned by the pivot columns of ``m`` (original vectors)."""
    cols = m.col_dicts()
    ech = _Echelon()
    keep = []
    for col in cols:
        if col and ech.insert(col):
            keep.append(col)
    return Subspace(m.rows, tuple(keep))


def nullity(m: RatMatrix) -> int:
    return m.cols - rank(m)


def check_composable_zero(d_out: RatMatrix, d_in: RatMatrix) -> None:
    if d_out.cols != d_in.rows:
        raise LinAlgError(f"cannot compose {d_out.shape} after {d_in.shape}")
    if not (d_out @ d_in).is_zero():
        raise CompositionNonzero("d_out . d_in != 0")


@dataclass(frozen=True)
class SubquotientHomology:
    dim: int
    representatives: Tuple[Vector, ...]
    cycles: Subspace
    boundaries: Subspace

    def coordinates(self, cycle: Mapping[int, object]) -> Dict[int, Fraction]:
        """Coordinates of a cycle's class with respect to ``representatives``."""
        space = self.__dict__.get("_space")
        if space is None:
            space = Subspace(self.cycles.ambient_dim, self.boundaries.basis + self.representatives)
            object.__setattr__(self, "_space", space)
        coords = space.coordinates(cycle)
        if coords is None:
            raise LinAlgError("vector is not a cycle")
        nb = self.boundaries.dim
        return {k - nb: v for k, v in coords.items() if k >= nb}


def subquotient_homology(d_in: RatMatrix, d_out: RatMatrix, check: bool = True) -> SubquotientHomology:
    """ker(d_out) / im(d_in) with coset representatives from the kernel."""
    if check:
        check_composable_zero(d_out, d_in)
    cycles = kernel_basis(d_out)
    bounds = image_basis(d_in)
    ech = _Echelon()
    for b in bounds.basis:
        ech.insert(b)
    reps = []
    for z in cycles.basis:
        if ech.insert(z):
            reps.append(z)
    return SubquotientHomology(len(reps), tuple(reps), cycles, bounds)


def homology_dim(d_in: RatMatrix, d_out: RatMatrix) -> int:
    """nullity(d_out) - rank(d_in), without building representatives."""
    return d_out.cols - rank(d_out) - rank(d_in)


def solve(m: RatMatrix, b: Mapping[int, object]) -> Optional[Vector]:
    """One solution x of m x = b, or None."""
    ech = _Echelon(track=True)
    for j, col in enumerate(m.col_dicts()):
        if col:
            ech.insert(col, tag=j)
    b = _clean(b)
    if not b:
        return {}
    row, mult, combo = ech.reduce(b, {})
    if row:
        return None
    return {k: _canon(-v / mult) for k, v in combo.items() if v}


# ---------------------------------------------------------------------------
# chain complexes


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """Homologically graded complex ``C_0 <- C_1 <- ... <- C_N``.

    ``differentials[n]`` is the matrix of ``d_n: C_n -> C_{n-1}`` for
    ``1 <= n <= N``; ``d_0`` is the zero map to 0.  A cochain complex is
    stored the same way with ``cohomological=True``, in which case
    ``differentials[n]`` is ``delta^{n-1}: C^{n-1} -> C^n``.
    """

    dims: Tuple[int, ...]
    differentials: Mapping[int, RatMatrix]
    cohomological: bool = False

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        top = len(self.dims) - 1
        for n in range(1, top + 1):
            d = self.differentials.get(n)
            if d is None:
                raise LinAlgError(f"missing differential in degree {n}")
            want = (self.dims[n], self.dims[n - 1]) if self.cohomological else (self.dims[n - 1], self.dims[n])
            if d.shape != want:
                raise LinAlgError(f"differential {n} has shape {d.shape}, expected {want}")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def d(self, n: int) -> RatMatrix:
        """Map out of degree n (homological) or into degree n (cohomological)."""
        if 1 <= n <= self.top:
            return self.differentials[n]
        if self.cohomological:
            return RatMatrix.zero(self.dims[0] if n == 0 else 0, 0)
        return RatMatrix.zero(0, self.dims[0] if n == 0 else 0)

    def check_square_zero(self) -> None:
        for n in range(2, self.top + 1):
            a, b = self.differentials[n - 1], self.differentials[n]
            if self.cohomological:
                check_composable_zero(b, a)
            else:
                check_composable_zero(a, b)

    def _incoming_outgoing(self, n: int) -> Tuple[RatMatrix, RatMatrix]:
        dn = self.dims[n]
        if self.cohomological:
            d_in = self.differentials[n] if n >= 1 else RatMatrix.zero(dn, 0)
            d_out = self.differentials[n + 1] if n + 1 <= self.top else RatMatrix.zero(0, dn)
        else:
            d_out = self.differentials[n] if n >= 1 else RatMatrix.zero(0, dn)
            d_in = self.differentials[n + 1] if n + 1 <= self.top else RatMatrix.zero(dn, 0)
        return d_in, d_out

    def homology_dims(self) -> List[int]:
        """Homology of the truncated complex; the top degree is a kernel only."""
        ranks = {n: rank(self.differentials[n]) for n in range(1, self.top + 1)}
        out = []
        for n in range(self.top + 1):
            if self.cohomological:
                r_in = ranks.get(n, 0)
                r_out = ranks.get(n + 1, 0)
            else:
                r_out = ranks.get(n, 0)
                r_in = ranks.get(n + 1, 0)
            out.append(self.dims[n] - r_out - r_in)
        return out

    def homology(self, n: int, check: bool = False) -> SubquotientHomology:
        d_in, d_out = self._incoming_outgoing(n)
        return subquotient_homology(d_in, d_out, check=check)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * c for n, c in enumerate(self.dims))


def quotient_complex(c: ChainComplex, sub: Sequence[Subspace]) -> ChainComplex:
    """Complex of quotients ``C_n / sub_n`` with the induced differentials.

    Quotient coordinates are the non-pivot columns of each ``sub_n``.
    """
    if len(sub) != len(c.dims):
        raise LinAlgError("need one subspace per degree")
    for n, s in enumerate(sub):
        if s.ambient_dim != c.dims[n]:
            raise LinAlgError(f"subspace in degree {n} has wrong ambient dimension")
    keep = [s.complement_columns() for s in sub]
    index = [{j: k for k, j in enumerate(cols)} for cols in keep]
    diffs = {}
    for n in range(1, c.top + 1):
        d = c.differentials[n]
        src, tgt = (n - 1, n) if c.cohomological else (n, n - 1)
        for v in sub[src].basis:
            if not sub[tgt].contains(d.apply(v)):
                raise NotASubcomplex(f"differential {n} does not preserve the subspace")
        ent = {}
        for k, j in enumerate(keep[src]):
            img = sub[tgt].reduce_mod(d.apply({j: 1}))
            for i, v in img.items():
                ent[(index[tgt][i], k)] = v
        diffs[n] = RatMatrix(len(keep[tgt]), len(keep[src]), ent)
    return ChainComplex(tuple(len(k) for k in keep), diffs, c.cohomological)
