"""Commutative algebras and modules over Q.

Two flavours are supported: finite-dimensional algebras given by structure
constants (:class:`FDAlgebra`) and polynomial algebras modulo a monomial
ideal with positive variable weights (:class:`GradedAlgebra`).  Vectors
are sparse dicts ``{basis_index: coefficient}`` unless stated otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exactlin import (
    LinAlgError,
    RatMatrix,
    Subspace,
    Vector,
    image_basis,
    kernel_basis,
    rank,
    solve,
)


class AlgebraError(ValueError):
    pass


def _dense(vec: Mapping[int, object], n: int) -> List[object]:
    out = [0] * n
    for k, v in vec.items():
        out[k] = v
    return out


def _sparse(vec) -> Vector:
    if isinstance(vec, Mapping):
        return {k: v for k, v in vec.items() if v != 0}
    return {i: v for i, v in enumerate(vec) if v != 0}


def _axpy(out: Dict[int, object], a, vec: Mapping[int, object]) -> None:
    for k, v in vec.items():
        nv = out.get(k, 0) + a * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)


# ---------------------------------------------------------------------------
# finite-dimensional algebras


@dataclass(frozen=True, eq=False)
class FDAlgebra:
    """Commutative unital algebra with basis ``e_0..e_{dim-1}``.

    ``table[i][j]`` is the sparse vector ``e_i e_j``.  ``augmentation``, if
    given, is an algebra map ``A -> Q`` as a list of values on the basis; it
    defines the residue module.
    """

    dim: int
    table: Tuple[Tuple[Vector, ...], ...]
    unit: Vector
    name: str = ""
    augmentation: Optional[Tuple[object, ...]] = None

    @classmethod
    def from_structure_constants(cls, mult, unit, name: str = "", augmentation=None) -> "FDAlgebra":
        """``mult[i][j]`` is a dense or sparse vector."""
        dim = len(mult)
        table = tuple(tuple(_sparse(mult[i][j]) for j in range(dim)) for i in range(dim))
        aug = tuple(Fraction(x) for x in augmentation) if augmentation is not None else None
        return cls(dim, table, _sparse(unit), name, aug)

    def check(self) -> None:
        """Verify commutativity, associativity and the unit law exhaustively."""
        n = self.dim
        for i in range(n):
            for j in range(n):
                if self.table[i][j] != self.table[j][i]:
                    raise AlgebraError(f"not commutative at ({i},{j})")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = self.multiply(self.table[i][j], {k: 1})
                    rhs = self.multiply({i: 1}, self.table[j][k])
                    if lhs != rhs:
                        raise AlgebraError(f"not associative at ({i},{j},{k})")
        for i in range(n):
            if self.multiply(self.unit, {i: 1}) != {i: 1}:
                raise AlgebraError(f"unit law fails on e_{i}")
        if self.augmentation is not None:
            eps = self.augmentation
            if sum(eps[k] * v for k, v in self.unit.items()) != 1:
                raise AlgebraError("augmentation does not send 1 to 1")
            for i in range(n):
                for j in range(n):
                    val = sum(eps[k] * v for k, v in self.table[i][j].items())
                    if val != eps[i] * eps[j]:
                        raise AlgebraError("augmentation is not multiplicative")

    def multiply(self, u, v) -> Vector:
        u, v = _sparse(u), _sparse(v)
        for vec in (u, v):
            if any(not 0 <= k < self.dim for k in vec):
                raise AlgebraError("dimension mismatch")
        out: Dict[int, object] = {}
        for i, a in u.items():
            row = self.table[i]
            for j, b in v.items():
                _axpy(out, a * b, row[j])
        return out

    def multiply_dense(self, u: Sequence, v: Sequence) -> List[object]:
        if len(u) != self.dim or len(v) != self.dim:
            raise AlgebraError("dimension mismatch")
        return _dense(self.multiply(u, v), self.dim)

    def mult_matrix(self, elem) -> RatMatrix:
        """Matrix of multiplication by ``elem``."""
        elem = _sparse(elem)
        cols = [self.multiply(elem, {j: 1}) for j in range(self.dim)]
        return RatMatrix.from_columns(self.dim, cols)

    def power(self, elem, k: int) -> Vector:
        out = dict(self.unit)
        for _ in range(k):
            out = self.multiply(out, elem)
        return out

    @property
    def unit_is_first(self) -> bool:
        return self.dim == 0 or self.unit == {0: 1}

    def unit_first(self) -> Tuple["FDAlgebra", RatMatrix]:
        """Isomorphic algebra whose basis starts with the unit.

        Returns ``(B, P)`` where the columns of ``P`` express the new basis
        in the old one.
        """
        if self.unit_is_first:
            return self, RatMatrix.identity(self.dim)
        pivot = min(self.unit)
        new_basis = [dict(self.unit)] + [{j: 1} for j in range(self.dim) if j != pivot]
        P = RatMatrix.from_columns(self.dim, new_basis)
        old_to_new = _inverse(P)
        table = []
        for a in new_basis:
            row = []
            for b in new_basis:
                row.append(old_to_new.apply(self.multiply(a, b)))
            table.append(tuple(row))
        aug = None
        if self.augmentation is not None:
            aug = tuple(sum(self.augmentation[k] * v for k, v in b.items()) for b in new_basis)
        return FDAlgebra(self.dim, tuple(table), {0: 1}, self.name, aug), P

    def is_zero_algebra(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        return f"<FDAlgebra {self.name or ''} dim={self.dim}>"


def _inverse(P: RatMatrix) -> RatMatrix:
    n = P.rows
    cols = []
    for j in range(n):
        x = solve(P, {j: 1})
        if x is None:
            raise LinAlgError("matrix is singular")
        cols.append(x)
    return RatMatrix.from_columns(n, cols)


def ground_field() -> FDAlgebra:
    return FDAlgebra.from_structure_constants([[[1]]], [1], name="ground_field", augmentation=[1])


def truncated_poly(n: int) -> FDAlgebra:
    """Q[x]/(x^n) with basis 1, x, ..., x^{n-1}."""
    if n < 1:
        raise AlgebraError("truncated_poly needs n >= 1")
    mult = [[({i + j: 1} if i + j < n else {}) for j in range(n)] for i in range(n)]
    aug = [1] + [0] * (n - 1)
    return FDAlgebra.from_structure_constants(mult, {0: 1}, name=f"truncated_poly({n})", augmentation=aug)


def split_pair() -> FDAlgebra:
    """Q[x]/(x^2 - x) with basis 1, x."""
    mult = [[{0: 1}, {1: 1}], [{1: 1}, {1: 1}]]
    return FDAlgebra.from_structure_constants(mult, {0: 1}, name="split_pair", augmentation=[1, 0])


def product_of_fields(k: int = 2) -> FDAlgebra:
    """Q x ... x Q (k factors) with the idempotent basis."""
    mult = [[({i: 1} if i == j else {}) for j in range(k)] for i in range(k)]
    aug = [1] + [0] * (k - 1)
    return FDAlgebra.from_structure_constants(mult, {i: 1 for i in range(k)}, name=f"product({k})", augmentation=aug)


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True, eq=False)
class FDModule:
    """Finite-dimensional module: ``action[i]`` is the matrix of ``e_i``."""

    algebra: FDAlgebra
    dim: int
    action: Tuple[RatMatrix, ...]
    name: str = ""

    def act(self, elem, vec) -> Vector:
        out: Dict[int, object] = {}
        for i, a in _sparse(elem).items():
            _axpy(out, a, self.action[i].apply(_sparse(vec)))
        return out

    def act_matrix(self, elem) -> RatMatrix:
        out = RatMatrix.zero(self.dim, self.dim)
        for i, a in _sparse(elem).items():
            out = out + self.action[i].scale(a)
        return out

    def check(self) -> None:
        A = self.algebra
        if len(self.action) != A.dim:
            raise AlgebraError("need one action matrix per basis element")
        if self.act_matrix(A.unit) != RatMatrix.identity(self.dim):
            raise AlgebraError("unit does not act as the identity")
        for i in range(A.dim):
            for j in range(A.dim):
                if self.action[i] @ self.action[j] != self.act_matrix(A.table[i][j]):
                    raise AlgebraError(f"action not multiplicative at ({i},{j})")

    def __repr__(self):
        return f"<FDModule {self.name} dim={self.dim} over {self.algebra.name}>"


def regular_module(a: FDAlgebra) -> FDModule:
    return FDModule(a, a.dim, tuple(a.mult_matrix({i: 1}) for i in range(a.dim)), name="regular")


def free_module(a: FDAlgebra, r: int) -> FDModule:
    """A^r with coordinates ``(generator k, basis i) -> k*dim + i``."""
    mats = []
    for i in range(a.dim):
        ent = {}
        for k in range(r):
            for j in range(a.dim):
                for t, v in a.table[i][j].items():
                    ent[(k * a.dim + t, k * a.dim + j)] = v
        mats.append(RatMatrix(r * a.dim, r * a.dim, ent))
    return FDModule(a, r * a.dim, tuple(mats), name=f"free({r})")


def residue_module(a: FDAlgebra) -> FDModule:
    """Q with A acting through the augmentation."""
    if a.augmentation is None:
        raise AlgebraError(f"algebra {a.name!r} has no augmentation")
    return FDModule(
        a, 1, tuple(RatMatrix(1, 1, {(0, 0): x}) for x in a.augmentation), name="residue"
    )


def zero_module(a: FDAlgebra) -> FDModule:
    return FDModule(a, 0, tuple(RatMatrix.zero(0, 0) for _ in range(a.dim)), name="zero")


def submodule(actions: Sequence[RatMatrix], sub: Subspace, a: FDAlgebra, name: str = "") -> FDModule:
    """Module structure on an A-stable subspace, in the coordinates of its basis."""
    mats = []
    for M in actions:
        cols = []
        for b in sub.basis:
            c = sub.coordinates(M.apply(b))
            if c is None:
                raise AlgebraError("subspace is not stable under the action")
            cols.append(c)
        mats.append(RatMatrix.from_columns(sub.dim, cols))
    return FDModule(a, sub.dim, tuple(mats), name)


def quotient_module(actions: Sequence[RatMatrix], ambient: int, sub: Subspace, a: FDAlgebra, name: str = ""):
    """Module ``V/sub``; returns the module and the projection ``V -> V/sub``."""
    keep = sub.complement_columns()
    index = {j: k for k, j in enumerate(keep)}

    def proj(vec):
        return {index[k]: v for k, v in sub.reduce_mod(vec).items()}

    mats = []
    for M in actions:
        mats.append(RatMatrix.from_columns(len(keep), [proj(M.apply({j: 1})) for j in keep]))
    P = RatMatrix.from_columns(len(keep), [proj({j: 1}) for j in range(ambient)])
    return FDModule(a, len(keep), tuple(mats), name), P


def hom_space(m: FDModule, n: FDModule) -> Subspace:
    """A-linear maps ``m -> n`` as vectors of ``n.dim x m.dim`` matrices (row-major)."""
    A = m.algebra
    p, q = n.dim, m.dim
    rows = []
    # X act_m(e_i) - act_n(e_i) X = 0
    for i in range(A.dim):
        am = m.action[i].to_dense()
        an = n.action[i].to_dense()
        for r in range(p):
            for c in range(q):
                row: Dict[int, object] = {}
                for t in range(q):
                    if am[t][c]:
                        row[r * q + t] = row.get(r * q + t, 0) + am[t][c]
                for t in range(p):
                    if an[r][t]:
                        row[t * q + c] = row.get(t * q + c, 0) - an[r][t]
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    return kernel_basis(RatMatrix.from_rows(p * q, rows))


# ---------------------------------------------------------------------------
# tensor powers


class SizeBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class TensorIndex:
    """Lexicographic flat indexing of basis tuples of ``A^{(x)n}``."""

    dim: int
    n: int

    @property
    def size(self) -> int:
        return self.dim ** self.n

    def flat(self, idx: Sequence[int]) -> int:
        out = 0
        for i in idx:
            out = out * self.dim + i
        return out

    def unflat(self, k: int) -> Tuple[int, ...]:
        out = []
        for _ in range(self.n):
            k, r = divmod(k, self.dim)
            out.append(r)
        return tuple(reversed(out))


def tensor_power_index(a: FDAlgebra, n: int, budget: Optional[int] = None) -> TensorIndex:
    if budget is not None and a.dim ** n > budget:
        raise SizeBudgetExceeded(f"dim {a.dim}^{n} exceeds budget {budget}")
    return TensorIndex(a.dim, n)


def tensor_square(a: FDAlgebra) -> FDAlgebra:
    """A (x) A with the componentwise product, basis index ``i*dim + j``."""
    n = a.dim
    table = []
    for i in range(n):
        for j in range(n):
            row = []
            for k in range(n):
                for l in range(n):
                    out: Dict[int, object] = {}
                    for s, u in a.table[i][k].items():
                        for t, v in a.table[j][l].items():
                            out[s * n + t] = out.get(s * n + t, 0) + u * v
                    row.append({x: y for x, y in out.items() if y})
            table.append(tuple(row))
    unit = {}
    for s, u in a.unit.items():
        for t, v in a.unit.items():
            unit[s * n + t] = u * v
    return FDAlgebra(n * n, tuple(table), unit, name=f"{a.name}^e")


# ---------------------------------------------------------------------------
# Kahler differentials


@dataclass(frozen=True)
class Omega1:
    """Omega^1_A as a module, with the universal derivation ``d: A -> Omega``."""

    module: FDModule
    d: RatMatrix

    @property
    def dim(self) -> int:
        return self.module.dim


def multiplication_map(a: FDAlgebra) -> RatMatrix:
    n = a.dim
    return RatMatrix.from_columns(n, [a.table[i][j] for i in range(n) for j in range(n)])


def omega1_kernel(a: FDAlgebra) -> Omega1:
    """ker(mu) / ker(mu)^2 for the multiplication ``mu: A (x) A -> A``."""
    n = a.dim
    ae = tensor_square(a)
    ker = kernel_basis(multiplication_map(a))
    squares = []
    for u in ker.basis:
        for v in ker.basis:
            c = ker.coordinates(ae.multiply(u, v))
            if c is None:
                raise AlgebraError("ker(mu) is not an ideal")
            squares.append(c)
    sq = Subspace.span(ker.dim, squares)
    # A acts on the left factor: e_i (x) 1
    left = []
    for i in range(n):
        cols = []
        for b in ker.basis:
            prod = ae.multiply(_left(a, i), b)
            cols.append(ker.coordinates(prod))
        left.append(RatMatrix.from_columns(ker.dim, cols))
    module, P = quotient_module(left, ker.dim, sq, a, name="omega1_kernel")
    dcols = []
    for i in range(n):
        # 1 (x) e_i - e_i (x) 1
        vec: Dict[int, object] = {}
        for u, c in a.unit.items():
            _axpy(vec, c, {u * n + i: 1})
            _axpy(vec, -c, {i * n + u: 1})
        dcols.append(P.apply(ker.coordinates(vec)))
    return Omega1(module, RatMatrix.from_columns(module.dim, dcols))


def _left(a: FDAlgebra, i: int) -> Vector:
    n = a.dim
    return {i * n + u: c for u, c in a.unit.items()}


def omega1_leibniz(a: FDAlgebra) -> Omega1:
    """Free module on symbols ``d e_i`` modulo the Leibniz relations."""
    n = a.dim
    # coordinate (b, c) -> b*n + c stands for e_b d(e_c)
    rels = []
    for x in range(n):
        for j in range(n):
            for k in range(j, n):
                r: Dict[int, object] = {}
                # e_x d(e_j e_k)
                for c, v in a.table[j][k].items():
                    _axpy(r, v, {x * n + c: 1})
                # - (e_x e_j) d(e_k) - (e_x e_k) d(e_j)
                for b, v in a.table[x][j].items():
                    _axpy(r, -v, {b * n + k: 1})
                for b, v in a.table[x][k].items():
                    _axpy(r, -v, {b * n + j: 1})
                if r:
                    rels.append(r)
    sub = Subspace.span(n * n, rels)
    acts = []
    for i in range(n):
        ent = {}
        for b in range(n):
            for c in range(n):
                for t, v in a.table[i][b].items():
                    ent[(t * n + c, b * n + c)] = v
        acts.append(RatMatrix(n * n, n * n, ent))
    module, P = quotient_module(acts, n * n, sub, a, name="omega1_leibniz")
    dcols = []
    for i in range(n):
        vec = {u * n + i: c for u, c in a.unit.items()}
        dcols.append(P.apply(vec))
    return Omega1(module, RatMatrix.from_columns(module.dim, dcols))


def omega1_isomorphism(src: Omega1, dst: Omega1) -> Optional[RatMatrix]:
    """The A-linear map ``phi`` with ``phi . d_src = d_dst``, if it is an isomorphism.

    Omega^1 is generated by the image of d, so such a map is unique when it
    exists; None is returned when there is no solution or it is not invertible.
    """
    p, q = dst.dim, src.dim
    if p != q:
        return None
    A = src.module.algebra
    rows, rhs = [], []
    # phi d_src = d_dst
    ds, dd = src.d.to_dense(), dst.d.to_dense()
    for r in range(p):
        for c in range(A.dim):
            row = {r * q + t: ds[t][c] for t in range(q) if ds[t][c]}
            rows.append(row)
            rhs.append(dd[r][c])
    # phi act_src(e_i) = act_dst(e_i) phi
    for i in range(A.dim):
        am = src.module.action[i].to_dense()
        an = dst.module.action[i].to_dense()
        for r in range(p):
            for c in range(q):
                row: Dict[int, object] = {}
                for t in range(q):
                    if am[t][c]:
                        row[r * q + t] = row.get(r * q + t, 0) + am[t][c]
                for t in range(p):
                    if an[r][t]:
                        row[t * q + c] = row.get(t * q + c, 0) - an[r][t]
                rows.append({k: v for k, v in row.items() if v})
                rhs.append(0)
    system = RatMatrix.from_rows(p * q, rows)
    x = solve(system, {i: v for i, v in enumerate(rhs) if v})
    if x is None:
        return None
    phi = RatMatrix(p, q, {(k // q, k % q): v for k, v in x.items()})
    if rank(phi) != p:
        return None
    return phi


# ---------------------------------------------------------------------------
# localization


@dataclass(frozen=True)
class Localization:
    """``A_s`` realised as the stable image ``eA`` of multiplication by s.

    ``proj`` is the structure map ``A -> A_s`` in the basis ``image`` (a
    list of elements of A); ``zero`` flags a nilpotent s.
    """

    algebra: FDAlgebra
    proj: RatMatrix
    image: Subspace
    idempotent: Vector
    source: FDAlgebra
    s: Vector

    @property
    def zero(self) -> bool:
        return self.algebra.dim == 0


def stable_image(mat: RatMatrix) -> Subspace:
    """Image of ``mat^k`` once the ranks stop dropping."""
    cur = mat
    r = rank(cur)
    while True:
        nxt = mat @ cur
        r2 = rank(nxt)
        if r2 == r:
            return image_basis(cur)
        cur, r = nxt, r2


def localize(a: FDAlgebra, s) -> Localization:
    s = _sparse(s)
    img = stable_image(a.mult_matrix(s))
    m = img.dim
    if m == 0:
        zero = FDAlgebra(0, (), {}, name=f"{a.name}_s")
        return Localization(zero, RatMatrix.zero(0, a.dim), img, {}, a, s)
    # unit of the ideal: u in img with u b = b for all basis b
    rows, rhs = [], []
    prods = [[a.multiply(img.basis[t], b) for t in range(m)] for b in img.basis]
    for bi, b in enumerate(img.basis):
        for coord in range(a.dim):
            rows.append({t: prods[bi][t].get(coord, 0) for t in range(m) if prods[bi][t].get(coord, 0)})
            rhs.append(b.get(coord, 0))
    x = solve(RatMatrix.from_rows(m, rows), {i: v for i, v in enumerate(rhs) if v})
    if x is None:
        raise AlgebraError("stable image has no unit; algebra is not Artinian-commutative")
    e: Dict[int, object] = {}
    for t, c in x.items():
        _axpy(e, c, img.basis[t])
    table = tuple(
        tuple(img.coordinates(a.multiply(img.basis[i], img.basis[j])) for j in range(m)) for i in range(m)
    )
    unit = img.coordinates(e)
    aug = None
    if a.augmentation is not None:
        vals = [sum(a.augmentation[k] * v for k, v in b.items()) for b in img.basis]
        # the augmentation factors through A_s exactly when it sends e to 1
        if sum(a.augmentation[k] * v for k, v in e.items()) == 1:
            aug = tuple(vals)
    loc = FDAlgebra(m, table, unit, name=f"{a.name}_s", augmentation=aug)
    proj = RatMatrix.from_columns(m, [img.coordinates(a.multiply(e, {j: 1})) for j in range(a.dim)])
    return Localization(loc, proj, img, e, a, s)


def localize_module(mod: FDModule, loc: Localization) -> FDModule:
    """``M_s`` as the stable image of s on M, a module over ``loc.algebra``."""
    img = stable_image(mod.act_matrix(loc.s))
    acts = [mod.act_matrix(b) for b in loc.image.basis]
    out = submodule(acts, img, loc.algebra, name=f"{mod.name}_s")
    return out


# ---------------------------------------------------------------------------
# symmetric and exterior powers


def _tensor_power_module(mod: FDModule, j: int, sign: int) -> FDModule:
    A = mod.algebra
    if j == 0:
        return regular_module(A)
    m = mod.dim
    idx = TensorIndex(m, j)
    size = idx.size
    dense = [mod.action[i].to_dense() for i in range(A.dim)]
    rels = []
    tuples = [idx.unflat(k) for k in range(size)]
    for t in tuples:
        for p in range(j - 1):
            # balancing: a at p minus a at p+1
            for i in range(A.dim):
                r: Dict[int, object] = {}
                for pos, c in ((p, 1), (p + 1, -1)):
                    col = t[pos]
                    for row in range(m):
                        v = dense[i][row][col]
                        if v:
                            u = t[:pos] + (row,) + t[pos + 1 :]
                            _axpy(r, c * v, {idx.flat(u): 1})
                if r:
                    rels.append(r)
            # symmetry (sign=+1) or antisymmetry (sign=-1) under the transposition (p, p+1)
            sw = t[:p] + (t[p + 1], t[p]) + t[p + 2 :]
            r = {}
            _axpy(r, 1, {idx.flat(t): 1})
            _axpy(r, -sign, {idx.flat(sw): 1})
            if r:
                rels.append(r)
    sub = Subspace.span(size, rels)
    acts = []
    for i in range(A.dim):
        ent = {}
        for k, t in enumerate(tuples):
            col = t[0]
            for row in range(m):
                v = dense[i][row][col]
                if v:
                    ent[(idx.flat((row,) + t[1:]), k)] = v
        acts.append(RatMatrix(size, size, ent))
    name = ("Sym" if sign == 1 else "Lambda") + f"^{j}"
    module, _ = quotient_module(acts, size, sub, A, name=name)
    return module


def sym_power(mod: FDModule, j: int) -> FDModule:
    return _tensor_power_module(mod, j, 1)


def ext_power(mod: FDModule, j: int) -> FDModule:
    return _tensor_power_module(mod, j, -1)


# ---------------------------------------------------------------------------
# nilradical


def nilradical(a: FDAlgebra) -> Subspace:
    """Nilpotent elements of a commutative finite-dimensional algebra.

    In characteristic 0 this is the radical of the trace form
    ``(x, y) -> tr(L_{xy})``.
    """
    n = a.dim
    mats = [a.mult_matrix({i: 1}) for i in range(n)]

    def trace(M: RatMatrix):
        return sum(v for (r, c), v in M.entries.items() if r == c)

    # trace form T(e_i, e_j) = tr(L_{e_i e_j})
    rows = []
    for j in range(n):
        row = {}
        for i in range(n):
            t = 0
            for k, v in a.table[i][j].items():
                t += v * trace(mats[k])
            if t:
                row[i] = t
        rows.append(row)
    return kernel_basis(RatMatrix.from_rows(n, rows))


def is_semisimple(a: FDAlgebra) -> bool:
    return nilradical(a).dim == 0


# ---------------------------------------------------------------------------
# graded monomial algebras


Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class GradedAlgebra:
    """Q[x_1..x_m] / (monomials), variable ``i`` of positive weight ``weights[i]``."""

    weights: Tuple[int, ...]
    relations: Tuple[Monomial, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "relations", tuple(tuple(r) for r in self.relations))
        if any(w <= 0 for w in self.weights):
            raise AlgebraError("variable weights must be positive")
        for r in self.relations:
            if len(r) != len(self.weights):
                raise AlgebraError("relation has the wrong number of exponents")
            if not any(r):
                raise AlgebraError("the unit monomial cannot be a relation")

    @property
    def nvars(self) -> int:
        return len(self.weights)

    @property
    def one(self) -> Monomial:
        return (0,) * self.nvars

    def in_ideal(self, mono: Monomial) -> bool:
        return any(all(a >= b for a, b in zip(mono, r)) for r in self.relations)

    def weight(self, mono: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, mono))

    def multiply(self, u: Monomial, v: Monomial) -> Optional[Monomial]:
        m = tuple(a + b for a, b in zip(u, v))
        return None if self.in_ideal(m) else m

    def weight_basis(self, w: int) -> List[Monomial]:
        """Monomials of weight w outside the ideal, in descending lex order."""
        cache = self.__dict__.get("_wb")
        if cache is None:
            cache = {}
            object.__setattr__(self, "_wb", cache)
        if w not in cache:
            out: List[Monomial] = []

            def rec(i, left, acc):
                if i == self.nvars:
                    if left == 0:
                        mono = tuple(acc)
                        if not self.in_ideal(mono):
                            out.append(mono)
                    return
                wi = self.weights[i]
                for e in range(left // wi, -1, -1):
                    acc.append(e)
                    rec(i + 1, left - e * wi, acc)
                    acc.pop()

            rec(0, w, [])
            cache[w] = out
        return list(cache[w])

    def hilbert(self, w_max: int) -> List[int]:
        return [len(self.weight_basis(w)) for w in range(w_max + 1)]

    def is_finite(self) -> bool:
        pure = set()
        for r in self.relations:
            nz = [i for i, e in enumerate(r) if e]
            if len(nz) == 1:
                pure.add(nz[0])
        return pure == set(range(self.nvars))

    def to_fd(self) -> FDAlgebra:
        """The same algebra by structure constants (finite case only)."""
        if not self.is_finite():
            raise AlgebraError(f"{self.name or 'graded algebra'} is infinite-dimensional")
        basis: List[Monomial] = []
        w = 0
        # every variable has a pure power in the ideal, so weights are bounded
        bound = sum(
            max((r[i] for r in self.relations if r[i] and sum(1 for e in r if e) == 1)) * self.weights[i]
            for i in range(self.nvars)
        )
        while w <= bound:
            basis.extend(self.weight_basis(w))
            w += 1
        pos = {m: k for k, m in enumerate(basis)}
        mult = []
        for u in basis:
            row = []
            for v in basis:
                p = self.multiply(u, v)
                row.append({pos[p]: 1} if p is not None else {})
            mult.append(row)
        aug = [1] + [0] * (len(basis) - 1)
        return FDAlgebra.from_structure_constants(mult, {0: 1}, name=self.name, augmentation=aug)


def poly(m: int) -> GradedAlgebra:
    return GradedAlgebra((1,) * m, (), name=f"poly({m})")


def graded_weight_basis(g: GradedAlgebra, w: int) -> List[Monomial]:
    return g.weight_basis(w)


def monomial_count(m: int, w: int) -> int:
    """Monomials of degree w in m weight-1 variables."""
    if w < 0:
        return 0
    if m == 0:
        return 1 if w == 0 else 0
    return comb(w + m - 1, m - 1)


def smooth_hodge_predicted_dim(m: int, d: int, j: int, w: int) -> int:
    """Weight-w dimension of Omega^j (d odd) or Sym^j Omega^1 (d even) of Q[x_1..x_m]."""
    if j < 0:
        return 0
    rank_ = comb(m, j) if d % 2 == 1 else comb(m + j - 1, j)
    return rank_ * monomial_count(m, w - j)
