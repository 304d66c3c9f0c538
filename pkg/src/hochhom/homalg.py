"""Free resolutions and Ext over finite-dimensional commutative algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .algebra import FDAlgebra, FDModule, free_module, hom_space, nilradical, submodule
from .exactlin import ChainComplex, RatMatrix, Subspace, kernel_basis, rank
from .simplicial import FinSimpSet


@dataclass
class FreeResolution:
    """``... -> A^{r_1} -> A^{r_0} -> M -> 0``.

    ``maps[p]`` (p >= 1) is the Q-matrix of ``A^{r_p} -> A^{r_{p-1}}`` in the
    coordinates of :func:`free_module`; ``augmentation`` maps ``A^{r_0}``
    onto M.  ``complete`` is True when the last kernel was zero, so the
    resolution is finite and exact in every degree.
    """

    algebra: FDAlgebra
    module: FDModule
    ranks: List[int]
    maps: Dict[int, RatMatrix]
    augmentation: RatMatrix
    complete: bool = False

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def check(self) -> None:
        """Rank-exactness and d∘d = 0 at every recorded step."""
        n = self.algebra.dim
        eps = self.augmentation
        if rank(eps) != self.module.dim:
            raise AssertionError("augmentation is not surjective")
        prev = eps
        for p in range(1, self.length + 1):
            d = self.maps[p]
            if not (prev @ d).is_zero():
                raise AssertionError(f"composition nonzero at step {p}")
            if self.ranks[p - 1] * n - rank(prev) != rank(d):
                raise AssertionError(f"not exact at step {p - 1}")
            prev = d
        if self.complete and rank(prev) != self.ranks[-1] * n:
            raise AssertionError("last map is not injective")


def _generators(mod: FDModule, rad: Subspace) -> List[Dict[int, object]]:
    """Lift of a basis of M / rad M (standard basis vectors)."""
    vecs = []
    for r in rad.basis:
        for v in range(mod.dim):
            w = mod.act(r, {v: 1})
            if w:
                vecs.append(w)
    rm = Subspace.span(mod.dim, vecs)
    return [{c: 1} for c in rm.complement_columns()]


def _cover(mod: FDModule, gens) -> RatMatrix:
    a = mod.algebra
    cols = []
    for g in gens:
        for i in range(a.dim):
            cols.append(mod.act({i: 1}, g))
    return RatMatrix.from_columns(mod.dim, cols)


def free_resolution(a: FDAlgebra, m: FDModule, L: int) -> FreeResolution:
    """Minimal free resolution of m, computed up to ``A^{r_L}``."""
    if L < 0:
        raise ValueError("length must be non-negative")
    rad = nilradical(a)
    gens = _generators(m, rad)
    eps = _cover(m, gens)
    ranks = [len(gens)]
    maps: Dict[int, RatMatrix] = {}
    prev = eps
    complete = False
    for p in range(1, L + 1):
        ker = kernel_basis(prev)
        if ker.dim == 0:
            complete = True
            break
        free = free_module(a, ranks[-1])
        kmod = submodule(free.action, ker, a)
        kg = _generators(kmod, rad)
        into_k = _cover(kmod, kg)
        incl = RatMatrix.from_columns(ker.ambient_dim, list(ker.basis))
        d = incl @ into_k
        maps[p] = d
        ranks.append(len(kg))
        prev = d
    else:
        complete = kernel_basis(prev).dim == 0
    return FreeResolution(a, m, ranks, maps, eps, complete)


@dataclass
class ExtTable:
    dims: List[int]
    resolution_ranks: List[int] = field(default_factory=list)

    def to_json(self):
        return {"dims": list(self.dims), "resolution_ranks": list(self.resolution_ranks)}


def _hom_from_free(res: FreeResolution, n_mod: FDModule, p_max: int) -> ChainComplex:
    """Hom_A(F_., N) with Hom_A(A^r, N) = N^r (value on each generator)."""
    a = res.algebra
    dn = n_mod.dim
    ranks = res.ranks + [0] * (p_max + 2 - len(res.ranks))
    unit = a.unit
    dims = tuple(ranks[p] * dn for p in range(p_max + 2))
    diffs = {}
    for p in range(1, p_max + 2):
        d = res.maps.get(p)
        ent: Dict[Tuple[int, int], object] = {}
        if d is not None:
            for k in range(ranks[p]):
                img = d.apply({k * a.dim + i: v for i, v in unit.items()})
                blocks: Dict[int, Dict[int, object]] = {}
                for idx, v in img.items():
                    j, i = divmod(idx, a.dim)
                    blocks.setdefault(j, {})[i] = v
                for j, elem in blocks.items():
                    act = n_mod.act_matrix(elem)
                    for (r, c), v in act.entries.items():
                        ent[(k * dn + r, j * dn + c)] = v
        diffs[p] = RatMatrix(dims[p], dims[p - 1], ent)
    return ChainComplex(dims, diffs, cohomological=True)


def ext(a: FDAlgebra, m: FDModule, n_mod: FDModule, p_max: int) -> ExtTable:
    """dim Ext^p_A(m, n_mod) for 0 <= p <= p_max."""
    res = free_resolution(a, m, p_max + 1)
    cx = _hom_from_free(res, n_mod, p_max)
    return ExtTable(cx.homology_dims()[: p_max + 1], list(res.ranks))


def hom_dim(m: FDModule, n_mod: FDModule) -> int:
    return hom_space(m, n_mod).dim


@dataclass
class DegenerationReport:
    lhs: List[int]
    rhs: List[int]
    ext_tables: Dict[int, List[int]]
    homology_dims: List[int]

    @property
    def equal(self) -> List[bool]:
        return [x == y for x, y in zip(self.lhs, self.rhs)]

    @property
    def degenerates(self) -> bool:
        return all(self.equal)

    @property
    def consistent(self) -> bool:
        return all(x <= y for x, y in zip(self.lhs, self.rhs))

    def to_json(self):
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "equal": self.equal,
            "homology_dims": self.homology_dims,
            "ext": {str(q): v for q, v in self.ext_tables.items()},
        }


def degeneration_check(
    k: FinSimpSet, a: FDAlgebra, m: FDModule, n_max: int, p_max: Optional[int] = None,
    budget: Optional[int] = None,
) -> DegenerationReport:
    """Compare dim H^n(K, A, M) with sum_{p+q=n} dim Ext^p_A(H_q(K, A), M)."""
    from .hochschild import cohomology, homology_modules

    p_max = n_max if p_max is None else p_max
    if p_max < n_max:
        raise ValueError("p_max must be at least n_max")
    lhs = cohomology(k, a, m, n_max + 1, budget=budget).dims[: n_max + 1]
    hq = homology_modules(k, a, n_max + 1, budget=budget)
    tables = {}
    for q in range(n_max + 1):
        tables[q] = ext(a, hq[q], m, n_max - q).dims
    rhs = [sum(tables[q][n - q] for q in range(n + 1)) for n in range(n_max + 1)]
    return DegenerationReport(lhs, rhs, tables, [h.dim for h in hq])
