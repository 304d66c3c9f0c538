"""Higher Hochschild chain and cochain complexes C(K, A) and their homology.

Degree n of C(K, A) is the tensor power of A indexed by the simplices of
K_n, with differential the alternating sum of the maps induced by the face
maps through the Loday functor (tensor factors over a common fibre are
multiplied, empty fibres contribute the unit).

Basis tensors are stored as dense tuples of basis labels, one per simplex.
This needs a basis containing the unit: FD algebras are rebased with
:meth:`FDAlgebra.unit_first` and graded algebras use monomials, so the unit
is always a basis element.  With such a basis the degenerate subcomplex is
spanned by basis tensors whose support (non-unit positions) lies inside the
image of some degeneracy, so the normalized complex is the complementary
coordinate quotient.
"""

from __future__ import annotations

import os
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from itertools import combinations, product as iproduct
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra import (
    FDAlgebra,
    FDModule,
    GradedAlgebra,
    SizeBudgetExceeded,
    TensorIndex,
    _inverse,
)
from .exactlin import (
    ChainComplex,
    RatMatrix,
    Subspace,
    SubquotientHomology,
    image_basis,
    quotient_complex,
    rank,
)
from .simplicial import FinSimpSet

DEFAULT_BUDGET = 5_000_000

Key = Tuple[object, ...]


class TruncationTooShallow(ValueError):
    pass


_budget_stack: List[int] = []


def default_budget() -> int:
    """Innermost :func:`budget_scope`, else $HOCHHOM_BUDGET, else DEFAULT_BUDGET."""
    if _budget_stack:
        return _budget_stack[-1]
    env = os.environ.get("HOCHHOM_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@contextmanager
def budget_scope(n: int):
    _budget_stack.append(n)
    try:
        yield
    finally:
        _budget_stack.pop()


# ---------------------------------------------------------------------------
# algebra backends: elements are basis labels, ``one`` is the unit label


class _FDBackend:
    def __init__(self, a: FDAlgebra):
        b, P = a.unit_first()
        self.source = a
        self.algebra = b
        self.P = P
        self.Pinv = _inverse(P) if not a.unit_is_first else P
        self.one = 0
        self.dim = b.dim
        self._cache: Dict[Tuple[int, ...], Dict[int, object]] = {}

    def nonunit(self) -> List[int]:
        return list(range(1, self.dim))

    def product(self, elems: Tuple[int, ...]) -> Dict[int, object]:
        got = self._cache.get(elems)
        if got is None:
            acc: Dict[int, object] = {elems[0]: 1}
            for e in elems[1:]:
                acc = self.algebra.multiply(acc, {e: 1})
            got = acc
            self._cache[elems] = got
        return got

    def from_source(self, vec: Mapping[int, object]) -> Dict[int, object]:
        """Coordinates in the rebased basis of a vector of the original algebra."""
        return self.Pinv.apply(vec)

    def count_tuples(self, npos: int) -> int:
        return self.dim ** npos


class _GradedBackend:
    def __init__(self, g: GradedAlgebra, weight: int):
        self.algebra = g
        self.weight = weight
        self.one = g.one

    def product(self, elems):
        acc = elems[0]
        for e in elems[1:]:
            acc = self.algebra.multiply(acc, e)
            if acc is None:
                return {}
        return {acc: 1}

    def count_tuples(self, npos: int) -> int:
        # coefficient of t^w in H(t)^npos
        w = self.weight
        h = self.algebra.hilbert(w)
        poly = [1] + [0] * w
        for _ in range(npos):
            new = [0] * (w + 1)
            for i, c in enumerate(poly):
                if c:
                    for j in range(w + 1 - i):
                        new[i + j] += c * h[j]
            poly = new
        return poly[w]


# ---------------------------------------------------------------------------
# basis enumeration


def _degenerate_masks(k: FinSimpSet, n: int) -> List[int]:
    masks = []
    for img in k.degenerate_images(n):
        m = 0
        for x in img:
            m |= 1 << x
        masks.append(m)
    return masks


def _is_degenerate(support_mask: int, masks: Sequence[int]) -> bool:
    return any(support_mask & ~m == 0 for m in masks)


def _level_count(backend, k: FinSimpSet, n: int, normalized: bool) -> int:
    p = k.size(n)
    if not normalized or n == 0:
        return backend.count_tuples(p)
    imgs = k.degenerate_images(n)
    total = 0
    for r in range(len(imgs) + 1):
        for T in combinations(range(len(imgs)), r):
            if T:
                inter = frozenset.intersection(*(imgs[i] for i in T))
                total += (-1) ** r * backend.count_tuples(len(inter))
            else:
                total += backend.count_tuples(p)
    return total


def complex_size(k: FinSimpSet, a, N: int, normalized: bool = True, weight: Optional[int] = None) -> int:
    """Total number of basis tensors in degrees 0..N, without building them."""
    backend = _GradedBackend(a, weight) if isinstance(a, GradedAlgebra) else _FDBackend(a)
    return sum(_level_count(backend, k, n, normalized) for n in range(N + 1))


def _fd_keys(backend: _FDBackend, k: FinSimpSet, n: int, normalized: bool) -> List[Key]:
    p = k.size(n)
    if backend.dim == 0:
        return []
    elems = backend.nonunit()
    masks = _degenerate_masks(k, n) if normalized else []
    out: List[Key] = []
    for r in range(p + 1):
        for supp in combinations(range(p), r):
            if masks:
                sm = 0
                for x in supp:
                    sm |= 1 << x
                if _is_degenerate(sm, masks):
                    continue
            for choice in iproduct(elems, repeat=r):
                dense = [0] * p
                for pos, e in zip(supp, choice):
                    dense[pos] = e
                out.append(tuple(dense))
    out.sort()
    return out


def _graded_keys(backend: _GradedBackend, k: FinSimpSet, n: int, normalized: bool) -> List[Key]:
    g = backend.algebra
    p = k.size(n)
    w = backend.weight
    one = g.one
    masks = _degenerate_masks(k, n) if normalized else []
    out = []
    acc = [one] * p

    def rec(pos, left, sm):
        if left == 0:
            if not (masks and _is_degenerate(sm, masks)):
                out.append(tuple(acc))
            return
        if pos == p:
            return
        rec(pos + 1, left, sm)
        for wi in range(1, left + 1):
            for mono in g.weight_basis(wi):
                acc[pos] = mono
                rec(pos + 1, left - wi, sm | (1 << pos))
        acc[pos] = one

    rec(0, w, 0)
    out.sort(key=lambda key: tuple(tuple(-e for e in m) for m in key))
    return out


# ---------------------------------------------------------------------------
# Loday push-forward on basis tensors


class _FaceData:
    """Fibres of a map of finite sets, split by size."""

    def __init__(self, f: Sequence[int], cod: int):
        fibres: List[List[int]] = [[] for _ in range(cod)]
        for x, y in enumerate(f):
            fibres[y].append(x)
        self.cod = cod
        self.singles = [(y, fib[0]) for y, fib in enumerate(fibres) if len(fib) == 1]
        self.multis = [(y, tuple(fib)) for y, fib in enumerate(fibres) if len(fib) > 1]


def _push(backend, key: Key, fd: _FaceData) -> List[Tuple[Key, object]]:
    one = backend.one
    out = [one] * fd.cod
    for y, x in fd.singles:
        out[y] = key[x]
    coeff = 1
    branches = []
    for y, xs in fd.multis:
        es = [key[x] for x in xs if key[x] != one]
        if not es:
            continue
        if len(es) == 1:
            out[y] = es[0]
            continue
        prod = backend.product(tuple(es))
        if not prod:
            return []
        if len(prod) == 1:
            ((e, c),) = prod.items()
            out[y] = e
            coeff *= c
        else:
            branches.append((y, list(prod.items())))
    if not branches:
        return [(tuple(out), coeff)]
    res = []
    for combo in iproduct(*(terms for _, terms in branches)):
        c = coeff
        for (y, _), (e, ce) in zip(branches, combo):
            out[y] = e
            c *= ce
        res.append((tuple(out), c))
    return res


def loday_map(f: Sequence[int], codomain_size: int, a: FDAlgebra) -> RatMatrix:
    """Matrix of ``f_*: A^{(x)dom} -> A^{(x)cod}`` in lexicographic tensor bases.

    Works in the algebra's own basis (no rebasing); empty fibres get the unit.
    """
    dom = len(f)
    if any(not 0 <= y < codomain_size for y in f):
        raise ValueError("map leaves its codomain")
    src = TensorIndex(a.dim, dom)
    tgt = TensorIndex(a.dim, codomain_size)
    budget = default_budget()
    if src.size > budget or tgt.size > budget:
        raise SizeBudgetExceeded("loday_map exceeds the size budget")
    fibers = [[x for x in range(dom) if f[x] == y] for y in range(codomain_size)]
    ent: Dict[Tuple[int, int], object] = {}
    for col in range(src.size):
        t = src.unflat(col)
        parts = []
        for fib in fibers:
            vec = dict(a.unit)
            for x in fib:
                vec = a.multiply(vec, {t[x]: 1})
            if not vec:
                break
            parts.append(list(vec.items()))
        else:
            for combo in iproduct(*parts):
                coeff = 1
                idx = 0
                for e, c in combo:
                    coeff *= c
                    idx = idx * a.dim + e
                ent[(idx, col)] = ent.get((idx, col), 0) + coeff
    return RatMatrix(tgt.size, src.size, ent)


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True, eq=False)
class LodayComplex:
    """A chain complex together with the basis tensors of each degree."""

    complex: ChainComplex
    keys: Tuple[Tuple[Key, ...], ...]
    space: FinSimpSet
    backend: object
    normalized: bool

    @property
    def dims(self):
        return self.complex.dims


def _check_truncation(k: FinSimpSet, N: int) -> None:
    if N < 0:
        raise ValueError("N must be non-negative")
    if N > k.trunc_level:
        raise TruncationTooShallow(f"degree bound {N} needs simplicial levels up to {N}, have {k.trunc_level}")


def _build(k: FinSimpSet, backend, N: int, normalized: bool, budget: Optional[int]) -> LodayComplex:
    _check_truncation(k, N)
    budget = default_budget() if budget is None else budget
    counts = [_level_count(backend, k, n, normalized) for n in range(N + 1)]
    if sum(counts) > budget:
        raise SizeBudgetExceeded(
            f"complex for {k.name} would have {sum(counts)} basis elements (budget {budget})"
        )
    enum = _fd_keys if isinstance(backend, _FDBackend) else _graded_keys
    keys = [enum(backend, k, n, normalized) for n in range(N + 1)]
    index = [{key: i for i, key in enumerate(ks)} for ks in keys]
    diffs = {}
    for n in range(1, N + 1):
        faces = [_FaceData(k.faces[n][i], k.size(n - 1)) for i in range(n + 1)]
        tgt = index[n - 1]
        ent: Dict[Tuple[int, int], object] = {}
        for col, key in enumerate(keys[n]):
            for i, fd in enumerate(faces):
                sign = -1 if i % 2 else 1
                for key2, c in _push(backend, key, fd):
                    row = tgt.get(key2)
                    if row is None:
                        continue  # degenerate target, zero in the quotient
                    v = ent.get((row, col), 0) + sign * c
                    if v:
                        ent[(row, col)] = v
                    else:
                        ent.pop((row, col), None)
        diffs[n] = RatMatrix(len(keys[n - 1]), len(keys[n]), ent)
    cx = ChainComplex(tuple(len(ks) for ks in keys), diffs)
    return LodayComplex(cx, tuple(tuple(ks) for ks in keys), k, backend, normalized)


def chain_complex(k: FinSimpSet, a: FDAlgebra, N: int, budget: Optional[int] = None) -> ChainComplex:
    """C(K, A) in degrees 0..N, in the lexicographic tensor basis of the unit-first basis."""
    return loday_complex(k, a, N, normalized=False, budget=budget).complex


def normalized_complex(k: FinSimpSet, a: FDAlgebra, N: int, budget: Optional[int] = None) -> ChainComplex:
    return loday_complex(k, a, N, normalized=True, budget=budget).complex


_recent: List[Tuple[tuple, LodayComplex]] = []


def loday_complex(
    k: FinSimpSet, a: FDAlgebra, N: int, normalized: bool = True, budget: Optional[int] = None
) -> LodayComplex:
    # a few recent results are kept so cochains and module structures reuse the chains
    budget = default_budget() if budget is None else budget
    for (k0, a0, N0, n0, b0), lc in _recent:
        if k0 is k and a0 is a and N0 == N and n0 == normalized and b0 == budget:
            return lc
    lc = _build(k, _FDBackend(a), N, normalized, budget)
    _recent.insert(0, ((k, a, N, normalized, budget), lc))
    del _recent[4:]
    return lc


def graded_loday_complex(
    k: FinSimpSet, g: GradedAlgebra, w: int, N: int, normalized: bool = True, budget: Optional[int] = None
) -> LodayComplex:
    if w < 0:
        raise ValueError("weight must be non-negative")
    return _build(k, _GradedBackend(g, w), N, normalized, budget)


def graded_chain_complex(
    k: FinSimpSet, g: GradedAlgebra, w: int, N: int, normalized: bool = False, budget: Optional[int] = None
) -> ChainComplex:
    """Weight-w part of C(K, A) for a monomial-quotient polynomial algebra."""
    return graded_loday_complex(k, g, w, N, normalized, budget).complex


def degenerate_subcomplex(k: FinSimpSet, a: FDAlgebra, N: int) -> List[Subspace]:
    """``D_n = sum_i image(s_i)`` inside the raw complex, built from Loday maps.

    Independent of the coordinate shortcut used by :func:`normalized_complex`;
    only practical for small inputs.
    """
    b, _ = a.unit_first()
    out = [Subspace.zero(b.dim ** k.size(0))]
    for n in range(1, N + 1):
        vecs = []
        for i in range(n):
            m = loday_map(k.degens[n - 1][i], k.size(n), b)
            vecs.extend(image_basis(m).basis)
        out.append(Subspace.span(b.dim ** k.size(n), vecs))
    return out


def normalized_by_quotient(k: FinSimpSet, a: FDAlgebra, N: int) -> ChainComplex:
    """Normalized complex computed literally as raw / degenerate (oracle path)."""
    return quotient_complex(chain_complex(k, a, N), degenerate_subcomplex(k, a, N))


# ---------------------------------------------------------------------------
# homology


@dataclass
class HomologyTable:
    dims: List[int]
    certified_upto: int
    meta: Dict[str, object] = field(default_factory=dict)
    chain_dims: List[int] = field(default_factory=list)
    representatives: Optional[List[Tuple[Dict[int, object], ...]]] = None
    seconds: float = 0.0

    def certified(self) -> List[int]:
        return self.dims[: self.certified_upto + 1]

    def euler_consistent(self) -> bool:
        lhs = sum((-1) ** n * c for n, c in enumerate(self.chain_dims))
        rhs = sum((-1) ** n * h for n, h in enumerate(self.dims))
        return lhs == rhs

    def to_json(self) -> Dict[str, object]:
        out = {
            "meta": dict(self.meta),
            "dims": list(self.dims),
            "certified_upto": self.certified_upto,
            "uncertified_degrees": list(range(self.certified_upto + 1, len(self.dims))),
            "chain_dims": list(self.chain_dims),
            "euler_consistent": self.euler_consistent(),
            "timing": {"seconds": round(self.seconds, 4)},
        }
        return out


def _table(cx: ChainComplex, meta, reps: bool, t0: float) -> HomologyTable:
    dims = cx.homology_dims()
    table = HomologyTable(dims, cx.top - 1, meta, list(cx.dims))
    if reps:
        table.representatives = [cx.homology(n).representatives for n in range(cx.top + 1)]
    table.seconds = time.perf_counter() - t0
    return table


def homology(
    k: FinSimpSet,
    a: FDAlgebra,
    N: int,
    use_normalized: bool = True,
    budget: Optional[int] = None,
    representatives: bool = False,
) -> HomologyTable:
    """H_n(K, A) for n <= N; degree N is only the cycle dimension (uncertified)."""
    t0 = time.perf_counter()
    cx = loday_complex(k, a, N, use_normalized, budget).complex
    meta = {"space": k.name, "algebra": a.name, "N": N, "normalized": use_normalized}
    return _table(cx, meta, representatives, t0)


def graded_homology(
    k: FinSimpSet,
    g: GradedAlgebra,
    w: int,
    N: int,
    use_normalized: bool = True,
    budget: Optional[int] = None,
) -> HomologyTable:
    t0 = time.perf_counter()
    cx = graded_loday_complex(k, g, w, N, use_normalized, budget).complex
    meta = {"space": k.name, "algebra": g.name, "weight": w, "N": N, "normalized": use_normalized}
    return _table(cx, meta, False, t0)


# ---------------------------------------------------------------------------
# module structure through the basepoint factor


def _basepoint_act(lc: LodayComplex, n: int, elem: Mapping[int, object], vec: Mapping[int, object]):
    """Multiply a chain by ``elem`` (rebased coordinates) in the basepoint factor."""
    backend = lc.backend
    bp = lc.space.basepoint_at(n)
    keys = lc.keys[n]
    index = lc.__dict__.setdefault("_index", {})
    if n not in index:
        index[n] = {key: i for i, key in enumerate(keys)}
    idx = index[n]
    out: Dict[int, object] = {}
    for col, x in vec.items():
        key = keys[col]
        cur = key[bp]
        for a_e, a_c in elem.items():
            prod = backend.algebra.multiply({a_e: 1}, {cur: 1})
            for e, c in prod.items():
                row = idx.get(key[:bp] + (e,) + key[bp + 1:])
                if row is None:
                    continue
                v = out.get(row, 0) + x * a_c * c
                if v:
                    out[row] = v
                else:
                    out.pop(row, None)
    return out


def homology_modules(
    k: FinSimpSet, a: FDAlgebra, N: int, budget: Optional[int] = None, normalized: bool = True
) -> List[FDModule]:
    """H_q(K, A) for q <= N-1 as modules over ``a`` via the basepoint factor."""
    lc = loday_complex(k, a, N, normalized, budget)
    backend = lc.backend
    out = []
    for q in range(N):
        h: SubquotientHomology = lc.complex.homology(q)
        mats = []
        for j in range(a.dim):
            elem = backend.from_source({j: 1})
            cols = []
            for r in h.representatives:
                cols.append(h.coordinates(_basepoint_act(lc, q, elem, r)))
            mats.append(RatMatrix.from_columns(h.dim, cols))
        out.append(FDModule(a, h.dim, tuple(mats), name=f"H_{q}({k.name},{a.name})"))
    return out


def h0_witness(k: FinSimpSet, a: FDAlgebra) -> RatMatrix:
    """Matrix of ``A -> C_0 -> H_0`` (basepoint inclusion) in homology coordinates.

    For connected K this is invertible.
    """
    lc = loday_complex(k, a, 1, True)
    h = lc.complex.homology(0)
    idx = {key: i for i, key in enumerate(lc.keys[0])}
    bp = k.basepoint_at(0)
    backend = lc.backend
    cols = []
    for j in range(a.dim):
        vec = backend.from_source({j: 1})
        chain = {}
        p = k.size(0)
        for e, c in vec.items():
            key = tuple(e if x == bp else backend.one for x in range(p))
            chain[idx[key]] = chain.get(idx[key], 0) + c
        cols.append(h.coordinates({i: v for i, v in chain.items() if v}))
    return RatMatrix.from_columns(h.dim, cols)


# ---------------------------------------------------------------------------
# cochains Hom_A(C(K, A), M)


def _module_over_backend(backend: _FDBackend, m: FDModule) -> List[RatMatrix]:
    """Action matrices of the rebased basis on M."""
    return [m.act_matrix(backend.P.apply({t: 1})) for t in range(backend.dim)]


def cochain_complex(
    k: FinSimpSet,
    a: FDAlgebra,
    m: FDModule,
    N: int,
    normalized: bool = False,
    budget: Optional[int] = None,
) -> ChainComplex:
    """Hom_A(C(K, A), M) in degrees 0..N, cohomologically indexed.

    C_n is free over A (acting on the basepoint factor) on the tensors with
    unit at the basepoint, so a cochain is a map from those generators to M.
    The codifferential is ``(-1)^{n+1}`` times precomposition with d_{n+1}.
    """
    if m.algebra is not a and m.algebra.dim != a.dim:
        raise ValueError("module is over a different algebra")
    lc = loday_complex(k, a, N, normalized, budget)
    backend = lc.backend
    act = _module_over_backend(backend, m)
    dense_act = [x.to_dense() for x in act]
    dm = m.dim
    gens = []
    for n in range(N + 1):
        bp = k.basepoint_at(n)
        gens.append([key for key in lc.keys[n] if key[bp] == backend.one])
    gidx = [{g: i for i, g in enumerate(gs)} for gs in gens]
    diffs = {}
    for n in range(1, N + 1):
        # delta^{n-1}: C^{n-1} -> C^n from d_n: C_n -> C_{n-1}
        d = lc.complex.differentials[n]
        dcols = d._cols_cache()
        sign = -1 if n % 2 else 1  # (-1)^{(n-1)+1}
        bp = k.basepoint_at(n - 1)
        keys_lo = lc.keys[n - 1]
        full_index = {key: i for i, key in enumerate(lc.keys[n])}
        ent: Dict[Tuple[int, int], object] = {}
        for gi, g in enumerate(gens[n]):
            col = dcols[full_index[g]]
            for row, c in col.items():
                key = keys_lo[row]
                b = key[bp]
                g2 = gidx[n - 1].get(key[:bp] + (backend.one,) + key[bp + 1:])
                if g2 is None:
                    continue
                mat = dense_act[b]
                for mp in range(dm):
                    for mm in range(dm):
                        v = mat[mp][mm]
                        if v:
                            r, cc = gi * dm + mp, g2 * dm + mm
                            nv = ent.get((r, cc), 0) + sign * c * v
                            if nv:
                                ent[(r, cc)] = nv
                            else:
                                ent.pop((r, cc), None)
        diffs[n] = RatMatrix(len(gens[n]) * dm, len(gens[n - 1]) * dm, ent)
    dims = tuple(len(gs) * dm for gs in gens)
    return ChainComplex(dims, diffs, cohomological=True)


def cohomology(
    k: FinSimpSet,
    a: FDAlgebra,
    m: FDModule,
    N: int,
    normalized: bool = True,
    budget: Optional[int] = None,
) -> HomologyTable:
    """H^n(K, A, M) for n <= N; degree N is uncertified."""
    t0 = time.perf_counter()
    cx = cochain_complex(k, a, m, N, normalized, budget)
    meta = {"space": k.name, "algebra": a.name, "module": m.name, "N": N, "normalized": normalized}
    return _table(cx, meta, False, t0)
