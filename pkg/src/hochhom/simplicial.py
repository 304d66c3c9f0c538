"""Finite pointed simplicial sets, truncated at a level bound.

A :class:`FinSimpSet` stores every level explicitly as a tuple of labels
together with face and degeneracy tables indexed by position.  Labels are
canonical: simplices of the standard simplex are nondecreasing integer
tuples, the collapsed basepoint of a quotient is ``"*"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Callable, Hashable, List, Optional, Sequence, Tuple

BASEPOINT = "*"


class TruncationMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FinSimpSet:
    """Levels ``0..trunc_level`` of a pointed simplicial set.

    ``faces[n][i][x]`` is the index of ``d_i`` of simplex ``x`` at level n
    (defined for n >= 1); ``degens[n][i][x]`` is the index of ``s_i x`` at
    level n+1 (defined for n < trunc_level).
    """

    labels: Tuple[Tuple[Hashable, ...], ...]
    faces: Tuple[Tuple[Tuple[int, ...], ...], ...]
    degens: Tuple[Tuple[Tuple[int, ...], ...], ...]
    basepoint: int = 0
    name: str = ""

    @property
    def trunc_level(self) -> int:
        return len(self.labels) - 1

    def size(self, n: int) -> int:
        return len(self.labels[n])

    def level_sizes(self) -> Tuple[int, ...]:
        return tuple(len(l) for l in self.labels)

    def face(self, n: int, i: int, x: int) -> int:
        return self.faces[n][i][x]

    def degen(self, n: int, i: int, x: int) -> int:
        return self.degens[n][i][x]

    def basepoint_at(self, n: int) -> int:
        """Index of the fully degenerate basepoint simplex at level n."""
        cache = self.__dict__.get("_bp")
        if cache is None:
            cache = [self.basepoint]
            for m in range(self.trunc_level):
                cache.append(self.degens[m][0][cache[-1]])
            object.__setattr__(self, "_bp", tuple(cache))
        return cache[n]

    def index(self, n: int, label: Hashable) -> int:
        return self.labels[n].index(label)

    def nondegenerate(self) -> "NondegTable":
        cache = self.__dict__.get("_nd")
        if cache is None:
            cache = NondegTable.of(self)
            object.__setattr__(self, "_nd", cache)
        return cache

    def degenerate_images(self, n: int) -> Tuple[frozenset, ...]:
        """For n >= 1, the images of ``s_0..s_{n-1}`` inside level n."""
        if n == 0:
            return ()
        return tuple(frozenset(self.degens[n - 1][i]) for i in range(n))

    def truncate(self, n: int) -> "FinSimpSet":
        if n > self.trunc_level:
            raise TruncationMismatch(f"cannot extend truncation {self.trunc_level} to {n}")
        return FinSimpSet(
            self.labels[: n + 1], self.faces[: n + 1], self.degens[:n], self.basepoint, self.name
        )

    def __repr__(self):
        nm = self.name or "FinSimpSet"
        return f"<{nm} levels={self.level_sizes()}>"


@dataclass(frozen=True)
class NondegTable:
    levels: Tuple[Tuple[int, ...], ...]

    @classmethod
    def of(cls, k: FinSimpSet) -> "NondegTable":
        out = [tuple(range(k.size(0)))]
        for n in range(1, k.trunc_level + 1):
            deg = set()
            for img in k.degenerate_images(n):
                deg |= img
            out.append(tuple(x for x in range(k.size(n)) if x not in deg))
        return cls(tuple(out))

    def counts(self) -> Tuple[int, ...]:
        return tuple(len(l) for l in self.levels)

    def is_nondegenerate(self, n: int, x: int) -> bool:
        return x in self.levels[n]


def from_functions(
    levels: Sequence[Sequence[Hashable]],
    face: Callable[[Hashable, int], Hashable],
    degen: Callable[[Hashable, int], Hashable],
    base: Hashable,
    name: str = "",
) -> FinSimpSet:
    """Tabulate a simplicial set given by label-level face/degeneracy rules."""
    levels = [tuple(l) for l in levels]
    pos = [{lab: i for i, lab in enumerate(l)} for l in levels]
    N = len(levels) - 1
    faces: List[Tuple[Tuple[int, ...], ...]] = [()]
    for n in range(1, N + 1):
        faces.append(tuple(tuple(pos[n - 1][face(lab, i)] for lab in levels[n]) for i in range(n + 1)))
    degens = []
    for n in range(N):
        degens.append(tuple(tuple(pos[n + 1][degen(lab, i)] for lab in levels[n]) for i in range(n + 1)))
    return FinSimpSet(tuple(levels), tuple(faces), tuple(degens), pos[0][base], name)


def _monotone(n: int, d: int) -> List[Tuple[int, ...]]:
    return list(combinations_with_replacement(range(d + 1), n + 1))


def _drop(u, i):
    return u[:i] + u[i + 1 :]


def _dup(u, i):
    return u[: i + 1] + u[i:]


def standard_simplex(d: int, N: int) -> FinSimpSet:
    levels = [_monotone(n, d) for n in range(N + 1)]
    return from_functions(levels, _drop, _dup, (0,), name=f"simplex({d})")


def boundary_simplex(d: int, N: int) -> FinSimpSet:
    if d < 1:
        raise ValueError("boundary_simplex needs d >= 1")
    full = set(range(d + 1))
    levels = [[u for u in _monotone(n, d) if set(u) != full] for n in range(N + 1)]
    return from_functions(levels, _drop, _dup, (0,), name=f"boundary({d})")


def sphere(d: int, N: int) -> FinSimpSet:
    """The quotient of the standard d-simplex by its boundary."""
    if d < 1:
        raise ValueError("sphere needs d >= 1")
    full = set(range(d + 1))

    def face(u, i):
        if u == BASEPOINT:
            return BASEPOINT
        v = _drop(u, i)
        return v if set(v) == full else BASEPOINT

    def degen(u, i):
        return BASEPOINT if u == BASEPOINT else _dup(u, i)

    levels = [[BASEPOINT] + [u for u in _monotone(n, d) if set(u) == full] for n in range(N + 1)]
    return from_functions(levels, face, degen, BASEPOINT, name=f"sphere({d})")


def point(N: int) -> FinSimpSet:
    return standard_simplex(0, N)


def wedge(k1: FinSimpSet, k2: FinSimpSet) -> FinSimpSet:
    """Union of ``k1`` and ``k2`` with their basepoint chains identified."""
    if k1.trunc_level != k2.trunc_level:
        raise TruncationMismatch("wedge needs equal truncation levels")
    N = k1.trunc_level
    parts = (k1, k2)

    def tag(side, n, x):
        return BASEPOINT if x == parts[side].basepoint_at(n) else (side + 1, parts[side].labels[n][x])

    levels = []
    for n in range(N + 1):
        lab = [BASEPOINT]
        for side, k in enumerate(parts):
            lab += [(side + 1, k.labels[n][x]) for x in range(k.size(n)) if x != k.basepoint_at(n)]
        levels.append(lab)
    lookup = [[{lab: x for x, lab in enumerate(k.labels[n])} for n in range(N + 1)] for k in parts]

    def make(rule):
        def f(lab, i, n, m):
            if lab == BASEPOINT:
                return BASEPOINT
            side, inner = lab
            k = parts[side - 1]
            x = lookup[side - 1][n][inner]
            return tag(side - 1, m, rule(k, n, i, x))

        return f

    face_rule = make(lambda k, n, i, x: k.faces[n][i][x])
    degen_rule = make(lambda k, n, i, x: k.degens[n][i][x])
    return _tabulate_levelwise(levels, face_rule, degen_rule, BASEPOINT, f"wedge({k1.name},{k2.name})")


def _tabulate_levelwise(levels, face_rule, degen_rule, base, name) -> FinSimpSet:
    # like from_functions, but the rules also receive the source/target level
    levels = [tuple(l) for l in levels]
    pos = [{lab: i for i, lab in enumerate(l)} for l in levels]
    N = len(levels) - 1
    faces: List[Tuple[Tuple[int, ...], ...]] = [()]
    for n in range(1, N + 1):
        faces.append(
            tuple(tuple(pos[n - 1][face_rule(lab, i, n, n - 1)] for lab in levels[n]) for i in range(n + 1))
        )
    degens = []
    for n in range(N):
        degens.append(
            tuple(tuple(pos[n + 1][degen_rule(lab, i, n, n + 1)] for lab in levels[n]) for i in range(n + 1))
        )
    return FinSimpSet(tuple(levels), tuple(faces), tuple(degens), pos[0][base], name)


def disjoint_union(k1: FinSimpSet, k2: FinSimpSet) -> FinSimpSet:
    """Disjoint union, pointed at the basepoint of ``k1``."""
    if k1.trunc_level != k2.trunc_level:
        raise TruncationMismatch("disjoint union needs equal truncation levels")
    N = k1.trunc_level
    parts = (k1, k2)
    levels = [[(s + 1, lab) for s, k in enumerate(parts) for lab in k.labels[n]] for n in range(N + 1)]
    lookup = [[{lab: x for x, lab in enumerate(k.labels[n])} for n in range(N + 1)] for k in parts]

    def make(table):
        def f(lab, i, n, m):
            side, inner = lab
            k = parts[side - 1]
            return (side, k.labels[m][table(k)[n][i][lookup[side - 1][n][inner]]])

        return f

    base = (1, k1.labels[0][k1.basepoint])
    return _tabulate_levelwise(
        levels, make(lambda k: k.faces), make(lambda k: k.degens), base, f"disjoint({k1.name},{k2.name})"
    )


def skeleton(k: FinSimpSet, n: int) -> FinSimpSet:
    """Simplicial subset generated by the nondegenerate simplices of dim <= n."""
    if n > k.trunc_level:
        raise TruncationMismatch("skeleton dimension above truncation")
    N = k.trunc_level
    nd = k.nondegenerate()
    keep = [set() for _ in range(N + 1)]
    for m in range(min(n, N), -1, -1):
        keep[m] |= set(nd.levels[m])
        if m >= 1:
            for x in keep[m]:
                for i in range(m + 1):
                    keep[m - 1].add(k.faces[m][i][x])
    keep[0].add(k.basepoint)
    for m in range(1, N + 1):
        for x in keep[m - 1]:
            for i in range(m):
                keep[m].add(k.degens[m - 1][i][x])
    order = [sorted(s) for s in keep]
    new_index = [{x: j for j, x in enumerate(o)} for o in order]
    labels = tuple(tuple(k.labels[m][x] for x in order[m]) for m in range(N + 1))
    faces = [()] + [
        tuple(tuple(new_index[m - 1][k.faces[m][i][x]] for x in order[m]) for i in range(m + 1))
        for m in range(1, N + 1)
    ]
    degens = [
        tuple(tuple(new_index[m + 1][k.degens[m][i][x]] for x in order[m]) for i in range(m + 1)) for m in range(N)
    ]
    return FinSimpSet(labels, tuple(faces), tuple(degens), new_index[0][k.basepoint], f"skeleton({k.name},{n})")


def is_connected(k: FinSimpSet) -> bool:
    verts = list(range(k.size(0)))
    if not verts:
        return False
    parent = verts[:]

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if k.trunc_level >= 1:
        for e in k.nondegenerate().levels[1]:
            a, b = find(k.faces[1][0][e]), find(k.faces[1][1][e])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return len({find(v) for v in verts}) == 1


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failure: Optional[str] = None
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def validate(k: FinSimpSet) -> ValidationReport:
    """Exhaustively check the simplicial identities and pointedness."""
    N = k.trunc_level
    F, S = k.faces, k.degens
    for n in range(N + 1):
        if n >= 1 and len(F[n]) != n + 1:
            return ValidationReport(False, f"level {n} has {len(F[n])} face maps")
        if n < N and len(S[n]) != n + 1:
            return ValidationReport(False, f"level {n} has {len(S[n])} degeneracies")
        if n >= 1:
            for i, table in enumerate(F[n]):
                if len(table) != k.size(n) or any(not 0 <= y < k.size(n - 1) for y in table):
                    return ValidationReport(False, f"d_{i} on level {n} is not a total map")
        if n < N:
            for i, table in enumerate(S[n]):
                if len(table) != k.size(n) or any(not 0 <= y < k.size(n + 1) for y in table):
                    return ValidationReport(False, f"s_{i} on level {n} is not a total map")
    # d_i d_j = d_{j-1} d_i for i < j
    for n in range(2, N + 1):
        for j in range(n + 1):
            for i in range(j):
                for x in range(k.size(n)):
                    if F[n - 1][i][F[n][j][x]] != F[n - 1][j - 1][F[n][i][x]]:
                        return ValidationReport(False, f"d_{i} d_{j} != d_{j-1} d_{i}", (n, x))
    # s_i s_j = s_{j+1} s_i for i <= j
    for n in range(N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                for x in range(k.size(n)):
                    if S[n + 1][i][S[n][j][x]] != S[n + 1][j + 1][S[n][i][x]]:
                        return ValidationReport(False, f"s_{i} s_{j} != s_{j+1} s_{i}", (n, x))
    # mixed identities, for x at level n, s_j: n -> n+1, d_i: n+1 -> n
    for n in range(N):
        for j in range(n + 1):
            for i in range(n + 2):
                for x in range(k.size(n)):
                    lhs = F[n + 1][i][S[n][j][x]]
                    if i == j or i == j + 1:
                        rhs, rule = x, f"d_{i} s_{j} = id"
                    elif i < j:
                        if n == 0:
                            continue
                        rhs, rule = S[n - 1][j - 1][F[n][i][x]], f"d_{i} s_{j} = s_{j-1} d_{i}"
                    else:
                        if n == 0:
                            continue
                        rhs, rule = S[n - 1][j][F[n][i - 1][x]], f"d_{i} s_{j} = s_{j} d_{i-1}"
                    if lhs != rhs:
                        return ValidationReport(False, rule + " fails", (n, x))
    if not 0 <= k.basepoint < k.size(0):
        return ValidationReport(False, "basepoint out of range")
    for n in range(1, N + 1):
        b = k.basepoint_at(n)
        for i in range(n + 1):
            if F[n][i][b] != k.basepoint_at(n - 1):
                return ValidationReport(False, "basepoint chain not closed under faces", (n, b))
        if n < N:
            for i in range(n + 1):
                if S[n][i][b] != k.basepoint_at(n + 1):
                    return ValidationReport(False, "basepoint chain not closed under degeneracies", (n, b))
    return ValidationReport(True)


def levelwise_isomorphic(k1: FinSimpSet, k2: FinSimpSet) -> bool:
    """Cheap isomorphism-invariant comparison: level sizes and nondegenerate counts."""
    return k1.level_sizes() == k2.level_sizes() and k1.nondegenerate().counts() == k2.nondegenerate().counts()
