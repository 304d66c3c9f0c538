"""Acceptance criteria, checked exactly (zero tolerance) with their runtime limits.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``; each criterion prints one PASS/FAIL line.
"""

import time
from math import comb

import pytest

from hochhom import algebra as alg
from hochhom import simplicial as simp
from hochhom.algebra import SizeBudgetExceeded
from hochhom.hochschild import (
    chain_complex,
    cochain_complex,
    cohomology,
    complex_size,
    graded_chain_complex,
    graded_homology,
    homology,
    homology_modules,
    normalized_complex,
)
from hochhom.homalg import degeneration_check, ext, free_resolution
from hochhom.verify import HypothesisViolation, suite_localization


def _xy():
    return alg.GradedAlgebra((1, 1), ((2, 0), (1, 1), (0, 2)), name="Q[x,y]/(x2,xy,y2)").to_fd()


# each returns (passed, detail)


def criterion_1():
    t0 = time.perf_counter()
    algebras = [alg.ground_field(), alg.truncated_poly(2), alg.truncated_poly(3), alg.split_pair()]
    omega_expected = [0, 1, 2, 0]
    problems = []
    for a, om in zip(algebras, omega_expected):
        k_om, l_om = alg.omega1_kernel(a), alg.omega1_leibniz(a)
        if not (k_om.dim == l_om.dim == om and alg.omega1_isomorphism(l_om, k_om) is not None):
            problems.append(f"omega1 {a.name}")
        for d in (1, 2, 3):
            N = d + 2
            h = homology(simp.sphere(d, N), a, N).dims
            want = [a.dim] + [0] * (d - 1) + [om]
            if h[: d + 1] != want:
                problems.append(f"{a.name} d={d}: {h[:d + 1]} != {want}")
    dt = time.perf_counter() - t0
    if dt >= 60:
        problems.append(f"runtime {dt:.1f}s >= 60s")
    return not problems, f"{dt:.1f}s " + "; ".join(problems)


def criterion_2():
    t0 = time.perf_counter()
    corpus = [
        (alg.ground_field(), 0),
        (alg.truncated_poly(2), 1),
        (alg.truncated_poly(3), 2),
        (alg.truncated_poly(4), 3),
        (alg.split_pair(), 0),
        (alg.product_of_fields(2), 0),
        (_xy(), 3),
    ]
    problems = []
    for a, om in corpus:
        k_om, l_om = alg.omega1_kernel(a), alg.omega1_leibniz(a)
        phi = alg.omega1_isomorphism(l_om, k_om)
        if k_om.dim != l_om.dim or k_om.dim != om or phi is None:
            problems.append(a.name)
            continue
        for i in range(a.dim):
            if phi @ l_om.module.action[i] != k_om.module.action[i] @ phi:
                problems.append(f"{a.name} not A-linear")
            if phi.apply(l_om.d.apply({i: 1})) != k_om.d.apply({i: 1}):
                problems.append(f"{a.name} does not carry d to d")
    dt = time.perf_counter() - t0
    if dt >= 5:
        problems.append(f"runtime {dt:.1f}s >= 5s")
    return not problems, f"{dt:.2f}s " + "; ".join(problems)


def criterion_3():
    t0 = time.perf_counter()
    a = alg.split_pair()
    N = 4  # degrees q <= 3 are certified
    problems = []
    loc = alg.localize(a, {1: 1})
    if loc.algebra.dim != 1:
        problems.append("A_s is not one-dimensional")
    q_dims = homology(simp.sphere(1, N), alg.ground_field(), N).dims[:N]
    spaces = [simp.sphere(1, N), simp.sphere(2, N), simp.wedge(simp.sphere(1, N), simp.sphere(1, N))]
    for k in spaces:
        rep = suite_localization(k, a, {1: 1}, N)
        c = rep.cases[0]
        want = homology(k, alg.ground_field(), N).dims[:N]
        if not rep.passed or c.computed != want:
            problems.append(f"{k.name}: {c.computed} vs {want}")
    try:
        suite_localization(simp.disjoint_union(simp.point(2), simp.point(2)), a, {1: 1}, 2)
        problems.append("disconnected space accepted")
    except HypothesisViolation:
        pass
    dt = time.perf_counter() - t0
    if dt >= 30:
        problems.append(f"runtime {dt:.1f}s >= 30s")
    return not problems, f"{dt:.1f}s " + "; ".join(problems)


def _hodge_runs():
    runs = [(1, 1, 3, 3), (1, 2, 3, 5), (2, 1, 2, 3)]  # (m, d, w_max, n_max)
    for m, d, w_max, n_max in runs:
        for w in range(w_max + 1):
            yield m, d, w, n_max


def criterion_4():
    t0 = time.perf_counter()
    problems = []
    for m, d, w, n_max in _hodge_runs():
        N = n_max + 1
        got = graded_homology(simp.sphere(d, N), alg.poly(m), w, N).dims[: n_max + 1]
        want = [alg.smooth_hodge_predicted_dim(m, d, n // d, w) if n % d == 0 else 0 for n in range(n_max + 1)]
        if got != want:
            problems.append(f"m={m} d={d} w={w}: {got} != {want}")
    dt = time.perf_counter() - t0
    if dt >= 300:
        problems.append(f"runtime {dt:.1f}s >= 300s")
    return not problems, f"{dt:.1f}s " + "; ".join(problems)


def criterion_5():
    t0 = time.perf_counter()
    a = alg.truncated_poly(2)
    N = 4  # degrees <= 3
    problems = []
    pairs = [(simp.point(N), simp.standard_simplex(3, N)), (simp.sphere(1, N), simp.boundary_simplex(2, N))]
    for k1, k2 in pairs:
        try:
            h = []
            for k in (k1, k2):
                norm = homology(k, a, N).dims[:N]
                raw = homology(k, a, N, use_normalized=False).dims[:N]
                if raw != norm:
                    problems.append(f"raw {raw} != normalized {norm} on {k.name}")
                h.append(norm)
            if h[0] != h[1]:
                problems.append(f"{k1.name} {h[0]} != {k2.name} {h[1]}")
        except SizeBudgetExceeded as exc:
            problems.append(f"{k1.name} vs {k2.name}: {exc}")
    dt = time.perf_counter() - t0
    if dt >= 60:
        problems.append(f"runtime {dt:.1f}s >= 60s")
    return not problems, f"{dt:.1f}s " + "; ".join(problems)


def criterion_6():
    t0 = time.perf_counter()
    problems = []
    a = alg.truncated_poly(2)
    k = alg.residue_module(a)
    # Ext table and the periodic resolution
    res = free_resolution(a, k, 4)
    if res.ranks[:4] != [1, 1, 1, 1] or any(res.maps[p] != a.mult_matrix({1: 1}) for p in range(1, 4)):
        problems.append("resolution of Q is not periodic multiplication by x")
    e = ext(a, k, k, 3).dims
    if e != [1, 1, 1, 1]:
        problems.append(f"Ext(Q,Q) = {e}")
    dc = degeneration_check(simp.sphere(1, 4), a, k, 3)
    if dc.lhs != dc.rhs:
        problems.append(f"d=1: dim H^n = {dc.lhs} but sum of Ext = {dc.rhs}")
    qq = alg.split_pair()
    co = cohomology(simp.sphere(2, 5), qq, alg.regular_module(qq), 5).dims[:5]
    if co != [2, 0, 0, 0, 0]:
        problems.append(f"d=2 QxQ cohomology {co}")
    dt = time.perf_counter() - t0
    if dt >= 120:
        problems.append(f"runtime {dt:.1f}s >= 120s")
    return not problems, f"{dt:.1f}s " + "; ".join(problems)


def criterion_7():
    t0 = time.perf_counter()
    problems = []
    # simplicial constructors
    spaces = [
        simp.point(4),
        simp.standard_simplex(1, 4),
        simp.standard_simplex(2, 4),
        simp.standard_simplex(3, 4),
        simp.boundary_simplex(1, 4),
        simp.boundary_simplex(2, 4),
        simp.boundary_simplex(3, 4),
        simp.sphere(1, 6),
        simp.sphere(2, 6),
        simp.sphere(3, 6),
        simp.wedge(simp.sphere(1, 4), simp.sphere(2, 4)),
        simp.disjoint_union(simp.point(4), simp.sphere(1, 4)),
        simp.skeleton(simp.standard_simplex(3, 4), 1),
    ]
    for k in spaces:
        rep = simp.validate(k)
        if not rep.ok:
            problems.append(f"{k.name}: {rep.failure}")
    for d in (1, 2, 3):
        sizes = simp.sphere(d, 6).level_sizes()
        if sizes != tuple(1 + comb(n, d) for n in range(7)):
            problems.append(f"sphere({d}) sizes {sizes}")
    # d o d = 0 on generated complexes
    algebras = [alg.ground_field(), alg.truncated_poly(2), alg.truncated_poly(3), alg.split_pair(), alg.product_of_fields(2)]
    small = [simp.sphere(1, 3), simp.sphere(2, 3), simp.boundary_simplex(2, 3), simp.standard_simplex(1, 3)]
    for k in small:
        for a in algebras:
            for cx in (
                chain_complex(k, a, 3),
                normalized_complex(k, a, 3),
                cochain_complex(k, a, alg.regular_module(a), 3),
                cochain_complex(k, a, alg.regular_module(a), 3, normalized=True),
            ):
                try:
                    cx.check_square_zero()
                except Exception as exc:  # noqa: BLE001
                    problems.append(f"d^2 != 0 on {k.name}/{a.name}: {exc}")
    # graded complexes: d o d = 0 and Euler characteristics from independent counts
    for m, d, w, n_max in _hodge_runs():
        N = n_max + 1
        k = simp.sphere(d, N)
        g = alg.poly(m)
        cx = graded_chain_complex(k, g, w, N, normalized=True)
        cx.check_square_zero()
        counts = [complex_size(k, g, n, True, w) - (complex_size(k, g, n - 1, True, w) if n else 0) for n in range(N + 1)]
        h = cx.homology_dims()
        if tuple(counts) != cx.dims or sum((-1) ** n * c for n, c in enumerate(counts)) != sum(
            (-1) ** n * x for n, x in enumerate(h)
        ):
            problems.append(f"Euler mismatch m={m} d={d} w={w}")
    dt = time.perf_counter() - t0
    if dt >= 30:
        problems.append(f"runtime {dt:.1f}s >= 30s")
    return not problems, f"{dt:.1f}s " + "; ".join(problems)


CRITERIA = {
    1: ("low-degree groups of spheres", criterion_1),
    2: ("Kähler differentials two ways", criterion_2),
    3: ("localization on connected spaces", criterion_3),
    4: ("smooth weight dimensions", criterion_4),
    5: ("homotopy invariance up to degree 3", criterion_5),
    6: ("cohomology and the Ext spectral sequence", criterion_6),
    7: ("structural properties", criterion_7),
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    title, fn = CRITERIA[number]
    ok, detail = fn()
    with capsys.disabled():
        print(f"\nCRITERION {number} ({title}): {'PASS' if ok else 'FAIL'} {detail}".rstrip())
    assert ok, detail


if __name__ == "__main__":
    for number in sorted(CRITERIA):
        title, fn = CRITERIA[number]
        ok, detail = fn()
        print(f"CRITERION {number} ({title}): {'PASS' if ok else 'FAIL'} {detail}".rstrip())
