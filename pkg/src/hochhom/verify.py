"""Verification suites: homology computations checked against independent oracles.

Each suite returns a :class:`SuiteReport`.  Expected values never come from
the homology engine itself: Kähler differentials come from the two
constructions in :mod:`hochhom.algebra`, weight dimensions from closed
formulas, Ext from free resolutions.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import algebra as alg
from . import simplicial as simp
from .algebra import FDAlgebra, FDModule, SizeBudgetExceeded
from .hochschild import graded_homology, homology, homology_modules
from .homalg import degeneration_check, hom_dim


class HypothesisViolation(ValueError):
    """A suite was asked to check a statement outside its hypotheses."""


@dataclass
class CaseResult:
    inputs: Dict[str, object]
    expected: object
    computed: object
    passed: bool
    seconds: float = 0.0
    note: str = ""

    def to_json(self):
        out = {
            "inputs": self.inputs,
            "expected": self.expected,
            "computed": self.computed,
            "verdict": "pass" if self.passed else "fail",
            "timing": {"seconds": round(self.seconds, 4)},
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class SuiteReport:
    name: str
    cases: List[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_json(self):
        return {
            "suite": self.name,
            "verdict": "pass" if self.passed else "fail",
            "cases": [c.to_json() for c in self.cases],
        }

    def summary(self) -> str:
        good = sum(c.passed for c in self.cases)
        return f"{self.name}: {good}/{len(self.cases)} cases pass"


# ---------------------------------------------------------------------------
# H_q(S^d, A) in degrees <= d


def suite_low_degree(algebras: Sequence[FDAlgebra], d_values: Sequence[int]) -> SuiteReport:
    rep = SuiteReport("low_degree")
    for a in algebras:
        om_k = alg.omega1_kernel(a)
        om_l = alg.omega1_leibniz(a)
        iso = alg.omega1_isomorphism(om_l, om_k)
        for d in d_values:
            N = d + 2
            t0 = time.perf_counter()
            table = homology(simp.sphere(d, N), a, N)
            got = table.dims[: d + 1]
            want = [a.dim] + [0] * (d - 1) + [om_k.dim]
            ok = got == want and om_k.dim == om_l.dim and iso is not None
            note = "" if iso is not None else "omega1 constructions disagree"
            rep.cases.append(
                CaseResult(
                    {"algebra": a.name, "d": d, "N": N},
                    want,
                    got,
                    ok,
                    time.perf_counter() - t0,
                    note,
                )
            )
    return rep


def default_low_degree() -> SuiteReport:
    algebras = [alg.ground_field(), alg.truncated_poly(2), alg.truncated_poly(3), alg.split_pair()]
    return suite_low_degree(algebras, [1, 2, 3])


# ---------------------------------------------------------------------------
# localization


def suite_localization(k, a: FDAlgebra, s, N: int, report: Optional[SuiteReport] = None) -> SuiteReport:
    """Compare dims of H_q(K, A)_s with H_q(K, A_s) for q <= N-1."""
    rep = report if report is not None else SuiteReport("localization")
    if not simp.is_connected(k):
        raise HypothesisViolation(
            f"localization comparison requires a connected simplicial set; {k.name} is not connected"
        )
    t0 = time.perf_counter()
    loc = alg.localize(a, s)
    mods = homology_modules(k, a, N)
    lhs = [alg.localize_module(h, loc).dim for h in mods]
    rhs = homology(k, loc.algebra, N).dims[:N]
    rep.cases.append(
        CaseResult(
            {"space": k.name, "algebra": a.name, "s": {str(i): str(v) for i, v in sorted(s.items())}, "N": N},
            rhs,
            lhs,
            lhs == rhs,
            time.perf_counter() - t0,
        )
    )
    return rep


def default_localization(N: int = 4) -> SuiteReport:
    a = alg.split_pair()
    rep = SuiteReport("localization")
    spaces = [simp.sphere(1, N), simp.sphere(2, N), simp.wedge(simp.sphere(1, N), simp.sphere(1, N))]
    for k in spaces:
        suite_localization(k, a, {1: 1}, N, rep)
    suite_localization(simp.sphere(1, N), a, dict(a.unit), N, rep)
    return rep


# ---------------------------------------------------------------------------
# smooth case, one weight at a time


def suite_smooth_hodge(m: int, d: int, w_max: int, n_max: int, report: Optional[SuiteReport] = None) -> SuiteReport:
    rep = report if report is not None else SuiteReport("smooth_hodge")
    g = alg.poly(m)
    N = n_max + 1
    k = simp.sphere(d, N)
    for w in range(w_max + 1):
        t0 = time.perf_counter()
        table = graded_homology(k, g, w, N)
        got = table.dims[: n_max + 1]
        want = [
            alg.smooth_hodge_predicted_dim(m, d, n // d, w) if n % d == 0 else 0 for n in range(n_max + 1)
        ]
        rep.cases.append(
            CaseResult({"m": m, "d": d, "weight": w, "n_max": n_max}, want, got, got == want, time.perf_counter() - t0)
        )
    return rep


def default_smooth_hodge() -> SuiteReport:
    rep = SuiteReport("smooth_hodge")
    for d in (1, 2):
        suite_smooth_hodge(1, d, 3, 2 * d + 1, rep)
    suite_smooth_hodge(2, 1, 2, 3, rep)
    return rep


# ---------------------------------------------------------------------------
# homotopy invariance


def suite_homotopy_invariance(
    pairs: Sequence[Tuple[object, object]],
    algebras: Sequence[FDAlgebra],
    N: int,
    compare_raw: bool = True,
    report: Optional[SuiteReport] = None,
) -> SuiteReport:
    """Weakly equivalent pairs must have equal homology in degrees <= N-1.

    With ``compare_raw`` each side is also computed from the unnormalized
    complex when that fits the budget.
    """
    rep = report if report is not None else SuiteReport("homotopy_invariance")
    for k1, k2 in pairs:
        for a in algebras:
            t0 = time.perf_counter()
            inputs = {"pair": [k1.name, k2.name], "algebra": a.name, "N": N}
            h1 = homology(k1, a, N).dims[:N]
            h2 = homology(k2, a, N).dims[:N]
            ok = h1 == h2
            note = ""
            if compare_raw:
                for k, h in ((k1, h1), (k2, h2)):
                    try:
                        raw = homology(k, a, N, use_normalized=False).dims[:N]
                    except SizeBudgetExceeded:
                        note += f"raw complex of {k.name} over budget; "
                        continue
                    if raw != h:
                        ok = False
                        note += f"raw and normalized differ on {k.name}; "
            rep.cases.append(CaseResult(inputs, h1, h2, ok, time.perf_counter() - t0, note.strip()))
    return rep


def default_homotopy_invariance() -> SuiteReport:
    """Pairs whose complexes fit the default budget.

    Δ^3 is absent: its normalized complex already has about 10^6 basis
    tensors in degree 2 over a two-dimensional algebra.
    """
    rep = SuiteReport("homotopy_invariance")
    algebras = [alg.truncated_poly(2), alg.split_pair()]
    for N, make in (
        (4, lambda N: (simp.point(N), simp.standard_simplex(1, N))),
        (3, lambda N: (simp.point(N), simp.standard_simplex(2, N))),
        (4, lambda N: (simp.sphere(1, N), simp.boundary_simplex(2, N))),
        (4, lambda N: (simp.sphere(1, N), simp.wedge(simp.sphere(1, N), simp.standard_simplex(1, N)))),
        (4, lambda N: (simp.sphere(1, N), simp.sphere(1, N))),
    ):
        suite_homotopy_invariance([make(N)], algebras, N, report=rep)
    return rep


# ---------------------------------------------------------------------------
# cohomology and the universal coefficient spectral sequence


def suite_hodge_cohomology(
    d: int, a: FDAlgebra, m: FDModule, n_max: int, report: Optional[SuiteReport] = None
) -> SuiteReport:
    rep = report if report is not None else SuiteReport("hodge_cohomology")
    t0 = time.perf_counter()
    k = simp.sphere(d, n_max + 1)
    dc = degeneration_check(k, a, m, n_max)
    ok = dc.degenerates and dc.consistent
    note = "" if ok else "E2 total dimension exceeds cohomology"
    expected = dc.rhs
    if alg.is_semisimple(a):
        mods = homology_modules(k, a, n_max + 1)
        shape = [hom_dim(mods[n], m) if n % d == 0 else 0 for n in range(n_max + 1)]
        if shape != dc.lhs:
            ok = False
            note = "semisimple Hodge shape violated"
        expected = shape
    rep.cases.append(
        CaseResult(
            {"d": d, "algebra": a.name, "module": m.name, "n_max": n_max},
            expected,
            dc.lhs,
            ok,
            time.perf_counter() - t0,
            note,
        )
    )
    rep.cases[-1].inputs["degeneration"] = dc.to_json()
    return rep


def default_hodge_cohomology() -> SuiteReport:
    rep = SuiteReport("hodge_cohomology")
    qq = alg.product_of_fields(2)
    suite_hodge_cohomology(2, qq, alg.regular_module(qq), 4, rep)
    t2 = alg.truncated_poly(2)
    suite_hodge_cohomology(1, t2, alg.residue_module(t2), 3, rep)
    k = alg.ground_field()
    suite_hodge_cohomology(3, k, alg.regular_module(k), 3, rep)
    return rep


SUITES: Dict[str, Callable[[], SuiteReport]] = {
    "low_degree": default_low_degree,
    "localization": default_localization,
    "smooth_hodge": default_smooth_hodge,
    "homotopy_invariance": default_homotopy_invariance,
    "hodge_cohomology": default_hodge_cohomology,
}
