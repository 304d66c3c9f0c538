"""Command line front end.

    hochhom CONFIG.json
    hochhom verify SUITE [--corpus default] [--output PATH] [--format json|text]

Exit status: 0 success, 1 suite failure, 2 input error, 3 size budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from . import algebra as alg
from . import simplicial as simp
from . import verify
from .algebra import AlgebraError, FDAlgebra, GradedAlgebra, SizeBudgetExceeded
from .hochschild import budget_scope, cohomology, complex_size, default_budget, graded_homology, homology
from .homalg import ext

COMMANDS = ("homology", "cohomology", "graded-homology", "ext", "verify")
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class ConfigError(ValueError):
    def __init__(self, errors: List[Tuple[str, str]]):
        self.errors = errors
        super().__init__("; ".join(f"{p}: {m}" for p, m in errors))


# ---------------------------------------------------------------------------
# expressions


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokens(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif sym is not None and sym.strip():
            out.append(("sym", sym))
        pos = m.end()
    return out


def parse_call(text: str):
    """Parse ``name(arg, ...)`` into nested tuples ``(name, args)``; ints stay ints."""
    toks = _tokens(text)
    i = 0

    def expr():
        nonlocal i
        if i >= len(toks):
            raise ValueError("unexpected end of expression")
        kind, val = toks[i]
        i += 1
        if kind == "num":
            return val
        if kind != "name":
            raise ValueError(f"unexpected {val!r}")
        args = []
        if i < len(toks) and toks[i] == ("sym", "("):
            i += 1
            if toks[i:i + 1] == [("sym", ")")]:
                i += 1
                return (val, args)
            while True:
                args.append(expr())
                if i < len(toks) and toks[i] == ("sym", ","):
                    i += 1
                    continue
                if i < len(toks) and toks[i] == ("sym", ")"):
                    i += 1
                    break
                raise ValueError("expected ',' or ')'")
        return (val, args)

    tree = expr()
    if i != len(toks):
        raise ValueError("trailing input after expression")
    return tree


_SPACE_ARITY = {
    "point": (),
    "simplex": ("int",),
    "boundary": ("int",),
    "sphere": ("int",),
    "wedge": ("space", "space"),
    "disjoint": ("space", "space"),
    "skeleton": ("space", "int"),
}


def _check_space(tree):
    if isinstance(tree, int):
        raise ValueError("expected a space, got a number")
    name, args = tree
    if name not in _SPACE_ARITY:
        raise ValueError(f"unknown space constructor {name!r}")
    sig = _SPACE_ARITY[name]
    if len(args) != len(sig):
        raise ValueError(f"{name} takes {len(sig)} argument(s)")
    for kind, a in zip(sig, args):
        if kind == "int":
            if not isinstance(a, int):
                raise ValueError(f"{name} expects an integer")
        else:
            _check_space(a)


def build_space(tree, N: int) -> simp.FinSimpSet:
    name, args = tree
    if name == "point":
        return simp.point(N)
    if name == "simplex":
        return simp.standard_simplex(args[0], N)
    if name == "boundary":
        return simp.boundary_simplex(args[0], N)
    if name == "sphere":
        return simp.sphere(args[0], N)
    if name == "wedge":
        return simp.wedge(build_space(args[0], N), build_space(args[1], N))
    if name == "disjoint":
        return simp.disjoint_union(build_space(args[0], N), build_space(args[1], N))
    if name == "skeleton":
        return simp.skeleton(build_space(args[0], N), args[1])
    raise ValueError(f"unknown space constructor {name!r}")


def parse_space(text: str, N: int) -> simp.FinSimpSet:
    tree = parse_call(text)
    _check_space(tree)
    return build_space(tree, N)


# ---------------------------------------------------------------------------
# algebras and modules


def _scalar(x, path):
    if isinstance(x, bool):
        raise ConfigError([(path, "expected a rational number")])
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            pass
    raise ConfigError([(path, "expected an integer or a fraction string like '1/2'")])


def _vector(obj, dim, path):
    if isinstance(obj, list):
        if len(obj) != dim:
            raise ConfigError([(path, f"expected {dim} entries")])
        return {i: _scalar(v, f"{path}[{i}]") for i, v in enumerate(obj) if v != 0}
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            if not str(k).isdigit() or int(k) >= dim:
                raise ConfigError([(f"{path}.{k}", "basis index out of range")])
            out[int(k)] = _scalar(v, f"{path}.{k}")
        return out
    raise ConfigError([(path, "expected a vector (list or index map)")])


def parse_algebra(desc, path="algebra"):
    """Return an FDAlgebra or GradedAlgebra."""
    if isinstance(desc, str):
        try:
            name, args = parse_call(desc)
        except (ValueError, IndexError) as exc:
            raise ConfigError([(path, f"cannot parse algebra: {exc}")])
        if not all(isinstance(a, int) for a in args):
            raise ConfigError([(path, "preset arguments must be integers")])
        presets = {
            "ground_field": (alg.ground_field, 0),
            "truncated_poly": (alg.truncated_poly, 1),
            "split_pair": (alg.split_pair, 0),
            "product_of_fields": (alg.product_of_fields, 1),
            "poly": (alg.poly, 1),
        }
        if name not in presets:
            raise ConfigError([(path, f"unknown preset {name!r}")])
        fn, arity = presets[name]
        if len(args) != arity:
            raise ConfigError([(path, f"{name} takes {arity} argument(s)")])
        try:
            return fn(*args)
        except (ValueError, AlgebraError) as exc:
            raise ConfigError([(path, str(exc))])
    if isinstance(desc, dict):
        kind = desc.get("type")
        if kind == "graded_poly":
            vars_ = desc.get("vars")
            if not isinstance(vars_, list) or not vars_ or not all(isinstance(w, int) for w in vars_):
                raise ConfigError([(f"{path}.vars", "expected a non-empty list of positive integer weights")])
            rels = desc.get("relations", [])
            try:
                return GradedAlgebra(tuple(vars_), tuple(tuple(r) for r in rels), name=desc.get("name", "graded_poly"))
            except (AlgebraError, TypeError) as exc:
                raise ConfigError([(f"{path}.relations", str(exc))])
        if kind == "structure_constants":
            dim = desc.get("dim")
            if not isinstance(dim, int) or dim < 1:
                raise ConfigError([(f"{path}.dim", "expected a positive integer")])
            mult = desc.get("mult")
            if not isinstance(mult, list) or len(mult) != dim:
                raise ConfigError([(f"{path}.mult", f"expected a {dim}x{dim} table of vectors")])
            table = []
            for i, row in enumerate(mult):
                if not isinstance(row, list) or len(row) != dim:
                    raise ConfigError([(f"{path}.mult[{i}]", f"expected {dim} entries")])
                table.append([_vector(v, dim, f"{path}.mult[{i}][{j}]") for j, v in enumerate(row)])
            unit = _vector(desc.get("unit", [1] + [0] * (dim - 1)), dim, f"{path}.unit")
            aug = desc.get("augmentation")
            if aug is not None:
                if not isinstance(aug, list) or len(aug) != dim:
                    raise ConfigError([(f"{path}.augmentation", f"expected {dim} entries")])
                aug = [_scalar(x, f"{path}.augmentation[{i}]") for i, x in enumerate(aug)]
            try:
                a = FDAlgebra.from_structure_constants(table, unit, name=desc.get("name", "custom"), augmentation=aug)
                a.check()
            except AlgebraError as exc:
                raise ConfigError([(path, str(exc))])
            return a
        raise ConfigError([(f"{path}.type", "expected 'structure_constants' or 'graded_poly'")])
    raise ConfigError([(path, "expected a preset string or an object")])


def parse_module(desc, a: FDAlgebra, path="module"):
    if desc is None or desc == "regular":
        return alg.regular_module(a)
    if desc == "residue":
        try:
            return alg.residue_module(a)
        except AlgebraError as exc:
            raise ConfigError([(path, str(exc))])
    if isinstance(desc, dict) and desc.get("type") == "free":
        r = desc.get("rank")
        if not isinstance(r, int) or r < 0:
            raise ConfigError([(f"{path}.rank", "expected a non-negative integer")])
        return alg.free_module(a, r)
    if isinstance(desc, dict) and desc.get("type") == "action":
        dim = desc.get("dim")
        mats = desc.get("matrices")
        if not isinstance(dim, int) or not isinstance(mats, list) or len(mats) != a.dim:
            raise ConfigError([(path, "expected 'dim' and one matrix per algebra basis element")])
        acts = []
        for i, m in enumerate(mats):
            rows = [[_scalar(x, f"{path}.matrices[{i}]") for x in row] for row in m]
            acts.append(alg.RatMatrix.from_dense(rows, dim))
        mod = alg.FDModule(a, dim, tuple(acts), name=desc.get("name", "custom"))
        try:
            mod.check()
        except AlgebraError as exc:
            raise ConfigError([(path, str(exc))])
        return mod
    raise ConfigError([(path, "expected 'regular', 'residue', or an object with type 'free' or 'action'")])


# ---------------------------------------------------------------------------
# jobs


@dataclass
class JobConfig:
    command: str
    algebra: Any = None
    space: Optional[str] = None
    N: Optional[int] = None
    weight: Optional[int] = None
    module: Any = None
    target: Any = None
    suite: Optional[str] = None
    corpus: str = "default"
    params: Dict[str, Any] = field(default_factory=dict)
    budget: Optional[int] = None
    normalized: bool = True
    output: Optional[str] = None
    format: str = "json"


_REQUIRED = {
    "homology": ("algebra", "space", "N"),
    "cohomology": ("algebra", "space", "N"),
    "graded-homology": ("algebra", "space", "N", "weight"),
    "ext": ("algebra", "module", "N"),
    "verify": ("suite",),
}


def parse_config(document: str) -> JobConfig:
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ConfigError([("$", f"malformed JSON: {exc.msg} at line {exc.lineno}")])
    if not isinstance(data, dict):
        raise ConfigError([("$", "expected a JSON object")])
    errors: List[Tuple[str, str]] = []
    cmd = data.get("command")
    if cmd not in COMMANDS:
        raise ConfigError([("command", f"unknown command {cmd!r}; expected one of {', '.join(COMMANDS)}")])
    for key in _REQUIRED[cmd]:
        if key not in data:
            errors.append((key, "required field missing"))
    N = data.get("N")
    if N is not None and (not isinstance(N, int) or isinstance(N, bool) or N < 1):
        errors.append(("N", "must be an integer >= 1"))
    w = data.get("weight")
    if w is not None and (not isinstance(w, int) or w < 0):
        errors.append(("weight", "must be a non-negative integer"))
    budget = data.get("budget")
    if budget is not None and (not isinstance(budget, int) or budget <= 0):
        errors.append(("budget", "must be a positive integer"))
    fmt = data.get("format", "json")
    if fmt not in ("json", "text"):
        errors.append(("format", "must be 'json' or 'text'"))
    if cmd == "verify":
        suite = data.get("suite")
        if suite is not None and suite not in verify.SUITES:
            errors.append(("suite", f"unknown suite {suite!r}"))
        if data.get("corpus", "default") not in ("default", "custom"):
            errors.append(("corpus", "must be 'default' or 'custom'"))
    if errors:
        raise ConfigError(errors)
    job = JobConfig(
        command=cmd,
        algebra=data.get("algebra"),
        space=data.get("space"),
        N=N,
        weight=w,
        module=data.get("module"),
        target=data.get("target"),
        suite=data.get("suite"),
        corpus=data.get("corpus", "default"),
        params=data.get("params", {}),
        budget=budget,
        normalized=bool(data.get("normalized", True)),
        output=data.get("output"),
        format=fmt,
    )
    # validate the pieces that can be checked statically
    a = parse_algebra(job.algebra) if job.algebra is not None else None
    if job.space is not None:
        if not isinstance(job.space, str):
            raise ConfigError([("space", "expected an expression string")])
        try:
            tree = parse_call(job.space)
            _check_space(tree)
        except (ValueError, IndexError) as exc:
            raise ConfigError([("space", str(exc))])
    if cmd in ("homology", "cohomology", "graded-homology"):
        graded = isinstance(a, GradedAlgebra)
        if graded != (cmd == "graded-homology"):
            want = "a graded_poly algebra" if cmd == "graded-homology" else "a finite-dimensional algebra"
            raise ConfigError([("algebra", f"{cmd} needs {want}")])
        if cmd == "cohomology":
            parse_module(job.module, a)
        try:
            k = build_space(tree, job.N)
        except (ValueError, simp.TruncationMismatch) as exc:
            raise ConfigError([("space", str(exc))])
        size = complex_size(k, a, job.N, job.normalized, job.weight if graded else None)
        limit = job.budget or default_budget()
        if size > limit:
            raise SizeBudgetExceeded(f"complex would have {size} basis elements (budget {limit})")
    if cmd == "ext":
        if isinstance(a, GradedAlgebra):
            raise ConfigError([("algebra", "ext needs a finite-dimensional algebra")])
        parse_module(job.module, a)
        parse_module(job.target, a, "target")
    return job


# ---------------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _custom_suite(name: str, p: Dict[str, Any]) -> verify.SuiteReport:
    def space(key, N):
        try:
            return parse_space(p[key], N)
        except KeyError:
            raise ConfigError([(f"params.{key}", "required field missing")])
        except (ValueError, IndexError) as exc:
            raise ConfigError([(f"params.{key}", str(exc))])

    def need(key):
        if key not in p:
            raise ConfigError([(f"params.{key}", "required field missing")])
        return p[key]

    if name == "low_degree":
        algs = [parse_algebra(s, f"params.algebras[{i}]") for i, s in enumerate(need("algebras"))]
        return verify.suite_low_degree(algs, need("d_values"))
    if name == "localization":
        a = parse_algebra(need("algebra"), "params.algebra")
        N = need("N")
        s = _vector(need("s"), a.dim, "params.s")
        return verify.suite_localization(space("space", N), a, s, N)
    if name == "smooth_hodge":
        return verify.suite_smooth_hodge(need("m"), need("d"), need("w_max"), need("n_max"))
    if name == "homotopy_invariance":
        N = need("N")
        pairs = []
        for i, (e1, e2) in enumerate(need("pairs")):
            pairs.append((space_expr(e1, N, f"params.pairs[{i}][0]"), space_expr(e2, N, f"params.pairs[{i}][1]")))
        algs = [parse_algebra(s, f"params.algebras[{i}]") for i, s in enumerate(need("algebras"))]
        return verify.suite_homotopy_invariance(pairs, algs, N)
    if name == "hodge_cohomology":
        a = parse_algebra(need("algebra"), "params.algebra")
        m = parse_module(p.get("module"), a, "params.module")
        return verify.suite_hodge_cohomology(need("d"), a, m, need("n_max"))
    raise ConfigError([("suite", f"unknown suite {name!r}")])


def space_expr(text, N, path):
    try:
        return parse_space(text, N)
    except (ValueError, IndexError, TypeError) as exc:
        raise ConfigError([(path, str(exc))])


def execute(job: JobConfig) -> Tuple[int, Dict[str, Any]]:
    """Run a validated job; returns (exit status, report)."""
    cmd = job.command
    if cmd == "verify":
        if job.corpus == "default":
            rep = verify.SUITES[job.suite]()
        else:
            rep = _custom_suite(job.suite, job.params)
        return (EXIT_OK if rep.passed else EXIT_FAIL), rep.to_json()
    a = parse_algebra(job.algebra)
    if cmd == "ext":
        m = parse_module(job.module, a)
        t = parse_module(job.target, a, "target")
        table = ext(a, m, t, job.N)
        report = {"command": cmd, "algebra": a.name, "module": m.name, "target": t.name, "p_max": job.N}
        report.update(table.to_json())
        return EXIT_OK, report
    k = parse_space(job.space, job.N)
    if cmd == "homology":
        table = homology(k, a, job.N, job.normalized, job.budget)
    elif cmd == "graded-homology":
        table = graded_homology(k, a, job.weight, job.N, job.normalized, job.budget)
    else:
        m = parse_module(job.module, a)
        table = cohomology(k, a, m, job.N, job.normalized, job.budget)
    report = {"command": cmd}
    report.update(table.to_json())
    return EXIT_OK, report


def _render_text(report: Dict[str, Any]) -> str:
    if "suite" in report:
        lines = [f"suite {report['suite']}: {report['verdict']}"]
        for c in report["cases"]:
            inputs = {k: v for k, v in c["inputs"].items() if k != "degeneration"}
            lines.append(f"  [{c['verdict']}] {json.dumps(inputs, sort_keys=True)} expected={c['expected']} computed={c['computed']}")
        return "\n".join(lines) + "\n"
    lines = [f"{report['command']}"]
    for k, v in sorted(report.items()):
        if k != "command":
            lines.append(f"  {k}: {v}")
    return "\n".join(lines) + "\n"


def write_report(report: Dict[str, Any], output: Optional[str], fmt: str) -> None:
    report = _jsonable(report)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n" if fmt == "json" else _render_text(report)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(job: JobConfig) -> int:
    try:
        if job.budget is not None:
            with budget_scope(job.budget):
                status, report = execute(job)
        else:
            status, report = execute(job)
    except SizeBudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except verify.HypothesisViolation as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConfigError as exc:
        for p, msg in exc.errors:
            print(f"config error at {p}: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, AlgebraError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    write_report(report, job.output, job.format)
    return status


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "verify":
        ap = argparse.ArgumentParser(prog="hochhom verify")
        ap.add_argument("suite", choices=sorted(verify.SUITES))
        ap.add_argument("--corpus", default="default", choices=["default"])
        ap.add_argument("--output")
        ap.add_argument("--format", default="json", choices=["json", "text"])
        ap.add_argument("--budget", type=int)
        try:
            ns = ap.parse_args(argv[1:])
        except SystemExit:
            return EXIT_INPUT
        job = JobConfig("verify", suite=ns.suite, corpus=ns.corpus, output=ns.output, format=ns.format, budget=ns.budget)
        return run(job)
    ap = argparse.ArgumentParser(prog="hochhom", description="Higher Hochschild homology over Q")
    ap.add_argument("config", help="JSON job file, or '-' for stdin")
    try:
        ns = ap.parse_args(argv)
    except SystemExit:
        return EXIT_INPUT
    try:
        text = sys.stdin.read() if ns.config == "-" else open(ns.config).read()
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        job = parse_config(text)
    except ConfigError as exc:
        for p, msg in exc.errors:
            print(f"config error at {p}: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except SizeBudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    return run(job)


if __name__ == "__main__":
    sys.exit(main())
