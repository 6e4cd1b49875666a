"""Command-line front end: JSON problem files in, JSON or text reports out.

Problem file layout::

    {"ring": {"p": 2, "vars": ["x", "y"], "ideal": ["x*y"]},
     "objects": {"X": {"resolve": {"quotient": ["x+y"]}},
                 "Y": {"quotient": ["x"]}},
     "tasks": [{"command": "dutta", "x": "X", "y": "Y"}]}

Exit codes: 0 success, 2 hypothesis violation, 1 parse or algebra error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .complexes import (Complex, ComplexError, homology_length, koszul, resolve, shift,
                        star_dual, strand_homology_length, support_dim, tensor, hom_complex)
from .exact import format_rational
from .frobenius import (OmegaComplex, UnsupportedRingError, canonical_module, g_on_omega,
                        hom_into_omega, lf)
from .groebner import PresentedModule, quotient_module
from .multiplicity import (HypothesisViolation, OrderTooSmallError, PairingContext, as_complex,
                           check_numerical_vanishing, check_self_duality, chi, decompose, xi)
from .poly import GradedRing, PolyParseError

COMMANDS = ("chi", "xi", "dutta", "decompose", "frobenius", "homology", "resolve",
            "check-selfdual", "check-numvanishing", "canonical")

EXIT_OK, EXIT_ERROR, EXIT_HYPOTHESIS = 0, 1, 2


class ProblemError(ValueError):
    """Malformed problem file or unknown object name."""


def fmt_dim(d):
    """Krull dimensions: an int, or "-inf" for the zero module."""
    return int(d) if d not in (float("inf"), float("-inf")) else format_rational(d)


def fmt(q) -> str:
    if isinstance(q, (int, Fraction)):
        return format_rational(Fraction(q))
    return format_rational(q)


# serialization -------------------------------------------------------------

def serialize_ring(ring: GradedRing) -> dict:
    return {"p": ring.p, "vars": list(ring.names), "ideal": [str(g) for g in ring.ideal]}


def parse_ring(entry: dict) -> GradedRing:
    try:
        p, names = entry["p"], entry["vars"]
    except (KeyError, TypeError) as exc:
        raise ProblemError("ring needs keys 'p' and 'vars'") from exc
    if isinstance(names, str):
        names = [n.strip() for n in names.split(",")]
    S = GradedRing(int(p), list(names))
    return GradedRing(int(p), list(names), [S.poly(g) for g in entry.get("ideal", [])])


def serialize_complex(X: Complex) -> dict:
    """Free complexes only: {"degrees": {i: {"twists": [...]}}, "maps": {i: rows}}."""
    if not X.is_free():
        raise ComplexError("only free complexes are serialized")
    return {
        "degrees": {str(i): {"twists": list(X.twists(i))} for i in X.degrees},
        "maps": {str(i): [[str(f) for f in row] for row in A] for i, A in sorted(X.maps.items())},
    }


def parse_complex(entry: dict, ring: GradedRing) -> Complex:
    twists = {int(i): v["twists"] for i, v in entry.get("degrees", {}).items()}
    maps = {int(i): [[ring.poly(f) for f in row] for row in A]
            for i, A in entry.get("maps", {}).items()}
    return Complex.free(ring, twists, maps)


def serialize_module(M: PresentedModule) -> dict:
    return {"twists": list(M.twists), "relations": [[str(f) for f in col] for col in M.relations]}


# problem files -------------------------------------------------------------

@dataclass
class Problem:
    ring: GradedRing
    entries: dict
    tasks: list
    _cache: dict = field(default_factory=dict)
    _omega: Any = None

    @classmethod
    def from_dict(cls, data: dict) -> "Problem":
        if not isinstance(data, dict) or "ring" not in data:
            raise ProblemError("problem file needs a 'ring' entry")
        return cls(parse_ring(data["ring"]), dict(data.get("objects", {})), list(data.get("tasks", [])))

    @classmethod
    def load(cls, path: str) -> "Problem":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ProblemError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    def omega(self):
        if self._omega is None:
            self._omega = canonical_module(self.ring)
        return self._omega

    def get(self, name: str, _stack=()):
        if name in self._cache:
            return self._cache[name]
        if name not in self.entries:
            raise ProblemError(f"unknown object {name!r}")
        if name in _stack:
            raise ProblemError(f"cyclic definition of {name!r}")
        obj = self.build(self.entries[name], _stack + (name,))
        self._cache[name] = obj
        return obj

    def build(self, entry, stack=()):
        """Evaluate an object entry; strings other than keywords are references."""
        R = self.ring
        if isinstance(entry, str):
            if entry == "ring":
                return Complex.ring_complex(R)
            if entry == "residue_field":
                return quotient_module(R, R.gens())
            if entry == "omega":
                return OmegaComplex.omega_in_degree(self.omega())
            return self.get(entry, stack)
        if not isinstance(entry, dict) or len(entry) == 0:
            raise ProblemError(f"bad object entry {entry!r}")
        kind = next(iter(entry))
        arg = entry[kind]
        sub = lambda s: self.build(s, stack)
        if kind == "koszul":
            return koszul(R, [R.poly(f) for f in arg])
        if kind == "complex":
            return parse_complex(arg, R)
        if kind == "module":
            return PresentedModule(R, arg["twists"], arg.get("relations", []))
        if kind == "quotient":
            return quotient_module(R, [R.poly(f) for f in arg])
        if kind == "ring":
            return Complex.ring_complex(R, int(arg))
        if kind == "resolve":
            M = sub(arg)
            if not isinstance(M, PresentedModule):
                raise ProblemError("resolve needs a module")
            return resolve(M, int(entry.get("max_steps", R.nvars + 1))).complex
        if kind == "shift":
            return shift(as_complex(sub(arg[0])), int(arg[1]))
        if kind == "tensor":
            return tensor(as_complex(sub(arg[0])), as_complex(sub(arg[1])))
        if kind == "hom":
            X, Y = as_complex(sub(arg[0])), sub(arg[1])
            return hom_into_omega(X, Y) if isinstance(Y, OmegaComplex) else hom_complex(X, as_complex(Y))
        if kind == "star_dual":
            return star_dual(as_complex(sub(arg)))
        if kind == "lf":
            Z = sub(arg[0])
            return g_on_omega(Z, int(arg[1])) if isinstance(Z, OmegaComplex) else lf(as_complex(Z), int(arg[1]))
        if kind == "omega":
            arg = arg or {}
            return OmegaComplex.omega_in_degree(self.omega(), int(arg.get("degree", 0)),
                                                int(arg.get("twist", 0)))
        if kind == "omega_complex":
            return OmegaComplex(parse_complex(arg, R), self.omega())
        raise ProblemError(f"unknown object kind {kind!r}")


# commands --------------------------------------------------------------------

@dataclass
class Options:
    x: str = "X"
    y: str = "Y"
    order: int | None = None
    power: int | None = None
    degree: int | None = None
    max_steps: int | None = None
    pairing: str = "chi"
    lenient: bool = False

    @classmethod
    def from_task(cls, task: dict) -> "Options":
        keys = {"x", "y", "order", "power", "degree", "max_steps", "pairing", "lenient"}
        unknown = set(task) - keys - {"command"}
        if unknown:
            raise ProblemError(f"unknown task keys {sorted(unknown)}")
        return cls(**{k: task[k] for k in keys if k in task})

    def echo(self, command: str) -> dict:
        out = {"command": command}
        for k in ("x", "y", "order", "power", "degree", "max_steps"):
            v = getattr(self, k)
            if v is not None:
                out[k] = v
        if command == "decompose":
            out["pairing"] = self.pairing
        if self.lenient:
            out["lenient"] = True
        return out


def _free(obj, name):
    Z = as_complex(obj)
    if not Z.is_free():
        raise ComplexError(f"{name} must be a free complex")
    return Z


def _lengths(Z: Complex) -> dict:
    return {str(i): fmt(homology_length(Z, i)) for i in Z.degrees}


def _cmd_pairing(fn, key):
    def run(prob: Problem, opt: Options, warnings: list) -> dict:
        X = _free(prob.get(opt.x), opt.x)
        return {key: fmt(fn(X, prob.get(opt.y), opt.lenient, warnings))}
    return run


def _cmd_decompose(prob, opt, warnings):
    ctx = PairingContext.build(_free(prob.get(opt.x), opt.x), (), opt.lenient)
    dec = decompose(ctx, prob.get(opt.y), opt.order, kind=opt.pairing)
    warnings.extend(ctx.warnings)
    return {
        "codim": ctx.s,
        "order": dec.order,
        "sequence": [fmt(v) for v in dec.sequence],
        "components": [fmt(c) for c in dec.components],
        "held_out": {str(e): fmt(v) for e, v in dec.held_out.items()},
    }


def _cmd_dutta(prob, opt, warnings):
    ctx = PairingContext.build(_free(prob.get(opt.x), opt.x), (), opt.lenient)
    dec = decompose(ctx, prob.get(opt.y), opt.order)
    warnings.extend(ctx.warnings)
    return {"chi_infinity": fmt(dec.components[0]), "order": dec.order}


def _cmd_frobenius(prob, opt, warnings):
    e = 1 if opt.power is None else opt.power
    Z = prob.get(opt.x)
    if isinstance(Z, OmegaComplex):
        G = g_on_omega(Z, e)
        return {"power": e, "omega_skeleton": serialize_complex(G.skeleton),
                "homology_lengths": _lengths(G.as_complex())}
    F = lf(_free(Z, opt.x), e)
    return {"power": e, "complex": serialize_complex(F), "homology_lengths": _lengths(F)}


def _cmd_homology(prob, opt, warnings):
    Z = as_complex(prob.get(opt.x))
    degrees = Z.degrees if opt.degree is None else [opt.degree]
    out = {}
    for i in degrees:
        L = homology_length(Z, i)
        out[str(i)] = fmt(L)
    values = {"lengths": out, "support_dim": fmt_dim(support_dim(Z))}
    if opt.degree is not None:
        values["length"] = out[str(opt.degree)]
        L = homology_length(Z, opt.degree)
        if L != float("inf"):
            st = strand_homology_length(Z, opt.degree)
            values["strand_length"] = fmt(st.length)
            if st.warning:
                warnings.append("strand degree cap may be too small")
    return values


def _cmd_resolve(prob, opt, warnings):
    M = prob.get(opt.x)
    if not isinstance(M, PresentedModule):
        raise ProblemError(f"{opt.x} is not a module")
    steps = prob.ring.nvars + 1 if opt.max_steps is None else opt.max_steps
    res = resolve(M, steps)
    if not res.terminated:
        warnings.append(f"resolution did not terminate within {steps} steps")
    return {"terminated": res.terminated, "length": res.length,
            "ranks": {str(i): r for i, r in sorted(res.complex.ranks().items())},
            "complex": serialize_complex(res.complex)}


def _cmd_selfdual(prob, opt, warnings):
    ctx = PairingContext.build(_free(prob.get(opt.x), opt.x), (), opt.lenient)
    ctx.add_test(prob.get(opt.y))
    verdict = check_self_duality(ctx, opt.order)
    warnings.extend(ctx.warnings)
    recs = [{"chi": fmt(r["chi"]), "xi": fmt(r["xi"]), "identity": r["identity"],
             "components": [fmt(c) for c in r["components"]],
             "star_components": [fmt(c) for c in r["star_components"]],
             "components_match": r["components_match"]} for r in verdict.records]
    return {"passed": verdict.passed, "codim": ctx.s, "records": recs}


def _cmd_numvanishing(prob, opt, warnings):
    N = prob.get(opt.x)
    if not isinstance(N, PresentedModule):
        raise ProblemError(f"{opt.x} is not a module")
    e_max = 3 if opt.power is None else opt.power
    v = check_numerical_vanishing(prob.ring, N, e_max)
    warnings.extend(v.notes)
    side = lambda rows: None if rows is None else [
        {"e": e, "lhs": fmt(l), "rhs": fmt(r)} for e, l, r in rows]
    return {"passed": v.passed, "length": fmt(v.length), "f_side": side(v.f_side), "g_side": side(v.g_side)}


def _cmd_canonical(prob, opt, warnings):
    om = prob.omega()
    return {"codim": om.codim, "free_rank_one": om.is_free_rank_one(),
            "a_invariant": om.a_invariant, "module": serialize_module(om.module),
            "length": fmt(om.module.length())}


DISPATCH = {
    "chi": _cmd_pairing(chi, "chi"),
    "xi": _cmd_pairing(xi, "xi"),
    "dutta": _cmd_dutta,
    "decompose": _cmd_decompose,
    "frobenius": _cmd_frobenius,
    "homology": _cmd_homology,
    "resolve": _cmd_resolve,
    "check-selfdual": _cmd_selfdual,
    "check-numvanishing": _cmd_numvanishing,
    "canonical": _cmd_canonical,
}


def run(command: str, problem: Problem, options: Options) -> tuple[dict, int]:
    """Run one command; returns (report, exit code)."""
    warnings: list = []
    report = {"task": options.echo(command), "values": {}, "warnings": warnings, "status": "ok"}
    code = EXIT_OK
    try:
        if command not in DISPATCH:
            raise ProblemError(f"unknown command {command!r}")
        report["values"] = DISPATCH[command](problem, options, warnings)
        if report["values"].get("passed") is False:
            report["status"] = "fail"
    except HypothesisViolation as exc:
        report["status"] = "hypothesis-violation"
        report["values"] = {"error": str(exc)}
        code = EXIT_HYPOTHESIS
    except (ProblemError, PolyParseError, ComplexError, UnsupportedRingError,
            OrderTooSmallError, ValueError, KeyError, TypeError) as exc:
        report["status"] = "error"
        report["values"] = {"error": str(exc)}
        code = EXIT_ERROR
    return report, code


def run_tasks(problem: Problem, lenient: bool = False) -> tuple[list, int]:
    reports, code = [], EXIT_OK
    for task in problem.tasks:
        try:
            opt = Options.from_task(task)
            opt.lenient = opt.lenient or lenient
            rep, c = run(task.get("command", ""), problem, opt)
        except ProblemError as exc:
            rep = {"task": task, "values": {"error": str(exc)}, "warnings": [], "status": "error"}
            c = EXIT_ERROR
        reports.append(rep)
        code = max(code, c)
    return reports, code


# output ------------------------------------------------------------------------

def to_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _text_lines(value, prefix=""):
    if isinstance(value, dict):
        for k, v in value.items():
            yield from _text_lines(v, f"{prefix}{k}." if isinstance(v, (dict, list)) and v else f"{prefix}{k}")
    elif isinstance(value, list) and value and all(isinstance(v, (dict, list)) for v in value):
        for n, v in enumerate(value):
            yield from _text_lines(v, f"{prefix}{n}.")
    else:
        key = prefix.rstrip(".")
        yield f"{key}: {json.dumps(value) if not isinstance(value, str) else value}"


def to_text(report: dict) -> str:
    lines = [f"[{report['status']}] {report['task'].get('command')}"]
    lines += ["  " + s for s in _text_lines(report["values"])]
    lines += [f"  warning: {w}" for w in report["warnings"]]
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frobmult", description="Frobenius multiplicities over F_p[x]/I.")
    ap.add_argument("command", choices=COMMANDS + ("tasks",))
    ap.add_argument("problem", help="JSON problem file")
    ap.add_argument("--x", default="X", help="name of the first object (default X)")
    ap.add_argument("--y", default="Y", help="name of the test object (default Y)")
    ap.add_argument("--order", type=int, help="decomposition order u")
    ap.add_argument("--power", type=int, help="Frobenius exponent e (or e_max for checks)")
    ap.add_argument("--degree", type=int, help="homological degree for homology")
    ap.add_argument("--max-steps", type=int, dest="max_steps", help="resolution step cap")
    ap.add_argument("--pairing", default="chi", choices=("chi", "xi_upper", "xi_lower"))
    ap.add_argument("--output", default="json", choices=("json", "text"))
    ap.add_argument("--lenient", action="store_true", help="downgrade hypothesis violations to warnings")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        problem = Problem.load(args.problem)
    except (OSError, ProblemError, PolyParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.command == "tasks":
        reports, code = run_tasks(problem, args.lenient)
    else:
        opt = Options(args.x, args.y, args.order, args.power, args.degree, args.max_steps,
                      args.pairing, args.lenient)
        rep, code = run(args.command, problem, opt)
        reports = [rep]
    if args.output == "json":
        sys.stdout.write(to_json(reports if args.command == "tasks" else reports[0]))
    else:
        sys.stdout.write("".join(to_text(r) for r in reports))
    return code


if __name__ == "__main__":
    sys.exit(main())
