"""Command-line front end: check, translate, eval, validity, validate, demo.

Exit codes: 0 derivable/valid, 1 not derivable/invalid (or a demo that failed
to reproduce), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional

from .deriv_fresh import C, CORE, check_alpha, check_fresh
from .deriv_fix import (GROUP_GENERATED, SUBSET_DOM, check_eq_fix, check_fix,
                        tree_to_dict)
from .deriv_strong import (check_alpha_strong, check_fix_strong,
                           fresh_judgement_to_strong, strong_judgement_to_fresh,
                           translate_fresh_to_fix, translate_fix_to_fresh)
from .errors import NomfixError, ParseError, ReproductionFailure, ShapeError
from .judgements import (AlphaGoal, AlphaJudgement, EqJudgement, FixGoal,
                         FixJudgement, FreshJudgement, NuJudgement,
                         StrongContext)
from .semantics import (GroundMod, PFin, Valuation,fix_sem, get_model,
                        interpret, is_strong_axiom, judgement_valid,
                        standard_axioms)
from .syntax import (parse_judgement, parse_strong_input, parse_fresh_context,
                     parse_signature, parse_term, print_fresh_context,
                     print_judgement, print_strong_context, print_term)
from .terms import ID, Atom, Signature, Susp, Var, default_signature, swap
from .unify_validate import (FixPair, FreshPair, FreshTriple, VALID,
                             VALID_WITH_RESIDUAL, instantiate_and_check,
                             parse_candidate, parse_problem, validate)

SYSTEMS = ("fresh", "fix", "fix-gvar", "strong-fix")
DEMOS = ("counterexample-pfin", "counterexample-c", "example-7-1", "strong-axioms")


@dataclass
class Report:
    verdict: object                 # True | False | "valid-with-residual" | "error"
    system: str
    derivation: Optional[dict] = None
    diagnostics: list[str] = field(default_factory=list)
    exit_code: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))


def _load_signature(args) -> Signature:
    if getattr(args, "sig", None):
        with open(args.sig, encoding="utf-8") as fh:
            return parse_signature(fh.read())
    return default_signature()


def _tree_lines(data: dict, indent: int = 0) -> list[str]:
    extras = "".join(
        f" {k}={data[k]}" for k in ("axiom", "perm", "var", "position") if k in data)
    lines = [f"{'  ' * indent}[{data['rule']}{extras}] {data['conclusion']}"]
    for p in data["premises"]:
        lines.extend(_tree_lines(p, indent + 1))
    return lines


def _required(args, attr: str, choices) -> str:
    value = getattr(args, attr, None) or getattr(args, f"{attr}_flag", None)
    if value is None:
        raise ParseError(f"missing {attr}; give it positionally or with --{attr}")
    if value not in choices:
        raise ParseError(f"unknown {attr} {value!r}; choose from {', '.join(choices)}")
    return value


# ---------------------------------------------------------------------------
# subcommands

def cmd_check(args) -> Report:
    system = _required(args, "system", SYSTEMS)
    sig = _load_signature(args)
    theory = C if args.theory == "c" else CORE
    bound = args.carrier_bound
    if system == "fresh":
        j = parse_judgement(args.judgement, sig, "fresh")
        if isinstance(j, FreshJudgement):
            verdict = check_fresh(j.context, j.atom, j.term)
        else:
            verdict = check_alpha(j.context, j.lhs, j.rhs, theory, sig)
    elif system in ("fix", "fix-gvar"):
        mode = SUBSET_DOM if system == "fix" else GROUP_GENERATED
        j = parse_judgement(args.judgement, sig, "fix")
        if isinstance(j, FixJudgement):
            verdict = check_fix(j.context, j.perm, j.term, mode, carrier_bound=bound)
        else:
            verdict = check_eq_fix(j.context, j.lhs, j.rhs, mode, theory, sig,
                                   carrier_bound=bound)
    else:
        j = parse_judgement(args.judgement, sig, "strong")
        if isinstance(j.body, FixGoal):
            verdict = check_fix_strong(j)
        else:
            verdict = check_alpha_strong(j, theory, sig)
    derivation = None
    if verdict and args.show_proof and verdict.derivation is not None:
        derivation = tree_to_dict(verdict.derivation)
    diagnostics = [] if verdict else [verdict.reason or "not derivable"]
    return Report(bool(verdict), system, derivation, diagnostics,
                  0 if verdict else 1)


def cmd_translate(args) -> Report:
    sig = _load_signature(args)
    direction = args.direction
    if direction == "fresh-to-fix":
        if "|-" in args.text or "⊢" in args.text:
            j = parse_judgement(args.text, sig, "fresh")
            out = print_judgement(fresh_judgement_to_strong(j))
        else:
            out = print_strong_context(translate_fresh_to_fix(
                parse_fresh_context(args.text)))
    elif direction == "fix-to-fresh":
        parsed = parse_strong_input(args.text, sig)
        if isinstance(parsed, StrongContext):
            out = print_fresh_context(translate_fix_to_fresh(parsed))
        else:
            out = print_judgement(strong_judgement_to_fresh(parsed))
    else:
        raise ParseError(f"unknown direction {direction!r}")
    return Report(True, f"translate:{direction}", None, [out], 0)


def cmd_eval(args) -> Report:
    sig = _load_signature(args)
    model = get_model(_required(args, "model", tuple(
        ("singleton", "pfin", "words", "ground-alpha", "ground-alpha-c"))), sig)
    valuation = Valuation.parse(model, args.valuation)
    term = parse_term(args.term, sig)
    shown = model.show_element(interpret(model, valuation, term))
    return Report(True, f"eval:{model.name}", None, [shown], 0)


def cmd_validity(args) -> Report:
    sig = _load_signature(args)
    model = get_model(_required(args, "model", tuple(
        ("singleton", "pfin", "words", "ground-alpha", "ground-alpha-c"))), sig)
    valuation = Valuation.parse(model, args.valuation)
    j = parse_judgement(args.judgement, sig, "fix")
    ok = judgement_valid(model, valuation, j)
    return Report(bool(ok), f"validity:{model.name}", None,
                  [] if ok else ["the context holds but the conclusion fails"],
                  0 if ok else 1)


def cmd_validate(args) -> Report:
    sig = _load_signature(args)
    with open(args.problem, encoding="utf-8") as fh:
        problem = parse_problem(fh.read(), sig)
    with open(args.candidate, encoding="utf-8") as fh:
        candidate = parse_candidate(fh.read(), sig)
    report = validate(problem, candidate, sig)
    lines = [f"{'ok ' if r.ok else 'FAIL'}{' (residual)' if r.residual else ''}: "
             f"{r.constraint}" + (f" -- {r.detail}" if r.detail and not r.ok else "")
             for r in report.reports]
    lines.append(f"verdict: {report.verdict}")
    verdict = report.verdict if report.verdict == VALID_WITH_RESIDUAL else bool(report)
    return Report(verdict, "validate", None, lines, 0 if report else 1)


# ---------------------------------------------------------------------------
# packaged demos

def _demo_counterexample(model_kind: str) -> list[str]:
    sig = default_signature()
    a1, a2, a3, a4 = (Atom(f"a{i}") for i in range(1, 5))
    x1 = Var("X1")
    ups = frozenset({(swap(a1, a2), x1), (swap(a3, a4), x1)})
    j = FixJudgement(ups, swap(a1, a3), Susp(ID, x1))
    lines = [f"judgement: {print_judgement(j)}"]

    derivable = check_fix(ups, swap(a1, a3), Susp(ID, x1), SUBSET_DOM)
    if not derivable:
        raise ReproductionFailure("derivability in subset-dom mode")
    gvar = check_fix(ups, swap(a1, a3), Susp(ID, x1), GROUP_GENERATED)
    if gvar:
        raise ReproductionFailure("group-generated mode must reject the judgement")
    lines.append("derivable with the plain variable rule; "
                 "not derivable with the group-generated rule")

    if model_kind == "pfin":
        model = PFin(sig)
        value = frozenset({a1, a2})
        pi = swap(a1, a3)
        shown = "{" + ",".join(pi(b).name for b in sorted(value, key=Atom.key)) + "}"
    else:
        model = GroundMod(sig, commutative=True)
        value = model.canon(parse_term("+(a1, a2)", sig))
        shown = None
    valuation = Valuation(model, {x1: value})
    lines.append(f"valuation: X1 := {model.show_element(value)}")
    for pi, x in sorted(ups, key=lambda p: str(p[0])):
        if not fix_sem(model, pi, valuation(x)):
            raise ReproductionFailure(f"context constraint {pi} fix {x}")
    lines.append("the context is valid under the valuation")
    image = interpret(model, valuation, Susp(swap(a1, a3), x1))
    if shown is not None:
        lines.append(f"[[(a1 a3).X1]] = {shown}")
        if image != frozenset({a3, a2}):
            raise ReproductionFailure("image of the valuation under (a1 a3)")
    else:
        lines.append(f"[[(a1 a3).X1]] = {model.show_element(image)}")
    if judgement_valid(model, valuation, j):
        raise ReproductionFailure(f"judgement must be invalid in {model.name}")
    lines.append(f"derivable=true, valid-in-{model.name}=false")
    return lines


def _demo_example_7_1() -> list[str]:
    sig = default_signature()
    a, b = Atom("a"), Atom("b")
    x, y = Var("X"), Var("Y")
    problem = parse_problem("f^C(X, Y) =?= f^C(c, (a b).X) [C]", sig)
    lines = ["problem: f^C(X, Y) =?= f^C(c, (a b).X) [C]"]
    c_term = parse_term("c", sig)
    cases = [
        ("fresh-pair ({} , X:=c, Y:=c)",
         FreshPair(frozenset(), {x: c_term, y: c_term}), VALID),
        ("fresh-triple ({} , Y:=c, residual X =?= (a b).X)",
         FreshTriple(frozenset(), {y: c_term}, ((x, swap(a, b), C),)),
         VALID_WITH_RESIDUAL),
        ("fix-pair ((a b) fix X , Y:=c)",
         FixPair(frozenset({(swap(a, b), x)}), {y: c_term}), VALID),
    ]
    for label, cand, expected in cases:
        got = validate(problem, cand, sig).verdict
        if got != expected:
            raise ReproductionFailure(label, f"expected {expected}, got {got}")
        lines.append(f"{label}: {got}")
    fix_pair = cases[2][1]
    for text in ("f^C(a, b)", "f^C(f^C(a, b), f^C(a, b))"):
        got = instantiate_and_check(fix_pair, {x: parse_term(text, sig)},
                                    problem, sig).verdict
        if got != VALID:
            raise ReproductionFailure(f"instance X := {text}", f"got {got}")
        lines.append(f"instance X := {text}: {got}")
    bad = instantiate_and_check(fix_pair, {x: parse_term("a", sig)}, problem, sig)
    if bad.verdict == VALID:
        raise ReproductionFailure("instance X := a must fail")
    lines.append("instance X := a: invalid")
    return lines


_EXPECTED_STRONG = {"A": True, "Hom": True, "I": True, "N": True,
                    "Lproj": True, "Rproj": True,
                    "C": False, "D": False, "ATOM": False,
                    "PermutedBinder": False}


def _demo_strong_axioms() -> list[str]:
    lines = []
    for ax in standard_axioms():
        strong, reason = is_strong_axiom(ax)
        if strong != _EXPECTED_STRONG[ax.name]:
            raise ReproductionFailure(f"classification of {ax.name}",
                                      f"got {'strong' if strong else 'not strong'}")
        shown = f"{print_term(ax.lhs)} = {print_term(ax.rhs)}"
        mark = "strong" if strong else f"not strong ({reason})"
        lines.append(f"{ax.name:>14}: {shown:<42} {mark}")
    return lines


def cmd_demo(args) -> Report:
    name = args.name
    try:
        if name == "counterexample-pfin":
            lines = _demo_counterexample("pfin")
        elif name == "counterexample-c":
            lines = _demo_counterexample("ground-alpha-c")
        elif name == "example-7-1":
            lines = _demo_example_7_1()
        elif name == "strong-axioms":
            lines = _demo_strong_axioms()
        else:
            raise ParseError(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}")
    except ReproductionFailure as e:
        return Report(False, f"demo:{name}", None, [str(e)], 1)
    return Report(True, f"demo:{name}", None, lines, 0)


# ---------------------------------------------------------------------------
# argument plumbing

def _common_flags(sub):
    sub.add_argument("--sig", metavar="FILE", help="signature file (symbol/arity [comm] per line)")
    sub.add_argument("--theory", choices=("core", "c"), default="core",
                     help="equational mode for equality checks")
    sub.add_argument("--json", action="store_true", help="machine-readable report")
    sub.add_argument("--seed", type=int, default=None,
                     help="seed for randomized components (current commands are deterministic)")
    sub.add_argument("--carrier-bound", type=int, default=8,
                     help="largest carrier enumerated by the group-generated rule")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nomfix",
        description="nominal terms with fixed-point constraints: judgement "
                    "checkers, translations, models, and solution validation")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("check", help="decide a judgement in one of the proof systems")
    p.add_argument("system", nargs="?", choices=SYSTEMS)
    p.add_argument("judgement", help="judgement text, e.g. '|- [a]a = [b]b'")
    p.add_argument("--system", dest="system_flag", choices=SYSTEMS)
    p.add_argument("--show-proof", action="store_true")
    _common_flags(p)
    p.set_defaults(func=cmd_check)

    p = subs.add_parser("translate", help="translate contexts/judgements between systems")
    p.add_argument("direction", choices=("fresh-to-fix", "fix-to-fresh"))
    p.add_argument("text")
    _common_flags(p)
    p.set_defaults(func=cmd_translate)

    p = subs.add_parser("eval", help="interpret a term in a model")
    p.add_argument("model", nargs="?")
    p.add_argument("valuation", help="e.g. 'X := {a,b}' (pfin), 'X := f(a, b)' "
                                     "(ground models), 'X := abc' (words)")
    p.add_argument("term")
    p.add_argument("--model", dest="model_flag")
    _common_flags(p)
    p.set_defaults(func=cmd_eval)

    p = subs.add_parser("validity", help="check a judgement in a model under a valuation")
    p.add_argument("model", nargs="?")
    p.add_argument("valuation")
    p.add_argument("judgement")
    p.add_argument("--model", dest="model_flag")
    _common_flags(p)
    p.set_defaults(func=cmd_validity)

    p = subs.add_parser("validate", help="validate a unification solution against a problem")
    p.add_argument("problem", help="problem file: 's =?= t [C]' and 'a #? t' lines")
    p.add_argument("candidate", help="candidate file (kind/ctx/sub/res lines)")
    _common_flags(p)
    p.set_defaults(func=cmd_validate)

    p = subs.add_parser("demo", help="run a packaged scenario and check its outcome")
    p.add_argument("name", choices=DEMOS)
    _common_flags(p)
    p.set_defaults(func=cmd_demo)

    return parser


def _emit(report: Report, as_json: bool) -> None:
    if as_json:
        print(report.to_json())
        return
    for line in report.diagnostics:
        print(line)
    if report.derivation is not None:
        print("\n".join(_tree_lines(report.derivation)))
    if report.verdict is True:
        print("verdict: derivable" if report.system in SYSTEMS
              else "verdict: ok")
    elif report.verdict is False:
        print("verdict: not derivable" if report.system in SYSTEMS
              else "verdict: invalid")
    else:
        print(f"verdict: {report.verdict}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except NomfixError as e:
        report = Report("error", getattr(args, "command", "?"), None, [str(e)], 2)
    except (OSError, ValueError, KeyError) as e:
        report = Report("error", getattr(args, "command", "?"), None, [str(e)], 2)
    _emit(report, args.json)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
