"""Validation of candidate solutions to nominal (C-)unification problems.

A problem is a finite set of equations ``s =?= t`` (optionally modulo the
commutative theory) and freshness goals ``a #? t``.  Three candidate formats
are supported:

* ``FreshPair``   -- a freshness context plus a substitution; checked with
  the freshness-system engines, including substitution idempotency on the
  problem's variables.
* ``FreshTriple`` -- additionally a set of deferred fixed-point equations
  ``X ~ pi.X``; an equation may reduce to one of them, which the report
  marks as a residual (``valid-with-residual``).
* ``FixPair``     -- a fixed-point context plus a substitution; checked with
  the fixed-point engines, freshness goals via a swap with a fresh atom.

No unification search happens here: candidates are checked, never found.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .deriv_fresh import C, CORE, check_alpha, check_fresh
from .deriv_fix import SUBSET_DOM, check_eq_fix, check_fix
from .errors import GroundnessError, ParseError
from .judgements import FixContext, FreshContext
from .syntax import parse_fix_context, parse_fresh_context, parse_term, print_term, split_bindings
from .terms import (ID, Atom, FreshSupply, Perm, Signature, Subst, Susp, Term,
                    Var, act, atoms_of, default_signature, is_ground,
                    subst_apply, subst_compose, vars_of)

VALID = "valid"
VALID_WITH_RESIDUAL = "valid-with-residual"
INVALID = "invalid"


@dataclass(frozen=True)
class Problem:
    equations: tuple[tuple[Term, Term, str], ...]
    freshness_goals: tuple[tuple[Atom, Term], ...] = ()

    def theory(self) -> str:
        return C if any(th == C for _, _, th in self.equations) else CORE

    def variables(self) -> frozenset[Var]:
        out: frozenset[Var] = frozenset()
        for s, t, _ in self.equations:
            out |= vars_of(s) | vars_of(t)
        for _, t in self.freshness_goals:
            out |= vars_of(t)
        return out


@dataclass
class FreshPair:
    context: FreshContext
    subst: Subst


@dataclass
class FreshTriple:
    context: FreshContext
    subst: Subst
    residuals: tuple[tuple[Var, Perm, str], ...]  # X ~theory pi.X


@dataclass
class FixPair:
    context: FixContext
    subst: Subst


Candidate = Union[FreshPair, FreshTriple, FixPair]


@dataclass(frozen=True)
class ConstraintReport:
    constraint: str
    ok: bool
    residual: bool = False
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    verdict: str
    reports: tuple[ConstraintReport, ...]

    def __bool__(self):
        return self.verdict != INVALID


def _residual_hook(residuals, used: list):
    def hook(_ctx, u, v):
        for i, (x, pi, _theory) in enumerate(residuals):
            want = (Susp(ID, x), Susp(pi, x))
            inv = (Susp(ID, x), Susp(pi.inverse(), x))
            for l, r in ((u, v), (v, u)):
                if (l, r) in (want, inv):
                    used.append(i)
                    return True
        return False
    return hook


def validate(problem: Problem, cand: Candidate,
             sig: Optional[Signature] = None) -> ValidationReport:
    """Check a candidate against every constraint of the problem.

    The report carries one line per equation, freshness goal, and
    idempotency obligation; the overall verdict is ``valid-with-residual``
    when the candidate only closes some equation through a deferred
    fixed-point equation.
    """
    sig = sig or default_signature()
    sigma = dict(cand.subst)
    reports: list[ConstraintReport] = []
    any_residual = False

    if isinstance(cand, (FreshPair, FreshTriple)):
        delta = cand.context
        residuals = cand.residuals if isinstance(cand, FreshTriple) else ()
        for s, t, theory in problem.equations:
            used: list[int] = []
            hook = _residual_hook(residuals, used) if residuals else None
            v = check_alpha(delta, subst_apply(s, sigma), subst_apply(t, sigma),
                            theory, sig, residual=hook)
            label = f"{print_term(s)} =?= {print_term(t)}" + (" [C]" if theory == C else "")
            reports.append(ConstraintReport(label, bool(v), bool(used),
                                            v.reason or ""))
            any_residual |= bool(used)
        for a, t in problem.freshness_goals:
            v = check_fresh(delta, a, subst_apply(t, sigma))
            reports.append(ConstraintReport(f"{a} #? {print_term(t)}", bool(v),
                                            detail=v.reason or ""))
        for x in sorted(problem.variables(), key=lambda v: v.name):
            once = subst_apply(Susp(ID, x), sigma)
            twice = subst_apply(once, sigma)
            v = check_alpha(delta, once, twice, problem.theory(), sig)
            reports.append(ConstraintReport(f"{x} idempotent under the substitution",
                                            bool(v), detail=v.reason or ""))
    elif isinstance(cand, FixPair):
        ups = cand.context
        for s, t, theory in problem.equations:
            v = check_eq_fix(ups, subst_apply(s, sigma), subst_apply(t, sigma),
                             SUBSET_DOM, theory, sig)
            label = f"{print_term(s)} =?= {print_term(t)}" + (" [C]" if theory == C else "")
            reports.append(ConstraintReport(label, bool(v), detail=v.reason or ""))
        for a, t in problem.freshness_goals:
            target = subst_apply(t, sigma)
            avoid = atoms_of(target) | {a}
            for pi, _ in ups:
                avoid |= pi.domain
            c = FreshSupply(avoid).fresh()
            v = check_fix(ups, Perm(((a, c),)), target, SUBSET_DOM)
            reports.append(ConstraintReport(f"{a} #? {print_term(t)}", bool(v),
                                            detail=v.reason or ""))
        for x in sorted(problem.variables(), key=lambda v: v.name):
            once = subst_apply(Susp(ID, x), sigma)
            twice = subst_apply(once, sigma)
            v = check_eq_fix(ups, once, twice, SUBSET_DOM, problem.theory(), sig)
            reports.append(ConstraintReport(f"{x} idempotent under the substitution",
                                            bool(v), detail=v.reason or ""))
    else:
        raise TypeError(f"unknown candidate format: {cand!r}")

    if not all(r.ok for r in reports):
        verdict = INVALID
    elif any_residual:
        verdict = VALID_WITH_RESIDUAL
    else:
        verdict = VALID
    return ValidationReport(verdict, tuple(reports))


def instantiate_and_check(cand: FixPair, delta: Subst, problem: Problem,
                          sig: Optional[Signature] = None) -> ValidationReport:
    """Check a ground instantiation of a fixed-point solution.

    Every constrained variable must be instantiated to a ground term that
    the constraint's permutation fixes modulo the problem's theory; the
    composed substitution is then validated against the problem outright.
    """
    sig = sig or default_signature()
    theory = problem.theory()
    reports: list[ConstraintReport] = []
    for pi, x in sorted(cand.context, key=lambda c: (c[1].name, str(c[0]))):
        if x not in delta:
            reports.append(ConstraintReport(f"{pi} fix {x}", False,
                                            detail=f"{x} is not instantiated"))
            continue
        value = delta[x]
        if not is_ground(value):
            raise GroundnessError(f"instantiation of {x} must be ground")
        v = check_alpha(frozenset(), act(pi, value), value, theory, sig)
        reports.append(ConstraintReport(
            f"{pi} fix {x} at {x} := {print_term(value)}", bool(v),
            detail=v.reason or ""))
    composed = subst_compose(dict(cand.subst), dict(delta))
    inner = validate(problem, FreshPair(frozenset(), composed), sig)
    reports.extend(inner.reports)
    verdict = VALID if all(r.ok for r in reports) else INVALID
    return ValidationReport(verdict, tuple(reports))


# ---------------------------------------------------------------------------
# file formats

def parse_problem(text: str, sig: Optional[Signature] = None) -> Problem:
    """Line-oriented problems: ``s =?= t [C]`` and ``a #? t``."""
    sig = sig or default_signature()
    equations = []
    goals = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("//"):
            continue
        if "#?" in line:
            lhs, _, rhs = line.partition("#?")
            a = parse_term(lhs.strip(), sig)
            if not isinstance(a, Atom):
                raise ParseError(f"line {lineno}: freshness goals start with an atom")
            goals.append((a, parse_term(rhs.strip(), sig)))
        elif "=?=" in line:
            theory = CORE
            if line.endswith("[C]"):
                theory = C
                line = line[:-3].strip()
            lhs, _, rhs = line.partition("=?=")
            equations.append((parse_term(lhs.strip(), sig),
                              parse_term(rhs.strip(), sig), theory))
        else:
            raise ParseError(f"line {lineno}: expected '=?=' or '#?'")
    return Problem(tuple(equations), tuple(goals))


def _parse_subst(pieces: list[str], sig: Signature) -> dict[Var, Term]:
    sigma: dict[Var, Term] = {}
    for piece in pieces:
        for name, rhs in split_bindings(piece):
            if not name or not name[0].isupper():
                raise ParseError(f"substitutions bind variables, got {name!r}")
            sigma[Var(name)] = parse_term(rhs, sig)
    return sigma


def parse_candidate(text: str, sig: Optional[Signature] = None) -> Candidate:
    """Candidate files mirror the three solution formats::

        kind: fresh-pair | fresh-triple | fix-pair
        ctx: a # X, b # Y            (fix-pair uses fixed-point constraints)
        sub: X := c; Y := c
        res: X =?= (a b).X [C]       (fresh-triple only)
    """
    sig = sig or default_signature()
    fields: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("//"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key: value'")
        fields.setdefault(key.strip(), []).append(value.strip())
    kinds = fields.get("kind", [])
    if len(kinds) != 1:
        raise ParseError("candidate files need exactly one 'kind:' line")
    kind = kinds[0]
    sub = _parse_subst(fields.get("sub", []), sig)
    ctx_text = ", ".join(v for v in fields.get("ctx", []) if v)
    if kind == "fresh-pair":
        return FreshPair(parse_fresh_context(ctx_text), sub)
    if kind == "fresh-triple":
        residuals = []
        for line in fields.get("res", []):
            theory = CORE
            if line.endswith("[C]"):
                theory = C
                line = line[:-3].strip()
            lhs, sep, rhs = line.partition("=?=")
            if not sep:
                raise ParseError("residuals look like 'X =?= (a b).X'")
            l = parse_term(lhs.strip(), sig)
            r = parse_term(rhs.strip(), sig)
            if not (isinstance(l, Susp) and l.perm.is_identity
                    and isinstance(r, Susp) and r.var == l.var):
                raise ParseError("residuals are variable fixed-point equations")
            residuals.append((l.var, r.perm, theory))
        return FreshTriple(parse_fresh_context(ctx_text), sub, tuple(residuals))
    if kind == "fix-pair":
        return FixPair(parse_fix_context(ctx_text, sig), sub)
    raise ParseError(f"unknown candidate kind {kind!r}")
