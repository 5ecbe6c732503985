"""The fixed-point proof system: judgement checkers and a proof checker.

Two kinds of engine live here.

* Decision procedures ``check_fix`` and ``check_eq_fix`` decide the
  syntax-directed fixed-point judgement ``ctx |- pi fix t`` and the axiom-free
  equality ``ctx |- s = t`` (the relation generated by reflexivity, the
  congruences, and the swapping rule, with an optional commutative branch).
  Equational derivability with arbitrary axioms is undecidable in general, so
  there is no proof search beyond this fragment.

* ``verify_proof`` checks an explicitly given derivation tree over the full
  rule set, axioms included; checking is always decidable.

The variable rule has two modes: ``SUBSET_DOM`` asks that the conjugated
permutation move only atoms constrained in the context; ``GROUP_GENERATED``
asks that it lie in the group generated by the context's permutations.  The
second mode derives strictly less but is sound for every model, not only the
strong ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .deriv_fresh import C, CORE
from .judgements import (EqJudgement, FixContext, FixJudgement, context_dom,
                         fix_extend, perms_for)
from .permgroups import DEFAULT_CARRIER_BOUND, GenSet, group_member
from .terms import (ID, Abs, App, Atom, FreshSupply, Perm, Signature, Susp,
                    Term, Var, act, atoms_of, default_signature, subst_apply,
                    swap, vars_of)
from .verdicts import ProofTree, RuleMismatch, Verdict, no, yes


class VarRuleMode(Enum):
    SUBSET_DOM = "subset-dom"
    GROUP_GENERATED = "group-generated"


SUBSET_DOM = VarRuleMode.SUBSET_DOM
GROUP_GENERATED = VarRuleMode.GROUP_GENERATED


def _context_atoms(ctx: FixContext) -> set[Atom]:
    out: set[Atom] = set()
    for pi, _ in ctx:
        out |= pi.domain
    return out


def _supply_for(ctx: FixContext, *items) -> FreshSupply:
    avoid = _context_atoms(ctx)
    for item in items:
        if isinstance(item, Perm):
            avoid |= item.domain
        else:
            avoid |= atoms_of(item)
    return FreshSupply(avoid)


def _var_rule(ctx: FixContext, gamma: Perm, x: Var, mode: VarRuleMode,
              carrier_bound: int) -> Verdict:
    """The side condition shared by both variable rules, for ``gamma`` already
    conjugated into the variable's frame."""
    if mode is SUBSET_DOM:
        covered = context_dom(ctx, x)
        stray = sorted(gamma.domain - covered, key=Atom.key)
        if stray:
            return no(f"{stray[0]} is moved but unconstrained for {x}")
        return Verdict(True)
    gens = GenSet(perms_for(ctx, x), bound=carrier_bound)
    if group_member(gamma, gens):
        return Verdict(True)
    return no(f"{gamma.normalized()} is not in the group generated by the "
              f"constraints on {x}")


def check_fix(ctx: FixContext, pi: Perm, t: Term,
              mode: VarRuleMode = SUBSET_DOM, *,
              carrier_bound: int = DEFAULT_CARRIER_BOUND,
              supply: Optional[FreshSupply] = None) -> Verdict:
    """Decide ``ctx |- pi fix t``.

    Fresh atoms for the abstraction rule come from ``supply`` (created per
    call when not given); verdicts do not depend on the names chosen.
    """
    if supply is None:
        supply = _supply_for(ctx, pi, t)
    j = FixJudgement(ctx, pi, t)
    match t:
        case Atom():
            if pi(t) == t:
                return yes("fix_a", j)
            return no(f"{pi.normalized()} moves {t}")
        case Susp(rho, x):
            side = _var_rule(ctx, pi.conjugate(rho.inverse()), x, mode, carrier_bound)
            if side:
                return yes("fix_var", j)
            return side
        case App(_, args):
            subs = []
            for arg in args:
                sub = check_fix(ctx, pi, arg, mode,
                                carrier_bound=carrier_bound, supply=supply)
                if not sub:
                    return sub
                subs.append(sub.derivation)
            return yes("fix_f", j, tuple(subs))
        case Abs(a, body):
            c1, c2 = supply.fresh_pair()
            ctx2 = fix_extend(ctx, swap(c1, c2), vars_of(body))
            sub = check_fix(ctx2, pi, act(swap(a, c1), body), mode,
                            carrier_bound=carrier_bound, supply=supply)
            if sub:
                return yes("fix_abs", j, (sub.derivation,))
            return sub
    raise TypeError(f"not a term: {t!r}")


def check_eq_fix(ctx: FixContext, s: Term, t: Term,
                 mode: VarRuleMode = SUBSET_DOM, theory: str = CORE,
                 sig: Optional[Signature] = None, *,
                 carrier_bound: int = DEFAULT_CARRIER_BOUND,
                 supply: Optional[FreshSupply] = None) -> Verdict:
    """Decide the axiom-free equality ``ctx |- s = t``.

    Suspensions over the same variable reduce to the variable rule on the
    composite ``rho^-1 o pi``; differing binders reduce to a swapped body
    plus a freshness-like fixed-point premise on a fresh atom.  With
    ``theory=C`` the arguments of a commutative symbol match in either order.
    """
    sig = sig or default_signature()
    if supply is None:
        supply = _supply_for(ctx, ID, s, t)
    j = EqJudgement(ctx, s, t)

    def recur(u, v):
        return check_eq_fix(ctx, u, v, mode, theory, sig,
                            carrier_bound=carrier_bound, supply=supply)

    match (s, t):
        case (Atom(), Atom()):
            if s == t:
                return yes("eq_a", j)
            return no(f"distinct atoms {s} and {t}")
        case (Susp(pi, x), Susp(rho, y)):
            if x != y:
                return no(f"different variables {x} and {y}")
            gamma = rho.inverse().compose(pi)
            side = _var_rule(ctx, gamma, x, mode, carrier_bound)
            if side:
                return yes("eq_var", j)
            return side
        case (Abs(a, u), Abs(b, v)):
            if a == b:
                sub = recur(u, v)
                if sub:
                    return yes("eq_abs", j, (sub.derivation,))
                return sub
            sub = recur(u, act(swap(a, b), v))
            if not sub:
                return sub
            c1, c2 = supply.fresh_pair()
            ctx2 = fix_extend(ctx, swap(c1, c2), vars_of(v))
            fr = check_fix(ctx2, swap(a, c1), v, mode,
                           carrier_bound=carrier_bound, supply=supply)
            if not fr:
                return no(f"[{a}]... = [{b}]...: {fr.reason}")
            return yes("eq_ab", j, (sub.derivation, fr.derivation))
        case (App(f, ls), App(g, rs)):
            if f != g:
                return no(f"different symbols {f} and {g}")
            if theory == C and sig.is_commutative(f):
                for pos, (r1, r2) in enumerate(((rs[0], rs[1]), (rs[1], rs[0])), start=1):
                    v1 = recur(ls[0], r1)
                    if not v1:
                        continue
                    v2 = recur(ls[1], r2)
                    if v2:
                        return yes("eq_fC", j, (v1.derivation, v2.derivation),
                                   position=pos)
                return no(f"{f} arguments match in neither order")
            subs = []
            for l, r in zip(ls, rs):
                sub = recur(l, r)
                if not sub:
                    return sub
                subs.append(sub.derivation)
            return yes("eq_f", j, tuple(subs))
    return no(f"{type(s).__name__} vs {type(t).__name__}: no rule applies")


# ---------------------------------------------------------------------------
# theories and the proof checker

@dataclass(frozen=True)
class Axiom:
    """A named equality axiom ``context |- lhs = rhs``."""

    name: str
    context: FixContext
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Theory:
    """A signature together with named equality axioms."""

    name: str
    signature: Signature
    axioms: tuple[Axiom, ...] = ()

    def axiom(self, name: str) -> Axiom:
        for ax in self.axioms:
            if ax.name == name:
                return ax
        raise KeyError(f"theory {self.name} has no axiom {name!r}")


def core_theory(sig: Optional[Signature] = None) -> Theory:
    return Theory("CORE", sig or default_signature())


def commutativity_theory(sig: Optional[Signature] = None) -> Theory:
    """One commutativity axiom per commutative symbol of the signature."""
    sig = sig or default_signature()
    x, y = Susp(ID, Var("X")), Susp(ID, Var("Y"))
    axs = tuple(Axiom(f"C[{f}]", frozenset(), App(f, (x, y)), App(f, (y, x)))
                for f in sorted(sig.commutative))
    return Theory("C", sig, axs)


_EQ_RULES = {"refl", "symm", "tran", "ax", "cong_abs", "cong_f", "fr", "perm"}
_FIX_RULES = {"fix_a", "fix_f", "fix_var", "fix_abs"}


def _is_fresh_for(atom: Atom, taken: set[Atom]) -> bool:
    return atom.fresh and atom not in taken


def _judgement_atoms(j) -> set[Atom]:
    match j:
        case FixJudgement(ctx, pi, t):
            return _context_atoms(ctx) | set(pi.domain) | set(atoms_of(t))
        case EqJudgement(ctx, s, t):
            return _context_atoms(ctx) | set(atoms_of(s)) | set(atoms_of(t))
    raise TypeError(f"not a fixed-point system judgement: {j!r}")


def _check_extension(base: FixContext, extended: FixContext, body_vars,
                     taken: set[Atom]):
    """Match ``extended`` against ``base + (c1 c2) fix var(t)``; return the
    candidate fresh atoms of the shared swap, or an error string."""
    extra = extended - base
    if not body_vars:
        if extra:
            return None, "context extended although the body has no variables"
        return (), None
    if {x for _, x in extra} != set(body_vars):
        return None, "context extension must cover exactly the body's variables"
    perms = {pi for pi, _ in extra}
    if len(perms) != 1:
        return None, "context extension must share one fresh swap"
    gamma = next(iter(perms))
    dom = sorted(gamma.domain, key=Atom.key)
    if len(dom) != 2 or gamma(dom[0]) != dom[1]:
        return None, "context extension must be a single swap"
    if not all(_is_fresh_for(d, taken) for d in dom):
        return None, f"extension atoms {dom[0]}, {dom[1]} are not fresh here"
    if base & extra:
        return None, "extension overlaps the base context"
    return tuple(dom), None


def verify_proof(tree: ProofTree, theory: Theory,
                 mode: VarRuleMode = SUBSET_DOM,
                 carrier_bound: int = DEFAULT_CARRIER_BOUND) -> Verdict:
    """Validate every node of an explicit derivation tree.

    Returns a failing verdict holding a :class:`RuleMismatch` for the first
    invalid node (pre-order); the mismatch's path is the premise-index trail
    from the root.
    """
    mismatch = _verify_node(tree, theory, mode, carrier_bound, path="")
    if mismatch is None:
        return Verdict(True, tree)
    return Verdict(False, None, str(mismatch), (mismatch,))


def _bad(path: str, reason: str) -> RuleMismatch:
    return RuleMismatch(path, reason)


def _verify_node(node: ProofTree, theory: Theory, mode: VarRuleMode,
                 bound: int, path: str) -> Optional[RuleMismatch]:
    rule = node.rule
    if rule not in _EQ_RULES | _FIX_RULES:
        return _bad(path, f"unknown rule label {rule!r}")
    checker = _NODE_CHECKERS[rule]
    err = checker(node, theory, mode, bound, path)
    if err is not None:
        return err
    for i, premise in enumerate(node.premises):
        sub = _verify_node(premise, theory, mode, bound,
                           path=f"{path}.{i}" if path else str(i))
        if sub is not None:
            return sub
    return None


def _want_eq(node, path, n_premises=None):
    if not isinstance(node.conclusion, EqJudgement):
        return _bad(path, f"{node.rule} concludes an equality judgement")
    if n_premises is not None and len(node.premises) != n_premises:
        return _bad(path, f"{node.rule} takes {n_premises} premises, "
                          f"got {len(node.premises)}")
    return None


def _check_refl(node, theory, mode, bound, path):
    err = _want_eq(node, path, 0)
    if err:
        return err
    j = node.conclusion
    if j.lhs != j.rhs:
        return _bad(path, "refl needs syntactically identical sides")
    return None


def _check_symm(node, theory, mode, bound, path):
    err = _want_eq(node, path, 1)
    if err:
        return err
    j, p = node.conclusion, node.premises[0].conclusion
    if not isinstance(p, EqJudgement) or p.context != j.context \
            or p.lhs != j.rhs or p.rhs != j.lhs:
        return _bad(path, "symm premise must flip the conclusion")
    return None


def _check_tran(node, theory, mode, bound, path):
    err = _want_eq(node, path, 2)
    if err:
        return err
    j = node.conclusion
    p1, p2 = (p.conclusion for p in node.premises)
    if not (isinstance(p1, EqJudgement) and isinstance(p2, EqJudgement)):
        return _bad(path, "tran premises must be equality judgements")
    if p1.context != j.context or p2.context != j.context:
        return _bad(path, "tran premises must share the conclusion's context")
    if p1.lhs != j.lhs or p2.rhs != j.rhs or p1.rhs != p2.lhs:
        return _bad(path, "tran premises do not chain")
    return None


def _check_cong_abs(node, theory, mode, bound, path):
    err = _want_eq(node, path, 1)
    if err:
        return err
    j, p = node.conclusion, node.premises[0].conclusion
    if not (isinstance(j.lhs, Abs) and isinstance(j.rhs, Abs)
            and j.lhs.atom == j.rhs.atom):
        return _bad(path, "cong_abs needs abstractions with the same binder")
    want = EqJudgement(j.context, j.lhs.body, j.rhs.body)
    if p != want:
        return _bad(path, "cong_abs premise must equate the bodies")
    return None


def _check_cong_f(node, theory, mode, bound, path):
    err = _want_eq(node, path, 1)
    if err:
        return err
    j, p = node.conclusion, node.premises[0].conclusion
    if node.position is None:
        return _bad(path, "cong_f needs a recorded argument position")
    if not (isinstance(j.lhs, App) and isinstance(j.rhs, App)
            and j.lhs.sym == j.rhs.sym and len(j.lhs.args) == len(j.rhs.args)):
        return _bad(path, "cong_f needs applications of one symbol")
    k = node.position - 1
    if not 0 <= k < len(j.lhs.args):
        return _bad(path, f"cong_f position {node.position} out of range")
    for i, (l, r) in enumerate(zip(j.lhs.args, j.rhs.args)):
        if i != k and l != r:
            return _bad(path, f"cong_f argument {i + 1} differs but is not "
                              f"the rewritten position")
    want = EqJudgement(j.context, j.lhs.args[k], j.rhs.args[k])
    if p != want:
        return _bad(path, "cong_f premise must equate the arguments at the "
                          "recorded position")
    return None


def _check_fr(node, theory, mode, bound, path):
    err = _want_eq(node, path, 1)
    if err:
        return err
    j, p = node.conclusion, node.premises[0].conclusion
    if node.perm is None or node.var is None:
        return _bad(path, "fr needs its strengthening constraint recorded")
    if not isinstance(p, EqJudgement) or p.lhs != j.lhs or p.rhs != j.rhs:
        return _bad(path, "fr premise must prove the same equality")
    if p.context != j.context | {(node.perm, node.var)}:
        return _bad(path, "fr premise context must add exactly the recorded "
                          "constraint")
    if not node.perm.domain <= context_dom(j.context, node.var):
        return _bad(path, f"dom({node.perm.normalized()}) is not covered by the "
                          f"constraints on {node.var}")
    return None


def _check_ax(node, theory, mode, bound, path):
    err = _want_eq(node, path)
    if err:
        return err
    if node.axiom is None or node.perm is None or node.subst is None:
        return _bad(path, "ax needs axiom name, permutation and substitution")
    try:
        ax = theory.axiom(node.axiom)
    except KeyError as e:
        return _bad(path, str(e))
    j = node.conclusion
    pi, sigma = node.perm, node.subst_dict()
    if j.lhs != act(pi, subst_apply(ax.lhs, sigma)) \
            or j.rhs != act(pi, subst_apply(ax.rhs, sigma)):
        return _bad(path, f"conclusion is not the recorded instance of {ax.name}")
    required = [FixJudgement(j.context, rho.conjugate(pi),
                             act(pi, subst_apply(Susp(ID, x), sigma)))
                for rho, x in ax.context]
    got = [p.conclusion for p in node.premises]
    pool = list(got)
    for want in required:
        if want in pool:
            pool.remove(want)
        else:
            return _bad(path, f"missing premise for instantiated constraint "
                              f"of {ax.name}")
    if pool:
        return _bad(path, "superfluous ax premises")
    return None


def _check_perm(node, theory, mode, bound, path):
    err = _want_eq(node, path, 2)
    if err:
        return err
    j = node.conclusion
    taken = _judgement_atoms(j)
    sides = []
    for idx, premise in enumerate(node.premises):
        p = premise.conclusion
        if not isinstance(p, FixJudgement):
            return _bad(path, "perm premises must be fixed-point judgements")
        if p.term != j.rhs:
            return _bad(path, "perm premises must constrain the right-hand term")
        ext, err_txt = _check_extension(j.context, p.context, vars_of(j.rhs), taken)
        if err_txt:
            return _bad(path, f"premise {idx + 1}: {err_txt}")
        dom = sorted(p.perm.domain, key=Atom.key)
        if len(dom) != 2 or p.perm(dom[0]) != dom[1]:
            return _bad(path, f"premise {idx + 1}: permutation must be a swap")
        candidates = []
        for cand_fresh in dom:
            other = dom[0] if cand_fresh == dom[1] else dom[1]
            if not _is_fresh_for(cand_fresh, taken):
                continue
            if ext and cand_fresh not in ext:
                continue
            candidates.append(other)
        if not candidates:
            return _bad(path, f"premise {idx + 1}: no fresh swap partner found")
        sides.append(candidates)
    for a in sides[0]:
        for b in sides[1]:
            if j.lhs == act(swap(a, b), j.rhs):
                return None
    return _bad(path, "conclusion is not the recorded swap of its right-hand side")


def _check_fix_a(node, theory, mode, bound, path):
    j = node.conclusion
    if not isinstance(j, FixJudgement) or node.premises:
        return _bad(path, "fix_a is a leaf over a fixed-point judgement")
    if not isinstance(j.term, Atom):
        return _bad(path, "fix_a applies to atoms")
    if j.perm(j.term) != j.term:
        return _bad(path, f"{j.perm.normalized()} moves {j.term}")
    return None


def _check_fix_f(node, theory, mode, bound, path):
    j = node.conclusion
    if not isinstance(j, FixJudgement) or not isinstance(j.term, App):
        return _bad(path, "fix_f applies to applications")
    want = [FixJudgement(j.context, j.perm, arg) for arg in j.term.args]
    got = [p.conclusion for p in node.premises]
    if got != want:
        return _bad(path, "fix_f premises must cover the arguments in order")
    return None


def _check_fix_var(node, theory, mode, bound, path):
    j = node.conclusion
    if not isinstance(j, FixJudgement) or node.premises:
        return _bad(path, "fix_var is a leaf over a fixed-point judgement")
    if not isinstance(j.term, Susp):
        return _bad(path, "fix_var applies to suspensions")
    side = _var_rule(j.context, j.perm.conjugate(j.term.perm.inverse()),
                     j.term.var, mode, bound)
    if not side:
        return _bad(path, side.reason)
    return None


def _check_fix_abs(node, theory, mode, bound, path):
    j = node.conclusion
    if not isinstance(j, FixJudgement) or not isinstance(j.term, Abs) \
            or len(node.premises) != 1:
        return _bad(path, "fix_abs takes one premise and an abstraction")
    p = node.premises[0].conclusion
    if not isinstance(p, FixJudgement) or p.perm != j.perm:
        return _bad(path, "fix_abs premise must keep the permutation")
    a, body = j.term.atom, j.term.body
    taken = _judgement_atoms(j)
    ext, err_txt = _check_extension(j.context, p.context, vars_of(body), taken)
    if err_txt:
        return _bad(path, err_txt)
    if ext:
        candidates: Iterable[Atom] = ext
    else:
        candidates = sorted({c for c in atoms_of(p.term)
                             if _is_fresh_for(c, taken)}, key=Atom.key)
        if a not in atoms_of(body) and p.term == body:
            return None  # the swap touched nothing; any fresh name works
    for c1 in candidates:
        if p.term == act(swap(a, c1), body):
            return None
    return _bad(path, "premise term is not the body with its binder swapped "
                      "for a fresh atom")


_NODE_CHECKERS = {
    "refl": _check_refl, "symm": _check_symm, "tran": _check_tran,
    "ax": _check_ax, "cong_abs": _check_cong_abs, "cong_f": _check_cong_f,
    "fr": _check_fr, "perm": _check_perm,
    "fix_a": _check_fix_a, "fix_f": _check_fix_f,
    "fix_var": _check_fix_var, "fix_abs": _check_fix_abs,
}


def _system_of(j) -> str:
    if isinstance(j, (FixJudgement, EqJudgement)):
        return "fix"
    from .judgements import AlphaJudgement, FreshJudgement, NuJudgement
    if isinstance(j, (FreshJudgement, AlphaJudgement)):
        return "fresh"
    if isinstance(j, NuJudgement):
        return "strong"
    raise TypeError(f"not a judgement: {j!r}")


def tree_to_dict(tree: ProofTree) -> dict:
    """Serialise a derivation tree to the nested record format of
    ``docs/proof_tree_schema.md``."""
    from .syntax import print_judgement, print_term
    out: dict = {
        "rule": tree.rule,
        "system": _system_of(tree.conclusion),
        "conclusion": print_judgement(tree.conclusion),
        "premises": [tree_to_dict(p) for p in tree.premises],
    }
    if tree.perm is not None:
        out["perm"] = str(tree.perm)
    if tree.subst is not None:
        out["subst"] = {x.name: print_term(t) for x, t in tree.subst}
    if tree.axiom is not None:
        out["axiom"] = tree.axiom
    if tree.var is not None:
        out["var"] = tree.var.name
    if tree.position is not None:
        out["position"] = tree.position
    return out


def tree_from_dict(data: dict, sig: Optional[Signature] = None) -> ProofTree:
    """Rebuild a derivation tree from its serialised form."""
    from .syntax import parse_judgement, parse_perm, parse_term
    sig = sig or default_signature()
    conclusion = parse_judgement(data["conclusion"], sig, data["system"])
    subst = None
    if "subst" in data:
        subst = tuple(sorted(((Var(name), parse_term(text, sig))
                              for name, text in data["subst"].items()),
                             key=lambda kv: kv[0].name))
    return ProofTree(
        rule=data["rule"],
        conclusion=conclusion,
        premises=tuple(tree_from_dict(p, sig) for p in data.get("premises", ())),
        perm=parse_perm(data["perm"]) if "perm" in data else None,
        subst=subst,
        axiom=data.get("axiom"),
        var=Var(data["var"]) if "var" in data else None,
        position=data.get("position"),
    )


def perm_proof(ctx: FixContext, a: Atom, b: Atom, t: Term,
               mode: VarRuleMode = SUBSET_DOM,
               carrier_bound: int = DEFAULT_CARRIER_BOUND) -> Optional[ProofTree]:
    """Build an explicit swapping-rule derivation of ``ctx |- (a b).t = t``.

    The two premises are produced by ``check_fix`` on fresh-extended contexts,
    so the resulting tree passes ``verify_proof`` whenever it exists; returns
    ``None`` when either premise fails.
    """
    supply = _supply_for(ctx, swap(a, b), t)
    premises = []
    for atom in (a, b):
        c1, c2 = supply.fresh_pair()
        ctx2 = fix_extend(ctx, swap(c1, c2), vars_of(t))
        v = check_fix(ctx2, swap(atom, c1), t, mode,
                      carrier_bound=carrier_bound, supply=supply)
        if not v:
            return None
        premises.append(v.derivation)
    conclusion = EqJudgement(ctx, act(swap(a, b), t), t)
    return ProofTree("perm", conclusion, tuple(premises))
