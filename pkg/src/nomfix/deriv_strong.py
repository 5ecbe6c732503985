"""Strong nu-quantified fixed-point judgements and their freshness translations.

A strong judgement ``new c-bar. (ctx |- body)`` restricts the context to
constraints ``new c.(a c) fix X`` whose ``c`` is quantified at the front.
The variable rules here discount quantified atoms: a conjugated permutation
may move them freely, everything else must be covered by the context.

The two context translations are mutually inverse on their images:

    a # X                 <->  new c.(a c) fix X   (one fresh c per constraint)

Judgement translations extend them; a fixed-point conclusion only translates
when its permutation is a swap of a non-quantified atom with an unused
quantified one (anything else raises ``ShapeError``).
"""

from __future__ import annotations

from typing import Optional, Union

from .deriv_fresh import C, CORE
from .errors import ShapeError
from .judgements import (AlphaGoal, AlphaJudgement, FixGoal, FixJudgement,
                         FreshContext, FreshJudgement, NuJudgement,
                         StrongContext)
from .terms import (Abs, App, Atom, FreshSupply, Perm, Signature, Susp, Term,
                    act, atoms_of, default_signature, swap, vars_of)
from .verdicts import Verdict, no, yes


def _nu_avoid(j: NuJudgement, *extra) -> set[Atom]:
    avoid = set(j.nu_atoms)
    for a, c, _ in j.context.constraints:
        avoid |= {a, c}
    for item in extra:
        avoid |= item.domain if isinstance(item, Perm) else atoms_of(item)
    return avoid


def _nu_supply(j: NuJudgement, *extra) -> FreshSupply:
    return FreshSupply(_nu_avoid(j, *extra))


def _judgement(nu, ctx, body) -> NuJudgement:
    return NuJudgement(tuple(nu), ctx, body)


def _fix(nu: tuple, ctx: StrongContext, pi: Perm, t: Term,
         supply: FreshSupply) -> Verdict:
    j = _judgement(nu, ctx, FixGoal(pi, t))
    nu_set = set(nu)
    match t:
        case Atom():
            if pi(t) == t:
                return yes("sfix_a", j)
            return no(f"{pi.normalized()} moves {t}")
        case Susp(rho, x):
            gamma = pi.conjugate(rho.inverse())
            stray = sorted(gamma.domain - nu_set - ctx.dom_for(x), key=Atom.key)
            if stray:
                return no(f"{stray[0]} is moved but neither quantified nor "
                          f"constrained for {x}")
            return yes("sfix_var", j)
        case App(_, args):
            subs = []
            for arg in args:
                sub = _fix(nu, ctx, pi, arg, supply)
                if not sub:
                    return sub
                subs.append(sub.derivation)
            return yes("sfix_f", j, tuple(subs))
        case Abs(a, body):
            c1 = supply.fresh()
            sub = _fix(nu + (c1,), ctx, pi, act(swap(a, c1), body), supply)
            if sub:
                return yes("sfix_abs", j, (sub.derivation,))
            return sub
    raise TypeError(f"not a term: {t!r}")


def _alpha(nu: tuple, ctx: StrongContext, s: Term, t: Term, theory: str,
           sig: Signature, supply: FreshSupply) -> Verdict:
    j = _judgement(nu, ctx, AlphaGoal(s, t))
    nu_set = set(nu)
    match (s, t):
        case (Atom(), Atom()):
            if s == t:
                return yes("salpha_a", j)
            return no(f"distinct atoms {s} and {t}")
        case (Susp(pi, x), Susp(rho, y)):
            if x != y:
                return no(f"different variables {x} and {y}")
            gamma = rho.inverse().compose(pi)
            stray = sorted(gamma.domain - nu_set - ctx.dom_for(x), key=Atom.key)
            if stray:
                return no(f"{stray[0]} is moved but neither quantified nor "
                          f"constrained for {x}")
            return yes("salpha_var", j)
        case (Abs(a, u), Abs(b, v)):
            if a == b:
                sub = _alpha(nu, ctx, u, v, theory, sig, supply)
                if sub:
                    return yes("salpha_abs", j, (sub.derivation,))
                return sub
            sub = _alpha(nu, ctx, u, act(swap(a, b), v), theory, sig, supply)
            if not sub:
                return sub
            c1 = supply.fresh()
            fr = _fix(nu + (c1,), ctx, swap(a, c1), v, supply)
            if not fr:
                return no(f"[{a}]... ≈ [{b}]...: {fr.reason}")
            return yes("salpha_ab", j, (sub.derivation, fr.derivation))
        case (App(f, ls), App(g, rs)):
            if f != g:
                return no(f"different symbols {f} and {g}")
            if theory == C and sig.is_commutative(f):
                for pos, (r1, r2) in enumerate(((rs[0], rs[1]), (rs[1], rs[0])), start=1):
                    v1 = _alpha(nu, ctx, ls[0], r1, theory, sig, supply)
                    if not v1:
                        continue
                    v2 = _alpha(nu, ctx, ls[1], r2, theory, sig, supply)
                    if v2:
                        return yes("salpha_fC", j, (v1.derivation, v2.derivation),
                                   position=pos)
                return no(f"{f} arguments match in neither order")
            subs = []
            for l, r in zip(ls, rs):
                sub = _alpha(nu, ctx, l, r, theory, sig, supply)
                if not sub:
                    return sub
                subs.append(sub.derivation)
            return yes("salpha_f", j, tuple(subs))
    return no(f"{type(s).__name__} vs {type(t).__name__}: no rule applies")


def check_fix_strong(j: NuJudgement, *,
                     supply: Optional[FreshSupply] = None) -> Verdict:
    """Decide a strong fixed-point judgement ``new c-bar. ctx |- pi fix t``."""
    if not isinstance(j.body, FixGoal):
        raise TypeError("check_fix_strong expects a fixed-point body")
    if supply is None:
        supply = _nu_supply(j, j.body.perm, j.body.term)
    return _fix(tuple(j.nu_atoms), j.context, j.body.perm, j.body.term, supply)


def check_alpha_strong(j: NuJudgement, theory: str = CORE,
                       sig: Optional[Signature] = None, *,
                       supply: Optional[FreshSupply] = None) -> Verdict:
    """Decide a strong alpha-equality judgement ``new c-bar. ctx |- s ~ t``."""
    if not isinstance(j.body, AlphaGoal):
        raise TypeError("check_alpha_strong expects an equality body")
    sig = sig or default_signature()
    if supply is None:
        supply = _nu_supply(j, j.body.lhs, j.body.rhs)
    return _alpha(tuple(j.nu_atoms), j.context, j.body.lhs, j.body.rhs,
                  theory, sig, supply)


# ---------------------------------------------------------------------------
# translations between freshness and strong fixed-point judgements

def translate_fresh_to_fix(delta: FreshContext,
                           supply: Optional[FreshSupply] = None) -> StrongContext:
    """``a # X`` becomes ``new c.(a c) fix X`` with one fresh ``c`` per
    constraint (quantified atoms must be pairwise distinct)."""
    if supply is None:
        supply = FreshSupply({a for a, _ in delta})
    triples = []
    nu = []
    for a, x in sorted(delta, key=lambda p: (p[0].key(), p[1].name)):
        c = supply.fresh()
        nu.append(c)
        triples.append((a, c, x))
    return StrongContext(tuple(nu), frozenset(triples))


def translate_fix_to_fresh(ctx: StrongContext) -> FreshContext:
    """``new c.(a c) fix X`` becomes ``a # X``; the shape is guaranteed by
    the context type."""
    return frozenset((a, x) for a, _, x in ctx.constraints)


def fresh_judgement_to_strong(j: Union[FreshJudgement, AlphaJudgement]) -> NuJudgement:
    """Translate a freshness-system judgement into a strong one.

    ``delta |- a # t`` maps to ``new c-bar, c'. [delta] |- (a c') fix t``;
    equality judgements keep their body.
    """
    match j:
        case FreshJudgement(delta, a, t):
            supply = FreshSupply({b for b, _ in delta} | atoms_of(t) | {a})
            ctx = translate_fresh_to_fix(delta, supply)
            c_prime = supply.fresh()
            return NuJudgement(tuple(ctx.nu_atoms) + (c_prime,), ctx,
                               FixGoal(swap(a, c_prime), t))
        case AlphaJudgement(delta, s, t):
            supply = FreshSupply({b for b, _ in delta} | atoms_of(s) | atoms_of(t))
            ctx = translate_fresh_to_fix(delta, supply)
            return NuJudgement(tuple(ctx.nu_atoms), ctx, AlphaGoal(s, t))
    raise TypeError(f"not a freshness-system judgement: {j!r}")


def strong_judgement_to_fresh(j: NuJudgement) -> Union[FreshJudgement, AlphaJudgement]:
    """Translate a strong judgement into the freshness system.

    A fixed-point body must be a swap ``(a c1)`` of a non-quantified atom
    with a quantified atom that the context does not use and the term does
    not mention; otherwise there is no corresponding freshness judgement and
    ``ShapeError`` is raised.  An equality body always translates, adding
    ``c # X`` for every quantified atom and every variable of the terms.
    """
    delta = translate_fix_to_fresh(j.context)
    match j.body:
        case AlphaGoal(s, t):
            extra = {(c, x) for c in j.nu_atoms for x in vars_of(s) | vars_of(t)}
            return AlphaJudgement(delta | extra, s, t)
        case FixGoal(pi, t):
            dom = sorted(pi.domain, key=Atom.key)
            if len(dom) != 2 or pi(dom[0]) != dom[1]:
                raise ShapeError(f"conclusion {pi} fix ... is not a single swap")
            nu = set(j.nu_atoms)
            quantified = [d for d in dom if d in nu]
            if len(quantified) != 1:
                raise ShapeError(
                    f"conclusion swaps {dom[0]} and {dom[1]}: exactly one must "
                    f"be a quantified new name")
            c1 = quantified[0]
            a = dom[0] if dom[1] == c1 else dom[1]
            if c1 in j.context.used_nu():
                raise ShapeError(f"new name {c1} is already used by the context")
            if c1 in atoms_of(t):
                raise ShapeError(f"new name {c1} occurs in the term")
            return FreshJudgement(delta, a, t)
    raise TypeError(f"not a strong judgement body: {j.body!r}")


def flatten_strong(ctx: StrongContext) -> frozenset:
    """Forget the quantifier: the plain fixed-point context of the swaps."""
    return frozenset((swap(a, c), x) for a, c, x in ctx.constraints)


def rename_nu(j: NuJudgement, supply: Optional[FreshSupply] = None) -> NuJudgement:
    """The same judgement over a disjoint choice of quantified names.

    Verdicts must not depend on which fresh atoms a supply handed out; tests
    compare checks of ``j`` and ``rename_nu(j)``.
    """
    if isinstance(j.body, FixGoal):
        taken = _nu_avoid(j, j.body.perm, j.body.term)
    else:
        taken = _nu_avoid(j, j.body.lhs, j.body.rhs)
    if supply is None:
        supply = FreshSupply(taken, prefix="e")
    pi = Perm([(c, supply.fresh()) for c in j.nu_atoms])
    nu = tuple(pi(c) for c in j.nu_atoms)
    ctx = StrongContext(tuple(pi(c) for c in j.context.nu_atoms),
                        frozenset((a, pi(c), x) for a, c, x in j.context.constraints))
    match j.body:
        case FixGoal(rho, t):
            body = FixGoal(rho.conjugate(pi), act(pi, t))
        case AlphaGoal(s, t):
            body = AlphaGoal(act(pi, s), act(pi, t))
    return NuJudgement(nu, ctx, body)
