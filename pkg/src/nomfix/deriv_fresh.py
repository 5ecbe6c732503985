"""Syntax-directed checkers for the freshness system: ``a # t`` and ``s ~ t``.

Both relations are decided by structural recursion over the standard rules;
the alpha-equivalence checker optionally works modulo commutativity, where
the argument order of a commutative symbol is tried both ways (ordered
backtracking; the verdict does not depend on the order tried).
"""

from __future__ import annotations

from typing import Callable, Optional

from .judgements import AlphaJudgement, FreshContext, FreshJudgement
from .permgroups import ds
from .terms import (Abs, App, Atom, Perm, Signature, Susp, Term,
                    default_signature)
from .verdicts import Verdict, no, yes

CORE = "core"
C = "c"

ResidualHook = Callable[[FreshContext, Term, Term], bool]


def act_on_fresh_context(pi: Perm, ctx: FreshContext) -> FreshContext:
    """Conjugate a freshness context pointwise: ``a # X`` becomes ``pi(a) # X``."""
    return frozenset((pi(a), x) for a, x in ctx)


def check_fresh(ctx: FreshContext, a: Atom, t: Term) -> Verdict:
    """Decide ``ctx |- a # t``."""
    j = FreshJudgement(ctx, a, t)
    match t:
        case Atom():
            if t != a:
                return yes("#a", j)
            return no(f"no rule concludes {a} # {a}")
        case Susp(pi, x):
            b = pi.inverse()(a)
            if (b, x) in ctx:
                return yes("#var", j)
            return no(f"{b} # {x} is not in the context")
        case Abs(b, body):
            if b == a:
                return yes("#[a]", j)
            sub = check_fresh(ctx, a, body)
            if sub:
                return yes("#abs", j, (sub.derivation,))
            return sub
        case App(_, args):
            subs = []
            for arg in args:
                sub = check_fresh(ctx, a, arg)
                if not sub:
                    return sub
                subs.append(sub.derivation)
            return yes("#f", j, tuple(subs))
    raise TypeError(f"not a term: {t!r}")


def check_alpha(ctx: FreshContext, s: Term, t: Term, theory: str = CORE,
                sig: Optional[Signature] = None,
                residual: Optional[ResidualHook] = None) -> Verdict:
    """Decide ``ctx |- s ~ t`` (or ``~_C`` when ``theory`` is commutative).

    ``residual`` lets a caller accept designated subgoals without proof; the
    solution validator uses it to defer fixed-point equations.  Matching
    subgoals appear in the derivation as ``residual`` leaves.
    """
    sig = sig or default_signature()
    j = AlphaJudgement(ctx, s, t)
    if residual is not None and residual(ctx, s, t):
        return yes("residual", j)
    match (s, t):
        case (Atom(), Atom()):
            if s == t:
                return yes("~a", j)
            return no(f"distinct atoms {s} and {t}")
        case (Susp(pi, x), Susp(rho, y)):
            if x != y:
                return no(f"different variables {x} and {y}")
            missing = [a for a in sorted(ds(pi, rho), key=Atom.key) if (a, x) not in ctx]
            if missing:
                return no(f"{missing[0]} # {x} is not in the context")
            return yes("~var", j)
        case (Abs(a, u), Abs(b, v)):
            from .terms import act, swap
            if a == b:
                sub = check_alpha(ctx, u, v, theory, sig, residual)
                if sub:
                    return yes("~[a]", j, (sub.derivation,))
                return sub
            sub = check_alpha(ctx, u, act(swap(a, b), v), theory, sig, residual)
            if not sub:
                return sub
            fr = check_fresh(ctx, a, v)
            if not fr:
                return no(f"[{a}]... ~ [{b}]...: {fr.reason}")
            return yes("~ab", j, (sub.derivation, fr.derivation))
        case (App(f, ls), App(g, rs)):
            if f != g:
                return no(f"different symbols {f} and {g}")
            if theory == C and sig.is_commutative(f):
                for pos, (r1, r2) in enumerate(((rs[0], rs[1]), (rs[1], rs[0])), start=1):
                    v1 = check_alpha(ctx, ls[0], r1, theory, sig, residual)
                    if not v1:
                        continue
                    v2 = check_alpha(ctx, ls[1], r2, theory, sig, residual)
                    if v2:
                        return yes("~fC", j, (v1.derivation, v2.derivation), position=pos)
                return no(f"{f} arguments match in neither order")
            subs = []
            for l, r in zip(ls, rs):
                sub = check_alpha(ctx, l, r, theory, sig, residual)
                if not sub:
                    return sub
                subs.append(sub.derivation)
            return yes("~f", j, tuple(subs))
    return no(f"{type(s).__name__} vs {type(t).__name__}: no rule applies")
