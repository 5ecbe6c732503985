"""Seeded random generation of terms, contexts, judgements, and model elements.

Everything takes an explicit ``random.Random`` so suites are reproducible
from a seed.  The derivable-judgement samplers use rejection with a bias
toward permutations the context can justify; the valuation samplers bias
toward elements that make the context hold, since a judgement whose context
fails is vacuously valid and exercises nothing.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .deriv_fix import GROUP_GENERATED, SUBSET_DOM, VarRuleMode, check_eq_fix, check_fix
from .judgements import (AlphaGoal, EqJudgement, FixGoal, FixJudgement,
                         NuJudgement, StrongContext, context_dom)
from .semantics import (GroundMod, PFin, SigmaAlgebra, Singleton, Valuation,
                        Words)
from .terms import (ID, Abs, App, Atom, FreshSupply, Perm, Signature, Susp,
                    Term, Var, act, atoms_of, default_signature, swap, vars_of)


def atom_pool(n: int) -> list[Atom]:
    return [Atom(f"a{i}") for i in range(1, n + 1)]


def var_pool(n: int) -> list[Var]:
    return [Var(f"X{i}") for i in range(1, n + 1)]


def random_perm(rng: random.Random, atoms: Sequence[Atom],
                max_swaps: int = 3) -> Perm:
    swaps = []
    for _ in range(rng.randint(0, max_swaps)):
        a, b = rng.sample(atoms, 2)
        swaps.append((a, b))
    return Perm(swaps)


def random_term(rng: random.Random, sig: Signature, atoms: Sequence[Atom],
                variables: Sequence[Var], depth: int) -> Term:
    leaf_only = depth <= 0
    roll = rng.random()
    if leaf_only or roll < 0.35:
        if variables and rng.random() < 0.45:
            return Susp(random_perm(rng, atoms, 2), rng.choice(variables))
        return rng.choice(atoms)
    if roll < 0.6:
        return Abs(rng.choice(atoms),
                   random_term(rng, sig, atoms, variables, depth - 1))
    sym = rng.choice(sorted(sig.arities))
    return App(sym, tuple(random_term(rng, sig, atoms, variables, depth - 1)
                          for _ in range(sig.arity(sym))))


def random_ground_term(rng: random.Random, sig: Signature,
                       atoms: Sequence[Atom], depth: int) -> Term:
    return random_term(rng, sig, atoms, (), depth)


def random_fresh_context(rng: random.Random, atoms: Sequence[Atom],
                         variables: Sequence[Var], max_n: int = 4):
    n = rng.randint(0, max_n)
    return frozenset((rng.choice(atoms), rng.choice(variables)) for _ in range(n))


def random_fix_context(rng: random.Random, atoms: Sequence[Atom],
                       variables: Sequence[Var], max_n: int = 3,
                       max_swaps: int = 2):
    n = rng.randint(0, max_n)
    out = set()
    for _ in range(n):
        pi = random_perm(rng, atoms, max_swaps)
        if pi.is_identity:
            continue
        out.add((pi, rng.choice(variables)))
    return frozenset(out)


def random_strong_context(rng: random.Random, atoms: Sequence[Atom],
                          variables: Sequence[Var], max_n: int = 3,
                          supply: Optional[FreshSupply] = None) -> StrongContext:
    if supply is None:
        supply = FreshSupply(atoms)
    triples = []
    nu = []
    for _ in range(rng.randint(0, max_n)):
        c = supply.fresh()
        nu.append(c)
        triples.append((rng.choice(atoms), c, rng.choice(variables)))
    if rng.random() < 0.3:
        nu.append(supply.fresh())  # a quantified atom no constraint uses
    return StrongContext(tuple(nu), frozenset(triples))


def random_strong_judgement(rng: random.Random, sig: Signature,
                            atoms: Sequence[Atom], variables: Sequence[Var],
                            depth: int = 3, body: str = "fix") -> NuJudgement:
    ctx = random_strong_context(rng, atoms, variables)
    pool = list(atoms) + list(ctx.nu_atoms)
    if body == "fix":
        pi = random_perm(rng, pool)
        t = random_term(rng, sig, pool, variables, depth)
        return NuJudgement(ctx.nu_atoms, ctx, FixGoal(pi, t))
    s = random_term(rng, sig, pool, variables, depth)
    if rng.random() < 0.5:
        t = act(random_perm(rng, pool, 2), s)
    else:
        t = random_term(rng, sig, pool, variables, depth)
    return NuJudgement(ctx.nu_atoms, ctx, AlphaGoal(s, t))


# ---------------------------------------------------------------------------
# derivable-judgement samplers

def _biased_perm(rng: random.Random, ctx, t: Term,
                 atoms: Sequence[Atom]) -> Perm:
    """A permutation with a real chance of fixing ``t`` under ``ctx``."""
    roll = rng.random()
    ctx_perms = [pi for pi, _ in ctx]
    if roll < 0.45 and ctx_perms:
        picks = rng.sample(ctx_perms, k=min(len(ctx_perms), rng.randint(1, 2)))
        out = ID
        for pi in picks:
            out = out.compose(pi)
        return out
    if roll < 0.8:
        untouched = [a for a in atoms if a not in atoms_of(t)]
        if len(untouched) >= 2:
            return random_perm(rng, untouched, 2)
    return random_perm(rng, atoms, 2)


def derivable_fix_judgement(rng: random.Random, sig: Signature,
                            atoms: Sequence[Atom], variables: Sequence[Var],
                            mode: VarRuleMode, depth: int = 3,
                            tries: int = 400) -> FixJudgement:
    for _ in range(tries):
        ctx = random_fix_context(rng, atoms, variables)
        t = random_term(rng, sig, atoms, variables, depth)
        pi = _biased_perm(rng, ctx, t, atoms)
        if check_fix(ctx, pi, t, mode):
            return FixJudgement(ctx, pi, t)
    raise RuntimeError("no derivable fixed-point judgement found; widen the bias")


def derivable_eq_judgement(rng: random.Random, sig: Signature,
                           atoms: Sequence[Atom], variables: Sequence[Var],
                           mode: VarRuleMode, theory: str = "core",
                           depth: int = 3, tries: int = 400) -> EqJudgement:
    for _ in range(tries):
        ctx = random_fix_context(rng, atoms, variables)
        t = random_term(rng, sig, atoms, variables, depth)
        pi = _biased_perm(rng, ctx, t, atoms)
        s = act(pi, t)
        if check_eq_fix(ctx, s, t, mode, theory, sig):
            return EqJudgement(ctx, s, t)
    raise RuntimeError("no derivable equality judgement found; widen the bias")


# ---------------------------------------------------------------------------
# model elements and valuations

def random_element(rng: random.Random, model: SigmaAlgebra,
                   atoms: Sequence[Atom], depth: int = 3):
    if isinstance(model, Singleton):
        return model.default_elem()
    if isinstance(model, PFin):
        k = rng.randint(0, min(3, len(atoms)))
        return frozenset(rng.sample(atoms, k))
    if isinstance(model, Words):
        k = rng.randint(0, min(3, len(atoms)))
        return tuple(rng.sample(atoms, k))
    if isinstance(model, GroundMod):
        return model.canon(random_ground_term(rng, model.signature, atoms, depth))
    raise TypeError(f"no element sampler for {model!r}")


def _invariant_element(rng: random.Random, model: SigmaAlgebra,
                       perms: Sequence[Perm], atoms: Sequence[Atom]):
    """An element the given permutations all fix, found by orbit closure
    (pfin) or by the symmetric-pair trick (commutative ground model)."""
    if isinstance(model, PFin):
        base = set(rng.sample(atoms, rng.randint(0, min(2, len(atoms)))))
        for _ in range(6):
            grown = set(base)
            for pi in perms:
                grown |= {pi(a) for a in base}
            if grown == base:
                break
            base = grown
        return frozenset(base)
    if isinstance(model, GroundMod) and model.commutative_mode and perms:
        comm = sorted(model.signature.commutative)
        if comm:
            pi = rng.choice(list(perms))
            if pi.compose(pi).is_identity:
                u = random_ground_term(rng, model.signature, atoms, 1)
                return model.canon(App(rng.choice(comm), (u, act(pi, u))))
    return None


def random_valuation(rng: random.Random, model: SigmaAlgebra, j,
                     atoms: Sequence[Atom], depth: int = 2) -> Valuation:
    """A valuation for the judgement's variables, biased to satisfy its
    context: small supports away from the constrained atoms, plus genuinely
    invariant elements where the model offers them."""
    if isinstance(j, FixJudgement):
        ctx, variables = j.context, vars_of(j.term)
    else:
        ctx, variables = j.context, vars_of(j.lhs) | vars_of(j.rhs)
    for _, x in ctx:
        variables = variables | {x}
    mapping = {}
    for x in variables:
        roll = rng.random()
        if roll < 0.35:
            elem = _invariant_element(rng, model, [pi for pi, v in ctx if v == x],
                                      atoms)
            if elem is not None:
                mapping[x] = elem
                continue
        if roll < 0.8:
            away = [a for a in atoms if a not in context_dom(ctx, x)]
            pool = away if len(away) >= 2 else list(atoms)
            mapping[x] = random_element(rng, model, pool, depth)
        else:
            mapping[x] = random_element(rng, model, atoms, depth)
    return Valuation(model, mapping)
