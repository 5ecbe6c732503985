"""Judgement forms for the three proof systems.

Contexts are plain frozensets of primitive constraints; the judgement
dataclasses bundle a context with the constraint being derived.  Strong
(nu-quantified) contexts restrict constraints to the shape ``new c.(a c) fix X``
and are validated on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import ShapeError
from .terms import Atom, Perm, Term, Var, swap

FreshContext = frozenset  # of (Atom, Var) pairs
FixContext = frozenset    # of (Perm, Var) pairs


def perms_for(ctx: FixContext, x: Var) -> tuple[Perm, ...]:
    """``perm(ctx|_X)``: the permutations constrained to fix ``x``."""
    return tuple(pi for pi, v in ctx if v == x)


def context_dom(ctx: FixContext, x: Var) -> frozenset[Atom]:
    """``dom(perm(ctx|_X))``: every atom moved by some constraint on ``x``."""
    out: frozenset[Atom] = frozenset()
    for pi, v in ctx:
        if v == x:
            out |= pi.domain
    return out


def fix_extend(ctx: FixContext, pi: Perm, xs) -> FixContext:
    """``ctx`` extended with ``pi fix X`` for every variable in ``xs``."""
    return ctx | {(pi, x) for x in xs}


@dataclass(frozen=True)
class FreshJudgement:
    context: FreshContext
    atom: Atom
    term: Term


@dataclass(frozen=True)
class AlphaJudgement:
    context: FreshContext
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class FixJudgement:
    context: FixContext
    perm: Perm
    term: Term


@dataclass(frozen=True)
class EqJudgement:
    context: FixContext
    lhs: Term
    rhs: Term


# ---------------------------------------------------------------------------
# strong (nu-quantified) judgements

@dataclass(frozen=True)
class StrongContext:
    """Constraints of the shape ``new c.(a c) fix X`` under a nu-binder list.

    ``constraints`` holds triples ``(a, c, X)``; every ``c`` must be one of
    the (pairwise distinct, fresh-namespace) ``nu_atoms`` and no ``a`` may be.
    """

    nu_atoms: tuple[Atom, ...]
    constraints: frozenset  # of (Atom, Atom, Var) triples

    def __post_init__(self):
        nu = set(self.nu_atoms)
        if len(nu) != len(self.nu_atoms):
            raise ShapeError("nu-quantified atoms must be pairwise distinct")
        for c in self.nu_atoms:
            if not c.fresh:
                raise ShapeError(f"nu-quantified atom {c} is not from the fresh namespace")
        for a, c, x in self.constraints:
            if c not in nu:
                raise ShapeError(f"constraint ({a} {c}) fix {x}: {c} is not nu-quantified")
            if a in nu:
                raise ShapeError(f"constraint ({a} {c}) fix {x}: {a} must not be nu-quantified")

    @classmethod
    def from_swaps(cls, nu_atoms, pairs) -> "StrongContext":
        """Build from raw ``(perm, var)`` pairs, orienting each swap.

        Each permutation must be a single transposition moving exactly one
        nu-quantified atom; anything else is a shape error.
        """
        nu = set(nu_atoms)
        triples = []
        for pi, x in pairs:
            dom = sorted(pi.domain, key=Atom.key)
            if len(dom) != 2 or pi(dom[0]) != dom[1]:
                raise ShapeError(f"constraint {pi} fix {x} is not a single swap")
            in_nu = [d for d in dom if d in nu]
            if len(in_nu) != 1:
                raise ShapeError(
                    f"constraint {pi} fix {x} must swap one nu-quantified atom "
                    f"with one that is not")
            c = in_nu[0]
            a = dom[0] if dom[1] == c else dom[1]
            triples.append((a, c, x))
        return cls(tuple(nu_atoms), frozenset(triples))

    def dom_for(self, x: Var) -> frozenset[Atom]:
        """The non-quantified sides of the constraints on ``x``."""
        return frozenset(a for a, _, v in self.constraints if v == x)

    def used_nu(self) -> frozenset[Atom]:
        return frozenset(c for _, c, _ in self.constraints)


@dataclass(frozen=True)
class FixGoal:
    perm: Perm
    term: Term


@dataclass(frozen=True)
class AlphaGoal:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class NuJudgement:
    """A strong judgement ``new c-bar. (context |- body)``."""

    nu_atoms: tuple[Atom, ...]
    context: StrongContext
    body: Union[FixGoal, AlphaGoal]

    def __post_init__(self):
        nu = set(self.nu_atoms)
        if len(nu) != len(self.nu_atoms):
            raise ShapeError("nu-quantified atoms must be pairwise distinct")
        if not set(self.context.nu_atoms) <= nu:
            raise ShapeError("the context's nu-atoms must be among the judgement's")

    @classmethod
    def of(cls, context: StrongContext, body, extra_nu=()) -> "NuJudgement":
        return cls(tuple(context.nu_atoms) + tuple(extra_nu), context, body)


Judgement = Union[FreshJudgement, AlphaJudgement, FixJudgement, EqJudgement, NuJudgement]
