"""Verdicts, derivation trees, and the proof-tree node type.

Every decision procedure returns a :class:`Verdict`; on success the verdict
carries a :class:`ProofTree` whose nodes name the rule applied at each step.
The same node type doubles as the input format of the proof checker, which
validates trees over the rule labels

    refl symm tran ax cong_abs cong_f fr perm fix_a fix_f fix_var fix_abs

The other engines reuse the tree shape with their own labels purely for
explanation; the checker rejects labels outside the list above.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .terms import Perm, Term, Var


@dataclass(frozen=True)
class ProofTree:
    """One derivation node: a rule label, its conclusion, and premises.

    ``perm``/``subst``/``axiom``/``var``/``position`` record the extra data
    some rules need (axiom instantiation, strengthening constraint, congruence
    position).  ``subst`` is a sorted tuple of ``(Var, Term)`` pairs.
    """

    rule: str
    conclusion: object
    premises: tuple["ProofTree", ...] = ()
    perm: Optional[Perm] = None
    subst: Optional[tuple[tuple[Var, Term], ...]] = None
    axiom: Optional[str] = None
    var: Optional[Var] = None
    position: Optional[int] = None

    def subst_dict(self) -> dict[Var, Term]:
        return dict(self.subst or ())

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)


def subst_record(sigma) -> tuple[tuple[Var, Term], ...]:
    """Normalise a substitution mapping into the tuple form trees store."""
    return tuple(sorted(sigma.items(), key=lambda kv: kv[0].name))


@dataclass(frozen=True)
class RuleMismatch:
    """A proof-checking failure: which node broke and why.

    ``path`` is the premise-index path from the root, e.g. ``"0.1"``; the
    root is ``""``.
    """

    path: str
    reason: str

    def __str__(self):
        where = self.path or "root"
        return f"at {where}: {self.reason}"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check: a boolean plus an explanation.

    ``derivation`` is present on success when the engine builds trees;
    ``reason`` says what failed; ``diagnostics`` carries proof-checker
    mismatches.
    """

    holds: bool
    derivation: Optional[ProofTree] = None
    reason: Optional[str] = None
    diagnostics: tuple[RuleMismatch, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def yes(rule: str, conclusion, premises=(), **extras) -> Verdict:
    return Verdict(True, ProofTree(rule, conclusion, tuple(premises), **extras))


def no(reason: str) -> Verdict:
    return Verdict(False, None, reason)
