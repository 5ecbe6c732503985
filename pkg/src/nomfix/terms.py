"""Nominal term syntax and the permutation machinery underneath it.

Terms are built from object-level names (atoms), meta-level variables that
carry a suspended permutation, atom abstraction, and term-former application:

    t ::= a | pi.X | [a]t | f(t1, ..., tn)

Atoms can be abstracted but never substituted; variables can be substituted
but never abstracted.  Permutations are finite-domain bijections on atoms,
kept both as the swap list they were written as (for display) and as a
normalised finite map (for equality and composition).

Everything in this module is immutable and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import GroundnessError


# ---------------------------------------------------------------------------
# atoms and variables

@dataclass(frozen=True)
class Atom:
    """An object-level name.

    ``fresh`` marks atoms minted by a :class:`FreshSupply` (or bound by a
    ``new`` prefix); parsed input can only produce user atoms, so the two
    namespaces never collide.
    """

    name: str
    fresh: bool = False

    def key(self):
        """Sort key: user atoms before fresh ones, trailing digits numeric."""
        stem = self.name.rstrip("0123456789")
        tail = self.name[len(stem):]
        return (self.fresh, stem, int(tail) if tail else -1)

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"Atom({self.name!r}{', fresh' if self.fresh else ''})"


@dataclass(frozen=True)
class Var:
    """A meta-level variable (unknown)."""

    name: str

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"Var({self.name!r})"


# ---------------------------------------------------------------------------
# permutations

def _swap_after(mapping: dict[Atom, Atom], a: Atom, b: Atom) -> dict[Atom, Atom]:
    # (a b) composed after `mapping`
    out: dict[Atom, Atom] = {}
    for x in set(mapping) | {a, b}:
        y = mapping.get(x, x)
        if y == a:
            y = b
        elif y == b:
            y = a
        if y != x:
            out[x] = y
    return out


class Perm:
    """A finite-domain atom permutation.

    The swap list prints left to right as written; it composes with the
    rightmost swap applied first.  Equality and hashing look only at the
    induced map, so ``(a b)(a b)`` equals ``id`` and ``(a a)`` normalises
    away.
    """

    __slots__ = ("swaps", "_map", "_hash")

    def __init__(self, swaps: Iterable[tuple[Atom, Atom]] = ()):
        swaps = tuple((a, b) for a, b in swaps)
        mapping: dict[Atom, Atom] = {}
        for a, b in reversed(swaps):
            if a != b:
                mapping = _swap_after(mapping, a, b)
        object.__setattr__(self, "swaps", swaps)
        object.__setattr__(self, "_map", mapping)
        object.__setattr__(self, "_hash", hash(frozenset(mapping.items())))

    @classmethod
    def identity(cls) -> "Perm":
        return cls()

    @classmethod
    def from_mapping(cls, mapping: Mapping["Atom", "Atom"]) -> "Perm":
        """Build a permutation from an explicit finite map (must be a bijection)."""
        seen: set[Atom] = set()
        swaps: list[tuple[Atom, Atom]] = []
        for start in sorted(mapping, key=Atom.key):
            if start in seen or mapping[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            x = mapping[start]
            while x != start:
                if x in seen or x not in mapping:
                    raise ValueError("mapping is not a finite-domain bijection")
                cycle.append(x)
                seen.add(x)
                x = mapping[x]
            swaps.extend(zip(cycle, cycle[1:]))
        return cls(swaps)

    def __call__(self, a: Atom) -> Atom:
        return self._map.get(a, a)

    @property
    def domain(self) -> frozenset[Atom]:
        """``dom(pi)``: the (finite) set of atoms the permutation moves."""
        return frozenset(self._map)

    @property
    def is_identity(self) -> bool:
        return not self._map

    def compose(self, other: "Perm") -> "Perm":
        """``self o other``: apply ``other`` first, then ``self``."""
        return Perm(self.swaps + other.swaps)

    def inverse(self) -> "Perm":
        return Perm(tuple(reversed(self.swaps)))

    def conjugate(self, rho: "Perm") -> "Perm":
        """``self`` transported along ``rho``: ``rho o self o rho^-1``."""
        return rho.compose(self).compose(rho.inverse())

    def cycles(self) -> list[tuple[Atom, ...]]:
        """Cycle decomposition of the induced map, deterministically ordered."""
        seen: set[Atom] = set()
        out = []
        for start in sorted(self._map, key=Atom.key):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self(x)
            out.append(tuple(cycle))
        return out

    def normalized(self) -> "Perm":
        """An equal permutation whose swap list comes from the cycle form."""
        swaps: list[tuple[Atom, Atom]] = []
        for cycle in self.cycles():
            swaps.extend(zip(cycle, cycle[1:]))
        return Perm(swaps)

    def __eq__(self, other):
        return isinstance(other, Perm) and self._map == other._map

    def __hash__(self):
        return self._hash

    def __str__(self):
        if not self.swaps:
            return "id"
        return "".join(f"({a} {b})" for a, b in self.swaps)

    def __repr__(self):
        return f"Perm<{self}>"


def swap(a: Atom, b: Atom) -> Perm:
    return Perm(((a, b),))


ID = Perm()


def perm_apply(pi: Perm, a: Atom) -> Atom:
    return pi(a)


def perm_compose(pi: Perm, rho: Perm) -> Perm:
    return pi.compose(rho)


def perm_inverse(pi: Perm) -> Perm:
    return pi.inverse()


def perm_conjugate(pi: Perm, rho: Perm) -> Perm:
    return pi.conjugate(rho)


# ---------------------------------------------------------------------------
# terms

@dataclass(frozen=True)
class Susp:
    """A variable with a pending permutation, applied after instantiation."""

    perm: Perm
    var: Var


@dataclass(frozen=True)
class Abs:
    """Abstraction of an atom over a term."""

    atom: Atom
    body: "Term"


@dataclass(frozen=True)
class App:
    """Application of a term-former to its arguments."""

    sym: str
    args: tuple["Term", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


Term = Union[Atom, Susp, Abs, App]


def var(name: str) -> Susp:
    """A bare variable, represented uniformly as an identity suspension."""
    return Susp(ID, Var(name))


def app(sym: str, *args: Term) -> App:
    return App(sym, tuple(args))


class Signature:
    """Term-former arities plus the subset of binary commutative symbols."""

    def __init__(self, arities: Mapping[str, int], commutative: Iterable[str] = ()):
        self.arities = dict(arities)
        self.commutative = frozenset(commutative)
        for f, n in self.arities.items():
            if n < 0:
                raise ValueError(f"negative arity for {f}")
        for f in self.commutative:
            if self.arities.get(f) != 2:
                raise ValueError(f"commutative symbol {f} must be binary")

    def arity(self, sym: str) -> int:
        return self.arities[sym]

    def is_commutative(self, sym: str) -> bool:
        return sym in self.commutative

    def __contains__(self, sym: str) -> bool:
        return sym in self.arities

    def __repr__(self):
        return f"Signature({self.arities}, commutative={sorted(self.commutative)})"


def default_signature() -> Signature:
    """The built-in signature used when no signature file is given."""
    return Signature(
        {
            "lam": 1, "app": 2,
            "+": 2, "f^C": 2,
            "f": 2, "g": 2, "h": 1,
            "*": 2, "0": 0,
            "pl": 2, "pr": 2,
        },
        commutative=("+", "f^C"),
    )


def validate_term(t: Term, sig: Signature) -> None:
    """Check every application in ``t`` against the signature's arities."""
    match t:
        case App(f, args):
            if f not in sig:
                raise ValueError(f"unknown symbol {f}")
            if len(args) != sig.arity(f):
                raise ValueError(f"{f} expects {sig.arity(f)} arguments, got {len(args)}")
            for s in args:
                validate_term(s, sig)
        case Abs(_, body):
            validate_term(body, sig)
        case _:
            pass


# ---------------------------------------------------------------------------
# permutation action and substitution

def act(pi: Perm, t: Term) -> Term:
    """Permutation action on terms; suspends on variables."""
    if pi.is_identity:
        return t
    match t:
        case Atom():
            return pi(t)
        case Susp(rho, x):
            return Susp(pi.compose(rho), x)
        case Abs(a, body):
            return Abs(pi(a), act(pi, body))
        case App(f, args):
            return App(f, tuple(act(pi, s) for s in args))
    raise TypeError(f"not a term: {t!r}")


Subst = Mapping[Var, Term]


def subst_apply(t: Term, sigma: Subst) -> Term:
    """Homomorphic, possibly-capturing substitution of variables.

    Binders are left untouched: nominal substitution is capturing by design,
    the suspended permutation does any renaming when the variable lands.
    """
    match t:
        case Atom():
            return t
        case Susp(pi, x):
            if x in sigma:
                return act(pi, sigma[x])
            return t
        case Abs(a, body):
            return Abs(a, subst_apply(body, sigma))
        case App(f, args):
            return App(f, tuple(subst_apply(s, sigma) for s in args))
    raise TypeError(f"not a term: {t!r}")


def subst_compose(sigma: Subst, delta: Subst) -> dict[Var, Term]:
    """The substitution mapping X to (X sigma) delta."""
    out = {x: subst_apply(t, delta) for x, t in sigma.items()}
    for x, t in delta.items():
        out.setdefault(x, t)
    return out


# ---------------------------------------------------------------------------
# occurrence relations

def atoms_of(t: Term) -> frozenset[Atom]:
    """Atoms occurring in ``t``: binders count, and so does ``dom`` of any
    suspended permutation."""
    match t:
        case Atom():
            return frozenset((t,))
        case Susp(pi, _):
            return pi.domain
        case Abs(a, body):
            return atoms_of(body) | {a}
        case App(_, args):
            return frozenset().union(*(atoms_of(s) for s in args))
    raise TypeError(f"not a term: {t!r}")


def vars_of(t: Term) -> frozenset[Var]:
    match t:
        case Atom():
            return frozenset()
        case Susp(_, x):
            return frozenset((x,))
        case Abs(_, body):
            return vars_of(body)
        case App(_, args):
            return frozenset().union(frozenset(), *(vars_of(s) for s in args))
    raise TypeError(f"not a term: {t!r}")


def is_ground(t: Term) -> bool:
    return not vars_of(t)


def free_names(g: Term) -> frozenset[Atom]:
    """Free names of a ground term: abstraction removes its binder."""
    match g:
        case Atom():
            return frozenset((g,))
        case Susp(_, x):
            raise GroundnessError(f"free_names needs a ground term, found variable {x}")
        case Abs(a, body):
            return free_names(body) - {a}
        case App(_, args):
            return frozenset().union(frozenset(), *(free_names(s) for s in args))
    raise TypeError(f"not a term: {g!r}")


# ---------------------------------------------------------------------------
# fresh atoms

class FreshSupply:
    """Call-scoped source of fresh-namespace atoms.

    Generated names run ``c1, c2, ...`` (or from another prefix/offset),
    skipping anything in ``avoid`` so a fresh atom never shares its printed
    name with an atom of the judgement being checked.  Supplies are created
    per check; there is no global mutable state.
    """

    def __init__(self, avoid: Iterable[Atom | str] = (), prefix: str = "c", start: int = 1):
        self._avoid = {a.name if isinstance(a, Atom) else a for a in avoid}
        self._prefix = prefix
        self._next = start

    def fresh(self) -> Atom:
        while True:
            name = f"{self._prefix}{self._next}"
            self._next += 1
            if name not in self._avoid:
                self._avoid.add(name)
                return Atom(name, fresh=True)

    def fresh_pair(self) -> tuple[Atom, Atom]:
        return self.fresh(), self.fresh()
