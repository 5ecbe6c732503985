"""Nominal Sigma-algebras: concrete models, interpretation, validity.

A model packages a carrier with a permutation action and equivariant
interpretations of atoms, abstraction and each term-former, subject to the
abstraction condition ``a`` not in ``supp(abs(a, x))``.  Implemented models:

``singleton``       the one-point model; a model of every theory
``pfin``            finite sets of atoms; abstraction deletes, application
                    intersects; not strong (swapping both elements of a
                    two-atom set fixes it without fixing the atoms)
``words``           words of pairwise-distinct atoms with letter-wise action;
                    strong
``ground-alpha``    ground terms modulo alpha, via canonical representatives;
                    strong
``ground-alpha-c``  ground terms modulo alpha plus commutativity; not strong

``interpret`` maps terms into a model under a valuation; ``judgement_valid``
spells out validity: whenever every context constraint holds semantically,
the conclusion must too.  ``strong_support_check`` searches a finite universe
for a permutation that fixes an element without fixing its support pointwise,
and ``is_strong_axiom`` classifies equality axioms by the first-order /
well-ordered / compatible-order conditions.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .deriv_fix import Axiom
from .errors import (GroundnessError, UnboundVariable, UniverseBoundExceeded)
from .judgements import EqJudgement, FixContext, FixJudgement
from .permgroups import all_permutations, all_swaps, fixes_pointwise
from .terms import (ID, Abs, App, Atom, Perm, Signature, Susp, Term, Var, act,
                    atoms_of, default_signature, free_names, is_ground, swap,
                    vars_of)

STAR = "⋆"

DEFAULT_UNIVERSE_BOUND = 8
_FULL_ENUM_LIMIT = 5  # below this, check all permutations, not just swaps


# ---------------------------------------------------------------------------
# canonical ground representatives

def term_key(t: Term):
    """A total order on terms: atoms first, then by constructor, symbol and
    children, lexicographically."""
    match t:
        case Atom():
            return (0, t.key())
        case Susp(pi, x):
            return (1, x.name,
                    tuple(sorted((a.key(), pi(a).key()) for a in pi.domain)))
        case Abs(a, body):
            return (2, a.key(), term_key(body))
        case App(f, args):
            return (3, f, len(args), tuple(term_key(s) for s in args))
    raise TypeError(f"not a term: {t!r}")


def _assoc_spine(sym: str, t: Term) -> list[Term]:
    if isinstance(t, App) and t.sym == sym:
        return _assoc_spine(sym, t.args[0]) + _assoc_spine(sym, t.args[1])
    return [t]


def canon(t: Term, commutative: frozenset[str] = frozenset(),
          assoc: Optional[str] = None) -> Term:
    """The canonical representative of a ground term's equivalence class.

    Binders are renamed bottom-up to the reserved sequence ``b1, b2, ...``,
    always the lowest index whose name no other atom of the body carries;
    after the renaming swap the body is re-canonicalised, which restores any
    argument ordering the swap disturbed.  With ``commutative`` symbols the
    two arguments are sorted under :func:`term_key`; with ``assoc`` the
    spine of that symbol is rebuilt right-nested.
    """
    match t:
        case Atom():
            return t
        case Susp(_, x):
            raise GroundnessError(f"cannot canonicalise non-ground term ({x} occurs)")
        case App(f, args):
            args = tuple(canon(s, commutative, assoc) for s in args)
            if assoc is not None and f == assoc and len(args) == 2:
                spine = _assoc_spine(f, App(f, args))
                out = spine[-1]
                for item in reversed(spine[:-1]):
                    out = App(f, (item, out))
                return out
            if f in commutative:
                args = tuple(sorted(args, key=term_key))
            return App(f, args)
        case Abs(a, body):
            body = canon(body, commutative, assoc)
            taken = {x.name for x in atoms_of(body) if x != a}
            k = 1
            while f"b{k}" in taken:
                k += 1
            c = Atom(f"b{k}", fresh=True)
            if c == a:
                return Abs(c, body)
            return Abs(c, canon(act(swap(a, c), body), commutative, assoc))
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# models

class SigmaAlgebra:
    """Interface every model implements.  Elements are plain hashable values
    compared with ``==``."""

    name: str
    is_strong: bool

    def __init__(self, sig: Optional[Signature] = None):
        self.signature = sig or default_signature()

    def act(self, pi: Perm, x):
        raise NotImplementedError

    def atom_value(self, a: Atom):
        raise NotImplementedError

    def abs_value(self, a: Atom, x):
        raise NotImplementedError

    def app_value(self, sym: str, args: tuple):
        raise NotImplementedError

    def supp(self, x) -> frozenset[Atom]:
        raise NotImplementedError

    def default_elem(self):
        """Value given to unmapped variables: the interpretation of atom a1."""
        return self.atom_value(Atom("a1"))

    def parse_element(self, text: str):
        raise NotImplementedError

    def show_element(self, x) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"<model {self.name}>"


class Singleton(SigmaAlgebra):
    """The one-point algebra: every map is constant.  Strong, and a model of
    every theory."""

    name = "singleton"
    is_strong = True

    def act(self, pi, x):
        return STAR

    def atom_value(self, a):
        return STAR

    def abs_value(self, a, x):
        return STAR

    def app_value(self, sym, args):
        return STAR

    def supp(self, x):
        return frozenset()

    def parse_element(self, text):
        return STAR

    def show_element(self, x):
        return STAR


class PFin(SigmaAlgebra):
    """Finite sets of atoms, acted on pointwise.

    Abstraction removes the atom, application intersects (the empty
    application is the empty set), and ``supp(B) = B``.  Not strong.
    """

    name = "pfin"
    is_strong = False

    def act(self, pi, x):
        return frozenset(pi(a) for a in x)

    def atom_value(self, a):
        return frozenset((a,))

    def abs_value(self, a, x):
        return x - {a}

    def app_value(self, sym, args):
        if not args:
            return frozenset()
        out = args[0]
        for b in args[1:]:
            out = out & b
        return out

    def supp(self, x):
        return frozenset(x)

    def parse_element(self, text):
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise ValueError(f"pfin elements look like {{a,b}}, got {text!r}")
        inner = text[1:-1].strip()
        if not inner:
            return frozenset()
        return frozenset(Atom(part.strip()) for part in inner.split(","))

    def show_element(self, x):
        return "{" + ",".join(a.name for a in sorted(x, key=Atom.key)) + "}"


class Words(SigmaAlgebra):
    """Finite words of pairwise-distinct atoms with letter-wise action.

    Abstraction deletes the letter; application concatenates, dropping later
    duplicates.  The term-former structure is this package's choice; its
    algebra laws are discharged by the model-law test suite.  Strong: the
    action fixes a word only by fixing every letter.
    """

    name = "words"
    is_strong = True

    def act(self, pi, x):
        return tuple(pi(a) for a in x)

    def atom_value(self, a):
        return (a,)

    def abs_value(self, a, x):
        return tuple(b for b in x if b != a)

    def app_value(self, sym, args):
        out: list[Atom] = []
        for w in args:
            for a in w:
                if a not in out:
                    out.append(a)
        return tuple(out)

    def supp(self, x):
        return frozenset(x)

    def parse_element(self, text):
        text = text.strip()
        if text in ("", "ε"):
            return ()
        names = text.split() if " " in text else list(text)
        word = tuple(Atom(n) for n in names)
        if len(set(word)) != len(word):
            raise ValueError(f"letters must be pairwise distinct in {text!r}")
        return word

    def show_element(self, x):
        if not x:
            return "ε"
        if all(len(a.name) == 1 for a in x):
            return "".join(a.name for a in x)
        return " ".join(a.name for a in x)


class GroundMod(SigmaAlgebra):
    """Ground terms modulo alpha (and optionally commutativity), represented
    canonically.  ``supp`` is the free names of the representative; the
    commutative quotient keeps free names, so the same formula serves both.
    Strong exactly when no commutativity is quotiented in.
    """

    def __init__(self, sig: Optional[Signature] = None, commutative: bool = False):
        super().__init__(sig)
        self.commutative_mode = commutative
        self.name = "ground-alpha-c" if commutative else "ground-alpha"
        self.is_strong = not commutative
        self._comm = self.signature.commutative if commutative else frozenset()

    def canon(self, t: Term) -> Term:
        return canon(t, self._comm)

    def act(self, pi, x):
        return self.canon(act(pi, x))

    def atom_value(self, a):
        return a

    def abs_value(self, a, x):
        return self.canon(Abs(a, x))

    def app_value(self, sym, args):
        return self.canon(App(sym, tuple(args)))

    def supp(self, x):
        return free_names(x)

    def parse_element(self, text):
        from .syntax import parse_term
        t = parse_term(text, self.signature)
        if not is_ground(t):
            raise GroundnessError(f"model elements must be ground: {text!r}")
        return self.canon(t)

    def show_element(self, x):
        from .syntax import print_term
        return print_term(x)


class GroundModAssoc(GroundMod):
    """Ground terms modulo alpha plus associativity of one symbol.

    Used by the property suites to confirm that quotienting by a strong
    axiom keeps the carrier strong; not reachable from the model selector.
    """

    def __init__(self, sig: Optional[Signature] = None, assoc_sym: str = "f"):
        super().__init__(sig, commutative=False)
        if self.signature.arity(assoc_sym) != 2:
            raise ValueError(f"associative symbol {assoc_sym} must be binary")
        self.assoc_sym = assoc_sym
        self.name = f"ground-alpha-assoc[{assoc_sym}]"
        self.is_strong = True

    def canon(self, t: Term) -> Term:
        return canon(t, frozenset(), self.assoc_sym)


MODEL_SELECTORS = ("singleton", "pfin", "words", "ground-alpha", "ground-alpha-c")


def get_model(selector: str, sig: Optional[Signature] = None) -> SigmaAlgebra:
    match selector:
        case "singleton":
            return Singleton(sig)
        case "pfin":
            return PFin(sig)
        case "words":
            return Words(sig)
        case "ground-alpha":
            return GroundMod(sig, commutative=False)
        case "ground-alpha-c":
            return GroundMod(sig, commutative=True)
    raise ValueError(f"unknown model {selector!r}; choose from {MODEL_SELECTORS}")


# ---------------------------------------------------------------------------
# valuations, interpretation, validity

class Valuation:
    """A finite map from variables to carrier elements.

    Unmapped variables default to the model's designated element unless the
    valuation is strict, in which case they raise :class:`UnboundVariable`.
    """

    def __init__(self, model: SigmaAlgebra, mapping=None, strict: bool = False):
        self.model = model
        self.mapping = dict(mapping or {})
        self.strict = strict

    def __call__(self, x: Var):
        if x in self.mapping:
            return self.mapping[x]
        if self.strict:
            raise UnboundVariable(f"no value for {x} and defaults are disabled")
        return self.model.default_elem()

    @classmethod
    def parse(cls, model: SigmaAlgebra, text: str, strict: bool = False) -> "Valuation":
        from .syntax import split_bindings
        mapping = {}
        for name, rhs in split_bindings(text):
            if not name or not name[0].isupper():
                raise ValueError(f"valuations bind variables, got {name!r}")
            mapping[Var(name)] = model.parse_element(rhs)
        return cls(model, mapping, strict)


def interpret(model: SigmaAlgebra, valuation: Valuation, t: Term):
    """The inductive interpretation of a term in a model."""
    match t:
        case Atom():
            return model.atom_value(t)
        case Susp(pi, x):
            return model.act(pi, valuation(x))
        case Abs(a, body):
            return model.abs_value(a, interpret(model, valuation, body))
        case App(f, args):
            return model.app_value(f, tuple(interpret(model, valuation, s)
                                            for s in args))
    raise TypeError(f"not a term: {t!r}")


def fix_sem(model: SigmaAlgebra, pi: Perm, x) -> bool:
    """Semantic fixed point: does the action of ``pi`` leave ``x`` unchanged?"""
    return model.act(pi, x) == x


def supp_of(model: SigmaAlgebra, x) -> frozenset[Atom]:
    return model.supp(x)


def context_valid(model: SigmaAlgebra, valuation: Valuation, ctx: FixContext) -> bool:
    return all(fix_sem(model, pi, valuation(x)) for pi, x in ctx)


def judgement_valid(model: SigmaAlgebra, valuation: Valuation, j) -> bool:
    """Validity of a judgement: a valid context forces the conclusion."""
    match j:
        case FixJudgement(ctx, pi, t):
            if not context_valid(model, valuation, ctx):
                return True
            return fix_sem(model, pi, interpret(model, valuation, t))
        case EqJudgement(ctx, lhs, rhs):
            if not context_valid(model, valuation, ctx):
                return True
            return interpret(model, valuation, lhs) == interpret(model, valuation, rhs)
    raise TypeError(f"not a fixed-point system judgement: {j!r}")


# ---------------------------------------------------------------------------
# strong support

def strong_support_check(model: SigmaAlgebra, x, universe: Iterable[Atom],
                         bound: int = DEFAULT_UNIVERSE_BOUND):
    """Search for a witness that ``supp(x)`` is not a *strong* support.

    Enumerates every swap inside ``universe`` (and every permutation when
    the universe is small); returns ``(False, pi)`` for the first ``pi``
    that fixes ``x`` semantically while moving some atom of its support,
    else ``(True, None)``.
    """
    universe = frozenset(universe)
    if len(universe) > bound:
        raise UniverseBoundExceeded(
            f"universe has {len(universe)} atoms, bound is {bound}")
    support = model.supp(x)
    if not support <= universe:
        raise ValueError("the universe must contain the element's support")
    perms = (all_permutations(universe) if len(universe) <= _FULL_ENUM_LIMIT
             else all_swaps(universe))
    for pi in perms:
        if pi.is_identity:
            continue
        if fix_sem(model, pi, x) and not fixes_pointwise(pi, support):
            return (False, pi)
    return (True, None)


# ---------------------------------------------------------------------------
# strong axioms

def _first_order(t: Term) -> Optional[str]:
    match t:
        case Atom():
            return f"mentions the atom {t}"
        case Susp(pi, x):
            if not pi.is_identity:
                return f"suspends {pi} on {x}"
            return None
        case Abs(a, _):
            return f"abstracts [{a}]"
        case App(_, args):
            for s in args:
                reason = _first_order(s)
                if reason:
                    return reason
            return None
    raise TypeError(f"not a term: {t!r}")


def _occurrences(t: Term, pos: tuple = ()) -> list[tuple[tuple, Var]]:
    match t:
        case Susp(_, x):
            return [(pos, x)]
        case App(_, args):
            out = []
            for i, s in enumerate(args, start=1):
                out.extend(_occurrences(s, pos + (i,)))
            return out
        case Abs(_, body):
            return _occurrences(body, pos + (1,))
        case _:
            return []


def _order_pairs(t: Term) -> set[tuple[Var, Var]]:
    occ = _occurrences(t)
    pairs = set()
    for p, x in occ:
        for q, y in occ:
            if x != y and p < q:
                pairs.add((x, y))
    return pairs


def well_ordered(t: Term) -> bool:
    """No two distinct variables occur interleaved: the positional order on
    variables is a strict partial order."""
    pairs = _order_pairs(t)
    return not any((y, x) in pairs for x, y in pairs)


def is_strong_axiom(ax: Axiom) -> tuple[bool, str]:
    """Classify an axiom: strong axioms have an empty context, first-order
    well-ordered sides, and compatible variable orders."""
    if ax.context:
        return (False, "context is not empty")
    for side, t in (("left", ax.lhs), ("right", ax.rhs)):
        reason = _first_order(t)
        if reason:
            return (False, f"{side} side {reason}")
    for side, t in (("left", ax.lhs), ("right", ax.rhs)):
        if not well_ordered(t):
            return (False, f"{side} side is not well-ordered")
    lhs_pairs = _order_pairs(ax.lhs)
    rhs_pairs = _order_pairs(ax.rhs)
    for x, y in lhs_pairs:
        if (y, x) in rhs_pairs:
            return (False, f"{x} and {y} occur in opposite orders on the two sides")
    return (True, "first-order, well-ordered, compatible variable order")


def standard_axioms(sig: Optional[Signature] = None) -> tuple[Axiom, ...]:
    """The named axioms the classifier demo reports on."""
    from .syntax import parse_term
    sig = sig or default_signature()
    empty: FixContext = frozenset()

    def ax(name, lhs, rhs):
        return Axiom(name, empty, parse_term(lhs, sig), parse_term(rhs, sig))

    return (
        ax("A", "f(f(X, Y), Z)", "f(X, f(Y, Z))"),
        ax("Hom", "h(+(X, Y))", "+(h(X), h(Y))"),
        ax("I", "g(X, X)", "X"),
        ax("N", "*(X, 0)", "0"),
        ax("Lproj", "pl(X, Y)", "X"),
        ax("Rproj", "pr(X, Y)", "Y"),
        ax("C", "+(X, Y)", "+(Y, X)"),
        ax("D", "*(X, +(Y, Z))", "+(*(X, Y), *(X, Z))"),
        ax("ATOM", "a", "b"),
        ax("PermutedBinder", "f([a]X, [b]Y)", "g([b]X, [a]Y)"),
    )
