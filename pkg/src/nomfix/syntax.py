"""The canonical textual grammar: tokenizer, parsers, printers.

Grammar (terms):

    atom  = lowercase ident          var = Uppercase ident
    swap  = "(" atom atom ")"        perm = swap+ | "id"
    susp  = perm "." term | var      abs  = "[" atom "]" term
    app   = symbol "(" term ("," term)* ")" | nullary-symbol
    term  = atom | susp | abs | app

As input convenience a permutation may be applied to any term, not just a
variable; the action is computed at parse time, so only suspensions on
variables survive in the parsed form.  Judgements read

    <constraints> |- <body>         constraints comma-separated, may be empty
    new c1 c2. <constraints> |- <body>      (strong judgements)

with bodies ``a # t``, ``pi fix t``, ``s = t`` or ``s ~ t`` depending on the
proof system.  ``|-``/``⊢``, ``.``/``·``, ``~``/``≈`` and ``fix``/``⋏`` are
interchangeable spellings.  Printing is bit-exact: identity suspensions print
as the bare variable and swap lists print left to right as written.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .judgements import (AlphaGoal, AlphaJudgement, EqJudgement, FixGoal,
                         FixJudgement, FreshJudgement, NuJudgement,
                         StrongContext)
from .terms import (ID, Abs, App, Atom, Perm, Signature, Susp, Term, Var, act,
                    default_signature)

_NAME_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_'^+*")
_RESERVED = {"fix", "new", "id"}


@dataclass(frozen=True)
class _Tok:
    kind: str   # one of ( ) [ ] , . |- # = ~ name end
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()[],#=":
            toks.append(_Tok(ch, ch, i))
            i += 1
        elif ch in ".·":  # . or ·
            toks.append(_Tok(".", ch, i))
            i += 1
        elif ch in "~≈":  # ~ or ≈
            toks.append(_Tok("~", ch, i))
            i += 1
        elif ch == "⊢":  # ⊢
            toks.append(_Tok("|-", ch, i))
            i += 1
        elif ch == "|":
            if text[i:i + 2] != "|-":
                raise ParseError("expected |-", i)
            toks.append(_Tok("|-", "|-", i))
            i += 2
        elif ch == "⋏":  # ⋏
            toks.append(_Tok("name", "fix", i))
            i += 1
        elif ch in _NAME_CHARS:
            j = i
            while j < n and text[j] in _NAME_CHARS:
                j += 1
            toks.append(_Tok("name", text[i:j], i))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(_Tok("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, sig: Signature, scope: dict[str, Atom] | None = None):
        self.toks = _tokenize(text)
        self.i = 0
        self.sig = sig
        self.scope = scope if scope is not None else {}

    # -- cursor helpers

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Tok:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.value!r}", tok.pos)
        return tok

    def at_name(self, value: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind == "name" and (value is None or tok.value == value)

    def done(self) -> None:
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.value!r}", tok.pos)

    # -- atoms, variables, permutations

    def atom(self) -> Atom:
        tok = self.expect("name")
        name = tok.value
        if name in self.scope:
            return self.scope[name]
        if name in _RESERVED:
            raise ParseError(f"{name!r} is reserved", tok.pos)
        if not name[0].islower():
            raise ParseError(f"atom names start lowercase, found {name!r}", tok.pos)
        return Atom(name)

    def variable(self) -> Var:
        tok = self.expect("name")
        if not tok.value[0].isupper():
            raise ParseError(f"variable names start uppercase, found {tok.value!r}", tok.pos)
        return Var(tok.value)

    def perm(self) -> Perm:
        if self.at_name("id"):
            self.next()
            return ID
        swaps = []
        while self.peek().kind == "(":
            self.next()
            a = self.atom()
            b = self.atom()
            self.expect(")")
            swaps.append((a, b))
        if not swaps:
            tok = self.peek()
            raise ParseError(f"expected a permutation, found {tok.value!r}", tok.pos)
        return Perm(swaps)

    def at_perm(self) -> bool:
        return self.peek().kind == "(" or self.at_name("id")

    # -- terms

    def term(self) -> Term:
        tok = self.peek()
        if tok.kind == "[":
            self.next()
            a = self.atom()
            self.expect("]")
            return Abs(a, self.term())
        if self.at_perm():
            pi = self.perm()
            self.expect(".")
            t = self.term()
            if isinstance(t, Susp):
                return Susp(pi.compose(t.perm), t.var)
            return act(pi, t)
        if tok.kind != "name":
            raise ParseError(f"expected a term, found {tok.value!r}", tok.pos)
        name = self.next().value
        if name in self.scope:
            return self.scope[name]
        if name in _RESERVED:
            raise ParseError(f"{name!r} is reserved", tok.pos)
        if name in self.sig:
            arity = self.sig.arity(name)
            if self.peek().kind == "(":
                self.next()
                args = [self.term()]
                while self.peek().kind == ",":
                    self.next()
                    args.append(self.term())
                self.expect(")")
            else:
                args = []
            if len(args) != arity:
                raise ParseError(f"{name} expects {arity} arguments, got {len(args)}", tok.pos)
            return App(name, tuple(args))
        if name[0].isupper():
            return Susp(ID, Var(name))
        if name[0].islower():
            return Atom(name)
        raise ParseError(f"cannot read {name!r} as a term", tok.pos)

    # -- contexts and judgements

    def nu_prefix(self) -> tuple[Atom, ...]:
        if not self.at_name("new"):
            return ()
        self.next()
        names: list[str] = []
        while self.at_name():
            tok = self.next()
            if tok.value in names:
                raise ParseError(f"duplicate nu-atom {tok.value!r}", tok.pos)
            names.append(tok.value)
            if self.peek().kind == ",":
                self.next()
        self.expect(".")
        atoms = tuple(Atom(n, fresh=True) for n in names)
        self.scope.update({a.name: a for a in atoms})
        return atoms

    def fresh_constraints(self) -> frozenset:
        pairs = []
        while self.peek().kind != "|-" and self.peek().kind != "end":
            a = self.atom()
            self.expect("#")
            x = self.variable()
            pairs.append((a, x))
            if self.peek().kind == ",":
                self.next()
            else:
                break
        return frozenset(pairs)

    def fix_constraints(self) -> list[tuple[Perm, Var]]:
        pairs = []
        while self.at_perm():
            pi = self.perm()
            tok = self.expect("name")
            if tok.value != "fix":
                raise ParseError(f"expected 'fix', found {tok.value!r}", tok.pos)
            x = self.variable()
            pairs.append((pi, x))
            if self.peek().kind == ",":
                self.next()
            else:
                break
        return pairs

    def fix_body(self):
        """Either ``pi fix t`` or ``s = t`` (returns a tagged pair)."""
        if self.at_perm():
            save = self.i
            pi = self.perm()
            if self.at_name("fix"):
                self.next()
                return ("fix", pi, self.term())
            self.i = save
        lhs = self.term()
        tok = self.next()
        if tok.kind not in ("=", "~"):
            raise ParseError(f"expected '=' or '~', found {tok.value!r}", tok.pos)
        return ("eq", lhs, self.term())


def parse_term(text: str, sig: Signature | None = None) -> Term:
    p = _Parser(text, sig or default_signature())
    t = p.term()
    p.done()
    return t


def parse_perm(text: str) -> Perm:
    p = _Parser(text, default_signature())
    pi = p.perm()
    p.done()
    return pi


def parse_fresh_context(text: str) -> frozenset:
    p = _Parser(text, default_signature())
    ctx = p.fresh_constraints()
    p.done()
    return ctx


def parse_fix_context(text: str, sig: Signature | None = None) -> frozenset:
    p = _Parser(text, sig or default_signature())
    ctx = frozenset(p.fix_constraints())
    p.done()
    return ctx


def parse_judgement(text: str, sig: Signature | None = None, system: str = "fix"):
    """Parse a judgement for the named proof system.

    ``system`` is one of ``fresh``, ``fix``, ``strong``; it selects the
    context syntax and which bodies are allowed.
    """
    sig = sig or default_signature()
    p = _Parser(text, sig)
    if system == "fresh":
        ctx = p.fresh_constraints()
        p.expect("|-")
        lhs = p.term()
        tok = p.next()
        if tok.kind == "#":
            if not isinstance(lhs, Atom):
                raise ParseError("left of '#' must be an atom", tok.pos)
            j = FreshJudgement(ctx, lhs, p.term())
        elif tok.kind in ("=", "~"):
            j = AlphaJudgement(ctx, lhs, p.term())
        else:
            raise ParseError(f"expected '#', '=' or '~', found {tok.value!r}", tok.pos)
        p.done()
        return j
    if system == "fix":
        ctx = frozenset(p.fix_constraints())
        p.expect("|-")
        kind, a, b = p.fix_body()
        p.done()
        return FixJudgement(ctx, a, b) if kind == "fix" else EqJudgement(ctx, a, b)
    if system == "strong":
        nu = p.nu_prefix()
        ctx = StrongContext.from_swaps(nu, p.fix_constraints())
        p.expect("|-")
        kind, a, b = p.fix_body()
        p.done()
        body = FixGoal(a, b) if kind == "fix" else AlphaGoal(a, b)
        return NuJudgement(nu, ctx, body)
    raise ValueError(f"unknown system {system!r}")


def parse_strong_input(text: str, sig: Signature | None = None):
    """A strong context, or a full strong judgement if ``|-`` is present."""
    sig = sig or default_signature()
    p = _Parser(text, sig)
    nu = p.nu_prefix()
    ctx = StrongContext.from_swaps(nu, p.fix_constraints())
    if p.peek().kind == "|-":
        p.next()
        kind, a, b = p.fix_body()
        p.done()
        return NuJudgement(nu, ctx, FixGoal(a, b) if kind == "fix" else AlphaGoal(a, b))
    p.done()
    return ctx


def parse_signature(text: str) -> Signature:
    """Signature files: one ``symbol/arity`` per line, ``comm`` after binary
    commutative symbols."""
    arities: dict[str, int] = {}
    comm = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if "/" not in head:
            raise ParseError(f"line {lineno}: expected symbol/arity, found {head!r}")
        sym, _, arity_text = head.partition("/")
        try:
            arity = int(arity_text)
        except ValueError:
            raise ParseError(f"line {lineno}: bad arity {arity_text!r}") from None
        arities[sym] = arity
        flags = parts[1:]
        if flags == ["comm"]:
            comm.append(sym)
        elif flags:
            raise ParseError(f"line {lineno}: unknown flag {flags[0]!r}")
    return Signature(arities, comm)


def split_bindings(text: str) -> list[tuple[str, str]]:
    """Split valuation/substitution text ``X := rhs; Y := rhs`` into pairs."""
    out = []
    for piece in text.split(";"):
        piece = piece.strip()
        if not piece:
            continue
        name, sep, rhs = piece.partition(":=")
        if not sep:
            raise ParseError(f"expected ':=' in binding {piece!r}")
        out.append((name.strip(), rhs.strip()))
    return out


# ---------------------------------------------------------------------------
# printing

def print_perm(pi: Perm) -> str:
    return str(pi)


def print_term(t: Term) -> str:
    match t:
        case Atom():
            return t.name
        case Susp(pi, x):
            return x.name if pi.is_identity else f"{pi}.{x.name}"
        case Abs(a, body):
            return f"[{a.name}]{print_term(body)}"
        case App(f, args):
            if not args:
                return f
            return f"{f}({', '.join(print_term(s) for s in args)})"
    raise TypeError(f"not a term: {t!r}")


def print_fresh_context(ctx) -> str:
    pairs = sorted(ctx, key=lambda p: (p[0].key(), p[1].name))
    return ", ".join(f"{a.name} # {x.name}" for a, x in pairs)


def print_fix_context(ctx) -> str:
    pairs = sorted(ctx, key=lambda p: (p[1].name, str(p[0])))
    return ", ".join(f"{pi} fix {x.name}" for pi, x in pairs)


def print_strong_context(ctx: StrongContext, with_nu: bool = True) -> str:
    triples = sorted(ctx.constraints, key=lambda c: (c[0].key(), c[1].key(), c[2].name))
    body = ", ".join(f"({a.name} {c.name}) fix {x.name}" for a, c, x in triples)
    if not with_nu:
        return body
    nu = " ".join(a.name for a in ctx.nu_atoms)
    return f"new {nu}. {body}".strip() if nu else body


def print_judgement(j) -> str:
    match j:
        case FreshJudgement(ctx, a, t):
            return f"{print_fresh_context(ctx)} |- {a.name} # {print_term(t)}".lstrip()
        case AlphaJudgement(ctx, s, t):
            return f"{print_fresh_context(ctx)} |- {print_term(s)} ≈ {print_term(t)}".lstrip()
        case FixJudgement(ctx, pi, t):
            return f"{print_fix_context(ctx)} |- {pi} fix {print_term(t)}".lstrip()
        case EqJudgement(ctx, s, t):
            return f"{print_fix_context(ctx)} |- {print_term(s)} = {print_term(t)}".lstrip()
        case NuJudgement(nu, ctx, body):
            nu_txt = "new " + " ".join(a.name for a in nu) + ". " if nu else ""
            ctx_txt = print_strong_context(ctx, with_nu=False)
            match body:
                case FixGoal(pi, t):
                    body_txt = f"{pi} fix {print_term(t)}"
                case AlphaGoal(s, t):
                    body_txt = f"{print_term(s)} ≈ {print_term(t)}"
            return f"{nu_txt}{ctx_txt} |- {body_txt}".replace("  ", " ").strip()
    raise TypeError(f"not a judgement: {j!r}")
