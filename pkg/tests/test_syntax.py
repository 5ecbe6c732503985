import random

import pytest

from nomfix import (Abs, App, Atom, EqJudgement, FixJudgement, FreshJudgement,
                    NuJudgement, ParseError, Perm, Susp, Var, parse_judgement,
                    parse_perm, parse_signature, parse_term, print_judgement,
                    print_term, swap)
from nomfix.randgen import atom_pool, random_fix_context, random_fresh_context, random_perm, random_term, var_pool

a, b, c = Atom("a"), Atom("b"), Atom("c")
X = Var("X")


def test_parse_term_shapes(sig):
    assert parse_term("a", sig) == a
    assert parse_term("X", sig) == Susp(Perm(), X)
    assert parse_term("(a b).X", sig) == Susp(swap(a, b), X)
    assert parse_term("[a]f(a, b)", sig) == Abs(a, App("f", (a, b)))
    assert parse_term("0", sig) == App("0", ())
    assert parse_term("f^C(a, b)", sig) == App("f^C", (a, b))
    assert parse_term("lam([a]app(a, X))", sig) == \
        App("lam", (Abs(a, App("app", (a, Susp(Perm(), X)))),))


def test_permutation_applied_to_any_term_is_computed(sig):
    assert parse_term("(a b).[a]a", sig) == Abs(b, b)
    assert parse_term("(a b).f(a, c)", sig) == App("f", (b, c))
    assert parse_term("(a b)(c d).X", sig) == Susp(Perm(((a, b), (c, Atom("d")))), X)


def test_identity_suspension_prints_bare(sig):
    t = Susp(Perm(), X)
    assert print_term(t) == "X"
    assert parse_term(print_term(t), sig) == t


def test_swap_list_prints_left_to_right(sig):
    pi = parse_perm("(a b)(b c)")
    assert str(pi) == "(a b)(b c)"


def test_parse_errors_have_positions(sig):
    with pytest.raises(ParseError):
        parse_term("f(a", sig)
    with pytest.raises(ParseError):
        parse_term("f(a, b, c)", sig)  # arity mismatch
    with pytest.raises(ParseError):
        parse_term("id", sig)  # reserved
    with pytest.raises(ParseError):
        parse_term("(a b)X", sig)  # missing dot
    with pytest.raises(ParseError):
        parse_judgement("|- a #", sig, "fresh")


def test_judgement_parsing(sig):
    j = parse_judgement("|- a # a", sig, "fresh")
    assert j == FreshJudgement(frozenset(), a, a)
    j = parse_judgement("(a b) fix X, (c d) fix X |- (a c) fix X", sig, "fix")
    assert isinstance(j, FixJudgement) and len(j.context) == 2
    j = parse_judgement("⊢ [a]a = [b]b", sig, "fix")
    assert j == EqJudgement(frozenset(), Abs(a, a), Abs(b, b))
    j = parse_judgement("new c1. (a c1) fix X |- (a b).X ~ X", sig, "strong")
    assert isinstance(j, NuJudgement)
    assert all(atom.fresh for atom in j.nu_atoms)


def test_unicode_spellings(sig):
    assert parse_judgement("⊢ [a]a ≈ [b]b", sig, "fresh") == \
        parse_judgement("|- [a]a ~ [b]b", sig, "fresh")
    assert parse_term("(a b)·X", sig) == parse_term("(a b).X", sig)


def test_roundtrip_random_terms(sig):
    rng = random.Random(31)
    atoms, variables = atom_pool(5), var_pool(3)
    for _ in range(300):
        t = random_term(rng, sig, atoms, variables, 4)
        assert parse_term(print_term(t), sig) == t


def test_roundtrip_random_judgements(sig):
    rng = random.Random(37)
    atoms, variables = atom_pool(4), var_pool(2)
    for _ in range(150):
        ctx = random_fix_context(rng, atoms, variables)
        t = random_term(rng, sig, atoms, variables, 3)
        j = FixJudgement(ctx, random_perm(rng, atoms), t)
        assert parse_judgement(print_judgement(j), sig, "fix") == j
        jf = FreshJudgement(random_fresh_context(rng, atoms, variables),
                            rng.choice(atoms), t)
        assert parse_judgement(print_judgement(jf), sig, "fresh") == jf


def test_roundtrip_strong_judgement(sig):
    text = "new c1 c2. (a c1) fix X, (b c2) fix X |- (a b) fix X"
    j = parse_judgement(text, sig, "strong")
    assert parse_judgement(print_judgement(j), sig, "strong") == j


def test_signature_files():
    sig = parse_signature("lam/1\napp/2\nplus/2 comm\n\nzero/0\n")
    assert sig.arity("lam") == 1
    assert sig.is_commutative("plus")
    assert not sig.is_commutative("app")
    with pytest.raises(ParseError):
        parse_signature("lam")
    with pytest.raises(ValueError):
        parse_signature("one/1 comm")  # commutative symbols must be binary


def test_fresh_namespace_cannot_be_forged(sig):
    # a parsed atom is never in the fresh namespace unless nu-bound
    j = parse_judgement("|- c1 # c1", sig, "fresh")
    assert not j.atom.fresh
    js = parse_judgement("new c1. |- (a c1) fix X", sig, "strong")
    assert js.nu_atoms[0].fresh
