import random

from nomfix import (C, CORE, Atom, Signature, Var, act, check_alpha,
                    check_fresh, parse_term, swap)
from nomfix.deriv_fresh import act_on_fresh_context
from nomfix.randgen import (atom_pool, random_fresh_context, random_perm,
                            random_term, var_pool)

a, b, c = Atom("a"), Atom("b"), Atom("c")
X = Var("X")


def test_fresh_paper_cases(sig):
    assert check_fresh(frozenset(), a, parse_term("[a]a", sig))
    assert check_fresh(frozenset({(a, X)}), a, parse_term("(b c).X", sig))
    assert not check_fresh(frozenset(), a, a)
    assert check_fresh(frozenset(), a, b)
    assert check_fresh(frozenset(), a, parse_term("[b]f(b, c)", sig))
    assert not check_fresh(frozenset(), a, parse_term("f(b, a)", sig))


def test_fresh_var_needs_preimage(sig):
    # a # (a b).X reduces to b # X
    assert check_fresh(frozenset({(b, X)}), a, parse_term("(a b).X", sig))
    assert not check_fresh(frozenset({(a, X)}), a, parse_term("(a b).X", sig))


def test_alpha_paper_cases(sig):
    assert check_alpha(frozenset(), parse_term("[a]a", sig), parse_term("[b]b", sig))
    assert check_alpha(frozenset({(a, X), (b, X)}),
                       parse_term("(a b).X", sig), parse_term("X", sig))
    assert not check_alpha(frozenset({(a, X)}),
                           parse_term("(a b).X", sig), parse_term("X", sig))
    assert check_alpha(frozenset(), parse_term("f^C(a, b)", sig),
                       parse_term("f^C(b, a)", sig), theory=C)
    assert not check_alpha(frozenset(), parse_term("f^C(a, b)", sig),
                           parse_term("f^C(b, a)", sig), theory=CORE)


def test_alpha_nested_commutative(sig):
    s = parse_term("f^C(+(a, b), [a]a)", sig)
    t = parse_term("f^C([c]c, +(b, a))", sig)
    assert check_alpha(frozenset(), s, t, theory=C, sig=sig)
    assert not check_alpha(frozenset(), s, t, theory=CORE, sig=sig)


def _sample(rng, sig, atoms, variables, depth=3):
    return random_term(rng, sig, atoms, variables, depth)


def test_alpha_is_reflexive_exactly(sig):
    rng = random.Random(3)
    atoms, variables = atom_pool(5), var_pool(3)
    for _ in range(300):
        t = _sample(rng, sig, atoms, variables)
        assert check_alpha(frozenset(), t, t, sig=sig)


def test_alpha_symmetry_and_transitivity_sampled(sig):
    rng = random.Random(5)
    atoms, variables = atom_pool(4), var_pool(2)
    seen_positive = 0
    for _ in range(400):
        ctx = random_fresh_context(rng, atoms, variables)
        t = _sample(rng, sig, atoms, variables)
        # build candidates likely to be alpha-equal to t
        s = act(random_perm(rng, atoms, 1), t) if rng.random() < 0.6 else \
            _sample(rng, sig, atoms, variables)
        u = act(random_perm(rng, atoms, 1), t) if rng.random() < 0.6 else \
            _sample(rng, sig, atoms, variables)
        st = bool(check_alpha(ctx, s, t, sig=sig))
        assert st == bool(check_alpha(ctx, t, s, sig=sig))
        if st and check_alpha(ctx, t, u, sig=sig):
            seen_positive += 1
            assert check_alpha(ctx, s, u, sig=sig)
    assert seen_positive > 20


def test_alpha_equivariance(sig):
    rng = random.Random(9)
    atoms, variables = atom_pool(4), var_pool(2)
    for _ in range(300):
        ctx = random_fresh_context(rng, atoms, variables)
        s = _sample(rng, sig, atoms, variables)
        t = act(random_perm(rng, atoms, 1), s) if rng.random() < 0.5 else \
            _sample(rng, sig, atoms, variables)
        pi = random_perm(rng, atoms)
        before = bool(check_alpha(ctx, s, t, sig=sig))
        after = bool(check_alpha(act_on_fresh_context(pi, ctx),
                                 act(pi, s), act(pi, t), sig=sig))
        assert before == after


def test_c_mode_conservative_on_c_free_terms():
    # with no commutative symbols in play the two theories coincide
    plain = Signature({"f": 2, "g": 2, "h": 1, "k": 0})
    rng = random.Random(21)
    atoms, variables = atom_pool(4), var_pool(2)
    for _ in range(300):
        ctx = random_fresh_context(rng, atoms, variables)
        s = random_term(rng, plain, atoms, variables, 3)
        t = act(random_perm(rng, atoms, 1), s) if rng.random() < 0.5 else \
            random_term(rng, plain, atoms, variables, 3)
        assert bool(check_alpha(ctx, s, t, CORE, plain)) == \
            bool(check_alpha(ctx, s, t, C, plain))


def test_freshness_preserved_by_alpha(sig):
    rng = random.Random(33)
    atoms, variables = atom_pool(4), var_pool(2)
    hits = 0
    for _ in range(400):
        ctx = random_fresh_context(rng, atoms, variables)
        t = _sample(rng, sig, atoms, variables)
        s = act(random_perm(rng, atoms, 1), t) if rng.random() < 0.7 else \
            _sample(rng, sig, atoms, variables)
        atom = rng.choice(atoms)
        if check_fresh(ctx, atom, t) and check_alpha(ctx, s, t, sig=sig):
            hits += 1
            assert check_fresh(ctx, atom, s)
    assert hits > 20


def test_derivations_record_rules(sig):
    v = check_fresh(frozenset(), a, parse_term("[a]a", sig))
    assert v.derivation.rule == "#[a]"
    v = check_alpha(frozenset(), parse_term("[a]a", sig), parse_term("[b]b", sig))
    assert v.derivation.rule == "~ab"
    assert [p.rule for p in v.derivation.premises] == ["~a", "#a"]
