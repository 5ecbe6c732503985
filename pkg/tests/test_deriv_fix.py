import random

import pytest

from nomfix import (C, CORE, GROUP_GENERATED, SUBSET_DOM, Abs, Atom, Axiom,
                    CarrierBoundExceeded, EqJudgement, FixJudgement,
                    FreshSupply, ID, Perm, ProofTree, Susp, Theory, Var, act,
                    check_alpha, check_eq_fix, check_fix, commutativity_theory,
                    core_theory, flatten_strong, parse_judgement, parse_term,
                    perm_proof, subst_record, swap, translate_fix_to_fresh,
                    tree_from_dict, tree_to_dict, vars_of, verify_proof)
from nomfix.judgements import fix_extend
from nomfix.randgen import (atom_pool, derivable_eq_judgement,
                            derivable_fix_judgement, random_fix_context,
                            random_perm, random_strong_context, random_term,
                            var_pool)

a, b, c, d = Atom("a"), Atom("b"), Atom("c"), Atom("d")
a1, a2, a3, a4 = (Atom(f"a{i}") for i in range(1, 5))
X, X1 = Var("X"), Var("X1")


def test_fix_paper_cases(sig):
    ups = frozenset({(swap(a1, a2), X1), (swap(a3, a4), X1)})
    assert check_fix(ups, swap(a1, a3), Susp(ID, X1), SUBSET_DOM)
    ctx = frozenset({(swap(a, b), X), (swap(c, d), X)})
    assert not check_fix(ctx, swap(a, c), Susp(ID, X), GROUP_GENERATED)
    assert check_fix(frozenset(), swap(a, b), parse_term("[a]a", sig), SUBSET_DOM)


def test_fix_atoms_and_apps(sig):
    assert check_fix(frozenset(), swap(a, b), c)
    assert not check_fix(frozenset(), swap(a, b), a)
    assert check_fix(frozenset(), swap(a, b), parse_term("f([a]a, [b]b)", sig))
    assert not check_fix(frozenset(), swap(a, b), parse_term("f(a, b)", sig))


def test_eq_paper_cases(sig):
    assert check_eq_fix(frozenset(), parse_term("[a]a", sig), parse_term("[b]b", sig))
    ctx = frozenset({(swap(b, Atom("d'")), X)})
    lhs, rhs = parse_term("(a b).[a]X", sig), parse_term("[a]X", sig)
    assert check_eq_fix(ctx, lhs, rhs, SUBSET_DOM)
    assert not check_eq_fix(ctx, lhs, rhs, GROUP_GENERATED)


def test_eq_commutative_branch(sig):
    s, t = parse_term("f^C(a, b)", sig), parse_term("f^C(b, a)", sig)
    assert check_eq_fix(frozenset(), s, t, SUBSET_DOM, C, sig)
    assert not check_eq_fix(frozenset(), s, t, SUBSET_DOM, CORE, sig)


def test_carrier_bound_propagates():
    atoms = atom_pool(10)
    ctx = frozenset({(Perm(tuple((atoms[i], atoms[i + 1]) for i in range(9))), X)})
    with pytest.raises(CarrierBoundExceeded):
        check_fix(ctx, swap(atoms[0], atoms[1]), Susp(ID, X), GROUP_GENERATED)


def test_fix_matches_eq_on_action_image(sig):
    # pi fix t and pi.t = t are decided consistently, in both modes
    rng = random.Random(41)
    atoms, variables = atom_pool(5), var_pool(2)
    for _ in range(400):
        ctx = random_fix_context(rng, atoms, variables)
        t = random_term(rng, sig, atoms, variables, 3)
        pi = random_perm(rng, atoms)
        for mode in (SUBSET_DOM, GROUP_GENERATED):
            left = bool(check_fix(ctx, pi, t, mode))
            right = bool(check_eq_fix(ctx, act(pi, t), t, mode))
            assert left == right, (ctx, str(pi), t, mode)


def test_group_mode_implies_subset_mode_on_suspensions():
    rng = random.Random(43)
    atoms, variables = atom_pool(6), var_pool(2)
    hits = 0
    for _ in range(500):
        ctx = random_fix_context(rng, atoms, variables, max_n=3)
        pi = random_perm(rng, atoms)
        rho = random_perm(rng, atoms, 2)
        x = rng.choice(variables)
        t = Susp(rho, x)
        if check_fix(ctx, pi, t, GROUP_GENERATED):
            hits += 1
            assert check_fix(ctx, pi, t, SUBSET_DOM)
    assert hits > 30


def test_verdicts_do_not_depend_on_the_fresh_supply(sig):
    rng = random.Random(47)
    atoms, variables = atom_pool(4), var_pool(2)
    for _ in range(200):
        ctx = random_fix_context(rng, atoms, variables)
        t = random_term(rng, sig, atoms, variables, 3)
        pi = random_perm(rng, atoms)
        avoid = atom_pool(6)
        one = check_fix(ctx, pi, t, supply=FreshSupply(avoid, start=1))
        two = check_fix(ctx, pi, t, supply=FreshSupply(avoid, start=1000))
        assert bool(one) == bool(two)


def test_eq_agrees_with_alpha_on_flattened_strong_contexts(sig):
    # over a nu-quantified context, the plain equality engine and the
    # freshness engine agree once the context is translated; the sampled
    # terms stay clear of the quantified names
    rng = random.Random(53)
    atoms, variables = atom_pool(4), var_pool(2)
    for _ in range(300):
        strong = random_strong_context(rng, atoms, variables)
        ups = flatten_strong(strong)
        delta = translate_fix_to_fresh(strong)
        delta_full = delta | {(cq, x) for cq in strong.nu_atoms for x in variables}
        t = random_term(rng, sig, atoms, variables, 3)
        s = act(random_perm(rng, atoms, 1), t) if rng.random() < 0.6 else \
            random_term(rng, sig, atoms, variables, 3)
        left = bool(check_eq_fix(ups, s, t, SUBSET_DOM, CORE, sig))
        right = bool(check_alpha(delta_full, s, t, CORE, sig))
        assert left == right, (strong, s, t)


# ---------------------------------------------------------------------------
# the proof checker


def test_displayed_derivation_of_abs_swap(sig):
    # |- (a b).[b]b = [b]b, i.e. [a]a = [b]b, by the swapping rule over
    # two fixed-point branches
    tree = perm_proof(frozenset(), a, b, parse_term("[b]b", sig))
    assert tree is not None
    assert tree.conclusion == EqJudgement(frozenset(), parse_term("[a]a", sig),
                                          parse_term("[b]b", sig))
    assert verify_proof(tree, core_theory(sig))
    assert [p.rule for p in tree.premises] == ["fix_abs", "fix_abs"]


def test_perm_proof_requires_premises(sig):
    assert perm_proof(frozenset(), a, b, parse_term("f(a, b)", sig)) is None


def test_refl_mismatch_is_reported(sig):
    bad = ProofTree("refl", EqJudgement(frozenset(), a, b))
    res = verify_proof(bad, core_theory(sig))
    assert not res
    assert res.diagnostics[0].path == ""
    assert "refl" in res.diagnostics[0].reason


def test_first_invalid_node_path(sig):
    good = ProofTree("refl", EqJudgement(frozenset(), a, a))
    bad = ProofTree("refl", EqJudgement(frozenset(), a, b))
    tran = ProofTree("tran", EqJudgement(frozenset(), a, b), (good, bad))
    res = verify_proof(tran, core_theory(sig))
    assert not res
    assert res.diagnostics[0].path == "1"


def test_ax_node_for_commutativity(sig):
    y = Var("Y")
    theory = Theory("with-C", sig, (Axiom("C", frozenset(),
                                          parse_term("f^C(X, Y)", sig),
                                          parse_term("f^C(Y, X)", sig)),))
    node = ProofTree("ax",
                     EqJudgement(frozenset(), parse_term("f^C(a, b)", sig),
                                 parse_term("f^C(b, a)", sig)),
                     (), perm=ID, subst=subst_record({X: a, y: b}), axiom="C")
    assert verify_proof(node, theory)
    wrong = ProofTree("ax",
                      EqJudgement(frozenset(), parse_term("f^C(a, b)", sig),
                                  parse_term("f^C(a, b)", sig)),
                      (), perm=ID, subst=subst_record({X: a, y: b}), axiom="C")
    assert not verify_proof(wrong, theory)


def test_ax_node_with_constrained_axiom(sig):
    # an axiom with a fixed-point hypothesis needs a premise deriving the
    # instantiated constraint
    ax = Axiom("swap-invariant", frozenset({(swap(a, b), X)}),
               parse_term("(a b).X", sig), parse_term("X", sig))
    theory = Theory("with-hyp", sig, (ax,))
    ctx = frozenset({(swap(c, d), X)})
    sigma = subst_record({X: Susp(ID, X)})
    want = FixJudgement(ctx, swap(c, d), Susp(ID, X))
    concl = EqJudgement(ctx, Susp(swap(c, d), X), Susp(ID, X))
    premise = ProofTree("fix_var", want)
    node = ProofTree("ax", concl, (premise,), perm=swap(a, c).compose(swap(b, d)),
                     subst=sigma, axiom="swap-invariant")
    assert verify_proof(node, theory)
    missing = ProofTree("ax", concl, (), perm=swap(a, c).compose(swap(b, d)),
                        subst=sigma, axiom="swap-invariant")
    assert not verify_proof(missing, theory)


def test_cong_and_structural_nodes(sig):
    t1 = parse_term("f(a, b)", sig)
    t2 = parse_term("f(a, c)", sig)
    inner = ProofTree("refl", EqJudgement(frozenset(), b, b))
    ok = ProofTree("cong_f", EqJudgement(frozenset(), t1, t1), (inner,), position=2)
    assert verify_proof(ok, core_theory(sig))
    bad = ProofTree("cong_f", EqJudgement(frozenset(), t1, t2), (inner,), position=2)
    assert not verify_proof(bad, core_theory(sig))
    sym = ProofTree("symm", EqJudgement(frozenset(), t1, t1),
                    (ProofTree("refl", EqJudgement(frozenset(), t1, t1)),))
    assert verify_proof(sym, core_theory(sig))
    cab = ProofTree("cong_abs", EqJudgement(frozenset(), Abs(a, b), Abs(a, b)),
                    (ProofTree("refl", EqJudgement(frozenset(), b, b)),))
    assert verify_proof(cab, core_theory(sig))


def test_fr_node(sig):
    ctx = frozenset({(swap(a, b), X), (swap(c, d), X)})
    extra = (swap(a, b).compose(swap(c, d)), X)
    inner_ctx = ctx | {extra}
    s, t = Susp(extra[0], X), Susp(ID, X)
    premise = ProofTree("eq", None)  # placeholder replaced below
    inner = ProofTree("refl", EqJudgement(inner_ctx, s, s))
    node = ProofTree("fr", EqJudgement(ctx, s, s), (inner,),
                     perm=extra[0], var=X)
    assert verify_proof(node, core_theory(sig))
    # the side condition really is checked
    stray = ProofTree("fr", EqJudgement(ctx, s, s),
                      (ProofTree("refl", EqJudgement(ctx | {(swap(a, Atom("e")), X)}, s, s)),),
                      perm=swap(a, Atom("e")), var=X)
    assert not verify_proof(stray, core_theory(sig))


def test_fr_is_admissible_for_subset_mode(sig):
    # adding a covered constraint never changes the decision procedure's
    # verdict, so conclusions of strengthening steps re-check directly
    rng = random.Random(59)
    atoms, variables = atom_pool(5), var_pool(2)
    for _ in range(200):
        ctx = random_fix_context(rng, atoms, variables, max_n=2)
        x = rng.choice(variables)
        from nomfix.judgements import context_dom
        covered = sorted(context_dom(ctx, x), key=Atom.key)
        if len(covered) < 2:
            continue
        extra = swap(covered[0], covered[1])
        inner_ctx = ctx | {(extra, x)}
        t = random_term(rng, sig, atoms, variables, 3)
        pi = random_perm(rng, atoms)
        s = act(pi, t)
        if check_eq_fix(inner_ctx, s, t, SUBSET_DOM, CORE, sig):
            assert check_eq_fix(ctx, s, t, SUBSET_DOM, CORE, sig)


def test_fr_with_group_mode_can_outrun_the_decision_procedure(sig):
    # under the group-generated rule, strengthening genuinely adds power:
    # the strengthened context derives a judgement the base context cannot
    ctx = frozenset({(swap(a, b), X), (swap(c, d), X)})
    extra = (swap(a, c), X)
    s, t = Susp(swap(a, c), X), Susp(ID, X)
    assert check_eq_fix(ctx | {extra}, s, t, GROUP_GENERATED)
    assert not check_eq_fix(ctx, s, t, GROUP_GENERATED)
    inner = ProofTree("eq_var", EqJudgement(ctx | {extra}, s, t))
    # the checker accepts only genuine rule labels
    node = ProofTree("fr", EqJudgement(ctx, s, t), (inner,), perm=extra[0], var=X)
    res = verify_proof(node, core_theory(sig), GROUP_GENERATED)
    assert not res  # eq_var is not a checkable rule label
    assert "unknown rule" in res.diagnostics[0].reason


def test_fix_derivations_pass_the_checker(sig):
    rng = random.Random(61)
    atoms, variables = atom_pool(5), var_pool(2)
    theory = core_theory(sig)
    for mode in (SUBSET_DOM, GROUP_GENERATED):
        for _ in range(60):
            j = derivable_fix_judgement(rng, sig, atoms, variables, mode)
            v = check_fix(j.context, j.perm, j.term, mode)
            assert v
            res = verify_proof(v.derivation, theory, mode)
            assert res, res.reason


def test_tree_serialisation_roundtrip(sig):
    tree = perm_proof(frozenset({(swap(c, d), X)}), a, b,
                      parse_term("[b]f(b, X)", sig))
    assert tree is not None
    data = tree_to_dict(tree)
    back = tree_from_dict(data, sig)
    assert back == tree
    assert verify_proof(back, core_theory(sig))


def test_commutativity_theory_axioms(sig):
    theory = commutativity_theory(sig)
    names = {ax.name for ax in theory.axioms}
    assert names == {"C[+]", "C[f^C]"}
