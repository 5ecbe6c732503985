import random

import pytest

from nomfix import (ID, Abs, App, Atom, GroundnessError, Perm, Susp, Var, act,
                    atoms_of, free_names, perm_apply, perm_compose,
                    perm_conjugate, perm_inverse, subst_apply, swap, var,
                    vars_of)
from nomfix.randgen import atom_pool, random_perm, random_term, var_pool

a, b, c, d = Atom("a"), Atom("b"), Atom("c"), Atom("d")
X, Y = Var("X"), Var("Y")


# oracle: evaluate a chain of swaps pointwise, rightmost first
def swaps_apply(swaps, atom):
    for l, r in reversed(swaps):
        if atom == l:
            atom = r
        elif atom == r:
            atom = l
    return atom


def test_swap_basics():
    assert perm_apply(swap(a, b), a) == b
    assert perm_apply(ID, c) == c
    assert Perm(((a, a),)) == ID
    assert Perm(()) == ID


def test_compose_pointwise_oracle():
    pi = perm_compose(swap(a, b), swap(c, d))
    expected = swaps_apply([(a, b), (c, d)], c)
    assert expected == d
    assert perm_apply(pi, c) == expected
    for atom in (a, b, c, d):
        assert perm_apply(pi, atom) == swaps_apply([(a, b), (c, d)], atom)


def test_conjugate_pointwise_oracle():
    # rho o pi o rho^-1 evaluated atom by atom
    pi, rho = swap(a, b), swap(b, c)
    def oracle(x):
        return rho(pi(rho.inverse()(x)))
    conj = perm_conjugate(pi, rho)
    for atom in (a, b, c, d):
        assert conj(atom) == oracle(atom)
    assert conj == swap(a, c)
    assert perm_conjugate(swap(a, b), ID) == swap(a, b)
    assert perm_compose(swap(a, b), perm_inverse(swap(a, b))) == ID


def test_perm_equality_is_extensional():
    assert Perm(((a, b), (a, b))) == ID
    assert Perm(((a, b), (b, c))) == Perm(((a, c), (a, b)))  # both are the cycle a->b->c->a
    assert swap(a, b) != swap(a, c)
    assert hash(Perm(((a, b), (a, b)))) == hash(ID)


def test_perm_display_keeps_swap_list():
    pi = Perm(((a, b), (c, d)))
    assert str(pi) == "(a b)(c d)"
    assert str(ID) == "id"
    assert pi.normalized() == pi


def test_conjugation_law_randomized():
    rng = random.Random(7)
    atoms = atom_pool(6)
    for _ in range(300):
        pi = random_perm(rng, atoms)
        rho = random_perm(rng, atoms)
        x = rng.choice(atoms)
        assert perm_apply(perm_conjugate(pi, rho), rho(x)) == rho(perm_apply(pi, x))


def test_action_on_terms():
    assert act(swap(a, b), Abs(a, a)) == Abs(b, b)
    assert act(swap(a, b), Susp(swap(c, d), X)) == Susp(perm_compose(swap(a, b), swap(c, d)), X)
    assert act(swap(a, b), App("f", (a, c))) == App("f", (b, c))
    assert act(ID, Abs(a, App("f", (a, b)))) == Abs(a, App("f", (a, b)))


def test_action_group_laws_randomized():
    rng = random.Random(13)
    atoms, variables = atom_pool(5), var_pool(3)
    from nomfix import default_signature
    sig = default_signature()
    for _ in range(200):
        t = random_term(rng, sig, atoms, variables, 3)
        pi, rho = random_perm(rng, atoms), random_perm(rng, atoms)
        assert act(ID, t) == t
        assert act(pi, act(rho, t)) == act(perm_compose(pi, rho), t)


def test_substitution():
    assert subst_apply(Susp(swap(a, b), X), {X: a}) == b
    assert subst_apply(Abs(a, var("X")), {X: a}) == Abs(a, a)  # capture is allowed
    assert subst_apply(a, {X: b}) == a
    assert subst_apply(Susp(ID, Y), {X: a}) == Susp(ID, Y)


def test_substitution_commutes_with_action():
    # pi.(t sigma) == (pi.t) sigma: suspensions carry the permutation to the image
    rng = random.Random(99)
    atoms, variables = atom_pool(5), var_pool(3)
    from nomfix import default_signature
    sig = default_signature()
    for _ in range(200):
        t = random_term(rng, sig, atoms, variables, 3)
        pi = random_perm(rng, atoms)
        sigma = {x: random_term(rng, sig, atoms, variables, 2) for x in var_pool(3)}
        assert act(pi, subst_apply(t, sigma)) == subst_apply(act(pi, t), sigma)


def test_occurrences():
    assert atoms_of(Susp(swap(a, b), X)) == {a, b}
    assert atoms_of(Abs(a, b)) == {a, b}
    assert vars_of(App("f", (Susp(ID, X), Abs(a, Susp(swap(a, b), Y))))) == {X, Y}


def test_free_names():
    assert free_names(Abs(a, a)) == frozenset()
    assert free_names(App("f", (a, Abs(b, b)))) == {a}
    with pytest.raises(GroundnessError):
        free_names(Susp(ID, X))


def test_atom_namespaces_do_not_collide():
    assert Atom("c1") != Atom("c1", fresh=True)
    assert len({Atom("c1"), Atom("c1", fresh=True)}) == 2
