import math
import random

import pytest

from nomfix import (ID, Atom, CarrierBoundExceeded, GenSet, all_permutations,
                    all_swaps, ds, fixes_pointwise, group_member,
                    perm_compose, perm_inverse, swap)
from nomfix.randgen import atom_pool, random_perm

a, b, c, d = Atom("a"), Atom("b"), Atom("c"), Atom("d")


# oracle: compare two permutations atom by atom over every mentioned atom
def ds_oracle(pi, rho):
    return {x for x in pi.domain | rho.domain if pi(x) != rho(x)}


def test_ds_examples():
    assert ds(swap(a, b), ID) == {a, b}
    pi = random_perm(random.Random(1), atom_pool(5))
    assert ds(pi, pi) == frozenset()
    two = perm_compose(swap(a, b), swap(c, d))
    assert ds(swap(a, b), two) == ds_oracle(swap(a, b), two) == {c, d}


def test_ds_equals_dom_of_quotient():
    rng = random.Random(5)
    atoms = atom_pool(6)
    for _ in range(300):
        pi, rho = random_perm(rng, atoms), random_perm(rng, atoms)
        assert ds(pi, rho) == perm_compose(perm_inverse(rho), pi).domain
        assert ds(pi, rho) == ds_oracle(pi, rho)


def test_fixes_pointwise():
    assert not fixes_pointwise(swap(a, b), {a, b})  # fixes the set but not pointwise
    assert fixes_pointwise(ID, {a, b, c})
    assert fixes_pointwise(swap(c, d), {a, b})


def test_group_member_paper_case():
    gens = GenSet([swap(a, b), swap(c, d)])
    assert not group_member(swap(a, c), gens)
    assert group_member(ID, gens)
    assert group_member(perm_compose(swap(a, b), swap(c, d)), gens)
    assert gens.closure() == {ID, swap(a, b), swap(c, d),
                              perm_compose(swap(a, b), swap(c, d))}


def test_closure_is_a_group():
    rng = random.Random(11)
    atoms = atom_pool(5)
    for _ in range(25):
        gens = GenSet([random_perm(rng, atoms) for _ in range(rng.randint(1, 3))])
        closure = gens.closure()
        assert ID in closure
        for g in closure:
            assert perm_inverse(g) in closure
            for h in closure:
                assert perm_compose(g, h) in closure
        n = len(gens.carrier)
        assert math.factorial(n) % len(closure) == 0  # Lagrange


def test_membership_exhaustive_on_small_carriers():
    rng = random.Random(17)
    atoms = atom_pool(4)
    for _ in range(20):
        gens = GenSet([random_perm(rng, atoms) for _ in range(rng.randint(1, 2))])
        closure = gens.closure()
        for g in closure:
            assert group_member(g, gens)
        for pi in all_permutations(gens.carrier):
            assert group_member(pi, gens) == (pi in closure)


def test_membership_outside_carrier_is_false():
    gens = GenSet([swap(a, b)])
    assert not group_member(swap(c, d), gens)
    assert not group_member(swap(a, c), gens)


def test_carrier_bound():
    atoms = atom_pool(9)
    gens = GenSet([swap(atoms[i], atoms[i + 1]) for i in range(8)], bound=8)
    with pytest.raises(CarrierBoundExceeded):
        gens.closure()
    # queries outside the carrier still answer without enumeration
    assert not group_member(swap(Atom("z1"), Atom("z2")), gens)


def test_all_swaps_and_permutations():
    atoms = atom_pool(3)
    assert len(list(all_swaps(atoms))) == 3
    perms = list(all_permutations(atoms))
    assert len(perms) == 6
    assert len(set(perms)) == 6
