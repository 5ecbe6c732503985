"""Disagreement sets, pointwise fixing, and finitely generated permutation groups.

Membership in the subgroup generated by a context's permutations is decided
by exhaustive breadth-first closure: contexts at desk scale have tiny
carriers, so correctness-by-construction beats a stabiliser chain.  The
carrier bound guards against accidentally huge queries.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import CarrierBoundExceeded
from .terms import ID, Atom, Perm

DEFAULT_CARRIER_BOUND = 8


def ds(pi: Perm, rho: Perm) -> frozenset[Atom]:
    """Disagreement set: the atoms where the two permutations differ."""
    return frozenset(a for a in pi.domain | rho.domain if pi(a) != rho(a))


def fixes_pointwise(pi: Perm, atoms: Iterable[Atom]) -> bool:
    """True iff ``pi`` fixes every atom in the set individually."""
    return pi.domain.isdisjoint(atoms)


@lru_cache(maxsize=None)
def _closure_of(gens: frozenset[Perm]) -> frozenset[Perm]:
    seen: set[Perm] = {ID}
    frontier: list[Perm] = [ID]
    while frontier:
        nxt: list[Perm] = []
        for g in frontier:
            for h in gens:
                for prod in (g.compose(h), g.compose(h.inverse())):
                    prod = prod.normalized()
                    if prod not in seen:
                        seen.add(prod)
                        nxt.append(prod)
        frontier = nxt
    return frozenset(seen)


class GenSet:
    """A finite set of generators together with the atoms they move.

    The closure (the generated subgroup) is computed once per distinct
    generator set and shared; the cache is read-only after creation, so
    concurrent readers are safe.
    """

    def __init__(self, generators: Iterable[Perm], bound: int = DEFAULT_CARRIER_BOUND):
        self.generators = tuple(g.normalized() for g in generators)
        self.carrier = frozenset().union(frozenset(), *(g.domain for g in self.generators))
        self.bound = bound

    def closure(self) -> frozenset[Perm]:
        """Every element of the generated subgroup."""
        if len(self.carrier) > self.bound:
            raise CarrierBoundExceeded(
                f"carrier has {len(self.carrier)} atoms, bound is {self.bound}")
        return _closure_of(frozenset(self.generators))

    def order(self) -> int:
        return len(self.closure())

    def __repr__(self):
        return f"GenSet({list(self.generators)})"


def group_member(pi: Perm, gens: GenSet) -> bool:
    """Is ``pi`` a product of generators and inverses?

    Generated elements only move carrier atoms, so a permutation whose
    domain leaks outside the carrier is rejected without enumeration.
    """
    if pi.is_identity:
        return True
    if not pi.domain <= gens.carrier:
        return False
    return pi in gens.closure()


def all_swaps(atoms: Iterable[Atom]) -> Iterator[Perm]:
    """Every transposition of two distinct atoms from the set."""
    for a, b in itertools.combinations(sorted(atoms, key=Atom.key), 2):
        yield Perm(((a, b),))


def all_permutations(atoms: Iterable[Atom]) -> Iterator[Perm]:
    """Every permutation whose domain lies inside the set (identity included)."""
    atoms = sorted(atoms, key=Atom.key)
    for image in itertools.permutations(atoms):
        yield Perm.from_mapping(dict(zip(atoms, image)))
