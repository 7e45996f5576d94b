"""Finite abelian groups in invariant-factor coordinates, subgroups, quotients with sections.

All element orderings are the lexicographic order on residue vectors, which makes
every transversal, coset key and canonical form reproducible across runs.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import gcd, prod
from typing import Iterable, Iterator, Optional, Sequence, Tuple


class GroupError(ValueError):
    pass


class FinAbGroup:
    """Z_{n_1} x ... x Z_{n_k} with n_1 | n_2 | ... | n_k, each n_i >= 2."""

    __slots__ = ("invariant_factors", "_elements", "_index")

    def __init__(self, invariant_factors: Sequence[int]):
        fs = tuple(int(n) for n in invariant_factors)
        if any(n <= 1 for n in fs):
            raise GroupError(f"invariant factors must be >= 2, got {fs}")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise GroupError(f"factors not in divisibility chain: {fs}")
        self.invariant_factors = fs
        self._elements: Optional[Tuple[GroupElement, ...]] = None
        self._index = None

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def element(self, residues: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(residues))

    def elements(self) -> Tuple["GroupElement", ...]:
        if self._elements is None:
            ranges = [range(n) for n in self.invariant_factors]
            self._elements = tuple(
                GroupElement(self, r) for r in itertools.product(*ranges)
            )
        return self._elements

    def __iter__(self) -> Iterator["GroupElement"]:
        return iter(self.elements())

    def __len__(self) -> int:
        return self.order

    def index_of(self, g: "GroupElement") -> int:
        if self._index is None:
            self._index = {e.residues: i for i, e in enumerate(self.elements())}
        return self._index[g.residues]

    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def __eq__(self, other) -> bool:
        return isinstance(other, FinAbGroup) and self.invariant_factors == other.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    def __repr__(self):
        if not self.invariant_factors:
            return "FinAbGroup(trivial)"
        return "FinAbGroup(%s)" % "x".join(f"Z{n}" for n in self.invariant_factors)


class GroupElement:
    __slots__ = ("group", "residues")

    def __init__(self, group: FinAbGroup, residues: Tuple[int, ...]):
        if len(residues) != group.rank:
            raise GroupError(f"residue vector length {len(residues)} != rank {group.rank}")
        self.group = group
        self.residues = tuple(r % n for r, n in zip(residues, group.invariant_factors))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.group != other.group:
            raise GroupError("elements of different groups")
        return GroupElement(
            self.group, tuple(a + b for a, b in zip(self.residues, other.residues))
        )

    def inv(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-a for a in self.residues))

    def __pow__(self, m: int) -> "GroupElement":
        return GroupElement(self.group, tuple(a * m for a in self.residues))

    def is_identity(self) -> bool:
        return all(a == 0 for a in self.residues)

    def order(self) -> int:
        o = 1
        for a, n in zip(self.residues, self.group.invariant_factors):
            if a:
                o = o * (n // gcd(n, a)) // gcd(o, n // gcd(n, a))
        return o

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupElement)
            and self.group == other.group
            and self.residues == other.residues
        )

    def __lt__(self, other: "GroupElement") -> bool:
        return self.residues < other.residues

    def __hash__(self):
        return hash((self.group.invariant_factors, self.residues))

    def __repr__(self):
        return f"g{list(self.residues)}"


def group_from_invariants(factors: Iterable[int]) -> FinAbGroup:
    """Build the group, normalizing an arbitrary factor list to invariant-factor form.

    The normalization is the Smith normal form of the diagonal matrix of the
    factors: collect prime powers, then rebuild divisibility-chain factors.
    """
    fs = [int(n) for n in factors]
    if any(n <= 1 for n in fs):
        raise GroupError(f"factors must all be >= 2, got {fs}")
    primary: dict = {}
    for n in fs:
        d = 2
        m = n
        while d * d <= m:
            if m % d == 0:
                e = 0
                while m % d == 0:
                    m //= d
                    e += 1
                primary.setdefault(d, []).append(d**e)
            d += 1
        if m > 1:
            primary.setdefault(m, []).append(m)
    for p in primary:
        primary[p].sort()
    out = []
    while any(primary.values()):
        n = 1
        for p in list(primary):
            if primary[p]:
                n *= primary[p].pop()
        out.append(n)
    out.reverse()
    return FinAbGroup(out)


class Subgroup:
    """A subgroup of an ambient group, stored as its full sorted element list."""

    __slots__ = ("ambient", "elements", "_set", "_index")

    def __init__(self, ambient: FinAbGroup, elements: Iterable[GroupElement]):
        elts = sorted(set(elements))
        self.ambient = ambient
        self.elements = tuple(elts)
        self._set = frozenset(e.residues for e in elts)
        self._index = {e.residues: i for i, e in enumerate(elts)}
        if not elts or not elts[0].is_identity():
            raise GroupError("subgroup must contain the identity")

    @staticmethod
    def trivial(G: FinAbGroup) -> "Subgroup":
        return Subgroup(G, [G.identity()])

    @staticmethod
    def full(G: FinAbGroup) -> "Subgroup":
        return Subgroup(G, G.elements())

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g.residues in self._set

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, g: GroupElement) -> int:
        return self._index[g.residues]

    def is_elementary_2(self) -> bool:
        return all((e * e).is_identity() for e in self.elements)

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return all(e in self for e in other.elements)

    def squares(self) -> "Subgroup":
        return Subgroup(self.ambient, [e * e for e in self.elements])

    def torsion2(self) -> "Subgroup":
        return Subgroup(self.ambient, [e for e in self.elements if (e * e).is_identity()])

    def minimal_generators(self) -> Tuple[GroupElement, ...]:
        gens: list = []
        span = {self.ambient.identity().residues}
        for e in self.elements:
            if e.residues in span:
                continue
            gens.append(e)
            span = {x.residues for x in _closure(self.ambient, gens)}
            if len(span) == self.order:
                break
        return tuple(gens)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.ambient == other.ambient
            and self._set == other._set
        )

    def __hash__(self):
        return hash((self.ambient.invariant_factors, self._set))

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.ambient!r})"


def _closure(G: FinAbGroup, gens: Sequence[GroupElement]) -> list:
    seen = {G.identity().residues}
    frontier = [G.identity()]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                p = h * g
                if p.residues not in seen:
                    seen.add(p.residues)
                    nxt.append(p)
        frontier = nxt
    return [GroupElement(G, r) for r in sorted(seen)]


def subgroup_generated(G: FinAbGroup, gens: Iterable[GroupElement]) -> Subgroup:
    gens = list(gens)
    for g in gens:
        if g.group != G:
            raise GroupError(f"generator {g} not in ambient group")
    return Subgroup(G, _closure(G, gens))


def torsion_and_squares(G: FinAbGroup):
    """(G_[2], G^[2], Theta): 2-torsion, squares, and the transversal of G^[2] containing e.

    Theta takes the lexicographically minimal representative of each coset of
    the squares, so g0-normalization is reproducible.
    """
    g2 = Subgroup(G, [e for e in G if (e * e).is_identity()])
    sq = Subgroup(G, [e * e for e in G])
    theta = []
    seen = set()
    for e in G:
        key = min((e * s).residues for s in sq)
        if key not in seen:
            seen.add(key)
            theta.append(GroupElement(G, key))
    return g2, sq, tuple(sorted(theta))


class QuotientWithSection:
    """G/T with the canonical (lex-minimal representative) section xi.

    Coset keys are the residue tuples of the minimal representative; `pi` maps an
    element to its key and `xi` maps a key back to that representative, so
    pi(xi(x)) = x and xi(T) = e.
    """

    __slots__ = ("ambient", "subgroup", "keys", "_rep", "_key_index")

    def __init__(self, G: FinAbGroup, T: Subgroup):
        if T.ambient != G:
            raise GroupError("subgroup of a different group")
        self.ambient = G
        self.subgroup = T
        rep: dict = {}
        keys = []
        for e in G:
            key = min((e * t).residues for t in T)
            if key not in rep:
                rep[key] = GroupElement(G, key)
                keys.append(key)
        self.keys = tuple(sorted(keys))
        self._rep = rep
        self._key_index = {k: i for i, k in enumerate(self.keys)}

    def __len__(self) -> int:
        return len(self.keys)

    def pi(self, g: GroupElement) -> tuple:
        return min((g * t).residues for t in self.subgroup)

    def xi(self, key: tuple) -> GroupElement:
        return self._rep[key]

    def key_index(self, key: tuple) -> int:
        return self._key_index[key]

    def mul(self, x: tuple, y: tuple) -> tuple:
        return self.pi(self.xi(x) * self.xi(y))

    def inverse(self, x: tuple) -> tuple:
        return self.pi(self.xi(x).inv())

    def act(self, g: GroupElement, x: tuple) -> tuple:
        return self.pi(g * self.xi(x))

    def __repr__(self):
        return f"Quotient({self.ambient!r}/order-{self.subgroup.order}, {len(self.keys)} cosets)"


def quotient_with_section(G: FinAbGroup, T: Subgroup) -> QuotientWithSection:
    return QuotientWithSection(G, T)


def all_subgroups(G: FinAbGroup) -> Tuple[Subgroup, ...]:
    """Every subgroup, by closing the join lattice from cyclic subgroups."""
    cyclic = {subgroup_generated(G, [g]) for g in G}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        nxt = set()
        for H in frontier:
            for C in cyclic:
                J = subgroup_generated(G, list(H.elements) + list(C.elements))
                if J not in found:
                    found.add(J)
                    nxt.add(J)
        frontier = nxt
    return tuple(sorted(found, key=lambda H: (H.order, [e.residues for e in H.elements])))


@lru_cache(maxsize=None)
def _abelian_groups_upto(bound: int) -> tuple:
    out = []
    for order in range(1, bound + 1):
        for fs in _invariant_factorizations(order):
            out.append(tuple(fs))
    return tuple(out)


def _invariant_factorizations(n: int, max_last: Optional[int] = None):
    """All divisibility chains n_1 | ... | n_k with product n (n_k innermost)."""
    if n == 1:
        yield []
        return
    for d in range(2, n + 1):
        if n % d or (max_last is not None and max_last % d):
            continue
        for rest in _invariant_factorizations(n // d, d):
            yield rest + [d]


def abelian_groups_of_order_at_most(bound: int) -> Tuple[FinAbGroup, ...]:
    return tuple(FinAbGroup(fs) for fs in _abelian_groups_upto(bound))
