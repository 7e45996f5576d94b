"""Alternating bicharacters, quadratic forms, nice maps, Arf invariants.

Values are exact roots of unity (`UnitRoot`), with +-1 the generic case; the
unit-circle-valued case only occurs for central-complex division algebras.
"""

from __future__ import annotations

import itertools
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .groups import FinAbGroup, GroupElement, Subgroup, subgroup_generated
from .scalars import UnitRoot


class FormValidationError(ValueError):
    """Raised with a witness when a map fails to be quadratic/bilinear/nice."""


class SignMap:
    """A +-1 valued map on an explicit finite domain of group elements."""

    __slots__ = ("domain", "table")

    def __init__(self, domain: Iterable[GroupElement], table: Dict[tuple, int]):
        self.domain = tuple(sorted(domain))
        self.table = dict(table)
        for e in self.domain:
            v = self.table.get(e.residues)
            if v not in (1, -1):
                raise FormValidationError(f"sign map not total/valued in +-1 at {e}")

    @staticmethod
    def constant(domain: Iterable[GroupElement], value: int = 1) -> "SignMap":
        domain = tuple(domain)
        return SignMap(domain, {e.residues: value for e in domain})

    def __call__(self, g: GroupElement) -> int:
        return self.table[g.residues]

    def values(self) -> List[int]:
        return [self.table[e.residues] for e in self.domain]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SignMap)
            and self.domain == other.domain
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.domain, tuple(sorted(self.table.items()))))

    def __repr__(self):
        vals = {tuple(k): v for k, v in sorted(self.table.items())}
        return f"SignMap({vals})"


class Bicharacter:
    """Alternating bicharacter on a subgroup, stored as a full exact table."""

    __slots__ = ("domain", "modulus", "table")

    def __init__(self, domain: Subgroup, modulus: int, table: Dict[Tuple[tuple, tuple], UnitRoot]):
        self.domain = domain
        self.modulus = modulus
        self.table = table

    @staticmethod
    def from_generator_matrix(
        domain: Subgroup,
        gens: Sequence[GroupElement],
        gen_table: Dict[Tuple[int, int], UnitRoot],
        modulus: int,
    ) -> "Bicharacter":
        """Bilinear extension from values on an independent generating set.

        gen_table[(i, j)] for i < j; diagonal is forced to 1 and (j, i) to the inverse.
        """
        exps = _exponent_table(domain, gens)
        table: Dict[Tuple[tuple, tuple], UnitRoot] = {}
        m = len(gens)
        full = {}
        for i in range(m):
            for j in range(m):
                if i == j:
                    full[(i, j)] = UnitRoot.one(modulus)
                elif i < j:
                    full[(i, j)] = gen_table[(i, j)].rescaled(modulus)
                else:
                    full[(i, j)] = gen_table[(j, i)].rescaled(modulus).inv()
        for s in domain:
            es = exps[s.residues]
            for t in domain:
                et = exps[t.residues]
                acc = 0
                for i in range(m):
                    if not es[i]:
                        continue
                    for j in range(m):
                        if et[j]:
                            acc += full[(i, j)].k * es[i] * et[j]
                table[(s.residues, t.residues)] = UnitRoot(acc, modulus)
        return Bicharacter(domain, modulus, table)

    @staticmethod
    def trivial(domain: Subgroup, modulus: int = 2) -> "Bicharacter":
        one = UnitRoot.one(modulus)
        table = {
            (s.residues, t.residues): one for s in domain for t in domain
        }
        return Bicharacter(domain, modulus, table)

    def __call__(self, s: GroupElement, t: GroupElement) -> UnitRoot:
        return self.table[(s.residues, t.residues)]

    def sign(self, s: GroupElement, t: GroupElement) -> int:
        return self(s, t).as_sign()

    def is_sign_valued(self) -> bool:
        return all(v.is_real() for v in self.table.values())

    def validate(self) -> Optional[str]:
        """None if alternating + bimultiplicative, else a witness description."""
        for t in self.domain:
            if not self(t, t).is_one():
                return f"not alternating at {t}"
        for s, t in itertools.product(self.domain, repeat=2):
            if self(s, t) * self(t, s) != UnitRoot.one(self.modulus):
                return f"not skew at ({s},{t})"
        for s1, s2, t in itertools.product(self.domain, repeat=3):
            if self(s1 * s2, t) != self(s1, t) * self(s2, t):
                return f"not bimultiplicative at ({s1},{s2},{t})"
        return None

    def restrict(self, H: Subgroup) -> "Bicharacter":
        table = {
            (s.residues, t.residues): self.table[(s.residues, t.residues)]
            for s in H
            for t in H
        }
        return Bicharacter(H, self.modulus, table)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Bicharacter)
            and self.domain == other.domain
            and all(
                self.table[k] == other.table[k] for k in self.table
            )
        )

    def __hash__(self):
        return hash((self.domain, frozenset(self.table.items())))

    def __repr__(self):
        return f"Bicharacter(on order-{self.domain.order} subgroup, modulus {self.modulus})"


def _exponent_table(domain: Subgroup, gens: Sequence[GroupElement]) -> Dict[tuple, tuple]:
    """Exponent vector of every element of the domain over the generator basis."""
    G = domain.ambient
    orders = [g.order() for g in gens]
    out: Dict[tuple, tuple] = {}
    for es in itertools.product(*[range(o) for o in orders]):
        g = G.identity()
        for e, gen in zip(es, gens):
            g = g * gen**e
        out.setdefault(g.residues, es)
    if len(out) != domain.order:
        raise FormValidationError("generators do not generate the domain freely")
    return out


def abstract_basis(H: Subgroup) -> Tuple[GroupElement, ...]:
    """An independent generating set (basis) of the subgroup, deterministic.

    Greedy by decreasing order with lexicographic tie-break; independence is
    enforced by exact order bookkeeping.
    """
    G = H.ambient
    basis: List[GroupElement] = []
    span = subgroup_generated(G, [])
    while span.order < H.order:
        best = None
        for e in H.elements:
            if e in span:
                continue
            cand = subgroup_generated(G, list(basis) + [e])
            if cand.order != span.order * e.order():
                continue
            key = (-e.order(), e.residues)
            if best is None or key < best[0]:
                best = (key, e, cand)
        if best is None:
            raise FormValidationError("no independent basis extension found")
        basis.append(best[1])
        span = best[2]
    return tuple(basis)


def polar_form(mu: SignMap, T: Subgroup) -> Bicharacter:
    """beta(s,t) = mu(st) mu(s) mu(t); validates that mu is quadratic.

    Requires an elementary 2-group domain equal to T.
    """
    if not T.is_elementary_2():
        raise FormValidationError("polar form requires an elementary 2-group")
    if mu.domain != T.elements:
        raise FormValidationError("sign map domain must be the whole subgroup")
    if mu(T.ambient.identity()) != 1:
        raise FormValidationError("quadratic form must take value 1 at the identity")
    table = {}
    for s in T:
        for t in T:
            v = mu(s * t) * mu(s) * mu(t)
            table[(s.residues, t.residues)] = UnitRoot.from_sign(v, 2)
    beta = Bicharacter(T, 2, table)
    for s1, s2, t in itertools.product(T, repeat=3):
        lhs = beta(s1 * s2, t)
        rhs = beta(s1, t) * beta(s2, t)
        if lhs != rhs:
            raise FormValidationError(
                f"map is not quadratic: polar form fails bilinearity at ({s1},{s2},{t})"
            )
    return beta


def arf(mu: SignMap) -> Optional[int]:
    """The value mu takes more often; None on a tie."""
    vals = mu.values()
    plus = vals.count(1)
    minus = vals.count(-1)
    if plus > minus:
        return 1
    if minus > plus:
        return -1
    return None


def radical(beta: Bicharacter) -> Subgroup:
    T = beta.domain
    rad = [s for s in T if all(beta(s, t).is_one() for t in T)]
    return Subgroup(T.ambient, rad)


def nice_map_validate(mu: SignMap, T: Subgroup, K: Subgroup, beta: Bicharacter) -> dict:
    """Check that mu on T \\ K is a nice map: mu_u quadratic with polar form beta.

    Verifies the section for every u (the paper's "for some, and hence any" is a
    theorem; validation re-checks it).  Returns a report with the derived
    quadratic forms, keyed by u.
    """
    complement = [t for t in T if t not in K]
    if 2 * K.order != T.order:
        raise FormValidationError("K must have index 2 in T")
    if tuple(sorted(complement)) != mu.domain:
        raise FormValidationError("nice map domain must be T \\ K")
    derived = {}
    for u in sorted(complement):
        table = {t.residues: mu(u * t) * mu(u) for t in K}
        mu_u = SignMap(K.elements, table)
        try:
            pf = polar_form(mu_u, K)
        except FormValidationError as exc:
            raise FormValidationError(f"mu_u not quadratic for u={u}: {exc}") from exc
        if pf != beta:
            bad = next(
                (s, t)
                for s in K
                for t in K
                if pf(s, t) != beta(s, t)
            )
            raise FormValidationError(
                f"polar form of mu_u differs from beta for u={u} at {bad}"
            )
        derived[u.residues] = mu_u
    return {"ok": True, "derived_quadratic_forms": derived}


class ExtendedBeta:
    """The extension of beta from K x K to T x K (index-2 complex identity component)."""

    __slots__ = ("T", "K", "table")

    def __init__(self, T: Subgroup, K: Subgroup, table: Dict[Tuple[tuple, tuple], int]):
        self.T = T
        self.K = K
        self.table = table

    def __call__(self, u: GroupElement, t: GroupElement) -> int:
        return self.table[(u.residues, t.residues)]


def extend_beta(
    T: Subgroup,
    K: Subgroup,
    mu: SignMap,
    eta: SignMap,
    delta: int,
    beta: Bicharacter,
) -> Tuple[ExtendedBeta, SignMap]:
    """Extend beta to T x K and mu to all of T, per the two defining identities.

    beta(u,t) = eta(ut) eta(u) delta and beta(u,t) = mu(ut) mu(u) mu(t), where the
    second determines the extension of mu to K.  Disagreement between the two
    formulas (for any admissible u) is a descriptor inconsistency.
    """
    complement = sorted(t for t in T if t not in K)
    table: Dict[Tuple[tuple, tuple], int] = {}
    for s in K:
        for t in K:
            table[(s.residues, t.residues)] = beta(s, t).as_sign()
    for u in complement:
        for t in K:
            table[(u.residues, t.residues)] = eta(u * t) * eta(u) * delta
    ext = ExtendedBeta(T, K, table)
    u0 = complement[0]
    mu_ext_table = dict(mu.table)
    for t in K:
        mu_ext_table[t.residues] = ext(u0, t) * mu(u0 * t) * mu(u0)
    mu_ext = SignMap(T.elements, mu_ext_table)
    for u in complement:
        for t in K:
            if ext(u, t) != mu(u * t) * mu(u) * mu_ext(t):
                raise FormValidationError(
                    f"extended beta formulas disagree at (u={u}, t={t})"
                )
    # multiplicativity in the first variable
    for u in T:
        for v in T:
            for t in K:
                if ext(u * v, t) != ext(u, t) * ext(v, t):
                    raise FormValidationError(
                        f"extended beta not multiplicative in first slot at ({u},{v},{t})"
                    )
    return ext, mu_ext


def find_quadratic_with_polar(T: Subgroup, beta: Bicharacter) -> SignMap:
    """A deterministic nu with nu(st) = nu(s) nu(t) beta(s,t): +1 on a fixed basis."""
    if not T.is_elementary_2():
        raise FormValidationError("requires an elementary 2-group")
    basis = abstract_basis(T)
    exps = _exponent_table(T, basis)
    table = {}
    for t in T:
        et = exps[t.residues]
        v = 1
        for i in range(len(basis)):
            if not et[i]:
                continue
            for j in range(i + 1, len(basis)):
                if et[j]:
                    v *= beta(basis[i], basis[j]).as_sign()
        table[t.residues] = v
    nu = SignMap(T.elements, table)
    for s in T:
        for t in T:
            assert nu(s * t) == nu(s) * nu(t) * beta(s, t).as_sign()
    return nu


def find_hom_with_minus_at_f(K: Subgroup, f: GroupElement) -> SignMap:
    """A homomorphism K -> {+-1} with nu(f) = -1, chosen deterministically."""
    if f not in K:
        raise FormValidationError("f must lie in K")
    if not (f * f).is_identity() or f.is_identity():
        raise FormValidationError("f must have order 2")
    if f in K.squares():
        raise FormValidationError("no such homomorphism: f is a square in K")
    basis = abstract_basis(K)
    exps = _exponent_table(K, basis)
    ef = exps[f.residues]
    pick = None
    for i, g in enumerate(basis):
        if ef[i] % 2 == 1 and g.order() % 2 == 0:
            pick = i
            break
    if pick is None:
        raise FormValidationError("no character separates f (f is a square)")
    table = {}
    for t in K:
        et = exps[t.residues]
        table[t.residues] = -1 if et[pick] % 2 else 1
    nu = SignMap(K.elements, table)
    assert nu(f) == -1
    return nu


def symplectic_basis_elem2(T: Subgroup, beta: Bicharacter):
    """(pairs, radical_basis) for an alternating +-1 form on an elementary 2-group.

    Hyperbolic pairs (a_i, b_i) with beta(a_i, b_i) = -1, mutually orthogonal, plus
    a basis of the radical; picks are lexicographic so the result is reproducible.
    """
    G = T.ambient
    pairs: List[Tuple[GroupElement, GroupElement]] = []
    cur = T
    while True:
        nonrad = [
            t for t in cur.elements if any(not beta(t, s).is_one() for s in cur.elements)
        ]
        if not nonrad:
            break
        a = min(nonrad)
        b = min(s for s in cur.elements if not beta(a, s).is_one())
        pairs.append((a, b))
        comp = [
            t for t in cur.elements if beta(t, a).is_one() and beta(t, b).is_one()
        ]
        cur = Subgroup(G, comp)
    assert cur == radical(beta)
    rad_basis = abstract_basis(cur)
    return pairs, rad_basis


def symplectic_basis_general(T: Subgroup, beta: Bicharacter):
    """Symplectic pairs (a_i, b_i) with beta(a_i, b_i) = exp(2 pi i / n_i) primitive,
    for a nondegenerate alternating bicharacter on any finite abelian subgroup.
    """
    if radical(beta).order != 1:
        raise FormValidationError("bicharacter must be nondegenerate")
    pairs: List[Tuple[GroupElement, GroupElement, int]] = []
    cur = T
    cur_beta = beta
    while cur.order > 1:
        n = max(t.order() for t in cur.elements)
        a = min(t for t in cur.elements if t.order() == n)
        b = None
        for t in cur.elements:
            if cur_beta(a, t).order() == n:
                b = t
                break
        assert b is not None, "nondegeneracy guarantees a dual partner"
        # normalize so that beta(a, b) is exactly exp(2 pi i / n)
        r = cur_beta(a, b)
        m = (r.k * n) // r.n  # beta(a,b) = zeta_n^m with gcd(m, n) = 1
        minv = pow(m, -1, n)
        b = b**minv
        assert cur_beta(a, b) == UnitRoot(1, n)
        pairs.append((a, b, n))
        comp = [
            t
            for t in cur.elements
            if cur_beta(t, a).is_one() and cur_beta(t, b).is_one()
        ]
        cur = Subgroup(T.ambient, comp)
        cur_beta = Bicharacter(
            cur,
            beta.modulus,
            {
                (s.residues, t.residues): beta.table[(s.residues, t.residues)]
                for s in cur
                for t in cur
            },
        )
    return pairs


def quadratic_forms_with_polar(T: Subgroup, beta: Bicharacter) -> List[SignMap]:
    """Every quadratic form on the elementary 2-group T with the given polar form."""
    basis = abstract_basis(T)
    exps = _exponent_table(T, basis)
    out = []
    for vals in itertools.product((1, -1), repeat=len(basis)):
        table = {}
        for t in T:
            et = exps[t.residues]
            v = 1
            for i in range(len(basis)):
                if et[i]:
                    v *= vals[i]
                    for j in range(i + 1, len(basis)):
                        if et[j]:
                            v *= beta(basis[i], basis[j]).as_sign()
            table[t.residues] = v
        out.append(SignMap(T.elements, table))
    return out


def alternating_bicharacters_elem2(T: Subgroup) -> List[Bicharacter]:
    """Every alternating +-1 bicharacter on an elementary 2-group."""
    basis = abstract_basis(T)
    m = len(basis)
    idx_pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    out = []
    for vals in itertools.product((1, -1), repeat=len(idx_pairs)):
        gen_table = {
            ij: UnitRoot.from_sign(v, 2) for ij, v in zip(idx_pairs, vals)
        }
        out.append(Bicharacter.from_generator_matrix(T, basis, gen_table, 2))
    return out


def alternating_bicharacters_general(T: Subgroup) -> List[Bicharacter]:
    """Every alternating bicharacter on a finite abelian subgroup (any values)."""
    basis = abstract_basis(T)
    m = len(basis)
    modulus = 1
    for g in basis:
        modulus = modulus * g.order() // gcd(modulus, g.order())
    if modulus == 1:
        return [Bicharacter.trivial(T, 2)]
    idx_pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    choices = []
    for i, j in idx_pairs:
        d = gcd(basis[i].order(), basis[j].order())
        choices.append([UnitRoot(k * (modulus // d), modulus) for k in range(d)])
    out = []
    for vals in itertools.product(*choices):
        gen_table = dict(zip(idx_pairs, vals))
        out.append(Bicharacter.from_generator_matrix(T, basis, gen_table, modulus))
    return out
