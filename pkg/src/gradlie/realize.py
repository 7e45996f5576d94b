"""Faithful matrix models of the graded division algebras at their minimal size.

The algebra factors into 2x2 Pauli-type blocks (one per hyperbolic plane of the
commutation form), quaternion blocks, and a radical factor C or R x R; the
factors are absorbed one at a time through the classical isomorphisms
  H (x) H = M_4(R),   C (x) H = M_2(C),   C (x) C = C x C,
keeping exact rational / Gaussian / quaternion entries.  Split algebras
M_ell(D) x M_ell(D) are represented block-diagonally.  The hermitian matrix
of the involution is recovered by solving phi0-compatibility exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from .gda import CASE3, CASE4, GdaBasis, GdaDescriptor, ungraded_class
from .groups import GroupElement
from .linalg import (
    conj_transpose,
    inertia_hermitian,
    inertia_hermitian_float,
    kron,
    mat_eq,
    mat_eye,
    mat_is_zero,
    mat_mul,
    mat_scale,
    mat_sub,
    nullspace_rational,
    real_embedding,
)
from .scalars import CycQ, GaussQ, QuatQ, UnitRoot, conj

CATALOG_BOUND = 16


class RealizeError(ValueError):
    pass


def _coerce_entry(x, base: str):
    if base == "R":
        return Fraction(x) if isinstance(x, (int, Fraction)) else x
    if base == "C":
        return GaussQ.coerce(x) if isinstance(x, (int, Fraction, GaussQ)) else x
    if base == "H":
        return QuatQ.coerce(x)
    if base == "Cfloat":
        if isinstance(x, (int, Fraction)):
            return complex(x)
        if isinstance(x, GaussQ):
            return x.to_complex()
        return complex(x)
    raise RealizeError(base)


def _coerce_mat(A, base):
    return [[_coerce_entry(x, base) for x in row] for row in A]


def _one(base):
    return {"R": Fraction(1), "C": GaussQ(1), "H": QuatQ(1), "Cfloat": 1 + 0j}[base]


def _eye(n, base):
    o = _one(base)
    z = o - o
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def _embed_h_in_c2(q: QuatQ) -> list:
    """H -> M_2(C): z + w j -> [[z, w], [-conj(w), conj(z)]]."""
    z = GaussQ(q.a, q.b)
    w = GaussQ(q.c, q.d)
    return [[z, w], [-w.conj(), z.conj()]]


def _right_mult_matrix(q: QuatQ) -> list:
    """Matrix of x -> x * conj(q) on the real basis (1, i, j, k); q -> R_qbar is
    an algebra homomorphism commuting with all left multiplications."""
    cols = []
    qc = q.conj()
    for u in (QuatQ(1), QuatQ(0, 1), QuatQ(0, 0, 1), QuatQ(0, 0, 0, 1)):
        p = u * qc
        cols.append([p.a, p.b, p.c, p.d])
    return [[Fraction(cols[j][i]) for j in range(4)] for i in range(4)]


def _left_mult_matrix(q: QuatQ) -> list:
    cols = []
    for u in (QuatQ(1), QuatQ(0, 1), QuatQ(0, 0, 1), QuatQ(0, 0, 0, 1)):
        p = q * u
        cols.append([p.a, p.b, p.c, p.d])
    return [[Fraction(cols[j][i]) for j in range(4)] for i in range(4)]


class _State:
    """Accumulated realization during factor absorption."""

    def __init__(self):
        self.base = "R"
        self.size = 1
        self.pair = False
        self.images: Dict[object, list] = {}

    def _map_old(self, fn):
        self.images = {k: fn(v) for k, v in self.images.items()}

    def absorb(self, kind: str, new_gens: List[Tuple[object, object]]):
        if self.pair:
            raise RealizeError("cannot absorb factors after the split factor")
        if kind == "M2R":
            eye2 = _eye(2, self.base)
            self._map_old(lambda g: kron(g, eye2))
            eyeo = _eye(self.size, self.base)
            for name, h in new_gens:
                self.images[name] = kron(eyeo, _coerce_mat(h, self.base))
            self.size *= 2
        elif kind == "HH":
            if self.base == "R":
                self.base = "H"
                self._map_old(lambda g: _coerce_mat(g, "H"))
                for name, q in new_gens:
                    self.images[name] = mat_scale(q, _eye(self.size, "H"))
            elif self.base == "C":
                eye2 = _eye(2, "C")
                self._map_old(lambda g: kron(g, eye2))
                eyeo = _eye(self.size, "C")
                for name, q in new_gens:
                    self.images[name] = kron(eyeo, _embed_h_in_c2(q))
                self.size *= 2
            elif self.base == "H":
                # H (x) H = M_4(R): left entries become left-regular blocks,
                # the new factor acts by right multiplication with conjugate
                self.base = "R"

                def blow(g):
                    n = len(g)
                    out = [[Fraction(0)] * (4 * n) for _ in range(4 * n)]
                    for r in range(n):
                        for s in range(n):
                            blk = _left_mult_matrix(QuatQ.coerce(g[r][s]))
                            for a in range(4):
                                for b in range(4):
                                    out[4 * r + a][4 * s + b] = blk[a][b]
                    return out

                self._map_old(blow)
                for name, q in new_gens:
                    blk = _right_mult_matrix(q)
                    out = [[Fraction(0)] * (4 * self.size) for _ in range(4 * self.size)]
                    for r in range(self.size):
                        for a in range(4):
                            for b in range(4):
                                out[4 * r + a][4 * r + b] = blk[a][b]
                    self.images[name] = out
                self.size *= 4
            else:
                raise RealizeError("HH over float base unsupported")
        elif kind == "CC":
            if self.base == "R":
                self.base = "C"
                self._map_old(lambda g: _coerce_mat(g, "C"))
                for name, z in new_gens:
                    self.images[name] = mat_scale(GaussQ.coerce(z), _eye(self.size, "C"))
            elif self.base == "H":
                self.base = "C"
                self._map_old(
                    lambda g: _block_expand(g, _embed_h_in_c2, 2)
                )
                for name, z in new_gens:
                    self.images[name] = mat_scale(
                        GaussQ.coerce(z), _eye(2 * self.size, "C")
                    )
                self.size *= 2
            else:
                raise RealizeError("C-factor over complex base: center too large")
        elif kind == "RR":
            self.pair = True

            def dup(g):
                z = _one(self.base) - _one(self.base)
                n = len(g)
                out = [[z] * (2 * n) for _ in range(2 * n)]
                for r in range(n):
                    for s in range(n):
                        out[r][s] = g[r][s]
                        out[n + r][n + s] = g[r][s]
                return out

            self._map_old(dup)
            eyeo = _eye(self.size, self.base)
            for name, (c1, c2) in new_gens:
                blk = dup(eyeo)
                for r in range(self.size):
                    blk[r][r] = _coerce_entry(c1, self.base)
                    blk[self.size + r][self.size + r] = _coerce_entry(c2, self.base)
                self.images[name] = blk
            self.size *= 2
        else:
            raise RealizeError(f"unknown factor kind {kind}")


def _block_expand(g, embed, b):
    n = len(g)
    zero = GaussQ(0)
    out = [[zero] * (b * n) for _ in range(b * n)]
    for r in range(n):
        for s in range(n):
            blk = embed(QuatQ.coerce(g[r][s]))
            for a in range(b):
                for c in range(b):
                    out[b * r + a][b * s + c] = blk[a][c]
    return out


def _plane_factor(mu_a: int, mu_b: int):
    """2x2 or quaternion images for a hyperbolic pair with given squares."""
    sz = [[1, 0], [0, -1]]
    sx = [[0, 1], [1, 0]]
    j2 = [[0, 1], [-1, 0]]
    if (mu_a, mu_b) == (1, 1):
        return "M2R", sz, sx
    if (mu_a, mu_b) == (1, -1):
        return "M2R", sz, j2
    if (mu_a, mu_b) == (-1, 1):
        return "M2R", j2, sx
    return "HH", QuatQ(0, 1), QuatQ(0, 0, 1)


class MatrixRealization:
    def __init__(self, basis: GdaBasis, base: str, size: int, pair: bool, ell: int,
                 images: Dict[tuple, list], de_units: List[list], Lambda: Optional[list]):
        self.basis = basis
        self.base = base          # entry field of the realization
        self.size = size          # matrix size (2*ell when pair)
        self.pair = pair
        self.ell = ell            # size over the ungraded division algebra
        self.images = images      # residues -> image of X_t
        self.de_units = de_units  # images of the identity-component unit basis
        self.Lambda = Lambda

    def x(self, t: GroupElement) -> list:
        return self.images[t.residues]

    def rho_coeff(self, c) -> list:
        """Image of an identity-component coefficient."""
        n = self.size
        if isinstance(c, (int, Fraction)):
            return mat_scale(_coerce_entry(c, self.base), _eye(n, self.base))
        if isinstance(c, GaussQ):
            re = mat_scale(_coerce_entry(c.re, self.base), _eye(n, self.base))
            im = mat_scale(_coerce_entry(c.im, self.base), self.de_units[1])
            return [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(re, im)]
        if isinstance(c, QuatQ):
            acc = mat_scale(_coerce_entry(c.a, self.base), _eye(n, self.base))
            for coef, unit in zip((c.b, c.c, c.d), self.de_units[1:]):
                term = mat_scale(_coerce_entry(coef, self.base), unit)
                acc = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(acc, term)]
            return acc
        if isinstance(c, CycQ):
            if self.base == "Cfloat":
                return mat_scale(c.to_complex(), _eye(n, self.base))
            # Gaussian cyclotomic: modulus divides 4
            z = c.to_complex()
            g = GaussQ(Fraction(round(z.real * 2), 2), Fraction(round(z.imag * 2), 2))
            assert abs(g.to_complex() - z) < 1e-9
            return self.rho_coeff(g)
        raise RealizeError(f"cannot realize coefficient {c!r}")

    def rho(self, elem: Dict[tuple, object]) -> list:
        """Image of a division-algebra element {residues: coefficient}."""
        n = self.size
        o = _one(self.base)
        acc = [[o - o] * n for _ in range(n)]
        for t_res, c in elem.items():
            term = mat_mul(self.rho_coeff(c), self.images[t_res])
            acc = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(acc, term)]
        return acc


def build_matrix_realization(basis: GdaBasis) -> MatrixRealization:
    d = basis.descriptor
    if d.T.order > CATALOG_BOUND:
        raise RealizeError(f"support order {d.T.order} exceeds catalog bound {CATALOG_BOUND}")
    delta_kind, ell, pair = ungraded_class(d)
    if d.case == CASE3:
        real = _realize_central_complex(basis, ell)
    else:
        real = _realize_elem2(basis, ell, pair)
    assert (not real.pair) == (not pair)
    if real.base in ("R", "C", "H") and not pair:
        want = {"R": "R", "C": "C", "H": "H"}[delta_kind]
        if real.base != want and not (real.base == "Cfloat"):
            raise RealizeError(f"realized base {real.base} differs from expected {want}")
        assert real.size == ell
    _solve_lambda(real)
    return real


def _realize_elem2(basis: GdaBasis, ell: int, pair: bool) -> MatrixRealization:
    d = basis.descriptor
    st = _State()
    factors = []  # (kind, [(name, data), ...])
    de_names: List[object] = []
    if d.delta0 == "H":
        factors.append(("HH", [(("d0", 1), QuatQ(0, 1)), (("d0", 2), QuatQ(0, 0, 1))]))
        de_names = [("d0", 1), ("d0", 2)]
    if d.delta0 == "C":
        u0 = basis.extras["u0"]
        mu_u0 = d.mu(u0)
        if mu_u0 == 1:
            factors.append(
                ("M2R", [(("d0", 1), [[0, 1], [-1, 0]]), (("g", u0.residues), [[1, 0], [0, -1]])])
            )
        else:
            factors.append(("HH", [(("d0", 1), QuatQ(0, 1)), (("g", u0.residues), QuatQ(0, 0, 1))]))
        de_names = [("d0", 1)]
    pairs = basis.extras["pairs"]
    rad_basis = basis.extras["rad_basis"]
    mu_S = basis.extras["mu_prime"] if d.delta0 == "C" else d.mu
    for a, b in pairs:
        kind, im_a, im_b = _plane_factor(mu_S(a), mu_S(b))
        factors.append((kind, [(("g", a.residues), im_a), (("g", b.residues), im_b)]))
    for r in rad_basis:
        if mu_S(r) == -1:
            factors.append(("CC", [(("g", r.residues), GaussQ(0, 1))]))
        else:
            factors.append(("RR", [(("g", r.residues), (1, -1))]))
    # splitting factor must come last
    factors.sort(key=lambda f: f[0] == "RR")
    for kind, gens in factors:
        st.absorb(kind, gens)

    # identity-component units
    eye = _eye(st.size, st.base)
    if d.delta0 == "R":
        de_units = [eye]
    elif d.delta0 == "C":
        de_units = [eye, st.images[("d0", 1)]]
    else:
        iu, ju = st.images[("d0", 1)], st.images[("d0", 2)]
        de_units = [eye, iu, ju, mat_mul(iu, ju)]

    images: Dict[tuple, list] = {}
    if d.delta0 in ("R", "H"):
        gens = basis.extras["gens"]
        for t in d.T:
            img = eye
            for g in gens:
                if _exp_of(t, g, gens, d):
                    img = mat_mul(img, st.images[("g", g.residues)])
            images[t.residues] = img
    else:
        nf = basis.extras["normal_form"]
        gensK = basis.extras["gens"]
        u0 = basis.extras["u0"]
        i_img = st.images[("d0", 1)]
        for t in d.T:
            z, e, v = nf[t.residues]
            img = _root_power(i_img, eye, z)
            if e:
                img = mat_mul(img, st.images[("g", u0.residues)])
            vk = GroupElement(d.ambient, v)
            for g in gensK:
                if _exp_of(vk, g, gensK, d):
                    img = mat_mul(img, st.images[("g", g.residues)])
            images[t.residues] = img
    return MatrixRealization(basis, st.base, st.size, st.pair, ell, images, de_units, None)


def _exp_of(t: GroupElement, g: GroupElement, gens, d) -> int:
    # exponent of generator g in the ordered-word decomposition of t
    exps = _word_exponents(t, gens, d)
    return exps[gens.index(g)]


def _word_exponents(t: GroupElement, gens, d) -> tuple:
    # elementary 2-group: solve t = prod gens^e by enumeration (cached small)
    key = ("_wordexp", tuple(g.residues for g in gens))
    cache = d.__dict__.setdefault("_wordexp_cache", {})
    if key not in cache:
        table = {}
        import itertools as _it

        for es in _it.product((0, 1), repeat=len(gens)):
            x = d.ambient.identity()
            for e, g in zip(es, gens):
                if e:
                    x = x * g
            table.setdefault(x.residues, es)
        cache[key] = table
    return cache[key][t.residues]


def _root_power(i_img, eye, z: UnitRoot):
    k = (z.k * 4) // z.n  # z in mu_4
    assert z.k * 4 % z.n == 0
    out = eye
    for _ in range(k % 4):
        out = mat_mul(out, i_img)
    return out


def _realize_central_complex(basis: GdaBasis, ell: int) -> MatrixRealization:
    d = basis.descriptor
    spairs = basis.extras["spairs"]
    coords = basis.extras["coords"]
    M = basis.modulus
    base = "C" if M in (1, 2, 4) else "Cfloat"

    def root_entry(k: int, n: int):
        r = UnitRoot(k, n)
        return r.to_gauss() if base == "C" else r.to_complex()

    # clock and shift per symplectic pair
    mats = []
    for _, _, n in spairs:
        clock = [[root_entry(i, n) if i == j else _one(base) - _one(base) for j in range(n)] for i in range(n)]
        shift = [
            [_one(base) if i == (j + 1) % n else _one(base) - _one(base) for j in range(n)]
            for i in range(n)
        ]
        mats.append((clock, shift, n))

    images: Dict[tuple, list] = {}
    scal = basis.extras["scalar_of_t"]
    for t in d.T:
        es = coords[t.residues]
        img = None
        for p, (clock, shift, n) in enumerate(mats):
            x, y = es[2 * p], es[2 * p + 1]
            m = _mat_pow(clock, x, base)
            m = mat_mul(m, _mat_pow(shift, y, base))
            img = m if img is None else kron(img, m)
        if img is None:
            img = _eye(1, base)
        z = scal[t.residues]
        zc = root_entry(z.k, z.n)
        images[t.residues] = mat_scale(zc, img)
    eye = _eye(ell, base)
    i_unit = mat_scale(root_entry(1, 4), eye)
    return MatrixRealization(basis, base, ell, False, ell, images, [eye, i_unit], None)


def _case3_scalars(basis: GdaBasis) -> Dict[tuple, UnitRoot]:
    """X_t = scalar(t) * (clock/shift monomial); recovered from the table by
    multiplying out the monomial against the generator images symbolically."""
    d = basis.descriptor
    spairs = basis.extras["spairs"]
    coords = basis.extras["coords"]
    M = basis.modulus
    out: Dict[tuple, UnitRoot] = {}
    for t in d.T:
        es = coords[t.residues]
        # X_t = scal * prod A_p^x B_p^y; compute scal by reducing the word
        # against the lambda table: start from X_e = 1 and multiply generators
        acc_root = UnitRoot.one(M)
        cur = d.ambient.identity()
        for p, (a, b, n) in enumerate(spairs):
            for _ in range(es[2 * p]):
                acc_root = acc_root * basis.lam_root(cur, a).inv()
                cur = cur * a
            for _ in range(es[2 * p + 1]):
                acc_root = acc_root * basis.lam_root(cur, b).inv()
                cur = cur * b
        # acc_root now carries prod lam^{-1}; X_t = (prod lam(..)) * ... so that
        # X(word in order) = lam-chain * X_t, hence scalar = chain^{-1} relative
        # to monomial images; generator images are the monomials themselves
        out[t.residues] = acc_root
    return out


def _mat_pow(m, k, base):
    out = _eye(len(m), base)
    for _ in range(k):
        out = mat_mul(out, m)
    return out


def _solve_lambda(real: MatrixRealization) -> None:
    """Solve Lambda X = eta(X^*) constraints exactly; None for split algebras."""
    if real.pair:
        real.Lambda = None
        return
    basis = real.basis
    d = basis.descriptor
    if real.base == "Cfloat":
        real.Lambda = _solve_lambda_float(real)
        return
    n = real.size
    base = real.base
    units = {"R": [Fraction(1)], "C": [GaussQ(1), GaussQ(0, 1)], "H": [QuatQ(1), QuatQ(0, 1), QuatQ(0, 0, 1), QuatQ(0, 0, 0, 1)]}[base]
    unknowns = [(r, s, u) for r in range(n) for s in range(n) for u in range(len(units))]
    constraints = []  # generator image, involution image of the generator
    for t in d.T:
        g = real.images[t.residues]
        constraints.append((g, mat_scale(_coerce_entry(basis.eta(t), base), g)))
    for idx, u in enumerate(real.de_units[1:], start=1):
        constraints.append((u, mat_scale(_coerce_entry(-1, base), u)))
    rows = []
    row_index = []
    cols = []
    for m, (rr, ss, uu) in enumerate(unknowns):
        B = [[_one(base) - _one(base)] * n for _ in range(n)]
        B[rr][ss] = units[uu]
        col_entries = []
        for g, phig in constraints:
            expr = mat_sub(mat_mul(conj_transpose(g), B), mat_mul(B, phig))
            emb, _ = real_embedding(expr)
            col_entries.extend(x for row in emb for x in row)
        cols.append(col_entries)
    A = [[cols[m][i] for m in range(len(unknowns))] for i in range(len(cols[0]))]
    null = nullspace_rational(A)
    if not null:
        raise RealizeError("no invariant hermitian structure found")
    for vec in null:
        L = [[_one(base) - _one(base)] * n for _ in range(n)]
        for m, (rr, ss, uu) in enumerate(unknowns):
            if vec[m]:
                L[rr][ss] = L[rr][ss] + _coerce_entry(vec[m], base) * units[uu]
        H = [[(L[r][s] + conj(L[s][r])) * Fraction(1, 2) for s in range(n)] for r in range(n)]
        if mat_is_zero(H):
            iu = GaussQ(0, 1) if base == "C" else None
            if iu is None:
                continue
            H = [[(iu * L[r][s] + conj(iu * L[s][r])) * Fraction(1, 2) for s in range(n)] for r in range(n)]
            if mat_is_zero(H):
                continue
        try:
            p, q, z = inertia_hermitian(H)
        except Exception:
            continue
        if z == 0:
            real.Lambda = H
            return
    raise RealizeError("no invertible hermitian solution for Lambda")


def _solve_lambda_float(real: MatrixRealization) -> Optional[np.ndarray]:
    basis = real.basis
    d = basis.descriptor
    n = real.size
    cons = []
    for t in d.T:
        g = np.array(real.images[t.residues], dtype=complex)
        cons.append((g, basis.eta(t) * g))
    rows = []
    for g, phig in cons:
        # X^* L - L phi(X) = 0 as linear map on vec(L)
        A = np.kron(g.conj().T, np.eye(n)) - np.kron(np.eye(n), phig.T)
        rows.append(A)
    A = np.vstack(rows)
    _, s, vh = np.linalg.svd(A)
    null_mask = np.abs(np.concatenate([s, np.zeros(vh.shape[0] - len(s))])) < 1e-9
    for idx in range(vh.shape[0] - 1, -1, -1):
        if idx < len(s) and s[idx] > 1e-9:
            break
        v = vh[idx].conj()
        L = v.reshape(n, n)
        H = (L + L.conj().T) / 2
        if np.linalg.norm(H) < 1e-9:
            H = (1j * L + (1j * L).conj().T) / 2
        if np.linalg.norm(H) > 1e-9 and abs(np.linalg.det(H)) > 1e-9:
            return H
    raise RealizeError("no invertible hermitian float solution for Lambda")


def involution_signature_table(real: MatrixRealization) -> Dict[tuple, int]:
    """|signature(Lambda X_t)| when hermitian, else 0, for every t in T.

    Uses the paper scaling of the basis elements (delta-twist on K applied)."""
    basis = real.basis
    d = basis.descriptor
    if real.pair or d.case == CASE4:
        raise RealizeError("signature table undefined for split algebras")
    out: Dict[tuple, int] = {}
    for t in d.T:
        img = real.images[t.residues]
        u = basis.paper_unit(t)
        if not u.is_one():
            img = mat_mul(real.rho_coeff(GaussQ(0, 1) if u.k * 4 == u.n else GaussQ(0, -1)), img)
        if real.base == "Cfloat":
            A = np.array(real.Lambda, dtype=complex) @ np.array(img, dtype=complex)
            if np.linalg.norm(A - A.conj().T) > 1e-9:
                out[t.residues] = 0
                continue
            p, q, z = inertia_hermitian_float(A)
            out[t.residues] = abs(p - q)
            continue
        A = mat_mul(real.Lambda, img)
        if not mat_eq(A, conj_transpose(A)):
            out[t.residues] = 0
            continue
        p, q, z = inertia_hermitian(A)
        assert z == 0
        out[t.residues] = abs(p - q)
    return out
