"""Ext^1 between representations, short exact sequences and universal extensions.

Two models of ``Ext^1(M, N)`` are provided:

* ``"arrow"``: for quivers without relations (any size path algebra), the
  cokernel of ``delta(X)_a = N_a X_v - X_u M_a`` from vertex maps to arrow
  cochains ``c_a: M_v -> N_u``;
* ``"syzygy"``: for finite-dimensional bound quivers, ``Hom(Omega M, N)``
  modulo maps that extend to the projective cover.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .algebra import PathAlgebra, build_algebra
from .linalg import Field, Matrix, cokernel_projection, solve, vstack, hstack
from .rep import (Rep, RepMap, direct_sum, hom_space, kernel, cokernel, sum_injection, sum_projection,
                  map_into_sum, syzygy, right_inverse, factor_through_mono)


class HomologyError(ValueError):
    pass


@dataclass(eq=False)
class SES:
    """``0 -> sub --i--> mid --p--> quot -> 0``."""

    i: RepMap
    p: RepMap

    @property
    def sub(self) -> Rep:
        return self.i.source

    @property
    def mid(self) -> Rep:
        return self.i.target

    @property
    def quot(self) -> Rep:
        return self.p.target

    def check(self) -> bool:
        self.i.validate()
        self.p.validate()
        if not (self.p @ self.i).is_zero():
            return False
        if not self.i.is_mono() or not self.p.is_epi():
            return False
        return all(s + q == m for s, q, m in zip(self.sub.dims, self.quot.dims, self.mid.dims))


def _default_mode(base) -> str:
    return "syzygy" if base.relations else "arrow"


class Ext1Space:
    """``Ext^1(m, n)`` with explicit cocycles, extensions and class extraction."""

    def __init__(self, m: Rep, n: Rep, mode: str | None = None, alg: PathAlgebra | None = None):
        if m.base != n.base:
            raise HomologyError("modules over different quivers")
        self.m, self.n = m, n
        self.field = m.field
        self.mode = mode or _default_mode(m.base)
        if self.mode == "arrow":
            if m.base.relations:
                raise HomologyError("arrow model needs a quiver without relations")
            self._setup_arrow()
        elif self.mode == "syzygy":
            self.alg = alg or build_algebra(m.base)
            self._setup_syzygy()
        else:
            raise HomologyError(f"unknown Ext model {self.mode!r}")
        self.dim = self._q.nrows
        # cochains whose classes are the standard basis
        sec = right_inverse(self._q) if self.dim else Matrix.zeros(self.field, self._q.ncols, 0)
        self._section = sec

    # arrow model --------------------------------------------------------
    def _setup_arrow(self):
        m, n, f = self.m, self.n, self.field
        q = m.quiver
        self._c1_layout = []
        o = 0
        for a in q.arrows:
            r, c = n.dims[a.source], m.dims[a.target]
            self._c1_layout.append((o, r, c))
            o += r * c
        n1 = o
        c0 = []
        o = 0
        for v in range(q.n):
            c0.append((o, n.dims[v], m.dims[v]))
            o += n.dims[v] * m.dims[v]
        cols = []
        for v in range(q.n):
            ov, r, c = c0[v]
            for i in range(r):
                for j in range(c):
                    X = [Matrix.zeros(f, n.dims[w], m.dims[w]) for w in range(q.n)]
                    rows = [[f.zero] * c for _ in range(r)]
                    rows[i][j] = f.one
                    X[v] = Matrix(f, r, c, rows)
                    cols.append(self._flatten_arrow(self._delta(X)))
        self._delta_matrix = Matrix.from_columns(f, cols, n1) if cols else Matrix.zeros(f, n1, 0)
        self._q, _ = cokernel_projection(self._delta_matrix)
        self._n1 = n1

    def _delta(self, X):
        m, n = self.m, self.n
        return [n.maps[k] @ X[a.target] - X[a.source] @ m.maps[k] for k, a in enumerate(m.quiver.arrows)]

    def _flatten_arrow(self, c) -> list:
        return [x for b in c for r in b.rows for x in r]

    def _unflatten_arrow(self, vec) -> list:
        f = self.field
        out = []
        for o, r, c in self._c1_layout:
            out.append(Matrix(f, r, c, [vec[o + i * c:o + (i + 1) * c] for i in range(r)]))
        return out

    # syzygy model -------------------------------------------------------
    def _setup_syzygy(self):
        m, n, f = self.m, self.n, self.field
        om, inc, pc = syzygy(m, self.alg)
        self.omega, self.omega_inc, self.cover = om, inc, pc
        self._H = hom_space(om, n)
        Hp = hom_space(pc.rep, n)
        cols = [self._H.coords(h @ inc) for h in Hp.basis]
        D = Matrix.from_columns(f, cols, self._H.dim) if cols else Matrix.zeros(f, self._H.dim, 0)
        self._delta_matrix = D
        self._q, _ = cokernel_projection(D)

    # common API ---------------------------------------------------------
    def cochain_vector(self, c) -> list:
        if self.mode == "arrow":
            return self._flatten_arrow(c)
        return self._H.coords(c)

    def cocycle_from_vector(self, vec):
        if self.mode == "arrow":
            return self._unflatten_arrow(vec)
        return self._H.element(vec)

    def coords(self, c) -> list:
        """Class of a cocycle in the standard basis of this Ext space."""
        return self._q.apply(self.cochain_vector(c))

    def representative(self, coords: Sequence):
        vec = self._section.apply(list(coords)) if self.dim else [self.field.zero] * self._q.ncols
        return self.cocycle_from_vector(vec)

    def basis_cocycles(self) -> list:
        f = self.field
        return [self.representative([f.one if i == j else f.zero for i in range(self.dim)])
                for j in range(self.dim)]

    def is_coboundary(self, c) -> bool:
        return all(x == 0 for x in self.coords(c))

    def zero_cocycle(self):
        return self.cocycle_from_vector([self.field.zero] * self._q.ncols)

    def extension(self, coords_or_cocycle) -> SES:
        c = coords_or_cocycle
        if isinstance(c, (list, tuple)) and (not c or not isinstance(c[0], Matrix)):
            c = self.representative(c)
        if self.mode == "arrow":
            return extension_from_arrow_cocycle(self.m, self.n, c)
        return extension_from_syzygy_cocycle(self, c)

    def class_of_ses(self, ses: SES) -> list:
        if ses.sub.dims != self.n.dims or ses.quot.dims != self.m.dims:
            raise HomologyError("sequence ends do not match this Ext space")
        if self.mode == "arrow":
            return self.coords(_arrow_cocycle_of_ses(ses, self.m, self.n))
        return self.coords(_syzygy_cocycle_of_ses(self, ses))

    # functoriality ------------------------------------------------------
    def pushforward_cocycle(self, g: RepMap, c):
        """Cocycle for ``g_* c`` (``g: n -> n'``)."""
        if self.mode == "arrow":
            return [g.blocks[a.source] @ ca for a, ca in zip(self.m.quiver.arrows, c)]
        return g @ c

    def pullback_cocycle(self, h: RepMap, c, other: "Ext1Space"):
        """Cocycle in ``other = Ext^1(m', n)`` for ``h^* c`` (``h: m' -> m``)."""
        if self.mode == "arrow":
            return [ca @ h.blocks[a.target] for a, ca in zip(self.m.quiver.arrows, c)]
        # lift h to covers, restrict to syzygies
        lift = lift_to_cover(h, other.cover, self.cover)
        om_map = factor_through_mono(lift @ other.omega_inc, self.omega_inc)
        return c @ om_map


def ext1(m: Rep, n: Rep, mode: str | None = None, alg: PathAlgebra | None = None) -> Ext1Space:
    return Ext1Space(m, n, mode, alg)


@dataclass
class ExtClass:
    """An element of ``space`` given by its coordinates."""

    space: Ext1Space
    coords: list

    def __eq__(self, other):
        return (isinstance(other, ExtClass) and self.space.m == other.space.m
                and self.space.n == other.space.n and list(self.coords) == list(other.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def extension_from_class(E: Ext1Space, coords: Sequence) -> SES:
    if len(coords) != E.dim:
        raise HomologyError(f"expected {E.dim} coordinates, got {len(coords)}")
    return E.extension(list(coords))


def class_of_ses(E: Ext1Space, ses: SES) -> ExtClass:
    if not ses.check():
        raise HomologyError("sequence is not exact")
    return ExtClass(E, E.class_of_ses(ses))


def yoneda_compose(first, second, result_space: Ext1Space | None = None) -> ExtClass:
    """``g o x`` (pushforward along a map ``g``) or ``x o h`` (pullback along ``h``)."""
    if isinstance(first, RepMap) and isinstance(second, ExtClass):
        g, x = first, second
        if g.source != x.space.n:
            raise HomologyError("map does not start at the extension's left end")
        out = result_space or ext1(x.space.m, g.target, x.space.mode, getattr(x.space, "alg", None))
        c = x.space.pushforward_cocycle(g, x.space.representative(x.coords))
        return ExtClass(out, out.coords(c))
    if isinstance(first, ExtClass) and isinstance(second, RepMap):
        x, h = first, second
        if h.target != x.space.m:
            raise HomologyError("map does not end at the extension's right end")
        out = result_space or ext1(h.source, x.space.n, x.space.mode, getattr(x.space, "alg", None))
        c = x.space.pullback_cocycle(h, x.space.representative(x.coords), out)
        return ExtClass(out, out.coords(c))
    raise HomologyError("yoneda_compose expects (map, class) or (class, map)")


def lift_to_cover(h: RepMap, src_cover, tgt_cover) -> RepMap:
    """A map ``P(m') -> P(m)`` of projective covers over ``h: m' -> m``."""
    images = []
    for r, i in enumerate(src_cover.free.tops):
        want = h.blocks[i].apply(src_cover.images[r])
        y, _ = solve(tgt_cover.cover.blocks[i], Matrix(h.field, len(want), 1, [[w] for w in want]))
        if y is None:
            raise HomologyError("cover is not surjective")
        images.append(y.column(0))
    return src_cover.free.map_to(tgt_cover.rep, images)


def extension_from_arrow_cocycle(m: Rep, n: Rep, c: Sequence[Matrix]) -> SES:
    f = m.field
    q = m.quiver
    dims = [n.dims[v] + m.dims[v] for v in range(q.n)]
    maps = []
    for k, a in enumerate(q.arrows):
        u, v = a.source, a.target
        top = hstack(f, [n.maps[k], c[k]], n.dims[u])
        bot = hstack(f, [Matrix.zeros(f, m.dims[u], n.dims[v]), m.maps[k]], m.dims[u])
        maps.append(vstack(f, [top, bot], dims[v]))
    e = Rep(m.base, dims, maps, check=False)
    i = RepMap(n, e, tuple(vstack(f, [Matrix.identity(f, n.dims[v]), Matrix.zeros(f, m.dims[v], n.dims[v])],
                                  n.dims[v]) for v in range(q.n)))
    p = RepMap(e, m, tuple(hstack(f, [Matrix.zeros(f, m.dims[v], n.dims[v]), Matrix.identity(f, m.dims[v])],
                                  m.dims[v]) for v in range(q.n)))
    return SES(i, p)


def _arrow_cocycle_of_ses(ses: SES, m: Rep, n: Rep) -> list:
    q = m.quiver
    e = ses.mid
    s = [right_inverse(b) if b.nrows else Matrix.zeros(m.field, e.dims[v], 0)
         for v, b in enumerate(ses.p.blocks)]
    out = []
    for k, a in enumerate(q.arrows):
        u, v = a.source, a.target
        diff = e.maps[k] @ s[v] - s[u] @ m.maps[k]
        x, _ = solve(ses.i.blocks[u], diff)
        if x is None:
            raise HomologyError("sequence is not exact")
        out.append(x)
    return out


def extension_from_syzygy_cocycle(E: Ext1Space, g: RepMap) -> SES:
    """Pushout of ``0 -> Omega -> P -> m -> 0`` along ``g: Omega -> n``."""
    f = E.field
    n, P = E.n, E.cover.rep
    parts = [n, P]
    total = direct_sum(parts)
    # Omega -> n + P, x -> (g x, -inc x)
    phi = map_into_sum([g, -E.omega_inc], total)
    mid, proj = cokernel(phi)
    i = proj @ sum_injection(parts, total, 0)
    # (0, cover): n + P -> m kills the image of phi
    pbar = RepMap(total, E.m, tuple(hstack(f, [Matrix.zeros(f, E.m.dims[v], n.dims[v]), E.cover.cover.blocks[v]],
                                          E.m.dims[v]) for v in range(len(n.dims))))
    from .rep import factor_through_epi
    p = factor_through_epi(pbar, proj)
    return SES(i, p)


def _syzygy_cocycle_of_ses(E: Ext1Space, ses: SES) -> RepMap:
    pc = E.cover
    images = []
    for r, i in enumerate(pc.free.tops):
        want = pc.images[r]
        y, _ = solve(ses.p.blocks[i], Matrix(E.field, len(want), 1, [[w] for w in want]))
        if y is None:
            raise HomologyError("sequence is not exact (p not surjective)")
        images.append(y.column(0))
    h = pc.free.map_to(ses.mid, images)
    return factor_through_mono(h @ E.omega_inc, ses.i)


def baer_sum(s1: SES, s2: SES) -> SES:
    """Baer sum of two extensions of ``m`` by ``n``."""
    f = s1.sub.field
    m, n = s1.quot, s1.sub
    nv = len(m.dims)
    # pullback E1 x_m E2
    parts = [s1.mid, s2.mid]
    tot = direct_sum(parts)
    diff = RepMap(tot, m, tuple(hstack(f, [s1.p.blocks[v], -s2.p.blocks[v]], m.dims[v]) for v in range(nv)))
    pb, pb_inc = kernel(diff)
    # quotient by antidiagonal {(i x, -i x)}
    anti = map_into_sum([s1.i, -s2.i], tot)
    anti_pb = factor_through_mono(anti, pb_inc)
    mid, proj = cokernel(anti_pb)
    diag_in = map_into_sum([s1.i, RepMap.zero(n, s2.mid)], tot)
    i = proj @ factor_through_mono(diag_in, pb_inc)
    p1 = s1.p @ sum_projection(parts, tot, 0) @ pb_inc
    from .rep import factor_through_epi
    p = factor_through_epi(p1, proj)
    return SES(i, p)


# universal extension and truncation tower ------------------------------------

@dataclass
class UniversalExtension:
    ses: SES
    simples: list
    multiplicities: list
    ext_spaces: list
    total_space: Ext1Space

    @property
    def middle(self) -> Rep:
        return self.ses.mid

    @property
    def T(self) -> Rep:
        return self.ses.sub


def universal_extension(p: Rep, simples: Sequence[Rep], mode: str | None = None,
                        alg: PathAlgebra | None = None) -> UniversalExtension:
    """``0 -> T -> P' -> p -> 0`` with ``T = sum S_i^(dim Ext^1(p, S_i))``."""
    f = p.field
    spaces = [ext1(p, s, mode, alg) for s in simples]
    mults = [E.dim for E in spaces]
    summands = []
    for s, d in zip(simples, mults):
        summands.extend([s] * d)
    T = direct_sum(summands, p.base)
    ET = ext1(p, T, spaces[0].mode if spaces else mode, alg)
    cocycles = []
    for E in spaces:
        cocycles.extend(E.basis_cocycles())
    if ET.mode == "arrow":
        c = []
        for k, a in enumerate(p.quiver.arrows):
            blocks = [cc[k] for cc in cocycles]
            c.append(vstack(f, blocks, p.dims[a.target]) if blocks else Matrix.zeros(f, 0, p.dims[a.target]))
        ses = ET.extension(c)
    else:
        om = ET.omega
        if cocycles:
            g = RepMap(om, T, tuple(vstack(f, [cc.blocks[v] for cc in cocycles], om.dims[v])
                                    for v in range(len(om.dims))))
        else:
            g = RepMap.zero(om, T)
        ses = ET.extension(g)
    return UniversalExtension(ses, list(simples), mults, spaces, ET)


def cocycle_of_ses(E: Ext1Space, ses: SES):
    """A cocycle (not just a class) read off from the sequence."""
    if E.mode == "arrow":
        return _arrow_cocycle_of_ses(ses, E.m, E.n)
    return _syzygy_cocycle_of_ses(E, ses)


def connecting_map_matrix(ue: UniversalExtension, s_index: int) -> Matrix:
    """Matrix of ``Hom(T, S) -> Ext^1(p, S)``, ``phi -> phi_* [universal]``."""
    S = ue.simples[s_index]
    ES = ue.ext_spaces[s_index]
    ET = ue.total_space
    c = cocycle_of_ses(ET, ue.ses)
    H = hom_space(ue.T, S)
    cols = [ES.coords(ET.pushforward_cocycle(phi, c)) for phi in H.basis]
    return Matrix.from_columns(S.field, cols, ES.dim) if cols else Matrix.zeros(S.field, ES.dim, 0)


def check_universal(ue: UniversalExtension) -> bool:
    for k in range(len(ue.simples)):
        M = connecting_map_matrix(ue, k)
        if M.nrows != M.ncols or M.rank() != M.nrows:
            return False
    return True


@dataclass
class StructureAlgebra:
    """Finite-dimensional algebra given by structure constants ``table[i][j] = coords(b_i b_j)``."""

    field: Field
    table: list
    unit: list

    @property
    def dim(self) -> int:
        return len(self.unit)

    def mul(self, x, y) -> list:
        f = self.field
        out = [f.zero] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in enumerate(self.table[i][j]):
                    if c:
                        out[k] = f(out[k] + a * b * c)
        return out

    def power(self, x, e: int) -> list:
        r = list(self.unit)
        for _ in range(e):
            r = self.mul(r, x)
        return r

    def left_matrix(self, x) -> Matrix:
        f = self.field
        cols = [self.mul(x, [f.one if k == j else f.zero for k in range(self.dim)]) for j in range(self.dim)]
        return Matrix.from_columns(f, cols, self.dim)


def endomorphism_algebra(m: Rep) -> tuple[StructureAlgebra, object]:
    """``End(m)`` with multiplication ``b_i * b_j = b_i o b_j``."""
    H = hom_space(m, m)
    f = m.field
    table = [[H.coords(bi @ bj) for bj in H.basis] for bi in H.basis]
    unit = H.coords(RepMap.identity(m))
    return StructureAlgebra(f, table, unit), H


def truncation_tower(sigma: Sequence[Rep], l: int, mode: str | None = None, alg=None) -> list:
    """``P_0 = sum sigma``, ``P_{k+1}`` the universal extension of ``P_k`` by ``sigma``."""
    P = direct_sum(list(sigma))
    tower = [P]
    for _ in range(l):
        ue = universal_extension(P, sigma, mode, alg)
        P = ue.middle
        tower.append(P)
    return tower


def df_truncation_algebra(sigma: Sequence[Rep], l: int, mode: str | None = None, alg=None):
    """``(P_l, End(P_l))`` for the tower built from the collection ``sigma``."""
    P = truncation_tower(sigma, l, mode, alg)[-1]
    gamma, _ = endomorphism_algebra(P)
    return P, gamma


def local_character(gamma: StructureAlgebra) -> list | None:
    """Values ``chi(b_j)`` of the residue map of a local algebra, or ``None`` if not local."""
    f = gamma.field
    d = gamma.dim
    out = []
    for j in range(d):
        L = gamma.left_matrix([f.one if k == j else f.zero for k in range(d)])
        cand = None
        if not f.is_finite and d:
            cand = [f(sum(L.rows[i][i] for i in range(d)) / d)]
        else:
            cand = list(f.elements())
        found = None
        for lam in cand:
            N = L - Matrix.identity(f, d).scale(lam)
            P = Matrix.identity(f, d)
            for _ in range(d):
                P = P @ N
            if P.is_zero():
                found = lam
                break
        if found is None:
            return None
        out.append(found)
    return out


def is_truncated_polynomial(gamma: StructureAlgebra, l: int, rng: random.Random | None = None,
                            tries: int = 20) -> tuple[bool, list | None]:
    """Is ``gamma`` isomorphic to ``k[x]/(x^(l+1))``?  Returns a generator ``x`` if so."""
    f = gamma.field
    if gamma.dim != l + 1:
        return False, None
    chi = local_character(gamma)
    if chi is None:
        return False, None
    d = gamma.dim
    # radical spanned by b_j - chi(b_j) 1
    rad = [[f(((f.one if k == j else f.zero) - chi[j] * gamma.unit[k])) for k in range(d)] for j in range(d)]
    rng = rng or random.Random(0)
    for _ in range(tries):
        t = [f.random(rng) for _ in range(d)]
        x = [f(sum(t[j] * rad[j][k] for j in range(d))) for k in range(d)]
        powers = [gamma.power(x, e) for e in range(l + 2)]
        if any(powers[l + 1]):
            return False, None
        if Matrix.from_columns(f, powers[:l + 1], d).rank() == l + 1:
            return True, x
    return False, None
