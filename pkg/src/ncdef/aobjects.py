"""A-objects in a module category and the tensor functor they define.

An A-object ``Z`` in ``mod-R`` is recorded vertex by vertex: for each vertex
``i`` of A an R-module ``Z_i = e_i Z`` and for each arrow ``a: u -> v`` of A an
R-linear map ``rho(a): Z_u -> Z_v`` (left multiplication by ``a``), subject to
the relations of A.  ``rho`` of a walk is the composite of the arrow maps along
it, so ``rho(x)`` for ``x`` in ``e_i A e_j`` maps ``Z_j`` to ``Z_i``.

The functor ``T_Z = - (x)_A Z : mod-A -> mod-R`` is computed from a projective
presentation ``P1 -> P0 -> M -> 0``, using ``e_i A (x)_A Z = Z_i``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .algebra import AlgebraHom, BoundQuiver, PathAlgebra, Quiver, Arrow
from .linalg import Matrix, column_space_basis, solve, hstack, vstack
from .rep import (Rep, RepMap, RepError, HomSpace, direct_sum, hom_space, kernel, cokernel, quotient,
                  subrep, projective_cover, right_inverse, IsoResult,
                  base_of)
from .homology import lift_to_cover


class AObjectError(ValueError):
    pass


def _rep_hom_zero(src: Rep, tgt: Rep) -> RepMap:
    return RepMap.zero(src, tgt)


class AObject:
    def __init__(self, algebra: PathAlgebra, target, parts: Sequence[Rep], arrow_maps: Sequence[RepMap],
                 check: bool = True):
        self.algebra = algebra
        self.target = base_of(target)
        self.parts = tuple(parts)
        self.arrow_maps = tuple(arrow_maps)
        if check:
            self.validate()

    @property
    def field(self):
        return self.target.field

    def validate(self):
        A = self.algebra
        if A.field != self.target.field:
            raise AObjectError("algebra and module category over different fields")
        if len(self.parts) != A.n:
            raise AObjectError(f"expected {A.n} vertex parts, got {len(self.parts)}")
        for p in self.parts:
            if p.base != self.target:
                raise AObjectError("vertex part is not a module over the target quiver")
        if len(self.arrow_maps) != len(A.quiver.arrows):
            raise AObjectError(f"expected {len(A.quiver.arrows)} arrow maps")
        for a, g in zip(A.quiver.arrows, self.arrow_maps):
            if g.source is not self.parts[a.source] and g.source.dims != self.parts[a.source].dims:
                raise AObjectError(f"arrow {a.name}: wrong source")
            if g.target is not self.parts[a.target] and g.target.dims != self.parts[a.target].dims:
                raise AObjectError(f"arrow {a.name}: wrong target")
            try:
                RepMap(self.parts[a.source], self.parts[a.target], g.blocks).validate()
            except RepError as e:
                raise AObjectError(f"arrow {a.name}: {e}") from None
        for rel in A.bound.relations:
            s = rel[0][1][0]
            t = A.quiver.walk_target(rel[0][1])
            total = RepMap.zero(self.parts[s], self.parts[t])
            for c, w in rel:
                total = total + self.rho_walk(w).scale(c)
            if not total.is_zero():
                raise AObjectError("relation of the algebra not satisfied: " +
                                   " + ".join(f"{c}*{A.quiver.walk_str(w)}" for c, w in rel))
        return self

    def __repr__(self):
        return f"AObject(parts={[p.dims for p in self.parts]})"

    # rho ----------------------------------------------------------------
    def rho_walk(self, w) -> RepMap:
        start, arrows = w
        g = RepMap.identity(self.parts[start])
        for k in arrows:
            a = self.arrow_maps[k]
            g = RepMap(g.source, self.parts[self.algebra.quiver.arrows[k].target], (a @ g).blocks)
        return g

    def rho(self, x: Sequence, src: int, tgt: int) -> RepMap:
        """``rho(x): Z_src -> Z_tgt`` for ``x`` in ``e_tgt A e_src``."""
        A = self.algebra
        g = RepMap.zero(self.parts[src], self.parts[tgt])
        for j in A.walks_between(src, tgt):
            if x[j]:
                g = g + self.rho_walk(A.basis[j]).scale(x[j])
        return g

    def carrier(self) -> Rep:
        return direct_sum(self.parts, self.target)

    def rho_total(self, x: Sequence) -> RepMap:
        """``rho(x)`` as an endomorphism of the carrier ``Z = sum Z_i``."""
        A = self.algebra
        f = self.field
        Z = self.carrier()
        nR = self.target.n
        blocks = []
        for y in range(nR):
            rows = []
            for i in range(A.n):
                row = []
                for j in range(A.n):
                    row.append(self.rho(x, j, i).blocks[y])
                rows.append(hstack(f, row, self.parts[i].dims[y]))
            blocks.append(vstack(f, rows, Z.dims[y]))
        return RepMap(Z, Z, tuple(blocks))

    # bimodule view ------------------------------------------------------
    def as_rep(self) -> Rep:
        """The bimodule as a representation of the combined quiver."""
        bq = bimodule_quiver(self.algebra.bound, self.target)
        A, R = self.algebra, self.target
        dims = [self.parts[i].dims[x] for i in range(A.n) for x in range(R.n)]
        maps = []
        for i in range(A.n):
            for k in range(len(R.quiver.arrows)):
                maps.append(self.parts[i].maps[k])
        for k in range(len(A.quiver.arrows)):
            for x in range(R.n):
                maps.append(self.arrow_maps[k].blocks[x])
        return Rep(bq, dims, maps, check=False)

    def split_map(self, other: "AObject", g: RepMap) -> list:
        """Per-vertex R-maps ``Z_i -> W_i`` of a combined-quiver morphism."""
        nR = self.target.n
        return [RepMap(self.parts[i], other.parts[i], tuple(g.blocks[i * nR + x] for x in range(nR)))
                for i in range(self.algebra.n)]

    def join_maps(self, other: "AObject", maps: Sequence[RepMap]) -> RepMap:
        return RepMap(self.as_rep(), other.as_rep(), tuple(b for m in maps for b in m.blocks))

    def total_dim(self) -> int:
        return sum(p.dim for p in self.parts)


def bimodule_quiver(a_bound: BoundQuiver, r_bound: BoundQuiver) -> BoundQuiver:
    """Vertices ``(i, x)``; R-arrows copied at each A-vertex, A-arrows at each R-vertex.

    An A-arrow ``u -> v`` acts ``Z_u -> Z_v``, i.e. from component ``(u, x)`` to
    ``(v, x)``; in the right-module convention this is an arrow ``(v, x) -> (u, x)``.
    Relations are omitted: they only constrain objects, not morphisms.
    """
    Aq, Rq = a_bound.quiver, r_bound.quiver
    nR = Rq.n
    verts = tuple(f"{Aq.vertices[i]}|{Rq.vertices[x]}" for i in range(Aq.n) for x in range(nR))
    arrows = []
    for i in range(Aq.n):
        for r in Rq.arrows:
            arrows.append(Arrow(f"R:{Aq.vertices[i]}|{r.name}", i * nR + r.source, i * nR + r.target))
    for a in Aq.arrows:
        for x in range(nR):
            arrows.append(Arrow(f"A:{a.name}|{Rq.vertices[x]}", a.target * nR + x, a.source * nR + x))
    return BoundQuiver(Quiver(verts, tuple(arrows)), (), r_bound.field)


def aobject_from_bimodule_rep(algebra: PathAlgebra, target, rep: Rep) -> AObject:
    """Inverse of :meth:`AObject.as_rep`."""
    R = base_of(target)
    nA, nR = algebra.n, R.n
    nRa = len(R.quiver.arrows)
    parts = []
    for i in range(nA):
        dims = [rep.dims[i * nR + x] for x in range(nR)]
        parts.append(Rep(R, dims, [rep.maps[i * nRa + k] for k in range(nRa)]))
    off = nA * nRa
    arrow_maps = []
    for k, a in enumerate(algebra.quiver.arrows):
        blocks = tuple(rep.maps[off + k * nR + x] for x in range(nR))
        arrow_maps.append(RepMap(parts[a.source], parts[a.target], blocks))
    return AObject(algebra, R, parts, arrow_maps)


def aobject_hom_space(z: AObject, w: AObject) -> HomSpace:
    if z.algebra.bound != w.algebra.bound or z.target != w.target:
        raise AObjectError("A-objects over different algebras or categories")
    return hom_space(z.as_rep(), w.as_rep())


def is_isomorphic_aobjects(z: AObject, w: AObject, budget: int = 200000, rng=None) -> IsoResult:
    from .rep import is_isomorphic
    return is_isomorphic(z.as_rep(), w.as_rep(), budget=budget, rng=rng)


def aobject_from_rho(algebra: PathAlgebra, carrier: Rep, rho) -> AObject:
    """Build the vertex decomposition from an action ``rho(basis index) -> End(carrier)``."""
    A = algebra
    idem = [rho(A.index[(i, ())]) for i in range(A.n)]
    total = idem[0]
    for e in idem[1:]:
        total = total + e
    if total != RepMap.identity(carrier):
        raise AObjectError("vertex idempotents do not sum to the identity")
    parts, incs, projs = [], [], []
    for e in idem:
        if e @ e != e:
            raise AObjectError("vertex action is not idempotent")
        sub, inc = subrep(carrier, [column_space_basis(b) for b in e.blocks])
        proj_blocks = []
        for v, b in enumerate(e.blocks):
            x, _ = solve(inc.blocks[v], b)
            proj_blocks.append(x)
        parts.append(sub)
        incs.append(inc)
        projs.append(RepMap(carrier, sub, tuple(proj_blocks)))
    maps = []
    for k, a in enumerate(A.quiver.arrows):
        g = projs[a.target] @ rho(A.index[(a.source, (k,))]) @ incs[a.source]
        maps.append(g)
    return AObject(A, carrier.base, parts, maps)


# tensor functor --------------------------------------------------------------

@dataclass
class Presentation:
    """``P1 --d--> P0 --cover--> M -> 0`` with ``d`` as a matrix of algebra elements.

    ``entries[r][s]`` lies in ``e_{p0[r]} A e_{p1[s]}``.
    """

    module: Rep
    cover: object  # ProjectiveCover of M
    p1: tuple
    entries: list

    @property
    def p0(self) -> tuple:
        return self.cover.free.tops


def minimal_presentation(m: Rep, alg: PathAlgebra) -> Presentation:
    pc0 = projective_cover(m, alg)
    om, inc = kernel(pc0.cover)
    pc1 = projective_cover(om, alg)
    d = inc @ pc1.cover
    entries = [[None] * len(pc1.free.tops) for _ in pc0.free.tops]
    for s, j in enumerate(pc1.free.tops):
        img = d.blocks[j].apply(pc1.free.generator(s))
        for r, x in enumerate(pc0.free.element_at(j, img)):
            entries[r][s] = x
    return Presentation(m, pc0, tuple(pc1.free.tops), entries)


def pad_presentation(pres: Presentation, rng: random.Random) -> Presentation:
    """A non-minimal presentation of the same module.

    Adds a relation generator that is an algebra multiple of an existing one
    (or zero), which keeps ``im d`` unchanged.
    """
    A = pres.cover.free.alg
    p1 = list(pres.p1)
    entries = [list(row) for row in pres.entries]
    if p1:
        s = rng.randrange(len(p1))
        j = p1[s]
        k = rng.randrange(A.n)
        walks = A.walks_between(k, j)
        coef = A.zero()
        for w in walks:
            coef[w] = A.field.random(rng)
        for r in range(len(entries)):
            entries[r].append(A.mul(entries[r][s], coef))
        p1.append(k)
    else:
        k = rng.randrange(A.n)
        for r in range(len(entries)):
            entries[r].append(A.zero())
        p1.append(k)
    return Presentation(pres.module, pres.cover, tuple(p1), entries)


@dataclass
class TensorResult:
    rep: Rep
    presentation: Presentation
    projection: RepMap  # sum_r Z_{p0[r]} -> T(M)
    section: list  # right inverses of the projection blocks


def _block_map(z: AObject, rows: Sequence[int], cols: Sequence[int], entries) -> RepMap:
    """``sum_s Z_{cols[s]} -> sum_r Z_{rows[r]}`` with blocks ``rho(entries[r][s])``."""
    f = z.field
    src = direct_sum([z.parts[j] for j in cols], z.target)
    tgt = direct_sum([z.parts[i] for i in rows], z.target)
    nR = z.target.n
    blocks = []
    for y in range(nR):
        block_rows = []
        for r, i in enumerate(rows):
            row = [z.rho(entries[r][s], j, i).blocks[y] for s, j in enumerate(cols)]
            block_rows.append(hstack(f, row, z.parts[i].dims[y]))
        blocks.append(vstack(f, block_rows, src.dims[y]))
    return RepMap(src, tgt, tuple(blocks))


def tensor_apply(z: AObject, m: Rep, presentation: Presentation | None = None) -> TensorResult:
    """``T_Z(m) = m (x)_A Z`` as an R-module."""
    if m.base != z.algebra.bound:
        raise AObjectError("module is not over the algebra of the A-object")
    pres = presentation or minimal_presentation(m, z.algebra)
    d = _block_map(z, pres.p0, pres.p1, pres.entries)
    rep, proj = cokernel(d)
    sec = [right_inverse(b) if b.nrows else Matrix.zeros(z.field, b.ncols, 0) for b in proj.blocks]
    return TensorResult(rep, pres, proj, sec)


def tensor_map(z: AObject, f: RepMap, src: TensorResult | None = None, tgt: TensorResult | None = None) -> RepMap:
    """``T_Z(f)`` for an A-module map ``f``."""
    src = src or tensor_apply(z, f.source)
    tgt = tgt or tensor_apply(z, f.target)
    pc, pc2 = src.presentation.cover, tgt.presentation.cover
    lift = lift_to_cover(f, pc, pc2)
    entries = [[None] * len(pc.free.tops) for _ in pc2.free.tops]
    for r, i in enumerate(pc.free.tops):
        img = lift.blocks[i].apply(pc.free.generator(r))
        for r2, x in enumerate(pc2.free.element_at(i, img)):
            entries[r2][r] = x
    f0 = _block_map(z, pc2.free.tops, pc.free.tops, entries)
    blocks = [tgt.projection.blocks[y] @ f0.blocks[y] @ src.section[y] for y in range(z.target.n)]
    return RepMap(src.rep, tgt.rep, tuple(blocks))


# flatness --------------------------------------------------------------------

def reduction(z: AObject) -> list[tuple[Rep, RepMap]]:
    """``Z_i / sum_{a: u -> i} rho(a) Z_u`` with its projection, for every vertex ``i``."""
    A = z.algebra
    out = []
    for i in range(A.n):
        part = z.parts[i]
        spans = []
        for y in range(z.target.n):
            mats = [z.arrow_maps[k].blocks[y] for k in A.quiver.arrows_to(i)]
            if mats:
                spans.append(column_space_basis(hstack(z.field, mats, part.dims[y])))
            else:
                spans.append(Matrix.zeros(z.field, part.dims[y], 0))
        out.append(quotient(part, spans))
    return out


def left_top_multiplicities(z: AObject) -> list[int]:
    return [r.dim for r, _ in reduction(z)]


def left_projective_dims(alg: PathAlgebra) -> list[int]:
    """``dim A e_i``: number of residue walks starting at ``i``."""
    return [sum(1 for w in alg.basis if w[0] == i) for i in range(alg.n)]


@dataclass
class FlatnessReport:
    flat: bool
    total_dim: int
    free_dim: int
    multiplicities: list
    witness: int | None = None  # vertex i with Tor_1(S_i, Z) != 0

    def __bool__(self):
        return self.flat


def tor1_defects(z: AObject) -> list[int]:
    """``dim Tor_1(S_i, Z)`` from ``0 -> rad P_i -> P_i -> S_i -> 0``."""
    from .rep import projective, radical, simple
    A = z.algebra
    out = []
    for i in range(A.n):
        P = projective(A, i)
        rad, _ = radical(P)
        tr = tensor_apply(z, rad).rep.dim
        tp = tensor_apply(z, P).rep.dim
        ts = tensor_apply(z, simple(A, i)).rep.dim
        out.append(tr + ts - tp)
    return out


def is_flat(z: AObject) -> FlatnessReport:
    """Exact flatness test: ``Z`` is free as a left A-module iff its dimension
    equals that of the free module on its left top."""
    mults = left_top_multiplicities(z)
    pdims = left_projective_dims(z.algebra)
    free_dim = sum(m * d for m, d in zip(mults, pdims))
    total = z.total_dim()
    flat = total == free_dim
    witness = None
    if not flat:
        defects = tor1_defects(z)
        witness = next((i for i, d in enumerate(defects) if d), None)
    return FlatnessReport(flat, total, free_dim, mults, witness)


# change of algebra -------------------------------------------------------------

@dataclass
class RegularPiece:
    """``e_j B`` as a right A-module, with its embedding in B's coordinates."""

    rep: Rep
    spans: list
    coords: list


def restricted_regular(alpha: AlgebraHom, j: int) -> RegularPiece:
    """``e_j B`` as a right A-module through ``alpha``."""
    A, B = alpha.source, alpha.target
    J = [k for k, w in enumerate(B.basis) if B.quiver.walk_target(w) == j]

    def restrict(M: Matrix) -> Matrix:
        return M.submatrix(J, J)

    spans = []
    for i in range(A.n):
        E = restrict(B.right_mult_matrix(alpha.image_of_basis(A.index[(i, ())])))
        spans.append(column_space_basis(E))
    maps = []
    for k, a in enumerate(A.quiver.arrows):
        R = restrict(B.right_mult_matrix(alpha.image_of_basis(A.index[(a.source, (k,))])))
        x, _ = solve(spans[a.source], R @ spans[a.target])
        if x is None:
            raise AObjectError("homomorphism does not respect the vertex decomposition")
        maps.append(x)
    return RegularPiece(Rep(A.bound, [s.ncols for s in spans], maps), spans, J)


def _left_mult_between(alpha: AlgebraHom, b: Sequence, src: RegularPiece, tgt: RegularPiece) -> RepMap:
    B = alpha.target
    L = B.left_mult_matrix(b).submatrix(tgt.coords, src.coords)
    blocks = []
    for i in range(alpha.source.n):
        x, _ = solve(tgt.spans[i], L @ src.spans[i])
        if x is None:
            raise AObjectError("left multiplication leaves the idempotent component")
        blocks.append(x)
    return RepMap(src.rep, tgt.rep, tuple(blocks))


def pullback(alpha: AlgebraHom, z: AObject) -> AObject:
    """The B-object ``B_alpha (x)_A Z``; vertex ``j`` part is ``T_Z(e_j B)``."""
    B = alpha.target
    regs = [restricted_regular(alpha, j) for j in range(B.n)]
    tens = [tensor_apply(z, r.rep) for r in regs]
    maps = []
    for k, b in enumerate(B.quiver.arrows):
        lm = _left_mult_between(alpha, B.arrow(k), regs[b.source], regs[b.target])
        maps.append(tensor_map(z, lm, tens[b.source], tens[b.target]))
    return AObject(B, z.target, [t.rep for t in tens], maps)


def pushforward(alpha: AlgebraHom, w: AObject) -> AObject:
    """Restriction of scalars: the A-object with action ``rho_B o alpha``."""
    carrier = w.carrier()
    A = alpha.source

    def rho(j):
        return w.rho_total(alpha.image_of_basis(j))

    return aobject_from_rho(A, carrier, rho)


def is_aobject_morphism(z: AObject, w: AObject, maps: Sequence[RepMap]) -> bool:
    A = z.algebra
    for i, g in enumerate(maps):
        try:
            RepMap(z.parts[i], w.parts[i], g.blocks).validate()
        except RepError:
            return False
    for k, a in enumerate(A.quiver.arrows):
        if maps[a.target] @ z.arrow_maps[k] != w.arrow_maps[k] @ maps[a.source]:
            return False
    return True
