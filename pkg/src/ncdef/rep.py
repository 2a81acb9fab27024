"""Finite-dimensional right modules as quiver representations.

A :class:`Rep` over a bound quiver stores one vector space dimension per vertex
and, for an arrow ``a: u -> v``, a matrix ``M_a`` of shape ``dims[u] x dims[v]``
(the right action of ``a`` sends the ``v`` component to the ``u`` component).
The action of a walk ``(a1, ..., ak)`` from ``v0`` to ``vk`` is the product
``M_a1 @ ... @ M_ak``, a map from component ``vk`` to component ``v0``.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .algebra import BoundQuiver, PathAlgebra, build_algebra
from .linalg import (Field, Matrix, block_diag, cokernel_projection, column_space_basis,
                     complement_basis, kernel_basis, solve, vstack, hstack)


class RepError(ValueError):
    pass


def base_of(x) -> BoundQuiver:
    if isinstance(x, BoundQuiver):
        return x
    if isinstance(x, PathAlgebra):
        return x.bound
    raise TypeError(f"expected a bound quiver or algebra, got {type(x).__name__}")


class Rep:
    __slots__ = ("base", "dims", "maps")

    def __init__(self, base, dims: Sequence[int], maps: Sequence[Matrix], check: bool = True):
        self.base = base_of(base)
        self.dims = tuple(int(d) for d in dims)
        self.maps = tuple(maps)
        if check:
            self.validate()

    def validate(self):
        q = self.base.quiver
        if len(self.dims) != q.n:
            raise RepError(f"expected {q.n} dimensions, got {len(self.dims)}")
        if len(self.maps) != len(q.arrows):
            raise RepError(f"expected {len(q.arrows)} arrow matrices, got {len(self.maps)}")
        for a, m in zip(q.arrows, self.maps):
            if m.field != self.field:
                raise RepError(f"arrow {a.name}: field mismatch")
            if m.shape != (self.dims[a.source], self.dims[a.target]):
                raise RepError(f"arrow {a.name}: matrix shape {m.shape}, expected "
                               f"{(self.dims[a.source], self.dims[a.target])}")
        for rel in self.base.relations:
            if not self.relation_value(rel).is_zero():
                raise RepError("relation violated: " + " + ".join(
                    f"{self.field.to_str(c)}*{q.walk_str(w)}" for c, w in rel))

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def quiver(self):
        return self.base.quiver

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def __eq__(self, other):
        if not isinstance(other, Rep):
            return NotImplemented
        return self.base == other.base and self.dims == other.dims and self.maps == other.maps

    def __hash__(self):
        return hash((self.dims, self.maps))

    def __repr__(self):
        return f"Rep(dims={self.dims})"

    def walk_matrix(self, walk) -> Matrix:
        start, arrows = walk
        m = Matrix.identity(self.field, self.dims[start])
        for k in arrows:
            m = m @ self.maps[k]
        return m

    def relation_value(self, rel) -> Matrix:
        c0, w0 = rel[0]
        total = self.walk_matrix(w0).scale(c0)
        for c, w in rel[1:]:
            total = total + self.walk_matrix(w).scale(c)
        return total

    def element_matrix(self, alg: PathAlgebra, x: Sequence, src: int, tgt: int) -> Matrix:
        """Right action of ``x`` in ``e_tgt A e_src``: component ``tgt`` to component ``src``."""
        m = Matrix.zeros(self.field, self.dims[src], self.dims[tgt])
        for j in alg.walks_between(src, tgt):
            if x[j]:
                m = m + self.walk_matrix(alg.basis[j]).scale(x[j])
        return m


@dataclass(frozen=True, eq=False)
class RepMap:
    """Morphism of representations: ``blocks[v]`` is ``target.dims[v] x source.dims[v]``."""

    source: Rep
    target: Rep
    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))

    def validate(self):
        s, t = self.source, self.target
        if s.base != t.base:
            raise RepError("morphism between representations of different quivers")
        for v, b in enumerate(self.blocks):
            if b.shape != (t.dims[v], s.dims[v]):
                raise RepError(f"block {v}: shape {b.shape}, expected {(t.dims[v], s.dims[v])}")
        for k, a in enumerate(s.quiver.arrows):
            if self.blocks[a.source] @ s.maps[k] != t.maps[k] @ self.blocks[a.target]:
                raise RepError(f"not a morphism: fails to commute with arrow {a.name}")
        return self

    @classmethod
    def checked(cls, source, target, blocks) -> "RepMap":
        return cls(source, target, tuple(blocks)).validate()

    @classmethod
    def zero(cls, source: Rep, target: Rep) -> "RepMap":
        f = source.field
        return cls(source, target, tuple(Matrix.zeros(f, target.dims[v], source.dims[v])
                                         for v in range(len(source.dims))))

    @classmethod
    def identity(cls, m: Rep) -> "RepMap":
        return cls(m, m, tuple(Matrix.identity(m.field, d) for d in m.dims))

    @property
    def field(self):
        return self.source.field

    def __matmul__(self, other: "RepMap") -> "RepMap":
        """``self @ other`` is ``self`` after ``other``."""
        if other.target.dims != self.source.dims:
            raise RepError("composition of incompatible morphisms")
        return RepMap(other.source, self.target, tuple(a @ b for a, b in zip(self.blocks, other.blocks)))

    def __add__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target, tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def __neg__(self):
        return RepMap(self.source, self.target, tuple(-a for a in self.blocks))

    def scale(self, c) -> "RepMap":
        return RepMap(self.source, self.target, tuple(a.scale(c) for a in self.blocks))

    def __eq__(self, other):
        if not isinstance(other, RepMap):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def is_mono(self) -> bool:
        return all(b.rank() == b.ncols for b in self.blocks)

    def is_epi(self) -> bool:
        return all(b.rank() == b.nrows for b in self.blocks)

    def is_iso(self) -> bool:
        return all(b.nrows == b.ncols and b.rank() == b.nrows for b in self.blocks)

    def inverse(self) -> "RepMap":
        return RepMap(self.target, self.source, tuple(b.inverse() for b in self.blocks))

    def total(self) -> Matrix:
        return block_diag(self.field, self.blocks)

    def vector(self) -> list:
        return [x for b in self.blocks for r in b.rows for x in r]

    def rank(self) -> int:
        return sum(b.rank() for b in self.blocks)


# constructions ------------------------------------------------------------

def zero_rep(base) -> Rep:
    base = base_of(base)
    f = base.field
    return Rep(base, [0] * base.n, [Matrix.zeros(f, 0, 0) for _ in base.quiver.arrows])


def simple(base, i: int) -> Rep:
    base = base_of(base)
    f = base.field
    dims = [1 if v == i else 0 for v in range(base.n)]
    return Rep(base, dims, [Matrix.zeros(f, dims[a.source], dims[a.target]) for a in base.quiver.arrows])


def projective(alg: PathAlgebra, i: int) -> Rep:
    """``P_i = e_i A``; component ``v`` has basis the residue walks ``v -> i``."""
    f = alg.field
    comps = [alg.walks_between(v, i) for v in range(alg.n)]
    pos = [{j: r for r, j in enumerate(c)} for c in comps]
    maps = []
    for k, a in enumerate(alg.quiver.arrows):
        u, v = a.source, a.target
        arrow_el = alg.arrow(k)
        cols = []
        for j in comps[v]:
            prod = alg.mul(alg.unit_vector(j), arrow_el)
            col = [f.zero] * len(comps[u])
            for idx, c in enumerate(prod):
                if c:
                    col[pos[u][idx]] = c
            cols.append(col)
        maps.append(Matrix.from_columns(f, cols, len(comps[u])))
    return Rep(alg.bound, [len(c) for c in comps], maps)


def direct_sum(reps: Sequence[Rep], base=None) -> Rep:
    reps = list(reps)
    if not reps:
        return zero_rep(base)
    b = reps[0].base
    f = b.field
    dims = [sum(r.dims[v] for r in reps) for v in range(b.n)]
    maps = [block_diag(f, [r.maps[k] for r in reps]) for k in range(len(b.quiver.arrows))]
    return Rep(b, dims, maps, check=False)


def sum_injection(reps: Sequence[Rep], total: Rep, idx: int) -> RepMap:
    f = total.field
    blocks = []
    for v in range(len(total.dims)):
        off = sum(r.dims[v] for r in reps[:idx])
        d = reps[idx].dims[v]
        rows = [[f.one if i == off + j else f.zero for j in range(d)] for i in range(total.dims[v])]
        blocks.append(Matrix(f, total.dims[v], d, rows))
    return RepMap(reps[idx], total, blocks)


def sum_projection(reps: Sequence[Rep], total: Rep, idx: int) -> RepMap:
    inj = sum_injection(reps, total, idx)
    return RepMap(total, reps[idx], tuple(b.T for b in inj.blocks))


def map_into_sum(maps: Sequence[RepMap], total: Rep) -> RepMap:
    """The map ``x -> (f_1 x, ..., f_k x)`` into a direct sum."""
    f = total.field
    src = maps[0].source
    return RepMap(src, total, tuple(vstack(f, [m.blocks[v] for m in maps], src.dims[v])
                                    for v in range(len(src.dims))))


def map_from_sum(maps: Sequence[RepMap], total: Rep) -> RepMap:
    """The map ``(x_1, ..., x_k) -> sum f_i x_i`` out of a direct sum."""
    f = total.field
    tgt = maps[0].target
    return RepMap(total, tgt, tuple(hstack(f, [m.blocks[v] for m in maps], tgt.dims[v])
                                    for v in range(len(tgt.dims))))


def subrep(m: Rep, spans: Sequence[Matrix]) -> tuple[Rep, RepMap]:
    """Subrepresentation with basis columns ``spans[v]`` (must be independent and invariant)."""
    maps = []
    for k, a in enumerate(m.quiver.arrows):
        u, v = a.source, a.target
        x, _ = solve(spans[u], m.maps[k] @ spans[v])
        if x is None:
            raise RepError(f"subspace not invariant under arrow {a.name}")
        maps.append(x)
    sub = Rep(m.base, [s.ncols for s in spans], maps, check=False)
    return sub, RepMap(sub, m, tuple(spans))


def quotient(m: Rep, spans: Sequence[Matrix]) -> tuple[Rep, RepMap]:
    """Quotient by the invariant subspaces spanned by the columns of ``spans[v]``."""
    f = m.field
    projs = [cokernel_projection(s)[0] if s.ncols else Matrix.identity(f, m.dims[v])
             for v, s in enumerate(spans)]
    sections = [_right_inverse(q) for q in projs]
    maps = []
    for k, a in enumerate(m.quiver.arrows):
        u, v = a.source, a.target
        maps.append(projs[u] @ m.maps[k] @ sections[v])
    quo = Rep(m.base, [q.nrows for q in projs], maps, check=False)
    return quo, RepMap(m, quo, tuple(projs))


def _right_inverse(q: Matrix) -> Matrix:
    x, _ = solve(q, Matrix.identity(q.field, q.nrows))
    if x is None:
        raise RepError("matrix has no right inverse")
    return x


def right_inverse(q: Matrix) -> Matrix:
    return _right_inverse(q)


def kernel(f: RepMap) -> tuple[Rep, RepMap]:
    return subrep(f.source, [kernel_basis(b) for b in f.blocks])


def image(f: RepMap) -> tuple[Rep, RepMap]:
    return subrep(f.target, [column_space_basis(b) for b in f.blocks])


def cokernel(f: RepMap) -> tuple[Rep, RepMap]:
    return quotient(f.target, [column_space_basis(b) for b in f.blocks])


def factor_through_mono(g: RepMap, mono: RepMap) -> RepMap:
    """The unique ``h`` with ``mono @ h == g`` (raises if ``g`` does not factor)."""
    blocks = []
    for v, (gb, mb) in enumerate(zip(g.blocks, mono.blocks)):
        x, _ = solve(mb, gb)
        if x is None:
            raise RepError("map does not factor through the monomorphism")
        blocks.append(x)
    return RepMap(g.source, mono.source, tuple(blocks))


def factor_through_epi(g: RepMap, epi: RepMap) -> RepMap:
    """The ``h`` with ``h @ epi == g`` when ``g`` kills ``ker(epi)``."""
    blocks = []
    for gb, eb in zip(g.blocks, epi.blocks):
        x, _ = solve(eb.T, gb.T)
        if x is None:
            raise RepError("map does not factor through the epimorphism")
        blocks.append(x.T)
    return RepMap(epi.target, g.target, tuple(blocks))


def _sum_of_images(m: Rep, v: int, arrows) -> Matrix:
    mats = [m.maps[k] for k in arrows]
    if not mats:
        return Matrix.zeros(m.field, m.dims[v], 0)
    return column_space_basis(hstack(m.field, mats, m.dims[v]))


def radical(m: Rep) -> tuple[Rep, RepMap]:
    """``rad m = m J``: component ``u`` is the sum of images of arrows leaving ``u``."""
    q = m.quiver
    return subrep(m, [_sum_of_images(m, u, q.arrows_from(u)) for u in range(q.n)])


def radical_on_map(f: RepMap) -> RepMap:
    """Restriction of ``f`` to ``rad source -> rad target``."""
    rs, inc_s = radical(f.source)
    rt, inc_t = radical(f.target)
    return factor_through_mono(f @ inc_s, inc_t)


def top(m: Rep) -> tuple[Rep, RepMap]:
    q = m.quiver
    return quotient(m, [_sum_of_images(m, u, q.arrows_from(u)) for u in range(q.n)])


def socle(m: Rep) -> tuple[Rep, RepMap]:
    """Elements killed by every arrow."""
    q = m.quiver
    f = m.field
    spans = []
    for v in range(q.n):
        mats = [m.maps[k] for k in q.arrows_to(v)]
        if mats:
            spans.append(kernel_basis(vstack(f, mats, m.dims[v])))
        else:
            spans.append(Matrix.identity(f, m.dims[v]))
    return subrep(m, spans)


def loewy_length_of(m: Rep) -> int:
    """Smallest ``l >= 0`` with ``rad^(l+1) m == 0``."""
    l = 0
    r, _ = radical(m)
    while not r.is_zero():
        l += 1
        r, _ = radical(r)
        if l > m.dim:
            raise RepError("radical series does not terminate (relations not admissible?)")
    return l


# projective covers -----------------------------------------------------------

@dataclass
class FreeModule:
    """``P = P_{i_1} + ... + P_{i_r}`` with its summand layout."""

    alg: PathAlgebra
    tops: tuple  # vertex of each summand
    rep: Rep
    offsets: tuple  # offsets[r][v]: start of summand r inside component v

    @classmethod
    def build(cls, alg: PathAlgebra, tops: Sequence[int]) -> "FreeModule":
        tops = tuple(tops)
        parts = [projective(alg, i) for i in tops]
        rep = direct_sum(parts, alg.bound)
        offsets = []
        for r in range(len(tops)):
            offsets.append(tuple(sum(p.dims[v] for p in parts[:r]) for v in range(alg.n)))
        return cls(alg, tops, rep, tuple(offsets))

    def generator(self, r: int) -> list:
        """Coordinates of ``e_{i_r}`` in component ``i_r``."""
        i = self.tops[r]
        vec = [self.alg.field.zero] * self.rep.dims[i]
        vec[self.offsets[r][i] + self.alg.walks_between(i, i).index(self.alg.index[(i, ())])] = self.alg.field.one
        return vec

    def map_to(self, target: Rep, images: Sequence[Sequence]) -> RepMap:
        """The morphism sending the ``r``-th generator to ``images[r]`` in ``target.dims[i_r]``."""
        f = self.alg.field
        blocks = []
        for v in range(self.alg.n):
            cols = []
            for r, i in enumerate(self.tops):
                y = Matrix(f, target.dims[i], 1, [[c] for c in images[r]])
                for j in self.alg.walks_between(v, i):
                    cols.append((target.walk_matrix(self.alg.basis[j]) @ y).column(0))
            blocks.append(Matrix.from_columns(f, cols, target.dims[v]))
        return RepMap(self.rep, target, tuple(blocks))

    def element_at(self, v: int, coords: Sequence) -> list:
        """Split ``coords`` in component ``v`` into algebra elements, one per summand.

        Summand ``r`` contributes an element of ``e_{i_r} A e_v``.
        """
        out = []
        for r, i in enumerate(self.tops):
            x = self.alg.zero()
            for pos, j in enumerate(self.alg.walks_between(v, i)):
                x[j] = coords[self.offsets[r][v] + pos]
            out.append(x)
        return out


@dataclass
class ProjectiveCover:
    free: FreeModule
    cover: RepMap
    images: tuple  # generator images (top lifts)

    @property
    def rep(self) -> Rep:
        return self.free.rep


def top_generators(m: Rep) -> list[tuple[int, list]]:
    """Vectors whose classes form a basis of ``top(m)``, as ``(vertex, vector)``."""
    q = m.quiver
    out = []
    for v in range(q.n):
        rad_v = _sum_of_images(m, v, q.arrows_from(v))
        comp = complement_basis(rad_v, m.dims[v])
        for c in comp.columns():
            out.append((v, c))
    return out


def projective_cover(m: Rep, alg: PathAlgebra | None = None) -> ProjectiveCover:
    alg = alg or build_algebra(m.base)
    gens = top_generators(m)
    free = FreeModule.build(alg, [v for v, _ in gens])
    images = tuple(vec for _, vec in gens)
    cover = free.map_to(m, images)
    return ProjectiveCover(free, cover, images)


def syzygy(m: Rep, alg: PathAlgebra | None = None):
    """``(Omega m, inclusion, cover)`` from the projective cover."""
    pc = projective_cover(m, alg)
    om, inc = kernel(pc.cover)
    return om, inc, pc


# homs and isomorphism -----------------------------------------------------------

class HomSpace:
    """Basis of ``Hom(source, target)`` with coordinate extraction."""

    def __init__(self, source: Rep, target: Rep):
        if source.base != target.base:
            raise RepError("Hom between representations of different quivers")
        self.source = source
        self.target = target
        f = source.field
        q = source.quiver
        n_s, n_t = source.dims, target.dims
        offs = []
        o = 0
        for v in range(q.n):
            offs.append(o)
            o += n_t[v] * n_s[v]
        self._nvars = o
        self._offs = offs
        eqs = []
        for k, a in enumerate(q.arrows):
            u, v = a.source, a.target
            S, T = source.maps[k], target.maps[k]
            # X_u S - T X_v = 0, entry (r, c) for r < n_t[u], c < n_s[v]
            for r in range(n_t[u]):
                for c in range(n_s[v]):
                    row = [f.zero] * o
                    for j in range(n_s[u]):
                        s = S.rows[j][c]
                        if s:
                            idx = offs[u] + r * n_s[u] + j
                            row[idx] = f(row[idx] + s)
                    for j in range(n_t[v]):
                        t = T.rows[r][j]
                        if t:
                            idx = offs[v] + j * n_s[v] + c
                            row[idx] = f(row[idx] - t)
                    eqs.append(row)
        system = Matrix(f, len(eqs), o, eqs) if eqs else Matrix.zeros(f, 0, o)
        K = kernel_basis(system)
        self._K = K
        self.basis = [self._unflatten(K.column(j)) for j in range(K.ncols)]

    def _unflatten(self, vec) -> RepMap:
        f = self.source.field
        blocks = []
        for v in range(len(self.source.dims)):
            r, c = self.target.dims[v], self.source.dims[v]
            o = self._offs[v]
            blocks.append(Matrix(f, r, c, [vec[o + i * c:o + (i + 1) * c] for i in range(r)]))
        return RepMap(self.source, self.target, tuple(blocks))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i):
        return self.basis[i]

    def element(self, coeffs: Sequence) -> RepMap:
        vec = self._K.apply(coeffs) if self.dim else [self.source.field.zero] * self._nvars
        return self._unflatten(vec)

    def coords(self, g: RepMap) -> list:
        x, _ = solve(self._K, Matrix(g.field, self._nvars, 1, [[c] for c in g.vector()]))
        if x is None:
            raise RepError("map is not a morphism between these representations")
        return x.column(0)

    def elements(self):
        """All elements (finite field only)."""
        f = self.source.field
        for t in itertools.product(f.elements(), repeat=self.dim):
            yield self.element(list(t))


def hom_space(m: Rep, n: Rep) -> HomSpace:
    return HomSpace(m, n)


class IsoStatus(enum.Enum):
    ISOMORPHIC = "Isomorphic"
    NOT_ISOMORPHIC = "NotIsomorphic"
    PROBABLY_NOT = "ProbablyNot"


@dataclass
class IsoResult:
    status: IsoStatus
    witness: object = None

    def __bool__(self):
        return self.status is IsoStatus.ISOMORPHIC


def find_invertible(field: Field, family: Sequence[Sequence[Matrix]], base: Sequence[Matrix] | None = None,
                    budget: int = 200000, rng: random.Random | None = None, trials: int = 32):
    """Search ``base + sum t_k family[k]`` (blockwise) for an invertible member.

    Returns ``(coefficients, exact)``: coefficients of an invertible member, or
    ``None``; ``exact`` says whether a ``None`` answer is a proof.  Every block
    determinant is a polynomial of total degree at most ``n`` (the total size),
    so an exhaustive search on a grid ``S^k`` with ``|S| > n`` (or ``S = F_p``)
    decides the question.
    """
    rng = rng or random.Random(0)
    k = len(family)
    nblocks = len(base) if base is not None else (len(family[0]) if family else 0)
    shapes = [(base[b] if base is not None else family[0][b]).shape for b in range(nblocks)]
    if any(r != c for r, c in shapes):
        return None, True
    n = sum(r for r, _ in shapes)

    def member(t):
        out = []
        for b in range(nblocks):
            m = base[b] if base is not None else Matrix.zeros(field, *shapes[b])
            for c, fam in zip(t, family):
                if c:
                    m = m + fam[b].scale(c)
            out.append(m)
        return out

    def invertible(t):
        return all(m.is_invertible() for m in member(t))

    if k == 0:
        t = []
        return (t, True) if invertible(t) else (None, True)
    for _ in range(trials):
        t = [field.random(rng, bound=3 * n + 3) for _ in range(k)]
        if invertible(t):
            return t, True
    size = min(field.p, n + 1) if field.is_finite else n + 1
    if size ** k <= budget:
        grid = [field(s) for s in range(size)]
        for t in itertools.product(grid, repeat=k):
            if invertible(list(t)):
                return list(t), True
        return None, True
    return None, False


def _layer_dims(m: Rep, step) -> list:
    out = []
    cur = m
    while not cur.is_zero():
        nxt, _ = step(cur)
        if nxt.dims == cur.dims:
            break
        out.append(tuple(a - b for a, b in zip(cur.dims, nxt.dims)))
        cur = nxt
    return out


def _invariant_mismatch(m: Rep, n: Rep, hom_mn: int) -> str | None:
    """A cheap isomorphism invariant on which ``m`` and ``n`` differ, if any."""
    e_m, e_n = hom_space(m, m).dim, hom_space(n, n).dim
    if len({e_m, e_n, hom_mn}) > 1:
        return f"hom dimensions End(m)={e_m}, End(n)={e_n}, Hom(m,n)={hom_mn}"
    if _layer_dims(m, radical) != _layer_dims(n, radical):
        return "radical layers differ"
    soc_quot = lambda x: quotient(x, list(socle(x)[1].blocks))  # noqa: E731
    if _layer_dims(m, soc_quot) != _layer_dims(n, soc_quot):
        return "socle layers differ"
    return None


def is_isomorphic(m: Rep, n: Rep, budget: int = 200000, rng: random.Random | None = None) -> IsoResult:
    if m.base != n.base:
        raise RepError("representations of different quivers")
    if m.dims != n.dims:
        return IsoResult(IsoStatus.NOT_ISOMORPHIC, f"dimension vectors {m.dims} != {n.dims}")
    H = hom_space(m, n)
    witness = _invariant_mismatch(m, n, H.dim)
    if witness:
        return IsoResult(IsoStatus.NOT_ISOMORPHIC, witness)
    t, exact = find_invertible(m.field, [h.blocks for h in H.basis],
                               base=None if H.dim else [Matrix.zeros(m.field, d, d) for d in m.dims],
                               budget=budget, rng=rng)
    if t is not None:
        return IsoResult(IsoStatus.ISOMORPHIC, H.element(t) if H.dim else RepMap.zero(m, n))
    return IsoResult(IsoStatus.NOT_ISOMORPHIC if exact else IsoStatus.PROBABLY_NOT)


def random_rep(base, dims: Sequence[int], rng: random.Random, tries: int = 50) -> Rep | None:
    """Random representation with given dimensions satisfying the relations (rejection sampling)."""
    base = base_of(base)
    f = base.field
    for _ in range(tries):
        maps = [Matrix.random(f, dims[a.source], dims[a.target], rng) for a in base.quiver.arrows]
        try:
            return Rep(base, dims, maps)
        except RepError:
            continue
    return None
