"""Basic algebras presented by quivers with admissible relations.

Conventions used throughout the package:

* a *walk* is a composable arrow sequence written source-to-target, stored as
  ``(start_vertex, (arrow_index, ...))``; the empty walk at ``v`` is ``e_v``;
* the algebra product is composition order: ``x * y`` means "first ``y``,
  then ``x``", so ``e_i A e_j`` is spanned by walks ``j -> i``;
* right modules (see :mod:`ncdef.rep`) let an arrow ``u -> v`` act as a map
  from the ``v`` component to the ``u`` component.

With these choices the indecomposable projective ``P_i = e_i A`` has its
``v`` component spanned by walks ``v -> i``.
"""
from __future__ import annotations

import enum
import functools
import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .linalg import Field, Matrix, rref, kernel_basis, solve, vec_to_col

DEFAULT_PATH_CAP = 32
MAX_PATHS = 20000

Walk = tuple  # (start_vertex, tuple_of_arrow_indices)


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("vertex labels must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow names must be unique")
        for a in self.arrows:
            if not (0 <= a.source < len(self.vertices) and 0 <= a.target < len(self.vertices)):
                raise AlgebraError(f"arrow {a.name} has an invalid endpoint")

    @classmethod
    def build(cls, vertices: Sequence, arrows: Iterable[tuple]) -> "Quiver":
        """``arrows`` are ``(name, source_label, target_label)`` triples."""
        vertices = tuple(str(v) for v in vertices)
        idx = {v: i for i, v in enumerate(vertices)}
        out = []
        for name, s, t in arrows:
            s, t = str(s), str(t)
            if s not in idx or t not in idx:
                raise AlgebraError(f"arrow {name}: unknown vertex {s if s not in idx else t}")
            out.append(Arrow(str(name), idx[s], idx[t]))
        return cls(vertices, tuple(out))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, label) -> int:
        try:
            return self.vertices.index(str(label))
        except ValueError:
            raise AlgebraError(f"unknown vertex {label!r}") from None

    def arrow_index(self, name: str) -> int:
        for k, a in enumerate(self.arrows):
            if a.name == name:
                return k
        raise AlgebraError(f"unknown arrow {name!r}")

    def arrows_from(self, v: int) -> list[int]:
        return [k for k, a in enumerate(self.arrows) if a.source == v]

    def arrows_to(self, v: int) -> list[int]:
        return [k for k, a in enumerate(self.arrows) if a.target == v]

    # walks ------------------------------------------------------------
    def walk_target(self, w: Walk) -> int:
        return self.arrows[w[1][-1]].target if w[1] else w[0]

    def parse_walk(self, text: str) -> Walk:
        """``"a b c"`` (arrows in source-to-target order) or ``"e:<vertex>"``."""
        text = text.strip()
        if text.startswith("e:"):
            return (self.vertex_index(text[2:]), ())
        names = text.split()
        if not names:
            raise AlgebraError("empty walk; write e:<vertex> for an idempotent")
        ks = tuple(self.arrow_index(nm) for nm in names)
        for k1, k2 in zip(ks, ks[1:]):
            if self.arrows[k1].target != self.arrows[k2].source:
                raise AlgebraError(f"walk {text!r} is not composable")
        return (self.arrows[ks[0]].source, ks)

    def walk_str(self, w: Walk) -> str:
        if not w[1]:
            return f"e:{self.vertices[w[0]]}"
        return " ".join(self.arrows[k].name for k in w[1])

    def walks_of_length(self, length: int) -> list[Walk]:
        if length == 0:
            return [(v, ()) for v in range(self.n)]
        frontier = [(a.source, (k,)) for k, a in enumerate(self.arrows)]
        for _ in range(length - 1):
            nxt = []
            for w in frontier:
                t = self.walk_target(w)
                for k in self.arrows_from(t):
                    nxt.append((w[0], w[1] + (k,)))
            frontier = nxt
            if len(frontier) > MAX_PATHS:
                raise AlgebraError("path enumeration budget exceeded")
        return frontier

    def has_oriented_cycle(self) -> bool:
        indeg = [0] * self.n
        for a in self.arrows:
            indeg[a.target] += 1
        stack = [v for v in range(self.n) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for k in self.arrows_from(v):
                t = self.arrows[k].target
                indeg[t] -= 1
                if indeg[t] == 0:
                    stack.append(t)
        return seen < self.n


def concat(w1: Walk, w2: Walk) -> Walk:
    """Walk ``w1`` followed by ``w2`` (caller checks composability)."""
    return (w1[0], w1[1] + w2[1])


Relation = tuple  # tuple of (coefficient, Walk)


@dataclass(frozen=True)
class BoundQuiver:
    """A quiver with relations over a field; the base of a module category."""

    quiver: Quiver
    relations: tuple = ()
    field: Field = Field(0)

    def __post_init__(self):
        for rel in self.relations:
            if not rel:
                raise AlgebraError("empty relation")
            ends = {(w[0], self.quiver.walk_target(w)) for _, w in rel}
            if len(ends) != 1:
                raise AlgebraError("relation terms are not parallel")
            for _, w in rel:
                if len(w[1]) < 2:
                    raise AlgebraError(
                        f"non-admissible relation term {self.quiver.walk_str(w)!r} (length < 2)")

    @classmethod
    def build(cls, quiver: Quiver, relations: Iterable = (), field: Field = Field(0)) -> "BoundQuiver":
        """``relations``: iterables of ``(coef, walk_text)`` pairs, or plain walk texts."""
        rels = []
        for rel in relations:
            if isinstance(rel, str):
                rel = [(1, rel)]
            terms = {}
            for coef, text in rel:
                w = quiver.parse_walk(text) if isinstance(text, str) else text
                terms[w] = field(terms.get(w, 0) + field.parse(coef))
            terms = tuple((c, w) for w, c in sorted(terms.items()) if c != 0)
            if terms:
                rels.append(terms)
        return cls(quiver, tuple(rels), field)

    @property
    def n(self) -> int:
        return self.quiver.n


def _walk_key(w: Walk):
    # deg-lex order; larger keys are leading terms
    return (len(w[1]), w[1], w[0])


@dataclass(eq=False)
class PathAlgebra:
    """Finite-dimensional quotient ``kQ/I`` with a residue-walk basis."""

    bound: BoundQuiver
    basis: list
    index: dict
    reductions: dict  # non-basis walk -> {basis index: coef}
    nilpotency: int  # every walk of length >= this is zero
    table: list = dc_field(repr=False, default=None)

    @property
    def quiver(self) -> Quiver:
        return self.bound.quiver

    @property
    def field(self) -> Field:
        return self.bound.field

    @property
    def n(self) -> int:
        return self.bound.n

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"PathAlgebra(dim={self.dim}, vertices={self.n}, field={self.field})"

    # elements ---------------------------------------------------------
    def zero(self) -> list:
        return [self.field.zero] * self.dim

    def one(self) -> list:
        v = self.zero()
        for i in range(self.n):
            v[self.index[(i, ())]] = self.field.one
        return v

    def idempotent(self, i: int) -> list:
        v = self.zero()
        v[self.index[(i, ())]] = self.field.one
        return v

    def arrow(self, name_or_index) -> list:
        k = name_or_index if isinstance(name_or_index, int) else self.quiver.arrow_index(name_or_index)
        a = self.quiver.arrows[k]
        return self.reduce_walk((a.source, (k,)))

    def reduce_walk(self, w: Walk) -> list:
        v = self.zero()
        if len(w[1]) >= self.nilpotency:
            return v
        if w in self.index:
            v[self.index[w]] = self.field.one
            return v
        for j, c in self.reductions.get(w, {}).items():
            v[j] = c
        return v

    def element(self, terms: Iterable[tuple]) -> list:
        f = self.field
        v = self.zero()
        for c, w in terms:
            if isinstance(w, str):
                w = self.quiver.parse_walk(w)
            r = self.reduce_walk(w)
            c = f.parse(c)
            v = [f(a + c * b) for a, b in zip(v, r)]
        return v

    def source(self, j: int) -> int:
        return self.basis[j][0]

    def target(self, j: int) -> int:
        return self.quiver.walk_target(self.basis[j])

    def walks_between(self, src: int, tgt: int) -> list[int]:
        """Basis indices of residue walks ``src -> tgt`` (a basis of ``e_tgt A e_src``)."""
        return [j for j, w in enumerate(self.basis) if w[0] == src and self.quiver.walk_target(w) == tgt]

    def mul(self, x: Sequence, y: Sequence) -> list:
        """``x * y`` (apply ``y`` first)."""
        f = self.field
        p = f.p
        out = [f.zero] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in xs:
            row = self.table[i]
            for j, b in ys:
                prod = row[j]
                if prod:
                    ab = a * b
                    for k, c in prod:
                        out[k] += ab * c
        if p:
            return [v % p for v in out]
        return out

    def basis_product(self, i: int, j: int) -> list:
        v = self.zero()
        for k, c in self.table[i][j]:
            v[k] = c
        return v

    def left_mult_matrix(self, x: Sequence) -> Matrix:
        cols = [self.mul(x, self.unit_vector(j)) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def right_mult_matrix(self, x: Sequence) -> Matrix:
        cols = [self.mul(self.unit_vector(j), x) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def unit_vector(self, j: int) -> list:
        v = self.zero()
        v[j] = self.field.one
        return v

    def is_invertible(self, x: Sequence) -> bool:
        # basic algebra: invertible iff every vertex-idempotent coefficient is nonzero
        return all(x[self.index[(i, ())]] != 0 for i in range(self.n))

    def inverse(self, x: Sequence) -> list:
        sol, _ = solve(self.left_mult_matrix(x), vec_to_col(self.field, self.one()))
        if sol is None:
            raise ZeroDivisionError("element is not invertible")
        return sol.column(0)

    # radical ----------------------------------------------------------
    def radical_power_basis(self, k: int) -> list[int]:
        """Basis indices spanning ``rad^k A`` (residue walks of length >= k)."""
        return [j for j, w in enumerate(self.basis) if len(w[1]) >= k]

    def loewy_length(self) -> int:
        """Largest ``l`` with ``rad^l A != 0`` (so ``rad^(l+1) A = 0``)."""
        return max(len(w[1]) for w in self.basis)

    def to_str(self, x: Sequence) -> str:
        terms = [f"{self.field.to_str(c)}*{self.quiver.walk_str(self.basis[j])}" for j, c in enumerate(x) if c]
        return " + ".join(terms) or "0"


def _relation_span_rows(bq: BoundQuiver, length_bound: int, columns: dict):
    """Rows spanning ``(I + J^L) / J^L`` in the walk coordinates ``columns``."""
    q = bq.quiver
    f = bq.field
    by_len = [q.walks_of_length(k) for k in range(length_bound)]
    by_end = {}
    by_start = {}
    for k, ws in enumerate(by_len):
        for w in ws:
            by_end.setdefault((q.walk_target(w), k), []).append(w)
            by_start.setdefault((w[0], k), []).append(w)
    rows = []
    for rel in bq.relations:
        s = rel[0][1][0]
        t = q.walk_target(rel[0][1])
        min_len = min(len(w[1]) for _, w in rel)
        for lp in range(length_bound - min_len):
            prefixes = by_end.get((s, lp), [])
            for lq in range(length_bound - min_len - lp):
                suffixes = by_start.get((t, lq), [])
                for pre in prefixes:
                    for suf in suffixes:
                        row = {}
                        for c, w in rel:
                            full = (pre[0], pre[1] + w[1] + suf[1])
                            if len(full[1]) < length_bound:
                                col = columns[full]
                                row[col] = f(row.get(col, 0) + c)
                        if any(row.values()):
                            rows.append(row)
    return rows


def build_algebra(bound: BoundQuiver, cap: int = DEFAULT_PATH_CAP) -> PathAlgebra:
    """Compute a residue-walk basis and multiplication table of ``kQ/I``.

    The relation ideal is assumed to contain a power of the arrow ideal
    (admissibility).  Truncations ``kQ/(I + J^L)`` are computed for growing
    ``L`` until every walk of length ``L-1`` vanishes; if that does not happen
    below ``cap`` the algebra is rejected as infinite-dimensional.
    """
    return _build_algebra_cached(bound, cap)


@functools.lru_cache(maxsize=256)
def _build_algebra_cached(bound: BoundQuiver, cap: int) -> PathAlgebra:
    q = bound.quiver
    f = bound.field
    if not bound.relations and q.has_oriented_cycle():
        raise AlgebraError("quiver has an oriented cycle and no relations: algebra is infinite-dimensional")
    for L in range(1, cap + 2):
        walks = [w for k in range(L) for w in q.walks_of_length(k)]
        if len(walks) > MAX_PATHS:
            raise AlgebraError("path enumeration budget exceeded")
        walks.sort(key=_walk_key, reverse=True)
        columns = {w: c for c, w in enumerate(walks)}
        sparse = _relation_span_rows(bound, L, columns)
        if sparse:
            m = Matrix(f, len(sparse), len(walks),
                       [[row.get(c, f.zero) for c in range(len(walks))] for row in sparse])
            r, piv = rref(m)
        else:
            r, piv = None, []
        pivset = set(piv)
        top = [c for c, w in enumerate(walks) if len(w[1]) == L - 1]
        vanished = True
        for c in top:
            if c not in pivset:
                vanished = False
                break
            row = r.rows[piv.index(c)]
            if any(row[j] for j in range(len(walks)) if j != c):
                vanished = False
                break
        if not vanished:
            continue
        basis = sorted((w for c, w in enumerate(walks) if c not in pivset and len(w[1]) < L - 1), key=_walk_key)
        index = {w: j for j, w in enumerate(basis)}
        reductions = {}
        for i, c in enumerate(piv):
            w = walks[c]
            if len(w[1]) >= L - 1:
                continue
            red = {}
            for col, val in enumerate(r.rows[i]):
                if val and col != c:
                    red[index[walks[col]]] = f(-val)
            reductions[w] = red
        alg = PathAlgebra(bound, basis, index, reductions, max(L - 1, 1))
        _fill_table(alg)
        return alg
    raise AlgebraError(f"arrow ideal not nilpotent modulo relations below path length cap {cap}")


def _fill_table(alg: PathAlgebra):
    q = alg.quiver
    table = []
    for x in alg.basis:
        row = []
        sx = x[0]
        for y in alg.basis:
            if q.walk_target(y) != sx:
                row.append(())
                continue
            v = alg.reduce_walk(concat(y, x))
            row.append(tuple((k, c) for k, c in enumerate(v) if c))
        table.append(row)
    alg.table = table


def free_algebra_dim_check(alg: PathAlgebra) -> bool:
    """Associativity of the multiplication table on all basis triples."""
    d = alg.dim
    for i in range(d):
        for j in range(d):
            ij = alg.basis_product(i, j)
            for k in range(d):
                left = alg.mul(ij, alg.unit_vector(k))
                right = alg.mul(alg.unit_vector(i), alg.basis_product(j, k))
                if left != right:
                    return False
    return True


def radical_power_basis(a: PathAlgebra, k: int) -> list[int]:
    return a.radical_power_basis(k)


def loewy_length(a: PathAlgebra) -> int:
    return a.loewy_length()


# homomorphisms ------------------------------------------------------------

@dataclass(eq=False)
class AlgebraHom:
    """``alpha: A -> B`` given on the basis of ``A`` (columns of ``images``)."""

    source: PathAlgebra
    target: PathAlgebra
    images: Matrix  # dim B x dim A
    vertex_map: tuple  # source vertex -> target vertex (the q-compatibility data)

    def __call__(self, x: Sequence) -> list:
        return self.images.apply(x)

    def image_of_basis(self, j: int) -> list:
        return self.images.column(j)

    @classmethod
    def from_generators(cls, source: PathAlgebra, target: PathAlgebra,
                        arrow_images: Mapping, vertex_map: Sequence | None = None,
                        vertex_images: Mapping | None = None) -> "AlgebraHom":
        """Extend images of idempotents and arrows multiplicatively to the basis.

        ``arrow_images`` maps arrow names to target elements (coefficient
        vectors, or lists of ``(coef, walk_text)`` terms).  Idempotents go to
        ``e_{vertex_map[i]}`` unless ``vertex_images`` overrides them.
        """
        if vertex_map is None:
            vertex_map = tuple(range(source.n))
        vertex_map = tuple(vertex_map)

        def elt(x):
            if isinstance(x, list) and x and isinstance(x[0], (tuple, list)):
                return target.element(x)
            return [target.field(c) for c in x]

        vimg = [elt(vertex_images[i]) if vertex_images and i in vertex_images else target.idempotent(vertex_map[i])
                for i in range(source.n)]
        aimg = {}
        for k, a in enumerate(source.quiver.arrows):
            if a.name in arrow_images:
                aimg[k] = elt(arrow_images[a.name])
            else:
                aimg[k] = target.zero()
        cols = []
        for w in source.basis:
            cols.append(_eval_walk(target, w, vimg, aimg))
        h = cls(source, target, Matrix.from_columns(target.field, cols, target.dim), vertex_map)
        h._generator_images = (vimg, aimg)
        return h

    @classmethod
    def identity(cls, a: PathAlgebra) -> "AlgebraHom":
        return cls(a, a, Matrix.identity(a.field, a.dim), tuple(range(a.n)))

    def conjugate(self, u: Sequence) -> "AlgebraHom":
        """The homomorphism ``x -> u * alpha(x) * u^-1``."""
        B = self.target
        uinv = B.inverse(u)
        cols = [B.mul(B.mul(u, self.images.column(j)), uinv) for j in range(self.source.dim)]
        return AlgebraHom(self.source, B, Matrix.from_columns(B.field, cols, B.dim), self.vertex_map)


def _eval_walk(target: PathAlgebra, w: Walk, vimg, aimg) -> list:
    x = vimg[w[0]]
    for k in w[1]:
        x = target.mul(aimg[k], x)
    return x


@dataclass
class HomCheck:
    ok: bool
    witness: str | None = None

    def __bool__(self):
        return self.ok


def check_hom(h: AlgebraHom) -> HomCheck:
    """Unit, multiplicativity on basis pairs, relations, and ``q_B o alpha = q_A``."""
    A, B = h.source, h.target
    if A.field != B.field:
        raise AlgebraError("source and target over different fields")
    if h.images.shape != (B.dim, A.dim):
        raise AlgebraError(f"images have shape {h.images.shape}, expected {(B.dim, A.dim)}")
    if h(A.one()) != B.one():
        return HomCheck(False, "alpha(1) != 1")
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = h(A.basis_product(i, j))
            rhs = B.mul(h.image_of_basis(i), h.image_of_basis(j))
            if lhs != rhs:
                return HomCheck(False, f"alpha({A.quiver.walk_str(A.basis[i])} * "
                                       f"{A.quiver.walk_str(A.basis[j])}) != product of images")
    gens = getattr(h, "_generator_images", None)
    if gens is not None:
        vimg, aimg = gens
        for rel in A.bound.relations:
            val = B.zero()
            for c, w in rel:
                x = _eval_walk(B, w, vimg, aimg)
                val = [B.field(a + c * b) for a, b in zip(val, x)]
            if any(val):
                return HomCheck(False, "relation not annihilated: " +
                                " + ".join(f"{c}*{A.quiver.walk_str(w)}" for c, w in rel))
    if len(h.vertex_map) != A.n:
        raise AlgebraError("vertex correspondence has the wrong length")
    for i in range(A.n):
        img = h.image_of_basis(A.index[(i, ())])
        for v in range(B.n):
            want = B.field.one if v == h.vertex_map[i] else B.field.zero
            if img[B.index[(v, ())]] != want:
                return HomCheck(False, f"q-compatibility fails at vertex {A.quiver.vertices[i]}: "
                                       f"alpha(e_{A.quiver.vertices[i]}) has coefficient "
                                       f"{B.field.to_str(img[B.index[(v, ())]])} on e_{B.quiver.vertices[v]}")
    return HomCheck(True)


class ConjugacyStatus(enum.Enum):
    CONJUGATE = "Conjugate"
    NOT_CONJUGATE = "NotConjugate"
    PROBABLY_NOT = "ProbablyNot"


@dataclass
class ConjugacyResult:
    status: ConjugacyStatus
    witness: list | None = None

    def __bool__(self):
        return self.status is ConjugacyStatus.CONJUGATE


def generator_indices(a: PathAlgebra) -> list[int]:
    return [a.index[(i, ())] for i in range(a.n)] + \
           [a.index[(arr.source, (k,))] for k, arr in enumerate(a.quiver.arrows)]


def are_conjugate(alpha: AlgebraHom, beta: AlgebraHom, trials: int = 64,
                  rng: random.Random | None = None, budget: int = 100000) -> ConjugacyResult:
    """Decide whether ``alpha(a) = u^-1 beta(a) u`` for some unit ``u``.

    The intertwiners ``u`` with ``u alpha(g) = beta(g) u`` on generators form a
    linear space.  In a basic algebra ``u`` is a unit iff its idempotent
    coefficients are all nonzero, so the question is whether finitely many
    linear forms can be made simultaneously nonzero on that space.
    """
    if alpha.source is not beta.source and alpha.source.bound != beta.source.bound:
        raise AlgebraError("homomorphisms have different sources")
    B = alpha.target
    f = B.field
    blocks = []
    for g in generator_indices(alpha.source):
        blocks.append(B.right_mult_matrix(alpha.image_of_basis(g)) - B.left_mult_matrix(beta.image_of_basis(g)))
    system = blocks[0].vstack(*blocks[1:]) if len(blocks) > 1 else blocks[0]
    U = kernel_basis(system)
    k = U.ncols
    if k == 0:
        return ConjugacyResult(ConjugacyStatus.NOT_CONJUGATE)
    forms = [U.rows[B.index[(i, ())]] for i in range(B.n)]
    if any(all(c == 0 for c in form) for form in forms):
        return ConjugacyResult(ConjugacyStatus.NOT_CONJUGATE)
    t = _nonvanishing_point(f, forms, k, trials, rng or random.Random(0), budget)
    if t is None:
        if f.is_finite and f.p ** k <= budget:
            return ConjugacyResult(ConjugacyStatus.NOT_CONJUGATE)
        return ConjugacyResult(ConjugacyStatus.PROBABLY_NOT)
    u = U.apply(t)
    assert B.is_invertible(u)
    return ConjugacyResult(ConjugacyStatus.CONJUGATE, u)


def _nonvanishing_point(f: Field, forms, k, trials, rng, budget):
    """A point where every linear form in ``forms`` is nonzero, or ``None``."""
    def ok(t):
        return all(f(sum(c * x for c, x in zip(form, t))) != 0 for form in forms)

    # moment curve (1, s, s^2, ...): each form becomes a nonzero polynomial of degree < k
    bad = len(forms) * max(k - 1, 0)
    limit = bad + 1 if not f.is_finite else min(f.p, bad + 1)
    for s in range(limit):
        t = [f(s) ** e if e else f.one for e in range(k)]
        if ok(t):
            return t
    if f.is_finite:
        if f.p ** k <= budget:
            for t in itertools.product(range(f.p), repeat=k):
                if ok(t):
                    return list(t)
            return None
        for _ in range(trials):
            t = [f.random(rng) for _ in range(k)]
            if ok(t):
                return t
    return None
