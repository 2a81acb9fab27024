"""Random and named test objects: algebras, modules, maps and A-objects."""
from __future__ import annotations

import itertools
import random
from typing import Sequence

from .algebra import AlgebraError, BoundQuiver, PathAlgebra, Quiver, build_algebra
from .aobjects import AObject, aobject_from_bimodule_rep
from .deformation import DeformationElement, LaudalFrame
from .linalg import Field, Matrix, column_space_basis, hstack
from .rep import FreeModule, Rep, RepMap, hom_space, projective, quotient, radical, simple, subrep


def one_loop(field: Field, name: str = "t") -> BoundQuiver:
    return BoundQuiver(Quiver.build([1], [(name, 1, 1)]), (), field)


def truncated_polynomial(field: Field, n: int) -> PathAlgebra:
    """``k[x]/(x^n)``."""
    q = Quiver.build([1], [("x", 1, 1)])
    return build_algebra(BoundQuiver.build(q, [" ".join(["x"] * n)], field))


def linear_quiver(n: int) -> Quiver:
    """``1 -> 2 -> ... -> n``."""
    return Quiver.build(range(1, n + 1), [(f"a{i}", i, i + 1) for i in range(1, n)])


def nakayama_algebra(field: Field, n: int, length: int | None = None) -> PathAlgebra:
    """Linear quiver on ``n`` vertices with all paths of ``length`` arrows set to zero."""
    q = linear_quiver(n)
    rels = []
    if length is not None and length < n:
        for s in range(1, n - length + 1):
            rels.append(" ".join(f"a{i}" for i in range(s, s + length)))
    return build_algebra(BoundQuiver.build(q, rels, field))


def random_quiver(rng: random.Random, max_vertices: int = 3, max_arrows: int = 4) -> Quiver:
    n = rng.randint(1, max_vertices)
    k = rng.randint(1 if n == 1 else 0, max_arrows)
    arrows = []
    for j in range(k):
        arrows.append((f"a{j}", rng.randint(1, n), rng.randint(1, n)))
    return Quiver.build(range(1, n + 1), arrows)


def random_algebra(rng: random.Random, field: Field, max_dim: int = 10, tries: int = 200) -> PathAlgebra:
    """Random basic algebra: random quiver, a radical-power cutoff and a few random relations."""
    for _ in range(tries):
        q = random_quiver(rng)
        cutoff = rng.randint(2, 3)
        rels = [q.walk_str(w) for w in q.walks_of_length(cutoff)]
        # occasionally a linear relation between parallel length-2 walks
        two = q.walks_of_length(2)
        if two and rng.random() < 0.5:
            w = rng.choice(two)
            par = [u for u in two if u[0] == w[0] and q.walk_target(u) == q.walk_target(w)]
            rel = [(str(field.random(rng) or 1), q.walk_str(u)) for u in par]
            rels.append(rel)
        try:
            A = build_algebra(BoundQuiver.build(q, rels, field))
        except AlgebraError:
            continue
        if A.dim <= max_dim:
            return A
    raise RuntimeError("could not sample an algebra within the dimension bound")


def submodule_generated(m: Rep, vectors: Sequence[tuple[int, Sequence]]) -> tuple[Rep, RepMap]:
    """Smallest subrepresentation containing the given ``(vertex, vector)`` pairs."""
    f = m.field
    q = m.quiver
    cols = [[] for _ in range(q.n)]
    for v, vec in vectors:
        cols[v].append(list(vec))
    spans = [column_space_basis(Matrix.from_columns(f, c, m.dims[v])) if c else Matrix.zeros(f, m.dims[v], 0)
             for v, c in enumerate(cols)]
    changed = True
    while changed:
        changed = False
        for k, a in enumerate(q.arrows):
            u, v = a.source, a.target
            if spans[v].ncols == 0:
                continue
            img = m.maps[k] @ spans[v]
            new = column_space_basis(hstack(f, [spans[u], img], m.dims[u]))
            if new.ncols > spans[u].ncols:
                spans[u] = new
                changed = True
    return subrep(m, spans)


def random_module(A: PathAlgebra, rng: random.Random, max_dim: int = 8, tries: int = 50) -> Rep:
    """A random quotient of a small free module (so relations hold automatically)."""
    f = A.field
    for _ in range(tries):
        tops = [rng.randrange(A.n) for _ in range(rng.randint(1, 3))]
        F = FreeModule.build(A, tops)
        P = F.rep
        gens = []
        for _ in range(rng.randint(0, 3)):
            v = rng.randrange(A.n)
            if P.dims[v]:
                gens.append((v, [f.random(rng) for _ in range(P.dims[v])]))
        sub, inc = submodule_generated(P, gens)
        m, _ = quotient(P, list(inc.blocks))
        if 0 < m.dim <= max_dim:
            return m
    return simple(A.bound, 0)


def random_hom(m: Rep, n: Rep, rng: random.Random) -> RepMap:
    H = hom_space(m, n)
    return H.element([m.field.random(rng) for _ in range(H.dim)])


def random_rep_of(base: BoundQuiver, rng: random.Random, max_dim: int = 2) -> Rep:
    """Random representation of a relation-free quiver, nonzero."""
    f = base.field
    while True:
        dims = [rng.randint(0, max_dim) for _ in range(base.n)]
        if sum(dims):
            break
    maps = [Matrix.random(f, dims[a.source], dims[a.target], rng) for a in base.quiver.arrows]
    return Rep(base, dims, maps)


def random_flat_element(A: PathAlgebra, sigma: Sequence[Rep], rng: random.Random,
                        tries: int = 100) -> DeformationElement | None:
    """A random point of the frame ``sum A e_i (x) V_i`` satisfying the target relations."""
    frame = LaudalFrame(A, sigma)
    f = frame.field
    for _ in range(tries):
        vals = [f.random(rng) for _ in range(frame.param_count)]
        act = frame.action(vals)
        if frame.satisfies_relations(act):
            return frame.element_from_action(act)
    return None


def random_aobject(A: PathAlgebra, sigma: Sequence[Rep], rng: random.Random, flat: bool = True) -> AObject | None:
    """Random A-object; with ``flat=False`` a random quotient of a flat one (usually not flat)."""
    d = random_flat_element(A, sigma, rng)
    if d is None:
        return None
    z = d.obj
    if flat:
        return z
    rep = z.as_rep()
    gens = []
    for _ in range(rng.randint(1, 2)):
        v = rng.randrange(rep.base.n)
        if rep.dims[v]:
            gens.append((v, [z.field.random(rng) for _ in range(rep.dims[v])]))
    sub, inc = submodule_generated(rep, gens)
    q, _ = quotient(rep, list(inc.blocks))
    return aobject_from_bimodule_rep(A, z.target, q)


def uniserial_modules(A: PathAlgebra) -> list[Rep]:
    """``P_i / rad^j P_i`` for all ``i`` and ``j >= 1``: every indecomposable of a Nakayama algebra."""
    out = []
    for i in range(A.n):
        P = projective(A, i)
        incs = []
        cur = P
        inc_total = RepMap.identity(P)
        while not cur.is_zero():
            r, inc = radical(cur)
            inc_total = inc_total @ inc
            incs.append(inc_total)
            cur = r
        for inc in incs:
            Q, _ = quotient(P, list(inc.blocks))
            if not Q.is_zero():
                out.append(Q)
    return out


def all_dims(n: int, total: int):
    for d in itertools.product(range(total + 1), repeat=n):
        if 0 < sum(d) <= total:
            yield list(d)
