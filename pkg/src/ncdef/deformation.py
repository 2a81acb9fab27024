"""Deformations of a collection of objects, computed at a fixed base algebra.

* simple collections and extension closures (``Ex_k``) with checkable
  filtration certificates;
* Gabriel products of object classes, searched in either association order;
* deformation elements ``(Z, phi)`` and their equivalence;
* exhaustive enumeration of deformations over small finite fields in the
  frame ``F = sum_i A e_i (x) V_i`` (free left module with an R-action);
* the fully-faithfulness criterion (hom condition on simples plus
  injectivity on Ext^1 between simples).
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from .algebra import PathAlgebra
from .aobjects import (AObject, aobject_hom_space, is_flat, reduction, tensor_apply,
                       tensor_map)
from .config import BudgetExceeded, env_budget
from .homology import SES, ext1
from .linalg import Field, Matrix, column_space_basis, kernel_basis, rref, solve, hstack
from .rep import (Rep, RepMap, direct_sum, find_invertible, hom_space, is_isomorphic, map_from_sum,
                  map_into_sum, quotient, simple, subrep, kernel, IsoStatus)


class DeformationError(ValueError):
    pass


# collections -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Collection:
    objects: tuple

    def __post_init__(self):
        objs = tuple(self.objects)
        object.__setattr__(self, "objects", objs)
        if not objs:
            raise DeformationError("empty collection")
        base = objs[0].base
        for k, o in enumerate(objs):
            if o.base != base:
                raise DeformationError("collection objects over different bases")
            if o.is_zero():
                raise DeformationError(f"collection entry {k} is zero")

    @property
    def base(self):
        return self.objects[0].base

    def __len__(self):
        return len(self.objects)

    def __iter__(self):
        return iter(self.objects)

    def __getitem__(self, k):
        return self.objects[k]


def _as_collection(sigma) -> Collection:
    return sigma if isinstance(sigma, Collection) else Collection(tuple(sigma))


@dataclass
class SimpleCollectionCheck:
    ok: bool
    hom_dims: list
    offending: tuple | None = None

    def __bool__(self):
        return self.ok


def is_simple_collection(sigma) -> SimpleCollectionCheck:
    sigma = _as_collection(sigma)
    n = len(sigma)
    dims = [[hom_space(sigma[i], sigma[j]).dim for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if dims[i][j] != (1 if i == j else 0):
                return SimpleCollectionCheck(False, dims, (i, j))
    return SimpleCollectionCheck(True, dims)


# subspace enumeration over F_p -----------------------------------------------

def subspaces(field: Field, d: int, k: int) -> Iterator[list]:
    """All ``k``-dimensional subspaces of ``F_p^d``, each as ``k`` basis vectors (RREF rows)."""
    if k == 0:
        yield []
        return
    if k > d:
        return
    p = field.p
    for pivots in itertools.combinations(range(d), k):
        free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, d) if c not in pivots]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * d for _ in range(k)]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, c), v in zip(free, vals):
                rows[r][c] = v
            yield rows


def count_subspaces(p: int, d: int, k: int) -> int:
    if k < 0 or k > d:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= p ** (d - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def _span_key(spans: Sequence[Matrix]) -> tuple:
    out = []
    for s in spans:
        if s.ncols == 0:
            out.append(())
            continue
        r, piv = rref(s.T)
        out.append(tuple(r.rows[:len(piv)]))
    return tuple(out)


# object classes for Gabriel products -------------------------------------------

class ObjectClass:
    """A full subcategory closed under isomorphism, given by a finite description."""

    def contains(self, m: Rep, budget) -> bool:
        raise NotImplementedError

    def subobjects(self, m: Rep, budget) -> Iterator[RepMap]:
        """Inclusions of subobjects of ``m`` lying in the class, one per image."""
        raise NotImplementedError

    def quotients(self, m: Rep, budget) -> Iterator[RepMap]:
        """Projections onto quotients of ``m`` lying in the class, one per kernel."""
        raise NotImplementedError


class _Counter:
    def __init__(self, budget: int):
        self.left = budget

    def spend(self, n: int = 1):
        self.left -= n
        if self.left < 0:
            raise BudgetExceeded("search budget exhausted")


def _dims_le(a: Rep, b: Rep) -> bool:
    return all(x <= y for x, y in zip(a.dims, b.dims))


class ListClass(ObjectClass):
    """Isomorphism closure of an explicit finite list (the zero object may be included)."""

    def __init__(self, reps: Sequence[Rep]):
        self.reps = list(reps)

    def contains(self, m, budget):
        for c in self.reps:
            if c.dims == m.dims:
                r = is_isomorphic(c, m, budget=budget.left)
                if r.status is IsoStatus.PROBABLY_NOT:
                    raise BudgetExceeded("isomorphism test inconclusive")
                if r:
                    return True
        return False

    def _homs(self, src: Rep, tgt: Rep, budget):
        H = hom_space(src, tgt)
        f = src.field
        if not f.is_finite:
            if H.dim > 1:
                raise DeformationError("exhaustive search over Q needs hom spaces of dimension <= 1")
            yield from H.basis
            return
        budget.spend(f.p ** H.dim)
        yield from H.elements()

    def subobjects(self, m, budget):
        seen = set()
        for c in self.reps:
            if not _dims_le(c, m):
                continue
            if c.is_zero():
                key = _span_key([Matrix.zeros(m.field, d, 0) for d in m.dims])
                if key not in seen:
                    seen.add(key)
                    yield subrep(m, [Matrix.zeros(m.field, d, 0) for d in m.dims])[1]
                continue
            for g in self._homs(c, m, budget):
                if not g.is_mono():
                    continue
                spans = [column_space_basis(b) for b in g.blocks]
                key = _span_key(spans)
                if key in seen:
                    continue
                seen.add(key)
                yield subrep(m, spans)[1]

    def quotients(self, m, budget):
        seen = set()
        for c in self.reps:
            if not _dims_le(c, m):
                continue
            for g in ([RepMap.zero(m, c)] if c.is_zero() else self._homs(m, c, budget)):
                if not g.is_epi():
                    continue
                spans = [kernel_basis(b) for b in g.blocks]
                key = _span_key(spans)
                if key in seen:
                    continue
                seen.add(key)
                yield quotient(m, spans)[1]


class AddClass(ObjectClass):
    """Finite direct sums ``sum sigma_i^(n_i)`` (including zero)."""

    def __init__(self, sigma):
        self.sigma = _as_collection(sigma)

    def _combos(self, m: Rep):
        sig = self.sigma
        bounds = []
        for s in sig:
            b = min((m.dims[v] // s.dims[v] for v in range(len(m.dims)) if s.dims[v]), default=0)
            bounds.append(b)
        for ns in itertools.product(*[range(b + 1) for b in bounds]):
            if all(sum(n * s.dims[v] for n, s in zip(ns, sig)) <= m.dims[v] for v in range(len(m.dims))):
                yield ns

    def member_dims(self, ns) -> tuple:
        return tuple(sum(n * s.dims[v] for n, s in zip(ns, self.sigma)) for v in range(len(self.sigma[0].dims)))

    def contains(self, m, budget):
        if m.is_zero():
            return True
        for ns in self._combos(m):
            if self.member_dims(ns) != m.dims:
                continue
            parts = [s for n, s in zip(ns, self.sigma) for _ in range(n)]
            r = is_isomorphic(direct_sum(parts, m.base), m, budget=budget.left)
            if r.status is IsoStatus.PROBABLY_NOT:
                raise BudgetExceeded("isomorphism test inconclusive")
            if r:
                return True
        return False

    def _spaces(self, field, d, k, budget):
        if not field.is_finite:
            if d > 1:
                raise DeformationError("exhaustive search over Q needs hom spaces of dimension <= 1")
            return [[]] if k == 0 else ([[[field.one]]] if d == 1 and k == 1 else [])
        budget.spend(count_subspaces(field.p, d, k))
        return list(subspaces(field, d, k))

    def _ordered_combos(self, m):
        combos = list(self._combos(m))
        combos.sort(key=lambda ns: -sum(self.member_dims(ns)))
        return combos

    def subobjects(self, m, budget):
        f = m.field
        homs = [hom_space(s, m) for s in self.sigma]
        seen = set()
        for ns in self._ordered_combos(m):
            choices = [self._spaces(f, H.dim, n, budget) if n <= H.dim else [] for H, n in zip(homs, ns)]
            for pick in itertools.product(*choices):
                maps = []
                for H, rows in zip(homs, pick):
                    for r in rows:
                        maps.append(H.element(r))
                if not maps:
                    spans = [Matrix.zeros(f, d, 0) for d in m.dims]
                else:
                    src = direct_sum([g.source for g in maps], m.base)
                    g = map_from_sum(maps, src)
                    if not g.is_mono():
                        continue
                    spans = [column_space_basis(b) for b in g.blocks]
                key = _span_key(spans)
                if key in seen:
                    continue
                seen.add(key)
                yield subrep(m, spans)[1]

    def quotients(self, m, budget):
        f = m.field
        homs = [hom_space(m, s) for s in self.sigma]
        seen = set()
        for ns in self._ordered_combos(m):
            choices = [self._spaces(f, H.dim, n, budget) if n <= H.dim else [] for H, n in zip(homs, ns)]
            for pick in itertools.product(*choices):
                maps = []
                for H, rows in zip(homs, pick):
                    for r in rows:
                        maps.append(H.element(r))
                if not maps:
                    spans = [Matrix.identity(f, d) for d in m.dims]
                else:
                    tgt = direct_sum([g.target for g in maps], m.base)
                    g = map_into_sum(maps, tgt)
                    if not g.is_epi():
                        continue
                    spans = [kernel_basis(b) for b in g.blocks]
                key = _span_key(spans)
                if key in seen:
                    continue
                seen.add(key)
                yield quotient(m, spans)[1]


@dataclass(frozen=True)
class Star:
    """Gabriel product ``left * right``: objects ``C`` with ``A >-> C ->> B``, ``A`` in left, ``B`` in right."""

    left: object
    right: object


def _is_finite_class(c) -> bool:
    return isinstance(c, ObjectClass)


def star_member(m: Rep, cls, budget: int | None = None, prefer: str = "sub") -> bool:
    """Membership in a (nested) Gabriel product.

    A product whose right factor is a basic class is searched by quotients
    onto members of that factor; otherwise by subobjects from the left factor.
    """
    return _star_member(m, cls, _Counter(budget or env_budget()), prefer)


def _star_member(m, cls, counter, prefer):
    if _is_finite_class(cls):
        return cls.contains(m, counter)
    left, right = cls.left, cls.right
    use_quotients = _is_finite_class(right) and (not _is_finite_class(left) or prefer == "quotient")
    if use_quotients:
        for proj in right.quotients(m, counter):
            K, _ = kernel(proj)
            if _star_member(K, left, counter, prefer):
                return True
        return False
    if not _is_finite_class(left):
        raise DeformationError("a Gabriel product needs at least one basic factor")
    for inc in left.subobjects(m, counter):
        Q, _ = quotient(m, [b for b in inc.blocks])
        if _star_member(Q, right, counter, prefer):
            return True
    return False


@dataclass
class AssociativityReport:
    samples: int
    agreements: int
    members: int
    disagreements: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.agreements == self.samples


def gabriel_associativity_check(a_list, b_list, c_list, samples: Sequence[Rep],
                                budget: int | None = None) -> AssociativityReport:
    """Compare ``(A*B)*C`` (searched quotient-first) with ``A*(B*C)`` (searched sub-first)."""
    A, B, C = ListClass(a_list), ListClass(b_list), ListClass(c_list)
    left_assoc = Star(Star(A, B), C)
    right_assoc = Star(A, Star(B, C))
    agree = members = 0
    bad = []
    for k, m in enumerate(samples):
        x = star_member(m, left_assoc, budget)
        y = star_member(m, right_assoc, budget)
        if x == y:
            agree += 1
            members += int(x)
        else:
            bad.append(k)
    return AssociativityReport(len(samples), agree, members, bad)


# Ex_k membership -------------------------------------------------------------------

@dataclass
class MembershipStep:
    """One conflation ``layer >-> current ->> next`` with ``layer`` in ``add(sigma)``."""

    layer_inclusion: RepMap  # layer -> current
    projection: RepMap  # current -> next
    multiplicities: tuple | None = None


@dataclass
class MembershipCertificate:
    module: Rep
    steps: list
    mode: str

    @property
    def depth(self) -> int:
        """Number of layers."""
        return len(self.steps)

    @property
    def level(self) -> int:
        """Smallest ``k`` with the module in ``Ex_k``: one less than the number of layers."""
        return max(len(self.steps) - 1, 0)


def verify_certificate(cert: MembershipCertificate, sigma) -> bool:
    sigma = _as_collection(sigma)
    add = AddClass(sigma)
    counter = _Counter(env_budget())
    current = cert.module
    for st in cert.steps:
        inc, proj = st.layer_inclusion, st.projection
        if inc.target.dims != current.dims or proj.source.dims != current.dims:
            return False
        if not SES(inc, proj).check():
            return False
        if not add.contains(inc.source, counter):
            return False
        current = proj.target
    return current.is_zero()


def _layers_to_certificate(m: Rep, incs: list) -> MembershipCertificate:
    steps = []
    current = m
    for inc in incs:
        layer, layer_inc = subrep(current, list(inc.blocks))
        Q, proj = quotient(current, list(inc.blocks))
        steps.append(MembershipStep(layer_inc, proj))
        current = Q
    return MembershipCertificate(m, steps, "")


def _socle_series(m: Rep, sigma: Collection, max_layers: int):
    steps = []
    current = m
    while not current.is_zero():
        if len(steps) >= max_layers:
            return None
        maps, mults = [], []
        for s in sigma:
            H = hom_space(s, current)
            maps.extend(H.basis)
            mults.append(H.dim)
        if not maps:
            return None
        src = direct_sum([g.source for g in maps], m.base)
        ev = map_from_sum(maps, src)
        if not ev.is_mono():
            return None
        spans = list(ev.blocks)
        nxt, proj = quotient(current, spans)
        steps.append(MembershipStep(ev, proj, tuple(mults)))
        current = nxt
    return steps


def ex_membership(m: Rep, sigma, k: int, budget: int | None = None) -> MembershipCertificate | None:
    """A filtration of ``m`` with at most ``k + 1`` layers in ``add(sigma)``, or ``None``.

    For a simple collection the sigma-socle series is computed directly; it is
    the shortest such filtration, so failure is exact over any field.  Other
    collections use an exhaustive subobject search (finite fields, or hom
    spaces of dimension at most one over Q).
    """
    sigma = _as_collection(sigma)
    if m.base != sigma.base:
        raise DeformationError("module and collection over different bases")
    if k < 0:
        return None
    if is_simple_collection(sigma):
        steps = _socle_series(m, sigma, k + 1)
        return None if steps is None else MembershipCertificate(m, steps, "socle-series")
    counter = _Counter(budget or env_budget())
    add = AddClass(sigma)
    chain = _search_layers(m, add, k, counter)
    if chain is None:
        return None
    cert = _layers_to_certificate(m, chain)
    cert.mode = "search"
    return cert


def _search_layers(m: Rep, add: AddClass, k: int, counter) -> list | None:
    if m.is_zero():
        return []
    if k == 0:
        if add.contains(m, counter):
            full = subrep(m, [Matrix.identity(m.field, d) for d in m.dims])[1]
            return [full]
        return None
    for inc in add.subobjects(m, counter):
        if inc.source.is_zero():
            continue
        Q, _ = quotient(m, list(inc.blocks))
        rest = _search_layers(Q, add, k - 1, counter)
        if rest is not None:
            return [inc] + rest
    return None


# deformation elements ------------------------------------------------------------------

@dataclass(eq=False)
class DeformationElement:
    """A flat A-object with R-maps ``phi_i: Z_i -> sigma_i`` identifying its reduction."""

    obj: AObject
    phi: tuple
    sigma: tuple

    def validate(self):
        z = self.obj
        if not is_flat(z):
            raise DeformationError("A-object is not flat")
        if len(self.phi) != z.algebra.n or len(self.sigma) != z.algebra.n:
            raise DeformationError("phi and sigma must have one entry per vertex")
        for i, ((red, proj), g, s) in enumerate(zip(reduction(z), self.phi, self.sigma)):
            RepMap(z.parts[i], s, g.blocks).validate()
            if not g.is_epi():
                raise DeformationError(f"phi_{i} is not surjective")
            # kernel of phi_i must be the radical part
            for y, (gb, pb) in enumerate(zip(g.blocks, proj.blocks)):
                kg = kernel_basis(gb)
                kp = kernel_basis(pb)
                if kg.ncols != kp.ncols or hstack(z.field, [kg, kp], kg.nrows).rank() != kg.ncols:
                    raise DeformationError(f"phi_{i} does not induce an isomorphism on the reduction")
        return self


class EquivalenceStatus(enum.Enum):
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"
    PROBABLY_NOT = "ProbablyNot"


@dataclass
class EquivalenceResult:
    status: EquivalenceStatus
    witness: list | None = None  # per-vertex R-isomorphisms Z_i -> Z'_i
    solution_dim: int = 0

    def __bool__(self):
        return self.status is EquivalenceStatus.EQUIVALENT


def verify_equivalence_witness(d1: DeformationElement, d2: DeformationElement, psi: Sequence[RepMap]) -> bool:
    from .aobjects import is_aobject_morphism
    if not is_aobject_morphism(d1.obj, d2.obj, psi):
        return False
    if not all(g.is_iso() for g in psi):
        return False
    return all(d2.phi[i] @ psi[i] == d1.phi[i] for i in range(len(psi)))


def deformations_equivalent(d1: DeformationElement, d2: DeformationElement, budget: int | None = None,
                            rng: random.Random | None = None) -> EquivalenceResult:
    """Is there a bimodule isomorphism ``psi: Z -> Z'`` with ``phi' o psi = phi``?"""
    z1, z2 = d1.obj, d2.obj
    f = z1.field
    if [p.dims for p in z1.parts] != [p.dims for p in z2.parts]:
        return EquivalenceResult(EquivalenceStatus.NOT_EQUIVALENT)
    H = aobject_hom_space(z1, z2)
    basis = [z1.split_map(z2, h) for h in H.basis]
    # linear system sum_k t_k phi'_i psi_k,i = phi_i
    cols = []
    for maps in basis:
        cols.append([x for i, g in enumerate(maps) for x in (d2.phi[i] @ g).vector()])
    rhs = [x for g in d1.phi for x in g.vector()]
    if cols:
        Msys = Matrix.from_columns(f, cols, len(rhs))
    else:
        Msys = Matrix.zeros(f, len(rhs), 0)
    x, K = solve(Msys, Matrix(f, len(rhs), 1, [[v] for v in rhs]))
    if x is None:
        return EquivalenceResult(EquivalenceStatus.NOT_EQUIVALENT)
    t0 = x.column(0)

    def combo(t):
        out = []
        for i in range(z1.algebra.n):
            g = RepMap.zero(z1.parts[i], z2.parts[i])
            for c, maps in zip(t, basis):
                if c:
                    g = g + maps[i].scale(c)
            out.append(g)
        return out

    psi0 = combo(t0)
    base_blocks = [b for g in psi0 for b in g.blocks]
    family = []
    for j in range(K.ncols):
        family.append([b for g in combo(K.column(j)) for b in g.blocks])
    t, exact = find_invertible(f, family, base=base_blocks, budget=budget or env_budget(), rng=rng)
    if t is None:
        status = EquivalenceStatus.NOT_EQUIVALENT if exact else EquivalenceStatus.PROBABLY_NOT
        return EquivalenceResult(status, solution_dim=K.ncols)
    coeffs = list(t0)
    for c, j in zip(t, range(K.ncols)):
        kc = K.column(j)
        coeffs = [f(a + c * b) for a, b in zip(coeffs, kc)]
    psi = combo(coeffs)
    assert verify_equivalence_witness(d1, d2, psi)
    return EquivalenceResult(EquivalenceStatus.EQUIVALENT, psi, K.ncols)


# the free frame sum_i A e_i (x) V_i ------------------------------------------------------

class LaudalFrame:
    """Free left A-modules ``F = sum_i A e_i (x) V_i`` with ``V_i`` the graded space of ``sigma_i``.

    An R-action on ``F`` commuting with ``A`` is fixed by blocks
    ``N_{r,c}: (V_i)_y -> (V_j)_x`` for each R-arrow ``r: x -> y`` and residue
    walk ``c`` in ``e_i A e_j``; the idempotent blocks are ``sigma_i``'s own
    arrow matrices, the radical blocks are free parameters.
    """

    def __init__(self, A: PathAlgebra, sigma):
        sigma = _as_collection(sigma)
        if len(sigma) != A.n:
            raise DeformationError(f"collection has {len(sigma)} objects, algebra has {A.n} vertices")
        if A.field != sigma.base.field:
            raise DeformationError("algebra and collection over different fields")
        self.A, self.sigma, self.R = A, sigma, sigma.base
        R = self.R
        self.positions = []
        self.index = []
        for x in range(R.n):
            pos, idx = [], {}
            for j in range(A.n):
                for w in range(A.dim):
                    if A.basis[w][0] != j:
                        continue
                    for t in range(sigma[j].dims[x]):
                        idx[(j, w, t)] = len(pos)
                        pos.append((j, w, t))
            self.positions.append(pos)
            self.index.append(idx)
        self.rad_walks = [(i, j, c) for i in range(A.n) for j in range(A.n)
                          for c in A.walks_between(j, i) if A.basis[c][1]]
        self.param_slots = []  # (arrow k, i, j, c, rows, cols)
        for k, r in enumerate(R.quiver.arrows):
            x, y = r.source, r.target
            for i, j, c in self.rad_walks:
                rows, cols = sigma[j].dims[x], sigma[i].dims[y]
                if rows and cols:
                    self.param_slots.append((k, i, j, c, rows, cols))
        self.gauge_slots = []  # (vertex x, i, j, c, rows, cols)
        for x in range(R.n):
            for i, j, c in self.rad_walks:
                rows, cols = sigma[j].dims[x], sigma[i].dims[x]
                if rows and cols:
                    self.gauge_slots.append((x, i, j, c, rows, cols))
        self.param_count = sum(r * c for *_, r, c in self.param_slots)
        self.gauge_count = sum(r * c for *_, r, c in self.gauge_slots)

    @property
    def field(self) -> Field:
        return self.A.field

    def dims(self) -> list[int]:
        return [len(p) for p in self.positions]

    def _split(self, values, slots):
        out = {}
        o = 0
        f = self.field
        for slot in slots:
            rows, cols = slot[-2], slot[-1]
            vals = values[o:o + rows * cols]
            out[slot[:4]] = Matrix(f, rows, cols, [vals[i * cols:(i + 1) * cols] for i in range(rows)])
            o += rows * cols
        return out

    def _alinear(self, x: int, y: int, blocks: dict, key0, identity_blocks) -> Matrix:
        """Matrix ``F_y -> F_x`` of the A-linear map with the given generator blocks."""
        A, f = self.A, self.field
        nx, ny = len(self.positions[x]), len(self.positions[y])
        rows = [[f.zero] * ny for _ in range(nx)]
        gens = []
        for i in range(A.n):
            e = A.index[(i, ())]
            if identity_blocks[i] is not None:
                gens.append((i, i, e, identity_blocks[i]))
        for (k0, i, j, c), N in blocks.items():
            if k0 == key0:
                gens.append((i, j, c, N))
        for col, (i, w, t) in enumerate(self.positions[y]):
            for gi, j, c, N in gens:
                if gi != i:
                    continue
                prod = A.table[w][c]
                if not prod:
                    continue
                for s in range(N.nrows):
                    val = N.rows[s][t]
                    if not val:
                        continue
                    for u, lam in prod:
                        row = self.index[x][(j, u, s)]
                        rows[row][col] = f(rows[row][col] + lam * val)
        return Matrix(f, nx, ny, rows)

    def action(self, values: Sequence) -> list[Matrix]:
        """Concrete R-arrow matrices ``F_y -> F_x`` for a parameter vector."""
        blocks = self._split(values, self.param_slots)
        out = []
        for k, r in enumerate(self.R.quiver.arrows):
            ident = [s.maps[k] for s in self.sigma]
            out.append(self._alinear(r.source, r.target, blocks, k, ident))
        return out

    def gauge(self, values: Sequence) -> list[Matrix]:
        """``psi_x = id + sum N'_c (x) c`` at every R-vertex."""
        blocks = self._split(values, self.gauge_slots)
        out = []
        for x in range(self.R.n):
            ident = [Matrix.identity(self.field, s.dims[x]) for s in self.sigma]
            out.append(self._alinear(x, x, blocks, x, ident))
        return out

    def parameters_of(self, action: Sequence[Matrix]) -> tuple:
        """Read the radical blocks back from concrete arrow matrices."""
        A = self.A
        vals = []
        for k, i, j, c, rows, cols in self.param_slots:
            r = self.R.quiver.arrows[k]
            x, y = r.source, r.target
            e_i = A.index[(i, ())]
            X = action[k]
            for s in range(rows):
                for t in range(cols):
                    vals.append(X.rows[self.index[x][(j, c, s)]][self.index[y][(i, e_i, t)]])
        return tuple(vals)

    def satisfies_relations(self, action: Sequence[Matrix]) -> bool:
        rep = Rep(self.R, self.dims(), action, check=False)
        return all(rep.relation_value(rel).is_zero() for rel in self.R.relations)

    def element(self, values: Sequence) -> DeformationElement:
        return self.element_from_action(self.action(values))

    def element_from_action(self, action: Sequence[Matrix]) -> DeformationElement:
        A, R, f = self.A, self.R, self.field
        total = Rep(R, self.dims(), action, check=False)
        parts, incs = [], []
        for i in range(A.n):
            spans = []
            for x in range(R.n):
                cols = []
                for p, (j, w, t) in enumerate(self.positions[x]):
                    if A.quiver.walk_target(A.basis[w]) == i:
                        e = [f.zero] * len(self.positions[x])
                        e[p] = f.one
                        cols.append(e)
                spans.append(Matrix.from_columns(f, cols, len(self.positions[x])))
            part, inc = subrep(total, spans)
            parts.append(part)
            incs.append(inc)
        # positions inside each part, in the order used by subrep (increasing frame position)
        local = []
        for i in range(A.n):
            loc = []
            for x in range(R.n):
                mp = {}
                for p, (j, w, t) in enumerate(self.positions[x]):
                    if A.quiver.walk_target(A.basis[w]) == i:
                        mp[(j, w, t)] = len(mp)
                loc.append(mp)
            local.append(loc)
        arrow_maps = []
        for k, a in enumerate(A.quiver.arrows):
            u, v = a.source, a.target
            ael = A.arrow(k)
            blocks = []
            for x in range(R.n):
                src, tgt = local[u][x], local[v][x]
                rows = [[f.zero] * len(src) for _ in range(len(tgt))]
                for (j, w, t), col in src.items():
                    prod = A.mul(ael, A.unit_vector(w))
                    for u2, lam in enumerate(prod):
                        if lam:
                            rows[tgt[(j, u2, t)]][col] = f(rows[tgt[(j, u2, t)]][col] + lam)
                blocks.append(Matrix(f, len(tgt), len(src), rows))
            arrow_maps.append(RepMap(parts[u], parts[v], tuple(blocks)))
        z = AObject(A, R, parts, arrow_maps)
        phis = []
        for i in range(A.n):
            e_i = A.index[(i, ())]
            blocks = []
            for x in range(R.n):
                d = self.sigma[i].dims[x]
                rows = [[f.zero] * len(local[i][x]) for _ in range(d)]
                for t in range(d):
                    rows[t][local[i][x][(i, e_i, t)]] = f.one
                blocks.append(Matrix(f, d, len(local[i][x]), rows))
            phis.append(RepMap(parts[i], self.sigma[i], tuple(blocks)))
        return DeformationElement(z, tuple(phis), tuple(self.sigma))


@dataclass
class NcdefEnumeration:
    elements: list
    orbit_sizes: list
    parameters: list  # parameter tuple of each representative
    raw_count: int
    valid_count: int
    param_count: int
    gauge_size: int

    @property
    def orbit_count(self) -> int:
        return len(self.elements)


def ncdef_enumerate(A: PathAlgebra, sigma, budget: int | None = None) -> NcdefEnumeration:
    """Representatives of deformations of ``sigma`` over ``A`` (finite field, exhaustive).

    The identification ``phi`` is pinned to the canonical one, so the residual
    symmetry is the group of frame automorphisms ``id + (radical blocks)``.
    """
    frame = LaudalFrame(A, sigma)
    f = frame.field
    if not f.is_finite:
        raise DeformationError("enumeration needs a finite field")
    budget = budget or env_budget()
    p = f.p
    raw = p ** frame.param_count
    group = p ** frame.gauge_count
    if raw * max(group, 1) > budget:
        raise BudgetExceeded(f"{raw} raw assignments x {group} gauge elements exceeds budget {budget}")
    valid = {}
    for vals in itertools.product(range(p), repeat=frame.param_count):
        act = frame.action(vals)
        if frame.satisfies_relations(act):
            valid[tuple(vals)] = act
    gauges = []
    for g in itertools.product(range(p), repeat=frame.gauge_count):
        psi = frame.gauge(g)
        gauges.append((psi, [m.inverse() for m in psi]))
    seen = set()
    reps, sizes, params = [], [], []
    arrows = frame.R.quiver.arrows
    for key in sorted(valid):
        if key in seen:
            continue
        act = valid[key]
        orbit = set()
        for psi, psi_inv in gauges:
            conj = [psi[r.source] @ act[k] @ psi_inv[r.target] for k, r in enumerate(arrows)]
            orbit.add(frame.parameters_of(conj))
        if not orbit <= set(valid):
            raise DeformationError("gauge action left the space of valid assignments")
        seen |= orbit
        reps.append(frame.element_from_action(act))
        sizes.append(len(orbit))
        params.append(key)
    return NcdefEnumeration(reps, sizes, params, raw, len(valid), frame.param_count, group)


# fully-faithfulness criterion --------------------------------------------------------------

class FFStatus(enum.Enum):
    FULLY_FAITHFUL = "FullyFaithful"
    FAILS_HOM = "FailsHom"
    FAILS_EXT_INJECTIVITY = "FailsExtInjectivity"


@dataclass
class FFVerdict:
    status: FFStatus
    pair: tuple | None = None
    witness: list | None = None  # kernel vector of Phi^E on Ext^1_A(S_i, S_j)
    hom_dims: list | None = None
    ext_ranks: dict | None = None

    def __bool__(self):
        return self.status is FFStatus.FULLY_FAITHFUL


def ext_comparison_matrix(z: AObject, i: int, j: int, images=None) -> tuple[Matrix, int]:
    """Matrix of ``Ext^1_A(S_i, S_j) -> Ext^1_R(T S_i, T S_j)`` in the standard bases."""
    A = z.algebra
    f = z.field
    Si, Sj = simple(A, i), simple(A, j)
    EA = ext1(Si, Sj, alg=A)
    Ti = tensor_apply(z, Si)
    Tj = tensor_apply(z, Sj)
    ER = ext1(Ti.rep, Tj.rep)
    cols = []
    for xi in range(EA.dim):
        coords = [f.one if k == xi else f.zero for k in range(EA.dim)]
        ses = EA.extension(coords)
        Tm = tensor_apply(z, ses.mid)
        ti = tensor_map(z, ses.i, Tj, Tm)
        tp = tensor_map(z, ses.p, Tm, Ti)
        cols.append(ER.class_of_ses(SES(ti, tp)))
    M = Matrix.from_columns(f, cols, ER.dim) if cols else Matrix.zeros(f, ER.dim, 0)
    return M, EA.dim


def ff_criterion(z: AObject) -> FFVerdict:
    if not is_flat(z):
        raise DeformationError("ff_criterion needs a flat A-object")
    A = z.algebra
    T = [tensor_apply(z, simple(A, i)).rep for i in range(A.n)]
    hom_dims = [[hom_space(T[i], T[j]).dim for j in range(A.n)] for i in range(A.n)]
    for i in range(A.n):
        for j in range(A.n):
            if hom_dims[i][j] != (1 if i == j else 0):
                return FFVerdict(FFStatus.FAILS_HOM, (i, j), hom_dims=hom_dims)
    ranks = {}
    for i in range(A.n):
        for j in range(A.n):
            M, d = ext_comparison_matrix(z, i, j)
            r = M.rank() if d else 0
            ranks[(i, j)] = (r, d)
            if r < d:
                K = kernel_basis(M)
                return FFVerdict(FFStatus.FAILS_EXT_INJECTIVITY, (i, j), K.column(0), hom_dims, ranks)
    return FFVerdict(FFStatus.FULLY_FAITHFUL, hom_dims=hom_dims, ext_ranks=ranks)
