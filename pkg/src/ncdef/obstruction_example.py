"""A worked example where the deformation functor of a collection is not
determined by the simple-collection data of its objects.

Base category: representations of the quiver with vertices 1, 2, 3 and arrows
``z31: 3 -> 1``, ``z32: 3 -> 2``, ``z23: 2 -> 3`` (no relations).  The collection
is ``(L1, M, L3)`` with ``L_i`` simple and ``0 -> L2 -> M -> L3 -> 0``
non-split; ``N`` is the non-split extension ``0 -> L3 --b--> N --c--> M -> 0``
and ``a: M -> L3`` is the projection onto the top.

Two algebras act: ``B = k(1 <-p- 2 <-q- 3)`` and ``A`` with the single arrow
``q: 3 -> 2`` (vertex 1 isolated).  ``alpha: B -> A`` kills ``p``.  Extensions
``xi`` in ``Ext^1(L1, N)`` give B-objects ``theta(xi) = (L3 -> N -> W_xi)``.
``run_obstruction_example`` checks each claim by exact computation and
returns a structured report.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field, asdict

from .algebra import AlgebraHom, BoundQuiver, Quiver, build_algebra, check_hom
from .aobjects import AObject, is_flat, is_isomorphic_aobjects, pullback, tensor_apply, tensor_map
from .deformation import (DeformationElement, EquivalenceStatus, deformations_equivalent,
                          verify_equivalence_witness)
from .homology import SES, ext1
from .linalg import Field, Matrix, block_diag
from .rep import Rep, RepMap, hom_space, is_isomorphic, projective, simple, radical


@dataclass
class Step:
    name: str
    claim: str
    ok: bool
    details: dict = dc_field(default_factory=dict)


@dataclass
class ObstructionReport:
    field: str
    steps: list
    seconds: float = 0.0
    warnings: list = dc_field(default_factory=list)
    aborted: bool = False

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.steps)

    def to_dict(self) -> dict:
        return {"field": self.field, "ok": self.ok, "aborted": self.aborted, "warnings": list(self.warnings),
                "steps": [asdict(s) for s in self.steps]}


class ExampleData:
    """Quivers, modules, maps and algebras of the example over a given field."""

    def __init__(self, f: Field):
        self.f = f
        Zq = Quiver.build([1, 2, 3], [("z31", 3, 1), ("z32", 3, 2), ("z23", 2, 3)])
        self.Z = BoundQuiver(Zq, (), f)
        M = lambda rows, r, c: Matrix(f, r, c, rows)  # noqa: E731
        self.L1, self.L2, self.L3 = (simple(self.Z, i) for i in range(3))
        # arrow u -> v is a dims[u] x dims[v] matrix
        self.M = Rep(self.Z, [0, 1, 1], [Matrix.zeros(f, 1, 0), M([[0]], 1, 1), M([[1]], 1, 1)])
        self.N = Rep(self.Z, [0, 1, 2], [Matrix.zeros(f, 2, 0), M([[1], [0]], 2, 1), M([[0, 1]], 1, 2)])
        z = Matrix.zeros
        self.b = RepMap.checked(self.L3, self.N, (z(f, 0, 0), z(f, 1, 0), M([[1], [0]], 2, 1)))
        self.c = RepMap.checked(self.N, self.M, (z(f, 0, 0), M([[1]], 1, 1), M([[0, 1]], 1, 2)))
        self.a = RepMap.checked(self.M, self.L3, (z(f, 0, 0), z(f, 0, 1), M([[1]], 1, 1)))
        self.bac = self.b @ self.a @ self.c
        self.E_L1_N = ext1(self.L1, self.N)
        self.E_L1_L3 = ext1(self.L1, self.L3)
        self.E_L1_M = ext1(self.L1, self.M)
        # cocycles on the single arrow z31 (3 -> 1)
        one = f.one
        self.u = [M([[one]], 1, 1), z(f, 1, 0), z(f, 0, 0)]  # L1 by L3
        self.v = [M([[one]], 1, 1), z(f, 1, 0), z(f, 1, 0)]  # L1 by M
        self.bu = self.E_L1_L3.pushforward_cocycle(self.b, self.u)
        self.vbar = [M([[0], [one]], 2, 1), z(f, 2, 0), z(f, 1, 0)]
        # algebras
        Bq = Quiver.build([1, 2, 3], [("p", 2, 1), ("q", 3, 2)])
        Aq = Quiver.build([1, 2, 3], [("q", 3, 2)])
        self.B = build_algebra(BoundQuiver(Bq, (), f))
        self.A = build_algebra(BoundQuiver(Aq, (), f))
        self.alpha = AlgebraHom.from_generators(self.B, self.A, {"q": [(1, "q")]})
        self.sigma = (self.L1, self.M, self.L3)

    # objects -------------------------------------------------------------
    def a_object(self, sigma_map: RepMap) -> AObject:
        """``(Z3 --sigma--> Z2, Z1)`` over A; parts indexed by vertices 1, 2, 3."""
        return AObject(self.A, self.Z, [self.L1, sigma_map.target, sigma_map.source], [sigma_map])

    def b_object(self, tau2: RepMap, tau1: RepMap) -> AObject:
        """``Z3 --tau2--> Z2 --tau1--> Z1`` over B."""
        return AObject(self.B, self.Z, [tau1.target, tau1.source, tau2.source], [tau1, tau2])

    def theta(self, cocycle) -> tuple[AObject, SES]:
        ses = self.E_L1_N.extension(cocycle)
        return self.b_object(self.b, ses.i), ses

    def deformation(self, cocycle) -> DeformationElement:
        z, ses = self.theta(cocycle)
        phi = (ses.p, self.c, RepMap.identity(self.L3))
        return DeformationElement(z, phi, self.sigma)

    def add(self, c1, c2):
        return [x + y for x, y in zip(c1, c2)]

    def scale(self, s, c1):
        return [x.scale(s) for x in c1]


def _class(E, c):
    return [E.field.to_str(x) for x in E.coords(c)]


def _mat(m: Matrix) -> list:
    return m.to_strings()


def _maps(g: RepMap) -> list:
    return [_mat(b) for b in g.blocks]


def run_obstruction_example(field: Field | str = "Q", rng: random.Random | None = None) -> ObstructionReport:
    """Run the checks in order; the first failing check ends the run."""
    f = Field.from_name(field) if isinstance(field, str) else field
    rng = rng or random.Random(0)
    t0 = time.perf_counter()
    D = ExampleData(f)
    steps = []
    for st in _iter_steps(D, f, rng):
        steps.append(st)
        if not st.ok:
            break
    else:
        steps.append(Step("conclusion",
                          "two distinct Ext classes give non-isomorphic B-objects that are equal as deformations,"
                          " so theta is not injective for this collection",
                          True, {"classes": ["vbar", "vbar+bu"]}))
    warnings = []
    if f.is_finite and f.p <= 3:
        warnings.append(f"field of size {f.p}: small-field coincidences possible, run is exploratory")
    return ObstructionReport(f.name, steps, time.perf_counter() - t0, warnings, aborted=not steps[-1].ok)


def _iter_steps(D: "ExampleData", f: Field, rng):

    # 1. endomorphisms of N
    H = hom_space(D.N, D.N)
    ident = RepMap.identity(D.N)
    span_ok = H.dim == 2 and Matrix.from_columns(f, [H.coords(ident), H.coords(D.bac)], 2).rank() == 2
    yield Step("end_N", "End(N) is two-dimensional with basis Id, bac and (bac)^2 = 0",
                      span_ok and (D.bac @ D.bac).is_zero() and not D.bac.is_zero(),
                      {"dim_End_N": H.dim, "dim_Hom_M_L3": hom_space(D.M, D.L3).dim,
                       "bac": _maps(D.bac)})

    # 2. Ext groups
    E = D.E_L1_N
    basis = Matrix.from_columns(f, [E.coords(D.bu), E.coords(D.vbar)], E.dim) if E.dim == 2 else None
    ok = (E.dim == 2 and basis.rank() == 2 and D.E_L1_L3.dim == 1 and D.E_L1_M.dim == 1
          and not D.E_L1_L3.is_coboundary(D.u)
          and E.coords(D.vbar) != E.coords(E.zero_cocycle())
          and D.E_L1_M.coords(D.E_L1_N.pushforward_cocycle(D.c, D.vbar)) == D.E_L1_M.coords(D.v)
          and D.E_L1_L3.coords(D.E_L1_M.pushforward_cocycle(D.a, D.v)) == D.E_L1_L3.coords(D.u))
    yield Step("ext_groups",
                      "Ext^1(L1,N) has basis bu, vbar where c vbar = v and a v = u; Ext^1(L1,L3) = k",
                      ok, {"dim_Ext_L1_N": E.dim, "dim_Ext_L1_L3": D.E_L1_L3.dim,
                           "dim_Ext_L1_M": D.E_L1_M.dim,
                           "class_bu": _class(E, D.bu), "class_vbar": _class(E, D.vbar),
                           "cocycle_bu": [_mat(m) for m in D.bu], "cocycle_vbar": [_mat(m) for m in D.vbar]})

    # 3. action of bac on Ext^1(L1, N)
    push = lambda c: E.pushforward_cocycle(D.bac, c)  # noqa: E731
    zero = E.coords(E.zero_cocycle())
    ok = E.coords(push(D.bu)) == zero and E.coords(push(D.vbar)) == E.coords(D.bu)
    yield Step("bac_action", "(bac) kills bu and sends vbar to bu", ok,
                      {"bac_bu": _class(E, push(D.bu)), "bac_vbar": _class(E, push(D.vbar))})

    # 4. the algebras and the homomorphism
    hc = check_hom(D.alpha)
    yield Step("algebras", "alpha: B -> A killing p is an algebra homomorphism compatible with vertices",
                      bool(hc) and D.B.dim == 6 and D.A.dim == 4,
                      {"dim_B": D.B.dim, "dim_A": D.A.dim, "hom_check": hc.witness or "ok"})

    # 5. flatness
    zero_L3_N = RepMap.zero(D.L3, D.N)
    cases = {
        "A:(L3-b->N, L1)": (D.a_object(D.b), True),
        "A:(L3-0->N, L1)": (D.a_object(zero_L3_N), False),
        "B:theta(bu)": (D.theta(D.bu)[0], True),
        "B:(L3-b->N-c->M)": (D.b_object(D.b, D.c), False),
    }
    flat_details = {}
    ok = True
    for name, (obj, expect) in cases.items():
        rep = is_flat(obj)
        # flat iff the structure maps are injective
        mono = all(g.is_mono() for g in obj.arrow_maps)
        flat_details[name] = {"flat": rep.flat, "total_dim": rep.total_dim, "free_dim": rep.free_dim}
        ok = ok and rep.flat == expect == mono
    yield Step("flatness", "an object of either shape is flat exactly when its structure maps are mono",
                      ok, flat_details)

    # 6. injectivity of theta when Z2 has trivial endomorphisms: computed in mod-B
    yield _theta_injective_in_mod_B(D, rng)

    # 7. theta(bu) and theta(vbar) are not isomorphic; both restrict to the A-object
    zb, _ = D.theta(D.bu)
    zv, _ = D.theta(D.vbar)
    iso = is_isomorphic_aobjects(zb, zv, rng=rng)
    rho_A = D.a_object(D.b)
    restrict_ok = True
    for cyc in (D.bu, D.vbar, D.add(D.vbar, D.bu)):
        restrict_ok = restrict_ok and bool(is_isomorphic_aobjects(pullback(D.alpha, D.theta(cyc)[0]), rho_A, rng=rng))
    # the tensor image of 0 -> rad P1 -> P1 -> S1 -> 0 recovers the class
    class_ok = True
    for cyc in (D.bu, D.vbar):
        z, _ = D.theta(cyc)
        P1 = projective(D.B, 0)
        rad, inc = radical(P1)
        S1 = simple(D.B, 0)
        proj = RepMap.checked(P1, S1, tuple(Matrix.identity(f, 1) if v == 0 else Matrix.zeros(f, 0, P1.dims[v])
                                            for v in range(3)))
        Tr, TP, TS = (tensor_apply(z, m) for m in (rad, P1, S1))
        ses = SES(tensor_map(z, inc, Tr, TP), tensor_map(z, proj, TP, TS))
        if not (ses.check() and is_isomorphic(Tr.rep, D.N) and is_isomorphic(TS.rep, D.L1)):
            class_ok = False
            continue
        # identify T(rad P1) with N through the canonical iso from the B-object
        ident = _identify(Tr.rep, D.N, z, rng)
        if ident is None:
            class_ok = False
            continue
        ses_N = SES(ses.i @ ident.inverse(), _to_L1(ses.p, D, rng))
        cls = E.class_of_ses(ses_N)
        # class is defined up to Aut(N) x Aut(L1); compare spans after that action
        class_ok = class_ok and _same_orbit(E, cls, E.coords(cyc), D)
    yield Step("theta_not_iso",
                      "theta(bu) and theta(vbar) are non-isomorphic B-objects with the same restriction to A",
                      iso.status.value == "NotIsomorphic" and restrict_ok and class_ok,
                      {"iso_status": iso.status.value, "restrictions_match": restrict_ok,
                       "tensor_classes_match": class_ok})

    # 8. theta(vbar) and theta(vbar + bu) are equivalent deformations
    d1 = D.deformation(D.vbar).validate()
    d2 = D.deformation(D.add(D.vbar, D.bu)).validate()
    res = deformations_equivalent(d1, d2, rng=rng)
    eps = RepMap.identity(D.N) + D.bac
    W1 = d1.obj.parts[0]
    W2 = d2.obj.parts[0]
    gamma = RepMap(W1, W2, tuple(block_diag(f, [eps.blocks[v], Matrix.identity(f, D.L1.dims[v])])
                                 for v in range(3)))
    explicit = [gamma, eps, RepMap.identity(D.L3)]
    try:
        gamma.validate()
        explicit_ok = verify_equivalence_witness(d1, d2, explicit)
    except Exception:
        explicit_ok = False
    yield Step("equivalent_deformations",
                      "theta(vbar) and theta(vbar + bu) are equivalent deformations via (gamma, Id + bac, Id)",
                      res.status is EquivalenceStatus.EQUIVALENT and explicit_ok,
                      {"status": res.status.value, "explicit_witness_ok": explicit_ok,
                       "solution_family_dim": res.solution_dim,
                       "witness": [_maps(g) for g in res.witness] if res.witness else None})



def _identify(T: Rep, N: Rep, z, rng):
    r = is_isomorphic(T, N, rng=rng)
    return r.witness if r else None


def _to_L1(p: RepMap, D: ExampleData, rng) -> RepMap:
    r = is_isomorphic(p.target, D.L1, rng=rng)
    return r.witness @ p


def _same_orbit(E, cls, target, D) -> bool:
    """Is ``cls`` in the orbit of ``target`` under automorphisms of N and scalars on L1?"""
    f = E.field
    # orbit elements: (lam Id + mu bac) * target * nu; with bac(bu) = 0, bac(vbar) = bu
    M = Matrix.from_columns(f, [E.coords(D.bu), E.coords(D.vbar)], 2)
    x = M.inverse().apply(cls)
    y = M.inverse().apply(list(target))
    # (y0, y1) -> (lam y0 + mu y1, lam y1) up to a nonzero scalar
    if y[1] != 0:
        return x[1] != 0
    return x[1] == 0 and (x[0] != 0) == (y[0] != 0)


def _theta_injective_in_mod_B(D: ExampleData, rng) -> Step:
    """In ``mod-B`` take the A-object ``(P3 -> P2, S1)``; Ext^1_B(S1, P2) is one-dimensional and
    distinct classes must give inequivalent deformations."""
    f = D.f
    Bb = D.B
    P = [projective(Bb, i) for i in range(3)]
    S1 = simple(Bb, 0)
    H = hom_space(P[2], P[1])
    sig = next(h for h in H.basis if h.is_mono())
    E = ext1(S1, P[1], alg=Bb)
    end_ok = hom_space(P[1], P[1]).dim == 1
    red2 = RepMap.checked(P[1], simple(Bb, 1), tuple(
        Matrix.identity(f, 1) if v == 1 else Matrix.zeros(f, 0, P[1].dims[v]) for v in range(3)))
    sigma_B = (S1, simple(Bb, 1), P[2])
    if f.is_finite:
        scalars = list(range(f.p))
    else:
        scalars = [0, 1, 2, -1]
    elems = []
    for s in scalars:
        ses = E.extension([f(s)])
        W = ses.mid
        end_W = hom_space(W, W).dim
        z = AObject(Bb, Bb.bound, [W, P[1], P[2]], [ses.i, sig])
        elems.append((s, DeformationElement(z, (ses.p, red2, RepMap.identity(P[2])), sigma_B), end_W))
    ok = E.dim == 1 and end_ok
    pairs = 0
    for x in range(len(elems)):
        for y in range(x + 1, len(elems)):
            r = deformations_equivalent(elems[x][1].validate(), elems[y][1].validate(), rng=rng)
            pairs += 1
            ok = ok and r.status is EquivalenceStatus.NOT_EQUIVALENT
    nonsplit_end = [e for s, _, e in elems if s != 0]
    ok = ok and all(e == 1 for e in nonsplit_end)
    return Step("theta_injective_mod_B",
                "with simple Z1, End(Z2) = End(W) = k, distinct extension classes give inequivalent deformations",
                ok, {"dim_Ext": E.dim, "classes_tested": len(elems), "pairs_compared": pairs,
                     "dim_End_W_nonsplit": sorted(set(nonsplit_end))})
