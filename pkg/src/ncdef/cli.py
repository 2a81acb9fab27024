"""Command-line driver: ``ncdef <command> [args] --input WORKSPACE.json``.

Exit codes: 0 success, 1 the mathematics says no (a witness is reported),
2 bad input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Callable

from . import __version__
from .algebra import are_conjugate, check_hom, free_algebra_dim_check
from .aobjects import is_flat, tensor_apply, tor1_defects
from .config import BudgetExceeded, env_budget
from .deformation import (ex_membership, ff_criterion, is_simple_collection,
                          ncdef_enumerate, verify_certificate)
from .homology import check_universal, df_truncation_algebra, ext1, is_truncated_polynomial, \
    universal_extension
from .linalg import Field, Matrix
from .obstruction_example import run_obstruction_example
from .rep import Rep, hom_space, loewy_length_of, projective, simple
from .workspace import WorkspaceError, load_workspace


class InputError(Exception):
    pass


class Outcome:
    def __init__(self, ok: bool, data: dict, text: str | None = None):
        self.ok, self.data, self.text = ok, data, text


def _mat(m: Matrix) -> list:
    return m.to_strings()


def _rep_json(m: Rep) -> dict:
    return {"dims": list(m.dims),
            "maps": {a.name: _mat(x) for a, x in zip(m.quiver.arrows, m.maps)}}


def _need_ws(args):
    if not args.input:
        raise InputError("--input is required for this command")
    return load_workspace(args.input)


def _algebra_or_module(ws, name):
    if name in ws.algebra_quiver:
        return "algebra", ws.algebra(name)
    if name in ws.modules:
        return "module", ws.module(name)
    raise WorkspaceError(name, "neither an algebra nor a module of this workspace")


# commands ---------------------------------------------------------------------------

def cmd_check_algebra(args, ws, rng) -> Outcome:
    A = ws.algebra(args.algebra)
    ok = free_algebra_dim_check(A)
    data = {"algebra": args.algebra, "dim": A.dim, "vertices": A.n, "loewy_length": A.loewy_length(),
            "basis": [A.quiver.walk_str(w) for w in A.basis], "associative": ok}
    return Outcome(ok, data)


def cmd_loewy(args, ws, rng) -> Outcome:
    kind, obj = _algebra_or_module(ws, args.name)
    ll = obj.loewy_length() if kind == "algebra" else loewy_length_of(obj)
    return Outcome(True, {"name": args.name, "kind": kind, "loewy_length": ll})


def cmd_simples(args, ws, rng) -> Outcome:
    A = ws.algebra(args.algebra)
    return Outcome(True, {"simples": [{"vertex": v, "dims": simple(A.bound, i).dims}
                                      for i, v in enumerate(A.quiver.vertices)]})


def cmd_projectives(args, ws, rng) -> Outcome:
    A = ws.algebra(args.algebra)
    out = []
    for i, v in enumerate(A.quiver.vertices):
        P = projective(A, i)
        out.append({"vertex": v, **_rep_json(P)})
    return Outcome(True, {"projectives": out})


def cmd_hom(args, ws, rng) -> Outcome:
    H = hom_space(ws.module(args.source), ws.module(args.target))
    return Outcome(True, {"dim": H.dim, "basis": [[_mat(b) for b in g.blocks] for g in H.basis]})


def cmd_ext1(args, ws, rng) -> Outcome:
    m, n = ws.module(args.source), ws.module(args.target)
    alg = None
    if m.base.relations:
        name = ws.algebra_name_of(m.base)
        alg = ws.algebra(name) if name else None
    E = ext1(m, n, alg=alg)
    return Outcome(True, {"dim": E.dim})


def cmd_class_of_ses(args, ws, rng) -> Outcome:
    ses = ws.sequence(args.sequence)
    alg = None
    if ses.sub.base.relations:
        name = ws.algebra_name_of(ses.sub.base)
        alg = ws.algebra(name) if name else None
    E = ext1(ses.quot, ses.sub, alg=alg)
    coords = E.class_of_ses(ses)
    return Outcome(True, {"dim": E.dim, "class": [ws.field.to_str(c) for c in coords],
                          "split": all(c == 0 for c in coords)})


def _simples_of(ws, m: Rep, coll: str | None):
    if coll:
        return ws.collection(coll)
    return [simple(m.base, i) for i in range(m.base.n)]


def cmd_univ_ext(args, ws, rng) -> Outcome:
    p = ws.module(args.module)
    sims = _simples_of(ws, p, args.simples)
    ue = universal_extension(p, sims)
    ok = check_universal(ue)
    return Outcome(ok, {"multiplicities": ue.multiplicities, "T_dims": ue.T.dims, "middle_dims": ue.middle.dims,
                        "universal_property": ok})


def cmd_df_tower(args, ws, rng) -> Outcome:
    sigma = ws.collection(args.collection)
    if not is_simple_collection(sigma):
        raise InputError(f"collection {args.collection} is not a simple collection")
    levels = []
    ok = True
    for l in range(args.levels + 1):
        P, G = df_truncation_algebra(sigma, l)
        entry = {"level": l, "dim_P": P.dim, "dim_Gamma": G.dim}
        if len(sigma) == 1:
            tp, _ = is_truncated_polynomial(G, l, rng=rng)
            entry["truncated_polynomial"] = tp
            ok = ok and tp
        levels.append(entry)
    return Outcome(ok, {"levels": levels})


def cmd_conjugate(args, ws, rng) -> Outcome:
    a, b = ws.algebra_hom(args.hom1), ws.algebra_hom(args.hom2)
    for name, h in ((args.hom1, a), (args.hom2, b)):
        hc = check_hom(h)
        if not hc:
            raise InputError(f"{name} is not an algebra homomorphism: {hc.witness}")
    r = are_conjugate(a, b, rng=rng, budget=env_budget())
    data = {"status": r.status.value}
    if r.witness is not None:
        data["witness"] = [[ws.field.to_str(c), a.target.quiver.walk_str(a.target.basis[j])]
                           for j, c in enumerate(r.witness) if c]
    return Outcome(bool(r), data)


def cmd_flat_check(args, ws, rng) -> Outcome:
    z = ws.aobject(args.aobject)
    rep = is_flat(z)
    data = {"flat": rep.flat, "total_dim": rep.total_dim, "free_dim": rep.free_dim,
            "top_multiplicities": rep.multiplicities}
    if not rep.flat:
        data["witness_vertex"] = z.algebra.quiver.vertices[rep.witness] if rep.witness is not None else None
        data["tor1_defects"] = tor1_defects(z)
    return Outcome(rep.flat, data)


def cmd_tensor(args, ws, rng) -> Outcome:
    z = ws.aobject(args.aobject)
    m = ws.module(args.module)
    if m.base != z.algebra.bound:
        raise InputError(f"module {args.module} is not a module over the algebra of {args.aobject}")
    T = tensor_apply(z, m)
    return Outcome(True, _rep_json(T.rep))


def cmd_simple_collection(args, ws, rng) -> Outcome:
    names = ws.collections.get(args.collection)
    if names is None:
        raise WorkspaceError(f"collections.{args.collection}", "unknown collection")
    r = is_simple_collection(ws.collection(args.collection))
    data = {"simple": r.ok, "hom_dims": r.hom_dims}
    if not r.ok:
        i, j = r.offending
        data["witness"] = [names[i], names[j]]
    return Outcome(r.ok, data)


def cmd_ex_member(args, ws, rng) -> Outcome:
    m = ws.module(args.module)
    sigma = ws.collection(args.collection)
    cert = ex_membership(m, sigma, args.depth)
    if cert is None:
        return Outcome(False, {"member": False, "depth_bound": args.depth})
    layers = [list(st.layer_inclusion.source.dims) for st in cert.steps]
    return Outcome(True, {"member": True, "level": cert.level, "layers": cert.depth, "layer_dims": layers,
                          "mode": cert.mode, "verified": verify_certificate(cert, sigma)})


def cmd_ncdef(args, ws, rng) -> Outcome:
    A = ws.algebra(args.algebra)
    sigma = ws.collection(args.collection)
    en = ncdef_enumerate(A, sigma)
    return Outcome(True, {"orbits": en.orbit_count, "orbit_sizes": en.orbit_sizes, "raw": en.raw_count,
                          "valid": en.valid_count, "parameters": en.param_count, "gauge_size": en.gauge_size,
                          "representatives": [[ws.field.to_str(x) for x in p] for p in en.parameters]})


def cmd_ff_check(args, ws, rng) -> Outcome:
    z = ws.aobject(args.aobject)
    v = ff_criterion(z)
    verts = z.algebra.quiver.vertices
    data = {"verdict": v.status.value, "hom_dims": v.hom_dims}
    if v.pair is not None:
        data["pair"] = [verts[v.pair[0]], verts[v.pair[1]]]
    if v.witness is not None:
        data["witness_class"] = [ws.field.to_str(c) for c in v.witness]
    return Outcome(bool(v), data)


def cmd_verify_54(args, ws, rng) -> Outcome:
    try:
        f = Field.from_name(args.field)
    except ValueError as e:
        raise InputError(str(e)) from None
    rep = run_obstruction_example(f, rng=rng)
    text = "\n".join(f"[{'PASS' if s.ok else 'FAIL'}] {s.name}: {s.claim}" for s in rep.steps)
    text += "\n" + "\n".join(f"warning: {w}" for w in rep.warnings)
    return Outcome(rep.ok, rep.to_dict(), text.strip())


COMMANDS: dict[str, tuple[Callable, list, bool]] = {
    "check-algebra": (cmd_check_algebra, ["algebra"], True),
    "loewy": (cmd_loewy, ["name"], True),
    "simples": (cmd_simples, ["algebra"], True),
    "projectives": (cmd_projectives, ["algebra"], True),
    "hom": (cmd_hom, ["source", "target"], True),
    "ext1": (cmd_ext1, ["source", "target"], True),
    "class-of-ses": (cmd_class_of_ses, ["sequence"], True),
    "univ-ext": (cmd_univ_ext, ["module"], True),
    "df-tower": (cmd_df_tower, ["collection"], True),
    "conjugate": (cmd_conjugate, ["hom1", "hom2"], True),
    "flat-check": (cmd_flat_check, ["aobject"], True),
    "tensor": (cmd_tensor, ["aobject", "module"], True),
    "simple-collection": (cmd_simple_collection, ["collection"], True),
    "ex-member": (cmd_ex_member, ["module", "collection"], True),
    "ncdef": (cmd_ncdef, ["algebra", "collection"], True),
    "ff-check": (cmd_ff_check, ["aobject"], True),
    "verify-54": (cmd_verify_54, [], False),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="workspace JSON file")
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    p = argparse.ArgumentParser(prog="ncdef", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, positional, _) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common])
        for arg in positional:
            sp.add_argument(arg)
        if name == "df-tower":
            sp.add_argument("--levels", type=int, required=True)
        if name == "ex-member":
            sp.add_argument("--depth", type=int, required=True)
        if name == "univ-ext":
            sp.add_argument("--simples", help="collection to extend by (default: vertex simples)")
        if name == "verify-54":
            sp.add_argument("--field", default="Q")
    return p


def _render_text(data, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for k in sorted(data):
            v = data[k]
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                         (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(data, list):
        for x in data:
            lines.append(f"{pad}- {json.dumps(x, sort_keys=True)}")
    else:
        lines.append(f"{pad}{data}")
    return "\n".join(lines)


def emit(outcome: Outcome, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(outcome.data, sort_keys=True) + "\n")
    else:
        out.write((outcome.text or _render_text(outcome.data)) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    fn, _, needs_ws = COMMANDS[args.command]
    rng = random.Random(args.seed)
    try:
        ws = _need_ws(args) if needs_ws else None
        outcome = fn(args, ws, rng)
    except WorkspaceError as e:
        _error(args, "input", str(e), e.path)
        return 2
    except (InputError, ValueError) as e:
        # AlgebraError, RepError and friends are ValueErrors raised on malformed data
        _error(args, "input", str(e))
        return 2
    except BudgetExceeded as e:
        _error(args, "budget", str(e))
        return 2
    emit(outcome, args.format)
    return 0 if outcome.ok else 1


def _error(args, kind, message, path=None):
    payload = {"error": kind, "message": message}
    if path:
        payload["path"] = path
    if getattr(args, "format", "text") == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        sys.stderr.write(f"error: {message}\n")


if __name__ == "__main__":
    sys.exit(main())
