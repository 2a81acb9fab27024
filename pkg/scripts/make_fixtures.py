"""Regenerate the bundled workspace fixtures in src/ncdef/data/."""
from __future__ import annotations

import argparse
from pathlib import Path

from ncdef.algebra import BoundQuiver, Quiver
from ncdef.aobjects import AObject
from ncdef.homology import SES
from ncdef.linalg import Field, Matrix
from ncdef.obstruction_example import ExampleData
from ncdef.rep import Rep, RepMap, direct_sum, projective, simple
from ncdef.workspace import Workspace, dump_workspace, dumps

DATA = Path(__file__).resolve().parents[1] / "src" / "ncdef" / "data"


def example_workspace(field: Field) -> Workspace:
    D = ExampleData(field)
    ws = Workspace(field)
    ws.add_base("Z", D.Z)
    ws.add_base("Bq", D.B.bound)
    ws.add_base("Aq", D.A.bound)
    ws.algebra_quiver.update({"B": "Bq", "A": "Aq"})
    for name in ("L1", "L2", "L3", "M", "N"):
        ws.add_module(name, getattr(D, name))
    ws.homs.update({"a": D.a, "b": D.b, "c": D.c, "bac": D.bac,
                    "zero_L3_N": RepMap.zero(D.L3, D.N)})
    # 0 -> L2 -> M -> L3 -> 0
    f = field
    one = Matrix.identity(f, 1)
    z = Matrix.zeros
    ws.homs["L2_to_M"] = RepMap.checked(D.L2, D.M, (z(f, 0, 0), one, z(f, 1, 0)))
    ws.sequences["M_def"] = SES(ws.homs["L2_to_M"], D.a)
    ws.sequences["N_def"] = SES(D.b, D.c)
    for tag, cyc in (("bu", D.bu), ("vbar", D.vbar), ("vbar_bu", D.add(D.vbar, D.bu))):
        zobj, ses = D.theta(cyc)
        ws.add_module(f"W_{tag}", ses.mid)
        ws.homs[f"i_{tag}"] = ses.i
        ws.homs[f"p_{tag}"] = ses.p
        ws.sequences[f"theta_{tag}"] = ses
        ws.aobjects[f"theta_{tag}"] = zobj
    ws.collections["Zdot"] = ["L1", "M", "L3"]
    ws.collections["simples"] = ["L1", "L2", "L3"]
    ws.aobjects["rhoA"] = D.a_object(D.b)
    ws.aobjects["rhoA_zero"] = D.a_object(ws.homs["zero_L3_N"])
    ws.aobjects["B_nonflat"] = D.b_object(D.b, D.c)
    ws.algebra_homs["alpha"] = D.alpha
    # modules over B: the resolution 0 -> P2 -> P1 -> S1 -> 0
    ws.add_module("S1_B", simple(D.B.bound, 0))
    ws.add_module("P1_B", projective(D.B, 0))
    ws.add_module("P2_B", projective(D.B, 1))
    return ws


def one_loop_workspace(field: Field) -> Workspace:
    f = field
    loop = BoundQuiver(Quiver.build([1], [("t", 1, 1)]), (), f)
    xq = Quiver.build([1], [("x", 1, 1)])
    ws = Workspace(f)
    ws.add_base("loop", loop)
    for n in (2, 3, 4):
        ws.add_base(f"X{n}", BoundQuiver.build(xq, [" ".join(["x"] * n)], f))
        ws.algebra_quiver[f"A{n}"] = f"X{n}"
    jordan = {}
    for n in (1, 2, 3):
        J = Matrix(f, n, n, [[f.one if c == r + 1 else f.zero for c in range(n)] for r in range(n)])
        jordan[n] = J
        ws.add_module("S" if n == 1 else f"J{n}", Rep(loop, [n], [J]))
    ws.add_module("SS", direct_sum([ws.modules["S"], ws.modules["S"]], loop))
    ws.homs["x_J2"] = RepMap.checked(ws.modules["J2"], ws.modules["J2"], (jordan[2],))
    ws.homs["zero_SS"] = RepMap.zero(ws.modules["SS"], ws.modules["SS"])
    ws.collections["sig"] = ["S"]
    A2 = ws.algebra("A2")
    ws.aobjects["jordan"] = AObject(A2, loop, [ws.modules["J2"]], [ws.homs["x_J2"]])
    ws.aobjects["split"] = AObject(A2, loop, [ws.modules["SS"]], [ws.homs["zero_SS"]])
    # modules over A2 itself
    ws.add_module("A2_S", Rep(A2.bound, [1], [Matrix.zeros(f, 1, 1)]))
    ws.add_module("A2_reg", Rep(A2.bound, [2], [jordan[2]]))
    return ws


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DATA)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, ws in (("example54.json", example_workspace(Field(0))),
                     ("example54_f5.json", example_workspace(Field(5))),
                     ("one_loop.json", one_loop_workspace(Field(2)))):
        (args.out / name).write_text(dumps(dump_workspace(ws)) + "\n")
        print("wrote", args.out / name)


if __name__ == "__main__":
    main()
