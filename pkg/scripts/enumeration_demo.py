"""Enumerate deformations of a one-loop module over F_p[x]/(x^n) and certify each one.

Example: python3 scripts/enumeration_demo.py --p 3 --n 2 --jordan 1
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from ncdef.aobjects import tensor_apply
from ncdef.deformation import ex_membership, ncdef_enumerate
from ncdef.linalg import GF, Matrix
from ncdef.rep import Rep, direct_sum, projective
from ncdef.samples import one_loop, truncated_polynomial


@dataclass
class EnumerationConfig:
    p: int = 2
    n: int = 2
    jordan: int = 1  # size of the nilpotent Jordan block the loop acts by
    eigenvalue: int = 0


def run(cfg: EnumerationConfig):
    f = GF(cfg.p)
    d = cfg.jordan
    rows = [[cfg.eigenvalue if r == c else (1 if c == r + 1 else 0) for c in range(d)] for r in range(d)]
    sigma = [Rep(one_loop(f), [d], [Matrix.from_rows(f, rows)])]
    A = truncated_polynomial(f, cfg.n)
    t = time.perf_counter()
    e = ncdef_enumerate(A, sigma)
    print(f"A = F_{cfg.p}[x]/(x^{cfg.n}), sigma = J_{d}({cfg.eigenvalue})")
    print(f"parameters {e.param_count}, raw {e.raw_count}, valid {e.valid_count}, gauge group {e.gauge_size}")
    print(f"orbits {e.orbit_count}, sizes {sorted(e.orbit_sizes)}  ({time.perf_counter() - t:.2f}s)")
    reg = direct_sum([projective(A, i) for i in range(A.n)], A.bound)
    k = A.loewy_length()
    for params, d_el in zip(e.parameters, e.elements):
        cert = ex_membership(tensor_apply(d_el.obj, reg).rep, sigma, k)
        level = None if cert is None else cert.level
        print(f"  params {params}: Ex level {level} (bound {k})")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for name, val in vars(EnumerationConfig()).items():
        ap.add_argument(f"--{name}", type=int, default=val)
    run(EnumerationConfig(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
