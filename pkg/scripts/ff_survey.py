"""Tally ff_criterion verdicts over random flat A-objects and compare with brute force."""
from __future__ import annotations

import argparse
import collections
import random
import sys
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from oracles import brute_force_fully_faithful  # noqa: E402
from ncdef.deformation import FFStatus, ff_criterion  # noqa: E402
from ncdef.linalg import GF  # noqa: E402
from ncdef.samples import (nakayama_algebra, one_loop, random_aobject, random_rep_of,  # noqa: E402
                           truncated_polynomial, uniserial_modules)


@dataclass
class SurveyConfig:
    samples: int = 50
    p: int = 5
    seed: int = 0
    max_dim: int = 6


def run(cfg: SurveyConfig):
    f = GF(cfg.p)
    rng = random.Random(cfg.seed)
    algebras = [truncated_polynomial(f, 2), truncated_polynomial(f, 3), nakayama_algebra(f, 2),
                nakayama_algebra(f, 3, 2)]
    R = one_loop(f)
    tally = collections.Counter()
    agree = 0
    for _ in range(cfg.samples):
        A = rng.choice(algebras)
        z = None
        while z is None:
            z = random_aobject(A, [random_rep_of(R, rng, 2) for _ in range(A.n)], rng)
        v = ff_criterion(z)
        tally[v.status.value] += 1
        mods = [m for m in uniserial_modules(A) if m.dim <= cfg.max_dim]
        agree += int((v.status is FFStatus.FULLY_FAITHFUL) == brute_force_fully_faithful(z, mods))
    for k, n in sorted(tally.items()):
        print(f"{k:22s} {n}")
    print(f"agreement with brute force: {agree}/{cfg.samples}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, val in vars(SurveyConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int, default=val)
    run(SurveyConfig(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
