"""Layers of the root subalgebra at an imaginary root, computed inside g.

With the defaults this builds [[2,-3],[-3,2]] to height 15 (several minutes)
so that three layers of alpha = 3a1 + 2a2 fit under the cutoff, and compares
them with the Witt dimensions of the free Lie algebra on mult(alpha) letters.
"""

import argparse
import time
from dataclasses import dataclass

from kacmoody.cartan import validate
from kacmoody.freelie import witt
from kacmoody.liealg import build_graded_algebra, root_subalgebra_layers
from kacmoody.weyl import height


@dataclass(frozen=True)
class Config:
    matrix: tuple = ((2, -3), (-3, 2))
    alpha: tuple = (3, 2)
    cutoff: int = 15


def main(cfg):
    t = time.time()
    alg = build_graded_algebra(validate(cfg.matrix), cfg.cutoff)
    print(f"built to height {cfg.cutoff} in {time.time() - t:.1f} s")
    m = alg.mult(cfg.alpha)
    norm = alg.norm(cfg.alpha)
    kmax = cfg.cutoff // height(cfg.alpha)
    print(f"alpha = {cfg.alpha}: mult {m}, (alpha, alpha) = {norm}")
    for k, (dim, _) in enumerate(root_subalgebra_layers(alg, cfg.alpha, kmax), 1):
        want = m if k == 1 else (witt(m, k) if norm < 0 else 0)
        print(f"  layer {k}: dim {dim}, expected {want}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--cutoff", type=int, default=Config.cutoff)
    p.add_argument("--alpha", default="3,2")
    args = p.parse_args()
    main(Config(alpha=tuple(int(x) for x in args.alpha.split(",")), cutoff=args.cutoff))
