"""How far the BCH logarithm must reach for operator equality on a window.

On the adjoint window [-1, K] the product exp(x) exp(y) has a component from
V_-1 to V_K, which the logarithm only reproduces with its degree K+1 part.
The script counts operator mismatches with the logarithm truncated at K and
at K + 1.
"""

import argparse
import random
from dataclasses import dataclass

from kacmoody.cartan import validate
from kacmoody.groups import bch
from kacmoody.liealg import build_graded_algebra, random_element
from kacmoody.modules import adjoint_module
from kacmoody.prosum import exp_operator
from kacmoody.verify import REFERENCE_MATRICES


@dataclass(frozen=True)
class Config:
    cutoff: int = 6
    pairs: int = 20
    seed: int = 0


def mismatches(gcm, cfg, top):
    big = build_graded_algebra(gcm, cfg.cutoff + 1)
    module = adjoint_module(big, (-1, cfg.cutoff))
    rng = random.Random(cfg.seed)
    bad = 0
    for _ in range(cfg.pairs):
        x = random_element(big, rng, range(1, cfg.cutoff + 1), 0.5)
        y = random_element(big, rng, range(1, cfg.cutoff + 1), 0.5)
        z = bch(big, x, y, top)
        bad += exp_operator(x, module) @ exp_operator(y, module) != exp_operator(z, module)
    return bad


def main(cfg):
    for name, rows in REFERENCE_MATRICES.items():
        gcm = validate(rows)
        at_k = mismatches(gcm, cfg, cfg.cutoff)
        at_k1 = mismatches(gcm, cfg, cfg.cutoff + 1)
        print(f"{name:7s} log to degree {cfg.cutoff}: {at_k}/{cfg.pairs} mismatches; to {cfg.cutoff + 1}: {at_k1}/{cfg.pairs}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--cutoff", type=int, default=Config.cutoff)
    p.add_argument("--pairs", type=int, default=Config.pairs)
    args = p.parse_args()
    main(Config(args.cutoff, args.pairs))
