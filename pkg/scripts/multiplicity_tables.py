"""Serre-quotient dimensions next to Peterson multiplicities for the reference matrices."""

import argparse
import time
from dataclasses import dataclass

from kacmoody.cartan import classify, validate
from kacmoody.liealg import build_graded_algebra
from kacmoody.verify import REFERENCE_MATRICES, multiplicity_rows


@dataclass(frozen=True)
class Config:
    max_height: int = 8


def main(cfg):
    for name, rows in REFERENCE_MATRICES.items():
        gcm = validate(rows)
        t = time.time()
        alg = build_graded_algebra(gcm, cfg.max_height)
        table = multiplicity_rows(alg, cfg.max_height)
        print(f"{name} {rows} ({classify(gcm).kind}), {time.time() - t:.2f} s")
        for beta, ht, serre, oracle in table:
            flag = "" if serre == oracle else "  <-- mismatch"
            print(f"  ht {ht:2d}  {str(beta):10s} serre {serre:3d}  peterson {oracle:3d}{flag}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-height", type=int, default=Config.max_height)
    main(Config(p.parse_args().max_height))
