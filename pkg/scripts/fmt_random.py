"""Random First Main Theorem checks: m + N - d*T must be an exact constant."""

import argparse
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from padic_nevanlinna import (FMTResidualError, Hypersurface, ImageContainedError, Poly,
                              PrimeConfig, ProjectiveMap, fmt_residual)


@dataclass(frozen=True)
class FMTConfig:
    trials: int = 200
    max_N: int = 3
    max_map_degree: int = 4
    max_hyp_degree: int = 4
    bound: int = 20
    primes: tuple[int, ...] = (2, 3, 5, 7)
    seed: int = 0


def _frac(rng, bound):
    den = rng.choice([k for k in range(-bound, bound + 1) if k])
    return Fraction(rng.randint(-bound, bound), den)


def _random_map(rng, N, cfg):
    while True:
        coords = [[_frac(rng, cfg.bound) for _ in range(rng.randint(0, cfg.max_map_degree + 1))]
                  for _ in range(N + 1)]
        try:
            return ProjectiveMap.from_polys(*coords)
        except ValueError:
            continue


def _random_hypersurface(rng, N, cfg):
    d = rng.randint(1, cfg.max_hyp_degree)
    while True:
        terms = {}
        for combo in combinations_with_replacement(range(N + 1), d):
            if rng.random() < 0.5:
                exp = [0] * (N + 1)
                for i in combo:
                    exp[i] += 1
                terms[tuple(exp)] = _frac(rng, cfg.bound)
        q = Poly.from_dict(N + 1, terms)
        if not q.is_zero():
            return Hypersurface(q, d)


def run(cfg: FMTConfig):
    rng = random.Random(cfg.seed)
    tally = {"ok": 0, "failed": 0, "image-contained": 0}
    residuals = {}
    for _ in range(cfg.trials):
        N = rng.randint(1, cfg.max_N)
        pc = PrimeConfig(rng.choice(cfg.primes))
        f, D = _random_map(rng, N, cfg), _random_hypersurface(rng, N, cfg)
        try:
            c = fmt_residual(f, D, pc)
        except ImageContainedError:
            tally["image-contained"] += 1
            continue
        except FMTResidualError as exc:
            tally["failed"] += 1
            print("FAILED:", exc)
            continue
        tally["ok"] += 1
        residuals[c] = residuals.get(c, 0) + 1
    return tally, residuals


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    tally, residuals = run(FMTConfig(trials=args.trials, seed=args.seed))
    print("residual\tcount")
    for c in sorted(residuals):
        print(f"{c}\t{residuals[c]}")
    print("# " + ", ".join(f"{k}: {v}" for k, v in tally.items()))
    return 1 if tally["failed"] else 0


if __name__ == "__main__":
    raise SystemExit(main())
