"""Sweep the sharpness family over (n, d, p) and tabulate the exact equality.

For each configuration prints the constant value of
sum m_i/d - (n - 1 + 1/d) * T on s >= 0 and the defect sum.
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from padic_nevanlinna import (PLFunction, PrimeConfig, characteristic, defect, plf_is_constant_on,
                              proximity, sharpness_family)


@dataclass(frozen=True)
class SweepConfig:
    max_n: int = 4
    max_d: int = 4
    primes: tuple[int, ...] = (2, 3, 5)


def sweep(cfg: SweepConfig):
    for p in cfg.primes:
        pc = PrimeConfig(p)
        for n in range(1, cfg.max_n + 1):
            for d in range(1, cfg.max_d + 1):
                fam = sharpness_family(n, d, p)
                T = characteristic(fam.map, pc)
                total = PLFunction.constant(0)
                for D in fam.hypersurfaces:
                    total = total + proximity(fam.map, D, pc, T) / d
                target = n - 1 + Fraction(1, d)
                const_ok, const = plf_is_constant_on(total - target * T, 0, None)
                dsum = sum(defect(fam.map, D, pc) for D in fam.hypersurfaces)
                yield p, n, d, target, const if const_ok else "nonconstant", dsum


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--max-d", type=int, default=4)
    ap.add_argument("--primes", default="2,3,5")
    args = ap.parse_args()
    cfg = SweepConfig(args.max_n, args.max_d, tuple(int(x) for x in args.primes.split(",")))
    print("p\tn\td\tn-1+1/d\tmargin\tdefect_sum")
    bad = 0
    for p, n, d, target, const, dsum in sweep(cfg):
        print(f"{p}\t{n}\t{d}\t{target}\t{const}\t{dsum}")
        bad += const == "nonconstant" or dsum != target
    print(f"# {bad} configuration(s) off the equality")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
