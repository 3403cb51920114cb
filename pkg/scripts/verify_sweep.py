"""Compare every closed-form section integral with the numeric oracle.

    python3 scripts/verify_sweep.py --dim-max 6 --deg-max 8
"""

import argparse
import time
from dataclasses import dataclass

import mpmath

from funksphere.harmonics import monomials
from funksphere.oracle import oracle_precision, oracle_region_integral
from funksphere.pizzetti import SECTION_KINDS, RegionSpec, integrate
from funksphere.polycore import Polynomial
from funksphere.verify import P_VALUES, sample_omegas


@dataclass(frozen=True)
class SweepConfig:
    dim_min: int = 2
    dim_max: int = 6
    deg_max: int = 8
    precision: int = 30


def sweep(cfg: SweepConfig):
    oprec = oracle_precision(cfg.precision)
    rows = []
    with mpmath.workdps(oprec):
        zero_tol = mpmath.mpf(10) ** -(cfg.precision - 5)
        for m in range(cfg.dim_min, cfg.dim_max + 1):
            worst, worst_abs, n = mpmath.mpf(0), mpmath.mpf(0), 0
            t0 = time.perf_counter()
            for d in range(cfg.deg_max + 1):
                for e in monomials(m, d):
                    P = Polynomial(m, {e: 1})
                    for w in sample_omegas(m):
                        for p in P_VALUES:
                            for kind in SECTION_KINDS:
                                region = RegionSpec(kind, m, w, p)
                                val = integrate(P, region, cfg.precision).closed_form.numeric(oprec)
                                ref = oracle_region_integral(P, region, cfg.precision).value
                                if abs(ref) <= zero_tol:
                                    worst_abs = max(worst_abs, abs(val - ref))
                                else:
                                    worst = max(worst, abs(val - ref) / abs(ref))
                                n += 1
            rows.append((m, n, worst, worst_abs, time.perf_counter() - t0))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim-max", type=int, default=6)
    ap.add_argument("--deg-max", type=int, default=8)
    ap.add_argument("--precision", type=int, default=30)
    a = ap.parse_args()
    cfg = SweepConfig(dim_max=a.dim_max, deg_max=a.deg_max, precision=a.precision)
    print(f"{'m':>3} {'cases':>8} {'worst rel err':>15} {'worst abs (zero)':>17} {'seconds':>8}")
    for m, n, worst, worst_abs, secs in sweep(cfg):
        print(f"{m:>3} {n:>8} {mpmath.nstr(worst, 3):>15} {mpmath.nstr(worst_abs, 3):>17} {secs:>8.2f}")


if __name__ == "__main__":
    main()
