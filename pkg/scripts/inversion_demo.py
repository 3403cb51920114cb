"""Recover a polynomial from its Funk transform by every available route.

    python3 scripts/inversion_demo.py --dim 4 --poly "x1*x2 + 3*x3^2 - 1"
"""

import argparse
from dataclasses import dataclass

import mpmath

from funksphere.funk import funk_transform, invert_even_m_detailed, invert_general_detailed
from funksphere.oracle import quadrature_inverse_at, spectral_reference_inverter
from funksphere.parser import parse_polynomial
from funksphere.polycore import stereographic_point
from funksphere.scalar import Q


@dataclass(frozen=True)
class DemoConfig:
    dim: int = 4
    poly: str = "x1*x2 + 3*x3^2 - 1"
    precision: int = 30


def demo(cfg: DemoConfig):
    f = parse_polynomial(cfg.poly, cfg.dim)
    fhat = funk_transform(f)
    print(f"f      = {cfg.poly}")
    print(f"funk f = {fhat}")
    if cfg.dim % 2 == 0:
        rep = invert_even_m_detailed(fhat)
        print(f"\neven-m route: dual = {rep.dual}")
        print(f"  after P_(m-2) with roots {list(rep.factors)}: {rep.after_p}")
        print(f"  divide by {rep.constant}: {rep.result}")
    if cfg.dim >= 3:
        rep = invert_general_detailed(fhat)
        print(f"\ngeneral route: component factors {({2 * k: str(v) for k, v in rep.component_factors.items()})}")
        print(f"  F = {rep.F}")
        print(f"  times {rep.final_constant}: {rep.result}")
    print(f"\nspectral reference: {spectral_reference_inverter(fhat)}")
    if cfg.dim % 2 == 0 and cfg.dim >= 4:
        pt = stereographic_point([Q(1, 3)] + [Q(1, 2)] * (cfg.dim - 2))
        num = quadrature_inverse_at(fhat, pt, cfg.dim, cfg.precision)
        exact = invert_even_m_detailed(fhat).result.evaluate(pt).numeric(cfg.precision)
        print(f"\nquadrature f({[str(c) for c in pt]}) = {mpmath.nstr(num, 20)}  exact {mpmath.nstr(exact, 20)}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=4)
    ap.add_argument("--poly", default="x1*x2 + 3*x3^2 - 1")
    ap.add_argument("--precision", type=int, default=30)
    a = ap.parse_args()
    demo(DemoConfig(a.dim, a.poly, a.precision))


if __name__ == "__main__":
    main()
