"""Print Funk eigenvalues d_{m,k} and confirm them on the harmonic basis.

    python3 scripts/eigenvalue_table.py --dim-max 6 --k-max 4
"""

import argparse
from dataclasses import dataclass

from funksphere.funk import SpherePolynomial, funk_eigenvalue, funk_transform
from funksphere.harmonics import sh_basis


@dataclass(frozen=True)
class TableConfig:
    dim_max: int = 6
    k_max: int = 4
    check: bool = True


def table(cfg: TableConfig):
    for m in range(2, cfg.dim_max + 1):
        for k in range(cfg.k_max + 1):
            d = funk_eigenvalue(m, k)
            basis = sh_basis(m, 2 * k)
            ok = None
            if cfg.check:
                ok = all(funk_transform(H) == SpherePolynomial(H).scaled(d) for H in basis)
            yield m, k, d, len(basis), ok


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim-max", type=int, default=6)
    ap.add_argument("--k-max", type=int, default=4)
    ap.add_argument("--no-check", action="store_true")
    a = ap.parse_args()
    cfg = TableConfig(a.dim_max, a.k_max, not a.no_check)
    print(f"{'m':>2} {'k':>2} {'d_mk':>28} {'numeric':>14} {'dim':>5} check")
    for m, k, d, n, ok in table(cfg):
        flag = "-" if ok is None else ("ok" if ok else "FAIL")
        print(f"{m:>2} {k:>2} {str(d):>28} {float(d.numeric(20)):>14.8f} {n:>5} {flag}")


if __name__ == "__main__":
    main()
