"""Verification suites that pit the closed forms against the oracle and against each other.

Each suite yields ``VerifyReport`` rows in a fixed order so repeated runs
serialise identically.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import mpmath

from .config import resolve_precision
from .funk import (
    SpherePolynomial,
    funk_eigenvalue,
    funk_transform,
    ikj_finite_sum,
    ikj_term,
    invert_even_m,
    invert_general,
)
from .harmonics import monomials, sh_basis
from .oracle import VerifyReport, make_report, oracle_precision, oracle_region_integral, spectral_reference_inverter
from .pizzetti import (
    CAP_LOWER,
    CAP_UPPER,
    LOWER,
    SECTION_KINDS,
    UPPER,
    RegionSpec,
    cap_integral,
    integrate,
    laplacian_identity_sides,
    sphere_integral,
)
from .polycore import Polynomial, RationalPoint, basis_vector, stereographic_point, to_text
from .scalar import Q

SUITES = ("integrals", "caps", "eigen", "inversion", "ikj", "laplacian", "kernel")
P_VALUES = (Q(0), Q(1, 2), Q(3, 5))


@dataclass(frozen=True)
class VerifyConfig:
    dim_max: int = 4
    deg_max: int = 4
    precision: int | None = None
    seed: int = 20240601
    random_cases: int = 5

    def __post_init__(self):
        if self.dim_max < 2:
            raise ValueError("dim-max must be >= 2")
        if self.deg_max < 0:
            raise ValueError("deg-max must be >= 0")


def sample_omegas(m: int) -> list[RationalPoint]:
    """e1 and (3/5, 4/5, 0, ...)."""
    out = [basis_vector(m, 0)]
    if m >= 2:
        out.append(RationalPoint((Q(3, 5), Q(4, 5)) + (Q(0),) * (m - 2)))
    return out


def _exact_row(formula: str, inputs: dict, exact_json, ok: bool) -> VerifyReport:
    return VerifyReport(formula, inputs, exact_json, "exact", "0" if ok else "nonzero",
                        "0" if ok else "nonzero", "0", bool(ok))


def _omega_json(w) -> list[str]:
    return [str(c) for c in w]


def integrals_suite(m: int, cfg: VerifyConfig) -> list[VerifyReport]:
    prec = resolve_precision(cfg.precision)
    oprec = oracle_precision(prec)
    rows = []
    for d in range(cfg.deg_max + 1):
        for e in monomials(m, d):
            P = Polynomial(m, {e: 1})
            regions = [RegionSpec("sphere", m), RegionSpec("ball", m)]
            regions += [RegionSpec(kind, m, w, p)
                        for w in sample_omegas(m) for p in P_VALUES for kind in SECTION_KINDS]
            for region in regions:
                exact = integrate(P, region, prec)
                ref = oracle_region_integral(P, region, prec)
                rows.append(make_report(
                    f"{region.kind}_integral",
                    {"poly": to_text(P), "region": region.to_json()},
                    exact.to_json(),
                    exact.closed_form.numeric(oprec), ref.value, prec=oprec,
                ))
    return rows


def caps_suite(m: int, cfg: VerifyConfig) -> list[VerifyReport]:
    rows = []
    for d in range(cfg.deg_max + 1):
        for e in monomials(m, d):
            P = Polynomial(m, {e: 1})
            whole = sphere_integral(P).closed_form
            for w in sample_omegas(m):
                for p in P_VALUES:
                    up = cap_integral(P, w, p, UPPER).closed_form
                    lo = cap_integral(P, w, p, LOWER).closed_form
                    rows.append(_exact_row(
                        "cap_complementarity",
                        {"poly": to_text(P), "omega": _omega_json(w), "p": str(p),
                         "regions": [CAP_UPPER, CAP_LOWER]},
                        {"sum": (up + lo).to_json(), "sphere": whole.to_json()},
                        up + lo == whole,
                    ))
    return rows


def eigen_suite(m: int, cfg: VerifyConfig) -> list[VerifyReport]:
    rows = []
    for k in range(cfg.deg_max // 2 + 1):
        d = funk_eigenvalue(m, k)
        ok = all(funk_transform(H) == SpherePolynomial(H).scaled(d) for H in sh_basis(m, 2 * k))
        rows.append(_exact_row("funk_eigenvalue", {"m": m, "k": k, "basis_size": len(sh_basis(m, 2 * k))},
                               {k2: v for k2, v in d.to_json().items() if k2 != "numeric"}, ok))
    return rows


def random_even_polynomial(m: int, max_deg: int, rng: random.Random, n_terms: int = 4) -> Polynomial:
    terms = {}
    for _ in range(n_terms):
        deg = 2 * rng.randint(0, max_deg // 2)
        e = [0] * m
        for _ in range(deg):
            e[rng.randrange(m)] += 1
        terms[tuple(e)] = Q(rng.randint(-9, 9), rng.randint(1, 5))
    return Polynomial(m, terms)


def inversion_suite(m: int, cfg: VerifyConfig) -> list[VerifyReport]:
    rows = []
    rng = random.Random(cfg.seed * 31 + m)
    for case in range(cfg.random_cases):
        f = SpherePolynomial(random_even_polynomial(m, max(cfg.deg_max, 0), rng))
        fhat = funk_transform(f)
        results = {"spectral": spectral_reference_inverter(fhat)}
        if m >= 3:
            results["general"] = invert_general(fhat)
        if m % 2 == 0:
            results["even-m"] = invert_even_m(fhat)
        ok = all(r == f for r in results.values())
        rows.append(_exact_row("inversion_agreement",
                               {"m": m, "case": case, "f": to_text(f.poly), "methods": sorted(results)},
                               {"fhat": fhat.to_json()}, ok))
    return rows


def ikj_suite(m: int, cfg: VerifyConfig) -> list[VerifyReport]:
    rows = []
    if m < 3:
        return rows
    for k in range(cfg.deg_max // 2 + 1):
        for j in range(k + 1):
            a, b = ikj_term(m, k, j), ikj_finite_sum(m, k, j)
            rows.append(_exact_row("ikj_term", {"m": m, "k": k, "j": j},
                                   {kk: v for kk, v in a.to_json().items() if kk != "numeric"}, a == b))
    return rows


def laplacian_suite(m: int, cfg: VerifyConfig) -> list[VerifyReport]:
    rows = []
    rng = random.Random(cfg.seed * 17 + m)
    for s in range(cfg.deg_max // 2 + 1):
        terms = {}
        for _ in range(4):
            e = [0] * m
            for _ in range(2 * s):
                e[rng.randrange(m)] += 1
            terms[tuple(e)] = Q(rng.randint(-9, 9), rng.randint(1, 4))
        R = Polynomial(m, terms)
        pts = [stereographic_point([Q(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(m - 1)])
               for _ in range(cfg.random_cases)]
        for w in pts:
            lhs, rhs = laplacian_identity_sides(R, w)
            rows.append(_exact_row("laplacian_identity",
                                   {"R": to_text(R), "omega": _omega_json(w)},
                                   {"lhs": str(lhs), "rhs": str(rhs)}, lhs == rhs))
    return rows


def kernel_suite(m: int, cfg: VerifyConfig) -> list[VerifyReport]:
    rows = []
    for d in range(1, max(cfg.deg_max, 1) + 1, 2):
        for e in monomials(m, d):
            P = Polynomial(m, {e: 1})
            rows.append(_exact_row("funk_kernel", {"poly": to_text(P), "m": m},
                                   {"output": to_text(funk_transform(P).poly)},
                                   funk_transform(P).is_zero))
    return rows


_SUITE_FUNCS = {
    "integrals": integrals_suite,
    "caps": caps_suite,
    "eigen": eigen_suite,
    "inversion": inversion_suite,
    "ikj": ikj_suite,
    "laplacian": laplacian_suite,
    "kernel": kernel_suite,
}


def _run_cell(args) -> list[dict]:
    suite, m, cfg = args
    with mpmath.workdps(oracle_precision(cfg.precision)):
        return [r.to_json() for r in _SUITE_FUNCS[suite](m, cfg)]


def expand_suites(name: str) -> tuple[str, ...]:
    if name == "all":
        return SUITES
    if name == "small":
        return ("caps", "eigen", "ikj", "kernel")
    if name not in _SUITE_FUNCS:
        raise ValueError(f"unknown suite {name!r}; choose from all, small, {', '.join(SUITES)}")
    return (name,)


def run_suites(name: str, cfg: VerifyConfig, jobs: int = 1) -> dict:
    """Run the named suite(s) and return a JSON-ready document."""
    cells = [(s, m, cfg) for s in expand_suites(name) for m in range(2, cfg.dim_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_cell, cells))
    else:
        chunks = [_run_cell(c) for c in cells]
    rows = [r for chunk in chunks for r in chunk]
    summary = {}
    for (suite, _, _), chunk in zip(cells, chunks):
        s = summary.setdefault(suite, {"rows": 0, "passed": 0})
        s["rows"] += len(chunk)
        s["passed"] += sum(1 for r in chunk if r["pass"])
    return {
        "suite": name,
        "config": {"dim_max": cfg.dim_max, "deg_max": cfg.deg_max,
                   "precision": resolve_precision(cfg.precision), "seed": cfg.seed},
        "summary": summary,
        "row_count": len(rows),
        "pass": bool(rows) and all(r["pass"] for r in rows),
        "rows": rows,
    }


__all__ = [
    "SUITES", "P_VALUES", "VerifyConfig", "sample_omegas", "random_even_polynomial",
    "integrals_suite", "caps_suite", "eigen_suite", "inversion_suite", "ikj_suite",
    "laplacian_suite", "kernel_suite", "expand_suites", "run_suites",
]
