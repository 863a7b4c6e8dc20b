"""Verification campaigns: sweep drivers comparing enumeration to formulas.

Each campaign walks a parameter grid, compares an exhaustively enumerated
quantity against its closed form (or a lattice-point count against a
polynomial), and emits one Row per checked tuple.  Campaigns are pure
functions of their bounds, so they can fan out over work units in worker
processes and still produce deterministic, ordered output.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Callable

from . import ehrhart, forests, oracle, processing
from .exactmath import Polynomial, binomial, poly_leq


@dataclass(frozen=True)
class Row:
    """Verdict for one checked tuple."""

    params: tuple[tuple[str, str], ...]
    ok: bool
    expected: str
    actual: str

    def describe(self) -> str:
        ptxt = " ".join(f"{k}={v}" for k, v in self.params)
        status = "ok" if self.ok else "FAIL"
        return f"{status} {ptxt} expected={self.expected} actual={self.actual}"


@dataclass(frozen=True)
class SweepReport:
    """Aggregated outcome of one campaign run.

    A campaign passes iff every per-tuple verdict passes.
    """

    campaign: str
    bounds: tuple[tuple[str, int], ...]
    rows: tuple[Row, ...]
    wall_time: float

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def failures(self) -> tuple[Row, ...]:
        return tuple(r for r in self.rows if not r.ok)


def _row(params: dict, expected, actual) -> Row:
    return Row(tuple((k, str(v)) for k, v in params.items()),
               expected == actual, str(expected), str(actual))


def _bool_row(params: dict, ok: bool, expected: str, actual: str) -> Row:
    return Row(tuple((k, str(v)) for k, v in params.items()), ok, expected, actual)


# ---------------------------------------------------------------------------
# units per campaign; each unit is a picklable (name, kwargs) task


def units_identity_main(max_s: int, max_q: int) -> list[dict]:
    return [{"s": s, "max_q": max_q} for s in range(1, max_s + 1)]


def run_identity_main(s: int, max_q: int) -> list[Row]:
    _, refined = forests.cf_census(s)
    rows = []
    for q in range(max_q + 1):
        for k in range(1, s + 1):
            for ell in range(s):
                for m in range(1, k + 1):
                    counted = refined.get((q, k, ell, m), 0)
                    formula = forests.cf_refined_formula(q, s, k, ell, m)
                    rows.append(_row(
                        {"s": s, "q": q, "k": k, "ell": ell, "m": m},
                        counted, formula))
    return rows


def units_identity_lah(max_s: int, max_q: int) -> list[dict]:
    return [{"s": s, "max_q": max_q} for s in range(1, max_s + 1)]


def run_identity_lah(s: int, max_q: int) -> list[Row]:
    totals, refined = forests.cf_census(s)
    rows = []
    for q in range(max_q + 1):
        for k in range(1, s + 1):
            counted = totals.get((q, k), 0)
            formula = forests.cf_count_formula(q, s, k)
            rows.append(_row({"s": s, "q": q, "k": k, "check": "total"},
                             counted, formula))
            for ell in range(s):
                marginal = sum(refined.get((q, k, ell, m), 0)
                               for m in range(1, k + 1))
                rows.append(_row(
                    {"s": s, "q": q, "k": k, "ell": ell, "check": "marginal"},
                    counted, marginal))
    return rows


def units_identity_upper(max_s: int, max_q: int) -> list[dict]:
    return [{"s": s, "max_q": max_q} for s in range(1, max_s + 1)]


def run_identity_upper(s: int, max_q: int) -> list[Row]:
    census = forests.cf1_census(s + 1)
    rows = []
    for q in range(max_q + 1):
        for k in range(1, s + 1):
            for ell in range(s):
                for m in range(1, k + 1):
                    counted = census.get((q + 1, k + 1, ell, m + 1), 0)
                    formula = ehrhart.upper_expression(q, s, k, ell, m)
                    params = {"s": s, "q": q, "k": k, "ell": ell, "m": m}
                    rows.append(_row(params, counted, formula))
                    rows.append(_bool_row(
                        {**params, "check": "nonnegative"},
                        formula >= 0, ">=0", str(formula)))
    return rows


def units_per_term(max_s: int, max_q: int) -> list[dict]:
    return [{"s": s, "q": q} for s in range(1, max_s + 1)
            for q in range(max_q + 1)]


def run_per_term(s: int, q: int) -> list[Row]:
    rows = []
    census = forests.dcf_signed_census(q, s)
    for k in range(1, s + 1):
        for ell in range(s):
            for m in range(1, k + 1):
                for i in range(q + 1):
                    counted = census.get((i, k, ell, m), 0)
                    formula = forests.dcf_term_formula(q, s, k, ell, m, i)
                    rows.append(_row(
                        {"s": s, "q": q, "k": k, "ell": ell, "m": m, "i": i,
                         "side": "plain"},
                        counted, formula))
    census1 = forests.dcf1_signed_census(q + 1, s + 1)
    for k in range(1, s + 1):
        for ell in range(s):
            for m in range(1, k + 1):
                for i in range(q + 1):
                    counted = census1.get((i + 1, k + 1, ell, m + 1), 0)
                    formula = forests.upper_term_formula(q, s, k, ell, m, i)
                    rows.append(_row(
                        {"s": s, "q": q, "k": k, "ell": ell, "m": m, "i": i,
                         "side": "leader1"},
                        counted, formula))
    return rows


def units_phi(max_s: int, max_q: int) -> list[dict]:
    return [{"s": s, "q": q} for s in range(1, max_s + 1)
            for q in range(max_q + 1)]


def run_phi(s: int, q: int) -> list[Row]:
    """Bijectivity and image battery for one (s, q) cell.

    Applies the processing map to every distinguished forest, requiring
    injectivity, exact round trips, image membership, preservation of the
    block length sequence and the A part, and that the constructively
    enumerated image candidates are hit exactly.
    """
    rows = []
    images: dict = {}
    count = 0
    problems = []
    for d in forests.iter_dcf(q, s):
        count += 1
        img = processing.phi(d)
        if img in images:
            problems.append(f"collision: {forests.format_distinguished(d)} and "
                            f"{forests.format_distinguished(images[img])}")
            continue
        images[img] = d
        if tuple(map(len, img.blocks)) != tuple(map(len, d.blocks)):
            problems.append(f"length sequence changed: {forests.format_distinguished(d)}")
        if img.aset != d.aset:
            problems.append(f"A changed: {forests.format_distinguished(d)}")
        verdict = processing.image_check(img, q)
        if not verdict:
            problems.append(
                f"image rejected: {forests.format_distinguished(img)}: {verdict.reason}")
            continue
        back = processing.phi_inverse(img, q)
        if back != d:
            problems.append(f"round trip failed: {forests.format_distinguished(d)}")
    rows.append(_bool_row({"s": s, "q": q, "check": "bijection"},
                          not problems,
                          f"{count} forests map injectively and round-trip",
                          problems[0] if problems else f"{count} verified"))
    candidates = set(processing.enumerate_image_candidates(q, s))
    mismatch = candidates.symmetric_difference(images.keys())
    sample = forests.format_distinguished(next(iter(mismatch))) if mismatch else ""
    rows.append(_bool_row({"s": s, "q": q, "check": "image-complete"},
                          not mismatch,
                          f"{len(candidates)} accepted candidates all hit",
                          f"{len(images)} images, diff {len(mismatch)} {sample}"))
    return rows


def units_involution(max_s: int, max_q: int) -> list[dict]:
    return [{"s": s, "q": q} for s in range(1, max_s + 1)
            for q in range(max_q + 1)]


def run_involution(s: int, q: int) -> list[Row]:
    """Sign cancellation battery for one (s, q) cell.

    Splits the distinguished forests into the minus side, the plus side,
    and the plain-forest representatives, maps the minus side through the
    sign-reversing map, and checks injectivity, class preservation, and
    per-class cardinality matches, which together force the alternating
    sum to collapse onto the plain count.
    """
    minus: list = []
    plus_count: dict = {}
    minus_count: dict = {}
    plain_count: dict = {}
    classes: dict = {}
    for d in forests.iter_dcf(q, s):
        ends = forests.block_ends(d.blocks)
        k = len(d.blocks)
        gvec = tuple(sum(1 for e in ends if e > ell) for ell in range(s))
        classes[d] = (k, gvec)
        if processing.negative_side(d):
            minus.append(d)
            for ell in range(s):
                key = (k, ell, gvec[ell])
                minus_count[key] = minus_count.get(key, 0) + 1
        elif processing.positive_side(d):
            for ell in range(s):
                key = (k, ell, gvec[ell])
                plus_count[key] = plus_count.get(key, 0) + 1
        else:
            for ell in range(s):
                key = (k, ell, gvec[ell])
                plain_count[key] = plain_count.get(key, 0) + 1
    problems = []
    seen = set()
    for d in minus:
        y = processing.involution_f(d)
        if y in seen:
            problems.append(f"not injective at {forests.format_distinguished(d)}")
            continue
        seen.add(y)
        if not processing.positive_side(y):
            problems.append(f"image not on plus side: {forests.format_distinguished(y)}")
        yk = len(y.blocks)
        yends = forests.block_ends(y.blocks)
        ygvec = tuple(sum(1 for e in yends if e > ell) for ell in range(s))
        if (yk, ygvec) != classes[d]:
            problems.append(f"class changed at {forests.format_distinguished(d)}")
    rows = [_bool_row({"s": s, "q": q, "check": "injective-into-plus"},
                      not problems,
                      f"{len(minus)} minus-side elements pair off",
                      problems[0] if problems else f"{len(minus)} verified")]
    _, refined = forests.cf_census(s)
    balance_ok = True
    detail = ""
    for key in set(minus_count) | set(plus_count):
        if minus_count.get(key, 0) != plus_count.get(key, 0):
            balance_ok = False
            detail = f"class {key}: minus {minus_count.get(key, 0)} plus {plus_count.get(key, 0)}"
            break
    rows.append(_bool_row({"s": s, "q": q, "check": "cancellation"},
                          balance_ok, "per-class |minus| == |plus|",
                          detail or "balanced"))
    plain_ok = True
    detail = ""
    for k in range(1, s + 1):
        for ell in range(s):
            for m in range(1, k + 1):
                lhs = plain_count.get((k, ell, m), 0)
                rhs = refined.get((q, k, ell, m), 0)
                if lhs != rhs and plain_ok:
                    plain_ok = False
                    detail = f"class k={k} ell={ell} m={m}: {lhs} != {rhs}"
    rows.append(_bool_row({"s": s, "q": q, "check": "plain-residue"},
                          plain_ok, "plain representatives count the forests",
                          detail or "matched"))
    signed = forests.dcf_signed_census(q, s)
    collapse_ok = True
    detail = ""
    for k in range(1, s + 1):
        for ell in range(s):
            for m in range(1, k + 1):
                alternating = sum(signed.get((i, k, ell, m), 0)
                                  for i in range(q + 1))
                honest = refined.get((q, k, ell, m), 0)
                if alternating != honest and collapse_ok:
                    collapse_ok = False
                    detail = f"class k={k} ell={ell} m={m}: {alternating} != {honest}"
    rows.append(_bool_row({"s": s, "q": q, "check": "alternating-sum"},
                          collapse_ok,
                          "signed sums collapse onto the forest count",
                          detail or "collapsed"))
    return rows


def units_ehrhart_oracle(max_n: int) -> list[dict]:
    return [{"r": r, "s": s, "n": n}
            for n in range(2, max_n + 1)
            for s in range(1, n)
            for r in range(1, s + 1)]


def run_ehrhart_oracle(r: int, s: int, n: int) -> list[Row]:
    samples = [(t, oracle.count_points_panhandle(r, s, n, t))
               for t in range(n + 1)]
    counted = oracle.interpolate(samples, n - 1)
    poly = ehrhart.ehr_panhandle(r, s, n)
    rows = [_row({"r": r, "s": s, "n": n, "check": "interpolation"},
                 poly, counted)]
    at_one = poly.evaluate(1)
    bases = binomial(s, r) + (n - s) * binomial(s, r - 1)
    rows.append(_row({"r": r, "s": s, "n": n, "check": "basis-count"},
                     bases, at_one))
    if s == n - 1:
        rows.append(_row({"r": r, "s": s, "n": n, "check": "uniform"},
                         ehrhart.ehr_hypersimplex(r, n), poly))
    return rows


def units_positivity(max_n: int) -> list[dict]:
    return [{"n": n} for n in range(2, max_n + 1)]


def run_positivity(n: int) -> list[Row]:
    rows = []
    zero = Polynomial()
    for s in range(1, n):
        for r in range(1, s + 1):
            params = {"r": r, "s": s, "n": n}
            rows.append(_bool_row({**params, "poly": "phi"},
                                  poly_leq(zero, ehrhart.phi_poly(r, s, n)),
                                  "coefficients >= 0",
                                  str(ehrhart.phi_poly(r, s, n))))
            rows.append(_bool_row({**params, "poly": "psi"},
                                  poly_leq(zero, ehrhart.psi_poly(r, s, n)),
                                  "coefficients >= 0",
                                  str(ehrhart.psi_poly(r, s, n))))
            ehr = ehrhart.ehr_panhandle(r, s, n)
            strict = all(c > 0 for c in ehr.coeffs)
            rows.append(_bool_row({**params, "poly": "ehr"},
                                  strict, "coefficients > 0", str(ehr)))
            rows.append(_bool_row({**params, "poly": "relaxation"},
                                  ehrhart.check_relaxation_positivity(r, s, n),
                                  "correction >= 0", "checked"))
    return rows


def units_bounds(max_n: int, max_paving_n: int) -> list[dict]:
    return ([{"kind": "sandwich", "n": n} for n in range(2, max_n + 1)]
            + [{"kind": "paving", "n": n} for n in range(2, max_paving_n + 1)]
            + [{"kind": "explicit", "n": 4}])


def run_bounds(kind: str, n: int) -> list[Row]:
    rows = []
    if kind == "sandwich":
        for s in range(1, n):
            for r in range(1, s + 1):
                params = {"r": r, "s": s, "n": n}
                lower = ehrhart.ehr_product_simplex(r, s, n)
                mid = ehrhart.ehr_panhandle(r, s, n)
                upper = ehrhart.ehr_hypersimplex(r, n)
                rows.append(_bool_row({**params, "check": "product<=panhandle"},
                                      poly_leq(lower, mid), str(lower), str(mid)))
                rows.append(_bool_row({**params, "check": "panhandle<=uniform"},
                                      poly_leq(mid, upper), str(mid), str(upper)))
    elif kind == "paving":
        for r in range(1, n):
            upper = ehrhart.ehr_hypersimplex(r, n)
            for count in range(0, 4):
                for sizes in combinations_with_replacement(range(r, n), count):
                    poly = ehrhart.ehr_paving(r, n, sizes)
                    rows.append(_bool_row(
                        {"r": r, "n": n, "sizes": "+".join(map(str, sizes)) or "none",
                         "check": "paving<=uniform"},
                        poly_leq(poly, upper), str(poly), str(upper)))
    elif kind == "explicit":
        poly = ehrhart.ehr_paving(2, 4, [2])
        for t in range(5):
            counted = oracle.count_points_paving(2, 4, [frozenset({1, 2})], t)
            rows.append(_row({"r": 2, "n": 4, "H": "{1,2}", "t": t},
                             counted, poly.evaluate(t)))
    else:
        raise ValueError(f"unknown bounds unit kind {kind!r}")
    return rows


# ---------------------------------------------------------------------------
# registry and runner


@dataclass(frozen=True)
class Campaign:
    name: str
    units: Callable
    runner: Callable
    defaults: tuple[tuple[str, int], ...]
    description: str


CAMPAIGNS: dict[str, Campaign] = {}


def _register(name, units, runner, defaults, description):
    CAMPAIGNS[name] = Campaign(name, units, runner, tuple(defaults.items()),
                               description)


_register("identity-main", units_identity_main, run_identity_main,
          {"max_s": 7, "max_q": 6},
          "refined chain-forest count vs its closed form")
_register("identity-lah", units_identity_lah, run_identity_lah,
          {"max_s": 7, "max_q": 6},
          "total chain-forest count vs its closed form, plus marginals")
_register("identity-upper", units_identity_upper, run_identity_upper,
          {"max_s": 6, "max_q": 4},
          "leader-1 forest count vs the upper-bound expression")
_register("per-term", units_per_term, run_per_term,
          {"max_s": 5, "max_q": 4},
          "signed distinguished-forest sums vs individual summands")
_register("phi", units_phi, run_phi,
          {"max_s": 6, "max_q": 4},
          "processing map bijectivity and image characterization")
_register("involution", units_involution, run_involution,
          {"max_s": 6, "max_q": 4},
          "sign-reversing pairing and cancellation")
_register("ehrhart-oracle", units_ehrhart_oracle, run_ehrhart_oracle,
          {"max_n": 8},
          "panhandle Ehrhart polynomials vs direct lattice-point counts")
_register("bounds", units_bounds, run_bounds,
          {"max_n": 8, "max_paving_n": 7},
          "coefficientwise sandwich and paving upper bound")
_register("positivity", units_positivity, run_positivity,
          {"max_n": 9},
          "coefficient nonnegativity of the formula polynomials")


def _run_unit(task: tuple[str, dict]) -> list[Row]:
    name, kwargs = task
    return CAMPAIGNS[name].runner(**kwargs)


def run_campaign(name: str, bounds: dict | None = None, jobs: int = 1) -> list[Row]:
    """Run one campaign; rows come back in deterministic grid order."""
    spec = CAMPAIGNS[name]
    merged = dict(spec.defaults)
    for key, value in (bounds or {}).items():
        if value is not None and key in merged:
            merged[key] = value
    tasks = [(name, unit) for unit in spec.units(**merged)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_unit, tasks))
    else:
        chunks = [_run_unit(t) for t in tasks]
    return [row for chunk in chunks for row in chunk]


def run_campaign_report(name: str, bounds: dict | None = None,
                        jobs: int = 1) -> SweepReport:
    """Run one campaign and wrap the rows with bounds and wall time."""
    spec = CAMPAIGNS[name]
    merged = dict(spec.defaults)
    for key, value in (bounds or {}).items():
        if value is not None and key in merged:
            merged[key] = value
    started = time.monotonic()
    rows = run_campaign(name, bounds, jobs)
    return SweepReport(name, tuple(sorted(merged.items())), tuple(rows),
                       time.monotonic() - started)
