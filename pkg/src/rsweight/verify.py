"""Claim-by-claim verification suites.

Each suite returns a list of claim records {claim, params, expected,
actual, pass}; the CLI aggregates them into an exit code and a JSON
report, and the acceptance tests assert on them directly. Expected values
are either exact identities computed through an independent route or
closed forms checked verbatim.
"""

from __future__ import annotations

import time
from math import gcd as igcd

from .errors import InsufficientData
from .families import (TupleCollection, curve_point_count, rs_weight_oracle,
                       trace_weight_oracle)
from .gf2 import plateau_period
from .intpoly import IntPoly, scaled_cyclotomic, scaled_cyclotomic_factors
from .quadratic import (check_plateau, check_recurrence_order,
                        monomial_char_value_set, monomial_root_multiset,
                        monomial_weight_formula, phase_sum_closed_form,
                        power_trace_closed_form, power_trace_via_hadamard,
                        recurrence_matrix, recurrence_matrix_char_values,
                        recurrence_matrix_min_poly, verify_power_structure)
from .sft import (sft_weights, transfer_system_for, series_inverse,
                  zeta_series_from_counts)
from .weil import curve_degree, recover_weil_poly


def claim(name: str, params: dict, expected, actual, ok=None) -> dict:
    if ok is None:
        ok = expected == actual
    return {"claim": name, "params": params, "expected": expected,
            "actual": actual, "pass": bool(ok)}


def inventory_singles(max_offset: int = 6, max_d: int = 3) -> list[TupleCollection]:
    """All single tuples with largest offset <= max_offset and degree <= max_d."""
    out = []
    for t in range(1, max_offset + 1):
        out.append(TupleCollection([(0, t)]))
    if max_d >= 3:
        for a in range(1, max_offset):
            for b in range(a + 1, max_offset + 1):
                out.append(TupleCollection([(0, a, b)]))
    return out


def inventory_quadratic_pairs(t_max: int = 4) -> list[TupleCollection]:
    out = []
    for s in range(1, t_max + 1):
        for t in range(s + 1, t_max + 1):
            out.append(TupleCollection([(0, s), (0, t)]))
    return out


def full_inventory(max_offset: int = 6, max_d: int = 3,
                   pair_t_max: int = 4) -> list[TupleCollection]:
    return inventory_singles(max_offset, max_d) + inventory_quadratic_pairs(pair_t_max)


def quadratic_inventory(max_offset: int = 6, pair_t_max: int = 4):
    return inventory_singles(max_offset, max_d=2) + inventory_quadratic_pairs(pair_t_max)


# ---------------------------------------------------------------------------
# suite: sft  (periodic-point identities)
# ---------------------------------------------------------------------------

def suite_sft(n_max: int = 18, max_offset: int = 6, pair_t_max: int = 4,
              time_budget: float = 300.0) -> list[dict]:
    claims = []
    start = time.perf_counter()
    for coll in full_inventory(max_offset, 3, pair_t_max):
        system = transfer_system_for(coll)
        predicted = sft_weights(system, n_max)
        oracle = [rs_weight_oracle(coll, n) for n in range(1, n_max + 1)]
        claims.append(claim(
            "periodic-points-match-oracle",
            {"collection": coll.format(), "n": f"1..{n_max}"},
            oracle, predicted))
    elapsed = time.perf_counter() - start
    claims.append(claim("sweep-runtime-seconds", {"budget": time_budget},
                        f"< {time_budget}", round(elapsed, 2),
                        ok=elapsed < time_budget))
    # zeta series identity on the small families, exact rationals
    for text in ("0,1", "0,2", "0,1;0,2"):
        coll = TupleCollection.parse(text)
        system = transfer_system_for(coll)
        order = 12
        counts = system.periodic_counts(order)
        lhs = zeta_series_from_counts(counts, order)
        rhs = series_inverse(system.zeta_denominator(), order)
        claims.append(claim("zeta-series-equals-denominator-inverse",
                            {"collection": text, "order": order},
                            [str(c) for c in rhs], [str(c) for c in lhs]))
    # trimming never changes the counts
    for text in ("0,1", "0,3", "0,1;0,2"):
        coll = TupleCollection.parse(text)
        trimmed = transfer_system_for(coll, trim=True)
        untrimmed = transfer_system_for(coll, trim=False)
        claims.append(claim("trimming-preserves-periodic-counts",
                            {"collection": text, "n": "1..10"},
                            untrimmed.periodic_counts(10),
                            trimmed.periodic_counts(10)))
    return claims


# ---------------------------------------------------------------------------
# suite: weil  (curve identities and recovered characteristic values)
# ---------------------------------------------------------------------------

def weil_inventory(e_max: int = 9, max_offset: int = 6,
                   pair_t_max: int = 4) -> list[TupleCollection]:
    return [c for c in full_inventory(max_offset, 3, pair_t_max)
            if curve_degree(c) <= e_max]


def suite_weil(e_max: int = 9, n_max: int = 14) -> list[dict]:
    claims = []
    for coll in weil_inventory(e_max):
        label = coll.format()
        weights = {n: trace_weight_oracle(coll, n) for n in range(1, n_max + 1)}
        for n in range(1, n_max + 1):
            pc = curve_point_count(coll, n)
            claims.append(claim(
                "curve-points-equal-weight-identity",
                {"collection": label, "n": n},
                (1 << (n + 1)) - 2 * weights[n], pc))
        report = recover_weil_poly(coll, weights)
        e = curve_degree(coll)
        claims.append(claim("recovered-poly-degree",
                            {"collection": label}, e - 1, report.recovered.degree))
        claims.append(claim("recovered-poly-monic-integer",
                            {"collection": label}, True, report.recovered.is_monic()))
        claims.append(claim("recovered-roots-modulus-sqrt2",
                            {"collection": label}, True, report.moduli_ok))
        claims.append(claim("re-prediction-delta-zero",
                            {"collection": label, "through": report.repredicted_through},
                            0, report.delta_count))
        if report.functional_eq_ok is not None:
            claims.append(claim("functional-equation",
                                {"collection": label}, True, report.functional_eq_ok))
        if coll.is_quadratic:
            claims.append(claim(
                "phase-group-order-case",
                {"collection": label, "order": report.group_order,
                 "period": plateau_period(coll)},
                "in {N, 2N, 4N}", report.group_order_case,
                ok=report.group_order_case in ("N", "2N", "4N")))
    special = recover_weil_poly(TupleCollection.parse("0,1"),
                                {n: trace_weight_oracle(TupleCollection.parse("0,1"), n)
                                 for n in range(1, 15)})
    claims.append(claim("elliptic-family-recovers-x2-plus-2", {"collection": "0,1"},
                        [str(c) for c in IntPoly([2, 0, 1]).coeffs],
                        [str(c) for c in special.recovered.coeffs]))
    return claims


# ---------------------------------------------------------------------------
# suite: quadratic  (recurrence matrices, root multisets, weight structure)
# ---------------------------------------------------------------------------

def suite_quadratic(t_max: int = 6, theta_max: int = 48,
                    formula_t_max: int = 5, n_max: int = 18,
                    recurrence_cap: int = 30,
                    plateau_n_max: int = 18) -> list[dict]:
    claims = []
    # minimal polynomial closed form
    for t in range(1, t_max + 1):
        mp = recurrence_matrix_min_poly(t)
        expected = IntPoly.monomial(2 * t) - IntPoly([1 << t])
        claims.append(claim("min-poly-power-form", {"t": t},
                            expected.to_json(), mp.to_json()))
    # power traces: closed form, matrix powering, Hadamard extraction
    for t in range(1, t_max + 1):
        R = recurrence_matrix(t)
        traces = [R.trace_power(n) for n in range(1, 4 * t + 1)]
        closed = [power_trace_closed_form(t, n) for n in range(1, 4 * t + 1)]
        claims.append(claim("power-trace-closed-form",
                            {"t": t, "n": f"1..{4 * t}"}, closed, traces))
        if t >= 2:
            had = [power_trace_via_hadamard(t, n) for n in range(1, t)]
            claims.append(claim("power-trace-hadamard-route",
                                {"t": t, "n": f"1..{t - 1}"}, closed[:t - 1], had))
        structure = verify_power_structure(t)
        claims.append(claim("power-structure-description",
                            {"t": t, "n": f"1..{2 * t - 1}"},
                            {n: True for n in structure}, structure))
    # factored characteristic polynomial vs root-multiset prediction
    for t in range(1, t_max + 1):
        actual = recurrence_matrix_char_values(t)
        predicted = monomial_char_value_set(t)
        claims.append(claim("char-poly-factored-form", {"t": t},
                            predicted.to_json(), actual.to_json()))
        claims.append(claim("char-poly-total-degree", {"t": t},
                            1 << t, actual.total_degree))
        # the matrix is conjugate to its negative: char poly must be even
        expanded = actual.expanded()
        claims.append(claim("char-poly-negation-invariant", {"t": t},
                            True, expanded == expanded.compose_negate()))
        ms = monomial_root_multiset(t)
        sums = [ms.phase_power_sum(n) for n in range(1, 4 * t + 1)]
        closed = [phase_sum_closed_form(t, n) for n in range(1, 4 * t + 1)]
        claims.append(claim("phase-sum-closed-form",
                            {"t": t, "n": f"1..{4 * t}"}, closed, sums))
    # rescaled-cyclotomic factor structure
    for d in range(1, theta_max + 1):
        factors = scaled_cyclotomic_factors(d)
        splits = len(factors) == 2
        should_split = d % 4 == 0 and (d // 4) % 2 == 1
        prod = factors[0]
        for f in factors[1:]:
            prod = prod * f
        claims.append(claim("theta-split-iff-4-mod-8", {"d": d},
                            should_split, splits))
        claims.append(claim("theta-factor-product-exact", {"d": d},
                            scaled_cyclotomic(d).to_json(), prod.to_json()))
    # weight formula against the oracle
    for t in range(1, formula_t_max + 1):
        guaranteed = list(range(2 * t + 1, n_max + 1))
        expected = [rs_weight_oracle(TupleCollection([(0, t)]), n) for n in guaranteed]
        actual = [monomial_weight_formula(t, n) for n in guaranteed]
        claims.append(claim("monomial-weight-formula",
                            {"t": t, "n": f"{2 * t + 1}..{n_max}"},
                            expected, actual))
        small = [n for n in range(1, min(2 * t + 1, n_max + 1))
                 if monomial_weight_formula(t, n) ==
                 rs_weight_oracle(TupleCollection([(0, t)]), n)]
        claims.append(claim("monomial-weight-formula-small-n-agreement",
                            {"t": t, "note": "recorded, not required"},
                            "recorded", small, ok=True))
    # minimal recurrences from oracle weights
    for coll in quadratic_inventory():
        label = coll.format()
        period = plateau_period(coll)
        try:
            rep = check_recurrence_order(coll, cap=recurrence_cap)
            claims.append(claim("recurrence-order-and-divisor",
                                {"collection": label, "N": period,
                                 "order": rep["order"], "divides": rep["divides"],
                                 "certificate": rep.get("certificate")},
                                True, rep["pass"]))
        except InsufficientData as exc:
            infeasible_window = 2 * (2 * period + 1)
            claims.append(claim(
                "recurrence-order-and-divisor",
                {"collection": label, "N": period,
                 "status": "insufficient-data", "detail": str(exc),
                 "full_window_needed": infeasible_window},
                "insufficient-data-only-when-window-infeasible",
                f"window {infeasible_window} needs 2^{infeasible_window} enumeration",
                ok=infeasible_window > 2 * recurrence_cap))
    # plateau structure in both contexts
    for coll in quadratic_inventory():
        label = coll.format()
        results = []
        for n in range(1, plateau_n_max + 1):
            rw = rs_weight_oracle(coll, n)
            tw = trace_weight_oracle(coll, n, cap=max(plateau_n_max, 18))
            results.append(check_plateau(coll, n, rw, tw)["pass"])
        claims.append(claim("plateau-both-contexts",
                            {"collection": label, "n": f"1..{plateau_n_max}"},
                            [True] * plateau_n_max, results))
    return claims


# ---------------------------------------------------------------------------
# suite: perf  (scaling demonstration)
# ---------------------------------------------------------------------------

def suite_perf(oracle_n_low: int = 22, oracle_n_high: int = 28,
               formula_n: int = 10_000) -> list[dict]:
    claims = []
    coll = TupleCollection([(0, 3)])
    t0 = time.perf_counter()
    w = monomial_weight_formula(3, formula_n)
    formula_elapsed = time.perf_counter() - t0
    claims.append(claim("formula-weight-under-one-second",
                        {"t": 3, "n": formula_n, "seconds": round(formula_elapsed, 4),
                         "weight_bits": w.bit_length()},
                        "< 1 s", round(formula_elapsed, 4),
                        ok=formula_elapsed < 1.0))
    times = {}
    for n in range(oracle_n_low, oracle_n_high + 1):
        t0 = time.perf_counter()
        rs_weight_oracle(coll, n, cap=oracle_n_high)
        times[n] = time.perf_counter() - t0
    ratios = [times[n + 1] / times[n]
              for n in range(oracle_n_low, oracle_n_high)]
    geo = 1.0
    for r in ratios:
        geo *= r
    geo **= 1.0 / len(ratios)
    claims.append(claim("oracle-exponential-scaling",
                        {"n": f"{oracle_n_low}..{oracle_n_high}",
                         "ratios": [round(r, 2) for r in ratios],
                         "times": {n: round(v, 3) for n, v in times.items()}},
                        "geometric mean per-increment ratio in [1.4, 2.6]",
                        round(geo, 3), ok=1.4 <= geo <= 2.6))
    claims.append(claim("oracle-completes-at-cap",
                        {"n": oracle_n_high,
                         "seconds": round(times[oracle_n_high], 2)},
                        "completes", "completes", ok=True))
    return claims


SUITES = {
    "sft": suite_sft,
    "weil": suite_weil,
    "quadratic": suite_quadratic,
    "perf": suite_perf,
}


def run_suites(names, **overrides) -> dict:
    """Run the named suites ('all' for every one); returns the full report."""
    if names == "all" or names == ["all"]:
        names = list(SUITES)
    if isinstance(names, str):
        names = [names]
    report = {}
    for name in names:
        kwargs = overrides.get(name, {})
        report[name] = SUITES[name](**kwargs)
    report["all_pass"] = all(c["pass"] for cs in report.values()
                             if isinstance(cs, list) for c in cs)
    return report
