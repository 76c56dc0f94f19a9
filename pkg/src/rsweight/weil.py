"""Curve-side analysis of trace-context weight sequences.

The trace-context family of a collection is the point count (up to the
affine/projective bookkeeping) of a plane curve of degree e = max over
tuples of 1 + 2^a_1 + ... + 2^a_{d-1}. The normalized curve has genus
(e - 1) / 2, so the weight deviations are power sums of exactly e - 1
algebraic integers of modulus sqrt(2). This module recovers that
polynomial exactly from e - 1 oracle weights by inverse Newton, then
verifies the modulus claim numerically (the one genuinely numeric check
in the package) alongside an exact functional-equation companion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd as igcd

from .errors import EmptyCollection, NonIntegral
from .families import TupleCollection
from .intpoly import IntPoly, factor_into_char_values, poly_from_power_sums

MODULUS_REL_TOL = 1e-9


def curve_degree(collection: TupleCollection) -> int:
    """Largest monomial exponent 1 + 2^a_1 + ... + 2^a_{d-1}; odd and >= 3."""
    collection.require_nonempty()
    return max(collection.field_exponents())


def genus(collection: TupleCollection) -> int:
    """(e - 1) / 2: the genus of the desingularized projective closure."""
    return (curve_degree(collection) - 1) // 2


@dataclass
class WeilReport:
    e: int
    g: int
    recovered: IntPoly
    delta_count: int
    moduli_ok: bool
    functional_eq_ok: bool | None
    case: str                      # "elliptic" | "singular"
    repredicted_through: int
    group_order: int | None = None
    group_order_case: str | None = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "g": self.g,
            "coefficients": self.recovered.to_json(),
            "delta_count": self.delta_count,
            "moduli_ok": self.moduli_ok,
            "functional_eq_ok": self.functional_eq_ok,
            "case": self.case,
            "repredicted_through": self.repredicted_through,
            "group_order": self.group_order,
            "group_order_case": self.group_order_case,
            "notes": list(self.notes),
        }


def weil_modulus_check(poly: IntPoly) -> tuple[bool, bool | None]:
    """(all roots have modulus sqrt(2) within 1e-9 relative, exact
    functional-equation check when the degree is even).

    Root moduli come from 50+-bit numerics; the functional equation
    x^deg * p(2/x) = +- 2^(deg/2) * p(x) is checked exactly in integers
    and reported separately as the authoritative companion.
    """
    import mpmath as mp

    if poly.degree < 1:
        return True, None
    with mp.workdps(50):
        coeffs = [mp.mpf(c) for c in reversed(poly.coeffs)]
        roots = mp.polyroots(coeffs, maxsteps=200, extraprec=120)
        target = mp.sqrt(2)
        moduli_ok = all(abs(abs(r) - target) <= MODULUS_REL_TOL * target
                        for r in roots)
    funceq_ok = None
    if poly.degree % 2 == 0:
        d = poly.degree
        # x^d p(2/x): coefficient of x^(d-k) is p_k 2^k
        transformed = IntPoly([poly.coeffs[d - i] * (1 << (d - i))
                               for i in range(d + 1)])
        scale = 1 << (d // 2)
        funceq_ok = (transformed == scale * poly or
                     transformed == -scale * poly)
    return moduli_ok, funceq_ok


def recover_weil_poly(collection: TupleCollection, weights,
                      quadratic_period: int | None = None) -> WeilReport:
    """Recover the degree-(e-1) characteristic polynomial of the trace-side
    weight deviations and audit it.

    ``weights`` maps n to the trace-context weight, and must cover
    n = 1..e-1; the power sums are s_n = 2 wt(n) - 2^n. Every further
    weight available is re-predicted through the Newton recursion, and
    ``delta_count`` is 0 exactly when all of them match (no unit-modulus
    terms are needed). A fractional symmetric function raises NonIntegral,
    which would falsify the no-unit-terms structure and is surfaced, never
    swallowed.
    """
    if hasattr(weights, "entries"):
        weights = dict(weights.entries)
    e = curve_degree(collection)
    g = (e - 1) // 2
    need = range(1, e)
    if any(n not in weights for n in need):
        raise ValueError(f"need trace weights for n = 1..{e - 1}")
    sums = [2 * weights[n] - (1 << n) for n in need]
    recovered = poly_from_power_sums(sums, e - 1, require_integral=True)
    notes = []
    # re-predict everything supplied beyond the recovery window
    extra = sorted(n for n in weights if n >= e)
    horizon = e - 1
    mismatch = 0
    if extra:
        top = max(extra)
        ps = list(sums)
        # Newton forward: p_n = sum_{i=1..deg} (-1)^(i-1) e_i p_{n-i}
        deg = recovered.degree
        es = [(-1) ** k * recovered.coeffs[deg - k] for k in range(deg + 1)]
        for n in range(e, top + 1):
            acc = 0
            for i in range(1, deg + 1):
                acc += (-1) ** (i - 1) * es[i] * ps[n - 1 - i]
            ps.append(acc)
        for n in extra:
            predicted_num = (1 << n) + ps[n - 1]
            if predicted_num % 2 or predicted_num // 2 != weights[n]:
                mismatch += 1
        horizon = top
    if mismatch:
        notes.append(f"{mismatch} re-predictions failed: unit-modulus terms present")
    moduli_ok, funceq_ok = weil_modulus_check(recovered)
    report = WeilReport(
        e=e,
        g=g,
        recovered=recovered,
        delta_count=mismatch,
        moduli_ok=moduli_ok,
        functional_eq_ok=funceq_ok,
        case="elliptic" if e == 3 else "singular",
        repredicted_through=horizon,
        notes=notes,
    )
    if collection.is_quadratic:
        _attach_group_order(report, collection, quadratic_period)
    return report


def _attach_group_order(report: WeilReport, collection: TupleCollection,
                        period: int | None) -> None:
    """For quadratic families the recovered values are sqrt(2)-scaled roots
    of unity; record the order of the group they generate and classify it
    against the plateau period (N, 2N, or 4N per the case analysis). The
    multiset size e - 1 and the plateau count 2^(v_max / 2) are both
    recorded without asserting them equal."""
    from .gf2 import plateau_period
    from .quadratic import group_order_of_char_values

    try:
        values = factor_into_char_values(report.recovered)
        order = group_order_of_char_values(values)
    except ValueError:
        report.notes.append("recovered factors outside the scaled-cyclotomic inventory")
        return
    n_period = period if period is not None else plateau_period(collection)
    report.group_order = order
    for label, mult in (("N", 1), ("2N", 2), ("4N", 4)):
        if order == mult * n_period:
            report.group_order_case = label
            break
    else:
        report.group_order_case = f"unexpected ({order} vs N={n_period})"
