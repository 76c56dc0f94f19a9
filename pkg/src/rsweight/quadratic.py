"""Quadratic-family machinery: recurrence matrices, scaled root-of-unity
multisets, Hadamard trace extraction, and the structural checks tying the
weight sequences to their closed forms.

Everything here is exact. Matrix powers run in int64 while entries
provably fit and in arbitrary-precision integers beyond; root-of-unity
power sums collapse full groups to 0 or the group order, so no root is
ever evaluated numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd

import numpy as np

from .errors import (CapExceeded, InsufficientData, MismatchWithPaper,
                     NonIntegralMultiplicity, NonQuadratic)
from .families import TupleCollection, rs_weight_oracle
from .gf2 import plateau_param, plateau_period
from .intpoly import (CharValueSet, IntPoly, IntPoly_from_fractions,
                      berlekamp_massey, charpoly_exact,
                      factor_into_char_values, mobius, poly_lcm,
                      recurrence_annihilates, scaled_cyclotomic_factors,
                      strip_zero_roots)

DEFAULT_T_CAP = 8


def rotate_right(vec, k: int = 1):
    """Cyclic rotation placing the last k entries in front."""
    vec = list(vec)
    if not vec:
        return vec
    k %= len(vec)
    return vec[-k:] + vec[:-k]


# ---------------------------------------------------------------------------
# the weight-recurrence matrix of a quadratic monomial family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceMatrix:
    """2^t x 2^t matrix whose spectrum drives the monomial weight sequence."""

    t: int
    mat: np.ndarray

    def power(self, n: int) -> np.ndarray:
        """Exact n-th power; switches to bigint entries once int64 could clip."""
        return _matrix_power_exact(self.mat, n)

    def trace_power(self, n: int) -> int:
        # diagonal summed in Python ints: the entries are int64-safe but a
        # 2^t-term sum of them need not be
        return int(self.power(n).diagonal().astype(object).sum())


def _matrix_power_exact(mat: np.ndarray, n: int) -> np.ndarray:
    """Iterative exact powering. Each row of the base has at most `rw`
    nonzero +-1 entries, so entries of the k-th power are bounded by rw^k;
    the multiply runs in int64 while that is provably safe and in Python
    big integers afterwards."""
    size = mat.shape[0]
    if n <= 0:
        return np.eye(size, dtype=np.int64)
    rw = max(int(np.count_nonzero(row)) for row in mat)
    out = mat.copy()
    for _ in range(n - 1):
        if out.dtype != object and \
                int(np.abs(out).max(initial=0)) * rw >= (1 << 62):
            out = out.astype(object)
        out = mat.astype(out.dtype) @ out if out.dtype == object else mat @ out
    return out


def recurrence_matrix(t: int, cap: int = DEFAULT_T_CAP) -> RecurrenceMatrix:
    """Rows are the paired rotations of (1, 0...0, +-1, 0...0), pairs in order."""
    if t < 1:
        raise ValueError("t must be positive")
    if t > cap:
        raise CapExceeded(f"t={t} exceeds matrix cap {cap} (2^t x 2^t entries)")
    half = 1 << (t - 1)
    plus = [1] + [0] * (half - 1) + [1] + [0] * (half - 1)
    minus = [1] + [0] * (half - 1) + [-1] + [0] * (half - 1)
    rows = []
    for i in range(half):
        rows.append(rotate_right(plus, i))
        rows.append(rotate_right(minus, i))
    return RecurrenceMatrix(t, np.array(rows, dtype=np.int64))


def min_poly_exact(mat: np.ndarray) -> IntPoly:
    """Minimal polynomial by Krylov elimination on flattened matrix powers.

    Builds I, M, M^2, ... as vectors and finds the first exact linear
    dependence by rational row reduction; the dependence coefficients are
    the minimal polynomial.
    """
    size = mat.shape[0]
    dim = size * size
    basis = []          # rows of the echelon form: (pivot, row, coords)
    reprs = []          # expression of each echelon row in terms of powers
    power = np.eye(size, dtype=object)
    mato = mat.astype(object)
    k = 0
    while True:
        vec = [Fraction(int(v)) for v in power.reshape(dim)]
        coords = [Fraction(0)] * (k + 1)
        coords[k] = Fraction(1)
        for pivot, row, rep in basis:
            c = vec[pivot]
            if c:
                for i, rv in enumerate(row):
                    if rv:
                        vec[i] -= c * rv
                for i, rv in enumerate(rep):
                    if i < len(coords):
                        coords[i] -= c * rv
                    else:
                        coords.append(-c * rv)
        pivot = next((i for i, v in enumerate(vec) if v), None)
        if pivot is None:
            # x^k = combination of lower powers: coords give the min poly
            poly = [-c for c in coords[:k]] + [Fraction(1)]
            return IntPoly_from_fractions(poly)
        inv = 1 / vec[pivot]
        row = [v * inv for v in vec]
        rep = [c * inv for c in coords]
        basis.append((pivot, row, rep))
        power = power @ mato
        k += 1
        if k > size + 1:
            raise AssertionError("no minimal polynomial found below the dimension")


def recurrence_matrix_min_poly(t: int, cap: int = DEFAULT_T_CAP) -> IntPoly:
    """Minimal polynomial of the recurrence matrix; must be x^(2t) - 2^t."""
    R = recurrence_matrix(t, cap=cap)
    mp = min_poly_exact(R.mat)
    expected = IntPoly.monomial(2 * t) - IntPoly([1 << t])
    if mp != expected:
        raise MismatchWithPaper(
            f"min poly of R({t}) is {mp}, expected {expected}")
    return mp


def recurrence_matrix_char_values(t: int, cap: int = DEFAULT_T_CAP) -> CharValueSet:
    """Exact characteristic polynomial of R(t), factored over the
    rescaled-cyclotomic inventory."""
    R = recurrence_matrix(t, cap=cap)
    poly = charpoly_exact(R.mat.tolist())
    reduced, zeros = strip_zero_roots(poly)
    if zeros:
        raise AssertionError("recurrence matrix must be invertible")
    return factor_into_char_values(reduced)


# ---------------------------------------------------------------------------
# scaled roots of unity and the monomial weight formula
# ---------------------------------------------------------------------------

class ScaledRootMultiset:
    """Multiset of values sqrt(2) * (root of unity), exact.

    Stored as full root-of-unity groups (order M, multiplicity), which is
    the only shape the construction produces; conjugation closure is then
    automatic and power sums collapse exactly: a full group of order M sums
    to M when M | n and to 0 otherwise.
    """

    __slots__ = ("groups",)

    def __init__(self, groups):
        gs = sorted((int(m), int(mult)) for m, mult in groups if mult)
        for m, mult in gs:
            if m < 1 or mult < 1:
                raise ValueError("orders and multiplicities must be positive")
        object.__setattr__(self, "groups", tuple(gs))

    def __setattr__(self, *a):
        raise AttributeError("ScaledRootMultiset is immutable")

    def __eq__(self, other):
        return isinstance(other, ScaledRootMultiset) and self.groups == other.groups

    def entries(self):
        """Explicit (order, residue, multiplicity) triples."""
        for m, mult in self.groups:
            for k in range(m):
                yield (m, k, mult)

    @property
    def size(self) -> int:
        """Total multiplicity-weighted count."""
        return sum(m * mult for m, mult in self.groups)

    def phase_power_sum(self, n: int) -> int:
        """sum of zeta^n over the unscaled root-of-unity multiset, exact."""
        return sum(m * mult for m, mult in self.groups if n % m == 0)

    def scaled_power_sum(self, n: int) -> int:
        """sum of (sqrt(2) zeta)^n; nonzero only when every contributing
        group order divides n, and group orders here are even."""
        phase = self.phase_power_sum(n)
        if phase == 0:
            return 0
        if n % 2:
            raise AssertionError("odd n cannot have a nonzero phase sum here")
        return (1 << (n // 2)) * phase

    def char_value_set(self) -> CharValueSet:
        """The same multiset as factored integer polynomials: a full scaled
        group of order M expands to the factors of x^M - 2^(M/2)."""
        factors = []
        for m, mult in self.groups:
            if m % 2:
                raise AssertionError("scaled groups of odd order cannot be integral")
            d = 1
            while d <= m // 2:
                if (m // 2) % d == 0:
                    for f in scaled_cyclotomic_factors(d):
                        factors.append((f, mult))
                d += 1
        return CharValueSet(factors)

    def to_json(self):
        return [{"order": m, "multiplicity": mult} for m, mult in self.groups]

    def __repr__(self):
        return f"ScaledRootMultiset({list(self.groups)!r})"


def monomial_root_multiset(t: int) -> ScaledRootMultiset:
    """The characteristic roots of the (0,t) weight sequence.

    Write t = 2^nu * m with m odd. For each divisor d | m take the full
    group of 2^(nu+1) d-th roots of unity, scaled by sqrt(2), with
    multiplicity (sum over d' | d of mu(d/d') 2^(2^nu d')) / (2^(nu+1) d).
    The total count is 2^t; integrality of each multiplicity is forced by
    the divisor-sum divisibility and is asserted here.
    """
    if t < 1:
        raise ValueError("t must be positive")
    nu = 0
    m = t
    while m % 2 == 0:
        nu += 1
        m //= 2
    groups = []
    for d in range(1, m + 1):
        if m % d:
            continue
        num = sum(mobius(d // dp) * (1 << ((1 << nu) * dp))
                  for dp in range(1, d + 1) if d % dp == 0)
        den = (1 << (nu + 1)) * d
        if num % den:
            raise NonIntegralMultiplicity(
                f"multiplicity {num}/{den} for d={d}, t={t}")
        groups.append(((1 << (nu + 1)) * d, num // den))
    ms = ScaledRootMultiset(groups)
    if ms.size != 1 << t:
        raise AssertionError(f"root multiset size {ms.size} != 2^{t}")
    return ms


def phase_sum_closed_form(t: int, n: int) -> int:
    """2^gcd(n,t) when n / gcd(n,t) is even, else 0."""
    g = igcd(n, t)
    return (1 << g) if (n // g) % 2 == 0 else 0


def power_trace_closed_form(t: int, n: int) -> int:
    """2^(n/2 + gcd(n,t)) when n / gcd(n,t) is even, else 0."""
    g = igcd(n, t)
    if (n // g) % 2:
        return 0
    # n/g even forces n even
    return 1 << (n // 2 + g)


def recurrence_matrix_power_trace(t: int, n: int, cap: int = DEFAULT_T_CAP) -> int:
    """tr R(t)^n by exact powering, checked against the closed form."""
    R = recurrence_matrix(t, cap=cap)
    tr = R.trace_power(n)
    expected = power_trace_closed_form(t, n)
    if tr != expected:
        raise MismatchWithPaper(
            f"tr R({t})^{n} = {tr}, closed form gives {expected}")
    return tr


def monomial_weight_formula(t: int, n: int) -> int:
    """Weight of the quadratic monomial family at n from the root multiset:
    2^(n-1) - (1/2) * scaled power sum. Exact for any n, tiny cost."""
    ms = monomial_root_multiset(t)
    phase = ms.phase_power_sum(n)
    if phase == 0:
        return 1 << (n - 1) if n >= 1 else 0
    half = 1 << (n - 1)
    correction = (1 << (n // 2 - 1)) * phase if n >= 2 else phase // 2
    return half - correction


def monomial_char_value_set(t: int) -> CharValueSet:
    """Factored characteristic polynomial predicted by the root multiset."""
    return monomial_root_multiset(t).char_value_set()


# ---------------------------------------------------------------------------
# Hadamard tensor powers
# ---------------------------------------------------------------------------

def hadamard_entry(k: int, ell: int) -> int:
    """Entry (k, ell) of the 2^n x 2^n tensor power: (-1)^popcount(k & ell)."""
    return -1 if (k & ell).bit_count() & 1 else 1


def hadamard_matrix(n: int) -> np.ndarray:
    size = 1 << n
    ks = np.arange(size, dtype=np.int64)
    return np.where(np.bitwise_count(ks[:, None] & ks[None, :]) & 1, -1, 1).astype(np.int64)


def hadamard_with_zero_columns(n: int, t: int) -> np.ndarray:
    """2^n x 2^t matrix: 2^(t-n) - 1 zero columns after each Hadamard column."""
    if not 1 <= n <= t:
        raise ValueError("need 1 <= n <= t")
    M = hadamard_matrix(n)
    out = np.zeros((1 << n, 1 << t), dtype=np.int64)
    step = 1 << (t - n)
    out[:, ::step] = M
    return out


def central_symmetry_check(n: int) -> bool:
    """Reflection identity on the trace-extraction coordinates.

    For every split a + b = n and 0 <= q < 2^a, 0 <= r < 2^b, the entry at
    (q + r 2^a, q 2^b + r) and its reflection through the matrix center
    agree up to the sign (-1)^n. (The identity is specific to these
    coordinate pairs; it fails for arbitrary index pairs.)
    """
    if n > 12:
        raise CapExceeded("central symmetry check capped at n = 12")
    full = (1 << n) - 1
    for a in range(n + 1):
        b = n - a
        for q in range(1 << a):
            for r in range(1 << b):
                k = q + (r << a)
                ell = (q << b) + r
                if hadamard_entry(full - k, full - ell) != \
                        (-1) ** n * hadamard_entry(k, ell):
                    return False
    return True


def power_trace_via_hadamard(t: int, n: int) -> int:
    """tr R(t)^n for 1 <= n <= t read off the Hadamard tensor power.

    With a = t mod n and b = n - a the trace is the sum of the entries
    (q + r 2^a, q 2^b + r) over 0 <= q < 2^a, 0 <= r < 2^b; the corner
    (2^n - 1, 2^n - 1) is the (q, r) = (max, max) term.
    """
    if not 1 <= n <= t:
        raise ValueError("need 1 <= n <= t")
    a = t % n
    b = n - a
    total = 0
    for q in range(1 << a):
        for r in range(1 << b):
            total += hadamard_entry(q + (r << a), (q << b) + r)
    return total


def verify_power_structure(t: int, cap: int = DEFAULT_T_CAP) -> dict:
    """Check the explicit description of R(t)^n for 1 <= n <= 2t - 1.

    For n <= t the power is the stack of row-rotated copies mu^i of the
    zero-column-padded Hadamard tensor power; for t <= n <= 2t - 1 it is
    2^(n-t) times the transpose of R(t)^(2t-n). Returns pass/fail per n.
    """
    R = recurrence_matrix(t, cap=cap)
    results = {}
    for n in range(1, t + 1):
        Rn = R.power(n)
        Mnt = hadamard_with_zero_columns(n, t)
        blocks = []
        block = Mnt
        for _ in range(1 << (t - n)):
            blocks.append(block)
            block = np.roll(block, 1, axis=1)
        expected = np.vstack(blocks)
        results[n] = bool(np.array_equal(Rn, expected))
    for n in range(t, 2 * t):
        Rn = R.power(n)
        expected = (1 << (n - t)) * R.power(2 * t - n).T
        results[n] = results.get(n, True) and bool(np.array_equal(Rn, expected))
    return results


# ---------------------------------------------------------------------------
# structural checks on quadratic weight sequences
# ---------------------------------------------------------------------------

def plateau_weight_values(collection: TupleCollection, n: int) -> set[int]:
    """Admissible weights at length n: 2^(n-1) and 2^(n-1) +- 2^((n+v)/2-1).

    The plateau deviation |2 wt - 2^n| is either 0 (balanced) or exactly
    2^((n+v)/2), with v = v(n); v = n (the degenerate folded-poly case)
    makes the minus branch hit 0, which is how vanishing weights arise.
    """
    v = plateau_param(collection, n)
    vals = {1 << (n - 1)} if n >= 1 else set()
    if (n + v) % 2 == 0:
        dev = 1 << ((n + v) // 2 - 1)
        vals.add((1 << (n - 1)) - dev)
        vals.add((1 << (n - 1)) + dev)
    return vals


def check_plateau(collection: TupleCollection, n: int,
                  rs_weight: int, trace_weight: int) -> dict:
    """Both contexts' weights must sit in the same plateau value set."""
    if not collection.is_quadratic:
        raise NonQuadratic("plateau structure is a quadratic-family property")
    vals = plateau_weight_values(collection, n)
    return {
        "n": n,
        "v": plateau_param(collection, n),
        "allowed": sorted(vals),
        "rs_weight": rs_weight,
        "trace_weight": trace_weight,
        "pass": rs_weight in vals and trace_weight in vals,
    }


DEFAULT_RECURRENCE_CAP = 28
RIGOROUS_HORIZON_LIMIT = 320


def check_recurrence_order(collection: TupleCollection,
                           cap: int | None = None) -> dict:
    """Minimal recurrence of the cyclic-context weights, from the oracle.

    Oracle windows grow adaptively up to the cap. A candidate recurrence of
    order r found on a window of w terms is accepted only after it
    annihilates weights computed independently from periodic counts over a
    longer horizon. When that horizon reaches r + V + 1 (V the trimmed
    vertex count) the acceptance is an exact certificate: the weight
    sequence satisfies the degree-(V+1) recurrence (x - 2) * charpoly(A) by
    Cayley-Hamilton, so a residual annihilated at V + 1 consecutive
    positions vanishes identically. Larger systems fall back to a long
    cross-check horizon, recorded as such.

    The certified recurrence is then checked against the structural claims:
    order <= 2N + 1 and divisibility into (x - 2)(x^2N -+ 2^N) with N the
    plateau period. Raises InsufficientData when no window up to the cap
    certifies a candidate.
    """
    from .sft import sft_weights, transfer_system_for

    if not collection.is_quadratic:
        raise NonQuadratic("recurrence-order theorem applies to quadratic families")
    period = plateau_period(collection)
    cap = DEFAULT_RECURRENCE_CAP if cap is None else cap
    system = transfer_system_for(collection)
    n_vertices = system.vertex_count
    windows = sorted({w for w in (12, 16, 20, 24, 26, 28, 29, 30, cap)
                      if w <= cap})
    weights: list[int] = []
    last_failure = "no window attempted"
    for window in windows:
        while len(weights) < window:
            weights.append(rs_weight_oracle(collection, len(weights) + 1, cap=cap))
        poly = berlekamp_massey(weights)
        if not isinstance(poly, IntPoly):
            last_failure = f"window {window}: non-integral candidate"
            continue
        order = poly.degree
        if 2 * order > window:
            last_failure = f"window {window}: order {order} not certifiable"
            continue
        rigorous_h = order + n_vertices + 1
        horizon = window + max(2 * order, 24)
        certificate = "cross-checked"
        if rigorous_h <= max(horizon, RIGOROUS_HORIZON_LIMIT):
            horizon = max(horizon, rigorous_h)
            certificate = "cayley-hamilton"
        independent = sft_weights(system, horizon)
        if independent[:len(weights)] != weights:
            raise AssertionError("oracle and periodic-count weights disagree")
        if not recurrence_annihilates(poly, independent):
            last_failure = (f"window {window}: candidate fails independent "
                            f"weights within horizon {horizon}")
            continue
        two_n = 2 * period
        base = IntPoly([-2, 1])
        minus = base * (IntPoly.monomial(two_n) - IntPoly([1 << period]))
        plus = base * (IntPoly.monomial(two_n) + IntPoly([1 << period]))
        divides_minus = order <= two_n + 1 and poly.divides(minus)
        divides_plus = order <= two_n + 1 and poly.divides(plus)
        return {
            "collection": collection.format(),
            "period": period,
            "window": window,
            "order": order,
            "poly": poly.to_json(),
            "certificate": certificate,
            "order_bound_ok": order <= 2 * period + 1,
            "divides": ("minus" if divides_minus else
                        "plus" if divides_plus else "neither"),
            "pass": order <= 2 * period + 1 and (divides_minus or divides_plus),
        }
    raise InsufficientData(
        f"cap {cap} cannot certify a minimal recurrence ({last_failure})")


def check_half_coefficients(collection: TupleCollection, n_max: int,
                            rs_cap: int | None = None) -> dict:
    """Weights must equal 2^n - (1/2) * power sums of the transfer spectrum.

    This is the expansion with every coefficient -1/2 against the
    characteristic values; for quadratic monomials the formula route
    through the scaled root multiset is compared as well, and agreement at
    small n (below where the backward extension is guaranteed) is recorded
    as data rather than asserted.
    """
    from .sft import transfer_system_for

    system = transfer_system_for(collection)
    values = system.char_values()
    sums = values.power_sums(n_max)
    per_n = []
    all_match = True
    for n in range(1, n_max + 1):
        wt = rs_weight_oracle(collection, n, cap=rs_cap)
        num = (1 << (n + 1)) - sums[n - 1]
        predicted, rem = divmod(num, 2)
        match = (rem == 0 and predicted == wt)
        all_match = all_match and match
        per_n.append({"n": n, "oracle": wt, "predicted": predicted, "match": match})
    report = {
        "collection": collection.format(),
        "char_values": values.to_json(),
        "per_n": per_n,
        "pass": all_match,
    }
    offs = collection.quadratic_offsets
    if collection.is_quadratic and len(offs) == 1:
        t = offs[0]
        formula = []
        for n in range(1, n_max + 1):
            wt = next(e["oracle"] for e in per_n if e["n"] == n)
            fv = monomial_weight_formula(t, n)
            formula.append({"n": n, "formula": fv, "match": fv == wt,
                            "guaranteed": n >= 2 * t + 1})
        report["monomial_formula"] = formula
        report["small_n_agreement"] = [e["n"] for e in formula
                                       if e["match"] and not e["guaranteed"]]
        report["pass"] = report["pass"] and all(
            e["match"] for e in formula if e["guaranteed"])
    return report


def group_order_of_char_values(values: CharValueSet) -> int:
    """Order of the group generated by the phases value / sqrt(2).

    Each rescaled-cyclotomic factor of order d contributes phases whose
    orders lcm to 2d; the eigenvalue 2 contributes phase sqrt(2), which is
    not a root of unity and is skipped (callers separate it beforehand).
    """
    order = 1
    for poly, _ in values.factors:
        d = _rescaled_cyclotomic_order(poly)
        if d is None:
            raise ValueError(f"factor {poly} is not a rescaled cyclotomic")
        order = order * 2 * d // igcd(order, 2 * d)
    return order


def _rescaled_cyclotomic_order(poly: IntPoly):
    from .intpoly import _euler_phi

    deg = poly.degree
    d = 1
    while _euler_phi(d) <= deg or d <= 2:
        if poly in scaled_cyclotomic_factors(d):
            return d
        d += 1
        if d > 8 * deg * deg + 16:
            return None
    return None
