"""Exact integer and rational polynomial algebra.

Integer polynomials are immutable coefficient tuples, constant term first
(:class:`IntPoly`). Algebraic-integer multisets are represented exactly as
multisets of (monic irreducible IntPoly, multiplicity) pairs
(:class:`CharValueSet`); their power sums are evaluated through Newton's
identities, so no root is ever extracted numerically on an exact code path.

The only numerics in this module sit inside the split search of
:func:`scaled_cyclotomic_factors`, and every candidate produced there is
verified by exact multiplication before being returned.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd

from .errors import NonIntegral, NonIntegralMultiplicity, SplitNotFound


class IntPoly:
    """Polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("IntPoly is immutable")

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k <= self.degree else 0

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self):
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        r = IntPoly([1])
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def shift(self, k: int) -> "IntPoly":
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def divmod_exact(self, divisor: "IntPoly"):
        """Euclidean division when the divisor is monic: all steps integral."""
        if not divisor.is_monic():
            raise ValueError("divisor must be monic for integral division")
        rem = list(self.coeffs)
        dd = divisor.degree
        q = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c:
                q[k - dd] = c
                for j, b in enumerate(divisor.coeffs):
                    rem[k - dd + j] -= c * b
        return IntPoly(q), IntPoly(rem)

    def divides(self, other: "IntPoly") -> bool:
        return not other.divmod_exact(self)[1]

    def __call__(self, x):
        r = 0
        for c in reversed(self.coeffs):
            r = r * x + c
        return r

    def reversed_coeffs(self) -> tuple[int, ...]:
        """Coefficients of x^deg * p(1/x), ascending."""
        return tuple(reversed(self.coeffs))

    def compose_negate(self) -> "IntPoly":
        """p(-x)."""
        return IntPoly([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    # -- serialization & display --------------------------------------------

    def to_json(self) -> list[str]:
        """JSON form: array of decimal coefficient strings, constant first."""
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "IntPoly":
        return cls(int(s) for s in data)

    def format(self, var: str = "x", ascending: bool = False) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        order = range(self.degree + 1) if ascending else range(self.degree, -1, -1)
        for k in order:
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xs = var if k == 1 else f"{var}^{k}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        s = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    __str__ = format

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls((0,) * k + (c,))


X = IntPoly([0, 1])
ONE = IntPoly([1])


# ---------------------------------------------------------------------------
# rational-coefficient helpers (internal)
# ---------------------------------------------------------------------------

def _rat_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _rat_divmod(a, b):
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [Fraction(0)] * max(len(a) - db, 0)
    for k in range(len(a) - 1, db - 1, -1):
        if a[k]:
            f = a[k] / lead
            q[k - db] = f
            for j, c in enumerate(b):
                a[k - db + j] -= f * c
    return q, _rat_trim(a)


def _rat_gcd_monic(a, b):
    a, b = list(a), list(b)
    while _rat_trim(b):
        a, b = b, _rat_divmod(a, b)[1]
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def poly_lcm(a: IntPoly, b: IntPoly) -> IntPoly:
    """Least common multiple of monic integer polynomials, monic result."""
    fa = [Fraction(c) for c in a.coeffs]
    fb = [Fraction(c) for c in b.coeffs]
    g = _rat_gcd_monic(fa, fb)
    q, r = _rat_divmod(fa, g)
    assert not r
    prod = IntPoly_from_fractions(q) * b
    return prod


def IntPoly_from_fractions(fs) -> IntPoly:
    out = []
    for f in fs:
        f = Fraction(f)
        if f.denominator != 1:
            raise NonIntegral(f"coefficient {f} is not an integer")
        out.append(f.numerator)
    return IntPoly(out)


# ---------------------------------------------------------------------------
# cyclotomic polynomials and the sqrt(2) rescaling transform
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPoly:
    """d-th cyclotomic polynomial by exact division of x^d - 1."""
    if d < 1:
        raise ValueError("d must be positive")
    if d == 1:
        return IntPoly([-1, 1])
    num = IntPoly.monomial(d) - ONE
    den = ONE
    for dp in range(1, d):
        if d % dp == 0:
            den = den * cyclotomic(dp)
    q, r = num.divmod_exact(den)
    assert not r, "cyclotomic division must be exact"
    return q


def sqrt2_transform(p: IntPoly) -> IntPoly:
    """2^deg(p) * p(x^2 / 2): roots become square roots scaled by sqrt(2).

    The result has integer coefficients because coefficient k of p picks up
    the factor 2^(deg - k) >= 1.
    """
    if not p:
        raise ValueError("transform of the zero polynomial is undefined")
    d = p.degree
    out = [0] * (2 * d + 1)
    for k, c in enumerate(p.coeffs):
        out[2 * k] = c * (1 << (d - k))
    return IntPoly(out)


@lru_cache(maxsize=None)
def scaled_cyclotomic(d: int) -> IntPoly:
    """The sqrt(2)-rescaled cyclotomic of order d (degree 2*phi(d))."""
    return sqrt2_transform(cyclotomic(d))


def _euler_phi(d: int) -> int:
    out = d
    m = d
    p = 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


def _split_orbit_poly(d: int) -> IntPoly:
    """One Galois orbit factor of the rescaled cyclotomic, d = 4 * odd.

    The roots are sqrt(2) * zeta^k for zeta a primitive 2d-th root of unity;
    an automorphism zeta -> zeta^b fixes sqrt(2) iff b = +-1 (mod 8), and
    composing with zeta -> -zeta absorbs a sign flip of sqrt(2). The orbit
    of sqrt(2)*zeta is therefore indexed by
        {b : b = +-1 (mod 8)} union {b + d : b = +-3 (mod 8)}
    over b coprime to 2d. Coefficients are recovered from 60-digit floats
    and certified by exact multiplication in the caller.
    """
    import mpmath as mp

    M = 2 * d
    orbit = set()
    for b in range(1, M, 2):
        if igcd(b, M) != 1:
            continue
        if b % 8 in (1, 7):
            orbit.add(b % M)
        else:
            orbit.add((b + d) % M)
    with mp.workdps(60):
        roots = [mp.sqrt(2) * mp.expjpi(mp.mpf(2 * k) / M) for k in sorted(orbit)]
        poly = [mp.mpc(1)]
        for r in roots:
            poly = [mp.mpc(0)] + poly
            for i in range(len(poly) - 1):
                poly[i] -= r * poly[i + 1]
        coeffs = []
        for c in poly:
            if abs(c.imag) > 1e-20:
                raise SplitNotFound(f"non-real coefficient {c} for d={d}")
            coeffs.append(int(mp.nint(c.real)))
    return IntPoly(coeffs)


def scaled_cyclotomic_factors(d: int) -> list[IntPoly]:
    """Irreducible factors of the rescaled cyclotomic of order d.

    Irreducible except when the exact power of 2 dividing d is 4, where it
    splits as P(x) * P(-x). The split candidate is certified by exact
    multiplication; failure raises SplitNotFound (a bug, not a math case).
    """
    theta = scaled_cyclotomic(d)
    if not (d % 4 == 0 and (d // 4) % 2 == 1):
        return [theta]
    p = _split_orbit_poly(d)
    q = p.compose_negate()
    if p * q != theta:
        raise SplitNotFound(f"certification failed for d={d}")
    return sorted([p, q], key=lambda f: f.coeffs)


# ---------------------------------------------------------------------------
# characteristic-value multisets and power sums
# ---------------------------------------------------------------------------

class CharValueSet:
    """Multiset of algebraic integers as (monic irreducible, multiplicity) pairs."""

    __slots__ = ("factors",)

    def __init__(self, factors):
        merged: dict[IntPoly, int] = {}
        for poly, mult in factors:
            if mult < 0:
                raise ValueError("multiplicity must be nonnegative")
            if mult:
                merged[poly] = merged.get(poly, 0) + mult
        items = sorted(merged.items(), key=lambda fm: (fm[0].degree, fm[0].coeffs))
        object.__setattr__(self, "factors", tuple(items))

    def __setattr__(self, *a):
        raise AttributeError("CharValueSet is immutable")

    def __eq__(self, other):
        return isinstance(other, CharValueSet) and self.factors == other.factors

    def __hash__(self):
        return hash(("CharValueSet", self.factors))

    def __iter__(self):
        return iter(self.factors)

    @property
    def total_degree(self) -> int:
        return sum(p.degree * m for p, m in self.factors)

    def expanded(self) -> IntPoly:
        out = ONE
        for p, m in self.factors:
            out = out * p ** m
        return out

    def power_sums(self, n_max: int) -> list[int]:
        """[p_1, ..., p_n_max], exact, via Newton's identities per factor."""
        total = [0] * n_max
        for poly, mult in self.factors:
            ps = newton_power_sums_poly(poly, n_max)
            for i in range(n_max):
                total[i] += mult * ps[i]
        return total

    def power_sum(self, n: int) -> int:
        return self.power_sums(n)[n - 1]

    def multiplicity(self, poly: IntPoly) -> int:
        for p, m in self.factors:
            if p == poly:
                return m
        return 0

    def radical(self) -> "CharValueSet":
        return CharValueSet((p, 1) for p, _ in self.factors)

    def to_json(self):
        return [{"poly": p.to_json(), "mult": m} for p, m in self.factors]

    @classmethod
    def from_json(cls, data):
        return cls((IntPoly.from_json(e["poly"]), e["mult"]) for e in data)

    def format(self, var: str = "x") -> str:
        if not self.factors:
            return "1"
        parts = []
        for p, m in self.factors:
            base = f"({p.format(var)})"
            parts.append(base if m == 1 else f"{base}^{m}")
        return "".join(parts)

    __str__ = format

    def __repr__(self):
        return f"CharValueSet({list(self.factors)!r})"


class PowerSumSeq:
    """Power sums n -> p_n of a root multiset, exact integers."""

    __slots__ = ("values",)

    def __init__(self, values: dict[int, int]):
        object.__setattr__(self, "values", dict(values))

    def __setattr__(self, *a):
        raise AttributeError("PowerSumSeq is immutable")

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __eq__(self, other):
        return isinstance(other, PowerSumSeq) and self.values == other.values

    def items(self):
        return sorted(self.values.items())

    def __repr__(self):
        return f"PowerSumSeq({self.values!r})"


def newton_power_sums_poly(poly: IntPoly, n_max: int) -> list[int]:
    """Power sums of the roots of a monic integer polynomial, exact.

    Newton's recursion on the coefficients; all divisions cancel, no roots
    are extracted.
    """
    if not poly.is_monic():
        raise ValueError("polynomial must be monic")
    m = poly.degree
    # e_k = (-1)^k * coeff of x^(m-k)
    e = [(-1) ** k * poly.coeffs[m - k] for k in range(m + 1)]
    ps = []
    for n in range(1, n_max + 1):
        if n <= m:
            acc = 0
            for i in range(1, n):
                acc += (-1) ** (i - 1) * e[i] * ps[n - i - 1]
            acc += (-1) ** (n - 1) * n * e[n]
            ps.append(acc)
        else:
            acc = 0
            for i in range(1, m + 1):
                acc += (-1) ** (i - 1) * e[i] * ps[n - i - 1]
            ps.append(acc)
    return ps


def newton_power_sums(values: CharValueSet, n_max: int) -> PowerSumSeq:
    """Power sums p_1..p_n_max of a characteristic-value multiset."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    sums = values.power_sums(n_max)
    return PowerSumSeq({n: sums[n - 1] for n in range(1, n_max + 1)})


def poly_from_power_sums(ps, degree: int, require_integral: bool = True) -> IntPoly:
    """The unique monic polynomial of the given degree with power sums ps.

    Inverse Newton recursion in exact rationals. When ``require_integral``
    is set, a fractional elementary symmetric function raises NonIntegral:
    the sequence is then not the power-sum sequence of an algebraic-integer
    multiset of that degree.
    """
    if len(ps) < degree:
        raise ValueError("need at least `degree` power sums")
    e = [Fraction(1)]
    for k in range(1, degree + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * ps[i - 1]
        e.append(acc / k)
    coeffs = [(-1) ** k * e[k] for k in range(degree + 1)]
    coeffs.reverse()
    if require_integral:
        return IntPoly_from_fractions(coeffs)
    if all(Fraction(c).denominator == 1 for c in coeffs):
        return IntPoly_from_fractions(coeffs)
    return list(coeffs)


def power_poly_factors(t: int) -> CharValueSet:
    """Full irreducible factorization of x^(2t) - 2^t.

    The polynomial is the sqrt(2) rescaling of x^t - 1, so its factors are
    the rescaled-cyclotomic factors over the divisors of t, each once.
    """
    if t < 1:
        raise ValueError("t must be positive")
    factors = []
    for d in range(1, t + 1):
        if t % d == 0:
            for f in scaled_cyclotomic_factors(d):
                factors.append((f, 1))
    return CharValueSet(factors)


def mobius(n: int) -> int:
    """Moebius function by trial factorization."""
    if n < 1:
        raise ValueError("n must be positive")
    k = 0
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            k += 1
        p += 1
    if m > 1:
        k += 1
    return (-1) ** k


# ---------------------------------------------------------------------------
# minimal linear recurrences
# ---------------------------------------------------------------------------

def berlekamp_massey(seq):
    """Minimal-degree monic recurrence polynomial for the supplied window.

    Returns the polynomial x^r - a_{r-1} x^{r-1} - ... - a_0 such that
    s[k+r] = sum a_i s[k+i] holds across the whole window. Exact rational
    arithmetic; for integer sequences the minimal polynomial has integer
    coefficients and an IntPoly is returned (a Fraction list otherwise).
    """
    s = [Fraction(x) for x in seq]
    conn = [Fraction(1)]      # connection polynomial C(D)
    prev = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(s)):
        d = s[n]
        for i in range(1, L + 1):
            d += conn[i] * s[n - i]
        if d == 0:
            m += 1
            continue
        coef = d / b
        if 2 * L <= n:
            saved = conn[:]
            conn = conn + [Fraction(0)] * (len(prev) + m - len(conn))
            for i, pv in enumerate(prev):
                conn[i + m] -= coef * pv
            L, prev, b, m = n + 1 - L, saved, d, 1
        else:
            conn = conn + [Fraction(0)] * (len(prev) + m - len(conn))
            for i, pv in enumerate(prev):
                conn[i + m] -= coef * pv
            m += 1
    # connection poly 1 + c_1 D + ... -> char poly x^L + c_1 x^(L-1) + ...
    coeffs = [Fraction(0)] * (L + 1)
    coeffs[L] = Fraction(1)
    for i in range(1, L + 1):
        coeffs[L - i] = conn[i] if i < len(conn) else Fraction(0)
    try:
        return IntPoly_from_fractions(coeffs)
    except NonIntegral:
        return coeffs


def recurrence_annihilates(poly: IntPoly, seq) -> bool:
    """Does the monic recurrence polynomial annihilate the whole sequence?"""
    r = poly.degree
    cs = poly.coeffs
    for n in range(r, len(seq)):
        if sum(cs[i] * seq[n - r + i] for i in range(r + 1)) != 0:
            return False
    return True


def extend_by_recurrence(poly: IntPoly, seed, count: int) -> list:
    """Extend a sequence by its monic recurrence; returns seed + count terms."""
    r = poly.degree
    if len(seed) < r:
        raise ValueError("seed shorter than the recurrence order")
    out = list(seed)
    for _ in range(count):
        nxt = -sum(poly.coeffs[i] * out[len(out) - r + i] for i in range(r))
        out.append(nxt)
    return out


# ---------------------------------------------------------------------------
# exact characteristic polynomials and factorization over the inventory
# ---------------------------------------------------------------------------

def charpoly_exact(matrix) -> IntPoly:
    """det(xI - M) for an integer matrix, exact.

    Similarity reduction to Hessenberg form over the rationals followed by
    the three-term determinant recurrence; every division is exact in
    Fraction arithmetic and integrality of the result is asserted.
    """
    n = len(matrix)
    H = [[Fraction(matrix[i][j]) for j in range(n)] for i in range(n)]
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if H[i][j]:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for r in range(n):
                H[r][piv], H[r][j + 1] = H[r][j + 1], H[r][piv]
        p = H[j + 1][j]
        for i in range(j + 2, n):
            if not H[i][j]:
                continue
            f = H[i][j] / p
            row_i, row_p = H[i], H[j + 1]
            for c in range(n):
                row_i[c] -= f * row_p[c]
            for r in range(n):
                H[r][j + 1] += f * H[r][i]
    polys = [[Fraction(1)]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        pk = [Fraction(0)] * (k + 1)
        hkk = H[k - 1][k - 1]
        for c, v in enumerate(prev):
            pk[c + 1] += v
            pk[c] -= hkk * v
        prod = Fraction(1)
        for i in range(1, k):
            prod *= H[k - i][k - i - 1]
            if not prod:
                break
            coef = H[k - 1 - i][k - 1] * prod
            if coef:
                for c, v in enumerate(polys[k - 1 - i]):
                    pk[c] -= coef * v
        polys.append(pk)
    return IntPoly_from_fractions(polys[n])


def strip_zero_roots(poly: IntPoly) -> tuple[IntPoly, int]:
    """Remove the x^k factor; returns (reduced poly, k)."""
    k = 0
    cs = poly.coeffs
    while k <= poly.degree and cs[k] == 0:
        k += 1
    return IntPoly(cs[k:]), k


def factor_into_char_values(poly: IntPoly) -> CharValueSet:
    """Factor a monic integer polynomial with no zero roots into irreducibles.

    Trial division by (x - 2) and the rescaled-cyclotomic inventory first --
    the transfer-matrix spectra encountered in practice factor completely
    there -- with an exact general-purpose factorization as fallback for
    anything left over. The factorization is certified by exact
    re-multiplication.
    """
    if not poly.is_monic():
        raise ValueError("expected a monic polynomial")
    if poly.coeffs[0] == 0:
        raise ValueError("strip zero roots first")
    remaining = poly
    found = []
    inventory = [IntPoly([-2, 1]), IntPoly([-1, 1]), IntPoly([1, 1]), IntPoly([2, 1])]
    d = 1
    while _euler_phi(d) <= poly.degree or d <= 2:
        inventory.extend(scaled_cyclotomic_factors(d))
        d += 1
        if d > 4 * poly.degree * poly.degree + 8:
            break
    for f in inventory:
        while f.degree <= remaining.degree and f.divides(remaining):
            q, _ = remaining.divmod_exact(f)
            found.append((f, 1))
            remaining = q
            if remaining.degree == 0:
                break
        if remaining.degree == 0:
            break
    if remaining.degree > 0:
        for f, m in _factor_fallback(remaining):
            found.append((f, m))
    out = CharValueSet(found)
    if out.expanded() != poly:
        raise AssertionError("factorization failed exact re-multiplication")
    return out


def _factor_fallback(poly: IntPoly):
    import sympy

    x = sympy.symbols("x")
    expr = sympy.Poly(list(reversed(poly.coeffs)), x)
    content, factors = expr.factor_list()
    if content != 1:
        raise AssertionError("monic polynomial with nontrivial content")
    out = []
    for fac, mult in factors:
        coeffs = [int(c) for c in reversed(fac.all_coeffs())]
        out.append((IntPoly(coeffs), int(mult)))
    return out
