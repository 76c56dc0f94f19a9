"""Arithmetic in GF(2)[x] and GF(2)[x^{±1}].

Polynomials over GF(2) are bit-packed into Python integers: bit i of the
integer is the coefficient of x^i, so the zero polynomial is 0 and x^3+x+1
is 0b1011. Addition is XOR and all arithmetic is carry-free. The public
surface wraps the packed integers in the immutable :class:`Gf2Poly`; the
module-level ``_``-prefixed helpers operate on raw integers and are what the
enumeration-heavy callers use.

Laurent polynomials (negative exponents allowed) are a pair (body, shift)
with the body normalized to have a nonzero constant term, see
:class:`Gf2Laurent`. A Laurent polynomial divides x^n - 1 exactly when its
body divides x^n + 1 in GF(2)[x], since the units of the Laurent ring are
the powers of x.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import NonQuadratic, ZeroA

NEG_INF = float("-inf")


def _deg(a: int):
    return a.bit_length() - 1 if a else NEG_INF


def _mul(a: int, b: int) -> int:
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def _divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length() - 1
    q = 0
    while a.bit_length() - 1 >= db:
        shift = a.bit_length() - 1 - db
        a ^= b << shift
        q ^= 1 << shift
    return q, a


def _mod(a: int, b: int) -> int:
    return _divmod(a, b)[1]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


def _mulmod(a: int, b: int, m: int) -> int:
    return _mod(_mul(a, b), m)


def _powmod(a: int, e: int, m: int) -> int:
    r = 1
    a = _mod(a, m)
    while e:
        if e & 1:
            r = _mulmod(r, a, m)
        a = _mulmod(a, a, m)
        e >>= 1
    return r


def _x_pow_2k_mod(m: int, k: int) -> int:
    """x^(2^k) mod m by k repeated squarings."""
    r = _mod(2, m)  # the polynomial x
    for _ in range(k):
        r = _mulmod(r, r, m)
    return r


class Gf2Poly:
    """Immutable polynomial over GF(2), bit-packed."""

    __slots__ = ("bits",)

    def __init__(self, bits: int = 0):
        if bits < 0:
            raise ValueError("coefficient bits must be nonnegative")
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, *a):
        raise AttributeError("Gf2Poly is immutable")

    @property
    def degree(self):
        """Degree, with -inf for the zero polynomial."""
        return _deg(self.bits)

    def __bool__(self):
        return self.bits != 0

    def __eq__(self, other):
        return isinstance(other, Gf2Poly) and self.bits == other.bits

    def __hash__(self):
        return hash(("Gf2Poly", self.bits))

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_mul(self.bits, other.bits))

    def __divmod__(self, other: "Gf2Poly"):
        q, r = _divmod(self.bits, other.bits)
        return Gf2Poly(q), Gf2Poly(r)

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_mod(self.bits, other.bits))

    def __floordiv__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_divmod(self.bits, other.bits)[0])

    def divides(self, other: "Gf2Poly") -> bool:
        return _mod(other.bits, self.bits) == 0

    def __repr__(self):
        return f"Gf2Poly({bin(self.bits)})"

    def __str__(self):
        if not self.bits:
            return "0"
        terms = []
        for i in reversed(range(self.bits.bit_length())):
            if (self.bits >> i) & 1:
                terms.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
        return " + ".join(terms)

    @classmethod
    def from_coeffs(cls, coeffs) -> "Gf2Poly":
        """Build from an iterable of GF(2) coefficients, constant term first."""
        bits = 0
        for i, c in enumerate(coeffs):
            if c & 1:
                bits |= 1 << i
        return cls(bits)

    @classmethod
    def x_pow(cls, k: int) -> "Gf2Poly":
        return cls(1 << k)


X = Gf2Poly(2)
ONE = Gf2Poly(1)


class Gf2Laurent:
    """Laurent polynomial x^shift * body with body(0) != 0 (or body = 0)."""

    __slots__ = ("body", "shift")

    def __init__(self, body: Gf2Poly, shift: int = 0):
        bits = body.bits
        if bits:
            while not bits & 1:
                bits >>= 1
                shift += 1
        else:
            shift = 0
        object.__setattr__(self, "body", Gf2Poly(bits))
        object.__setattr__(self, "shift", shift)

    def __setattr__(self, *a):
        raise AttributeError("Gf2Laurent is immutable")

    def __bool__(self):
        return bool(self.body)

    def __eq__(self, other):
        return (isinstance(other, Gf2Laurent)
                and self.body == other.body and self.shift == other.shift)

    def __repr__(self):
        return f"Gf2Laurent({self.body!r}, shift={self.shift})"


def gf2_gcd(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    """Greatest common divisor; gcd(p, 0) = p and gcd(0, 0) = 0.

    Over GF(2) every nonzero polynomial is monic, so no normalization step
    is needed.
    """
    return Gf2Poly(_gcd(a.bits, b.bits))


def _quadratic_offsets(collection) -> list[int]:
    offs = []
    for tup in collection.tuples:
        if len(tup) != 2:
            raise NonQuadratic(f"tuple {tup} has degree {len(tup)}, need 2")
        offs.append(tup[1])
    return offs


def folded_offset_poly(collection, n: int) -> Gf2Poly:
    """Sum of x^t + x^(n-t) over the quadratic offsets t, exponents mod n.

    Terms cancel in pairs (XOR), so the result can be zero; its degree is
    always below n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    bits = 0
    for t in _quadratic_offsets(collection):
        bits ^= 1 << (t % n)
        bits ^= 1 << ((n - t) % n)
    return Gf2Poly(bits)


def plateau_param(collection, n: int) -> int:
    """deg gcd(x^n - 1, folded offset poly) -- the plateau parameter v(n).

    When the folded polynomial vanishes identically the gcd degenerates to
    x^n - 1 itself and we return n. That convention is flagged in reports:
    it keeps the weight/plateau consistency checks meaningful at the
    degenerate lengths.
    """
    an = folded_offset_poly(collection, n)
    if not an:
        return n
    return int(_deg(_gcd((1 << n) | 1, an.bits)))


def offset_laurent(collection) -> Gf2Laurent:
    """The Laurent polynomial sum of x^t + x^(-t) over quadratic offsets."""
    offs = _quadratic_offsets(collection)
    m = max(offs)
    bits = 0
    for t in offs:
        bits ^= 1 << (m + t)
        bits ^= 1 << (m - t)
    return Gf2Laurent(Gf2Poly(bits), -m)


def plateau_period(collection) -> int:
    """Least n >= 1 such that the offset Laurent polynomial divides x^n - 1.

    Divisibility in the Laurent ring reduces to body | x^n + 1 in GF(2)[x].
    Found by linear scan with one exact division per n; the body degree is
    at most twice the largest offset, so the scan is short at desk scale.
    """
    lau = offset_laurent(collection)
    if not lau:
        raise ZeroA("offset Laurent polynomial is zero; no period exists")
    body = lau.body.bits
    n = 1
    while True:
        if _mod((1 << n) | 1, body) == 0:
            return n
        n += 1
        if n > 1 << (body.bit_length() + 2):
            # deg body bounds the 2-part and odd part of any period; if we
            # get here something is structurally wrong.
            raise ZeroA("no period found within the structural bound")


def rabin_irreducible(p: Gf2Poly) -> bool:
    """Rabin's irreducibility test for p over GF(2).

    p of degree n is irreducible iff x^(2^n) = x (mod p) and for every
    prime q | n, gcd(x^(2^(n/q)) - x, p) = 1.
    """
    n = p.degree
    if n is NEG_INF or n < 1:
        return False
    if n == 1:
        return True
    bits = p.bits
    if _x_pow_2k_mod(bits, n) != _mod(2, bits):
        return False
    for q in _prime_divisors(n):
        h = _x_pow_2k_mod(bits, n // q) ^ _mod(2, bits)
        if _gcd(h, bits) != 1:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def min_irreducible(n: int) -> Gf2Poly:
    """Least irreducible polynomial of degree n, ordered by coefficient bits.

    Polynomials are compared as the integers their coefficient bit-strings
    encode, which makes the choice deterministic and suitable as a cache
    key. Certified by Rabin's test.
    """
    if n < 1:
        raise ValueError("degree must be positive")
    for bits in range(1 << n, 1 << (n + 1)):
        if rabin_irreducible(Gf2Poly(bits)):
            return Gf2Poly(bits)
    raise AssertionError("unreachable: irreducibles of every degree exist")


def format_modulus_cache(entries: dict[int, Gf2Poly]) -> str:
    """Render the irreducible-modulus cache: one 'n:<hex bits>' line per degree."""
    lines = [f"{n}:{entries[n].bits:x}" for n in sorted(entries)]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_modulus_cache(text: str) -> dict[int, Gf2Poly]:
    entries = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        ns, _, hexbits = line.partition(":")
        entries[int(ns)] = Gf2Poly(int(hexbits, 16))
    return entries
