"""GF(2^n) arithmetic in a polynomial basis.

A field context fixes the extension degree n and an irreducible modulus
(the deterministic minimum-bit-string one unless a cached modulus is
supplied). Elements are coefficient bit-vectors packed into ints, wrapped
in :class:`FieldElement` for operator syntax and context checking; the
bulk enumeration code in :mod:`rsweight.families` talks to the ``*_bits``
methods directly.

The trace map is GF(2)-linear, so a context precomputes the trace of each
basis monomial once and evaluates Tr(x) as a masked parity.
"""

from __future__ import annotations

from .errors import CtxMismatch
from .gf2 import Gf2Poly, min_irreducible, _mod, _mulmod

__all__ = ["BinaryField", "FieldElement", "eval_monomial_sum"]


class BinaryField:
    """Context for GF(2^n) = GF(2)[x] / (modulus)."""

    def __init__(self, n: int, modulus: Gf2Poly | None = None):
        if n < 1:
            raise ValueError("extension degree must be positive")
        if modulus is None:
            modulus = min_irreducible(n)
        if modulus.degree != n:
            raise ValueError("modulus degree does not match extension degree")
        self.n = n
        self.modulus = modulus
        self._mod_bits = modulus.bits
        self._trace_mask = self._build_trace_mask()
        self._logs = None

    def _build_trace_mask(self) -> int:
        mask = 0
        for j in range(self.n):
            elem = _mod(1 << j, self._mod_bits)
            tr = 0
            cur = elem
            for _ in range(self.n):
                tr ^= cur
                cur = _mulmod(cur, cur, self._mod_bits)
            assert tr in (0, 1)
            if tr:
                mask |= 1 << j
        return mask

    # -- raw bit-vector arithmetic ------------------------------------------

    def mul_bits(self, a: int, b: int) -> int:
        return _mulmod(a, b, self._mod_bits)

    def square_bits(self, a: int) -> int:
        return _mulmod(a, a, self._mod_bits)

    def pow_bits(self, a: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponents unsupported")
        r = 1
        a = _mod(a, self._mod_bits)
        while e:
            if e & 1:
                r = _mulmod(r, a, self._mod_bits)
            a = _mulmod(a, a, self._mod_bits)
            e >>= 1
        return r

    def trace_bits(self, a: int) -> int:
        return (a & self._trace_mask).bit_count() & 1

    # -- element interface ---------------------------------------------------

    def elem(self, bits: int) -> "FieldElement":
        if not 0 <= bits < (1 << self.n):
            raise ValueError("element bits out of range for this field")
        return FieldElement(self, bits)

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    @property
    def generator_x(self):
        """The class of x (a generator of the field as a ring, not always
        of the multiplicative group)."""
        return FieldElement(self, _mod(2, self._mod_bits))

    def elements(self):
        """All field elements in lexicographic bit order."""
        for bits in range(1 << self.n):
            yield FieldElement(self, bits)

    def _check(self, x: "FieldElement") -> int:
        if x.field is not self:
            raise CtxMismatch("element belongs to a different field context")
        return x.bits

    def add(self, x, y):
        return FieldElement(self, self._check(x) ^ self._check(y))

    def mul(self, x, y):
        return FieldElement(self, self.mul_bits(self._check(x), self._check(y)))

    def square(self, x):
        return FieldElement(self, self.square_bits(self._check(x)))

    def pow(self, x, e: int):
        return FieldElement(self, self.pow_bits(self._check(x), e))

    frobenius = square

    def trace(self, x) -> int:
        """Tr(x) = x + x^2 + ... + x^(2^(n-1)) as a GF(2) bit."""
        return self.trace_bits(self._check(x))

    # -- discrete-log tables (for bulk enumeration) --------------------------

    def log_tables(self):
        """(antilog, order): antilog[k] = g^k for a multiplicative generator g.

        Built once and cached on the context. Used by the vectorized weight
        and point-count oracles; a generator is found by order testing.
        """
        if self._logs is None:
            order = (1 << self.n) - 1
            g = self._find_generator(order)
            antilog = [0] * order
            cur = 1
            for k in range(order):
                antilog[k] = cur
                cur = self.mul_bits(cur, g)
            self._logs = (antilog, order)
        return self._logs

    def _find_generator(self, order: int) -> int:
        if order <= 1:
            return 1
        factors = []
        m = order
        p = 2
        while p * p <= m:
            if m % p == 0:
                factors.append(p)
                while m % p == 0:
                    m //= p
            p += 1
        if m > 1:
            factors.append(m)
        for bits in range(2, 1 << self.n):
            if all(self.pow_bits(bits, order // q) != 1 for q in factors):
                return bits
        raise AssertionError("no generator found (field not a field?)")

    def __repr__(self):
        return f"BinaryField(2^{self.n}, modulus={self.modulus})"


class FieldElement:
    """Element of a BinaryField: packed coefficient bits plus its context."""

    __slots__ = ("field", "bits")

    def __init__(self, field: BinaryField, bits: int):
        self.field = field
        self.bits = bits

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.bits == other.bits
        if other in (0, 1):
            return self.bits == other
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.bits))

    def __add__(self, other):
        return self.field.add(self, other)

    __sub__ = __add__

    def __mul__(self, other):
        return self.field.mul(self, other)

    def __pow__(self, e: int):
        return self.field.pow(self, e)

    def square(self):
        return self.field.square(self)

    def trace(self) -> int:
        return self.field.trace(self)

    def __repr__(self):
        return f"<{self.bits:0{self.field.n}b} in GF(2^{self.field.n})>"


def eval_monomial_sum(field: BinaryField, collection, x: FieldElement) -> FieldElement:
    """Sum over the collection's tuples of x^(1 + 2^a_1 + ... + 2^a_{d-1}).

    Each monomial is evaluated by repeated Frobenius (squaring) and
    multiplication, so exponents never materialize beyond the tuple data.
    """
    bits = field._check(x)
    acc = 0
    for tup in collection.tuples:
        term = bits
        frob = bits
        steps = 0
        for a in tup[1:]:
            for _ in range(a - steps):
                frob = field.square_bits(frob)
            steps = a
            term = field.mul_bits(term, frob)
        acc ^= term
    return FieldElement(field, acc)
