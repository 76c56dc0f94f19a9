"""Function families from offset tuple collections, and their weight oracles.

A family is described by a finite set of strictly increasing offset tuples
(0, a_1, ..., a_{d-1}); see :class:`TupleCollection`. The same data defines
a Boolean function on n-bit cyclic inputs for every n (the cyclic context)
and a trace function on GF(2^n) for every n (the trace context).

Input vectors are packed into ints, bit i = x_i. For lengths at or below
the largest offset the defining sum is read literally with indices reduced
mod n: repeated factors collapse (x^2 = x over GF(2)) and repeated
monomials cancel. This is the reading under which the periodic-point
identities hold at every n >= 1, and the small-n checks in the test suite
pin it down.

The cyclic-context weight oracle is the O(n 2^n) baseline that the
recurrence machinery is measured against. It evaluates all monomials on
the full truth table at once, bit-sliced through Python big integers
(equivalent to 64-rows-per-word packing, but the interpreter handles the
word loop), with optional chunking for bounded memory and for the
order-independence checks.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceeded, EmptyCollection
from .field import BinaryField

DEFAULT_RS_CAP = 28
DEFAULT_TRACE_CAP = 24


class TupleCollection:
    """Finite set of ascending offset tuples (0, a_1, ..., a_{d-1})."""

    __slots__ = ("tuples",)

    def __init__(self, tuples):
        seen = []
        for tup in tuples:
            tup = tuple(int(a) for a in tup)
            if len(tup) < 2:
                raise ValueError(f"tuple {tup} has fewer than two entries")
            if tup[0] != 0:
                raise ValueError(f"tuple {tup} must start with 0")
            if any(tup[i] >= tup[i + 1] for i in range(len(tup) - 1)):
                raise ValueError(f"tuple {tup} must be strictly increasing")
            if tup in seen:
                raise ValueError(f"duplicate tuple {tup}")
            seen.append(tup)
        seen.sort()
        object.__setattr__(self, "tuples", tuple(seen))

    def __setattr__(self, *a):
        raise AttributeError("TupleCollection is immutable")

    def __eq__(self, other):
        return isinstance(other, TupleCollection) and self.tuples == other.tuples

    def __hash__(self):
        return hash(("TupleCollection", self.tuples))

    def __bool__(self):
        return bool(self.tuples)

    def __iter__(self):
        return iter(self.tuples)

    @property
    def max_offset(self) -> int:
        if not self.tuples:
            return 0
        return max(t[-1] for t in self.tuples)

    @property
    def is_quadratic(self) -> bool:
        return bool(self.tuples) and all(len(t) == 2 for t in self.tuples)

    @property
    def quadratic_offsets(self) -> tuple[int, ...]:
        return tuple(t[1] for t in self.tuples if len(t) == 2)

    def field_exponents(self) -> tuple[int, ...]:
        """Trace-context exponents 1 + 2^a_1 + ... + 2^a_{d-1}, one per tuple."""
        return tuple(1 + sum(1 << a for a in t[1:]) for t in self.tuples)

    def require_nonempty(self):
        if not self.tuples:
            raise EmptyCollection("operation requires at least one tuple")

    @classmethod
    def parse(cls, text: str) -> "TupleCollection":
        """Parse 'a,b,...;c,d,...' with a mandatory leading 0 per tuple."""
        tups = []
        for part in text.split(";"):
            part = part.strip()
            if not part:
                continue
            tups.append(tuple(int(v) for v in part.split(",")))
        return cls(tups)

    def format(self) -> str:
        return ";".join(",".join(str(a) for a in t) for t in self.tuples)

    __str__ = format

    def __repr__(self):
        return f"TupleCollection({self.format()!r})"

    def label(self) -> str:
        return self.format().replace(";", "_").replace(",", "")


@dataclass
class WeightSequence:
    """Map n -> wt(f_n) with per-entry provenance (oracle|sft|formula|recurrence)."""

    collection: TupleCollection
    context: str                      # "rs" | "trace"
    entries: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def set(self, n: int, weight: int, source: str):
        if not 0 <= weight <= (1 << n):
            raise ValueError(f"weight {weight} out of range at n={n}")
        self.entries[n] = weight
        self.provenance[n] = source

    def __getitem__(self, n: int) -> int:
        return self.entries[n]

    def __contains__(self, n: int) -> bool:
        return n in self.entries

    def ns(self):
        return sorted(self.entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "weight", "provenance"])
        for n in self.ns():
            w.writerow([n, self.entries[n], self.provenance[n]])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [{"n": n, "weight": str(self.entries[n]),
                 "provenance": self.provenance[n]} for n in self.ns()]
        doc = {"collection": self.collection.format(),
               "context": self.context, "weights": rows}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# cyclic (rotation-invariant) context
# ---------------------------------------------------------------------------

def _rotr(x: int, a: int, n: int) -> int:
    """Bit i of the result is bit (i+a) mod n of x."""
    a %= n
    mask = (1 << n) - 1
    return ((x >> a) | (x << (n - a))) & mask if a else x & mask


def monomial_map_bits(collection: TupleCollection, n: int, x: int) -> int:
    """The length-n product vector: bit i = sum over tuples of
    x_i x_{i+a_1} ... x_{i+a_{d-1}} (indices mod n)."""
    acc = 0
    for tup in collection.tuples:
        term = x & ((1 << n) - 1)
        for a in tup[1:]:
            term &= _rotr(x, a, n)
        acc ^= term
    return acc


def rs_eval(collection: TupleCollection, n: int, x) -> int:
    """Value of the cyclic-context function at one input.

    ``x`` is an int bit-vector (bit i = x_i) or an iterable of bits.
    """
    if not isinstance(x, int):
        bits = 0
        for i, b in enumerate(x):
            if b & 1:
                bits |= 1 << i
        x = bits
    return monomial_map_bits(collection, n, x).bit_count() & 1


def _variable_mask(j: int, n: int) -> int:
    """Truth-table mask of variable j: bit v is set iff bit j of v is set."""
    if n <= 3:
        return sum(1 << v for v in range(1 << n) if (v >> j) & 1)
    nbytes = 1 << (n - 3)
    if j == 0:
        pat = b"\xaa"
    elif j == 1:
        pat = b"\xcc"
    elif j == 2:
        pat = b"\xf0"
    else:
        pat = b"\x00" * (1 << (j - 3)) + b"\xff" * (1 << (j - 3))
    return int.from_bytes(pat * (nbytes // len(pat)), "little")


class _MaskCache:
    """Keep at most `limit` variable masks alive (they are 2^n bits each)."""

    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        self.store = {}

    def get(self, j: int) -> int:
        m = self.store.get(j)
        if m is None:
            m = _variable_mask(j, self.n)
            if len(self.store) >= self.limit:
                self.store.pop(next(iter(self.store)))
            self.store[j] = m
        return m


def _truth_table(collection: TupleCollection, n: int) -> int:
    """Truth table of f_n as a 2^n-bit integer (bit v = f(v))."""
    cache_limit = 1 << 30 if n <= 24 else (collection.max_offset + 2)
    masks = _MaskCache(n, cache_limit)
    acc = 0
    for tup in collection.tuples:
        for i in range(n):
            idx = sorted({(i + a) % n for a in tup})
            term = masks.get(idx[0])
            for j in idx[1:]:
                term &= masks.get(j)
            acc ^= term
    return acc


def rs_weight_oracle(collection: TupleCollection, n: int,
                     cap: int | None = None, chunk_bits: int | None = None) -> int:
    """|{x in GF(2)^n : f_n(x) = 1}| by full bit-sliced truth-table evaluation.

    ``chunk_bits`` splits the 2^n table into 2^chunk_bits-slices that are
    evaluated independently and summed; the result is identical for every
    chunking (exact popcount sums commute), which the tests exercise.
    """
    cap = DEFAULT_RS_CAP if cap is None else cap
    if n > cap:
        raise CapExceeded(f"n={n} exceeds cyclic-context cap {cap}")
    if n < 1:
        raise ValueError("n must be positive")
    if not collection.tuples:
        return 0
    if chunk_bits is None or chunk_bits >= n:
        return _truth_table(collection, n).bit_count()
    # chunked: variable j < chunk_bits has the periodic in-chunk mask;
    # variable j >= chunk_bits is constant per chunk (bit j-chunk_bits of
    # the chunk index).
    k = chunk_bits
    inner_masks = [_variable_mask(j, k) for j in range(k)]
    full = (1 << (1 << k)) - 1
    total = 0
    for chunk in range(1 << (n - k)):
        acc = 0
        for tup in collection.tuples:
            for i in range(n):
                idx = sorted({(i + a) % n for a in tup})
                term = full
                for j in idx:
                    if j < k:
                        term &= inner_masks[j]
                    elif not (chunk >> (j - k)) & 1:
                        term = 0
                        break
                acc ^= term
        total += acc.bit_count()
    return total


def walsh_at_zero(collection: TupleCollection, n: int, weight: int | None = None,
                  context: str = "rs", cap: int | None = None) -> int:
    """W_f(0) = 2^n - 2 wt(f_n) = sum over x of (-1)^f(x)."""
    if weight is None:
        if context == "rs":
            weight = rs_weight_oracle(collection, n, cap=cap)
        else:
            weight = trace_weight_oracle(collection, n, cap=cap)
    return (1 << n) - 2 * weight


# ---------------------------------------------------------------------------
# trace context and curve counts
# ---------------------------------------------------------------------------

_FIELD_CACHE: dict[int, BinaryField] = {}


def field_for(n: int) -> BinaryField:
    f = _FIELD_CACHE.get(n)
    if f is None:
        f = _FIELD_CACHE[n] = BinaryField(n)
    return f


def seed_field_cache(moduli: dict) -> None:
    """Adopt cached moduli (degree -> Gf2Poly). Irreducibility is re-checked
    by the BinaryField constructor path, so a corrupt cache fails loudly."""
    from .gf2 import rabin_irreducible

    for n, modulus in moduli.items():
        if modulus.degree != n or not rabin_irreducible(modulus):
            raise ValueError(f"cached modulus for degree {n} is not irreducible")
        _FIELD_CACHE[n] = BinaryField(n, modulus)


def snapshot_moduli() -> dict:
    """Moduli of every field context built so far (for cache writeback)."""
    return {n: f.modulus for n, f in sorted(_FIELD_CACHE.items())}


def _antilog_array(fieldctx: BinaryField) -> tuple[np.ndarray, int]:
    antilog, order = fieldctx.log_tables()
    return np.array(antilog, dtype=np.int64), order


def _trace_bit_array(fieldctx: BinaryField, values: np.ndarray) -> np.ndarray:
    mask = fieldctx._trace_mask
    return (np.bitwise_count(values & mask) & 1).astype(np.int64)


def trace_weight_oracle(collection: TupleCollection, n: int,
                        cap: int | None = None) -> int:
    """|{x in GF(2^n) : Tr(P(x)) = 1}| by full field enumeration.

    Enumeration runs over powers of a multiplicative generator, so each
    monomial value is a table lookup at index k*e mod (2^n - 1); the trace
    is a masked-parity lookup. x = 0 contributes Tr(0) = 0.
    """
    cap = DEFAULT_TRACE_CAP if cap is None else cap
    if n > cap:
        raise CapExceeded(f"n={n} exceeds trace-context cap {cap}")
    if n < 1:
        raise ValueError("n must be positive")
    if not collection.tuples:
        return 0
    fieldctx = field_for(n)
    exps = collection.field_exponents()
    antilog, order = _antilog_array(fieldctx)
    ks = np.arange(order, dtype=np.int64)
    fbits = np.zeros(order, dtype=np.int64)
    tr = _trace_bit_array(fieldctx, antilog)
    for e in exps:
        fbits ^= tr[(ks * (e % order)) % order]
    return int(fbits.sum())


def curve_point_count(collection: TupleCollection, n: int,
                      cap: int | None = None) -> int:
    """|{(x, y) in GF(2^n)^2 : P(x) = y + y^2}| exactly.

    Counted as a genuine two-variable solution count: one pass over y
    tabulates the fibers of y -> y + y^2, one pass over x accumulates the
    fiber sizes at P(x). No trace computation is involved, which keeps the
    identity against the trace-side weight a two-route check.
    """
    cap = DEFAULT_TRACE_CAP if cap is None else cap
    if n > cap:
        raise CapExceeded(f"n={n} exceeds trace-context cap {cap}")
    collection.require_nonempty()
    fieldctx = field_for(n)
    exps = collection.field_exponents()
    antilog, order = _antilog_array(fieldctx)
    size = 1 << n
    ks = np.arange(order, dtype=np.int64)
    ysq_plus_y = antilog[(2 * ks) % order] ^ antilog
    fiber = np.bincount(ysq_plus_y, minlength=size)
    fiber[0] += 1  # y = 0 maps to 0
    pvals = np.zeros(order, dtype=np.int64)
    for e in exps:
        pvals ^= antilog[(ks * (e % order)) % order]
    total = int(fiber[pvals].sum())
    total += int(fiber[0])  # x = 0 has P(0) = 0
    return total


def rs_pair_count(collection: TupleCollection, n: int,
                  cap: int | None = None) -> int:
    """|{(x, y) in (GF(2)^n)^2 : P(x) = y + sigma(y)}| exactly.

    Same two-pass fiber count as the curve version, with sigma the cyclic
    rotation in place of the Frobenius.
    """
    cap = DEFAULT_RS_CAP if cap is None else cap
    if n > cap:
        raise CapExceeded(f"n={n} exceeds cyclic-context cap {cap}")
    if n > 26:
        raise CapExceeded("pair counting is quadratic-memory; n > 26 unsupported")
    size = 1 << n
    ys = np.arange(size, dtype=np.int64)
    rot = ((ys >> 1) | (ys << (n - 1))) & (size - 1) if n > 1 else ys
    fiber = np.bincount(ys ^ rot, minlength=size)
    mask = size - 1
    xs = np.arange(size, dtype=np.int64)
    pvals = np.zeros(size, dtype=np.int64)
    for tup in collection.tuples:
        term = xs.copy()
        for a in tup[1:]:
            a %= n
            rotx = ((xs >> a) | (xs << (n - a))) & mask if a else xs
            term &= rotx
        pvals ^= term
    return int(fiber[pvals].sum())


def trace_eval(collection: TupleCollection, n: int, xbits: int) -> int:
    """Tr(P(x)) for a single element, by square-and-multiply; test-side oracle."""
    fieldctx = field_for(n)
    acc = 0
    for e in collection.field_exponents():
        acc ^= fieldctx.pow_bits(xbits, e)
    return fieldctx.trace_bits(acc)
