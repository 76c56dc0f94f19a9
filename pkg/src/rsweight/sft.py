"""Finite-type shift realization of a tuple-collection family.

The pair sequences (x, y) satisfying P(x)_i = y_i + y_{i+1} for all i form
a shift of finite type over the four-letter alphabet GF(2) x GF(2). A
letter packs as x + 2y; a word of length k packs base-4, letter j in bit
pair 2j. The local rule checks one window of length max_offset + 1, and
the shift is presented on de Bruijn blocks of length L - 1, where closed
walks of length n in the block graph biject with n-periodic sequences for
every n >= 1.

Periodic-point counts are traces of powers of the 0/1 transfer matrix,
kept in exact integers throughout: int64 while entries provably fit
(growth per step is bounded by the max row weight), arbitrary-precision
Python integers beyond that. The characteristic polynomial is computed by
exact rational elimination, never numerically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from .families import TupleCollection
from .intpoly import (CharValueSet, IntPoly, charpoly_exact,
                      factor_into_char_values, strip_zero_roots)


@dataclass(frozen=True)
class LocalRule:
    """Window length and the allowed-window predicate, tabulated."""

    collection: TupleCollection
    window: int                 # L
    allowed: frozenset          # packed L-words

    def is_allowed(self, word: int) -> bool:
        return word in self.allowed


def _word_letters(word: int, length: int):
    return [(word >> (2 * k)) & 3 for k in range(length)]


def build_local_rule(collection: TupleCollection) -> LocalRule:
    """Tabulate the allowed windows: sum of x-products + y_0 + y_1 = 0.

    The window covers x positions 0..max_offset and y positions 0..1, so
    L = max_offset + 1 (>= 2 since every tuple has a positive offset).
    """
    collection.require_nonempty()
    L = collection.max_offset + 1
    allowed = []
    for word in range(4 ** L):
        letters = _word_letters(word, L)
        xs = [c & 1 for c in letters]
        ys = [(c >> 1) & 1 for c in letters]
        val = 0
        for tup in collection.tuples:
            m = 1
            for a in tup:
                m &= xs[a]
            val ^= m
        if val ^ ys[0] ^ ys[1] == 0:
            allowed.append(word)
    return LocalRule(collection, L, frozenset(allowed))


class TransferSystem:
    """de Bruijn block presentation with its integer transfer matrix."""

    def __init__(self, rule: LocalRule, vertices, edges, full_vertex_count: int):
        self.rule = rule
        self.vertices = tuple(vertices)          # packed (L-1)-words, sorted
        self.edges = tuple(edges)                # (src_index, dst_index)
        self.full_vertex_count = full_vertex_count
        self._index = {w: i for i, w in enumerate(self.vertices)}
        n = len(self.vertices)
        if n:
            rows = np.fromiter((e[0] for e in edges), dtype=np.int64, count=len(edges))
            cols = np.fromiter((e[1] for e in edges), dtype=np.int64, count=len(edges))
            data = np.ones(len(edges), dtype=np.int64)
            self.matrix = sp.csr_array((data, (rows, cols)), shape=(n, n))
        else:
            self.matrix = sp.csr_array((0, 0), dtype=np.int64)
        self._trace_cache: list[int] = []

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def adjacency_dense(self) -> list[list[int]]:
        n = len(self.vertices)
        A = [[0] * n for _ in range(n)]
        for u, v in self.edges:
            A[u][v] = 1
        return A

    def max_row_weight(self) -> int:
        if not self.edges:
            return 0
        counts = {}
        for u, _ in self.edges:
            counts[u] = counts.get(u, 0) + 1
        return max(counts.values())

    # -- periodic points -----------------------------------------------------

    def periodic_counts(self, n_max: int) -> list[int]:
        """[tr A^1, ..., tr A^n_max], exact."""
        if self.vertex_count == 0:
            return [0] * n_max
        while len(self._trace_cache) < n_max:
            self._extend_traces(n_max)
        return self._trace_cache[:n_max]

    def _extend_traces(self, n_max: int) -> None:
        n = self.vertex_count
        rw = max(self.max_row_weight(), 1)
        traces = []
        # int64 stretch: one step multiplies the max entry by at most rw;
        # the trace itself is summed in Python ints, so only the matmul
        # entries need to stay below the int64 bound
        B = np.eye(n, dtype=np.int64)
        k = 0
        while k < n_max and int(B.max(initial=0)) * rw < (1 << 62):
            B = self.matrix @ B
            k += 1
            traces.append(int(B.diagonal().astype(object).sum()))
        if k < n_max:
            adj = [[] for _ in range(n)]
            for u, v in self.edges:
                adj[u].append(v)
            Bo = [[int(B[i, j]) for j in range(n)] for i in range(n)]
            while k < n_max:
                Bn = [[0] * n for _ in range(n)]
                for i in range(n):
                    row = Bn[i]
                    for t in adj[i]:
                        brow = Bo[t]
                        for j in range(n):
                            row[j] += brow[j]
                Bo = Bn
                k += 1
                traces.append(sum(Bo[i][i] for i in range(n)))
        self._trace_cache = traces

    def periodic_count(self, n: int) -> int:
        return self.periodic_counts(n)[n - 1]

    # -- zeta data -----------------------------------------------------------

    def char_poly(self) -> IntPoly:
        return charpoly_exact(self.adjacency_dense())

    def zeta_denominator(self) -> IntPoly:
        """det(1 - sA) as a polynomial in s: the reversed nonzero part of
        the characteristic polynomial. Constant term is always 1."""
        if self.vertex_count == 0:
            return IntPoly([1])
        reduced, _ = strip_zero_roots(self.char_poly())
        return IntPoly(reduced.reversed_coeffs())

    def char_values(self) -> CharValueSet:
        """Nonzero spectrum as (irreducible, multiplicity) pairs."""
        if self.vertex_count == 0:
            return CharValueSet([])
        reduced, _ = strip_zero_roots(self.char_poly())
        if reduced.degree == 0:
            return CharValueSet([])
        return factor_into_char_values(reduced)

    # -- serialization ---------------------------------------------------------

    def vertex_label(self, index: int) -> str:
        letters = _word_letters(self.vertices[index], self.rule.window - 1)
        return ".".join(f"{c & 1}{(c >> 1) & 1}" for c in letters)

    def graph_json(self) -> str:
        doc = {
            "window": self.rule.window,
            "vertices": [self.vertex_label(i) for i in range(self.vertex_count)],
            "edges": [[int(u), int(v)] for u, v in self.edges],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def build_transfer_system(rule: LocalRule, trim: bool = True) -> TransferSystem:
    """Vertices are (L-1)-blocks, edges the allowed L-words; optionally trim.

    Trimming iteratively deletes vertices with no incoming or no outgoing
    edge. No closed walk passes through such a vertex, so every periodic
    count is unchanged; the characteristic polynomial only loses powers of
    x, which the spectrum accessors strip anyway.
    """
    L = rule.window
    nv = 4 ** (L - 1)
    mask = nv - 1
    word_edges = [(w & mask, w >> 2) for w in sorted(rule.allowed)]
    alive = set(range(nv))
    if trim:
        while True:
            outs = {u for u, v in word_edges if u in alive and v in alive}
            ins = {v for u, v in word_edges if u in alive and v in alive}
            keep = outs & ins
            if keep == alive:
                break
            alive = keep
    vertices = sorted(alive)
    index = {w: i for i, w in enumerate(vertices)}
    edges = [(index[u], index[v]) for u, v in word_edges
             if u in alive and v in alive]
    return TransferSystem(rule, vertices, edges, nv)


def transfer_system_for(collection: TupleCollection, trim: bool = True) -> TransferSystem:
    return build_transfer_system(build_local_rule(collection), trim=trim)


def sft_weight(system: TransferSystem, n: int) -> int:
    """wt(f_n) from the periodic-point identity 2^(n+1) - 2 wt = tr A^n."""
    t = system.periodic_count(n)
    num = (1 << (n + 1)) - t
    if num < 0 or num % 2:
        raise AssertionError(f"periodic count {t} inconsistent at n={n}")
    return num // 2


def sft_weights(system: TransferSystem, n_max: int) -> list[int]:
    counts = system.periodic_counts(n_max)
    out = []
    for n in range(1, n_max + 1):
        num = (1 << (n + 1)) - counts[n - 1]
        if num < 0 or num % 2:
            raise AssertionError(f"periodic count {counts[n-1]} inconsistent at n={n}")
        out.append(num // 2)
    return out


# ---------------------------------------------------------------------------
# zeta-function series identity, in exact rationals
# ---------------------------------------------------------------------------

def zeta_series_from_counts(counts, order: int) -> list[Fraction]:
    """Coefficients of exp(sum N_n s^n / n) through s^order.

    Standard series-exponential recurrence: with S = sum (N_n / n) s^n,
    E = exp(S) satisfies k e_k = sum_{j=1..k} N_j e_{k-j}.
    """
    e = [Fraction(1)]
    for k in range(1, order + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += Fraction(counts[j - 1]) * e[k - j]
        e.append(acc / k)
    return e


def series_inverse(poly: IntPoly, order: int) -> list[Fraction]:
    """Power-series inverse of a polynomial with constant term 1."""
    if poly[0] != 1:
        raise ValueError("series inverse requires constant term 1")
    inv = [Fraction(1)]
    for k in range(1, order + 1):
        acc = Fraction(0)
        for j in range(1, min(k, poly.degree) + 1):
            acc += Fraction(poly[j]) * inv[k - j]
        inv.append(-acc)
    return inv
