"""Bit-packed GF(2) vectors, row reduction and linear codes.

A vector of length n is stored as a Python int whose bit ``i`` holds
coordinate ``i`` (0-based; coordinate 1 of the text formats is bit 0).
Python ints are arbitrary-length packed words, so ``&``, ``^`` and
``int.bit_count`` act on whole machine words at a time.  Codes with
``n <= 64`` additionally expose their codewords as a ``uint64`` array for
the compiled kernels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DimensionTooLarge, LengthMismatch

#: Largest dimension for which "for all codewords" loops are allowed.
DEFAULT_MAX_K = 28

_M1 = 0x5555555555555555
_M2 = 0x3333333333333333
_M4 = 0x0F0F0F0F0F0F0F0F
_H01 = 0x0101010101010101
_WORD = (1 << 64) - 1


def popcount(x: int) -> int:
    return x.bit_count()


def popcount_portable(x: int) -> int:
    """SWAR population count over 64-bit words; agrees with :func:`popcount`."""
    total = 0
    while x:
        w = x & _WORD
        w = w - ((w >> 1) & _M1)
        w = (w & _M2) + ((w >> 2) & _M2)
        w = (w + (w >> 4)) & _M4
        total += ((w * _H01) & _WORD) >> 56
        x >>= 64
    return total


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits outside length {self.length}")

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> BitVector:
        return cls(length, (1 << length) - 1)

    @classmethod
    def from_string(cls, s: str) -> BitVector:
        """Parse ``"1011"``; the leftmost character is coordinate 0."""
        bits = 0
        for i, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << i
            elif ch != "0":
                raise ValueError(f"invalid character {ch!r} at position {i}")
        return cls(len(s), bits)

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> BitVector:
        bits = 0
        for i in indices:
            if not 0 <= i < length:
                raise ValueError(f"index {i} out of range for length {length}")
            bits |= 1 << i
        return cls(length, bits)

    def indices(self) -> list[int]:
        out = []
        x = self.bits
        while x:
            low = x & -x
            out.append(low.bit_length() - 1)
            x ^= low
        return out

    def weight(self) -> int:
        return self.bits.bit_count()

    def _check(self, other: BitVector) -> None:
        if self.length != other.length:
            raise LengthMismatch(f"lengths differ: {self.length} vs {other.length}")

    def __xor__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.length, self.bits ^ other.bits)

    def __and__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.length, self.bits & other.bits)

    def __or__(self, other: BitVector) -> BitVector:
        self._check(other)
        return BitVector(self.length, self.bits | other.bits)

    def __invert__(self) -> BitVector:
        return BitVector(self.length, self.bits ^ ((1 << self.length) - 1))

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.length))

    def words(self) -> np.ndarray:
        """The vector as little-endian 64-bit words."""
        nwords = max(1, -(-self.length // 64))
        return np.array([(self.bits >> (64 * w)) & _WORD for w in range(nwords)], dtype=np.uint64)


def weight(v: BitVector) -> int:
    return v.weight()


def add(u: BitVector, v: BitVector) -> BitVector:
    return u ^ v


def project_weight(c: BitVector, S: BitVector) -> int:
    """wt(c_S): the number of coordinates of S on which c is 1."""
    c._check(S)
    return (c.bits & S.bits).bit_count()


@dataclass(frozen=True)
class Gf2Matrix:
    rows: tuple[BitVector, ...]
    ncols: int

    def __post_init__(self):
        for r in self.rows:
            if r.length != self.ncols:
                raise LengthMismatch(f"row of length {r.length} in matrix with {self.ncols} columns")

    @classmethod
    def from_strings(cls, rows: Sequence[str], ncols: int | None = None) -> Gf2Matrix:
        vecs = tuple(BitVector.from_string(r) for r in rows)
        if ncols is None:
            ncols = vecs[0].length if vecs else 0
        return cls(vecs, ncols)

    @classmethod
    def from_ints(cls, rows: Iterable[int], ncols: int) -> Gf2Matrix:
        return cls(tuple(BitVector(ncols, r) for r in rows), ncols)


def _rref_ints(rows: Iterable[int], ncols: int) -> tuple[list[int], list[int]]:
    work = [r for r in rows if r]
    basis: list[int] = []
    pivots: list[int] = []
    for col in range(ncols):
        bit = 1 << col
        hit = next((i for i, r in enumerate(work) if r & bit), None)
        if hit is None:
            continue
        row = work.pop(hit)
        work = [r ^ row if r & bit else r for r in work]
        basis = [b ^ row if b & bit else b for b in basis]
        basis.append(row)
        pivots.append(col)
        work = [r for r in work if r]
        if not work:
            break
    return basis, pivots


def row_reduce(m: Gf2Matrix) -> tuple[tuple[BitVector, ...], tuple[int, ...], int]:
    """Reduced row-echelon form; the pivot of each row is its lowest set column."""
    basis, pivots = _rref_ints((r.bits for r in m.rows), m.ncols)
    return tuple(BitVector(m.ncols, b) for b in basis), tuple(pivots), len(basis)


@dataclass(frozen=True)
class CosetLabel:
    """Canonical representative of ``v + C``: v reduced by the basis."""

    canonical: BitVector


def _check_dim(k: int, max_k: int) -> None:
    if k > max_k:
        raise DimensionTooLarge(k, max_k, "code dimension k")


@dataclass(frozen=True, eq=False)
class LinearCode:
    generators: Gf2Matrix
    basis: tuple[BitVector, ...] = field(init=False)
    pivots: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        basis, pivots, _ = row_reduce(self.generators)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)

    @property
    def n(self) -> int:
        return self.generators.ncols

    @property
    def k(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"LinearCode(n={self.n}, k={self.k})"

    @classmethod
    def from_strings(cls, rows: Sequence[str], n: int | None = None) -> LinearCode:
        return cls(Gf2Matrix.from_strings(rows, n))

    @classmethod
    def from_ints(cls, rows: Iterable[int], n: int) -> LinearCode:
        return cls(Gf2Matrix.from_ints(rows, n))

    @cached_property
    def _basis_bits(self) -> tuple[int, ...]:
        return tuple(b.bits for b in self.basis)

    def reduce(self, v: BitVector) -> int:
        if v.length != self.n:
            raise LengthMismatch(f"vector length {v.length} != code length {self.n}")
        x = v.bits
        for row, piv in zip(self._basis_bits, self.pivots):
            if (x >> piv) & 1:
                x ^= row
        return x

    def contains(self, v: BitVector) -> bool:
        return self.reduce(v) == 0

    def coset_label(self, v: BitVector) -> CosetLabel:
        return CosetLabel(BitVector(self.n, self.reduce(v)))

    def is_nondegenerate(self) -> bool:
        support = 0
        for b in self._basis_bits:
            support |= b
        return support == (1 << self.n) - 1

    def project(self, coords: Sequence[int]) -> LinearCode:
        """Restrict to ``coords`` (new coordinate i is old ``coords[i]``), then row-reduce."""
        rows = []
        for b in self._basis_bits:
            r = 0
            for i, c in enumerate(coords):
                if (b >> c) & 1:
                    r |= 1 << i
            rows.append(r)
        return LinearCode.from_ints(rows, len(coords))

    def codeword_bits(self, max_k: int = DEFAULT_MAX_K) -> list[int]:
        """All codewords as ints in reflected Gray order over the basis."""
        _check_dim(self.k, max_k)
        return list(self._gray_bits)

    @cached_property
    def _gray_bits(self) -> tuple[int, ...]:
        words = [0]
        for b in self._basis_bits:
            words.extend([w ^ b for w in reversed(words)])
        return tuple(words)

    def codeword_array(self, max_k: int = DEFAULT_MAX_K) -> tuple[np.ndarray, np.ndarray]:
        """(codewords, weights) as uint64 / int64 arrays in Gray order; needs n <= 64."""
        _check_dim(self.k, max_k)
        if self.n > 64:
            raise ValueError("codeword_array needs n <= 64")
        return self._gray_array

    @cached_property
    def _gray_array(self) -> tuple[np.ndarray, np.ndarray]:
        cw = np.zeros(1, dtype=np.uint64)
        for b in self._basis_bits:
            cw = np.concatenate([cw, cw[::-1] ^ np.uint64(b)])
        wts = np.array([popcount(int(c)) for c in cw], dtype=np.int64) if len(cw) < 4096 else _weights(cw)
        return cw, wts


def _weights(cw: np.ndarray) -> np.ndarray:
    from ._kernels import weights_u64

    return weights_u64(cw)


def enumerate_codewords(code: LinearCode, max_k: int = DEFAULT_MAX_K) -> Iterator[BitVector]:
    """Yield all 2^k codewords; successive ones differ by exactly one basis row."""
    _check_dim(code.k, max_k)
    basis = code._basis_bits
    n = code.n
    x = 0
    yield BitVector(n, x)
    for i in range(1, 1 << len(basis)):
        x ^= basis[(i & -i).bit_length() - 1]
        yield BitVector(n, x)


def contains(code: LinearCode, v: BitVector) -> bool:
    return code.contains(v)


def coset_label(code: LinearCode, v: BitVector) -> CosetLabel:
    return code.coset_label(v)


def is_nondegenerate(code: LinearCode) -> bool:
    return code.is_nondegenerate()


# Small named codes used throughout the tests and examples.

def zero_code(n: int) -> LinearCode:
    return LinearCode(Gf2Matrix((), n))


def repetition_code(n: int) -> LinearCode:
    return LinearCode.from_ints([(1 << n) - 1], n)


def full_code(n: int) -> LinearCode:
    return LinearCode.from_ints([1 << i for i in range(n)], n)


def even_weight_code(n: int) -> LinearCode:
    return LinearCode.from_ints([(1 << i) | (1 << (i + 1)) for i in range(n - 1)], n)


def hamming_7_4() -> LinearCode:
    return LinearCode.from_strings(["1000110", "0100101", "0010011", "0001111"])


def random_code(n: int, rows: int, rng: np.random.Generator) -> LinearCode:
    """Code spanned by ``rows`` uniform random vectors (its rank may be lower)."""
    gens = []
    for _ in range(rows):
        bits = rng.integers(0, 2, size=n)
        gens.append(sum(1 << i for i in range(n) if bits[i]))
    return LinearCode.from_ints(gens, n)
