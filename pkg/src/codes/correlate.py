"""Periodic 2D and aperiodic 1D correlation of codes.

Every value is a sum of unit-magnitude products c * conj(d). Since entries are
stored as exact phases, each product is the root of unity of the phase
difference, so a correlation reduces to a histogram of phase differences mod q
dotted with the q roots. For q in {1, 2, 4} that dot product is carried out in
integers and the result is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .alphabet import common_alphabet
from .code import Code, PhaseVector
from .errors import DimensionError

ZERO_TOLERANCE = 1e-9
EXACT_ROOT_ORDERS = frozenset({1, 2, 4})


def is_zero(value: complex, m: int, n: int, *, tolerance: float = ZERO_TOLERANCE) -> bool:
    return abs(value) <= tolerance * m * n


def sum_of_roots(differences: np.ndarray, q: int) -> complex:
    """Sum of exp(2*pi*i*d/q) over the given phase differences."""
    counts = np.bincount(np.mod(differences, q).ravel(), minlength=q)
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    if q in EXACT_ROOT_ORDERS:
        # every root is one of 1, i, -1, -i
        real = np.rint(roots.real).astype(np.int64)
        imag = np.rint(roots.imag).astype(np.int64)
        return complex(int(counts @ real), int(counts @ imag))
    return complex(counts @ roots)


def _common(a: Code, b: Code) -> tuple[np.ndarray, np.ndarray, int]:
    alphabet = common_alphabet(a.alphabet, b.alphabet)
    return a.rescaled(alphabet).phases, b.rescaled(alphabet).phases, alphabet.q


@dataclass(frozen=True, slots=True, eq=False)
class PacfGrid:
    """2D periodic autocorrelation, values[t1, t2] for t1 mod M, t2 mod N."""

    values: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return int(self.values.shape[0]), int(self.values.shape[1])

    def at(self, tau1: int, tau2: int) -> complex:
        m, n = self.shape
        return complex(self.values[tau1 % m, tau2 % n])

    def items(self) -> Iterator[tuple[tuple[int, int], complex]]:
        m, n = self.shape
        for t1 in range(m):
            for t2 in range(n):
                yield (t1, t2), complex(self.values[t1, t2])

    def off_peak(self) -> Iterator[tuple[tuple[int, int], complex]]:
        return ((shift, value) for shift, value in self.items() if shift != (0, 0))


@dataclass(frozen=True, slots=True, eq=False)
class AccfVector:
    """Aperiodic correlation for every shift tau in (-N, N)."""

    values: np.ndarray
    n: int

    def __getitem__(self, tau: int) -> complex:
        if not -self.n < tau < self.n:
            raise DimensionError(f"shift {tau} outside (-{self.n}, {self.n})")
        return complex(self.values[tau + self.n - 1])

    @property
    def shifts(self) -> range:
        return range(-(self.n - 1), self.n)

    def items(self) -> Iterator[tuple[int, complex]]:
        for tau in self.shifts:
            yield tau, self[tau]


def pacf2d(code: Code) -> PacfGrid:
    phases, q = code.phases, code.q
    m, n = code.shape
    values = np.empty((m, n), dtype=np.complex128)
    for t1 in range(m):
        for t2 in range(n):
            # entry (i, j) of the roll is c[i + t1, j + t2]
            shifted = np.roll(phases, (-t1, -t2), axis=(0, 1))
            values[t1, t2] = sum_of_roots(phases - shifted, q)
    values.setflags(write=False)
    return PacfGrid(values)


def accf(a: Code, b: Code, tau: int) -> complex:
    if a.shape != b.shape:
        raise DimensionError(f"cannot correlate {a.rows}x{a.cols} with {b.rows}x{b.cols}")
    n = a.cols
    if abs(tau) >= n:
        raise DimensionError(f"shift {tau} outside (-{n}, {n})")
    pa, pb, q = _common(a, b)
    if tau >= 0:
        differences = pa[:, : n - tau] - pb[:, tau:]
    else:
        lag = -tau
        differences = pa[:, lag:] - pb[:, : n - lag]
    return sum_of_roots(differences, q)


def accf_vector(a: Code, b: Code) -> AccfVector:
    n = a.cols
    values = np.array([accf(a, b, tau) for tau in range(-(n - 1), n)], dtype=np.complex128)
    values.setflags(write=False)
    return AccfVector(values, n)


def aacf(a: Code) -> AccfVector:
    return accf_vector(a, a)


def accf_decomposition(
    codes_a: Sequence[Code],
    codes_b: Sequence[Code],
    b1: PhaseVector,
    b2: PhaseVector,
    tau: int,
) -> complex:
    """ACCF of two concatenated codes at tau = uN + v, assembled from block ACCFs.

    Block a of the left code meets block a+u of the right code at shift v and
    block a+u+1 at shift v-N; only block indices inside [0, P) contribute.
    """
    p = len(codes_a)
    n = codes_a[0].cols
    u, v = divmod(tau, n)
    w1, w2 = b1.values(), b2.values()
    total = 0j
    for alpha in range(p):
        beta = alpha + u
        if 0 <= beta < p:
            total += w1[alpha] * np.conj(w2[beta]) * accf(codes_a[alpha], codes_b[beta], v)
        if v and 0 <= beta + 1 < p:
            total += w1[alpha] * np.conj(w2[beta + 1]) * accf(codes_a[alpha], codes_b[beta + 1], v - n)
    return complex(total)


def accf_decomposition_check(
    codes_a: Sequence[Code],
    codes_b: Sequence[Code],
    b1: PhaseVector,
    b2: PhaseVector,
    *,
    tolerance: float = ZERO_TOLERANCE,
) -> bool:
    """Compare the direct ACCF of R(codes_a; b1), R(codes_b; b2) with the block sum at every shift."""
    from .construct import r_concat

    p = len(codes_a)
    if not p or len(codes_b) != p or len(b1) != p or len(b2) != p:
        raise DimensionError(
            f"decomposition needs P codes and length-P sequences on both sides, "
            f"got {len(codes_a)}, {len(codes_b)}, {len(b1)}, {len(b2)}"
        )
    shapes = {code.shape for code in (*codes_a, *codes_b)}
    if len(shapes) != 1:
        raise DimensionError(f"all codes must share one shape, got {sorted(shapes)}")
    m, n = codes_a[0].shape

    left_code = r_concat(codes_a, b1)
    right_code = r_concat(codes_b, b2)
    for u in range(-p, p):
        for v in range(n):
            tau = u * n + v
            if abs(tau) >= p * n:
                continue
            direct = accf(left_code, right_code, tau)
            assembled = accf_decomposition(codes_a, codes_b, b1, b2, tau)
            if not is_zero(direct - assembled, m, p * n, tolerance=tolerance):
                return False
    return True
