from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .alphabet import PhaseAlphabet, common_alphabet
from .code import PhaseVector, integer_phases
from .errors import DimensionError, FamilyError


@dataclass(frozen=True, slots=True, eq=False)
class MosFamily:
    """P sequences of length P intended to be mutually orthogonal.

    The type only checks shape; orthogonality is certified by
    ``verify.verify_mos`` because user-supplied families may be wrong.
    """

    phases: np.ndarray
    alphabet: PhaseAlphabet

    def __post_init__(self) -> None:
        array = integer_phases(self.phases, ndim=2)
        if array.shape[0] != array.shape[1]:
            raise DimensionError(f"a MOS family is a P x P phase array, got shape {array.shape}")
        if array.min() < 0 or array.max() >= self.alphabet.q:
            raise DimensionError(f"MOS phases must lie in [0, {self.alphabet.q})")
        array.setflags(write=False)
        object.__setattr__(self, "phases", array)

    @classmethod
    def from_vectors(cls, vectors: Sequence[PhaseVector]) -> "MosFamily":
        if not vectors:
            raise DimensionError("a MOS family needs at least one sequence")
        alphabet = common_alphabet(*(v.alphabet for v in vectors))
        lengths = {v.length for v in vectors}
        if len(lengths) != 1:
            raise DimensionError(f"MOS sequences differ in length: {sorted(lengths)}")
        return cls(np.vstack([v.rescaled(alphabet).phases for v in vectors]), alphabet)

    @classmethod
    def from_signs(cls, rows: Sequence[str]) -> "MosFamily":
        return cls.from_vectors([PhaseVector.from_signs(row) for row in rows])

    @property
    def size(self) -> int:
        return int(self.phases.shape[0])

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MosFamily):
            return NotImplemented
        return self.alphabet == other.alphabet and np.array_equal(self.phases, other.phases)

    def __hash__(self) -> int:
        return hash((self.alphabet.q, self.phases.tobytes()))

    def row(self, j: int) -> PhaseVector:
        return PhaseVector(self.phases[j], self.alphabet)

    def rows(self) -> list[PhaseVector]:
        return [self.row(j) for j in range(self.size)]

    def gram(self) -> np.ndarray:
        """Matrix of inner products sum_a b^j1_a * conj(b^j2_a)."""
        values = self.alphabet.roots()[self.phases]
        return values @ values.conj().T


@dataclass(frozen=True, slots=True)
class PermutationFamily:
    """P permutations of range(M) (0-based) used to pick seed codes per set."""

    perms: tuple[tuple[int, ...], ...]
    block_width: int
    block_count: int = field(init=False)

    def __post_init__(self) -> None:
        perms = tuple(tuple(int(x) for x in perm) for perm in self.perms)
        if not perms:
            raise FamilyError("a permutation family needs at least one permutation")
        m = len(perms[0])
        for k, perm in enumerate(perms):
            if sorted(perm) != list(range(m)):
                raise FamilyError(f"permutation {k} is not a bijection on range({m}): {perm}", offending=(k,))
        if self.block_width < 1 or m % self.block_width:
            raise FamilyError(f"block width P={self.block_width} does not divide M={m}")
        object.__setattr__(self, "perms", perms)
        object.__setattr__(self, "block_count", m // self.block_width)

    @classmethod
    def from_one_based(cls, perms: Sequence[Sequence[int]], block_width: int) -> "PermutationFamily":
        return cls(tuple(tuple(x - 1 for x in perm) for perm in perms), block_width)

    @property
    def m(self) -> int:
        return len(self.perms[0])

    def __len__(self) -> int:
        return len(self.perms)

    def __getitem__(self, k: int) -> tuple[int, ...]:
        return self.perms[k]

    def one_based(self) -> list[list[int]]:
        return [[x + 1 for x in perm] for perm in self.perms]

    def column_collisions(self) -> Iterator[tuple[int, int, int, int, int]]:
        """Yield (k1, k2, i1, i2, j) with perms[k1][i1*P+j] == perms[k2][i2*P+j], k1 < k2."""
        p, s = self.block_width, self.block_count
        for k1, k2 in combinations(range(len(self.perms)), 2):
            first, second = self.perms[k1], self.perms[k2]
            for j in range(p):
                for i1 in range(s):
                    for i2 in range(s):
                        if first[i1 * p + j] == second[i2 * p + j]:
                            yield k1, k2, i1, i2, j


@dataclass(frozen=True, slots=True)
class ZoneSpec:
    """Front zone {1..Z} and tail zone {N-Z..N-1} of a symmetrical ZCCS."""

    z: int
    n: int

    def __post_init__(self) -> None:
        if not 0 <= self.z < self.n:
            raise DimensionError(f"zone width must satisfy 0 <= Z < N, got Z={self.z}, N={self.n}")

    @property
    def front(self) -> range:
        return range(1, self.z + 1)

    @property
    def tail(self) -> range:
        return range(self.n - self.z, self.n) if self.z else range(0)

    def shifts(self) -> list[int]:
        """Nonnegative |tau| values covered by either zone, ascending."""
        return sorted(set(self.front) | set(self.tail))

    def optimal_size(self, m: int) -> int:
        return (m * self.n) // (self.z + 1)
