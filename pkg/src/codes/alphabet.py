from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .errors import AlphabetError


@dataclass(frozen=True, slots=True)
class PhaseAlphabet:
    """The q-th roots of unity; element k stands for exp(2*pi*i*k/q)."""

    root_order: int

    def __post_init__(self) -> None:
        if not isinstance(self.root_order, (int, np.integer)) or self.root_order < 1:
            raise AlphabetError(f"root_order must be a positive integer, got {self.root_order!r}")

    @property
    def q(self) -> int:
        return int(self.root_order)

    def roots(self) -> np.ndarray:
        k = np.arange(self.q)
        return np.exp(2j * np.pi * k / self.q)

    def value(self, phase: int) -> complex:
        return complex(self.roots()[int(phase) % self.q])

    def rescale_to(self, other: "PhaseAlphabet") -> int:
        """Factor mapping phases of this alphabet onto ``other``."""
        if other.q % self.q:
            raise AlphabetError(f"alphabet q={self.q} does not embed into q={other.q}")
        return other.q // self.q


def common_alphabet(*alphabets: PhaseAlphabet) -> PhaseAlphabet:
    q = 1
    for alphabet in alphabets:
        q = math.lcm(q, alphabet.q)
    return PhaseAlphabet(q)


def root_of_unity_sum(m: int, s: int) -> complex:
    """Sum of zeta**(s*i) for i = 1..m with zeta = exp(2*pi*i/m).

    Zero when m does not divide s, m otherwise.
    """
    if m < 2:
        raise AlphabetError(f"root_of_unity_sum needs m >= 2, got {m}")
    i = np.arange(1, m + 1)
    terms = np.exp(2j * np.pi * ((s * i) % m) / m)
    return complex(terms.sum())
