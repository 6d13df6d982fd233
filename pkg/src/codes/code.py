from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .alphabet import PhaseAlphabet, common_alphabet
from .errors import AlphabetError, DimensionError

SIGN_PHASES = {"+": 0, "-": 1}
PHASE_SIGNS = {0: "+", 1: "-"}


def integer_phases(phases: object, *, ndim: int) -> np.ndarray:
    """Phases as an int64 array; ragged input and non-integer entries (floats, bools) are rejected."""
    try:
        array = np.asarray(phases)
    except ValueError as exc:
        raise DimensionError(f"phase array is ragged: {exc}") from exc
    if array.ndim != ndim:
        raise DimensionError(f"expected a {ndim}-D phase array, got shape {array.shape}")
    if array.size == 0:
        raise DimensionError("phase array must not be empty")
    if array.dtype.kind not in "iu":
        raise AlphabetError(f"phases must be integers, got dtype {array.dtype}")
    return array.astype(np.int64)


def _frozen_phases(phases: object, q: int, *, ndim: int) -> np.ndarray:
    array = integer_phases(phases, ndim=ndim)
    if array.min() < 0 or array.max() >= q:
        raise AlphabetError(f"phases must lie in [0, {q}), got range [{array.min()}, {array.max()}]")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, slots=True, eq=False)
class Code:
    """An M x N matrix of unit-magnitude entries stored as exact phases mod q."""

    phases: np.ndarray
    alphabet: PhaseAlphabet

    def __post_init__(self) -> None:
        object.__setattr__(self, "phases", _frozen_phases(self.phases, self.alphabet.q, ndim=2))

    @classmethod
    def from_phases(cls, phases: object, root_order: int) -> "Code":
        """Build a code from arbitrary integer phases, reducing them mod q."""
        array = np.mod(integer_phases(phases, ndim=2), root_order)
        return cls(array, PhaseAlphabet(root_order))

    @property
    def rows(self) -> int:
        return int(self.phases.shape[0])

    @property
    def cols(self) -> int:
        return int(self.phases.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def q(self) -> int:
        return self.alphabet.q

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Code):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.phases, other.phases)

    def __hash__(self) -> int:
        return hash((self.q, self.phases.shape, self.phases.tobytes()))

    def __repr__(self) -> str:
        return f"Code({self.rows}x{self.cols}, q={self.q}, phases={self.phases.tolist()})"

    def rescaled(self, alphabet: PhaseAlphabet) -> "Code":
        if alphabet.q == self.q:
            return self
        factor = self.alphabet.rescale_to(alphabet)
        return Code(self.phases * factor, alphabet)

    def offset(self, phase: int) -> "Code":
        """Multiply every entry by the alphabet element ``phase``."""
        return Code(np.mod(self.phases + phase, self.q), self.alphabet)

    def is_binary(self) -> bool:
        if self.q == 1:
            return True
        if self.q % 2:
            return False
        return bool(np.all(self.phases % (self.q // 2) == 0))

    def to_signs(self) -> list[str]:
        if not self.is_binary():
            raise AlphabetError(f"code over q={self.q} is not binary; use the JSON format")
        half = max(self.q // 2, 1)
        return ["".join(PHASE_SIGNS[int(p) // half] for p in row) for row in self.phases]


@dataclass(frozen=True, slots=True, eq=False)
class PhaseVector:
    """A length-P sequence of unit-magnitude entries (block signs of the concatenation)."""

    phases: np.ndarray
    alphabet: PhaseAlphabet

    def __post_init__(self) -> None:
        object.__setattr__(self, "phases", _frozen_phases(self.phases, self.alphabet.q, ndim=1))

    @classmethod
    def from_signs(cls, text: str) -> "PhaseVector":
        symbols = [c for c in text if not c.isspace() and c not in "(),"]
        try:
            phases = [SIGN_PHASES[c] for c in symbols]
        except KeyError as exc:
            raise AlphabetError(f"unexpected symbol {exc.args[0]!r} in sign sequence {text!r}") from None
        return cls(np.array(phases), PhaseAlphabet(2))

    @property
    def length(self) -> int:
        return int(self.phases.shape[0])

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhaseVector):
            return NotImplemented
        return self.alphabet == other.alphabet and np.array_equal(self.phases, other.phases)

    def __hash__(self) -> int:
        return hash((self.alphabet.q, self.phases.tobytes()))

    def rescaled(self, alphabet: PhaseAlphabet) -> "PhaseVector":
        if alphabet.q == self.alphabet.q:
            return self
        return PhaseVector(self.phases * self.alphabet.rescale_to(alphabet), alphabet)

    def values(self) -> np.ndarray:
        return self.alphabet.roots()[self.phases]


@dataclass(frozen=True, slots=True)
class CodeSet:
    """An ordered collection of codes with identical dimensions and alphabet.

    Members over different alphabets are lifted to the lcm alphabet.
    """

    codes: tuple[Code, ...]
    role: str = "code_set"
    alphabet: PhaseAlphabet = field(init=False)

    def __post_init__(self) -> None:
        codes = tuple(self.codes)
        if not codes:
            raise DimensionError("a code set needs at least one code")
        shapes = {code.shape for code in codes}
        if len(shapes) != 1:
            raise DimensionError(f"code set members differ in shape: {sorted(shapes)}")
        alphabet = common_alphabet(*(code.alphabet for code in codes))
        object.__setattr__(self, "codes", tuple(code.rescaled(alphabet) for code in codes))
        object.__setattr__(self, "alphabet", alphabet)

    @classmethod
    def of(cls, codes: Iterable[Code], *, role: str = "code_set") -> "CodeSet":
        return cls(tuple(codes), role=role)

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self) -> Iterator[Code]:
        return iter(self.codes)

    def __getitem__(self, index: int) -> Code:
        return self.codes[index]

    @property
    def size(self) -> int:
        return len(self.codes)

    @property
    def rows(self) -> int:
        return self.codes[0].rows

    @property
    def cols(self) -> int:
        return self.codes[0].cols


def code_from_signs(text: str | Sequence[str]) -> Code:
    """Parse a +/- grid into a binary code ('+' -> 1, '-' -> -1).

    ``text`` is either a sequence of row strings or one string whose rows are
    separated by newlines or '/'. Whitespace inside a row is ignored.
    """
    if isinstance(text, str):
        raw_rows = text.replace("/", "\n").splitlines()
    else:
        raw_rows = list(text)
    rows = ["".join(row.split()) for row in raw_rows]
    rows = [row for row in rows if row]
    if not rows:
        raise DimensionError("sign grid is empty")

    width = len(rows[0])
    phases: list[list[int]] = []
    for index, row in enumerate(rows):
        if len(row) != width:
            raise DimensionError(f"ragged sign grid: row {index} has {len(row)} symbols, expected {width}")
        try:
            phases.append([SIGN_PHASES[c] for c in row])
        except KeyError as exc:
            raise AlphabetError(f"unexpected symbol {exc.args[0]!r} in row {index}") from None
    return Code(np.array(phases), PhaseAlphabet(2))


def evaluate(code: Code) -> np.ndarray:
    """Complex M x N matrix of the code's entries."""
    return code.alphabet.roots()[code.phases]


def hconcat(codes: Sequence[Code]) -> Code:
    """Concatenate codes side by side over their common alphabet."""
    if not codes:
        raise DimensionError("nothing to concatenate")
    rows = {code.rows for code in codes}
    if len(rows) != 1:
        raise DimensionError(f"cannot concatenate codes with different row counts {sorted(rows)}")
    alphabet = common_alphabet(*(code.alphabet for code in codes))
    blocks = [code.rescaled(alphabet).phases for code in codes]
    return Code(np.hstack(blocks), alphabet)
