from __future__ import annotations

from dataclasses import dataclass, field
import logging
import math
from typing import Sequence

import numpy as np
from scipy.linalg import hadamard

from .alphabet import PhaseAlphabet, common_alphabet
from .code import Code, CodeSet, PhaseVector, hconcat
from .errors import ConstructionError, DimensionError, FamilyError
from .families import MosFamily, PermutationFamily, ZoneSpec
from .verify import verify_ccc, verify_mos, verify_permutation_family

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class MultMatrixParams:
    m: int
    s: int = 1
    x: int = 0

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ConstructionError(f"multiplication matrix needs M >= 2, got M={self.m}")
        g = math.gcd(self.m, self.s)
        if g != 1:
            # with tau2 = M/g the row sums of the PACF collapse to M each
            raise ConstructionError(
                f"gcd(M={self.m}, s={self.s}) = {g} != 1: the array is not perfect, "
                f"PACF at shift class (0, {self.m // g}) equals {self.m * self.m}"
            )


@dataclass(frozen=True, slots=True)
class SzccsBundle:
    """P code sets of M codes each, M x PN, with symmetric zone Z = N - 1."""

    sets: tuple[CodeSet, ...]
    zone: ZoneSpec
    provenance: dict[str, object] = field(default_factory=dict)

    @property
    def set_count(self) -> int:
        return len(self.sets)

    @property
    def codes(self) -> CodeSet:
        return CodeSet.of((code for code_set in self.sets for code in code_set), role="szccs")

    def parameters(self) -> tuple[int, int, int, int]:
        union = self.codes
        return union.size, union.rows, union.cols, self.zone.z


def multiplication_matrix(params: MultMatrixParams) -> Code:
    """M x M perfect array with entry phase x + s*i*j (0-based i, j) over q = M."""
    m = params.m
    i = np.arange(m).reshape(-1, 1)
    j = np.arange(m).reshape(1, -1)
    return Code.from_phases(params.x + params.s * i * j, m)


def cyclic_row_shift(code: Code, u: int) -> Code:
    """Row i of the result is row (i + u) mod M of ``code``."""
    if not 0 <= u < code.rows:
        raise DimensionError(f"row shift u={u} outside [0, {code.rows})")
    return Code(np.roll(code.phases, -u, axis=0), code.alphabet)


def mult_matrix_ccc(params: MultMatrixParams) -> CodeSet:
    base = multiplication_matrix(params)
    return CodeSet.of((cyclic_row_shift(base, u) for u in range(params.m)), role="ccc")


def r_concat(codes: Sequence[Code], b: PhaseVector) -> Code:
    """[b_1 C_1 | b_2 C_2 | ... | b_P C_P], block signs applied as phase offsets."""
    if len(codes) != len(b):
        raise DimensionError(f"got {len(codes)} codes for a sign sequence of length {len(b)}")
    shapes = {code.shape for code in codes}
    if len(shapes) != 1:
        raise DimensionError(f"concatenated codes must share one shape, got {sorted(shapes)}")
    alphabet = common_alphabet(b.alphabet, *(code.alphabet for code in codes))
    signs = b.rescaled(alphabet)
    blocks = [code.rescaled(alphabet).offset(int(phase)) for code, phase in zip(codes, signs.phases)]
    return hconcat(blocks)


def mos_dft(p: int) -> MosFamily:
    """Rows of the order-P character table, sequence j entry a = exp(2*pi*i*j*a/P)."""
    if p < 1:
        raise ConstructionError(f"MOS length must be >= 1, got {p}")
    j = np.arange(p).reshape(-1, 1)
    a = np.arange(p).reshape(1, -1)
    return MosFamily(np.mod(j * a, p), PhaseAlphabet(p))


def mos_hadamard(p: int) -> MosFamily:
    """Sylvester-type +/-1 rows of order P (P a power of two)."""
    if p < 1 or p & (p - 1):
        raise ConstructionError(f"Sylvester MOS needs P to be a power of 2, got {p}")
    signs = hadamard(p)
    return MosFamily((signs < 0).astype(np.int64), PhaseAlphabet(2))


def example1_mos() -> MosFamily:
    return MosFamily.from_signs(["--", "+-"])


def default_permutation_family(m: int, p: int) -> PermutationFamily:
    """Cyclic shifts pi_k(x) = (x + k) mod M for k < P.

    Column-disjoint because (i1 - i2) P = k2 - k1 (mod M) has no solution for
    0 < |k2 - k1| < P.
    """
    if p < 1 or m % p:
        raise FamilyError(f"P={p} does not divide M={m}")
    return PermutationFamily(tuple(tuple((x + k) % m for x in range(m)) for k in range(p)), p)


def example1_permutations() -> PermutationFamily:
    return PermutationFamily.from_one_based([(1, 2, 3, 4), (2, 1, 4, 3)], 2)


def szccs_parameters(m: int, n: int, p: int) -> dict[str, int]:
    """Claimed parameters of the bundle built from an (M, N)-CCC and P."""
    z = n - 1
    return {"K": p * m, "M": m, "N": p * n, "Z": z, "bound": (m * p * n) // (z + 1)}


def _check_seed(seed: CodeSet) -> None:
    verdict = verify_ccc(seed)
    if not verdict.passed:
        raise ConstructionError(
            f"seed is not an ({seed.rows},{seed.cols})-CCC: {verdict.summary()}",
            verdict=verdict,
        )


def _check_mos(mos: MosFamily, p: int) -> None:
    if mos.size != p:
        raise FamilyError(f"MOS family has {mos.size} sequences, expected P={p}")
    verdict = verify_mos(mos)
    if not verdict.passed:
        first = verdict.violations[0]
        raise FamilyError(
            f"MOS sequences {first.indices} are not orthogonal (|inner product| = {first.magnitude:.3g})",
            offending=first.indices,
            verdict=verdict,
        )


def _extend(seed: CodeSet, p: int, mos: MosFamily, perm: Sequence[int]) -> CodeSet:
    s = seed.size // p
    codes = []
    for i in range(s):
        picked = [seed[perm[i * p + a]] for a in range(p)]
        for j in range(p):
            codes.append(r_concat(picked, mos.row(j)))
    return CodeSet.of(codes, role="ccc")


def extend_ccc(seed: CodeSet, p: int, mos: MosFamily, perm: Sequence[int]) -> CodeSet:
    """(M, N)-CCC -> (M, NP)-CCC; code iP+j concatenates seeds perm[iP..iP+P-1] signed by mos row j.

    ``perm`` is a 0-based permutation of range(M).
    """
    m = seed.size
    if not 1 < p <= m or m % p:
        raise ConstructionError(f"P={p} must divide M={m} with 1 < P <= M")
    if sorted(perm) != list(range(m)):
        raise FamilyError(f"{tuple(perm)} is not a permutation of range({m})")
    _check_seed(seed)
    _check_mos(mos, p)
    logger.debug("extending (%d,%d)-CCC with P=%d, perm=%s", seed.rows, seed.cols, p, tuple(perm))
    return _extend(seed, p, mos, perm)


def build_mccc_szccs(seed: CodeSet, p: int, mos: MosFamily, perms: PermutationFamily) -> SzccsBundle:
    """P extended CCCs, one per permutation; together an optimal symmetrical (PM, M, PN, N-1)-ZCCS."""
    m, n = seed.size, seed.cols
    if p == 1:
        _check_seed(seed)
        return SzccsBundle(
            sets=(seed,),
            zone=ZoneSpec(n - 1, n),
            provenance={"construction": "szccs", "P": 1},
        )
    if len(perms) != p or perms.block_width != p or perms.m != m:
        raise FamilyError(
            f"need {p} permutations of range({m}) with block width {p}, "
            f"got {len(perms)} of range({perms.m}) with block width {perms.block_width}"
        )
    family_verdict = verify_permutation_family(perms)
    if not family_verdict.passed:
        offending = family_verdict.violations[0].indices
        raise FamilyError(
            "permutations are not column-disjoint at (k1, k2, i1, i2, j) = %s" % (offending,),
            offending=offending,
            verdict=family_verdict,
        )
    if not 1 < p <= m or m % p:
        raise ConstructionError(f"P={p} must divide M={m} with 1 < P <= M")
    _check_seed(seed)
    _check_mos(mos, p)

    sets = tuple(_extend(seed, p, mos, perm) for perm in perms.perms)
    logger.info("built %d sets of %d codes, each %dx%d", len(sets), m, m, p * n)
    return SzccsBundle(
        sets=sets,
        zone=ZoneSpec(n - 1, p * n),
        provenance={
            "construction": "szccs",
            "P": p,
            "perms": perms.one_based(),
            "mos_family": {"root_order": mos.alphabet.q, "phases": mos.phases.tolist()},
        },
    )
