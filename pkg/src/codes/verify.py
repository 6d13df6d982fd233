"""Exhaustive certifiers for perfect arrays, GCS, CCC, symmetrical ZCCS and MCCC.

A certifier never stops at the first failure: the verdict lists every
violating (code indices, shift) with the offending value, so a report can be
replayed shift by shift with ``correlate.accf`` or ``correlate.pacf2d``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import StrEnum
from itertools import combinations
import logging
from typing import Iterable, Sequence

from .code import Code, CodeSet
from .correlate import ZERO_TOLERANCE, AccfVector, accf_vector, aacf, is_zero, pacf2d
from .errors import DimensionError
from .families import MosFamily, PermutationFamily, ZoneSpec

logger = logging.getLogger(__name__)

Shift = int | tuple[int, int] | None


class Property(StrEnum):
    PERFECT_ARRAY = "PerfectArray"
    GCS = "GCS"
    CCC = "CCC"
    SZCCS = "SZCCS"
    MCCC = "MCCC"
    MOS = "MOS"
    PERM_FAMILY = "PermFamily"


@dataclass(frozen=True, slots=True)
class Violation:
    indices: tuple[int, ...]
    shift: Shift
    value: complex
    magnitude: float
    note: str = ""

    def to_dict(self) -> dict[str, object]:
        item: dict[str, object] = {
            "indices": list(self.indices),
            "shift": list(self.shift) if isinstance(self.shift, tuple) else self.shift,
            "re": self.value.real,
            "im": self.value.imag,
            "abs": self.magnitude,
        }
        if self.note:
            item["note"] = self.note
        return item


@dataclass(frozen=True, slots=True)
class Verdict:
    property: Property
    violations: tuple[Violation, ...] = ()
    measured: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        status = "passed" if self.passed else f"failed with {len(self.violations)} violation(s)"
        if self.violations:
            first = self.violations[0]
            status += f", first at indices {first.indices} shift {first.shift} (|value| = {first.magnitude:.6g})"
        return f"{self.property}: {status}"

    def to_dict(self) -> dict[str, object]:
        return {
            "property": str(self.property),
            "passed": self.passed,
            "parameters": dict(self.measured),
            "violations": [v.to_dict() for v in self.violations],
        }


def _sweep(
    pairs: Sequence[tuple[int, int]],
    codes: Sequence[Code],
    workers: int,
) -> dict[tuple[int, int], AccfVector]:
    def correlate_pair(pair: tuple[int, int]) -> AccfVector:
        k1, k2 = pair
        return accf_vector(codes[k1], codes[k2])

    if workers > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            vectors = list(pool.map(correlate_pair, pairs))
    else:
        vectors = [correlate_pair(pair) for pair in pairs]
    return dict(zip(pairs, vectors))


def _flock_violation(k: int, m: int) -> Violation:
    gap = abs(k - m)
    return Violation((), None, complex(gap), float(gap), note=f"set size K={k} differs from flock size M={m}")


def _auto_violations(k: int, vector: AccfVector, m: int, n: int, shifts: Iterable[int], tolerance: float) -> list[Violation]:
    found = []
    for tau in shifts:
        value = vector[tau]
        expected = m * n if tau == 0 else 0
        if not is_zero(value - expected, m, n, tolerance=tolerance):
            found.append(Violation((k, k), tau, value, abs(value - expected)))
    return found


def _cross_violations(
    pair: tuple[int, int],
    vector: AccfVector,
    m: int,
    n: int,
    shifts: Iterable[int],
    tolerance: float,
) -> list[Violation]:
    found = []
    for tau in shifts:
        value = vector[tau]
        if not is_zero(value, m, n, tolerance=tolerance):
            found.append(Violation(pair, tau, value, abs(value)))
    return found


def verify_perfect_array(code: Code, *, tolerance: float = ZERO_TOLERANCE) -> Verdict:
    m, n = code.shape
    grid = pacf2d(code)
    violations = []
    peak = grid.at(0, 0)
    if not is_zero(peak - m * n, m, n, tolerance=tolerance):
        violations.append(Violation((0,), (0, 0), peak, abs(peak - m * n)))
    for shift, value in grid.off_peak():
        if not is_zero(value, m, n, tolerance=tolerance):
            violations.append(Violation((0,), shift, value, abs(value)))
    return Verdict(Property.PERFECT_ARRAY, tuple(violations), {"M": m, "N": n, "q": code.q})


def verify_gcs(code: Code, *, tolerance: float = ZERO_TOLERANCE) -> Verdict:
    m, n = code.shape
    violations = _auto_violations(0, aacf(code), m, n, range(-(n - 1), n), tolerance)
    return Verdict(Property.GCS, tuple(violations), {"M": m, "N": n})


def are_complementary_mates(a: Code, b: Code, *, tolerance: float = ZERO_TOLERANCE) -> bool:
    m, n = a.shape
    vector = accf_vector(a, b)
    return all(is_zero(value, m, n, tolerance=tolerance) for _, value in vector.items())


def verify_ccc(code_set: CodeSet, *, tolerance: float = ZERO_TOLERANCE, workers: int = 1) -> Verdict:
    k, m, n = code_set.size, code_set.rows, code_set.cols
    all_shifts = range(-(n - 1), n)
    violations: list[Violation] = []
    if k != m:
        violations.append(_flock_violation(k, m))

    pairs = [(a, a) for a in range(k)] + list(combinations(range(k), 2))
    vectors = _sweep(pairs, code_set.codes, workers)
    for pair in pairs:
        if pair[0] == pair[1]:
            violations.extend(_auto_violations(pair[0], vectors[pair], m, n, all_shifts, tolerance))
        else:
            violations.extend(_cross_violations(pair, vectors[pair], m, n, all_shifts, tolerance))

    verdict = Verdict(Property.CCC, tuple(violations), {"K": k, "M": m, "N": n})
    logger.info("%s", verdict.summary())
    return verdict


class _SetCorrelations:
    """Every AACF and pairwise ACCF of a code set, computed once."""

    def __init__(self, code_set: CodeSet, workers: int) -> None:
        self.k, self.m, self.n = code_set.size, code_set.rows, code_set.cols
        pairs = [(a, a) for a in range(self.k)] + list(combinations(range(self.k), 2))
        self.vectors = _sweep(pairs, code_set.codes, workers)

    def szccs_violations(self, zone: ZoneSpec, tolerance: float) -> list[Violation]:
        zone_shifts = zone.shifts()
        signed = sorted({s for z in zone_shifts for s in (z, -z)})
        violations: list[Violation] = []
        for (k1, k2), vector in self.vectors.items():
            if k1 == k2:
                violations.extend(_auto_violations(k1, vector, self.m, self.n, signed, tolerance))
            else:
                violations.extend(_cross_violations((k1, k2), vector, self.m, self.n, [0, *signed], tolerance))
        return violations

    def cross_zero_ok(self, tolerance: float) -> bool:
        return all(
            is_zero(vector[0], self.m, self.n, tolerance=tolerance)
            for (k1, k2), vector in self.vectors.items()
            if k1 != k2
        )


def verify_szccs(
    code_set: CodeSet,
    z: int,
    *,
    tolerance: float = ZERO_TOLERANCE,
    workers: int = 1,
) -> Verdict:
    """Symmetrical (K, M, N, Z)-ZCCS check; also reports whether K meets floor(MN/(Z+1))."""
    zone = ZoneSpec(z, code_set.cols)
    correlations = _SetCorrelations(code_set, workers)
    violations = correlations.szccs_violations(zone, tolerance)
    k, m, n = code_set.size, code_set.rows, code_set.cols
    bound = zone.optimal_size(m)
    verdict = Verdict(
        Property.SZCCS,
        tuple(violations),
        {"K": k, "M": m, "N": n, "Z": z, "bound": bound, "optimal": k == bound},
    )
    logger.info("%s", verdict.summary())
    return verdict


def measure_symmetric_zone(code_set: CodeSet, *, tolerance: float = ZERO_TOLERANCE, workers: int = 1) -> int:
    """Largest Z in [0, N-1] for which the set is a symmetrical ZCCS, -1 if it fails even at Z = 0."""
    correlations = _SetCorrelations(code_set, workers)
    if not correlations.cross_zero_ok(tolerance):
        return -1
    best = -1
    for z in range(code_set.cols):
        if correlations.szccs_violations(ZoneSpec(z, code_set.cols), tolerance):
            break
        best = z
    return best


def _check_homogeneous(sets: Sequence[CodeSet]) -> None:
    shapes = {(s.rows, s.cols) for s in sets}
    if len(shapes) != 1:
        raise DimensionError(f"code sets differ in code shape: {sorted(shapes)}")


def _inter_set_vectors(sets: Sequence[CodeSet], workers: int) -> tuple[list[Code], dict[tuple[int, int], AccfVector]]:
    codes = [code for code_set in sets for code in code_set]
    starts = [0]
    for code_set in sets:
        starts.append(starts[-1] + code_set.size)
    pairs = [
        (a, b)
        for i, j in combinations(range(len(sets)), 2)
        for a in range(starts[i], starts[i + 1])
        for b in range(starts[j], starts[j + 1])
    ]
    return codes, _sweep(pairs, codes, workers)


def verify_mccc(
    sets: Sequence[CodeSet],
    z: int,
    *,
    tolerance: float = ZERO_TOLERANCE,
    workers: int = 1,
) -> Verdict:
    """Each set a CCC and every inter-set ACCF zero for |tau| < Z."""
    if len(sets) < 2:
        raise DimensionError(f"an MCCC needs at least two code sets, got {len(sets)}")
    _check_homogeneous(sets)
    m, n = sets[0].rows, sets[0].cols
    if z < 0:
        raise DimensionError(f"zone Z must be nonnegative, got {z}")

    violations: list[Violation] = []
    start = 0
    for index, code_set in enumerate(sets):
        for v in verify_ccc(code_set, tolerance=tolerance, workers=workers).violations:
            shifted = tuple(i + start for i in v.indices)
            violations.append(Violation(shifted, v.shift, v.value, v.magnitude, note=v.note or f"within set {index}"))
        start += code_set.size

    limit = min(z, n)
    shifts = range(-(limit - 1), limit) if limit else range(0)
    _, vectors = _inter_set_vectors(sets, workers)
    for pair, vector in vectors.items():
        violations.extend(_cross_violations(pair, vector, m, n, shifts, tolerance))

    verdict = Verdict(
        Property.MCCC,
        tuple(violations),
        {"K": len(sets), "M": m, "N": n, "Z": z, "group_sizes": [s.size for s in sets]},
    )
    logger.info("%s", verdict.summary())
    return verdict


def cross_set_support(
    sets: Sequence[CodeSet],
    *,
    tolerance: float = ZERO_TOLERANCE,
    workers: int = 1,
) -> list[int]:
    """Signed shifts at which some pair of codes from different sets has nonzero ACCF."""
    _check_homogeneous(sets)
    m, n = sets[0].rows, sets[0].cols
    _, vectors = _inter_set_vectors(sets, workers)
    support = {
        tau
        for vector in vectors.values()
        for tau, value in vector.items()
        if not is_zero(value, m, n, tolerance=tolerance)
    }
    return sorted(support)


def measure_inter_set_zone(sets: Sequence[CodeSet], *, tolerance: float = ZERO_TOLERANCE, workers: int = 1) -> int:
    """Largest Z with every inter-set ACCF zero for |tau| < Z (N when the sets never correlate)."""
    support = cross_set_support(sets, tolerance=tolerance, workers=workers)
    if not support:
        return sets[0].cols
    return min(abs(tau) for tau in support)


def verify_mos(mos: MosFamily, *, tolerance: float = ZERO_TOLERANCE) -> Verdict:
    p = mos.size
    gram = mos.gram()
    violations = []
    for j1, j2 in combinations(range(p), 2):
        value = complex(gram[j1, j2])
        if not is_zero(value, 1, p, tolerance=tolerance):
            violations.append(Violation((j1, j2), None, value, abs(value)))
    return Verdict(Property.MOS, tuple(violations), {"P": p, "q": mos.alphabet.q})


def verify_permutation_family(perms: PermutationFamily) -> Verdict:
    violations = []
    for k1, k2, i1, i2, j in perms.column_collisions():
        shared = perms[k1][i1 * perms.block_width + j]
        violations.append(
            Violation(
                (k1, k2, i1, i2, j),
                None,
                complex(1),
                1.0,
                note=f"both permutations send column {j} to code {shared}",
            )
        )
    return Verdict(
        Property.PERM_FAMILY,
        tuple(violations),
        {"P": len(perms), "M": perms.m, "S": perms.block_count},
    )
