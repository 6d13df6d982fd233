import math

import numpy as np
import pytest

from src.cli.document import load_fixture
from src.codes.alphabet import PhaseAlphabet
from src.codes.code import Code, CodeSet, PhaseVector, evaluate
from src.codes.construct import (
    MultMatrixParams,
    build_mccc_szccs,
    cyclic_row_shift,
    default_permutation_family,
    example1_mos,
    example1_permutations,
    extend_ccc,
    mos_dft,
    mos_hadamard,
    mult_matrix_ccc,
    multiplication_matrix,
    r_concat,
    szccs_parameters,
)
from src.codes.errors import ConstructionError, DimensionError, FamilyError
from src.codes.families import MosFamily, PermutationFamily
from src.codes.verify import (
    cross_set_support,
    verify_ccc,
    verify_mccc,
    verify_mos,
    verify_perfect_array,
    verify_permutation_family,
    verify_szccs,
)


def _seed() -> CodeSet:
    return load_fixture("example1_seed").code_set()


def _coprime_grid() -> list[tuple[int, int, int]]:
    return [(m, s, x) for m in range(2, 9) for s in range(1, m) if math.gcd(m, s) == 1 for x in range(3)]


def test_multiplication_matrix_order_two() -> None:
    code = multiplication_matrix(MultMatrixParams(2, 1, 0))
    assert evaluate(code).real.tolist() == [[1, 1], [1, -1]]


def test_multiplication_matrix_order_three_is_character_table() -> None:
    code = multiplication_matrix(MultMatrixParams(3, 1, 0))
    assert code.q == 3
    assert code.phases.tolist() == [[0, 0, 0], [0, 1, 2], [0, 2, 1]]


def test_multiplication_matrix_with_offset_is_perfect() -> None:
    code = multiplication_matrix(MultMatrixParams(5, 2, 3))
    assert code.phases[0, 0] == 3
    assert verify_perfect_array(code).passed


def test_multiplication_matrix_rejects_shared_factor() -> None:
    with pytest.raises(ConstructionError, match=r"\(0, 2\)"):
        MultMatrixParams(4, 2, 0)


def test_multiplication_matrix_rejects_order_one() -> None:
    with pytest.raises(ConstructionError):
        MultMatrixParams(1, 1, 0)


@pytest.mark.parametrize("m, s, x", _coprime_grid())
def test_multiplication_matrix_is_perfect(m: int, s: int, x: int) -> None:
    code = multiplication_matrix(MultMatrixParams(m, s, x))
    verdict = verify_perfect_array(code)
    assert verdict.passed, verdict.summary()


@pytest.mark.parametrize("m, s, x", _coprime_grid())
def test_row_shifts_of_multiplication_matrix_form_ccc(m: int, s: int, x: int) -> None:
    verdict = verify_ccc(mult_matrix_ccc(MultMatrixParams(m, s, x)))
    assert verdict.passed, verdict.summary()


def test_mult_matrix_ccc_order_two() -> None:
    code_set = mult_matrix_ccc(MultMatrixParams(2, 1, 0))
    assert [evaluate(c).real.tolist() for c in code_set] == [[[1, 1], [1, -1]], [[1, -1], [1, 1]]]


def test_cyclic_row_shift_identity_and_full_cycle() -> None:
    code = _seed()[0]
    assert cyclic_row_shift(code, 0) == code
    for u in range(1, code.rows):
        assert cyclic_row_shift(cyclic_row_shift(code, u), code.rows - u) == code


def test_cyclic_row_shift_moves_rows_up() -> None:
    code = Code([[0], [1], [2]], PhaseAlphabet(3))
    assert cyclic_row_shift(code, 1).phases.tolist() == [[1], [2], [0]]


def test_cyclic_row_shift_rejects_out_of_range() -> None:
    with pytest.raises(DimensionError):
        cyclic_row_shift(_seed()[0], 4)


def test_r_concat_reproduces_first_table_row() -> None:
    c1, c2, _, _ = _seed()
    code = r_concat([c1, c2], PhaseVector.from_signs("--"))
    assert code.to_signs()[0] == "----+-"
    assert code.shape == (4, 6)


def test_r_concat_single_block_is_identity() -> None:
    c1 = _seed()[0]
    assert r_concat([c1], PhaseVector.from_signs("+")) == c1


def test_r_concat_negates_second_half() -> None:
    c1 = _seed()[0]
    code = r_concat([c1, c1], PhaseVector.from_signs("+-"))
    assert code.to_signs() == [row + row.translate(str.maketrans("+-", "-+")) for row in c1.to_signs()]


def test_r_concat_entries_are_signed_blocks() -> None:
    codes = list(mult_matrix_ccc(MultMatrixParams(3, 1, 0)))
    b = mos_dft(3).row(1)
    code = r_concat(codes, b)
    n = codes[0].cols
    assert code.cols == 3 * n
    for alpha, block in enumerate(codes):
        for i in range(block.rows):
            for j in range(n):
                assert code.phases[i, alpha * n + j] == (block.phases[i, j] + b.phases[alpha]) % code.q


def test_r_concat_mixed_alphabets_use_lcm() -> None:
    c1 = _seed()[0]
    code = r_concat([c1, c1, c1], mos_dft(3).row(1))
    assert code.q == 6


def test_r_concat_rejects_length_mismatch() -> None:
    c1 = _seed()[0]
    with pytest.raises(DimensionError):
        r_concat([c1], PhaseVector.from_signs("++"))


def test_mos_dft_examples() -> None:
    assert mos_dft(2) == MosFamily.from_signs(["++", "+-"])
    assert mos_dft(1).phases.tolist() == [[0]]
    assert verify_mos(mos_dft(3)).passed
    assert mos_dft(3).phases.tolist() == [[0, 0, 0], [0, 1, 2], [0, 2, 1]]


def test_mos_hadamard_examples() -> None:
    assert mos_hadamard(2) == MosFamily.from_signs(["++", "+-"])
    four = mos_hadamard(4)
    assert four.alphabet.q == 2
    assert verify_mos(four).passed


def test_mos_hadamard_rejects_non_power_of_two() -> None:
    with pytest.raises(ConstructionError):
        mos_hadamard(3)


def test_example_mos_is_orthogonal() -> None:
    assert verify_mos(example1_mos()).passed


def test_default_permutation_family_examples() -> None:
    family = default_permutation_family(4, 2)
    assert family.one_based() == [[1, 2, 3, 4], [2, 3, 4, 1]]
    assert verify_permutation_family(family).passed

    single = default_permutation_family(5, 1)
    assert single.perms == (tuple(range(5)),)

    six = default_permutation_family(6, 3)
    assert len(six) == 3
    assert verify_permutation_family(six).passed


def test_default_permutation_family_rejects_non_divisor() -> None:
    with pytest.raises(FamilyError):
        default_permutation_family(4, 3)


def test_extend_ccc_reproduces_first_table_set() -> None:
    extended = extend_ccc(_seed(), 2, example1_mos(), (0, 1, 2, 3))
    table = load_fixture("example1_szccs").code_sets()[0]
    assert extended.codes == table.codes
    assert verify_ccc(extended).passed


def test_extend_ccc_full_length_with_dft_rows() -> None:
    extended = extend_ccc(_seed(), 4, mos_dft(4), (0, 1, 2, 3))
    assert (extended.rows, extended.cols, extended.size) == (4, 12, 4)
    assert verify_ccc(extended).passed


def test_extend_ccc_from_order_three_multiplication_matrix() -> None:
    seed = mult_matrix_ccc(MultMatrixParams(3, 1, 0))
    extended = extend_ccc(seed, 3, mos_dft(3), (0, 1, 2))
    assert extended.cols == 9
    assert verify_ccc(extended).passed


def _extension_seeds() -> list[tuple[str, CodeSet]]:
    return [
        ("example1", _seed()),
        ("mult2", mult_matrix_ccc(MultMatrixParams(2, 1, 0))),
        ("mult3", mult_matrix_ccc(MultMatrixParams(3, 1, 0))),
        ("mult4", mult_matrix_ccc(MultMatrixParams(4, 1, 0))),
    ]


@pytest.mark.parametrize("name, seed", _extension_seeds())
def test_extension_keeps_ccc_for_random_permutations(name: str, seed: CodeSet) -> None:
    rng = np.random.default_rng(sum(map(ord, name)))
    m = seed.size
    for p in (d for d in range(2, m + 1) if m % d == 0):
        families = [mos_dft(p)]
        if p & (p - 1) == 0:
            families.append(mos_hadamard(p))
        for mos in families:
            for _ in range(20):
                perm = tuple(int(x) for x in rng.permutation(m))
                verdict = verify_ccc(extend_ccc(seed, p, mos, perm))
                assert verdict.passed, f"{name} P={p} perm={perm}: {verdict.summary()}"


def test_extend_ccc_rejects_non_ccc_seed() -> None:
    c1, _, c3, c4 = _seed()
    with pytest.raises(ConstructionError) as excinfo:
        extend_ccc(CodeSet.of([c1, c1, c3, c4]), 2, mos_dft(2), (0, 1, 2, 3))
    assert excinfo.value.verdict is not None
    assert not excinfo.value.verdict.passed


def test_extend_ccc_rejects_non_divisor() -> None:
    with pytest.raises(ConstructionError):
        extend_ccc(_seed(), 3, mos_dft(3), (0, 1, 2, 3))


def test_extend_ccc_rejects_non_orthogonal_sequences() -> None:
    with pytest.raises(FamilyError):
        extend_ccc(_seed(), 2, MosFamily.from_signs(["++", "++"]), (0, 1, 2, 3))


def test_extend_ccc_rejects_non_permutation() -> None:
    with pytest.raises(FamilyError):
        extend_ccc(_seed(), 2, mos_dft(2), (0, 0, 2, 3))


def test_bundle_reproduces_table_exactly() -> None:
    bundle = build_mccc_szccs(_seed(), 2, example1_mos(), example1_permutations())
    table = load_fixture("example1_szccs").code_sets()
    assert bundle.set_count == 2
    assert [s.codes for s in bundle.sets] == [s.codes for s in table]
    assert bundle.parameters() == (8, 4, 6, 2)
    assert bundle.provenance == {
        "construction": "szccs",
        "P": 2,
        "perms": [[1, 2, 3, 4], [2, 1, 4, 3]],
        "mos_family": {"root_order": 2, "phases": [[1, 1], [0, 1]]},
    }


def test_bundle_with_single_block_is_the_seed() -> None:
    seed = _seed()
    bundle = build_mccc_szccs(seed, 1, mos_dft(1), default_permutation_family(4, 1))
    assert bundle.sets == (seed,)
    assert bundle.zone.z == 2
    assert bundle.provenance == {"construction": "szccs", "P": 1}


def test_bundle_from_multiplication_matrix_is_optimal_szccs() -> None:
    seed = mult_matrix_ccc(MultMatrixParams(4, 1, 0))
    bundle = build_mccc_szccs(seed, 2, mos_dft(2), default_permutation_family(4, 2))
    verdict = verify_szccs(bundle.codes, 3)
    assert verdict.passed, verdict.summary()
    assert verdict.measured["K"] == 8
    assert verdict.measured["N"] == 8
    assert verdict.measured["optimal"] is True


def test_bundle_rejects_colliding_permutations() -> None:
    family = PermutationFamily(((0, 1, 2, 3), (0, 1, 2, 3)), 2)
    with pytest.raises(FamilyError) as excinfo:
        build_mccc_szccs(_seed(), 2, mos_dft(2), family)
    assert excinfo.value.offending == (0, 1, 0, 0, 0)


def test_bundle_rejects_wrong_family_size() -> None:
    with pytest.raises(FamilyError):
        build_mccc_szccs(_seed(), 2, mos_dft(2), default_permutation_family(4, 4))


def _bundle_cases() -> list[tuple[str, CodeSet, int, PermutationFamily]]:
    cases = []
    for name, seed in [
        ("example1", _seed()),
        ("mult2", mult_matrix_ccc(MultMatrixParams(2, 1, 0))),
        ("mult4", mult_matrix_ccc(MultMatrixParams(4, 1, 0))),
    ]:
        m = seed.size
        for p in (d for d in range(2, m + 1) if m % d == 0):
            cases.append((f"{name}-P{p}-default", seed, p, default_permutation_family(m, p)))
        if m == 4:
            cases.append((f"{name}-P2-example1", seed, 2, example1_permutations()))
    return cases


@pytest.mark.parametrize("label, seed, p, family", _bundle_cases())
def test_bundle_is_mccc_and_optimal_szccs(label: str, seed: CodeSet, p: int, family: PermutationFamily) -> None:
    n = seed.cols
    bundle = build_mccc_szccs(seed, p, mos_dft(p), family)

    szccs = verify_szccs(bundle.codes, n - 1)
    assert szccs.passed, f"{label}: {szccs.summary()}"
    assert szccs.measured["optimal"] is True

    mccc = verify_mccc(bundle.sets, n)
    assert mccc.passed, f"{label}: {mccc.summary()}"

    allowed = {u * n for u in range(-(p - 1), p)}
    assert set(cross_set_support(bundle.sets)) <= allowed


def test_constructions_are_deterministic() -> None:
    first = build_mccc_szccs(_seed(), 2, example1_mos(), example1_permutations())
    second = build_mccc_szccs(_seed(), 2, example1_mos(), example1_permutations())
    assert first.sets == second.sets


def test_szccs_parameters_meet_bound() -> None:
    params = szccs_parameters(4, 3, 2)
    assert params == {"K": 8, "M": 4, "N": 6, "Z": 2, "bound": 8}
